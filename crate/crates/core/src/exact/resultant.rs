//! Resultants and discriminants.
//!
//! Sign convention: `Res(p, q)` is the determinant of the Sylvester matrix
//! with the `deg q` shifted rows of `p` first, coefficients listed from the
//! leading term. Equivalently `Res(p, q) = lc(p)^deg(q) * prod q(r)` over the
//! roots `r` of `p`. The production path uses the subresultant remainder
//! sequence; the Sylvester determinant is kept as an independent route.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::bareiss_det;
use super::poly::{IntPoly, RatPoly};
use crate::error::{Error, Result};

/// Resultant of two integer polynomials via subresultant pseudo-remainders.
pub fn resultant_int(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(BigInt::zero());
    }
    let (mut a, mut b, mut s) = if p.degree() < q.degree() {
        let odd = (p.degree() * q.degree()) % 2 == 1;
        (q.clone(), p.clone(), if odd { -1i8 } else { 1 })
    } else {
        (p.clone(), q.clone(), 1i8)
    };
    if b.degree() == 0 {
        let r = b.leading().pow(a.degree() as u32);
        return Ok(if s < 0 { -r } else { r });
    }
    let ca = a.content();
    let cb = b.content();
    a = a.div_exact_scalar(&ca);
    b = b.div_exact_scalar(&cb);
    let t = ca.pow(b.degree() as u32) * cb.pow(a.degree() as u32);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.degree();
        let db = b.degree();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = a.pseudo_rem(&b);
        if r.is_zero() {
            return Ok(BigInt::zero());
        }
        a = b;
        b = r.div_exact_scalar(&(&g * h.pow(delta as u32)));
        g = a.leading();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => g.pow(delta as u32) / h.pow(delta as u32 - 1),
        };
        if b.degree() == 0 {
            break;
        }
    }
    let da = a.degree() as u32;
    let hfin = b.leading().pow(da) / h.pow(da - 1);
    let r = t * hfin;
    Ok(if s < 0 { -r } else { r })
}

/// Resultant over Q, reduced to the integer case by clearing denominators.
pub fn resultant(p: &RatPoly, q: &RatPoly) -> Result<BigRational> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(BigRational::zero());
    }
    let (pi, cp) = p.clear_denominators();
    let (qi, cq) = q.clear_denominators();
    let r = resultant_int(&pi, &qi)?;
    let den = cp.pow(q.degree() as u32) * cq.pow(p.degree() as u32);
    Ok(BigRational::new(r, den))
}

/// The Sylvester matrix of `p` and `q`, `p`-rows first.
pub fn sylvester_matrix(p: &IntPoly, q: &IntPoly) -> Vec<Vec<BigInt>> {
    let m = p.degree();
    let n = q.degree();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (poly, shifts) in [(p, n), (q, m)] {
        let d = poly.degree();
        for s in 0..shifts {
            let mut row = vec![BigInt::zero(); size];
            for k in 0..=d {
                row[s + k] = poly.coeff(d - k);
            }
            rows.push(row);
        }
    }
    rows
}

/// Resultant as the Sylvester determinant; independent of [`resultant_int`].
pub fn resultant_sylvester(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::BothZero);
    }
    if p.is_zero() || q.is_zero() {
        return Ok(BigInt::zero());
    }
    Ok(bareiss_det(&sylvester_matrix(p, q)))
}

/// `disc(p) = (-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
pub fn discriminant(p: &RatPoly) -> Result<BigRational> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant(p, &p.derivative())? / p.leading();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
}

pub fn discriminant_int(p: &IntPoly) -> Result<BigInt> {
    let n = p.degree();
    if p.is_zero() || n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let r = resultant_int(p, &p.derivative())?;
    let (quot, rem) = r.div_rem(&p.leading());
    debug_assert!(rem.is_zero());
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -quot } else { quot })
}
