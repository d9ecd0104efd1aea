//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored constant term first and kept normalized: the
//! zero polynomial has no coefficients and every other polynomial has a
//! nonzero leading coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    /// Gcd of the coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn div_exact_scalar(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x / c).collect())
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of `p(m / 2^exp)`, evaluated with integers only.
    pub fn sign_at_dyadic(&self, mant: &BigInt, exp: u32) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let n = self.degree();
        let mut acc = self.coeffs[n].clone();
        let mut pow = BigInt::one();
        for c in self.coeffs[..n].iter().rev() {
            pow <<= exp as usize;
            acc = acc * mant + c * &pow;
        }
        sign_of(&acc)
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a = q * b + r`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-remainder by zero polynomial");
        if self.degree() < b.degree() || self.is_zero() {
            return self.clone();
        }
        let db = b.degree();
        let lb = b.leading();
        let mut r = self.coeffs.clone();
        let mut e = self.degree() - db + 1;
        while !r.is_empty() && r.len() - 1 >= db {
            let dr = r.len() - 1;
            let lr = r[dr].clone();
            for c in r.iter_mut() {
                *c *= &lb;
            }
            for (i, bc) in b.coeffs.iter().enumerate() {
                r[dr - db + i] -= &lr * bc;
            }
            trim(&mut r);
            e -= 1;
        }
        let scale = lb.pow(e as u32);
        IntPoly::new(r.into_iter().map(|c| c * &scale).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }
}

pub(crate) fn sign_of(x: &BigInt) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        RatPoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        RatPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        RatPoly::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        RatPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().map_or(false, |c| c.is_one())
    }

    pub fn scale(&self, c: &BigRational) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> RatPoly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Substitutes `x -> -x`.
    pub fn reflect(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() || self.is_zero() {
            return (RatPoly::zero(), self.clone());
        }
        let dd = d.degree();
        let inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        while !r.is_empty() && r.len() - 1 >= dd {
            let dr = r.len() - 1;
            let factor = &r[dr] * &inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[dr - dd + i] -= &factor * c;
            }
            q[dr - dd] = factor;
            r.pop();
            trim(&mut r);
        }
        (RatPoly::new(q), RatPoly::new(r))
    }

    pub fn rem(&self, d: &RatPoly) -> RatPoly {
        self.div_rem(d).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &RatPoly) -> RatPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Positive lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()))
    }

    /// Returns `(P, c)` with `P` integral and `self = P / c`, `c > 0`.
    pub fn clear_denominators(&self) -> (IntPoly, BigInt) {
        let l = self.denominator_lcm();
        let p = IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
                .collect(),
        );
        (p, l)
    }

    /// Some positive rational multiple of `self` with coprime integer
    /// coefficients. Signs of values are preserved.
    pub fn primitive_int(&self) -> IntPoly {
        let (p, _) = self.clear_denominators();
        let c = p.content();
        if c.is_zero() || c.is_one() {
            p
        } else {
            p.div_exact_scalar(&c)
        }
    }

    /// Integer coefficients, if every coefficient is integral.
    pub fn to_int(&self) -> Option<IntPoly> {
        if self.coeffs.iter().all(|c| c.is_integer()) {
            Some(IntPoly::new(self.coeffs.iter().map(|c| c.to_integer()).collect()))
        } else {
            None
        }
    }

    pub fn pow(&self, k: u32) -> RatPoly {
        let mut acc = RatPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Newton interpolation through `(x_i, y_i)`; the `x_i` must be distinct.
    pub fn interpolate(points: &[(BigRational, BigRational)]) -> RatPoly {
        let n = points.len();
        let xs: Vec<&BigRational> = points.iter().map(|p| &p.0).collect();
        let mut dd: Vec<BigRational> = points.iter().map(|p| p.1.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        let mut acc = RatPoly::zero();
        for i in (0..n).rev() {
            acc = &acc * &RatPoly::new(vec![-xs[i].clone(), BigRational::one()]);
            acc = &acc + &RatPoly::constant(dd[i].clone());
        }
        acc
    }
}

/// Interpolates a polynomial of degree at most `deg` from its values at
/// `0, 1, ..., deg`.
pub fn interpolate_at_naturals<F>(deg: usize, mut value: F) -> Result<RatPoly>
where
    F: FnMut(i64) -> Result<BigRational>,
{
    let mut pts = Vec::with_capacity(deg + 1);
    for t in 0..=deg as i64 {
        pts.push((BigRational::from_integer(t.into()), value(t)?));
    }
    Ok(RatPoly::interpolate(&pts))
}

impl<'a> Add for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl<'a> Mul for &'a IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl<'a> Sub for &'a IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

fn write_terms<T: fmt::Display + Signed>(f: &mut fmt::Formatter<'_>, coeffs: &[T]) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        match (first, c.is_negative()) {
            (true, true) => write!(f, "-")?,
            (false, true) => write!(f, " - ")?,
            (false, false) => write!(f, " + ")?,
            (true, false) => {}
        }
        first = false;
        let a = c.abs();
        let text = a.to_string();
        let coeff = match (i, a.is_one(), text.contains('/')) {
            (0, _, _) => text,
            (_, true, _) => String::new(),
            (_, false, true) => format!("({})", text),
            (_, false, false) => text,
        };
        match i {
            0 => write!(f, "{}", coeff)?,
            1 => write!(f, "{}x", coeff)?,
            _ => write!(f, "{}x^{}", coeff, i)?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({})", self)
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self)
    }
}

/// Parses comma-separated integer coefficients, constant term first.
pub fn parse_int_poly(s: &str) -> Result<IntPoly> {
    let coeffs = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::Parse(format!("bad coefficient {:?}: {}", t, e)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn pseudo_remainder_identity() {
        let a = IntPoly::from_i64s(&[1, -2, 0, 3]);
        let b = IntPoly::from_i64s(&[5, 2]);
        let r = a.pseudo_rem(&b);
        // 2^3 * a(-5/2) == r
        assert_eq!(r.degree(), 0);
        let val = a.to_rat().eval(&BigRational::new((-5).into(), 2.into())) * q(8);
        assert_eq!(BigRational::from_integer(r.coeff(0)), val);
    }

    #[test]
    fn gcd_detects_repeated_root() {
        let p = RatPoly::from_i64s(&[1, -2, 1]);
        assert!(!p.is_squarefree());
        assert!(RatPoly::from_i64s(&[-1, 0, 1]).is_squarefree());
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = RatPoly::from_i64s(&[3, 0, -2, 7]);
        let r = interpolate_at_naturals(3, |t| Ok(p.eval(&q(t)))).unwrap();
        assert_eq!(r, p);
    }

    #[test]
    fn dyadic_sign() {
        let p = IntPoly::from_i64s(&[-2, 0, 1]);
        // 3/2: 9/4 - 2 > 0 ; 5/4: 25/16 - 2 < 0
        assert_eq!(p.sign_at_dyadic(&3.into(), 1), 1);
        assert_eq!(p.sign_at_dyadic(&5.into(), 2), -1);
        let l = IntPoly::from_i64s(&[-3, 1]);
        assert_eq!(l.sign_at_dyadic(&3.into(), 0), 0);
    }

    #[test]
    fn parse_and_display() {
        let p = parse_int_poly("1, -1, -4, 0, 1").unwrap();
        assert_eq!(p.degree(), 4);
        assert_eq!(p.to_string(), "x^4 - 4x^2 - x + 1");
        assert!(parse_int_poly("1,x").is_err());
    }
}
