//! Real roots: Sturm chains, isolation by bisection, and integer root bounds.
//!
//! All endpoints are dyadic rationals so every evaluation is a single
//! integer Horner pass.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, RatPoly};
use crate::error::{Error, Result};

/// The rational `mant / 2^exp`, kept with `mant` odd or `exp == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { mant, exp };
        d.normalize();
        d
    }

    pub fn from_int(n: BigInt) -> Self {
        Dyadic { mant: n, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.mant.trailing_zeros().unwrap_or(0).min(self.exp as u64) as u32;
        if tz > 0 {
            self.mant >>= tz as usize;
            self.exp -= tz;
        }
    }

    pub fn mant(&self) -> &BigInt {
        &self.mant
    }

    pub fn exp(&self) -> u32 {
        self.exp
    }

    fn aligned(&self, other: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = self.exp.max(other.exp);
        (
            &self.mant << (e - self.exp) as usize,
            &other.mant << (e - other.exp) as usize,
            e,
        )
    }

    pub fn midpoint(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a + b, e + 1)
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        let (a, b, e) = self.aligned(other);
        Dyadic::new(a - b, e)
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.mant.clone(), BigInt::one() << self.exp as usize)
    }

    /// `floor(self * 2^prec)`.
    pub fn floor_scaled(&self, prec: u32) -> BigInt {
        scale_floor(&self.mant, prec as i64 - self.exp as i64)
    }

    /// `ceil(self * 2^prec)`.
    pub fn ceil_scaled(&self, prec: u32) -> BigInt {
        -scale_floor(&-&self.mant, prec as i64 - self.exp as i64)
    }

    pub fn to_f64(&self) -> f64 {
        let bits = self.mant.bits() as i64;
        let shift = (bits - 60).max(0);
        let top: i64 = (&self.mant >> shift as usize).try_into().unwrap_or(0);
        top as f64 * 2f64.powi((shift - self.exp as i64) as i32)
    }
}

/// `floor(m * 2^k)` for signed `k`.
fn scale_floor(m: &BigInt, k: i64) -> BigInt {
    if k >= 0 {
        m << k as usize
    } else {
        let d = BigInt::one() << (-k) as usize;
        num_integer::Integer::div_floor(m, &d)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.mant, self.exp)
    }
}

/// Closed interval `[lo, hi]` that contains exactly one root of its
/// polynomial. `lo == hi` marks an exact dyadic root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Dyadic,
    pub hi: Dyadic,
}

impl RootInterval {
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, other: &RootInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// The unique integer this interval pins down: it contains the integer
    /// and is narrower than one half.
    pub fn certified_integer(&self) -> Option<BigInt> {
        let w = self.width().to_rational();
        if w >= BigRational::new(1.into(), 2.into()) {
            return None;
        }
        let m = self.hi.floor_scaled(0);
        (self.lo <= Dyadic::from_int(m.clone())).then_some(m)
    }
}

/// Sturm chain of a squarefree polynomial, scaled to primitive integer
/// polynomials (positive scalings only, so signs are unchanged).
pub fn sturm_chain(p: &RatPoly) -> Result<Vec<IntPoly>> {
    if p.is_zero() || p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    Ok(chain.iter().map(|q| q.primitive_int()).collect())
}

fn sign_changes(chain: &[IntPoly], at: &Dyadic) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in chain {
        let s = q.sign_at_dyadic(&at.mant, at.exp);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// A power of two strictly above the modulus of every complex root.
fn root_radius(p: &IntPoly) -> Dyadic {
    let lc = p.leading().abs();
    let max = p.coeffs()[..p.degree()]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // |r| < 1 + max|c_i| / |lc|
    let bound = BigInt::one() + (max + &lc - 1u32) / &lc + 1u32;
    let bits = bound.bits();
    Dyadic::from_int(BigInt::one() << bits as usize)
}

pub fn sturm_real_root_count(p: &RatPoly) -> Result<usize> {
    let chain = sturm_chain(p)?;
    let r = root_radius(&chain[0]);
    let neg = Dyadic::from_int(-r.mant.clone());
    Ok(sign_changes(&chain, &neg) - sign_changes(&chain, &r))
}

/// Isolates every real root of a squarefree polynomial into disjoint
/// intervals of width at most `target_width`, ascending.
pub fn isolate_real_roots(p: &RatPoly, target_width: &BigRational) -> Result<Vec<RootInterval>> {
    if !target_width.is_positive() {
        return Err(Error::InvalidParameter("target width must be positive".into()));
    }
    let chain = sturm_chain(p)?;
    let pint = chain[0].clone();
    let r = root_radius(&pint);
    let lo = Dyadic::from_int(-r.mant.clone());
    let vlo = sign_changes(&chain, &lo);
    let vhi = sign_changes(&chain, &r);
    enum Task {
        Range(Dyadic, usize, Dyadic, usize),
        Exact(Dyadic),
    }
    let mut out = Vec::new();
    let mut stack = vec![Task::Range(lo, vlo, r, vhi)];
    // Left halves are pushed last so the output comes out ascending.
    while let Some(task) = stack.pop() {
        let (a, va, b, vb) = match task {
            Task::Exact(m) => {
                out.push(RootInterval { lo: m.clone(), hi: m });
                continue;
            }
            Task::Range(a, va, b, vb) => (a, va, b, vb),
        };
        // roots in the open interval (a, b)
        let sb = pint.sign_at_dyadic(&b.mant, b.exp);
        let count = va - vb - usize::from(sb == 0);
        if count == 0 {
            continue;
        }
        let sa = pint.sign_at_dyadic(&a.mant, a.exp);
        if count == 1 && sa != 0 && sb != 0 {
            out.push(refine_root(&pint, &RootInterval { lo: a, hi: b }, target_width));
            continue;
        }
        let m = a.midpoint(&b);
        let vm = sign_changes(&chain, &m);
        let sm = pint.sign_at_dyadic(&m.mant, m.exp);
        stack.push(Task::Range(m.clone(), vm, b, vb));
        if sm == 0 {
            stack.push(Task::Exact(m.clone()));
        }
        stack.push(Task::Range(a, va, m, vm));
    }
    Ok(out)
}

/// Bisects an interval with a sign change (or an exact root) down to
/// `width <= target`.
pub fn refine_root(p: &IntPoly, iv: &RootInterval, target: &BigRational) -> RootInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi {
        return iv.clone();
    }
    let slo = p.sign_at_dyadic(&lo.mant, lo.exp);
    if slo == 0 {
        return RootInterval { lo: lo.clone(), hi: lo };
    }
    if p.sign_at_dyadic(&hi.mant, hi.exp) == 0 {
        return RootInterval { lo: hi.clone(), hi };
    }
    while hi.sub(&lo).to_rational() > *target {
        let m = lo.midpoint(&hi);
        let sm = p.sign_at_dyadic(&m.mant, m.exp);
        if sm == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if sm == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RootInterval { lo, hi }
}

/// Refines to width at most `2^-bits`; bisection only, so the result is
/// nested inside the input.
pub fn refine_root_bits(p: &IntPoly, iv: &RootInterval, bits: u32) -> RootInterval {
    let target = BigRational::new(BigInt::one(), BigInt::one() << bits as usize);
    refine_root(p, iv, &target)
}

/// Smallest positive integer `B` with `|c_n| B^n > sum_{i<n} |c_i| B^i`.
/// Every complex root `z` of `q` with `q` of degree >= 1 has `|z| < B`.
pub fn cauchy_bound(q: &IntPoly) -> BigInt {
    let n = q.degree();
    assert!(n >= 1, "Cauchy bound needs degree >= 1");
    let lc = q.leading().abs();
    let rest: Vec<BigInt> = q.coeffs()[..n].iter().map(|c| c.abs()).collect();
    let positive = |b: &BigInt| -> bool {
        let mut lhs = lc.clone();
        let mut rhs = BigInt::zero();
        for c in rest.iter().rev() {
            lhs *= b;
            rhs = rhs * b + c;
        }
        lhs > rhs
    };
    let mut hi = BigInt::one();
    while !positive(&hi) {
        hi <<= 1;
    }
    let mut lo = &hi >> 1usize;
    if lo.is_zero() {
        return hi;
    }
    // invariant: !positive(lo) && positive(hi)
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if positive(&mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

const SCAN_LIMIT: u64 = 1 << 16;

/// All integers `t` with `q(t)` in `targets`, ascending. Every solution lies
/// inside the Cauchy bound of `q - v`; small bounds are scanned point by
/// point, large ones through real root isolation of `q - v`.
pub fn integer_solutions(q: &IntPoly, targets: &[i64]) -> Vec<BigInt> {
    assert!(q.degree() >= 1, "scan needs a nonconstant polynomial");
    let mut out = Vec::new();
    for &v in targets {
        let shifted: IntPoly = q - &IntPoly::constant(BigInt::from(v));
        let bound = cauchy_bound(&shifted);
        if bound <= BigInt::from(SCAN_LIMIT) {
            let mut t = -bound.clone();
            while t <= bound {
                if shifted.eval(&t).is_zero() {
                    out.push(t.clone());
                }
                t += 1;
            }
        } else {
            out.extend(integer_roots_isolated(&shifted));
        }
    }
    out.sort();
    out.dedup();
    out
}

fn integer_roots_isolated(p: &IntPoly) -> Vec<BigInt> {
    let pr = p.to_rat();
    let g = pr.gcd(&pr.derivative());
    let sf = pr.div_rem(&g).0;
    let mut out = Vec::new();
    let roots = isolate_real_roots(&sf, &BigRational::one()).expect("squarefree part");
    for r in roots {
        let mut t = r.lo.to_rational().ceil().to_integer();
        let hi = r.hi.to_rational().floor().to_integer();
        while t <= hi {
            if p.eval(&t).is_zero() {
                out.push(t.clone());
            }
            t += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rp(c: &[i64]) -> RatPoly {
        RatPoly::from_i64s(c)
    }

    fn w(bits: u32) -> BigRational {
        BigRational::new(1.into(), BigInt::one() << bits as usize)
    }

    #[test]
    fn integer_solutions_both_routes() {
        // q = p + 1 equals 1 exactly at the roots of p; the bound forces isolation
        let p = &(&IntPoly::from_i64s(&[-3, 1]) * &IntPoly::from_i64s(&[5, 1])) * &IntPoly::from_i64s(&[-70000, 1]);
        let q = &p - &IntPoly::constant(BigInt::from(-1));
        let sols = integer_solutions(&q, &[1, -1]);
        assert_eq!(sols, vec![BigInt::from(-5), BigInt::from(3), BigInt::from(70000)]);
        let small = IntPoly::from_i64s(&[1, 1, -4, 0, 1]);
        assert_eq!(integer_solutions(&small, &[1, -1]), vec![BigInt::from(-2), BigInt::from(0), BigInt::from(1)]);
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(sturm_real_root_count(&rp(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(sturm_real_root_count(&rp(&[-2, 0, 1])).unwrap(), 2);
        assert_eq!(sturm_real_root_count(&rp(&[1, 2, -6, -2, 1])).unwrap(), 4);
        assert!(matches!(
            sturm_real_root_count(&rp(&[1, -2, 1])),
            Err(Error::NotSquarefree)
        ));
    }

    #[test]
    fn isolate_sqrt2() {
        let roots = isolate_real_roots(&rp(&[-2, 0, 1]), &w(20)).unwrap();
        assert_eq!(roots.len(), 2);
        let r = &roots[1];
        assert!(r.lo.to_f64() < 2f64.sqrt() && 2f64.sqrt() < r.hi.to_f64());
        assert!(roots[0].hi < roots[1].lo);
        assert!(roots[0].lo.to_f64() < -1.41 && roots[0].hi.to_f64() > -1.42);
    }

    #[test]
    fn exact_integer_root() {
        let roots = isolate_real_roots(&rp(&[-3, 1]), &w(4)).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].certified_integer(), Some(BigInt::from(3)));
    }

    #[test]
    fn exact_roots_mixed_with_irrational() {
        // (x - 1)(x + 2)(x^2 - 3) = x^4 + x^3 - 5x^2 - 3x + 6
        let roots = isolate_real_roots(&rp(&[6, -3, -5, 1, 1]), &w(10)).unwrap();
        assert_eq!(roots.len(), 4);
        for pair in roots.windows(2) {
            assert!(pair[0].hi < pair[1].lo);
        }
        assert_eq!(roots[0].certified_integer(), Some(BigInt::from(-2)));
        assert_eq!(roots[2].certified_integer(), Some(BigInt::from(1)));
        assert!(roots[1].certified_integer().is_none());
    }

    #[test]
    fn cauchy_bounds() {
        // x - 3: 1*B > 3 first at B = 4
        assert_eq!(cauchy_bound(&IntPoly::from_i64s(&[-3, 1])), BigInt::from(4));
        assert_eq!(cauchy_bound(&IntPoly::from_i64s(&[0, 0, 1])), BigInt::from(1));
        let sols = integer_solutions(&IntPoly::from_i64s(&[1, 1, -4, 0, 1]), &[1, -1]);
        let v: Vec<i64> = sols.iter().map(|b| i64::try_from(b).unwrap()).collect();
        assert_eq!(v, vec![-2, 0, 1]);
    }

    #[test]
    fn scaled_rounding() {
        let d = Dyadic::new(BigInt::from(-3), 2); // -0.75
        assert_eq!(d.floor_scaled(1), BigInt::from(-2));
        assert_eq!(d.ceil_scaled(1), BigInt::from(-1));
        assert_eq!(d.floor_scaled(3), BigInt::from(-6));
    }
}
