//! Outward-rounded fixed-point interval arithmetic.
//!
//! An [`Interval`] at precision `p` is `[lo / 2^p, hi / 2^p]` with integer
//! `lo <= hi`. Every operation rounds its lower end down and its upper end
//! up on the `2^-p` grid, so the true value is always enclosed. Operands
//! must share a precision.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::roots::RootInterval;

/// Starting precision for adaptive evaluation.
pub const START_PRECISION: u32 = 128;
/// Default hard cap for adaptive evaluation.
pub const DEFAULT_PRECISION_CAP: u32 = 8192;

/// Precisions tried by adaptive evaluation: 128, 256, ... up to `cap`.
pub fn precision_ladder(cap: u32) -> impl Iterator<Item = u32> {
    std::iter::successors(Some(START_PRECISION), |p| p.checked_mul(2)).take_while(move |p| *p <= cap)
}

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Interval {
    pub fn point_int(n: &BigInt, prec: u32) -> Self {
        let v = n << prec as usize;
        Interval { lo: v.clone(), hi: v, prec }
    }

    pub fn from_i64(n: i64, prec: u32) -> Self {
        Interval::point_int(&BigInt::from(n), prec)
    }

    pub fn zero(prec: u32) -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero(), prec }
    }

    pub fn one(prec: u32) -> Self {
        Interval::from_i64(1, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = q.numer() << prec as usize;
        Interval {
            lo: div_floor(&num, q.denom()),
            hi: div_ceil(&num, q.denom()),
            prec,
        }
    }

    pub fn from_root(r: &RootInterval, prec: u32) -> Self {
        Interval {
            lo: r.lo.floor_scaled(prec),
            hi: r.hi.ceil_scaled(prec),
            prec,
        }
    }

    /// Enclosure of `sqrt(n)` for `n >= 0`.
    pub fn sqrt_int(n: &BigInt, prec: u32) -> Self {
        assert!(!n.is_negative(), "sqrt of negative integer");
        let scaled = n << (2 * prec as usize);
        let s = scaled.sqrt();
        let hi = if &s * &s == scaled { s.clone() } else { &s + 1u32 };
        Interval { lo: s, hi, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Scaled endpoints `(lo, hi)`; the enclosed set is `[lo, hi] / 2^prec`.
    pub fn scaled_bounds(&self) -> (&BigInt, &BigInt) {
        (&self.lo, &self.hi)
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec as usize)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec as usize)
    }

    /// Width as a rational.
    pub fn width(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << self.prec as usize)
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lower() <= *q && *q <= self.upper()
    }

    /// Whether `other` lies inside `self` (precisions may differ).
    pub fn encloses(&self, other: &Interval) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    /// The unique integer in this interval when it is narrower than 1/2.
    pub fn certify_integer(&self) -> Option<BigInt> {
        let half = BigInt::one() << (self.prec as usize).saturating_sub(1);
        if self.prec == 0 || &self.hi - &self.lo >= half {
            return None;
        }
        let unit = BigInt::one() << self.prec as usize;
        let m = div_floor(&self.hi, &unit);
        if (&m << self.prec as usize) >= self.lo {
            Some(m)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo, prec: self.prec }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        debug_assert_eq!(self.prec, o.prec);
        let cands = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = cands.iter().min().expect("four products");
        let max = cands.iter().max().expect("four products");
        let unit = BigInt::one() << self.prec as usize;
        Interval {
            lo: div_floor(min, &unit),
            hi: div_ceil(max, &unit),
            prec: self.prec,
        }
    }

    /// Exact scaling by an integer.
    pub fn mul_int(&self, k: &BigInt) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if k.is_negative() {
            Interval { lo: b, hi: a, prec: self.prec }
        } else {
            Interval { lo: a, hi: b, prec: self.prec }
        }
    }

    pub fn mul_i64(&self, k: i64) -> Interval {
        self.mul_int(&BigInt::from(k))
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        debug_assert_eq!(self.prec, o.prec);
        if o.contains_zero() {
            return None;
        }
        let p = self.prec as usize;
        let nums = [&self.lo << p, &self.hi << p];
        let dens = [&o.lo, &o.hi];
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in &nums {
            for d in dens {
                let f = div_floor(n, d);
                let c = div_ceil(n, d);
                lo = Some(match lo {
                    Some(x) if x <= f => x,
                    _ => f,
                });
                hi = Some(match hi {
                    Some(x) if x >= c => x,
                    _ => c,
                });
            }
        }
        Some(Interval { lo: lo?, hi: hi?, prec: self.prec })
    }

    /// Halving, rounded outward.
    pub fn half(&self) -> Interval {
        let two = BigInt::from(2);
        Interval {
            lo: div_floor(&self.lo, &two),
            hi: div_ceil(&self.hi, &two),
            prec: self.prec,
        }
    }

    /// Evaluates a rational polynomial by Horner's rule.
    pub fn eval_poly(coeffs: &[BigRational], x: &Interval) -> Interval {
        let prec = x.prec;
        coeffs.iter().rev().fold(Interval::zero(prec), |acc, c| {
            acc.mul(x).add(&Interval::from_rational(c, prec))
        })
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) >> 1usize;
        let bits = mid.bits() as i64;
        let shift = (bits - 60).max(0);
        let top: i64 = (&mid >> shift as usize).try_into().unwrap_or(0);
        top as f64 * 2f64.powi((shift - self.prec as i64) as i32)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.6e} ± {:.1e} @{}]", self.to_f64(), {
            let w = &self.hi - &self.lo;
            let bits = w.bits() as i32;
            2f64.powi(bits - self.prec as i32)
        }, self.prec)
    }
}

/// Rectangular complex interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn real(re: Interval) -> Self {
        let prec = re.prec();
        ComplexInterval { re, im: Interval::zero(prec) }
    }

    pub fn one(prec: u32) -> Self {
        ComplexInterval::real(Interval::one(prec))
    }

    pub fn add(&self, o: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexInterval) -> Self {
        ComplexInterval { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn mul(&self, o: &ComplexInterval) -> Self {
        ComplexInterval {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn scale(&self, r: &Interval) -> Self {
        ComplexInterval { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval { re: self.re.clone(), im: self.im.neg() }
    }

    /// Division by a real interval excluding zero.
    pub fn div_real(&self, r: &Interval) -> Option<Self> {
        Some(ComplexInterval { re: self.re.div(r)?, im: self.im.div(r)? })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_enclosure() {
        let third = Interval::from_rational(&q(1, 3), 64);
        assert!(third.contains_rational(&q(1, 3)));
        assert!(!third.contains_rational(&(q(1, 3) + q(1, 1 << 62))));
        let minus = Interval::from_rational(&q(-1, 3), 64);
        assert!(minus.contains_rational(&q(-1, 3)));
    }

    #[test]
    fn certify() {
        let x = Interval::from_rational(&q(7, 1), 16);
        assert_eq!(x.certify_integer(), Some(BigInt::from(7)));
        let y = Interval::from_rational(&q(-29, 4), 16);
        assert_eq!(y.certify_integer(), None);
        let s = Interval::sqrt_int(&BigInt::from(2), 128);
        let sq = s.mul(&s);
        assert_eq!(sq.certify_integer(), Some(BigInt::from(2)));
        assert!(Interval::zero(8).certify_integer() == Some(BigInt::zero()));
    }

    #[test]
    fn division_encloses_quotient() {
        let a = Interval::from_rational(&q(-5, 7), 96);
        let b = Interval::from_rational(&q(3, 11), 96);
        let c = a.div(&b).unwrap();
        assert!(c.contains_rational(&q(-55, 21)));
        assert!(a.div(&Interval::zero(96)).is_none());
    }

    #[test]
    fn complex_product() {
        let p = 80;
        let i = ComplexInterval { re: Interval::zero(p), im: Interval::one(p) };
        let m1 = i.mul(&i);
        assert_eq!(m1.re.certify_integer(), Some(BigInt::from(-1)));
        assert_eq!(m1.im.certify_integer(), Some(BigInt::zero()));
    }

    #[test]
    fn ladder() {
        let v: Vec<u32> = precision_ladder(DEFAULT_PRECISION_CAP).collect();
        assert_eq!(v, vec![128, 256, 512, 1024, 2048, 4096, 8192]);
    }

    proptest! {
        #[test]
        fn outward_rounding_encloses(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let (x, y) = (q(a, b), q(c, d));
            let p = 40;
            let (ix, iy) = (Interval::from_rational(&x, p), Interval::from_rational(&y, p));
            prop_assert!(ix.mul(&iy).contains_rational(&(&x * &y)));
            prop_assert!(ix.add(&iy).contains_rational(&(&x + &y)));
            prop_assert!(ix.sub(&iy).contains_rational(&(&x - &y)));
            if c != 0 {
                prop_assert!(ix.div(&iy).unwrap().contains_rational(&(&x / &y)));
            }
        }

        #[test]
        fn doubling_precision_nests(a in -1000i64..1000, b in 1i64..1000, n in 1u32..100) {
            let x = q(a, b);
            let lo = Interval::from_rational(&x, 64).mul(&Interval::sqrt_int(&n.into(), 64));
            let hi = Interval::from_rational(&x, 128).mul(&Interval::sqrt_int(&n.into(), 128));
            prop_assert!(lo.encloses(&hi));
        }
    }
}
