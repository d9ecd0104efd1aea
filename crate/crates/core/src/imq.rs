//! Imaginary quadratic fields `M = Q(i sqrt d)` and their integers `a + b w`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::interval::{ComplexInterval, Interval};
use crate::exact::intutil::squarefree;
use crate::exact::poly::IntPoly;

/// Which generator the ring of integers uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OmegaCase {
    /// `-d = 2, 3 (mod 4)`: `w = i sqrt d`.
    Nonres,
    /// `-d = 1 (mod 4)`: `w = (1 + i sqrt d) / 2`.
    Res,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImagQuadField {
    d: i64,
    case: OmegaCase,
    disc: BigInt,
}

/// `a + b w` in the ring of integers of an [`ImagQuadField`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadInt {
    pub a: BigInt,
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        QuadInt { a: a.into(), b: b.into() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}w", self.a, self.b)
    }
}

impl ImagQuadField {
    pub fn new(d: i64) -> Result<Self> {
        if d < 1 || !squarefree(d as u64) {
            return Err(Error::NotSquarefreeD(d));
        }
        // -d mod 4 == 1  <=>  d mod 4 == 3
        let (case, disc) = if d % 4 == 3 {
            (OmegaCase::Res, BigInt::from(-d))
        } else {
            (OmegaCase::Nonres, BigInt::from(-4 * d))
        };
        Ok(ImagQuadField { d, case, disc })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn case(&self) -> OmegaCase {
        self.case
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    /// `x^2 + d` or `x^2 - x + (1 + d)/4`.
    pub fn omega_min_poly(&self) -> IntPoly {
        match self.case {
            OmegaCase::Nonres => IntPoly::from_i64s(&[self.d, 0, 1]),
            OmegaCase::Res => IntPoly::from_i64s(&[(1 + self.d) / 4, -1, 1]),
        }
    }

    /// `w + conj(w)` and `w * conj(w)`.
    pub fn omega_trace_norm(&self) -> (i64, i64) {
        match self.case {
            OmegaCase::Nonres => (0, self.d),
            OmegaCase::Res => (1, (1 + self.d) / 4),
        }
    }

    pub fn norm(&self, z: &QuadInt) -> BigInt {
        let (t, n) = self.omega_trace_norm();
        &z.a * &z.a + &z.a * &z.b * BigInt::from(t) + &z.b * &z.b * BigInt::from(n)
    }

    pub fn mul(&self, x: &QuadInt, y: &QuadInt) -> QuadInt {
        // w^2 = t w - n
        let (t, n) = self.omega_trace_norm();
        let bb = &x.b * &y.b;
        QuadInt {
            a: &x.a * &y.a - &bb * BigInt::from(n),
            b: &x.a * &y.b + &x.b * &y.a + bb * BigInt::from(t),
        }
    }

    pub fn conj(&self, z: &QuadInt) -> QuadInt {
        // conj(w) = t - w
        let (t, _) = self.omega_trace_norm();
        QuadInt { a: &z.a + &z.b * BigInt::from(t), b: -&z.b }
    }

    /// Enclosure of `w` (the embedding with positive imaginary part).
    pub fn omega_interval(&self, prec: u32) -> ComplexInterval {
        let root = Interval::sqrt_int(&BigInt::from(self.d), prec);
        match self.case {
            OmegaCase::Nonres => ComplexInterval { re: Interval::zero(prec), im: root },
            OmegaCase::Res => ComplexInterval { re: Interval::one(prec).half(), im: root.half() },
        }
    }

    /// Resolves a complex enclosure of an element of `Z[w]` to exact
    /// coordinates, or `None` if the enclosure is too wide to decide.
    pub fn resolve(&self, z: &ComplexInterval) -> Option<QuadInt> {
        let prec = z.re.prec();
        let root = Interval::sqrt_int(&BigInt::from(self.d), prec);
        match self.case {
            OmegaCase::Nonres => {
                let b = z.im.div(&root)?.certify_integer()?;
                let a = z.re.certify_integer()?;
                Some(QuadInt { a, b })
            }
            OmegaCase::Res => {
                let b = z.im.mul_i64(2).div(&root)?.certify_integer()?;
                let half_b = Interval::point_int(&b, prec).half();
                let a = z.re.sub(&half_b).certify_integer()?;
                Some(QuadInt { a, b })
            }
        }
    }
}
