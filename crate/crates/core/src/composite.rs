//! The composite field `K = L M` of a totally real `L` and an imaginary
//! quadratic `M` with coprime discriminants.
//!
//! Elements are written `x_1 + x_2 l_2 + ... + x_n l_n + w (y_1 + y_2 l_2 + ... + y_n l_n)`.
//! The index of such an element splits into three integer factors:
//! the norm `N_{M/Q}` of the relative index form `I_L(X_2, ..., X_n)` with
//! `X_j = x_j + w y_j`, the norm `N_{L/Q}` of the `y` part, and the cross
//! conjugate product `F`. The first and third are evaluated with certified
//! intervals; [`CompositeField::composite_index`] is computed independently
//! from the exact characteristic polynomial.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::interval::{precision_ladder, ComplexInterval, Interval, DEFAULT_PRECISION_CAP};
use crate::exact::intutil::exact_sqrt;
use crate::exact::poly::{interpolate_at_naturals, RatPoly};
use crate::exact::resultant::{discriminant, resultant};
use crate::imq::{ImagQuadField, QuadInt};
use crate::number_field::{FieldElement, NumberField};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositeElement {
    /// `x_1, ..., x_n`
    pub x: Vec<i64>,
    /// `y_1, ..., y_n`
    pub y: Vec<i64>,
}

impl CompositeElement {
    pub fn new(x: Vec<i64>, y: Vec<i64>) -> Self {
        CompositeElement { x, y }
    }

    /// Builds from `x_2..x_n` (with `x_1 = 0`) and `y_1..y_n`.
    pub fn from_tail(x_tail: &[i64], y: &[i64]) -> Self {
        let mut x = Vec::with_capacity(x_tail.len() + 1);
        x.push(0);
        x.extend_from_slice(x_tail);
        CompositeElement { x, y: y.to_vec() }
    }

    pub fn x_tail(&self) -> &[i64] {
        &self.x[1..]
    }

    pub fn y_tail(&self) -> &[i64] {
        &self.y[1..]
    }

    pub fn negated(&self) -> Self {
        CompositeElement {
            x: self.x.iter().map(|v| -v).collect(),
            y: self.y.iter().map(|v| -v).collect(),
        }
    }
}

/// The three factors of the index of an element of `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexFactors {
    pub relative_form: QuadInt,
    pub eq1: BigInt,
    pub eq2: BigInt,
    pub third: BigInt,
}

impl IndexFactors {
    pub fn product_abs(&self) -> BigInt {
        (&self.eq1 * &self.eq2 * &self.third).abs()
    }

    pub fn all_units(&self) -> bool {
        [&self.eq1, &self.eq2, &self.third].iter().all(|v| v.abs().is_one())
    }
}

#[derive(Debug)]
pub struct CompositeField {
    l: Arc<NumberField>,
    m: ImagQuadField,
    disc: BigInt,
    precision_cap: u32,
}

impl CompositeField {
    pub fn new(l: Arc<NumberField>, m: ImagQuadField) -> Result<Self> {
        let g = l.discriminant().gcd(m.discriminant());
        if !g.is_one() {
            return Err(Error::Coprimality {
                d_l: l.discriminant().to_string(),
                d_m: m.discriminant().to_string(),
                gcd: g.to_string(),
            });
        }
        let n = l.degree() as u32;
        let disc = m.discriminant().pow(n) * l.discriminant() * l.discriminant();
        Ok(CompositeField { l, m, disc, precision_cap: DEFAULT_PRECISION_CAP })
    }

    pub fn with_precision_cap(mut self, cap: u32) -> Self {
        self.precision_cap = cap;
        self
    }

    pub fn precision_cap(&self) -> u32 {
        self.precision_cap
    }

    pub fn real_field(&self) -> &NumberField {
        &self.l
    }

    pub fn real_field_arc(&self) -> Arc<NumberField> {
        Arc::clone(&self.l)
    }

    pub fn quadratic(&self) -> &ImagQuadField {
        &self.m
    }

    pub fn degree(&self) -> usize {
        2 * self.l.degree()
    }

    /// `D_K = D_M^n D_L^2`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    fn check(&self, a: &CompositeElement) -> Result<()> {
        let n = self.l.degree();
        if a.x.len() != n || a.y.len() != n {
            return Err(Error::InvalidParameter(format!(
                "composite element needs {} x and {} y coordinates",
                n, n
            )));
        }
        Ok(())
    }

    fn adaptive<T>(&self, what: &'static str, mut attempt: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
        for prec in precision_ladder(self.precision_cap) {
            if let Some(v) = attempt(prec)? {
                return Ok(v);
            }
        }
        Err(Error::PrecisionCap { cap: self.precision_cap, what })
    }

    /// `I_L(X_2, ..., X_n)` in `Z_M`, with the conjugates of `L` taken in
    /// ascending order and `w` in the upper half plane.
    pub fn relative_index_form(&self, a: &CompositeElement) -> Result<QuadInt> {
        self.check(a)?;
        let n = self.l.degree();
        self.adaptive("relative index form", |prec| {
            let emb = self.l.embeddings(prec);
            let w = self.m.omega_interval(prec);
            let mut prod = ComplexInterval::one(prec);
            for j1 in 0..n {
                for j2 in j1 + 1..n {
                    let mut rx = Interval::zero(prec);
                    let mut ry = Interval::zero(prec);
                    for i in 1..n {
                        let delta = emb.values[j1][i].sub(&emb.values[j2][i]);
                        rx = rx.add(&delta.mul_i64(a.x[i]));
                        ry = ry.add(&delta.mul_i64(a.y[i]));
                    }
                    let term = ComplexInterval {
                        re: rx.add(&w.re.mul(&ry)),
                        im: w.im.mul(&ry),
                    };
                    prod = prod.mul(&term);
                }
            }
            let root = Interval::sqrt_int(self.l.discriminant(), prec);
            Ok(prod.div_real(&root).and_then(|v| self.m.resolve(&v)))
        })
    }

    /// `N_{M/Q}(I_L(X_2, ..., X_n))`.
    pub fn factor_eq1(&self, a: &CompositeElement) -> Result<BigInt> {
        Ok(self.m.norm(&self.relative_index_form(a)?))
    }

    /// `N_{L/Q}(y_1 + y_2 l_2 + ... + y_n l_n)`, exact.
    pub fn factor_eq2(&self, a: &CompositeElement) -> Result<BigInt> {
        self.check(a)?;
        let nrm = self.l.norm(&FieldElement::from_ints(&a.y))?;
        if !nrm.is_integer() {
            return Err(Error::Invariant(format!("non-integral norm {}", nrm)));
        }
        Ok(nrm.to_integer())
    }

    /// `F = prod_{j1 != j2} (alpha^(j1,1) - alpha^(j2,2))`.
    pub fn factor_f(&self, a: &CompositeElement) -> Result<BigInt> {
        self.check(a)?;
        let n = self.l.degree();
        self.adaptive("third factor", |prec| {
            let emb = self.l.embeddings(prec);
            let w = self.m.omega_interval(prec);
            let mut prod = ComplexInterval::one(prec);
            for j1 in 0..n {
                for j2 in 0..n {
                    if j1 == j2 {
                        continue;
                    }
                    let mut sx = Interval::zero(prec);
                    let mut sy_minus = Interval::zero(prec);
                    let mut sy_plus = Interval::zero(prec);
                    for i in 0..n {
                        let (u, v) = (&emb.values[j1][i], &emb.values[j2][i]);
                        let minus = u.sub(v);
                        if i > 0 {
                            sx = sx.add(&minus.mul_i64(a.x[i]));
                        }
                        sy_minus = sy_minus.add(&minus.mul_i64(a.y[i]));
                        sy_plus = sy_plus.add(&u.add(v).mul_i64(a.y[i]));
                    }
                    // w u - conj(w) v = Re(w)(u - v) + i Im(w)(u + v)
                    let term = ComplexInterval {
                        re: sx.add(&w.re.mul(&sy_minus)),
                        im: w.im.mul(&sy_plus),
                    };
                    prod = prod.mul(&term);
                }
            }
            let (Some(re), Some(im)) = (prod.re.certify_integer(), prod.im.certify_integer()) else {
                return Ok(None);
            };
            if !im.is_zero() {
                return Err(Error::Invariant(format!("third factor has imaginary part {}", im)));
            }
            Ok(Some(re))
        })
    }

    pub fn factors(&self, a: &CompositeElement) -> Result<IndexFactors> {
        let relative_form = self.relative_index_form(a)?;
        Ok(IndexFactors {
            eq1: self.m.norm(&relative_form),
            relative_form,
            eq2: self.factor_eq2(a)?,
            third: self.factor_f(a)?,
        })
    }

    /// Characteristic polynomial of `alpha` over `Q`, through the resultant
    /// tower `Res_y(g(y), Res_x(f(x), t - A(x) - y B(x)))`, where `g` is the
    /// minimal polynomial of `w`, `A` the `x` part and `B` the `y` part.
    pub fn char_poly(&self, a: &CompositeElement) -> Result<RatPoly> {
        self.check(a)?;
        let n = self.l.degree();
        let l = &*self.l;
        let ax = l.to_power(&FieldElement::from_ints(&a.x));
        let bx = l.to_power(&FieldElement::from_ints(&a.y));
        let f = l.poly().to_rat();
        let g = self.m.omega_min_poly().to_rat();
        interpolate_at_naturals(2 * n, |t| {
            let base = &RatPoly::constant(BigRational::from_integer(t.into())) - &ax;
            let inner = interpolate_at_naturals(n, |y| {
                let q = &base - &bx.scale(&BigRational::from_integer(y.into()));
                if q.is_zero() {
                    Ok(BigRational::zero())
                } else {
                    resultant(&f, &q)
                }
            })?;
            if inner.is_zero() {
                Ok(BigRational::zero())
            } else {
                resultant(&g, &inner)
            }
        })
    }

    /// `sqrt(|D(alpha) / D_K|)`, or 0 when `alpha` does not generate `K`.
    pub fn composite_index(&self, a: &CompositeElement) -> Result<BigInt> {
        let chi = self.char_poly(a)?;
        let d = discriminant(&chi)?;
        if d.is_zero() {
            return Ok(BigInt::zero());
        }
        if !d.is_integer() {
            return Err(Error::Invariant(format!("non-integral discriminant {}", d)));
        }
        let (q, r) = d.to_integer().abs().div_rem(&self.disc.abs());
        if !r.is_zero() {
            return Err(Error::Invariant("D(alpha) not divisible by D_K".into()));
        }
        exact_sqrt(&q).ok_or_else(|| Error::Invariant(format!("D(alpha)/D_K = {} is not a square", q)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::IntPoly;

    fn example() -> CompositeField {
        let l = NumberField::with_power_basis(IntPoly::from_i64s(&[1, -1, -4, 0, 1]), None).unwrap();
        CompositeField::new(Arc::new(l), ImagQuadField::new(1).unwrap()).unwrap()
    }

    fn i_xi() -> CompositeElement {
        CompositeElement::new(vec![0; 4], vec![0, 1, 0, 0])
    }

    #[test]
    fn discriminant_formula() {
        assert_eq!(example().discriminant(), &BigInt::from(980_441_344u64));
    }

    #[test]
    fn coprimality_is_enforced() {
        let l = NumberField::with_power_basis(IntPoly::from_i64s(&[-2, 0, 1]), None).unwrap();
        let e = CompositeField::new(Arc::new(l), ImagQuadField::new(1).unwrap()).unwrap_err();
        assert!(matches!(e, Error::Coprimality { .. }));
    }

    #[test]
    fn example_generator() {
        let k = example();
        let a = i_xi();
        let chi = k.char_poly(&a).unwrap();
        assert_eq!(chi, RatPoly::from_i64s(&[1, 0, 9, 0, 18, 0, 8, 0, 1]));
        assert_eq!(k.composite_index(&a).unwrap(), BigInt::one());
        let fac = k.factors(&a).unwrap();
        assert!(fac.all_units(), "{:?}", fac);
        assert!(fac.relative_form.a.abs().is_one() && fac.relative_form.b.is_zero());
    }

    #[test]
    fn omega_alone() {
        let k = example();
        let w = CompositeElement::new(vec![0; 4], vec![1, 0, 0, 0]);
        assert_eq!(k.factor_f(&w).unwrap(), BigInt::from(4096));
        assert_eq!(k.composite_index(&w).unwrap(), BigInt::zero());
        assert_eq!(k.factor_eq1(&w).unwrap(), BigInt::zero());
        assert_eq!(k.factor_eq2(&w).unwrap(), BigInt::one());
    }

    #[test]
    fn real_part_only() {
        let k = example();
        let xi = CompositeElement::new(vec![0, 1, 0, 0], vec![0; 4]);
        let rel = k.relative_index_form(&xi).unwrap();
        assert!(rel.a.abs().is_one() && rel.b.is_zero());
        assert_eq!(k.factor_eq2(&xi).unwrap(), BigInt::zero());
        assert_eq!(k.composite_index(&xi).unwrap(), BigInt::zero());
        let zero = CompositeElement::new(vec![0; 4], vec![0; 4]);
        assert!(k.relative_index_form(&zero).unwrap().is_zero());
    }

    #[test]
    fn shape_errors() {
        let k = example();
        let bad = CompositeElement::new(vec![0; 3], vec![0; 4]);
        assert!(matches!(k.factor_f(&bad), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn precision_cap_is_reported() {
        let k = example().with_precision_cap(64);
        let e = k.factor_f(&i_xi()).unwrap_err();
        assert!(matches!(e, Error::PrecisionCap { cap: 64, .. }));
    }
}
