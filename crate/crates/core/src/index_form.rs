//! The index form `I_L(x_2, ..., x_n)` of a field as an explicit integer form.
//!
//! Signed values come from certified interval products over the ordered real
//! conjugates; the coefficients are recovered exactly by interpolation on a
//! tensor grid. The form is used for fast exhaustive box scans, and every
//! vector a scan reports can be re-checked with
//! [`NumberField::element_index`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::interval::{precision_ladder, Interval, DEFAULT_PRECISION_CAP};
use crate::exact::poly::RatPoly;
use crate::imq::{ImagQuadField, QuadInt};
use crate::number_field::{is_canonical, NumberField};

/// Signed `I_L(x_2, ..., x_n)`, with conjugates in ascending order.
pub fn index_form_value(field: &NumberField, tail: &[i64], cap: u32) -> Result<BigInt> {
    field.check_tail(tail)?;
    let n = field.degree();
    for prec in precision_ladder(cap) {
        let emb = field.embeddings(prec);
        let mut prod = Interval::one(prec);
        for j1 in 0..n {
            for j2 in j1 + 1..n {
                let mut s = Interval::zero(prec);
                for (i, &x) in tail.iter().enumerate() {
                    s = s.add(&emb.values[j1][i + 1].sub(&emb.values[j2][i + 1]).mul_i64(x));
                }
                prod = prod.mul(&s);
            }
        }
        let root = Interval::sqrt_int(field.discriminant(), prec);
        if let Some(v) = prod.div(&root).and_then(|q| q.certify_integer()) {
            return Ok(v);
        }
    }
    Err(Error::PrecisionCap { cap, what: "index form value" })
}

#[derive(Clone, Debug)]
struct Monomial {
    exps: Vec<u32>,
    coeff: BigInt,
    small: Option<i128>,
}

/// Homogeneous form of degree `n(n-1)/2` in `n - 1` variables.
#[derive(Clone, Debug)]
pub struct IndexForm {
    vars: usize,
    degree: u32,
    terms: Vec<Monomial>,
}

type Sparse = BTreeMap<Vec<u32>, BigRational>;

fn tensor_interpolate(
    vars: usize,
    deg: u32,
    prefix: &mut Vec<i64>,
    value: &mut dyn FnMut(&[i64]) -> Result<BigInt>,
) -> Result<Sparse> {
    if prefix.len() == vars {
        let mut m = Sparse::new();
        let v = value(prefix)?;
        if !v.is_zero() {
            m.insert(Vec::new(), BigRational::from_integer(v));
        }
        return Ok(m);
    }
    let mut slices = Vec::with_capacity(deg as usize + 1);
    for t in 0..=deg as i64 {
        prefix.push(t);
        slices.push(tensor_interpolate(vars, deg, prefix, value)?);
        prefix.pop();
    }
    let keys: std::collections::BTreeSet<Vec<u32>> = slices.iter().flat_map(|s| s.keys().cloned()).collect();
    let mut out = Sparse::new();
    for key in keys {
        let pts: Vec<(BigRational, BigRational)> = slices
            .iter()
            .enumerate()
            .map(|(t, s)| {
                (
                    BigRational::from_integer(t.into()),
                    s.get(&key).cloned().unwrap_or_else(BigRational::zero),
                )
            })
            .collect();
        let p = RatPoly::interpolate(&pts);
        for (j, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut exps = Vec::with_capacity(key.len() + 1);
            exps.push(j as u32);
            exps.extend_from_slice(&key);
            out.insert(exps, c.clone());
        }
    }
    Ok(out)
}

impl IndexForm {
    /// Recovers the form of `field` from `(e + 1)^(n - 2)` certified values.
    pub fn build(field: &NumberField) -> Result<IndexForm> {
        Self::build_with_cap(field, DEFAULT_PRECISION_CAP)
    }

    pub fn build_with_cap(field: &NumberField, cap: u32) -> Result<IndexForm> {
        let n = field.degree();
        let degree = (n * (n - 1) / 2) as u32;
        let vars = n - 1;
        // dehomogenize at x_2 = 1
        let mut eval = |rest: &[i64]| {
            let mut tail = Vec::with_capacity(vars);
            tail.push(1);
            tail.extend_from_slice(rest);
            index_form_value(field, &tail, cap)
        };
        let sparse = tensor_interpolate(vars - 1, degree, &mut Vec::new(), &mut eval)?;
        let mut terms = Vec::with_capacity(sparse.len());
        for (rest, c) in sparse {
            let total: u32 = rest.iter().sum();
            if total > degree || !c.is_integer() {
                return Err(Error::Invariant(format!("index form term {:?} with coefficient {}", rest, c)));
            }
            let mut exps = Vec::with_capacity(vars);
            exps.push(degree - total);
            exps.extend(rest);
            let coeff = c.to_integer();
            terms.push(Monomial { exps, small: coeff.to_i128(), coeff });
        }
        Ok(IndexForm { vars, degree, terms })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponents, coefficient)` in graded order of construction.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|t| (t.exps.as_slice(), &t.coeff))
    }

    fn eval_small(&self, x: &[i64]) -> Option<i128> {
        let deg = self.degree as usize;
        let mut powers = vec![vec![1i128; deg + 1]; self.vars];
        for (v, &xv) in x.iter().enumerate() {
            for k in 1..=deg {
                powers[v][k] = powers[v][k - 1].checked_mul(xv as i128)?;
            }
        }
        let mut acc: i128 = 0;
        for t in &self.terms {
            let mut m = t.small?;
            for (v, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    m = m.checked_mul(powers[v][e as usize])?;
                }
            }
            acc = acc.checked_add(m)?;
        }
        Some(acc)
    }

    /// Signed value at integer coordinates `x_2..x_n`.
    pub fn eval(&self, x: &[i64]) -> BigInt {
        assert_eq!(x.len(), self.vars, "coordinate count");
        if let Some(v) = self.eval_small(x) {
            return BigInt::from(v);
        }
        let mut acc = BigInt::zero();
        for t in &self.terms {
            let mut m = t.coeff.clone();
            for (v, &e) in t.exps.iter().enumerate() {
                m *= BigInt::from(x[v]).pow(e);
            }
            acc += m;
        }
        acc
    }

    fn eval_quad_small(&self, t: i128, nn: i128, x: &[i64], y: &[i64]) -> Option<(i128, i128)> {
        let mul = |p: (i128, i128), q: (i128, i128)| -> Option<(i128, i128)> {
            let bd = p.1.checked_mul(q.1)?;
            let re = p.0.checked_mul(q.0)?.checked_sub(bd.checked_mul(nn)?)?;
            let im = p.0.checked_mul(q.1)?.checked_add(p.1.checked_mul(q.0)?)?.checked_add(bd.checked_mul(t)?)?;
            Some((re, im))
        };
        let deg = self.degree as usize;
        let mut powers = vec![vec![(1i128, 0i128); deg + 1]; self.vars];
        for v in 0..self.vars {
            let base = (x[v] as i128, y[v] as i128);
            for k in 1..=deg {
                powers[v][k] = mul(powers[v][k - 1], base)?;
            }
        }
        let (mut re, mut im) = (0i128, 0i128);
        for term in &self.terms {
            let c = term.small?;
            let mut m = (c, 0i128);
            for (v, &e) in term.exps.iter().enumerate() {
                if e > 0 {
                    m = mul(m, powers[v][e as usize])?;
                }
            }
            re = re.checked_add(m.0)?;
            im = im.checked_add(m.1)?;
        }
        Some((re, im))
    }

    /// `I_L(x_2 + w y_2, ..., x_n + w y_n)` evaluated exactly in `Z_M`.
    pub fn eval_quad(&self, m: &ImagQuadField, x: &[i64], y: &[i64]) -> QuadInt {
        assert!(x.len() == self.vars && y.len() == self.vars, "coordinate count");
        let (t, nn) = m.omega_trace_norm();
        if let Some((a, b)) = self.eval_quad_small(t as i128, nn as i128, x, y) {
            return QuadInt::new(a, b);
        }
        let mut acc = QuadInt::new(0, 0);
        for term in &self.terms {
            let mut p = QuadInt::new(term.coeff.clone(), 0);
            for (v, &e) in term.exps.iter().enumerate() {
                let base = QuadInt::new(x[v], y[v]);
                for _ in 0..e {
                    p = m.mul(&p, &base);
                }
            }
            acc = QuadInt::new(acc.a + p.a, acc.b + p.b);
        }
        acc
    }

    /// `|I_L(x)|`.
    pub fn index(&self, x: &[i64]) -> BigInt {
        self.eval(x).abs()
    }

    /// All canonically signed nonzero vectors of sup-norm at most `radius`
    /// whose index satisfies `keep`, in lexicographic order.
    pub fn scan<F>(&self, radius: i64, keep: F) -> Vec<(Vec<i64>, BigInt)>
    where
        F: Fn(&BigInt) -> bool + Sync,
    {
        let vars = self.vars;
        let mut out: Vec<(Vec<i64>, BigInt)> = (-radius..=radius)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut found = Vec::new();
                let mut x = vec![-radius; vars];
                x[0] = first;
                loop {
                    if is_canonical(&x) && x.iter().any(|&c| c != 0) {
                        let idx = self.index(&x);
                        if keep(&idx) {
                            found.push((x.clone(), idx));
                        }
                    }
                    // odometer over coordinates 1..vars
                    let mut k = vars;
                    loop {
                        if k == 1 {
                            return found;
                        }
                        k -= 1;
                        if x[k] < radius {
                            x[k] += 1;
                            break;
                        }
                        x[k] = -radius;
                    }
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Vectors in the box with `1 <= index <= bound`.
    pub fn bounded(&self, bound: &BigInt, radius: i64) -> Vec<(Vec<i64>, BigInt)> {
        self.scan(radius, |i| !i.is_zero() && i <= bound)
    }

    /// Nonzero vectors in the box with index 0 (elements of proper subfields).
    pub fn zero_index(&self, radius: i64) -> Vec<Vec<i64>> {
        self.scan(radius, |i| i.is_zero()).into_iter().map(|(v, _)| v).collect()
    }
}

/// Lattice points with `1 <= |I_L| <= bound` and sup-norm at most `radius`,
/// canonically signed and sorted; no claim is made outside the box.
pub fn enumerate_bounded_index(field: &NumberField, bound: &BigInt, radius: i64) -> Result<Vec<(Vec<i64>, BigInt)>> {
    if bound < &BigInt::from(1) || radius < 1 {
        return Err(Error::InvalidParameter("bound and box radius must be at least 1".into()));
    }
    Ok(field.index_form()?.bounded(bound, radius))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::IntPoly;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn example_field() -> &'static NumberField {
        static F: OnceLock<NumberField> = OnceLock::new();
        F.get_or_init(|| NumberField::with_power_basis(IntPoly::from_i64s(&[1, -1, -4, 0, 1]), None).unwrap())
    }

    #[test]
    fn signed_values() {
        let l = example_field();
        let v = index_form_value(l, &[1, 0, 0], DEFAULT_PRECISION_CAP).unwrap();
        assert_eq!(v.abs(), BigInt::from(1));
        assert!(index_form_value(l, &[0, 0, 0], DEFAULT_PRECISION_CAP).unwrap().is_zero());
    }

    #[test]
    fn form_shape() {
        let form = example_field().index_form().unwrap();
        assert_eq!(form.degree(), 6);
        assert!(form.terms().all(|(e, _)| e.iter().sum::<u32>() == 6));
        assert!(form.term_count() <= 28);
    }

    #[test]
    fn quadratic_field_form() {
        // Z[sqrt 2]: I(x_2) = x_2 in the basis (1, sqrt 2)
        let l = NumberField::with_power_basis(IntPoly::from_i64s(&[-2, 0, 1]), None).unwrap();
        let form = l.index_form().unwrap();
        assert_eq!(form.index(&[5]), BigInt::from(5));
    }

    #[test]
    fn bad_parameters() {
        assert!(enumerate_bounded_index(example_field(), &BigInt::from(0), 3).is_err());
        assert!(enumerate_bounded_index(example_field(), &BigInt::from(1), 0).is_err());
    }

    #[test]
    fn quadratic_evaluation_matches_real_values() {
        let l = example_field();
        let form = l.index_form().unwrap();
        let m = ImagQuadField::new(5).unwrap();
        let v = form.eval_quad(&m, &[2, -1, 3], &[0, 0, 0]);
        assert_eq!(v, QuadInt::new(form.eval(&[2, -1, 3]), 0));
        // X = w x scales by w^6
        let w6 = (0..6).fold(QuadInt::new(1, 0), |p, _| m.mul(&p, &QuadInt::new(0, 1)));
        let scaled = form.eval_quad(&m, &[0, 0, 0], &[2, -1, 3]);
        assert_eq!(scaled, m.mul(&w6, &QuadInt::new(form.eval(&[2, -1, 3]), 0)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn form_matches_discriminant_route(x in prop::collection::vec(-6i64..=6, 3)) {
            let l = example_field();
            let form = l.index_form().unwrap();
            prop_assert_eq!(form.index(&x), l.element_index(&x).unwrap());
            prop_assert_eq!(form.eval(&x), index_form_value(l, &x, DEFAULT_PRECISION_CAP).unwrap());
        }
    }
}
