//! Totally real number fields with an explicit integral basis.
//!
//! A field is `Q(xi)` for a root `xi` of a monic irreducible integer
//! polynomial `f` of degree `n` with `n` real roots. The integral basis
//! `(l_1 = 1, l_2, ..., l_n)` is given by a rational matrix whose row `i`
//! holds the power-basis coordinates of `l_i`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::interval::Interval;
use crate::index_form::IndexForm;
use crate::exact::intutil::{divisors, exact_sqrt};
use crate::exact::matrix::RatMatrix;
use crate::exact::modp::irreducibility_certificate;
use crate::exact::poly::{interpolate_at_naturals, IntPoly, RatPoly};
use crate::exact::resultant::{discriminant, discriminant_int, resultant};
use crate::exact::roots::{isolate_real_roots, refine_root_bits, sturm_real_root_count, RootInterval};

/// Conjugates of the integral basis at one working precision.
#[derive(Debug)]
pub struct Embeddings {
    pub prec: u32,
    /// `values[j][i]` encloses `l_i` under the `j`-th real embedding.
    pub values: Vec<Vec<Interval>>,
}

pub struct NumberField {
    poly: IntPoly,
    poly_rat: RatPoly,
    n: usize,
    basis: RatMatrix,
    basis_inv: RatMatrix,
    basis_polys: Vec<RatPoly>,
    poly_disc: BigInt,
    disc: BigInt,
    roots: Vec<RootInterval>,
    embeddings: RwLock<BTreeMap<u32, Arc<Embeddings>>>,
    index_form: OnceLock<Arc<IndexForm>>,
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("poly", &self.poly)
            .field("disc", &self.disc)
            .finish()
    }
}

/// Element of the field in integral-basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub coords: Vec<BigRational>,
}

impl FieldElement {
    pub fn from_ints(coords: &[i64]) -> Self {
        FieldElement {
            coords: coords
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }
}

fn irreducibility_check(f: &IntPoly) -> Result<()> {
    let n = f.degree();
    let c0 = f.coeff(0);
    if c0.is_zero() {
        return Err(Error::Reducible("x divides f".into()));
    }
    for d in divisors(&c0) {
        for r in [d.clone(), -d] {
            if f.eval(&r).is_zero() {
                return Err(Error::Reducible(format!("rational root {}", r)));
            }
        }
    }
    if n <= 3 {
        return Ok(());
    }
    if n == 4 {
        // Monic quadratic factors x^2 + b x + c: c | c0 and
        // |b| <= 2 ||f||_2 (Landau-Mignotte).
        let norm_sq: BigInt = f.coeffs().iter().map(|c| c * c).sum();
        let bmax = BigInt::from(2) * (norm_sq.sqrt() + 1u32);
        let fr = f.to_rat();
        for c in divisors(&c0) {
            for c in [c.clone(), -c] {
                let mut b = -bmax.clone();
                while b <= bmax {
                    let g = IntPoly::new(vec![c.clone(), b.clone(), BigInt::one()]).to_rat();
                    if fr.rem(&g).is_zero() {
                        return Err(Error::Reducible(format!("quadratic factor {}", g)));
                    }
                    b += 1;
                }
            }
        }
        return Ok(());
    }
    match irreducibility_certificate(f) {
        Some(_) => Ok(()),
        None => Err(Error::IrreducibilityUnverified(n)),
    }
}

impl NumberField {
    /// Validates `f` and the basis and builds the field.
    pub fn new(f: IntPoly, basis: RatMatrix, expected_disc: Option<BigInt>) -> Result<Self> {
        if !f.is_monic() {
            return Err(Error::NotMonic);
        }
        let n = f.degree();
        if n < 2 {
            return Err(Error::InvalidParameter("field degree must be at least 2".into()));
        }
        irreducibility_check(&f)?;
        let poly_rat = f.to_rat();
        let real_roots = sturm_real_root_count(&poly_rat)?;
        if real_roots != n {
            return Err(Error::NotTotallyReal { real_roots, degree: n });
        }
        if basis.dim() != n || !basis.is_square() {
            return Err(Error::InvalidBasis(format!("expected a {}x{} matrix", n, n)));
        }
        let first_ok = basis.rows()[0]
            .iter()
            .enumerate()
            .all(|(k, c)| if k == 0 { c.is_one() } else { c.is_zero() });
        if !first_ok {
            return Err(Error::InvalidBasis("first basis element must be 1".into()));
        }
        let det = basis.det();
        if det.is_zero() {
            return Err(Error::InvalidBasis("basis matrix is singular".into()));
        }
        let basis_inv = basis.inverse().expect("nonsingular");
        let basis_polys: Vec<RatPoly> = basis.rows().iter().map(|r| RatPoly::new(r.clone())).collect();
        for i in 0..n {
            for j in i..n {
                let prod = (&basis_polys[i] * &basis_polys[j]).rem(&poly_rat);
                let coords = basis_inv.left_mul(&pad(&prod, n));
                if !coords.iter().all(|c| c.is_integer()) {
                    return Err(Error::BasisNotClosed { i: i + 1, j: j + 1 });
                }
            }
        }
        let poly_disc = discriminant_int(&f)?;
        let dl = &det * &det * BigRational::from_integer(poly_disc.clone());
        if !dl.is_integer() {
            return Err(Error::InvalidBasis(format!("non-integral discriminant {}", dl)));
        }
        let disc = dl.to_integer();
        if let Some(expected) = expected_disc {
            if expected != disc {
                return Err(Error::DiscriminantMismatch {
                    expected: expected.to_string(),
                    computed: disc.to_string(),
                });
            }
        }
        let unit = BigRational::one();
        let roots = isolate_real_roots(&poly_rat, &unit)?;
        Ok(NumberField {
            poly: f,
            poly_rat,
            n,
            basis,
            basis_inv,
            basis_polys,
            poly_disc,
            disc,
            roots,
            embeddings: RwLock::new(BTreeMap::new()),
            index_form: OnceLock::new(),
        })
    }

    /// Field with the power basis `(1, xi, ..., xi^(n-1))`.
    pub fn with_power_basis(f: IntPoly, expected_disc: Option<BigInt>) -> Result<Self> {
        let n = f.degree();
        NumberField::new(f, RatMatrix::identity(n), expected_disc)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn basis_polys(&self) -> &[RatPoly] {
        &self.basis_polys
    }

    /// Field discriminant `D_L = det(B)^2 disc(f)`.
    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn poly_discriminant(&self) -> &BigInt {
        &self.poly_disc
    }

    /// `[Z_L : Z[xi]]`.
    pub fn poly_index(&self) -> BigInt {
        exact_sqrt(&(&self.poly_disc / &self.disc)).expect("disc(f)/D_L is a square")
    }

    pub fn root_intervals(&self) -> &[RootInterval] {
        &self.roots
    }

    /// Power-basis polynomial `h` with `e = h(xi)`.
    pub fn to_power(&self, e: &FieldElement) -> RatPoly {
        assert_eq!(e.coords.len(), self.n, "coordinate count");
        RatPoly::new(self.basis.left_mul(&e.coords))
    }

    pub fn from_power(&self, h: &RatPoly) -> FieldElement {
        let r = h.rem(&self.poly_rat);
        FieldElement { coords: self.basis_inv.left_mul(&pad(&r, self.n)) }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = &self.to_power(a) * &self.to_power(b);
        self.from_power(&p)
    }

    /// `Res_x(f(x), t - h(x))`, interpolated from `n + 1` integer values of `t`.
    pub fn char_poly(&self, e: &FieldElement) -> Result<RatPoly> {
        let h = self.to_power(e);
        interpolate_at_naturals(self.n, |t| {
            let shifted = &RatPoly::constant(BigRational::from_integer(t.into())) - &h;
            if shifted.is_zero() {
                return Ok(BigRational::zero());
            }
            resultant(&self.poly_rat, &shifted)
        })
    }

    pub fn norm(&self, e: &FieldElement) -> Result<BigRational> {
        let c = self.char_poly(e)?.coeff(0);
        Ok(if self.n % 2 == 1 { -c } else { c })
    }

    pub fn trace(&self, e: &FieldElement) -> Result<BigRational> {
        Ok(-self.char_poly(e)?.coeff(self.n - 1))
    }

    /// `D(alpha)` for `alpha = sum x_i l_i` (the `x_1` coordinate is taken as 0).
    pub fn element_discriminant(&self, tail: &[i64]) -> Result<BigInt> {
        let e = self.element_from_tail(tail);
        let chi = self.char_poly(&e)?;
        let d = discriminant(&chi)?;
        if !d.is_integer() {
            return Err(Error::Invariant(format!("non-integral element discriminant {}", d)));
        }
        Ok(d.to_integer())
    }

    pub fn element_from_tail(&self, tail: &[i64]) -> FieldElement {
        assert_eq!(tail.len() + 1, self.n, "expected n - 1 coordinates");
        let mut coords = Vec::with_capacity(self.n);
        coords.push(BigRational::zero());
        coords.extend(tail.iter().map(|&c| BigRational::from_integer(c.into())));
        FieldElement { coords }
    }

    /// `|I_L(x_2, ..., x_n)|`: the index of `x_2 l_2 + ... + x_n l_n`, or 0
    /// when that element does not generate the field.
    pub fn element_index(&self, tail: &[i64]) -> Result<BigInt> {
        let d = self.element_discriminant(tail)?;
        if d.is_zero() {
            return Ok(BigInt::zero());
        }
        let (q, r) = d.abs().div_rem(&self.disc);
        if !r.is_zero() {
            return Err(Error::Invariant(format!("D(alpha) = {} not divisible by D_L", d)));
        }
        exact_sqrt(&q).ok_or_else(|| Error::Invariant(format!("D(alpha)/D_L = {} is not a square", q)))
    }

    /// Basis conjugates enclosed at precision `prec`; cached per precision.
    pub fn embeddings(&self, prec: u32) -> Arc<Embeddings> {
        if let Some(e) = self.embeddings.read().expect("embedding cache").get(&prec) {
            return Arc::clone(e);
        }
        let values = self
            .roots
            .iter()
            .map(|r| {
                let refined = refine_root_bits(&self.poly, r, prec + 4);
                let xi = Interval::from_root(&refined, prec);
                self.basis_polys
                    .iter()
                    .map(|l| Interval::eval_poly(l.coeffs(), &xi))
                    .collect()
            })
            .collect();
        let e = Arc::new(Embeddings { prec, values });
        self.embeddings
            .write()
            .expect("embedding cache")
            .entry(prec)
            .or_insert(e)
            .clone()
    }

    /// The index form, built on first use and cached.
    pub fn index_form(&self) -> Result<Arc<IndexForm>> {
        if let Some(f) = self.index_form.get() {
            return Ok(Arc::clone(f));
        }
        let built = Arc::new(IndexForm::build(self)?);
        Ok(Arc::clone(self.index_form.get_or_init(|| built)))
    }

    /// Dimension-checked integer coordinate tail.
    pub fn check_tail(&self, tail: &[i64]) -> Result<()> {
        if tail.len() + 1 != self.n {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.n - 1,
                tail.len()
            )));
        }
        Ok(())
    }
}

fn pad(p: &RatPoly, n: usize) -> Vec<BigRational> {
    (0..n).map(|i| p.coeff(i)).collect()
}

/// Flips signs so the first nonzero entry is positive.
pub fn canonical_sign(v: &mut [i64]) {
    if v.iter().find(|&&c| c != 0).map_or(false, |&c| c < 0) {
        for c in v.iter_mut() {
            *c = -*c;
        }
    }
}

pub fn is_canonical(v: &[i64]) -> bool {
    v.iter().find(|&&c| c != 0).map_or(true, |&c| c > 0)
}

/// Integer coefficient tuple in either JSON numbers or strings.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum IntRepr {
    Num(i64),
    Str(String),
}

impl IntRepr {
    pub fn to_bigint(&self) -> Result<BigInt> {
        match self {
            IntRepr::Num(n) => Ok(BigInt::from(*n)),
            IntRepr::Str(s) => s
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("bad integer {:?}: {}", s, e))),
        }
    }
}

/// On-disk field description:
/// `{"poly": [c0, ..., cn], "basis": [["p/q", ...], ...], "expected_disc": D}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FieldSpec {
    pub poly: Vec<IntRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_disc: Option<IntRepr>,
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let bad = |e: String| Error::Parse(format!("bad rational {:?}: {}", s, e));
    match t.split_once('/') {
        Some((a, b)) => {
            let num: BigInt = a.trim().parse().map_err(|e| bad(format!("{}", e)))?;
            let den: BigInt = b.trim().parse().map_err(|e| bad(format!("{}", e)))?;
            if den.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(t.parse().map_err(|e| bad(format!("{}", e)))?)),
    }
}

pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl FieldSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("field description: {}", e)))
    }

    pub fn build(&self) -> Result<NumberField> {
        let coeffs = self.poly.iter().map(|c| c.to_bigint()).collect::<Result<Vec<_>>>()?;
        let f = IntPoly::new(coeffs);
        let n = f.degree();
        let basis = match &self.basis {
            None => RatMatrix::identity(n),
            Some(rows) => RatMatrix::new(
                rows.iter()
                    .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let expected = self.expected_disc.as_ref().map(|d| d.to_bigint()).transpose()?;
        NumberField::new(f, basis, expected)
    }

    pub fn describe(field: &NumberField) -> FieldSpec {
        FieldSpec {
            poly: field
                .poly()
                .coeffs()
                .iter()
                .map(|c| match c.to_i64() {
                    Some(v) => IntRepr::Num(v),
                    None => IntRepr::Str(c.to_string()),
                })
                .collect(),
            basis: Some(
                field
                    .basis()
                    .rows()
                    .iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect(),
            ),
            expected_disc: Some(IntRepr::Str(field.discriminant().to_string())),
        }
    }
}
