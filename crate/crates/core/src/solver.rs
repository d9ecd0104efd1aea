//! Generators of power integral bases of `K = L M`.
//!
//! The relative index form equation is reduced to absolute bounds on
//! `I_L`: for `w = i sqrt d` they read `|I_L(x)| <= 1` and
//! `|I_L(y)| <= d^(-e/2)`, for `w = (1 + i sqrt d)/2` they read
//! `|I_L(2x + y)| <= 2^e` and `|I_L(y)| <= (2/sqrt d)^e`, with
//! `e = n(n-1)/2`. Candidates are assembled from these bounds, filtered by the
//! two norm equations and the third factor, and every survivor is re-checked
//! with the exact index.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composite::{CompositeElement, CompositeField};
use crate::error::{Error, Result};
use crate::exact::intutil::exact_sqrt;
use crate::exact::poly::{interpolate_at_naturals, IntPoly};
use crate::exact::roots::integer_solutions;
use crate::imq::OmegaCase;
use crate::index_form::IndexForm;
use crate::number_field::{canonical_sign, format_rational, parse_rational, NumberField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    NonresD1,
    NonresDgt1,
    ResD3,
    ResDgt3,
}

impl Regime {
    pub fn of(k: &CompositeField) -> Regime {
        let m = k.quadratic();
        match (m.case(), m.d()) {
            (OmegaCase::Nonres, 1) => Regime::NonresD1,
            (OmegaCase::Nonres, _) => Regime::NonresDgt1,
            (OmegaCase::Res, 3) => Regime::ResD3,
            (OmegaCase::Res, _) => Regime::ResDgt3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Regime::NonresD1 => "NONRES_D1",
            Regime::NonresDgt1 => "NONRES_DGT1",
            Regime::ResD3 => "RES_D3",
            Regime::ResDgt3 => "RES_DGT3",
        }
    }

    pub fn is_res(self) -> bool {
        matches!(self, Regime::ResD3 | Regime::ResDgt3)
    }
}

/// A nonnegative real bound `b`, held exactly as `b^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bound {
    squared: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct BoundRepr {
    squared: String,
    value: String,
    floor: String,
}

impl Bound {
    pub fn from_squared(squared: BigRational) -> Self {
        assert!(!squared.is_negative(), "bound must be nonnegative");
        Bound { squared }
    }

    pub fn squared(&self) -> &BigRational {
        &self.squared
    }

    /// `b` itself when it is rational.
    pub fn exact(&self) -> Option<BigRational> {
        let p = exact_sqrt(self.squared.numer())?;
        let q = exact_sqrt(self.squared.denom())?;
        Some(BigRational::new(p, q))
    }

    /// Largest integer not exceeding `b`.
    pub fn floor(&self) -> BigInt {
        self.squared.floor().to_integer().sqrt()
    }

    /// `|v| <= b`.
    pub fn admits(&self, v: &BigInt) -> bool {
        BigRational::from_integer(v * v) <= self.squared
    }

    pub fn display(&self) -> String {
        match self.exact() {
            Some(q) => format_rational(&q),
            None => format!("sqrt({})", format_rational(&self.squared)),
        }
    }
}

impl From<Bound> for BoundRepr {
    fn from(b: Bound) -> Self {
        BoundRepr { squared: format_rational(&b.squared), value: b.display(), floor: b.floor().to_string() }
    }
}

impl TryFrom<BoundRepr> for Bound {
    type Error = Error;
    fn try_from(r: BoundRepr) -> Result<Self> {
        Ok(Bound::from_squared(parse_rational(&r.squared)?))
    }
}

impl Serialize for Bound {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        BoundRepr::from(self.clone()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Bound {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = BoundRepr::deserialize(d)?;
        Bound::try_from(r).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsRecord {
    pub regime: Regime,
    pub e: u32,
    /// Bound on `|I_L(x)|`, or on `|I_L(2x + y)|` when `w = (1 + i sqrt d)/2`.
    pub bound_x: Bound,
    pub bound_y: Bound,
}

/// The absolute bounds every generator of a power integral basis satisfies.
pub fn theorem_main_bounds(k: &CompositeField) -> BoundsRecord {
    let n = k.real_field().degree() as u32;
    let e = n * (n - 1) / 2;
    let d = BigInt::from(k.quadratic().d());
    let regime = Regime::of(k);
    let (bx, by) = if regime.is_res() {
        let four_e = BigInt::from(4).pow(e);
        (
            BigRational::from_integer(four_e.clone()),
            BigRational::new(four_e, d.pow(e)),
        )
    } else {
        (BigRational::one(), BigRational::new(BigInt::one(), d.pow(e)))
    };
    BoundsRecord { regime, e, bound_x: Bound::from_squared(bx), bound_y: Bound::from_squared(by) }
}

/// Whether the coordinates satisfy both bounds.
pub fn satisfies_bounds(form: &IndexForm, bounds: &BoundsRecord, x_tail: &[i64], y_tail: &[i64]) -> bool {
    let ix = if bounds.regime.is_res() {
        let z: Vec<i64> = x_tail.iter().zip(y_tail).map(|(x, y)| 2 * x + y).collect();
        form.eval(&z)
    } else {
        form.eval(x_tail)
    };
    bounds.bound_x.admits(&ix) && bounds.bound_y.admits(&form.eval(y_tail))
}

/// All `y_1` with `N_{L/Q}(y_1 + y_2 l_2 + ... + y_n l_n) = +-1`, ascending.
pub fn solve_norm_unit_y1(l: &NumberField, y_tail: &[i64]) -> Result<Vec<i64>> {
    l.check_tail(y_tail)?;
    let n = l.degree();
    let chi = l.char_poly(&l.element_from_tail(y_tail))?;
    let chi = chi
        .to_int()
        .ok_or_else(|| Error::Invariant("characteristic polynomial of an integer is not integral".into()))?;
    // N(t + gamma) = (-1)^n chi(-t)
    let q = IntPoly::new(
        chi.coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| if (n + i) % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    Ok(integer_solutions(&q, &[1, -1]).iter().filter_map(|t| t.to_i64()).collect())
}

/// All `y_1` with `F = +-1` for fixed `x_2..x_n`, `y_2..y_n`, ascending.
/// `F` is a polynomial of degree `n(n-1)` in `y_1`; it is recovered exactly
/// from certified point values and solved over the integers.
pub fn solve_f_in_y1(k: &CompositeField, x_tail: &[i64], y_tail: &[i64]) -> Result<Vec<i64>> {
    let l = k.real_field();
    l.check_tail(x_tail)?;
    l.check_tail(y_tail)?;
    let n = l.degree();
    let at = |y1: i64| {
        let mut y = Vec::with_capacity(n);
        y.push(y1);
        y.extend_from_slice(y_tail);
        CompositeElement::from_tail(x_tail, &y)
    };
    let p = interpolate_at_naturals(n * (n - 1), |y1| Ok(BigRational::from_integer(k.factor_f(&at(y1))?)))?;
    let p = p.to_int().ok_or_else(|| Error::Invariant("third factor is not an integer polynomial".into()))?;
    let mut out = Vec::new();
    for t in integer_solutions(&p, &[1, -1]) {
        let Some(y1) = t.to_i64() else { continue };
        if k.factor_f(&at(y1))?.abs().is_one() {
            out.push(y1);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PibSource {
    /// Generators of power integral bases of `L`, complete up to sign and translation.
    Explicit(Vec<Vec<i64>>),
    /// Generators found by a box scan.
    Box,
}

impl PibSource {
    pub fn label(&self) -> &'static str {
        match self {
            PibSource::Explicit(_) => "explicit",
            PibSource::Box => "box",
        }
    }

    /// Parses `[{"x": [x_2, ..., x_n]}, ...]`.
    pub fn from_json(text: &str) -> Result<PibSource> {
        #[derive(Deserialize)]
        struct Entry {
            x: Vec<i64>,
        }
        let entries: Vec<Entry> = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(PibSource::Explicit(entries.into_iter().map(|e| e.x).collect()))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub box_radius: i64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { box_radius: 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Monogenic,
    NotMonogenic,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Completeness {
    Complete,
    PaperCaseLogic,
    BoxLimited,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub poly: Vec<String>,
    pub basis: Vec<Vec<String>>,
    pub d_l: String,
    pub d: i64,
    pub d_m: String,
    pub d_k: String,
}

impl FieldSummary {
    pub fn of(k: &CompositeField) -> Self {
        let l = k.real_field();
        FieldSummary {
            poly: l.poly().coeffs().iter().map(|c| c.to_string()).collect(),
            basis: l.basis().rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
            d_l: l.discriminant().to_string(),
            d: k.quadratic().d(),
            d_m: k.quadratic().discriminant().to_string(),
            d_k: k.discriminant().to_string(),
        }
    }
}

/// A generator orbit: `x_1 = 0`, first nonzero entry of `(x_2..x_n, y_1..y_n)` positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRecord {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub eq1: String,
    pub eq2: String,
    pub third: String,
    pub index: String,
    pub normal_form: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorTrace {
    pub branch: String,
    pub x: Vec<i64>,
    pub y: Vec<i64>,
    pub relative_form: String,
    pub eq1: String,
    pub eq2: String,
    pub third: String,
    pub accepted: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub l_generators: usize,
    pub subfield_vectors: usize,
    pub y_tails: usize,
    pub pairs: usize,
    pub pruned_eq1: usize,
    pub third_tested: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverReport {
    pub field: FieldSummary,
    pub regime: Regime,
    pub bounds: BoundsRecord,
    pub pib_source: String,
    pub box_radius: i64,
    pub verdict: Verdict,
    pub completeness: Completeness,
    pub generators: Vec<GeneratorRecord>,
    pub stats: SolveStats,
    pub traces: Vec<FactorTrace>,
    pub assumptions: Vec<String>,
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|q| q * q <= n).all(|q| n % q != 0)
}

fn with_negatives(set: &[Vec<i64>]) -> Vec<Vec<i64>> {
    set.iter()
        .flat_map(|v| [v.clone(), v.iter().map(|c| -c).collect()])
        .collect()
}

/// `x + 4 l_2 + 2 l_3 - l_4 + w` style rendering of `x + beta +- w`.
fn normal_form(x_tail: &[i64], y1: i64) -> String {
    let mut s = String::from("x");
    for (i, &c) in x_tail.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { '-' } else { '+' };
        let mag = c.abs();
        if mag == 1 {
            s.push_str(&format!(" {} l_{}", sign, i + 2));
        } else {
            s.push_str(&format!(" {} {} l_{}", sign, mag, i + 2));
        }
    }
    s.push_str(if y1 > 0 { " + w" } else { " - w" });
    s
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Zero,
    Subfield,
    Small,
}

struct Pair {
    x: Vec<i64>,
    y: Vec<i64>,
    branch: String,
    sweep: bool,
    f_route: bool,
}

struct Outcome {
    pruned: bool,
    traces: Vec<FactorTrace>,
    generators: Vec<(CompositeElement, GeneratorRecord, bool)>,
}

/// Runs the case procedure for `K` and reports all generators found.
pub fn solve(k: &CompositeField, source: &PibSource, opts: &SolveOptions) -> Result<SolverReport> {
    let r = opts.box_radius;
    if r < 1 {
        return Err(Error::InvalidParameter("box radius must be at least 1".into()));
    }
    let l = k.real_field();
    let n = l.degree();
    let form = l.index_form()?;
    let bounds = theorem_main_bounds(k);
    let regime = bounds.regime;
    let zero = vec![0i64; n - 1];
    let mut assumptions = vec![
        "conjugates of L in ascending order; w taken with positive imaginary part".to_string(),
        format!("regime {}: e = {}, |I_L(y)| <= {}", regime.label(), bounds.e, bounds.bound_y.display()),
    ];

    let pib: Vec<Vec<i64>> = match source {
        PibSource::Explicit(list) => {
            let mut set = BTreeSet::new();
            for g in list {
                l.check_tail(g)?;
                let idx = l.element_index(g)?;
                if !idx.is_one() {
                    return Err(Error::InvalidParameter(format!("listed generator {:?} has index {}", g, idx)));
                }
                let mut c = g.clone();
                canonical_sign(&mut c);
                set.insert(c);
            }
            assumptions.push(format!(
                "power integral bases of L taken from the supplied list of {} generators, assumed complete up to sign and translation",
                set.len()
            ));
            set.into_iter().collect()
        }
        PibSource::Box => {
            assumptions.push(format!("power integral bases of L enumerated in the box |x_i| <= {}", r));
            form.bounded(&BigInt::one(), r).into_iter().map(|(v, _)| v).collect()
        }
    };

    let n_prime = is_prime(n);
    let s0: Vec<Vec<i64>> = if n_prime {
        assumptions.push("n is prime: L has no proper subfield besides Q, so I_L = 0 only at the zero vector".into());
        Vec::new()
    } else {
        let s0 = form.zero_index(r);
        assumptions.push(format!(
            "n is composite: {} nonzero index-zero vectors (proper subfield elements) swept in the box |v_i| <= {}",
            s0.len(),
            r
        ));
        s0
    };

    let kind = |v: &[i64]| -> Kind {
        if v.iter().all(|&c| c == 0) {
            Kind::Zero
        } else if form.eval(v).is_zero() {
            Kind::Subfield
        } else {
            Kind::Small
        }
    };

    // |I_L(x)| <= 1
    let mut x_small = vec![zero.clone()];
    x_small.extend(with_negatives(&s0));
    x_small.extend(with_negatives(&pib));

    let mut y_tails = vec![zero.clone()];
    y_tails.extend(s0.iter().cloned());
    match regime {
        Regime::NonresD1 => y_tails.extend(pib.iter().cloned()),
        Regime::ResD3 => {
            let floor = bounds.bound_y.floor();
            y_tails = vec![zero.clone()];
            y_tails.extend(form.scan(r, |i| i <= &floor).into_iter().map(|(v, _)| v));
            assumptions.push(format!(
                "d = 3: elements with |I_L(2x + y)| <= {} and |I_L(y)| <= {} searched in the box |v_i| <= {} only; no claim beyond the box",
                bounds.bound_x.display(),
                floor,
                r
            ));
        }
        _ => {}
    }

    let z_set: Vec<Vec<i64>> = if regime.is_res() && y_tails.iter().any(|y| y != &zero) {
        let b = bounds.bound_x.floor();
        let mut z = vec![zero.clone()];
        z.extend(with_negatives(&form.scan(r, |i| i <= &b).into_iter().map(|(v, _)| v).collect::<Vec<_>>()));
        z
    } else {
        Vec::new()
    };

    let mut pairs = Vec::new();
    for y in &y_tails {
        let yk = kind(y);
        let xs: Vec<Vec<i64>> = if regime.is_res() && yk != Kind::Zero {
            z_set
                .iter()
                .filter(|z| z.iter().zip(y).all(|(a, b)| (a - b) % 2 == 0))
                .map(|z| z.iter().zip(y).map(|(a, b)| (a - b) / 2).collect())
                .collect()
        } else {
            x_small.clone()
        };
        for x in xs {
            let xk = kind(&x);
            let branch = match regime {
                Regime::NonresD1 => match (xk == Kind::Small, yk == Kind::Small) {
                    (false, false) => "a",
                    (true, false) => "b",
                    (false, true) => "c",
                    (true, true) => "d",
                }
                .to_string(),
                Regime::ResD3 => "d3".to_string(),
                _ if yk == Kind::Zero => "generic".to_string(),
                _ => "subfield-sweep".to_string(),
            };
            let sweep = regime != Regime::ResD3 && (xk == Kind::Subfield || yk == Kind::Subfield);
            let f_route = regime == Regime::NonresD1 && yk == Kind::Small;
            pairs.push(Pair { x, y: y.clone(), branch, sweep, f_route });
        }
    }

    let y1_sets: BTreeMap<Vec<i64>, Vec<i64>> = y_tails
        .par_iter()
        .map(|y| Ok((y.clone(), solve_norm_unit_y1(l, y)?)))
        .collect::<Result<_>>()?;

    let outcomes: Vec<Outcome> = pairs
        .par_iter()
        .map(|p| evaluate(k, &form, &bounds, p, &y1_sets[&p.y]))
        .collect::<Result<_>>()?;

    let mut stats = SolveStats {
        l_generators: pib.len(),
        subfield_vectors: s0.len(),
        y_tails: y_tails.len(),
        pairs: pairs.len(),
        ..Default::default()
    };
    let mut traces = Vec::new();
    let mut orbits: BTreeMap<Vec<i64>, GeneratorRecord> = BTreeMap::new();
    let mut sweep_hit = false;
    for o in outcomes {
        if o.pruned {
            stats.pruned_eq1 += 1;
        }
        stats.third_tested += o.traces.len();
        traces.extend(o.traces);
        for (_, rec, from_sweep) in o.generators {
            sweep_hit |= from_sweep;
            let mut key: Vec<i64> = rec.x.iter().chain(&rec.y).cloned().collect();
            canonical_sign(&mut key);
            let (kx, ky) = key.split_at(n - 1);
            let mut rec = rec.clone();
            if kx != rec.x.as_slice() {
                rec.x = kx.to_vec();
                rec.y = ky.to_vec();
                rec.normal_form = rec.normal_form.as_ref().map(|_| normal_form(kx, ky[0]));
            }
            orbits.entry(key).or_insert(rec);
        }
    }
    let generators: Vec<GeneratorRecord> = orbits.into_values().collect();

    let completeness = match (regime, source) {
        (Regime::ResD3, _) | (_, PibSource::Box) => Completeness::BoxLimited,
        _ if n_prime => Completeness::Complete,
        _ if sweep_hit => Completeness::BoxLimited,
        _ => Completeness::PaperCaseLogic,
    };
    if completeness == Completeness::PaperCaseLogic {
        assumptions.push(
            "no candidate from the subfield sweep survives; completeness rests on the case logic (I_L(v) = 0 read as v = 0 outside the box)"
                .into(),
        );
    }
    let verdict = if !generators.is_empty() {
        Verdict::Monogenic
    } else if regime == Regime::ResD3 {
        Verdict::Inconclusive
    } else {
        Verdict::NotMonogenic
    };
    if regime == Regime::ResD3 {
        assumptions.push("BOX_LIMITED: the d = 3 case is only searched inside the box".into());
    }

    Ok(SolverReport {
        field: FieldSummary::of(k),
        regime,
        bounds,
        pib_source: source.label().to_string(),
        box_radius: r,
        verdict,
        completeness,
        generators,
        stats,
        traces,
        assumptions,
    })
}

fn evaluate(
    k: &CompositeField,
    form: &IndexForm,
    bounds: &BoundsRecord,
    p: &Pair,
    y1_eq2: &[i64],
) -> Result<Outcome> {
    let m = k.quadratic();
    let n = k.real_field().degree();
    let rel = form.eval_quad(m, &p.x, &p.y);
    let eq1 = m.norm(&rel);
    if !eq1.abs().is_one() {
        return Ok(Outcome { pruned: true, traces: Vec::new(), generators: Vec::new() });
    }
    let mut y_probe = vec![0i64];
    y_probe.extend_from_slice(&p.y);
    let rel_iv = k.relative_index_form(&CompositeElement::from_tail(&p.x, &y_probe))?;
    if rel_iv != rel {
        return Err(Error::Invariant(format!("index form {} disagrees with the interval value {}", rel, rel_iv)));
    }
    let y1s: Vec<i64> = if p.f_route {
        let f_roots = solve_f_in_y1(k, &p.x, &p.y)?;
        y1_eq2.iter().filter(|t| f_roots.contains(t)).cloned().collect()
    } else {
        y1_eq2.to_vec()
    };
    let mut traces = Vec::new();
    let mut generators = Vec::new();
    for y1 in y1s {
        let mut y = Vec::with_capacity(n);
        y.push(y1);
        y.extend_from_slice(&p.y);
        let alpha = CompositeElement::from_tail(&p.x, &y);
        let eq2 = k.factor_eq2(&alpha)?;
        let third = k.factor_f(&alpha)?;
        let accepted = eq2.abs().is_one() && third.abs().is_one();
        traces.push(FactorTrace {
            branch: p.branch.clone(),
            x: p.x.clone(),
            y: y.clone(),
            relative_form: rel.to_string(),
            eq1: eq1.to_string(),
            eq2: eq2.to_string(),
            third: third.to_string(),
            accepted,
        });
        if !accepted {
            continue;
        }
        let index = k.composite_index(&alpha)?;
        if !index.is_one() {
            return Err(Error::Invariant(format!("factors are units but the index of {:?} is {}", alpha, index)));
        }
        if !satisfies_bounds(form, bounds, &p.x, &p.y) {
            return Err(Error::Invariant(format!("generator {:?} violates the absolute bounds", alpha)));
        }
        let d = m.d();
        let normal = (d != 1 && d != 3 && p.y.iter().all(|&c| c == 0)).then(|| normal_form(&p.x, y1));
        let rec = GeneratorRecord {
            x: p.x.clone(),
            y,
            eq1: eq1.to_string(),
            eq2: eq2.to_string(),
            third: third.to_string(),
            index: index.to_string(),
            normal_form: normal,
        };
        generators.push((alpha, rec, p.sweep));
    }
    Ok(Outcome { pruned: false, traces, generators })
}
