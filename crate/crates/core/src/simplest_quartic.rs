//! Simplest quartic fields `Q(xi)`, `xi^4 - a xi^3 - 6 xi^2 + a xi + 1 = 0`,
//! their integral bases, the known power integral bases, and the batch
//! driver over composites with imaginary quadratic fields.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::composite::CompositeField;
use crate::error::{Error, Result};
use crate::exact::intutil::{odd_square_free, squarefree, v2_u64};
use crate::exact::matrix::RatMatrix;
use crate::exact::poly::IntPoly;
use crate::imq::ImagQuadField;
use crate::number_field::NumberField;
use crate::solver::{solve, PibSource, SolveOptions, SolverReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplestQuarticParams {
    pub a: u64,
}

impl SimplestQuarticParams {
    pub fn new(a: u64) -> Result<Self> {
        if a == 0 {
            return Err(Error::InvalidParameter("a must be positive".into()));
        }
        if a == 3 {
            return Err(Error::Reducible("x^4 - 3x^3 - 6x^2 + 3x + 1 (a = 3)".into()));
        }
        if !odd_square_free(a * a + 16) {
            return Err(Error::InvalidParameter(format!("a^2 + 16 = {} has an odd square factor", a * a + 16)));
        }
        Ok(SimplestQuarticParams { a })
    }

    pub fn v2(&self) -> u32 {
        v2_u64(self.a)
    }

    pub fn poly(&self) -> IntPoly {
        let a = self.a as i64;
        IntPoly::from_i64s(&[1, a, -6, -a, 1])
    }

    /// `4 (a^2 + 16)^3`.
    pub fn poly_discriminant(&self) -> BigInt {
        BigInt::from(4) * BigInt::from(self.a * self.a + 16).pow(3)
    }

    /// `(a^2 + 16)^3 / 4^min(v2(a), 3)`.
    pub fn discriminant(&self) -> BigInt {
        let c = BigInt::from(self.a * self.a + 16).pow(3);
        c / BigInt::from(4u32.pow(self.v2().min(3)))
    }

    /// Rows of the integral basis in the power basis, as `(numerators, denominator)`.
    pub fn basis_rows(&self) -> [([i64; 4], i64); 4] {
        let one = ([1, 0, 0, 0], 1);
        let xi = ([0, 1, 0, 0], 1);
        match self.v2() {
            0 => [one, xi, ([0, 0, 1, 0], 1), ([1, 0, 0, 1], 2)],
            1 => [one, xi, ([1, 0, 1, 0], 2), ([0, 1, 0, 1], 2)],
            2 => [one, xi, ([1, 0, 1, 0], 2), ([1, 1, 1, 1], 4)],
            _ => [one, xi, ([1, 2, -1, 0], 4), ([1, 1, 1, 1], 4)],
        }
    }

    pub fn basis_matrix(&self) -> RatMatrix {
        RatMatrix::new(
            self.basis_rows()
                .iter()
                .map(|(num, den)| {
                    num.iter()
                        .map(|&c| BigRational::new(c.into(), (*den).into()))
                        .collect()
                })
                .collect(),
        )
    }
}

/// The field for parameter `a`, fully validated against the expected discriminant.
pub fn make_simplest_quartic(a: u64) -> Result<NumberField> {
    let p = SimplestQuarticParams::new(a)?;
    NumberField::new(p.poly(), p.basis_matrix(), Some(p.discriminant()))
}

const GENERATORS_A2: [[i64; 3]; 10] = [
    [4, 2, -1],
    [-13, -9, 4],
    [-2, 1, 0],
    [1, 1, 0],
    [-8, -3, 2],
    [-12, -4, 3],
    [0, -4, 1],
    [6, 5, -2],
    [-1, 1, 0],
    [0, 1, 0],
];

const GENERATORS_A4: [[i64; 3]; 6] = [[3, 2, -1], [-2, -2, 1], [4, 8, -3], [-6, -7, 3], [0, 3, -1], [1, 3, -1]];

/// All generators of power integral bases of `L` up to sign and translation,
/// as coordinates `(x_2, x_3, x_4)` in the integral basis.
pub fn olajos_generators(a: u64) -> Vec<Vec<i64>> {
    match a {
        2 => GENERATORS_A2.iter().map(|g| g.to_vec()).collect(),
        4 => GENERATORS_A4.iter().map(|g| g.to_vec()).collect(),
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEntry {
    pub a: u64,
    pub d: u64,
    pub verdict: Option<Verdict>,
    pub completeness: Option<crate::solver::Completeness>,
    pub skip_reason: Option<String>,
    pub generators: Vec<crate::solver::GeneratorRecord>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridSummary {
    pub pairs: usize,
    pub solved: usize,
    pub skipped: usize,
    pub not_monogenic: usize,
    pub monogenic: usize,
    pub inconclusive: usize,
    /// `(a, d)` pairs where a generator was found although none is expected.
    pub counterexamples: Vec<(u64, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub grid: Vec<GridEntry>,
    pub summary: GridSummary,
}

#[derive(Clone, Debug)]
pub struct GridOptions {
    pub box_radius: i64,
    pub precision_cap: u32,
    pub timings: bool,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { box_radius: 20, precision_cap: crate::exact::interval::DEFAULT_PRECISION_CAP, timings: false }
    }
}

fn skipped(a: u64, d: u64, reason: String) -> GridEntry {
    GridEntry { a, d, verdict: None, completeness: None, skip_reason: Some(reason), generators: Vec::new(), ms: None }
}

/// Solves every `(a, d)` pair with the known generator table as the source of
/// power integral bases of `L`; `d = 3` and non-coprime pairs are skipped.
pub fn verify_theorem_cq(a_values: &[u64], d_values: &[u64], opts: &GridOptions) -> BatchReport {
    let fields: Vec<(u64, std::result::Result<Arc<NumberField>, String>)> = a_values
        .par_iter()
        .map(|&a| (a, make_simplest_quartic(a).map(Arc::new).map_err(|e| e.to_string())))
        .collect();
    let pairs: Vec<(usize, u64)> = (0..fields.len()).flat_map(|i| d_values.iter().map(move |&d| (i, d))).collect();
    let grid: Vec<GridEntry> = pairs
        .par_iter()
        .map(|&(i, d)| {
            let (a, field) = (&fields[i].0, &fields[i].1);
            let a = *a;
            let l = match field {
                Ok(l) => Arc::clone(l),
                Err(e) => return skipped(a, d, format!("invalid a: {}", e)),
            };
            if !squarefree(d) {
                return skipped(a, d, "d not squarefree".into());
            }
            if d == 3 {
                return skipped(a, d, "d=3: use d3-search".into());
            }
            let start = Instant::now();
            let m = ImagQuadField::new(d as i64).expect("squarefree d");
            let k = match CompositeField::new(l, m) {
                Ok(k) => k.with_precision_cap(opts.precision_cap),
                Err(Error::Coprimality { gcd, .. }) => return skipped(a, d, format!("coprimality: gcd(D_L, D_M) = {}", gcd)),
                Err(e) => return skipped(a, d, e.to_string()),
            };
            let solve_opts = SolveOptions { box_radius: opts.box_radius };
            let entry = match solve(&k, &PibSource::Explicit(olajos_generators(a)), &solve_opts) {
                Ok(rep) => GridEntry {
                    a,
                    d,
                    verdict: Some(rep.verdict),
                    completeness: Some(rep.completeness),
                    skip_reason: None,
                    generators: rep.generators,
                    ms: None,
                },
                Err(e) => skipped(a, d, format!("error: {}", e)),
            };
            GridEntry { ms: opts.timings.then(|| start.elapsed().as_millis() as u64), ..entry }
        })
        .collect();
    let mut summary = GridSummary { pairs: grid.len(), ..Default::default() };
    for g in &grid {
        match g.verdict {
            None => summary.skipped += 1,
            Some(v) => {
                summary.solved += 1;
                match v {
                    Verdict::Monogenic => {
                        summary.monogenic += 1;
                        summary.counterexamples.push((g.a, g.d));
                    }
                    Verdict::NotMonogenic => summary.not_monogenic += 1,
                    Verdict::Inconclusive => summary.inconclusive += 1,
                }
            }
        }
    }
    BatchReport { grid, summary }
}

/// The `d = 3` composite for parameter `a`, searched inside the box only.
pub fn d3_partial_search(a: u64, box_radius: i64, precision_cap: u32) -> Result<SolverReport> {
    let l = Arc::new(make_simplest_quartic(a)?);
    let k = CompositeField::new(l, ImagQuadField::new(3)?)?.with_precision_cap(precision_cap);
    solve(&k, &PibSource::Box, &SolveOptions { box_radius })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::resultant::discriminant_int;
    use num_traits::One;

    #[test]
    fn parameter_validation() {
        assert!(SimplestQuarticParams::new(3).is_err());
        assert!(SimplestQuarticParams::new(0).is_err());
        // 22^2 + 16 = 500 = 4 * 5^3
        assert!(SimplestQuarticParams::new(22).is_err());
        assert!(make_simplest_quartic(3).is_err());
    }

    #[test]
    fn lemma_bases() {
        let l2 = make_simplest_quartic(2).unwrap();
        assert_eq!(l2.discriminant(), &BigInt::from(2000));
        let l7 = make_simplest_quartic(7).unwrap();
        assert_eq!(l7.discriminant(), &BigInt::from(274_625));
        for a in [1u64, 4, 8, 12, 16] {
            let p = SimplestQuarticParams::new(a).unwrap();
            assert_eq!(make_simplest_quartic(a).unwrap().discriminant(), &p.discriminant(), "a={}", a);
        }
    }

    #[test]
    fn polynomial_discriminant() {
        for a in [1u64, 2, 5, 9, 24] {
            let p = SimplestQuarticParams { a };
            assert_eq!(discriminant_int(&p.poly()).unwrap(), p.poly_discriminant());
        }
    }

    #[test]
    fn generator_table() {
        assert!(olajos_generators(2).contains(&vec![4, 2, -1]));
        assert!(olajos_generators(2).contains(&vec![0, 1, 0]));
        assert_eq!(olajos_generators(4).len(), 6);
        assert!(olajos_generators(5).is_empty());
        for a in [2, 4] {
            let l = make_simplest_quartic(a).unwrap();
            for g in olajos_generators(a) {
                assert!(l.element_index(&g).unwrap().is_one(), "a={} {:?}", a, g);
            }
        }
    }

    #[test]
    fn odd_parameter_index_two() {
        let l = make_simplest_quartic(1).unwrap();
        assert_eq!(l.element_index(&[1, 0, 0]).unwrap(), BigInt::from(2));
    }
}
