//! Exact arithmetic for monogenity of composites `K = L M` of a totally real
//! field `L` and an imaginary quadratic field `M` with coprime discriminants.

pub mod composite;
pub mod error;
pub mod exact;
pub mod imq;
pub mod index_form;
pub mod number_field;
pub mod simplest_quartic;
pub mod solver;

pub use composite::{CompositeElement, CompositeField, IndexFactors};
pub use error::{Error, ErrorClass, Result};
pub use exact::{IntPoly, RatPoly};
pub use imq::{ImagQuadField, OmegaCase, QuadInt};
pub use index_form::{enumerate_bounded_index, IndexForm};
pub use number_field::{FieldElement, FieldSpec, NumberField};
pub use simplest_quartic::{
    d3_partial_search, make_simplest_quartic, olajos_generators, verify_theorem_cq, BatchReport, GridOptions,
    SimplestQuarticParams,
};
pub use solver::{
    solve, solve_f_in_y1, solve_norm_unit_y1, theorem_main_bounds, Bound, BoundsRecord, Completeness, PibSource,
    Regime, SolveOptions, SolverReport, Verdict,
};
