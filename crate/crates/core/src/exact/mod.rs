//! Exact arithmetic kernel: polynomials, resultants, real roots, intervals.

pub mod interval;
pub mod intutil;
pub mod matrix;
pub mod modp;
pub mod poly;
pub mod resultant;
pub mod roots;

pub use interval::{ComplexInterval, Interval};
pub use poly::{IntPoly, RatPoly};
pub use resultant::{discriminant, discriminant_int, resultant, resultant_int};
pub use roots::{isolate_real_roots, sturm_real_root_count, Dyadic, RootInterval};
