//! Exact integer/rational linear algebra for the localized-group stack:
//! arbitrary-precision scalars, dense matrices, Hermite and Smith normal
//! forms, rational kernels and solvers, canonical subspaces, and integer
//! lattice saturation. Everything is exact; there is no floating point.
//!
//! All values are immutable after construction and every operation is a pure
//! function, so concurrent use needs no coordination.

pub mod intmat;
pub mod lattice;
pub mod qmat;
pub mod ratio;
pub mod subspace;

pub use intmat::{hnf, invariant_factors, is_hnf, snf, IntMatrix};
pub use lattice::{clear_denominators, in_p_local_span, p_deficiency, right_kernel_int, saturation};
pub use qmat::{kernel_basis, solve, vec_add, vec_is_zero, vec_scale, vec_sub, QMatrix, QVector};
pub use ratio::{
    denominator_lcm, format_rational, int_valuation, parse_rational, rat, rat_int, valuation,
    Rational,
};
pub use subspace::Subspace;
