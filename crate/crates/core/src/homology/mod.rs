//! Exact (co)homology of finite-dimensional algebras and Koszul complexes.

mod bar;
mod complex;
mod findim;
mod koszul;

pub use bar::{
    bar_complex, default_family, hchdim_lower_bound, hochschild_dims, hochschild_dims_normalized, MAX_BAR_DEGREE,
};
pub use complex::CochainComplex;
pub use findim::{AlgebraViolation, Bimodule, FinDimAlgebra};
pub use koszul::{koszul_complex, tor_via_koszul, KoszulComplex};
