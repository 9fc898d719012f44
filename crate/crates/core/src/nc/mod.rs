//! Finitely presented associative algebras, possibly nonunital and noncommutative.

mod functors;
mod morphism;
mod poly;
mod presentation;
mod rewriting;

pub use functors::{abelianize, commutative_as_nc, commutative_image, standardize, standardize_direct, unitize, Factor, Standardization};
pub use morphism::{AlgebraMorphism, Target, VerificationStatus};
pub use poly::{parse_nc, NcPolynomial, Word};
pub use presentation::NcPresentation;
pub use rewriting::{nc_normal_form_bounded, BoundedNormalForm, RewriteSystem};
