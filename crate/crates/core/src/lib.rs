//! Exact computation with ideals of point configurations in projective space.
//!
//! The crate builds radical and fat-point ideals over exact scalar domains
//! (the rationals, prime fields, quotient extensions), computes graded pieces
//! of their symbolic and ordinary powers by exact linear algebra, and turns
//! containment questions `I^(m) ⊆ M^k I^r` into machine-checkable
//! certificates.
//!
//! Data-parallel inner loops (condition-matrix assembly, product-row
//! generation, elimination passes) run on rayon when the default `parallel`
//! feature is enabled; disabling it yields a fully sequential build with
//! identical results.

pub mod asymptotics;
pub mod geometry;
pub mod ideal;
pub mod linalg;
pub(crate) mod par;
pub mod poly;
pub mod scalar;

pub use geometry::{FatScheme, Point};
pub use ideal::{Certificate, GradedBasis, IdealView, Verdict};
pub use linalg::Matrix;
pub use poly::{Form, Monomial};
pub use scalar::{Field, FieldError, FieldSpec, Scalar};
