//! Exact arithmetic over A = F_q[t]: class numbers of imaginary quadratic
//! orders, modified Hurwitz class numbers, local optimal-embedding counts and
//! the Fourier-coefficient tables of two theta series.
//!
//! Every routine returns exact rationals. Brute-force oracles for the class
//! group, the L-function and the local embedding counts live in [`oracle`].

pub mod eichler;
pub mod error;
pub mod factor;
pub mod field;
pub mod hurwitz;
pub mod oracle;
pub mod poly;
pub mod quad_class;
pub mod symbols;
pub mod theta;
pub mod verify;

pub use num_rational::BigRational;

pub use eichler::{embed_count, LocalQuadKind, LocalQuatKind, QuatAlgebra, QuatOrder};
pub use error::{Error, Result};
pub use factor::{factor, factor_seeded, Factorization, DEFAULT_SEED};
pub use field::FieldCtx;
pub use hurwitz::{hurwitz_h, hurwitz_h_zero, tamagawa_unit_volume, LevelPair, Strategy};
pub use poly::Poly;
pub use quad_class::{class_data, ClassData, QuadDiscriminant};
pub use symbols::{bracket_symbol, infinity_type, is_imaginary, is_preceq_zero, legendre_symbol, InfinityType};
pub use theta::{split_level, FourierTable, ThetaLambdaParams, ThetaOParams};
