//! Multi-component floating-point arithmetic.
//!
//! Values are unevaluated sums of two, three or four binary64 words
//! ([`DD`], [`TD`], [`QD`]). Addition and multiplication come in a
//! conventional renormalizing form and a branch-free form ([`Variant`]);
//! the branch-free kernels also run on lane batches for SIMD throughput.
//!
//! On top of the arithmetic sit dense matrix multiplication
//! ([`linalg`]), polynomial evaluation ([`poly`]) and a Durand–Kerner
//! root finder ([`roots`]). Everything is checked against the big-number
//! reference arithmetic in [`oracle`].

pub mod batch;
pub mod counting;
pub mod eft;
mod error;
pub mod linalg;
pub mod multiword;
pub mod oracle;
pub mod poly;
pub mod rng;
pub mod roots;

pub use error::{MwError, Result};
pub use multiword::{ComplexMW, MultiFloat, MultiWord, Scalar, Variant, DD, QD, TD};
