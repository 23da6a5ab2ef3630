pub mod apps;
pub mod dickson;
mod error;
pub mod field;
pub mod format;
mod fp_poly;
pub mod gen;
pub mod linpoly;
pub mod matrix;
pub mod selftest;
pub mod subres;
pub mod upoly;

pub use error::{Error, Result};
pub use dickson::RankCertificate;
pub use field::{FieldCtx, FieldElement, FieldParams};
pub use linpoly::{KernelReport, LinearizedPoly};
pub use upoly::FieldPoly;
pub use matrix::MatrixF;
