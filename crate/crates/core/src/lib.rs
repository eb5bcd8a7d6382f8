pub mod automorphism;
pub mod bipoly;
pub mod classify;
pub mod cli;
pub mod completions;
pub mod config;
pub mod corpus;
pub mod error;
mod fastpath;
pub mod fence;
pub mod field;
pub mod homog;
pub mod normalize;
pub mod orbit;
pub mod roots;
pub mod singularity;
pub mod unipoly;

pub use automorphism::PlaneAutomorphism;
pub use bipoly::BiPoly;
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use unipoly::UniPoly;
