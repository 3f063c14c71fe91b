//! Exact computations with the V-filtration and Hodge filtration of monomial
//! divisors `g = y_1^{a_1}⋯y_r^{a_r}` on affine space.

pub mod derham;
pub mod error;
pub mod harness;
pub mod koszul;
pub mod linalg;
pub mod minexp;
pub mod model;
pub mod rational;
pub mod report;
pub mod snc;
pub mod table;
pub mod vfilt;
pub mod weyl;

pub use error::{Error, Result};
pub use model::{MonomialModel, MultiDegree};
pub use rational::{ExtRational, Q};
pub use snc::{ResolutionNumerics, SncDivisor};
pub use weyl::{BgElement, WeylOperator};
