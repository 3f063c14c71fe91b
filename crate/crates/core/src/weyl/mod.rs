//! Weyl-algebra operators and their right action on `B_g^r`.

mod bg;
mod operator;
mod syntax;

pub use bg::{term_degree, BgElement, BgKey, Gen};
pub use operator::{OpMonomial, SymbolPolynomial, WeylOperator};
