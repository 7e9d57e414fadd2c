pub mod bernoulli;
pub mod cli;
pub mod error;
pub mod factor;
pub mod field;
pub mod golden;
pub mod parse;
pub mod poly;
pub mod report;
pub mod upoly;
pub mod zeta;

pub use bernoulli::{AlphaContext, Modulus};
pub use error::{Error, Result};
pub use factor::Factorization;
pub use field::{FieldDesc, FieldElem, Level};
pub use poly::Poly;
pub use upoly::UPoly;
