//! Exact Hall, Ringel and Hopf algebra computations for finitary categories
//! over finite fields: quiver representations, torsion sheaves, and coherent
//! sheaves on the projective line.

pub mod error;
pub mod finitary;
pub mod grammar;
pub mod hallhopf;
pub mod autop1;
pub mod doubles;
pub mod linalg;
pub mod qrel;
pub mod report;
pub mod scalars;
pub mod suites;
pub mod symfun;

pub use error::{Error, Result};
pub use scalars::{LaurentPoly, Rational, RationalFn, RecurrenceSeries, Scalar};
