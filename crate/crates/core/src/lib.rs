//! Exact q-series engine and numeric verifier for vector-valued modular
//! Nahm sums: Puiseux-series arithmetic over Q and Q(zeta_n), builders for
//! eta/theta/Nahm-type series, an identity catalog, and high-precision
//! verification of modular transformation laws.

pub mod algebraic;
pub mod bigfloat;
pub mod coeff;
pub mod cyclo;
pub mod error;
pub mod eval;
pub mod families;
pub mod identities;
pub mod nahm;
pub mod products;
pub mod rational;
pub mod series;
pub mod transforms;
pub mod verify;

pub use coeff::Coeff;
pub use cyclo::CycloElement;
pub use error::{Error, Result};
pub use rational::Rat;
pub use series::{Compare, PuiseuxSeries};

/// Series over the rationals.
pub type QSeries = PuiseuxSeries<Rat>;
/// Series over a cyclotomic field.
pub type ZSeries = PuiseuxSeries<CycloElement>;
