//! Exact poly-Bernoulli, polycosecant, polycotangent and symmetrized numbers,
//! together with a checker for the identities and congruences they satisfy.

pub mod congruence;
pub mod families;
pub mod rational;
pub mod sequences;
pub mod series;
pub mod symmetrized;
pub mod table;

pub use rational::Rational;
