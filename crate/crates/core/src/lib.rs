pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod functorial;
pub mod hecke;
pub mod homology;
pub mod linalg;
pub mod qpoly;
pub mod report;
pub mod upoly;
pub mod verify;
pub mod web;

pub use error::{Error, Result};
pub use qpoly::{qbinom, qfactorial, qint, BiPoly, Exponent, LaurentPoly, Rational};
