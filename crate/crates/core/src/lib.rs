//! Exceptional orthogonal polynomials, point transformations to Schrödinger form,
//! energy-dependent norms and a Dirac pseudoscalar mapping.
//!
//! Layering, bottom to top:
//! - [`ratpoly`]: exact rational polynomials (Hermite, Laguerre, Jacobi, Wronskians)
//! - [`xops`]: exceptional families, their ODEs and classical weights
//! - [`ptransform`]: point transformation to `Φ'' + Q Φ = 0`
//! - [`specfun`]: Kummer, Laguerre and Hermite functions of real degree
//! - [`quad`]: adaptive Gauss–Kronrod quadrature
//! - [`models`]: the four worked spectral models
//! - [`edpnorm`]: energy-dependent inner product, norm and Wronskian-limit norm
//! - [`diracmap`]: Dirac system with pseudoscalar potential

mod dd;
pub mod diracmap;
pub mod edpnorm;
pub mod error;
pub mod interval;
pub mod models;
pub mod ptransform;
pub mod quad;
pub mod ratpoly;
pub mod specfun;
pub mod xops;

pub use error::{Error, Result};
pub use interval::Interval;
