//! Exact generating series for alternating links and tangles.

pub mod asymptotics;
pub mod bivariate;
pub mod coeff;
pub mod coloured;
pub mod error;
pub mod flype;
pub mod linalg;
pub mod loops;
pub mod oracle;
pub mod patterns;
pub mod planar;
pub mod poly;
pub mod ratfunc;
pub mod rational;
pub mod series;
pub mod virtual_genus;

pub use coeff::Coeff;
pub use error::{Error, Result};
pub use poly::{GenusPoly, Poly, TauPoly};
pub use ratfunc::RatFunc;
pub use rational::Q;
pub use series::Series;
