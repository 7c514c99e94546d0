//! Exact q-expansions of half-integral weight modular forms over cyclotomic
//! coefficient rings, with Hecke operators and cusp geometry of `X₁(4N)`.

pub mod arith;
pub mod cli;
pub mod cuspgeom;
pub mod cyclonum;
pub mod error;
pub mod heckeops;
pub mod qlaurent;
pub mod thetaforms;

pub use cyclonum::{cyclotomic_polynomial, epsilon_d, gauss_sum, jacobi_symbol, CycNumber, GaussSum};
pub use error::{Error, Result};
pub use qlaurent::{QSeries, SubstSpec};
