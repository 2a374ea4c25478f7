//! Rotational invariants `I_{j,k,l}(r1, r2, r3)` formed by coupling three
//! spherical harmonic polynomials to total angular momentum zero, written
//! exactly as polynomials in the scalar products `ξa = ra·ra`,
//! `η1 = r2·r3`, `η2 = r3·r1`, `η3 = r1·r2` and the triple product
//! `ζ = (r1 × r2)·r3`.
//!
//! ```
//! let inv = rotinv::build_invariant(0, 2, 2).unwrap();
//! let text = rotinv::render(&inv, rotinv::Format::Text);
//! assert_eq!(text, "1/sqrt(5) * { 1/2 [ 3 h1^2 - x2 x3 ] }");
//! ```

pub mod angular;
pub mod coeffs;
pub mod error;
pub mod exactnum;
pub mod golden;
pub mod invariant;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod solidharm;
pub mod verify;

pub use coeffs::{table_closed, table_recursive, CoeffQuery, CoeffTable, Kind};
pub use error::{Error, Result};
pub use exactnum::{ComplexSurd, Rational, SurdSum};
pub use invariant::{
    build_invariant, evaluate, evaluate_float, render, to_cartesian, Format, InvariantPoly,
    InvariantSpec, Parity, ScalarPoly,
};
pub use solidharm::CartesianPoly;

/// Angle-variable configuration in double precision.
pub type SphericalConfig = oracle::SphericalConfig<f64>;
/// Scalar products of three double-precision vectors.
pub type ScalarProducts = invariant::ScalarProducts<f64>;

/// Largest angular momentum accepted by the public constructors.
pub const MAX_L: u32 = 60;
