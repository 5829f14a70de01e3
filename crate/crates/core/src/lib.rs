//! Monomial bases, Hilbert and Frobenius series, and quotient-ring checks for
//! bosonic-fermionic coinvariant rings in one set of commuting variables
//! `x_i` and two sets of anticommuting variables `θ_i`, `ξ_i`.

pub mod basis;
pub mod cli;
pub mod combinat;
pub mod error;
pub mod motzkin;
pub mod oracle;
pub mod qpoly;
pub mod smirnov;
pub mod symfun;
pub mod verify;

pub use error::{Error, Result};
