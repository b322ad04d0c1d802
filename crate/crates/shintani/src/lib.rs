//! Exact evaluation of unramified Whittaker-Shintani functions for
//! Fourier-Jacobi models on unitary and general linear groups, together
//! with machine verification of the surrounding identities between local
//! L-factors, Weyl character sums and dual-group determinants.

pub mod algebra;
pub mod dualgroup;
pub mod error;
pub mod lfactors;
pub mod rootdata;
pub mod verify;
pub mod wsformula;

pub use error::{Error, Result};
