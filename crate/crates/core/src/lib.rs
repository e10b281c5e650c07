//! Harmonic functions and Laplacian eigenfunctions on the Sierpinski gasket,
//! restricted to edges of the pre-gaskets Γ_m.

pub mod error;
pub mod fixture;
pub mod gasket;
pub mod harmonic;
pub mod oracle;
pub mod ratio;
pub mod restriction;
pub mod scalar;
pub mod spectral;
pub mod surd;
pub mod verify;

pub use error::{Error, Result};
