//! Exact and numerical spin geometry: Clifford algebras and spinor modules,
//! the Witt-basis model of `Σ_{2n}`, twisted Dirac operators on flat
//! Lagrangian models, and the closed-form spectra of round spheres.

pub mod clifford;
pub mod error;
pub mod flat;
pub mod linalg;
pub mod matrix;
pub mod scalar;
pub mod sphere;
pub mod spin;
pub mod spin_rep;
pub mod witt;

pub use clifford::{Blade, CliffordElement, ExteriorElement, Vector, MAX_DIM};
pub use error::{Error, Result};
pub use scalar::Gauss;
pub use spin::{Sampler, SpinElement};
