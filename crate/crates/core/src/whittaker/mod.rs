//! Nondegenerate characters, generic irreducibles, Bessel functions and
//! explicit Whittaker models.

pub mod bessel;
pub mod model;
pub mod psi;

pub use bessel::{bessel, generic_irreps, multiplicities, BesselEval, BesselTable};
pub use model::{whittaker_model, whittaker_model_in, CosetSpace, InducedSpace, WhittakerModel, DEFAULT_MODEL_CAP};
pub use psi::{psi_build, NondegenChar, PsiInfo};
