//! Finite reductive matrix groups over quadratic extensions of finite fields:
//! character tables, Bessel functions, Shintani base change and exhaustive
//! checks of the identities relating them.

pub mod error;
pub mod gf;
pub mod classchar;
pub mod matgrp;
pub mod shintani;
pub mod verify;
pub mod whittaker;

pub use error::{Error, Result};
