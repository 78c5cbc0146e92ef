//! Matrix realizations of `GL_n`, `SL_n` and `U_n` over `F_q ⊂ F_{q²}`.

pub mod bruhat;
pub mod datum;
pub mod mat;
pub mod relevant;
pub mod weyl;

pub use bruhat::{bruhat_cell, bruhat_decompose, u_coset_normal_form, Bruhat, Over};
pub use datum::{datum_build, Family, GaloisDatum, Selector, WeylElement};
pub use mat::{Mat, MatOps};
pub use relevant::{a_w_subgroup, bessel_relevant, RelevantCell};
