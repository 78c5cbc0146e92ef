//! Shintani descent from `G(E)` to `G^op(F)`: the norm map on σ-classes,
//! the structure of `X_σ`, twisted characters and base-change matching.

pub mod basechange;
pub mod norm;
pub mod rcf;

pub use basechange::{base_change_match, twisted_character, BaseChangePair, BaseChangeResult};
pub use norm::{
    borel_fixed_point_ratio, lang_consistency, norm_map, x_sigma_decompose, LangReport, NormTable, NormWitness,
    XSigmaDecomposition,
};
pub use rcf::invariant_factors;
