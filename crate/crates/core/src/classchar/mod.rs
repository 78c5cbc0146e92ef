//! Conjugacy classes, twisted classes and character tables.

pub mod cache;
pub mod classes;
pub mod table;

pub use cache::{load_or_compute, GroupSel, TableKey};
pub use classes::{conj_classes, twisted_classes, ConjClasses, Group, TwistedClasses};
pub use table::{
    character_table, inner_product, sigma_invariant_irreps, CharacterTable, ClassFunction, DEFAULT_TABLE_CAP,
};
