//! Simultaneous `(s, ms-1, ms+1)`-core partitions: beta-sets, abacus
//! geometry, generalized beta-sets, exact closed forms and exhaustive
//! enumeration.

pub mod abacus;
pub mod enumerate;
pub mod error;
pub mod formulas;
pub mod gbs;
pub mod partition;

pub use abacus::{build_l, closure_completion, is_core_beta_by_structure, to_abacus, AbacusDiagram, CoreTriple, Pyramid};
pub use enumerate::{enumerate_oracle, enumerate_pair_ideals, enumerate_structural, enumerate_subset_filter, verify_theorem, EnumReport, VerificationRecord};
pub use error::{Error, Result};
pub use formulas::{max_size_formula, FormulaValue};
pub use gbs::{build_family, class_membership, is_generalized_beta_set, profile_of, FamilyKind, GbsProfile};
pub use partition::{BetaSet, Partition};
