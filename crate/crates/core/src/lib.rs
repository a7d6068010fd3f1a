//! A computable Galois connection between Cattell PsychEval personality
//! profiles and Szondi personality profiles, translated through a monotone
//! propositional language over signed Szondi factors.

pub mod analysis;
pub mod boxes;
pub mod checks;
pub mod domain;
pub mod exec;
pub mod galois;
pub mod lpl;
pub mod translation;

pub use boxes::{FactorBox, SignatureSet, TraitBox, ValueSet};
pub use domain::{
    signature_flip, signature_leq, CattellProfile, Factor, ParseError, Signature, SzondiProfile,
    TraitId, TraitKind, TraitValue, Vector,
};
pub use exec::Exec;
pub use galois::{GaloisConnection, GaloisError, Subspace};
pub use lpl::{entails, equivalent, eval, Atom, AtomSet, Formula, LplError};
pub use translation::{
    formula_box, norm_profile, spp_formula, spp_set_formula, GlobalFactor, Reversal, TableError,
    TranslationError, TranslationTable,
};
