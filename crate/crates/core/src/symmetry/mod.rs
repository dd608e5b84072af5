//! Everything specific to the extended symmetry structure: residual
//! builders, the exact one-form solver, derived-identity machinery, and the
//! taxonomy classifier.

pub mod bianchi;
pub mod classify;
pub mod forms;
pub mod residuals;
pub mod solver;

pub use bianchi::{
    bianchi_consequence_residual, bianchi_forms, contracted_consequence_residual,
    reconstruct_curvature, scalar_relation_residuals, BianchiForms, ReconstructError,
    Reconstruction, ScalarRelationResiduals,
};
pub use classify::{
    classify, classify_with, dichotomy_cond_g, dichotomy_cond_h, is_conformally_flat,
    is_constant_curvature, is_einstein, ClassVerdict, ClassificationReport, DichotomyReport,
    Flags, Verdict,
};
pub use forms::{FormFamily15, FormFamily9, OneForm, NAMES_15, NAMES_9};
pub use residuals::{
    reduced_ews_first_nonzero,
    ews_residual, gwrs_condition, lemma_witness, prop_identity_residual, reduced_ews_residual,
    ricci_level_forms, ricci_level_residual, LemmaVerdict, RicciLevelForms,
};
pub use solver::{
    certificate_is_sound, solve_one_forms, solve_one_forms_with, solve_with_nullspace,
    EquationTag, EwsSolution, InconsistencyCertificate, Pattern, PatternSpec, ResidualStatus,
    SolveError, SolveOutcome, TaxonomyClass, ALL_CLASSES,
};
