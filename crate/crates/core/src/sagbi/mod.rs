//! The embedding `Ψ` of the homogeneous coordinate ring of a horospherical
//! variety into `C[x, y^±, t]`, subduction, bounded-degree SAGBI
//! verification against the cone over `Δ'(X)`, and the toric degeneration.

mod degenerate;
mod embed;
mod spec;
mod subduct;
mod verify;

pub use degenerate::{
    degenerate, family_with_weight, flat_family_member, product_exponents, realizing_weight, toric_relations, Binomial,
    HilbertCertificate, ToricDegenerationData,
};
pub use embed::{initial_algebra_level, multisets, psi_embed, psi_embed_checked, EmbeddedAlgebra, EMBED_CHECK_DEGREE};
pub use spec::{hilbert_function, HoroVarietySpec};
pub use subduct::{
    decompositions, random_element, subduct, ChoiceRule, StepDoc, SubductOptions, SubductionStatus, SubductionStep,
    SubductionTrace, TraceDoc,
};
pub use verify::{finiteness_check, verify_sagbi, FinitenessReport, LevelReport, SagbiReport, TrialReport, VerifyOptions};
