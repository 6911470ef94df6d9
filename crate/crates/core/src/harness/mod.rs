//! Theorem- and lemma-level checks, their JSON reports and batch campaigns.

mod campaign;
mod checks;
mod lemmas;
mod report;

pub use campaign::{
    run_campaign, run_campaign_with, write_summary, CampaignConfig, CampaignOutcome, CheckSpec,
};
pub use checks::{
    class_argmax, class_members, path_theorem_threshold, structural_check, verify_cycle_theorem,
    verify_path_theorem, verify_star_theorem, ConstructionProvider, StandardConstructions,
};
pub use lemmas::{
    check_lemma, claim_slacks, claim_specs, partitions, LemmaName, BOUND_TOL, CLAIM_SAMPLES,
    CLAIM_SEED,
};
pub use report::{Status, VerificationReport};
