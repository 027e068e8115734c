//! Replayable elimination proofs with per-step comparison against the
//! transcribed displays.

mod builtin;
mod compare;
mod oracle;
mod report;
mod script;

pub use builtin::{builtin_biharmonic_script, builtin_triharmonic_script};
pub use compare::{compare_up_to_scalar, Comparison};
pub use oracle::{numeric_cross_check, numeric_cross_check_with, random_point, CrossCheck, SampleOptions};
pub use report::{emit_report, Conclusion, Failure, Format, Report, StepRecord, Verdict};
pub use script::{
    apply_step, replay_script, space_form_constraints, substitute_c, Expectation, ProofScript,
    ProofStep, Seed, StepKind, StepOutcome, Target,
};
