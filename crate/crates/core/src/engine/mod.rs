//! Derivation of a global fixed point for the Lickorish twists, recorded as
//! a certificate of rule applications, and an independent verifier.

pub mod certificate;
pub mod derive;
pub mod rules;
pub mod verify;

pub use certificate::{
    fact_id, finish_id, max_fact_size, Certificate, Conclusion, FixFact, GeneratorContext, Hypothesis, RuleTag,
    SideConditions, CERTIFICATE_VERSION,
};
pub use derive::{derive_theorem_d, derive_with_hypothesis, DeriveFailure};
pub use rules::{
    rule_base_elliptic, rule_bootstrap, rule_conjugate_bootstrap, rule_helly_finish, rule_split_disconnected, BootstrapOutcome,
    FactTable, RuleContext,
};
pub use verify::{verify_certificate, verify_json, Diagnostic, VerifyReport, Verifier};
