use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, colex_rank};
use crate::surface::{CopiesWitness, CurveLabel, CurveSet, SubsurfaceType};

pub const CERTIFICATE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RuleTag {
    /// Each Dehn twist fixes a point, by the isometry hypothesis.
    BaseElliptic,
    /// Commuting subgroups with fixed points have a common fixed point.
    SplitDisconnected,
    /// Disjoint conjugates of a subset push the dimension bound past `n k - 1`.
    ConjBootstrap,
    /// Single-set bootstrap: every `k`-subset fixes and `d <= k - 1`.
    Bootstrap,
    /// Every `(d+1)`-subset fixes, so the whole generating set does.
    HellyFinish,
}

impl RuleTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            RuleTag::BaseElliptic => "BASE_ELLIPTIC",
            RuleTag::SplitDisconnected => "SPLIT_DISCONNECTED",
            RuleTag::ConjBootstrap => "CONJ_BOOTSTRAP",
            RuleTag::Bootstrap => "BOOTSTRAP",
            RuleTag::HellyFinish => "HELLY_FINISH",
        }
    }
}

/// Assumption on how Dehn twists act, recorded verbatim.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// Every element acts semisimply.
    Semisimple,
    /// No element acts as a non-neutral parabolic.
    #[default]
    NoNonNeutralParabolics,
}

/// Generators are the Lickorish curves of genus `g`; the space has
/// dimension at most `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorContext {
    pub g: usize,
    pub d: usize,
    pub hypothesis: Hypothesis,
}

/// Numeric facts a rule depends on. Fields not used by a rule are absent.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideConditions {
    pub size: usize,
    pub premise_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
    /// `copies * k - 1`, or `k - 1` for the single-set bootstrap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub envelope: Option<SubsurfaceType>,
    /// Complement component of the neighborhood left outside the envelope.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub excluded_region: Option<usize>,
    /// Cross pairs checked for commutation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commuting_pairs: Option<usize>,
}

/// `fix(subset)`: the subgroup generated by the twists in `subset` fixes a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixFact {
    pub id: u64,
    pub subset: Vec<CurveLabel>,
    pub rule: RuleTag,
    pub premises: Vec<u64>,
    pub side_conditions: SideConditions,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<CopiesWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Conclusion {
    pub fact: u64,
    pub subset: Vec<CurveLabel>,
    pub fixes_point: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub v: u32,
    pub context: GeneratorContext,
    pub facts: Vec<FixFact>,
    pub conclusion: Conclusion,
}

/// Largest subset size with its own fact before the final Helly step.
pub fn max_fact_size(curves: usize, d: usize) -> usize {
    (d + 1).min(curves)
}

/// Number of nonempty subsets of size below `size`.
pub fn size_offset(curves: usize, size: usize) -> u64 {
    (1..size).map(|j| binomial(curves, j)).sum()
}

/// Canonical fact id: subsets ordered by size, then colexicographically.
pub fn fact_id(curves: usize, s: CurveSet) -> u64 {
    size_offset(curves, s.len()) + colex_rank(s.0)
}

/// Id of the final Helly fact, following every subset fact.
pub fn finish_id(curves: usize, d: usize) -> u64 {
    size_offset(curves, max_fact_size(curves, d) + 1)
}
