use std::collections::HashMap;

use super::certificate::*;
use crate::combinatorics::{binomial, colex_masks};
use crate::error::EngineError;
use crate::surface::envelope::candidates_from_regions;
use crate::surface::neighborhood::cut;
use crate::surface::{check_copies_witness, CopiesWitness, CurveSet, LickorishSystem};

/// Generator context together with its curve system.
#[derive(Debug, Clone)]
pub struct RuleContext {
    pub context: GeneratorContext,
    pub system: LickorishSystem,
}

impl RuleContext {
    pub fn new(context: GeneratorContext) -> Result<Self, EngineError> {
        let system = LickorishSystem::new(context.g)?;
        Ok(RuleContext { context, system })
    }

    pub fn curves(&self) -> usize {
        self.system.curve_count()
    }

    pub fn id_of(&self, s: CurveSet) -> u64 {
        fact_id(self.curves(), s)
    }

    fn check_commuting(&self, s1: CurveSet, s2: CurveSet) -> Result<(), EngineError> {
        for x in s1.iter() {
            for y in s2.iter() {
                if x == y || self.system.intersects(x, y) {
                    return Err(EngineError::NonCommuting(self.system.label(x).to_string(), self.system.label(y).to_string()));
                }
            }
        }
        Ok(())
    }
}

/// Derived facts keyed by subset.
#[derive(Debug, Clone, Default)]
pub struct FactTable {
    facts: Vec<FixFact>,
    index: HashMap<u64, usize>,
}

impl FactTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, s: CurveSet, fact: FixFact) {
        self.index.insert(s.0, self.facts.len());
        self.facts.push(fact);
    }

    pub fn get(&self, s: CurveSet) -> Option<&FixFact> {
        self.index.get(&s.0).map(|&i| &self.facts[i])
    }

    pub fn contains(&self, s: CurveSet) -> bool {
        self.index.contains_key(&s.0)
    }

    pub fn len(&self) -> usize {
        self.facts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.facts.is_empty()
    }

    pub fn facts(&self) -> &[FixFact] {
        &self.facts
    }

    pub fn into_facts(self) -> Vec<FixFact> {
        self.facts
    }

    fn premise(&self, rc: &RuleContext, s: CurveSet) -> Result<u64, EngineError> {
        self.get(s).map(|f| f.id).ok_or_else(|| EngineError::MissingPremise(rc.system.format_set(s)))
    }
}

fn fact(rc: &RuleContext, s: CurveSet, rule: RuleTag, premises: Vec<u64>, side: SideConditions, witness: Option<CopiesWitness>) -> FixFact {
    FixFact { id: rc.id_of(s), subset: rc.system.labels_of(s), rule, premises, side_conditions: side, witness }
}

/// `fix({s})` for a single twist, by the isometry hypothesis.
pub fn rule_base_elliptic(rc: &RuleContext, s: CurveSet) -> Result<FixFact, EngineError> {
    if s.len() != 1 {
        return Err(EngineError::Arity { rule: "BASE_ELLIPTIC", expected: "exactly one generator".into(), got: s.len() });
    }
    let side = SideConditions { size: 1, premise_count: 0, ..Default::default() };
    Ok(fact(rc, s, RuleTag::BaseElliptic, Vec::new(), side, None))
}

/// `fix(S1 ∪ S2)` from `fix(S1)`, `fix(S2)` and commutation across the parts.
pub fn rule_split_disconnected(rc: &RuleContext, s1: CurveSet, s2: CurveSet, table: &FactTable) -> Result<FixFact, EngineError> {
    if s1.is_empty() || s2.is_empty() {
        return Err(EngineError::Arity { rule: "SPLIT_DISCONNECTED", expected: "two nonempty parts".into(), got: 0 });
    }
    rc.check_commuting(s1, s2)?;
    let premises = vec![table.premise(rc, s1)?, table.premise(rc, s2)?];
    let s = s1.union(s2);
    let side = SideConditions { size: s.len(), premise_count: 2, commuting_pairs: Some(s1.len() * s2.len()), ..Default::default() };
    Ok(fact(rc, s, RuleTag::SplitDisconnected, premises, side, None))
}

/// `fix(S)` for connected `S` from all `(|S|-1)`-subsets, given `n` disjoint
/// copies of an enveloping subsurface and `d <= n k - 1`.
pub fn rule_conjugate_bootstrap(
    rc: &RuleContext,
    s: CurveSet,
    excluded_region: usize,
    witness: CopiesWitness,
    table: &FactTable,
) -> Result<FixFact, EngineError> {
    let m = s.len();
    if m < 2 {
        return Err(EngineError::Arity { rule: "CONJ_BOOTSTRAP", expected: "at least two generators".into(), got: m });
    }
    if !rc.system.is_connected_subset(s)? {
        return Err(EngineError::Surface(crate::error::SurfaceError::Disconnected(rc.system.format_set(s))));
    }
    let c = cut(&rc.system, s);
    let candidate = candidates_from_regions(rc.context.g, &c.regions)
        .into_iter()
        .find(|x| x.excluded == excluded_region)
        .ok_or_else(|| EngineError::InvalidWitness(format!("no complement region {excluded_region}")))?;
    if witness.subsurface != candidate.subsurface {
        return Err(EngineError::InvalidWitness("copies have a different type than the envelope".into()));
    }
    check_copies_witness(&rc.system, &witness).map_err(EngineError::InvalidWitness)?;
    let k = m - 1;
    let n = witness.count();
    let bound = (n * k) as i64 - 1;
    if rc.context.d as i64 > bound {
        return Err(EngineError::DimensionGuard { d: rc.context.d, bound });
    }
    let mut premises = Vec::with_capacity(m);
    for x in s.iter() {
        let mut t = s;
        t.remove(x);
        premises.push(table.premise(rc, t)?);
    }
    premises.sort_unstable();
    let side = SideConditions {
        size: m,
        premise_count: m,
        k: Some(k),
        copies: Some(n),
        bound: Some(bound),
        d: Some(rc.context.d),
        envelope: Some(candidate.subsurface),
        excluded_region: Some(excluded_region),
        ..Default::default()
    };
    Ok(fact(rc, s, RuleTag::ConjBootstrap, premises, side, Some(witness)))
}

/// Conclusion of the bootstrap rule over several pairwise commuting sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BootstrapOutcome {
    /// One set: it has a fixed point.
    Fact(FixFact),
    /// Some set among these has every finite subset fixing a point.
    Disjunction(Vec<CurveSet>),
}

/// Sets `S_i` with thresholds `k_i`: if every `k_i`-subset of `S_i` fixes a
/// point, the sets commute pairwise and `d <= sum k_i - 1`, then some `S_i`
/// fixes a point.
pub fn rule_bootstrap(rc: &RuleContext, sets: &[(CurveSet, usize)], table: &FactTable) -> Result<BootstrapOutcome, EngineError> {
    if sets.is_empty() {
        return Err(EngineError::Arity { rule: "BOOTSTRAP", expected: "at least one set".into(), got: 0 });
    }
    for (i, &(si, _)) in sets.iter().enumerate() {
        for &(sj, _) in &sets[i + 1..] {
            rc.check_commuting(si, sj)?;
        }
    }
    let mut premises = Vec::new();
    for &(s, k) in sets {
        if k == 0 || k > s.len() {
            return Err(EngineError::Arity { rule: "BOOTSTRAP", expected: format!("1 <= k <= {}", s.len()), got: k });
        }
        let idx = s.to_vec();
        for sub in colex_masks(s.len(), k) {
            let t = CurveSet::from_indices((0..s.len()).filter(|b| sub >> b & 1 == 1).map(|b| idx[b]));
            premises.push(table.premise(rc, t)?);
        }
    }
    let total: usize = sets.iter().map(|x| x.1).sum();
    let bound = total as i64 - 1;
    if rc.context.d as i64 > bound {
        return Err(EngineError::DimensionGuard { d: rc.context.d, bound });
    }
    if let [(s, k)] = sets {
        premises.sort_unstable();
        let side = SideConditions {
            size: s.len(),
            premise_count: binomial(s.len(), *k) as usize,
            k: Some(*k),
            bound: Some(bound),
            d: Some(rc.context.d),
            ..Default::default()
        };
        return Ok(BootstrapOutcome::Fact(fact(rc, *s, RuleTag::Bootstrap, premises, side, None)));
    }
    Ok(BootstrapOutcome::Disjunction(sets.iter().map(|x| x.0).collect()))
}

/// `fix(Lick)` once every `(d+1)`-subset has a fact.
pub fn rule_helly_finish(rc: &RuleContext, table: &FactTable) -> Result<FixFact, EngineError> {
    let n = rc.curves();
    let size = max_fact_size(n, rc.context.d);
    let premises: Vec<u64> = if size >= n {
        vec![table.premise(rc, rc.system.all())?]
    } else {
        colex_masks(n, size).map(|m| table.premise(rc, CurveSet(m))).collect::<Result<_, _>>()?
    };
    let side = SideConditions { size: n, premise_count: premises.len(), d: Some(rc.context.d), ..Default::default() };
    Ok(FixFact {
        id: finish_id(n, rc.context.d),
        subset: rc.system.labels().to_vec(),
        rule: RuleTag::HellyFinish,
        premises,
        side_conditions: side,
        witness: None,
    })
}
