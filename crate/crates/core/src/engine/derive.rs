use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::*;
use super::rules::*;
use crate::combinatorics::colex_masks;
use crate::error::EngineError;
use crate::surface::envelope::{candidates_from_regions, EnvelopeCandidate};
use crate::surface::neighborhood::cut;
use crate::surface::{max_copies_witness, CopiesWitness, CurveLabel, CurveSet, SubsurfaceType};

/// A rule that could not be applied to a subset. Not a counterexample: the
/// derivation only shows the sufficient condition failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeriveFailure {
    pub g: usize,
    pub d: usize,
    pub subset: Vec<CurveLabel>,
    pub rule: RuleTag,
    pub reason: String,
    /// `d >= g`, where no derivation is expected.
    pub outside_hypothesis: bool,
}

impl fmt::Display for DeriveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.subset.iter().map(|l| l.to_string()).collect();
        write!(f, "cannot derive fix({{{}}}) by {}: {}", names.join(","), self.rule.as_str(), self.reason)?;
        if self.outside_hypothesis {
            write!(f, " (outside hypothesis: d = {} is not below g = {})", self.d, self.g)?;
        }
        Ok(())
    }
}

/// Envelope candidates of a connected subset, in order of preference.
fn envelope_candidates(rc: &RuleContext, s: CurveSet) -> Vec<EnvelopeCandidate> {
    candidates_from_regions(rc.context.g, &cut(&rc.system, s).regions)
}

fn step(rc: &RuleContext, s: CurveSet, table: &FactTable, witnesses: &HashMap<SubsurfaceType, CopiesWitness>) -> Result<FixFact, EngineError> {
    if s.len() == 1 {
        return rule_base_elliptic(rc, s);
    }
    let comps = rc.system.components(s);
    if comps.len() > 1 {
        return rule_split_disconnected(rc, comps[0], s.minus(comps[0]), table);
    }
    let k = s.len() - 1;
    let d = rc.context.d;
    let mut best = 0;
    for cand in envelope_candidates(rc, s) {
        let w = &witnesses[&cand.subsurface];
        let n = w.count();
        best = best.max(n);
        if n > 0 && (d as i64) < (n * k) as i64 {
            return rule_conjugate_bootstrap(rc, s, cand.excluded, w.clone(), table);
        }
    }
    Err(EngineError::Derivation(Box::new(DeriveFailure {
        g: rc.context.g,
        d,
        subset: rc.system.labels_of(s),
        rule: RuleTag::ConjBootstrap,
        reason: format!("dimension guard d <= n*k - 1 fails with k = {k} and at most n = {best} disjoint copies"),
        outside_hypothesis: d >= rc.context.g,
    })))
}

/// Certificate that the Lickorish twists of genus `g` have a common fixed
/// point on any space of dimension at most `d`, under the default hypothesis.
pub fn derive_theorem_d(g: usize, d: usize) -> Result<Certificate, EngineError> {
    derive_with_hypothesis(g, d, Hypothesis::default())
}

pub fn derive_with_hypothesis(g: usize, d: usize, hypothesis: Hypothesis) -> Result<Certificate, EngineError> {
    match g {
        0 | 1 => {
            return Err(EngineError::UnsupportedGenus {
                genus: g,
                reason: "genus at most 1 is settled directly and needs no derivation".into(),
            })
        }
        2 => {
            return Err(EngineError::UnsupportedGenus {
                genus: g,
                reason: "genus 2 follows from the fixed-point property of its mapping class group, not from this induction".into(),
            })
        }
        _ => {}
    }
    let rc = RuleContext::new(GeneratorContext { g, d, hypothesis })?;
    let n = rc.curves();
    let top = max_fact_size(n, d);
    let mut witnesses: HashMap<SubsurfaceType, CopiesWitness> = HashMap::new();
    let mut table = FactTable::new();
    for size in 1..=top {
        let masks: Vec<CurveSet> = colex_masks(n, size).map(CurveSet).collect();
        if size >= 2 {
            let mut types: Vec<SubsurfaceType> = masks
                .par_iter()
                .filter(|&&s| rc.system.components(s).len() == 1)
                .flat_map_iter(|&s| envelope_candidates(&rc, s).into_iter().map(|c| c.subsurface))
                .collect();
            types.sort();
            types.dedup();
            types.retain(|t| !witnesses.contains_key(t));
            let found: Vec<(SubsurfaceType, CopiesWitness)> =
                types.into_par_iter().map(|t| (t, max_copies_witness(&rc.system, t))).collect();
            witnesses.extend(found);
        }
        let facts: Vec<Result<FixFact, EngineError>> = masks.par_iter().map(|&s| step(&rc, s, &table, &witnesses)).collect();
        for (s, f) in masks.into_iter().zip(facts) {
            table.insert(s, f?);
        }
    }
    let finish = rule_helly_finish(&rc, &table)?;
    let conclusion = Conclusion { fact: finish.id, subset: finish.subset.clone(), fixes_point: true };
    let mut facts = table.into_facts();
    facts.push(finish);
    Ok(Certificate { v: CERTIFICATE_VERSION, context: rc.context, facts, conclusion })
}
