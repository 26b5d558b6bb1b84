use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::certificate::*;
use crate::combinatorics::colex_masks;
use crate::surface::envelope::candidates_from_regions;
use crate::surface::neighborhood::cut;
use crate::surface::{check_copies_witness, CopiesWitness, CurveSet, LickorishSystem};

/// Where a certificate first fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    /// Fact id, when the failure belongs to one fact.
    pub fact: Option<u64>,
    pub field: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub facts_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<Diagnostic>,
}

fn diag(fact: Option<u64>, field: &str, message: impl Into<String>) -> Diagnostic {
    Diagnostic { fact, field: field.into(), message: message.into() }
}

/// Re-checks facts of one certificate against the curve data.
pub struct Verifier {
    context: GeneratorContext,
    system: LickorishSystem,
    top: usize,
    subsets: HashMap<u64, CurveSet>,
    witnesses: Mutex<HashMap<CopiesWitness, Result<(), String>>>,
}

impl Verifier {
    pub fn new(cert: &Certificate) -> Result<Self, Diagnostic> {
        if cert.v != CERTIFICATE_VERSION {
            return Err(diag(None, "v", format!("unsupported schema version {}, expected {CERTIFICATE_VERSION}", cert.v)));
        }
        let g = cert.context.g;
        if g < 3 {
            return Err(diag(None, "context.g", format!("genus {g} is below 3")));
        }
        let system = LickorishSystem::new(g).map_err(|e| diag(None, "context.g", e.to_string()))?;
        let top = max_fact_size(system.curve_count(), cert.context.d);
        let mut subsets = HashMap::new();
        for f in &cert.facts {
            if let Ok(s) = system.set_from_labels(&f.subset) {
                subsets.entry(f.id).or_insert(s);
            }
        }
        Ok(Verifier { context: cert.context.clone(), system, top, subsets, witnesses: Mutex::new(HashMap::new()) })
    }

    fn curves(&self) -> usize {
        self.system.curve_count()
    }

    fn subset_of(&self, f: &FixFact) -> Result<CurveSet, Diagnostic> {
        let here = Some(f.id);
        let s = self.system.set_from_labels(&f.subset).map_err(|e| diag(here, "subset", e.to_string()))?;
        let canonical = self.system.labels_of(s);
        if canonical != f.subset {
            return Err(diag(here, "subset", "labels must be distinct and listed in curve order"));
        }
        if s.is_empty() {
            return Err(diag(here, "subset", "empty subset"));
        }
        Ok(s)
    }

    fn check_premises(&self, f: &FixFact, expected: &[CurveSet]) -> Result<(), Diagnostic> {
        let here = Some(f.id);
        let want: Vec<u64> = expected.iter().map(|&s| fact_id(self.curves(), s)).collect();
        if f.premises != want {
            let listed: HashSet<u64> = f.premises.iter().copied().collect();
            if let Some((id, &s)) = want.iter().zip(expected).find(|(id, _)| !listed.contains(id)) {
                return Err(diag(here, "premises", format!("missing premise {id} = fix({})", self.system.format_set(s))));
            }
            let at = want.iter().zip(&f.premises).position(|(a, b)| a != b).unwrap_or(want.len().min(f.premises.len()));
            return Err(diag(
                here,
                "premises",
                format!("expected {} premises in canonical order, found {}; first difference at position {at}", want.len(), f.premises.len()),
            ));
        }
        for (&id, &s) in want.iter().zip(expected) {
            if id >= f.id {
                return Err(diag(here, "premises", format!("premise {id} does not precede fact {}", f.id)));
            }
            match self.subsets.get(&id) {
                Some(&t) if t == s => {}
                Some(_) => return Err(diag(here, "premises", format!("fact {id} does not state fix({})", self.system.format_set(s)))),
                None => return Err(diag(here, "premises", format!("premise fact {id} = fix({}) is not in the certificate", self.system.format_set(s)))),
            }
        }
        Ok(())
    }

    fn check_side(&self, f: &FixFact, expected: SideConditions) -> Result<(), Diagnostic> {
        if f.side_conditions != expected {
            return Err(diag(
                Some(f.id),
                "side_conditions",
                format!(
                    "recorded {} but recomputed {}",
                    serde_json::to_string(&f.side_conditions).unwrap_or_default(),
                    serde_json::to_string(&expected).unwrap_or_default()
                ),
            ));
        }
        Ok(())
    }

    fn check_witness(&self, w: &CopiesWitness) -> Result<(), String> {
        if let Some(r) = self.witnesses.lock().expect("witness cache").get(w) {
            return r.clone();
        }
        let r = check_copies_witness(&self.system, w);
        self.witnesses.lock().expect("witness cache").insert(w.clone(), r.clone());
        r
    }

    /// Checks one fact from its own data and the subsets its premises name.
    pub fn verify_fact(&self, f: &FixFact) -> Result<(), Diagnostic> {
        let here = Some(f.id);
        let s = self.subset_of(f)?;
        let n = self.curves();
        let d = self.context.d;
        if f.rule == RuleTag::HellyFinish {
            if s != self.system.all() {
                return Err(diag(here, "subset", "the final fact must cover every generator"));
            }
            if f.id != finish_id(n, d) {
                return Err(diag(here, "id", format!("final fact must have id {}", finish_id(n, d))));
            }
        } else {
            if s.len() > self.top {
                return Err(diag(here, "subset", format!("subset of size {} exceeds d + 1 = {}", s.len(), self.top)));
            }
            if f.id != fact_id(n, s) {
                return Err(diag(here, "id", format!("fact for fix({}) must have id {}", self.system.format_set(s), fact_id(n, s))));
            }
        }
        if f.rule != RuleTag::ConjBootstrap && f.witness.is_some() {
            return Err(diag(here, "witness", format!("rule {} takes no witness", f.rule.as_str())));
        }
        match f.rule {
            RuleTag::BaseElliptic => {
                if s.len() != 1 {
                    return Err(diag(here, "rule", "BASE_ELLIPTIC applies to a single generator"));
                }
                self.check_premises(f, &[])?;
                self.check_side(f, SideConditions { size: 1, premise_count: 0, ..Default::default() })
            }
            RuleTag::SplitDisconnected => self.verify_split(f, s),
            RuleTag::ConjBootstrap => self.verify_conjugate(f, s),
            RuleTag::Bootstrap => self.verify_bootstrap(f, s),
            RuleTag::HellyFinish => {
                let expected: Vec<CurveSet> =
                    if self.top >= n { vec![self.system.all()] } else { colex_masks(n, self.top).map(CurveSet).collect() };
                self.check_premises(f, &expected)?;
                self.check_side(f, SideConditions { size: n, premise_count: expected.len(), d: Some(d), ..Default::default() })
            }
        }
    }

    fn verify_split(&self, f: &FixFact, s: CurveSet) -> Result<(), Diagnostic> {
        let here = Some(f.id);
        if f.premises.len() != 2 {
            return Err(diag(here, "premises", format!("SPLIT_DISCONNECTED needs 2 premises, found {}", f.premises.len())));
        }
        let part = |id: &u64| {
            self.subsets.get(id).copied().ok_or_else(|| diag(here, "premises", format!("premise fact {id} is not in the certificate")))
        };
        let (s1, s2) = (part(&f.premises[0])?, part(&f.premises[1])?);
        if s1.is_empty() || s2.is_empty() || !s1.is_disjoint(s2) || s1.union(s2) != s {
            return Err(diag(here, "premises", "premises do not partition the subset"));
        }
        for x in s1.iter() {
            for y in s2.iter() {
                if self.system.intersects(x, y) {
                    return Err(diag(
                        here,
                        "premises",
                        format!("{} and {} intersect, so their twists do not commute", self.system.label(x), self.system.label(y)),
                    ));
                }
            }
        }
        self.check_premises(f, &[s1, s2])?;
        self.check_side(f, SideConditions { size: s.len(), premise_count: 2, commuting_pairs: Some(s1.len() * s2.len()), ..Default::default() })
    }

    fn verify_conjugate(&self, f: &FixFact, s: CurveSet) -> Result<(), Diagnostic> {
        let here = Some(f.id);
        let m = s.len();
        if m < 2 {
            return Err(diag(here, "rule", "CONJ_BOOTSTRAP needs at least two generators"));
        }
        if self.system.components(s).len() != 1 {
            return Err(diag(here, "rule", format!("fix({}) is not connected", self.system.format_set(s))));
        }
        let mut expected: Vec<CurveSet> = s
            .iter()
            .map(|c| {
                let mut t = s;
                t.remove(c);
                t
            })
            .collect();
        expected.sort_by_key(|&t| fact_id(self.curves(), t));
        self.check_premises(f, &expected)?;

        let region = f.side_conditions.excluded_region.ok_or_else(|| diag(here, "side_conditions", "missing excluded_region"))?;
        let candidate = candidates_from_regions(self.context.g, &cut(&self.system, s).regions)
            .into_iter()
            .find(|c| c.excluded == region)
            .ok_or_else(|| diag(here, "side_conditions", format!("neighborhood has no complement region {region}")))?;
        let w = f.witness.as_ref().ok_or_else(|| diag(here, "witness", "CONJ_BOOTSTRAP needs a copies witness"))?;
        if w.subsurface != candidate.subsurface {
            return Err(diag(here, "witness", "copies differ in type from the enveloping subsurface"));
        }
        self.check_witness(w).map_err(|e| diag(here, "witness", e))?;
        let k = m - 1;
        let copies = w.count();
        let bound = (copies * k) as i64 - 1;
        self.check_side(
            f,
            SideConditions {
                size: m,
                premise_count: m,
                k: Some(k),
                copies: Some(copies),
                bound: Some(bound),
                d: Some(self.context.d),
                envelope: Some(candidate.subsurface),
                excluded_region: Some(region),
                commuting_pairs: None,
            },
        )?;
        if self.context.d as i64 > bound {
            return Err(diag(here, "side_conditions", format!("dimension guard fails: d = {} > n*k - 1 = {bound}", self.context.d)));
        }
        Ok(())
    }

    fn verify_bootstrap(&self, f: &FixFact, s: CurveSet) -> Result<(), Diagnostic> {
        let here = Some(f.id);
        let k = f.side_conditions.k.ok_or_else(|| diag(here, "side_conditions", "missing k"))?;
        if k == 0 || k > s.len() {
            return Err(diag(here, "side_conditions", format!("k = {k} out of range")));
        }
        let idx = s.to_vec();
        let mut expected: Vec<CurveSet> = colex_masks(idx.len(), k)
            .map(|m| CurveSet::from_indices((0..idx.len()).filter(|b| m >> b & 1 == 1).map(|b| idx[b])))
            .collect();
        expected.sort_by_key(|&t| fact_id(self.curves(), t));
        if k == s.len() {
            return Err(diag(here, "premises", "a fact cannot be its own premise"));
        }
        self.check_premises(f, &expected)?;
        let bound = k as i64 - 1;
        self.check_side(
            f,
            SideConditions {
                size: s.len(),
                premise_count: expected.len(),
                k: Some(k),
                bound: Some(bound),
                d: Some(self.context.d),
                ..Default::default()
            },
        )?;
        if self.context.d as i64 > bound {
            return Err(diag(here, "side_conditions", format!("dimension guard fails: d = {} > k - 1 = {bound}", self.context.d)));
        }
        Ok(())
    }
}

/// Re-validates every fact, the premise graph and the conclusion.
pub fn verify_certificate(cert: &Certificate) -> VerifyReport {
    let invalid = |facts_checked, d| VerifyReport { valid: false, facts_checked, failure: Some(d) };
    let v = match Verifier::new(cert) {
        Ok(v) => v,
        Err(d) => return invalid(0, d),
    };
    let results: Vec<Result<(), Diagnostic>> = cert.facts.par_iter().map(|f| v.verify_fact(f)).collect();
    let mut prev: Option<u64> = None;
    for (i, (f, r)) in cert.facts.iter().zip(results).enumerate() {
        if let Some(p) = prev {
            if f.id <= p {
                return invalid(i, diag(Some(f.id), "id", format!("fact ids must increase, {} follows {p}", f.id)));
            }
        }
        if let Err(d) = r {
            return invalid(i, d);
        }
        if f.rule == RuleTag::HellyFinish && i + 1 != cert.facts.len() {
            return invalid(i, diag(Some(f.id), "rule", "HELLY_FINISH must be the last fact"));
        }
        prev = Some(f.id);
    }
    let checked = cert.facts.len();
    let Some(last) = cert.facts.last().filter(|f| f.rule == RuleTag::HellyFinish) else {
        return invalid(checked, diag(None, "facts", "no HELLY_FINISH fact concludes the certificate"));
    };
    let c = &cert.conclusion;
    if c.fact != last.id || c.subset != last.subset || !c.fixes_point {
        return invalid(checked, diag(None, "conclusion", format!("conclusion must state fix of every generator by fact {}", last.id)));
    }
    VerifyReport { valid: true, facts_checked: checked, failure: None }
}

/// Parses and verifies a certificate; schema errors make it invalid.
pub fn verify_json(text: &str) -> VerifyReport {
    let value: serde_json::Value = match serde_json::from_str(text) {
        Ok(v) => v,
        Err(e) => return VerifyReport { valid: false, facts_checked: 0, failure: Some(diag(None, "json", e.to_string())) },
    };
    if let Some(v) = value.get("v") {
        if v.as_u64() != Some(CERTIFICATE_VERSION as u64) {
            return VerifyReport {
                valid: false,
                facts_checked: 0,
                failure: Some(diag(None, "v", format!("unsupported schema version {v}, expected {CERTIFICATE_VERSION}"))),
            };
        }
    }
    match serde_json::from_value::<Certificate>(value) {
        Ok(cert) => verify_certificate(&cert),
        Err(e) => VerifyReport { valid: false, facts_checked: 0, failure: Some(diag(None, "json", e.to_string())) },
    }
}
