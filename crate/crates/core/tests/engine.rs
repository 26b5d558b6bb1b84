use std::time::Instant;

use mcg_fixpoint::engine::*;
use mcg_fixpoint::surface::{max_copies_witness, CurveSet, SubsurfaceType};
use mcg_fixpoint::EngineError;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ctx(g: usize, d: usize) -> RuleContext {
    RuleContext::new(GeneratorContext { g, d, hypothesis: Hypothesis::default() }).unwrap()
}

fn set(rc: &RuleContext, s: &str) -> CurveSet {
    rc.system.parse_set(s).unwrap()
}

fn base_table(rc: &RuleContext) -> FactTable {
    let mut t = FactTable::new();
    for c in 0..rc.curves() {
        let s = CurveSet::singleton(c);
        t.insert(s, rule_base_elliptic(rc, s).unwrap());
    }
    t
}

#[test]
fn base_rule() {
    let rc = ctx(3, 2);
    let f = rule_base_elliptic(&rc, set(&rc, "a1")).unwrap();
    assert_eq!((f.rule, f.premises.len()), (RuleTag::BaseElliptic, 0));
    assert!(rule_base_elliptic(&rc, set(&rc, "c2")).is_ok());
    assert!(matches!(rule_base_elliptic(&rc, set(&rc, "a1,b1")), Err(EngineError::Arity { .. })));
}

#[test]
fn split_rule() {
    let rc = ctx(3, 2);
    let mut t = base_table(&rc);
    let f = rule_split_disconnected(&rc, set(&rc, "a1"), set(&rc, "a2"), &t).unwrap();
    assert_eq!(f.subset.len(), 2);
    t.insert(set(&rc, "a2,a3"), rule_split_disconnected(&rc, set(&rc, "a2"), set(&rc, "a3"), &t).unwrap());
    let f = rule_split_disconnected(&rc, set(&rc, "a1"), set(&rc, "a2,a3"), &t).unwrap();
    assert_eq!(f.side_conditions.commuting_pairs, Some(2));
    assert!(matches!(rule_split_disconnected(&rc, set(&rc, "a1"), set(&rc, "b1"), &t), Err(EngineError::NonCommuting(..))));
    assert!(matches!(
        rule_split_disconnected(&rc, set(&rc, "a1"), set(&rc, "a2,b3"), &t),
        Err(EngineError::MissingPremise(_))
    ));
}

#[test]
fn conjugate_rule() {
    let rc = ctx(3, 2);
    let t = base_table(&rc);
    let w = max_copies_witness(&rc.system, SubsurfaceType::new(1, 1));
    assert_eq!(w.count(), 3);
    let f = rule_conjugate_bootstrap(&rc, set(&rc, "a1,b1"), 0, w.clone(), &t).unwrap();
    assert_eq!((f.side_conditions.copies, f.side_conditions.k, f.side_conditions.bound), (Some(3), Some(1), Some(2)));

    let rc3 = ctx(3, 3);
    assert!(matches!(
        rule_conjugate_bootstrap(&rc3, set(&rc3, "a1,b1"), 0, w, &base_table(&rc3)),
        Err(EngineError::DimensionGuard { d: 3, bound: 2 })
    ));

    // 4-chain in genus 4: two copies, k = 3, d = 3 <= 5
    let cert = derive_theorem_d(4, 3).unwrap();
    let rc4 = ctx(4, 3);
    let chain = rc4.system.labels_of(set(&rc4, "a1,b1,c1,b2"));
    let f = cert.facts.iter().find(|f| f.subset == chain).unwrap();
    assert_eq!(f.rule, RuleTag::ConjBootstrap);
    assert_eq!((f.side_conditions.copies, f.side_conditions.k), (Some(2), Some(3)));
}

#[test]
fn bootstrap_rule() {
    let rc = ctx(3, 1);
    let mut t = base_table(&rc);
    let s = set(&rc, "a1,a2");
    t.insert(s, rule_split_disconnected(&rc, set(&rc, "a1"), set(&rc, "a2"), &t).unwrap());
    assert!(matches!(rule_bootstrap(&rc, &[(s, 2)], &t), Ok(BootstrapOutcome::Fact(_))));
    let rc0 = ctx(3, 0);
    let BootstrapOutcome::Fact(f) = rule_bootstrap(&rc0, &[(set(&rc0, "a1,b1"), 1)], &base_table(&rc0)).unwrap() else { panic!() };
    assert_eq!((f.rule, f.premises.len()), (RuleTag::Bootstrap, 2));
    assert!(matches!(
        rule_bootstrap(&rc, &[(set(&rc, "a1"), 1), (set(&rc, "a3"), 1)], &t),
        Ok(BootstrapOutcome::Disjunction(_))
    ));
    assert!(matches!(rule_bootstrap(&rc, &[(set(&rc, "a1"), 1), (set(&rc, "b1"), 1)], &t), Err(EngineError::NonCommuting(..))));
    let rc2 = ctx(3, 2);
    assert!(matches!(rule_bootstrap(&rc2, &[(set(&rc2, "a1,b1"), 1)], &base_table(&rc2)), Err(EngineError::DimensionGuard { .. })));
}

#[test]
fn helly_rule() {
    let rc = ctx(3, 2);
    let cert = derive_theorem_d(3, 2).unwrap();
    let mut t = FactTable::new();
    for f in &cert.facts[..cert.facts.len() - 1] {
        t.insert(rc.system.set_from_labels(&f.subset).unwrap(), f.clone());
    }
    let f = rule_helly_finish(&rc, &t).unwrap();
    assert_eq!(f, *cert.facts.last().unwrap());
    assert_eq!(f.premises.len(), 56);

    let mut partial = FactTable::new();
    let missing = rc.system.labels_of(set(&rc, "c1,c2,b3"));
    for f in &cert.facts[..cert.facts.len() - 1] {
        if f.subset != missing {
            partial.insert(rc.system.set_from_labels(&f.subset).unwrap(), f.clone());
        }
    }
    match rule_helly_finish(&rc, &partial) {
        Err(EngineError::MissingPremise(s)) => assert_eq!(s, "{b3,c1,c2}"),
        other => panic!("{other:?}"),
    }
    let cert4 = derive_theorem_d(4, 3).unwrap();
    assert_eq!(cert4.facts.last().unwrap().premises.len(), 330);
}

#[test]
fn derive_and_verify_small_genera() {
    for g in 3..=6 {
        let t = Instant::now();
        let cert = derive_theorem_d(g, g - 1).unwrap();
        let report = verify_certificate(&cert);
        assert!(report.valid, "g={g}: {:?}", report.failure);
        assert_eq!(report.facts_checked, cert.facts.len());
        assert_eq!(cert.conclusion.subset.len(), 3 * g - 1);
        eprintln!("g={g}: {} facts in {:?}", cert.facts.len(), t.elapsed());
    }
}

#[test]
fn small_genera_are_rejected() {
    assert!(matches!(derive_theorem_d(1, 0), Err(EngineError::UnsupportedGenus { genus: 1, .. })));
    match derive_theorem_d(2, 1) {
        Err(EngineError::UnsupportedGenus { genus: 2, reason }) => assert!(reason.contains("genus 2")),
        other => panic!("{other:?}"),
    }
}

#[test]
fn dimension_at_genus_fails_structurally() {
    match derive_theorem_d(3, 3) {
        Err(EngineError::Derivation(f)) => {
            assert!(f.outside_hypothesis);
            assert_eq!(f.rule, RuleTag::ConjBootstrap);
            assert_eq!(f.subset.iter().map(|l| l.to_string()).collect::<Vec<_>>(), ["a1", "b1"]);
            assert!(f.to_string().contains("outside hypothesis"));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn monotone_in_dimension() {
    for g in 3..=5 {
        for d in 0..g {
            let cert = derive_theorem_d(g, d).unwrap();
            assert!(verify_certificate(&cert).valid, "g={g} d={d}");
        }
    }
}

#[test]
fn tampering_examples() {
    let cert = derive_theorem_d(3, 2).unwrap();
    let mut bad = cert.clone();
    bad.context.d = 5;
    let r = verify_certificate(&bad);
    let first_conj = cert.facts.iter().find(|f| f.rule == RuleTag::ConjBootstrap).unwrap().id;
    assert!(!r.valid);
    assert_eq!(r.failure.unwrap().fact, Some(first_conj));

    let mut bad = cert.clone();
    let i = cert.facts.iter().position(|f| f.rule == RuleTag::ConjBootstrap).unwrap();
    let removed = bad.facts[i].premises.remove(0);
    let d = verify_certificate(&bad).failure.unwrap();
    assert_eq!(d.fact, Some(cert.facts[i].id));
    assert!(d.message.contains(&format!("missing premise {removed}")), "{}", d.message);

    let mut bad = cert.clone();
    let gone = bad.facts.remove(3);
    let d = verify_certificate(&bad).failure.unwrap();
    assert!(d.message.contains(&format!("premise fact {} ", gone.id)), "{}", d.message);

    let mut bad = cert.clone();
    bad.v = 2;
    assert_eq!(verify_certificate(&bad).failure.unwrap().field, "v");
    assert_eq!(verify_json("{not json").failure.unwrap().field, "json");
}

#[test]
fn verification_is_local() {
    let cert = derive_theorem_d(4, 3).unwrap();
    let v = Verifier::new(&cert).unwrap();
    let mut order: Vec<usize> = (0..cert.facts.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(7));
    for i in order {
        assert!(v.verify_fact(&cert.facts[i]).is_ok());
    }
    // a tampered fact fails the same way in any order
    let mut bad = cert.clone();
    let i = bad.facts.iter().position(|f| f.rule == RuleTag::ConjBootstrap).unwrap();
    bad.facts[i].side_conditions.copies = Some(9);
    let v = Verifier::new(&bad).unwrap();
    let first = v.verify_fact(&bad.facts[i]).unwrap_err();
    let mut order: Vec<usize> = (0..bad.facts.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(8));
    for j in order {
        let r = v.verify_fact(&bad.facts[j]);
        if j == i {
            assert_eq!(r.unwrap_err(), first);
        } else {
            assert!(r.is_ok());
        }
    }
}

#[test]
fn certificate_json_round_trip() {
    let cert = derive_theorem_d(3, 2).unwrap();
    let text = serde_json::to_string(&cert).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value["v"], 1);
    assert_eq!(value["context"]["g"], 3);
    assert_eq!(value["context"]["d"], 2);
    for key in ["id", "subset", "rule", "premises", "side_conditions"] {
        assert!(value["facts"][0].get(key).is_some(), "{key}");
    }
    assert!(value["conclusion"].is_object());
    let back: Certificate = serde_json::from_str(&text).unwrap();
    assert_eq!(back, cert);
    assert!(verify_json(&text).valid);
    assert!(text.contains("\"CONJ_BOOTSTRAP\""));
}
