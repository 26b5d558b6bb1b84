mod common;

use common::{comparison_distance, half_plane_distance, siegel_distance_oracle, C};
use mcg_fixpoint::model::sampling::{random_point, random_real_symplectic, random_siegel_point, random_tree};
use mcg_fixpoint::model::siegel::{siegel_exp, siegel_log};
use mcg_fixpoint::model::symplectic::symplectic_defect;
use mcg_fixpoint::model::{distance, geodesic_point, siegel_act, MetricTree, ModelPoint, SiegelPoint, SpaceDescriptor, SymplecticMatrix, TreeEdge};
use mcg_fixpoint::GeometryError;
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn siegel1(x: f64, y: f64) -> ModelPoint {
    ModelPoint::Siegel(SiegelPoint::new(DMatrix::from_element(1, 1, x), DMatrix::from_element(1, 1, y)).unwrap())
}

fn path_tree() -> MetricTree {
    MetricTree::new(3, vec![TreeEdge { u: 0, v: 1, length: 2.0 }, TreeEdge { u: 1, v: 2, length: 3.0 }]).unwrap()
}

#[test]
fn euclidean_distance_is_pythagorean() {
    let s = SpaceDescriptor::Euclid { dim: 2 };
    let d = distance(&s, &ModelPoint::euclid([0.0, 0.0]), &ModelPoint::euclid([3.0, 4.0])).unwrap();
    assert_eq!(d, 5.0);
}

#[test]
fn siegel_distance_of_i_and_4i_is_log_4() {
    let s = SpaceDescriptor::Siegel { genus: 1 };
    let d = distance(&s, &siegel1(0.0, 1.0), &siegel1(0.0, 4.0)).unwrap();
    assert!((d - 4f64.ln()).abs() < 1e-12, "{d}");
    // arc length of the imaginary axis, integrated numerically
    let n = 10_000;
    let h = 3.0 / n as f64;
    let simpson: f64 = (0..=n)
        .map(|k| {
            let w = if k == 0 || k == n { 1.0 } else if k % 2 == 1 { 4.0 } else { 2.0 };
            w / (1.0 + k as f64 * h)
        })
        .sum::<f64>()
        * h
        / 3.0;
    assert!((d - simpson).abs() < 1e-9);
}

#[test]
fn tree_distance_sums_the_path() {
    let s = SpaceDescriptor::Tree(path_tree());
    let p = ModelPoint::Tree { edge: 0, offset: 0.0 };
    let q = ModelPoint::Tree { edge: 1, offset: 3.0 };
    assert_eq!(distance(&s, &p, &q).unwrap(), 5.0);
}

#[test]
fn geodesic_examples() {
    let e = SpaceDescriptor::Euclid { dim: 2 };
    let m = geodesic_point(&e, &ModelPoint::euclid([0.0, 0.0]), &ModelPoint::euclid([2.0, 0.0]), 0.5).unwrap();
    assert_eq!(m, ModelPoint::euclid([1.0, 0.0]));

    let t = SpaceDescriptor::Tree(path_tree());
    let p = ModelPoint::Tree { edge: 0, offset: 0.0 };
    let q = ModelPoint::Tree { edge: 1, offset: 3.0 };
    let start = geodesic_point(&t, &p, &q, 0.0).unwrap();
    assert_eq!(distance(&t, &start, &p).unwrap(), 0.0);
    let mid = geodesic_point(&t, &p, &q, 0.5).unwrap();
    assert!((distance(&t, &p, &mid).unwrap() - 2.5).abs() < 1e-12);

    let s = SpaceDescriptor::Siegel { genus: 1 };
    let m = geodesic_point(&s, &siegel1(0.0, 1.0), &siegel1(0.0, 4.0), 0.5).unwrap();
    let ModelPoint::Siegel(z) = &m else { panic!() };
    assert!(z.re()[(0, 0)].abs() < 1e-12 && (z.im()[(0, 0)] - 2.0).abs() < 1e-12);
    // bisection oracle: the midpoint is equidistant from both ends
    let a = distance(&s, &siegel1(0.0, 1.0), &m).unwrap();
    let b = distance(&s, &m, &siegel1(0.0, 4.0)).unwrap();
    assert!((a - b).abs() < 1e-12);
}

#[test]
fn siegel_action_examples() {
    let z = SiegelPoint::new(DMatrix::from_element(1, 1, 0.3), DMatrix::from_element(1, 1, 1.7)).unwrap();
    let id = SymplecticMatrix::identity(1).act(&z).unwrap();
    assert!((id.re() - z.re()).amax() < 1e-15 && (id.im() - z.im()).amax() < 1e-15);

    let i = SiegelPoint::base(1);
    let rot = SymplecticMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).unwrap().act(&i).unwrap();
    assert!(rot.re()[(0, 0)].abs() < 1e-15 && (rot.im()[(0, 0)] - 1.0).abs() < 1e-15);

    let shift = SymplecticMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap().act(&i).unwrap();
    assert!((shift.re()[(0, 0)] - 1.0).abs() < 1e-15 && (shift.im()[(0, 0)] - 1.0).abs() < 1e-15);
}

#[test]
fn siegel_action_rejects_non_symplectic() {
    let m = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
    assert!(matches!(siegel_act(&m, &SiegelPoint::base(1)), Err(GeometryError::NotSymplectic(_))));
}

#[test]
fn invalid_inputs_are_rejected() {
    let s = SpaceDescriptor::Siegel { genus: 1 };
    let bad = ModelPoint::Siegel(serde_json::from_str(r#"{"re": [[0.0]], "im": [[-1.0]]}"#).unwrap());
    assert!(matches!(distance(&s, &bad, &siegel1(0.0, 1.0)), Err(GeometryError::InvalidPoint(_))));
    let e = SpaceDescriptor::Euclid { dim: 2 };
    assert!(matches!(
        distance(&e, &ModelPoint::euclid([0.0, 0.0]), &siegel1(0.0, 1.0)),
        Err(GeometryError::SpaceMismatch(_))
    ));
    assert!(matches!(
        geodesic_point(&e, &ModelPoint::euclid([0.0, 0.0]), &ModelPoint::euclid([1.0, 0.0]), 1.5),
        Err(GeometryError::ParameterOutOfRange(_))
    ));
    let t = SpaceDescriptor::Tree(path_tree());
    assert!(t.validate_point(&ModelPoint::Tree { edge: 0, offset: 2.5 }).is_err());
    assert!(MetricTree::new(3, vec![TreeEdge { u: 0, v: 1, length: 1.0 }, TreeEdge { u: 0, v: 1, length: 1.0 }]).is_err());
    assert!(MetricTree::new(2, vec![TreeEdge { u: 0, v: 1, length: 0.0 }]).is_err());
}

#[test]
fn symplectic_matrix_requires_exact_form() {
    assert!(SymplecticMatrix::from_rows(&[vec![1, 1], vec![1, 1]]).is_err());
    assert!(SymplecticMatrix::from_rows(&[vec![2, 3], vec![1, 2]]).is_ok());
    let t = SymplecticMatrix::transvection(&[1, 0, 1, 1], 1);
    assert!(t.mul(&t.inverse()).is_identity());
}

#[test]
fn json_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let space = SpaceDescriptor::Product {
        factors: vec![
            SpaceDescriptor::Euclid { dim: 2 },
            SpaceDescriptor::Tree(random_tree(6, &mut rng)),
            SpaceDescriptor::Siegel { genus: 2 },
        ],
    };
    let p = random_point(&space, &mut rng);
    let sj = serde_json::to_string(&space).unwrap();
    let pj = serde_json::to_string(&p).unwrap();
    assert!(sj.contains("\"kind\":\"product\"") && pj.contains("\"re\""));
    let space2: SpaceDescriptor = serde_json::from_str(&sj).unwrap();
    let p2: ModelPoint = serde_json::from_str(&pj).unwrap();
    assert_eq!(space, space2);
    assert!(space.distance(&p, &p2).unwrap() < 1e-12);
}

#[test]
fn genus_one_matches_half_plane() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let s = SpaceDescriptor::Siegel { genus: 1 };
    for _ in 0..200 {
        let a = random_siegel_point(1, &mut rng);
        let b = random_siegel_point(1, &mut rng);
        let d = s.distance(&ModelPoint::Siegel(a.clone()), &ModelPoint::Siegel(b.clone())).unwrap();
        let za = C::new(a.re()[(0, 0)], a.im()[(0, 0)]);
        let zb = C::new(b.re()[(0, 0)], b.im()[(0, 0)]);
        assert!((d - half_plane_distance(za, zb)).abs() < 1e-9);
    }
}

#[test]
fn siegel_distance_matches_oracle_in_higher_genus() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in 2..=3 {
        let s = SpaceDescriptor::Siegel { genus: g };
        for _ in 0..100 {
            let a = random_siegel_point(g, &mut rng);
            let b = random_siegel_point(g, &mut rng);
            let d = s.distance(&ModelPoint::Siegel(a.clone()), &ModelPoint::Siegel(b.clone())).unwrap();
            let o = siegel_distance_oracle(a.re(), a.im(), b.re(), b.im());
            assert!((d - o).abs() < 1e-9 * o.max(1.0), "g={g}: {d} vs {o}");
        }
    }
}

#[test]
fn log_and_exp_are_inverse() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for g in 1..=3 {
        for _ in 0..30 {
            let a = random_siegel_point(g, &mut rng);
            let b = random_siegel_point(g, &mut rng);
            let v = siegel_log(&a, &b).unwrap();
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let o = siegel_distance_oracle(a.re(), a.im(), b.re(), b.im());
            assert!((norm - o).abs() < 1e-9 * o.max(1.0));
            let back = siegel_exp(&a, &v).unwrap();
            assert!(siegel_distance_oracle(back.re(), back.im(), b.re(), b.im()) < 1e-8);
        }
    }
}

#[test]
fn random_symplectic_generators_are_symplectic() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for g in 1..=3 {
        for _ in 0..50 {
            let m = random_real_symplectic(g, 6, &mut rng);
            assert!(symplectic_defect(&m) < 1e-12);
            let k = mcg_fixpoint::model::sampling::random_integer_symplectic(g, 4, &mut rng);
            assert!(SymplecticMatrix::from_rows(&k.rows()).is_ok());
        }
    }
}

fn spaces(seed: u64) -> Vec<SpaceDescriptor> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    vec![
        SpaceDescriptor::Euclid { dim: 3 },
        SpaceDescriptor::Tree(random_tree(12, &mut rng)),
        SpaceDescriptor::Siegel { genus: 1 },
        SpaceDescriptor::Siegel { genus: 2 },
        SpaceDescriptor::Siegel { genus: 3 },
        SpaceDescriptor::Product { factors: vec![SpaceDescriptor::Euclid { dim: 1 }, SpaceDescriptor::Siegel { genus: 1 }] },
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn metric_axioms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in spaces(seed) {
            let (p, q, r) = (random_point(&s, &mut rng), random_point(&s, &mut rng), random_point(&s, &mut rng));
            let (pq, qp) = (s.distance(&p, &q).unwrap(), s.distance(&q, &p).unwrap());
            prop_assert!(pq >= 0.0);
            prop_assert!((pq - qp).abs() <= 1e-9 * pq.max(1.0));
            prop_assert_eq!(s.distance(&p, &p).unwrap(), 0.0);
            let (qr, pr) = (s.distance(&q, &r).unwrap(), s.distance(&p, &r).unwrap());
            prop_assert!(pr <= pq + qr + 1e-9);
        }
    }

    #[test]
    fn geodesic_additivity_and_comparison(seed in any::<u64>(), t in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for s in spaces(seed) {
            let (p, q, r) = (random_point(&s, &mut rng), random_point(&s, &mut rng), random_point(&s, &mut rng));
            let m = s.geodesic_point(&q, &r, t).unwrap();
            let (qm, mr, qr) = (s.distance(&q, &m).unwrap(), s.distance(&m, &r).unwrap(), s.distance(&q, &r).unwrap());
            prop_assert!((qm + mr - qr).abs() <= 1e-8 * qr.max(1.0), "{} {}", s.kind(), qm + mr - qr);
            prop_assert!((qm - t * qr).abs() <= 1e-8 * qr.max(1.0));
            let bound = comparison_distance(s.distance(&p, &q).unwrap(), s.distance(&p, &r).unwrap(), qr, t);
            prop_assert!(s.distance(&p, &m).unwrap() <= bound + 1e-8);
        }
    }

    #[test]
    fn siegel_distance_is_symplectic_invariant(seed in any::<u64>(), g in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = SpaceDescriptor::Siegel { genus: g };
        let a = random_siegel_point(g, &mut rng);
        let b = random_siegel_point(g, &mut rng);
        let m = random_real_symplectic(g, 5, &mut rng);
        let d0 = s.distance(&ModelPoint::Siegel(a.clone()), &ModelPoint::Siegel(b.clone())).unwrap();
        let d1 = s.distance(&ModelPoint::Siegel(siegel_act(&m, &a).unwrap()), &ModelPoint::Siegel(siegel_act(&m, &b).unwrap())).unwrap();
        prop_assert!((d0 - d1).abs() <= 1e-8);
    }
}
