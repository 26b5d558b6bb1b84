//! Exact minimal enclosing ball of finitely many points in R^n (Welzl).

use nalgebra::{DMatrix, DVector};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vec<f64>,
    pub radius: f64,
}

/// Smallest ball with all of `boundary` on its sphere, centered in their affine hull.
fn ball_through(boundary: &[&DVector<f64>], dim: usize) -> (DVector<f64>, f64) {
    match boundary.len() {
        0 => (DVector::zeros(dim), -1.0),
        1 => (boundary[0].clone(), 0.0),
        k => {
            let p0 = boundary[0];
            let diffs: Vec<DVector<f64>> = boundary[1..].iter().map(|p| *p - p0).collect();
            let m = k - 1;
            let g = DMatrix::from_fn(m, m, |i, j| diffs[i].dot(&diffs[j]));
            let rhs = DVector::from_fn(m, |i, _| 0.5 * g[(i, i)]);
            let eps = 1e-14 * g.amax().max(1e-300);
            let lambda = g
                .svd(true, true)
                .solve(&rhs, eps)
                .unwrap_or_else(|_| DVector::zeros(m));
            let mut c = p0.clone();
            for (l, d) in lambda.iter().zip(&diffs) {
                c += d * *l;
            }
            let r = boundary.iter().map(|p| (*p - &c).norm()).fold(0.0, f64::max);
            (c, r)
        }
    }
}

fn inside(c: &DVector<f64>, r: f64, p: &DVector<f64>) -> bool {
    r >= 0.0 && (p - c).norm() <= r * (1.0 + 1e-12) + 1e-14
}

fn welzl<'a>(points: &[&'a DVector<f64>], boundary: &mut Vec<&'a DVector<f64>>, dim: usize) -> (DVector<f64>, f64) {
    if points.is_empty() || boundary.len() == dim + 1 {
        return ball_through(boundary, dim);
    }
    let (p, rest) = points.split_last().unwrap();
    let (c, r) = welzl(rest, boundary, dim);
    if inside(&c, r, p) {
        return (c, r);
    }
    boundary.push(p);
    let out = welzl(rest, boundary, dim);
    boundary.pop();
    out
}

/// Minimal enclosing ball. Panics on empty input or ragged dimensions.
pub fn min_enclosing_ball(points: &[Vec<f64>]) -> Ball {
    assert!(!points.is_empty(), "minimal ball of an empty set");
    let dim = points[0].len();
    let vs: Vec<DVector<f64>> = points
        .iter()
        .map(|p| {
            assert_eq!(p.len(), dim, "ragged point dimensions");
            DVector::from_column_slice(p)
        })
        .collect();
    // a fixed shuffle gives Welzl's expected linear running time deterministically
    let mut refs: Vec<&DVector<f64>> = vs.iter().collect();
    refs.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let (c, _) = welzl(&refs, &mut Vec::with_capacity(dim + 1), dim);
    let radius = vs.iter().map(|p| (p - &c).norm()).fold(0.0, f64::max);
    Ball { center: c.iter().copied().collect(), radius }
}
