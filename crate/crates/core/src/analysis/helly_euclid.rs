use microlp::{ComparisonOp, OptimizationDirection, Problem};
use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::combinations;
use crate::error::AnalysisError;
use crate::tolerance::LP_FEASIBILITY;

/// `normal . x <= offset`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: f64,
}

/// Intersection of finitely many half-spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polytope {
    pub halfspaces: Vec<HalfSpace>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HellyEuclidReport {
    pub holds: bool,
    /// Point in the total intersection when `holds`.
    pub witness: Option<Vec<f64>>,
    /// An `(n+1)`-subfamily with empty intersection when not `holds`.
    pub failing_subset: Option<Vec<usize>>,
    /// Largest constraint violation of the witness over all polytopes.
    pub max_violation: f64,
    /// Witness satisfies every constraint in exact rational arithmetic.
    pub exact_membership: bool,
}

impl Polytope {
    /// Axis-aligned box `[lo_i, hi_i]`.
    pub fn aabb(lo: &[f64], hi: &[f64]) -> Self {
        let n = lo.len();
        let mut halfspaces = Vec::with_capacity(2 * n);
        for i in 0..n {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            halfspaces.push(HalfSpace { normal: e.clone(), offset: hi[i] });
            e[i] = -1.0;
            halfspaces.push(HalfSpace { normal: e, offset: -lo[i] });
        }
        Polytope { halfspaces }
    }

    /// Convex polygon from counter-clockwise vertices.
    pub fn polygon(vertices: &[[f64; 2]]) -> Self {
        let k = vertices.len();
        let halfspaces = (0..k)
            .map(|i| {
                let (a, b) = (vertices[i], vertices[(i + 1) % k]);
                let normal = vec![b[1] - a[1], a[0] - b[0]];
                let offset = normal[0] * a[0] + normal[1] * a[1];
                HalfSpace { normal, offset }
            })
            .collect();
        Polytope { halfspaces }
    }

    /// Largest violation `normal . x - offset`, relative to `|normal|`.
    pub fn violation(&self, x: &[f64]) -> f64 {
        self.halfspaces
            .iter()
            .map(|h| {
                let norm = h.normal.iter().map(|a| a * a).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
                (h.normal.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() - h.offset) / norm
            })
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn contains_exact(&self, x: &[f64]) -> bool {
        let xs: Option<Vec<BigRational>> = x.iter().map(|v| BigRational::from_float(*v)).collect();
        let Some(xs) = xs else { return false };
        self.halfspaces.iter().all(|h| {
            let lhs = h.normal.iter().zip(&xs).fold(BigRational::zero(), |acc, (a, b)| {
                acc + BigRational::from_float(*a).unwrap_or_else(BigRational::zero) * b
            });
            BigRational::from_float(h.offset).is_some_and(|b| lhs <= b)
        })
    }
}

/// Maximises the inscribed radius `t <= 1` of the intersection; feasible iff `t >= -tol`.
fn chebyshev(dim: usize, halfspaces: &[&HalfSpace]) -> Result<(Vec<f64>, f64), String> {
    let mut lp = Problem::new(OptimizationDirection::Maximize);
    let xs: Vec<_> = (0..dim).map(|_| lp.add_var(0.0, (f64::NEG_INFINITY, f64::INFINITY))).collect();
    let t = lp.add_var(1.0, (f64::NEG_INFINITY, 1.0));
    let mut constant_slack = f64::INFINITY;
    for h in halfspaces {
        let norm = h.normal.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm == 0.0 {
            constant_slack = constant_slack.min(h.offset);
            continue;
        }
        let mut row: Vec<_> = xs.iter().zip(&h.normal).map(|(&x, a)| (x, a / norm)).collect();
        row.push((t, 1.0));
        lp.add_constraint(&row, ComparisonOp::Le, h.offset / norm);
    }
    let sol = lp.solve().map_err(|e| format!("{e:?}"))?;
    let x: Vec<f64> = xs.iter().map(|&v| sol[v]).collect();
    Ok((x, sol[t].min(constant_slack)))
}

fn check_bounded(dim: usize, p: &Polytope) -> Result<(), String> {
    for i in 0..dim {
        for dir in [1.0, -1.0] {
            let mut lp = Problem::new(OptimizationDirection::Maximize);
            let xs: Vec<_> = (0..dim)
                .map(|j| lp.add_var(if i == j { dir } else { 0.0 }, (f64::NEG_INFINITY, f64::INFINITY)))
                .collect();
            for h in &p.halfspaces {
                let row: Vec<_> = xs.iter().zip(&h.normal).map(|(&x, a)| (x, *a)).collect();
                lp.add_constraint(&row, ComparisonOp::Le, h.offset);
            }
            match lp.solve() {
                Ok(_) => {}
                Err(microlp::Error::Unbounded) => return Err(format!("unbounded along coordinate {i}")),
                Err(e) => return Err(format!("{e:?}")),
            }
        }
    }
    Ok(())
}

/// Helly check for convex polytopes in `R^dim`: every `(dim+1)`-subfamily
/// is tested for a common point, then a point of the total intersection is
/// produced and re-validated against every polytope.
pub fn helly_check_euclidean(dim: usize, polytopes: &[Polytope]) -> Result<HellyEuclidReport, AnalysisError> {
    if polytopes.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    for (index, p) in polytopes.iter().enumerate() {
        let invalid = |reason: String| AnalysisError::InvalidPolytope { index, reason };
        if p.halfspaces.is_empty() {
            return Err(invalid("no half-spaces".into()));
        }
        if let Some(h) = p.halfspaces.iter().find(|h| h.normal.len() != dim) {
            return Err(invalid(format!("normal of length {} in dimension {dim}", h.normal.len())));
        }
        if p.halfspaces.iter().any(|h| !h.offset.is_finite() || h.normal.iter().any(|a| !a.is_finite())) {
            return Err(invalid("non-finite coefficient".into()));
        }
        let refs: Vec<&HalfSpace> = p.halfspaces.iter().collect();
        let (_, t) = chebyshev(dim, &refs).map_err(invalid)?;
        if t < -LP_FEASIBILITY {
            return Err(invalid("empty polytope".into()));
        }
        check_bounded(dim, p).map_err(invalid)?;
    }
    let gather = |idx: &[usize]| -> Vec<&HalfSpace> { idx.iter().flat_map(|&i| polytopes[i].halfspaces.iter()).collect() };
    let k = (dim + 1).min(polytopes.len());
    for subset in combinations(polytopes.len(), k) {
        let (_, t) = chebyshev(dim, &gather(&subset)).map_err(AnalysisError::Inconsistent)?;
        if t < -LP_FEASIBILITY {
            return Ok(HellyEuclidReport {
                holds: false,
                witness: None,
                failing_subset: Some(subset),
                max_violation: -t,
                exact_membership: false,
            });
        }
    }
    let all: Vec<usize> = (0..polytopes.len()).collect();
    let (x, _) = chebyshev(dim, &gather(&all)).map_err(AnalysisError::Inconsistent)?;
    let max_violation = polytopes.iter().map(|p| p.violation(&x)).fold(f64::NEG_INFINITY, f64::max).max(0.0);
    if max_violation > LP_FEASIBILITY {
        return Err(AnalysisError::Inconsistent(format!(
            "every {k}-subfamily meets but the witness violates a constraint by {max_violation:.3e}"
        )));
    }
    let exact_membership = polytopes.iter().all(|p| p.contains_exact(&x));
    Ok(HellyEuclidReport { holds: true, witness: Some(x), failing_subset: None, max_violation, exact_membership })
}
