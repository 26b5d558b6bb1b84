use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::circumcenter::circumcenter;
use super::isometry::Isometry;
use crate::error::AnalysisError;
use crate::model::siegel::{act_complex, siegel_distance_precise, siegel_exp, tangent_dim};
use crate::model::{real_matrix, ModelPoint, SiegelPoint, SpaceDescriptor};

/// Search parameters for [`translation_length_estimate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget {
    /// Descent iterations per start.
    pub max_iters: usize,
    /// Random starts in addition to the base point.
    pub restarts: usize,
    /// A run stops once it is this far from its start.
    pub search_radius: f64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_iters: 400, restarts: 2, search_radius: 20.0, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TranslationEstimate {
    /// A displacement value actually achieved, hence an upper bound on |gamma|.
    pub estimate: f64,
    /// A point realising the estimate was found and local descent stalled there.
    pub attained_hint: bool,
    /// False when every run ended by exhausting its iterations or leaving the search radius.
    pub converged: bool,
    pub witness: ModelPoint,
}

struct Run {
    value: f64,
    point: SiegelPoint,
    stalled: bool,
}

const FIXED: f64 = 1e-12;

fn siegel_displacement(m: &DMatrix<f64>, z: &SiegelPoint) -> Option<f64> {
    let img = SiegelPoint::from_complex(&act_complex(m, &z.to_complex()).ok()?).ok()?;
    siegel_distance_precise(z, &img).ok()
}

fn descend(m: &DMatrix<f64>, start: SiegelPoint, budget: &Budget) -> Run {
    let dim = tangent_dim(start.genus());
    let f = |z: &SiegelPoint| siegel_displacement(m, z).unwrap_or(f64::INFINITY);
    let mut z = start.clone();
    let mut fz = f(&z);
    let mut step = 0.5_f64;
    let mut stalled = false;
    for _ in 0..budget.max_iters {
        if fz < FIXED {
            stalled = true;
            break;
        }
        let h = (fz * 1e-3).clamp(1e-9, 1e-4);
        let mut grad = vec![0.0; dim];
        let mut e = vec![0.0; dim];
        for k in 0..dim {
            e[k] = h;
            let plus = siegel_exp(&z, &e).map(|p| f(&p)).unwrap_or(f64::INFINITY);
            e[k] = -h;
            let minus = siegel_exp(&z, &e).map(|p| f(&p)).unwrap_or(f64::INFINITY);
            e[k] = 0.0;
            grad[k] = (plus - minus) / (2.0 * h);
        }
        let gn = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if !gn.is_finite() || gn <= 1e-10 * fz {
            stalled = true;
            break;
        }
        let mut accepted = false;
        while step > 1e-12 {
            let v: Vec<f64> = grad.iter().map(|g| -step * g / gn).collect();
            if let Ok(cand) = siegel_exp(&z, &v) {
                let fc = f(&cand);
                if fc <= fz - 1e-4 * step * gn {
                    z = cand;
                    fz = fc;
                    step = (step * 2.0).min(8.0);
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            stalled = true;
            break;
        }
        if siegel_distance_precise(&start, &z).unwrap_or(f64::INFINITY) > budget.search_radius {
            break;
        }
    }
    Run { value: fz, point: z, stalled }
}

fn random_start(genus: usize, rng: &mut ChaCha8Rng) -> SiegelPoint {
    let v: Vec<f64> = (0..tangent_dim(genus)).map(|_| rng.gen_range(-1.0..1.0)).collect();
    siegel_exp(&SiegelPoint::base(genus), &v).expect("short tangent vectors exponentiate")
}

fn siegel_estimate(m: &DMatrix<f64>, genus: usize, budget: &Budget) -> TranslationEstimate {
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let mut best: Option<Run> = None;
    let mut any_stalled = false;
    for r in 0..=budget.restarts {
        let start = if r == 0 { SiegelPoint::base(genus) } else { random_start(genus, &mut rng) };
        let run = descend(m, start, budget);
        any_stalled |= run.stalled;
        if best.as_ref().is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let best = best.expect("at least one run");
    TranslationEstimate {
        estimate: best.value,
        attained_hint: best.stalled,
        converged: any_stalled,
        witness: ModelPoint::Siegel(best.point),
    }
}

fn euclid_estimate(linear: &[Vec<f64>], translation: &[f64]) -> TranslationEstimate {
    let l = real_matrix(linear).expect("checked");
    let n = l.nrows();
    let a = &l - DMatrix::identity(n, n);
    let b = DVector::from_column_slice(translation);
    let x = a
        .clone()
        .svd(true, true)
        .solve(&(-&b), 1e-12)
        .unwrap_or_else(|_| DVector::zeros(n));
    let residual = (&a * &x + &b).norm();
    TranslationEstimate {
        estimate: residual,
        attained_hint: true,
        converged: true,
        witness: ModelPoint::euclid(x.iter().copied().collect::<Vec<_>>()),
    }
}

/// Upper-bound estimate of the translation length `inf_y d(gamma y, y)`.
///
/// Euclidean isometries are solved exactly by least squares and tree
/// automorphisms through the circumcenter of an orbit. Siegel isometries use
/// Riemannian descent on the displacement from the base point and seeded
/// random starts; the reported value is the best displacement achieved, so it
/// never increases when the budget grows.
pub fn translation_length_estimate(
    space: &SpaceDescriptor,
    isometry: &Isometry,
    budget: &Budget,
) -> Result<TranslationEstimate, AnalysisError> {
    space.validate()?;
    isometry.check(space)?;
    Ok(match (isometry, space) {
        (Isometry::Identity, _) => {
            let witness = crate::model::sampling::random_point(space, &mut ChaCha8Rng::seed_from_u64(budget.seed));
            TranslationEstimate { estimate: 0.0, attained_hint: true, converged: true, witness }
        }
        (Isometry::Euclid { linear, translation }, _) => euclid_estimate(linear, translation),
        (Isometry::Symplectic { .. }, SpaceDescriptor::Siegel { genus }) => {
            siegel_estimate(&isometry.real_matrix().expect("checked"), *genus, budget)
        }
        (Isometry::Tree { vertex_map }, SpaceDescriptor::Tree(t)) => {
            let mut orbit = vec![ModelPoint::tree(t.vertex_point(0))];
            let mut v = vertex_map[0];
            while v != 0 {
                orbit.push(ModelPoint::tree(t.vertex_point(v)));
                v = vertex_map[v];
            }
            let c = circumcenter(space, &orbit)?.center;
            let img = isometry.apply_unchecked(space, &c)?;
            let estimate = space.distance_unchecked(&c, &img)?;
            TranslationEstimate { estimate, attained_hint: true, converged: true, witness: c }
        }
        (Isometry::Product { factors }, SpaceDescriptor::Product { factors: spaces }) => {
            let parts = factors
                .iter()
                .zip(spaces)
                .map(|(f, s)| translation_length_estimate(s, f, budget))
                .collect::<Result<Vec<_>, _>>()?;
            TranslationEstimate {
                estimate: parts.iter().map(|p| p.estimate * p.estimate).sum::<f64>().sqrt(),
                attained_hint: parts.iter().all(|p| p.attained_hint),
                converged: parts.iter().all(|p| p.converged),
                witness: ModelPoint::Product { factors: parts.into_iter().map(|p| p.witness).collect() },
            }
        }
        _ => return Err(AnalysisError::IsometryMismatch("isometry does not act on this space".into())),
    })
}
