#![allow(dead_code)]

use nalgebra::{Complex, DMatrix, SymmetricEigen};

pub type C = Complex<f64>;

/// Independent Siegel distance: normalise Z1 to iI by hand, Cayley-transform Z2
/// into the unit ball and read off the singular values of the result.
pub fn siegel_distance_oracle(x1: &DMatrix<f64>, y1: &DMatrix<f64>, x2: &DMatrix<f64>, y2: &DMatrix<f64>) -> f64 {
    let g = x1.nrows();
    let e = SymmetricEigen::new(y1.clone());
    let a = &e.eigenvectors * DMatrix::from_diagonal(&e.eigenvalues.map(|l| l.powf(-0.5))) * e.eigenvectors.transpose();
    let ac = a.map(|v| C::new(v, 0.0));
    let z2 = DMatrix::from_fn(g, g, |i, j| C::new(x2[(i, j)] - x1[(i, j)], y2[(i, j)]));
    let w = &ac * z2 * &ac;
    let id = DMatrix::<C>::identity(g, g) * C::new(0.0, 1.0);
    let u = (&w - &id) * (&w + &id).try_inverse().unwrap();
    let h = &u * u.adjoint();
    let ev = SymmetricEigen::new(h).eigenvalues;
    ev.iter().map(|s2| (2.0 * s2.max(0.0).sqrt().min(1.0 - 1e-16).atanh()).powi(2)).sum::<f64>().sqrt()
}

/// Poincare upper half plane distance.
pub fn half_plane_distance(z1: C, z2: C) -> f64 {
    (1.0 + (z1 - z2).norm_sqr() / (2.0 * z1.im * z2.im)).acosh()
}

/// Squared distance from a vertex to the point at fraction t on the opposite
/// side of a Euclidean triangle with sides a = |pq|, b = |pr|, c = |qr|,
/// measured from q toward r (Stewart's theorem).
pub fn comparison_distance(dpq: f64, dpr: f64, dqr: f64, t: f64) -> f64 {
    ((1.0 - t) * dpq * dpq + t * dpr * dpr - t * (1.0 - t) * dqr * dqr).max(0.0).sqrt()
}

/// Upper half plane point on the hyperboloid `-x0^2 + x1^2 + x2^2 = -1`.
pub fn to_hyperboloid(x: f64, y: f64) -> [f64; 3] {
    let r = x * x + y * y;
    [(r + 1.0) / (2.0 * y), (r - 1.0) / (2.0 * y), x / y]
}

pub fn minkowski(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    -a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn hyperboloid_distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (-minkowski(a, b)).max(1.0).acosh()
}

/// Minimal enclosing ball radius of three points in the hyperbolic plane:
/// the best covering candidate among pair midpoints and the equidistant point.
pub fn hyperbolic_circumradius(p: &[[f64; 3]; 3]) -> f64 {
    let normalise = |v: [f64; 3]| -> Option<[f64; 3]> {
        let q = -minkowski(&v, &v);
        if q <= 0.0 {
            return None;
        }
        let s = if v[0] > 0.0 { 1.0 } else { -1.0 } / q.sqrt();
        Some([v[0] * s, v[1] * s, v[2] * s])
    };
    let mut cands = Vec::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        cands.extend(normalise([p[i][0] + p[j][0], p[i][1] + p[j][1], p[i][2] + p[j][2]]));
    }
    let a = [p[0][0] - p[1][0], p[0][1] - p[1][1], p[0][2] - p[1][2]];
    let b = [p[0][0] - p[2][0], p[0][1] - p[2][1], p[0][2] - p[2][2]];
    let c = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
    cands.extend(normalise([-c[0], c[1], c[2]]));
    cands
        .iter()
        .map(|x| p.iter().map(|q| hyperboloid_distance(x, q)).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min)
}

/// Brute-force planar minimal enclosing circle over all pair and triple circles.
pub fn planar_min_ball(pts: &[[f64; 2]]) -> f64 {
    let covers = |c: [f64; 2], r: f64| pts.iter().all(|p| ((p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2)).sqrt() <= r + 1e-9);
    let mut best = f64::INFINITY;
    let n = pts.len();
    if n == 1 {
        return 0.0;
    }
    for i in 0..n {
        for j in i + 1..n {
            let c = [(pts[i][0] + pts[j][0]) / 2.0, (pts[i][1] + pts[j][1]) / 2.0];
            let r = ((pts[i][0] - c[0]).powi(2) + (pts[i][1] - c[1]).powi(2)).sqrt();
            if covers(c, r) {
                best = best.min(r);
            }
            for k in j + 1..n {
                let (a, b, cc) = (pts[i], pts[j], pts[k]);
                let d = 2.0 * (a[0] * (b[1] - cc[1]) + b[0] * (cc[1] - a[1]) + cc[0] * (a[1] - b[1]));
                if d.abs() < 1e-12 {
                    continue;
                }
                let sa = a[0] * a[0] + a[1] * a[1];
                let sb = b[0] * b[0] + b[1] * b[1];
                let sc = cc[0] * cc[0] + cc[1] * cc[1];
                let ux = (sa * (b[1] - cc[1]) + sb * (cc[1] - a[1]) + sc * (a[1] - b[1])) / d;
                let uy = (sa * (cc[0] - b[0]) + sb * (a[0] - cc[0]) + sc * (b[0] - a[0])) / d;
                let r = ((a[0] - ux).powi(2) + (a[1] - uy).powi(2)).sqrt();
                if covers([ux, uy], r) {
                    best = best.min(r);
                }
            }
        }
    }
    best
}

/// Min over the plane of the worst normalized violation `(a x + b y - c) / |(a, b)|`.
/// Negative means a common interior point exists. The optimum equalizes three constraints.
pub fn planar_feasibility(halfplanes: &[(f64, f64, f64)]) -> f64 {
    let unit: Vec<(f64, f64, f64)> = halfplanes
        .iter()
        .map(|&(a, b, c)| {
            let n = (a * a + b * b).sqrt();
            (a / n, b / n, c / n)
        })
        .collect();
    let worst = |x: f64, y: f64| unit.iter().map(|&(a, b, c)| a * x + b * y - c).fold(f64::NEG_INFINITY, f64::max);
    let mut best = f64::INFINITY;
    let n = unit.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let m = nalgebra::Matrix3::new(
                    unit[i].0, unit[i].1, -1.0, unit[j].0, unit[j].1, -1.0, unit[k].0, unit[k].1, -1.0,
                );
                if let Some(sol) = m.lu().solve(&nalgebra::Vector3::new(unit[i].2, unit[j].2, unit[k].2)) {
                    if sol.iter().all(|v| v.is_finite()) {
                        best = best.min(worst(sol[0], sol[1]));
                    }
                }
            }
        }
    }
    best
}

/// Counter-clockwise convex hull (monotone chain).
pub fn convex_hull(mut pts: Vec<[f64; 2]>) -> Vec<[f64; 2]> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<[f64; 2]> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<[f64; 2]> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
