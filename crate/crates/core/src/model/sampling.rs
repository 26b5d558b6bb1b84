//! Random instances for tests, sweeps and search restarts.

use nalgebra::DMatrix;
use rand::Rng;

use super::siegel::SiegelPoint;
use super::space::{ModelPoint, SpaceDescriptor};
use super::symplectic::SymplecticMatrix;
use super::tree::{MetricTree, TreeEdge, TreePoint};

/// Product of `steps` random integer transvections and block rotations.
pub fn random_integer_symplectic<R: Rng>(genus: usize, steps: usize, rng: &mut R) -> SymplecticMatrix {
    let n = 2 * genus;
    let mut m = SymplecticMatrix::identity(genus);
    for _ in 0..steps {
        let factor = if rng.gen_bool(0.75) {
            let mut v: Vec<i64> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
            if v.iter().all(|&x| x == 0) {
                v[rng.gen_range(0..n)] = 1;
            }
            SymplecticMatrix::transvection(&v, if rng.gen_bool(0.5) { 1 } else { -1 })
        } else {
            let i = rng.gen_range(0..genus);
            let mut rows = SymplecticMatrix::identity(genus).rows();
            rows[i][i] = 0;
            rows[genus + i][genus + i] = 0;
            rows[i][genus + i] = -1;
            rows[genus + i][i] = 1;
            SymplecticMatrix::from_rows(&rows).expect("block rotation is symplectic")
        };
        m = m.mul(&factor);
    }
    m
}

/// Product of real transvections, block rotations and diagonal scalings.
pub fn random_real_symplectic<R: Rng>(genus: usize, steps: usize, rng: &mut R) -> DMatrix<f64> {
    let n = 2 * genus;
    let mut m = DMatrix::<f64>::identity(n, n);
    for _ in 0..steps {
        let factor = match rng.gen_range(0..3) {
            0 => {
                let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let k: f64 = rng.gen_range(-1.0..1.0);
                let jv: Vec<f64> = (0..n).map(|i| if i < genus { v[genus + i] } else { -v[i - genus] }).collect();
                DMatrix::from_fn(n, n, |i, j| f64::from(u8::from(i == j)) + k * v[i] * jv[j])
            }
            1 => {
                let i = rng.gen_range(0..genus);
                let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let mut r = DMatrix::identity(n, n);
                r[(i, i)] = th.cos();
                r[(genus + i, genus + i)] = th.cos();
                r[(i, genus + i)] = -th.sin();
                r[(genus + i, i)] = th.sin();
                r
            }
            _ => {
                let i = rng.gen_range(0..genus);
                let s: f64 = rng.gen_range(-0.5..0.5);
                let mut d = DMatrix::identity(n, n);
                d[(i, i)] = s.exp();
                d[(genus + i, genus + i)] = (-s).exp();
                d
            }
        };
        m *= factor;
    }
    m
}

/// Random Siegel point with `Y = B B^T + 0.2 I`.
pub fn random_siegel_point<R: Rng>(genus: usize, rng: &mut R) -> SiegelPoint {
    let x = DMatrix::from_fn(genus, genus, |_, _| rng.gen_range(-1.0..1.0));
    let b = DMatrix::from_fn(genus, genus, |_, _| rng.gen_range(-1.0..1.0));
    let y = &b * b.transpose() + DMatrix::identity(genus, genus) * 0.2;
    SiegelPoint::new((&x + x.transpose()) * 0.5, y).expect("sampled point is valid")
}

/// Random tree on `vertices` vertices, each new vertex attached to an earlier one.
pub fn random_tree<R: Rng>(vertices: usize, rng: &mut R) -> MetricTree {
    let edges = (1..vertices)
        .map(|v| TreeEdge { u: rng.gen_range(0..v), v, length: rng.gen_range(0.1..2.0) })
        .collect();
    MetricTree::new(vertices, edges).expect("sampled tree is valid")
}

pub fn random_tree_point<R: Rng>(tree: &MetricTree, rng: &mut R) -> TreePoint {
    let edge = rng.gen_range(0..tree.edges().len());
    let len = tree.edges()[edge].length;
    let offset = match rng.gen_range(0..6) {
        0 => 0.0,
        1 => len,
        _ => rng.gen_range(0.0..=len),
    };
    TreePoint { edge, offset }
}

/// Random point of any supported space.
pub fn random_point<R: Rng>(space: &SpaceDescriptor, rng: &mut R) -> ModelPoint {
    match space {
        SpaceDescriptor::Euclid { dim } => {
            ModelPoint::euclid((0..*dim).map(|_| rng.gen_range(-5.0..5.0)).collect::<Vec<_>>())
        }
        SpaceDescriptor::Tree(t) => ModelPoint::tree(random_tree_point(t, rng)),
        SpaceDescriptor::Siegel { genus } => ModelPoint::Siegel(random_siegel_point(*genus, rng)),
        SpaceDescriptor::Product { factors } => {
            ModelPoint::Product { factors: factors.iter().map(|f| random_point(f, rng)).collect() }
        }
    }
}
