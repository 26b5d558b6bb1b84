//! Concrete CAT(0) model spaces.

pub mod sampling;
pub mod siegel;
pub mod space;
pub mod symplectic;
pub mod tangent;
pub mod tree;

pub use siegel::{siegel_act, SiegelPoint};
pub use space::{distance, geodesic_point, ModelPoint, SpaceDescriptor};
pub use symplectic::SymplecticMatrix;
pub use tree::{MetricTree, TreeEdge};

use serde::{Deserialize, Serialize};

/// Row-major matrix wrapper used by the JSON schema (`{"entries": [[..], ..]}`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRepr<T> {
    pub entries: Vec<Vec<T>>,
}

impl<T: Clone> MatrixRepr<T> {
    /// Checks that the rows form an `n x n` square and returns `n`.
    pub fn square_size(&self) -> Option<usize> {
        let n = self.entries.len();
        self.entries.iter().all(|r| r.len() == n).then_some(n)
    }
}

pub(crate) fn real_matrix(rows: &[Vec<f64>]) -> Option<nalgebra::DMatrix<f64>> {
    let n = rows.len();
    let m = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != m) {
        return None;
    }
    Some(nalgebra::DMatrix::from_fn(n, m, |i, j| rows[i][j]))
}

pub(crate) fn matrix_rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)]).collect())
        .collect()
}
