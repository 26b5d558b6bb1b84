use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::MatrixRepr;
use crate::error::GeometryError;
use crate::tolerance;

/// Exact integer `2g x 2g` matrix preserving the form `J = [[0, I], [-I, 0]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr<i64>", into = "MatrixRepr<i64>")]
pub struct SymplecticMatrix {
    genus: usize,
    entries: Vec<i64>,
}

impl TryFrom<MatrixRepr<i64>> for SymplecticMatrix {
    type Error = GeometryError;
    fn try_from(r: MatrixRepr<i64>) -> Result<Self, Self::Error> {
        SymplecticMatrix::from_rows(&r.entries)
    }
}

impl From<SymplecticMatrix> for MatrixRepr<i64> {
    fn from(m: SymplecticMatrix) -> Self {
        MatrixRepr { entries: m.rows() }
    }
}

/// Symplectic pairing `<x, y> = x^T J y` on `Z^{2g}`.
pub fn pairing(x: &[i64], y: &[i64]) -> i64 {
    let g = x.len() / 2;
    (0..g).map(|i| x[i] * y[g + i] - x[g + i] * y[i]).sum()
}

/// Exact check of `M^T J M = J` on a row-major `2g x 2g` integer matrix.
pub fn is_symplectic_entries(n: usize, a: &[i64]) -> bool {
    if !n.is_multiple_of(2) || a.len() != n * n {
        return false;
    }
    let g = n / 2;
    let col = |j: usize| -> Vec<i128> { (0..n).map(|i| a[i * n + j] as i128).collect() };
    let cols: Vec<Vec<i128>> = (0..n).map(col).collect();
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (&cols[i], &cols[j]);
            let p: i128 = (0..g).map(|k| x[k] * y[g + k] - x[g + k] * y[k]).sum();
            let expected = if j == i + g && i < g {
                1
            } else if i == j + g && j < g {
                -1
            } else {
                0
            };
            if p != expected {
                return false;
            }
        }
    }
    true
}

impl SymplecticMatrix {
    pub fn identity(genus: usize) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        SymplecticMatrix { genus, entries }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, GeometryError> {
        let n = rows.len();
        if n == 0 || !n.is_multiple_of(2) || rows.iter().any(|r| r.len() != n) {
            return Err(GeometryError::NotSymplectic(format!(
                "expected a square matrix of even size, got {n} rows"
            )));
        }
        let entries: Vec<i64> = rows.iter().flatten().copied().collect();
        if !is_symplectic_entries(n, &entries) {
            return Err(GeometryError::NotSymplectic("M^T J M != J".into()));
        }
        Ok(SymplecticMatrix { genus: n / 2, entries })
    }

    /// Transvection `x -> x + k <x, v> v`, i.e. `I + k v (J v)^T`.
    pub fn transvection(v: &[i64], k: i64) -> Self {
        let n = v.len();
        assert!(n.is_multiple_of(2) && n > 0, "transvection vector must have even length");
        let g = n / 2;
        // (J v)_i = v_{g+i} for i < g, -v_{i-g} otherwise
        let jv: Vec<i64> = (0..n).map(|i| if i < g { v[g + i] } else { -v[i - g] }).collect();
        let mut m = Self::identity(g);
        for i in 0..n {
            for j in 0..n {
                m.entries[i * n + j] += k * v[i] * jv[j];
            }
        }
        m
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn size(&self) -> usize {
        2 * self.genus
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.size()).map(<[i64]>::to_vec).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus)
    }

    /// Product `self * other`; panics on `i64` overflow.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.genus, other.genus, "genus mismatch in product");
        let n = self.size();
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                let s: i128 = (0..n)
                    .map(|k| self.entries[i * n + k] as i128 * other.entries[k * n + j] as i128)
                    .sum();
                entries[i * n + j] = i64::try_from(s).expect("symplectic product overflows i64");
            }
        }
        SymplecticMatrix { genus: self.genus, entries }
    }

    /// Inverse `-J M^T J`.
    pub fn inverse(&self) -> Self {
        let n = self.size();
        let g = self.genus;
        // M^{-1} = J^T M^T J; blockwise [[D^T, -B^T], [-C^T, A^T]]
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (bi, bj) = (i / g, j / g);
                let (ri, rj) = (i % g, j % g);
                let (src_bi, src_bj, sign) = match (bi, bj) {
                    (0, 0) => (1, 1, 1),
                    (0, 1) => (0, 1, -1),
                    (1, 0) => (1, 0, -1),
                    _ => (0, 0, 1),
                };
                // transpose within the block
                let si = src_bi * g + rj;
                let sj = src_bj * g + ri;
                entries[i * n + j] = sign * self.entries[si * n + sj];
            }
        }
        SymplecticMatrix { genus: g, entries }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = self.size();
        (0..n).map(|i| (0..n).map(|k| self.entries[i * n + k] * x[k]).sum()).collect()
    }

    pub fn to_real(&self) -> DMatrix<f64> {
        let n = self.size();
        DMatrix::from_fn(n, n, |i, j| self.entries[i * n + j] as f64)
    }
}

/// The standard form `J` as a real matrix.
pub fn standard_form(genus: usize) -> DMatrix<f64> {
    let n = 2 * genus;
    DMatrix::from_fn(n, n, |i, j| {
        if i < genus && j == i + genus {
            1.0
        } else if i >= genus && j + genus == i {
            -1.0
        } else {
            0.0
        }
    })
}

/// `max |M^T J M - J| / max(1, |M|^2)`, the relative symplectic defect.
pub fn symplectic_defect(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    if n != m.ncols() || !n.is_multiple_of(2) {
        return f64::INFINITY;
    }
    let j = standard_form(n / 2);
    let diff = m.transpose() * &j * m - j;
    let scale = m.amax().powi(2).max(1.0);
    diff.amax() / scale
}

/// Checks a real matrix is symplectic to the module tolerance.
pub fn check_real_symplectic(m: &DMatrix<f64>) -> Result<usize, GeometryError> {
    let n = m.nrows();
    if n == 0 || n != m.ncols() || !n.is_multiple_of(2) {
        return Err(GeometryError::NotSymplectic(format!(
            "expected a square matrix of even size, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(GeometryError::NotSymplectic("non-finite entry".into()));
    }
    let defect = symplectic_defect(m);
    if defect > tolerance::SYMPLECTIC {
        return Err(GeometryError::NotSymplectic(format!("form defect {defect:.3e}")));
    }
    Ok(n / 2)
}
