//! Exact classification of symplectic matrices acting on the Siegel space.

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::QPoly;
use crate::error::AnalysisError;
use crate::model::SymplecticMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IsometryKind {
    Elliptic,
    Hyperbolic,
    NeutralParabolic,
    NonNeutralParabolic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsometryClass {
    pub kind: IsometryKind,
    pub translation_length: f64,
    pub attained: bool,
}

/// Classification together with the algebraic data that decided it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    #[serde(flatten)]
    pub class: IsometryClass,
    pub diagonalizable: bool,
    pub unit_modulus: bool,
    pub characteristic_polynomial: String,
}

type QMat = Vec<Vec<BigRational>>;

fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(BigRational::zero(), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn is_symplectic(m: &QMat) -> bool {
    let n = m.len();
    if n == 0 || !n.is_multiple_of(2) || m.iter().any(|r| r.len() != n) {
        return false;
    }
    let g = n / 2;
    for i in 0..n {
        for j in 0..n {
            let p = (0..g).fold(BigRational::zero(), |acc, k| {
                acc + &m[k][i] * &m[g + k][j] - &m[g + k][i] * &m[k][j]
            });
            let expected = if i < g && j == i + g {
                BigRational::one()
            } else if i >= g && j + g == i {
                -BigRational::one()
            } else {
                BigRational::zero()
            };
            if p != expected {
                return false;
            }
        }
    }
    true
}

/// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier.
pub fn characteristic_polynomial(m: &QMat) -> QPoly {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: QMat = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(m, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(m, &next);
        let trace = (0..n).fold(BigRational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -trace / BigRational::from_integer(BigInt::from(k));
        mk = next;
    }
    QPoly::new(coeffs)
}

fn eval_matrix(p: &QPoly, m: &QMat) -> QMat {
    let n = m.len();
    let mut acc: QMat = vec![vec![BigRational::zero(); n]; n];
    for c in p.coeffs().iter().rev() {
        acc = mat_mul(&acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    acc
}

/// Maps a reciprocal polynomial of degree `2g` to `q(y)` of degree `g` with
/// `p(x) = x^g q(x + 1/x)`.
fn trace_polynomial(p: &QPoly, g: usize) -> QPoly {
    let c = p.coeffs();
    let y = QPoly::from_ints(&[0, 1]);
    // D_0 = 2, D_1 = y, D_{k+1} = y D_k - D_{k-1}; x^k + x^{-k} = D_k(x + 1/x)
    let mut d_prev = QPoly::from_ints(&[2]);
    let mut d_cur = y.clone();
    let mut out = QPoly::new(vec![c[g].clone()]);
    for k in 1..=g {
        out = out.add(&d_cur.scale(&c[g + k]));
        let next = y.mul(&d_cur).sub(&d_prev);
        d_prev = std::mem::replace(&mut d_cur, next);
    }
    out
}

/// Classifies a rational symplectic matrix exactly.
pub fn classify_rational(m: &[Vec<BigRational>]) -> Result<Classification, AnalysisError> {
    let m: QMat = m.to_vec();
    if !is_symplectic(&m) {
        return Err(AnalysisError::NotSymplectic("M^T J M != J over the rationals".into()));
    }
    let g = m.len() / 2;
    let p = characteristic_polynomial(&m);
    let rad = p.radical();
    let diagonalizable = eval_matrix(&rad, &m).iter().flatten().all(Zero::is_zero);

    let qy = trace_polynomial(&p, g);
    let two = BigRational::from_integer(BigInt::from(2));
    let qsf = qy.radical();
    let unit_modulus = qsf.count_real_roots(&(-two.clone()), &two) == qsf.degree();

    let translation_length = if unit_modulus {
        0.0
    } else {
        let mut sum = 0.0;
        for (factor, mult) in qy.squarefree_decomposition() {
            for y in factor.numeric_roots() {
                let disc = (y * y - 4.0).sqrt();
                let lam = ((y + disc) / 2.0).norm().max(((y - disc) / 2.0).norm());
                let l = 2.0 * lam.ln();
                if l > 1e-12 {
                    sum += mult as f64 * l * l;
                }
            }
        }
        sum.sqrt()
    };
    let kind = match (diagonalizable, unit_modulus) {
        (true, true) => IsometryKind::Elliptic,
        (true, false) => IsometryKind::Hyperbolic,
        (false, true) => IsometryKind::NeutralParabolic,
        (false, false) => IsometryKind::NonNeutralParabolic,
    };
    Ok(Classification {
        class: IsometryClass { kind, translation_length, attained: diagonalizable },
        diagonalizable,
        unit_modulus,
        characteristic_polynomial: p.to_string(),
    })
}

pub fn classify_symplectic_detailed(m: &SymplecticMatrix) -> Classification {
    let rows: QMat = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    classify_rational(&rows).expect("integer symplectic matrices are validated on construction")
}

/// Elliptic, hyperbolic, neutral or non-neutral parabolic, decided from the
/// Jordan structure and the eigenvalue moduli.
pub fn classify_symplectic(m: &SymplecticMatrix) -> IsometryClass {
    classify_symplectic_detailed(m).class
}
