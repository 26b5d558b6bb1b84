//! The Siegel upper half space of complex symmetric matrices `Z = X + iY`
//! with `Y` positive definite, normalised so that genus one is the
//! curvature -1 upper half plane.

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use serde::{Deserialize, Serialize};

use super::symplectic::{check_real_symplectic, SymplecticMatrix};
use super::{matrix_rows, real_matrix};
use crate::error::GeometryError;
use crate::tolerance;

pub type C64 = Complex<f64>;
pub type CMatrix = DMatrix<C64>;

const I: C64 = C64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct SiegelPoint {
    re: DMatrix<f64>,
    im: DMatrix<f64>,
}

#[derive(Serialize, Deserialize)]
struct SiegelRepr {
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
}

impl Serialize for SiegelPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SiegelRepr { re: matrix_rows(&self.re), im: matrix_rows(&self.im) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SiegelPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = SiegelRepr::deserialize(d)?;
        let bad = || serde::de::Error::custom("siegel point needs square `re` and `im` of equal size");
        let re = real_matrix(&r.re).ok_or_else(bad)?;
        let im = real_matrix(&r.im).ok_or_else(bad)?;
        if re.nrows() != re.ncols() || re.shape() != im.shape() || re.nrows() == 0 {
            return Err(bad());
        }
        // validity is checked against the space, keep the raw values here
        Ok(SiegelPoint { re, im })
    }
}

fn is_symmetric(m: &DMatrix<f64>) -> bool {
    let scale = m.amax().max(1.0);
    (m - m.transpose()).amax() <= tolerance::VALIDITY * scale
}

fn symmetrize(m: &DMatrix<f64>) -> DMatrix<f64> {
    (m + m.transpose()) * 0.5
}

fn symmetrize_c(m: &CMatrix) -> CMatrix {
    (m + m.transpose()) * C64::new(0.5, 0.0)
}

fn complexify(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| C64::new(x, 0.0))
}

fn conj(m: &CMatrix) -> CMatrix {
    m.map(|c| c.conj())
}

fn inverse(m: CMatrix, ctx: &'static str) -> Result<CMatrix, GeometryError> {
    m.try_inverse().ok_or(GeometryError::Singular(ctx))
}

/// Applies `f` to the eigenvalues of a Hermitian matrix.
fn hermitian_fn(h: CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let h = (&h + h.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let q = eig.eigenvectors;
    let d = CMatrix::from_diagonal(&eig.eigenvalues.map(|x| C64::new(f(x), 0.0)));
    &q * d * q.adjoint()
}

impl SiegelPoint {
    /// Builds a point, checking symmetry and positive definiteness.
    pub fn new(re: DMatrix<f64>, im: DMatrix<f64>) -> Result<Self, GeometryError> {
        let p = SiegelPoint { re, im };
        p.validate()?;
        Ok(SiegelPoint { re: symmetrize(&p.re), im: symmetrize(&p.im) })
    }

    /// The base point `iI`.
    pub fn base(genus: usize) -> Self {
        SiegelPoint { re: DMatrix::zeros(genus, genus), im: DMatrix::identity(genus, genus) }
    }

    pub fn from_complex(z: &CMatrix) -> Result<Self, GeometryError> {
        let z = symmetrize_c(z);
        SiegelPoint::new(z.map(|c| c.re), z.map(|c| c.im))
    }

    pub fn genus(&self) -> usize {
        self.re.nrows()
    }

    pub fn re(&self) -> &DMatrix<f64> {
        &self.re
    }

    pub fn im(&self) -> &DMatrix<f64> {
        &self.im
    }

    pub fn to_complex(&self) -> CMatrix {
        CMatrix::from_fn(self.genus(), self.genus(), |i, j| C64::new(self.re[(i, j)], self.im[(i, j)]))
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        let g = self.re.nrows();
        if g == 0 || self.re.shape() != (g, g) || self.im.shape() != (g, g) {
            return Err(GeometryError::InvalidPoint("siegel point has inconsistent shape".into()));
        }
        if self.re.iter().chain(self.im.iter()).any(|x| !x.is_finite()) {
            return Err(GeometryError::InvalidPoint("siegel point has non-finite entries".into()));
        }
        if !is_symmetric(&self.re) || !is_symmetric(&self.im) {
            return Err(GeometryError::InvalidPoint("real or imaginary part not symmetric".into()));
        }
        let min = SymmetricEigen::new(symmetrize(&self.im)).eigenvalues.min();
        if min <= tolerance::VALIDITY {
            return Err(GeometryError::InvalidPoint(format!(
                "imaginary part not positive definite (smallest eigenvalue {min:.3e})"
            )));
        }
        Ok(())
    }
}

/// Symplectic pair `(N, N^{-1})` with `N . z = iI`.
pub(crate) fn base_frame(z: &SiegelPoint) -> (DMatrix<f64>, DMatrix<f64>) {
    let g = z.genus();
    let eig = SymmetricEigen::new(z.im.clone());
    let q = &eig.eigenvectors;
    let a = q * DMatrix::from_diagonal(&eig.eigenvalues.map(|l| 1.0 / l.sqrt())) * q.transpose();
    let a_inv = q * DMatrix::from_diagonal(&eig.eigenvalues.map(f64::sqrt)) * q.transpose();
    let mut n = DMatrix::zeros(2 * g, 2 * g);
    let mut n_inv = DMatrix::zeros(2 * g, 2 * g);
    n.view_mut((0, 0), (g, g)).copy_from(&a);
    n.view_mut((0, g), (g, g)).copy_from(&(-(&a * &z.re)));
    n.view_mut((g, g), (g, g)).copy_from(&a_inv);
    n_inv.view_mut((0, 0), (g, g)).copy_from(&a_inv);
    n_inv.view_mut((0, g), (g, g)).copy_from(&(&z.re * &a));
    n_inv.view_mut((g, g), (g, g)).copy_from(&a);
    (n, n_inv)
}

/// `(AZ + B)(CZ + D)^{-1}` without validating the input matrix.
pub(crate) fn act_complex(m: &DMatrix<f64>, z: &CMatrix) -> Result<CMatrix, GeometryError> {
    let g = z.nrows();
    let blk = |r: usize, c: usize| complexify(&m.view((r * g, c * g), (g, g)).into_owned());
    let num = blk(0, 0) * z + blk(0, 1);
    let den = blk(1, 0) * z + blk(1, 1);
    Ok(symmetrize_c(&(num * inverse(den, "siegel action (CZ + D)")?)))
}

fn cayley(w: &CMatrix) -> Result<CMatrix, GeometryError> {
    let id = CMatrix::identity(w.nrows(), w.ncols()) * I;
    Ok((w - &id) * inverse(w + &id, "cayley transform")?)
}

fn inverse_cayley(u: &CMatrix) -> Result<CMatrix, GeometryError> {
    let id = CMatrix::identity(u.nrows(), u.ncols());
    Ok(symmetrize_c(&((&id + u) * inverse(&id - u, "inverse cayley transform")? * I)))
}

/// Acts by a real symplectic matrix, validated to the module tolerance.
pub fn siegel_act(m: &DMatrix<f64>, z: &SiegelPoint) -> Result<SiegelPoint, GeometryError> {
    let g = check_real_symplectic(m)?;
    if g != z.genus() {
        return Err(GeometryError::SpaceMismatch(format!(
            "matrix of genus {g} acting on a genus {} point",
            z.genus()
        )));
    }
    z.validate()?;
    SiegelPoint::from_complex(&act_complex(m, &z.to_complex())?)
}

impl SymplecticMatrix {
    /// Action on the Siegel space of the same genus.
    pub fn act(&self, z: &SiegelPoint) -> Result<SiegelPoint, GeometryError> {
        siegel_act(&self.to_real(), z)
    }
}

fn distance_from_radii(r: impl Iterator<Item = f64>) -> f64 {
    r.map(|x| {
        let s = x.clamp(0.0, 1.0 - f64::EPSILON);
        (2.0 * s.atanh()).powi(2)
    })
    .sum::<f64>()
    .sqrt()
}

/// Distance via the cross-ratio `R = (Z1-Z2)(Z1-Z2*)^{-1}(Z1*-Z2*)(Z1*-Z2)^{-1}`
/// whose eigenvalues are `tanh^2(d_i / 2)`.
pub fn siegel_distance(z1: &SiegelPoint, z2: &SiegelPoint) -> Result<f64, GeometryError> {
    if z1.genus() != z2.genus() {
        return Err(GeometryError::SpaceMismatch("siegel points of different genus".into()));
    }
    if z1 == z2 {
        return Ok(0.0);
    }
    let a = z1.to_complex();
    let b = z2.to_complex();
    let (ac, bc) = (conj(&a), conj(&b));
    let r = (&a - &b)
        * inverse(&a - &bc, "cross-ratio")?
        * (&ac - &bc)
        * inverse(&ac - &b, "cross-ratio")?;
    let eig = r
        .schur()
        .eigenvalues()
        .ok_or(GeometryError::Singular("cross-ratio eigenvalues"))?;
    Ok(distance_from_radii(eig.iter().map(|c| c.re.max(0.0).sqrt())))
}

/// Distance computed from singular values in the frame of `z1`. This keeps
/// full relative precision for very close points.
pub fn siegel_distance_precise(z1: &SiegelPoint, z2: &SiegelPoint) -> Result<f64, GeometryError> {
    let (n, _) = base_frame(z1);
    let u = cayley(&act_complex(&n, &z2.to_complex())?)?;
    Ok(distance_from_radii(u.singular_values().iter().copied()))
}

fn interpolation_scale(x: f64, t: f64) -> f64 {
    let s = x.max(0.0).sqrt().min(1.0 - f64::EPSILON);
    if s < 1e-4 {
        t + (t - t * t * t) * s * s / 3.0
    } else {
        (t * s.atanh()).tanh() / s
    }
}

pub fn siegel_geodesic(z1: &SiegelPoint, z2: &SiegelPoint, t: f64) -> Result<SiegelPoint, GeometryError> {
    if z1.genus() != z2.genus() {
        return Err(GeometryError::SpaceMismatch("siegel points of different genus".into()));
    }
    if t == 0.0 {
        return Ok(z1.clone());
    }
    if t == 1.0 {
        return Ok(z2.clone());
    }
    let (n, n_inv) = base_frame(z1);
    let u = cayley(&act_complex(&n, &z2.to_complex())?)?;
    let h = &u * u.adjoint();
    let ut = hermitian_fn(h, |x| interpolation_scale(x, t)) * &u;
    let wt = inverse_cayley(&ut)?;
    SiegelPoint::from_complex(&act_complex(&n_inv, &wt)?)
}

/// Number of real tangent coordinates at a point of genus `g`.
pub fn tangent_dim(genus: usize) -> usize {
    genus * (genus + 1)
}

fn coords_from_symmetric(v: &CMatrix) -> Vec<f64> {
    let g = v.nrows();
    let mut out = Vec::with_capacity(tangent_dim(g));
    for i in 0..g {
        for j in i..g {
            let w = if i == j { 1.0 } else { std::f64::consts::SQRT_2 };
            let c = (v[(i, j)] + v[(j, i)]) * 0.5;
            out.push(w * c.re);
            out.push(w * c.im);
        }
    }
    out
}

fn symmetric_from_coords(g: usize, x: &[f64]) -> CMatrix {
    let mut v = CMatrix::zeros(g, g);
    let mut k = 0;
    for i in 0..g {
        for j in i..g {
            let w = if i == j { 1.0 } else { std::f64::consts::SQRT_2 };
            let c = C64::new(x[k] / w, x[k + 1] / w);
            v[(i, j)] = c;
            v[(j, i)] = c;
            k += 2;
        }
    }
    v
}

/// Riemannian logarithm at `z` in orthonormal coordinates of the frame of `z`.
pub fn siegel_log(z: &SiegelPoint, y: &SiegelPoint) -> Result<Vec<f64>, GeometryError> {
    let (n, _) = base_frame(z);
    let u = cayley(&act_complex(&n, &y.to_complex())?)?;
    let h = &u * u.adjoint();
    let f = |x: f64| {
        let s = x.max(0.0).sqrt().min(1.0 - f64::EPSILON);
        if s < 1e-6 {
            2.0 * (1.0 + s * s / 3.0)
        } else {
            2.0 * s.atanh() / s
        }
    };
    let v = hermitian_fn(h, f) * &u * I;
    Ok(coords_from_symmetric(&v))
}

/// Riemannian exponential at `z`, inverse to [`siegel_log`].
pub fn siegel_exp(z: &SiegelPoint, v: &[f64]) -> Result<SiegelPoint, GeometryError> {
    let g = z.genus();
    if v.len() != tangent_dim(g) {
        return Err(GeometryError::InvalidPoint(format!(
            "tangent vector has {} coordinates, expected {}",
            v.len(),
            tangent_dim(g)
        )));
    }
    let (_, n_inv) = base_frame(z);
    let s = symmetric_from_coords(g, v) * C64::new(0.0, -0.5);
    let ss = &s * s.adjoint();
    let k = |x: f64| {
        let r = x.max(0.0).sqrt();
        if r < 1e-6 {
            1.0 - r * r / 3.0
        } else {
            r.tanh() / r
        }
    };
    let u = hermitian_fn(ss, k) * &s;
    let w = inverse_cayley(&u)?;
    SiegelPoint::from_complex(&act_complex(&n_inv, &w)?)
}
