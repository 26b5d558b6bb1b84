use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{AnalysisError, GeometryError};
use crate::model::siegel::siegel_act;
use crate::model::symplectic::check_real_symplectic;
use crate::model::{real_matrix, matrix_rows};
use crate::model::{ModelPoint, SpaceDescriptor, SymplecticMatrix};
use crate::tolerance;

/// An isometry of one of the model spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Isometry {
    Identity,
    /// `x -> L x + t` with `L` orthogonal.
    Euclid { linear: Vec<Vec<f64>>, translation: Vec<f64> },
    /// Real symplectic matrix acting on the Siegel space.
    Symplectic { entries: Vec<Vec<f64>> },
    /// Length-preserving vertex permutation of a metric tree.
    Tree { vertex_map: Vec<usize> },
    Product { factors: Vec<Isometry> },
}

fn mismatch(msg: impl Into<String>) -> AnalysisError {
    AnalysisError::IsometryMismatch(msg.into())
}

impl Isometry {
    pub fn symplectic(m: &DMatrix<f64>) -> Self {
        Isometry::Symplectic { entries: matrix_rows(m) }
    }

    pub fn from_integer(m: &SymplecticMatrix) -> Self {
        Self::symplectic(&m.to_real())
    }

    pub(crate) fn real_matrix(&self) -> Option<DMatrix<f64>> {
        match self {
            Isometry::Symplectic { entries } => real_matrix(entries),
            _ => None,
        }
    }

    /// Checks the isometry acts on `space`.
    pub fn check(&self, space: &SpaceDescriptor) -> Result<(), AnalysisError> {
        match (self, space) {
            (Isometry::Identity, _) => Ok(()),
            (Isometry::Euclid { linear, translation }, SpaceDescriptor::Euclid { dim }) => {
                let l = real_matrix(linear).ok_or_else(|| mismatch("ragged linear part"))?;
                if l.shape() != (*dim, *dim) || translation.len() != *dim {
                    return Err(mismatch(format!("euclidean isometry does not act on R^{dim}")));
                }
                let defect = (l.transpose() * &l - DMatrix::identity(*dim, *dim)).amax();
                if defect > tolerance::GEOMETRY {
                    return Err(mismatch(format!("linear part is not orthogonal (defect {defect:.3e})")));
                }
                Ok(())
            }
            (Isometry::Symplectic { entries }, SpaceDescriptor::Siegel { genus }) => {
                let m = real_matrix(entries).ok_or_else(|| mismatch("ragged matrix"))?;
                let g = check_real_symplectic(&m).map_err(|e| AnalysisError::NotSymplectic(e.to_string()))?;
                if g != *genus {
                    return Err(mismatch(format!("genus {g} matrix on the genus {genus} siegel space")));
                }
                Ok(())
            }
            (Isometry::Tree { vertex_map }, SpaceDescriptor::Tree(t)) => {
                t.check_automorphism(vertex_map).map_err(mismatch)
            }
            (Isometry::Product { factors }, SpaceDescriptor::Product { factors: spaces }) => {
                if factors.len() != spaces.len() {
                    return Err(mismatch("product isometry has the wrong number of factors"));
                }
                factors.iter().zip(spaces).try_for_each(|(f, s)| f.check(s))
            }
            _ => Err(mismatch(format!("isometry does not act on a {} space", space.kind()))),
        }
    }

    /// Image of `p`; `p` must be valid in `space`.
    pub fn apply(&self, space: &SpaceDescriptor, p: &ModelPoint) -> Result<ModelPoint, AnalysisError> {
        self.check(space)?;
        space.validate_point(p)?;
        self.apply_unchecked(space, p)
    }

    pub(crate) fn apply_unchecked(&self, space: &SpaceDescriptor, p: &ModelPoint) -> Result<ModelPoint, AnalysisError> {
        Ok(match (self, space, p) {
            (Isometry::Identity, _, _) => p.clone(),
            (Isometry::Euclid { linear, translation }, _, ModelPoint::Euclid { coords }) => {
                let img = linear
                    .iter()
                    .zip(translation)
                    .map(|(row, t)| row.iter().zip(coords).map(|(a, x)| a * x).sum::<f64>() + t)
                    .collect::<Vec<_>>();
                ModelPoint::euclid(img)
            }
            (Isometry::Symplectic { entries }, _, ModelPoint::Siegel(z)) => {
                let m = real_matrix(entries).ok_or_else(|| mismatch("ragged matrix"))?;
                ModelPoint::Siegel(siegel_act(&m, z)?)
            }
            (Isometry::Tree { vertex_map }, SpaceDescriptor::Tree(t), ModelPoint::Tree { .. }) => {
                ModelPoint::tree(t.map_point(vertex_map, p.as_tree().unwrap()))
            }
            (Isometry::Product { factors }, SpaceDescriptor::Product { factors: spaces }, ModelPoint::Product { factors: ps }) => {
                let parts = factors
                    .iter()
                    .zip(spaces)
                    .zip(ps)
                    .map(|((f, s), x)| f.apply_unchecked(s, x))
                    .collect::<Result<Vec<_>, _>>()?;
                ModelPoint::Product { factors: parts }
            }
            _ => {
                return Err(AnalysisError::Geometry(GeometryError::SpaceMismatch(format!(
                    "{} point for a {} space",
                    p.kind(),
                    space.kind()
                ))))
            }
        })
    }
}

/// `d(p, gamma p)`.
pub fn displacement(space: &SpaceDescriptor, isometry: &Isometry, p: &ModelPoint) -> Result<f64, AnalysisError> {
    let img = isometry.apply(space, p)?;
    Ok(space.distance(p, &img)?)
}
