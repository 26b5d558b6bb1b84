use serde::{Deserialize, Serialize};

use super::siegel::{siegel_distance, siegel_geodesic, SiegelPoint};
use super::tree::{MetricTree, TreePoint};
use crate::error::GeometryError;

/// One of the supported CAT(0) model spaces. Products carry the l2 metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SpaceDescriptor {
    Euclid { dim: usize },
    Tree(MetricTree),
    Siegel { genus: usize },
    Product { factors: Vec<SpaceDescriptor> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelPoint {
    Euclid { coords: Vec<f64> },
    Tree { edge: usize, offset: f64 },
    Siegel(SiegelPoint),
    Product { factors: Vec<ModelPoint> },
}

impl ModelPoint {
    pub fn euclid(coords: impl Into<Vec<f64>>) -> Self {
        ModelPoint::Euclid { coords: coords.into() }
    }

    pub fn tree(p: TreePoint) -> Self {
        ModelPoint::Tree { edge: p.edge, offset: p.offset }
    }

    pub fn as_tree(&self) -> Option<TreePoint> {
        match *self {
            ModelPoint::Tree { edge, offset } => Some(TreePoint { edge, offset }),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ModelPoint::Euclid { .. } => "euclid",
            ModelPoint::Tree { .. } => "tree",
            ModelPoint::Siegel(_) => "siegel",
            ModelPoint::Product { .. } => "product",
        }
    }
}

fn mismatch(space: &SpaceDescriptor, p: &ModelPoint) -> GeometryError {
    GeometryError::SpaceMismatch(format!("{} point in a {} space", p.kind(), space.kind()))
}

impl SpaceDescriptor {
    pub fn kind(&self) -> &'static str {
        match self {
            SpaceDescriptor::Euclid { .. } => "euclid",
            SpaceDescriptor::Tree(_) => "tree",
            SpaceDescriptor::Siegel { .. } => "siegel",
            SpaceDescriptor::Product { .. } => "product",
        }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        match self {
            SpaceDescriptor::Euclid { dim: 0 } => {
                Err(GeometryError::InvalidSpace("euclidean dimension must be positive".into()))
            }
            SpaceDescriptor::Siegel { genus: 0 } => {
                Err(GeometryError::InvalidSpace("siegel genus must be positive".into()))
            }
            SpaceDescriptor::Product { factors } if factors.is_empty() => {
                Err(GeometryError::InvalidSpace("product needs at least one factor".into()))
            }
            SpaceDescriptor::Product { factors } => factors.iter().try_for_each(Self::validate),
            _ => Ok(()),
        }
    }

    /// True if the space is a tree or has a tree factor.
    pub fn has_tree_factor(&self) -> bool {
        match self {
            SpaceDescriptor::Tree(_) => true,
            SpaceDescriptor::Product { factors } => factors.iter().any(Self::has_tree_factor),
            _ => false,
        }
    }

    pub fn validate_point(&self, p: &ModelPoint) -> Result<(), GeometryError> {
        match (self, p) {
            (SpaceDescriptor::Euclid { dim }, ModelPoint::Euclid { coords }) => {
                if coords.len() != *dim {
                    return Err(GeometryError::InvalidPoint(format!(
                        "expected {dim} coordinates, got {}",
                        coords.len()
                    )));
                }
                if coords.iter().any(|x| !x.is_finite()) {
                    return Err(GeometryError::InvalidPoint("non-finite coordinate".into()));
                }
                Ok(())
            }
            (SpaceDescriptor::Tree(t), ModelPoint::Tree { edge, offset }) => {
                t.validate_point(TreePoint { edge: *edge, offset: *offset })
            }
            (SpaceDescriptor::Siegel { genus }, ModelPoint::Siegel(z)) => {
                if z.genus() != *genus {
                    return Err(GeometryError::InvalidPoint(format!(
                        "genus {} point in the genus {genus} siegel space",
                        z.genus()
                    )));
                }
                z.validate()
            }
            (SpaceDescriptor::Product { factors }, ModelPoint::Product { factors: ps }) => {
                if factors.len() != ps.len() {
                    return Err(GeometryError::InvalidPoint(format!(
                        "product point has {} factors, space has {}",
                        ps.len(),
                        factors.len()
                    )));
                }
                factors.iter().zip(ps).try_for_each(|(s, p)| s.validate_point(p))
            }
            _ => Err(mismatch(self, p)),
        }
    }

    pub fn distance(&self, p: &ModelPoint, q: &ModelPoint) -> Result<f64, GeometryError> {
        self.validate_point(p)?;
        self.validate_point(q)?;
        self.distance_unchecked(p, q)
    }

    pub(crate) fn distance_unchecked(&self, p: &ModelPoint, q: &ModelPoint) -> Result<f64, GeometryError> {
        match (self, p, q) {
            (SpaceDescriptor::Euclid { .. }, ModelPoint::Euclid { coords: a }, ModelPoint::Euclid { coords: b }) => {
                Ok(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt())
            }
            (SpaceDescriptor::Tree(t), ModelPoint::Tree { .. }, ModelPoint::Tree { .. }) => {
                Ok(t.distance(p.as_tree().unwrap(), q.as_tree().unwrap()))
            }
            (SpaceDescriptor::Siegel { .. }, ModelPoint::Siegel(a), ModelPoint::Siegel(b)) => siegel_distance(a, b),
            (SpaceDescriptor::Product { factors }, ModelPoint::Product { factors: a }, ModelPoint::Product { factors: b }) => {
                let mut sum = 0.0;
                for ((s, x), y) in factors.iter().zip(a).zip(b) {
                    sum += s.distance_unchecked(x, y)?.powi(2);
                }
                Ok(sum.sqrt())
            }
            _ => Err(mismatch(self, if p.kind() == self.kind() { q } else { p })),
        }
    }

    pub fn geodesic_point(&self, p: &ModelPoint, q: &ModelPoint, t: f64) -> Result<ModelPoint, GeometryError> {
        if !(0.0..=1.0).contains(&t) {
            return Err(GeometryError::ParameterOutOfRange(t));
        }
        self.validate_point(p)?;
        self.validate_point(q)?;
        self.geodesic_unchecked(p, q, t)
    }

    pub(crate) fn geodesic_unchecked(&self, p: &ModelPoint, q: &ModelPoint, t: f64) -> Result<ModelPoint, GeometryError> {
        match (self, p, q) {
            (SpaceDescriptor::Euclid { .. }, ModelPoint::Euclid { coords: a }, ModelPoint::Euclid { coords: b }) => {
                Ok(ModelPoint::euclid(a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect::<Vec<_>>()))
            }
            (SpaceDescriptor::Tree(tr), ModelPoint::Tree { .. }, ModelPoint::Tree { .. }) => {
                Ok(ModelPoint::tree(tr.geodesic_point(p.as_tree().unwrap(), q.as_tree().unwrap(), t)))
            }
            (SpaceDescriptor::Siegel { .. }, ModelPoint::Siegel(a), ModelPoint::Siegel(b)) => {
                Ok(ModelPoint::Siegel(siegel_geodesic(a, b, t)?))
            }
            (SpaceDescriptor::Product { factors }, ModelPoint::Product { factors: a }, ModelPoint::Product { factors: b }) => {
                let parts = factors
                    .iter()
                    .zip(a)
                    .zip(b)
                    .map(|((s, x), y)| s.geodesic_unchecked(x, y, t))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ModelPoint::Product { factors: parts })
            }
            _ => Err(mismatch(self, if p.kind() == self.kind() { q } else { p })),
        }
    }
}

/// Distance between two points of `space`.
pub fn distance(space: &SpaceDescriptor, p: &ModelPoint, q: &ModelPoint) -> Result<f64, GeometryError> {
    space.distance(p, q)
}

/// The point at fraction `t` along the geodesic from `p` to `q`.
pub fn geodesic_point(space: &SpaceDescriptor, p: &ModelPoint, q: &ModelPoint, t: f64) -> Result<ModelPoint, GeometryError> {
    space.geodesic_point(p, q, t)
}
