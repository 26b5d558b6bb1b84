//! Logarithm and exponential maps for the smooth model spaces
//! (Euclidean, Siegel and their products).

use super::siegel::{siegel_exp, siegel_log, tangent_dim as siegel_dim};
use super::space::{ModelPoint, SpaceDescriptor};
use crate::error::GeometryError;

/// Dimension of the tangent space, or `None` if the space has a tree factor.
pub fn tangent_dim(space: &SpaceDescriptor) -> Option<usize> {
    match space {
        SpaceDescriptor::Euclid { dim } => Some(*dim),
        SpaceDescriptor::Siegel { genus } => Some(siegel_dim(*genus)),
        SpaceDescriptor::Tree(_) => None,
        SpaceDescriptor::Product { factors } => factors.iter().map(tangent_dim).sum(),
    }
}

fn not_smooth() -> GeometryError {
    GeometryError::InvalidSpace("tangent maps need a space without tree factors".into())
}

/// `log_p(q)`: the initial velocity of the unit-time geodesic from `p` to `q`.
pub fn log_map(space: &SpaceDescriptor, p: &ModelPoint, q: &ModelPoint) -> Result<Vec<f64>, GeometryError> {
    match (space, p, q) {
        (SpaceDescriptor::Euclid { .. }, ModelPoint::Euclid { coords: a }, ModelPoint::Euclid { coords: b }) => {
            Ok(b.iter().zip(a).map(|(y, x)| y - x).collect())
        }
        (SpaceDescriptor::Siegel { .. }, ModelPoint::Siegel(a), ModelPoint::Siegel(b)) => siegel_log(a, b),
        (SpaceDescriptor::Product { factors }, ModelPoint::Product { factors: a }, ModelPoint::Product { factors: b }) => {
            let mut out = Vec::new();
            for ((s, x), y) in factors.iter().zip(a).zip(b) {
                out.extend(log_map(s, x, y)?);
            }
            Ok(out)
        }
        (SpaceDescriptor::Tree(_), _, _) => Err(not_smooth()),
        _ => Err(GeometryError::SpaceMismatch(format!("{} point in a {} space", p.kind(), space.kind()))),
    }
}

/// `exp_p(v)`.
pub fn exp_map(space: &SpaceDescriptor, p: &ModelPoint, v: &[f64]) -> Result<ModelPoint, GeometryError> {
    let dim = tangent_dim(space).ok_or_else(not_smooth)?;
    if v.len() != dim {
        return Err(GeometryError::InvalidPoint(format!("tangent vector of length {}, expected {dim}", v.len())));
    }
    match (space, p) {
        (SpaceDescriptor::Euclid { .. }, ModelPoint::Euclid { coords }) => {
            Ok(ModelPoint::euclid(coords.iter().zip(v).map(|(x, d)| x + d).collect::<Vec<_>>()))
        }
        (SpaceDescriptor::Siegel { .. }, ModelPoint::Siegel(z)) => Ok(ModelPoint::Siegel(siegel_exp(z, v)?)),
        (SpaceDescriptor::Product { factors }, ModelPoint::Product { factors: ps }) => {
            let mut offset = 0;
            let mut out = Vec::with_capacity(factors.len());
            for (s, x) in factors.iter().zip(ps) {
                let k = tangent_dim(s).ok_or_else(not_smooth)?;
                out.push(exp_map(s, x, &v[offset..offset + k])?);
                offset += k;
            }
            Ok(ModelPoint::Product { factors: out })
        }
        _ => Err(GeometryError::SpaceMismatch(format!("{} point in a {} space", p.kind(), space.kind()))),
    }
}
