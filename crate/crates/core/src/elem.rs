//! Coordinate containers for group elements and the scale-robust distance.
//!
//! All element types are thin wrappers around small `Vec<f64>` coordinate
//! vectors; the meaning of the coordinates is fixed by the active
//! [`crate::model::DualOrbitModel`] (e.g. a single real for the `ax+b` line,
//! four row-major entries for a 2×2 matrix, a real/imaginary pair for ℂ).

use serde::{Deserialize, Serialize};

/// Element of the acting group `Q` (model-defined coordinates).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QElem(pub Vec<f64>);

/// Element of the vector group `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VElem(pub Vec<f64>);

/// Element of the dual group `V̂` (linear coordinates, so addition is
/// componentwise for every model).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualElem(pub Vec<f64>);

/// Element of `G = Q ⋉ V`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElem {
    pub q: QElem,
    pub v: VElem,
}

/// A point of `X = Q × V̂`, the common domain of all point transformations
/// after the partial Fourier transform in the `V` variable.
#[derive(Clone, Debug, PartialEq)]
pub struct XPoint {
    pub q: QElem,
    pub xi: DualElem,
}

/// Element of the affine dual group `Q ⋉ V̂`, with product
/// `(q,ξ)(q',ξ') = (qq', ξ + q^♭ξ')`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffDualElem {
    pub q: QElem,
    pub xi: DualElem,
}

impl DualElem {
    /// Componentwise sum (the group law of `V̂` in linear coordinates).
    pub fn add(&self, other: &DualElem) -> DualElem {
        DualElem(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Componentwise difference.
    pub fn sub(&self, other: &DualElem) -> DualElem {
        DualElem(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    /// Componentwise negation (the inverse in `V̂`).
    pub fn neg(&self) -> DualElem {
        DualElem(self.0.iter().map(|a| -a).collect())
    }
}

/// Scale-robust distance between coordinate vectors:
/// `max_i |a_i − b_i| / (1 + |a_i| + |b_i|)`.
///
/// Stays well-conditioned when coordinates range over many orders of
/// magnitude (group elements sampled log-uniformly reach ~e^{±2}, and
/// compositions square that).
pub fn rel_dist(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs() / (1.0 + x.abs() + y.abs()))
        .fold(0.0, f64::max)
}

/// Scale-robust distance between complex numbers, same normalization as
/// [`rel_dist`].
pub fn rel_dist_c(a: num_complex::Complex64, b: num_complex::Complex64) -> f64 {
    (a - b).norm() / (1.0 + a.norm() + b.norm())
}

/// Distance between two `X`-point tuples (all legs, `q` and `ξ` coordinates).
pub fn xpoints_dist(a: &[XPoint], b: &[XPoint]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(p, r)| rel_dist(&p.q.0, &r.q.0).max(rel_dist(&p.xi.0, &r.xi.0)))
        .fold(0.0, f64::max)
}
