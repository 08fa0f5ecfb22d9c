//! Flat six-dimensional ambient space with signature `(+,−,−,−,−,+)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::jet::Jet2;

/// Diagonal of the ambient metric `η`.
pub const ETA: [f64; 6] = [1.0, -1.0, -1.0, -1.0, -1.0, 1.0];

/// The ambient metric. Diagonal, so it is its own inverse.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MetricSignature;

impl MetricSignature {
    pub const fn diag(&self) -> [f64; 6] {
        ETA
    }

    pub fn trace(&self) -> f64 {
        ETA.iter().sum()
    }
}

/// A point `y^α` of the ambient space. Always finite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AmbientPoint([f64; 6]);

impl AmbientPoint {
    pub fn new(y: [f64; 6]) -> Result<Self> {
        if y.iter().all(|c| c.is_finite()) {
            Ok(Self(y))
        } else {
            Err(Error::NonFinite { at: y.to_vec() })
        }
    }

    pub fn coords(&self) -> &[f64; 6] {
        &self.0
    }

    pub fn scaled(&self, s: f64) -> Result<Self> {
        Self::new(self.0.map(|c| c * s))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.0.to_vec()
    }
}

/// `η_{αβ} u^α v^β`.
pub fn inner(u: &[f64; 6], v: &[f64; 6]) -> f64 {
    (0..6).map(|a| ETA[a] * u[a] * v[a]).sum()
}

/// `C(y) = y^α y_α`.
pub fn cone_c(y: &AmbientPoint) -> f64 {
    inner(&y.0, &y.0)
}

/// Jet of the cone function at `y`; `□₆C = 12`.
pub fn cone_jet(y: &AmbientPoint) -> Jet2<6> {
    let c = y.0;
    let grad = core::array::from_fn(|a| 2.0 * ETA[a] * c[a]);
    let mut hess = [[0.0; 6]; 6];
    for a in 0..6 {
        hess[a][a] = 2.0 * ETA[a];
    }
    Jet2::new(cone_c(y), grad, hess)
}

/// Index raising: `v^α = η^{αβ} w_β`.
pub fn raise(w: &[f64; 6]) -> [f64; 6] {
    core::array::from_fn(|a| ETA[a] * w[a])
}

/// Dilation `Dφ = y^α ∂_α φ` from a jet taken at `y`.
pub fn dilation_d(phi: &Jet2<6>, y: &AmbientPoint) -> f64 {
    phi.directional(&y.0)
}

/// `F^α = η^{αβ} ∂_β f` from a jet of `f`.
pub fn gradient_f(f: &Jet2<6>) -> [f64; 6] {
    raise(f.grad())
}

/// `□₆φ = η^{αβ} ∂_α ∂_β φ`.
pub fn box6(phi: &Jet2<6>) -> f64 {
    (0..6).map(|a| ETA[a] * phi.hess()[a][a]).sum()
}

/// Ambient coordinates as jets (for building fields from jet arithmetic).
pub fn coordinate_jets(y: &AmbientPoint) -> [Jet2<6>; 6] {
    Jet2::coordinates(&y.0)
}

pub(crate) fn ensure_finite<const N: usize>(jet: Jet2<N>, at: &[f64]) -> Result<Jet2<N>> {
    if jet.is_finite() {
        Ok(jet)
    } else {
        Err(Error::NonFinite { at: at.to_vec() })
    }
}
