//! The Minkowskian chart `x^μ = y^μ / f_N` and the lift of chart points to `X_f`.
//!
//! The null lift `ŷ(x) = (x^0, x^1, x^2, x^3, 1 + x·x/4, 1 − x·x/4)` satisfies
//! `C(ŷ) = 0` and `f_N(ŷ) = 1` exactly. Scaling it by `1/f(ŷ)` lands on
//! `X_f` because `f` is homogeneous of degree one, so the lift is closed form.
//! The induced metric is `g = Ω² η₄` with `Ω = f_N(lift) = 1/f(ŷ)` and
//! `η₄ = diag(+,−,−,−)`.

use crate::ambient::{ensure_finite, AmbientPoint};
use crate::embedding::{f_minkowski, Embedding};
use crate::error::{Error, Result};
use crate::fields::ScalarField6;
use crate::jet::{compose_jets, Jet2, MapJet};

/// Diagonal of the chart metric `η₄`.
pub const ETA4: [f64; 4] = [1.0, -1.0, -1.0, -1.0];

/// A point `x^μ` of the Minkowskian chart.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint([f64; 4]);

impl ChartPoint {
    pub fn new(x: [f64; 4]) -> Result<Self> {
        if x.iter().all(|c| c.is_finite()) {
            Ok(Self(x))
        } else {
            Err(Error::NonFinite { at: x.to_vec() })
        }
    }

    pub fn coords(&self) -> &[f64; 4] {
        &self.0
    }

    /// `x·x = (x^0)² − ‖x⃗‖²`.
    pub fn minkowski_square(&self) -> f64 {
        (0..4).map(|m| ETA4[m] * self.0[m] * self.0[m]).sum()
    }

    pub fn offset(&self, axis: usize, h: f64) -> Self {
        let mut x = self.0;
        x[axis] += h;
        Self(x)
    }
}

/// The point above `x` on the null cone with `f_N = 1`.
pub fn null_lift(x: &ChartPoint) -> AmbientPoint {
    let [x0, x1, x2, x3] = x.0;
    let u = x.minkowski_square();
    AmbientPoint::new([x0, x1, x2, x3, 1.0 + 0.25 * u, 1.0 - 0.25 * u])
        .expect("finite chart point lifts to a finite point")
}

/// Order-2 chart jet of the null lift.
pub fn null_lift_jet(x: &ChartPoint) -> MapJet<4, 6> {
    let c = Jet2::<4>::coordinates(&x.0);
    let u = (0..4).fold(Jet2::constant(0.0), |acc, m| acc + c[m] * c[m] * ETA4[m]);
    let quarter = u * 0.25;
    MapJet::from_components(&[c[0], c[1], c[2], c[3], quarter + 1.0, -quarter + 1.0])
}

fn embedding_at_null_lift(x: &ChartPoint, f: &Embedding) -> Result<f64> {
    let v = f
        .value(&null_lift(x))
        .map_err(|_| Error::NonPositiveEmbedding { at: x.0.to_vec() })?;
    if v <= 0.0 {
        return Err(Error::NonPositiveEmbedding { at: x.0.to_vec() });
    }
    Ok(v)
}

/// The point of `X_f` above `x`: `ŷ / f(ŷ)`.
pub fn lift(x: &ChartPoint, f: &Embedding) -> Result<AmbientPoint> {
    let s = embedding_at_null_lift(x, f)?;
    null_lift(x).scaled(1.0 / s)
}

/// The lift together with its order-2 chart jet.
#[derive(Clone, Copy, Debug)]
pub struct Lift {
    pub point: AmbientPoint,
    pub jet: MapJet<4, 6>,
}

pub fn lift_jet(x: &ChartPoint, f: &Embedding) -> Result<Lift> {
    embedding_at_null_lift(x, f)?;
    let hat = null_lift_jet(x);
    let f_at_hat = f.jet(&null_lift(x))?;
    let scale = compose_jets(&f_at_hat, &hat).recip();
    let comps: [Jet2<4>; 6] = core::array::from_fn(|k| hat.component(k) * scale);
    let jet = MapJet::from_components(&comps);
    if !jet.is_finite() {
        return Err(Error::NonFinite { at: x.0.to_vec() });
    }
    Ok(Lift {
        point: AmbientPoint::new(*jet.value())?,
        jet,
    })
}

/// `Ω(x) = f_N(lift(x))` with its chart jet.
pub fn conformal_factor(x: &ChartPoint, f: &Embedding) -> Result<Jet2<4>> {
    let l = lift_jet(x, f)?;
    conformal_factor_from(&l)
}

fn conformal_factor_from(l: &Lift) -> Result<Jet2<4>> {
    let omega = compose_jets(&f_minkowski(&l.point), &l.jet);
    ensure_finite(omega, l.point.coords())
}

/// Chart jet of `φ^f(x) = φ(lift(x))`.
pub fn restrict_field(phi: &dyn ScalarField6, f: &Embedding, x: &ChartPoint) -> Result<Jet2<4>> {
    let l = lift_jet(x, f)?;
    restrict_with(phi, &l)
}

pub(crate) fn restrict_with(phi: &dyn ScalarField6, l: &Lift) -> Result<Jet2<4>> {
    let jet = phi.jet(&l.point)?;
    ensure_finite(compose_jets(&jet, &l.jet), l.point.coords())
}

/// Laplace-Beltrami operator of `g = Ω² η₄` applied to a chart function `u`:
/// `Ω^{−2} [η^{μν} ∂_μ∂_ν u + 2 Ω^{−1} η^{μν} ∂_μΩ ∂_ν u]`.
pub fn box_conformal(u: &Jet2<4>, omega: &Jet2<4>) -> Result<f64> {
    let w = omega.value();
    if w <= 0.0 {
        return Err(Error::NonPositiveConformalFactor { at: alloc::vec![w] });
    }
    let mut flat = 0.0;
    let mut cross = 0.0;
    for m in 0..4 {
        flat += ETA4[m] * u.hess()[m][m];
        cross += ETA4[m] * omega.grad()[m] * u.grad()[m];
    }
    Ok((flat + 2.0 * cross / w) / (w * w))
}

/// `□_f φ^f` at `x`.
pub fn box_f(phi: &dyn ScalarField6, f: &Embedding, x: &ChartPoint) -> Result<f64> {
    let l = lift_jet(x, f)?;
    box_f_with(phi, &l)
}

pub(crate) fn box_f_with(phi: &dyn ScalarField6, l: &Lift) -> Result<f64> {
    let u = restrict_with(phi, l)?;
    let omega = conformal_factor_from(l)?;
    box_conformal(&u, &omega)
}

/// Induced metric `Ω² η₄` at `x`.
pub fn induced_metric(x: &ChartPoint, f: &Embedding) -> Result<[[f64; 4]; 4]> {
    let w = conformal_factor(x, f)?.value();
    let mut g = [[0.0; 4]; 4];
    for m in 0..4 {
        g[m][m] = w * w * ETA4[m];
    }
    Ok(g)
}
