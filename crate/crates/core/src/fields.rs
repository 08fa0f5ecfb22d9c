//! Homogeneous test fields on the ambient space.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::ambient::{cone_jet, ensure_finite, inner, AmbientPoint, ETA};
use crate::embedding::Embedding;
use crate::error::{Error, Result};
use crate::jet::Jet2;
use crate::math;

/// A scalar field on `R^6`, homogeneous of degree [`ScalarField6::degree`].
pub trait ScalarField6: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn degree(&self) -> f64;

    /// `□₆φ = 0` holds analytically.
    fn is_harmonic(&self) -> bool;

    fn jet(&self, y: &AmbientPoint) -> Result<Jet2<6>>;
}

/// `φ(y) = (k·y)^r` with `k·y = η_{αβ} k^α y^β`.
///
/// Harmonic when `k` is null: `□₆(k·y)^r = r(r−1)(k·y)^{r−2} k² = 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearPowerField {
    k: [f64; 6],
    r: f64,
    harmonic: bool,
}

impl LinearPowerField {
    /// Any `k`; harmonic iff `k` is null or `r ∈ {0, 1}`.
    pub fn new(k: [f64; 6], r: f64) -> Self {
        let harmonic = is_null(&k) || r == 0.0 || r == 1.0;
        Self { k, r, harmonic }
    }

    pub fn k(&self) -> &[f64; 6] {
        &self.k
    }
}

fn is_null(k: &[f64; 6]) -> bool {
    let norm: f64 = k.iter().map(|c| c * c).sum();
    math::abs(inner(k, k)) <= 1e-12 * norm.max(1.0)
}

/// `(k·y)^r` for a null vector `k`; rejects non-null `k`.
pub fn make_null_power_field(k: [f64; 6], r: f64) -> Result<LinearPowerField> {
    if !is_null(&k) {
        return Err(Error::NonNullVector {
            square: inner(&k, &k),
        });
    }
    Ok(LinearPowerField {
        k,
        r,
        harmonic: true,
    })
}

impl ScalarField6 for LinearPowerField {
    fn name(&self) -> String {
        let kind = if self.harmonic { "null_power" } else { "linear_power" };
        format!("{kind}(k={:?},r={})", self.k, self.r)
    }

    fn degree(&self) -> f64 {
        self.r
    }

    fn is_harmonic(&self) -> bool {
        self.harmonic
    }

    fn jet(&self, y: &AmbientPoint) -> Result<Jet2<6>> {
        let lowered: [f64; 6] = core::array::from_fn(|a| ETA[a] * self.k[a]);
        let s = Jet2::linear(&lowered, y.coords());
        if self.r == 0.0 {
            return Ok(Jet2::constant(1.0));
        }
        if s.value() <= 0.0 && !math::is_integer(self.r) {
            return Err(Error::FieldDomain { at: y.to_vec() });
        }
        ensure_finite(s.powf(self.r), y.coords())
    }
}

/// `C(y)`, degree 2, not harmonic (`□₆C = 12`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConeField;

impl ScalarField6 for ConeField {
    fn name(&self) -> String {
        String::from("cone")
    }

    fn degree(&self) -> f64 {
        2.0
    }

    fn is_harmonic(&self) -> bool {
        false
    }

    fn jet(&self, y: &AmbientPoint) -> Result<Jet2<6>> {
        Ok(cone_jet(y))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantField(pub f64);

impl ScalarField6 for ConstantField {
    fn name(&self) -> String {
        format!("constant({})", self.0)
    }

    fn degree(&self) -> f64 {
        0.0
    }

    fn is_harmonic(&self) -> bool {
        true
    }

    fn jet(&self, _y: &AmbientPoint) -> Result<Jet2<6>> {
        Ok(Jet2::constant(self.0))
    }
}

/// The embedding function itself viewed as a degree-one field.
#[derive(Clone, Debug)]
pub struct EmbeddingField(pub Embedding);

impl ScalarField6 for EmbeddingField {
    fn name(&self) -> String {
        format!("embedding({})", self.0)
    }

    fn degree(&self) -> f64 {
        1.0
    }

    fn is_harmonic(&self) -> bool {
        self.0.is_maximally_symmetric()
    }

    fn jet(&self, y: &AmbientPoint) -> Result<Jet2<6>> {
        self.0.jet(y)
    }
}

/// `C(y)·(k·y)^{r−2}`: degree `r`, vanishing on the cone, not harmonic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeTimesPowerField {
    base: LinearPowerField,
}

impl ConeTimesPowerField {
    pub fn new(k: [f64; 6], r: f64) -> Self {
        Self {
            base: LinearPowerField::new(k, r - 2.0),
        }
    }
}

impl ScalarField6 for ConeTimesPowerField {
    fn name(&self) -> String {
        format!("cone_times_power(k={:?},r={})", self.base.k, self.degree())
    }

    fn degree(&self) -> f64 {
        self.base.r + 2.0
    }

    fn is_harmonic(&self) -> bool {
        false
    }

    fn jet(&self, y: &AmbientPoint) -> Result<Jet2<6>> {
        Ok(cone_jet(y) * self.base.jet(y)?)
    }
}

/// Null direction `(1, n⃗, −1, 1)` with unit spatial `n⃗`.
///
/// At the lift of any box chart point `k·ŷ = x^0 − n⃗·x⃗ + 2 > 0`, so `(k·y)^r`
/// is defined for every real `r`.
pub fn chart_positive_null_vector(n: [f64; 3]) -> [f64; 6] {
    let norm = math::sqrt(n.iter().map(|c| c * c).sum());
    [1.0, n[0] / norm, n[1] / norm, n[2] / norm, -1.0, 1.0]
}

/// Degrees used by the main-identity checks.
pub const TEST_DEGREES: [f64; 6] = [-3.0, -2.0, -1.0, 0.0, 1.0, 2.0];

/// Six harmonic fields `(k·y)^r`, one per degree in [`TEST_DEGREES`], each with its own null `k`.
pub fn harmonic_catalog() -> Vec<LinearPowerField> {
    const DIRECTIONS: [[f64; 3]; 6] = [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [-1.0, 0.0, 0.0],
        [1.0, 1.0, 0.0],
        [1.0, -1.0, 1.0],
    ];
    TEST_DEGREES
        .iter()
        .zip(DIRECTIONS)
        .map(|(&r, n)| {
            make_null_power_field(chart_positive_null_vector(n), r).expect("null by construction")
        })
        .collect()
}

/// Non-harmonic homogeneous fields for exploratory runs of the main identity.
pub fn non_harmonic_catalog() -> Vec<alloc::boxed::Box<dyn ScalarField6>> {
    let timelike = [1.0, 0.0, 0.0, 0.0, 0.0, 0.0];
    let null = chart_positive_null_vector([0.0, 1.0, 0.0]);
    alloc::vec![
        alloc::boxed::Box::new(LinearPowerField::new(timelike, -2.0)) as alloc::boxed::Box<dyn ScalarField6>,
        alloc::boxed::Box::new(LinearPowerField::new(timelike, 3.0)),
        alloc::boxed::Box::new(ConeTimesPowerField::new(null, -1.0)),
        alloc::boxed::Box::new(ConeField),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{box6, dilation_d};

    fn pt(y: [f64; 6]) -> AmbientPoint {
        AmbientPoint::new(y).unwrap()
    }

    #[test]
    fn null_power_hand_value() {
        // k·y = −y^4 + y^5 = 2 at y = (0,0,0,0,1,3)
        let phi = make_null_power_field([0.0, 0.0, 0.0, 0.0, 1.0, 1.0], 2.0).unwrap();
        assert_eq!(phi.jet(&pt([0.0, 0.0, 0.0, 0.0, 1.0, 3.0])).unwrap().value(), 4.0);
    }

    #[test]
    fn degree_zero_is_one() {
        let phi = make_null_power_field([0.0, 0.0, 0.0, 0.0, 1.0, 1.0], 0.0).unwrap();
        let y = pt([0.3, 0.2, 0.1, 0.0, 4.0, 1.0]);
        let j = phi.jet(&y).unwrap();
        assert_eq!(j.value(), 1.0);
        assert_eq!(dilation_d(&j, &y), 0.0);
    }

    #[test]
    fn harmonic_at_negative_degree() {
        let phi = make_null_power_field(chart_positive_null_vector([1.0, 2.0, 0.5]), -2.0).unwrap();
        let y = pt([1.1, 0.3, -0.2, 0.4, -0.8, 1.7]);
        let j = phi.jet(&y).unwrap();
        assert!(box6(&j).abs() < 1e-10 * (1.0 + j.value().abs()));
    }

    #[test]
    fn rejects_non_null() {
        assert!(matches!(
            make_null_power_field([1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 1.0),
            Err(Error::NonNullVector { .. })
        ));
    }

    #[test]
    fn real_power_outside_domain() {
        let phi = LinearPowerField::new([1.0, 0.0, 0.0, 0.0, 0.0, 0.0], 0.5);
        assert!(matches!(
            phi.jet(&pt([-1.0, 0.0, 0.0, 0.0, 0.0, 0.0])),
            Err(Error::FieldDomain { .. })
        ));
    }

    #[test]
    fn catalog_shapes() {
        let cat = harmonic_catalog();
        assert_eq!(cat.len(), 6);
        assert!(cat.iter().all(|p| p.is_harmonic()));
        assert!(non_harmonic_catalog().iter().all(|p| !p.is_harmonic()));
    }
}
