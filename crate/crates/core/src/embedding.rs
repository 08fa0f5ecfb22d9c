//! Degree-one homogeneous embedding functions `f` defining `X_f = {C = 0, f = 1}`.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::ambient::{cone_c, coordinate_jets, dilation_d, ensure_finite, AmbientPoint};
use crate::error::{Error, Result};
use crate::jet::{compose_jets, Jet2, MapJet};
use crate::math;
use crate::report::{Residuals, VerificationReport};
use crate::sampling::ChartSampler;

/// Tolerance used by [`validate_homogeneity`].
pub const HOMOGENEITY_TOLERANCE: f64 = 1e-9;

/// A four-dimensional scale factor `a(t, ρ)` on the Minkowskian chart,
/// with `t = x^0` and `ρ = ‖x⃗‖`.
///
/// Implementations must return exact order-2 jets over `(t, ρ)`.
pub trait ScaleFactor: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn params(&self) -> Vec<(&'static str, f64)>;

    fn jet(&self, t: f64, rho: f64) -> Result<Jet2<2>>;

    /// When `false` the `ρ` slot of [`ScaleFactor::jet`] is ignored, which
    /// keeps the lift differentiable on the axis `x⃗ = 0`.
    fn depends_on_radius(&self) -> bool {
        true
    }
}

/// `a(t) = p t^q`, defined for `t > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PowerLawScale {
    pub p: f64,
    pub q: f64,
}

impl ScaleFactor for PowerLawScale {
    fn name(&self) -> String {
        "power_law".to_string()
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        alloc::vec![("p", self.p), ("q", self.q)]
    }

    fn jet(&self, t: f64, rho: f64) -> Result<Jet2<2>> {
        if t <= 0.0 {
            return Err(Error::ScaleFactorDomain { t, rho });
        }
        Ok(Jet2::variable(0, t).powf(self.q) * self.p)
    }

    fn depends_on_radius(&self) -> bool {
        false
    }
}

/// `a ≡ c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantScale(pub f64);

impl ScaleFactor for ConstantScale {
    fn name(&self) -> String {
        "constant".to_string()
    }

    fn params(&self) -> Vec<(&'static str, f64)> {
        alloc::vec![("a", self.0)]
    }

    fn jet(&self, _t: f64, _rho: f64) -> Result<Jet2<2>> {
        Ok(Jet2::constant(self.0))
    }

    fn depends_on_radius(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Minkowski,
    DeSitter,
    AntiDeSitter,
    PowerLaw,
    ScaleFactor,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Minkowski,
        Family::DeSitter,
        Family::AntiDeSitter,
        Family::PowerLaw,
        Family::ScaleFactor,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Minkowski => "minkowski",
            Family::DeSitter => "desitter",
            Family::AntiDeSitter => "antidesitter",
            Family::PowerLaw => "powerlaw",
            Family::ScaleFactor => "scale_factor",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == name)
            .ok_or_else(|| Error::UnknownFamily(name.to_string()))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The embedding function `f`, homogeneous of degree one on its domain.
#[derive(Clone, Debug)]
pub enum Embedding {
    /// `f_N = (y^5 + y^4)/2`.
    Minkowski,
    /// `½(1+H²)y^5 + ½(1−H²)y^4`.
    DeSitter { h: f64 },
    /// de Sitter with `H² → −H²`.
    AntiDeSitter { h: f64 },
    /// `f = f_N^{q+1} (y^0)^{−q} / p`, the lift of `a(t) = p t^q`.
    PowerLaw { p: f64, q: f64 },
    /// `f = f_N / a(y^0/f_N, ‖y⃗‖/f_N)` for a user scale factor.
    ScaleFactor(Arc<dyn ScaleFactor>),
}

impl Embedding {
    pub fn desitter(h: f64) -> Result<Self> {
        check_param("H", h, h >= 0.0)?;
        Ok(Embedding::DeSitter { h })
    }

    pub fn antidesitter(h: f64) -> Result<Self> {
        check_param("H", h, h >= 0.0)?;
        Ok(Embedding::AntiDeSitter { h })
    }

    pub fn powerlaw(p: f64, q: f64) -> Result<Self> {
        check_param("p", p, p > 0.0)?;
        check_param("q", q, q.is_finite())?;
        Ok(Embedding::PowerLaw { p, q })
    }

    pub fn scale_factor(a: impl ScaleFactor + 'static) -> Self {
        Embedding::ScaleFactor(Arc::new(a))
    }

    pub fn family(&self) -> Family {
        match self {
            Embedding::Minkowski => Family::Minkowski,
            Embedding::DeSitter { .. } => Family::DeSitter,
            Embedding::AntiDeSitter { .. } => Family::AntiDeSitter,
            Embedding::PowerLaw { .. } => Family::PowerLaw,
            Embedding::ScaleFactor(_) => Family::ScaleFactor,
        }
    }

    pub fn params(&self) -> Vec<(String, f64)> {
        match self {
            Embedding::Minkowski => Vec::new(),
            Embedding::DeSitter { h } | Embedding::AntiDeSitter { h } => {
                alloc::vec![("H".to_string(), *h)]
            }
            Embedding::PowerLaw { p, q } => {
                alloc::vec![("p".to_string(), *p), ("q".to_string(), *q)]
            }
            Embedding::ScaleFactor(a) => a
                .params()
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    /// Covector `∂_α f` for the linear members, `None` otherwise.
    pub fn linear_coefficients(&self) -> Option<[f64; 6]> {
        let (c4, c5) = match self {
            Embedding::Minkowski => (0.5, 0.5),
            Embedding::DeSitter { h } => (0.5 * (1.0 - h * h), 0.5 * (1.0 + h * h)),
            Embedding::AntiDeSitter { h } => (0.5 * (1.0 + h * h), 0.5 * (1.0 - h * h)),
            _ => return None,
        };
        Some([0.0, 0.0, 0.0, 0.0, c4, c5])
    }

    /// Minkowski, de Sitter and anti-de Sitter: `f` is linear, `□₆f = 0`, `F²` constant.
    pub fn is_maximally_symmetric(&self) -> bool {
        self.linear_coefficients().is_some()
    }

    /// The constant `F²` of the maximally symmetric members.
    pub fn constant_f_squared(&self) -> Option<f64> {
        match self {
            Embedding::Minkowski => Some(0.0),
            Embedding::DeSitter { h } => Some(h * h),
            Embedding::AntiDeSitter { h } => Some(-h * h),
            _ => None,
        }
    }

    /// Jet of `f` at `y`.
    pub fn jet(&self, y: &AmbientPoint) -> Result<Jet2<6>> {
        let jet = match self {
            Embedding::PowerLaw { p, q } => powerlaw_jet(y, *p, *q)?,
            Embedding::ScaleFactor(a) => scale_factor_jet(y, a.as_ref())?,
            linear => {
                let coeffs = linear.linear_coefficients().expect("linear member");
                Jet2::linear(&coeffs, y.coords())
            }
        };
        ensure_finite(jet, y.coords())
    }

    pub fn value(&self, y: &AmbientPoint) -> Result<f64> {
        self.jet(y).map(|j| j.value())
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.family())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}

fn check_param(name: &'static str, value: f64, ok: bool) -> Result<()> {
    if value.is_finite() && ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}

/// Jet of `f_N(y) = (y^5 + y^4)/2`.
pub fn f_minkowski(y: &AmbientPoint) -> Jet2<6> {
    Jet2::linear(&[0.0, 0.0, 0.0, 0.0, 0.5, 0.5], y.coords())
}

fn chart_scale(y: &AmbientPoint) -> Result<Jet2<6>> {
    let fnull = f_minkowski(y);
    if fnull.value() <= 0.0 {
        return Err(Error::OutsideChart { at: y.to_vec() });
    }
    Ok(fnull)
}

fn powerlaw_jet(y: &AmbientPoint, p: f64, q: f64) -> Result<Jet2<6>> {
    let fnull = chart_scale(y)?;
    let y0 = y.coords()[0];
    if y0 <= 0.0 {
        return Err(Error::ScaleFactorDomain {
            t: y0 / fnull.value(),
            rho: 0.0,
        });
    }
    let [t, ..] = coordinate_jets(y);
    Ok(fnull.powf(q + 1.0) * t.powf(-q) / p)
}

/// `f = f_N / a(y^0/f_N, ‖y⃗‖/f_N)`; the two arguments are homogeneous of degree zero.
pub fn scale_factor_jet(y: &AmbientPoint, a: &dyn ScaleFactor) -> Result<Jet2<6>> {
    let fnull = chart_scale(y)?;
    let [y0, y1, y2, y3, ..] = coordinate_jets(y);
    let t = y0 / fnull;
    let rho = if a.depends_on_radius() {
        let r2 = y1 * y1 + y2 * y2 + y3 * y3;
        if r2.value() == 0.0 {
            // ‖y⃗‖ is not differentiable on the axis.
            return Err(Error::NonFinite { at: y.to_vec() });
        }
        r2.sqrt() / fnull
    } else {
        Jet2::constant(0.0)
    };
    let args = MapJet::from_components(&[t, rho]);
    let a_jet = a.jet(t.value(), rho.value())?;
    let a_of_y = compose_jets(&a_jet, &args);
    if a_of_y.value() <= 0.0 {
        return Err(Error::ScaleFactorDomain {
            t: t.value(),
            rho: rho.value(),
        });
    }
    Ok(fnull / a_of_y)
}

/// Labels `(λ, q) = (f(y), C(y))` of the level sets `M_{λ,q}` around `X_f = M_{1,0}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NeighborhoodLabel {
    pub lambda: f64,
    pub q: f64,
}

impl NeighborhoodLabel {
    pub fn of(f: &Embedding, y: &AmbientPoint) -> Result<Self> {
        let lambda = f.value(y)?;
        if lambda <= 0.0 {
            return Err(Error::NonPositiveEmbedding { at: y.to_vec() });
        }
        Ok(Self {
            lambda,
            q: cone_c(y),
        })
    }
}

/// Checks `Df = f` and `f(λy) = λ f(y)` for `λ ∈ {1/2, 2}` at `n` seeded points
/// off the cone, inside the embedding's domain.
pub fn validate_homogeneity(f: &Embedding, n: usize, seed: u64) -> Result<VerificationReport> {
    let mut sampler = ChartSampler::new(seed);
    let mut residuals = Residuals::new();
    let mut attempts = 0usize;
    while residuals.count() < n {
        attempts += 1;
        if attempts > 1000 * n.max(1) {
            return Err(Error::SamplingExhausted {
                wanted: n,
                found: residuals.count(),
            });
        }
        let x = sampler.next_box();
        let base = crate::chart::null_lift(&x);
        let mut y = *base.coords();
        for c in y.iter_mut() {
            *c += sampler.uniform(-0.1, 0.1);
        }
        let y = AmbientPoint::new(y)?.scaled(sampler.uniform(0.5, 2.0))?;
        let Ok(jet) = f.jet(&y) else { continue };
        if jet.value() <= 0.0 {
            continue;
        }
        let fy = jet.value();
        let mut worst = math::abs(dilation_d(&jet, &y) - fy) / (1.0 + math::abs(fy));
        for lambda in [0.5, 2.0] {
            let scaled = f.value(&y.scaled(lambda)?)?;
            let defect = math::abs(scaled - lambda * fy) / (1.0 + math::abs(lambda * fy));
            worst = worst.max(defect);
        }
        residuals.record(worst, worst, y.to_vec());
    }
    Ok(residuals.finish(
        "homogeneity",
        f,
        seed,
        HOMOGENEITY_TOLERANCE,
        true,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::{box6, gradient_f, inner};

    fn pt(y: [f64; 6]) -> AmbientPoint {
        AmbientPoint::new(y).unwrap()
    }

    #[test]
    fn minkowski_values() {
        assert_eq!(f_minkowski(&pt([0.0, 0.0, 0.0, 0.0, 1.0, 1.0])).value(), 1.0);
        assert_eq!(f_minkowski(&pt([7.0, 3.0, 0.0, 0.0, 2.0, 4.0])).value(), 3.0);
        let g = gradient_f(&f_minkowski(&pt([1.0, 2.0, 3.0, 4.0, 5.0, 6.0])));
        assert_eq!(g, [0.0, 0.0, 0.0, 0.0, -0.5, 0.5]);
        assert_eq!(inner(&g, &g), 0.0);
    }

    #[test]
    fn desitter_values_and_f_squared() {
        let y = pt([0.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        assert_eq!(Embedding::desitter(1.0).unwrap().value(&y).unwrap(), 1.0);
        for h in [0.5, 1.0, 2.0] {
            let y = pt([0.2, -1.0, 0.4, 3.0, 0.7, 1.9]);
            let ds = Embedding::desitter(h).unwrap().jet(&y).unwrap();
            let ads = Embedding::antidesitter(h).unwrap().jet(&y).unwrap();
            let (fd, fa) = (gradient_f(&ds), gradient_f(&ads));
            assert!((inner(&fd, &fd) - h * h).abs() < 1e-12);
            assert!((inner(&fa, &fa) + h * h).abs() < 1e-12);
            assert_eq!(box6(&ds), 0.0);
            let expect = [0.0, 0.0, 0.0, 0.0, -(1.0 - h * h) / 2.0, (1.0 + h * h) / 2.0];
            assert_eq!(fd, expect);
        }
    }

    #[test]
    fn desitter_with_zero_h_is_minkowski() {
        let y = pt([0.2, -1.0, 0.4, 3.0, 0.7, 1.9]);
        let ds = Embedding::desitter(0.0).unwrap().jet(&y).unwrap();
        assert_eq!(ds, f_minkowski(&y));
    }

    #[test]
    fn constant_scale_factor_is_minkowski() {
        let f = Embedding::scale_factor(ConstantScale(1.0));
        let y = pt([0.3, 0.1, -0.2, 0.5, 1.1, 0.9]);
        let j = f.jet(&y).unwrap();
        let m = f_minkowski(&y);
        assert!((j.value() - m.value()).abs() < 1e-15);
        for a in 0..6 {
            assert!((j.grad()[a] - m.grad()[a]).abs() < 1e-15);
            for b in 0..6 {
                assert!(j.hess()[a][b].abs() < 1e-15);
            }
        }
    }

    #[test]
    fn linear_scale_factor_hand_value() {
        let f = Embedding::scale_factor(PowerLawScale { p: 1.0, q: 1.0 });
        assert_eq!(f.value(&pt([1.0, 0.0, 0.0, 0.0, 1.0, 1.0])).unwrap(), 1.0);
    }

    #[test]
    fn powerlaw_hand_values() {
        let y = pt([1.0, 0.0, 0.0, 0.0, 1.0, 1.0]);
        assert_eq!(Embedding::powerlaw(1.0, 1.0).unwrap().value(&y).unwrap(), 1.0);
        let y = pt([0.7, 0.3, -0.1, 0.2, 1.3, 0.8]);
        let p0 = Embedding::powerlaw(1.0, 0.0).unwrap().jet(&y).unwrap();
        let m = f_minkowski(&y);
        assert!((p0.value() - m.value()).abs() < 1e-15);
    }

    #[test]
    fn powerlaw_domain_errors() {
        let f = Embedding::powerlaw(1.0, 2.0).unwrap();
        assert!(matches!(
            f.jet(&pt([-1.0, 0.0, 0.0, 0.0, 1.0, 1.0])),
            Err(Error::ScaleFactorDomain { .. })
        ));
        assert!(matches!(
            f.jet(&pt([1.0, 0.0, 0.0, 0.0, -1.0, -1.0])),
            Err(Error::OutsideChart { .. })
        ));
        assert!(Embedding::powerlaw(0.0, 1.0).is_err());
        assert!(Embedding::desitter(-1.0).is_err());
    }

    #[test]
    fn family_names_round_trip() {
        for fam in Family::ALL {
            assert_eq!(Family::from_name(fam.name()).unwrap(), fam);
        }
        assert!(matches!(
            Family::from_name("einstein"),
            Err(Error::UnknownFamily(_))
        ));
    }

    #[test]
    fn neighborhood_label() {
        let y = pt([1.0, 0.0, 0.0, 0.0, 1.25, 0.75]);
        let l = NeighborhoodLabel::of(&Embedding::Minkowski, &y).unwrap();
        assert_eq!(l, NeighborhoodLabel { lambda: 1.0, q: 0.0 });
        let y = pt([0.0, 0.0, 0.0, 0.0, -1.0, -1.0]);
        assert!(NeighborhoodLabel::of(&Embedding::Minkowski, &y).is_err());
    }

    #[test]
    fn homogeneity_reports() {
        let r = validate_homogeneity(&Embedding::Minkowski, 100, 1).unwrap();
        assert!(r.pass && r.max_rel_residual < 1e-12, "{r:?}");
        let r = validate_homogeneity(&Embedding::desitter(2.0).unwrap(), 100, 2).unwrap();
        assert!(r.pass && r.max_rel_residual < 1e-12, "{r:?}");
        let r = validate_homogeneity(&Embedding::powerlaw(2.0, 3.0).unwrap(), 100, 3).unwrap();
        assert!(r.pass && r.max_rel_residual < 1e-9, "{r:?}");
        assert_eq!(r.n_points, 100);
    }
}
