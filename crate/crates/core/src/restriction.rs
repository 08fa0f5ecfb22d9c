//! Restriction of the ambient wave operator to `X_f`.
//!
//! On `X_f`, for `φ` homogeneous of degree `r`,
//!
//! ```text
//! (□₆φ)^f = □_f φ^f + 2(r+1)(Fφ)^f + r((□₆f)^f − (r+3)F²_f) φ^f
//! ```
//!
//! and at `r = −1` this fixes the scalar curvature: `R^f/6 = (□₆f)^f − 2F²_f`.
//! The left side is evaluated from ambient jets, `□_f` from chart jets of the
//! conformal factor, so the two sides come from separate code paths.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::ambient::{box6, cone_c, gradient_f, inner, AmbientPoint};
use crate::chart::{box_f_with, lift_jet, ChartPoint, Lift};
use crate::embedding::{Embedding, Family, PowerLawScale};
use crate::error::{Error, Result};
use crate::fields::{harmonic_catalog, non_harmonic_catalog, ScalarField6};
use crate::math;
use crate::oracle::ricci_oracle;
use crate::report::{residual_scale, Residuals, VerificationReport};
use crate::sampling::sample_chart_points;

/// Everything entering the main identity at one chart point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MainFormulaTerms {
    pub degree: f64,
    /// `(□₆φ)^f`.
    pub box6_phi: f64,
    /// `□_f φ^f`.
    pub box_f_phi: f64,
    /// `(Fφ)^f`.
    pub f_phi: f64,
    /// `(□₆f)^f`.
    pub box6_f: f64,
    /// `F²_f`.
    pub f_squared: f64,
    /// `φ^f`.
    pub phi: f64,
}

impl MainFormulaTerms {
    pub fn lhs(&self) -> f64 {
        self.box6_phi
    }

    pub fn rhs(&self) -> f64 {
        self.rhs_with(true)
    }

    /// Right side; with `include_f_phi = false` the `(Fφ)^f` term is dropped.
    /// At `r = −1` it is never read, so any value there leaves the result unchanged.
    pub fn rhs_with(&self, include_f_phi: bool) -> f64 {
        let r = self.degree;
        let mut rhs = self.box_f_phi;
        if include_f_phi && r != -1.0 {
            rhs += 2.0 * (r + 1.0) * self.f_phi;
        }
        rhs + r * (self.box6_f - (r + 3.0) * self.f_squared) * self.phi
    }

    pub fn residual(&self) -> f64 {
        self.lhs() - self.rhs()
    }

    pub fn relative_residual(&self) -> f64 {
        math::abs(self.residual()) / residual_scale(self.lhs(), self.rhs())
    }

    /// `−[2(r+1)(Fφ)^f + r((□₆f)^f − (r+3)F²_f)φ^f]`, the on-cone value of the cross term.
    pub fn restricted_cross_term(&self) -> f64 {
        let r = self.degree;
        -(2.0 * (r + 1.0) * self.f_phi + r * (self.box6_f - (r + 3.0) * self.f_squared) * self.phi)
    }

    /// `R^f` from the embedding.
    pub fn ricci(&self) -> f64 {
        6.0 * (self.box6_f - 2.0 * self.f_squared)
    }
}

pub(crate) fn main_terms_with(phi: &dyn ScalarField6, f: &Embedding, l: &Lift) -> Result<MainFormulaTerms> {
    let fj = f.jet(&l.point)?;
    let pj = phi.jet(&l.point)?;
    let fv = gradient_f(&fj);
    Ok(MainFormulaTerms {
        degree: phi.degree(),
        box6_phi: box6(&pj),
        box_f_phi: box_f_with(phi, l)?,
        f_phi: pj.directional(&fv),
        box6_f: box6(&fj),
        f_squared: inner(&fv, &fv),
        phi: pj.value(),
    })
}

pub fn main_formula_terms(
    phi: &dyn ScalarField6,
    f: &Embedding,
    x: &ChartPoint,
) -> Result<MainFormulaTerms> {
    main_terms_with(phi, f, &lift_jet(x, f)?)
}

/// `(□₆φ)^f − RHS` of the main identity at `x`.
pub fn eq_main_residual(phi: &dyn ScalarField6, f: &Embedding, x: &ChartPoint) -> Result<f64> {
    main_formula_terms(phi, f, x).map(|t| t.residual())
}

/// The off-cone cross term
///
/// ```text
/// (1/Δ){(−2(r+1)f + D²□₆f + (D⁴/Δ)F(F²))F(φ) − (f□₆f − (r+3)F² + (D²/Δ)fF(F²)) rφ + D²F(F(φ))}
/// ```
///
/// with `Δ = f² − F²D²` and `D² = C(y)`.
pub fn eq_crossterm_offcone(phi: &dyn ScalarField6, f: &Embedding, y: &AmbientPoint) -> Result<f64> {
    let fj = f.jet(y)?;
    let pj = phi.jet(y)?;
    let r = phi.degree();
    let fvec = gradient_f(&fj);
    let fval = fj.value();
    let f2 = inner(&fvec, &fvec);
    let d2 = cone_c(y);
    let delta = fval * fval - f2 * d2;
    if math::abs(delta) <= 1e-14 * (fval * fval).max(1.0) {
        return Err(Error::DegenerateFrame { at: y.to_vec() });
    }
    let box_f = box6(&fj);
    let f_phi = pj.directional(&fvec);
    // F(F²) = 2 F^α F^β ∂_α∂_β f
    let f_of_f2 = 2.0 * fj.hess_form(&fvec, &fvec);
    // F(F(φ)) = F^α F^β ∂_α∂_β φ + F^α (∂_α F^β) ∂_β φ, with ∂_α F^β = η^{βγ} ∂_α∂_γ f
    let mut dfvec = [0.0; 6];
    for (beta, d) in dfvec.iter_mut().enumerate() {
        let row: f64 = (0..6).map(|a| fvec[a] * fj.hess()[a][beta]).sum();
        *d = crate::ambient::ETA[beta] * row;
    }
    let ff_phi = pj.hess_form(&fvec, &fvec) + pj.directional(&dfvec);
    let phi_v = pj.value();

    let first = (-2.0 * (r + 1.0) * fval + d2 * box_f + d2 * d2 / delta * f_of_f2) * f_phi;
    let second = (fval * box_f - (r + 3.0) * f2 + d2 / delta * fval * f_of_f2) * r * phi_v;
    Ok((first - second + d2 * ff_phi) / delta)
}

/// `R^f = 6((□₆f)^f − 2F²_f)` at `x`.
pub fn ricci_from_embedding(f: &Embedding, x: &ChartPoint) -> Result<f64> {
    let y = crate::chart::lift(x, f)?;
    let fj = f.jet(&y)?;
    let fv = gradient_f(&fj);
    Ok(6.0 * (box6(&fj) - 2.0 * inner(&fv, &fv)))
}

/// Tolerances for [`run_restriction_suite`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteTolerances {
    /// Main identity, relative.
    pub identity: f64,
    /// On-cone cross term against the restricted form, relative.
    pub cross_term: f64,
    /// `|R_embed − R_oracle| / (1 + |R|)`.
    pub oracle: f64,
}

impl SuiteTolerances {
    pub fn with_identity(identity: f64) -> Self {
        Self {
            identity,
            ..Self::default()
        }
    }
}

impl Default for SuiteTolerances {
    fn default() -> Self {
        Self {
            identity: 1e-6,
            cross_term: 1e-10,
            oracle: 1e-4,
        }
    }
}

/// A family named by string with its numeric parameters, resolved before any evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub name: String,
    pub h: f64,
    pub p: f64,
    pub q: f64,
}

impl FamilySpec {
    pub fn new(name: &str) -> Self {
        Self {
            name: String::from(name),
            h: 1.0,
            p: 1.0,
            q: 2.0,
        }
    }

    pub fn resolve(&self) -> Result<Embedding> {
        match Family::from_name(&self.name)? {
            Family::Minkowski => Ok(Embedding::Minkowski),
            Family::DeSitter => Embedding::desitter(self.h),
            Family::AntiDeSitter => Embedding::antidesitter(self.h),
            Family::PowerLaw => Embedding::powerlaw(self.p, self.q),
            Family::ScaleFactor => {
                Embedding::powerlaw(self.p, self.q)?;
                Ok(Embedding::scale_factor(PowerLawScale {
                    p: self.p,
                    q: self.q,
                }))
            }
        }
    }
}

/// Resolves every family first, so an unknown name fails before any evaluation.
pub fn resolve_families(specs: &[FamilySpec]) -> Result<Vec<Embedding>> {
    specs.iter().map(FamilySpec::resolve).collect()
}

/// Per family: the main identity for each harmonic field (gating), the on-cone cross
/// term (gating), Ricci against the finite-difference oracle (gating), and the main
/// identity on non-harmonic homogeneous fields (exploratory).
pub fn run_restriction_suite(
    families: &[FamilySpec],
    fields: &[Box<dyn ScalarField6>],
    n: usize,
    seed: u64,
    tol: SuiteTolerances,
) -> Result<Vec<VerificationReport>> {
    let embeddings = resolve_families(families)?;
    let mut reports = Vec::new();
    for f in &embeddings {
        let points = sample_chart_points(f, n, seed, |_| true)?;
        let lifts: Vec<Lift> = points
            .iter()
            .map(|x| lift_jet(x, f))
            .collect::<Result<_>>()?;

        for phi in fields {
            let gating = phi.is_harmonic();
            let check = if gating {
                "main_identity"
            } else {
                "main_identity_non_harmonic"
            };
            let mut identity = Residuals::new();
            let mut cross = Residuals::new();
            for (x, l) in points.iter().zip(&lifts) {
                let t = main_terms_with(phi.as_ref(), f, l)?;
                identity.record(
                    math::abs(t.residual()),
                    t.relative_residual(),
                    x.coords().to_vec(),
                );
                let off = eq_crossterm_offcone(phi.as_ref(), f, &l.point)?;
                let on = t.restricted_cross_term();
                let diff = math::abs(off - on);
                cross.record(diff, diff / residual_scale(off, on), x.coords().to_vec());
            }
            reports.push(
                identity
                    .finish(check, f, seed, tol.identity, gating)
                    .with_field(phi.as_ref()),
            );
            reports.push(
                cross
                    .finish("cross_term_on_cone", f, seed, tol.cross_term, true)
                    .with_field(phi.as_ref()),
            );
        }

        let mut ricci = Residuals::new();
        for x in &points {
            let embed = ricci_from_embedding(f, x)?;
            let oracle = ricci_oracle(f, x)?;
            let diff = math::abs(embed - oracle);
            ricci.record(diff, diff / (1.0 + math::abs(embed)), x.coords().to_vec());
        }
        reports.push(ricci.finish("ricci_oracle_agreement", f, seed, tol.oracle, true));
    }
    Ok(reports)
}

/// The harmonic catalog followed by the exploratory non-harmonic fields.
pub fn default_fields() -> Vec<Box<dyn ScalarField6>> {
    let mut fields: Vec<Box<dyn ScalarField6>> = harmonic_catalog()
        .into_iter()
        .map(|p| Box::new(p) as Box<dyn ScalarField6>)
        .collect();
    fields.extend(non_harmonic_catalog());
    fields
}

trait WithField {
    fn with_field(self, phi: &dyn ScalarField6) -> Self;
}

impl WithField for VerificationReport {
    fn with_field(mut self, phi: &dyn ScalarField6) -> Self {
        self.check = format!("{}[{}]", self.check, phi.name());
        self.with_param("r", phi.degree())
    }
}
