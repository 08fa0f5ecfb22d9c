use std::sync::Arc;

use clap::ValueEnum;
use xfield::chart::ChartPoint;
use xfield::constraint::{
    ads_degree, powerlaw_obstruction, powerlaw_zero_g_mass, verify_ads_reduction, verify_explicit_constraint,
    verify_gms_compatibility, verify_mass_constancy, verify_mass_constancy_printed, CouplingParams, GMS_T_VALUES,
};
use xfield::embedding::{Embedding, Family, PowerLawScale, ScaleFactor};
use xfield::oracle::ricci_oracle;
use xfield::report::Residuals;
use xfield::restriction::{default_fields, ricci_from_embedding, run_restriction_suite, FamilySpec, SuiteTolerances};
use xfield::sampling::sample_chart_points;
use xfield::{Error, VerificationReport};

use crate::config::{FamilyConfig, RunConfig};
use crate::document::{ReportDocument, RicciRow};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Restriction,
    Constraint,
    Ads,
    Gms,
    All,
}

/// Tolerance of the `ricci` oracle comparison unless `--tol` is given.
const ORACLE_TOLERANCE: f64 = 1e-4;
/// Tolerance of the closed-form Ricci check on the maximally symmetric members.
const CLOSED_FORM_TOLERANCE: f64 = 1e-9;
/// Chart point of the off-cone compatibility curve; its null lift has `f = 1` exactly.
const GMS_POINT: [f64; 4] = [0.5, 0.5, 0.0, 0.0];

fn spec_of(f: &FamilyConfig) -> FamilySpec {
    FamilySpec {
        name: f.name.clone(),
        h: f.h,
        p: f.p,
        q: f.q,
    }
}

fn coupling(cfg: &RunConfig) -> CouplingParams {
    CouplingParams::new(cfg.coupling.xi, cfg.coupling.m2, cfg.coupling.r)
}

pub fn ricci(cfg: RunConfig) -> Result<ReportDocument, CliError> {
    let f = spec_of(&cfg.family).resolve()?;
    let tol = cfg.tol.unwrap_or(ORACLE_TOLERANCE);
    let mut doc = ReportDocument::new(cfg);
    let n = doc.config.samples;
    let seed = doc.config.seed;
    let points = sample_chart_points(&f, n, seed, |_| true)?;

    let mut oracle = Residuals::new();
    let mut closed = Residuals::new();
    let expected = f.constant_f_squared().map(|f2| -12.0 * f2);
    for x in &points {
        let r_embed = ricci_from_embedding(&f, x)?;
        let r_oracle = ricci_oracle(&f, x)?;
        let abs_diff = (r_embed - r_oracle).abs();
        oracle.record(abs_diff, abs_diff / (1.0 + r_embed.abs()), x.coords().to_vec());
        if let Some(e) = expected {
            let d = (r_embed - e).abs();
            closed.record(d, d, x.coords().to_vec());
        }
        doc.table.push(RicciRow {
            x: *x.coords(),
            r_embed,
            r_oracle,
            abs_diff,
        });
    }
    doc.push(oracle.finish("ricci_oracle_agreement", &f, seed, tol, true));
    if let Some(e) = expected {
        doc.push(
            closed
                .finish("ricci_closed_form", &f, seed, CLOSED_FORM_TOLERANCE, true)
                .with_param("R_expected", e),
        );
    }
    doc.finalize();
    Ok(doc)
}

pub fn ads_degree_cmd(cfg: RunConfig) -> Result<ReportDocument, CliError> {
    let f = spec_of(&cfg.family).resolve()?;
    let f2 = f.constant_f_squared().ok_or_else(|| Error::NotMaximallySymmetric {
        family: f.family().name().into(),
    })?;
    let c = coupling(&cfg);
    let mut doc = ReportDocument::new(cfg);
    match ads_degree(c.xi, c.m2, f2) {
        Ok(r) => doc.degree = Some(r),
        Err(e) => {
            let e = CliError::from(e);
            doc.error = Some(crate::document::ErrorInfo {
                kind: e.kind(),
                message: e.to_string(),
            });
        }
    }
    doc.finalize();
    Ok(doc)
}

pub fn verify(cfg: RunConfig, suite: Suite) -> Result<ReportDocument, CliError> {
    let families = match suite {
        Suite::All => catalog(&cfg.family),
        _ => vec![cfg.family.clone()],
    };
    for fam in &families {
        spec_of(fam).resolve()?;
    }
    let mut doc = ReportDocument::new(cfg);
    for fam in &families {
        let f = spec_of(fam).resolve()?;
        if matches!(suite, Suite::Restriction | Suite::All) {
            doc.extend(restriction_suite(&doc.config, fam)?);
        }
        if matches!(suite, Suite::Constraint | Suite::All) {
            doc.extend(constraint_suite(&doc.config, &f)?);
        }
        let symmetric = f.is_maximally_symmetric();
        if suite == Suite::Ads || (suite == Suite::All && symmetric) {
            doc.extend(ads_suite(&doc.config, &f)?);
        }
        if suite == Suite::Gms || (suite == Suite::All && symmetric) {
            doc.extend(gms_suite(&doc.config, &f)?);
        }
    }
    doc.finalize();
    Ok(doc)
}

/// Every family with the configured parameters, for `verify all`.
fn catalog(base: &FamilyConfig) -> Vec<FamilyConfig> {
    Family::ALL
        .iter()
        .map(|fam| FamilyConfig {
            name: fam.name().into(),
            ..base.clone()
        })
        .collect()
}

fn restriction_suite(cfg: &RunConfig, fam: &FamilyConfig) -> Result<Vec<VerificationReport>, CliError> {
    let tol = cfg.tol.map(SuiteTolerances::with_identity).unwrap_or_default();
    Ok(run_restriction_suite(&[spec_of(fam)], &default_fields(), cfg.samples, cfg.seed, tol)?)
}

fn scale_factor_of(f: &Embedding) -> Option<Arc<dyn ScaleFactor>> {
    match f {
        Embedding::PowerLaw { p, q } => Some(Arc::new(PowerLawScale { p: *p, q: *q })),
        Embedding::ScaleFactor(a) => Some(a.clone()),
        _ => None,
    }
}

fn retol(mut r: VerificationReport, tol: Option<f64>) -> VerificationReport {
    if let Some(t) = tol {
        r.tolerance = t;
        r.recompute_pass();
    }
    r
}

fn constraint_suite(cfg: &RunConfig, f: &Embedding) -> Result<Vec<VerificationReport>, CliError> {
    let c = coupling(cfg);
    let (n, seed) = (cfg.samples, cfg.seed);
    let mut out = vec![
        retol(verify_mass_constancy(f, &c, n, seed)?, cfg.tol),
        verify_mass_constancy_printed(f, &c, n, seed)?,
    ];
    if let Some(a) = scale_factor_of(f) {
        out.extend(verify_explicit_constraint(a, &c, n, seed)?);
    }
    if let Embedding::PowerLaw { p, q } = f {
        out.push(obstruction_report(*p, *q, &c)?);
    }
    Ok(out)
}

/// Induced mass with `G ≡ 0` at `x^0 ∈ {1, 2}` against the printed obstruction expression.
fn obstruction_report(p: f64, q: f64, c: &CouplingParams) -> Result<VerificationReport, CliError> {
    let m1 = powerlaw_zero_g_mass(p, q, c.r, c.xi, 1.0)?;
    let m2 = powerlaw_zero_g_mass(p, q, c.r, c.xi, 2.0)?;
    let printed1 = powerlaw_obstruction(q, c.r, c.xi, 1.0)?;
    let printed2 = powerlaw_obstruction(q, c.r, c.xi, 2.0)?;
    let mut acc = Residuals::new();
    for (x0, m, printed) in [(1.0, m1, printed1), (2.0, m2, printed2)] {
        let d = (m - printed).abs();
        acc.record(d, d / m.abs().max(printed.abs()).max(1.0), vec![x0, 0.0, 0.0, 0.0]);
    }
    let f = Embedding::powerlaw(p, q)?;
    let mut r = acc.finish("powerlaw_obstruction_printed", &f, 0, 1e-8, false);
    r.params.extend([
        ("xi".to_string(), c.xi),
        ("r".to_string(), c.r),
        ("m2_ind_x0_1".to_string(), m1),
        ("m2_ind_x0_2".to_string(), m2),
        ("ratio".to_string(), m1 / m2),
        ("printed_x0_1".to_string(), printed1),
    ]);
    Ok(r)
}

fn ads_suite(cfg: &RunConfig, f: &Embedding) -> Result<Vec<VerificationReport>, CliError> {
    let (h, sign) = match f {
        Embedding::Minkowski => (0.0, 1.0),
        Embedding::DeSitter { h } => (*h, 1.0),
        Embedding::AntiDeSitter { h } => (*h, -1.0),
        other => {
            return Err(Error::NotMaximallySymmetric {
                family: other.family().name().into(),
            }
            .into())
        }
    };
    let c = coupling(cfg);
    let f2 = f.constant_f_squared().unwrap_or(0.0);
    // Minkowski has no mass term, any degree reduces; use the configured one
    let r = if f2 == 0.0 { c.r } else { ads_degree(c.xi, c.m2, f2)? };
    let rep = verify_ads_reduction(h, sign, r, cfg.samples, cfg.seed)?;
    Ok(vec![retol(rep, cfg.tol).with_param("xi", c.xi).with_param("m2", c.m2)])
}

fn gms_suite(cfg: &RunConfig, f: &Embedding) -> Result<Vec<VerificationReport>, CliError> {
    let x = ChartPoint::new(GMS_POINT)?;
    Ok(verify_gms_compatibility(f, &coupling(cfg), &x, &GMS_T_VALUES)?)
}
