use xfield::ambient::{cone_c, dilation_d, gradient_f, inner, AmbientPoint};
use xfield::chart::lift;
use xfield::embedding::{Embedding, PowerLawScale};
use xfield::fields::{chart_positive_null_vector, harmonic_catalog, make_null_power_field, non_harmonic_catalog, ScalarField6};
use xfield::oracle::ricci_oracle;
use xfield::restriction::{
    default_fields, eq_crossterm_offcone, main_formula_terms, ricci_from_embedding, run_restriction_suite, FamilySpec,
    SuiteTolerances,
};
use xfield::sampling::{sample_chart_points, ChartSampler};

fn families() -> Vec<Embedding> {
    vec![
        Embedding::Minkowski,
        Embedding::desitter(1.0).unwrap(),
        Embedding::antidesitter(0.5).unwrap(),
        Embedding::powerlaw(1.0, 2.0).unwrap(),
        Embedding::powerlaw(1.0, 3.0).unwrap(),
        Embedding::scale_factor(PowerLawScale { p: 0.8, q: 1.5 }),
    ]
}

#[test]
fn main_identity_on_harmonic_fields() {
    for f in families() {
        for phi in harmonic_catalog() {
            for x in sample_chart_points(&f, 40, 12, |_| true).unwrap() {
                let t = main_formula_terms(&phi, &f, &x).unwrap();
                assert!(t.relative_residual() <= 1e-6, "{f} {} {x:?}: {t:?}", phi.name());
            }
        }
    }
}

#[test]
fn main_identity_on_non_harmonic_fields() {
    // not required by the derivation, but it holds
    for f in families() {
        for phi in non_harmonic_catalog() {
            for x in sample_chart_points(&f, 20, 13, |_| true).unwrap() {
                let t = main_formula_terms(phi.as_ref(), &f, &x).unwrap();
                assert!(t.relative_residual() <= 1e-6, "{f} {}: {t:?}", phi.name());
            }
        }
    }
}

#[test]
fn conformal_degree_ignores_f_phi() {
    let phi = make_null_power_field(chart_positive_null_vector([0.0, 1.0, 1.0]), -1.0).unwrap();
    for f in families() {
        for x in sample_chart_points(&f, 20, 14, |_| true).unwrap() {
            let t = main_formula_terms(&phi, &f, &x).unwrap();
            let with = t.rhs_with(true);
            assert_eq!(with.to_bits(), t.rhs_with(false).to_bits());
            for junk in [1e300, -7.5, f64::MIN_POSITIVE, f64::NAN] {
                let mut u = t;
                u.f_phi = junk;
                assert_eq!(u.rhs().to_bits(), with.to_bits());
            }
            let kg = t.box_f_phi - t.ricci() / 6.0 * t.phi;
            assert!((t.lhs() - kg).abs() <= 1e-6 * t.lhs().abs().max(kg.abs()).max(1.0));
        }
    }
}

/// `V^α` with `δ(...)φ = −∂_α V^α`, built from first derivatives only.
fn divergence_vector(phi: &dyn ScalarField6, f: &Embedding, y: &AmbientPoint) -> [f64; 6] {
    let fj = f.jet(y).unwrap();
    let pj = phi.jet(y).unwrap();
    let fv = gradient_f(&fj);
    let fval = fj.value();
    let f2 = inner(&fv, &fv);
    let d2 = cone_c(y);
    let delta = fval * fval - f2 * d2;
    let f_phi = pj.directional(&fv);
    let d_phi = dilation_d(&pj, y);
    std::array::from_fn(|a| {
        let yc = y.coords()[a];
        (-d2 * fv[a] * f_phi + fval * fv[a] * d_phi + fval * yc * f_phi - f2 * yc * d_phi) / delta
    })
}

#[test]
fn off_cone_cross_term_is_a_divergence() {
    const H: f64 = 1e-4;
    let fields: Vec<Box<dyn ScalarField6>> = default_fields();
    let mut s = ChartSampler::new(31);
    for f in families() {
        for x in sample_chart_points(&f, 15, 30, |_| true).unwrap() {
            let mut y = *lift(&x, &f).unwrap().coords();
            for c in y.iter_mut() {
                *c *= 1.0 + s.uniform(-0.1, 0.1);
            }
            let y = AmbientPoint::new(y).unwrap();
            for phi in &fields {
                let v = |a: usize, h: f64| {
                    let mut z = *y.coords();
                    z[a] += h;
                    divergence_vector(phi.as_ref(), &f, &AmbientPoint::new(z).unwrap())[a]
                };
                let d = |a: usize, h: f64| (v(a, -2.0 * h) - 8.0 * v(a, -h) + 8.0 * v(a, h) - v(a, 2.0 * h)) / (12.0 * h);
                // one Richardson step on the fourth-order stencil
                let div: f64 = (0..6).map(|a| (16.0 * d(a, H / 2.0) - d(a, H)) / 15.0).sum();
                let cross = eq_crossterm_offcone(phi.as_ref(), &f, &y).unwrap();
                let scale = cross.abs().max(div.abs()).max(1.0);
                assert!((cross + div).abs() <= 1e-7 * scale, "{f} {}: {cross} vs {}", phi.name(), -div);
            }
        }
    }
}

#[test]
fn on_cone_cross_term_matches_restricted_form() {
    for f in families() {
        for phi in default_fields() {
            for x in sample_chart_points(&f, 30, 15, |_| true).unwrap() {
                let t = main_formula_terms(phi.as_ref(), &f, &x).unwrap();
                let y = lift(&x, &f).unwrap();
                let off = eq_crossterm_offcone(phi.as_ref(), &f, &y).unwrap();
                let on = t.restricted_cross_term();
                assert!((off - on).abs() <= 1e-10 * off.abs().max(on.abs()).max(1.0), "{f} {}", phi.name());
            }
        }
    }
}

fn stddev(v: &[f64]) -> f64 {
    let m = v.iter().sum::<f64>() / v.len() as f64;
    (v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / v.len() as f64).sqrt()
}

#[test]
fn ricci_constancy() {
    for f in [Embedding::Minkowski, Embedding::desitter(2.0).unwrap(), Embedding::antidesitter(1.0).unwrap()] {
        let r: Vec<f64> = sample_chart_points(&f, 50, 3, |_| true)
            .unwrap()
            .iter()
            .map(|x| ricci_from_embedding(&f, x).unwrap())
            .collect();
        assert!(stddev(&r) < 1e-9, "{f}");
    }
    // q = −1 is de Sitter in conformal time
    for q in [2.0, 3.0, 0.5] {
        let f = Embedding::powerlaw(1.0, q).unwrap();
        let r: Vec<f64> = sample_chart_points(&f, 50, 3, |_| true)
            .unwrap()
            .iter()
            .map(|x| ricci_from_embedding(&f, x).unwrap())
            .collect();
        assert!(stddev(&r) > 0.0, "{f}");
    }
}

#[test]
fn ricci_agrees_with_oracle() {
    for f in families() {
        for x in sample_chart_points(&f, 20, 5, |_| true).unwrap() {
            let a = ricci_from_embedding(&f, &x).unwrap();
            let b = ricci_oracle(&f, &x).unwrap();
            assert!((a - b).abs() <= 1e-4 * (1.0 + a.abs()), "{f}: {a} vs {b}");
        }
    }
}

#[test]
fn suite_reports_every_field_and_family() {
    let specs = [FamilySpec::new("desitter"), FamilySpec { q: 3.0, ..FamilySpec::new("powerlaw") }];
    let reports = run_restriction_suite(&specs, &default_fields(), 20, 1, SuiteTolerances::default()).unwrap();
    assert_eq!(reports.len(), 2 * (2 * default_fields().len() + 1));
    assert!(reports.iter().filter(|r| r.gating).all(|r| r.pass), "{reports:#?}");
    assert!(reports.iter().any(|r| !r.gating));
}
