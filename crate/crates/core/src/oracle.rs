//! Finite-difference curvature oracle.
//!
//! Textbook pipeline on an arbitrary 4-metric: Christoffel symbols from
//! differenced metric components, Riemann from differenced Christoffels,
//! then the Ricci contraction. Shares no differential code with the jets.
//! Conventions: `R^ρ_{σμν} = ∂_μΓ^ρ_{νσ} − ∂_νΓ^ρ_{μσ} + Γ^ρ_{μλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{μσ}`,
//! `R_{σν} = R^ρ_{σρν}`. With signature `(+,−,−,−)` de Sitter space has `R = −12H²`.

use crate::chart::{null_lift, ChartPoint, ETA4};
use crate::embedding::Embedding;
use crate::error::{Error, Result};

/// Stencil step of the oracle.
pub const ORACLE_STEP: f64 = 1e-3;

type Matrix4 = [[f64; 4]; 4];
type Tensor3 = [[[f64; 4]; 4]; 4];

/// Fourth-order central difference of a tensor-valued function along each axis.
fn differentiate<T, F>(at: &[f64; 4], h: f64, eval: F) -> Result<[T; 4]>
where
    T: Copy + Default + Combine,
    F: Fn(&[f64; 4]) -> Result<T>,
{
    let mut out = [T::default(); 4];
    for (axis, slot) in out.iter_mut().enumerate() {
        let shifted = |k: f64| {
            let mut p = *at;
            p[axis] += k * h;
            eval(&p)
        };
        let (m2, m1, p1, p2) = (shifted(-2.0)?, shifted(-1.0)?, shifted(1.0)?, shifted(2.0)?);
        *slot = T::combine(&[(m2, 1.0), (m1, -8.0), (p1, 8.0), (p2, -1.0)], 12.0 * h);
    }
    Ok(out)
}

trait Combine: Sized {
    fn combine(terms: &[(Self, f64)], denom: f64) -> Self;
}

impl Combine for Matrix4 {
    fn combine(terms: &[(Self, f64)], denom: f64) -> Self {
        let mut out = [[0.0; 4]; 4];
        for (m, w) in terms {
            for i in 0..4 {
                for j in 0..4 {
                    out[i][j] += w * m[i][j];
                }
            }
        }
        out.iter_mut().flatten().for_each(|v| *v /= denom);
        out
    }
}

impl Combine for Tensor3 {
    fn combine(terms: &[(Self, f64)], denom: f64) -> Self {
        let mut out = [[[0.0; 4]; 4]; 4];
        for (t, w) in terms {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        out[i][j][k] += w * t[i][j][k];
                    }
                }
            }
        }
        out.iter_mut().flatten().flatten().for_each(|v| *v /= denom);
        out
    }
}

/// Gauss-Jordan inverse with partial pivoting.
fn invert(m: &Matrix4) -> Option<Matrix4> {
    let mut a = *m;
    let mut inv = [[0.0; 4]; 4];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| {
            crate::math::abs(a[i][col]).total_cmp(&crate::math::abs(a[j][col]))
        })?;
        if a[pivot][col] == 0.0 {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        for j in 0..4 {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for i in 0..4 {
            if i != col {
                let factor = a[i][col];
                for j in 0..4 {
                    a[i][j] -= factor * a[col][j];
                    inv[i][j] -= factor * inv[col][j];
                }
            }
        }
    }
    Some(inv)
}

/// `Γ^ρ_{μν}` at `p`, indexed `[ρ][μ][ν]`.
fn christoffel<G>(metric: &G, p: &[f64; 4], h: f64) -> Result<Tensor3>
where
    G: Fn(&[f64; 4]) -> Result<Matrix4>,
{
    let g = metric(p)?;
    let ginv = invert(&g).ok_or(Error::NonFinite { at: p.to_vec() })?;
    let dg = differentiate(p, h, metric)?; // dg[λ][μ][ν] = ∂_λ g_{μν}
    let mut gamma = [[[0.0; 4]; 4]; 4];
    for rho in 0..4 {
        for mu in 0..4 {
            for nu in 0..4 {
                let mut acc = 0.0;
                for sigma in 0..4 {
                    acc += ginv[rho][sigma]
                        * (dg[mu][sigma][nu] + dg[nu][sigma][mu] - dg[sigma][mu][nu]);
                }
                gamma[rho][mu][nu] = 0.5 * acc;
            }
        }
    }
    Ok(gamma)
}

/// Scalar curvature of `metric` at `x` by nested fourth-order finite differences.
pub fn scalar_curvature_fd<G>(metric: &G, x: &[f64; 4], h: f64) -> Result<f64>
where
    G: Fn(&[f64; 4]) -> Result<Matrix4>,
{
    let g = metric(x)?;
    let ginv = invert(&g).ok_or(Error::NonFinite { at: x.to_vec() })?;
    let gamma = christoffel(metric, x, h)?;
    let dgamma = differentiate(x, h, |p| christoffel(metric, p, h))?; // [λ][ρ][μ][ν]

    let mut ricci = [[0.0; 4]; 4];
    for sigma in 0..4 {
        for nu in 0..4 {
            let mut acc = 0.0;
            for rho in 0..4 {
                // R^ρ_{σρν}
                acc += dgamma[rho][rho][nu][sigma] - dgamma[nu][rho][rho][sigma];
                for lam in 0..4 {
                    acc += gamma[rho][rho][lam] * gamma[lam][nu][sigma]
                        - gamma[rho][nu][lam] * gamma[lam][rho][sigma];
                }
            }
            ricci[sigma][nu] = acc;
        }
    }
    let mut scalar = 0.0;
    for sigma in 0..4 {
        for nu in 0..4 {
            scalar += ginv[sigma][nu] * ricci[sigma][nu];
        }
    }
    if scalar.is_finite() {
        Ok(scalar)
    } else {
        Err(Error::NonFinite { at: x.to_vec() })
    }
}

/// Scalar curvature of the induced metric `Ω²η₄`, with `Ω = 1/f(ŷ)` evaluated
/// pointwise on the stencil.
pub fn ricci_oracle(f: &Embedding, x: &ChartPoint) -> Result<f64> {
    let metric = |p: &[f64; 4]| -> Result<Matrix4> {
        let cp = ChartPoint::new(*p)?;
        let s = f.value(&null_lift(&cp))?;
        if s <= 0.0 {
            return Err(Error::NonPositiveEmbedding { at: p.to_vec() });
        }
        let omega2 = 1.0 / (s * s);
        let mut g = [[0.0; 4]; 4];
        for m in 0..4 {
            g[m][m] = omega2 * ETA4[m];
        }
        Ok(g)
    };
    scalar_curvature_fd(&metric, x.coords(), ORACLE_STEP)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invert_round_trip() {
        let m = [
            [2.0, 1.0, 0.0, 0.0],
            [1.0, -3.0, 0.5, 0.0],
            [0.0, 0.5, 1.0, 0.2],
            [0.0, 0.0, 0.2, -4.0],
        ];
        let inv = invert(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let v: f64 = (0..4).map(|k| m[i][k] * inv[k][j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-14);
            }
        }
        assert!(invert(&[[0.0; 4]; 4]).is_none());
    }

    #[test]
    fn two_sphere_block_curvature() {
        // dθ² + sin²θ dφ² ⊕ flat: R = 2 with positive-definite metric
        let metric = |p: &[f64; 4]| -> Result<Matrix4> {
            let s = libm::sin(p[0]);
            Ok([
                [1.0, 0.0, 0.0, 0.0],
                [0.0, s * s, 0.0, 0.0],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ])
        };
        let r = scalar_curvature_fd(&metric, &[1.1, 0.3, 0.0, 0.0], ORACLE_STEP).unwrap();
        assert!((r - 2.0).abs() < 1e-6, "{r}");
    }

    #[test]
    fn desitter_and_minkowski() {
        let x = ChartPoint::new([0.9, 0.2, -0.3, 0.1]).unwrap();
        let r = ricci_oracle(&Embedding::desitter(1.0).unwrap(), &x).unwrap();
        assert!((r + 12.0).abs() < 1e-5, "{r}");
        let r = ricci_oracle(&Embedding::Minkowski, &x).unwrap();
        assert!(r.abs() < 1e-8, "{r}");
    }

    #[test]
    fn stencil_outside_domain_is_an_error() {
        // power law needs x^0 > 0; the stencil around x^0 = 1e-3 crosses zero.
        let x = ChartPoint::new([1e-3, 0.0, 0.0, 0.0]).unwrap();
        assert!(ricci_oracle(&Embedding::powerlaw(1.0, 2.0).unwrap(), &x).is_err());
    }
}
