//! Second-order forward-mode jets.
//!
//! A [`Jet2`] carries the value, gradient and (symmetric) Hessian of a scalar
//! function at a point. Arithmetic on jets applies the order-2 chain rule
//! exactly, so every differential operator built on top of them is free of
//! truncation error. [`MapJet`] is the analogous object for vector-valued maps
//! and [`compose_jets`] chains the two.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::math;

/// Value, gradient and Hessian of a scalar map `R^N -> R` at one point.
///
/// The Hessian is kept symmetric: every constructor and operation writes the
/// upper triangle and mirrors it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet2<const N: usize> {
    value: f64,
    grad: [f64; N],
    hess: [[f64; N]; N],
}

impl<const N: usize> Jet2<N> {
    /// Builds a jet from raw parts. The Hessian is symmetrized as `(H + Hᵀ)/2`.
    pub fn new(value: f64, grad: [f64; N], hess: [[f64; N]; N]) -> Self {
        let mut sym = [[0.0; N]; N];
        for a in 0..N {
            for b in a..N {
                let v = if a == b {
                    hess[a][a]
                } else {
                    0.5 * (hess[a][b] + hess[b][a])
                };
                sym[a][b] = v;
                sym[b][a] = v;
            }
        }
        Self {
            value,
            grad,
            hess: sym,
        }
    }

    pub fn constant(value: f64) -> Self {
        Self {
            value,
            grad: [0.0; N],
            hess: [[0.0; N]; N],
        }
    }

    /// The coordinate function `x ↦ x^index` evaluated at `at`.
    pub fn variable(index: usize, at: f64) -> Self {
        let mut grad = [0.0; N];
        grad[index] = 1.0;
        Self {
            value: at,
            grad,
            hess: [[0.0; N]; N],
        }
    }

    /// All `N` coordinate functions at `point`.
    pub fn coordinates(point: &[f64; N]) -> [Self; N] {
        core::array::from_fn(|i| Self::variable(i, point[i]))
    }

    /// Linear form `x ↦ Σ coeffs[i] x^i` at `point`.
    pub fn linear(coeffs: &[f64; N], point: &[f64; N]) -> Self {
        let value = coeffs.iter().zip(point).map(|(c, x)| c * x).sum();
        Self {
            value,
            grad: *coeffs,
            hess: [[0.0; N]; N],
        }
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    pub fn grad(&self) -> &[f64; N] {
        &self.grad
    }

    #[inline]
    pub fn hess(&self) -> &[[f64; N]; N] {
        &self.hess
    }

    pub fn dim(&self) -> usize {
        N
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite()
            && self.grad.iter().all(|g| g.is_finite())
            && self.hess.iter().flatten().all(|h| h.is_finite())
    }

    /// Applies a scalar function `g` given `g(v)`, `g'(v)`, `g''(v)` at `v = self.value()`.
    pub fn map(&self, g0: f64, g1: f64, g2: f64) -> Self {
        let mut grad = [0.0; N];
        let mut hess = [[0.0; N]; N];
        for a in 0..N {
            grad[a] = g1 * self.grad[a];
            for b in a..N {
                let v = g1 * self.hess[a][b] + g2 * self.grad[a] * self.grad[b];
                hess[a][b] = v;
                hess[b][a] = v;
            }
        }
        Self {
            value: g0,
            grad,
            hess,
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.value *= s;
        out.grad.iter_mut().for_each(|g| *g *= s);
        out.hess.iter_mut().flatten().for_each(|h| *h *= s);
        out
    }

    pub fn recip(&self) -> Self {
        let v = self.value;
        let inv = 1.0 / v;
        self.map(inv, -inv * inv, 2.0 * inv * inv * inv)
    }

    /// Real power `v^p`. The caller guarantees `v > 0` unless `p` is an integer.
    pub fn powf(&self, p: f64) -> Self {
        let v = self.value;
        if p == 0.0 {
            return Self::constant(1.0);
        }
        let g0 = math::pow(v, p);
        let g1 = p * math::pow(v, p - 1.0);
        let g2 = p * (p - 1.0) * math::pow(v, p - 2.0);
        self.map(g0, g1, g2)
    }

    pub fn sqrt(&self) -> Self {
        let s = math::sqrt(self.value);
        self.map(s, 0.5 / s, -0.25 / (s * s * s))
    }

    pub fn ln(&self) -> Self {
        let v = self.value;
        self.map(math::ln(v), 1.0 / v, -1.0 / (v * v))
    }

    /// Directional first derivative `u^a ∂_a`.
    pub fn directional(&self, u: &[f64; N]) -> f64 {
        self.grad.iter().zip(u).map(|(g, c)| g * c).sum()
    }

    /// Second directional derivative `u^a v^b ∂_a ∂_b`.
    pub fn hess_form(&self, u: &[f64; N], v: &[f64; N]) -> f64 {
        let mut acc = 0.0;
        for a in 0..N {
            for b in 0..N {
                acc += u[a] * self.hess[a][b] * v[b];
            }
        }
        acc
    }
}

impl<const N: usize> Add for Jet2<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.value += rhs.value;
        for a in 0..N {
            self.grad[a] += rhs.grad[a];
            for b in 0..N {
                self.hess[a][b] += rhs.hess[a][b];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Jet2<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const N: usize> Neg for Jet2<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Jet2<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (u, v) = (&self, &rhs);
        let mut grad = [0.0; N];
        let mut hess = [[0.0; N]; N];
        for a in 0..N {
            grad[a] = u.grad[a] * v.value + u.value * v.grad[a];
            for b in a..N {
                let h = u.hess[a][b] * v.value
                    + u.value * v.hess[a][b]
                    + u.grad[a] * v.grad[b]
                    + u.grad[b] * v.grad[a];
                hess[a][b] = h;
                hess[b][a] = h;
            }
        }
        Self {
            value: u.value * v.value,
            grad,
            hess,
        }
    }
}

impl<const N: usize> Div for Jet2<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<const N: usize> Add<f64> for Jet2<N> {
    type Output = Self;
    fn add(mut self, rhs: f64) -> Self {
        self.value += rhs;
        self
    }
}

impl<const N: usize> Sub<f64> for Jet2<N> {
    type Output = Self;
    fn sub(mut self, rhs: f64) -> Self {
        self.value -= rhs;
        self
    }
}

impl<const N: usize> Mul<f64> for Jet2<N> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> Div<f64> for Jet2<N> {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self.scale(1.0 / rhs)
    }
}

/// Second-order data of a map `R^N -> R^M` at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MapJet<const N: usize, const M: usize> {
    value: [f64; M],
    jacobian: [[f64; N]; M],
    second: [[[f64; N]; N]; M],
}

impl<const N: usize, const M: usize> MapJet<N, M> {
    /// Stacks `M` scalar jets into one map jet.
    pub fn from_components(components: &[Jet2<N>; M]) -> Self {
        Self {
            value: core::array::from_fn(|k| components[k].value),
            jacobian: core::array::from_fn(|k| components[k].grad),
            second: core::array::from_fn(|k| components[k].hess),
        }
    }

    /// Affine map `x ↦ A x + b` evaluated at `x`.
    pub fn affine(matrix: &[[f64; N]; M], offset: &[f64; M], x: &[f64; N]) -> Self {
        let components: [Jet2<N>; M] =
            core::array::from_fn(|k| Jet2::linear(&matrix[k], x) + offset[k]);
        Self::from_components(&components)
    }

    pub fn component(&self, k: usize) -> Jet2<N> {
        Jet2 {
            value: self.value[k],
            grad: self.jacobian[k],
            hess: self.second[k],
        }
    }

    pub fn value(&self) -> &[f64; M] {
        &self.value
    }

    pub fn jacobian(&self) -> &[[f64; N]; M] {
        &self.jacobian
    }

    pub fn second(&self) -> &[[[f64; N]; N]; M] {
        &self.second
    }

    pub fn in_dim(&self) -> usize {
        N
    }

    pub fn out_dim(&self) -> usize {
        M
    }

    pub fn is_finite(&self) -> bool {
        (0..M).all(|k| self.component(k).is_finite())
    }
}

/// Order-2 chain rule: jet of `outer ∘ inner` at the base point of `inner`.
///
/// `outer` must be the jet of the outer function taken at `inner.value()`.
/// Dimensions are checked at compile time.
pub fn compose_jets<const N: usize, const M: usize>(
    outer: &Jet2<M>,
    inner: &MapJet<N, M>,
) -> Jet2<N> {
    let jac = &inner.jacobian;
    let mut grad = [0.0; N];
    for (a, g) in grad.iter_mut().enumerate() {
        *g = (0..M).map(|k| outer.grad[k] * jac[k][a]).sum();
    }
    let mut hess = [[0.0; N]; N];
    for a in 0..N {
        for b in a..N {
            let mut h = 0.0;
            for k in 0..M {
                h += outer.grad[k] * inner.second[k][a][b];
                for l in 0..M {
                    h += outer.hess[k][l] * jac[k][a] * jac[l][b];
                }
            }
            hess[a][b] = h;
            hess[b][a] = h;
        }
    }
    Jet2 {
        value: outer.value,
        grad,
        hess,
    }
}

/// Composes a map jet `outer: R^M -> R^K` (taken at `inner.value()`) with `inner: R^N -> R^M`.
pub fn compose_maps<const N: usize, const M: usize, const K: usize>(
    outer: &MapJet<M, K>,
    inner: &MapJet<N, M>,
) -> MapJet<N, K> {
    let components: [Jet2<N>; K] =
        core::array::from_fn(|k| compose_jets(&outer.component(k), inner));
    MapJet::from_components(&components)
}
