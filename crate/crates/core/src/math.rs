//! Float helpers routed through `libm` so the crate stays `no_std`.

#[inline]
pub fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

#[inline]
pub fn ln(x: f64) -> f64 {
    libm::log(x)
}

/// `x^p`; integer exponents are accepted for negative bases.
#[inline]
pub fn pow(x: f64, p: f64) -> f64 {
    libm::pow(x, p)
}

#[inline]
pub fn is_integer(x: f64) -> bool {
    x.is_finite() && libm::trunc(x) == x
}
