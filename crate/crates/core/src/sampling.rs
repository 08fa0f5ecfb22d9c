//! Seeded sampling of chart points.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chart::{null_lift, ChartPoint};
use crate::embedding::Embedding;
use crate::error::{Error, Result};

/// Range of the chart time `x^0`.
pub const TIME_RANGE: (f64, f64) = (0.5, 2.0);
/// Range of each spatial chart coordinate.
pub const SPACE_RANGE: (f64, f64) = (-1.0, 1.0);
/// Lower bound on `f(ŷ)` (so the conformal factor stays below 5).
pub const MIN_EMBEDDING_AT_LIFT: f64 = 0.2;

const MAX_ATTEMPTS_PER_POINT: usize = 1000;

pub struct ChartSampler {
    rng: ChaCha8Rng,
}

impl ChartSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// A point of the box `x^0 ∈ [0.5, 2]`, `x^i ∈ [−1, 1]`.
    pub fn next_box(&mut self) -> ChartPoint {
        let x0 = self.uniform(TIME_RANGE.0, TIME_RANGE.1);
        let xs: [f64; 3] = core::array::from_fn(|_| self.uniform(SPACE_RANGE.0, SPACE_RANGE.1));
        ChartPoint::new([x0, xs[0], xs[1], xs[2]]).expect("finite sample")
    }
}

/// `true` when `f` is comfortably positive at the null lift of `x`.
pub fn admissible(f: &Embedding, x: &ChartPoint) -> bool {
    matches!(f.value(&null_lift(x)), Ok(v) if v >= MIN_EMBEDDING_AT_LIFT)
}

/// `n` box points admissible for `f` and accepted by `extra`, in draw order.
pub fn sample_chart_points(
    f: &Embedding,
    n: usize,
    seed: u64,
    mut extra: impl FnMut(&ChartPoint) -> bool,
) -> Result<Vec<ChartPoint>> {
    let mut sampler = ChartSampler::new(seed);
    let mut out = Vec::with_capacity(n);
    let budget = MAX_ATTEMPTS_PER_POINT * n.max(1);
    for _ in 0..budget {
        if out.len() == n {
            break;
        }
        let x = sampler.next_box();
        if admissible(f, &x) && extra(&x) {
            out.push(x);
        }
    }
    if out.len() < n {
        return Err(Error::SamplingExhausted {
            wanted: n,
            found: out.len(),
        });
    }
    Ok(out)
}
