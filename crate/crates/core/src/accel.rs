//! Averaging acceleration for slowly convergent trigonometric series.
//!
//! The series handled here have terms f(n)·sin(nθ) (up to sign), with a
//! smooth amplitude f. Their partial sums oscillate around the limit with
//! frequency θ. Each averaging pass replaces S_N by
//!
//! ```text
//! (S_{N-m} − 2 cos(mθ) S_N + S_{N+m}) / (2 − 2 cos(mθ))
//! ```
//!
//! with the stride m chosen so that mθ is as close to π (mod 2π) as possible.
//! For a strictly alternating series (θ = π, m = 1) one pass is two rounds of
//! ordinary Euler averaging. cos(mθ) ≤ 0 always holds for the chosen stride,
//! so every pass is a positive weighted mean of partial sums.
//!
//! Before averaging, partial sums are weighted by (n/N)^d, which removes the
//! 1/n, 1/n², … components of the oscillating tail (a Levin-style remainder
//! model). Partial sums are accumulated in increasing n with compensated
//! addition; terms are never reordered.

use crate::series::SeriesConfig;

/// Smallest sample count used by the doubling schedule.
const MIN_SAMPLE: usize = 32;

/// Outcome of an accelerated summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Accelerated {
    pub value: f64,
    pub est_error: f64,
    pub terms: usize,
    pub converged: bool,
}

/// Stride m ≥ 1 minimising cos(mθ), i.e. putting mθ nearest to π.
pub(crate) fn tuned_stride(theta: f64) -> (usize, f64) {
    let upper = (std::f64::consts::PI / theta).ceil() as usize + 1;
    let mut best = (1, theta.cos());
    for m in 2..=upper.max(1) {
        let c = (m as f64 * theta).cos();
        if c < best.1 - 1e-12 {
            best = (m, c);
        }
    }
    best
}

/// Running partial sums S_0 = 0, S_1, S_2, … with Neumaier compensation.
pub(crate) struct PartialSums<F> {
    term: F,
    sums: Vec<f64>,
    sum: f64,
    comp: f64,
}

impl<F: Fn(usize) -> f64> PartialSums<F> {
    pub fn new(term: F) -> Self {
        Self {
            term,
            sums: vec![0.0],
            sum: 0.0,
            comp: 0.0,
        }
    }

    pub fn extend_to(&mut self, n: usize) {
        while self.sums.len() <= n {
            let k = self.sums.len();
            let t = (self.term)(k);
            let s = self.sum + t;
            if self.sum.abs() >= t.abs() {
                self.comp += (self.sum - s) + t;
            } else {
                self.comp += (t - s) + self.sum;
            }
            self.sum = s;
            self.sums.push(s + self.comp);
        }
    }

    pub fn get(&mut self, n: usize) -> f64 {
        self.extend_to(n);
        self.sums[n]
    }

    fn window(&mut self, lo: usize, hi: usize) -> &[f64] {
        self.extend_to(hi);
        &self.sums[lo..=hi]
    }
}

/// Accelerated limit estimate from the partial sums up to index `n`.
pub(crate) fn estimate_at<F: Fn(usize) -> f64>(
    sums: &mut PartialSums<F>,
    n: usize,
    theta: f64,
    depth: usize,
) -> f64 {
    let (m, c) = tuned_stride(theta);
    let depth = depth.min(n.saturating_sub(1) / (2 * m));
    if depth == 0 {
        return sums.get(n);
    }
    let lo = n - 2 * depth * m;
    let top = n as f64;
    let mut num: Vec<f64> = Vec::with_capacity(n - lo + 1);
    let mut den: Vec<f64> = Vec::with_capacity(n - lo + 1);
    for (i, s) in sums.window(lo, n).iter().enumerate() {
        let w = ((lo + i) as f64 / top).powi(depth as i32);
        num.push(w * s);
        den.push(w);
    }
    let norm = 2.0 - 2.0 * c;
    for _ in 0..depth {
        for v in [&mut num, &mut den] {
            let len = v.len() - 2 * m;
            for i in 0..len {
                v[i] = (v[i] - 2.0 * c * v[i + m] + v[i + 2 * m]) / norm;
            }
            v.truncate(len);
        }
    }
    num[0] / den[0]
}

/// Sums Σ_{n≥1} term(n) with the averaging scheme, growing the number of
/// terms by half each round until two successive estimates agree within
/// `cfg.tail_tol`.
///
/// `theta` is the oscillation frequency of the terms, folded into (0, π].
pub(crate) fn accelerate<F: Fn(usize) -> f64>(
    term: F,
    theta: f64,
    cfg: &SeriesConfig,
) -> Accelerated {
    let mut sums = PartialSums::new(term);
    let (m, _) = tuned_stride(theta);
    let max = cfg.max_terms;
    let mut n = (4 * cfg.accel_depth * m)
        .max(MIN_SAMPLE)
        .min(max / 2)
        .max(1);
    let mut prev = estimate_at(&mut sums, n, theta, cfg.accel_depth);
    let mut delta = f64::INFINITY;
    while n < max {
        n = (n + n / 2).max(n + 1).min(max);
        let cur = estimate_at(&mut sums, n, theta, cfg.accel_depth);
        delta = (cur - prev).abs() + 4.0 * f64::EPSILON * cur.abs();
        prev = cur;
        if delta <= cfg.tail_tol {
            return Accelerated {
                value: cur,
                est_error: delta,
                terms: n,
                converged: true,
            };
        }
    }
    Accelerated {
        value: prev,
        est_error: delta,
        terms: n,
        converged: false,
    }
}
