//! Exact finite-horizon return probabilities of the simple walk on ℤ³.
//!
//! `P(S₂ₙ = 0) = C(2n, n) Σₖ C(n, k)² C(2k, k) / 36ⁿ`, and the first-return
//! probabilities follow from the renewal equation
//! `u₂ₙ = Σⱼ f₂ⱼ u₂₍ₙ₋ⱼ₎`. Their partial sums give the exact expectation of a
//! Monte Carlo estimate truncated at a finite horizon.

use std::f64::consts::PI;

/// `ln(i!)` for `i = 0..=n`.
fn log_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0f64;
    out.push(0.0);
    for i in 1..=n {
        acc += (i as f64).ln();
        out.push(acc);
    }
    out
}

/// `P(S₂ₙ = 0)` for `n = 0..=half_steps`.
pub fn origin_probabilities(half_steps: usize) -> Vec<f64> {
    let lf = log_factorials(2 * half_steps);
    let ln_choose = |a: usize, b: usize| lf[a] - lf[b] - lf[a - b];
    let ln36 = 36f64.ln();
    (0..=half_steps)
        .map(|n| {
            let base = ln_choose(2 * n, n) - n as f64 * ln36;
            (0..=n)
                .map(|k| (base + 2.0 * ln_choose(n, k) + ln_choose(2 * k, k)).exp())
                .sum()
        })
        .collect()
}

/// First-return probabilities `f₂ₙ`, `n = 1..=half_steps` (index 0 unused).
pub fn first_return_probabilities(half_steps: usize) -> Vec<f64> {
    let u = origin_probabilities(half_steps);
    let mut f = vec![0.0; half_steps + 1];
    for n in 1..=half_steps {
        let conv: f64 = (1..n).map(|j| f[j] * u[n - j]).sum();
        f[n] = u[n] - conv;
    }
    f
}

/// Probability that the walk revisits the origin within `max_steps` steps.
pub fn truncated_return_probability(max_steps: u64) -> f64 {
    first_return_probabilities((max_steps / 2) as usize).iter().sum()
}

/// Leading-order estimate of `p − p_N`, the chance of a first return after
/// step `N`: `f₂ₙ ≈ (1 − p)² · 2(3/(4πn))^{3/2}` summed over `2n > N`.
pub fn truncation_tail(max_steps: u64, p: f64) -> f64 {
    let half = (max_steps / 2) as f64 + 0.5;
    (1.0 - p).powi(2) * 2.0 * (3.0 / (4.0 * PI)).powf(1.5) * 2.0 / half.sqrt()
}
