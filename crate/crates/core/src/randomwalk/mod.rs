//! Watson's integrals, the Pólya return probability on ℤ³ and a Monte Carlo
//! cross-check.

pub mod exact;
pub mod montecarlo;
pub mod watson;

pub use exact::{truncated_return_probability, truncation_tail};
pub use montecarlo::{first_return_times, mc_return_probability, mc_return_profile, WalkEstimate};
pub use watson::{watson_w, watson_w_closed_form, watson_w_plus, LatticeIntegrand};

use crate::quadrature::QuadratureSpec;
use crate::Real;

/// Spec used by [`polya_return_probability`]: 24-point Gauss–Legendre on two
/// panels per axis.
pub fn default_w_plus_spec() -> QuadratureSpec {
    QuadratureSpec::gauss_legendre(24, 2).expect("valid default spec")
}

/// Spec for `W`: 12-point Gauss–Legendre on 14 graded cells toward each
/// singular end.
pub fn default_w_spec() -> QuadratureSpec {
    QuadratureSpec::gauss_legendre(12, 14).expect("valid default spec")
}

/// `p = 1 − 1/(3W⁺)`.
pub fn return_probability_from_w_plus<T: Real>(w_plus: T) -> T {
    T::one() - (T::lit(3.0) * w_plus).recip()
}

pub fn polya_return_probability<T: Real>() -> T {
    let w = watson_w_plus(&default_w_plus_spec()).expect("default spec is an open rule");
    return_probability_from_w_plus(w)
}
