//! Hypergeometric series, singular moduli, and Legendre's addition,
//! bisection and trisection of the first-kind integral.

use super::{complete_k, f_of_angle, incomplete_f, Amplitude, Modulus};
use crate::{Error, Real, Result};

const SERIES_MAX_TERMS: usize = 1_000_000;

/// Partial sum of `f(α)` with the number of terms used and an upper bound on
/// the neglected tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum<T> {
    pub value: T,
    pub terms: usize,
    pub bound: T,
}

/// `f(α) = Σ ((1·3···(2n−1))/(2·4···2n))² αⁿ = (2/π) K(√α)`.
///
/// Summation stops once the tail bound is at most `tol`, or after 10⁶ terms,
/// in which case the returned bound exceeds `tol`.
pub fn series_f<T: Real>(alpha: T, tol: T) -> Result<SeriesSum<T>> {
    if !(tol > T::zero()) {
        return Err(Error::domain("tol", tol.as_f64(), "(0, inf)"));
    }
    if alpha >= T::one() {
        return Err(Error::Divergence("f(alpha) for alpha >= 1"));
    }
    if !(alpha >= -T::one()) {
        return Err(Error::domain("alpha", alpha.as_f64(), "[-1, 1)"));
    }
    let ratio_bound = alpha.abs();
    let mut term = T::one();
    let mut value = T::one();
    let mut bound = T::infinity();
    let mut terms = 1;
    for n in 1..=SERIES_MAX_TERMS {
        let nn = T::from_usize_lossy(n);
        let c = (T::lit(2.0) * nn - T::one()) / (T::lit(2.0) * nn);
        term = term * c * c * alpha;
        value = value + term;
        terms = n + 1;
        // coefficients decrease, so |t_{j+1}| <= |t_j|·|α|
        bound = if alpha >= T::zero() {
            term * alpha / (T::one() - alpha)
        } else {
            term.abs() * ratio_bound
        };
        if bound <= tol {
            break;
        }
    }
    Ok(SeriesSum { value, terms, bound })
}

/// `K′(k)/K(k)`, strictly decreasing from ∞ to 0 on `(0, 1)`.
pub fn ratio_kprime_over_k<T: Real>(m: &Modulus<T>) -> Result<T> {
    if m.k() == T::zero() || m.kp() == T::zero() {
        return Err(Error::Divergence("K'/K at k in {0, 1}"));
    }
    Ok(complete_k(&m.complement())? / complete_k(m)?)
}

/// The singular modulus for `n`: the unique `k ∈ (0, 1)` with
/// `K′/K = √n`, found by bisection on the modular angle `α = arcsin k`.
pub fn singular_modulus<T: Real>(n: T) -> Result<Modulus<T>> {
    if !(n > T::zero() && n.is_finite()) {
        return Err(Error::domain("N", n.as_f64(), "(0, inf)"));
    }
    if n < T::one() {
        // K′/K at k′ is the reciprocal of K′/K at k
        return Ok(singular_modulus(n.recip())?.complement());
    }
    let target = n.sqrt();
    let gap = |alpha: T| -> T {
        let m = Modulus::from_angle(alpha).expect("angle inside (0, pi/2)");
        complete_k(&m.complement()).expect("k > 0") / complete_k(&m).expect("k < 1") - target
    };
    let (mut lo, mut hi) = (T::zero(), T::FRAC_PI_4() * T::lit(1.0 + 1e-6));
    for _ in 0..4096 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let alpha = if lo > T::zero() && (hi >= T::FRAC_PI_2() || gap(lo).abs() <= gap(hi).abs()) {
        lo
    } else {
        hi
    };
    Modulus::from_angle(alpha)
}

/// Solves `F(Φ) + F(Ψ) = F(μ)` for `μ` by bisection on the implicit equation
/// `cos μ = cos Φ cos Ψ − sin Φ sin Ψ √(1 − k² sin² μ)`.
pub fn amplitude_add<T: Real>(
    phi: Amplitude<T>,
    psi: Amplitude<T>,
    m: &Modulus<T>,
) -> Result<Amplitude<T>> {
    let target = incomplete_f(phi, m)? + incomplete_f(psi, m)?;
    let k = complete_k(m)?;
    if target > k * (T::one() + T::lit(8.0) * T::epsilon()) {
        return Err(Error::Range(format!(
            "F(phi) + F(psi) = {} exceeds K = {}",
            target.as_f64(),
            k.as_f64()
        )));
    }
    if phi.phi() == T::zero() {
        return Ok(psi);
    }
    if psi.phi() == T::zero() {
        return Ok(phi);
    }
    let (sp, cp) = phi.phi().sin_cos();
    let (ss, cs) = psi.phi().sin_cos();
    // decreasing in μ on [0, π/2]
    let residual = |mu: T| mu.cos() - cp * cs + sp * ss * m.delta(mu);
    let (mut lo, mut hi) = (T::zero(), T::FRAC_PI_2());
    if residual(hi) >= T::zero() {
        return Ok(Amplitude::right_angle());
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if residual(mid) > T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mu = Amplitude::new((lo + hi) / T::lit(2.0))?;
    let err = (incomplete_f(mu, m)? - target).abs();
    if err > T::check_tol() * target.max(T::one()) {
        return Err(Error::Internal(format!(
            "addition residual {} too large",
            err.as_f64()
        )));
    }
    Ok(mu)
}

/// `k²x⁴ − 2k²x³ + 2x − 1`, whose root in `(0, 1)` is `sin Φ` for the
/// trisecting amplitude `F(Φ) = K/3`.
pub fn trisection_quartic<T: Real>(x: T, m: &Modulus<T>) -> T {
    let k2 = m.k_squared();
    ((k2 * x - T::lit(2.0) * k2) * x * x + T::lit(2.0)) * x - T::one()
}

/// The amplitude `Φ` with `F(Φ, k) = K(k)/3`.
///
/// The quartic is strictly increasing on `[0, 1]` (its derivative is at least
/// `2k′²`), so the root is unique. It is found in the variable `y = 1 − x`,
/// where the polynomial reads `k′²(1 − 2y) − 2k²y³ + k²y⁴` and keeps full
/// precision as `x → 1`.
pub fn trisection_amplitude<T: Real>(m: &Modulus<T>) -> Result<Amplitude<T>> {
    if !(m.k() > T::zero() && m.kp() > T::zero()) {
        return Err(Error::domain("k", m.k().as_f64(), "(0, 1)"));
    }
    let k2 = m.k_squared();
    let kp2 = m.kp() * m.kp();
    let two = T::lit(2.0);
    let q = |y: T| kp2 * (T::one() - two * y) + k2 * y * y * y * (y - two);
    let dq = |y: T| -two * kp2 + k2 * y * y * (T::lit(4.0) * y - T::lit(6.0));
    // q(0) = k′² > 0 and q(1) = −1, decreasing in between
    let (mut lo, mut hi) = (T::zero(), T::one());
    let mut y = T::lit(0.5);
    for _ in 0..200 {
        let v = q(y);
        if v > T::zero() {
            lo = y;
        } else {
            hi = y;
        }
        let newton = y - v / dq(y);
        let next = if newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / two
        };
        if (next - y).abs() <= T::epsilon() * y.max(T::min_positive_value()) {
            y = next;
            break;
        }
        y = next;
    }
    let x = T::one() - y;
    let phi = Amplitude::new(x.atan2((y * (two - y)).sqrt()))?;
    let third = complete_k(m)? / T::lit(3.0);
    let err = (incomplete_f(phi, m)? - third).abs();
    if err > T::check_tol() * third.max(T::one()) {
        return Err(Error::Internal(format!(
            "trisection root has F-residual {}",
            err.as_f64()
        )));
    }
    Ok(phi)
}

/// The amplitude `Φ` with `F(Φ, k) = ½F(θ, k)`:
/// `sin Φ = sin(θ/2)/√(½ + ½Δ(θ))`, `Δ(θ) = √(1 − k² sin² θ)`.
pub fn bisection_amplitude<T: Real>(theta: Amplitude<T>, m: &Modulus<T>) -> Result<Amplitude<T>> {
    if m.kp() == T::zero() {
        return Err(Error::domain("k", m.k().as_f64(), "[0, 1)"));
    }
    let t = theta.phi();
    if t == T::zero() {
        return Ok(theta);
    }
    let delta = m.delta(t);
    let sin_phi = (t / T::lit(2.0)).sin() / ((T::one() + delta) / T::lit(2.0)).sqrt();
    // cos²Φ = (Δ + cos θ)/(1 + Δ), free of the 1 − sin² cancellation
    let cos_phi = ((delta + t.cos()) / (T::one() + delta)).max(T::zero()).sqrt();
    let phi = Amplitude::new(sin_phi.atan2(cos_phi).min(T::FRAC_PI_2()))?;
    let half = f_of_angle(t, m) / T::lit(2.0);
    let err = (incomplete_f(phi, m)? - half).abs();
    if err > T::check_tol() * half.max(T::one()) {
        return Err(Error::Internal(format!(
            "bisection residual {} too large",
            err.as_f64()
        )));
    }
    Ok(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn sqrt3() -> f64 {
        3f64.sqrt()
    }

    #[test]
    fn series_trivial_and_bound() {
        let s = series_f(0.0f64, 1e-12).unwrap();
        assert_eq!(s.value, 1.0);
        let s = series_f(0.5f64, 1e-12).unwrap();
        assert!(s.bound <= 1e-12);
        let k = complete_k(&Modulus::from_k_squared(0.5).unwrap()).unwrap();
        assert!((s.value - 2.0 / PI * k).abs() < 1e-11);
        assert!(matches!(series_f(1.0f64, 1e-12), Err(Error::Divergence(_))));
        assert!(series_f(-1.5f64, 1e-12).is_err());
        assert!(series_f(0.5f64, 0.0).is_err());
    }

    #[test]
    fn series_negative_alpha() {
        let s = series_f(-0.5f64, 1e-13).unwrap();
        // f(−α) = (2/π)K(i√α) = (2/π)K(√(α/(1+α)))/√(1+α)
        let m = Modulus::from_k_squared(0.5 / 1.5).unwrap();
        let expected = 2.0 / PI * complete_k(&m).unwrap() / 1.5f64.sqrt();
        assert!((s.value - expected).abs() < 1e-12);
    }

    #[test]
    fn series_reports_capped_bound() {
        let s = series_f(-1.0f64, 1e-14).unwrap();
        assert_eq!(s.terms, SERIES_MAX_TERMS + 1);
        assert!(s.bound > 1e-14);
    }

    #[test]
    fn legendre_series_fixed_point() {
        let alpha = (2.0 - sqrt3()) / 4.0;
        let f_a = series_f(alpha, 1e-12).unwrap();
        let f_1ma = series_f((2.0 + sqrt3()) / 4.0, 1e-12).unwrap();
        assert!(f_1ma.terms > 300);
        assert!((f_1ma.value - sqrt3() * f_a.value).abs() / f_a.value < 1e-8);
        let k = complete_k(&Modulus::from_angle(PI / 12.0).unwrap()).unwrap();
        assert!((f_a.value - 2.0 / PI * k).abs() < 1e-12);
    }

    #[test]
    fn ratio_examples() {
        let r = |k: f64| ratio_kprime_over_k(&Modulus::new(k).unwrap()).unwrap();
        assert!((r(FRAC_1_SQRT_2) - 1.0).abs() < 1e-15);
        let r15 = ratio_kprime_over_k(&Modulus::from_angle(PI / 12.0).unwrap()).unwrap();
        assert!((r15 - sqrt3()).abs() / sqrt3() < 1e-12);
        let r75 = ratio_kprime_over_k(&Modulus::from_angle(5.0 * PI / 12.0).unwrap()).unwrap();
        assert!((r75 - 1.0 / sqrt3()).abs() < 1e-12);
        assert!(ratio_kprime_over_k(&Modulus::new(0.0f64).unwrap()).is_err());
        assert!(ratio_kprime_over_k(&Modulus::new(1.0f64).unwrap()).is_err());
    }

    #[test]
    fn singular_moduli() {
        let m1 = singular_modulus(1.0f64).unwrap();
        assert!((m1.k() - FRAC_1_SQRT_2).abs() < 1e-14);
        let m3 = singular_modulus(3.0f64).unwrap();
        assert!((m3.k_squared() - (2.0 - sqrt3()) / 4.0).abs() < 1e-10);
        let m2 = singular_modulus(2.0f64).unwrap();
        let res = (ratio_kprime_over_k(&m2).unwrap() - 2f64.sqrt()).abs();
        assert!(res <= 1e-12);
        // classical closed form for N = 2
        assert!((m2.k() - (2f64.sqrt() - 1.0)).abs() < 1e-12);
        let closed = ratio_kprime_over_k(&Modulus::new(2f64.sqrt() - 1.0).unwrap()).unwrap();
        assert!((closed - 2f64.sqrt()).abs() < 1e-12);
        assert!(singular_modulus(0.0f64).is_err());
        assert!(singular_modulus(-3.0f64).is_err());
    }

    #[test]
    fn singular_modulus_extremes() {
        for n in [1e-3f64, 0.25, 40.0, 400.0] {
            let m = singular_modulus(n).unwrap();
            let r = ratio_kprime_over_k(&m).unwrap();
            assert!((r - n.sqrt()).abs() / n.sqrt() < 1e-12, "N = {n}: {r}");
        }
    }

    #[test]
    fn addition_edges() {
        let m = Modulus::new(0.8f64).unwrap();
        let phi = Amplitude::new(0.6).unwrap();
        let zero = Amplitude::new(0.0).unwrap();
        assert_eq!(amplitude_add(phi, zero, &m).unwrap(), phi);
        assert_eq!(amplitude_add(zero, phi, &m).unwrap(), phi);
        let big = Amplitude::new(1.4).unwrap();
        assert!(matches!(amplitude_add(big, big, &m), Err(Error::Range(_))));
    }

    #[test]
    fn trisection_closed_forms() {
        // k = cos 15°: tan Φ = √(2/√3)
        let m = Modulus::from_angle(5.0 * PI / 12.0).unwrap();
        let phi = trisection_amplitude(&m).unwrap().phi();
        assert!((phi.tan() - (2.0 / sqrt3()).sqrt()).abs() < 1e-12);
        // k = sin 15°: cos Φ = (2^{2/3} − 1)√((2 + √3)/√3)
        let m = Modulus::from_angle(PI / 12.0).unwrap();
        let phi = trisection_amplitude(&m).unwrap().phi();
        let expected = (2f64.powf(2.0 / 3.0) - 1.0) * ((2.0 + sqrt3()) / sqrt3()).sqrt();
        assert!((phi.cos() - expected).abs() < 1e-12);
        assert!(trisection_amplitude(&Modulus::new(0.0f64).unwrap()).is_err());
    }

    #[test]
    fn trisection_near_one() {
        let m = Modulus::from_k_squared(1.0 - 1e-12f64).unwrap();
        let phi = trisection_amplitude(&m).unwrap();
        let third = complete_k(&m).unwrap() / 3.0;
        assert!((incomplete_f(phi, &m).unwrap() - third).abs() < 1e-10);
    }

    #[test]
    fn bisection_sinphi_instance() {
        let m = Modulus::from_k_squared((2.0 + sqrt3()) / 4.0).unwrap();
        let theta = Amplitude::new(2.0 * 3f64.powf(-0.25).atan()).unwrap();
        let phi = bisection_amplitude(theta, &m).unwrap().phi();
        assert!((phi.sin() - (sqrt3() - 1.0)).abs() < 1e-14);
        assert!((phi - (2f64.sqrt() / 3f64.powf(0.25)).atan()).abs() < 1e-14);
        let zero = Amplitude::new(0.0).unwrap();
        assert_eq!(bisection_amplitude(zero, &m).unwrap(), zero);
    }

    proptest! {
        #[test]
        fn ratio_strictly_decreasing(a in 0.01f64..0.98, d in 1e-4f64..0.01) {
            let lo = ratio_kprime_over_k(&Modulus::new(a).unwrap()).unwrap();
            let hi = ratio_kprime_over_k(&Modulus::new(a + d).unwrap()).unwrap();
            prop_assert!(lo > hi);
        }

        #[test]
        fn series_matches_agm(k in 0.0f64..0.95) {
            let s = series_f(k * k, 1e-12).unwrap();
            let kk = complete_k(&Modulus::new(k).unwrap()).unwrap();
            prop_assert!((FRAC_PI_2 * s.value - kk).abs() < 1e-8);
        }

        #[test]
        fn addition_law(phi in 0.0f64..FRAC_PI_2, psi in 0.0f64..FRAC_PI_2, k in 0.0f64..0.99) {
            let m = Modulus::new(k).unwrap();
            let (p, s) = (Amplitude::new(phi).unwrap(), Amplitude::new(psi).unwrap());
            let sum = incomplete_f(p, &m).unwrap() + incomplete_f(s, &m).unwrap();
            prop_assume!(sum <= complete_k(&m).unwrap());
            let mu = amplitude_add(p, s, &m).unwrap();
            prop_assert!((incomplete_f(mu, &m).unwrap() - sum).abs() < 1e-10);
        }

        #[test]
        fn bisection_residual(theta in 0.0f64..FRAC_PI_2, k in 0.0f64..0.999) {
            let m = Modulus::new(k).unwrap();
            let t = Amplitude::new(theta).unwrap();
            let phi = bisection_amplitude(t, &m).unwrap();
            let half = incomplete_f(t, &m).unwrap() / 2.0;
            prop_assert!((incomplete_f(phi, &m).unwrap() - half).abs() < 1e-10);
        }

        #[test]
        fn trisection_residuals(k in 0.01f64..0.999) {
            let m = Modulus::new(k).unwrap();
            let phi = trisection_amplitude(&m).unwrap();
            let x = phi.phi().sin();
            prop_assert!(trisection_quartic(x, &m).abs() < 1e-12);
            let third = complete_k(&m).unwrap() / 3.0;
            prop_assert!((incomplete_f(phi, &m).unwrap() - third).abs() < 1e-10);
        }
    }
}
