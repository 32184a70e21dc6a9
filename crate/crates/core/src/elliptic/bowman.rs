//! Integrals with the quartic denominator `T = 1 + 2t² cos 2α + t⁴` and the
//! routes to Legendre's integral `R = ∫₀¹ dx/(1 − x³)^{2/3}`.

use super::{complete_k, Modulus};
use crate::gamma::beta;
use crate::quadrature::QuadratureSpec;
use crate::{Error, Real, Result};

/// Upper limit of a Bowman integral. The unbounded case is handled by the
/// tangent substitution, never by floating-point infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum UpperLimit<T> {
    Finite(T),
    Infinite,
}

impl<T: Real> UpperLimit<T> {
    fn angle(self) -> T {
        match self {
            UpperLimit::Finite(x) => x.atan(),
            UpperLimit::Infinite => T::FRAC_PI_2(),
        }
    }
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::domain("alpha", alpha.as_f64(), "(0, pi/2)"))
    }
}

/// `∫₀^x dt/√(1 + 2t² cos 2α + t⁴)`.
pub fn bowman_integral<T: Real>(upper: UpperLimit<T>, alpha: T, q: &QuadratureSpec) -> Result<T> {
    bowman_integral_between(T::zero(), upper, alpha, q)
}

/// `∫_a^x dt/√(1 + 2t² cos 2α + t⁴)` for `0 ≤ a ≤ x ≤ ∞`.
///
/// With `t = tan θ` the integrand becomes `1/√(1 − sin²α sin² 2θ)`, bounded on
/// `[0, π/2]`; it is evaluated as `1/√(cos² 2θ + cos²α sin² 2θ)`.
pub fn bowman_integral_between<T: Real>(
    lower: T,
    upper: UpperLimit<T>,
    alpha: T,
    q: &QuadratureSpec,
) -> Result<T> {
    check_alpha(alpha)?;
    if !(lower >= T::zero() && lower.is_finite()) {
        return Err(Error::domain("lower limit", lower.as_f64(), "[0, inf)"));
    }
    if let UpperLimit::Finite(x) = upper {
        if !(x > T::zero() && x.is_finite()) {
            return Err(Error::domain("x", x.as_f64(), "(0, inf]"));
        }
        if x < lower {
            return Err(Error::domain("x", x.as_f64(), "[lower, inf]"));
        }
    }
    let ca2 = alpha.cos().powi(2);
    let integrand = |theta: T| {
        let (s, c) = (T::lit(2.0) * theta).sin_cos();
        (c * c + ca2 * s * s).sqrt().recip()
    };
    Ok(q.integrate(integrand, lower.atan(), upper.angle()))
}

/// Legendre's integral `R` by direct quadrature after `x = 1 − s³`, which
/// turns it into `∫₀¹ 3 ds/(3 − 3s³ + s⁶)^{2/3}` with a bounded integrand.
pub fn legendre_r<T: Real>(q: &QuadratureSpec) -> T {
    let three = T::lit(3.0);
    let exponent = T::lit(2.0) / three;
    q.integrate(
        |s: T| {
            let s3 = s * s * s;
            three / (three - three * s3 + s3 * s3).powf(exponent)
        },
        T::zero(),
        T::one(),
    )
}

/// `R = ⅓ B(⅓, ⅓)`.
pub fn legendre_r_beta_form<T: Real>() -> Result<T> {
    let third = T::one() / T::lit(3.0);
    Ok(third * beta(third, third)?)
}

fn r_prefactor<T: Real>() -> T {
    T::lit(3.0) * T::lit(4.0).cbrt() * T::lit(3.0).powf(T::lit(0.25))
}

/// `R = 4/(3·4^{1/3}·3^{1/4}) · K(cos 15°)`.
pub fn legendre_r_via_k_cos15<T: Real>() -> Result<T> {
    let m = Modulus::from_angle(T::lit(5.0) * T::PI() / T::lit(12.0))?;
    Ok(T::lit(4.0) / r_prefactor::<T>() * complete_k(&m)?)
}

/// `R = 4√3/(3·4^{1/3}·3^{1/4}) · K(sin 15°)`.
pub fn legendre_r_via_k_sin15<T: Real>() -> Result<T> {
    let m = Modulus::from_angle(T::PI() / T::lit(12.0))?;
    Ok(T::lit(4.0) * T::lit(3.0).sqrt() / r_prefactor::<T>() * complete_k(&m)?)
}

/// `R = 2/(4^{1/3} 3^{1/4}) · ∫_{3^{-1/4}}^∞ dt/√(t⁴ − √3 t² + 1)`, the
/// quartic integral obtained from `R` by `(x/y)^{3/2} = 1 − x³`,
/// `4^{1/3} y = z² − 1` and `z = 3^{1/4} t`.
pub fn legendre_r_via_bowman<T: Real>(q: &QuadratureSpec) -> Result<T> {
    let three = T::lit(3.0);
    let fourth_root3 = three.powf(T::lit(0.25));
    let alpha = T::lit(5.0) * T::PI() / T::lit(12.0);
    let tail = bowman_integral_between(fourth_root3.recip(), UpperLimit::Infinite, alpha, q)?;
    Ok(T::lit(2.0) / (T::lit(4.0).cbrt() * fourth_root3) * tail)
}

/// Both sides of
/// `∫₀^{arctan 3^{-1/4}} dθ/√(1 − k² sin² 2θ) = F(arctan(√2/3^{1/4}), k)` with
/// `k² = (2 + √3)/4`: the left by direct quadrature, the right by Carlson's
/// `R_F`.
pub fn id_identity_sides<T: Real>(q: &QuadratureSpec) -> Result<(T, T)> {
    let three = T::lit(3.0);
    let k2 = (T::lit(2.0) + three.sqrt()) / T::lit(4.0);
    let fourth_root3 = three.powf(T::lit(0.25));
    let lhs = q.integrate(
        |theta: T| (T::one() - k2 * (T::lit(2.0) * theta).sin().powi(2)).sqrt().recip(),
        T::zero(),
        fourth_root3.recip().atan(),
    );
    let m = Modulus::from_k_squared(k2)?;
    let phi = super::Amplitude::new((T::lit(2.0).sqrt() / fourth_root3).atan())?;
    let rhs = super::incomplete_f(phi, &m)?;
    Ok((lhs, rhs))
}
