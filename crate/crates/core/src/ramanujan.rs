//! Closed forms at the modulus `sin 15°`: Ramanujan's ellipse perimeter,
//! `K(sin 15°)` through Γ, Legendre's `K`–`E` relation, and the pendulum
//! period.

use crate::elliptic::{complete_e, complete_k, Modulus};
use crate::gamma::gamma;
use crate::{Error, Real, Result};

/// Ellipse given by its semimajor axis and eccentricity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EllipseSpec<T> {
    semimajor: T,
    eccentricity: T,
}

impl<T: Real> EllipseSpec<T> {
    pub fn new(semimajor: T, eccentricity: T) -> Result<Self> {
        if !(semimajor > T::zero() && semimajor.is_finite()) {
            return Err(Error::domain("semimajor", semimajor.as_f64(), "(0, inf)"));
        }
        if !(eccentricity >= T::zero() && eccentricity < T::one()) {
            return Err(Error::domain("eccentricity", eccentricity.as_f64(), "[0, 1)"));
        }
        Ok(Self {
            semimajor,
            eccentricity,
        })
    }

    pub fn semimajor(&self) -> T {
        self.semimajor
    }

    pub fn eccentricity(&self) -> T {
        self.eccentricity
    }
}

/// Simple pendulum; `half_amplitude` is the largest angle from the vertical.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PendulumSpec<T> {
    pub length: T,
    pub half_amplitude: T,
    pub gravity: T,
}

impl<T: Real> PendulumSpec<T> {
    pub fn new(length: T, half_amplitude: T, gravity: T) -> Result<Self> {
        if !(length > T::zero() && length.is_finite()) {
            return Err(Error::domain("length", length.as_f64(), "(0, inf)"));
        }
        if !(gravity > T::zero() && gravity.is_finite()) {
            return Err(Error::domain("gravity", gravity.as_f64(), "(0, inf)"));
        }
        if half_amplitude >= T::PI() {
            return Err(Error::Divergence("pendulum period at the separatrix"));
        }
        if !(half_amplitude > T::zero()) {
            return Err(Error::domain("half_amplitude", half_amplitude.as_f64(), "(0, pi)"));
        }
        Ok(Self {
            length,
            half_amplitude,
            gravity,
        })
    }
}

fn sin15<T: Real>() -> Result<Modulus<T>> {
    Modulus::from_angle(T::PI() / T::lit(12.0))
}

/// `p = 4aE(e)`.
pub fn perimeter_quadrature<T: Real>(e: &EllipseSpec<T>) -> Result<T> {
    let m = Modulus::new(e.eccentricity())?;
    Ok(T::lit(4.0) * e.semimajor() * complete_e(&m)?)
}

/// Ramanujan's perimeter of the ellipse with eccentricity `sin 15°`:
/// `a √(π/√3) {(1 + 1/√3) Γ(1/3)/Γ(5/6) + 2Γ(5/6)/Γ(1/3)}`.
pub fn ramanujan_perimeter_gamma<T: Real>(a: T) -> Result<T> {
    if !(a > T::zero() && a.is_finite()) {
        return Err(Error::domain("a", a.as_f64(), "(0, inf)"));
    }
    let s3 = T::lit(3.0).sqrt();
    let ratio = gamma(T::one() / T::lit(3.0))? / gamma(T::lit(5.0) / T::lit(6.0))?;
    let braces = (T::one() + s3.recip()) * ratio + T::lit(2.0) / ratio;
    Ok(a * (T::PI() / s3).sqrt() * braces)
}

/// `K(sin 15°) = (1/(2√3)) √(π/√3) Γ(1/6)/Γ(2/3)`.
pub fn k_sin15_gamma_form<T: Real>() -> Result<T> {
    let s3 = T::lit(3.0).sqrt();
    let ratio = gamma(T::one() / T::lit(6.0))? / gamma(T::lit(2.0) / T::lit(3.0))?;
    Ok((T::PI() / s3).sqrt() / (T::lit(2.0) * s3) * ratio)
}

/// The reflected form `K(sin 15°) = ½ √(π/√3) Γ(1/3)/Γ(5/6)`.
pub fn k_sin15_reduced_gamma_form<T: Real>() -> Result<T> {
    let s3 = T::lit(3.0).sqrt();
    let ratio = gamma(T::one() / T::lit(3.0))? / gamma(T::lit(5.0) / T::lit(6.0))?;
    Ok((T::PI() / s3).sqrt() / T::lit(2.0) * ratio)
}

/// `R = ⅓ √(π/3) 2^{1/3} Γ(1/6)/Γ(2/3)`, Legendre's integral in Γ form.
pub fn legendre_r_gamma_form<T: Real>() -> Result<T> {
    let ratio = gamma(T::one() / T::lit(6.0))? / gamma(T::lit(2.0) / T::lit(3.0))?;
    Ok((T::PI() / T::lit(3.0)).sqrt() * T::lit(2.0).cbrt() / T::lit(3.0) * ratio)
}

/// `K·(E − ((√3 + 1)/(2√3))·K) − π/(4√3)` at `k = sin 15°`.
pub fn legendre_ke_residual<T: Real>() -> Result<T> {
    let m = sin15::<T>()?;
    let k = complete_k(&m)?;
    let e = complete_e(&m)?;
    let s3 = T::lit(3.0).sqrt();
    Ok(k * (e - (s3 + T::one()) / (T::lit(2.0) * s3) * k) - T::PI() / (T::lit(4.0) * s3))
}

/// `E(sin 15°)` recovered from `K` alone through the `K`–`E` relation:
/// `E = π/(4√3 K) + ((√3 + 1)/(2√3)) K`.
pub fn e_sin15_from_k<T: Real>(k: T) -> T {
    let s3 = T::lit(3.0).sqrt();
    T::PI() / (T::lit(4.0) * s3 * k) + (s3 + T::one()) / (T::lit(2.0) * s3) * k
}

/// `T = 4 √(L/g) K(sin(θ₀/2))`.
pub fn pendulum_period<T: Real>(p: &PendulumSpec<T>) -> Result<T> {
    let m = Modulus::from_angle(p.half_amplitude / T::lit(2.0))?;
    Ok(T::lit(4.0) * (p.length / p.gravity).sqrt() * complete_k(&m)?)
}
