//! Complete and incomplete elliptic integrals of the first and second kind.
//!
//! `K` and `E` come from the arithmetic–geometric mean; `F(φ, k)` from
//! Carlson's symmetric integral `R_F`. The moduli-specific machinery
//! (singular moduli, bisection and trisection of `F`, Bowman's quartic
//! integrals and Legendre's integral `R`) lives in the submodules.

mod bowman;
mod legendre;

pub use bowman::{
    bowman_integral, bowman_integral_between, id_identity_sides, legendre_r,
    legendre_r_beta_form, legendre_r_via_bowman, legendre_r_via_k_cos15, legendre_r_via_k_sin15,
    UpperLimit,
};
pub use legendre::{
    amplitude_add, bisection_amplitude, ratio_kprime_over_k, series_f, singular_modulus,
    trisection_amplitude, trisection_quartic, SeriesSum,
};

use crate::{Error, Real, Result};

/// Elliptic modulus `k ∈ [0, 1]` together with its complement
/// `k′ = √(1 − k²)`.
///
/// Both are stored so that moduli close to 1 keep an accurate complement when
/// built from an angle or from `k²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Modulus<T> {
    k: T,
    kp: T,
}

impl<T: Real> Modulus<T> {
    pub fn new(k: T) -> Result<Self> {
        if !(k >= T::zero() && k <= T::one()) {
            return Err(Error::domain("k", k.as_f64(), "[0, 1]"));
        }
        let kp = ((T::one() - k) * (T::one() + k)).sqrt();
        Ok(Self { k, kp })
    }

    /// Modulus from the parameter `m = k²`.
    pub fn from_k_squared(m: T) -> Result<Self> {
        if !(m >= T::zero() && m <= T::one()) {
            return Err(Error::domain("k^2", m.as_f64(), "[0, 1]"));
        }
        Ok(Self {
            k: m.sqrt(),
            kp: (T::one() - m).sqrt(),
        })
    }

    /// Modulus `k = sin α`, `k′ = cos α` for `α ∈ [0, π/2]`.
    pub fn from_angle(alpha: T) -> Result<Self> {
        if !(alpha >= T::zero() && alpha <= T::FRAC_PI_2()) {
            return Err(Error::domain("modular angle", alpha.as_f64(), "[0, pi/2]"));
        }
        if alpha == T::FRAC_PI_2() {
            return Ok(Self { k: T::one(), kp: T::zero() });
        }
        Ok(Self {
            k: alpha.sin(),
            kp: alpha.cos(),
        })
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// The complementary modulus `k′`.
    pub fn kp(&self) -> T {
        self.kp
    }

    pub fn k_squared(&self) -> T {
        self.k * self.k
    }

    /// The modulus `k′` (so `K(m.complement())` is `K′`).
    pub fn complement(&self) -> Self {
        Self {
            k: self.kp,
            kp: self.k,
        }
    }

    /// `√(1 − k² sin²φ)` written as `√(cos²φ + k′² sin²φ)`.
    pub(crate) fn delta(&self, phi: T) -> T {
        let (s, c) = phi.sin_cos();
        (c * c + self.kp * self.kp * s * s).sqrt()
    }
}

/// Amplitude `φ ∈ [0, π/2]` of an incomplete integral.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Amplitude<T>(T);

impl<T: Real> Amplitude<T> {
    pub fn new(phi: T) -> Result<Self> {
        if !(phi >= T::zero() && phi <= T::FRAC_PI_2()) {
            return Err(Error::domain("phi", phi.as_f64(), "[0, pi/2]"));
        }
        Ok(Self(phi))
    }

    pub fn right_angle() -> Self {
        Self(T::FRAC_PI_2())
    }

    pub fn phi(self) -> T {
        self.0
    }
}

/// Arithmetic–geometric mean of two non-negative numbers.
pub fn agm<T: Real>(a: T, b: T) -> T {
    let (mut a, mut b) = (a, b);
    for _ in 0..64 {
        if (a - b).abs() <= T::epsilon() * a {
            break;
        }
        let next = (a + b) / T::lit(2.0);
        b = (a * b).sqrt();
        a = next;
    }
    a
}

/// Complete integral of the first kind, `K(k) = π / (2·agm(1, k′))`.
pub fn complete_k<T: Real>(m: &Modulus<T>) -> Result<T> {
    if m.kp() == T::zero() {
        return Err(Error::Divergence("K(k) at k = 1"));
    }
    Ok(T::PI() / (T::lit(2.0) * agm(T::one(), m.kp())))
}

/// Complete integral of the second kind, via the AGM with the accumulated
/// `cₙ²` corrections: `E = K·(1 − Σ 2ⁿ⁻¹ cₙ²)`, `c₀ = k`.
pub fn complete_e<T: Real>(m: &Modulus<T>) -> Result<T> {
    if m.kp() == T::zero() {
        return Ok(T::one());
    }
    let two = T::lit(2.0);
    let (mut a, mut b) = (T::one(), m.kp());
    let mut weight = T::lit(0.5);
    let mut sum = weight * m.k() * m.k();
    for _ in 0..64 {
        let c = (a - b) / two;
        let next = (a + b) / two;
        b = (a * b).sqrt();
        a = next;
        weight = weight * two;
        sum = sum + weight * c * c;
        if c.abs() <= T::epsilon() * a {
            break;
        }
    }
    Ok(T::PI() / (two * a) * (T::one() - sum))
}

/// Carlson's symmetric integral of the first kind,
/// `R_F(x, y, z) = ½ ∫₀^∞ dt / √((t + x)(t + y)(t + z))`, by duplication.
///
/// At most one argument may be zero.
pub fn carlson_rf<T: Real>(x: T, y: T, z: T) -> T {
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let three = T::lit(3.0);
    let quarter = T::lit(0.25);
    let a0 = (x + y + z) / three;
    let q = (three * T::epsilon()).powf(-T::lit(1.0 / 6.0))
        * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut a = a0;
    let mut scale = T::one();
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lambda = sx * sy + sy * sz + sz * sx;
        x = (x + lambda) * quarter;
        y = (y + lambda) * quarter;
        z = (z + lambda) * quarter;
        a = (a + lambda) * quarter;
        scale = scale * quarter;
        if scale < T::epsilon() * T::epsilon() {
            break;
        }
    }
    let xd = (a0 - x0) * scale / a;
    let yd = (a0 - y0) * scale / a;
    let zd = -(xd + yd);
    let e2 = xd * yd - zd * zd;
    let e3 = xd * yd * zd;
    let poly = T::one() - e2 / T::lit(10.0) + e3 / T::lit(14.0) + e2 * e2 / T::lit(24.0)
        - T::lit(3.0) * e2 * e3 / T::lit(44.0);
    poly / a.sqrt()
}

/// `F(φ, k) = ∫₀^φ dθ/√(1 − k² sin²θ)` for `φ ∈ [0, π/2]`, `k < 1`.
///
/// At `φ = π/2` this returns [`complete_k`] itself.
pub fn incomplete_f<T: Real>(phi: Amplitude<T>, m: &Modulus<T>) -> Result<T> {
    if m.kp() == T::zero() {
        return Err(Error::Divergence("F(phi, k) at k = 1"));
    }
    let phi = phi.phi();
    if phi == T::FRAC_PI_2() {
        return complete_k(m);
    }
    if phi == T::zero() {
        return Ok(T::zero());
    }
    Ok(f_of_angle(phi, m))
}

/// `F` for any real angle in `[-π/2, π/2]` without validation.
pub(crate) fn f_of_angle<T: Real>(phi: T, m: &Modulus<T>) -> T {
    let (s, c) = phi.sin_cos();
    let d2 = c * c + m.kp() * m.kp() * s * s;
    s * carlson_rf(c * c, d2, T::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn quad_k(k: f64) -> f64 {
        QuadratureSpec::gauss_legendre(30, 16)
            .unwrap()
            .integrate(|t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2)
    }

    fn quad_e(k: f64) -> f64 {
        QuadratureSpec::gauss_legendre(30, 16)
            .unwrap()
            .integrate(|t: f64| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2)
    }

    #[test]
    fn modulus_constructors() {
        let m = Modulus::new(0.6f64).unwrap();
        assert!((m.kp() - 0.8).abs() < 1e-15);
        assert!((m.k() * m.k() + m.kp() * m.kp() - 1.0).abs() < 1e-15);
        assert_eq!(m.complement().k(), m.kp());
        assert!(Modulus::new(1.5f64).is_err());
        assert!(Modulus::new(-0.1f64).is_err());
        assert!(Modulus::from_k_squared(2.0f64).is_err());
        let a = Modulus::from_angle(PI / 12.0).unwrap();
        assert!((a.k() - (PI / 12.0).sin()).abs() < 1e-16);
        assert!(Amplitude::new(2.0f64).is_err());
    }

    #[test]
    fn k_and_e_trivial_values() {
        let zero = Modulus::new(0.0f64).unwrap();
        assert!((complete_k(&zero).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!((complete_e(&zero).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let one = Modulus::new(1.0f64).unwrap();
        assert_eq!(complete_e(&one).unwrap(), 1.0);
        assert!(matches!(complete_k(&one), Err(Error::Divergence(_))));
        let sym = Modulus::new(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let k = complete_k(&sym).unwrap();
        let kp = complete_k(&sym.complement()).unwrap();
        assert!(((kp / k) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn k_and_e_match_quadrature() {
        for k in [0.05, 0.3, 0.5, 0.7, 0.9, 0.95] {
            let m = Modulus::new(k).unwrap();
            let (ka, ea) = (complete_k(&m).unwrap(), complete_e(&m).unwrap());
            assert!(((ka - quad_k(k)) / ka).abs() < 1e-13, "K({k})");
            assert!(((ea - quad_e(k)) / ea).abs() < 1e-13, "E({k})");
        }
    }

    #[test]
    fn incomplete_matches_quadrature() {
        let q = QuadratureSpec::adaptive_simpson(50, 8).unwrap();
        for k in [0.0, 0.2, 0.7, 0.99] {
            let m = Modulus::new(k).unwrap();
            for phi in [0.1, 0.7, 1.2, 1.5] {
                let direct: f64 =
                    q.integrate(|t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi);
                let f = incomplete_f(Amplitude::new(phi).unwrap(), &m).unwrap();
                assert!((f - direct).abs() < 1e-10, "F({phi}, {k}) = {f} vs {direct}");
            }
        }
    }

    #[test]
    fn incomplete_edges() {
        let m = Modulus::new(0.5f64).unwrap();
        assert_eq!(incomplete_f(Amplitude::new(0.0).unwrap(), &m).unwrap(), 0.0);
        let k = complete_k(&m).unwrap();
        assert_eq!(incomplete_f(Amplitude::right_angle(), &m).unwrap(), k);
        // the Carlson path just below π/2 is continuous with K
        let near = incomplete_f(Amplitude::new(FRAC_PI_2 - 1e-9).unwrap(), &m).unwrap();
        assert!((near - k).abs() < 1e-8);
        let zero = Modulus::new(0.0f64).unwrap();
        let phi = 0.83;
        assert!((incomplete_f(Amplitude::new(phi).unwrap(), &zero).unwrap() - phi).abs() < 1e-15);
    }

    #[test]
    fn rf_special_values() {
        // R_F(x, x, x) = 1/√x and R_F(0, 1, 1) = π/2
        assert!((carlson_rf(4.0f64, 4.0, 4.0) - 0.5).abs() < 1e-15);
        assert!((carlson_rf(0.0f64, 1.0, 1.0) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn f32_complete_k() {
        let m = Modulus::new(0.5f32).unwrap();
        let k = complete_k(&m).unwrap();
        assert!((k - 1.685_750_4).abs() < 1e-5);
    }
}
