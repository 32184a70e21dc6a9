//! Real Jacobi elliptic functions `sn`, `cn`, `dn` and the inversion of `sn`.

use crate::elliptic::{carlson_rf, complete_k, Modulus};
use crate::{Error, Real, Result};

/// `(sn, cn, dn)` at argument `u` and modulus `k`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiTriple<T> {
    pub u: T,
    pub k: T,
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

/// Precomputed descending-Landen data for one modulus; evaluating many
/// arguments at a fixed `k` reuses the AGM sequence and the quarter period.
#[derive(Clone, Debug)]
pub struct Jacobi<T> {
    modulus: Modulus<T>,
    quarter_period: T,
    a: Vec<T>,
    c: Vec<T>,
}

impl<T: Real> Jacobi<T> {
    pub fn new(modulus: &Modulus<T>) -> Result<Self> {
        if modulus.kp() == T::zero() {
            return Err(Error::domain("k", 1.0, "[0, 1) (k = 1 is unsupported)"));
        }
        let quarter_period = complete_k(modulus)?;
        let two = T::lit(2.0);
        let (mut a, mut b) = (T::one(), modulus.kp());
        let mut av = vec![a];
        let mut cv = vec![modulus.k()];
        while cv.last().unwrap().abs() > T::epsilon() && av.len() < 64 {
            let c = (a - b) / two;
            let next = (a + b) / two;
            b = (a * b).sqrt();
            a = next;
            av.push(a);
            cv.push(c);
        }
        Ok(Self {
            modulus: *modulus,
            quarter_period,
            a: av,
            c: cv,
        })
    }

    pub fn modulus(&self) -> &Modulus<T> {
        &self.modulus
    }

    /// The quarter period `K(k)`.
    pub fn quarter_period(&self) -> T {
        self.quarter_period
    }

    /// Evaluates the triple at `u`.
    ///
    /// `u` is first reduced modulo `4K` into `[-2K, 2K]`, then folded into
    /// `[-K, K]` through `sn(±2K − v) = sn v`, `cn(±2K − v) = −cn v`.
    pub fn eval(&self, u: T) -> JacobiTriple<T> {
        let k = self.quarter_period;
        let period = T::lit(4.0) * k;
        let two_k = T::lit(2.0) * k;
        let mut r = u - period * (u / period).round();
        let mut flip = false;
        if r > k {
            r = two_k - r;
            flip = true;
        } else if r < -k {
            r = -two_k - r;
            flip = true;
        }
        let phi = self.amplitude(r);
        let (sn, mut cn) = phi.sin_cos();
        if flip {
            cn = -cn;
        }
        let kk = self.modulus.k();
        let kp = self.modulus.kp();
        let dn = (kp * kp + kk * kk * cn * cn).sqrt();
        JacobiTriple {
            u,
            k: kk,
            sn,
            cn,
            dn,
        }
    }

    /// Jacobi amplitude by backward phase recovery,
    /// `φₙ₋₁ = ½(φₙ + arcsin(cₙ sin φₙ / aₙ))`.
    fn amplitude(&self, u: T) -> T {
        let n = self.a.len() - 1;
        let mut phi = T::lit(2.0).powi(n as i32) * self.a[n] * u;
        for j in (1..=n).rev() {
            phi = (phi + (self.c[j] * phi.sin() / self.a[j]).asin()) / T::lit(2.0);
        }
        phi
    }

    /// `u ∈ [-K, K]` with `sn u = x`, i.e. `∫₀ˣ dt/√((1 − t²)(1 − k²t²))`.
    pub fn invert_sn(&self, x: T) -> Result<T> {
        invert_sn(x, &self.modulus)
    }
}

/// `(sn u, cn u, dn u)` for `0 ≤ k < 1` and any real `u`.
pub fn jacobi_sncndn<T: Real>(u: T, m: &Modulus<T>) -> Result<JacobiTriple<T>> {
    Ok(Jacobi::new(m)?.eval(u))
}

/// `u = ∫₀ˣ dt/√((1 − t²)(1 − k²t²)) = x·R_F(1 − x², 1 − k²x², 1)`.
pub fn invert_sn<T: Real>(x: T, m: &Modulus<T>) -> Result<T> {
    if !(x.abs() <= T::one()) {
        return Err(Error::domain("x", x.as_f64(), "[-1, 1]"));
    }
    if m.kp() == T::zero() {
        return Err(Error::domain("k", 1.0, "[0, 1)"));
    }
    let one_minus = (T::one() - x) * (T::one() + x);
    let k2 = m.k_squared();
    let second = m.kp() * m.kp() + k2 * one_minus;
    Ok(x * carlson_rf(one_minus, second, T::one()))
}
