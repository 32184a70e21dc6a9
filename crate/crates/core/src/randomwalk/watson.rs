//! Watson's triple integral and its plus-sign variant over `[0, π]³`.

use rayon::prelude::*;

use crate::elliptic::{complete_k, Modulus};
use crate::quadrature::{graded_breaks, QuadratureSpec};
use crate::{Error, Real, Result};

/// Ratio between consecutive graded cells toward a singular corner.
const GRADING_RATIO: f64 = 0.15;

/// Integrand `prefactor / (3 + σ₁ cos x cos y + σ₂ cos y cos z + σ₃ cos z cos x)`.
///
/// `W` and `W⁺` are the same integrand with all three signs flipped and an
/// extra `√2` in the prefactor.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LatticeIntegrand<T> {
    pub signs: [T; 3],
    pub prefactor: T,
}

impl<T: Real> LatticeIntegrand<T> {
    /// `(1/π³) / (3 − cos x cos y − cos y cos z − cos z cos x)`.
    pub fn watson() -> Self {
        Self {
            signs: [-T::one(); 3],
            prefactor: T::PI().powi(3).recip(),
        }
    }

    /// `(√2/π³) / (3 + cos x cos y + cos y cos z + cos z cos x)`.
    pub fn watson_plus() -> Self {
        Self {
            signs: [T::one(); 3],
            prefactor: T::lit(2.0).sqrt() / T::PI().powi(3),
        }
    }

    fn all_minus(&self) -> bool {
        self.signs.iter().all(|&s| s < T::zero())
    }

    pub fn eval(&self, x: T, y: T, z: T) -> T {
        self.eval_node(&Node::new(x), &Node::new(y), &Node::new(z))
    }

    /// With all signs negative the denominator vanishes at `(0,0,0)` and
    /// `(π,π,π)`. Writing `cos = 1 − h` (or `cos = g − 1` near `π`) gives the
    /// cancellation-free `2(h₁ + h₂ + h₃) − (h₁h₂ + h₂h₃ + h₃h₁)`.
    fn eval_node(&self, a: &Node<T>, b: &Node<T>, c: &Node<T>) -> T {
        let denom = if self.all_minus() {
            let (p, q, r) = if a.cos + b.cos + c.cos >= T::zero() {
                (a.one_minus, b.one_minus, c.one_minus)
            } else {
                (a.one_plus, b.one_plus, c.one_plus)
            };
            T::lit(2.0) * (p + q + r) - (p * q + q * r + r * p)
        } else {
            let [s1, s2, s3] = self.signs;
            T::lit(3.0) + s1 * a.cos * b.cos + s2 * b.cos * c.cos + s3 * c.cos * a.cos
        };
        self.prefactor / denom
    }
}

#[derive(Clone, Copy, Debug)]
struct Node<T> {
    cos: T,
    one_minus: T,
    one_plus: T,
}

impl<T: Real> Node<T> {
    fn new(x: T) -> Self {
        let half = x / T::lit(2.0);
        let two = T::lit(2.0);
        Self {
            cos: x.cos(),
            one_minus: two * half.sin().powi(2),
            one_plus: two * half.cos().powi(2),
        }
    }
}

fn require_open(q: &QuadratureSpec) -> Result<()> {
    if q.rule.is_open() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "{:?} places nodes on the cube corners, where the lattice integrand is singular; use an open rule",
            q.rule
        )))
    }
}

/// Tensor-product quadrature of `f` over `[0, π]³` with the same 1D rule on
/// every axis. Outer slices run in parallel; their partial sums are added in
/// slice order.
pub fn tensor_integrate<T: Real>(f: &LatticeIntegrand<T>, xs: &[T], ws: &[T]) -> T {
    let nodes: Vec<Node<T>> = xs.iter().map(|&x| Node::new(x)).collect();
    let slices: Vec<T> = (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            let mut outer = T::zero();
            for j in 0..nodes.len() {
                let mut inner = T::zero();
                for k in 0..nodes.len() {
                    inner = inner + ws[k] * f.eval_node(&nodes[i], &nodes[j], &nodes[k]);
                }
                outer = outer + ws[j] * inner;
            }
            ws[i] * outer
        })
        .collect();
    slices.into_iter().fold(T::zero(), |a, b| a + b)
}

/// `W = (1/π³) ∫∫∫ dx dy dz / (3 − cos x cos y − cos y cos z − cos z cos x)`.
///
/// Each axis of `[0, π]` is cut into `q.panels` geometrically graded cells
/// toward both singular ends (ratio 0.15) plus two central cells, with a
/// `q.nodes`-point open rule on every cell.
pub fn watson_w<T: Real>(q: &QuadratureSpec) -> Result<T> {
    require_open(q)?;
    let breaks = graded_breaks(T::zero(), T::PI(), q.panels, T::lit(GRADING_RATIO), true, true);
    let (xs, ws) = q.composite_on_breaks(&breaks);
    Ok(tensor_integrate(&LatticeIntegrand::watson(), &xs, &ws))
}

/// `W⁺ = (√2/π³) ∫∫∫ dx dy dz / (3 + cos x cos y + cos y cos z + cos z cos x)`
/// on `q.panels` uniform panels per axis. The denominator is at least 2.
pub fn watson_w_plus<T: Real>(q: &QuadratureSpec) -> Result<T> {
    require_open(q)?;
    let (xs, ws) = q.composite(T::zero(), T::PI());
    Ok(tensor_integrate(&LatticeIntegrand::watson_plus(), &xs, &ws))
}

/// Watson's closed form `W = (√3/π²) K²(sin 15°)`.
pub fn watson_w_closed_form<T: Real>() -> Result<T> {
    let k = complete_k(&Modulus::from_angle(T::PI() / T::lit(12.0))?)?;
    Ok(T::lit(3.0).sqrt() / T::PI().powi(2) * k * k)
}

/// `W` with nodes doubled from the given spec; returns `(coarse, fine)`.
pub fn watson_w_refinement<T: Real>(q: &QuadratureSpec) -> Result<(T, T)> {
    let fine = QuadratureSpec::new(q.rule, 2 * q.nodes, q.panels)?;
    Ok((watson_w(q)?, watson_w(&fine)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Rule;
    use std::f64::consts::PI;

    #[test]
    fn integrand_signs_and_singularities() {
        let w = LatticeIntegrand::<f64>::watson();
        let p = LatticeIntegrand::<f64>::watson_plus();
        assert_eq!(w.signs.map(|s| -s), p.signs);
        assert!((p.prefactor / w.prefactor - 2f64.sqrt()).abs() < 1e-15);
        // both corners of W are singular, W⁺ is bounded there
        assert!(w.eval(1e-9, 1e-9, 1e-9) > 1e15);
        assert!(w.eval(PI - 1e-9, PI - 1e-9, PI - 1e-9) > 1e14);
        assert!(p.eval(0.0, 0.0, 0.0).is_finite());
        // cancellation-free form agrees with the direct one away from corners
        let (x, y, z) = (0.3f64, 1.7f64, 2.2f64);
        let direct = w.prefactor / (3.0 - x.cos() * y.cos() - y.cos() * z.cos() - z.cos() * x.cos());
        assert!((w.eval(x, y, z) - direct).abs() < 1e-15 * direct);
    }

    #[test]
    fn plus_denominator_bounded_below() {
        let p = LatticeIntegrand::<f64>::watson_plus();
        let mut worst: f64 = 0.0;
        let n = 40;
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..=n {
                    let f = |m: usize| PI * m as f64 / n as f64;
                    worst = worst.max(p.eval(f(i), f(j), f(k)));
                }
            }
        }
        // denominator >= 2 means the integrand never exceeds prefactor/2
        assert!(worst <= p.prefactor / 2.0 * (1.0 + 1e-12));
    }

    #[test]
    fn closed_rules_rejected() {
        let q = QuadratureSpec::new(Rule::AdaptiveSimpson, 10, 4).unwrap();
        assert!(matches!(watson_w::<f64>(&q), Err(Error::Config(_))));
        assert!(matches!(watson_w_plus::<f64>(&q), Err(Error::Config(_))));
    }
}
