//! One-dimensional quadrature rules shared by every numeric integral in the
//! crate, plus the composite node sets used to build tensor-product rules.

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

/// Quadrature rule family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    GaussLegendre,
    TanhSinh,
    AdaptiveSimpson,
}

impl Rule {
    /// Open rules never place a node on an interval endpoint.
    pub fn is_open(self) -> bool {
        !matches!(self, Rule::AdaptiveSimpson)
    }
}

/// Immutable quadrature configuration.
///
/// * Gauss–Legendre: `panels` equal panels with a `nodes`-point rule each.
/// * tanh–sinh: `panels` equal panels, `2·nodes + 1` abscissae per panel.
/// * adaptive Simpson: `panels` initial panels, recursion depth at most
///   `nodes`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub nodes: usize,
    pub panels: usize,
}

impl QuadratureSpec {
    pub fn new(rule: Rule, nodes: usize, panels: usize) -> Result<Self> {
        if nodes < 2 {
            return Err(Error::Config(format!("quadrature needs nodes >= 2, got {nodes}")));
        }
        if panels == 0 {
            return Err(Error::Config("quadrature needs at least one panel".into()));
        }
        Ok(Self { rule, nodes, panels })
    }

    pub fn gauss_legendre(nodes: usize, panels: usize) -> Result<Self> {
        Self::new(Rule::GaussLegendre, nodes, panels)
    }

    pub fn tanh_sinh(nodes: usize, panels: usize) -> Result<Self> {
        Self::new(Rule::TanhSinh, nodes, panels)
    }

    pub fn adaptive_simpson(max_depth: usize, panels: usize) -> Result<Self> {
        Self::new(Rule::AdaptiveSimpson, max_depth, panels)
    }

    /// Integrates `f` over `[a, b]`.
    pub fn integrate<T: Real, F: Fn(T) -> T>(&self, f: F, a: T, b: T) -> T {
        match self.rule {
            Rule::AdaptiveSimpson => adaptive_simpson(&f, a, b, self.panels, self.nodes),
            _ => {
                let (xs, ws) = self.composite(a, b);
                xs.iter().zip(&ws).fold(T::zero(), |acc, (&x, &w)| acc + w * f(x))
            }
        }
    }

    /// Composite nodes and weights on `[a, b]` for the open rule families.
    ///
    /// # Panics
    /// Panics for adaptive Simpson, which has no fixed node set.
    pub fn composite<T: Real>(&self, a: T, b: T) -> (Vec<T>, Vec<T>) {
        let breaks: Vec<T> = (0..=self.panels)
            .map(|i| a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(self.panels))
            .collect();
        self.composite_on_breaks(&breaks)
    }

    /// Composite nodes and weights over consecutive cells of `breaks`.
    pub fn composite_on_breaks<T: Real>(&self, breaks: &[T]) -> (Vec<T>, Vec<T>) {
        let base = match self.rule {
            Rule::GaussLegendre => gauss_legendre::<T>(self.nodes),
            Rule::TanhSinh => tanh_sinh::<T>(self.nodes),
            Rule::AdaptiveSimpson => panic!("adaptive Simpson has no fixed node set"),
        };
        let mut xs = Vec::with_capacity(base.len() * breaks.len());
        let mut ws = Vec::with_capacity(base.len() * breaks.len());
        for cell in breaks.windows(2) {
            let (lo, hi) = (cell[0], cell[1]);
            let half = (hi - lo) / T::lit(2.0);
            for node in &base {
                let x = if node.from_left <= node.from_right {
                    lo + half * node.from_left
                } else {
                    hi - half * node.from_right
                };
                if x <= lo || x >= hi {
                    continue;
                }
                xs.push(x);
                ws.push(half * node.weight);
            }
        }
        (xs, ws)
    }
}

/// A node on `[-1, 1]` stored by its distance to each endpoint so that nodes
/// crowding an endpoint keep full relative precision.
#[derive(Clone, Copy, Debug)]
struct StdNode<T> {
    from_left: T,
    from_right: T,
    weight: T,
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on the
/// three-term recurrence.
fn gauss_legendre<T: Real>(n: usize) -> Vec<StdNode<T>> {
    let one = T::one();
    let two = T::lit(2.0);
    let nn = T::from_usize_lossy(n);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let guess = T::PI() * (T::from_usize_lossy(i) + T::lit(0.75)) / (nn + T::lit(0.5));
        let mut x = guess.cos();
        let mut dp = one;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() * T::lit(4.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = two / ((one - x * x) * dp * dp);
        out.push(StdNode {
            from_left: one + x,
            from_right: one - x,
            weight: w,
        });
    }
    out
}

fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for j in 2..=n {
        let jj = T::from_usize_lossy(j);
        let p2 = ((T::lit(2.0) * jj - T::one()) * x * p1 - (jj - T::one()) * p0) / jj;
        p0 = p1;
        p1 = p2;
    }
    let nn = T::from_usize_lossy(n);
    let d = nn * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// tanh–sinh abscissae on `[-1, 1]` with `2n + 1` points.
fn tanh_sinh<T: Real>(n: usize) -> Vec<StdNode<T>> {
    let half_pi = T::FRAC_PI_2();
    let two = T::lit(2.0);
    let t_max = if T::epsilon() < T::lit(1e-10) { 4.0 } else { 3.0 };
    let h = T::lit(t_max) / T::from_usize_lossy(n);
    let n = n as i64;
    (-n..=n)
        .map(|j| {
            let t = h * T::lit(j as f64);
            let s = half_pi * t.sinh();
            // 1 - tanh s and 1 + tanh s, each without cancellation.
            let from_right = two / (T::one() + (two * s).exp());
            let from_left = two / (T::one() + (-two * s).exp());
            let weight = h * half_pi * t.cosh() / s.cosh().powi(2);
            StdNode {
                from_left,
                from_right,
                weight,
            }
        })
        .collect()
}

fn adaptive_simpson<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, panels: usize, depth: usize) -> T {
    let tol = T::epsilon() * T::lit(1e3);
    let mut total = T::zero();
    let six = T::lit(6.0);
    let two = T::lit(2.0);
    for i in 0..panels {
        let lo = a + (b - a) * T::from_usize_lossy(i) / T::from_usize_lossy(panels);
        let hi = a + (b - a) * T::from_usize_lossy(i + 1) / T::from_usize_lossy(panels);
        let mid = (lo + hi) / two;
        let (flo, fmid, fhi) = (f(lo), f(mid), f(hi));
        let whole = (hi - lo) / six * (flo + T::lit(4.0) * fmid + fhi);
        total = total + simpson_step(f, lo, hi, flo, fmid, fhi, whole, tol, depth);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn simpson_step<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    fa: T,
    fm: T,
    fb: T,
    whole: T,
    tol: T,
    depth: usize,
) -> T {
    let two = T::lit(2.0);
    let six = T::lit(6.0);
    let m = (a + b) / two;
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / six * (fa + T::lit(4.0) * flm + fm);
    let right = (b - m) / six * (fm + T::lit(4.0) * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= T::lit(15.0) * tol {
        return left + right + delta / T::lit(15.0);
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / two, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / two, depth - 1)
}

/// Geometric breakpoints on `[a, b]` graded toward `a` (`grade_left`) and/or
/// `b` (`grade_right`), `levels` cells per graded end shrinking by `ratio`.
pub fn graded_breaks<T: Real>(
    a: T,
    b: T,
    levels: usize,
    ratio: T,
    grade_left: bool,
    grade_right: bool,
) -> Vec<T> {
    let mid = (a + b) / T::lit(2.0);
    let half = mid - a;
    let mut left = vec![a];
    if grade_left {
        let mut offsets: Vec<T> = (1..=levels).map(|j| half * ratio.powi(j as i32)).collect();
        offsets.reverse();
        left.extend(offsets.into_iter().map(|d| a + d));
    }
    left.push(mid);
    let mut right = Vec::new();
    if grade_right {
        right.extend((1..=levels).map(|j| b - half * ratio.powi(j as i32)));
    }
    right.push(b);
    left.extend(right);
    left
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let q = QuadratureSpec::gauss_legendre(5, 1).unwrap();
        // degree 9 is the exactness limit of a 5-point rule
        let v: f64 = q.integrate(|x| x.powi(9) + 3.0 * x.powi(4), 0.0, 2.0);
        let exact = 2f64.powi(10) / 10.0 + 3.0 * 2f64.powi(5) / 5.0;
        assert!((v - exact).abs() < 1e-11 * exact);
    }

    #[test]
    fn rules_agree_on_smooth_integrand() {
        let exact = 1.0 - (-1.0f64).exp();
        for q in [
            QuadratureSpec::gauss_legendre(20, 2).unwrap(),
            QuadratureSpec::tanh_sinh(40, 1).unwrap(),
            QuadratureSpec::adaptive_simpson(40, 4).unwrap(),
        ] {
            let v: f64 = q.integrate(|x: f64| (-x).exp(), 0.0, 1.0);
            assert!((v - exact).abs() < 1e-12, "{q:?}: {v}");
        }
    }

    #[test]
    fn tanh_sinh_handles_endpoint_singularity() {
        let q = QuadratureSpec::tanh_sinh(60, 1).unwrap();
        let v: f64 = q.integrate(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0);
        assert!((v - 2.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn open_rules_skip_endpoints() {
        let q = QuadratureSpec::tanh_sinh(80, 3).unwrap();
        let (xs, _) = q.composite(0.0f64, std::f64::consts::PI);
        assert!(xs.iter().all(|&x| x > 0.0 && x < std::f64::consts::PI));
        assert!(Rule::GaussLegendre.is_open() && !Rule::AdaptiveSimpson.is_open());
    }

    #[test]
    fn rejects_degenerate_specs() {
        assert!(QuadratureSpec::gauss_legendre(1, 1).is_err());
        assert!(QuadratureSpec::gauss_legendre(4, 0).is_err());
    }

    #[test]
    fn graded_breaks_are_monotone() {
        let b = graded_breaks(0.0f64, 1.0, 5, 0.2, true, true);
        assert_eq!(b.len(), 2 * 5 + 3);
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b[0], 0.0);
        assert_eq!(*b.last().unwrap(), 1.0);
    }

    #[test]
    fn f32_gauss_legendre() {
        let q = QuadratureSpec::gauss_legendre(8, 1).unwrap();
        let v: f32 = q.integrate(|x: f32| x.cos(), 0.0, 1.0);
        assert!((v - 1f32.sin()).abs() < 1e-6);
    }
}
