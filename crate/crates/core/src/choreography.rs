//! Kinematics of three equal masses chasing each other around the lemniscate
//! `(x² + y²)² = x² − y²`, parametrized by
//! `x(t) = sn t/(1 + cn² t)`, `y(t) = sn t cn t/(1 + cn² t)` with period `4K`.
//!
//! The bodies sit at `x(t)`, `x(t + 4K/3)` and `x(t − 4K/3)`. Their center of
//! mass stays at the origin only for `k² = (2 + √3)/4`.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::ops::{Add, Sub};
use std::path::PathBuf;

use rayon::prelude::*;

use crate::elliptic::Modulus;
use crate::jacobi::Jacobi;
use crate::{Error, Real, Result};

pub const CSV_HEADER: &str = "t,x1,y1,x2,y2,x3,y3,residual_x,residual_y";

/// Samples per period used when none is given.
pub const DEFAULT_SAMPLES: usize = 1024;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Vec2<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    /// `(x² + y²)² − (x² − y²)`, zero on the lemniscate.
    pub fn lemniscate_residual(self) -> T {
        let r2 = self.x * self.x + self.y * self.y;
        r2 * r2 - (self.x * self.x - self.y * self.y)
    }
}

impl<T: Real> Add for Vec2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Real> Sub for Vec2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Position and velocity of one body at time `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BodyState<T> {
    pub position: Vec2<T>,
    pub velocity: Vec2<T>,
    pub time: T,
}

impl<T: Real> BodyState<T> {
    pub fn is_on_curve(&self, tol: T) -> bool {
        self.position.lemniscate_residual().abs() <= tol
    }
}

/// Inputs to [`export_trajectories`].
#[derive(Clone, Debug)]
pub struct ChoreographyConfig<T> {
    pub modulus: Modulus<T>,
    pub samples: usize,
    pub output_path: Option<PathBuf>,
}

impl<T: Real> ChoreographyConfig<T> {
    pub fn new(modulus: Modulus<T>, samples: usize, output_path: Option<PathBuf>) -> Result<Self> {
        if samples < 3 {
            return Err(Error::domain("samples", samples as f64, "[3, inf)"));
        }
        Ok(Self {
            modulus,
            samples,
            output_path,
        })
    }
}

/// The lemniscate motion at a fixed modulus (equal unit masses).
#[derive(Clone, Debug)]
pub struct Lemniscate<T> {
    jacobi: Jacobi<T>,
}

impl<T: Real> Lemniscate<T> {
    pub fn new(m: &Modulus<T>) -> Result<Self> {
        Ok(Self {
            jacobi: Jacobi::new(m)?,
        })
    }

    pub fn quarter_period(&self) -> T {
        self.jacobi.quarter_period()
    }

    pub fn period(&self) -> T {
        T::lit(4.0) * self.quarter_period()
    }

    /// Phase offset `4K/3` between consecutive bodies.
    pub fn phase(&self) -> T {
        self.period() / T::lit(3.0)
    }

    pub fn position(&self, t: T) -> Vec2<T> {
        let j = self.jacobi.eval(t);
        let denom = T::one() + j.cn * j.cn;
        Vec2::new(j.sn / denom, j.sn * j.cn / denom)
    }

    /// Closed-form time derivative, using `sn′ = cn dn` and `cn′ = −sn dn`.
    pub fn velocity(&self, t: T) -> Vec2<T> {
        let j = self.jacobi.eval(t);
        let (s, c, d) = (j.sn, j.cn, j.dn);
        let denom = T::one() + c * c;
        let denom2 = denom * denom;
        let two = T::lit(2.0);
        let vx = c * d * (denom + two * s * s) / denom2;
        let vy = d * ((c * c - s * s) * denom + two * s * s * c * c) / denom2;
        Vec2::new(vx, vy)
    }

    pub fn state(&self, t: T) -> BodyState<T> {
        BodyState {
            position: self.position(t),
            velocity: self.velocity(t),
            time: t,
        }
    }

    pub fn three_body_positions(&self, t: T) -> [Vec2<T>; 3] {
        let p = self.phase();
        [self.position(t), self.position(t + p), self.position(t - p)]
    }

    pub fn three_body_velocities(&self, t: T) -> [Vec2<T>; 3] {
        let p = self.phase();
        [self.velocity(t), self.velocity(t + p), self.velocity(t - p)]
    }

    /// `x(t) + x(t + 4K/3) + x(t − 4K/3)`.
    pub fn center_of_mass_residual(&self, t: T) -> Vec2<T> {
        let [a, b, c] = self.three_body_positions(t);
        a + b + c
    }

    /// Sum of the three velocities (total momentum for unit masses).
    pub fn momentum_residual(&self, t: T) -> Vec2<T> {
        let [a, b, c] = self.three_body_velocities(t);
        a + b + c
    }

    /// Largest residual norm over `samples` times `tⱼ = K + 4K·j/samples`.
    ///
    /// The grid starts at `t = K`, where the x-residual is `1 − 2x(K/3)`; the
    /// point `t = 0` is useless on its own since oddness cancels it for any k.
    pub fn max_residual_norm(&self, samples: usize) -> T {
        let k = self.quarter_period();
        let step = self.period() / T::from_usize_lossy(samples.max(1));
        (0..samples.max(1))
            .map(|j| self.center_of_mass_residual(k + step * T::from_usize_lossy(j)).norm())
            .fold(T::zero(), T::max)
    }
}

pub fn lemniscate_position<T: Real>(t: T, m: &Modulus<T>) -> Result<Vec2<T>> {
    Ok(Lemniscate::new(m)?.position(t))
}

pub fn lemniscate_velocity<T: Real>(t: T, m: &Modulus<T>) -> Result<Vec2<T>> {
    Ok(Lemniscate::new(m)?.velocity(t))
}

pub fn three_body_positions<T: Real>(t: T, m: &Modulus<T>) -> Result<[Vec2<T>; 3]> {
    Ok(Lemniscate::new(m)?.three_body_positions(t))
}

pub fn center_of_mass_residual<T: Real>(t: T, m: &Modulus<T>) -> Result<Vec2<T>> {
    Ok(Lemniscate::new(m)?.center_of_mass_residual(t))
}

/// One grid point of a modulus scan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow<T> {
    pub k: T,
    pub max_residual: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult<T> {
    pub rows: Vec<ScanRow<T>>,
    /// Root refined by bisection inside the bracket around the grid minimum,
    /// when the bracket contains a sign change.
    pub root: Option<T>,
}

impl<T: Real> ScanResult<T> {
    pub fn argmin(&self) -> usize {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |best, (i, r)| {
                if r.max_residual < self.rows[best].max_residual {
                    i
                } else {
                    best
                }
            })
    }

    /// Indices of interior grid points not exceeding either neighbour.
    pub fn local_minima(&self) -> Vec<usize> {
        let r = &self.rows;
        (0..r.len())
            .filter(|&i| {
                let left = i == 0 || r[i].max_residual <= r[i - 1].max_residual;
                let right = i + 1 == r.len() || r[i].max_residual <= r[i + 1].max_residual;
                left && right
            })
            .collect()
    }
}

/// Scans `k` over `grid` equally spaced values in `[k_lo, k_hi]`, recording
/// the maximum center-of-mass residual over `samples` times per period, then
/// refines the minimizing bracket by bisection on the signed x-residual at
/// `t = K`.
///
/// Grid points are evaluated in parallel and collected in grid order.
pub fn choreography_scan<T: Real>(
    k_lo: T,
    k_hi: T,
    grid: usize,
    samples: usize,
) -> Result<ScanResult<T>> {
    if grid < 2 {
        return Err(Error::domain("grid", grid as f64, "[2, inf)"));
    }
    if samples == 0 {
        return Err(Error::domain("samples", 0.0, "[1, inf)"));
    }
    if !(k_lo > T::zero() && k_lo < k_hi && k_hi < T::one()) {
        return Err(Error::domain("k_lo", k_lo.as_f64(), "0 < k_lo < k_hi < 1"));
    }
    let step = (k_hi - k_lo) / T::from_usize_lossy(grid - 1);
    let rows = (0..grid)
        .into_par_iter()
        .map(|i| -> Result<ScanRow<T>> {
            let k = if i + 1 == grid {
                k_hi
            } else {
                k_lo + step * T::from_usize_lossy(i)
            };
            let curve = Lemniscate::new(&Modulus::new(k)?)?;
            Ok(ScanRow {
                k,
                max_residual: curve.max_residual_norm(samples),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut result = ScanResult { rows, root: None };
    let i = result.argmin();
    let lo = result.rows[i.saturating_sub(1)].k;
    let hi = result.rows[(i + 1).min(grid - 1)].k;
    result.root = refine_root(lo, hi)?;
    Ok(result)
}

/// Signed x-component of the residual at `t = K`, i.e. `1 − 2x(K/3)`.
pub fn residual_at_quarter_period<T: Real>(k: T) -> Result<T> {
    let curve = Lemniscate::new(&Modulus::new(k)?)?;
    Ok(curve.center_of_mass_residual(curve.quarter_period()).x)
}

/// Bisection for the zero of [`residual_at_quarter_period`] in `[lo, hi]`;
/// `None` when the endpoints do not bracket a sign change.
pub fn refine_root<T: Real>(lo: T, hi: T) -> Result<Option<T>> {
    let (mut lo, mut hi) = (lo, hi);
    let mut f_lo = residual_at_quarter_period(lo)?;
    let f_hi = residual_at_quarter_period(hi)?;
    if f_lo == T::zero() {
        return Ok(Some(lo));
    }
    if f_hi == T::zero() {
        return Ok(Some(hi));
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Ok(None);
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = residual_at_quarter_period(mid)?;
        if (f_mid > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some((lo + hi) / T::lit(2.0)))
}

/// `sn(10K/3)` three ways: directly, as `−cn(K/3)/dn(K/3)` (shift by `3K`),
/// and as `−2 sn dn cn/(1 − k² sn⁴)` at `K/3` (duplication after `4K − 2K/3`).
pub fn sn_ten_thirds_forms<T: Real>(m: &Modulus<T>) -> Result<(T, T, T)> {
    let j = Jacobi::new(m)?;
    let k = j.quarter_period();
    let direct = j.eval(T::lit(10.0) * k / T::lit(3.0)).sn;
    let third = j.eval(k / T::lit(3.0));
    let shift_form = -third.cn / third.dn;
    let k2 = m.k_squared();
    let dup_form =
        -T::lit(2.0) * third.sn * third.dn * third.cn / (T::one() - k2 * third.sn.powi(4));
    Ok((direct, shift_form, dup_form))
}

/// `(1 − 2 s d²)/s⁴`: the value of `k²` obtained by equating the two forms of
/// `sn(10K/3)`, given `s = sn(K/3)` and `d = dn(K/3)`.
pub fn k_squared_from_third<T: Real>(sn_third: T, dn_third: T) -> T {
    (T::one() - T::lit(2.0) * sn_third * dn_third * dn_third) / sn_third.powi(4)
}

/// Difference of the two `sn(10K/3)` forms when `sn(K/3)` is pinned to the
/// value `√3 − 1` forced by the center-of-mass condition, with `cn` and `dn`
/// derived from it at modulus `k`. Vanishes only at `k² = (2 + √3)/4`.
pub fn pinned_sn_forms_gap<T: Real>(k: T) -> T {
    let s = T::lit(3.0).sqrt() - T::one();
    let k2 = k * k;
    let c = (T::one() - s * s).sqrt();
    let d = (T::one() - k2 * s * s).sqrt();
    let shift_form = -c / d;
    let dup_form = -T::lit(2.0) * s * d * c / (T::one() - k2 * s.powi(4));
    shift_form - dup_form
}

/// Root of [`pinned_sn_forms_gap`] in `(lo, hi)` by bisection.
pub fn solve_pinned_modulus<T: Real>(lo: T, hi: T) -> Result<T> {
    let (mut lo, mut hi) = (lo, hi);
    let f_lo = pinned_sn_forms_gap(lo);
    if (f_lo > T::zero()) == (pinned_sn_forms_gap(hi) > T::zero()) {
        return Err(Error::Range("no sign change of the sn(10K/3) gap".into()));
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::lit(2.0);
        if mid <= lo || mid >= hi {
            break;
        }
        if (pinned_sn_forms_gap(mid) > T::zero()) == (f_lo > T::zero()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) / T::lit(2.0))
}

/// One row of the exported trajectory table.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrajectoryRow<T> {
    pub t: T,
    pub bodies: [Vec2<T>; 3],
    pub residual: Vec2<T>,
}

/// Samples the three bodies at `tⱼ = 4K·j/samples`, `j = 0..samples`, and
/// writes the CSV when the config names an output path.
pub fn export_trajectories<T: Real>(cfg: &ChoreographyConfig<T>) -> Result<Vec<TrajectoryRow<T>>> {
    let curve = Lemniscate::new(&cfg.modulus)?;
    let step = curve.period() / T::from_usize_lossy(cfg.samples);
    let rows: Vec<_> = (0..cfg.samples)
        .map(|j| {
            let t = step * T::from_usize_lossy(j);
            let bodies = curve.three_body_positions(t);
            TrajectoryRow {
                t,
                bodies,
                residual: bodies[0] + bodies[1] + bodies[2],
            }
        })
        .collect();
    if let Some(path) = &cfg.output_path {
        let mut out = BufWriter::new(File::create(path)?);
        write_csv(&rows, &mut out)?;
        out.flush()?;
    }
    Ok(rows)
}

/// Writes rows with the fixed header [`CSV_HEADER`].
pub fn write_csv<T: Real, W: Write + ?Sized>(rows: &[TrajectoryRow<T>], out: &mut W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        let [a, b, c] = r.bodies;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.t, a.x, a.y, b.x, b.y, c.x, c.y, r.residual.x, r.residual.y
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn legendre() -> Modulus<f64> {
        Modulus::from_angle(5.0 * PI / 12.0).unwrap()
    }

    #[test]
    fn position_examples() {
        let m = Modulus::new(0.4f64).unwrap();
        let c = Lemniscate::new(&m).unwrap();
        assert_eq!(c.position(0.0), Vec2::zero());
        let p = c.position(c.quarter_period());
        assert!((p.x - 1.0).abs() < 1e-12 && p.y.abs() < 1e-12);
        let c = Lemniscate::new(&legendre()).unwrap();
        assert!((c.position(c.quarter_period() / 3.0).x - 0.5).abs() < 1e-12);
    }

    #[test]
    fn bodies_at_quarter_period() {
        let c = Lemniscate::new(&legendre()).unwrap();
        let [a, b, d] = c.three_body_positions(c.quarter_period());
        assert!((a.x - 1.0).abs() < 1e-12 && a.y.abs() < 1e-12);
        assert!((b.x + 0.5).abs() < 1e-12 && (d.x + 0.5).abs() < 1e-12);
        let [o, p, q] = c.three_body_positions(0.0);
        assert_eq!(o, Vec2::zero());
        assert!((p.x + q.x).abs() < 1e-15 && (p.y + q.y).abs() < 1e-15);
    }

    #[test]
    fn residual_off_the_singular_modulus() {
        let r = center_of_mass_residual(1.685_750_354_812_596, &Modulus::new(0.5).unwrap()).unwrap();
        assert!(r.norm() > 1e-3);
        // t = 0: x-parts cancel by oddness, so the direct sum is its own oracle
        let m = Modulus::new(0.7f64).unwrap();
        let c = Lemniscate::new(&m).unwrap();
        let r0 = c.center_of_mass_residual(0.0);
        let direct = c.position(c.phase()) + c.position(-c.phase());
        assert!((r0.x - direct.x).abs() < 1e-15 && (r0.y - direct.y).abs() < 1e-15);
    }

    #[test]
    fn velocity_parity() {
        let c = Lemniscate::new(&Modulus::new(0.6f64).unwrap()).unwrap();
        for t in [0.3, 1.1, 2.9] {
            let (a, b) = (c.velocity(t), c.velocity(-t));
            // x and y odd in t, so both velocity components are even
            assert!((a.x - b.x).abs() < 1e-13 && (a.y - b.y).abs() < 1e-13);
        }
    }

    #[test]
    fn scan_rejects_bad_input() {
        assert!(choreography_scan(0.5f64, 0.9, 1, 16).is_err());
        assert!(choreography_scan(0.9f64, 0.5, 10, 16).is_err());
        assert!(choreography_scan(0.0f64, 0.5, 10, 16).is_err());
        assert!(ChoreographyConfig::new(legendre(), 2, None).is_err());
    }

    #[test]
    fn export_rows() {
        let cfg = ChoreographyConfig::new(legendre(), 4, None).unwrap();
        let rows = export_trajectories(&cfg).unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[0].bodies[0], Vec2::zero());
        assert!((rows[1].bodies[0].x - 1.0).abs() < 1e-12);
        assert!(rows.iter().all(|r| r.residual.norm() < 1e-10));
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().count(), 5);
    }

    #[test]
    fn export_to_unwritable_path_fails() {
        let cfg = ChoreographyConfig::new(
            legendre(),
            4,
            Some(PathBuf::from("/nonexistent-dir/x/trajectory.csv")),
        )
        .unwrap();
        assert!(matches!(export_trajectories(&cfg), Err(Error::Io(_))));
    }

    #[test]
    fn k_squared_extraction() {
        let s = 3f64.sqrt() - 1.0;
        let k2 = (2.0 + 3f64.sqrt()) / 4.0;
        let d = (1.0 - k2 * s * s).sqrt();
        assert!((k_squared_from_third(s, d) - k2).abs() < 1e-11);
    }

    proptest! {
        #[test]
        fn velocity_matches_finite_difference(t in -8.0f64..8.0, k in 0.0f64..0.99) {
            let c = Lemniscate::new(&Modulus::new(k).unwrap()).unwrap();
            let h = 1e-5;
            let fd = c.position(t + h) - c.position(t - h);
            let v = c.velocity(t);
            prop_assert!((v.x - fd.x / (2.0 * h)).abs() < 1e-7);
            prop_assert!((v.y - fd.y / (2.0 * h)).abs() < 1e-7);
        }

        #[test]
        fn stays_on_the_lemniscate(t in -30.0f64..30.0, k in 0.0f64..0.999) {
            let c = Lemniscate::new(&Modulus::new(k).unwrap()).unwrap();
            prop_assert!(c.state(t).is_on_curve(1e-10));
            let again = c.position(t + c.period());
            let p = c.position(t);
            prop_assert!((again - p).norm() < 1e-10);
        }
    }
}
