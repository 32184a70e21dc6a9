//! Identity-verification suite: a fixed registry of numerical checks with
//! centralized tolerances and a JSON Lines report.
//!
//! Each report line is one [`IdentityCheck`]; the last line is a summary with
//! `total`, `failed`, `config_digest`, `seed`, `profile` and `timestamp`. The
//! digest is the SHA-256 of the effective configuration (profile, seed,
//! tolerances, Monte Carlo parameters) and never includes the timestamp.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::choreography::{choreography_scan, solve_pinned_modulus, Lemniscate};
use crate::elliptic::{
    bowman_integral, complete_e, complete_k, id_identity_sides, incomplete_f, legendre_r,
    legendre_r_beta_form, legendre_r_via_bowman, legendre_r_via_k_cos15, legendre_r_via_k_sin15,
    ratio_kprime_over_k, series_f, singular_modulus, trisection_amplitude, bisection_amplitude,
    Amplitude, Modulus, UpperLimit,
};
use crate::gamma::{beta, gamma};
use crate::jacobi::Jacobi;
use crate::quadrature::QuadratureSpec;
use crate::ramanujan::{
    k_sin15_gamma_form, legendre_ke_residual, pendulum_period, perimeter_quadrature,
    ramanujan_perimeter_gamma, EllipseSpec, PendulumSpec,
};
use crate::randomwalk::{
    default_w_spec, mc_return_probability, polya_return_probability, truncated_return_probability,
    watson_w, watson_w_closed_form,
};
use crate::{Error, Result};

/// How a check compares its two sides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorMode {
    Abs,
    Rel,
    /// `|lhs − rhs|` measured in standard errors of a Monte Carlo estimate.
    Sigma,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tol: f64,
    pub mode: ErrorMode,
    pub passed: bool,
    pub paper_anchor: String,
}

impl IdentityCheck {
    /// Builds a check and decides `passed`. A non-positive or non-finite
    /// tolerance never passes, nor does a non-finite side.
    pub fn evaluate(name: &str, anchor: &str, lhs: f64, rhs: f64, mode: ErrorMode, tol: f64, scale: f64) -> Self {
        let abs_err = (lhs - rhs).abs();
        let rel_err = if rhs != 0.0 { abs_err / rhs.abs() } else { abs_err };
        let err = match mode {
            ErrorMode::Abs => abs_err,
            ErrorMode::Rel => rel_err,
            ErrorMode::Sigma => abs_err / scale,
        };
        let passed = tol.is_finite() && tol > 0.0 && err.is_finite() && err <= tol;
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            abs_err,
            rel_err,
            tol,
            mode,
            passed,
            paper_anchor: anchor.to_string(),
        }
    }

    /// Failure record for a check whose evaluation returned an error.
    fn errored(name: &str, anchor: &str, mode: ErrorMode, tol: f64) -> Self {
        Self {
            name: name.to_string(),
            lhs: f64::NAN,
            rhs: f64::NAN,
            abs_err: f64::NAN,
            rel_err: f64::NAN,
            tol,
            mode,
            passed: false,
            paper_anchor: anchor.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<IdentityCheck>,
    pub total: usize,
    pub failed: usize,
    pub config_digest: String,
    pub seed: u64,
}

#[derive(Serialize)]
struct Summary<'a> {
    total: usize,
    failed: usize,
    config_digest: &'a str,
    seed: u64,
    profile: Profile,
    timestamp: u64,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    /// One JSON object per check, then the summary line.
    pub fn write_jsonl<W: Write + ?Sized>(&self, out: &mut W, profile: Profile, timestamp: u64) -> Result<()> {
        for c in &self.checks {
            let line = serde_json::to_string(c).map_err(|e| Error::Internal(e.to_string()))?;
            writeln!(out, "{line}")?;
        }
        let summary = Summary {
            total: self.total,
            failed: self.failed,
            config_digest: &self.config_digest,
            seed: self.seed,
            profile,
            timestamp,
        };
        let line = serde_json::to_string(&summary).map_err(|e| Error::Internal(e.to_string()))?;
        writeln!(out, "{line}")?;
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Default,
    Strict,
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(Profile::Default),
            "strict" => Ok(Profile::Strict),
            other => Err(Error::Usage(format!("unknown profile {other:?} (expected default or strict)"))),
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Profile::Default => "default",
            Profile::Strict => "strict",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub profile: Profile,
    pub seed: u64,
    /// Per-check tolerance overrides, applied after the profile.
    pub overrides: BTreeMap<String, f64>,
    pub mc_walks: u64,
    pub mc_steps: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            profile: Profile::Default,
            seed: 42,
            overrides: BTreeMap::new(),
            mc_walks: 100_000,
            mc_steps: 1_000,
        }
    }
}

impl VerifyConfig {
    /// Effective tolerance of every registered check, in registry order.
    pub fn tolerances(&self) -> Vec<(&'static str, f64)> {
        REGISTRY
            .iter()
            .map(|c| (c.name, self.tolerance_for(c)))
            .collect()
    }

    fn tolerance_for(&self, c: &CheckDef) -> f64 {
        if let Some(&t) = self.overrides.get(c.name) {
            return t;
        }
        match (self.profile, c.mode) {
            // statistical bands do not shrink with a stricter profile
            (_, ErrorMode::Sigma) | (Profile::Default, _) => c.tol,
            (Profile::Strict, _) => c.tol / 10.0,
        }
    }

    /// Rejects overrides naming unknown checks.
    pub fn validate(&self) -> Result<()> {
        for name in self.overrides.keys() {
            if !REGISTRY.iter().any(|c| c.name == name) {
                return Err(Error::Usage(format!("no check named {name:?}")));
            }
        }
        Ok(())
    }

    pub fn digest(&self) -> String {
        #[derive(Serialize)]
        struct Canonical<'a> {
            profile: Profile,
            seed: u64,
            mc_walks: u64,
            mc_steps: u64,
            tolerances: Vec<(&'a str, f64)>,
        }
        let canonical = Canonical {
            profile: self.profile,
            seed: self.seed,
            mc_walks: self.mc_walks,
            mc_steps: self.mc_steps,
            tolerances: self.tolerances(),
        };
        let bytes = serde_json::to_vec(&canonical).expect("config serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Values produced by a check: both sides plus the scale used by
/// [`ErrorMode::Sigma`].
struct Sides {
    lhs: f64,
    rhs: f64,
    scale: f64,
}

fn sides(lhs: f64, rhs: f64) -> Result<Sides> {
    Ok(Sides { lhs, rhs, scale: 1.0 })
}

/// Largest deviation from zero, reported as `lhs` against `rhs = 0`.
fn worst(residuals: impl IntoIterator<Item = f64>) -> Result<Sides> {
    let m = residuals.into_iter().fold(0.0f64, |a, r| if r.is_nan() { f64::NAN } else { a.max(r.abs()) });
    sides(m, 0.0)
}

struct CheckDef {
    name: &'static str,
    anchor: &'static str,
    mode: ErrorMode,
    tol: f64,
    eval: fn(&VerifyConfig) -> Result<Sides>,
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
    lo + (hi - lo) * u
}

fn sample_rng(cfg: &VerifyConfig, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream);
    rng
}

fn sin15() -> Result<Modulus<f64>> {
    Modulus::from_angle(std::f64::consts::PI / 12.0)
}

fn cos15() -> Result<Modulus<f64>> {
    Modulus::from_angle(5.0 * std::f64::consts::PI / 12.0)
}

fn r_quadrature() -> QuadratureSpec {
    QuadratureSpec::gauss_legendre(32, 16).expect("valid spec")
}

fn jacobi_addition(cfg: &VerifyConfig) -> Result<Sides> {
    let mut rng = sample_rng(cfg, 1);
    let mut res = Vec::with_capacity(200);
    for _ in 0..200 {
        let k = uniform(&mut rng, 0.0, 0.99);
        let j = Jacobi::new(&Modulus::new(k)?)?;
        let (u, v) = (uniform(&mut rng, -5.0, 5.0), uniform(&mut rng, -5.0, 5.0));
        let (a, b, s) = (j.eval(u), j.eval(v), j.eval(u + v));
        let denom = 1.0 - k * k * a.sn * a.sn * b.sn * b.sn;
        res.push(s.sn - (a.sn * b.cn * b.dn + b.sn * a.cn * a.dn) / denom);
        res.push(s.cn - (a.cn * b.cn - a.sn * b.sn * a.dn * b.dn) / denom);
        res.push(s.dn - (a.dn * b.dn - k * k * a.sn * b.sn * a.cn * b.cn) / denom);
    }
    worst(res)
}

fn jacobi_periods(cfg: &VerifyConfig) -> Result<Sides> {
    let mut rng = sample_rng(cfg, 2);
    let mut res = Vec::new();
    for _ in 0..50 {
        let k = uniform(&mut rng, 0.0, 0.99);
        let j = Jacobi::new(&Modulus::new(k)?)?;
        let kk = j.quarter_period();
        let u = uniform(&mut rng, -10.0, 10.0);
        let (a, p4, p2) = (j.eval(u), j.eval(u + 4.0 * kk), j.eval(u + 2.0 * kk));
        res.extend([p4.sn - a.sn, p4.cn - a.cn, p2.dn - a.dn, p2.sn + a.sn, p2.cn + a.cn]);
    }
    worst(res)
}

fn trisection_residuals(_: &VerifyConfig) -> Result<Sides> {
    let mut res = Vec::new();
    for m in [Modulus::new(0.3)?, Modulus::new(0.5)?, sin15()?, cos15()?] {
        let phi = trisection_amplitude(&m)?;
        res.push(incomplete_f(phi, &m)? - complete_k(&m)? / 3.0);
    }
    worst(res)
}

fn bisection_residuals(cfg: &VerifyConfig) -> Result<Sides> {
    let mut rng = sample_rng(cfg, 3);
    let mut res = Vec::new();
    for _ in 0..100 {
        let m = Modulus::new(uniform(&mut rng, 0.0, 0.999))?;
        let theta = Amplitude::new(uniform(&mut rng, 0.0, std::f64::consts::FRAC_PI_2))?;
        let phi = bisection_amplitude(theta, &m)?;
        res.push(incomplete_f(phi, &m)? - incomplete_f(theta, &m)? / 2.0);
    }
    worst(res)
}

fn gamma_reflection(cfg: &VerifyConfig) -> Result<Sides> {
    let mut rng = sample_rng(cfg, 4);
    let mut res = Vec::new();
    for _ in 0..100 {
        let x = uniform(&mut rng, 0.01, 0.99);
        let lhs = gamma(x)? * gamma(1.0 - x)?;
        let rhs = std::f64::consts::PI / (std::f64::consts::PI * x).sin();
        res.push((lhs - rhs) / rhs);
    }
    worst(res)
}

fn gamma_duplication(cfg: &VerifyConfig) -> Result<Sides> {
    let mut rng = sample_rng(cfg, 5);
    let mut res = Vec::new();
    for _ in 0..100 {
        let x = uniform(&mut rng, 0.05, 20.0);
        let lhs = gamma(x)? * gamma(x + 0.5)?;
        let rhs = 2f64.powf(1.0 - 2.0 * x) * std::f64::consts::PI.sqrt() * gamma(2.0 * x)?;
        res.push((lhs - rhs) / rhs);
    }
    worst(res)
}

fn polya_mc(cfg: &VerifyConfig) -> Result<Sides> {
    let est = mc_return_probability(cfg.mc_walks, cfg.mc_steps, cfg.seed)?;
    Ok(Sides {
        lhs: est.p_hat,
        rhs: truncated_return_probability(cfg.mc_steps),
        scale: est.stderr,
    })
}

const S3: f64 = 1.732_050_807_568_877_2;

static REGISTRY: &[CheckDef] = &[
    CheckDef {
        name: "singular_modulus_3",
        anchor: "k_3^2 = sin^2(pi/12) = (2 - sqrt3)/4",
        mode: ErrorMode::Abs,
        tol: 1e-10,
        eval: |_| sides(singular_modulus(3.0)?.k_squared(), (2.0 - S3) / 4.0),
    },
    CheckDef {
        name: "legendre_CM",
        anchor: "K′(k)/K(k) = √3",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| sides(ratio_kprime_over_k(&sin15()?)?, S3),
    },
    CheckDef {
        name: "legendre_series_CM",
        anchor: "f(1 - a) = sqrt3 f(a), a = (2 - sqrt3)/4",
        mode: ErrorMode::Rel,
        tol: 1e-8,
        eval: |_| {
            let a = (2.0 - S3) / 4.0;
            let lhs = series_f(1.0 - a, 1e-12)?.value;
            sides(lhs, S3 * series_f(a, 1e-12)?.value)
        },
    },
    CheckDef {
        name: "legendre_R_beta",
        anchor: "R = (1/3) B(1/3, 1/3)",
        mode: ErrorMode::Rel,
        tol: 1e-9,
        eval: |_| sides(legendre_r(&r_quadrature()), legendre_r_beta_form()?),
    },
    CheckDef {
        name: "legendre_R_k_cos15",
        anchor: "R = 4/(3 4^(1/3) 3^(1/4)) K(cos 15°)",
        mode: ErrorMode::Rel,
        tol: 1e-9,
        eval: |_| sides(legendre_r_via_k_cos15()?, legendre_r(&r_quadrature())),
    },
    CheckDef {
        name: "legendre_R_k_sin15",
        anchor: "R = 4 sqrt3/(3 4^(1/3) 3^(1/4)) K(sin 15°)",
        mode: ErrorMode::Rel,
        tol: 1e-9,
        eval: |_| sides(legendre_r_via_k_sin15()?, legendre_r(&r_quadrature())),
    },
    CheckDef {
        name: "legendre_R_quartic",
        anchor: "R through the quartic integral from 3^(-1/4) to infinity",
        mode: ErrorMode::Rel,
        tol: 1e-9,
        eval: |_| sides(legendre_r_via_bowman(&r_quadrature())?, legendre_r_beta_form()?),
    },
    CheckDef {
        name: "ramanujan_perimeter",
        anchor: "p = a sqrt(pi/sqrt3) {(1 + 1/sqrt3) G(1/3)/G(5/6) + 2 G(5/6)/G(1/3)}",
        mode: ErrorMode::Rel,
        tol: 1e-10,
        eval: |_| {
            let e = EllipseSpec::new(1.0, (std::f64::consts::PI / 12.0).sin())?;
            sides(ramanujan_perimeter_gamma(1.0)?, perimeter_quadrature(&e)?)
        },
    },
    CheckDef {
        name: "legendre_KE",
        anchor: "K(E - ((sqrt3 + 1)/(2 sqrt3)) K) = pi/(4 sqrt3)",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: |_| sides(legendre_ke_residual()?, 0.0),
    },
    CheckDef {
        name: "k_gamma",
        anchor: "K(sin 15°) = (1/(2 sqrt3)) sqrt(pi/sqrt3) G(1/6)/G(2/3)",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| sides(k_sin15_gamma_form()?, complete_k(&sin15()?)?),
    },
    CheckDef {
        name: "e_sin15_agm",
        anchor: "E(sin 15°) from the K-E relation",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| {
            let m = sin15()?;
            sides(crate::ramanujan::e_sin15_from_k(complete_k(&m)?), complete_e(&m)?)
        },
    },
    CheckDef {
        name: "jacobi_addition",
        anchor: "sn(u + v) = (sn u cn v dn v + sn v cn u dn u)/(1 - k^2 sn^2 u sn^2 v)",
        mode: ErrorMode::Abs,
        tol: 1e-10,
        eval: jacobi_addition,
    },
    CheckDef {
        name: "jacobi_periodicity",
        anchor: "sn and cn have period 4K, dn has period 2K",
        mode: ErrorMode::Abs,
        tol: 1e-11,
        eval: jacobi_periods,
    },
    CheckDef {
        name: "jacobi_sn_third",
        anchor: "sn(K/3) = sqrt3 - 1 at k^2 = (2 + sqrt3)/4",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: |_| {
            let j = Jacobi::new(&Modulus::from_k_squared((2.0 + S3) / 4.0)?)?;
            sides(j.eval(j.quarter_period() / 3.0).sn, S3 - 1.0)
        },
    },
    CheckDef {
        name: "choreography_center_of_mass",
        anchor: "x1 + x2 + x3 = 0 and y1 + y2 + y3 = 0 at k = cos 15°",
        mode: ErrorMode::Abs,
        tol: 1e-10,
        eval: |_| sides(Lemniscate::new(&cos15()?)?.max_residual_norm(1024), 0.0),
    },
    CheckDef {
        name: "choreography_scan_root",
        anchor: "center-of-mass root of the modulus scan is cos 15°",
        mode: ErrorMode::Abs,
        tol: 1e-10,
        eval: |_| {
            let scan = choreography_scan(0.5, 0.999, 200, 64)?;
            let root = scan.root.ok_or_else(|| Error::Range("scan found no root".into()))?;
            sides(root, cos15()?.k())
        },
    },
    CheckDef {
        name: "choreography_pinned_modulus",
        anchor: "sn(K/3) = sqrt3 - 1 and sn(10K/3) forms agree only at k^2 = (2 + sqrt3)/4",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: |_| {
            let k = solve_pinned_modulus(0.5, 0.999)?;
            sides(k * k, (2.0 + S3) / 4.0)
        },
    },
    CheckDef {
        name: "trisection",
        anchor: "F(Phi, k) = K/3",
        mode: ErrorMode::Abs,
        tol: 1e-10,
        eval: trisection_residuals,
    },
    CheckDef {
        name: "trisection_cos15_closed_form",
        anchor: "tan Phi = sqrt(2/sqrt3) at k = cos 15°",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: |_| sides(trisection_amplitude(&cos15()?)?.phi().tan(), (2.0 / S3).sqrt()),
    },
    CheckDef {
        name: "trisection_sin15_closed_form",
        anchor: "cos Phi = (2^(2/3) - 1) sqrt((2 + sqrt3)/sqrt3) at k = sin 15°",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: |_| {
            let expected = (2f64.powf(2.0 / 3.0) - 1.0) * ((2.0 + S3) / S3).sqrt();
            sides(trisection_amplitude(&sin15()?)?.phi().cos(), expected)
        },
    },
    CheckDef {
        name: "bisection",
        anchor: "F(Phi, k) = F(theta, k)/2",
        mode: ErrorMode::Abs,
        tol: 1e-10,
        eval: bisection_residuals,
    },
    CheckDef {
        name: "bowman_sin15",
        anchor: "integral to infinity at alpha = pi/12 equals K(sin 15°)",
        mode: ErrorMode::Abs,
        tol: 1e-9,
        eval: |_| {
            let v = bowman_integral(UpperLimit::Infinite, std::f64::consts::PI / 12.0, &r_quadrature())?;
            sides(v, complete_k(&sin15()?)?)
        },
    },
    CheckDef {
        name: "bowman_cos15",
        anchor: "integral to infinity at alpha = 5pi/12 equals K(cos 15°)",
        mode: ErrorMode::Abs,
        tol: 1e-9,
        eval: |_| {
            let v = bowman_integral(UpperLimit::Infinite, 5.0 * std::f64::consts::PI / 12.0, &r_quadrature())?;
            sides(v, complete_k(&cos15()?)?)
        },
    },
    CheckDef {
        name: "bowman_id",
        anchor: "int_0^arctan(3^(-1/4)) dtheta/sqrt(1 - k^2 sin^2 2theta) = F(arctan(sqrt2/3^(1/4)), k)",
        mode: ErrorMode::Abs,
        tol: 1e-9,
        eval: |_| {
            let (l, r) = id_identity_sides(&r_quadrature())?;
            sides(l, r)
        },
    },
    CheckDef {
        name: "polya_return_probability",
        anchor: "p = 1 - 1/(3W+) = 0.3405373296",
        mode: ErrorMode::Abs,
        tol: 1e-8,
        eval: |_| sides(polya_return_probability(), 0.340_537_329_6),
    },
    CheckDef {
        name: "watson_closed_form",
        anchor: "W = (sqrt3/pi^2) K^2(sin 15°)",
        mode: ErrorMode::Rel,
        tol: 1e-6,
        eval: |_| sides(watson_w(&default_w_spec())?, watson_w_closed_form()?),
    },
    CheckDef {
        name: "polya_monte_carlo",
        anchor: "simulated return frequency within 4 standard errors of the exact finite-horizon probability",
        mode: ErrorMode::Sigma,
        tol: 4.0,
        eval: polya_mc,
    },
    CheckDef {
        name: "pendulum_renormalization",
        anchor: "period(L, 5pi/6) = period(3L, pi/6)",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| {
            let a = pendulum_period(&PendulumSpec::new(1.0, 5.0 * std::f64::consts::PI / 6.0, 9.81)?)?;
            let b = pendulum_period(&PendulumSpec::new(3.0, std::f64::consts::PI / 6.0, 9.81)?)?;
            sides(a, b)
        },
    },
    CheckDef {
        name: "gamma_reflection",
        anchor: "G(x) G(1 - x) = pi/sin(pi x)",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: gamma_reflection,
    },
    CheckDef {
        name: "gamma_duplication",
        anchor: "G(x) G(x + 1/2) = 2^(1 - 2x) sqrt(pi) G(2x)",
        mode: ErrorMode::Abs,
        tol: 1e-12,
        eval: gamma_duplication,
    },
    CheckDef {
        name: "gamma_rgamma1",
        anchor: "G(1/3)^2 = 2^(1/3)/sqrt3 sqrt(pi) G(1/6)",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| {
            let lhs = gamma(1.0f64 / 3.0)?.powi(2);
            sides(lhs, 2f64.cbrt() / S3 * std::f64::consts::PI.sqrt() * gamma(1.0 / 6.0)?)
        },
    },
    CheckDef {
        name: "gamma_dup_instance",
        anchor: "G(1/6) G(2/3) = 2^(2/3) sqrt(pi) G(1/3)",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| {
            let lhs = gamma(1.0 / 6.0)? * gamma(2.0 / 3.0)?;
            sides(lhs, 2f64.powf(2.0 / 3.0) * std::f64::consts::PI.sqrt() * gamma(1.0 / 3.0)?)
        },
    },
    CheckDef {
        name: "beta_third",
        anchor: "B(1/3, 1/3) = G(1/3)^2/G(2/3)",
        mode: ErrorMode::Rel,
        tol: 1e-12,
        eval: |_| sides(beta(1.0 / 3.0, 1.0 / 3.0)?, gamma(1.0f64 / 3.0)?.powi(2) / gamma(2.0 / 3.0)?),
    },
];

/// Names of all registered checks, in report order.
pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|c| c.name).collect()
}

/// Runs every registered check. Checks are evaluated in parallel; the report
/// keeps registry order.
pub fn run_suite(cfg: &VerifyConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let checks: Vec<IdentityCheck> = REGISTRY
        .par_iter()
        .map(|c| {
            let tol = cfg.tolerance_for(c);
            match (c.eval)(cfg) {
                Ok(s) => IdentityCheck::evaluate(c.name, c.anchor, s.lhs, s.rhs, c.mode, tol, s.scale),
                Err(_) => IdentityCheck::errored(c.name, c.anchor, c.mode, tol),
            }
        })
        .collect();
    let failed = checks.iter().filter(|c| !c.passed).count();
    Ok(VerificationReport {
        total: checks.len(),
        failed,
        config_digest: cfg.digest(),
        seed: cfg.seed,
        checks,
    })
}
