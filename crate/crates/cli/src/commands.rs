use std::f64::consts::PI;
use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Result};
use serde::Serialize;

use otp_rh::quadrature::inner_product;
use otp_rh::report::{fmt_f64, write_residual_csv};
use otp_rh::rhchain::asymptotics::{asymptotic_prediction, DEFAULT_N_REF};
use otp_rh::rhchain::lemma::lemma41_k;
use otp_rh::rhchain::theorem::{decay_fit, leg_norm, residual_sweep};
use otp_rh::rhchain::verify::{verify_all, HARD_STAGES};
use otp_rh::{ContourConfig, OtpSystem, RhChain, Side, SzegoData};

use crate::config::{DegreeRange, RunConfig};

/// Hard assertion for the jump stages of `rh-verify`.
pub const JUMP_TOL: f64 = 1e-8;
/// Normalized off-diagonal Gram entries of the monic family.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
pub const PRODUCT_TOL: f64 = 1e-10;
/// Relative deviation of the fitted decay slope from −r.
pub const SLOPE_REL_TOL: f64 = 0.05;
pub const SZEGO_POINTS: usize = 256;

pub const DEFAULT_OTP_N: usize = 4;
pub const DEFAULT_MOMENTS_K: usize = 16;
pub const DEFAULT_VERIFY_N: usize = 3;
pub const DEFAULT_SWEEP: DegreeRange = DegreeRange { lo: 2, hi: 8 };
pub const DEFAULT_ASYMPTOTIC_RANGE: DegreeRange = DegreeRange { lo: 3, hi: 8 };

/// One file to be written at the end of a run.
pub struct Artifact {
    pub name: &'static str,
    pub contents: String,
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub command: &'static str,
    pub weight_spec: String,
    pub n: serde_json::Value,
    pub r: Option<f64>,
    pub epsilon: Option<f64>,
    pub max_residual: Option<f64>,
    pub assertions_passed: bool,
    pub elapsed_ms: u128,
}

/// Result of a subcommand before anything touches the disk.
pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub n: serde_json::Value,
    pub contour: Option<ContourConfig>,
    pub max_residual: Option<f64>,
    /// (report file, diagnostic) for each failed hard assertion.
    pub failures: Vec<(&'static str, String)>,
}

impl Outcome {
    fn new(n: serde_json::Value) -> Self {
        Self {
            artifacts: Vec::new(),
            n,
            contour: None,
            max_residual: None,
            failures: Vec::new(),
        }
    }

    fn add(&mut self, name: &'static str, contents: String) {
        self.artifacts.push(Artifact { name, contents });
    }
}

fn degree_json(range: DegreeRange) -> serde_json::Value {
    match range.single() {
        Some(n) => n.into(),
        None => range.to_string().into(),
    }
}

fn contour(cfg: &RunConfig) -> Result<ContourConfig> {
    Ok(ContourConfig::new(&cfg.weight, cfg.r, cfg.epsilon, cfg.quad)?)
}

pub fn moments(cfg: &RunConfig) -> Result<Outcome> {
    let k_max = cfg.single_degree(DEFAULT_MOMENTS_K)?;
    let mu = cfg.weight.moments(k_max, &cfg.quad)?;
    let mut out = Outcome::new(k_max.into());
    let mut csv = String::from("k,re_mu,im_mu\n");
    for (k, m) in mu.iter().enumerate() {
        writeln!(csv, "{k},{},{}", fmt_f64(m.re), fmt_f64(m.im))?;
    }
    if !(mu[0].re > 0.0) {
        out.failures.push(("moments.csv", format!("mu_0 = {} is not positive", mu[0].re)));
    }
    out.add("moments.csv", csv);
    Ok(out)
}

pub fn otp(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.single_degree(DEFAULT_OTP_N)?;
    let sys = OtpSystem::build(&cfg.weight, n, &cfg.quad)?;
    // ϖ_j for j = 0..=2n
    let family: Vec<_> = (0..=2 * n)
        .map(|j| if j % 2 == 0 { sys.monic_first(j / 2) } else { sys.monic_second(j / 2 + 1) })
        .collect::<std::result::Result<_, _>>()?;

    let mut coeffs = String::from("poly_index,k,re_ck,im_ck\n");
    for (j, p) in family.iter().enumerate() {
        let m = p.degree_bound() as i64;
        for k in -m..=m {
            let c = p.coeff(k);
            writeln!(coeffs, "{j},{k},{},{}", fmt_f64(c.re), fmt_f64(c.im))?;
        }
    }

    let mut leading = String::from("n,alpha,beta,re_a,im_a\n");
    for m in 1..=n {
        let a = sys.a_const(m)?;
        writeln!(
            leading,
            "{m},{},{},{},{}",
            fmt_f64(sys.alpha(m)),
            fmt_f64(sys.beta(m)),
            fmt_f64(a.re),
            fmt_f64(a.im)
        )?;
    }

    let quad = cfg.quad.resolving(4 * n + 2);
    let mut norms = Vec::with_capacity(family.len());
    for p in &family {
        norms.push(inner_product(p, p, &cfg.weight, &quad)?);
    }
    // ϖ_1 repeats ϖ_0 (both are the constant 1), so it sits out the check
    let mut worst = 0.0f64;
    for i in (0..family.len()).filter(|&i| i != 1) {
        for j in (0..i).filter(|&j| j != 1) {
            let ip = inner_product(&family[i], &family[j], &cfg.weight, &quad)?;
            worst = worst.max(ip.abs() / (norms[i] * norms[j]).sqrt());
        }
    }

    let mut out = Outcome::new(n.into());
    out.max_residual = Some(worst);
    if !(worst < ORTHOGONALITY_TOL) {
        out.failures.push((
            "otp_coeffs.csv",
            format!("normalized orthogonality residual {worst:e} >= {ORTHOGONALITY_TOL:e}"),
        ));
    }
    out.add("otp_coeffs.csv", coeffs);
    out.add("leading.csv", leading);
    Ok(out)
}

pub fn szego(cfg: &RunConfig) -> Result<Outcome> {
    let sd = SzegoData::new(&cfg.weight, &cfg.quad)?;
    let e = (-2.0 * sd.constant()).exp();
    let mut csv = String::from("x,re_frakdp,im_frakdp,re_frakdm,im_frakdm,product_residual\n");
    let mut worst = 0.0f64;
    for j in 0..SZEGO_POINTS {
        let x = 2.0 * PI * j as f64 / SZEGO_POINTS as f64;
        let z = num_complex::Complex64::new(x, 0.0);
        let dp = sd.frak_d(Side::Plus, z)?;
        let dm = sd.frak_d(Side::Minus, z)?;
        let residual = (dp * dm - e * cfg.weight.eval_real(x)).norm();
        worst = worst.max(if residual.is_nan() { f64::INFINITY } else { residual });
        writeln!(
            csv,
            "{},{},{},{},{},{}",
            fmt_f64(x),
            fmt_f64(dp.re),
            fmt_f64(dp.im),
            fmt_f64(dm.re),
            fmt_f64(dm.im),
            fmt_f64(residual)
        )?;
    }
    let mut out = Outcome::new(serde_json::Value::Null);
    out.max_residual = Some(worst);
    if !(worst < PRODUCT_TOL) {
        out.failures
            .push(("szego.csv", format!("product residual {worst:e} >= {PRODUCT_TOL:e}")));
    }
    out.add("szego.csv", csv);
    Ok(out)
}

#[derive(Serialize)]
struct StageSummary<'a> {
    stage: &'a str,
    max_residual: f64,
    max_growth: f64,
    hard: bool,
    n: usize,
    r: f64,
    epsilon: f64,
    weight_spec: &'a str,
    notes: &'a [String],
}

pub fn rh_verify(cfg: &RunConfig) -> Result<Outcome> {
    let n = cfg.single_degree(DEFAULT_VERIFY_N)?;
    let cc = contour(cfg)?;
    let sys = OtpSystem::build(&cfg.weight, n, &cfg.quad)?;
    let sd = SzegoData::new(&cfg.weight, &cfg.quad)?;
    let chain = RhChain::new(&sys, &sd, n, &cc)?;
    let reports = verify_all(&chain)?;

    let mut residuals = Vec::new();
    write_residual_csv(&reports, &mut residuals)?;
    let stages: Vec<StageSummary> = reports
        .iter()
        .map(|rep| StageSummary {
            stage: &rep.stage,
            max_residual: rep.max_jump,
            max_growth: rep.max_growth,
            hard: HARD_STAGES.contains(&rep.stage.as_str()),
            n,
            r: cc.r,
            epsilon: cc.epsilon,
            weight_spec: &cfg.weight_spec,
            notes: &rep.notes,
        })
        .collect();

    let mut out = Outcome::new(n.into());
    out.contour = Some(cc);
    let mut worst = 0.0f64;
    for st in stages.iter().filter(|s| s.hard) {
        worst = worst.max(st.max_residual);
        if !(st.max_residual < JUMP_TOL) {
            out.failures.push((
                "stages.json",
                format!("{}: max residual {:e} >= {JUMP_TOL:e}", st.stage, st.max_residual),
            ));
        }
    }
    out.max_residual = Some(worst);
    out.add("residuals.csv", String::from_utf8(residuals)?);
    out.add("stages.json", serde_json::to_string_pretty(&stages)? + "\n");
    Ok(out)
}

pub fn decay_sweep(cfg: &RunConfig, n_ref: Option<usize>) -> Result<Outcome> {
    let range = cfg.degrees_or(DEFAULT_SWEEP);
    let cc = contour(cfg)?;
    let ns = range.degrees();
    let mut out = Outcome::new(degree_json(range));
    out.contour = Some(cc);
    let mut csv = String::from("n,norm_g_minus_i,k_norm,k_distance,eta_hat,fitted_slope\n");
    if ns.is_empty() {
        out.add("decay.csv", csv);
        return Ok(out);
    }
    if ns.len() < 2 {
        bail!("decay-sweep needs at least two degrees, got {range}");
    }
    let n_ref = n_ref.unwrap_or(DEFAULT_N_REF).max(range.hi);
    let sys = OtpSystem::build(&cfg.weight, n_ref, &cfg.quad)?;
    let sd = SzegoData::new(&cfg.weight, &cfg.quad)?;
    let fit = decay_fit(&sd, &ns, &cc)?;
    let sweep = residual_sweep(&ns, n_ref, |n| RhChain::new(&sys, &sd, n, &cc))?;
    for (&n, row) in ns.iter().zip(&sweep.rows) {
        let chain = RhChain::new(&sys, &sd, n, &cc)?;
        let k = lemma41_k(&chain, 0.0)?;
        writeln!(
            csv,
            "{n},{},{},{},{},{}",
            fmt_f64(leg_norm(&sd, n, &cc)?),
            fmt_f64(k.k.norm()),
            fmt_f64(k.distance_to_minus_half),
            fmt_f64(row.eta_hat),
            fmt_f64(fit.slope)
        )?;
    }
    let deviation = (fit.slope + cc.r).abs() / cc.r;
    out.max_residual = Some(deviation);
    if !(deviation < SLOPE_REL_TOL) {
        out.failures.push((
            "decay.csv",
            format!("fitted slope {} deviates from -r = {} by {deviation:.3}", fit.slope, -cc.r),
        ));
    }
    out.add("decay.csv", csv);
    Ok(out)
}

pub fn asymptotics(cfg: &RunConfig, n_ref: usize, points: &[f64]) -> Result<Outcome> {
    let range = cfg.degrees_or(DEFAULT_ASYMPTOTIC_RANGE);
    let cc = contour(cfg)?;
    let ns = range.degrees();
    let mut out = Outcome::new(degree_json(range));
    out.contour = Some(cc);
    let mut csv = String::from("n,x,re_predicted,im_predicted,re_actual,im_actual,error\n");
    if ns.is_empty() {
        out.add("asymptotics.csv", csv);
        return Ok(out);
    }
    if range.hi > n_ref {
        bail!("degree {} exceeds the reference degree {n_ref}", range.hi);
    }
    let sys = OtpSystem::build(&cfg.weight, n_ref, &cfg.quad)?;
    let sd = SzegoData::new(&cfg.weight, &cfg.quad)?;
    let reference = RhChain::new(&sys, &sd, n_ref, &cc)?;
    let mut worst = 0.0f64;
    for &n in &ns {
        let actual = sys.monic_first(n)?;
        for &x in points {
            let p = asymptotic_prediction(&reference, &sd, n, actual, x)?;
            worst = worst.max(if p.error.is_nan() { f64::INFINITY } else { p.error });
            writeln!(
                csv,
                "{n},{},{},{},{},{},{}",
                fmt_f64(x),
                fmt_f64(p.predicted.re),
                fmt_f64(p.predicted.im),
                fmt_f64(p.actual.re),
                fmt_f64(p.actual.im),
                fmt_f64(p.error)
            )?;
        }
    }
    out.max_residual = Some(worst);
    if !worst.is_finite() {
        out.failures
            .push(("asymptotics.csv", "prediction is not finite".to_string()));
    }
    out.add("asymptotics.csv", csv);
    Ok(out)
}

/// Default evaluation points x_j = 0.1 + jπ/4, none of them a zero of
/// cos nx for small n.
pub fn default_points() -> Vec<f64> {
    (0..8).map(|j| 0.1 + PI * j as f64 / 4.0).collect()
}

/// Writes every artifact and the summary, returning the summary path.
pub fn emit(cfg: &RunConfig, outcome: &Outcome, summary: &Summary) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.out)?;
    for a in &outcome.artifacts {
        std::fs::write(cfg.out.join(a.name), &a.contents)?;
    }
    let path = cfg.out.join("summary.json");
    std::fs::write(&path, serde_json::to_string_pretty(summary)? + "\n")?;
    Ok(path)
}

pub fn failure_line(cfg: &RunConfig, file: &str, detail: &str) -> String {
    format!("assertion failed: {detail} (report: {})", cfg.out.join(file).display())
}
