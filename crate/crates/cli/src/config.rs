use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use serde::Deserialize;

use otp_rh::weights::PeriodicWeight;
use otp_rh::QuadratureConfig;

pub const TOL_ENV: &str = "OTP_RH_QUAD_TOL";

/// Options shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// Weight spec: const, cos:a, poisson:rho or exptrig:c1,c2,...
    #[arg(long)]
    pub weight: Option<String>,
    /// Degree, or an inclusive range such as 2..8
    #[arg(long)]
    pub n: Option<String>,
    /// Height of the shifted contours L_r and L_-r
    #[arg(long)]
    pub r: Option<f64>,
    /// Collar half-width around the shifted contours
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Quadrature tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Output directory
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// TOML file with any of the keys weight, n, r, epsilon, tol, out
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    weight: Option<String>,
    n: Option<FileDegree>,
    r: Option<f64>,
    epsilon: Option<f64>,
    tol: Option<f64>,
    out: Option<PathBuf>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum FileDegree {
    One(usize),
    Text(String),
}

/// An inclusive degree range; a single degree is a range of length one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: usize,
    pub hi: usize,
}

impl DegreeRange {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
            None => (s, s),
        };
        let lo: usize = lo.parse().with_context(|| format!("bad degree {lo:?} in {s:?}"))?;
        let hi: usize = hi.parse().with_context(|| format!("bad degree {hi:?} in {s:?}"))?;
        Ok(Self { lo, hi })
    }

    pub fn single(self) -> Option<usize> {
        (self.lo == self.hi).then_some(self.lo)
    }

    pub fn degrees(self) -> Vec<usize> {
        (self.lo..=self.hi).collect()
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.single() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}..{}", self.lo, self.hi),
        }
    }
}

/// Fully resolved settings: flag, then config file, then environment
/// (tolerance only), then default.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub weight_spec: String,
    pub weight: PeriodicWeight,
    pub n: Option<DegreeRange>,
    pub r: Option<f64>,
    pub epsilon: Option<f64>,
    pub quad: QuadratureConfig,
    pub out: PathBuf,
}

fn read_file(path: &Path) -> Result<FileConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self> {
        let file = match &args.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let weight_spec = match args.weight.clone().or(file.weight) {
            Some(w) => w,
            None => bail!("no weight given (use --weight or the config file)"),
        };
        let weight = PeriodicWeight::parse(&weight_spec)?;

        let n = match (&args.n, file.n) {
            (Some(s), _) => Some(DegreeRange::parse(s)?),
            (None, Some(FileDegree::One(n))) => Some(DegreeRange { lo: n, hi: n }),
            (None, Some(FileDegree::Text(s))) => Some(DegreeRange::parse(&s)?),
            (None, None) => None,
        };

        let tol = match args.tol.or(file.tol) {
            Some(t) => t,
            None => match std::env::var(TOL_ENV) {
                Ok(v) => v.trim().parse().with_context(|| format!("{TOL_ENV}={v:?} is not a number"))?,
                Err(_) => QuadratureConfig::default().tol,
            },
        };
        let quad = QuadratureConfig::with_tol(tol)?;

        Ok(Self {
            weight_spec,
            weight,
            n,
            r: args.r.or(file.r),
            epsilon: args.epsilon.or(file.epsilon),
            quad,
            out: args.out.clone().or(file.out).unwrap_or_else(|| PathBuf::from(".")),
        })
    }

    pub fn degrees_or(&self, default: DegreeRange) -> DegreeRange {
        self.n.unwrap_or(default)
    }

    pub fn single_degree(&self, default: usize) -> Result<usize> {
        match self.n {
            None => Ok(default),
            Some(range) => match range.single() {
                Some(n) => Ok(n),
                None => bail!("this command takes a single degree, got {range}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(DegreeRange::parse("2..8").unwrap(), DegreeRange { lo: 2, hi: 8 });
        assert_eq!(DegreeRange::parse("2..=8").unwrap(), DegreeRange { lo: 2, hi: 8 });
        assert_eq!(DegreeRange::parse(" 5 ").unwrap().single(), Some(5));
        assert!(DegreeRange::parse("a..3").is_err());
        assert!(DegreeRange::parse("5..4").unwrap().degrees().is_empty());
        assert_eq!(DegreeRange::parse("2..8").unwrap().to_string(), "2..8");
    }

    #[test]
    fn flag_beats_file() {
        let dir = std::env::temp_dir().join(format!("otp-rh-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(&path, "weight = \"cos:0.5\"\nn = \"2..4\"\nr = 0.3\ntol = 1e-10\n").unwrap();
        let args = CommonArgs {
            r: Some(0.4),
            config: Some(path.clone()),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(&args).unwrap();
        assert_eq!(cfg.weight_spec, "cos:0.5");
        assert_eq!(cfg.n, Some(DegreeRange { lo: 2, hi: 4 }));
        assert_eq!(cfg.r, Some(0.4));
        assert_eq!(cfg.quad.tol, 1e-10);
        std::fs::write(&path, "wieght = \"const\"\n").unwrap();
        assert!(RunConfig::resolve(&args).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
