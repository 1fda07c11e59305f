//! Residual reports and their CSV form.

use std::io::{self, Write};

use num_complex::Complex64;

/// Floats are written with 17 significant digits.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleKind {
    Jump,
    Growth,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub kind: SampleKind,
    pub point: Complex64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub stage: String,
    pub grid: String,
    pub max_jump: f64,
    pub max_growth: f64,
    pub worst_point: Option<Complex64>,
    pub samples: Vec<Sample>,
    /// Measured quantities that are reported rather than asserted.
    pub notes: Vec<String>,
}

impl ResidualReport {
    pub fn new(stage: impl Into<String>, grid: impl Into<String>) -> Self {
        Self {
            stage: stage.into(),
            grid: grid.into(),
            max_jump: 0.0,
            max_growth: 0.0,
            worst_point: None,
            samples: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn record_jump(&mut self, point: Complex64, residual: f64) {
        // NaN must never hide behind a max
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        if residual > self.max_jump || self.worst_point.is_none() {
            self.max_jump = self.max_jump.max(residual);
            self.worst_point = Some(point);
        }
        self.samples.push(Sample {
            kind: SampleKind::Jump,
            point,
            residual,
        });
    }

    pub fn record_growth(&mut self, point: Complex64, residual: f64) {
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        self.max_growth = self.max_growth.max(residual);
        self.samples.push(Sample {
            kind: SampleKind::Growth,
            point,
            residual,
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }
}

pub const RESIDUAL_CSV_HEADER: &str = "stage,grid_point_re,grid_point_im,residual";

/// One row per sample, growth samples tagged `<stage>:growth`.
pub fn write_residual_csv<W: Write>(reports: &[ResidualReport], mut out: W) -> io::Result<()> {
    writeln!(out, "{RESIDUAL_CSV_HEADER}")?;
    for rep in reports {
        for s in &rep.samples {
            let stage = match s.kind {
                SampleKind::Jump => rep.stage.clone(),
                SampleKind::Growth => format!("{}:growth", rep.stage),
            };
            writeln!(
                out,
                "{},{},{},{}",
                csv_field(&stage),
                fmt_f64(s.point.re),
                fmt_f64(s.point.im),
                fmt_f64(s.residual)
            )?;
        }
    }
    Ok(())
}

/// Quote a field if it contains a comma or quote.
pub fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
