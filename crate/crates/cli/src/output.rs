//! Serialized documents and the fixed number format.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use deformed_coulomb::Picture;
use serde::{Deserialize, Serialize};

use crate::config::Format;
use crate::{CliError, OUTPUT_DIR_ENV};

/// Rounds to 12 significant digits; `-0` becomes `0`.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest decimal that reads back as [`round12`]`(x)`, always with `.` as
/// the decimal separator.
pub fn fmt_num(x: f64) -> String {
    let r = round12(x);
    if r.is_nan() {
        "nan".into()
    } else if r.is_infinite() {
        if r > 0.0 { "inf" } else { "-inf" }.into()
    } else if r == 0.0 || (1e-4..1e12).contains(&r.abs()) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingDoc {
    pub delta: f64,
    pub lambda: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateDoc {
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub energy: f64,
    pub g_k: f64,
    pub s_k: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountsDoc {
    pub total: usize,
    /// Number of states in channel `l`, indexed by `l`.
    pub per_l: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumDoc {
    pub picture: String,
    #[serde(rename = "Z")]
    pub z: f64,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub banner: Option<String>,
    pub states: Vec<StateDoc>,
    pub l_max: Option<u32>,
    pub counts: Option<CountsDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleDoc {
    pub rho: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WavefnDoc {
    pub picture: String,
    #[serde(rename = "Z")]
    pub z: f64,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingDoc>,
    pub n: u32,
    pub k: u32,
    pub l: u32,
    pub energy: f64,
    pub norm_audit: f64,
    pub samples: Vec<SampleDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    /// `None` when the check could not be evaluated.
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub picture: String,
    #[serde(rename = "Z")]
    pub z: f64,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ordering: Option<OrderingDoc>,
    pub passed: bool,
    pub checks: Vec<CheckDoc>,
}

pub fn ordering_doc(picture: Picture) -> Option<OrderingDoc> {
    picture.ordering().map(|o| OrderingDoc {
        delta: round12(o.delta),
        lambda: round12(o.lambda),
    })
}

pub trait Tabular {
    fn header(&self) -> Vec<&'static str>;
    fn rows(&self) -> Vec<Vec<String>>;
}

impl Tabular for SpectrumDoc {
    fn header(&self) -> Vec<&'static str> {
        vec!["n", "k", "l", "energy", "g_k", "s_k"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.states
            .iter()
            .map(|s| {
                vec![
                    s.n.to_string(),
                    s.k.to_string(),
                    s.l.to_string(),
                    fmt_num(s.energy),
                    fmt_num(s.g_k),
                    fmt_num(s.s_k),
                ]
            })
            .collect()
    }
}

impl Tabular for WavefnDoc {
    fn header(&self) -> Vec<&'static str> {
        vec!["rho", "value", "norm_audit"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        let audit = fmt_num(self.norm_audit);
        self.samples
            .iter()
            .map(|s| vec![fmt_num(s.rho), fmt_num(s.value), audit.clone()])
            .collect()
    }
}

impl Tabular for VerifyDoc {
    fn header(&self) -> Vec<&'static str> {
        vec!["check", "measured", "tolerance", "passed"]
    }

    fn rows(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                vec![
                    c.name.clone(),
                    fmt_num(c.measured.unwrap_or(f64::INFINITY)),
                    fmt_num(c.tolerance),
                    c.passed.to_string(),
                ]
            })
            .collect()
    }
}

pub fn render<D: Serialize + Tabular>(doc: &D, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(doc).map_err(|e| CliError::Config(e.to_string()))?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(Vec::new());
            let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
                w.write_record(doc.header())?;
                for row in doc.rows() {
                    w.write_record(&row)?;
                }
                w.flush()?;
                Ok(())
            };
            write(&mut w).map_err(|e| CliError::Io(io::Error::other(e)))?;
            w.into_inner().map_err(|e| CliError::Io(io::Error::other(e.to_string())))
        }
    }
}

/// Where output goes: `None` means stdout.
pub fn resolve_target(output: Option<&Path>, env_dir: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    match (output, env_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(dir)) => Some(dir.join(format!("{command}.{}", format.extension()))),
        (None, None) => None,
    }
}

pub fn env_output_dir() -> Option<PathBuf> {
    std::env::var_os(OUTPUT_DIR_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

pub fn emit(bytes: &[u8], target: Option<&Path>) -> Result<(), CliError> {
    match target {
        Some(path) => {
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                fs::create_dir_all(parent)?;
            }
            fs::write(path, bytes)?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
        }
    }
    Ok(())
}
