//! On-disk formats: instance documents, report files, and CSV dumps.
//!
//! # Instance document
//!
//! ```json
//! {
//!   "n": 2,
//!   "objectives": [
//!     { "A": [[4,0],[0,-1]], "a": [0,0], "a0": 0,
//!       "B": [[0,0],[0,0]], "b": [0,0], "b0": 1 }
//!   ],
//!   "constraints": { "C": [[1,0]], "b": [1] }
//! }
//! ```
//!
//! `A`, `a`, `a0` are required for every objective. `B`, `b`, `b0` are each
//! optional and default to the constant denominator `g = 1` (`B = 0`,
//! `b = 0`, `b0 = 1`); `constraints` is optional and defaults to the whole
//! space. Malformed JSON and missing required keys are parse errors carrying
//! the file path and the offending key; shape and semantics problems are the
//! domain of [`crate::problem::validate_instance`].
//!
//! # Report file
//!
//! [`crate::radius::RadiusReport`] serialized as pretty JSON with a trailing
//! newline, written atomically (temp file + rename) so readers never observe
//! a torn report. Infinite distances are encoded as the strings `"inf"` /
//! `"-inf"`; every other number is a plain JSON number. Serialization is
//! deterministic: equal reports produce byte-identical files.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::directional::DirectionProfile;
use crate::problem::{LinearConstraints, QuadraticForm, RatioObjective, VqfpInstance};
use crate::radius::RadiusReport;

/// Serde adapter for extended-real values: finite numbers stay numbers,
/// infinities become the strings `"inf"` / `"-inf"`.
pub mod ext_real {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                other => Err(D::Error::custom(format!(
                    "expected a number, \"inf\", or \"-inf\", got {other:?}"
                ))),
            },
        }
    }
}

/// File-level failures, each carrying the path it happened on.
#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

#[derive(Serialize, Deserialize)]
struct ObjectiveDoc {
    #[serde(rename = "A")]
    a_mat: Vec<Vec<f64>>,
    a: Vec<f64>,
    a0: f64,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    b_mat: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    b0: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct ConstraintsDoc {
    #[serde(rename = "C")]
    c: Vec<Vec<f64>>,
    b: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct InstanceDoc {
    n: usize,
    objectives: Vec<ObjectiveDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constraints: Option<ConstraintsDoc>,
}

fn doc_to_instance(doc: InstanceDoc) -> VqfpInstance {
    let n = doc.n;
    let objectives = doc
        .objectives
        .into_iter()
        .map(|o| RatioObjective {
            numerator: QuadraticForm { quad: o.a_mat, lin: o.a, constant: o.a0 },
            denominator: QuadraticForm {
                quad: o.b_mat.unwrap_or_else(|| crate::linalg::zeros(n)),
                lin: o.b.unwrap_or_else(|| vec![0.0; n]),
                constant: o.b0.unwrap_or(1.0),
            },
        })
        .collect();
    let constraints = doc
        .constraints
        .map(|c| LinearConstraints { mat: c.c, rhs: c.b });
    VqfpInstance { n, objectives, constraints }
}

fn instance_to_doc(instance: &VqfpInstance) -> InstanceDoc {
    let trivial = |form: &QuadraticForm| {
        form.quad.iter().all(|r| r.iter().all(|&v| v == 0.0)) && form.lin.iter().all(|&v| v == 0.0)
    };
    InstanceDoc {
        n: instance.n,
        objectives: instance
            .objectives
            .iter()
            .map(|o| {
                let g_trivial = trivial(&o.denominator) && o.denominator.constant == 1.0;
                ObjectiveDoc {
                    a_mat: o.numerator.quad.clone(),
                    a: o.numerator.lin.clone(),
                    a0: o.numerator.constant,
                    b_mat: (!g_trivial).then(|| o.denominator.quad.clone()),
                    b: (!g_trivial).then(|| o.denominator.lin.clone()),
                    b0: (!g_trivial).then_some(o.denominator.constant),
                }
            })
            .collect(),
        constraints: instance
            .constraints
            .as_ref()
            .map(|c| ConstraintsDoc { c: c.mat.clone(), b: c.rhs.clone() }),
    }
}

fn read_to_string(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

/// Atomic file write: the content lands in a sibling temp file first and is
/// renamed over the destination, so a crash mid-write cannot leave a
/// half-written file behind.
fn write_atomic(path: &Path, content: &str) -> Result<(), IoError> {
    let wrap = |source: std::io::Error| IoError::Write {
        path: path.display().to_string(),
        source,
    };
    let tmp = path.with_extension(match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => format!("{ext}.tmp"),
        None => "tmp".to_string(),
    });
    {
        let mut file = fs::File::create(&tmp).map_err(wrap)?;
        file.write_all(content.as_bytes()).map_err(wrap)?;
        file.sync_all().map_err(wrap)?;
    }
    fs::rename(&tmp, path).map_err(wrap)
}

/// Read and decode an instance document.
pub fn read_instance(path: &Path) -> Result<VqfpInstance, IoError> {
    let text = read_to_string(path)?;
    let doc: InstanceDoc = serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })?;
    Ok(doc_to_instance(doc))
}

/// Encode and atomically write an instance document. Trivial denominators
/// (`g = 1`) are omitted from the output, keeping files minimal.
pub fn write_instance(path: &Path, instance: &VqfpInstance) -> Result<(), IoError> {
    let doc = instance_to_doc(instance);
    let mut text = serde_json::to_string_pretty(&doc).expect("instance documents always serialize");
    text.push('\n');
    write_atomic(path, &text)
}

/// Deterministic pretty-JSON encoding of a report, with trailing newline.
pub fn report_to_json(report: &RadiusReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("reports always serialize");
    text.push('\n');
    text
}

/// Atomically write a report file.
pub fn write_report(path: &Path, report: &RadiusReport) -> Result<(), IoError> {
    write_atomic(path, &report_to_json(report))
}

/// Read a report file back.
pub fn read_report(path: &Path) -> Result<RadiusReport, IoError> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text).map_err(|source| IoError::Parse {
        path: path.display().to_string(),
        source,
    })
}

/// Render a float with 17 significant digits — enough to round-trip every
/// `f64` exactly; infinities render as `inf` / `-inf`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV header for [`write_profiles_csv`] in dimension `n`.
pub fn profiles_csv_header(n: usize) -> String {
    let mut cols: Vec<String> = (1..=n).map(|k| format!("d_{k}")).collect();
    for name in [
        "i",
        "l_i",
        "q_i",
        "label",
        "lambda2",
        "lambda1",
        "lambda_limit",
        "interval_lo",
        "interval_hi",
        "cond1",
        "cond2",
    ] {
        cols.push(name.to_string());
    }
    cols.join(",")
}

/// Full profile CSV document: header plus one row per (direction,
/// objective) pair. Floats carry 17 significant digits; window columns are
/// empty when the window is, and `cond1`/`cond2` are 0/1 flags.
pub fn profiles_csv(n: usize, profiles: &[DirectionProfile]) -> String {
    let mut out = String::new();
    out.push_str(&profiles_csv_header(n));
    out.push('\n');
    for profile in profiles {
        for (i, o) in profile.objectives.iter().enumerate() {
            let mut cols: Vec<String> = profile.direction.iter().map(|&v| format_float(v)).collect();
            cols.push((i + 1).to_string());
            cols.push(format_float(o.linear));
            cols.push(format_float(o.quadratic));
            cols.push(o.label.to_string());
            cols.push(profile.lambda2.map(format_float).unwrap_or_default());
            cols.push(format_float(profile.lambda1));
            cols.push(format_float(profile.lambda_limit));
            cols.push(profile.interval.map(|w| format_float(w.lo)).unwrap_or_default());
            cols.push(profile.interval.map(|w| format_float(w.hi)).unwrap_or_default());
            cols.push(u8::from(profile.condition1_degenerate).to_string());
            cols.push(u8::from(profile.condition2_violated).to_string());
            out.push_str(&cols.join(","));
            out.push('\n');
        }
    }
    out
}

/// Dump sweep profiles as a CSV file (see [`profiles_csv`]).
pub fn write_profiles_csv(path: &Path, n: usize, profiles: &[DirectionProfile]) -> Result<(), IoError> {
    write_atomic(path, &profiles_csv(n, profiles))
}

/// Atomically write arbitrary text — the plumbing other CSV emitters share.
pub fn write_text(path: &Path, content: &str) -> Result<(), IoError> {
    write_atomic(path, content)
}
