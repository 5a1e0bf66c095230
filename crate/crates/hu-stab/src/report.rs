//! JSON report envelope and serialization helpers.
//!
//! Every command emits one JSON document under the versioned schema
//! `hu-stab/1`. Reports are deterministic: struct fields serialize in
//! declaration order, floats through the shortest round-trip form, and all
//! randomness is pinned by the recorded seed — identical inputs produce
//! byte-identical output.

use std::path::Path;

use serde::Serialize;

use crate::mat::{Mat, Tolerances};

pub const SCHEMA: &str = "hu-stab/1";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A real number that may be ±∞ or undefined; JSON has no literal for these,
/// so they serialize as the strings "inf", "-inf" and "undefined".
#[derive(Clone, Copy, Debug)]
pub enum JsonReal {
    Finite(f64),
    Inf,
    NegInf,
    Undefined,
}

impl From<f64> for JsonReal {
    fn from(x: f64) -> Self {
        if x.is_nan() {
            JsonReal::Undefined
        } else if x == f64::INFINITY {
            JsonReal::Inf
        } else if x == f64::NEG_INFINITY {
            JsonReal::NegInf
        } else {
            JsonReal::Finite(x)
        }
    }
}

impl Serialize for JsonReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            JsonReal::Finite(x) => s.serialize_f64(*x),
            JsonReal::Inf => s.serialize_str("inf"),
            JsonReal::NegInf => s.serialize_str("-inf"),
            JsonReal::Undefined => s.serialize_str("undefined"),
        }
    }
}

/// Matrix payload: shape plus row-major entries as [re, im] pairs.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl From<&Mat> for MatrixJson {
    fn from(m: &Mat) -> Self {
        let entries = (0..m.rows())
            .map(|i| {
                (0..m.cols())
                    .map(|j| {
                        let z = m[(i, j)];
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixJson {
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }
}

/// Provenance of one input file.
#[derive(Clone, Debug, Serialize)]
pub struct InputInfo {
    pub path: String,
    pub sha256: String,
    pub rows: usize,
    pub cols: usize,
}

impl InputInfo {
    pub fn new(path: &Path, sha256: String, m: &Mat) -> Self {
        InputInfo {
            path: path.display().to_string(),
            sha256,
            rows: m.rows(),
            cols: m.cols(),
        }
    }
}

/// Common envelope wrapped around every command body.
#[derive(Debug, Serialize)]
pub struct Envelope<T: Serialize> {
    pub schema: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub inputs: Vec<InputInfo>,
    #[serde(flatten)]
    pub body: T,
}

impl<T: Serialize> Envelope<T> {
    pub fn new(
        command: &'static str,
        seed: u64,
        tolerances: Tolerances,
        inputs: Vec<InputInfo>,
        body: T,
    ) -> Self {
        Envelope {
            schema: SCHEMA,
            version: VERSION,
            command,
            seed,
            tolerances,
            inputs,
            body,
        }
    }

    pub fn to_json(&self, compact: bool) -> String {
        let mut text = if compact {
            serde_json::to_string(self).expect("report serialization")
        } else {
            serde_json::to_string_pretty(self).expect("report serialization")
        };
        text.push('\n');
        text
    }
}
