//   Copyright 2026 The dca Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.

//! JSON instance files. Rationals are strings `"p/q"` (or `"p"`), `+∞` is
//! `null`, and function values are listed densely over the box in
//! lexicographic order.

use serde::{Deserialize, Serialize};

use dca_core::classify::SymmetricMatrix;
use dca_core::value::{format_rational, parse_rational};
use dca_core::{DiscreteFunction, ExtendedValue, IntegerBox, LatticePoint, LatticeSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Set(SetFile),
    Function(FunctionFile),
    Quadratic(QuadraticFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetFile {
    pub dim: usize,
    pub points: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxFile {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionFile {
    pub dim: usize,
    #[serde(rename = "box")]
    pub bx: BoxFile,
    pub values: Vec<Option<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadraticFile {
    pub dim: usize,
    pub matrix: Vec<Vec<String>>,
    pub y_block: Vec<usize>,
}

/// A parsed instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Set(LatticeSet),
    Function(DiscreteFunction),
    Quadratic { matrix: SymmetricMatrix, y_block: Vec<usize> },
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Set(_) => "set",
            Instance::Function(_) => "function",
            Instance::Quadratic { .. } => "quadratic",
        }
    }

    pub fn to_file(&self) -> InstanceFile {
        match self {
            Instance::Set(s) => InstanceFile::Set(SetFile {
                dim: s.dim(),
                points: s.iter().map(|p| p.0.clone()).collect(),
            }),
            Instance::Function(f) => InstanceFile::Function(FunctionFile {
                dim: f.dim(),
                bx: BoxFile {
                    lo: f.domain_box().lo().0.clone(),
                    hi: f.domain_box().hi().0.clone(),
                },
                values: f.values().iter().map(|v| v.finite().map(format_rational)).collect(),
            }),
            Instance::Quadratic { matrix, y_block } => InstanceFile::Quadratic(QuadraticFile {
                dim: matrix.dim(),
                matrix: matrix.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
                y_block: y_block.clone(),
            }),
        }
    }

    /// Canonical JSON: sorted keys, reduced rationals, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self.to_file()).expect("plain data");
        let mut s = serde_json::to_string_pretty(&value).expect("plain data");
        s.push('\n');
        s
    }
}

/// Parses instance JSON. `max_dim` bounds the declared dimension.
pub fn parse_instance(text: &str, max_dim: usize) -> Result<Instance, String> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    from_file(&file, max_dim)
}

fn check_len(what: &str, expected: usize, got: usize) -> Result<(), String> {
    if expected == got {
        Ok(())
    } else {
        Err(format!("{what}: expected {expected} entries, got {got}"))
    }
}

pub fn from_file(file: &InstanceFile, max_dim: usize) -> Result<Instance, String> {
    let dim = match file {
        InstanceFile::Set(s) => s.dim,
        InstanceFile::Function(f) => f.dim,
        InstanceFile::Quadratic(q) => q.dim,
    };
    if dim == 0 {
        return Err("dim: must be at least 1".into());
    }
    if dim > max_dim {
        return Err(format!("dim: {dim} exceeds the limit {max_dim} (DCA_MAX_DIM)"));
    }
    match file {
        InstanceFile::Set(s) => {
            for (k, p) in s.points.iter().enumerate() {
                check_len(&format!("points[{k}]"), dim, p.len())?;
            }
            let set = LatticeSet::new(dim, s.points.iter().cloned().map(LatticePoint)).map_err(|e| e.to_string())?;
            Ok(Instance::Set(set))
        }
        InstanceFile::Function(f) => {
            check_len("box.lo", dim, f.bx.lo.len())?;
            check_len("box.hi", dim, f.bx.hi.len())?;
            let bx = IntegerBox::new(LatticePoint(f.bx.lo.clone()), LatticePoint(f.bx.hi.clone()))
                .map_err(|e| format!("box: {e}"))?;
            check_len("values", bx.len(), f.values.len())?;
            let values = f
                .values
                .iter()
                .enumerate()
                .map(|(k, v)| match v {
                    None => Ok(ExtendedValue::Infinity),
                    Some(s) => parse_rational(s).map(ExtendedValue::Finite).map_err(|e| format!("values[{k}]: {e}")),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let f = DiscreteFunction::new(bx, values).map_err(|e| format!("values: {e}"))?;
            Ok(Instance::Function(f))
        }
        InstanceFile::Quadratic(q) => {
            check_len("matrix", dim, q.matrix.len())?;
            let mut rows = Vec::with_capacity(dim);
            for (i, r) in q.matrix.iter().enumerate() {
                check_len(&format!("matrix[{i}]"), dim, r.len())?;
                let row = r
                    .iter()
                    .enumerate()
                    .map(|(j, s)| parse_rational(s).map_err(|e| format!("matrix[{i}][{j}]: {e}")))
                    .collect::<Result<Vec<_>, _>>()?;
                rows.push(row);
            }
            let matrix = SymmetricMatrix::new(rows).map_err(|e| format!("matrix: {e}"))?;
            if let Some(i) = q.y_block.iter().find(|&&i| i >= dim) {
                return Err(format!("y_block: index {i} out of range for dimension {dim}"));
            }
            Ok(Instance::Quadratic { matrix, y_block: q.y_block.clone() })
        }
    }
}
