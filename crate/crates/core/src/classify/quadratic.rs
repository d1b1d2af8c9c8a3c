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

use std::fmt;

use crate::error::{DcaError, Result};
use num_traits::Signed;

use crate::value::{format_rational, Rational};

/// Dense symmetric rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricMatrix {
    rows: Vec<Vec<Rational>>,
}

impl SymmetricMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(DcaError::DimensionMismatch { expected: n, got: r.len() });
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(DcaError::AsymmetricMatrix);
                }
            }
        }
        Ok(SymmetricMatrix { rows })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect())
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Principal submatrix on `idx`.
    pub fn principal(&self, idx: &[usize]) -> Result<SymmetricMatrix> {
        if let Some(&i) = idx.iter().find(|&&i| i >= self.dim()) {
            return Err(DcaError::InvalidArgument(format!("index {i} out of range for dimension {}", self.dim())));
        }
        Ok(SymmetricMatrix {
            rows: idx.iter().map(|&i| idx.iter().map(|&j| self.rows[i][j].clone()).collect()).collect(),
        })
    }

    /// `q_ii ≥ Σ_{j≠i} |q_ij|` for every row; implies a nonnegative diagonal.
    pub fn is_diagonally_dominant(&self) -> bool {
        (0..self.dim()).all(|i| {
            let off: Rational = (0..self.dim()).filter(|&j| j != i).map(|j| self.rows[i][j].abs()).sum();
            self.rows[i][i] >= off
        })
    }
}

impl fmt::Display for SymmetricMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let cells: Vec<String> = r.iter().map(format_rational).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Matrix criteria for `f(x, y) = [x; y]ᵀ Q [x; y]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QuadraticVerdict {
    /// `Q` diagonally dominant with nonnegative diagonal. Sufficient, not
    /// necessary, for integral convexity.
    pub ic_sufficient: bool,
    /// L♮-convex in `y` (iff).
    pub lnat_in_y: bool,
    /// M♮-convex in `y` (iff).
    pub mnat_in_y: bool,
}

impl fmt::Display for QuadraticVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "integrally convex (sufficient condition): {}; L♮ in y: {}; M♮ in y: {}",
            self.ic_sufficient, self.lnat_in_y, self.mnat_in_y
        )
    }
}

pub fn classify_quadratic(q: &SymmetricMatrix, y_block: &[usize]) -> Result<QuadraticVerdict> {
    let qyy = q.principal(y_block)?;
    let n = qyy.dim();
    let lnat = qyy.is_diagonally_dominant()
        && (0..n).all(|i| (0..n).all(|j| i == j || qyy.get(i, j) <= &Rational::from_integer(0.into())));
    let zero = Rational::from_integer(0.into());
    // i = j is not excluded: it forces q_ii ≥ q_ik.
    let mnat = qyy.rows().iter().flatten().all(|v| v >= &zero)
        && (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n)
                    .filter(|&k| k != i && k != j)
                    .all(|k| qyy.get(i, j) >= qyy.get(i, k).min(qyy.get(j, k)))
            })
        });
    Ok(QuadraticVerdict {
        ic_sufficient: q.is_diagonally_dominant(),
        lnat_in_y: lnat,
        mnat_in_y: mnat,
    })
}
