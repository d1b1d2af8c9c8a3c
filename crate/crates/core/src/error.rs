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

use thiserror::Error;

use crate::geometry::Halfspace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DcaError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("invalid box: lower corner exceeds upper corner")]
    InvalidBox,
    #[error("empty effective domain")]
    EmptyDomain,
    #[error("empty set")]
    EmptySet,
    #[error("points are identical; no step decomposition exists")]
    IdenticalPoints,
    #[error("point lies outside the function's box")]
    OutsideBox,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not symmetric")]
    AsymmetricMatrix,
    #[error("inconsistent class verdicts: {0}")]
    InconsistentChain(String),
    #[error("point is not in the convex hull; separated by {0}")]
    NotInHull(Box<Halfspace>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = DcaError> = std::result::Result<T, E>;
