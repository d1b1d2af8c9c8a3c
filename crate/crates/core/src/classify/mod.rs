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

//! Membership tests for the convexity classes, each returning a report
//! whose negative verdicts carry a replayable witness.

mod functions;
mod quadratic;
mod sets;
mod witness;

use std::fmt;
use std::time::{Duration, Instant};

pub use functions::{
    check_argmin_characterization, check_fn_integrally_convex, check_fn_lnat, check_fn_midpoint,
    check_fn_separable, check_fn_submodular, check_parallelogram, classify_chain, ChainVerdict,
    MidpointMode,
};
pub use quadratic::{classify_quadratic, QuadraticVerdict, SymmetricMatrix};
pub use sets::{check_set_integrally_convex, check_set_midpoint, SetMidpointMode};
pub use witness::{PairRange, ViolationWitness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub property: String,
    pub verdict: bool,
    pub witness: Option<ViolationWitness>,
    /// Pairs (or cells, or probes) examined before the verdict was reached.
    pub pairs_checked: u64,
    pub elapsed: Duration,
    pub note: Option<String>,
}

impl CheckReport {
    pub(crate) fn pass(property: &str, pairs_checked: u64, started: Instant) -> Self {
        CheckReport {
            property: property.to_string(),
            verdict: true,
            witness: None,
            pairs_checked,
            elapsed: started.elapsed(),
            note: None,
        }
    }

    pub(crate) fn fail(property: &str, witness: ViolationWitness, pairs_checked: u64, started: Instant) -> Self {
        CheckReport {
            property: property.to_string(),
            verdict: false,
            witness: Some(witness),
            pairs_checked,
            elapsed: started.elapsed(),
            note: None,
        }
    }

    pub(crate) fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// `verdict == false` exactly when a witness is present.
    pub fn is_consistent(&self) -> bool {
        self.verdict == self.witness.is_none()
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.property, if self.verdict { "true" } else { "false" })?;
        if let Some(w) = &self.witness {
            write!(f, " [{}] {}", w.kind(), w)?;
        }
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}
