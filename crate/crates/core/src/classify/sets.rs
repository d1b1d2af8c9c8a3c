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

use std::time::Instant;

use crate::error::{DcaError, Result};
use crate::geometry::CellTester;
use crate::lattice::{rounded_midpoints, LatticeSet};

use super::witness::{PairRange, ViolationWitness};
use super::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetMidpointMode {
    /// L♮-convexity: every pair.
    Lnat,
    /// Discrete midpoint convexity: pairs with `‖x - y‖∞ ≥ 2`.
    Dmc,
}

impl SetMidpointMode {
    fn range(self) -> PairRange {
        match self {
            SetMidpointMode::Lnat => PairRange::All,
            SetMidpointMode::Dmc => PairRange::AtLeastTwo,
        }
    }
}

/// Cell by cell, `conv(S) ∩ [a, a+1] ⊆ conv(S ∩ [a, a+1])`. The witness
/// is the first hole in lexicographic cell order.
pub fn check_set_integrally_convex(set: &LatticeSet) -> Result<CheckReport> {
    const NAME: &str = "integrally-convex-set";
    let started = Instant::now();
    if set.is_empty() {
        return Err(DcaError::EmptySet);
    }
    if set.is_box() {
        return Ok(CheckReport::pass(NAME, 0, started).with_note("box"));
    }
    let mut tester = CellTester::new(set)?;
    let mut cells = 0;
    for a in tester.cells() {
        cells += 1;
        if let Some(cert) = tester.test_cell(&a) {
            return Ok(CheckReport::fail(NAME, ViolationWitness::HolePoint(cert), cells, started));
        }
    }
    Ok(CheckReport::pass(NAME, cells, started))
}

pub fn check_set_midpoint(set: &LatticeSet, mode: SetMidpointMode) -> Result<CheckReport> {
    let name = match mode {
        SetMidpointMode::Lnat => "lnat-set",
        SetMidpointMode::Dmc => "dmc-set",
    };
    let started = Instant::now();
    if set.is_empty() {
        return Err(DcaError::EmptySet);
    }
    let range = mode.range();
    let floor_dist = if range == PairRange::All { 1 } else { 2 };
    let pts: Vec<_> = set.iter().collect();
    let mut pairs = 0;
    // nearest violating pair wins; ties go to lexicographic (x, y)
    let mut best: Option<(i64, ViolationWitness)> = None;
    'outer: for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if !range.admits(x, y) {
                continue;
            }
            pairs += 1;
            let dist = x.dist_inf(y);
            if best.as_ref().is_some_and(|(d, _)| *d <= dist) {
                continue;
            }
            let (up, down) = rounded_midpoints(x, y)?;
            let missing: Vec<_> = [up, down].into_iter().filter(|p| !set.contains(p)).collect();
            if !missing.is_empty() {
                let w = ViolationWitness::MidpointPair {
                    range,
                    x: (*x).clone(),
                    y: (*y).clone(),
                    missing,
                };
                best = Some((dist, w));
                if dist == floor_dist {
                    break 'outer;
                }
            }
        }
    }
    Ok(match best {
        Some((_, w)) => CheckReport::fail(name, w, pairs, started),
        None => CheckReport::pass(name, pairs, started),
    })
}
