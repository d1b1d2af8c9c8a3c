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

//! Violation witnesses and their replay.
//!
//! Replay re-derives the violated inequality from the raw table (or set)
//! using only lattice arithmetic and the data carried by the witness; it
//! never calls back into a classifier.

use std::fmt;

use crate::function::DiscreteFunction;
use crate::geometry::{AffineMinorant, ConvexCombination, HoleCertificate};
use crate::lattice::{
    decompose_difference, neighborhood_box, rounded_midpoints, LatticePoint, LatticeSet, RationalPoint,
};
use crate::value::{rat, ExtendedValue, Rational};

/// Which pairs a midpoint condition quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairRange {
    /// Every pair of distinct points.
    All,
    /// `‖x - y‖∞ ≥ 2`.
    AtLeastTwo,
    /// `‖x - y‖∞ = 2`.
    ExactlyTwo,
}

impl PairRange {
    pub fn admits(self, x: &LatticePoint, y: &LatticePoint) -> bool {
        let d = x.dist_inf(y);
        match self {
            PairRange::All => d >= 1,
            PairRange::AtLeastTwo => d >= 2,
            PairRange::ExactlyTwo => d == 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PairRange::All => "all",
            PairRange::AtLeastTwo => "dist>=2",
            PairRange::ExactlyTwo => "dist=2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationWitness {
    /// Set midpoint condition: `x, y ∈ S` but a rounded midpoint is not.
    MidpointPair {
        range: PairRange,
        x: LatticePoint,
        y: LatticePoint,
        missing: Vec<LatticePoint>,
    },
    /// Function midpoint inequality `f(x)+f(y) < f(⌈m⌉)+f(⌊m⌋)`.
    FunctionMidpointPair {
        range: PairRange,
        x: LatticePoint,
        y: LatticePoint,
        up: LatticePoint,
        down: LatticePoint,
        values: [ExtendedValue; 4],
    },
    /// A point of `conv(S)` outside `conv(S ∩ N(point))`.
    HolePoint(HoleCertificate),
    /// `f(x)+f(y) < f(x∨y)+f(x∧y)`.
    SubmodularPair {
        x: LatticePoint,
        y: LatticePoint,
        values: [ExtendedValue; 4],
    },
    /// `f̃((x+y)/2) > (f(x)+f(y))/2` at `‖x - y‖∞ = 2`, with an affine
    /// minorant certifying the left side from below.
    EnvelopeGap {
        x: LatticePoint,
        y: LatticePoint,
        fx: Rational,
        fy: Rational,
        extension: Rational,
        combination: ConvexCombination,
        minorant: AffineMinorant,
    },
    /// `f(x)+f(y) < f(x+d)+f(y-d)` for `d` a partial step sum.
    ParallelogramPair {
        x: LatticePoint,
        y: LatticePoint,
        steps: Vec<usize>,
        d: LatticePoint,
        values: [ExtendedValue; 4],
    },
    /// `argmin f[-p]` has a hole.
    ArgminHole {
        probe: Vec<Rational>,
        hole: HoleCertificate,
    },
    /// Effective domain is not a box: `point` lies in its bounding box but
    /// outside the domain.
    DomainNotBox { point: LatticePoint },
    /// Additive decomposition fails at `point`.
    SeparableIdentity {
        point: LatticePoint,
        value: Rational,
        additive: Rational,
    },
    /// `φ_axis(t-1) + φ_axis(t+1) < 2 φ_axis(t)`.
    SeparableCurvature { axis: usize, t: i64, values: [Rational; 3] },
}

impl ViolationWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            ViolationWitness::MidpointPair { .. } | ViolationWitness::FunctionMidpointPair { .. } => {
                "midpoint-pair"
            }
            ViolationWitness::HolePoint(_) => "hole-point",
            ViolationWitness::SubmodularPair { .. } => "submodular-pair",
            ViolationWitness::EnvelopeGap { .. } => "envelope-gap",
            ViolationWitness::ParallelogramPair { .. } => "parallelogram-pair",
            ViolationWitness::ArgminHole { .. } => "argmin-hole",
            ViolationWitness::DomainNotBox { .. } => "domain-not-box",
            ViolationWitness::SeparableIdentity { .. } => "separable-identity",
            ViolationWitness::SeparableCurvature { .. } => "separable-curvature",
        }
    }

    /// Replays against a set through its indicator function.
    pub fn replay_set(&self, set: &LatticeSet) -> bool {
        match DiscreteFunction::indicator(set) {
            Ok(f) => self.replay(&f),
            Err(_) => false,
        }
    }

    /// `true` iff the witness reproduces its violation on `f`.
    pub fn replay(&self, f: &DiscreteFunction) -> bool {
        let dom = f.effective_domain();
        match self {
            ViolationWitness::MidpointPair { range, x, y, missing } => {
                let Ok((up, down)) = rounded_midpoints(x, y) else {
                    return false;
                };
                let actual: Vec<LatticePoint> =
                    [up, down].into_iter().filter(|p| !dom.contains(p)).collect();
                dom.contains(x)
                    && dom.contains(y)
                    && range.admits(x, y)
                    && !actual.is_empty()
                    && missing.iter().all(|p| actual.contains(p))
            }
            ViolationWitness::FunctionMidpointPair { range, x, y, up, down, values } => {
                let Ok((u, d)) = rounded_midpoints(x, y) else {
                    return false;
                };
                let recomputed = [f.value(x), f.value(y), f.value(&u), f.value(&d)];
                u == *up
                    && d == *down
                    && range.admits(x, y)
                    && recomputed == *values
                    && &recomputed[0] + &recomputed[1] < &recomputed[2] + &recomputed[3]
            }
            ViolationWitness::HolePoint(cert) => cert.verify(&dom),
            ViolationWitness::SubmodularPair { x, y, values } => {
                let recomputed = [f.value(x), f.value(y), f.value(&x.join(y)), f.value(&x.meet(y))];
                recomputed == *values && &recomputed[0] + &recomputed[1] < &recomputed[2] + &recomputed[3]
            }
            ViolationWitness::EnvelopeGap { x, y, fx, fy, minorant, .. } => {
                if x.dist_inf(y) != 2 || f.finite_value(x) != Some(fx) || f.finite_value(y) != Some(fy) {
                    return false;
                }
                let m = RationalPoint::midpoint(x, y);
                let below = neighborhood_box(&m).points().all(|p| match f.finite_value(&p) {
                    Some(v) => minorant.eval_lattice(&p) <= *v,
                    None => true,
                });
                below && minorant.eval(&m) * rat(2) > fx + fy
            }
            ViolationWitness::ParallelogramPair { x, y, steps, d, values } => {
                let Ok(dec) = decompose_difference(x, y) else {
                    return false;
                };
                if steps.iter().any(|&k| k >= dec.m()) || dec.partial_sum(steps) != *d {
                    return false;
                }
                let recomputed = [f.value(x), f.value(y), f.value(&x.add(d)), f.value(&y.sub(d))];
                dom.contains(x)
                    && dom.contains(y)
                    && recomputed == *values
                    && &recomputed[0] + &recomputed[1] < &recomputed[2] + &recomputed[3]
            }
            ViolationWitness::ArgminHole { probe, hole } => {
                if probe.len() != f.dim() {
                    return false;
                }
                let tilted: Vec<(LatticePoint, Rational)> = f
                    .finite_entries()
                    .map(|(p, v)| {
                        let t = v - p.to_rational().dot(probe);
                        (p, t)
                    })
                    .collect();
                let Some(min) = tilted.iter().map(|(_, v)| v).min() else {
                    return false;
                };
                let argmin = LatticeSet::new(
                    f.dim(),
                    tilted.iter().filter(|(_, v)| v == min).map(|(p, _)| p.clone()),
                )
                .expect("dimension");
                hole.verify(&argmin)
            }
            ViolationWitness::DomainNotBox { point } => dom
                .bounding_box()
                .is_some_and(|b| b.contains(point) && !dom.contains(point)),
            ViolationWitness::SeparableIdentity { point, value, additive } => {
                let Some(b) = dom.bounding_box() else {
                    return false;
                };
                let lo = b.lo();
                let (Some(base), Some(v)) = (f.finite_value(lo), f.finite_value(point)) else {
                    return false;
                };
                let mut sum = base.clone();
                for i in 0..f.dim() {
                    let mut q = lo.clone();
                    q.0[i] = point.0[i];
                    match f.finite_value(&q) {
                        Some(fq) => sum += fq - base,
                        None => return false,
                    }
                }
                v == value && sum == *additive && v != &sum
            }
            ViolationWitness::SeparableCurvature { axis, t, values } => {
                let Some(b) = dom.bounding_box() else {
                    return false;
                };
                if *axis >= f.dim() {
                    return false;
                }
                let at = |s: i64| {
                    let mut q = b.lo().clone();
                    q.0[*axis] = s;
                    f.finite_value(&q).cloned()
                };
                let (Some(a), Some(m), Some(c)) = (at(t - 1), at(*t), at(t + 1)) else {
                    return false;
                };
                [a.clone(), m.clone(), c.clone()] == *values && a + c < m * rat(2)
            }
        }
    }
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationWitness::MidpointPair { x, y, missing, .. } => {
                write!(f, "x={x} y={y} missing")?;
                for p in missing {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            ViolationWitness::FunctionMidpointPair { x, y, values, .. } => write!(
                f,
                "x={x} y={y}: {}+{} < {}+{}",
                values[0], values[1], values[2], values[3]
            ),
            ViolationWitness::HolePoint(c) => write!(f, "hole at {}", c.point),
            ViolationWitness::SubmodularPair { x, y, values } => write!(
                f,
                "x={x} y={y}: {}+{} < {}+{}",
                values[0], values[1], values[2], values[3]
            ),
            ViolationWitness::EnvelopeGap { x, y, fx, fy, extension, .. } => write!(
                f,
                "x={x} y={y}: local extension {} > ({}+{})/2",
                ExtendedValue::Finite(extension.clone()),
                ExtendedValue::Finite(fx.clone()),
                ExtendedValue::Finite(fy.clone())
            ),
            ViolationWitness::ParallelogramPair { x, y, d, values, .. } => write!(
                f,
                "x={x} y={y} d={d}: {}+{} < {}+{}",
                values[0], values[1], values[2], values[3]
            ),
            ViolationWitness::ArgminHole { hole, .. } => write!(f, "argmin hole at {}", hole.point),
            ViolationWitness::DomainNotBox { point } => write!(f, "domain misses {point}"),
            ViolationWitness::SeparableIdentity { point, .. } => write!(f, "additivity fails at {point}"),
            ViolationWitness::SeparableCurvature { axis, t, .. } => {
                write!(f, "axis {axis} not convex at t={t}")
            }
        }
    }
}

/// `values[0] + values[1] < values[2] + values[3]`.
pub(crate) fn violates(values: &[ExtendedValue; 4]) -> bool {
    &values[0] + &values[1] < &values[2] + &values[3]
}
