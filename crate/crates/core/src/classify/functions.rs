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

use std::collections::HashMap;
use std::time::Instant;

use crate::error::{DcaError, Result};
use crate::function::DiscreteFunction;
use crate::geometry::{local_convex_extension_certified, LocalExtension};
use crate::lattice::{decompose_difference, rounded_midpoints, IntegerBox, LatticePoint, LatticeSet, RationalPoint};
use crate::value::{rat, ExtendedValue, Rational};

use super::sets::{check_set_integrally_convex, check_set_midpoint, SetMidpointMode};
use super::witness::{violates, PairRange, ViolationWitness};
use super::CheckReport;

/// Quantifier of the function midpoint inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MidpointMode {
    /// Every pair (L♮-convexity).
    All,
    /// Pairs with `‖x - y‖∞ ≥ 2`.
    Global,
    /// Pairs with `‖x - y‖∞ = 2`, plus a discrete midpoint convex domain.
    Local,
}

impl MidpointMode {
    pub fn name(self) -> &'static str {
        match self {
            MidpointMode::All => "all",
            MidpointMode::Global => "global",
            MidpointMode::Local => "local",
        }
    }

    fn range(self) -> PairRange {
        match self {
            MidpointMode::All => PairRange::All,
            MidpointMode::Global => PairRange::AtLeastTwo,
            MidpointMode::Local => PairRange::ExactlyTwo,
        }
    }
}

impl std::str::FromStr for MidpointMode {
    type Err = DcaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(MidpointMode::All),
            "global" => Ok(MidpointMode::Global),
            "local" => Ok(MidpointMode::Local),
            other => Err(DcaError::InvalidArgument(format!("unknown midpoint mode {other:?}"))),
        }
    }
}

fn domain_points(f: &DiscreteFunction) -> Vec<LatticePoint> {
    f.finite_entries().map(|(p, _)| p).collect()
}

/// Scans pairs `x < y` of `dom f` admitted by `range` and returns the
/// violation with the smallest `‖x - y‖∞`, ties broken lexicographically.
fn scan_pairs<F>(f: &DiscreteFunction, range: PairRange, mut test: F) -> Result<(u64, Option<ViolationWitness>)>
where
    F: FnMut(&LatticePoint, &LatticePoint) -> Result<Option<ViolationWitness>>,
{
    let mut pairs = 0;
    if range == PairRange::ExactlyTwo {
        for x in domain_points(f) {
            for y in distance_two_partners(f, &x) {
                pairs += 1;
                if let Some(w) = test(&x, &y)? {
                    return Ok((pairs, Some(w)));
                }
            }
        }
        return Ok((pairs, None));
    }
    let floor_dist = if range == PairRange::All { 1 } else { 2 };
    let pts = domain_points(f);
    let mut best: Option<(i64, ViolationWitness)> = None;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            if !range.admits(x, y) {
                continue;
            }
            pairs += 1;
            let dist = x.dist_inf(y);
            if best.as_ref().is_some_and(|(d, _)| *d <= dist) {
                continue;
            }
            if let Some(w) = test(x, y)? {
                if dist == floor_dist {
                    return Ok((pairs, Some(w)));
                }
                best = Some((dist, w));
            }
        }
    }
    Ok((pairs, best.map(|(_, w)| w)))
}

/// Points `y > x` (lexicographically) of `dom f` with `‖x - y‖∞ = 2`.
fn distance_two_partners<'a>(f: &'a DiscreteFunction, x: &'a LatticePoint) -> impl Iterator<Item = LatticePoint> + 'a {
    let n = x.dim();
    let around = IntegerBox::new(x.sub(&LatticePoint(vec![2; n])), x.add(&LatticePoint(vec![2; n])))
        .expect("valid box");
    let window = around.intersect(f.domain_box());
    window
        .into_iter()
        .flat_map(|w| w.points().collect::<Vec<_>>())
        .filter(move |y| y > x && x.dist_inf(y) == 2 && f.finite_value(y).is_some())
}

fn midpoint_violation(
    f: &DiscreteFunction,
    range: PairRange,
    x: &LatticePoint,
    y: &LatticePoint,
) -> Result<Option<ViolationWitness>> {
    let (up, down) = rounded_midpoints(x, y)?;
    let values = [f.value(x), f.value(y), f.value(&up), f.value(&down)];
    Ok(violates(&values).then(|| ViolationWitness::FunctionMidpointPair {
        range,
        x: x.clone(),
        y: y.clone(),
        up,
        down,
        values,
    }))
}

/// Integral convexity via the domain's set test followed by the midpoint
/// criterion `f̃((x+y)/2) ≤ (f(x)+f(y))/2` over `‖x - y‖∞ = 2`.
pub fn check_fn_integrally_convex(f: &DiscreteFunction) -> Result<CheckReport> {
    const NAME: &str = "integrally-convex-fn";
    let started = Instant::now();
    let dom = f.effective_domain();
    let dom_report = check_set_integrally_convex(&dom)?;
    if let Some(w) = dom_report.witness {
        return Ok(CheckReport::fail(NAME, w, dom_report.pairs_checked, started)
            .with_note("effective domain is not integrally convex"));
    }
    let mut cache: HashMap<LatticePoint, LocalExtension> = HashMap::new();
    let (pairs, witness) = scan_pairs(f, PairRange::ExactlyTwo, |x, y| {
        let key = x.add(y);
        let ext = match cache.get(&key) {
            Some(e) => e.clone(),
            None => {
                let e = local_convex_extension_certified(f, &RationalPoint::midpoint(x, y))?;
                cache.insert(key, e.clone());
                e
            }
        };
        let fx = f.finite_value(x).expect("x in dom").clone();
        let fy = f.finite_value(y).expect("y in dom").clone();
        match ext {
            LocalExtension {
                value: ExtendedValue::Finite(v),
                combination: Some(combination),
                minorant: Some(minorant),
            } => Ok((&v * rat(2) > &fx + &fy).then(|| ViolationWitness::EnvelopeGap {
                x: x.clone(),
                y: y.clone(),
                fx,
                fy,
                extension: v,
                combination,
                minorant,
            })),
            // impossible once the domain passed the set test
            _ => Err(DcaError::Precondition(format!(
                "midpoint of {x} and {y} is outside the local hull of an integrally convex domain"
            ))),
        }
    })?;
    Ok(match witness {
        Some(w) => CheckReport::fail(NAME, w, pairs, started),
        None => CheckReport::pass(NAME, pairs, started),
    })
}

pub fn check_fn_midpoint(f: &DiscreteFunction, mode: MidpointMode) -> Result<CheckReport> {
    let name = format!("midpoint-fn[{}]", mode.name());
    check_midpoint_named(f, mode, &name)
}

fn check_midpoint_named(f: &DiscreteFunction, mode: MidpointMode, name: &str) -> Result<CheckReport> {
    let started = Instant::now();
    if mode == MidpointMode::Local {
        let dom_report = check_set_midpoint(&f.effective_domain(), SetMidpointMode::Dmc)?;
        if let Some(w) = dom_report.witness {
            return Ok(CheckReport::fail(name, w, dom_report.pairs_checked, started)
                .with_note("effective domain is not discrete midpoint convex"));
        }
    }
    let range = mode.range();
    let (pairs, witness) = scan_pairs(f, range, |x, y| midpoint_violation(f, range, x, y))?;
    Ok(match witness {
        Some(w) => CheckReport::fail(name, w, pairs, started),
        None => CheckReport::pass(name, pairs, started),
    })
}

/// `f(x) + f(y) ≥ f(x∨y) + f(x∧y)` for all pairs.
pub fn check_fn_submodular(f: &DiscreteFunction) -> Result<CheckReport> {
    const NAME: &str = "submodular-fn";
    let started = Instant::now();
    let pts = domain_points(f);
    let mut pairs = 0;
    for (i, x) in pts.iter().enumerate() {
        for y in &pts[i + 1..] {
            let (join, meet) = (x.join(y), x.meet(y));
            if &join == y || &join == x {
                continue;
            }
            pairs += 1;
            let values = [f.value(x), f.value(y), f.value(&join), f.value(&meet)];
            if violates(&values) {
                let w = ViolationWitness::SubmodularPair {
                    x: x.clone(),
                    y: y.clone(),
                    values,
                };
                return Ok(CheckReport::fail(NAME, w, pairs, started));
            }
        }
    }
    Ok(CheckReport::pass(NAME, pairs, started))
}

/// L♮-convexity: the midpoint inequality over every pair.
pub fn check_fn_lnat(f: &DiscreteFunction) -> Result<CheckReport> {
    check_midpoint_named(f, MidpointMode::All, "lnat-fn")
}

/// Separable convexity: a box domain, exact additivity along the axes
/// through the lower corner, and convex axis restrictions.
pub fn check_fn_separable(f: &DiscreteFunction) -> Result<CheckReport> {
    const NAME: &str = "separable-fn";
    let started = Instant::now();
    let dom = f.effective_domain();
    let bx = dom.bounding_box().ok_or(DcaError::EmptyDomain)?;
    if let Some(point) = bx.points().find(|p| !dom.contains(p)) {
        return Ok(CheckReport::fail(NAME, ViolationWitness::DomainNotBox { point }, 0, started));
    }
    let lo = bx.lo();
    let base = f.finite_value(lo).expect("corner in dom").clone();
    let axis_value = |i: usize, t: i64| -> Rational {
        let mut q = lo.clone();
        q.0[i] = t;
        f.finite_value(&q).expect("box domain").clone()
    };
    let mut checked = 0;
    for (p, v) in f.finite_entries() {
        checked += 1;
        let additive = (0..f.dim()).fold(base.clone(), |acc, i| acc + axis_value(i, p.0[i]) - &base);
        if *v != additive {
            let w = ViolationWitness::SeparableIdentity {
                point: p,
                value: v.clone(),
                additive,
            };
            return Ok(CheckReport::fail(NAME, w, checked, started));
        }
    }
    for i in 0..f.dim() {
        for t in lo.0[i] + 1..bx.hi().0[i] {
            checked += 1;
            let values = [axis_value(i, t - 1), axis_value(i, t), axis_value(i, t + 1)];
            if &values[0] + &values[2] < &values[1] * rat(2) {
                let w = ViolationWitness::SeparableCurvature { axis: i, t, values };
                return Ok(CheckReport::fail(NAME, w, checked, started));
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked, started))
}

/// Parallelogram inequality `f(x)+f(y) ≥ f(x+d)+f(y-d)` for every partial
/// step sum `d` of `y - x`. `mode` names the midpoint class the caller
/// claims; the claim is checked first and a failure is reported with its
/// own witness.
pub fn check_parallelogram(f: &DiscreteFunction, mode: MidpointMode) -> Result<CheckReport> {
    const NAME: &str = "parallelogram";
    let started = Instant::now();
    let pre = check_fn_midpoint(f, mode)?;
    if let Some(w) = pre.witness {
        return Ok(CheckReport::fail(NAME, w, pre.pairs_checked, started).with_note(format!(
            "precondition failed: not {} discrete midpoint convex",
            mode.name()
        )));
    }
    let pts = domain_points(f);
    let mut checked = 0;
    for x in &pts {
        for y in &pts {
            if x == y {
                continue;
            }
            let dec = decompose_difference(x, y)?;
            let m = dec.m();
            for mask in 1u64..(1u64 << m) {
                checked += 1;
                let steps: Vec<usize> = (0..m).filter(|k| mask >> k & 1 == 1).collect();
                let d = dec.partial_sum(&steps);
                let values = [f.value(x), f.value(y), f.value(&x.add(&d)), f.value(&y.sub(&d))];
                if violates(&values) {
                    let w = ViolationWitness::ParallelogramPair {
                        x: x.clone(),
                        y: y.clone(),
                        steps,
                        d,
                        values,
                    };
                    return Ok(CheckReport::fail(NAME, w, checked, started));
                }
            }
        }
    }
    Ok(CheckReport::pass(NAME, checked, started))
}

/// Tests that `argmin f[-p]` is an integrally convex set for each probe.
/// A finite probe list can refute integral convexity but never confirm it.
pub fn check_argmin_characterization(f: &DiscreteFunction, probes: &[Vec<Rational>]) -> Result<CheckReport> {
    const NAME: &str = "argmin-ic";
    let started = Instant::now();
    for (k, p) in probes.iter().enumerate() {
        if p.len() != f.dim() {
            return Err(DcaError::DimensionMismatch { expected: f.dim(), got: p.len() });
        }
        let argmin = argmin_tilted(f, p);
        let r = check_set_integrally_convex(&argmin)?;
        if let Some(ViolationWitness::HolePoint(hole)) = r.witness {
            let w = ViolationWitness::ArgminHole { probe: p.clone(), hole };
            return Ok(CheckReport::fail(NAME, w, k as u64 + 1, started));
        }
    }
    Ok(CheckReport::pass(NAME, probes.len() as u64, started).with_note("refutation-only test over finitely many probes"))
}

/// `argmin_x f(x) - ⟨p, x⟩` by enumeration.
pub fn argmin_tilted(f: &DiscreteFunction, p: &[Rational]) -> LatticeSet {
    let tilted: Vec<(LatticePoint, Rational)> = f
        .finite_entries()
        .map(|(x, v)| {
            let t = v - x.to_rational().dot(p);
            (x, t)
        })
        .collect();
    let min = tilted.iter().map(|(_, v)| v).min().expect("nonempty domain").clone();
    LatticeSet::new(f.dim(), tilted.into_iter().filter(|(_, v)| *v == min).map(|(x, _)| x))
        .expect("dimension")
}

/// Verdicts along `separable ⊆ L♮ ⊆ global DMC ⊆ local DMC ⊆ integrally convex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainVerdict {
    pub separable: bool,
    pub lnat: bool,
    pub global_dmc: bool,
    pub local_dmc: bool,
    pub integrally_convex: bool,
    pub reports: Vec<CheckReport>,
}

impl ChainVerdict {
    pub fn as_array(&self) -> [bool; 5] {
        [self.separable, self.lnat, self.global_dmc, self.local_dmc, self.integrally_convex]
    }

    pub const CLASS_NAMES: [&'static str; 5] =
        ["separable", "lnat", "global-dmc", "local-dmc", "integrally-convex"];
}

pub fn classify_chain(f: &DiscreteFunction) -> Result<ChainVerdict> {
    let reports = vec![
        check_fn_separable(f)?,
        check_fn_lnat(f)?,
        check_fn_midpoint(f, MidpointMode::Global)?,
        check_fn_midpoint(f, MidpointMode::Local)?,
        check_fn_integrally_convex(f)?,
    ];
    let v: Vec<bool> = reports.iter().map(|r| r.verdict).collect();
    if let Some(k) = (0..4).find(|&k| v[k] && !v[k + 1]) {
        return Err(DcaError::InconsistentChain(format!(
            "{} holds but {} fails",
            ChainVerdict::CLASS_NAMES[k],
            ChainVerdict::CLASS_NAMES[k + 1]
        )));
    }
    Ok(ChainVerdict {
        separable: v[0],
        lnat: v[1],
        global_dmc: v[2],
        local_dmc: v[3],
        integrally_convex: v[4],
        reports,
    })
}
