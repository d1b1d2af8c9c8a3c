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

//! Random instances that are guaranteed (by construction or by re-checking)
//! to land in a given class. Used by the property suites and the CLI
//! self-tests.

use rand::seq::IteratorRandom;
use rand::Rng;

use crate::classify::{check_fn_integrally_convex, check_fn_midpoint, check_set_integrally_convex, MidpointMode, SetMidpointMode};
use crate::function::DiscreteFunction;
use crate::geometry::in_hull;
use crate::lattice::{rounded_midpoints, IntegerBox, LatticePoint, LatticeSet};
use crate::value::{ratio, ExtendedValue, Rational};

/// Values `v_0, v_1, ...` with nondecreasing differences.
pub fn convex_sequence<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Vec<i64> {
    let mut slope = rng.gen_range(-3..=1);
    let mut v = rng.gen_range(-2..=2);
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(v);
        v += slope;
        slope += rng.gen_range(0..=2);
    }
    out
}

/// `Σ_i φ_i(x_i)` with convex `φ_i`, on the full box.
pub fn separable_convex<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> DiscreteFunction {
    let seqs: Vec<Vec<i64>> = (0..bx.dim()).map(|i| convex_sequence(rng, bx.extent(i))).collect();
    DiscreteFunction::from_fn(bx.clone(), |p| {
        let s: i64 = (0..p.dim()).map(|i| seqs[i][(p.0[i] - bx.lo().0[i]) as usize]).sum();
        ExtendedValue::int(s)
    })
    .expect("full box")
}

/// Smallest superset of `set` closed under rounded midpoints of admitted
/// pairs: every pair for [`SetMidpointMode::Lnat`], pairs at distance at
/// least two for [`SetMidpointMode::Dmc`].
pub fn midpoint_closure(set: &LatticeSet, mode: SetMidpointMode) -> LatticeSet {
    let mut closed = set.clone();
    loop {
        let pts: Vec<LatticePoint> = closed.iter().cloned().collect();
        let mut grew = false;
        for (i, x) in pts.iter().enumerate() {
            for y in &pts[i + 1..] {
                if mode == SetMidpointMode::Dmc && x.dist_inf(y) < 2 {
                    continue;
                }
                let (up, down) = rounded_midpoints(x, y).expect("same dimension");
                grew |= closed.insert(up).expect("dim");
                grew |= closed.insert(down).expect("dim");
            }
        }
        if !grew {
            return closed;
        }
    }
}

fn random_points<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox, k: usize) -> LatticeSet {
    LatticeSet::new(bx.dim(), bx.points().choose_multiple(rng, k)).expect("dim")
}

pub fn lnat_set<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> LatticeSet {
    let k = rng.gen_range(1..=3);
    midpoint_closure(&random_points(rng, bx, k), SetMidpointMode::Lnat)
}

pub fn dmc_set<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> LatticeSet {
    let k = rng.gen_range(1..=3);
    midpoint_closure(&random_points(rng, bx, k), SetMidpointMode::Dmc)
}

/// Rejection sampling: a few random points, optionally filled with every
/// box point of their hull, kept if integrally convex. Falls back to a DMC
/// set, which is always integrally convex.
pub fn integrally_convex_set<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> LatticeSet {
    for _ in 0..32 {
        let k = rng.gen_range(1..=4);
        let mut s = random_points(rng, bx, k);
        if rng.gen_bool(0.7) {
            let filled: Vec<LatticePoint> = bx.points().filter(|p| in_hull(&p.to_rational(), &s)).collect();
            s = LatticeSet::new(bx.dim(), filled).expect("dim");
        }
        if check_set_integrally_convex(&s).expect("nonempty").verdict {
            return s;
        }
    }
    dmc_set(rng, bx)
}

/// `Σ g_i(x_i) + Σ h_ij(x_i - x_j)` with convex `g_i`, `h_ij`, optionally
/// restricted to an L♮ set. L♮-convex by construction.
pub fn lnat_function<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> DiscreteFunction {
    let n = bx.dim();
    let base = separable_convex(rng, bx);
    let span: i64 = (0..n).map(|i| bx.extent(i) as i64).max().unwrap_or(1);
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(0.5) {
                pairs.push((i, j, convex_sequence(rng, 2 * span as usize + 1)));
            }
        }
    }
    let domain = rng.gen_bool(0.4).then(|| lnat_set(rng, bx));
    DiscreteFunction::from_fn(bx.clone(), |p| {
        if domain.as_ref().is_some_and(|d| !d.contains(p)) {
            return ExtendedValue::Infinity;
        }
        let extra: i64 = pairs
            .iter()
            .map(|(i, j, h)| h[(p.0[*i] - p.0[*j] + span) as usize])
            .sum();
        base.value(p).shift(&Rational::from_integer(extra.into()))
    })
    .expect("nonempty domain")
}

/// A globally discrete midpoint convex function: a separable convex table
/// or an L♮ function, plus the indicator of a DMC set, re-checked before
/// use.
pub fn dmc_function<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> DiscreteFunction {
    loop {
        let smooth = if rng.gen_bool(0.5) { separable_convex(rng, bx) } else { lnat_function(rng, bx) };
        let domain = if rng.gen_bool(0.3) { bx.to_set() } else { dmc_set(rng, bx) };
        let Ok(f) = DiscreteFunction::from_fn(bx.clone(), |p| {
            if domain.contains(p) {
                smooth.value(p)
            } else {
                ExtendedValue::Infinity
            }
        }) else {
            continue;
        };
        if check_fn_midpoint(&f, MidpointMode::Global).expect("valid input").verdict {
            return f;
        }
    }
}

/// A locally discrete midpoint convex function: small random values on a
/// DMC set, kept if the checker agrees; otherwise a globally DMC function.
pub fn locally_dmc_function<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> DiscreteFunction {
    for _ in 0..16 {
        let domain = dmc_set(rng, bx);
        let f = DiscreteFunction::from_fn(bx.clone(), |p| {
            if domain.contains(p) {
                ExtendedValue::int(rng.gen_range(0..=2))
            } else {
                ExtendedValue::Infinity
            }
        })
        .expect("nonempty domain");
        if check_fn_midpoint(&f, MidpointMode::Local).expect("valid input").verdict {
            return f;
        }
    }
    dmc_function(rng, bx)
}

/// An integrally convex function: small random values on an integrally
/// convex domain, kept if the checker agrees; otherwise a DMC function.
pub fn integrally_convex_function<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> DiscreteFunction {
    for _ in 0..16 {
        let domain = integrally_convex_set(rng, bx);
        let f = DiscreteFunction::from_fn(bx.clone(), |p| {
            if domain.contains(p) {
                ExtendedValue::int(rng.gen_range(0..=2))
            } else {
                ExtendedValue::Infinity
            }
        })
        .expect("nonempty domain");
        if check_fn_integrally_convex(&f).expect("valid input").verdict {
            return f;
        }
    }
    dmc_function(rng, bx)
}

/// An arbitrary table with values in `0..=3` and roughly one `+∞` in five.
pub fn random_table<R: Rng + ?Sized>(rng: &mut R, bx: &IntegerBox) -> DiscreteFunction {
    loop {
        let f = DiscreteFunction::from_fn(bx.clone(), |_| {
            if rng.gen_bool(0.2) {
                ExtendedValue::Infinity
            } else {
                ExtendedValue::int(rng.gen_range(0..=3))
            }
        });
        if let Ok(f) = f {
            return f;
        }
    }
}

/// A rational vector with small numerators and denominators.
pub fn probe<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))).collect()
}
