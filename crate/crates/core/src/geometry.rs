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

//! Exact convex geometry over lattice point sets: hull membership with
//! certificates, the local convex extension `f̃`, the global convex
//! envelope, and the per-cell hull comparison behind set integral convexity.

use std::collections::HashMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{DcaError, Result};
use crate::function::DiscreteFunction;
use crate::lattice::{neighborhood_box, IntegerBox, LatticePoint, LatticeSet, RationalPoint, MAX_DIM};
use crate::linalg::{diff_row, nullspace, rref};
use crate::lp::{LinearProgram, LpOutcome};
use crate::value::{rat, ExtendedValue, Rational};

/// Lattice points with positive rational weights summing to one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexCombination {
    pub target: RationalPoint,
    pub support: Vec<(LatticePoint, Rational)>,
}

impl ConvexCombination {
    pub fn singleton(p: LatticePoint) -> Self {
        ConvexCombination {
            target: p.to_rational(),
            support: vec![(p, Rational::one())],
        }
    }

    /// Weighted sum of the support points.
    pub fn barycenter(&self) -> RationalPoint {
        let dim = self.target.dim();
        let mut acc = vec![Rational::zero(); dim];
        for (p, w) in &self.support {
            for (a, &c) in acc.iter_mut().zip(&p.0) {
                *a += w * rat(c);
            }
        }
        RationalPoint(acc)
    }

    /// Positive weights, total one, barycenter equal to the target.
    pub fn verify(&self) -> bool {
        !self.support.is_empty()
            && self.support.iter().all(|(p, w)| w.is_positive() && p.dim() == self.target.dim())
            && self.support.iter().map(|(_, w)| w.clone()).sum::<Rational>().is_one()
            && self.barycenter() == self.target
    }

    /// `Σ λ_y f(y)`; `+∞` if a support point is outside `dom f`.
    pub fn objective(&self, f: &DiscreteFunction) -> ExtendedValue {
        let mut acc = Rational::zero();
        for (p, w) in &self.support {
            match f.finite_value(p) {
                Some(v) => acc += w * v,
                None => return ExtendedValue::Infinity,
            }
        }
        ExtendedValue::Finite(acc)
    }

    pub fn support_within(&self, set: &LatticeSet) -> bool {
        self.support.iter().all(|(p, _)| set.contains(p))
    }

    /// Carathéodory reduction: re-solves over the support so at most
    /// `dim + 1` points remain.
    pub fn reduced(&self) -> ConvexCombination {
        if self.support.len() <= self.target.dim() + 1 {
            return self.clone();
        }
        let pts = LatticeSet::new(self.target.dim(), self.support.iter().map(|(p, _)| p.clone()))
            .expect("support dimension");
        match hull_membership(&self.target, &pts) {
            Ok(HullMembership::Inside(c)) => c,
            _ => self.clone(),
        }
    }
}

/// `⟨normal, z⟩ ≤ offset` with an integral normal of gcd one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Halfspace {
    pub normal: Vec<BigInt>,
    pub offset: Rational,
}

impl Halfspace {
    /// Scales `normal·z ≤ offset` to the canonical integral form. Returns
    /// `None` for a zero normal.
    pub fn new(normal: &[Rational], offset: &Rational) -> Option<Halfspace> {
        if normal.iter().all(Zero::is_zero) {
            return None;
        }
        let lcm = normal
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = normal
            .iter()
            .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let scale = Rational::new(lcm, g.clone());
        Some(Halfspace {
            normal: ints.into_iter().map(|v| v / &g).collect(),
            offset: offset * scale,
        })
    }

    pub fn eval_lattice(&self, z: &LatticePoint) -> Rational {
        let s: BigInt = self
            .normal
            .iter()
            .zip(&z.0)
            .map(|(a, &b)| a * BigInt::from(b))
            .sum();
        Rational::from_integer(s)
    }

    pub fn eval(&self, z: &RationalPoint) -> Rational {
        self.normal
            .iter()
            .zip(&z.0)
            .map(|(a, b)| Rational::from_integer(a.clone()) * b)
            .sum()
    }

    pub fn contains_lattice(&self, z: &LatticePoint) -> bool {
        self.eval_lattice(z) <= self.offset
    }

    /// `true` when every point of `set` satisfies the inequality and `x`
    /// violates it.
    pub fn separates<'a, I>(&self, x: &RationalPoint, set: I) -> bool
    where
        I: IntoIterator<Item = &'a LatticePoint>,
    {
        self.eval(x) > self.offset && set.into_iter().all(|p| self.contains_lattice(p))
    }
}

impl std::fmt::Display for Halfspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self.normal.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]·z ≤ {}", terms.join(","), self.offset)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HullMembership {
    Inside(ConvexCombination),
    Outside(Halfspace),
}

impl HullMembership {
    pub fn combination(self) -> Option<ConvexCombination> {
        match self {
            HullMembership::Inside(c) => Some(c),
            HullMembership::Outside(_) => None,
        }
    }
}

fn check_dim(expected: usize, got: usize) -> Result<()> {
    if expected != got {
        return Err(DcaError::DimensionMismatch { expected, got });
    }
    if expected > MAX_DIM {
        return Err(DcaError::DimensionTooLarge { dim: expected, max: MAX_DIM });
    }
    Ok(())
}

/// Decides `x ∈ conv(V)` by an exact feasibility LP in the weights.
pub fn hull_membership(x: &RationalPoint, v: &LatticeSet) -> Result<HullMembership> {
    if v.is_empty() {
        return Err(DcaError::EmptySet);
    }
    check_dim(v.dim(), x.dim())?;
    let pts: Vec<&LatticePoint> = v.iter().collect();
    Ok(membership_lp(x, &pts))
}

fn membership_lp(x: &RationalPoint, pts: &[&LatticePoint]) -> HullMembership {
    let n = x.dim();
    let mut lp = LinearProgram::new(pts.len());
    for i in 0..n {
        lp.add_equality(pts.iter().map(|p| rat(p.0[i])).collect(), x.0[i].clone());
    }
    lp.add_equality(vec![Rational::one(); pts.len()], Rational::one());
    match lp.solve() {
        LpOutcome::Optimal(sol) => HullMembership::Inside(ConvexCombination {
            target: x.clone(),
            support: collect_support(pts, &sol.x),
        }),
        LpOutcome::Infeasible { farkas } => {
            // u·v + u0 ≤ 0 on V and u·x + u0 > 0.
            let offset = -farkas[n].clone();
            let h = Halfspace::new(&farkas[..n], &offset).expect("Farkas ray has a nonzero normal");
            HullMembership::Outside(h)
        }
        LpOutcome::Unbounded => unreachable!("feasibility LP has a zero objective"),
    }
}

fn collect_support(pts: &[&LatticePoint], weights: &[Rational]) -> Vec<(LatticePoint, Rational)> {
    pts.iter()
        .zip(weights)
        .filter(|(_, w)| w.is_positive())
        .map(|(p, w)| ((*p).clone(), w.clone()))
        .collect()
}

/// An affine function `⟨slope, z⟩ + intercept`, used as a dual certificate
/// that a convex-combination minimum is at least some value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMinorant {
    pub slope: Vec<Rational>,
    pub intercept: Rational,
}

impl AffineMinorant {
    pub fn eval(&self, z: &RationalPoint) -> Rational {
        z.dot(&self.slope) + &self.intercept
    }

    pub fn eval_lattice(&self, z: &LatticePoint) -> Rational {
        self.eval(&z.to_rational())
    }
}

/// Full output of the local convex extension at one point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExtension {
    pub value: ExtendedValue,
    pub combination: Option<ConvexCombination>,
    /// Affine function below `f` on `N(x) ∩ dom f` and equal to the value
    /// at `x`; present whenever the value is finite.
    pub minorant: Option<AffineMinorant>,
}

/// `f̃(x)`: the least convex interpolation of `f` on `N(x)`.
pub fn local_convex_extension(
    f: &DiscreteFunction,
    x: &RationalPoint,
) -> Result<(ExtendedValue, Option<ConvexCombination>)> {
    let ext = local_convex_extension_certified(f, x)?;
    Ok((ext.value, ext.combination))
}

pub fn local_convex_extension_certified(f: &DiscreteFunction, x: &RationalPoint) -> Result<LocalExtension> {
    check_dim(f.dim(), x.dim())?;
    if !f.domain_box().contains_rational(x) {
        return Err(DcaError::OutsideBox);
    }
    let nbox = neighborhood_box(x);
    let pts: Vec<(LatticePoint, Rational)> = nbox
        .points()
        .filter_map(|p| f.finite_value(&p).cloned().map(|v| (p, v)))
        .collect();
    let axes = x.fractional_axes();
    match (axes.as_slice(), pts.as_slice()) {
        ([], [(p, v)]) => Ok(LocalExtension {
            value: ExtendedValue::Finite(v.clone()),
            combination: Some(ConvexCombination::singleton(p.clone())),
            minorant: Some(AffineMinorant {
                slope: vec![Rational::zero(); x.dim()],
                intercept: v.clone(),
            }),
        }),
        // interpolation along one segment
        (&[i], [(lo, vlo), (hi, vhi)]) => {
            let t = &x.0[i] - rat(lo.0[i]);
            let value = vlo + (vhi - vlo) * &t;
            let mut slope = vec![Rational::zero(); x.dim()];
            slope[i] = vhi - vlo;
            let intercept = vlo - &slope[i] * rat(lo.0[i]);
            Ok(LocalExtension {
                value: ExtendedValue::Finite(value),
                combination: Some(ConvexCombination {
                    target: x.clone(),
                    support: vec![(lo.clone(), Rational::one() - &t), (hi.clone(), t)],
                }),
                minorant: Some(AffineMinorant { slope, intercept }),
            })
        }
        _ => Ok(min_combination(x, &pts, &axes)),
    }
}

/// Minimizes `Σ λ_p v_p` over convex combinations of `pts` equal to `x`,
/// imposing the coordinate constraint only on `axes` (the others are known
/// to agree already).
fn min_combination(x: &RationalPoint, pts: &[(LatticePoint, Rational)], axes: &[usize]) -> LocalExtension {
    let none = LocalExtension {
        value: ExtendedValue::Infinity,
        combination: None,
        minorant: None,
    };
    if pts.is_empty() {
        return none;
    }
    let mut lp = LinearProgram::new(pts.len());
    for &i in axes {
        lp.add_equality(pts.iter().map(|(p, _)| rat(p.0[i])).collect(), x.0[i].clone());
    }
    lp.add_equality(vec![Rational::one(); pts.len()], Rational::one());
    lp.set_cost(pts.iter().map(|(_, v)| v.clone()).collect());
    match lp.solve() {
        LpOutcome::Optimal(sol) => {
            let refs: Vec<&LatticePoint> = pts.iter().map(|(p, _)| p).collect();
            let mut slope = vec![Rational::zero(); x.dim()];
            for (k, &i) in axes.iter().enumerate() {
                slope[i] = sol.duals[k].clone();
            }
            LocalExtension {
                value: ExtendedValue::Finite(sol.value),
                combination: Some(ConvexCombination {
                    target: x.clone(),
                    support: collect_support(&refs, &sol.x),
                }),
                minorant: Some(AffineMinorant {
                    slope,
                    intercept: sol.duals[axes.len()].clone(),
                }),
            }
        }
        _ => none,
    }
}

/// Value of the lower convex envelope of `f` (over all of `dom f`) at `x`.
pub fn convex_envelope_value(f: &DiscreteFunction, x: &RationalPoint) -> Result<ExtendedValue> {
    check_dim(f.dim(), x.dim())?;
    let pts: Vec<(LatticePoint, Rational)> = f.finite_entries().map(|(p, v)| (p, v.clone())).collect();
    let axes: Vec<usize> = (0..x.dim()).collect();
    Ok(min_combination(x, &pts, &axes).value)
}

/// A point of `conv(S) ∩ [a, a+1]` outside `conv(S ∩ [a, a+1])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HoleCertificate {
    pub point: RationalPoint,
    /// Combination of points of `S` equal to `point`.
    pub combination: ConvexCombination,
    /// Satisfied by every point of `S ∩ [a, a+1]`, violated by `point`.
    pub separator: Halfspace,
}

impl HoleCertificate {
    /// Checks the certificate against `S` using arithmetic only. Since
    /// `N(point) ⊆ [a, a+1]`, this also shows `point ∉ conv(S ∩ N(point))`.
    pub fn verify(&self, set: &LatticeSet) -> bool {
        let nbr = set.restrict_to(&neighborhood_box(&self.point));
        self.combination.target == self.point
            && self.combination.verify()
            && self.combination.support_within(set)
            && self.separator.separates(&self.point, &nbr)
    }
}

/// H-representation of the hull of a small point set: equalities of the
/// affine hull (each as a pair of opposite halfspaces) plus facets.
fn small_hull_inequalities(points: &[LatticePoint]) -> Vec<Halfspace> {
    let n = points[0].dim();
    let base = &points[0];
    let mut diffs: Vec<Vec<Rational>> = points[1..].iter().map(|p| diff_row(p, base)).collect();
    let d = rref(&mut diffs, n).len();
    let eqs = {
        let rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| diff_row(p, base)).collect();
        nullspace(&rows, n)
    };
    let base_q = base.to_rational();
    let mut out = Vec::new();
    for h in &eqs {
        let b = base_q.dot(h);
        let neg: Vec<Rational> = h.iter().map(|v| -v).collect();
        out.extend(Halfspace::new(h, &b));
        out.extend(Halfspace::new(&neg, &-b));
    }
    if d == 0 {
        return out;
    }
    let mut facets: Vec<Halfspace> = Vec::new();
    for subset in (0..points.len()).combinations(d) {
        let p0 = &points[subset[0]];
        let mut rows: Vec<Vec<Rational>> = subset[1..].iter().map(|&k| diff_row(&points[k], p0)).collect();
        rows.extend(eqs.iter().cloned());
        let ns = nullspace(&rows, n);
        if ns.len() != 1 {
            continue;
        }
        let h = &ns[0];
        let level = p0.to_rational().dot(h);
        let vals: Vec<Rational> = points.iter().map(|p| p.to_rational().dot(h)).collect();
        let above = vals.iter().any(|v| *v > level);
        let below = vals.iter().any(|v| *v < level);
        let hs = match (above, below) {
            (false, true) => Halfspace::new(h, &level),
            (true, false) => {
                let neg: Vec<Rational> = h.iter().map(|v| -v).collect();
                Halfspace::new(&neg, &-level)
            }
            _ => None,
        };
        if let Some(hs) = hs {
            if !facets.contains(&hs) {
                facets.push(hs);
            }
        }
    }
    out.extend(facets);
    out
}

/// Working state for repeated cell tests against one set.
pub struct CellTester<'a> {
    set: &'a LatticeSet,
    generators: Vec<&'a LatticePoint>,
    facet_cache: HashMap<Vec<bool>, Vec<Halfspace>>,
}

impl<'a> CellTester<'a> {
    pub fn new(set: &'a LatticeSet) -> Result<Self> {
        if set.is_empty() {
            return Err(DcaError::EmptySet);
        }
        check_dim(set.dim(), set.dim())?;
        Ok(CellTester {
            set,
            generators: extreme_points(set),
            facet_cache: HashMap::new(),
        })
    }

    /// Cells `[a, a+1]` that can meet `conv(S)`, lexicographically.
    pub fn cells(&self) -> Vec<LatticePoint> {
        let bb = self.set.bounding_box().expect("nonempty");
        let hi: Vec<i64> = (0..bb.dim())
            .map(|i| (bb.hi().0[i] - 1).max(bb.lo().0[i]))
            .collect();
        IntegerBox::new(bb.lo().clone(), LatticePoint(hi))
            .expect("valid cell range")
            .points()
            .collect()
    }

    pub fn test_cell(&mut self, a: &LatticePoint) -> Option<HoleCertificate> {
        let n = self.set.dim();
        let cell = IntegerBox::new(a.clone(), a.add(&LatticePoint(vec![1; n]))).expect("unit cell");
        let local: Vec<LatticePoint> = self.set.restrict_to(&cell).iter().cloned().collect();
        if local.len() == 1 << n {
            return None;
        }
        if local.is_empty() {
            let cert = self.maximize_in_cell(a, &vec![Rational::zero(); n])?;
            let mut e0 = vec![Rational::zero(); n];
            e0[0] = Rational::one();
            let sep = Halfspace::new(&e0, &(cert.1.0[0].clone() - Rational::one())).expect("unit normal");
            return Some(HoleCertificate {
                point: cert.1,
                combination: cert.0,
                separator: sep,
            });
        }
        let key: Vec<bool> = cell.points().map(|p| self.set.contains(&p)).collect();
        let rel: Vec<LatticePoint> = local.iter().map(|p| p.sub(a)).collect();
        let ineqs = self
            .facet_cache
            .entry(key)
            .or_insert_with(|| small_hull_inequalities(&rel))
            .clone();
        let a_q = a.to_rational();
        for h in ineqs {
            // translate h·(z - a) ≤ b into absolute coordinates
            let normal: Vec<Rational> = h.normal.iter().map(|v| Rational::from_integer(v.clone())).collect();
            let offset = &h.offset + a_q.dot(&normal);
            let Some((comb, z)) = self.maximize_in_cell(a, &normal) else {
                return None;
            };
            if z.dot(&normal) > offset {
                let separator = Halfspace::new(&normal, &offset).expect("nonzero normal");
                return Some(HoleCertificate {
                    point: z,
                    combination: comb,
                    separator,
                });
            }
        }
        None
    }

    /// Maximizes `objective·z` over `conv(S) ∩ [a, a+1]`; `None` when the
    /// intersection is empty.
    fn maximize_in_cell(&self, a: &LatticePoint, objective: &[Rational]) -> Option<(ConvexCombination, RationalPoint)> {
        let n = a.dim();
        let g = self.generators.len();
        // variables: λ (g), lower slacks u (n), upper slacks w (n)
        let nv = g + 2 * n;
        let mut lp = LinearProgram::new(nv);
        for i in 0..n {
            let mut row = vec![Rational::zero(); nv];
            for (k, p) in self.generators.iter().enumerate() {
                row[k] = rat(p.0[i]);
            }
            row[g + i] = -Rational::one();
            lp.add_equality(row, rat(a.0[i]));
            let mut row = vec![Rational::zero(); nv];
            row[g + i] = Rational::one();
            row[g + n + i] = Rational::one();
            lp.add_equality(row, Rational::one());
        }
        let mut row = vec![Rational::zero(); nv];
        for v in row.iter_mut().take(g) {
            *v = Rational::one();
        }
        lp.add_equality(row, Rational::one());
        let mut cost = vec![Rational::zero(); nv];
        for (k, p) in self.generators.iter().enumerate() {
            cost[k] = -p.to_rational().dot(objective);
        }
        lp.set_cost(cost);
        match lp.solve() {
            LpOutcome::Optimal(sol) => {
                let support = collect_support(&self.generators, &sol.x[..g]);
                let mut comb = ConvexCombination {
                    target: RationalPoint(vec![Rational::zero(); n]),
                    support,
                };
                comb.target = comb.barycenter();
                let z = comb.target.clone();
                Some((comb, z))
            }
            _ => None,
        }
    }
}

/// Points of `S` not in the hull of the others.
pub fn extreme_points(set: &LatticeSet) -> Vec<&LatticePoint> {
    let pts: Vec<&LatticePoint> = set.iter().collect();
    if pts.len() <= set.dim() + 1 {
        return pts;
    }
    pts.iter()
        .enumerate()
        .filter(|(k, p)| {
            let others: Vec<&LatticePoint> = pts
                .iter()
                .enumerate()
                .filter(|(j, _)| j != k)
                .map(|(_, q)| *q)
                .collect();
            matches!(membership_lp(&p.to_rational(), &others), HullMembership::Outside(_))
        })
        .map(|(_, p)| *p)
        .collect()
}

/// Compares `conv(S) ∩ [a, a+1]` with `conv(S ∩ [a, a+1])`; returns a point
/// of the difference if there is one.
pub fn cell_hull_equality(set: &LatticeSet, a: &LatticePoint) -> Result<Option<HoleCertificate>> {
    if a.dim() != set.dim() {
        return Err(DcaError::DimensionMismatch { expected: set.dim(), got: a.dim() });
    }
    let mut tester = CellTester::new(set)?;
    Ok(tester.test_cell(a))
}

/// Convenience form returning only the offending point.
pub fn cell_hull_witness(set: &LatticeSet, a: &LatticePoint) -> Result<Option<RationalPoint>> {
    Ok(cell_hull_equality(set, a)?.map(|c| c.point))
}

/// `true` iff `x ∈ conv(S)` for a lattice set, convenience for tests.
pub fn in_hull(x: &RationalPoint, set: &LatticeSet) -> bool {
    matches!(hull_membership(x, set), Ok(HullMembership::Inside(_)))
}
