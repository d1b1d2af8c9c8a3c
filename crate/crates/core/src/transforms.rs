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

//! Operations on sets and function tables: projection, Minkowski sum,
//! infimal convolution, conjugation, distance penalties and addition.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::error::{DcaError, Result};
use crate::function::DiscreteFunction;
use crate::geometry::{hull_membership, ConvexCombination, HullMembership};
use crate::lattice::{integral_neighborhood, IntegerBox, LatticePoint, LatticeSet, RationalPoint};
use crate::value::{floor_to_i64, rat, ExtendedValue, Rational};

fn same_dim(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(DcaError::DimensionMismatch { expected, got })
    }
}

fn validate_keep(dim: usize, keep: &[usize]) -> Result<()> {
    if keep.is_empty() {
        return Err(DcaError::InvalidArgument("keep must name at least one coordinate".into()));
    }
    let mut seen = vec![false; dim];
    for &i in keep {
        if i >= dim {
            return Err(DcaError::InvalidArgument(format!("coordinate {i} out of range for dimension {dim}")));
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(DcaError::InvalidArgument(format!("coordinate {i} listed twice")));
        }
    }
    Ok(())
}

/// `{x_keep : x ∈ S}`.
pub fn project_set(s: &LatticeSet, keep: &[usize]) -> Result<LatticeSet> {
    validate_keep(s.dim(), keep)?;
    LatticeSet::new(keep.len(), s.iter().map(|p| p.select(keep)))
}

/// `g(x_keep) = min f(x)` over the dropped coordinates.
pub fn project_fn(f: &DiscreteFunction, keep: &[usize]) -> Result<DiscreteFunction> {
    validate_keep(f.dim(), keep)?;
    let bx = f.domain_box();
    let out_box = IntegerBox::new(bx.lo().select(keep), bx.hi().select(keep))?;
    let mut values = vec![ExtendedValue::Infinity; out_box.len()];
    for (p, v) in f.finite_entries() {
        let idx = out_box.index_of(&p.select(keep)).expect("projected box");
        let v = ExtendedValue::Finite(v.clone());
        if v < values[idx] {
            values[idx] = v;
        }
    }
    DiscreteFunction::new(out_box, values)
}

pub fn minkowski_sum(s1: &LatticeSet, s2: &LatticeSet) -> Result<LatticeSet> {
    same_dim(s1.dim(), s2.dim())?;
    LatticeSet::new(s1.dim(), s1.iter().flat_map(|a| s2.iter().map(move |b| a.add(b))))
}

fn domain_bounds(f: &DiscreteFunction) -> Result<IntegerBox> {
    f.effective_domain().bounding_box().ok_or(DcaError::EmptyDomain)
}

/// Integer infimal convolution `(f1 □ f2)(x) = min f1(y) + f2(x - y)`,
/// tabulated on the bounding box of `dom f1 + dom f2`.
pub fn convolve(f1: &DiscreteFunction, f2: &DiscreteFunction) -> Result<DiscreteFunction> {
    same_dim(f1.dim(), f2.dim())?;
    let (b1, b2) = (domain_bounds(f1)?, domain_bounds(f2)?);
    let out_box = IntegerBox::new(b1.lo().add(b2.lo()), b1.hi().add(b2.hi()))?;
    let mut values = vec![ExtendedValue::Infinity; out_box.len()];
    let d2: Vec<(LatticePoint, &Rational)> = f2.finite_entries().collect();
    for (y, v1) in f1.finite_entries() {
        for (z, v2) in &d2 {
            let idx = out_box.index_of(&y.add(z)).expect("sum box");
            let v = ExtendedValue::Finite(v1 + *v2);
            if v < values[idx] {
                values[idx] = v;
            }
        }
    }
    DiscreteFunction::new(out_box, values)
}

/// Integer conjugate `f•(p) = max ⟨p, x⟩ - f(x)` over `dom f`, tabulated on
/// `pbox`.
pub fn conjugate(f: &DiscreteFunction, pbox: &IntegerBox) -> Result<DiscreteFunction> {
    same_dim(f.dim(), pbox.dim())?;
    let dom: Vec<(LatticePoint, &Rational)> = f.finite_entries().collect();
    if dom.is_empty() {
        return Err(DcaError::EmptyDomain);
    }
    DiscreteFunction::from_fn(pbox.clone(), |p| {
        let best = dom
            .iter()
            .map(|(x, v)| {
                let ip: i64 = p.0.iter().zip(&x.0).map(|(a, b)| a * b).sum();
                rat(ip) - *v
            })
            .max()
            .expect("nonempty domain");
        ExtendedValue::Finite(best)
    })
}

/// Distance used by the penalty constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PenaltyKind {
    /// `‖x - y‖₁`
    L1,
    /// `‖x - y‖₂²`
    L2Squared,
}

impl PenaltyKind {
    pub fn distance(self, x: &LatticePoint, y: &LatticePoint) -> i64 {
        let diffs = x.0.iter().zip(&y.0).map(|(a, b)| a - b);
        match self {
            PenaltyKind::L1 => diffs.map(i64::abs).sum(),
            PenaltyKind::L2Squared => diffs.map(|d| d * d).sum(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PenaltyKind::L1 => "l1",
            PenaltyKind::L2Squared => "l2sq",
        }
    }
}

impl std::str::FromStr for PenaltyKind {
    type Err = DcaError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "l1" => Ok(PenaltyKind::L1),
            "l2sq" => Ok(PenaltyKind::L2Squared),
            other => Err(DcaError::InvalidArgument(format!("unknown penalty kind {other:?}"))),
        }
    }
}

fn positive_weight(a: &Rational) -> Result<()> {
    if a.is_positive() {
        Ok(())
    } else {
        Err(DcaError::InvalidArgument(format!("penalty weight must be positive, got {a}")))
    }
}

/// `a · min_{y ∈ S} dist(x, y)` on `bx`.
pub fn penalty_distance(s: &LatticeSet, kind: PenaltyKind, a: &Rational, bx: &IntegerBox) -> Result<DiscreteFunction> {
    positive_weight(a)?;
    same_dim(s.dim(), bx.dim())?;
    if s.is_empty() {
        return Err(DcaError::EmptySet);
    }
    if s.iter().any(|p| !bx.contains(p)) {
        return Err(DcaError::Precondition("set is not contained in the box".into()));
    }
    DiscreteFunction::from_fn(bx.clone(), |x| {
        let d = s.iter().map(|y| kind.distance(x, y)).min().expect("nonempty");
        ExtendedValue::Finite(a * rat(d))
    })
}

/// Result of [`extend_with_penalty`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PenaltyExtension {
    pub function: DiscreteFunction,
    /// Smallest weight at which the extension agrees with `f` on `dom f`.
    pub threshold: Rational,
}

/// `g_a(x) = min_{y ∈ dom f} f(y) + a · dist(x, y)` on `bx`.
pub fn extend_with_penalty(
    f: &DiscreteFunction,
    kind: PenaltyKind,
    a: &Rational,
    bx: &IntegerBox,
) -> Result<PenaltyExtension> {
    positive_weight(a)?;
    same_dim(f.dim(), bx.dim())?;
    let dom: Vec<(LatticePoint, &Rational)> = f.finite_entries().collect();
    if dom.is_empty() {
        return Err(DcaError::EmptyDomain);
    }
    if dom.iter().any(|(p, _)| !bx.contains(p)) {
        return Err(DcaError::Precondition("effective domain is not contained in the box".into()));
    }
    let function = DiscreteFunction::from_fn(bx.clone(), |x| {
        let best = dom
            .iter()
            .map(|(y, v)| *v + a * rat(kind.distance(x, y)))
            .min()
            .expect("nonempty");
        ExtendedValue::Finite(best)
    })?;
    // g_a(x) = f(x) iff a ≥ (f(x) - f(y)) / dist(x, y) for every y in dom f.
    let mut threshold = Rational::zero();
    for (x, fx) in &dom {
        for (y, fy) in &dom {
            if x != y {
                let need = (*fx - *fy) / rat(kind.distance(x, y));
                if need > threshold {
                    threshold = need;
                }
            }
        }
    }
    Ok(PenaltyExtension { function, threshold })
}

/// Pointwise sum on the intersection of the boxes.
pub fn add_functions(f1: &DiscreteFunction, f2: &DiscreteFunction) -> Result<DiscreteFunction> {
    same_dim(f1.dim(), f2.dim())?;
    let bx = f1.domain_box().intersect(f2.domain_box()).ok_or(DcaError::EmptyDomain)?;
    DiscreteFunction::from_fn(bx, |x| f1.value(x) + f2.value(x))
}

/// Minimizes the projection onto `keep` by enumeration, then recovers the
/// dropped coordinates. Returns the lexicographically first such minimizer.
pub fn minimize_via_projection(f: &DiscreteFunction, keep: &[usize]) -> Result<(LatticePoint, ExtendedValue)> {
    let g = project_fn(f, keep)?;
    let (xk, v) = g.minimum();
    let x = f
        .finite_entries()
        .find(|(p, fv)| p.select(keep) == xk && **fv == v)
        .map(|(p, _)| p)
        .expect("projection minimum is attained");
    Ok((x, ExtendedValue::Finite(v)))
}

/// `{t · e_axis : lo ≤ t ≤ hi}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SegmentBox {
    pub axis: usize,
    pub lo: i64,
    pub hi: i64,
}

impl SegmentBox {
    pub fn new(axis: usize, lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(DcaError::InvalidBox);
        }
        Ok(SegmentBox { axis, lo, hi })
    }

    pub fn points(&self, dim: usize) -> Result<LatticeSet> {
        if self.axis >= dim {
            return Err(DcaError::InvalidArgument(format!("axis {} out of range for dimension {dim}", self.axis)));
        }
        LatticeSet::new(dim, (self.lo..=self.hi).map(|t| LatticePoint::axis(dim, self.axis, t)))
    }
}

/// Writes `x ∈ conv(S + B)` as a convex combination of points of
/// `(S + B) ∩ N(x)`, for integrally convex `S` and a segment `B`.
///
/// `x` is split as `y + z` with `y ∈ conv(S)` and `z` on the segment, `y` is
/// written over `S ∩ N(y)`, and each `y^(k)` is shifted by `ζ` or `ζ + 1`
/// along the axis so the shifted weights on `ζ + 1` total `frac(z)`. Points
/// whose axis coordinate is `⌊y⌋` take the `ζ + 1` shifts first.
pub fn segment_sum_certificate(s: &LatticeSet, b: &SegmentBox, x: &RationalPoint) -> Result<ConvexCombination> {
    if s.is_empty() {
        return Err(DcaError::EmptySet);
    }
    same_dim(s.dim(), x.dim())?;
    let n = s.dim();
    let axis = b.axis;
    let sum = minkowski_sum(s, &b.points(n)?)?;
    let split = match hull_membership(x, &sum)? {
        HullMembership::Inside(c) => c,
        HullMembership::Outside(h) => return Err(DcaError::NotInHull(Box::new(h))),
    };

    // y = Σ μ_j s_j, z = Σ μ_j t_j with s_j + t_j e = sum point j; any
    // feasible decomposition of each sum point will do.
    let mut y = vec![Rational::zero(); n];
    let mut z = Rational::zero();
    for (p, mu) in &split.support {
        let t = (b.lo..=b.hi)
            .find(|&t| s.contains(&p.sub(&LatticePoint::axis(n, axis, t))))
            .expect("sum point decomposes");
        for i in 0..n {
            let c = if i == axis { p.0[i] - t } else { p.0[i] };
            y[i] += mu * rat(c);
        }
        z += mu * rat(t);
    }
    let y = RationalPoint(y);
    let zeta = floor_to_i64(&z);
    let beta = &z - rat(zeta);

    let local = s.intersection(&integral_neighborhood(&y));
    let mut terms = match (!local.is_empty()).then(|| hull_membership(&y, &local)).transpose()? {
        Some(HullMembership::Inside(c)) => c.support,
        _ => {
            return Err(DcaError::Precondition(format!(
                "set is not integrally convex: {y} is not in the hull of its integral neighborhood"
            )))
        }
    };
    let y_floor = floor_to_i64(&y.0[axis]);
    // floor-side points first; ties lexicographic
    terms.sort_by(|(p, _), (q, _)| (p.0[axis] != y_floor, p).cmp(&(q.0[axis] != y_floor, q)));

    let x_floor = floor_to_i64(&x.0[axis]);
    let lambdas: Vec<&Rational> = terms.iter().map(|(_, w)| w).collect();
    let prefix: Vec<Rational> = std::iter::once(Rational::zero())
        .chain(lambdas.iter().scan(Rational::zero(), |acc, l| {
            *acc += *l;
            Some(acc.clone())
        }))
        .collect();
    // upper[k] = weight of term k shifted by ζ + 1
    let m = terms.len();
    let mut upper: Vec<Rational> = vec![Rational::zero(); m];
    if rat(x_floor - zeta) <= y.0[axis] {
        let k1 = (0..m).find(|&k| beta <= prefix[k + 1]).expect("β < 1");
        for (k, u) in upper.iter_mut().enumerate().take(k1) {
            *u = lambdas[k].clone();
        }
        upper[k1] = &beta - &prefix[k1];
    } else {
        // number of leading terms taken whole
        let k1 = (0..=m).rev().find(|&k| prefix[k] <= beta).expect("prefix[0] = 0");
        for (k, u) in upper.iter_mut().enumerate().take(k1) {
            *u = lambdas[k].clone();
        }
        upper[k1] = &beta - &prefix[k1];
    }

    let mut support: BTreeMap<LatticePoint, Rational> = BTreeMap::new();
    for ((p, lambda), up) in terms.iter().zip(&upper) {
        let down = lambda - up;
        for (shift, w) in [(zeta + 1, up.clone()), (zeta, down)] {
            if w.is_positive() {
                *support.entry(p.add(&LatticePoint::axis(n, axis, shift))).or_default() += w;
            }
        }
    }
    Ok(ConvexCombination {
        target: x.clone(),
        support: support.into_iter().collect(),
    })
}

/// [`segment_sum_certificate`] for a general box, written as the sum of its
/// axis segments: the first `n - 1` segments are added to `S` explicitly
/// and the certificate is built against the last.
pub fn box_sum_certificate(s: &LatticeSet, bx: &IntegerBox, x: &RationalPoint) -> Result<ConvexCombination> {
    same_dim(s.dim(), bx.dim())?;
    let n = s.dim();
    let mut acc = s.clone();
    for axis in 0..n - 1 {
        let seg = SegmentBox::new(axis, bx.lo().0[axis], bx.hi().0[axis])?;
        acc = minkowski_sum(&acc, &seg.points(n)?)?;
    }
    let last = SegmentBox::new(n - 1, bx.lo().0[n - 1], bx.hi().0[n - 1])?;
    segment_sum_certificate(&acc, &last, x)
}
