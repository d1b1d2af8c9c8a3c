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

//! Lattice and rational points, integer boxes, finite lattice sets, and the
//! elementary constructions built on them: integral neighborhoods, rounded
//! midpoints and the nested step decomposition of a difference vector.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{DcaError, Result};
use crate::value::{ceil_to_i64, floor_to_i64, format_rational, rat, Rational};

/// Largest dimension any exponential enumeration in this crate accepts.
pub const MAX_DIM: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    /// `e_axis` scaled by `t`.
    pub fn axis(dim: usize, axis: usize, t: i64) -> Self {
        let mut v = vec![0; dim];
        v[axis] = t;
        LatticePoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> LatticePoint {
        LatticePoint(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise maximum `x ∨ y`.
    pub fn join(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Componentwise minimum `x ∧ y`.
    pub fn meet(&self, other: &LatticePoint) -> LatticePoint {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn dist_inf(&self, other: &LatticePoint) -> i64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .max()
            .unwrap_or(0)
    }

    pub fn to_rational(&self) -> RationalPoint {
        RationalPoint(self.0.iter().map(|&c| rat(c)).collect())
    }

    /// Keeps the listed coordinates, in the listed order.
    pub fn select(&self, keep: &[usize]) -> LatticePoint {
        LatticePoint(keep.iter().map(|&i| self.0[i]).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl From<&[i64]> for LatticePoint {
    fn from(c: &[i64]) -> Self {
        LatticePoint(c.to_vec())
    }
}

impl<const N: usize> From<[i64; N]> for LatticePoint {
    fn from(c: [i64; N]) -> Self {
        LatticePoint(c.to_vec())
    }
}

/// A point of `Q^n`. `num_rational` keeps every coordinate reduced with a
/// positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn new(coords: Vec<Rational>) -> Self {
        RationalPoint(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn floor(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(floor_to_i64).collect())
    }

    pub fn ceil(&self) -> LatticePoint {
        LatticePoint(self.0.iter().map(ceil_to_i64).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    /// Returns the lattice point if every coordinate is an integer.
    pub fn to_lattice(&self) -> Option<LatticePoint> {
        self.is_integral().then(|| self.floor())
    }

    /// Indices of the non-integral coordinates.
    pub fn fractional_axes(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| !self.0[i].is_integer()).collect()
    }

    /// `(x + y) / 2` of two lattice points.
    pub fn midpoint(x: &LatticePoint, y: &LatticePoint) -> RationalPoint {
        let two = rat(2);
        RationalPoint(
            x.0.iter()
                .zip(&y.0)
                .map(|(a, b)| rat(a + b) / &two)
                .collect(),
        )
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        self.0
            .iter()
            .zip(other)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

/// The integer interval `[lo, hi]_Z`, both corners finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntegerBox {
    lo: LatticePoint,
    hi: LatticePoint,
}

impl IntegerBox {
    pub fn new(lo: LatticePoint, hi: LatticePoint) -> Result<Self> {
        if lo.dim() != hi.dim() {
            return Err(DcaError::DimensionMismatch {
                expected: lo.dim(),
                got: hi.dim(),
            });
        }
        if lo.dim() == 0 || lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
            return Err(DcaError::InvalidBox);
        }
        Ok(IntegerBox { lo, hi })
    }

    /// `[0, 1]^n`-style helper: `[lo·1, hi·1]`.
    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        IntegerBox::new(LatticePoint(vec![lo; dim]), LatticePoint(vec![hi; dim]))
    }

    pub fn lo(&self) -> &LatticePoint {
        &self.lo
    }

    pub fn hi(&self) -> &LatticePoint {
        &self.hi
    }

    pub fn dim(&self) -> usize {
        self.lo.dim()
    }

    pub fn extent(&self, axis: usize) -> usize {
        (self.hi.0[axis] - self.lo.0[axis] + 1) as usize
    }

    pub fn len(&self) -> usize {
        (0..self.dim()).map(|i| self.extent(i)).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        x.dim() == self.dim()
            && x
                .0
                .iter()
                .zip(self.lo.0.iter().zip(&self.hi.0))
                .all(|(c, (l, h))| l <= c && c <= h)
    }

    pub fn contains_rational(&self, x: &RationalPoint) -> bool {
        x.dim() == self.dim()
            && x
                .0
                .iter()
                .zip(self.lo.0.iter().zip(&self.hi.0))
                .all(|(c, (l, h))| &rat(*l) <= c && c <= &rat(*h))
    }

    /// Row-major position of `x` (last axis fastest), matching
    /// lexicographic order of the points.
    pub fn index_of(&self, x: &LatticePoint) -> Option<usize> {
        if !self.contains(x) {
            return None;
        }
        let mut idx = 0usize;
        for i in 0..self.dim() {
            idx = idx * self.extent(i) + (x.0[i] - self.lo.0[i]) as usize;
        }
        Some(idx)
    }

    pub fn point_at(&self, mut idx: usize) -> LatticePoint {
        let mut c = vec![0; self.dim()];
        for i in (0..self.dim()).rev() {
            let e = self.extent(i);
            c[i] = self.lo.0[i] + (idx % e) as i64;
            idx /= e;
        }
        LatticePoint(c)
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> BoxIter<'_> {
        BoxIter {
            bx: self,
            next: Some(self.lo.clone()),
        }
    }

    /// Smallest box containing both.
    pub fn hull(&self, other: &IntegerBox) -> IntegerBox {
        IntegerBox {
            lo: self.lo.meet(&other.lo),
            hi: self.hi.join(&other.hi),
        }
    }

    pub fn intersect(&self, other: &IntegerBox) -> Option<IntegerBox> {
        IntegerBox::new(self.lo.join(&other.lo), self.hi.meet(&other.hi)).ok()
    }

    pub fn to_set(&self) -> LatticeSet {
        LatticeSet {
            dim: self.dim(),
            points: self.points().collect(),
        }
    }
}

pub struct BoxIter<'a> {
    bx: &'a IntegerBox,
    next: Option<LatticePoint>,
}

impl Iterator for BoxIter<'_> {
    type Item = LatticePoint;

    fn next(&mut self) -> Option<LatticePoint> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.dim();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if succ.0[i] < self.bx.hi.0[i] {
                succ.0[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ.0[i] = self.bx.lo.0[i];
        }
        Some(cur)
    }
}

/// A finite set of lattice points of a fixed dimension, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSet {
    dim: usize,
    points: BTreeSet<LatticePoint>,
}

impl LatticeSet {
    pub fn empty(dim: usize) -> Self {
        LatticeSet {
            dim,
            points: BTreeSet::new(),
        }
    }

    pub fn new<I>(dim: usize, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = LatticePoint>,
    {
        if dim == 0 {
            return Err(DcaError::InvalidArgument("dimension must be positive".into()));
        }
        let mut set = LatticeSet::empty(dim);
        for p in points {
            set.insert(p)?;
        }
        Ok(set)
    }

    /// Builds a set from coordinate rows; the dimension is taken from the
    /// first row. Panics on ragged input, so it is meant for literals.
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let dim = rows.first().map(|r| r.len()).expect("at least one point");
        LatticeSet::new(dim, rows.iter().map(|r| LatticePoint::from(*r))).expect("consistent rows")
    }

    pub fn insert(&mut self, p: LatticePoint) -> Result<bool> {
        if p.dim() != self.dim {
            return Err(DcaError::DimensionMismatch {
                expected: self.dim,
                got: p.dim(),
            });
        }
        Ok(self.points.insert(p))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.points.contains(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LatticePoint> + Clone {
        self.points.iter()
    }

    pub fn bounding_box(&self) -> Option<IntegerBox> {
        let mut it = self.points.iter();
        let first = it.next()?;
        let (lo, hi) = it.fold((first.clone(), first.clone()), |(lo, hi), p| {
            (lo.meet(p), hi.join(p))
        });
        Some(IntegerBox { lo, hi })
    }

    /// `true` when the set equals the lattice points of its bounding box.
    pub fn is_box(&self) -> bool {
        self.bounding_box().is_some_and(|b| b.len() == self.len())
    }

    pub fn intersection(&self, other: &LatticeSet) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            points: self.points.intersection(&other.points).cloned().collect(),
        }
    }

    /// Points lying in `[lo, hi]_Z`.
    pub fn restrict_to(&self, bx: &IntegerBox) -> LatticeSet {
        LatticeSet {
            dim: self.dim,
            points: self.points.iter().filter(|p| bx.contains(p)).cloned().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a LatticeSet {
    type Item = &'a LatticePoint;
    type IntoIter = std::collections::btree_set::Iter<'a, LatticePoint>;

    fn into_iter(self) -> Self::IntoIter {
        self.points.iter()
    }
}

/// `N(x) = [⌊x⌋, ⌈x⌉]_Z`.
pub fn integral_neighborhood(x: &RationalPoint) -> LatticeSet {
    neighborhood_box(x).to_set()
}

pub fn neighborhood_box(x: &RationalPoint) -> IntegerBox {
    IntegerBox {
        lo: x.floor(),
        hi: x.ceil(),
    }
}

/// `(⌈(x+y)/2⌉, ⌊(x+y)/2⌋)`, computed in integer arithmetic.
pub fn rounded_midpoints(x: &LatticePoint, y: &LatticePoint) -> Result<(LatticePoint, LatticePoint)> {
    check_dims(x, y)?;
    let up = x.0.iter().zip(&y.0).map(|(a, b)| (a + b).div_euclid(2) + (a + b).rem_euclid(2));
    let down = x.0.iter().zip(&y.0).map(|(a, b)| (a + b).div_euclid(2));
    Ok((LatticePoint(up.collect()), LatticePoint(down.collect())))
}

pub(crate) fn check_dims(x: &LatticePoint, y: &LatticePoint) -> Result<()> {
    if x.dim() != y.dim() {
        return Err(DcaError::DimensionMismatch {
            expected: x.dim(),
            got: y.dim(),
        });
    }
    Ok(())
}

/// Writing `y - x = Σ_k (1_{A_k} - 1_{B_k})` with
/// `A_k = {i : y_i - x_i ≥ m+1-k}` and `B_k = {i : y_i - x_i ≤ -k}`,
/// `m = ‖y - x‖∞`. Index sets are 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDecomposition {
    pub dim: usize,
    pub steps: Vec<(Vec<usize>, Vec<usize>)>,
}

impl StepDecomposition {
    pub fn m(&self) -> usize {
        self.steps.len()
    }

    /// The `{-1,0,1}` vector `1_{A_k} - 1_{B_k}` of step `k` (0-based).
    pub fn step_vector(&self, k: usize) -> LatticePoint {
        let mut v = vec![0; self.dim];
        let (a, b) = &self.steps[k];
        for &i in a {
            v[i] += 1;
        }
        for &i in b {
            v[i] -= 1;
        }
        LatticePoint(v)
    }

    /// `d = Σ_{k ∈ J} (1_{A_k} - 1_{B_k})` for 0-based step indices `J`.
    pub fn partial_sum(&self, subset: &[usize]) -> LatticePoint {
        subset
            .iter()
            .fold(LatticePoint::zeros(self.dim), |acc, &k| acc.add(&self.step_vector(k)))
    }

    pub fn total(&self) -> LatticePoint {
        let all: Vec<usize> = (0..self.m()).collect();
        self.partial_sum(&all)
    }
}

pub fn decompose_difference(x: &LatticePoint, y: &LatticePoint) -> Result<StepDecomposition> {
    check_dims(x, y)?;
    if x == y {
        return Err(DcaError::IdenticalPoints);
    }
    let diff = y.sub(x);
    let m = x.dist_inf(y);
    let steps = (1..=m)
        .map(|k| {
            let a = (0..diff.dim()).filter(|&i| diff.0[i] >= m + 1 - k).collect();
            let b = (0..diff.dim()).filter(|&i| diff.0[i] <= -k).collect();
            (a, b)
        })
        .collect();
    Ok(StepDecomposition {
        dim: x.dim(),
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::ratio;
    use proptest::prelude::*;

    fn lp(c: &[i64]) -> LatticePoint {
        LatticePoint::from(c)
    }

    #[test]
    fn neighborhood_of_half_point() {
        let x = RationalPoint(vec![ratio(1, 2), ratio(1, 2)]);
        let n = integral_neighborhood(&x);
        assert_eq!(n, LatticeSet::from_rows(&[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]));
    }

    #[test]
    fn neighborhood_of_integral_point() {
        let x = lp(&[2, 3]).to_rational();
        assert_eq!(integral_neighborhood(&x), LatticeSet::from_rows(&[&[2, 3]]));
    }

    #[test]
    fn neighborhood_of_conjugate_midpoint() {
        let x = RationalPoint(vec![ratio(1, 2), ratio(1, 2), ratio(1, 2), rat(1)]);
        let n = integral_neighborhood(&x);
        assert_eq!(n.len(), 8);
        assert!(n.iter().all(|p| p.0[3] == 1 && p.0[..3].iter().all(|&c| c == 0 || c == 1)));
    }

    #[test]
    fn midpoints_from_examples() {
        assert_eq!(
            rounded_midpoints(&lp(&[0, 0, 1]), &lp(&[2, 1, 0])).unwrap(),
            (lp(&[1, 1, 1]), lp(&[1, 0, 0]))
        );
        assert_eq!(
            rounded_midpoints(&lp(&[3, 3]), &lp(&[3, 3])).unwrap(),
            (lp(&[3, 3]), lp(&[3, 3]))
        );
        assert_eq!(
            rounded_midpoints(&lp(&[0, 1, 1]), &lp(&[1, 1, 0])).unwrap(),
            (lp(&[1, 1, 1]), lp(&[0, 1, 0]))
        );
        assert!(rounded_midpoints(&lp(&[0]), &lp(&[0, 1])).is_err());
    }

    #[test]
    fn decomposition_of_example_pair() {
        let d = decompose_difference(&lp(&[0, 0, 1]), &lp(&[2, 1, 0])).unwrap();
        assert_eq!(d.steps, vec![(vec![0], vec![2]), (vec![0, 1], vec![])]);
        assert_eq!(d.total(), lp(&[2, 1, -1]));
    }

    #[test]
    fn decomposition_unit_and_mixed() {
        let d = decompose_difference(&lp(&[0, 0, 0]), &lp(&[1, 0, 0])).unwrap();
        assert_eq!(d.steps, vec![(vec![0], vec![])]);
        let d = decompose_difference(&lp(&[0, 0]), &lp(&[3, -2])).unwrap();
        assert_eq!(
            d.steps,
            vec![(vec![0], vec![1]), (vec![0], vec![1]), (vec![0], vec![])]
        );
        assert_eq!(
            decompose_difference(&lp(&[1, 1]), &lp(&[1, 1])),
            Err(DcaError::IdenticalPoints)
        );
    }

    #[test]
    fn box_enumeration_order_and_index() {
        let b = IntegerBox::new(lp(&[0, -1]), lp(&[1, 1])).unwrap();
        let pts: Vec<_> = b.points().collect();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], lp(&[0, -1]));
        assert_eq!(pts[5], lp(&[1, 1]));
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(b.index_of(p), Some(i));
            assert_eq!(&b.point_at(i), p);
        }
        assert!(IntegerBox::new(lp(&[1]), lp(&[0])).is_err());
    }

    fn small_point(dim: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..=4, dim)
    }

    proptest! {
        #[test]
        fn decomposition_invariants(x in small_point(4), y in small_point(4)) {
            let (x, y) = (LatticePoint(x), LatticePoint(y));
            prop_assume!(x != y);
            let d = decompose_difference(&x, &y).unwrap();
            let m = d.m();
            prop_assert_eq!(m as i64, x.dist_inf(&y));
            for k in 1..m {
                let (a0, b0) = &d.steps[k - 1];
                let (a1, b1) = &d.steps[k];
                prop_assert!(a0.iter().all(|i| a1.contains(i)));
                prop_assert!(b1.iter().all(|i| b0.contains(i)));
            }
            let (a_last, _) = &d.steps[m - 1];
            let (a_first, b_first) = &d.steps[0];
            let (_, b_last) = &d.steps[m - 1];
            prop_assert!(a_last.iter().all(|i| !b_first.contains(i)));
            prop_assert!(!(a_first.is_empty() && b_last.is_empty()));
            // re-sum by hand
            let mut acc = vec![0i64; 4];
            for (a, b) in &d.steps {
                for &i in a { acc[i] += 1; }
                for &i in b { acc[i] -= 1; }
            }
            prop_assert_eq!(LatticePoint(acc), y.sub(&x));
        }

        #[test]
        fn midpoints_sum_and_lie_in_neighborhood(x in small_point(3), y in small_point(3)) {
            let (x, y) = (LatticePoint(x), LatticePoint(y));
            let (up, down) = rounded_midpoints(&x, &y).unwrap();
            prop_assert_eq!(up.add(&down), x.add(&y));
            let n = integral_neighborhood(&RationalPoint::midpoint(&x, &y));
            prop_assert!(n.contains(&up) && n.contains(&down));
        }

        #[test]
        fn neighborhood_matches_rounding(num in proptest::collection::vec(-9i64..=9, 3), den in 1i64..=4) {
            let x = RationalPoint(num.iter().map(|&a| ratio(a, den)).collect());
            let n = integral_neighborhood(&x);
            prop_assert_eq!(n.len(), 1 << x.fractional_axes().len());
            for p in &n {
                for i in 0..3 {
                    let c = rat(p.0[i]);
                    prop_assert!((c.clone() - &x.0[i]) < rat(1) && (&x.0[i] - c) < rat(1));
                }
            }
        }
    }
}
