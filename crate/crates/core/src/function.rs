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

//! Dense function tables `f: box → Q ∪ {+∞}`, with `+∞` outside the box.

use num_traits::{Signed, Zero};

use crate::error::{DcaError, Result};
use crate::lattice::{IntegerBox, LatticePoint, LatticeSet};
use crate::value::{ExtendedValue, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteFunction {
    bx: IntegerBox,
    values: Vec<ExtendedValue>,
}

impl DiscreteFunction {
    /// `values` are listed in lexicographic order of the box points.
    pub fn new(bx: IntegerBox, values: Vec<ExtendedValue>) -> Result<Self> {
        if values.len() != bx.len() {
            return Err(DcaError::InvalidArgument(format!(
                "table has {} entries but the box has {} points",
                values.len(),
                bx.len()
            )));
        }
        if !values.iter().any(ExtendedValue::is_finite) {
            return Err(DcaError::EmptyDomain);
        }
        Ok(DiscreteFunction { bx, values })
    }

    pub fn from_fn<F>(bx: IntegerBox, mut f: F) -> Result<Self>
    where
        F: FnMut(&LatticePoint) -> ExtendedValue,
    {
        let values = bx.points().map(|p| f(&p)).collect();
        DiscreteFunction::new(bx, values)
    }

    /// `δ_S` tabulated on the bounding box of `S`.
    pub fn indicator(set: &LatticeSet) -> Result<Self> {
        let bx = set.bounding_box().ok_or(DcaError::EmptySet)?;
        Self::indicator_on(set, &bx)
    }

    /// `δ_S` tabulated on a caller-chosen box.
    pub fn indicator_on(set: &LatticeSet, bx: &IntegerBox) -> Result<Self> {
        DiscreteFunction::from_fn(bx.clone(), |p| {
            if set.contains(p) {
                ExtendedValue::zero()
            } else {
                ExtendedValue::Infinity
            }
        })
    }

    pub fn constant(bx: IntegerBox, c: Rational) -> Self {
        let values = vec![ExtendedValue::Finite(c); bx.len()];
        DiscreteFunction { bx, values }
    }

    pub fn dim(&self) -> usize {
        self.bx.dim()
    }

    pub fn domain_box(&self) -> &IntegerBox {
        &self.bx
    }

    pub fn values(&self) -> &[ExtendedValue] {
        &self.values
    }

    /// `f(x)`, with `+∞` outside the box.
    pub fn value(&self, x: &LatticePoint) -> ExtendedValue {
        match self.bx.index_of(x) {
            Some(i) => self.values[i].clone(),
            None => ExtendedValue::Infinity,
        }
    }

    pub fn value_ref(&self, x: &LatticePoint) -> Option<&ExtendedValue> {
        self.bx.index_of(x).map(|i| &self.values[i])
    }

    pub fn finite_value(&self, x: &LatticePoint) -> Option<&Rational> {
        self.value_ref(x).and_then(ExtendedValue::finite)
    }

    pub fn entries(&self) -> impl Iterator<Item = (LatticePoint, &ExtendedValue)> {
        self.bx.points().zip(self.values.iter())
    }

    /// Finite entries in lexicographic order.
    pub fn finite_entries(&self) -> impl Iterator<Item = (LatticePoint, &Rational)> {
        self.entries().filter_map(|(p, v)| v.finite().map(|q| (p, q)))
    }

    pub fn effective_domain(&self) -> LatticeSet {
        LatticeSet::new(self.dim(), self.finite_entries().map(|(p, _)| p))
            .expect("points share the box dimension")
    }

    /// Drops `+∞` margins so the box is the bounding box of `dom f`.
    pub fn trimmed(&self) -> DiscreteFunction {
        let dom_box = self
            .effective_domain()
            .bounding_box()
            .expect("nonempty domain");
        self.reboxed(&dom_box)
    }

    /// Same function tabulated on another box; values outside the old box
    /// become `+∞`. The caller must keep at least one finite value.
    pub(crate) fn reboxed(&self, bx: &IntegerBox) -> DiscreteFunction {
        DiscreteFunction {
            bx: bx.clone(),
            values: bx.points().map(|p| self.value(&p)).collect(),
        }
    }

    /// [`reboxed`](Self::reboxed), failing if no finite value survives.
    pub fn try_reboxed(&self, bx: &IntegerBox) -> Result<DiscreteFunction> {
        let g = self.reboxed(bx);
        if g.values.iter().any(ExtendedValue::is_finite) {
            Ok(g)
        } else {
            Err(DcaError::EmptyDomain)
        }
    }

    /// Minimum value and the lexicographically first minimizer.
    pub fn minimum(&self) -> (LatticePoint, Rational) {
        let mut best: Option<(LatticePoint, &Rational)> = None;
        for (p, v) in self.finite_entries() {
            if best.as_ref().is_none_or(|(_, b)| v < *b) {
                best = Some((p, v));
            }
        }
        let (p, v) = best.expect("nonempty domain");
        (p, v.clone())
    }

    pub fn apply(&self, t: &Transform) -> Result<DiscreteFunction> {
        basic_transform(self, t)
    }
}

/// The elementary operations on a single function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// `x ↦ f(x + b)`.
    Shift(LatticePoint),
    /// `x ↦ f(-x)`.
    NegateVariable,
    /// `x ↦ a·f(x)`, `a ≥ 0`.
    ScaleValues(Rational),
    /// `f[-p](x) = f(x) - ⟨p, x⟩`.
    SubtractLinear(Vec<Rational>),
    /// `x ↦ f(αx)` for an integer `α ≥ 1`.
    DomainScale(i64),
    /// `x ↦ f(x, 0)`: the listed coordinates are fixed at zero and dropped.
    Restrict(Vec<usize>),
}

pub fn basic_transform(f: &DiscreteFunction, t: &Transform) -> Result<DiscreteFunction> {
    let n = f.dim();
    let lo = f.bx.lo();
    let hi = f.bx.hi();
    match t {
        Transform::Shift(b) => {
            if b.dim() != n {
                return Err(DcaError::DimensionMismatch { expected: n, got: b.dim() });
            }
            let bx = IntegerBox::new(lo.sub(b), hi.sub(b))?;
            Ok(DiscreteFunction {
                bx,
                values: f.values.clone(),
            })
        }
        Transform::NegateVariable => {
            let bx = IntegerBox::new(hi.neg(), lo.neg())?;
            DiscreteFunction::from_fn(bx, |x| f.value(&x.neg()))
        }
        Transform::ScaleValues(a) => {
            if a.is_negative() {
                return Err(DcaError::InvalidArgument("value scale must be nonnegative".into()));
            }
            Ok(DiscreteFunction {
                bx: f.bx.clone(),
                values: f.values.iter().map(|v| v.scale(a)).collect(),
            })
        }
        Transform::SubtractLinear(p) => {
            if p.len() != n {
                return Err(DcaError::DimensionMismatch { expected: n, got: p.len() });
            }
            if p.iter().all(Zero::is_zero) {
                return Ok(f.clone());
            }
            let values = f
                .entries()
                .map(|(x, v)| v.shift(&-x.to_rational().dot(p)))
                .collect();
            Ok(DiscreteFunction {
                bx: f.bx.clone(),
                values,
            })
        }
        Transform::DomainScale(alpha) => {
            if *alpha < 1 {
                return Err(DcaError::InvalidArgument("domain scale must be at least 1".into()));
            }
            let new_lo: Vec<i64> = lo.0.iter().map(|&l| div_ceil(l, *alpha)).collect();
            let new_hi: Vec<i64> = hi.0.iter().map(|&h| h.div_euclid(*alpha)).collect();
            let bx = IntegerBox::new(LatticePoint(new_lo), LatticePoint(new_hi))
                .map_err(|_| DcaError::EmptyDomain)?;
            DiscreteFunction::from_fn(bx, |x| f.value(&x.scale(*alpha)))
        }
        Transform::Restrict(fixed) => {
            if fixed.iter().any(|&i| i >= n) {
                return Err(DcaError::InvalidArgument("restricted coordinate out of range".into()));
            }
            let keep: Vec<usize> = (0..n).filter(|i| !fixed.contains(i)).collect();
            if keep.is_empty() {
                return Err(DcaError::InvalidArgument("restriction must keep a coordinate".into()));
            }
            let bx = IntegerBox::new(lo.select(&keep), hi.select(&keep))?;
            DiscreteFunction::from_fn(bx, |x| {
                let mut full = vec![0; n];
                for (j, &i) in keep.iter().enumerate() {
                    full[i] = x.0[j];
                }
                f.value(&LatticePoint(full))
            })
        }
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}
