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

//! Exact geometry against brute-force subset enumeration.

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use dca_core::geometry::{
    cell_hull_equality, convex_envelope_value, hull_membership, local_convex_extension_certified, HullMembership,
};
use dca_core::lattice::{integral_neighborhood, neighborhood_box};
use dca_core::value::{rat, ratio};
use dca_core::{DiscreteFunction, ExtendedValue, IntegerBox, LatticePoint, LatticeSet, Rational, RationalPoint};

/// Solves `A λ = b` for a unique `λ` by Gauss–Jordan elimination, or
/// returns `None` if the system is inconsistent or underdetermined.
fn solve_unique(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let cols = a[0].len();
    let mut row = 0;
    for col in 0..cols {
        let pivot = (row..a.len()).find(|&r| !a[r][col].is_zero())?;
        a.swap(row, pivot);
        b.swap(row, pivot);
        let inv = Rational::one() / &a[row][col];
        for c in 0..cols {
            a[row][c] = &a[row][c] * &inv;
        }
        b[row] = &b[row] * &inv;
        for r in 0..a.len() {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in 0..cols {
                    let sub = &factor * &a[row][c];
                    a[r][c] -= sub;
                }
                let sub = &factor * &b[row];
                b[r] -= sub;
            }
        }
        row += 1;
    }
    // leftover rows must read 0 = 0
    b[row..].iter().all(Zero::is_zero).then(|| b[..cols].to_vec())
}

/// Minimum of `Σ λ_p v_p` over convex combinations of `pts` equal to `x`,
/// by trying every affinely independent support.
fn brute_min(x: &RationalPoint, pts: &[(LatticePoint, Rational)]) -> Option<Rational> {
    let n = x.dim();
    let mut best: Option<Rational> = None;
    for size in 1..=(n + 1).min(pts.len()) {
        for subset in pts.iter().combinations(size) {
            let mut a: Vec<Vec<Rational>> = (0..n).map(|i| subset.iter().map(|(p, _)| rat(p.0[i])).collect()).collect();
            a.push(vec![Rational::one(); size]);
            let mut b = x.0.clone();
            b.push(Rational::one());
            let Some(lambda) = solve_unique(a, b) else { continue };
            if lambda.iter().any(Signed::is_negative) {
                continue;
            }
            let obj: Rational = lambda.iter().zip(&subset).map(|(l, (_, v))| l * v).sum();
            if best.as_ref().is_none_or(|b| obj < *b) {
                best = Some(obj);
            }
        }
    }
    best
}

fn small_table() -> impl Strategy<Value = DiscreteFunction> {
    (2usize..=3).prop_flat_map(|n| {
        let len = 3usize.pow(n as u32);
        proptest::collection::vec(prop_oneof![4 => (-3i64..=3).prop_map(Some), 1 => Just(None)], len).prop_filter_map(
            "empty domain",
            move |vals| {
                let bx = IntegerBox::cube(n, 0, 2).unwrap();
                let values = vals.into_iter().map(|v| v.map_or(ExtendedValue::Infinity, ExtendedValue::int)).collect();
                DiscreteFunction::new(bx, values).ok()
            },
        )
    })
}

fn half_point(n: usize) -> impl Strategy<Value = RationalPoint> {
    proptest::collection::vec(0i64..=4, n).prop_map(|c| RationalPoint(c.into_iter().map(|v| ratio(v, 2)).collect()))
}

fn point_set(n: usize, hi: i64) -> impl Strategy<Value = LatticeSet> {
    proptest::collection::vec(proptest::collection::vec(0..=hi, n), 1..6)
        .prop_map(move |rows| LatticeSet::new(n, rows.into_iter().map(LatticePoint)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn local_extension_matches_enumeration((f, x) in small_table().prop_flat_map(|f| {
        let n = f.dim();
        (Just(f), half_point(n))
    })) {
        let ext = local_convex_extension_certified(&f, &x).unwrap();
        let pts: Vec<(LatticePoint, Rational)> = neighborhood_box(&x)
            .points()
            .filter_map(|p| f.finite_value(&p).map(|v| (p.clone(), v.clone())))
            .collect();
        match brute_min(&x, &pts) {
            None => prop_assert_eq!(ext.value, ExtendedValue::Infinity),
            Some(v) => {
                prop_assert_eq!(&ext.value, &ExtendedValue::Finite(v.clone()));
                let c = ext.combination.unwrap();
                prop_assert!(c.verify());
                prop_assert_eq!(c.objective(&f), ExtendedValue::Finite(v.clone()));
                // the minorant is a dual certificate for the same value
                let m = ext.minorant.unwrap();
                prop_assert_eq!(m.eval(&x), v);
                for (p, fv) in &pts {
                    prop_assert!(m.eval_lattice(p) <= *fv);
                }
            }
        }
    }

    #[test]
    fn envelope_matches_enumeration((f, x) in small_table().prop_flat_map(|f| {
        let n = f.dim();
        (Just(f), half_point(n))
    })) {
        let env = convex_envelope_value(&f, &x).unwrap();
        let pts: Vec<(LatticePoint, Rational)> = f.finite_entries().map(|(p, v)| (p, v.clone())).collect();
        let want = brute_min(&x, &pts).map_or(ExtendedValue::Infinity, ExtendedValue::Finite);
        prop_assert_eq!(&env, &want);
        let (local, _) = dca_core::geometry::local_convex_extension(&f, &x).unwrap();
        prop_assert!(env <= local);
    }

    #[test]
    fn hull_membership_matches_enumeration(
        (s, x) in (2usize..=3).prop_flat_map(|n| (point_set(n, 2), half_point(n)))
    ) {
        let pts: Vec<(LatticePoint, Rational)> = s.iter().map(|p| (p.clone(), Rational::zero())).collect();
        let inside = brute_min(&x, &pts).is_some();
        match hull_membership(&x, &s).unwrap() {
            HullMembership::Inside(c) => {
                prop_assert!(inside);
                prop_assert!(c.verify() && c.support_within(&s));
                prop_assert!(c.reduced().support.len() <= x.dim() + 1);
            }
            HullMembership::Outside(h) => {
                prop_assert!(!inside);
                prop_assert!(h.separates(&x, s.iter()));
            }
        }
    }

    /// A hole reported for a cell is a genuine hole; a cell reported clean
    /// has no hole at any point of the quarter grid.
    #[test]
    fn cell_test_against_grid(s in (2usize..=3).prop_flat_map(|n| point_set(n, 2))) {
        let n = s.dim();
        let bb = s.bounding_box().unwrap();
        let cells = IntegerBox::new(bb.lo().clone(), bb.hi().sub(&LatticePoint(vec![1; n])).join(bb.lo()));
        for a in cells.unwrap().points() {
            match cell_hull_equality(&s, &a).unwrap() {
                Some(hole) => {
                    prop_assert!(hole.verify(&s));
                    prop_assert!(hole.point.0.iter().zip(&a.0).all(|(q, &lo)| *q >= rat(lo) && *q <= rat(lo + 1)));
                }
                None => {
                    let grid = IntegerBox::new(a.scale(4), a.scale(4).add(&LatticePoint(vec![4; n]))).unwrap();
                    for g in grid.points() {
                        let x = RationalPoint(g.0.iter().map(|&v| ratio(v, 4)).collect());
                        if matches!(hull_membership(&x, &s).unwrap(), HullMembership::Inside(_)) {
                            let local = s.intersection(&integral_neighborhood(&x));
                            let covered = !local.is_empty()
                                && matches!(hull_membership(&x, &local).unwrap(), HullMembership::Inside(_));
                            prop_assert!(covered, "{x} uncovered in clean cell {a}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn segment_leaving_cell_has_hole() {
    let s = LatticeSet::from_rows(&[&[0, 0, 0], &[1, 2, 1]]);
    let hole = cell_hull_equality(&s, &LatticePoint::from([0, 0, 0])).unwrap().unwrap();
    assert!(hole.verify(&s));
    let (x, y) = (RationalPoint(vec![ratio(1, 2), rat(1), ratio(1, 2)]), &hole.point);
    assert!(hull_membership(y, &s).unwrap().combination().is_some());
    assert!(matches!(
        hull_membership(&x, &s.intersection(&integral_neighborhood(&x))),
        Err(_) | Ok(HullMembership::Outside(_))
    ));
}
