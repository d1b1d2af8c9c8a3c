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

//! Small exact linear algebra: null spaces and affine hulls.

use num_traits::{One, Zero};

use crate::lattice::LatticePoint;
use crate::value::{rat, Rational};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::one() / &rows[r][c];
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &f * pv;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{h : row·h = 0 for every row}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut h = vec![Rational::zero(); ncols];
            h[fc] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                h[pc] = -m[r][fc].clone();
            }
            h
        })
        .collect()
}

pub fn diff_row(p: &LatticePoint, base: &LatticePoint) -> Vec<Rational> {
    p.0.iter().zip(&base.0).map(|(a, b)| rat(a - b)).collect()
}

/// Dimension of the affine hull of a nonempty point list.
pub fn affine_dimension(points: &[LatticePoint]) -> usize {
    let base = &points[0];
    let mut rows: Vec<Vec<Rational>> = points[1..].iter().map(|p| diff_row(p, base)).collect();
    rref(&mut rows, base.dim()).len()
}
