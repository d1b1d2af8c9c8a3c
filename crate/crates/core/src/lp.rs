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

//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Problems are in equality form: minimize `c·x` subject to `A x = b`,
//! `x ≥ 0`. Besides a primal optimum the solver reports dual multipliers
//! `y` with `yᵀA ≤ c` and `yᵀb = c·x`, and on infeasibility a Farkas ray `y`
//! with `yᵀA ≤ 0 < yᵀb`. Both let callers certify their answers.

use num_traits::{One, Signed, Zero};

use crate::value::Rational;

#[derive(Clone, Debug)]
pub struct LinearProgram {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    cost: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    pub duals: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible { farkas: Vec<Rational> },
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            rows: Vec::new(),
            rhs: Vec::new(),
            cost: vec![Rational::zero(); num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.cost.len()
    }

    pub fn add_equality(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.rows.push(coeffs);
        self.rhs.push(rhs);
    }

    pub fn set_cost(&mut self, cost: Vec<Rational>) {
        assert_eq!(cost.len(), self.num_vars());
        self.cost = cost;
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(&self.cost)
    }
}

struct Tableau {
    m: usize,
    n: usize,
    // m rows of n real columns, m artificial columns, then the rhs.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    sign: Vec<bool>,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.rows.len();
        let n = lp.num_vars();
        let mut t = Vec::with_capacity(m);
        let mut sign = Vec::with_capacity(m);
        for (i, (row, b)) in lp.rows.iter().zip(&lp.rhs).enumerate() {
            let flip = b.is_negative();
            let mut r: Vec<Rational> = Vec::with_capacity(n + m + 1);
            r.extend(row.iter().map(|a| if flip { -a } else { a.clone() }));
            r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            r.push(if flip { -b } else { b.clone() });
            t.push(r);
            sign.push(flip);
        }
        Tableau {
            m,
            n,
            t,
            basis: (n..n + m).collect(),
            sign,
        }
    }

    fn rhs(&self, i: usize) -> &Rational {
        &self.t[i][self.n + self.m]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.n + self.m + 1;
        let p = self.t[row][col].clone();
        if !p.is_one() {
            for j in 0..width {
                if !self.t[row][j].is_zero() {
                    self.t[row][j] = &self.t[row][j] / &p;
                }
            }
        }
        let pivot_row = self.t[row].clone();
        for i in 0..self.m {
            if i == row || self.t[i][col].is_zero() {
                continue;
            }
            let factor = self.t[i][col].clone();
            for (j, pv) in pivot_row.iter().enumerate() {
                if !pv.is_zero() {
                    self.t[i][j] = &self.t[i][j] - &factor * pv;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced cost of real column `j` under basic costs `cb`.
    fn reduced_cost(&self, cost_j: &Rational, cb: &[Rational], j: usize) -> Rational {
        let mut d = cost_j.clone();
        for (i, c) in cb.iter().enumerate() {
            if !c.is_zero() && !self.t[i][j].is_zero() {
                d -= c * &self.t[i][j];
            }
        }
        d
    }

    /// Runs Bland's rule over the real columns. Returns false on an
    /// unbounded direction.
    fn optimize(&mut self, cost: &dyn Fn(usize) -> Rational) -> bool {
        loop {
            let cb: Vec<Rational> = self.basis.iter().map(|&k| cost(k)).collect();
            let entering = (0..self.n).find(|&j| {
                !self.basis.contains(&j) && self.reduced_cost(&cost(j), &cb, j).is_negative()
            });
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m {
                let a = &self.t[i][col];
                if a.is_positive() {
                    let ratio = self.rhs(i) / a;
                    let better = match &leave {
                        None => true,
                        Some((r, best)) => {
                            ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return false,
            }
        }
    }

    /// `y = c_B B⁻¹`, read off the artificial columns, mapped back to the
    /// caller's row signs.
    fn duals(&self, cost: &dyn Fn(usize) -> Rational) -> Vec<Rational> {
        let cb: Vec<Rational> = self.basis.iter().map(|&k| cost(k)).collect();
        (0..self.m)
            .map(|r| {
                let mut y = Rational::zero();
                for (i, c) in cb.iter().enumerate() {
                    if !c.is_zero() {
                        y += c * &self.t[i][self.n + r];
                    }
                }
                if self.sign[r] {
                    -y
                } else {
                    y
                }
            })
            .collect()
    }

    fn run(mut self, cost: &[Rational]) -> LpOutcome {
        let n = self.n;
        let phase1 = move |j: usize| if j >= n { Rational::one() } else { Rational::zero() };
        self.optimize(&phase1);
        let infeasibility: Rational = (0..self.m)
            .filter(|&i| self.basis[i] >= n)
            .map(|i| self.rhs(i).clone())
            .sum();
        if infeasibility.is_positive() {
            return LpOutcome::Infeasible {
                farkas: self.duals(&phase1),
            };
        }
        // Drive zero-level artificials out where a real column allows it.
        for i in 0..self.m {
            if self.basis[i] >= n {
                if let Some(j) = (0..n).find(|&j| !self.t[i][j].is_zero()) {
                    self.pivot(i, j);
                }
            }
        }
        let phase2 = |j: usize| if j >= n { Rational::zero() } else { cost[j].clone() };
        if !self.optimize(&phase2) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); n];
        for i in 0..self.m {
            if self.basis[i] < n {
                x[self.basis[i]] = self.rhs(i).clone();
            }
        }
        let value = x.iter().zip(cost).map(|(a, c)| a * c).sum();
        LpOutcome::Optimal(LpSolution {
            x,
            value,
            duals: self.duals(&phase2),
        })
    }
}
