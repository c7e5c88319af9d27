//! Dense two-phase simplex over exact rationals, Bland's rule throughout.
//!
//! Problems are in standard form: maximize `cᵀx` subject to `Ax = b`,
//! `x ≥ 0`. Every optimum is re-checked by substitution, and against the
//! dual solution read off the final tableau.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub a: Vec<Vec<Rational>>,
    pub b: Vec<Rational>,
    pub c: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpSolution {
    pub value: Rational,
    pub x: Vec<Rational>,
    /// multipliers of the equality rows; `Aᵀy ≥ c` and `bᵀy = value`
    pub dual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.cols]
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        self.basis[r] = col;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let mut z = -cost[j].clone();
        for (i, &bi) in self.basis.iter().enumerate() {
            if !cost[bi].is_zero() && !self.rows[i][j].is_zero() {
                z += &cost[bi] * &self.rows[i][j];
            }
        }
        z
    }

    /// Maximizes `costᵀx` over columns flagged in `allowed`. Returns false
    /// when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.cols).find(|&j| allowed[j] && self.reduced_cost(cost, j).is_negative());
            let Some(col) = entering else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else {
                return false;
            };
            self.pivot(r, col);
        }
    }

    fn objective(&self, cost: &[Rational]) -> Rational {
        self.basis.iter().enumerate().map(|(i, &bi)| &cost[bi] * self.rhs(i)).sum()
    }
}

impl LpProblem {
    pub fn solve(&self) -> Result<LpResult> {
        let m = self.b.len();
        let nvar = self.c.len();
        if self.a.len() != m || self.a.iter().any(|row| row.len() != nvar) {
            return Err(Error::DimensionMismatch { expected: nvar, got: self.a.first().map_or(0, Vec::len) });
        }
        let cols = nvar + m;
        let mut signs = vec![Rational::one(); m];
        let mut rows = Vec::with_capacity(m);
        for i in 0..m {
            let flip = self.b[i].is_negative();
            if flip {
                signs[i] = -Rational::one();
            }
            let mut row: Vec<Rational> = self.a[i].iter().map(|v| if flip { -v } else { v.clone() }).collect();
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(if flip { -self.b[i].clone() } else { self.b[i].clone() });
            rows.push(row);
        }
        let mut t = Tableau { rows, basis: (nvar..cols).collect(), cols };

        // phase 1: drive the artificials to zero
        let mut cost1 = vec![Rational::zero(); cols];
        for c in cost1.iter_mut().skip(nvar) {
            *c = -Rational::one();
        }
        let all = vec![true; cols];
        t.optimize(&cost1, &all);
        if t.objective(&cost1).is_negative() {
            return Ok(LpResult::Infeasible);
        }
        for i in 0..m {
            if t.basis[i] >= nvar {
                if let Some(j) = (0..nvar).find(|&j| !t.rows[i][j].is_zero()) {
                    t.pivot(i, j);
                }
                // otherwise the row is redundant and its artificial stays at 0
            }
        }

        // phase 2
        let mut cost2 = self.c.clone();
        cost2.resize(cols, Rational::zero());
        let allowed: Vec<bool> = (0..cols).map(|j| j < nvar).collect();
        if !t.optimize(&cost2, &allowed) {
            return Ok(LpResult::Unbounded);
        }

        let mut x = vec![Rational::zero(); nvar];
        for (i, &bi) in t.basis.iter().enumerate() {
            if bi < nvar {
                x[bi] = t.rhs(i).clone();
            }
        }
        let value = t.objective(&cost2);
        let dual: Vec<Rational> = (0..m).map(|i| t.reduced_cost(&cost2, nvar + i) * &signs[i]).collect();
        let sol = LpSolution { value, x, dual };
        self.verify(&sol)?;
        Ok(LpResult::Optimal(sol))
    }

    /// Primal feasibility, dual feasibility and equal objective values.
    pub fn verify(&self, sol: &LpSolution) -> Result<()> {
        let fail = |what: &str| Err(Error::Inconsistency(format!("LP certificate check failed: {what}")));
        if sol.x.iter().any(Signed::is_negative) {
            return fail("negative primal variable");
        }
        for (row, bi) in self.a.iter().zip(&self.b) {
            let lhs: Rational = row.iter().zip(&sol.x).map(|(a, x)| a * x).sum();
            if lhs != *bi {
                return fail("equality constraint violated");
            }
        }
        let primal: Rational = self.c.iter().zip(&sol.x).map(|(c, x)| c * x).sum();
        if primal != sol.value {
            return fail("objective mismatch");
        }
        for j in 0..self.c.len() {
            let col: Rational = self.a.iter().zip(&sol.dual).map(|(row, y)| &row[j] * y).sum();
            if col < self.c[j] {
                return fail("dual infeasible");
            }
        }
        let dual_value: Rational = self.b.iter().zip(&sol.dual).map(|(b, y)| b * y).sum();
        if dual_value != sol.value {
            return fail("duality gap");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn small_optimum() {
        // max x + y s.t. x + 2y + s1 = 4, 3x + y + s2 = 6
        let lp = LpProblem { a: vec![q(&[1, 2, 1, 0]), q(&[3, 1, 0, 1])], b: q(&[4, 6]), c: q(&[1, 1, 0, 0]) };
        match lp.solve().unwrap() {
            LpResult::Optimal(s) => {
                assert_eq!(s.value, ratio(14, 5));
                assert_eq!(&s.x[..2], &[ratio(8, 5), ratio(6, 5)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LpProblem { a: vec![q(&[1, 1])], b: q(&[-1]), c: q(&[0, 0]) };
        assert_eq!(lp.solve().unwrap(), LpResult::Infeasible);
        let lp = LpProblem { a: vec![q(&[1, -1])], b: q(&[1]), c: q(&[1, 0]) };
        assert_eq!(lp.solve().unwrap(), LpResult::Unbounded);
    }

    #[test]
    fn redundant_rows_are_tolerated() {
        let lp = LpProblem { a: vec![q(&[1, 1]), q(&[2, 2])], b: q(&[1, 2]), c: q(&[1, 0]) };
        match lp.solve().unwrap() {
            LpResult::Optimal(s) => assert_eq!(s.value, int(1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn degenerate_problem_terminates() {
        // a classic cycling example under the largest-coefficient rule
        let lp = LpProblem {
            a: vec![
                vec![ratio(1, 2), ratio(-11, 2), ratio(-5, 2), int(9), int(1), int(0), int(0)],
                vec![ratio(1, 2), ratio(-3, 2), ratio(-1, 2), int(1), int(0), int(1), int(0)],
                vec![int(1), int(0), int(0), int(0), int(0), int(0), int(1)],
            ],
            b: q(&[0, 0, 1]),
            c: vec![int(10), int(-57), int(-9), int(-24), int(0), int(0), int(0)],
        };
        match lp.solve().unwrap() {
            LpResult::Optimal(s) => assert_eq!(s.value, int(1)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
