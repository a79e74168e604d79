//! Exact two-phase simplex for small dense linear programs.
//!
//! Solves `max c.x` subject to `A x = b`, `x >= 0` over [`Rational`]s with
//! Bland's rule, so it always terminates.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal(Rational),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Columns allowed to enter the basis.
    open: usize,
}

impl Tableau {
    fn rhs(&self) -> usize {
        self.rows[0].len() - 1
    }

    fn pivot(&mut self, z: &mut [Rational], r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for v in self.rows[r].iter_mut() {
            *v = &*v / &p;
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            if row[col].is_zero() {
                return;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = &*v - &f * pv;
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        if !z.is_empty() {
            eliminate(z);
        }
        self.basis[r] = col;
    }

    /// Maximizes `cost . x` from the current basic feasible solution.
    ///
    /// Entering columns follow the most negative reduced cost; right after
    /// a degenerate pivot the smallest eligible index is taken instead,
    /// which rules out cycling.
    fn optimize(&mut self, cost: &[Rational]) -> Option<Rational> {
        let rhs = self.rhs();
        let mut z: Vec<Rational> = (0..=rhs)
            .map(|j| {
                let own = if j < rhs { cost[j].clone() } else { Rational::zero() };
                let mut v = -own;
                for (row, &bi) in self.rows.iter().zip(&self.basis) {
                    if !row[j].is_zero() && !cost[bi].is_zero() {
                        v += &cost[bi] * &row[j];
                    }
                }
                v
            })
            .collect();
        let mut degenerate = false;
        loop {
            let eligible = (0..self.open).filter(|&j| z[j].is_negative());
            let entering =
                if degenerate { eligible.min() } else { eligible.min_by(|&x, &y| z[x].cmp(&z[y]).then(x.cmp(&y))) };
            let Some(col) = entering else {
                return Some(z[rhs].clone());
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[col].is_positive() {
                    let ratio = &row[rhs] / &row[col];
                    let better = match &leave {
                        None => true,
                        Some((k, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*k]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let (r, ratio) = leave?;
            degenerate = ratio.is_zero();
            self.pivot(&mut z, r, col);
        }
    }
}

pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    for (i, (ai, bi)) in a.iter().zip(b).enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<Rational> = ai.iter().map(|v| if flip { -v.clone() } else { v.clone() }).collect();
        row.extend((0..m).map(|k| Rational::from_integer((k == i).into())));
        row.push(if flip { -bi.clone() } else { bi.clone() });
        rows.push(row);
    }
    let mut t = Tableau { rows, basis: (n..n + m).collect(), open: n + m };

    let mut phase1 = vec![Rational::zero(); n + m];
    for v in &mut phase1[n..] {
        *v = -Rational::from_integer(1.into());
    }
    match t.optimize(&phase1) {
        Some(v) if v.is_zero() => {}
        _ => return LpOutcome::Infeasible,
    }
    for r in 0..m {
        if t.basis[r] >= n {
            if let Some(col) = (0..n).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(&mut [], r, col);
            }
        }
    }
    t.open = n;
    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| Rational::zero()));
    match t.optimize(&cost) {
        Some(v) => LpOutcome::Optimal(v),
        None => LpOutcome::Unbounded,
    }
}
