//! Exact two-phase simplex for `maximize c·x  s.t.  A x = b, x ≥ 0`.
//!
//! Dense tableau, Bland's rule (no cycling), arbitrary precision. The
//! solver also returns dual multipliers `w` with `Aᵀw ≥ c` and `b·w`
//! equal to the optimum, so callers can recover primal certificates of
//! the dual problem.

use num::{One, Signed, Zero};

use super::{dot, zeros, Rational, Vector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal {
        value: Rational,
        x: Vector,
        duals: Vector,
    },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vector>,
    rhs: Vector,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, p) in self.rows[i].iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        self.basis[r] = c;
    }

    fn reduced_cost(&self, cost: &[Rational], j: usize) -> Rational {
        let cb: Rational = self
            .basis
            .iter()
            .zip(&self.rows)
            .fold(Rational::zero(), |acc, (&b, row)| acc + &cost[b] * &row[j]);
        &cost[j] - cb
    }

    /// Minimizes `cost` over the current basis, entering only columns `< allowed`.
    /// Returns false when unbounded.
    fn run(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed)
                .filter(|j| !self.basis.contains(j))
                .find(|&j| self.reduced_cost(cost, j).is_negative());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, c);
        }
    }
}

/// Solves `max c·x, A x = b, x ≥ 0` exactly.
pub fn maximize(c: &[Rational], a: &[Vector], b: &[Rational]) -> LpOutcome {
    let n = c.len();
    let m = a.len();
    assert_eq!(b.len(), m);
    // Rows with negative right-hand side are negated; `sign` undoes that for duals.
    let mut sign = vec![Rational::one(); m];
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(a[i].len(), n);
        let flip = b[i].is_negative();
        if flip {
            sign[i] = -Rational::one();
        }
        let mut row: Vector = a[i].iter().map(|x| if flip { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    // Phase 1: minimize the sum of artificials.
    let mut cost1 = zeros(n + m);
    for x in cost1.iter_mut().skip(n) {
        *x = Rational::one();
    }
    t.run(&cost1, n + m);
    let infeas: Rational = t
        .basis
        .iter()
        .zip(&t.rhs)
        .filter(|(&bv, _)| bv >= n)
        .fold(Rational::zero(), |acc, (_, v)| acc + v);
    if infeas.is_positive() {
        return LpOutcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis; drop redundant rows.
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            if let Some(c) = (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                t.pivot(i, c);
            } else {
                t.rows.remove(i);
                t.rhs.remove(i);
                t.basis.remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase 2: minimize -c.
    let mut cost2: Vector = c.iter().map(|x| -x).collect();
    cost2.extend(zeros(m));
    if !t.run(&cost2, n) {
        return LpOutcome::Unbounded;
    }
    let mut x = zeros(n);
    for (&bv, v) in t.basis.iter().zip(&t.rhs) {
        x[bv] = v.clone();
    }
    let value = dot(c, &x);
    // y = c_B B^{-1} for the min problem lives in the artificial columns.
    let mut duals = zeros(m);
    for (k, d) in duals.iter_mut().enumerate() {
        let y: Rational = t
            .basis
            .iter()
            .zip(&t.rows)
            .fold(Rational::zero(), |acc, (&bv, row)| acc + &cost2[bv] * &row[n + k]);
        *d = -y * &sign[k];
    }
    LpOutcome::Optimal { value, x, duals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::q;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_optimum_with_duals() {
        // max x0 + 2 x1, x0 + x1 + s = 4, x1 + t = 3
        let c = v(&[1, 2, 0, 0]);
        let a = vec![v(&[1, 1, 1, 0]), v(&[0, 1, 0, 1])];
        let b = v(&[4, 3]);
        let LpOutcome::Optimal { value, x, duals } = maximize(&c, &a, &b) else {
            panic!("expected optimum")
        };
        assert_eq!(value, q(7));
        assert_eq!(x[..2], v(&[1, 3])[..]);
        assert_eq!(dot(&duals, &b), value);
        for j in 0..c.len() {
            let col: Vector = a.iter().map(|r| r[j].clone()).collect();
            assert!(dot(&duals, &col) >= c[j]);
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = vec![v(&[1, 1])];
        assert_eq!(maximize(&v(&[1, 0]), &a, &v(&[-1])), LpOutcome::Infeasible);
        let a = vec![v(&[1, -1])];
        assert_eq!(maximize(&v(&[1, 0]), &a, &v(&[0])), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_are_dropped() {
        let a = vec![v(&[1, 1]), v(&[2, 2])];
        let LpOutcome::Optimal { value, duals, .. } = maximize(&v(&[1, 0]), &a, &v(&[1, 2])) else {
            panic!()
        };
        assert_eq!(value, q(1));
        assert_eq!(dot(&duals, &v(&[1, 2])), q(1));
    }
}
