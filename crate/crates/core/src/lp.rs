//! Dense two-phase simplex over exact rationals with Bland's anti-cycling rule.
//!
//! Solves `max c.x  s.t.  A x <= b,  x >= 0`. Sized for the small systems that
//! show up in region comparisons (tens of variables and rows).

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, point: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn value(&self) -> Option<&Rational> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    cols: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize, objective: &mut [Rational], obj_value: &mut Rational) {
        let p = self.rows[row][col].clone();
        for v in self.rows[row].iter_mut() {
            *v /= &p;
        }
        self.rhs[row] /= &p;
        let pivot_row = self.rows[row].clone();
        let pivot_rhs = self.rhs[row].clone();
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            self.rhs[i] -= &factor * &pivot_rhs;
        }
        let factor = objective[col].clone();
        if !factor.is_zero() {
            for (v, pv) in objective.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &factor * pv;
                }
            }
            *obj_value += &factor * &pivot_rhs;
        }
        self.basis[row] = col;
    }

    /// Maximizes the objective whose reduced costs are `objective`, entering only
    /// columns allowed by `allowed`.
    fn optimize(
        &mut self,
        objective: &mut [Rational],
        obj_value: &mut Rational,
        allowed: &dyn Fn(usize) -> bool,
    ) -> Step {
        loop {
            let entering = (0..self.cols).find(|&j| allowed(j) && objective[j].is_positive());
            let Some(col) = entering else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col, objective, obj_value),
                None => return Step::Unbounded,
            }
        }
    }
}

pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    debug_assert_eq!(b.len(), m);

    let negative_rows: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let n_art = negative_rows.len();
    let cols = n + m + n_art;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = 0;
    for i in 0..m {
        let mut row = vec![Rational::zero(); cols];
        let flip = b[i].is_negative();
        for j in 0..n {
            row[j] = if flip { -a[i][j].clone() } else { a[i][j].clone() };
        }
        row[n + i] = if flip { -Rational::from_integer(1.into()) } else { Rational::from_integer(1.into()) };
        if flip {
            row[n + m + art] = Rational::from_integer(1.into());
            basis.push(n + m + art);
            art += 1;
        } else {
            basis.push(n + i);
        }
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
        rows.push(row);
    }
    let mut tab = Tableau { rows, rhs, basis, cols };
    let is_artificial = |j: usize| j >= n + m;

    if n_art > 0 {
        // phase one: maximize -(sum of artificials)
        let mut obj = vec![Rational::zero(); cols];
        let mut obj_value = Rational::zero();
        for &i in &negative_rows {
            for j in 0..cols {
                if !is_artificial(j) {
                    obj[j] += &tab.rows[i][j];
                }
            }
            obj_value -= &tab.rhs[i];
        }
        tab.optimize(&mut obj, &mut obj_value, &|_| true);
        if obj_value.is_negative() {
            return LpOutcome::Infeasible;
        }
        // drive remaining (zero-valued) artificials out of the basis
        let mut i = 0;
        while i < tab.rows.len() {
            if is_artificial(tab.basis[i]) {
                match (0..n + m).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(col) => {
                        let mut dummy = vec![Rational::zero(); cols];
                        let mut dv = Rational::zero();
                        tab.pivot(i, col, &mut dummy, &mut dv);
                    }
                    None => {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    // phase two: reduced costs of the real objective w.r.t. the current basis
    let mut obj = vec![Rational::zero(); cols];
    obj[..n].clone_from_slice(c);
    let mut obj_value = Rational::zero();
    for i in 0..tab.rows.len() {
        let bj = tab.basis[i];
        let cb = if bj < n { c[bj].clone() } else { Rational::zero() };
        if cb.is_zero() {
            continue;
        }
        for j in 0..cols {
            if !tab.rows[i][j].is_zero() {
                obj[j] -= &cb * &tab.rows[i][j];
            }
        }
        obj_value += &cb * &tab.rhs[i];
    }
    match tab.optimize(&mut obj, &mut obj_value, &|j| !is_artificial(j)) {
        Step::Unbounded => LpOutcome::Unbounded,
        Step::Optimal => {
            let mut point = vec![Rational::zero(); n];
            for (i, &bj) in tab.basis.iter().enumerate() {
                if bj < n {
                    point[bj] = tab.rhs[i].clone();
                }
            }
            LpOutcome::Optimal { value: obj_value, point }
        }
    }
}
