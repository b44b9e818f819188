//! Exact linear programming over the rationals.
//!
//! The primal is `max cᵀx` subject to `A_eq x = b_eq`, `A_in x ≥ b_in` with
//! `x` free. We run a two-phase tableau simplex with Bland's rule on its dual
//!
//! ```text
//! min b_eqᵀ(u⁺ − u⁻) − b_inᵀ w   s.t.  A_eqᵀ(u⁺ − u⁻) − A_inᵀ w = c,  u±, w ≥ 0
//! ```
//!
//! which has one row per primal variable. At a dual optimum the simplex
//! multipliers are a primal optimum; it is re-checked exactly before being
//! returned.

use num_traits::{One, Signed, Zero};

use crate::linalg::{dot, QMatrix};
use crate::rational::Q;

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Q>,
    /// `a·x = b`.
    pub equalities: Vec<(Vec<Q>, Q)>,
    /// `a·x ≥ b`.
    pub inequalities: Vec<(Vec<Q>, Q)>,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: Q,
    pub x: Vec<Q>,
    /// Dual weight `w_i ≥ 0` of each inequality.
    pub inequality_duals: Vec<Q>,
    /// Dual value `u_i` of each equality.
    pub equality_duals: Vec<Q>,
    pub pivots: usize,
}

#[derive(Clone, Debug)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<&LpSolution> {
        match self {
            LpOutcome::Optimal(s) => Some(s),
            _ => None,
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> LinearProgram {
        LinearProgram {
            num_vars,
            objective: vec![Q::zero(); num_vars],
            ..Default::default()
        }
    }

    pub fn equal(&mut self, a: Vec<Q>, b: Q) {
        assert_eq!(a.len(), self.num_vars);
        self.equalities.push((a, b));
    }

    pub fn at_least(&mut self, a: Vec<Q>, b: Q) {
        assert_eq!(a.len(), self.num_vars);
        self.inequalities.push((a, b));
    }

    pub fn maximize(&mut self, c: Vec<Q>) {
        assert_eq!(c.len(), self.num_vars);
        self.objective = c;
    }

    pub fn is_feasible_point(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|(a, b)| &dot(a, x) == b)
            && self.inequalities.iter().all(|(a, b)| &dot(a, x) >= b)
    }

    pub fn solve(&self) -> LpOutcome {
        match solve_dual(self, &self.objective) {
            DualResult::Optimal(sol) => LpOutcome::Optimal(sol),
            // Dual unbounded: the primal is infeasible.
            DualResult::Unbounded => LpOutcome::Infeasible,
            // Dual infeasible: the primal is infeasible or unbounded. With a
            // zero objective the dual is feasible, and it is bounded exactly
            // when the primal is feasible.
            DualResult::Infeasible => {
                let zero = vec![Q::zero(); self.num_vars];
                match solve_dual(self, &zero) {
                    DualResult::Optimal(_) => LpOutcome::Unbounded,
                    _ => LpOutcome::Infeasible,
                }
            }
        }
    }
}

enum DualResult {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Q>>,
    /// Reduced costs, last entry is minus the objective value.
    cost: Vec<Q>,
    basis: Vec<usize>,
    pivots: usize,
}

impl Tableau {
    fn width(&self) -> usize {
        self.cost.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pr) in row.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &f * pr;
                }
            }
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (v, pr) in self.cost.iter_mut().zip(&pivot_row) {
                if !pr.is_zero() {
                    *v -= &f * pr;
                }
            }
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Bland's rule; `allowed` masks columns that may enter.
    /// Returns false if unbounded.
    fn run(&mut self, allowed: &[bool]) -> bool {
        loop {
            let entering = (0..self.width()).find(|&j| allowed[j] && self.cost[j].is_negative());
            let Some(j) = entering else {
                return true;
            };
            let rhs = self.width();
            let mut best: Option<(Q, usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[j].is_positive() {
                    let ratio = &row[rhs] / &row[j];
                    let better = match &best {
                        None => true,
                        Some((r, _, b)) => ratio < *r || (ratio == *r && self.basis[i] < *b),
                    };
                    if better {
                        best = Some((ratio, i, self.basis[i]));
                    }
                }
            }
            match best {
                None => return false,
                Some((_, i, _)) => self.pivot(i, j),
            }
        }
    }

    fn set_costs(&mut self, costs: &[Q]) {
        let w = self.width();
        let mut cost: Vec<Q> = costs.to_vec();
        cost.push(Q::zero());
        for (i, row) in self.rows.iter().enumerate() {
            let cb = &costs[self.basis[i]];
            if cb.is_zero() {
                continue;
            }
            for j in 0..=w {
                if !row[j].is_zero() {
                    cost[j] -= cb * &row[j];
                }
            }
        }
        self.cost = cost;
    }
}

fn solve_dual(lp: &LinearProgram, c: &[Q]) -> DualResult {
    let n = lp.num_vars;
    let me = lp.equalities.len();
    let mi = lp.inequalities.len();
    let ncols = 2 * me + mi;
    // Column j of M and its cost f_j.
    let mut columns: Vec<Vec<Q>> = Vec::with_capacity(ncols);
    let mut f: Vec<Q> = Vec::with_capacity(ncols);
    for (a, b) in &lp.equalities {
        columns.push(a.clone());
        f.push(b.clone());
    }
    for (a, b) in &lp.equalities {
        columns.push(a.iter().map(|v| -v).collect());
        f.push(-b);
    }
    for (a, b) in &lp.inequalities {
        columns.push(a.iter().map(|v| -v).collect());
        f.push(-b);
    }

    // Phase 1 tableau: n rows, ncols + n artificial columns + rhs.
    let width = ncols + n;
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let flip = c[i].is_negative();
        let mut row = Vec::with_capacity(width + 1);
        for col in &columns {
            row.push(if flip { -&col[i] } else { col[i].clone() });
        }
        for k in 0..n {
            row.push(if k == i { Q::one() } else { Q::zero() });
        }
        row.push(if flip { -&c[i] } else { c[i].clone() });
        rows.push(row);
    }
    let mut t = Tableau {
        rows,
        cost: vec![Q::zero(); width + 1],
        basis: (ncols..ncols + n).collect(),
        pivots: 0,
    };
    let mut phase1_costs = vec![Q::zero(); width];
    for v in phase1_costs.iter_mut().skip(ncols) {
        *v = Q::one();
    }
    t.set_costs(&phase1_costs);
    let all = vec![true; width];
    t.run(&all);
    if !t.cost[width].is_zero() {
        return DualResult::Infeasible;
    }

    // Drive artificial variables out of the basis; drop redundant rows.
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= ncols {
            if let Some(j) = (0..ncols).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, j);
            } else {
                t.rows.remove(r);
                t.basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    let mut phase2_costs = f.clone();
    phase2_costs.extend(std::iter::repeat_n(Q::zero(), n));
    t.set_costs(&phase2_costs);
    let mut allowed = vec![true; width];
    for a in allowed.iter_mut().skip(ncols) {
        *a = false;
    }
    if !t.run(&allowed) {
        return DualResult::Unbounded;
    }

    // Basic solution y.
    let mut y = vec![Q::zero(); ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        y[b] = t.rows[i][width].clone();
    }
    let dual_value: Q = y.iter().zip(&f).map(|(a, b)| a * b).sum();

    // Multipliers: B_kᵀ π_k = f_B on the kept (independent) primal coordinates.
    let x = multipliers(&columns, &f, &t.basis, n);
    let value = dot(c, &x);
    assert_eq!(value, dual_value, "strong duality certificate failed");
    assert!(lp.is_feasible_point(&x), "recovered primal point infeasible");

    let mut equality_duals = Vec::with_capacity(me);
    for i in 0..me {
        equality_duals.push(&y[i] - &y[me + i]);
    }
    let inequality_duals = y[2 * me..].to_vec();
    DualResult::Optimal(LpSolution {
        value,
        x,
        inequality_duals,
        equality_duals,
        pivots: t.pivots,
    })
}

/// Solves `M_Bᵀ π = f_B`. If `M` has dependent rows, the basis spans a
/// subset of coordinates and the rest of `π` is set to zero.
fn multipliers(columns: &[Vec<Q>], f: &[Q], basis: &[usize], n: usize) -> Vec<Q> {
    let b_cols: Vec<Vec<Q>> = basis.iter().map(|&j| columns[j].clone()).collect();
    let k = b_cols.len();
    // Choose k independent coordinates (rows of M_B).
    let rows_b = QMatrix::from_columns(&b_cols); // n × k
    let mut chosen = Vec::with_capacity(k);
    let mut acc: Vec<Vec<Q>> = Vec::new();
    for i in 0..n {
        let mut trial = acc.clone();
        trial.push(rows_b.row(i).to_vec());
        if QMatrix::from_rows(&trial).rank() == trial.len() {
            acc = trial;
            chosen.push(i);
            if chosen.len() == k {
                break;
            }
        }
    }
    // (M_B restricted to chosen rows)ᵀ π_chosen = f_B
    let sq = QMatrix::from_rows(&acc).transpose();
    let fb: Vec<Q> = basis.iter().map(|&j| f[j].clone()).collect();
    let pi = sq.solve(&fb).expect("basis is nonsingular");
    let mut x = vec![Q::zero(); n];
    for (slot, v) in chosen.into_iter().zip(pi) {
        x[slot] = v;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qf};

    fn v(xs: &[i64]) -> Vec<Q> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn small_maximum() {
        // max x + y  s.t. x ≥ 0, y ≥ 0, x + 2y ≤ 4, 3x + y ≤ 6.
        let mut lp = LinearProgram::new(2);
        lp.maximize(v(&[1, 1]));
        lp.at_least(v(&[1, 0]), q(0));
        lp.at_least(v(&[0, 1]), q(0));
        lp.at_least(v(&[-1, -2]), q(-4));
        lp.at_least(v(&[-3, -1]), q(-6));
        let s = lp.solve();
        let s = s.optimal().unwrap();
        assert_eq!(s.value, qf(14, 5));
        assert_eq!(s.x, vec![qf(8, 5), qf(6, 5)]);
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.equal(v(&[1]), q(0));
        lp.equal(v(&[1]), q(1));
        assert!(matches!(lp.solve(), LpOutcome::Infeasible));

        let mut lp = LinearProgram::new(2);
        lp.maximize(v(&[1, 0]));
        lp.at_least(v(&[1, -1]), q(0));
        assert!(matches!(lp.solve(), LpOutcome::Unbounded));
    }

    #[test]
    fn equality_with_free_variables() {
        // max -x - y s.t. x + y = 3, x - y = 1.
        let mut lp = LinearProgram::new(2);
        lp.maximize(v(&[-1, -1]));
        lp.equal(v(&[1, 1]), q(3));
        lp.equal(v(&[1, -1]), q(1));
        let s = lp.solve();
        let s = s.optimal().unwrap();
        assert_eq!(s.x, v(&[2, 1]));
        assert_eq!(s.value, q(-3));
    }

    #[test]
    fn degenerate_vertex() {
        // Many constraints through the origin; max is 0 at the origin.
        let mut lp = LinearProgram::new(2);
        lp.maximize(v(&[-1, -1]));
        for (a, b) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
            lp.at_least(v(&[a, b]), q(0));
        }
        let s = lp.solve();
        let s = s.optimal().unwrap();
        assert_eq!(s.value, q(0));
    }
}
