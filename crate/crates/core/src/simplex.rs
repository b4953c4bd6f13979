//! Dense two-phase simplex for small equality-form linear programs.
//!
//! Solves `max c'x  s.t.  A x = b, x >= 0` with Bland's anti-cycling rule.
//! Sized for problems with tens of variables; no sparsity, no scaling.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-11;
const MAX_PIVOTS: usize = 10_000;

/// Primal-dual solution of an equality-form LP.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    /// Dual values, one per constraint row.
    pub dual: Vec<f64>,
    /// `|c'x - b'y|` at termination. Zero up to rounding at an optimum.
    pub duality_gap: f64,
    /// Largest reduced cost over nonbasic columns; `<= 0` certifies optimality.
    pub max_reduced_cost: f64,
}

struct Tableau {
    rows: usize,
    cols: usize, // structural + artificial
    n_struct: usize,
    a: Vec<Vec<f64>>, // rows x (cols + 1), last entry is the rhs
    basis: Vec<usize>,
}

impl Tableau {
    fn rhs(&self, i: usize) -> f64 {
        self.a[i][self.cols]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let scale = self.a[row][col];
        for v in self.a[row].iter_mut() {
            *v /= scale;
        }
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let factor = self.a[i][col];
            if factor == 0.0 {
                continue;
            }
            for j in 0..=self.cols {
                let delta = factor * self.a[row][j];
                self.a[i][j] -= delta;
            }
            self.a[i][col] = 0.0; // keep the pivot column exact
        }
        self.basis[row] = col;
    }

    /// Reduced costs `c_j - y'A_j` for the given objective.
    fn reduced_costs(&self, costs: &[f64]) -> Vec<f64> {
        let mut reduced = costs.to_vec();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = costs[b];
            if cb == 0.0 {
                continue;
            }
            for j in 0..self.cols {
                reduced[j] -= cb * self.a[i][j];
            }
        }
        reduced
    }

    /// One simplex phase under Bland's rule: entering variable is the
    /// lowest-index improving column, leaving variable the lowest-index row
    /// among the ratio-test ties. `allowed` masks columns that may enter.
    fn run(&mut self, costs: &[f64], allowed: impl Fn(usize) -> bool) -> Result<()> {
        for _ in 0..MAX_PIVOTS {
            let reduced = self.reduced_costs(costs);
            let entering = (0..self.cols)
                .find(|&j| allowed(j) && !self.basis.contains(&j) && reduced[j] > PIVOT_EPS);
            let Some(col) = entering else {
                return Ok(());
            };
            let mut leaving: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                if self.a[i][col] > PIVOT_EPS {
                    let ratio = self.rhs(i) / self.a[i][col];
                    let better = match leaving {
                        None => true,
                        Some((best_row, best_ratio)) => {
                            ratio < best_ratio - PIVOT_EPS
                                || (ratio < best_ratio + PIVOT_EPS
                                    && self.basis[i] < self.basis[best_row])
                        }
                    };
                    if better {
                        leaving = Some((i, ratio));
                    }
                }
            }
            let Some((row, _)) = leaving else {
                return Err(Error::LpUnbounded);
            };
            self.pivot(row, col);
        }
        Err(Error::NoConvergence("simplex pivot limit".into()))
    }
}

/// Solve `max c'x  s.t.  A x = b, x >= 0`.
pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution> {
    let rows = a.len();
    let n = c.len();
    assert_eq!(b.len(), rows, "rhs length must match the row count");
    for row in a {
        assert_eq!(row.len(), n, "every row must have one entry per variable");
    }

    let cols = n + rows;
    let mut tab = Tableau {
        rows,
        cols,
        n_struct: n,
        a: vec![vec![0.0; cols + 1]; rows],
        basis: (n..cols).collect(),
    };
    // flip rows so the artificial basis starts feasible; remember the signs
    // to undo them on the duals
    let mut row_sign = vec![1.0; rows];
    for i in 0..rows {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        row_sign[i] = sign;
        for j in 0..n {
            tab.a[i][j] = sign * a[i][j];
        }
        tab.a[i][n + i] = 1.0;
        tab.a[i][cols] = sign * b[i];
    }

    // phase 1: drive the artificial variables to zero
    let mut phase1 = vec![0.0; cols];
    for j in n..cols {
        phase1[j] = -1.0;
    }
    tab.run(&phase1, |_| true)?;
    let infeasibility: f64 = tab
        .basis
        .iter()
        .enumerate()
        .filter(|(_, &v)| v >= n)
        .map(|(i, _)| tab.rhs(i))
        .sum();
    if infeasibility > 1e-9 {
        return Err(Error::LpInfeasible(infeasibility));
    }
    // pivot lingering zero-level artificials out where a structural column
    // allows it; rows that stay artificial are redundant and inert
    for i in 0..rows {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.a[i][j].abs() > PIVOT_EPS) {
                tab.pivot(i, j);
            }
        }
    }

    // phase 2 over the structural columns only
    let mut phase2 = vec![0.0; cols];
    phase2[..n].copy_from_slice(c);
    tab.run(&phase2, |j| j < n)?;

    let mut x = vec![0.0; n];
    for (i, &v) in tab.basis.iter().enumerate() {
        if v < n {
            x[v] = tab.rhs(i);
        }
    }
    let objective: f64 = c.iter().zip(&x).map(|(ci, xi)| ci * xi).sum();
    // the reduced cost of artificial column i is -y_i for the flipped row
    let reduced = tab.reduced_costs(&phase2);
    let dual: Vec<f64> = (0..rows).map(|i| -reduced[n + i] * row_sign[i]).collect();
    let dual_objective: f64 = b.iter().zip(&dual).map(|(bi, yi)| bi * yi).sum();
    let max_reduced_cost = (0..tab.n_struct)
        .filter(|j| !tab.basis.contains(j))
        .map(|j| reduced[j])
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(LpSolution {
        x,
        objective,
        dual,
        duality_gap: (objective - dual_objective).abs(),
        max_reduced_cost,
    })
}
