//! Dense two-phase simplex for the small feasibility problems behind the
//! maximum-entropy fits: `A x = b, x >= 0`.
//!
//! Only what IPF needs is exposed: whether the polytope is empty, and which
//! coordinates can be strictly positive somewhere in it.

const PIVOT_EPS: f64 = 1e-12;
const FEASIBILITY_TOL: f64 = 1e-9;
const SUPPORT_TOL: f64 = 1e-11;

struct Tableau {
    // m rows of [a_1 .. a_n | rhs]
    rows: Vec<Vec<f64>>,
    basis: Vec<usize>,
    // reduced costs followed by the negated objective value
    costs: Vec<f64>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.costs.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let w = self.costs.len();
        let piv = self.rows[r][c];
        self.rows[r].iter_mut().for_each(|x| *x /= piv);
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for j in 0..w {
                    row[j] -= f * pivot_row[j];
                }
            }
        }
        let f = self.costs[c];
        if f != 0.0 {
            for j in 0..w {
                self.costs[j] -= f * pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes with Bland's rule; `allowed` masks candidate entering columns.
    fn optimize(&mut self, allowed: usize) {
        loop {
            let Some(c) = (0..allowed).find(|&j| self.costs[j] > PIVOT_EPS) else {
                return;
            };
            let rhs = self.width();
            let mut best: Option<(usize, f64)> = None;
            for (r, row) in self.rows.iter().enumerate() {
                if row[c] > PIVOT_EPS {
                    let ratio = row[rhs] / row[c];
                    best = match best {
                        None => Some((r, ratio)),
                        Some((br, bv)) => {
                            if ratio < bv - PIVOT_EPS
                                || (ratio <= bv + PIVOT_EPS && self.basis[r] < self.basis[br])
                            {
                                Some((r, ratio))
                            } else {
                                Some((br, bv))
                            }
                        }
                    }
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                // unbounded; cannot happen for probability polytopes
                None => return,
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<f64> {
        let rhs = self.width();
        let mut x = vec![0.0; n];
        for (r, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rows[r][rhs];
            }
        }
        x
    }
}

/// Outcome of a support computation.
pub(crate) enum Support {
    Infeasible { violation: f64 },
    /// `mask[j]` is true when some feasible point has `x_j > 0`.
    Feasible { mask: Vec<bool> },
}

/// Finds the maximal support of `{x >= 0 : A x = b}`.
///
/// `a` is given row by row, every row of length `n`; `b` must be non-negative.
pub(crate) fn maximal_support(a: &[Vec<f64>], b: &[f64], n: usize) -> Support {
    let m = a.len();
    let width = n + m;
    let mut rows = Vec::with_capacity(m);
    for (i, (row, &bi)) in a.iter().zip(b).enumerate() {
        let mut t = vec![0.0; width + 1];
        t[..n].copy_from_slice(row);
        t[n + i] = 1.0;
        t[width] = bi.max(0.0);
        rows.push(t);
    }
    // phase one: maximize minus the sum of the artificials
    let mut costs = vec![0.0; width + 1];
    for row in &rows {
        for j in 0..n {
            costs[j] += row[j];
        }
        costs[width] += row[width];
    }
    let mut t = Tableau {
        rows,
        basis: (n..width).collect(),
        costs,
    };
    t.optimize(n);
    let residual = t.costs[width];
    if residual > FEASIBILITY_TOL {
        return Support::Infeasible {
            violation: residual,
        };
    }

    // drive artificials out of the basis, dropping redundant rows
    let mut r = 0;
    while r < t.rows.len() {
        if t.basis[r] >= n {
            match (0..n).find(|&j| t.rows[r][j].abs() > 1e-9) {
                Some(c) => {
                    t.pivot(r, c);
                    r += 1;
                }
                None => {
                    t.rows.remove(r);
                    t.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }
    for row in t.rows.iter_mut() {
        let rhs = row[width];
        row.truncate(n);
        row.push(rhs);
    }

    let mut mask = vec![false; n];
    let mark = |t: &Tableau, mask: &mut Vec<bool>| {
        for (j, &v) in t.solution(n).iter().enumerate() {
            if v > SUPPORT_TOL {
                mask[j] = true;
            }
        }
    };
    let base = Tableau {
        rows: t.rows,
        basis: t.basis,
        costs: vec![0.0; n + 1],
    };
    mark(&base, &mut mask);
    for target in 0..n {
        if mask[target] {
            continue;
        }
        let mut probe = Tableau {
            rows: base.rows.clone(),
            basis: base.basis.clone(),
            costs: vec![0.0; n + 1],
        };
        probe.costs[target] = 1.0;
        if let Some(r) = probe.basis.iter().position(|&bv| bv == target) {
            let row = probe.rows[r].clone();
            for j in 0..=n {
                probe.costs[j] -= row[j];
            }
        }
        probe.optimize(n);
        mark(&probe, &mut mask);
    }
    Support::Feasible { mask }
}
