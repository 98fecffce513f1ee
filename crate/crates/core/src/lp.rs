//! Exact two-phase dense simplex over the rationals.
//!
//! Bland's anti-cycling rule throughout: the entering column is the lowest
//! index with positive reduced cost, the leaving row breaks ratio ties by
//! lowest basic variable index. Termination is guaranteed; every pivot is
//! exact, so witnesses satisfy their constraints exactly.

use num_traits::{One, Zero};

use crate::linalg::{RatVector, Rational};
use crate::polyhedron::AffineForm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpSense {
    Max,
    Min,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Outcome of an exact LP solve. `value` and `witness` are present iff the
/// status is `Optimal`.
#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub value: Option<Rational>,
    pub witness: Option<RatVector>,
}

impl LpOutcome {
    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

/// Optimize `objective . x` over {equalities = 0, inequalities >= 0}.
pub fn lp_optimize(
    objective: &RatVector,
    equalities: &[AffineForm],
    inequalities: &[AffineForm],
    sense: LpSense,
) -> LpOutcome {
    let n = objective.dim();
    let n_ineq = inequalities.len();
    let m = equalities.len() + n_ineq;
    let n_struct = 2 * n + n_ineq; // u, v (x = u - v), slacks
    let width = n_struct + m + 1; // + artificials + rhs

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (r, form) in equalities.iter().chain(inequalities.iter()).enumerate() {
        let mut row = vec![Rational::zero(); width];
        for j in 0..n {
            let b = &form.gradient[j];
            if !b.is_zero() {
                row[j] = b.clone();
                row[n + j] = -b.clone();
            }
        }
        let is_ineq = r >= equalities.len();
        if is_ineq {
            // b.x + a >= 0  <=>  b.x - s = -a with s >= 0
            row[2 * n + (r - equalities.len())] = -Rational::one();
        }
        row[width - 1] = -form.offset.clone();
        if row[width - 1] < Rational::zero() {
            for e in row.iter_mut() {
                if !e.is_zero() {
                    let neg = -e.clone();
                    *e = neg;
                }
            }
        }
        row[n_struct + r] = Rational::one();
        rows.push(row);
    }
    let mut basis: Vec<usize> = (0..m).map(|r| n_struct + r).collect();

    // Phase 1: maximize -sum(artificials).
    let mut cost1 = vec![Rational::zero(); n_struct + m];
    for c in cost1.iter_mut().skip(n_struct) {
        *c = -Rational::one();
    }
    let ok = simplex(&mut rows, &mut basis, &cost1, n_struct + m, width);
    debug_assert!(ok, "phase 1 is always bounded");
    let phase1_value: Rational = basis
        .iter()
        .enumerate()
        .map(|(r, &bv)| -(&cost1[bv] * &rows[r][width - 1]))
        .sum();
    if !phase1_value.is_zero() {
        return LpOutcome { status: LpStatus::Infeasible, value: None, witness: None };
    }

    // Drive leftover artificials out of the basis; drop redundant rows.
    let mut r = 0;
    while r < rows.len() {
        if basis[r] >= n_struct {
            if let Some(j) = (0..n_struct).find(|&j| !rows[r][j].is_zero()) {
                pivot(&mut rows, &mut basis, r, j);
            } else {
                rows.remove(r);
                basis.remove(r);
                continue;
            }
        }
        r += 1;
    }

    // Strip artificial columns.
    let phase2_width = n_struct + 1;
    for row in rows.iter_mut() {
        let rhs = row[width - 1].clone();
        row.truncate(n_struct);
        row.push(rhs);
    }

    let mut cost2 = vec![Rational::zero(); n_struct];
    for j in 0..n {
        let c = match sense {
            LpSense::Max => objective[j].clone(),
            LpSense::Min => -objective[j].clone(),
        };
        if !c.is_zero() {
            cost2[j] = c.clone();
            cost2[n + j] = -c;
        }
    }
    if !simplex(&mut rows, &mut basis, &cost2, n_struct, phase2_width) {
        return LpOutcome { status: LpStatus::Unbounded, value: None, witness: None };
    }

    let mut x = RatVector::zeros(n);
    let mut value = Rational::zero();
    for (r, &bv) in basis.iter().enumerate() {
        let rhs = &rows[r][phase2_width - 1];
        if !cost2[bv].is_zero() {
            value += &cost2[bv] * rhs;
        }
        if bv < n {
            x[bv] = &x[bv] + rhs;
        } else if bv < 2 * n {
            x[bv - n] = &x[bv - n] - rhs;
        }
    }
    if sense == LpSense::Min {
        value = -value;
    }
    LpOutcome { status: LpStatus::Optimal, value: Some(value), witness: Some(x) }
}

/// One simplex run. Returns false iff unbounded. `ncols` counts structural
/// columns (candidates for entering); rows are `width` wide with rhs last.
fn simplex(
    rows: &mut Vec<Vec<Rational>>,
    basis: &mut [usize],
    cost: &[Rational],
    ncols: usize,
    width: usize,
) -> bool {
    let mut in_basis = vec![false; ncols];
    for &bv in basis.iter() {
        if bv < ncols {
            in_basis[bv] = true;
        }
    }
    loop {
        let mut entering = None;
        'scan: for j in 0..ncols {
            if in_basis[j] {
                continue;
            }
            let mut rc = cost[j].clone();
            for (r, &bv) in basis.iter().enumerate() {
                if !cost[bv].is_zero() && !rows[r][j].is_zero() {
                    rc -= &cost[bv] * &rows[r][j];
                }
            }
            if rc > Rational::zero() {
                entering = Some(j);
                break 'scan;
            }
        }
        let Some(j) = entering else {
            return true;
        };
        let mut leave: Option<usize> = None;
        let mut best: Option<Rational> = None;
        for r in 0..rows.len() {
            if rows[r][j] > Rational::zero() {
                let ratio = &rows[r][width - 1] / &rows[r][j];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && basis[r] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(r);
                }
            }
        }
        let Some(r) = leave else {
            return false;
        };
        if basis[r] < ncols {
            in_basis[basis[r]] = false;
        }
        in_basis[j] = true;
        pivot(rows, basis, r, j);
    }
}

fn pivot(rows: &mut [Vec<Rational>], basis: &mut [usize], r: usize, j: usize) {
    let p = rows[r][j].clone();
    if !p.is_one() {
        for e in rows[r].iter_mut() {
            if !e.is_zero() {
                *e /= &p;
            }
        }
    }
    let pivot_row = rows[r].clone();
    for (r2, row) in rows.iter_mut().enumerate() {
        if r2 == r || row[j].is_zero() {
            continue;
        }
        let factor = row[j].clone();
        for (e, pe) in row.iter_mut().zip(pivot_row.iter()) {
            if !pe.is_zero() {
                *e -= &factor * pe;
            }
        }
        debug_assert!(row[j].is_zero());
    }
    basis[r] = j;
}
