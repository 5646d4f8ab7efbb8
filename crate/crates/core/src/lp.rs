//! Exact feasibility LP: phase-one simplex over the rationals with Bland's rule.

use num_traits::{Signed, Zero};

use crate::point::{LatticePoint, Rational, RationalPoint};

/// Finds `x >= 0` with `a x = b`, or `None` if no such `x` exists.
///
/// `a` is `m x n` row-major; every row must have length `n`.
pub fn nonnegative_solution(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count of a and length of b differ");
    let n = a.first().map_or(0, Vec::len);
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }

    // Tableau columns: n structural, m artificial, then the right-hand side.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = rhs.is_negative();
        let mut r = Vec::with_capacity(width);
        r.extend(row.iter().map(|v| if flip { -v } else { v.clone() }));
        r.extend((0..m).map(|j| {
            if i == j {
                Rational::from_integer(1.into())
            } else {
                Rational::zero()
            }
        }));
        r.push(if flip { -rhs } else { rhs.clone() });
        t.push(r);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Reduced costs of "minimize the sum of artificials"; last entry is -objective.
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    while let Some(enter) = (0..n + m).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<usize> = None;
        let mut best = Rational::zero();
        for i in 0..m {
            if !t[i][enter].is_positive() {
                continue;
            }
            let ratio = &t[i][width - 1] / &t[i][enter];
            let better = match leave {
                None => true,
                Some(l) => ratio < best || (ratio == best && basis[i] < basis[l]),
            };
            if better {
                best = ratio;
                leave = Some(i);
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let leave = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, leave, enter);
        basis[leave] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        *v *= &inv;
    }
    let pivot_row = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (v, p) in r.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
    let f = cost[col].clone();
    if !f.is_zero() {
        for (v, p) in cost.iter_mut().zip(&pivot_row) {
            if !p.is_zero() {
                *v -= &f * p;
            }
        }
    }
}

/// Weights `lambda >= 0` summing to one with `sum lambda_i points_i = target`.
pub fn convex_weights(points: &[LatticePoint], target: &RationalPoint) -> Option<Vec<Rational>> {
    let d = target.dim();
    let mut a: Vec<Vec<Rational>> = (0..d)
        .map(|k| {
            points
                .iter()
                .map(|p| Rational::from_integer(p.coords()[k].clone()))
                .collect()
        })
        .collect();
    a.push(vec![Rational::from_integer(1.into()); points.len()]);
    let mut b: Vec<Rational> = target.coords().to_vec();
    b.push(Rational::from_integer(1.into()));
    nonnegative_solution(&a, &b)
}
