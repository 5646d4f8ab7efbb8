//! Exact dense linear algebra over `Z` and `Q`.
//!
//! Matrices are plain row-major `Vec<Vec<_>>`; callers are responsible for
//! rectangular shapes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::point::Rational;

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank of a rational matrix.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m = rows.to_vec();
    row_reduce(&mut m).len()
}

/// Rank of an integer matrix.
pub fn rank_int(rows: &[Vec<BigInt>]) -> usize {
    rank(&to_rational(rows))
}

pub fn to_rational(rows: &[Vec<BigInt>]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|v| Rational::from_integer(v.clone())).collect())
        .collect()
}

/// Gauss-Jordan elimination in place; returns the pivot columns.
fn row_reduce(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Unique solution of the square system `a x = b`, or `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() != n || pivots.last().is_some_and(|&c| c >= n) {
        return None;
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Exact inverse of a square integer matrix, or `None` if it is singular.
pub fn inverse(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<Rational>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rational>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row
                .iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect();
            r.extend((0..n).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            r
        })
        .collect();
    let pivots = row_reduce(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns the non-zero rows: echelon form, positive pivots, and every entry
/// above a pivot reduced into `[0, pivot)`.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        // Bring the smallest non-zero entry of column c (rows r..) to row r.
        while let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()))
        {
            m.swap(r, p);
            let pivot = m[r].clone();
            let mut done = true;
            for row in m[r + 1..].iter_mut() {
                if row[c].is_zero() {
                    continue;
                }
                let q = row[c].div_floor(&pivot[c]);
                for (v, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *v -= &q * p;
                }
                if !row[c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r == m.len() || m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for v in m[r].iter_mut() {
                *v = -&*v;
            }
        }
        let pivot = m[r].clone();
        for row in m[..r].iter_mut() {
            let q = row[c].div_floor(&pivot[c]);
            if !q.is_zero() {
                for (v, p) in row[c..cols].iter_mut().zip(&pivot[c..cols]) {
                    *v -= &q * p;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Integer normal to the hyperplane spanned by `d - 1` vectors of `Z^d`,
/// scaled to be primitive (gcd 1). `None` if the vectors are dependent.
pub fn primitive_normal(vectors: &[Vec<BigInt>], dim: usize) -> Option<Vec<BigInt>> {
    debug_assert_eq!(vectors.len() + 1, dim);
    let mut normal = Vec::with_capacity(dim);
    for skip in 0..dim {
        let minor: Vec<Vec<BigInt>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let det = determinant(&minor);
        normal.push(if skip % 2 == 0 { det } else { -det });
    }
    let g = normal.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return None;
    }
    Some(normal.into_iter().map(|v| v / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    /// Leibniz expansion, used as an independent oracle for Bareiss.
    fn leibniz(rows: &[Vec<BigInt>]) -> BigInt {
        let n = rows.len();
        let mut total = BigInt::zero();
        for perm in (0..n).permutations(n) {
            let mut inversions = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let mut term = BigInt::one();
            for (i, &p) in perm.iter().enumerate() {
                term *= &rows[i][p];
            }
            if inversions % 2 == 1 {
                term = -term;
            }
            total += term;
        }
        total
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let cases = [
            m(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]),
            m(&[&[0, 1, 2], &[0, 3, 4], &[1, 5, 6]]),
            m(&[&[1, 2], &[2, 4]]),
            m(&[&[0, 0, 1, 0], &[1, 0, 0, 0], &[3, 1, 4, 1], &[5, 9, 2, 6]]),
        ];
        for c in &cases {
            assert_eq!(determinant(c), leibniz(c), "{c:?}");
        }
        assert_eq!(determinant(&[]), BigInt::one());
    }

    #[test]
    fn hnf_of_index_two_lattice() {
        let rows = m(&[&[2, 0], &[-2, 0], &[0, 1], &[0, -1], &[0, 0]]);
        assert_eq!(hermite_normal_form(&rows), m(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn hnf_reduces_above_pivots() {
        let rows = m(&[&[3, 5], &[1, 2]]);
        // det = 1, so the lattice is Z^2.
        assert_eq!(hermite_normal_form(&rows), m(&[&[1, 0], &[0, 1]]));
        let rows = m(&[&[2, 3], &[0, 4]]);
        assert_eq!(hermite_normal_form(&rows), m(&[&[2, 3], &[0, 4]]));
    }

    #[test]
    fn inverse_and_solve() {
        let a = m(&[&[1, 1], &[0, 1]]);
        let inv = inverse(&a).unwrap();
        let expect: Vec<Vec<Rational>> = to_rational(&m(&[&[1, -1], &[0, 1]]));
        assert_eq!(inv, expect);
        assert!(inverse(&m(&[&[1, 2], &[2, 4]])).is_none());
        let x = solve(
            &to_rational(&m(&[&[2, 0], &[0, 4]])),
            &[Rational::from_integer(1.into()), Rational::from_integer(1.into())],
        )
        .unwrap();
        assert_eq!(
            x,
            vec![
                Rational::new(1.into(), 2.into()),
                Rational::new(1.into(), 4.into())
            ]
        );
    }

    #[test]
    fn normal_of_plane() {
        let n = primitive_normal(&m(&[&[2, 0, 0], &[0, 2, 0]]), 3).unwrap();
        assert_eq!(n, vec![0.into(), 0.into(), BigInt::from(1)]);
        assert!(primitive_normal(&m(&[&[1, 1, 0], &[2, 2, 0]]), 3).is_none());
        assert_eq!(primitive_normal(&[], 1).unwrap(), vec![BigInt::one()]);
    }

    #[test]
    fn rank_of_dependent_rows() {
        assert_eq!(rank_int(&m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 0]])), 2);
        assert_eq!(rank_int(&m(&[&[0, 0]])), 0);
    }
}
