//! Exact Gaussian elimination over ℚ for the handful of small systems the
//! engine needs.

use super::Rational;

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(Vec<Rational>),
    Underdetermined,
    Inconsistent,
}

/// Row-reduces `rows` in place and returns the pivot columns.
fn reduce(rows: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rational::ONE / rows[r][c];
        for x in rows[r].iter_mut() {
            *x = *x * inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c];
                for j in 0..rows[i].len() {
                    let v = rows[r][j];
                    rows[i][j] -= f * v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Rank of a list of equal-length vectors.
pub fn rank(vectors: &[Vec<Rational>]) -> usize {
    let cols = vectors.first().map_or(0, Vec::len);
    let mut rows = vectors.to_vec();
    reduce(&mut rows, cols).len()
}

/// Solves `A x = b` exactly; `a` is row-major with `b.len()` rows.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Solution {
    assert_eq!(a.len(), b.len(), "one right-hand side per row");
    let cols = a.first().map_or(0, Vec::len);
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let pivots = reduce(&mut rows, cols);
    if rows.iter().skip(pivots.len()).any(|r| !r[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivots.len() < cols {
        return Solution::Underdetermined;
    }
    Solution::Unique((0..cols).map(|i| rows[i][cols]).collect())
}
