//! Smith normal form over the integers.
//!
//! Pivots are chosen deterministically: the entry of smallest nonzero
//! absolute value in the active submatrix, ties broken by (row, column).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Nonzero invariant factors `d₁ | d₂ | …` of an integer matrix given as
/// rows of length `cols`. All returned values are positive.
pub fn invariant_factors(rows: &[Vec<BigInt>], cols: usize) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    for r in &a {
        assert_eq!(r.len(), cols, "ragged matrix");
    }
    let m = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < m.min(cols) {
        let Some((pr, pc)) = smallest_entry(&a, t, cols) else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut dirty = false;
            // Clear column t below the pivot.
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                for (x, p) in a[i][t..].iter_mut().zip(&pivot_row[t..]) {
                    *x -= &q * p;
                }
                if !a[i][t].is_zero() {
                    dirty = true;
                }
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[j] -= d;
                }
                if !a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                // Divisibility: fold an offending row into the pivot row.
                let bad = (t + 1..m).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        let bad_row = a[i].clone();
                        for (x, v) in a[t][t..].iter_mut().zip(&bad_row[t..]) {
                            *x += v;
                        }
                    }
                }
            }
            // Re-pivot on the smallest entry of row/column t.
            let (pr, pc) = smallest_in_cross(&a, t, cols);
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().take(cols).skip(t) {
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smallest_in_cross(a: &[Vec<BigInt>], t: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let better = |x: &BigInt, b: &BigInt| !x.is_zero() && (b.is_zero() || x.abs() < b.abs());
    for i in t..a.len() {
        if better(&a[i][t], &a[best.0][best.1]) {
            best = (i, t);
        }
    }
    for j in t..cols {
        if better(&a[t][j], &a[best.0][best.1]) {
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    fn ints(v: Vec<BigInt>) -> Vec<i64> {
        v.into_iter().map(|x| x.try_into().unwrap()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(ints(invariant_factors(&m(&[&[2]]), 1)), vec![2]);
        assert!(invariant_factors(&[], 3).is_empty());
        assert_eq!(ints(invariant_factors(&m(&[&[2, 0], &[0, 3]]), 2)), vec![1, 6]);
        assert_eq!(ints(invariant_factors(&m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]), 3)), vec![2, 6, 12]);
        assert_eq!(ints(invariant_factors(&m(&[&[0, 0], &[0, 0]]), 2)), Vec::<i64>::new());
        assert_eq!(ints(invariant_factors(&m(&[&[1, 1], &[1, -1]]), 2)), vec![1, 2]);
    }

    #[test]
    fn large_entries_stay_exact() {
        let big = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
        let rows = vec![vec![big.clone(), BigInt::zero()], vec![BigInt::zero(), big.clone() * 2]];
        let d = invariant_factors(&rows, 2);
        assert_eq!(d, vec![big.clone(), big * 2]);
    }
}
