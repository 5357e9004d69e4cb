//! Row-style Hermite normal form of integer matrices.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Hermite normal form of the row lattice spanned by `rows` (each of length
/// `cols`): nonzero rows are upper triangular with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if pivot_row == rows.len() {
            break;
        }
        loop {
            // row with the smallest nonzero |entry| in column c moves to pivot_row
            let best = (pivot_row..rows.len())
                .filter(|&r| !rows[r][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(best) = best else { break };
            rows.swap(pivot_row, best);
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                if rows[r][c].is_zero() {
                    continue;
                }
                let q = rows[r][c].div_floor(&rows[pivot_row][c]);
                let (head, tail) = rows.split_at_mut(r);
                for (x, p) in tail[0].iter_mut().zip(&head[pivot_row]) {
                    *x -= &q * p;
                }
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][c].is_zero() {
            continue;
        }
        if rows[pivot_row][c].is_negative() {
            for x in rows[pivot_row].iter_mut() {
                *x = -x.clone();
            }
        }
        pivots.push((pivot_row, c));
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    for &(pr, c) in &pivots {
        let p = rows[pr][c].clone();
        for r in 0..pr {
            let q = rows[r][c].div_floor(&p);
            if q.is_zero() {
                continue;
            }
            let pivot = rows[pr].clone();
            for (x, y) in rows[r].iter_mut().zip(&pivot) {
                *x -= &q * y;
            }
        }
    }
    rows
}

/// Absolute determinant of a full-rank row lattice in `Z^cols`, i.e. the
/// product of the Hermite pivots. `None` when the rank is below `cols`.
pub fn lattice_determinant(rows: Vec<Vec<BigInt>>, cols: usize) -> Option<BigInt> {
    let h = hermite_normal_form(rows, cols);
    if h.len() < cols {
        return None;
    }
    let mut det = BigInt::one();
    for (i, row) in h.iter().enumerate() {
        det *= &row[i];
    }
    Some(det)
}
