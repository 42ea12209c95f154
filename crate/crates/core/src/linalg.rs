//! Exact rank over the rationals by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;

pub type Matrix = Vec<Vec<Rational>>;

/// Scales each row by the lcm of its denominators so the entries become
/// integers without changing the row space.
fn integer_rows(m: &Matrix) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect()
}

/// Rank of a rational matrix, via Bareiss elimination on integer rows.
pub fn rank(m: &Matrix) -> usize {
    let mut a = integer_rows(m);
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{frac, q};

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank(&vec![]), 0);
        assert_eq!(rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&m(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&m(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]])), 2);
        assert_eq!(rank(&m(&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])), 3);
        assert_eq!(rank(&m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0], &[1, 1, 1]])), 3);
    }

    #[test]
    fn fractions_are_cleared() {
        let a = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), q(1)]];
        assert_eq!(rank(&a), 1);
        let b = vec![vec![frac(1, 2), frac(1, 3)], vec![frac(3, 2), frac(1, 7)]];
        assert_eq!(rank(&b), 2);
    }

    #[test]
    fn hilbert_matrix_is_full_rank() {
        let h: Matrix = (1..=6).map(|i| (1..=6).map(|j| frac(1, i + j - 1)).collect()).collect();
        assert_eq!(rank(&h), 6);
    }
}
