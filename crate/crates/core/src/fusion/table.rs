//! The `(1^j, t)` ranks `r_ℓ(j, t)` and their level-unbounded analogue.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Level;
use crate::arith::{binomial, frac, q, to_natural, Rational};
use crate::error::{precondition, Error, Result};

type Rows = Vec<Vec<BigUint>>;

fn tables() -> &'static RwLock<HashMap<u32, Rows>> {
    static TABLES: OnceLock<RwLock<HashMap<u32, Rows>>> = OnceLock::new();
    TABLES.get_or_init(Default::default)
}

/// `r_ℓ(j, t)`: rank of `(1^j, t)`, zero for `t < 0` or `t > ℓ`.
///
/// Rows are built by `r(j, t) = r(j-1, t-1) + r(j-1, t+1)` for `1 ≤ t ≤ ℓ`
/// (with `r(j-1, ℓ+1) = 0`), `r(j, 0) = r(j-1, 1)` and the single seed
/// `r(0, 0) = 1`, and kept per level.
pub fn rank_1t(level: Level, j: usize, t: i64) -> BigUint {
    let ell = level.get() as usize;
    if t < 0 || t as usize > ell {
        return BigUint::zero();
    }
    let t = t as usize;
    {
        let map = tables().read().expect("rank table poisoned");
        if let Some(rows) = map.get(&level.get()) {
            if let Some(row) = rows.get(j) {
                return row[t].clone();
            }
        }
    }
    let mut map = tables().write().expect("rank table poisoned");
    let rows = map.entry(level.get()).or_insert_with(|| {
        let mut seed = vec![BigUint::zero(); ell + 1];
        seed[0] = BigUint::from(1u32);
        vec![seed]
    });
    while rows.len() <= j {
        let prev = rows.last().expect("seed row present");
        let row: Vec<BigUint> = (0..=ell)
            .map(|s| {
                let below = if s == 0 { BigUint::zero() } else { prev[s - 1].clone() };
                let above = prev.get(s + 1).cloned().unwrap_or_default();
                below + above
            })
            .collect();
        rows.push(row);
    }
    rows[j][t].clone()
}

/// `r_∞(j, t)` from the ballot-number formulas; zero if `t > j` or the
/// parities differ.
pub fn rank_infinity(j: u64, t: u64) -> BigUint {
    if t > j || (j + t) % 2 == 1 {
        return BigUint::zero();
    }
    let (num, den, top, choose) = if j.is_multiple_of(2) {
        let (x, y) = (j / 2, t / 2);
        (2 * y + 1, x + y + 1, 2 * x, x - y)
    } else {
        let (x, y) = ((j - 1) / 2, (t - 1) / 2);
        (2 * y + 2, x + y + 2, 2 * x + 1, x - y)
    };
    let (quot, rem) = (binomial(top as i64, choose as i64) * num).div_rem(&BigUint::from(den));
    debug_assert!(rem.is_zero(), "r_inf({j},{t}) not integral");
    quot
}

fn check_t(level: Level, t: i64) -> Result<()> {
    if t < 0 || t > level.get() as i64 {
        return precondition(format!("t = {t} outside 0..={level}"));
    }
    Ok(())
}

/// Number of reflection pairs, `⌈j / (2(ℓ+2))⌉`.
fn reflection_count(level: Level, j: u64) -> u64 {
    let period = 2 * (level.get() as u64 + 2);
    j.div_ceil(period)
}

/// The signed `r_∞` column indices whose alternating sum gives `r_ℓ(j, t)`:
/// `(+, t + 2(ℓ+2)k)` and `(−, (2k+2)(ℓ+2) − t − 2)` for `0 ≤ k ≤ K`.
pub fn reflection_terms(level: Level, j: u64, t: i64) -> Result<Vec<(i8, u64)>> {
    check_t(level, t)?;
    let m = level.get() as u64 + 2;
    let t = t as u64;
    let mut terms = Vec::new();
    for k in 0..=reflection_count(level, j) {
        terms.push((1, t + 2 * m * k));
        terms.push((-1, (2 * k + 2) * m - t - 2));
    }
    Ok(terms)
}

/// `r_ℓ(j, t)` as an alternating sum of reflected `r_∞` values.
pub fn rank_by_reflection(level: Level, j: u64, t: i64) -> Result<BigUint> {
    let mut total = BigInt::zero();
    for (sign, col) in reflection_terms(level, j, t)? {
        let v = BigInt::from(rank_infinity(j, col));
        if sign > 0 {
            total += v;
        } else {
            total -= v;
        }
    }
    if total.is_negative() {
        return Err(Error::Integrality(format!("reflection sum for r_{level}({j},{t}) is negative")));
    }
    Ok(total.magnitude().clone())
}

/// `r_ℓ(j, t)` from the binomial closed form, evaluated over the rationals
/// and checked to be a nonnegative integer.
pub fn rank_closed_form(level: Level, j: u64, t: i64) -> Result<BigUint> {
    check_t(level, t)?;
    if (j as i64 + t) % 2 != 0 {
        return Ok(BigUint::zero());
    }
    let m = level.get() as i64 + 2;
    let j = j as i64;
    let big_k = reflection_count(level, j as u64) as i64;
    let mut sum = q(0);
    let choose = |n: i64, k: i64| Rational::from_integer(BigInt::from(binomial(n, k)));
    if j % 2 == 0 {
        let (x, y) = (j / 2, t / 2);
        for k in 0..=big_k {
            let b = frac(2 * y + 2 * k * m + 1, x + y + k * m + 1);
            let c = frac((2 * k + 2) * m - 2 * y - 1, x + (k + 1) * m - y);
            sum += b * choose(2 * x, x - y - k * m) - c * choose(2 * x, x - (k + 1) * m + y + 1);
        }
    } else {
        let (x, y) = ((j - 1) / 2, (t - 1) / 2);
        for k in 0..=big_k {
            let b = frac(2 * y + 2 * k * m + 2, x + y + k * m + 2);
            let c = frac(2 * (k + 1) * m - 2 * y - 2, x + (k + 1) * m - y);
            sum += b * choose(2 * x + 1, x - y - k * m) - c * choose(2 * x + 1, x - (k + 1) * m + y + 2);
        }
    }
    to_natural(&sum, &format!("closed form r_{level}({j},{t})"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(ell: u32) -> Level {
        Level::new(ell).unwrap()
    }

    fn n(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn recurrence_seeds_and_convention() {
        for ell in 1..=6 {
            for k in 1..=ell as usize {
                assert_eq!(rank_1t(lv(ell), k, k as i64), n(1));
            }
            assert!(rank_1t(lv(ell), 5, -1).is_zero());
            assert!(rank_1t(lv(ell), 5, ell as i64 + 1).is_zero());
        }
    }

    #[test]
    fn level_two_powers() {
        for k in 0..10u32 {
            assert_eq!(rank_1t(lv(2), 2 * k as usize + 1, 1), n(1 << k));
        }
        for k in 1..10u32 {
            assert_eq!(rank_1t(lv(2), 2 * k as usize, 2), n(1 << (k - 1)));
        }
    }

    #[test]
    fn proved_orientation_of_the_shifted_seed() {
        for ell in 1..=8u32 {
            assert_eq!(rank_1t(lv(ell), ell as usize + 2, ell as i64), n(ell as u64));
        }
        for ell in 1..=8u32 {
            for k in 2..=(ell as usize + 1) {
                assert_eq!(rank_1t(lv(ell), k, k as i64 - 2), n(k as u64 - 1));
            }
        }
    }

    #[test]
    fn infinity_row_fifteen() {
        let row: Vec<u64> = vec![0, 1430, 0, 2002, 0, 1638, 0, 910, 0, 350, 0, 90, 0, 14, 0, 1];
        for (t, want) in row.into_iter().enumerate() {
            assert_eq!(rank_infinity(15, t as u64), n(want), "t={t}");
        }
        assert_eq!(rank_infinity(8, 0), n(14));
        assert!(rank_infinity(4, 6).is_zero());
        for j in 0..30 {
            assert_eq!(rank_infinity(j, j), n(1));
        }
    }

    #[test]
    fn infinity_satisfies_its_recurrence() {
        for j in 1..40u64 {
            for t in 1..=j {
                assert_eq!(rank_infinity(j, t), rank_infinity(j - 1, t - 1) + rank_infinity(j - 1, t + 1));
            }
        }
    }

    #[test]
    fn reflection_reproduces_worked_example() {
        let terms = reflection_terms(lv(3), 15, 3).unwrap();
        let nonzero: Vec<(i8, u64)> = terms.into_iter().filter(|&(_, c)| !rank_infinity(15, c).is_zero()).collect();
        assert_eq!(nonzero, vec![(1, 3), (-1, 5), (1, 13), (-1, 15)]);
        assert_eq!(rank_by_reflection(lv(3), 15, 3).unwrap(), n(377));
        assert_eq!(rank_closed_form(lv(3), 15, 3).unwrap(), n(377));
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(rank_closed_form(lv(2), 6, 2).unwrap(), n(4));
        assert!(rank_closed_form(lv(4), 7, 2).unwrap().is_zero());
        assert!(rank_closed_form(lv(2), 6, 3).is_err());
        assert!(rank_by_reflection(lv(2), 6, -1).is_err());
        for j in 0..12u64 {
            for t in 0..=j as i64 {
                assert_eq!(rank_closed_form(lv(20), j, t.min(20)).unwrap(), rank_infinity(j, t.min(20) as u64));
            }
        }
    }

    #[test]
    fn odd_parity_is_zero_everywhere() {
        for ell in 1..=5 {
            for j in 0..15u64 {
                for t in 0..=ell as i64 {
                    if (j as i64 + t) % 2 == 1 {
                        assert!(rank_by_reflection(lv(ell), j, t).unwrap().is_zero());
                        assert!(rank_1t(lv(ell), j as usize, t).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn reflection_matches_recurrence_at_five_nine_one() {
        assert_eq!(rank_by_reflection(lv(5), 9, 1).unwrap(), rank_1t(lv(5), 9, 1));
    }
}
