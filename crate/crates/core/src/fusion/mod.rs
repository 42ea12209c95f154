//! Ranks of sl₂ conformal blocks bundles on M̄₀,ₙ.
//!
//! Weights of level `ℓ` are integers `0 ≤ λ ≤ ℓ`. Every rank here is computed
//! exactly; the routes are deliberately independent so they can be checked
//! against each other:
//!
//! * [`rank`]: factorization into three-point fusion rules, memoized on the
//!   canonical (sorted) weight vector;
//! * [`rank_1t`]: the row-by-row recurrence for `r_ℓ(j, t)`, the rank with
//!   weights `(1^j, t)`;
//! * [`rank_closed_form`]: the binomial closed form for `r_ℓ(j, t)`;
//! * [`rank_by_reflection`]: alternating sum of reflected `r_∞` values;
//! * [`verlinde_rank_numeric`]: the trigonometric Verlinde sum.

mod cache;
mod table;
mod verlinde;

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{precondition, Result};

pub use cache::{CacheEntry, RankCache};
pub use table::{rank_1t, rank_by_reflection, rank_closed_form, rank_infinity, reflection_terms};
pub use verlinde::{verlinde_rank_numeric, verlinde_rank_with_precision, DEFAULT_PRECISION};

/// The level `ℓ ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Level(u32);

impl Level {
    pub fn new(ell: u32) -> Result<Self> {
        if ell == 0 {
            return precondition("level must be a positive integer");
        }
        Ok(Level(ell))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Level-bounded weights, kept in weakly decreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    level: Level,
    weights: Vec<u32>,
}

impl WeightVector {
    pub fn new(level: Level, weights: impl Into<Vec<u32>>) -> Result<Self> {
        let mut weights = weights.into();
        if let Some(&w) = weights.iter().find(|&&w| w > level.get()) {
            return precondition(format!("weight {w} exceeds level {level}"));
        }
        weights.sort_unstable_by(|a, b| b.cmp(a));
        Ok(WeightVector { level, weights })
    }

    /// `(1^j, t)`.
    pub fn ones_and(level: Level, j: usize, t: u32) -> Result<Self> {
        let mut w = vec![1; j];
        w.push(t);
        WeightVector::new(level, w)
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }
}

/// Three-point fusion rule for sl₂ at level `ell`.
pub(crate) fn three_point(ell: u32, a: u32, b: u32, c: u32) -> bool {
    let sum = a as u64 + b as u64 + c as u64;
    let max = a.max(b).max(c) as u64;
    sum.is_multiple_of(2) && sum <= 2 * ell as u64 && 2 * max <= sum
}

/// Ranks for one, two and three marked points.
pub fn fusion_rank_small(w: &WeightVector) -> Result<u32> {
    let ell = w.level().get();
    let r = match *w.weights() {
        [a] => a == 0,
        [a, b] => a == b,
        [a, b, c] => three_point(ell, a, b, c),
        _ => return precondition(format!("fusion rules cover 1 to 3 points, got {}", w.len())),
    };
    Ok(r as u32)
}

/// Exact rank of `V(sl₂, ℓ, λ)` using the process-wide memo table.
pub fn rank(w: &WeightVector) -> BigUint {
    RankCache::global().rank(w)
}

/// Rank of `(1^n)` at the given level, written `r_ℓ(n)`.
pub fn rank_all_ones(level: Level, n: usize) -> BigUint {
    rank_1t(level, n, 0)
}

/// Short-circuit rules that force a zero rank: odd total weight, or one
/// weight exceeding the sum of the others.
pub(crate) fn obviously_zero(weights: &[u32]) -> bool {
    let total: u64 = weights.iter().map(|&w| w as u64).sum();
    let max = weights.iter().copied().max().unwrap_or(0) as u64;
    total % 2 == 1 || max > total - max
}

/// Nonvanishing test: `Λ = Σλᵢ` even and, for every subset `I` with
/// `n − |I|` odd, `Λ − (n − |I| − 1)ℓ ≤ 2 Σ_{i∈I} λᵢ`.
///
/// For a fixed cardinality the right-hand side is smallest on the `|I|`
/// smallest weights, so only `n + 1` inequalities need checking.
pub fn nonvanishing_criterion(w: &WeightVector) -> bool {
    let ell = w.level().get() as i64;
    let n = w.len() as i64;
    let total = w.total() as i64;
    if total % 2 != 0 {
        return false;
    }
    let mut ascending: Vec<i64> = w.weights().iter().map(|&x| x as i64).collect();
    ascending.reverse();
    let mut prefix = 0i64;
    for size in 0..=n {
        if size > 0 {
            prefix += ascending[(size - 1) as usize];
        }
        let outside = n - size;
        if outside % 2 == 1 && total - (outside - 1) * ell > 2 * prefix {
            return false;
        }
    }
    true
}

pub(crate) fn rank_canonical(cache: &RankCache, ell: u32, weights: &[u32]) -> BigUint {
    // weights: sorted decreasing, no zeros
    match *weights {
        [] => return BigUint::one(),
        [_] => return BigUint::zero(),
        [a, b] => return BigUint::from((a == b) as u32),
        [a, b, c] => return BigUint::from(three_point(ell, a, b, c) as u32),
        _ => {}
    }
    if obviously_zero(weights) {
        return BigUint::zero();
    }
    if let Some(hit) = cache.lookup(ell, weights) {
        return hit;
    }
    // Peel the largest and the smallest weight: for (t, 1, …, 1) this is the
    // (1, t) | 1^{j-1} split, so the recursion stays linear in n.
    let largest = weights[0];
    let smallest = weights[weights.len() - 1];
    let rest = &weights[1..weights.len() - 1];
    let lo = largest - smallest;
    let hi = (largest + smallest).min(2 * ell - largest - smallest);
    let mut total = BigUint::zero();
    let mut alpha = lo;
    while alpha <= hi {
        let mut next = rest.to_vec();
        if alpha > 0 {
            let pos = next.partition_point(|&x| x > alpha);
            next.insert(pos, alpha);
        }
        total += rank_canonical(cache, ell, &next);
        alpha += 2;
    }
    cache.store(ell, weights, total)
}
