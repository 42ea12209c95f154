use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::{rank_canonical, WeightVector};

type Key = (u32, Vec<u32>);

/// Memo table for factorization ranks, keyed on `(ℓ, sorted nonzero weights)`.
///
/// Lookups and inserts go through a lock; recursion happens outside it, so a
/// racing insert only ever rewrites an identical value.
#[derive(Default)]
pub struct RankCache {
    ranks: RwLock<HashMap<Key, BigUint>>,
}

/// One serialized memo entry. The rank is a decimal string so JSON never
/// sees a float.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub level: u32,
    pub weights: Vec<u32>,
    pub rank: String,
}

impl RankCache {
    pub fn new() -> Self {
        RankCache::default()
    }

    pub fn global() -> &'static RankCache {
        static GLOBAL: OnceLock<RankCache> = OnceLock::new();
        GLOBAL.get_or_init(RankCache::new)
    }

    pub fn rank(&self, w: &WeightVector) -> BigUint {
        let nonzero: Vec<u32> = w.weights().iter().copied().filter(|&x| x > 0).collect();
        rank_canonical(self, w.level().get(), &nonzero)
    }

    pub(crate) fn lookup(&self, ell: u32, weights: &[u32]) -> Option<BigUint> {
        let map = self.ranks.read().expect("rank cache poisoned");
        map.get(&(ell, weights.to_vec())).cloned()
    }

    pub(crate) fn store(&self, ell: u32, weights: &[u32], value: BigUint) -> BigUint {
        let mut map = self.ranks.write().expect("rank cache poisoned");
        map.entry((ell, weights.to_vec())).or_insert(value).clone()
    }

    pub fn len(&self) -> usize {
        self.ranks.read().expect("rank cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn entries(&self) -> Vec<CacheEntry> {
        let map = self.ranks.read().expect("rank cache poisoned");
        let mut out: Vec<CacheEntry> = map
            .iter()
            .map(|((level, weights), rank)| CacheEntry {
                level: *level,
                weights: weights.clone(),
                rank: rank.to_string(),
            })
            .collect();
        out.sort_by(|a, b| (a.level, &a.weights).cmp(&(b.level, &b.weights)));
        out
    }

    /// Merges previously exported entries. Entries that fail to parse are
    /// skipped and counted.
    pub fn absorb(&self, entries: &[CacheEntry]) -> usize {
        let mut rejected = 0;
        let mut map = self.ranks.write().expect("rank cache poisoned");
        for e in entries {
            let mut weights = e.weights.clone();
            weights.sort_unstable_by(|a, b| b.cmp(a));
            let ok = weights.len() >= 4 && weights.iter().all(|&w| w > 0 && w <= e.level);
            match e.rank.parse::<BigUint>() {
                Ok(r) if ok => {
                    map.entry((e.level, weights)).or_insert(r);
                }
                _ => rejected += 1,
            }
        }
        rejected
    }
}
