//! Ranks of conformal blocks bundles by factorization, checked against the
//! Verlinde formula, with the memo table exported as JSON.

use cbdiv::fusion::{rank, verlinde_rank_numeric, RankCache};
use cbdiv::{Level, WeightVector};

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    let level = Level::new(3)?;
    let mut weights = vec![1; 15];
    weights.push(3);
    let w = WeightVector::new(level, weights)?;
    let r = rank(&w);
    out += &format!("rank at level 3 of (1^15, 3) = {r}\n");
    out += &format!("Verlinde sum gives {}\n", verlinde_rank_numeric(&w, 0)?);

    for (ell, ws) in [(1, vec![1, 1, 1, 1]), (2, vec![1, 1, 1, 1]), (2, vec![2, 2, 2]), (4, vec![2, 2, 2, 2, 2, 2])] {
        let w = WeightVector::new(Level::new(ell)?, ws.clone())?;
        out += &format!("level {ell}, weights {ws:?}: rank {}\n", rank(&w));
    }

    // A private cache can be filled, exported and reloaded elsewhere.
    let cache = RankCache::new();
    cache.rank(&w);
    let json = serde_json::to_string(&cache.entries()).expect("entries serialize");
    let reloaded = RankCache::new();
    reloaded.absorb(&serde_json::from_str::<Vec<_>>(&json).expect("round trip"));
    out += &format!("memo entries exported and reloaded: {}\n", reloaded.len());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
