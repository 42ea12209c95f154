//! Degrees of four-point bundles and the all-ones divisors `D_ℓ`.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use super::{FCurve, SymDivisor};
use crate::arith::{frac, from_big, q, to_integer, Rational};
use crate::error::{precondition, Result};
use crate::fusion::{rank, rank_1t, three_point, Level, WeightVector};

/// Casimir scalar `c(α) = α²/2 + α` for sl₂ (dual Coxeter number 2).
pub fn casimir(alpha: u32) -> Rational {
    frac((alpha * alpha) as i64, 2) + q(alpha as i64)
}

type DegreeTable = RwLock<HashMap<(u32, [u32; 4]), BigInt>>;

fn degree_cache() -> &'static DegreeTable {
    static CACHE: OnceLock<DegreeTable> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Degree of `V(sl₂, ℓ, μ)` on M̄₀,₄ for four level-`ℓ` weights.
pub fn degree_4pt(mu: &WeightVector) -> Result<BigInt> {
    let &[m1, m2, m3, m4] = mu.weights() else {
        return precondition(format!("a four-point degree needs 4 weights, got {}", mu.len()));
    };
    let ell = mu.level().get();
    let key = (ell, [m1, m2, m3, m4]);
    if let Some(d) = degree_cache().read().expect("degree cache poisoned").get(&key) {
        return Ok(d.clone());
    }
    let r = |a, b, c| three_point(ell, a, b, c) as i64;
    let mut total = from_big(&rank(mu)) * [m1, m2, m3, m4].into_iter().map(casimir).sum::<Rational>();
    for alpha in 0..=ell {
        let channels = r(m1, m2, alpha) * r(m3, m4, alpha)
            + r(m1, m3, alpha) * r(m2, m4, alpha)
            + r(m1, m4, alpha) * r(m2, m3, alpha);
        if channels != 0 {
            total -= casimir(alpha) * q(channels);
        }
    }
    let value = to_integer(&(total / q(2 * (ell as i64 + 2))), &format!("degree of level {ell} bundle {:?}", key.1))?;
    degree_cache().write().expect("degree cache poisoned").insert(key, value.clone());
    Ok(value)
}

/// `D_ℓ · F` for the all-ones divisor on M̄₀,ₙ: the sum over `μ ∈ {0..ℓ}⁴` of
/// `deg V(μ) · Π_k r_ℓ(part_k, μ_k)`. Odd `n` gives zero.
pub fn intersect_cb_fcurve(level: Level, n: u32, f: &FCurve) -> Result<BigInt> {
    if f.n() != n {
        return precondition(format!("{f} does not live on n = {n}"));
    }
    if n % 2 == 1 {
        return Ok(BigInt::zero());
    }
    let ell = level.get();
    let supports: Vec<Vec<(u32, BigUint)>> = f
        .parts()
        .iter()
        .map(|&part| {
            (0..=ell)
                .filter_map(|t| {
                    let r = rank_1t(level, part as usize, t as i64);
                    (!r.is_zero()).then_some((t, r))
                })
                .collect()
        })
        .collect();
    let mut total = BigInt::zero();
    for (a, ra) in &supports[0] {
        for (b, rb) in &supports[1] {
            for (c, rc) in &supports[2] {
                for (d, rd) in &supports[3] {
                    let mu = WeightVector::new(level, vec![*a, *b, *c, *d])?;
                    let deg = degree_4pt(&mu)?;
                    if !deg.is_zero() {
                        total += deg * BigInt::from(ra * rb * rc * rd);
                    }
                }
            }
        }
    }
    Ok(total)
}

/// The class of `D_ℓ` on M̄₀,ₙ in the `B` basis, via
/// `β₁ = (3/2) r_ℓ(n)` and `β_i = Σ_t c(t) r_ℓ(i,t) r_ℓ(n−i,t)`.
///
/// For odd `n` every all-ones bundle has odd weight sum, so the class is
/// zero.
pub fn cb_divisor_class(level: Level, n: u32) -> Result<SymDivisor> {
    if n % 2 == 1 {
        return SymDivisor::zero(n);
    }
    let ell = level.get();
    let beta_1 = frac(3, 2) * from_big(&rank_1t(level, n as usize, 0));
    let scale = frac(1, 2 * (ell as i64 + 2));
    SymDivisor::from_fn(n, |i| {
        let beta_i: Rational = (0..=ell)
            .map(|t| {
                let prod = rank_1t(level, i as usize, t as i64) * rank_1t(level, (n - i) as usize, t as i64);
                casimir(t) * from_big(&prod)
            })
            .sum();
        &scale * (frac((i * (n - i)) as i64, (n - 1) as i64) * &beta_1 - beta_i)
    })
}
