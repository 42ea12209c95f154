//! Numeric evaluation of the Verlinde formula for sl₂.
//!
//! `r = ((ℓ+2)/2)^{g-1} Σ_{j=0}^{ℓ} Π_i sin((λᵢ+1)(j+1)π/(ℓ+2)) / sin((j+1)π/(ℓ+2))^{2g+n-2}`

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::BigUint;

use super::WeightVector;
use crate::error::{Error, Result};

/// Starting mantissa width in bits.
pub const DEFAULT_PRECISION: usize = 128;
const RETRIES: u32 = 3;
const RM: RoundingMode = RoundingMode::ToEven;

/// Evaluates the Verlinde sum, doubling precision up to three times until
/// the value sits within `1e-6` of an integer.
pub fn verlinde_rank_numeric(w: &WeightVector, genus: u32) -> Result<BigUint> {
    let mut precision = DEFAULT_PRECISION;
    let mut last = None;
    for _ in 0..=RETRIES {
        match verlinde_rank_with_precision(w, genus, precision) {
            Ok(r) => return Ok(r),
            Err(e @ Error::Precision(_)) => last = Some(e),
            Err(e) => return Err(e),
        }
        precision *= 2;
    }
    Err(last.expect("at least one attempt"))
}

/// One evaluation at a fixed mantissa width; fails if the rounding distance
/// is `1e-6` or more.
pub fn verlinde_rank_with_precision(w: &WeightVector, genus: u32, precision: usize) -> Result<BigUint> {
    let p = precision;
    let mut cc = Consts::new().map_err(|e| Error::Precision(format!("{e:?}")))?;
    let ell = w.level().get() as u64;
    let m = ell + 2;
    let pi = cc.pi(p, RM);
    let denom = BigFloat::from_u64(m, p);
    // sin(kπ/m) for k = 0..2m; the argument only matters modulo 2m.
    let sines: Vec<BigFloat> =
        (0..2 * m).map(|k| pi.mul(&BigFloat::from_u64(k, p), p, RM).div(&denom, p, RM).sin(p, RM, &mut cc)).collect();
    let sin_of = |k: u64| &sines[(k % (2 * m)) as usize];

    let n = w.len() as i64;
    let power = 2 * genus as i64 + n - 2;
    let mut sum = BigFloat::from_u64(0, p);
    for j in 0..=ell {
        let mut term = BigFloat::from_u64(1, p);
        for &lambda in w.weights() {
            term = term.mul(sin_of((lambda as u64 + 1) * (j + 1)), p, RM);
        }
        let base = sin_of(j + 1);
        let scale = base.powi(power.unsigned_abs() as usize, p, RM);
        term = if power >= 0 { term.div(&scale, p, RM) } else { term.mul(&scale, p, RM) };
        sum = sum.add(&term, p, RM);
    }
    let half_m = BigFloat::from_u64(m, p).div(&BigFloat::from_u64(2, p), p, RM);
    let prefactor =
        if genus >= 1 { half_m.powi(genus as usize - 1, p, RM) } else { BigFloat::from_u64(1, p).div(&half_m, p, RM) };
    let value = sum.mul(&prefactor, p, RM);
    if value.is_nan() || value.is_inf() {
        return Err(Error::Precision(format!("non-finite Verlinde sum at {p} bits")));
    }

    let half = BigFloat::from_f64(0.5, p);
    let nearest = value.add(&half, p, RM).floor();
    let distance = value.sub(&nearest, p, RM).abs();
    let tolerance = BigFloat::from_f64(1e-6, p);
    if distance.cmp(&tolerance).is_none_or(|c| c >= 0) {
        return Err(Error::Precision(format!("Verlinde sum not within 1e-6 of an integer at {p} bits")));
    }
    float_to_natural(&nearest)
}

fn float_to_natural(x: &BigFloat) -> Result<BigUint> {
    if x.is_zero() {
        return Ok(BigUint::default());
    }
    let (words, _, sign, exponent, _) =
        x.as_raw_parts().ok_or_else(|| Error::Precision("rounded Verlinde value is not finite".into()))?;
    if sign == Sign::Neg {
        return Err(Error::Integrality("Verlinde sum rounded to a negative value".into()));
    }
    let mut mantissa = BigUint::default();
    for &word in words.iter().rev() {
        mantissa = (mantissa << 64u32) + BigUint::from(word);
    }
    let bits = (words.len() * 64) as i64;
    let shift = bits - exponent as i64;
    Ok(if shift >= 0 { mantissa >> shift as u64 } else { mantissa << (-shift) as u64 })
}
