//! Closed formulas for the classes `D_ℓ` at special levels.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SymDivisor;
use crate::arith::{frac, q, Rational};
use crate::error::{precondition, Error, Result};

/// Which level a closed formula is for, either absolute or relative to the
/// genus `g = n/2 − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LevelTag {
    One,
    Two,
    Three,
    Four,
    GenusMinusTwo,
    GenusMinusOne,
    Genus,
}

impl LevelTag {
    pub const ALL: [LevelTag; 7] = [
        LevelTag::One,
        LevelTag::Two,
        LevelTag::Three,
        LevelTag::Four,
        LevelTag::GenusMinusTwo,
        LevelTag::GenusMinusOne,
        LevelTag::Genus,
    ];

    /// The level this tag denotes in genus `g` (possibly `≤ 0`).
    pub fn level(self, g: u32) -> i64 {
        let g = g as i64;
        match self {
            LevelTag::One => 1,
            LevelTag::Two => 2,
            LevelTag::Three => 3,
            LevelTag::Four => 4,
            LevelTag::GenusMinusTwo => g - 2,
            LevelTag::GenusMinusOne => g - 1,
            LevelTag::Genus => g,
        }
    }

    /// Whether the formula applies on M̄₀,ₙ (even `n`, level between 1 and g).
    pub fn applies(self, n: u32) -> bool {
        if n < 4 || n % 2 == 1 {
            return false;
        }
        let g = n / 2 - 1;
        (1..=g as i64).contains(&self.level(g))
    }
}

impl fmt::Display for LevelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LevelTag::One => "1",
            LevelTag::Two => "2",
            LevelTag::Three => "3",
            LevelTag::Four => "4",
            LevelTag::GenusMinusTwo => "g-2",
            LevelTag::GenusMinusOne => "g-1",
            LevelTag::Genus => "g",
        };
        f.write_str(s)
    }
}

impl FromStr for LevelTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LevelTag::ALL
            .into_iter()
            .find(|t| t.to_string() == s.trim())
            .ok_or_else(|| Error::Precondition(format!("unknown level tag {s:?} (use 1, 2, 3, 4, g-2, g-1 or g)")))
    }
}

fn fibonacci(k: u32) -> Rational {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Rational::from_integer(a)
}

fn pow3(e: u32) -> Rational {
    Rational::from_integer(BigInt::from(3).pow(e))
}

/// Evaluates the closed formula for `tag` on M̄₀,ₙ, `n = 2(g+1)`.
pub fn closed_form_class(tag: LevelTag, n: u32) -> Result<SymDivisor> {
    if !tag.applies(n) {
        return precondition(format!("level tag {tag} has no class on n = {n}"));
    }
    let g = n / 2 - 1;
    let (ni, gi) = (n as i64, g as i64);
    let psi = |k: i64| frac(k * (ni - k), ni - 1);
    SymDivisor::from_fn(n, |k| {
        let k = k as i64;
        let even = k % 2 == 0;
        match tag {
            LevelTag::One if even => frac(k * (ni - k), 4 * (ni - 1)),
            LevelTag::One => frac((k - 1) * (ni - k - 1), 4 * (ni - 1)),
            LevelTag::Two => {
                let s = q(3) * q(1i64 << (g - 1));
                if even {
                    s * (frac(k * (ni - k), 8 * (ni - 1)) - frac(1, 6))
                } else {
                    s * frac((k - 1) * (ni - k - 1), 8 * (ni - 1))
                }
            }
            LevelTag::Three if even => {
                let j = k / 2;
                frac(1, 10)
                    * (frac(6 * j * (gi - j + 1), 2 * gi + 1) * fibonacci(2 * g + 1)
                        - q(4) * fibonacci(2 * j as u32) * fibonacci(2 * (gi - j + 1) as u32))
            }
            LevelTag::Three => {
                let j = (k - 1) / 2;
                frac(1, 10)
                    * (frac(3, 2) * psi(k) * fibonacci(2 * g + 1)
                        - frac(3, 2) * fibonacci(2 * j as u32 + 1) * fibonacci(2 * (gi - j) as u32 + 1)
                        - frac(15, 2) * fibonacci(2 * j as u32) * fibonacci(2 * (gi - j) as u32))
            }
            LevelTag::Four if even => {
                let (a, b) = (pow3(((k - 2) / 2) as u32), pow3(((ni - k - 2) / 2) as u32));
                frac(1, 12)
                    * (psi(k) * frac(3, 4) * (pow3((n - 2) / 2) + q(1))
                        - q(4) * pow3((n - 4) / 2)
                        - q(3) * (a - q(1)) * (b - q(1)))
            }
            LevelTag::Four => {
                let (a, b) = (pow3(((k - 1) / 2) as u32), pow3(((ni - k - 1) / 2) as u32));
                frac(1, 16)
                    * (psi(k) * (pow3((n - 2) / 2) + q(1))
                        - frac(1, 2) * (&a + q(1)) * (&b + q(1))
                        - frac(5, 2) * (a - q(1)) * (b - q(1)))
            }
            LevelTag::GenusMinusTwo if k < gi => frac(4 * (ni - 7) * (ni - 2) * (k - 1) * k, 16 * (ni - 1)),
            LevelTag::GenusMinusTwo if k == gi => {
                frac(ni.pow(4) - 17 * ni.pow(3) + 90 * ni * ni - 152 * ni + 96, 16 * (ni - 1))
            }
            LevelTag::GenusMinusTwo => frac(ni.pow(4) - 15 * ni.pow(3) + 60 * ni * ni - 20 * ni - 32, 16 * (ni - 1)),
            LevelTag::GenusMinusOne if k <= gi => q(gi - 1) * frac((k - 1) * k, ni - 1),
            LevelTag::GenusMinusOne => q(gi - 1) * frac(gi * gi - gi - 1, ni - 1),
            // Normalized so that D_g · F_{1,1,i} is 1 at i = g and 0 below.
            LevelTag::Genus => frac((k - 1) * k, 2 * (ni - 1)),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::cb_divisor_class;
    use crate::fusion::Level;

    #[test]
    fn tags_parse_and_print() {
        for t in LevelTag::ALL {
            assert_eq!(t.to_string().parse::<LevelTag>().unwrap(), t);
        }
        assert!("g+1".parse::<LevelTag>().is_err());
    }

    #[test]
    fn fibonacci_values() {
        let v: Vec<Rational> = (0..8).map(fibonacci).collect();
        assert_eq!(v, [0, 1, 1, 2, 3, 5, 8, 13].map(q));
    }

    #[test]
    fn applicability() {
        assert!(LevelTag::Genus.applies(4));
        assert!(!LevelTag::Two.applies(4));
        assert!(!LevelTag::GenusMinusTwo.applies(6));
        assert!(LevelTag::GenusMinusTwo.applies(8));
        assert!(!LevelTag::One.applies(9));
        assert!(closed_form_class(LevelTag::Four, 8).is_err());
    }

    #[test]
    fn level_g_minus_one_shape() {
        for n in [8u32, 10, 12] {
            let g = n / 2 - 1;
            let d = closed_form_class(LevelTag::GenusMinusOne, n).unwrap();
            for k in 2..=g {
                assert_eq!(*d.coeff(k), q(g as i64 - 1) * frac(((k - 1) * k) as i64, n as i64 - 1));
            }
        }
    }

    #[test]
    fn matches_general_class() {
        for n in (4..=14).step_by(2) {
            let g = n / 2 - 1;
            for tag in LevelTag::ALL.into_iter().filter(|t| t.applies(n)) {
                let level = Level::new(tag.level(g) as u32).unwrap();
                assert_eq!(closed_form_class(tag, n).unwrap(), cb_divisor_class(level, n).unwrap(), "{tag} n={n}");
            }
        }
    }
}
