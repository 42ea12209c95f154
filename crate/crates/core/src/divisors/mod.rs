//! Symmetric divisor classes on M̄₀,ₙ and their F-curve intersections.
//!
//! Classes live in the basis `B₂ … B_{⌊n/2⌋}`, where `B_j` is the sum of all
//! boundary divisors `δ_J` with `|J| = j` (and `δ_J = δ_{Jᶜ}`).

mod closed;
mod degree;

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{coefficient, frac, q, render, Rational};
use crate::error::{precondition, Result};

pub use closed::{closed_form_class, LevelTag};
pub use degree::{casimir, cb_divisor_class, degree_4pt, intersect_cb_fcurve};

/// An exact class `Σ c_j B_j` on M̄₀,ₙ/Sₙ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymDivisor {
    n: u32,
    coeffs: Vec<Rational>,
}

fn check_n(n: u32) -> Result<()> {
    if n < 4 {
        return precondition(format!("need at least 4 marked points, got n = {n}"));
    }
    Ok(())
}

impl SymDivisor {
    /// `coeffs[0]` is the coefficient of `B₂`.
    pub fn new(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        check_n(n)?;
        let want = (n / 2 - 1) as usize;
        if coeffs.len() != want {
            return precondition(format!("n = {n} needs {want} coefficients (B_2..B_{}), got {}", n / 2, coeffs.len()));
        }
        Ok(SymDivisor { n, coeffs })
    }

    pub fn zero(n: u32) -> Result<Self> {
        check_n(n)?;
        Ok(SymDivisor { n, coeffs: vec![q(0); (n / 2 - 1) as usize] })
    }

    /// Builds a class from a coefficient rule `j ↦ c_j`.
    pub fn from_fn(n: u32, f: impl FnMut(u32) -> Rational) -> Result<Self> {
        check_n(n)?;
        Ok(SymDivisor { n, coeffs: (2..=n / 2).map(f).collect() })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `B_j`.
    pub fn coeff(&self, j: u32) -> &Rational {
        &self.coeffs[(j - 2) as usize]
    }

    /// `(j, c_j)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rational)> {
        (2..).zip(self.coeffs.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_space(&self, other: &SymDivisor) -> Result<()> {
        if self.n != other.n {
            return precondition(format!("divisors on n = {} and n = {}", self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymDivisor) -> Result<SymDivisor> {
        self.same_space(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(SymDivisor { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &SymDivisor) -> Result<SymDivisor> {
        self.add(&other.scale(&q(-1)))
    }

    pub fn scale(&self, s: &Rational) -> SymDivisor {
        SymDivisor { n: self.n, coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Intersection number with an F-curve, by linearity over `B_j · F`.
    pub fn dot(&self, f: &FCurve) -> Result<Rational> {
        if f.n() != self.n {
            return precondition(format!("{f} is a curve on n = {}, divisor has n = {}", f.n(), self.n));
        }
        let mut total = q(0);
        for (j, c) in self.terms() {
            let m = intersect_bf(j, f)?;
            if m != 0 && !c.is_zero() {
                total += c * q(m);
            }
        }
        Ok(total)
    }

    /// The scalar `s` with `self = s · other`, if the two are parallel and
    /// `other` is nonzero.
    pub fn ratio_to(&self, other: &SymDivisor) -> Option<Rational> {
        if self.n != other.n {
            return None;
        }
        let pivot = other.coeffs.iter().position(|c| !c.is_zero())?;
        let s = &self.coeffs[pivot] / &other.coeffs[pivot];
        (other.scale(&s) == *self).then_some(s)
    }

    pub fn rendered(&self) -> Vec<String> {
        self.coeffs.iter().map(render).collect()
    }
}

impl fmt::Display for SymDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.terms().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            write!(f, "{}B{j}", coefficient(&c.abs()))?;
            first = false;
        }
        Ok(())
    }
}

/// The Sₙ-class of an F-curve, a partition of `n` into four positive parts
/// stored in weakly decreasing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FCurve {
    parts: [u32; 4],
}

impl FCurve {
    pub fn new(parts: [u32; 4]) -> Result<Self> {
        if parts.contains(&0) {
            return precondition(format!("F-curve parts must be positive, got {parts:?}"));
        }
        let mut parts = parts;
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(FCurve { parts })
    }

    /// `F_{a,b,c}` on M̄₀,ₙ with the fourth part `n − a − b − c`.
    pub fn on(n: u32, a: u32, b: u32, c: u32) -> Result<Self> {
        match n.checked_sub(a + b + c) {
            Some(d) if d > 0 => FCurve::new([a, b, c, d]),
            _ => precondition(format!("F_{{{a},{b},{c}}} leaves no fourth part on n = {n}")),
        }
    }

    pub fn parts(&self) -> [u32; 4] {
        self.parts
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Every F-curve class on M̄₀,ₙ, in decreasing lexicographic order.
    pub fn all(n: u32) -> Vec<FCurve> {
        let mut out = Vec::new();
        for a in (1..=n).rev() {
            for b in (1..=a).rev() {
                for c in (1..=b).rev() {
                    if let Some(d) = n.checked_sub(a + b + c) {
                        if (1..=c).contains(&d) {
                            out.push(FCurve { parts: [a, b, c, d] });
                        }
                    }
                }
            }
        }
        out
    }

    pub fn product_is_odd(&self) -> bool {
        self.parts.iter().all(|p| p % 2 == 1)
    }

    pub fn singletons(&self) -> usize {
        self.parts.iter().filter(|&&p| p == 1).count()
    }
}

impl fmt::Display for FCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.parts;
        write!(f, "F_{{{a},{b},{c},{d}}}")
    }
}

/// `B_j · F`: pairings `{N_p ∪ N_q | N_r ∪ N_s}` of side `j`, minus cells
/// of size at least two on side `j`; sides are read up to complement.
pub fn intersect_bf(j: u32, f: &FCurve) -> Result<i64> {
    let n = f.n();
    if j < 2 || j > n / 2 {
        return precondition(format!("B_{j} is not a basis element for n = {n}"));
    }
    let side = |s: u32| s.min(n - s);
    let p = f.parts;
    let pairings = [p[0] + p[1], p[0] + p[2], p[0] + p[3]].into_iter().filter(|&s| side(s) == j).count() as i64;
    let cells = p.iter().filter(|&&s| s >= 2 && side(s) == j).count() as i64;
    Ok(pairings - cells)
}

/// `Ψ`, with coefficient `i(n−i)/(n−1)` on `B_i`.
pub fn psi_class(n: u32) -> Result<SymDivisor> {
    SymDivisor::from_fn(n, |i| frac((i * (n - i)) as i64, (n - 1) as i64))
}

/// `K = Ψ − 2Δ`, where `Δ = Σ B_i`.
pub fn canonical_class(n: u32) -> Result<SymDivisor> {
    SymDivisor::from_fn(n, |i| frac((i * (n - i)) as i64, (n - 1) as i64) - q(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fc(n: u32, a: u32, b: u32, c: u32) -> FCurve {
        FCurve::on(n, a, b, c).unwrap()
    }

    #[test]
    fn boundary_against_fcurves() {
        for n in [10, 12, 15] {
            assert_eq!(intersect_bf(2, &fc(n, 1, 1, 1)).unwrap(), 3);
            assert_eq!(intersect_bf(3, &fc(n, 1, 1, 1)).unwrap(), -1);
            assert_eq!(intersect_bf(2, &fc(n, 2, 2, 1)).unwrap(), -2);
            assert_eq!(intersect_bf(3, &fc(n, 2, 2, 1)).unwrap(), 2);
        }
        // On n = 8 the fourth part of F_{2,2,1} is itself a B_3 cell.
        assert_eq!(intersect_bf(3, &fc(8, 2, 2, 1)).unwrap(), 1);
        assert!(intersect_bf(1, &fc(8, 1, 1, 1)).is_err());
        assert!(intersect_bf(5, &fc(8, 1, 1, 1)).is_err());
    }

    #[test]
    fn middle_index_is_not_double_counted() {
        // On n = 8, F_{2,2,2,2}: each pairing splits 4|4, each cell is a B_2.
        let f = FCurve::new([2, 2, 2, 2]).unwrap();
        assert_eq!(intersect_bf(4, &f).unwrap(), 3);
        assert_eq!(intersect_bf(2, &f).unwrap(), -4);
    }

    #[test]
    fn canonical_and_psi() {
        let k6 = canonical_class(6).unwrap();
        assert_eq!(k6.coeffs(), &[frac(-2, 5), frac(-1, 5)]);
        assert_eq!(psi_class(4).unwrap().coeffs(), &[frac(4, 3)]);
        for n in 6..=14 {
            let on_221 = if n == 6 { 2 } else { 1 };
            assert_eq!(psi_class(n).unwrap().dot(&fc(n, 2, 2, 1)).unwrap(), q(on_221));
            for f in FCurve::all(n) {
                assert_eq!(psi_class(n).unwrap().dot(&f).unwrap(), q(f.singletons() as i64));
            }
        }
    }

    #[test]
    fn enumeration_is_exactly_the_partitions() {
        assert_eq!(FCurve::all(4), vec![FCurve::new([1, 1, 1, 1]).unwrap()]);
        assert_eq!(FCurve::all(8).len(), 5);
        for f in FCurve::all(13) {
            assert_eq!(f.n(), 13);
            assert!(f.parts().windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn arithmetic_and_ratio() {
        let k = canonical_class(10).unwrap();
        let p = psi_class(10).unwrap();
        let two_delta = p.sub(&k).unwrap();
        assert!(two_delta.coeffs().iter().all(|c| *c == q(2)));
        assert_eq!(k.scale(&frac(3, 2)).ratio_to(&k), Some(frac(3, 2)));
        assert_eq!(k.ratio_to(&p), None);
        assert!(k.add(&canonical_class(12).unwrap()).is_err());
        assert_eq!(SymDivisor::zero(9).unwrap().coeffs().len(), 3);
        assert!(SymDivisor::new(8, vec![q(1)]).is_err());
        assert_eq!(k.to_string(), "-(2/9)B2 + (1/3)B3 + (2/3)B4 + (7/9)B5");
    }
}
