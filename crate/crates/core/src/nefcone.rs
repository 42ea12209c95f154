//! Curve families, triangularity, nef faces and log-canonical decompositions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{frac, q, render, Rational};
use crate::divisors::{canonical_class, intersect_bf, intersect_cb_fcurve, FCurve, SymDivisor};
use crate::error::{precondition, Result};
use crate::fusion::{rank_1t, Level};
use crate::linalg::{self, Matrix};

/// `g = ⌊n/2⌋ − 1`, so that `n = 2g+2` or `n = 2g+3`.
pub fn genus_of(n: u32) -> u32 {
    n / 2 - 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FamilyLabel {
    C1,
    C2,
    C3,
}

impl fmt::Display for FamilyLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveFamily {
    pub label: FamilyLabel,
    pub n: u32,
    pub curves: Vec<FCurve>,
}

impl CurveFamily {
    /// * `C1 = {F_{1,1,i} : 1 ≤ i ≤ g}`
    /// * `C2 = {F_{2,2,i} : 1 ≤ i ≤ g−1}`
    /// * `C3 = {F_{3,3,2i+1} : 0 ≤ i ≤ k−2} ∪ {F_{1,1,2i+1} : 0 ≤ i ≤ k−1}`,
    ///   with `k = ⌈g/2⌉`.
    ///
    /// Curves are listed as written, so a family may repeat a class (C3 on
    /// n = 8 lists `F_{3,3,1,1}` twice).
    pub fn new(label: FamilyLabel, n: u32) -> Result<Self> {
        if n < 6 {
            return precondition(format!("curve families need n ≥ 6, got {n}"));
        }
        let g = genus_of(n);
        let curves = match label {
            FamilyLabel::C1 => (1..=g).map(|i| FCurve::on(n, 1, 1, i)).collect::<Result<_>>()?,
            FamilyLabel::C2 => (1..g).map(|i| FCurve::on(n, 2, 2, i)).collect::<Result<_>>()?,
            FamilyLabel::C3 => {
                let k = g.div_ceil(2);
                let mut out: Vec<FCurve> =
                    (0..k.saturating_sub(1)).map(|i| FCurve::on(n, 3, 3, 2 * i + 1)).collect::<Result<_>>()?;
                for i in 0..k {
                    out.push(FCurve::on(n, 1, 1, 2 * i + 1)?);
                }
                out
            }
        };
        Ok(CurveFamily { label, n, curves })
    }

    /// Rank the family would have if its curves were independent.
    pub fn claimed_rank(&self) -> usize {
        self.curves.len()
    }
}

/// Rows are curves, columns are `B₂ … B_{⌊n/2⌋}`.
pub fn intersection_matrix(curves: &[FCurve], n: u32) -> Result<Matrix> {
    curves
        .iter()
        .map(|f| {
            if f.n() != n {
                return precondition(format!("{f} is not a curve on n = {n}"));
            }
            (2..=n / 2).map(|j| intersect_bf(j, f).map(q)).collect()
        })
        .collect()
}

pub fn independence_rank(curves: &[FCurve], n: u32) -> Result<usize> {
    Ok(linalg::rank(&intersection_matrix(curves, n)?))
}

/// `M[ℓ−1][i−1] = D_ℓ · F_{n−i−2,i,1,1}` for `1 ≤ ℓ, i ≤ g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbBasisMatrix {
    pub n: u32,
    pub entries: Vec<Vec<BigInt>>,
    /// Every entry with `i < ℓ` vanishes.
    pub triangular: bool,
    /// Every diagonal entry is positive.
    pub positive_diagonal: bool,
    /// Every diagonal entry equals `r_ℓ(ℓ,ℓ) · r_ℓ(n−ℓ−2, ℓ)`.
    pub diagonal_formula_holds: bool,
}

pub fn cb_basis_matrix(n: u32) -> Result<CbBasisMatrix> {
    if n < 4 || n % 2 == 1 {
        return precondition(format!("the basis matrix needs even n ≥ 4, got {n}"));
    }
    let g = genus_of(n);
    let mut entries = Vec::new();
    for ell in 1..=g {
        let level = Level::new(ell)?;
        let row = (1..=g)
            .map(|i| intersect_cb_fcurve(level, n, &FCurve::new([n - i - 2, i, 1, 1])?))
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let idx = |ell: u32, i: u32| &entries[(ell - 1) as usize][(i - 1) as usize];
    let triangular = (1..=g).all(|ell| (1..ell).all(|i| idx(ell, i).is_zero()));
    let positive_diagonal = (1..=g).all(|ell| idx(ell, ell).is_positive());
    let diagonal_formula_holds = (1..=g).all(|ell| {
        let level = Level::new(ell).expect("positive level");
        let want = rank_1t(level, ell as usize, ell as i64) * rank_1t(level, (n - ell - 2) as usize, ell as i64);
        *idx(ell, ell) == BigInt::from(want)
    });
    Ok(CbBasisMatrix { n, entries, triangular, positive_diagonal, diagonal_formula_holds })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NefFaceReport {
    pub n: u32,
    pub curves_checked: usize,
    /// F-curves with `D · F = 0`.
    pub vanishing: Vec<FCurve>,
    /// Rank of the span of the vanishing curves: `D` lies on a face of
    /// codimension at least this.
    pub rho: usize,
    /// First F-curve with negative intersection, if any.
    pub negative: Option<(FCurve, Rational)>,
}

impl NefFaceReport {
    pub fn f_nef(&self) -> bool {
        self.negative.is_none()
    }

    /// `ρ = ⌊n/2⌋ − 2`, one less than the Picard rank: `D` spans an
    /// extremal ray of the F-nef cone.
    pub fn is_extremal_ray(&self) -> bool {
        self.f_nef() && self.rho + 1 == (self.n / 2 - 1) as usize
    }
}

pub fn nef_face_report(d: &SymDivisor) -> Result<NefFaceReport> {
    let n = d.n();
    let curves = FCurve::all(n);
    let mut vanishing = Vec::new();
    let mut negative = None;
    for f in &curves {
        let v = d.dot(f)?;
        if v.is_zero() {
            vanishing.push(*f);
        } else if v.is_negative() && negative.is_none() {
            negative = Some((*f, v));
        }
    }
    let rho = independence_rank(&vanishing, n)?;
    Ok(NefFaceReport { n, curves_checked: curves.len(), vanishing, rho, negative })
}

/// A closed interval with an optional (infinite) upper end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Option<Rational>,
}

impl Interval {
    pub fn contains(&self, x: &Rational) -> bool {
        *x >= self.lo && self.hi.as_ref().is_none_or(|h| x <= h)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.hi {
            Some(h) => write!(f, "[{}, {}]", render(&self.lo), render(h)),
            None => write!(f, "[{}, ∞)", render(&self.lo)),
        }
    }
}

/// Outcome of asking whether `D = c(K + Σ bᵢBᵢ)` with `c > 0`, `0 ≤ bᵢ ≤ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogCanCert {
    pub feasible: bool,
    /// Admissible values of `c` (only meaningful when feasible).
    pub c_interval: Option<Interval>,
    /// A chosen admissible `c` and the coefficients `b₂ …` it forces.
    pub witness_c: Option<Rational>,
    pub witness_b: Vec<Rational>,
    /// Lexicographically smallest pair of basis indices whose constraints
    /// on `u = 1/c` cannot hold together; `(i, i)` when index `i` alone
    /// is impossible.
    pub blocking: Option<(u32, u32)>,
}

/// `bᵢ = dᵢ/c − κᵢ`, where `κ` are the coefficients of `K`.
pub fn log_canonical_b(d: &SymDivisor, c: &Rational) -> Result<Vec<Rational>> {
    if !c.is_positive() {
        return precondition("the scale c must be positive");
    }
    let k = canonical_class(d.n())?;
    Ok(d.coeffs().iter().zip(k.coeffs()).map(|(di, ki)| di / c - ki).collect())
}

/// Constraint on `u = 1/c` from one index: `κ ≤ d·u ≤ 1 + κ`.
enum UConstraint {
    Interval(Rational, Rational),
    Always,
    Never,
}

fn u_constraint(d: &Rational, kappa: &Rational) -> UConstraint {
    let one_more = kappa + q(1);
    if d.is_zero() {
        return if kappa <= &q(0) && one_more >= q(0) { UConstraint::Always } else { UConstraint::Never };
    }
    let (a, b) = (kappa / d, &one_more / d);
    if d.is_positive() {
        UConstraint::Interval(a, b)
    } else {
        UConstraint::Interval(b, a)
    }
}

pub fn log_canonical_feasibility(d: &SymDivisor) -> Result<LogCanCert> {
    if d.is_zero() {
        return precondition("log-canonical test needs a nonzero divisor");
    }
    let n = d.n();
    let k = canonical_class(n)?;
    let mut bounds: Vec<(u32, Rational, Rational)> = Vec::new();
    let infeasible = |pair| LogCanCert {
        feasible: false,
        c_interval: None,
        witness_c: None,
        witness_b: Vec::new(),
        blocking: Some(pair),
    };
    for ((i, di), ki) in d.terms().zip(k.coeffs()) {
        match u_constraint(di, ki) {
            UConstraint::Always => {}
            UConstraint::Never => return Ok(infeasible((i, i))),
            UConstraint::Interval(lo, hi) => {
                if !hi.is_positive() {
                    return Ok(infeasible((i, i)));
                }
                bounds.push((i, lo, hi));
            }
        }
    }
    // Scan pairs in lexicographic order for an empty intersection.
    for (a, (i, lo_i, hi_i)) in bounds.iter().enumerate() {
        for (j, lo_j, hi_j) in &bounds[a + 1..] {
            if lo_i > hi_j || lo_j > hi_i {
                return Ok(infeasible((*i, *j)));
            }
        }
    }
    // Pairwise-compatible intervals on a line intersect (Helly).
    let hi = bounds.iter().map(|(_, _, h)| h.clone()).min().expect("nonzero divisor has a constraint");
    let lo = bounds.iter().map(|(_, l, _)| l.clone()).max().expect("nonzero divisor has a constraint");
    let c_interval = Interval { lo: q(1) / &hi, hi: if lo.is_positive() { Some(q(1) / &lo) } else { None } };
    // The smallest admissible c.
    let c = q(1) / &hi;
    let witness_b = log_canonical_b(d, &c)?;
    Ok(LogCanCert { feasible: true, c_interval: Some(c_interval), witness_c: Some(c), witness_b, blocking: None })
}

/// The decomposition of `D₂`: `(8/(3·2^{g−1}))·D₂ = K + (2/3)Σ_{even} B_i
/// + Σ_{odd} B_i`, returned as `c = 3·2^{g−1}/8` and the `b` vector.
pub fn level_two_witness(n: u32) -> (Rational, Vec<Rational>) {
    let g = genus_of(n);
    let c = frac(3, 8) * q(1i64 << (g - 1));
    let b = (2..=n / 2).map(|i| if i % 2 == 0 { frac(2, 3) } else { q(1) }).collect();
    (c, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::cb_divisor_class;

    fn lv(ell: u32) -> Level {
        Level::new(ell).unwrap()
    }

    #[test]
    fn family_sizes_and_ranks() {
        for n in 6..=21u32 {
            let g = genus_of(n) as usize;
            let c1 = CurveFamily::new(FamilyLabel::C1, n).unwrap();
            let c2 = CurveFamily::new(FamilyLabel::C2, n).unwrap();
            assert_eq!(independence_rank(&c1.curves, n).unwrap(), g);
            assert_eq!(independence_rank(&c2.curves, n).unwrap(), g - 1);
            let c3 = CurveFamily::new(FamilyLabel::C3, n).unwrap();
            let k = g.div_ceil(2);
            assert_eq!(c3.claimed_rank(), 2 * k - 1);
            let deficient = [8, 9, 12, 16, 20].contains(&n);
            let want = if deficient { 2 * k - 2 } else { 2 * k - 1 };
            assert_eq!(independence_rank(&c3.curves, n).unwrap(), want, "n={n}");
        }
    }

    fn relation_holds(n: u32, terms: &[([u32; 4], Rational)]) -> bool {
        (2..=n / 2).all(|j| {
            let total: Rational =
                terms.iter().map(|(p, a)| a * q(intersect_bf(j, &FCurve::new(*p).unwrap()).unwrap())).sum();
            total.is_zero()
        })
    }

    #[test]
    fn c3_relations_for_odd_genus() {
        let twelve =
            [([5, 3, 3, 1], q(-1)), ([3, 3, 3, 3], frac(1, 3)), ([9, 1, 1, 1], frac(-1, 3)), ([7, 3, 1, 1], q(1))];
        assert!(relation_holds(12, &twelve));
        let sixteen = [
            ([9, 3, 3, 1], q(-3)),
            ([7, 3, 3, 3], q(2)),
            ([5, 5, 3, 3], q(-1)),
            ([13, 1, 1, 1], q(-1)),
            ([11, 3, 1, 1], q(3)),
            ([9, 5, 1, 1], q(-1)),
            ([7, 7, 1, 1], q(1)),
        ];
        assert!(relation_holds(16, &sixteen));
        // The same relation kills every D_ℓ computed from four-point degrees.
        for ell in 1..=5 {
            let total: Rational = twelve
                .iter()
                .map(|(p, a)| {
                    a * Rational::from_integer(intersect_cb_fcurve(lv(ell), 12, &FCurve::new(*p).unwrap()).unwrap())
                })
                .sum();
            assert!(total.is_zero(), "ℓ={ell}");
        }
    }

    #[test]
    fn first_row_of_c1() {
        let c1 = CurveFamily::new(FamilyLabel::C1, 8).unwrap();
        let m = intersection_matrix(&c1.curves, 8).unwrap();
        assert_eq!(m[0], vec![q(3), q(-1), q(0)]);
        assert!(intersection_matrix(&[], 8).unwrap().is_empty());
    }

    #[test]
    fn c2_column_two() {
        let c2 = CurveFamily::new(FamilyLabel::C2, 12).unwrap();
        let m = intersection_matrix(&c2.curves, 12).unwrap();
        for (row, f) in m.iter().zip(&c2.curves) {
            let want = if f.parts().iter().filter(|&&p| p == 2).count() == 3 { -3 } else { -2 };
            assert_eq!(row[0], q(want), "{f}");
        }
    }

    #[test]
    fn duplicate_curve_keeps_rank() {
        let mut c1 = CurveFamily::new(FamilyLabel::C1, 14).unwrap().curves;
        c1.push(c1[2]);
        assert_eq!(independence_rank(&c1, 14).unwrap(), 6);
    }

    #[test]
    fn basis_matrix_small() {
        let m = cb_basis_matrix(10).unwrap();
        assert!(m.triangular && m.positive_diagonal && m.diagonal_formula_holds);
        assert_eq!(m.entries[3][3], BigInt::from(1));
        assert!(cb_basis_matrix(9).is_err());
    }

    #[test]
    fn level_g_face_at_ten() {
        let d = cb_divisor_class(lv(4), 10).unwrap();
        let r = nef_face_report(&d).unwrap();
        for i in 1..=3 {
            assert!(r.vanishing.contains(&FCurve::on(10, 1, 1, i).unwrap()));
        }
        assert_eq!(r.rho, 3);
        assert!(r.is_extremal_ray());
    }

    #[test]
    fn negative_witness() {
        let k = canonical_class(8).unwrap();
        let r = nef_face_report(&k).unwrap();
        assert!(!r.f_nef());
    }

    #[test]
    fn log_canonical_verdicts() {
        let feasible =
            |ell: u32, n: u32| log_canonical_feasibility(&cb_divisor_class(lv(ell), n).unwrap()).unwrap().feasible;
        assert!(feasible(1, 10));
        assert!(!feasible(1, 12));
        assert!(feasible(5, 12));
        assert!(!feasible(6, 14));
        assert!(feasible(5, 14));
        assert!(!feasible(6, 16));
    }

    #[test]
    fn level_two_witness_decomposes() {
        for n in (6..=20).step_by(2) {
            let d = cb_divisor_class(lv(2), n).unwrap();
            let cert = log_canonical_feasibility(&d).unwrap();
            let (c, b) = level_two_witness(n);
            assert!(cert.c_interval.as_ref().unwrap().contains(&c), "n={n}");
            assert_eq!(log_canonical_b(&d, &c).unwrap(), b);
            let rebuilt = SymDivisor::new(n, b).unwrap().add(&canonical_class(n).unwrap()).unwrap().scale(&c);
            assert_eq!(rebuilt, d);
        }
    }
}
