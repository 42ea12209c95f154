//! Pulling divisors back to M̄₀,₂₍g₊₁₎ from M̄_g (hyperelliptic map `h`) and
//! from M̄_{2(g+1)} (flag map `f`), and the F-divisor inequalities.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{coefficient, frac, q, render, Rational};
use crate::divisors::{cb_divisor_class, FCurve, LevelTag, SymDivisor};
use crate::error::{precondition, Result};
use crate::fusion::Level;

/// Where a [`GDivisor`] lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GContext {
    /// On M̄_g, boundary indices `0 ..= ⌊g/2⌋`.
    Hyperelliptic,
    /// On M̄_{2(g+1)}, boundary indices `0 ..= g+1`.
    Flag,
}

/// `aλ − Σ bᵢδᵢ` on M̄_h.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GDivisor {
    pub genus_h: u32,
    pub context: GContext,
    pub a: Rational,
    /// `b[i]` is the coefficient of `δ_i` (with the minus sign dropped).
    pub b: Vec<Rational>,
}

impl GDivisor {
    /// A divisor on M̄_g for the hyperelliptic pullback.
    pub fn on_mg(g: u32, a: Rational, b: Vec<Rational>) -> Result<Self> {
        if g < 2 {
            return precondition(format!("M_g needs g ≥ 2, got {g}"));
        }
        if b.len() != (g / 2 + 1) as usize {
            return precondition(format!("a divisor on M_{g} has b_0..b_{}, got {} values", g / 2, b.len()));
        }
        Ok(GDivisor { genus_h: g, context: GContext::Hyperelliptic, a, b })
    }

    /// A divisor on M̄_{2(g+1)} for the flag pullback to M̄₀,₂₍g₊₁₎.
    pub fn on_flag(g: u32, a: Rational, b: Vec<Rational>) -> Result<Self> {
        if g < 1 {
            return precondition("flag divisors need g ≥ 1");
        }
        if b.len() != (g + 2) as usize {
            return precondition(format!("a flag divisor for g = {g} has b_0..b_{}, got {} values", g + 1, b.len()));
        }
        Ok(GDivisor { genus_h: 2 * (g + 1), context: GContext::Flag, a, b })
    }

    /// `g` such that the pullback lands on M̄₀,₂₍g₊₁₎.
    pub fn target_genus(&self) -> u32 {
        match self.context {
            GContext::Hyperelliptic => self.genus_h,
            GContext::Flag => self.genus_h / 2 - 1,
        }
    }

    pub fn add(&self, other: &GDivisor) -> Result<GDivisor> {
        if (self.genus_h, self.context) != (other.genus_h, other.context) {
            return precondition("adding divisors from different spaces");
        }
        let b = self.b.iter().zip(&other.b).map(|(x, y)| x + y).collect();
        Ok(GDivisor { a: &self.a + &other.a, b, ..self.clone() })
    }

    pub fn scale(&self, s: &Rational) -> GDivisor {
        GDivisor { a: &self.a * s, b: self.b.iter().map(|x| x * s).collect(), ..self.clone() }
    }

    /// `b` at a boundary index, folding `s > g+1` to `n − s` in the flag
    /// context.
    fn b_folded(&self, s: u32) -> &Rational {
        let s = if s as usize >= self.b.len() { self.genus_h - s } else { s };
        &self.b[s as usize]
    }
}

impl fmt::Display for GDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_negative() {
            write!(f, "-")?;
        }
        write!(f, "{}λ", coefficient(&self.a.abs()))?;
        for (i, b) in self.b.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            let sign = if b.is_negative() { "+" } else { "-" };
            write!(f, " {sign} {}δ{i}", coefficient(&b.abs()))?;
        }
        Ok(())
    }
}

fn expect_context(d: &GDivisor, want: GContext) -> Result<()> {
    if d.context != want {
        return precondition(format!("expected a divisor in the {want:?} context, got {:?}", d.context));
    }
    Ok(())
}

/// `h*D` on M̄₀,₂g₊₂: for even `k`, `a·k(n−k)/(8(n−1)) − 2b₀`; for odd `k`,
/// `a(k−1)(n−k−1)/(8(n−1)) − b_{(k−1)/2}/2`.
pub fn h_pullback(d: &GDivisor) -> Result<SymDivisor> {
    expect_context(d, GContext::Hyperelliptic)?;
    let n = 2 * d.genus_h + 2;
    let ni = n as i64;
    SymDivisor::from_fn(n, |k| {
        let ki = k as i64;
        if k % 2 == 0 {
            &d.a * frac(ki * (ni - ki), 8 * (ni - 1)) - q(2) * &d.b[0]
        } else {
            &d.a * frac((ki - 1) * (ni - ki - 1), 8 * (ni - 1)) - &d.b[((k - 1) / 2) as usize] / q(2)
        }
    })
}

/// `f*D = Σ_j (j(n−j)/(n−1)·b₁ − b_j) B_j`.
pub fn flag_pullback(d: &GDivisor) -> Result<SymDivisor> {
    expect_context(d, GContext::Flag)?;
    let n = d.genus_h;
    SymDivisor::from_fn(n, |j| frac((j * (n - j)) as i64, (n - 1) as i64) * &d.b[1] - &d.b[j as usize])
}

/// `λ` on M̄_g.
pub fn lambda_on_mg(g: u32) -> Result<GDivisor> {
    GDivisor::on_mg(g, q(1), vec![q(0); (g / 2 + 1) as usize])
}

/// `12λ − δ₀` on M̄_g.
pub fn twelve_lambda_minus_delta0(g: u32) -> Result<GDivisor> {
    let mut b = vec![q(0); (g / 2 + 1) as usize];
    b[0] = q(1);
    GDivisor::on_mg(g, q(12), b)
}

/// `s` with `D₂ = s · h*(12λ − δ₀)` on M̄₀,₂g₊₂.
pub fn hyperelliptic_scalar(g: u32) -> Result<Option<Rational>> {
    let d2 = cb_divisor_class(Level::new(2)?, 2 * g + 2)?;
    Ok(d2.ratio_to(&h_pullback(&twelve_lambda_minus_delta0(g)?)?))
}

/// `𝒟 = αλ − βδ₀ − Σ_{i=1}^{g+1} i(n−i)δᵢ` on M̄_{2(g+1)}; requires
/// `α > 12β − (2g+1)` and `2β > (g+1)²`.
pub fn build_script_d(alpha: Rational, beta: Rational, g: u32) -> Result<GDivisor> {
    let gi = g as i64;
    if alpha <= q(12) * &beta - q(2 * gi + 1) {
        return precondition(format!("𝒟 needs α > 12β − (2g+1), got α = {}, β = {}", render(&alpha), render(&beta)));
    }
    if q(2) * &beta <= q((gi + 1) * (gi + 1)) {
        return precondition(format!("𝒟 needs 2β > (g+1)², got β = {}", render(&beta)));
    }
    let n = 2 * (gi + 1);
    let mut b = vec![beta];
    b.extend((1..=gi + 1).map(|i| q(i * (n - i))));
    GDivisor::on_flag(g, alpha, b)
}

/// Smallest admissible `β = ((g+1)² + 1)/2` and `α = 12β − 2g`.
pub fn default_script_params(g: u32) -> (Rational, Rational) {
    let gi = g as i64;
    let beta = frac((gi + 1) * (gi + 1) + 1, 2);
    let alpha = q(12) * &beta - q(2 * gi);
    (alpha, beta)
}

/// One of the five F-divisor inequalities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub number: u8,
    pub holds: bool,
    pub checked: usize,
    /// Indices of the first violated instance.
    pub witness: Option<Vec<u32>>,
    /// Left minus right side at the witness.
    pub deficit: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FDivReport {
    pub conditions: Vec<Condition>,
}

impl FDivReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn condition(&self, number: u8) -> &Condition {
        &self.conditions[(number - 1) as usize]
    }
}

fn scan(number: u8, cases: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Condition {
    let mut checked = 0;
    for (idx, value) in cases {
        checked += 1;
        if value.is_negative() {
            return Condition { number, holds: false, checked, witness: Some(idx), deficit: Some(value) };
        }
    }
    Condition { number, holds: true, checked, witness: None, deficit: None }
}

/// Checks the five inequalities for `D = aλ − Σ bᵢδᵢ` on M̄_{2(g+1)}:
///
/// 1. `a − 12b₀ + b₁ ≥ 0`
/// 2. `bᵢ ≥ 0`
/// 3. `2b₀ − bᵢ ≥ 0`
/// 4. `bᵢ + b_j ≥ b_{i+j}` for `i, j ≥ 1`, `i + j ≤ g+1`
/// 5. `bᵢ + b_j + b_k + b_l ≥ b_{i+j} + b_{i+k} + b_{i+l}` for
///    `i + j + k + l = 2(g+1)`, indices past `g+1` folded to `n − s`
pub fn f_divisor_check(d: &GDivisor) -> Result<FDivReport> {
    expect_context(d, GContext::Flag)?;
    let g = d.target_genus();
    let b = &d.b;
    let top = g + 1;
    let c1 = scan(1, [(vec![], &d.a - q(12) * &b[0] + &b[1])]);
    let c2 = scan(2, (0..=top).map(|i| (vec![i], b[i as usize].clone())));
    let c3 = scan(3, (1..=top).map(|i| (vec![i], q(2) * &b[0] - &b[i as usize])));
    let pairs = (1..=top).flat_map(|i| (i..=top - i).map(move |j| (i, j)));
    let c4 = scan(4, pairs.map(|(i, j)| (vec![i, j], &b[i as usize] + &b[j as usize] - &b[(i + j) as usize])));
    let quads = FCurve::all(d.genus_h).into_iter().map(|f| {
        let [i, j, k, l] = f.parts();
        let lhs = d.b_folded(i) + d.b_folded(j) + d.b_folded(k) + d.b_folded(l);
        let rhs = d.b_folded(i + j) + d.b_folded(i + k) + d.b_folded(i + l);
        (vec![i, j, k, l], lhs - rhs)
    });
    let c5 = scan(5, quads);
    Ok(FDivReport { conditions: vec![c1, c2, c3, c4, c5] })
}

fn flag_level(tag: LevelTag, g: u32) -> Result<Level> {
    match tag {
        LevelTag::One | LevelTag::Two | LevelTag::GenusMinusOne | LevelTag::Genus => {}
        _ => return precondition(format!("flag pullbacks are given for levels 1, 2, g-1, g; got {tag}")),
    }
    let ell = tag.level(g);
    if ell < 1 || ell > g as i64 {
        return precondition(format!("level {tag} is out of range for g = {g}"));
    }
    Level::new(ell as u32)
}

/// The boundary coefficients `b₁ … b_{g+1}` of the flag divisor for `tag`.
pub fn flag_boundary(tag: LevelTag, g: u32) -> Result<Vec<Rational>> {
    flag_level(tag, g)?;
    let n = 2 * (g as i64 + 1);
    let wave = |i: i64| frac(i * (n - 2 * i + 1), n - 1);
    Ok((1..=g as i64 + 1)
        .map(|i| match tag {
            LevelTag::One => q(i % 2),
            LevelTag::Two if i % 2 == 0 => frac(4, 3),
            LevelTag::Two => q(1),
            LevelTag::GenusMinusOne if i == g as i64 + 1 => frac(3 * g as i64 + 2, n - 1),
            _ => wave(i),
        })
        .collect())
}

/// Lower bound on `b` (the `δ₀` coefficient) for each tag.
pub fn flag_b_bound(tag: LevelTag, g: u32) -> Result<Rational> {
    let bs = flag_boundary(tag, g)?;
    Ok(match tag {
        LevelTag::One => frac(1, 2),
        LevelTag::Two => frac(8, 3),
        LevelTag::GenusMinusOne => bs[..g as usize].iter().max().expect("g ≥ 1").clone() / q(2),
        _ => bs.iter().max().expect("g ≥ 1").clone() / q(2),
    })
}

/// `aλ − bδ₀ − Σ bᵢδᵢ` with the tag's boundary coefficients.
pub fn flag_divisor(tag: LevelTag, g: u32, a: Rational, b: Rational) -> Result<GDivisor> {
    let mut coeffs = vec![b];
    coeffs.extend(flag_boundary(tag, g)?);
    GDivisor::on_flag(g, a, coeffs)
}

/// The constant the tag's displayed divisor carries in print.
pub fn printed_constant(tag: LevelTag, g: u32) -> Rational {
    match tag {
        LevelTag::One => frac(1, 4),
        LevelTag::Two => frac(4, 3),
        LevelTag::GenusMinusOne => frac(1, g as i64 - 1),
        _ => q(1),
    }
}

/// The `c` with `f*(c · flag_divisor) = D_ℓ`, found by proportionality.
pub fn derived_constant(tag: LevelTag, g: u32) -> Result<Rational> {
    let level = flag_level(tag, g)?;
    let pulled = flag_pullback(&flag_divisor(tag, g, q(0), q(0))?)?;
    let target = cb_divisor_class(level, 2 * (g + 1))?;
    target
        .ratio_to(&pulled)
        .ok_or_else(|| crate::Error::Integrality(format!("flag pullback for tag {tag} is not parallel to D_{level}")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagParams {
    pub g: u32,
    pub a: Rational,
    pub b: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    /// Fixed multiple of `𝒟`; `None` searches the grid `d = m/2`.
    pub d: Option<Rational>,
}

impl FlagParams {
    /// The tag's smallest admissible `b`, `a = 12b − 1` and the default `𝒟`.
    pub fn at_bounds(tag: LevelTag, g: u32) -> Result<Self> {
        let b = flag_b_bound(tag, g)?;
        let a = q(12) * &b - q(1);
        let (alpha, beta) = default_script_params(g);
        Ok(FlagParams { g, a, b, alpha, beta, d: None })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagReport {
    pub tag: LevelTag,
    pub g: u32,
    pub derived_c: Rational,
    pub printed_c: Rational,
    /// The `d` used; `None` if the grid search found nothing.
    pub d: Option<Rational>,
    /// Smallest grid `d` for which condition (4) alone holds.
    pub min_d_condition4: Option<Rational>,
    pub pullback_matches: bool,
    pub divisor: GDivisor,
    pub conditions: FDivReport,
}

impl FlagReport {
    pub fn passes(&self) -> bool {
        self.pullback_matches && self.d.is_some() && self.conditions.all_hold()
    }
}

/// Upper end of the `d` grid, `10(g+1)²`.
pub fn d_grid_cap(g: u32) -> Rational {
    q(10 * (g as i64 + 1).pow(2))
}

/// Builds `c·D^ℓ_{a,b} + d·𝒟`, checks its flag pullback against `D_ℓ` and
/// runs the F-divisor inequalities.
pub fn verify_flag_program(tag: LevelTag, p: &FlagParams) -> Result<FlagReport> {
    let g = p.g;
    if g < 2 {
        return precondition(format!("the flag program needs g ≥ 2, got {g}"));
    }
    let level = flag_level(tag, g)?;
    let bound = flag_b_bound(tag, g)?;
    if p.b < bound {
        return precondition(format!("tag {tag} needs b ≥ {}, got {}", render(&bound), render(&p.b)));
    }
    if p.a < q(12) * &p.b - q(1) {
        return precondition(format!(
            "tag {tag} needs a ≥ 12b − 1 = {}, got {}",
            render(&(q(12) * &p.b - q(1))),
            render(&p.a)
        ));
    }
    if let Some(d) = &p.d {
        if d.is_negative() {
            return precondition("d must be nonnegative");
        }
    }
    let script = build_script_d(p.alpha.clone(), p.beta.clone(), g)?;
    let c = derived_constant(tag, g)?;
    let base = flag_divisor(tag, g, p.a.clone(), p.b.clone())?.scale(&c);
    let with = |d: &Rational| base.add(&script.scale(d));

    let cap = d_grid_cap(g);
    let grid = || (0..).map(|m| frac(m, 2)).take_while(|d| d <= &cap);
    let mut min_d4 = None;
    for d in grid() {
        if f_divisor_check(&with(&d)?)?.condition(4).holds {
            min_d4 = Some(d);
            break;
        }
    }
    let d = match &p.d {
        Some(d) => Some(d.clone()),
        None => {
            let mut found = None;
            for d in grid() {
                if f_divisor_check(&with(&d)?)?.all_hold() {
                    found = Some(d);
                    break;
                }
            }
            found
        }
    };
    let divisor = with(d.as_ref().unwrap_or(&cap))?;
    let conditions = f_divisor_check(&divisor)?;
    let pullback_matches = flag_pullback(&divisor)? == cb_divisor_class(level, 2 * (g + 1))?;
    Ok(FlagReport {
        tag,
        g,
        derived_c: c,
        printed_c: printed_constant(tag, g),
        d,
        min_d_condition4: min_d4,
        pullback_matches,
        divisor,
        conditions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisors::closed_form_class;

    const FLAG_TAGS: [LevelTag; 4] = [LevelTag::One, LevelTag::Two, LevelTag::GenusMinusOne, LevelTag::Genus];

    #[test]
    fn satake_identity() {
        for g in 3..=10 {
            let pulled = h_pullback(&lambda_on_mg(g).unwrap()).unwrap().scale(&q(2));
            assert_eq!(pulled, closed_form_class(LevelTag::One, 2 * g + 2).unwrap());
        }
    }

    #[test]
    fn hyperelliptic_is_parallel() {
        for g in 2..=10 {
            assert_eq!(hyperelliptic_scalar(g).unwrap(), Some(q(2).pow(g as i32 - 3)), "g={g}");
        }
    }

    #[test]
    fn zero_pulls_back_to_zero() {
        let z = GDivisor::on_mg(5, q(0), vec![q(0); 3]).unwrap();
        assert!(h_pullback(&z).unwrap().is_zero());
        let zf = GDivisor::on_flag(5, q(0), vec![q(0); 7]).unwrap();
        assert!(flag_pullback(&zf).unwrap().is_zero());
        let r = f_divisor_check(&zf).unwrap();
        assert!(r.all_hold());
    }

    #[test]
    fn context_is_enforced() {
        let z = GDivisor::on_mg(5, q(1), vec![q(0); 3]).unwrap();
        assert!(flag_pullback(&z).is_err());
        assert!(f_divisor_check(&z).is_err());
        assert!(GDivisor::on_mg(5, q(1), vec![q(0); 4]).is_err());
    }

    #[test]
    fn script_d_is_invisible_to_the_flag_map() {
        for g in 2..=8 {
            let (alpha, beta) = default_script_params(g);
            let d = build_script_d(alpha, beta, g).unwrap();
            assert!(flag_pullback(&d).unwrap().is_zero());
            let r = f_divisor_check(&d).unwrap();
            for k in 1..=4 {
                assert!(r.condition(k).holds, "g={g} condition {k}");
            }
        }
        assert!(build_script_d(q(0), q(100), 3).is_err());
        assert!(build_script_d(q(1000), q(8), 3).is_err());
    }

    #[test]
    fn derived_constants() {
        for g in 3..=8u32 {
            let gi = g as i64;
            assert_eq!(derived_constant(LevelTag::One, g).unwrap(), frac(1, 4));
            assert_eq!(derived_constant(LevelTag::Two, g).unwrap(), frac(3, 8) * q(1 << (gi - 1)));
            assert_eq!(derived_constant(LevelTag::GenusMinusOne, g).unwrap(), q(gi - 1));
            assert_eq!(derived_constant(LevelTag::Genus, g).unwrap(), frac(1, 2));
        }
        assert!(derived_constant(LevelTag::Three, 5).is_err());
    }

    #[test]
    fn level_one_at_the_bound() {
        let p = FlagParams { g: 4, a: q(5), b: frac(1, 2), alpha: q(200), beta: q(13), d: Some(q(0)) };
        let r = verify_flag_program(LevelTag::One, &p).unwrap();
        assert!(r.pullback_matches);
        assert!(r.conditions.all_hold(), "{:?}", r.conditions);
    }

    #[test]
    fn level_two_condition_four() {
        let p =
            FlagParams { a: q(31), b: frac(8, 3), d: Some(q(0)), ..FlagParams::at_bounds(LevelTag::Two, 5).unwrap() };
        let r = verify_flag_program(LevelTag::Two, &p).unwrap();
        assert!(r.conditions.condition(4).holds);
        assert!(r.passes());
    }

    #[test]
    fn bounds_are_enforced() {
        let mut p = FlagParams::at_bounds(LevelTag::One, 4).unwrap();
        p.b = frac(1, 3);
        assert!(verify_flag_program(LevelTag::One, &p).is_err());
        let mut p = FlagParams::at_bounds(LevelTag::Genus, 4).unwrap();
        p.a -= q(1);
        assert!(verify_flag_program(LevelTag::Genus, &p).is_err());
    }

    #[test]
    fn every_tag_at_its_bounds() {
        for g in 3..=7 {
            for tag in FLAG_TAGS {
                let r = verify_flag_program(tag, &FlagParams::at_bounds(tag, g).unwrap()).unwrap();
                assert!(r.passes(), "tag {tag} g={g}: {:?} d={:?}", r.conditions, r.d);
            }
        }
    }

    #[test]
    fn condition_five_matches_fcurve_intersections() {
        for g in 2..=6 {
            let n = 2 * (g + 1);
            for tag in FLAG_TAGS.into_iter().filter(|t| flag_level(*t, g).is_ok()) {
                let d = flag_divisor(tag, g, q(0), q(0)).unwrap();
                let pulled = flag_pullback(&d).unwrap();
                for f in FCurve::all(n) {
                    let [i, j, k, l] = f.parts();
                    let lhs = d.b_folded(i) + d.b_folded(j) + d.b_folded(k) + d.b_folded(l);
                    let rhs = d.b_folded(i + j) + d.b_folded(i + k) + d.b_folded(i + l);
                    assert_eq!(lhs - rhs, pulled.dot(&f).unwrap(), "{tag} {f}");
                }
            }
        }
    }
}
