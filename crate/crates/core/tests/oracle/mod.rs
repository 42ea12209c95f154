//! Reference computations written independently of the library, used to
//! check its results in the integration tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn fr(a: i64, b: i64) -> Q {
    Q::new(BigInt::from(a), BigInt::from(b))
}

/// Rank by iterated fusion products: the multiplicity of the vacuum in
/// `V_{w1} ⊗ … ⊗ V_{wn}` at level `ell`.
pub fn fusion_rank(ell: u32, weights: &[u32]) -> BigInt {
    let ell = ell as usize;
    let mut mult = vec![BigInt::zero(); ell + 1];
    mult[0] = BigInt::one();
    for &w in weights {
        let w = w as usize;
        let mut next = vec![BigInt::zero(); ell + 1];
        for (a, m) in mult.iter().enumerate().filter(|(_, m)| !m.is_zero()) {
            let hi = (a + w).min(2 * ell - a - w);
            for c in (a.abs_diff(w)..=hi).step_by(2) {
                next[c] += m;
            }
        }
        mult = next;
    }
    mult[0].clone()
}

/// `B_j · F_{a,b,c,d}` on M̄₀,ₙ from the partition alone.
pub fn bf(j: u32, parts: [u32; 4], n: u32) -> i64 {
    let side = |s: u32| s.min(n - s);
    let [a, b, c, d] = parts;
    let pairings = [a + b, a + c, a + d].iter().filter(|&&s| side(s) == j).count() as i64;
    let cells = parts.iter().filter(|&&p| p >= 2 && side(p) == j).count() as i64;
    pairings - cells
}

/// All F-curves on M̄₀,ₙ as weakly decreasing 4-part partitions.
pub fn fcurves(n: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for d in 1..=n / 4 {
        for c in d..=(n - d) / 3 {
            for b in c..=(n - c - d) / 2 {
                let a = n - b - c - d;
                if a >= b {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

/// `Ψ_j = j(n−j)/(n−1)` and `K_j = Ψ_j − 2`, indexed from `j = 2`.
pub fn canonical(n: u32) -> Vec<Q> {
    (2..=n / 2).map(|j| fr((j * (n - j)) as i64, (n - 1) as i64) - q(2)).collect()
}

/// Plain Gaussian elimination over the rationals.
pub fn gauss_rank(mut m: Vec<Vec<Q>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                let pivot_row = m[r].clone();
                for (x, p) in m[i].iter_mut().zip(pivot_row).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Intersection matrix of F-curves against `B_2 … B_{⌊n/2⌋}`.
pub fn bf_matrix(curves: &[[u32; 4]], n: u32) -> Vec<Vec<Q>> {
    curves.iter().map(|&f| (2..=n / 2).map(|j| q(bf(j, f, n))).collect()).collect()
}

/// Whether `x = s · y` for some rational `s`, returning it.
pub fn ratio(x: &[Q], y: &[Q]) -> Option<Q> {
    let k = y.iter().position(|v| !v.is_zero())?;
    let s = &x[k] / &y[k];
    x.iter().zip(y).all(|(a, b)| *a == &s * b).then_some(s)
}

/// The five F-divisor inequalities for `aλ − Σ_{i=0}^{g+1} b_i δ_i` on
/// M̄_{2g+2}; returns the numbers of the violated ones.
pub fn f_divisor_violations(g: u32, a: &Q, b: &[Q]) -> Vec<u8> {
    let top = (g + 1) as usize;
    let n = 2 * top;
    let fold = |s: usize| if s > top { &b[n - s] } else { &b[s] };
    let mut bad = Vec::new();
    if (a - q(12) * &b[0] + &b[1]).is_negative() {
        bad.push(1);
    }
    if b.iter().any(|x| x.is_negative()) {
        bad.push(2);
    }
    if (1..=top).any(|i| (q(2) * &b[0] - &b[i]).is_negative()) {
        bad.push(3);
    }
    if (1..=top).any(|i| (1..=top - i).any(|j| (&b[i] + &b[j] - &b[i + j]).is_negative())) {
        bad.push(4);
    }
    let quad = fcurves(n as u32).into_iter().any(|[i, j, k, l]| {
        let (i, j, k, l) = (i as usize, j as usize, k as usize, l as usize);
        let lhs = fold(i) + fold(j) + fold(k) + fold(l);
        let rhs = fold(i + j) + fold(i + k) + fold(i + l);
        (lhs - rhs).is_negative()
    });
    if quad {
        bad.push(5);
    }
    bad
}
