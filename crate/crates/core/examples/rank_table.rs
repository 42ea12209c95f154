//! The table r_ℓ(j, t) of ranks for weights (1^j, t), computed four ways,
//! and the reflection formula that expresses it through the level-free table.

use cbdiv::fusion::{rank_1t, rank_by_reflection, rank_closed_form, rank_infinity, reflection_terms};
use cbdiv::Level;

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    let level = Level::new(3)?;
    out += "r_3(j, t)   t = 0    1    2    3\n";
    for j in 0..=10u32 {
        let row: Vec<String> = (0..=3).map(|t| format!("{:>4}", rank_1t(level, j as usize, t).to_string())).collect();
        out += &format!("  j = {j:>2}      {}\n", row.join(" "));
        for t in 0..=3 {
            let r = rank_1t(level, j as usize, t);
            assert_eq!(rank_closed_form(level, j as u64, t)?, r);
            assert_eq!(rank_by_reflection(level, j as u64, t)?, r);
        }
    }

    let row: Vec<String> = (0..=15).map(|t| rank_infinity(15, t).to_string()).collect();
    out += &format!("r_inf(15, 0..15) = {}\n", row.join(" "));
    let mut expansion = Vec::new();
    for (sign, col) in reflection_terms(level, 15, 3)? {
        let v = rank_infinity(15, col);
        if v.bits() > 0 {
            expansion.push(format!("{} {v}", if sign > 0 { "+" } else { "-" }));
        }
    }
    out += &format!("r_3(15, 3) = {} = {}\n", expansion.join(" "), rank_by_reflection(level, 15, 3)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
