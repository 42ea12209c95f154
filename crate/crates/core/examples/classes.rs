//! Classes of D_ℓ in the symmetric boundary basis, from the general formula
//! and from the closed formulas at special levels.

use cbdiv::divisors::{cb_divisor_class, closed_form_class, LevelTag};
use cbdiv::nefcone::genus_of;
use cbdiv::Level;

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    out += &format!("D_1 on n = 6: {}\n", cb_divisor_class(Level::new(1)?, 6)?);
    let n = 12;
    let g = genus_of(n);
    for tag in LevelTag::ALL.into_iter().filter(|t| t.applies(n)) {
        let ell = Level::new(tag.level(g) as u32)?;
        let closed = closed_form_class(tag, n)?;
        let general = cb_divisor_class(ell, n)?;
        out += &format!("n = {n}, level {tag} (= {ell}): {closed}  [agrees: {}]\n", closed == general);
    }
    out += &format!("odd n = 9, level 2: zero class = {}\n", cb_divisor_class(Level::new(2)?, 9)?.is_zero());
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
