//! Flag pullbacks: for each special level, build c·D + d·𝒟 on M̄_{2g+2},
//! check that it pulls back to D_ℓ and run the F-divisor inequalities.

use cbdiv::arith::render;
use cbdiv::divisors::LevelTag;
use cbdiv::pullbacks::{verify_flag_program, FlagParams};

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    for g in [3, 5, 7] {
        for tag in [LevelTag::One, LevelTag::Two, LevelTag::GenusMinusOne, LevelTag::Genus] {
            let r = verify_flag_program(tag, &FlagParams::at_bounds(tag, g)?)?;
            let failing: Vec<u8> = r.conditions.conditions.iter().filter(|c| !c.holds).map(|c| c.number).collect();
            out += &format!(
                "g = {g}, level {tag}: c = {}, d = {}, pullback ok {}, failing conditions {failing:?}\n",
                render(&r.derived_c),
                r.d.as_ref().map_or("none".into(), render),
                r.pullback_matches,
            );
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
