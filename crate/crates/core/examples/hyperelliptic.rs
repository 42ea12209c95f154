//! Pullbacks along the hyperelliptic map: 2h*(λ) recovers D_1, and D_2 is
//! a multiple of h*(12λ − δ₀).

use cbdiv::arith::{q, render};
use cbdiv::divisors::cb_divisor_class;
use cbdiv::pullbacks::{h_pullback, hyperelliptic_scalar, lambda_on_mg, twelve_lambda_minus_delta0};
use cbdiv::Level;

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    for g in 3..=8 {
        let n = 2 * g + 2;
        let twice = h_pullback(&lambda_on_mg(g)?)?.scale(&q(2));
        let d1 = cb_divisor_class(Level::new(1)?, n)?;
        let s = hyperelliptic_scalar(g)?.map_or("not parallel".to_string(), |s| render(&s));
        out += &format!("g = {g}: 2h*(λ) = D_1: {}; D_2 = {s} · h*(12λ − δ₀)\n", twice == d1);
    }
    out += &format!("h*(12λ − δ₀) at g = 4: {}\n", h_pullback(&twelve_lambda_minus_delta0(4)?)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
