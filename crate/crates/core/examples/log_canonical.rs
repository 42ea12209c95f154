//! Whether D_ℓ can be written as c(K + Σ b_i B_i) with c > 0 and
//! 0 ≤ b_i ≤ 1, with the admissible interval for c or a blocking pair.

use cbdiv::arith::render;
use cbdiv::divisors::cb_divisor_class;
use cbdiv::nefcone::{genus_of, log_canonical_feasibility};
use cbdiv::Level;

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    for n in [8, 10, 12, 14, 16] {
        let g = genus_of(n);
        let mut levels = vec![1, 2, g - 1, g];
        levels.dedup();
        for ell in levels {
            let cert = log_canonical_feasibility(&cb_divisor_class(Level::new(ell)?, n)?)?;
            let line = match (&cert.c_interval, &cert.witness_c, cert.blocking) {
                (Some(i), Some(c), _) => {
                    let b: Vec<String> = cert.witness_b.iter().map(render).collect();
                    format!("c in {i}; at c = {}: b = [{}]", render(c), b.join(", "))
                }
                (_, _, Some((i, j))) => format!("no decomposition; indices {i} and {j} conflict"),
                _ => unreachable!("a certificate is either feasible or blocked"),
            };
            out += &format!("n = {n:>2}, D_{ell}: {line}\n");
        }
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
