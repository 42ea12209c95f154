//! F-nefness and the faces cut out by vanishing F-curves for D_1, D_2,
//! D_{g−1} and D_g, and a divisor that fails F-nefness.

use cbdiv::divisors::{canonical_class, cb_divisor_class};
use cbdiv::nefcone::{genus_of, nef_face_report};
use cbdiv::Level;

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    let n = 12;
    let g = genus_of(n);
    for ell in [1, 2, g - 1, g] {
        let r = nef_face_report(&cb_divisor_class(Level::new(ell)?, n)?)?;
        out += &format!(
            "D_{ell} on n = {n}: F-nef {}, {} vanishing curves, face rank {}, extremal ray {}\n",
            r.f_nef(),
            r.vanishing.len(),
            r.rho,
            r.is_extremal_ray()
        );
    }
    let k = nef_face_report(&canonical_class(n)?)?;
    if let Some((f, v)) = &k.negative {
        out += &format!("K on n = {n} is not F-nef: K · {f} = {v}\n");
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
