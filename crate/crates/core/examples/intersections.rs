//! Four-point degrees and intersections of D_ℓ with F-curves, including the
//! triangular n = 16 table against the curves F_{n−i−2,i,1,1}.

use cbdiv::divisors::{degree_4pt, intersect_cb_fcurve};
use cbdiv::nefcone::cb_basis_matrix;
use cbdiv::{FCurve, Level, WeightVector};

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    for (ell, mu) in [(1, [1, 1, 1, 1]), (2, [2, 2, 1, 1]), (2, [2, 2, 2, 2]), (3, [3, 3, 1, 1]), (3, [2, 2, 1, 1])] {
        let w = WeightVector::new(Level::new(ell)?, mu.to_vec())?;
        out += &format!("deg V(level {ell}, {mu:?}) = {}\n", degree_4pt(&w)?);
    }
    let f = FCurve::new([12, 2, 1, 1])?;
    out += &format!("D_2 · {f} on n = 16: {}\n", intersect_cb_fcurve(Level::new(2)?, 16, &f)?);

    let m = cb_basis_matrix(16)?;
    out += "rows i = 1..7 of D_ℓ · F_{14−i,i,1,1}, columns ℓ = 1..7:\n";
    for i in 0..7 {
        let row: Vec<String> = (0..7).map(|l| format!("{:>3}", m.entries[l][i].to_string())).collect();
        out += &format!("  {}\n", row.join(" "));
    }
    out += &format!("lower triangular: {}, positive diagonal: {}\n", m.triangular, m.positive_diagonal);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
