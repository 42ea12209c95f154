//! Ranks of the F-curve families C1, C2, C3 by exact elimination, and the
//! linear relation that makes C3 dependent at n = 12.

use cbdiv::arith::{frac, q, render, Rational};
use cbdiv::nefcone::{independence_rank, intersection_matrix, CurveFamily, FamilyLabel};
use cbdiv::FCurve;

pub fn run_example() -> cbdiv::Result<String> {
    let mut out = String::new();
    for n in 6..=14 {
        let mut cells = Vec::new();
        for label in [FamilyLabel::C1, FamilyLabel::C2, FamilyLabel::C3] {
            let fam = CurveFamily::new(label, n)?;
            cells.push(format!("{label}: {}/{}", independence_rank(&fam.curves, n)?, fam.curves.len()));
        }
        out += &format!("n = {n:>2}  {}\n", cells.join("  "));
    }

    // −F_{5,3,3,1} + ⅓F_{3,3,3,3} − ⅓F_{9,1,1,1} + F_{7,3,1,1} meets every boundary class in 0.
    let n = 12;
    let relation: [([u32; 4], Rational); 4] =
        [([5, 3, 3, 1], q(-1)), ([3, 3, 3, 3], frac(1, 3)), ([9, 1, 1, 1], frac(-1, 3)), ([7, 3, 1, 1], q(1))];
    let curves: Vec<FCurve> = relation.iter().map(|(p, _)| FCurve::new(*p)).collect::<cbdiv::Result<_>>()?;
    let m = intersection_matrix(&curves, n)?;
    let combined: Vec<String> = (0..m[0].len())
        .map(|j| render(&relation.iter().zip(&m).map(|((_, c), row)| c * &row[j]).sum::<Rational>()))
        .collect();
    out += &format!("C3 relation at n = 12 against B_2..B_6: [{}]\n", combined.join(", "));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
