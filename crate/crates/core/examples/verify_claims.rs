//! The full claim battery, as run by `cbdiv verify-paper`.

use cbdiv::verify::{notes, run_all, VerifyOptions};

pub fn run_example() -> cbdiv::Result<String> {
    let opts = VerifyOptions::default();
    let mut out = String::new();
    for c in run_all(opts)? {
        out += &format!("{}  {}: {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    for note in notes(opts.max_n)? {
        out += &format!("note: {note}\n");
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> cbdiv::Result<()> {
    print!("{}", run_example()?);
    Ok(())
}
