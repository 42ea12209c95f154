//! The `cbdiv` command line: one subcommand per computation, each producing
//! an [`OutputRecord`] rendered as pretty text, JSON or CSV.

mod record;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::Zero;

pub use record::{Format, OutputRecord, Verdict};

use crate::arith::{parse_rational, render, Rational};
use crate::divisors::{
    cb_divisor_class, closed_form_class, degree_4pt, intersect_cb_fcurve, FCurve, LevelTag, SymDivisor,
};
use crate::error::{Error, Result};
use crate::fusion::{
    rank, rank_1t, rank_by_reflection, rank_closed_form, reflection_terms, verlinde_rank_numeric, CacheEntry, Level,
    RankCache, WeightVector,
};
use crate::nefcone::{genus_of, log_canonical_feasibility, nef_face_report};
use crate::pullbacks::{
    f_divisor_check, flag_pullback, h_pullback, lambda_on_mg, twelve_lambda_minus_delta0, verify_flag_program,
    FDivReport, FlagParams, GDivisor,
};
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_INTEGRALITY: i32 = 4;

/// Weight lists beyond this length skip the numeric Verlinde cross-check.
const VERLINDE_MAX_POINTS: usize = 40;

#[derive(Debug, Parser)]
#[command(name = "cbdiv", version, about = "Exact sl2 conformal blocks divisors on M_{0,n}")]
struct Cli {
    /// Output encoding.
    #[arg(long, value_enum, default_value = "pretty", global = true)]
    format: Format,
    /// JSON file holding the fusion memo table; read before and written after the command.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Rank of the bundle of conformal blocks for a weight vector.
    Rank {
        #[arg(long)]
        level: u32,
        /// Comma-separated weights; `1x15` repeats 1 fifteen times.
        #[arg(long, value_parser = parse_weights)]
        weights: Weights,
    },
    /// Table of r_L(j, t) for j ≤ J, cross-checked across algorithms.
    RankTable {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        max_j: u32,
    },
    /// Degree of a four-point bundle on M_{0,4}.
    Deg4 {
        #[arg(long)]
        level: u32,
        #[arg(long, value_parser = parse_weights)]
        mu: Weights,
    },
    /// Intersection of D_L with an F-curve.
    Intersect {
        #[arg(long)]
        level: u32,
        /// Defaults to the sum of the F-curve parts.
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, value_parser = parse_weights)]
        fcurve: Weights,
    },
    /// Class of D_L in the symmetric boundary basis.
    Class {
        /// A level, or a tag relative to the genus (g-2, g-1, g).
        #[arg(long)]
        level: String,
        #[arg(long)]
        n: u32,
        /// Evaluate the closed formula for the level instead of the general one.
        #[arg(long)]
        closed_form: bool,
    },
    /// F-curves on which D_L vanishes and the face they cut out.
    NefFace {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        n: u32,
    },
    /// Whether D_L is a positive multiple of K + Σ b_i B_i with 0 ≤ b_i ≤ 1.
    Logcan {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        n: u32,
    },
    /// Pull a divisor back to M_{0,2g+2}.
    Pullback {
        #[command(subcommand)]
        map: PullbackMap,
    },
    /// F-divisor inequalities for a flag divisor or a flag program tag.
    FdivCheck {
        #[arg(long)]
        genus: u32,
        /// Run the flag program for this tag (1, 2, g-1 or g).
        #[arg(long, conflicts_with = "boundary")]
        tag: Option<String>,
        #[arg(long, value_parser = parse_q)]
        a: Option<Rational>,
        /// The δ₀ coefficient in the flag program.
        #[arg(long, value_parser = parse_q)]
        b: Option<Rational>,
        /// Fixed multiple of the auxiliary divisor; searched when omitted.
        #[arg(long, value_parser = parse_q)]
        d: Option<Rational>,
        #[arg(long, value_parser = parse_q)]
        alpha: Option<Rational>,
        #[arg(long, value_parser = parse_q)]
        beta: Option<Rational>,
        /// Coefficients b_0..b_{g+1} of an explicit divisor aλ − Σ b_i δ_i.
        #[arg(long, value_parser = parse_rationals, requires = "a")]
        boundary: Option<Rationals>,
    },
    /// Recompute every published numerical claim and report PASS/FAIL.
    VerifyPaper {
        #[arg(long, default_value_t = 16)]
        max_n: u32,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
enum PullbackMap {
    /// Along the hyperelliptic map to M_g.
    H {
        #[arg(long)]
        genus: u32,
        /// `lambda` or `12lambda-delta0`; otherwise give --a and --b.
        #[arg(long, conflicts_with_all = ["a", "b"])]
        divisor: Option<String>,
        #[arg(long, value_parser = parse_q, requires = "b")]
        a: Option<Rational>,
        /// Coefficients b_0..b_{⌊g/2⌋}.
        #[arg(long, value_parser = parse_rationals, requires = "a")]
        b: Option<Rationals>,
    },
    /// Along the flag map to M_{2g+2}.
    Flag {
        #[arg(long)]
        genus: u32,
        #[arg(long, value_parser = parse_q)]
        a: Rational,
        /// Coefficients b_0..b_{g+1}.
        #[arg(long, value_parser = parse_rationals)]
        b: Rationals,
    },
}

#[derive(Debug, Clone)]
struct Weights(Vec<u32>);

#[derive(Debug, Clone)]
struct Rationals(Vec<Rational>);

/// Parses `1x15,3` style lists: each item is `w` or `w x count`.
pub fn expand_weights(text: &str) -> std::result::Result<Vec<u32>, String> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (w, count) = match item.split_once(['x', 'X', '×']) {
            Some((w, c)) => (w.trim(), c.trim().parse::<usize>().map_err(|e| format!("bad count in {item:?}: {e}"))?),
            None => (item, 1),
        };
        let w = w.parse::<u32>().map_err(|e| format!("bad weight in {item:?}: {e}"))?;
        out.extend(std::iter::repeat_n(w, count));
    }
    if out.is_empty() {
        return Err("empty weight list".into());
    }
    Ok(out)
}

fn parse_weights(text: &str) -> std::result::Result<Weights, String> {
    expand_weights(text).map(Weights)
}

fn parse_q(text: &str) -> std::result::Result<Rational, String> {
    parse_rational(text).ok_or_else(|| format!("{text:?} is not an integer or p/q"))
}

fn parse_rationals(text: &str) -> std::result::Result<Rationals, String> {
    text.split(',').map(parse_q).collect::<std::result::Result<_, _>>().map(Rationals)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Precondition(_) => EXIT_PRECONDITION,
        Error::Integrality(_) | Error::Precision(_) => EXIT_INTEGRALITY,
    }
}

/// Parses `args` (program name first), runs the command, writes the record
/// to `out` and diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect::<Vec<_>>().join(" ");

    if let Some(path) = &cli.cache {
        if let Err(e) = load_cache(path) {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    }
    let record = match execute(&cli.command, echo) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    if let Some(path) = &cli.cache {
        if let Err(e) = save_cache(path) {
            let _ = writeln!(err, "warning: could not write cache {}: {e}", path.display());
        }
    }
    if let Err(e) = record.write(cli.format, out) {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    match &cli.command {
        Command::VerifyPaper { .. } if !record.all_verdicts_hold() => EXIT_VERIFY_FAILED,
        _ => EXIT_OK,
    }
}

fn load_cache(path: &Path) -> Result<()> {
    if !path.exists() {
        return Ok(());
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Precondition(format!("cannot read cache {}: {e}", path.display())))?;
    let entries: Vec<CacheEntry> = serde_json::from_str(&text)
        .map_err(|e| Error::Precondition(format!("cache {} is not a list of entries: {e}", path.display())))?;
    RankCache::global().absorb(&entries);
    Ok(())
}

fn save_cache(path: &Path) -> std::io::Result<()> {
    let text = serde_json::to_string(&RankCache::global().entries()).expect("cache entries serialize");
    std::fs::write(path, text)
}

fn level(ell: u32) -> Result<Level> {
    Level::new(ell)
}

fn weights_text(w: &[u32]) -> String {
    w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn put_class(rec: &mut OutputRecord, d: &SymDivisor) {
    for (j, c) in d.terms() {
        rec.output(format!("B{j}"), render(c));
    }
}

fn execute(cmd: &Command, echo: String) -> Result<OutputRecord> {
    let mut rec = OutputRecord::new(echo);
    match cmd {
        Command::Rank { level: ell, weights } => rank_cmd(&mut rec, *ell, &weights.0)?,
        Command::RankTable { level: ell, max_j } => rank_table_cmd(&mut rec, *ell, *max_j)?,
        Command::Deg4 { level: ell, mu } => {
            if mu.0.len() != 4 {
                return Err(Error::Precondition(format!("deg4 needs four weights, got {}", mu.0.len())));
            }
            let w = WeightVector::new(level(*ell)?, mu.0.clone())?;
            rec.input("level", ell).input("mu", weights_text(&mu.0));
            rec.output("degree", degree_4pt(&w)?);
            rec.cite("four-point degree via Casimir eigenvalues and the three boundary channels");
        }
        Command::Intersect { level: ell, n, fcurve } => {
            let parts: [u32; 4] = fcurve
                .0
                .clone()
                .try_into()
                .map_err(|_| Error::Precondition("an F-curve has exactly four parts".into()))?;
            let f = FCurve::new(parts)?;
            let n = n.unwrap_or_else(|| f.n());
            rec.input("level", ell).input("n", n).input("fcurve", f);
            rec.output("intersection", intersect_cb_fcurve(level(*ell)?, n, &f)?);
            rec.cite("D_L · F as a sum over channel weights of four-point degrees times ranks");
        }
        Command::Class { level: text, n, closed_form } => class_cmd(&mut rec, text, *n, *closed_form)?,
        Command::NefFace { level: ell, n } => {
            let d = cb_divisor_class(level(*ell)?, *n)?;
            if d.is_zero() {
                return Err(Error::Precondition(format!("D_{ell} vanishes on n = {n}; there is no face to report")));
            }
            let r = nef_face_report(&d)?;
            rec.input("level", ell).input("n", n);
            rec.output("curves_checked", r.curves_checked)
                .output("vanishing", r.vanishing.len())
                .output("rho", r.rho)
                .output("vanishing_curves", r.vanishing.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "));
            let neg = r.negative.as_ref().map(|(f, v)| format!("{f} = {}", render(v)));
            rec.verdict("f_nef", r.f_nef(), neg);
            rec.verdict("extremal_ray", r.is_extremal_ray(), Some(format!("rho = {}, needs {}", r.rho, n / 2 - 2)));
            rec.cite("F-nef faces of the symmetric cone spanned by vanishing F-curves");
        }
        Command::Logcan { level: ell, n } => {
            let d = cb_divisor_class(level(*ell)?, *n)?;
            let c = log_canonical_feasibility(&d)?;
            rec.input("level", ell).input("n", n);
            if let Some(i) = &c.c_interval {
                rec.output("c_interval", i);
            }
            if let Some(w) = &c.witness_c {
                rec.output("c", render(w));
            }
            for (i, b) in c.witness_b.iter().enumerate() {
                rec.output(format!("b{}", i + 2), render(b));
            }
            let blocking = c.blocking.map(|(i, j)| format!("indices {i} and {j} are incompatible"));
            rec.verdict("log_canonical", c.feasible, blocking);
            rec.cite("D = c(K + Σ b_i B_i) with c > 0 and 0 ≤ b_i ≤ 1, solved exactly in u = 1/c");
        }
        Command::Pullback { map } => pullback_cmd(&mut rec, map)?,
        Command::FdivCheck { genus, tag, a, b, d, alpha, beta, boundary } => {
            rec.input("genus", genus);
            match (tag, boundary) {
                (Some(tag), _) => {
                    let tag: LevelTag = tag.parse()?;
                    let mut p = FlagParams::at_bounds(tag, *genus)?;
                    if let Some(b) = b {
                        p.b = b.clone();
                        p.a = crate::arith::q(12) * b - crate::arith::q(1);
                    }
                    if let Some(a) = a {
                        p.a = a.clone();
                    }
                    p.alpha = alpha.clone().unwrap_or(p.alpha);
                    p.beta = beta.clone().unwrap_or(p.beta);
                    p.d = d.clone();
                    rec.input("tag", tag).input("a", render(&p.a)).input("b", render(&p.b));
                    rec.input("alpha", render(&p.alpha)).input("beta", render(&p.beta));
                    let r = verify_flag_program(tag, &p)?;
                    rec.output("c", render(&r.derived_c)).output("c_printed", render(&r.printed_c));
                    rec.output("d", r.d.as_ref().map_or("none".into(), render));
                    rec.output("min_d_condition_4", r.min_d_condition4.as_ref().map_or("none".into(), render));
                    rec.output("divisor", &r.divisor);
                    rec.verdict("pullback_is_D", r.pullback_matches, None);
                    put_conditions(&mut rec, &r.conditions);
                }
                (None, Some(bs)) => {
                    let a = a.clone().expect("clap enforces --a with --boundary");
                    let div = GDivisor::on_flag(*genus, a, bs.0.clone())?;
                    rec.input("divisor", &div);
                    put_conditions(&mut rec, &f_divisor_check(&div)?);
                }
                (None, None) => {
                    return Err(Error::Precondition("fdiv-check needs --tag or --a with --boundary".into()));
                }
            }
            rec.cite("the five F-divisor inequalities on the boundary coefficients of M_{2g+2}");
        }
        Command::VerifyPaper { max_n, seed } => {
            rec.input("max_n", max_n).input("seed", seed);
            let claims = verify::run_all(VerifyOptions { max_n: *max_n, seed: *seed })?;
            for c in &claims {
                rec.verdict(c.name.clone(), c.pass, Some(c.detail.clone()));
                rec.cite(format!("{}: {}", c.name, c.citation));
            }
            for (i, note) in verify::notes(*max_n)?.into_iter().enumerate() {
                rec.output(format!("note{}", i + 1), note);
            }
            rec.output("passed", format!("{}/{}", claims.iter().filter(|c| c.pass).count(), claims.len()));
        }
    }
    Ok(rec)
}

fn put_conditions(rec: &mut OutputRecord, report: &FDivReport) {
    for c in &report.conditions {
        let witness = c.witness.as_ref().map(|idx| {
            let deficit = c.deficit.as_ref().map_or(String::new(), |d| format!(" (value {})", render(d)));
            format!("fails at indices {idx:?}{deficit}")
        });
        rec.verdict(format!("condition_{}", c.number), c.holds, witness.or(Some(format!("{} cases", c.checked))));
    }
}

/// `(j, t)` if the nonzero weights are `1^j` plus at most one other weight.
fn ones_shape(w: &[u32]) -> Option<(usize, u32)> {
    let nonzero: Vec<u32> = w.iter().copied().filter(|&x| x > 0).collect();
    let others: Vec<u32> = nonzero.iter().copied().filter(|&x| x != 1).collect();
    match others[..] {
        [] => Some((nonzero.len(), 0)),
        [t] => Some((nonzero.len() - 1, t)),
        _ => None,
    }
}

fn rank_cmd(rec: &mut OutputRecord, ell: u32, w: &[u32]) -> Result<()> {
    let v = WeightVector::new(level(ell)?, w.to_vec())?;
    rec.input("level", ell).input("weights", weights_text(w));
    let r = rank(&v);
    rec.output("rank", &r);
    let mut agree = true;
    if let Some((j, t)) = ones_shape(w) {
        let lv = level(ell)?;
        let recurrence = rank_1t(lv, j, t as i64);
        let closed = rank_closed_form(lv, j as u64, t as i64)?;
        let reflected = rank_by_reflection(lv, j as u64, t as i64)?;
        let terms: Vec<String> = reflection_terms(lv, j as u64, t as i64)?
            .into_iter()
            .map(|(s, c)| format!("{}r_inf({j},{c})", if s > 0 { "+" } else { "-" }))
            .collect();
        rec.output("reflection_terms", terms.join(" "));
        agree &= recurrence == r && closed == r && reflected == r;
    }
    if v.len() <= VERLINDE_MAX_POINTS {
        agree &= verlinde_rank_numeric(&v, 0)? == r;
    }
    rec.verdict("algorithms_agree", agree, None);
    rec.cite("ranks by factorization and propagation of vacua, cross-checked with the Verlinde formula");
    Ok(())
}

fn rank_table_cmd(rec: &mut OutputRecord, ell: u32, max_j: u32) -> Result<()> {
    let lv = level(ell)?;
    rec.input("level", ell).input("max_j", max_j);
    let mut bad = Vec::new();
    for j in 0..=max_j {
        for t in 0..=ell {
            let r = rank_1t(lv, j as usize, t as i64);
            let closed = rank_closed_form(lv, j as u64, t as i64)?;
            let reflected = rank_by_reflection(lv, j as u64, t as i64)?;
            let mut ok = closed == r && reflected == r;
            if (j + t) % 2 == 0 && (j as usize) < VERLINDE_MAX_POINTS {
                ok &= verlinde_rank_numeric(&WeightVector::ones_and(lv, j as usize, t)?, 0)? == r;
            }
            if !ok {
                bad.push(format!("({j},{t})"));
            }
            rec.output(format!("r({j},{t})"), r);
        }
    }
    let witness = (!bad.is_empty()).then(|| format!("disagreement at {}", bad.join(" ")));
    rec.verdict("algorithms_agree", bad.is_empty(), witness);
    rec.cite("recurrence, binomial closed form, reflection of the level-free table, Verlinde formula");
    Ok(())
}

fn resolve_level(text: &str, n: u32, closed_form: bool) -> Result<(Level, Option<LevelTag>)> {
    let g = n / 2 - 1;
    let numeric = text.trim().parse::<u32>().ok();
    let tag = match numeric {
        Some(ell) if closed_form => LevelTag::ALL
            .into_iter()
            .find(|t| t.applies(n) && t.level(g) == ell as i64)
            .map(Some)
            .ok_or_else(|| Error::Precondition(format!("no closed formula for level {ell} on n = {n}")))?,
        Some(_) => None,
        None => Some(text.parse::<LevelTag>()?),
    };
    let ell = match (numeric, tag) {
        (Some(ell), _) => ell as i64,
        (None, Some(t)) => t.level(g),
        (None, None) => unreachable!("a non-numeric level parses as a tag"),
    };
    if ell < 1 {
        return Err(Error::Precondition(format!("level {text} is {ell} on n = {n}")));
    }
    Ok((level(ell as u32)?, tag))
}

fn class_cmd(rec: &mut OutputRecord, text: &str, n: u32, closed_form: bool) -> Result<()> {
    if n < 4 {
        return Err(Error::Precondition(format!("boundary classes need n ≥ 4, got {n}")));
    }
    let (lv, tag) = resolve_level(text, n, closed_form)?;
    rec.input("level", lv).input("n", n);
    let d = if closed_form {
        let tag = tag.expect("closed form resolves a tag");
        rec.input("closed_form", tag);
        let d = closed_form_class(tag, n)?;
        rec.verdict("matches_general_formula", d == cb_divisor_class(lv, n)?, None);
        rec.cite("closed class formulas at special levels");
        d
    } else {
        rec.cite("class from F-curve intersections via the first two basis coefficients");
        cb_divisor_class(lv, n)?
    };
    if n % 2 == 1 {
        rec.output("note", "odd n: the total weight is odd, so every bundle and its divisor vanish");
    }
    put_class(rec, &d);
    Ok(())
}

fn pullback_cmd(rec: &mut OutputRecord, map: &PullbackMap) -> Result<()> {
    let pulled = match map {
        PullbackMap::H { genus, divisor, a, b } => {
            let d = match (divisor.as_deref(), a, b) {
                (Some("lambda"), _, _) => lambda_on_mg(*genus)?,
                (Some("12lambda-delta0"), _, _) => twelve_lambda_minus_delta0(*genus)?,
                (Some(other), _, _) => {
                    return Err(Error::Precondition(format!("unknown divisor {other:?} (lambda or 12lambda-delta0)")))
                }
                (None, Some(a), Some(b)) => GDivisor::on_mg(*genus, a.clone(), b.0.clone())?,
                _ => return Err(Error::Precondition("give --divisor or both --a and --b".into())),
            };
            rec.input("map", "h").input("divisor", &d);
            rec.cite("pullback along the hyperelliptic map");
            h_pullback(&d)?
        }
        PullbackMap::Flag { genus, a, b } => {
            let d = GDivisor::on_flag(*genus, a.clone(), b.0.clone())?;
            rec.input("map", "flag").input("divisor", &d);
            rec.cite("pullback along the flag map");
            flag_pullback(&d)?
        }
    };
    rec.input("n", pulled.n());
    put_class(rec, &pulled);
    let g = genus_of(pulled.n());
    for ell in 1..=g {
        let target = cb_divisor_class(level(ell)?, pulled.n())?;
        if let Some(s) = target.ratio_to(&pulled) {
            if !s.is_zero() {
                rec.output(format!("D{ell}_over_pullback"), render(&s));
            }
        }
    }
    Ok(())
}
