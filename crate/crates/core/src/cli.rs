//! Command-line front end. Every verb produces one JSON value or one
//! Markdown document; `run` returns it with the exit code so the binary
//! only has to print.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::axioms::{bracket_table, run_all, AxiomResult};
use crate::cohomology::claims::{parse_twice_shift, verification_markdown, verify_all, ReferenceClaims};
use crate::cohomology::h1::{h1, h1_at, markdown_report, markdown_tables, H1Options, H1Report};
use crate::cohomology::linear::linear_check;
use crate::cohomology::render::render_bi;
use crate::cohomology::{build_lin_ansatz, classify_invariants, solve_invariance_lin, Generic, MAX_TWICE_SHIFT};
use crate::contact::{contact_bracket, SubalgebraSpec};
use crate::densities::act;
use crate::error::{usage, Error, Result};
use crate::param_linalg::locus_roots;
use crate::parse::{parse_density, parse_rational, parse_scalar, parse_superpoly};
use crate::scalars::{AlgebraicScalar, ParamPoly, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

#[derive(Parser, Debug)]
#[command(name = "superdensity", version, about = "Invariant operators and H¹ on weighted superdensities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write the result here and a `.meta.json` sidecar next to it.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ShiftArgs {
    /// μ − λ as an exact fraction, e.g. 3/2.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<String>,
    /// Target weight; needs a rational --lambda.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Contact bracket {F,G}.
    Bracket {
        #[arg(long)]
        n: u8,
        #[arg(long = "F", allow_hyphen_values = true)]
        f: String,
        #[arg(long = "G", allow_hyphen_values = true)]
        g: String,
    },
    /// 𝕃^λ_{X_F} applied to a density "payload @ weight [pi]".
    Act {
        #[arg(long)]
        n: u8,
        #[arg(long = "F", allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        density: String,
    },
    /// aff(n|1)-invariant bilinear operators of shift k, τ and λ free.
    ClassifyInvariants {
        #[arg(long)]
        n: u8,
        #[arg(long, allow_hyphen_values = true)]
        shift: String,
    },
    /// aff(n|1)-invariant linear operators, or with --check the family
    /// comparison for every n ≤ 2, k ≤ 6.
    ClassifyLinear {
        #[arg(long, default_value_t = 0)]
        n: u8,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<String>,
        /// Allow θ-monomials up to this degree in the coefficients.
        #[arg(long, default_value_t = 0)]
        max_theta: u32,
        #[arg(long)]
        check: bool,
    },
    /// One H¹ cell.
    H1 {
        #[arg(long)]
        n: u8,
        #[command(flatten)]
        shift: ShiftArgs,
        /// Fixed rational λ.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Fixed λ given as a root of this polynomial in `lambda`.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "lambda")]
        lambda_root: Option<String>,
        /// Which root of --lambda-root, in the order they are listed.
        #[arg(long, default_value_t = 0)]
        root_index: usize,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long, default_value_t = 5)]
        random_checks: usize,
    },
    /// Check every printed cocycle and identity in the reference data.
    VerifyPaper {
        /// Exit with status 2 when a discrepancy is found.
        #[arg(long)]
        strict: bool,
    },
    /// H¹ tables, one cell per shift up to the reference range.
    Tables {
        /// A single n or a range a..b.
        #[arg(long, default_value = "0..2")]
        n: String,
        /// Largest 2(μ − λ); defaults to the reference table range.
        #[arg(long)]
        max_twice_shift: Option<u32>,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long, default_value_t = 5)]
        random_checks: usize,
    },
    /// Bracket table, antisymmetry, Jacobi and representation identities.
    CheckAxioms {
        #[arg(long, default_value_t = 3)]
        max_x: u32,
    },
}

/// Result of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub body: String,
}

fn twice_of(s: &ShiftArgs, lambda: Option<&Rational>) -> Result<u32> {
    match (&s.shift, &s.mu) {
        (Some(k), None) => parse_twice_shift(k),
        (None, Some(mu)) => {
            let Some(l) = lambda else { return usage("--mu needs a rational --lambda") };
            let d = &parse_rational(mu)? - l;
            parse_twice_shift(&d.to_string())
        }
        (Some(_), Some(_)) => usage("give either --shift or --mu, not both"),
        (None, None) => usage("--shift or --mu is required"),
    }
}

fn n_range(s: &str) -> Result<Vec<u8>> {
    let parse = |t: &str| t.trim().parse::<u8>().map_err(|_| Error::Usage(format!("bad n {t:?}")));
    match s.split_once("..") {
        Some((a, b)) => {
            let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
            if a > b {
                return usage(format!("empty range {s}"));
            }
            Ok((a..=b).collect())
        }
        None => Ok(vec![parse(s)?]),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Internal(e.to_string()))
}

fn emit<T: Serialize>(format: Format, v: &T, md: impl FnOnce() -> String) -> Result<String> {
    match format {
        Format::Json => to_json(v),
        Format::Md => Ok(md()),
    }
}

fn axioms_md(table: &[crate::axioms::BracketRow], suites: &[AxiomResult]) -> String {
    let mut s = String::from("| F | G | {F,G} | expected | ok |\n|---|---|---|---|---|\n");
    for r in table {
        s.push_str(&format!("| {} | {} | {} | {} | {} |\n", r.f, r.g, r.computed, r.expected, r.ok));
    }
    s.push_str("\n| identity | n | cases | failures |\n|---|---|---|---|\n");
    for a in suites {
        s.push_str(&format!("| {} | {} | {} | {} |\n", a.name, a.n, a.cases, a.failures));
    }
    s
}

fn h1_options(degree_bound: Option<u32>, random_checks: usize) -> H1Options {
    H1Options { degree_bound, random_checks, ..H1Options::default() }
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let fmt = cli.format;
    let ok = |body: String| Ok(Outcome { code: 0, body });
    match &cli.command {
        Command::Bracket { n, f, g } => {
            let (fp, gp) = (parse_superpoly(f, Some(*n))?, parse_superpoly(g, Some(*n))?);
            let b = contact_bracket(&fp, &gp)?;
            let v = json!({ "n": n, "F": fp.to_text(), "G": gp.to_text(), "bracket": b.to_text() });
            ok(emit(fmt, &v, || b.to_text())?)
        }
        Command::Act { n, f, density } => {
            let fp = parse_superpoly(f, Some(*n))?;
            let d = parse_density(density, *n)?;
            let out = act(d.weight(), &fp, &d)?;
            let v = json!({
                "F": fp.to_text(),
                "density": d.to_string(),
                "payload": out.payload().to_text(),
                "weight": out.weight().to_string(),
                "pi": out.pi(),
            });
            ok(emit(fmt, &v, || out.to_string())?)
        }
        Command::ClassifyInvariants { n, shift } => {
            let fam = classify_invariants(*n, parse_twice_shift(shift)?)?;
            let ops: Vec<_> = (0..fam.dimension()).map(|i| fam.member(i)).collect();
            let v = json!({
                "n": n,
                "shift": shift,
                "dimension": fam.dimension(),
                "locus": fam.locus.to_string(),
                "basis": ops.iter().map(|o| render_bi(&o.op)).collect::<Vec<_>>(),
                "operators": ops.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            });
            ok(emit(fmt, &v, || {
                let mut s = format!("dimension {} (n = {n}, shift {shift})\n\n", fam.dimension());
                for o in &ops {
                    s.push_str(&format!("- {}\n", render_bi(&o.op)));
                }
                s
            })?)
        }
        Command::ClassifyLinear { n, shift, max_theta, check } => {
            if *check {
                let r = linear_check(2, 6)?;
                let code = if r.ok { 0 } else { 1 };
                let body = emit(fmt, &r, || {
                    let mut s = String::from("| n | μ − λ | dim | families | ok |\n|---|---|---|---|---|\n");
                    for c in &r.cells {
                        s.push_str(&format!("| {} | {} | {} | {} | {} |\n", c.n, c.shift, c.dimension, c.predicted, c.ok));
                    }
                    s.push_str(&format!("\nη-basis matches: {}; η̄-basis matches: {}\n", r.eta_matches, r.eta_bar_matches));
                    s
                })?;
                return Ok(Outcome { code, body });
            }
            let Some(shift) = shift else { return usage("--shift is required unless --check is given") };
            let a = build_lin_ansatz(*n, parse_twice_shift(shift)?, *max_theta)?;
            let fam = solve_invariance_lin(&Generic::lambda(), &a, &ParamPoly::named("lambda"), &SubalgebraSpec::aff(*n))?;
            let basis: Vec<String> = (0..fam.dimension()).map(|i| fam.member(i).op.to_string()).collect();
            let v = json!({ "n": n, "shift": shift, "dimension": fam.dimension(), "locus": fam.locus.to_string(), "basis": basis });
            ok(emit(fmt, &v, || {
                let mut s = format!("dimension {}\n\n", fam.dimension());
                for b in &basis {
                    s.push_str(&format!("- {b}\n"));
                }
                s
            })?)
        }
        Command::H1 { n, shift, lambda, lambda_root, root_index, degree_bound, random_checks } => {
            let opts = h1_options(*degree_bound, *random_checks);
            let lam_rat = lambda.as_deref().map(parse_rational).transpose()?;
            let twice = twice_of(shift, lam_rat.as_ref())?;
            let value = match (lam_rat, lambda_root) {
                (Some(r), _) => Some(AlgebraicScalar::rational(r)),
                (None, Some(p)) => {
                    let roots = locus_roots(&parse_scalar(p)?)?;
                    let Some(r) = roots.get(*root_index) else {
                        return usage(format!("{p} has {} roots", roots.len()));
                    };
                    Some(r.clone())
                }
                (None, None) => None,
            };
            let r = match value {
                Some(v) => h1_at(*n, twice, &v, &opts)?,
                None => h1(*n, twice, &opts)?,
            };
            ok(emit(fmt, &r, || markdown_report(&r))?)
        }
        Command::VerifyPaper { strict } => {
            let r = verify_all()?;
            let code = if *strict && r.discrepancies() > 0 { 2 } else { 0 };
            let body = emit(fmt, &r, || verification_markdown(&r))?;
            Ok(Outcome { code, body })
        }
        Command::Tables { n, max_twice_shift, degree_bound, random_checks } => {
            let opts = h1_options(*degree_bound, *random_checks);
            let mut cells = vec![];
            for n in n_range(n)? {
                let top = match max_twice_shift {
                    Some(m) => *m,
                    None => ReferenceClaims::get().table(n).map(|t| t.max_twice_shift).unwrap_or(9),
                };
                if top > MAX_TWICE_SHIFT {
                    return usage(format!("shifts above {MAX_TWICE_SHIFT}/2 are not supported"));
                }
                cells.extend((0..=top).map(|t| (n, t)));
            }
            let reports: Vec<H1Report> =
                cells.par_iter().map(|&(n, t)| h1(n, t, &opts)).collect::<Result<Vec<_>>>()?;
            let v: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "shift": r.shift,
                        "h1": r.dims.h1,
                        "cocycles": r.dims.cocycles,
                        "coboundaries": r.dims.coboundaries,
                        "resonances": r.resonances,
                        "checks_pass": r.checks.all_pass(),
                        "discrepancies": r.discrepancies,
                    })
                })
                .collect();
            ok(emit(fmt, &v, || markdown_tables(&reports))?)
        }
        Command::CheckAxioms { max_x } => {
            let table = bracket_table()?;
            let suites = run_all(*max_x)?;
            let pass = table.iter().all(|r| r.ok) && suites.iter().all(|a| a.failures == 0);
            let v = json!({ "bracket_table": table, "suites": suites, "pass": pass });
            let body = emit(fmt, &v, || axioms_md(&table, &suites))?;
            Ok(Outcome { code: if pass { 0 } else { 1 }, body })
        }
    }
}

fn write_output(path: &PathBuf, body: &str, argv: &[String]) -> std::io::Result<()> {
    std::fs::write(path, body)?;
    let stamp = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    let meta = json!({
        "generated_unix": stamp,
        "version": env!("CARGO_PKG_VERSION"),
        "argv": argv,
    });
    let mut side = path.clone().into_os_string();
    side.push(".meta.json");
    std::fs::write(PathBuf::from(side), serde_json::to_string_pretty(&meta).unwrap_or_default())
}

/// Parse arguments and run. Usage and internal errors give code 1 with the
/// diagnostic as body; `--help` and `--version` give code 0.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return Outcome { code, body: e.to_string() };
        }
    };
    let mut out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => return Outcome { code: 1, body: e.to_string() },
    };
    if let Some(path) = &cli.output {
        let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
        if let Err(e) = write_output(path, &out.body, &argv) {
            return Outcome { code: 1, body: format!("cannot write {}: {e}", path.display()) };
        }
        out.body = format!("wrote {}", path.display());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> Outcome {
        run(std::iter::once("superdensity").chain(args.iter().copied()))
    }

    #[test]
    fn bracket_of_odd_generators() {
        let o = call(&["--format", "md", "bracket", "--n", "1", "--F", "t1", "--G", "t1"]);
        assert_eq!((o.code, o.body.as_str()), (0, "1/2"));
        let o = call(&["bracket", "--n", "1", "--F", "t1", "--G", "t1"]);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["bracket"], "1/2");
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(call(&["bracket", "--n", "1", "--F", "t1^2", "--G", "t1"]).code, 1);
        assert_eq!(call(&["h1", "--n", "1"]).code, 1);
        assert_eq!(call(&["h1", "--n", "1", "--shift", "0.5"]).code, 1);
        assert_eq!(call(&["frobnicate"]).code, 1);
    }

    #[test]
    fn h1_by_mu_and_lambda() {
        let o = call(&["h1", "--n", "0", "--lambda", "0", "--mu", "1", "--random-checks", "1"]);
        assert_eq!(o.code, 0, "{}", o.body);
        let v: Value = serde_json::from_str(&o.body).unwrap();
        assert_eq!(v["dims"]["h1"], 1);
    }

    #[test]
    fn ranges() {
        assert_eq!(n_range("0..2").unwrap(), vec![0, 1, 2]);
        assert_eq!(n_range("1").unwrap(), vec![1]);
        assert!(n_range("2..1").is_err());
    }
}
