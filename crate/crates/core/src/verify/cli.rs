use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classchar::DEFAULT_TABLE_CAP;
use crate::error::{Error, Result};
use crate::matgrp::{bessel_relevant, Family, Over, Selector};
use crate::verify::{default_grid, run_grid, Config, Context, Suite, VERIFY_TABLE_CAP};
use crate::whittaker::bessel;

#[derive(Parser, Debug)]
#[command(name = "bessellab", version, about = "Bessel functions, base change and distinction for small finite groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn parse_hex(s: &str) -> std::result::Result<u8, String> {
    let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
    u8::from_str_radix(digits, 16).map_err(|e| format!("{s}: {e}"))
}

#[derive(Args, Debug)]
struct GroupArgs {
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: u32,
    /// Parameter of ψ over E as a hex field code (default: least trace-zero unit).
    #[arg(long, value_parser = parse_hex)]
    beta: Option<u8>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long)]
    table_cap: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WhichGroup {
    Ge,
    Gf,
    Gop,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Domain {
    E,
    F,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the orders of the groups attached to a configuration.
    Datum {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Compute (or load) a character table.
    Chartable {
        #[command(flatten)]
        cfg: GroupArgs,
        #[arg(long, value_enum, default_value = "ge")]
        group: WhichGroup,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Tabulate the Bessel function of a generic irreducible as CSV.
    Bessel {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        pi: usize,
        /// Work with G(E) and ψ over E, or with G(F) and ψ over F.
        #[arg(long, value_enum, default_value = "e")]
        over: Domain,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Match σ-invariant generic irreducibles of G(E) with irreducibles of G^op(F).
    Basechange {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run checks and write a JSON report; without a configuration the default grid is used.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_parser = parse_family, requires_all = ["n", "q"])]
        family: Option<Family>,
        #[arg(long, requires_all = ["family", "q"])]
        n: Option<usize>,
        #[arg(long, requires_all = ["family", "n"])]
        q: Option<u32>,
        #[arg(long, value_parser = parse_hex)]
        beta: Option<u8>,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn config(group: &GroupArgs, run: &RunArgs, default_cap: usize) -> Config {
    let mut c = Config::new(group.family, group.n, group.q);
    c.beta = group.beta;
    c.seed = run.seed;
    c.tol = run.tol;
    c.table_cap = run.table_cap.unwrap_or(default_cap);
    c.cache_dir = run.cache_dir.clone();
    c
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn datum_text(group: &GroupArgs) -> Result<String> {
    let ctx = Context::new(config(group, &RunArgs { cache_dir: None, seed: 1, tol: 1e-6, table_cap: None, out: None }, 0))?;
    let d = &ctx.d;
    let mut out = String::new();
    writeln!(out, "family {}\nn {}\nq {}\nE order {}", d.family(), d.n(), d.q(), d.ext().order()).unwrap();
    writeln!(out, "beta {:#x}", ctx.beta().0).unwrap();
    writeln!(out, "|G(E)| {}", d.ge_order()).unwrap();
    for (name, sel) in [
        ("|G(F)|", Selector::GF),
        ("|G^op(F)|", Selector::GopF),
        ("|X_sigma|", Selector::Xsigma),
        ("|U(E)|", Selector::UE),
        ("|U(F)|", Selector::UF),
        ("|T(E)|", Selector::TE),
        ("|T(F)|", Selector::TF),
    ] {
        match d.enumerate(sel) {
            Ok(v) => writeln!(out, "{name} {}", v.len()).unwrap(),
            Err(e) => writeln!(out, "{name} unavailable ({e})").unwrap(),
        }
    }
    writeln!(out, "relevant cells {}", bessel_relevant(d)?.len()).unwrap();
    Ok(out)
}

fn chartable_text(ctx: &Context, which: WhichGroup) -> Result<String> {
    let data = match which {
        WhichGroup::Ge => ctx.ge_data()?,
        WhichGroup::Gf => ctx.gf_data()?,
        WhichGroup::Gop => ctx.gop_data()?,
    };
    let ext = ctx.d.ext();
    let doc = serde_json::json!({
        "order": data.classes.order(),
        "seed": data.table.seed,
        "classes": data.classes.reps.iter().zip(&data.classes.sizes).map(|(r, s)| {
            serde_json::json!({ "rep": r.encode(ext), "size": s })
        }).collect::<Vec<_>>(),
        "degrees": data.table.degrees,
        "chars": data.table.chars.iter().map(|row| row.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn bessel_text(ctx: &Context, pi: usize, over: Domain) -> Result<String> {
    let d = &ctx.d;
    let (data, psi, units, domain, o) = match over {
        Domain::E => (ctx.ge_data()?, ctx.psi_e()?, ctx.units_e()?, ctx.ge()?, Over::E),
        Domain::F => (ctx.gf_data()?, ctx.psi_f()?, ctx.units_f()?, ctx.gf()?, Over::F),
    };
    if pi >= data.table.len() {
        return Err(Error::OutOfRange(format!("pi = {pi} with {} irreducibles", data.table.len())));
    }
    let b = bessel(d, &data.classes, &data.table, pi, &psi, &units, &domain, ctx.config.tol)?;
    b.to_csv(d, o, ctx.config.zero_tol)
}

fn basechange_text(ctx: &Context) -> Result<String> {
    let bc = ctx.base_change()?;
    Ok(bc.to_text(&ctx.ge_data()?.table, &ctx.gop_data()?.table, &*ctx.norm()?))
}

/// Entry point of the `bessellab` binary; returns the process exit code:
/// 0 on success, 1 when an asserted check fails, 2 on usage errors and 3 on
/// runtime errors.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(passed) => {
            if passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            3
        }
    }
}

fn execute(command: Command) -> Result<bool> {
    match command {
        Command::Datum { group } => {
            print!("{}", datum_text(&group)?);
            Ok(true)
        }
        Command::Chartable { cfg, group, run } => {
            let ctx = Context::new(config(&cfg, &run, DEFAULT_TABLE_CAP))?;
            emit(&chartable_text(&ctx, group)?, &run.out)?;
            Ok(true)
        }
        Command::Bessel { group, pi, over, run } => {
            let ctx = Context::new(config(&group, &run, DEFAULT_TABLE_CAP))?;
            emit(&bessel_text(&ctx, pi, over)?, &run.out)?;
            Ok(true)
        }
        Command::Basechange { group, run } => {
            let ctx = Context::new(config(&group, &run, DEFAULT_TABLE_CAP))?;
            emit(&basechange_text(&ctx)?, &run.out)?;
            Ok(true)
        }
        Command::Verify { suite, family, n, q, beta, run } => {
            let configs: Vec<Config> = match (family, n, q) {
                (Some(family), Some(n), Some(q)) => {
                    vec![config(&GroupArgs { family, n, q, beta }, &run, VERIFY_TABLE_CAP)]
                }
                _ => default_grid()
                    .into_iter()
                    .map(|(family, n, q)| config(&GroupArgs { family, n, q, beta }, &run, VERIFY_TABLE_CAP))
                    .collect(),
            };
            let report = run_grid(suite, configs)?;
            emit(&(report.to_json() + "\n"), &run.out)?;
            Ok(report.passed())
        }
    }
}
