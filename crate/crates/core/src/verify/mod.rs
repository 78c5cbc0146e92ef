//! Exhaustive checks of the identities relating Bessel functions, base change
//! and the duality involution, assembled into reports; plus the CLI.

pub mod checks;
pub mod cli;
pub mod context;
pub mod report;

use clap::ValueEnum;

pub use checks::{
    cross_tabulate, involution_on_cells, involution_on_support, involution_on_weyl, lambda_of, mu_of, verify_contragredient, verify_counting, verify_involution, verify_kawanaka,
    verify_main, verify_multiplicity, verify_norm, verify_oracle, verify_support,
};
pub use cli::run_cli;
pub use context::{Config, Context};
pub use report::{GridReport, Report, ReportConfig, Row, Summary};

use crate::error::Result;
use crate::matgrp::Family;

/// Which group of checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Main,
    Counting,
    Involution,
    Contragredient,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Main => "main",
            Suite::Counting => "counting",
            Suite::Involution => "involution",
            Suite::Contragredient => "contragredient",
            Suite::All => "all",
        }
    }
}

/// The configurations `verify` runs when none is given.
pub fn default_grid() -> Vec<(Family, usize, u32)> {
    vec![(Family::Gl, 2, 2), (Family::U, 2, 2), (Family::Sl, 2, 2), (Family::Gl, 3, 2), (Family::Gl, 2, 3)]
}

/// Table cap used by `verify`, large enough for `GL_3(F_4)`.
pub const VERIFY_TABLE_CAP: usize = 200_000;

type Check = fn(&Context) -> Vec<Row>;

/// Runs one suite on one configuration.
pub fn run_suite(ctx: &Context, suite: Suite) -> Report {
    let all = suite == Suite::All;
    let wanted = |s: Suite| all || suite == s;
    let mut checks: Vec<(&str, Check)> = Vec::new();
    if wanted(Suite::Main) {
        checks.push(("main", verify_main));
    }
    if wanted(Suite::Counting) {
        checks.push(("counting", verify_counting));
    }
    if wanted(Suite::Involution) {
        checks.push(("involution", verify_involution));
    }
    if wanted(Suite::Contragredient) {
        checks.push(("contragredient", verify_contragredient));
    }
    if all {
        checks.extend([
            ("support", verify_support as Check),
            ("multiplicity", verify_multiplicity),
            ("kawanaka", verify_kawanaka),
            ("norm", verify_norm),
            ("oracle", verify_oracle),
            ("crosstab", cross_tabulate),
        ]);
    }
    let mut rows = Vec::new();
    for (name, check) in checks {
        let start = std::time::Instant::now();
        rows.extend(check(ctx));
        log::debug!("{name} on {} took {:.2?}", ctx.config.label(), start.elapsed());
    }
    let c = &ctx.config;
    let config = ReportConfig {
        family: c.family.to_string(),
        n: c.n,
        q: c.q,
        beta: format!("{:#x}", ctx.beta().0),
        beta_f: "0x1".into(),
        seed: c.seed,
        tol: c.tol,
        zero_tol: c.zero_tol,
        table_cap: c.table_cap,
        model_cap: c.model_cap,
    };
    Report { config, summary: Summary::of(&rows), rows, provenance: ctx.cache_keys() }
}

/// Runs one suite over several configurations, in order.
pub fn run_grid(suite: Suite, configs: Vec<Config>) -> Result<GridReport> {
    let mut reports = Vec::new();
    for config in configs {
        log::info!("verify {} on {}", suite.name(), config.label());
        let ctx = Context::new(config)?;
        reports.push(run_suite(&ctx, suite));
    }
    Ok(GridReport::new(&format!("verify {}", suite.name()), reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_checks_pass_on_gl2_f4() {
        let ctx = Context::new(Config::new(Family::Gl, 2, 2)).unwrap();
        let report = run_suite(&ctx, Suite::All);
        let failed: Vec<&str> = report.rows.iter().filter(|r| r.asserted && !r.pass).map(|r| r.name.as_str()).collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert!(report.summary.asserted > 50);
        // Rerunning on a fresh context gives the same report.
        let again = run_suite(&Context::new(Config::new(Family::Gl, 2, 2)).unwrap(), Suite::All);
        assert_eq!(report, again);
    }

    #[test]
    fn sl_skips_the_norm_map() {
        let ctx = Context::new(Config::new(Family::Sl, 2, 2)).unwrap();
        let rows = verify_norm(&ctx);
        assert!(rows.iter().all(|r| !r.asserted));
        assert!(run_suite(&ctx, Suite::Main).passed());
    }
}
