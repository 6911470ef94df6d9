//! Batch runs described by a plain `key = value` file:
//!
//! ```text
//! # lines starting with '#' are ignored
//! checks = cycle, star, path:1:4, structural:C4, lemmas
//! n_range = 5..9
//! sep = 1e-9
//! jobs = 4
//! out = reports
//! ```
//!
//! `checks` may be repeated; its entries are appended. Check tokens:
//! `cycle` (every `3 <= l <= n` for `n` in `n_range`), `cycle:<n>:<l>`,
//! `star` (patterns `P4`, `2K2`, `C3`), `path:<t>:<l>`, `structural:<pattern>`,
//! `lemma:<name>` and `lemmas` (every suite at its default range).

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::recognition::ForbiddenPattern;
use crate::spectral::DEFAULT_SEP;

use super::checks::{
    structural_check, verify_cycle_theorem, verify_path_theorem, verify_star_theorem,
    ConstructionProvider, StandardConstructions,
};
use super::lemmas::{check_lemma, LemmaName};
use super::report::{Status, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CheckSpec {
    Cycle { n: usize, l: usize },
    Star { n: usize, pattern: ForbiddenPattern },
    Path { n: usize, t: usize, l: usize },
    Structural { n: usize, pattern: ForbiddenPattern },
    Lemma { name: LemmaName },
}

impl CheckSpec {
    pub fn run(&self, sep: f64, provider: &dyn ConstructionProvider) -> Result<VerificationReport> {
        match *self {
            CheckSpec::Cycle { n, l } => verify_cycle_theorem(n, l, sep, provider),
            CheckSpec::Star { n, pattern } => verify_star_theorem(n, pattern, sep),
            CheckSpec::Path { n, t, l } => verify_path_theorem(n, t, l, sep, provider),
            CheckSpec::Structural { n, pattern } => structural_check(n, pattern, sep),
            CheckSpec::Lemma { name } => check_lemma(name, None, sep),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub checks: Vec<CheckSpec>,
    pub sep: f64,
    pub jobs: usize,
    pub out: PathBuf,
}

fn config_err(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

fn parse_range(text: &str, line: usize) -> Result<(usize, usize)> {
    let bad = || config_err(line, format!("n_range must look like 5..9, got '{text}'"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    if a > b || a == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn num<T: std::str::FromStr>(text: &str, line: usize, what: &str) -> Result<T> {
    text.trim()
        .parse()
        .map_err(|_| config_err(line, format!("invalid {what} '{text}'")))
}

impl CampaignConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens: Vec<(usize, String)> = Vec::new();
        let mut range = (5, 9);
        let mut sep = DEFAULT_SEP;
        let mut jobs = 0;
        let mut out = PathBuf::from("reports");
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| config_err(line, "expected 'key = value'"))?;
            let value = value.trim();
            match key.trim() {
                "checks" => tokens.extend(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|t| !t.is_empty())
                        .map(|t| (line, t.to_string())),
                ),
                "n_range" => range = parse_range(value, line)?,
                "sep" => {
                    sep = num(value, line, "separation")?;
                    if !(sep > 0.0) {
                        return Err(config_err(line, "sep must be positive"));
                    }
                }
                "jobs" => jobs = num(value, line, "job count")?,
                "out" => out = PathBuf::from(value),
                other => return Err(config_err(line, format!("unknown key '{other}'"))),
            }
        }
        let mut checks = Vec::new();
        for (line, token) in tokens {
            expand(&token, range, line, &mut checks)?;
        }
        Ok(CampaignConfig {
            checks,
            sep,
            jobs,
            out,
        })
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}

fn pattern_arg(text: &str, line: usize) -> Result<ForbiddenPattern> {
    text.parse()
        .map_err(|e: Error| config_err(line, e.to_string()))
}

fn expand(
    token: &str,
    (lo, hi): (usize, usize),
    line: usize,
    out: &mut Vec<CheckSpec>,
) -> Result<()> {
    let parts: Vec<&str> = token.split(':').collect();
    match parts.as_slice() {
        ["cycle"] => {
            for n in lo..=hi {
                out.extend((3..=n).map(|l| CheckSpec::Cycle { n, l }));
            }
        }
        ["cycle", n, l] => out.push(CheckSpec::Cycle {
            n: num(n, line, "order")?,
            l: num(l, line, "length")?,
        }),
        ["star"] => {
            for n in lo..=hi {
                for p in ["P4", "2K2", "C3"] {
                    out.push(CheckSpec::Star {
                        n,
                        pattern: p.parse()?,
                    });
                }
            }
        }
        ["path", t, l] => {
            let (t, l): (usize, usize) = (num(t, line, "t")?, num(l, line, "length")?);
            ForbiddenPattern::path_union(t, l).map_err(|e| config_err(line, e.to_string()))?;
            out.extend(
                (lo..=hi)
                    .filter(|&n| t * l < n)
                    .map(|n| CheckSpec::Path { n, t, l }),
            );
        }
        ["structural", p] => {
            let pattern = pattern_arg(p, line)?;
            out.extend((lo..=hi).map(|n| CheckSpec::Structural { n, pattern }));
        }
        ["lemma", name] => out.push(CheckSpec::Lemma {
            name: name.parse()?,
        }),
        ["lemmas"] => out.extend(
            LemmaName::ALL
                .into_iter()
                .map(|name| CheckSpec::Lemma { name }),
        ),
        _ => return Err(config_err(line, format!("unknown check '{token}'"))),
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct CampaignOutcome {
    pub reports: Vec<VerificationReport>,
    pub summary: PathBuf,
    /// 0 when no check was refuted, 1 otherwise.
    pub exit_code: i32,
}

pub fn run_campaign(config_path: &Path) -> Result<CampaignOutcome> {
    run_campaign_with(
        &CampaignConfig::from_file(config_path)?,
        &StandardConstructions,
    )
}

/// Runs every check on a pool of `config.jobs` threads (all cores when 0),
/// writes one JSON report per check and `summary.csv` into `config.out`.
pub fn run_campaign_with(
    config: &CampaignConfig,
    provider: &dyn ConstructionProvider,
) -> Result<CampaignOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("thread pool: {e}")))?;
    let reports: Vec<VerificationReport> = pool.install(|| {
        config
            .checks
            .par_iter()
            .map(|c| c.run(config.sep, provider))
            .collect::<Result<_>>()
    })?;
    std::fs::create_dir_all(&config.out)?;
    for r in &reports {
        r.write_to(&config.out)?;
    }
    let summary = config.out.join("summary.csv");
    write_summary(&summary, &reports)?;
    let exit_code = i32::from(reports.iter().any(|r| r.status == Status::Refuted));
    Ok(CampaignOutcome {
        reports,
        summary,
        exit_code,
    })
}

pub fn write_summary(path: &Path, reports: &[VerificationReport]) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(e.to_string()))?;
    w.write_record(["check_id", "status", "margin", "runtime_ms"])
        .map_err(|e| Error::Io(e.to_string()))?;
    for r in reports {
        let margin = r.margin.map(|m| format!("{m:e}")).unwrap_or_default();
        w.write_record([
            r.check_id.clone(),
            r.status.to_string(),
            margin,
            r.runtime_ms.to_string(),
        ])
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_expands() {
        let c = CampaignConfig::parse(
            "# demo\nchecks = cycle, lemma:qmu\nchecks = path:2:3\nn_range = 5..6\nsep = 1e-8\njobs = 2\nout = /tmp/x\n",
        )
        .unwrap();
        assert_eq!(c.sep, 1e-8);
        assert_eq!(c.jobs, 2);
        assert_eq!(c.out, PathBuf::from("/tmp/x"));
        // cycle: n = 5 gives 3 cells, n = 6 gives 4; path 2P3 needs n >= 7
        assert_eq!(c.checks.len(), 3 + 4 + 1);
        assert_eq!(c.checks[0], CheckSpec::Cycle { n: 5, l: 3 });
        assert_eq!(
            c.checks[7],
            CheckSpec::Lemma {
                name: LemmaName::Qmu
            }
        );
    }

    #[test]
    fn line_numbered_errors() {
        let err = CampaignConfig::parse("sep = 1e-9\n\nbogus = 3\n").unwrap_err();
        assert_eq!(
            err,
            Error::Config {
                line: 3,
                message: "unknown key 'bogus'".into()
            }
        );
        let err = CampaignConfig::parse("checks = cycle:5\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 1, .. }));
        let err = CampaignConfig::parse("n_range = 9..5\n").unwrap_err();
        assert!(matches!(err, Error::Config { line: 1, .. }));
        assert!(matches!(
            CampaignConfig::parse("checks = lemma:zzz").unwrap_err(),
            Error::UnknownCheck(_)
        ));
    }

    #[test]
    fn empty_campaign() {
        let dir = tempfile::tempdir().unwrap();
        let text = format!("checks =\nout = {}\n", dir.path().display());
        let out = run_campaign_with(
            &CampaignConfig::parse(&text).unwrap(),
            &StandardConstructions,
        )
        .unwrap();
        assert_eq!(out.exit_code, 0);
        assert!(out.reports.is_empty());
        assert_eq!(
            std::fs::read_to_string(out.summary).unwrap().trim(),
            "check_id,status,margin,runtime_ms"
        );
    }
}
