//! Flat JSON configuration, command-line overrides and the output directory.

use std::path::{Path, PathBuf};

use hallbench::finitary::Window;
use hallbench::grammar::Backend;
use serde::Deserialize;

use crate::CliError;

/// Environment variable overriding the output directory.
pub const OUT_ENV: &str = "HALLBENCH_OUT";

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub struct Config {
    pub q: Option<u32>,
    pub backend: Option<String>,
    pub max_rank: Option<i64>,
    pub min_deg: Option<i64>,
    pub max_deg: Option<i64>,
    pub max_torsion: Option<i64>,
    pub suites: Option<Vec<String>>,
    pub output: Option<PathBuf>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Config, CliError> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn q(&self, flag: Option<u32>) -> u32 {
        flag.or(self.q).unwrap_or(2)
    }

    pub fn backend(&self, flag: Option<&str>, q: u32) -> Result<Backend, CliError> {
        let name = flag.or(self.backend.as_deref()).unwrap_or("coh-p1");
        Ok(Backend::by_name(name, q)?)
    }

    pub fn out_dir(&self) -> PathBuf {
        std::env::var_os(OUT_ENV).map(PathBuf::from).or_else(|| self.output.clone()).unwrap_or_else(|| PathBuf::from("hallbench-out"))
    }
}

/// Window flags shared by the algebra verbs.
#[derive(clap::Args, Clone, Debug, Default)]
pub struct WindowArgs {
    /// Rank cap (P¹) or total dimension cap (quivers).
    #[arg(long)]
    pub max_rank: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub min_deg: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub max_deg: Option<i64>,
    /// Torsion length cap.
    #[arg(long)]
    pub max_torsion: Option<i64>,
}

impl WindowArgs {
    /// Flags, then config, then per-backend defaults.
    pub fn window(&self, cfg: &Config, backend: &Backend) -> Result<Window, CliError> {
        let (r, lo, hi, t) = match backend {
            Backend::Coh(_) => (2, -3, 3, 3),
            Backend::Local(_) => (0, 0, 0, 4),
            Backend::Quiver(_) => (4, 0, 0, 0),
        };
        Ok(Window::new(
            self.max_rank.or(cfg.max_rank).unwrap_or(r),
            self.min_deg.or(cfg.min_deg).unwrap_or(lo),
            self.max_deg.or(cfg.max_deg).unwrap_or(hi),
            self.max_torsion.or(cfg.max_torsion).unwrap_or(t),
        )?)
    }
}

/// Parses `a..b` or `a..=b`, both inclusive.
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: i64 = a.trim().parse().map_err(|_| format!("bad range start {a:?}"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad range end {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s:?}"));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-2..2"), Ok((-2, 2)));
        assert_eq!(parse_range("0..=3"), Ok((0, 3)));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn config_rejects_unknown_keys() {
        assert!(serde_json::from_str::<Config>(r#"{"q": 3, "colour": 1}"#).is_err());
        let c: Config = serde_json::from_str(r#"{"q": 3, "min_deg": -2}"#).unwrap();
        assert_eq!(c.q(None), 3);
        assert_eq!(c.q(Some(5)), 5);
    }
}
