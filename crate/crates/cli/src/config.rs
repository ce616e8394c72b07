use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde_json::Value;

use mixcache::gdof_region::ChannelStrengths;
use mixcache::gndt::{integer_memory_points, rational_grid, SystemConfig};
use mixcache::rational::{parse_rational, parse_rational_list};
use mixcache::{Error, Rational};

use crate::CliError;

pub const ORDERING: &str = "0 < α_1 ≤ … ≤ α_K = 1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// JSON file with any of the flags below; flags given on the command line win
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of users
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Number of files (defaults to K)
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Normalized cache size, e.g. 1/4 or 0.25
    #[arg(long)]
    pub mu: Option<String>,
    /// Channel strengths a1,a2,...,aK (defaults to all ones)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Nominal transmit power, e.g. 1048576 or 2^20
    #[arg(long = "P")]
    pub p: Option<String>,
    /// Non-content GDoF r1,...,rK (defaults to zeros)
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<String>,
    /// Cache-size grid start:end:step
    #[arg(long = "mu-grid")]
    pub mu_grid: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file (stdout when absent)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

const KEYS: [&str; 10] = ["K", "N", "mu", "alpha", "P", "r", "mu_grid", "seed", "out", "format"];

fn value_text(key: &str, value: &Value) -> Result<String, CliError> {
    match value {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(items) => items
            .iter()
            .map(|v| value_text(key, v))
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.join(",")),
        _ => Err(CliError::Usage(format!("config key {key:?} must be a string, number or array"))),
    }
}

fn read_config(path: &Path) -> Result<Flags, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let json: Value =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("config {} is not JSON: {e}", path.display())))?;
    let Value::Object(map) = json else {
        return Err(CliError::Usage("config file must hold a JSON object".into()));
    };
    let mut flags = Flags::default();
    for (key, value) in &map {
        let key = key.replace('-', "_");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Usage(format!("unknown config key {key:?}")));
        }
        let text = value_text(&key, value)?;
        let int = |t: &str| t.parse::<u64>().map_err(|_| CliError::Usage(format!("config key {key:?} must be a nonnegative integer")));
        match key.as_str() {
            "K" => flags.k = Some(int(&text)? as usize),
            "N" => flags.n = Some(int(&text)? as usize),
            "seed" => flags.seed = Some(int(&text)?),
            "mu" => flags.mu = Some(text),
            "alpha" => flags.alpha = Some(text),
            "P" => flags.p = Some(text),
            "r" => flags.r = Some(text),
            "mu_grid" => flags.mu_grid = Some(text),
            "out" => flags.out = Some(text.into()),
            "format" => {
                flags.format = Some(
                    Format::from_str(&text, true).map_err(|_| CliError::Usage(format!("format {text:?} is not csv or json")))?,
                )
            }
            _ => unreachable!(),
        }
    }
    Ok(flags)
}

/// Validated flags, after merging the optional config file.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub mu: Option<Rational>,
    pub alpha: Option<Vec<Rational>>,
    pub power: f64,
    pub r: Option<Vec<Rational>>,
    pub mu_grid: Option<(Rational, Rational, Rational)>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: Format,
}

pub const DEFAULT_POWER: f64 = 1048576.0;

fn parse_power(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Usage(format!("power {text:?} is not a number or base^exponent"));
    let value = match text.split_once('^') {
        Some((base, exp)) => base.trim().parse::<f64>().map_err(|_| bad())?.powf(exp.trim().parse::<f64>().map_err(|_| bad())?),
        None => text.trim().parse::<f64>().map_err(|_| bad())?,
    };
    if !value.is_finite() || value <= 0.0 {
        return Err(bad());
    }
    Ok(value)
}

fn usage(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<RunConfig, CliError> {
        let file = match &flags.config {
            Some(path) => read_config(path)?,
            None => Flags::default(),
        };
        let k = flags.k.or(file.k);
        let n = flags.n.or(file.n);
        let pick = |a: &Option<String>, b: &Option<String>| a.clone().or_else(|| b.clone());
        let mu = pick(&flags.mu, &file.mu).map(|t| parse_rational(&t)).transpose().map_err(usage)?;
        let alpha = pick(&flags.alpha, &file.alpha).map(|t| parse_rational_list(&t)).transpose().map_err(usage)?;
        let r = pick(&flags.r, &file.r).map(|t| parse_rational_list(&t)).transpose().map_err(usage)?;
        let power = pick(&flags.p, &file.p).map(|t| parse_power(&t)).transpose()?.unwrap_or(DEFAULT_POWER);
        let mu_grid = pick(&flags.mu_grid, &file.mu_grid).map(|t| parse_grid(&t)).transpose()?;
        if k == Some(0) || n == Some(0) {
            return Err(CliError::Usage("K and N must be at least 1".into()));
        }
        Ok(RunConfig {
            k,
            n,
            mu,
            alpha,
            power,
            r,
            mu_grid,
            seed: flags.seed.or(file.seed).unwrap_or(0),
            out: flags.out.clone().or(file.out),
            format: flags.format.or(file.format).unwrap_or(Format::Csv),
        })
    }

    pub fn users(&self) -> Result<usize, CliError> {
        self.k
            .or_else(|| self.alpha.as_ref().map(Vec::len))
            .ok_or_else(|| CliError::Usage("--K is required".into()))
    }

    pub fn files(&self) -> Result<usize, CliError> {
        Ok(self.n.unwrap_or(self.users()?))
    }

    pub fn strengths(&self) -> Result<ChannelStrengths, CliError> {
        let k = self.users()?;
        let Some(alpha) = &self.alpha else {
            return Ok(ChannelStrengths::symmetric(k));
        };
        if alpha.len() != k {
            return Err(CliError::Usage(format!("--alpha has {} entries but K = {k}", alpha.len())));
        }
        ChannelStrengths::new(alpha.clone()).map_err(|e| match e {
            Error::Normalization(detail) => {
                CliError::Usage(format!("channel strengths must satisfy {ORDERING} ({detail})"))
            }
            other => usage(other),
        })
    }

    pub fn unicast(&self) -> Result<Vec<Rational>, CliError> {
        let k = self.users()?;
        match &self.r {
            None => Ok(vec![Rational::from_integer(0.into()); k]),
            Some(r) if r.len() == k => Ok(r.clone()),
            Some(r) => Err(CliError::Usage(format!("--r has {} entries but K = {k}", r.len()))),
        }
    }

    pub fn mu_or_zero(&self) -> Rational {
        self.mu.clone().unwrap_or_else(|| Rational::from_integer(0.into()))
    }

    pub fn system(&self) -> Result<SystemConfig, CliError> {
        SystemConfig::new(self.users()?, self.files()?, self.mu_or_zero(), self.strengths()?, self.power).map_err(usage)
    }

    /// Cache sizes to sweep: the grid, else `--mu`, else `fallback` or every integer `K mu`.
    pub fn memory_points(&self, fallback: Option<&str>) -> Result<Vec<Rational>, CliError> {
        if let Some((start, end, step)) = &self.mu_grid {
            return rational_grid(start, end, step).map_err(usage);
        }
        if let Some(mu) = &self.mu {
            return Ok(vec![mu.clone()]);
        }
        match fallback {
            Some(grid) => {
                let (start, end, step) = parse_grid(grid)?;
                rational_grid(&start, &end, &step).map_err(usage)
            }
            None => Ok(integer_memory_points(self.users()?)),
        }
    }
}

fn parse_grid(text: &str) -> Result<(Rational, Rational, Rational), CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!("grid {text:?} is not start:end:step")));
    }
    let p = |s: &str| parse_rational(s).map_err(usage);
    let (start, end, step) = (p(parts[0])?, p(parts[1])?, p(parts[2])?);
    let zero = Rational::from_integer(0.into());
    if step <= zero || start > end {
        return Err(CliError::Usage(format!("grid {text:?} needs start <= end and a positive step")));
    }
    Ok((start, end, step))
}
