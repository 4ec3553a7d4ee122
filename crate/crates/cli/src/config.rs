//! Run configuration: defaults, then the JSON config file, then flags.

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Verify,
    Rates,
    Tightness,
    Tensor,
    Poincare,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Verify => "verify",
            Command::Rates => "rates",
            Command::Tightness => "tightness",
            Command::Tensor => "tensor",
            Command::Poincare => "poincare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "mpspec", version, about = "Verification suites for Meixner-Pollaczek expansions")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Weight name (sech, nu2, nu3, two-sided-exp, gaussian, ...)
    #[arg(long)]
    pub weight: Option<String>,
    /// Degree cap
    #[arg(long = "N")]
    pub degree: Option<usize>,
    /// Gauss rule size
    #[arg(long)]
    pub rule: Option<usize>,
    /// λ grid, comma separated
    #[arg(long)]
    pub lambda: Option<String>,
    /// n grid, comma separated; "8,16,...,512" continues the progression
    #[arg(long)]
    pub n: Option<String>,
    /// Test function for `rates`
    #[arg(long = "f")]
    pub function: Option<String>,
    /// Coefficient sequence for `tightness` (constant, log, loglog)
    #[arg(long)]
    pub sequence: Option<String>,
    /// Relative tolerance override for identity checks
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Fields accepted in the JSON config file; all optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    weight: Option<String>,
    #[serde(rename = "N")]
    degree: Option<usize>,
    rule: Option<usize>,
    lambda: Option<Vec<f64>>,
    n: Option<Vec<usize>>,
    function: Option<String>,
    sequence: Option<String>,
    tol: Option<f64>,
    out: Option<PathBuf>,
    format: Option<Format>,
    seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub weight: String,
    #[serde(rename = "N")]
    pub degree: usize,
    pub rule: usize,
    pub lambda: Vec<f64>,
    pub n: Vec<usize>,
    pub function: String,
    pub sequence: String,
    pub tol: f64,
    pub out: PathBuf,
    pub format: Format,
    pub seed: u64,
}

/// Parse "a,b,c" with an optional "..." continuing the progression of the
/// leading terms up to the final term (geometric when the first two terms
/// have an integer ratio above 1 and no third term says otherwise).
pub fn parse_usize_grid(s: &str) -> Result<Vec<usize>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    let Some(dots) = parts.iter().position(|p| *p == "...") else {
        return parts.iter().map(|p| p.parse::<usize>().map_err(|e| format!("bad grid entry '{p}': {e}"))).collect();
    };
    if dots < 2 || dots + 2 != parts.len() {
        return Err(format!("'{s}': '...' needs two leading terms and one final term"));
    }
    let head: Vec<usize> = parts[..dots]
        .iter()
        .map(|p| p.parse::<usize>().map_err(|e| format!("bad grid entry '{p}': {e}")))
        .collect::<Result<_, _>>()?;
    let last: usize = parts[dots + 1].parse().map_err(|e| format!("bad grid entry '{}': {e}", parts[dots + 1]))?;
    let (a, b) = (head[0], head[1]);
    let geometric = a > 0 && b > a && b % a == 0 && head.windows(2).all(|w| w[1] == w[0] * (b / a));
    let arithmetic = b > a && head.windows(2).all(|w| w[1] - w[0] == b - a);
    let mut out = head.clone();
    let mut x = *head.last().unwrap();
    loop {
        x = if geometric {
            x * (b / a)
        } else if arithmetic {
            x + (b - a)
        } else {
            return Err(format!("'{s}': leading terms are not a progression"));
        };
        if x > last {
            break;
        }
        out.push(x);
    }
    if *out.last().unwrap() != last {
        return Err(format!("'{s}': the progression does not reach {last}"));
    }
    Ok(out)
}

pub fn parse_f64_grid(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<f64>().map_err(|e| format!("bad grid entry '{p}': {e}")))
        .collect()
}

fn sorted_nonempty<T: PartialOrd>(name: &str, v: &[T]) -> Result<(), String> {
    if v.is_empty() {
        return Err(format!("{name} grid is empty"));
    }
    if v.windows(2).any(|w| w[1] <= w[0]) {
        return Err(format!("{name} grid must be strictly increasing"));
    }
    Ok(())
}

fn read_file(path: &Path) -> Result<FileConfig, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("malformed config {}: {e}", path.display()))
}

impl RunConfig {
    pub fn resolve(cli: Cli) -> Result<Self, String> {
        let file = match &cli.config {
            Some(p) => read_file(p)?,
            None => FileConfig::default(),
        };
        let command = cli.command;
        let (default_n, default_lambda): (Vec<usize>, Vec<f64>) = match command {
            Command::Rates => ((3..=9).map(|p| 1usize << p).collect(), vec![1.0]),
            Command::Tightness => (vec![2, 8, 32, 128], vec![1.0, 1.5, 2.0, 2.5, 3.0]),
            Command::Poincare => (vec![8001], vec![0.5, 2.0]),
            _ => (vec![8, 16, 32], vec![1.0]),
        };
        let default_degree = match command {
            Command::Tensor => 16,
            Command::Rates | Command::Tightness => 512,
            _ => 64,
        };
        let n = match &cli.n {
            Some(s) => parse_usize_grid(s)?,
            None => file.n.unwrap_or(default_n),
        };
        let lambda = match &cli.lambda {
            Some(s) => parse_f64_grid(s)?,
            None => file.lambda.unwrap_or(default_lambda),
        };
        let degree = cli.degree.or(file.degree).unwrap_or(default_degree);
        let rule = cli.rule.or(file.rule).unwrap_or((degree + 1).max(200));
        let format = cli.format.or(file.format).unwrap_or(Format::Csv);
        let ext = match format {
            Format::Csv => "csv",
            Format::Json => "json",
        };
        let cfg = RunConfig {
            command,
            weight: cli.weight.or(file.weight).unwrap_or_else(|| "sech".into()),
            degree,
            rule,
            lambda,
            n,
            function: cli.function.or(file.function).unwrap_or_else(|| "abs_clip".into()),
            sequence: cli.sequence.or(file.sequence).unwrap_or_else(|| "loglog".into()),
            tol: cli.tol.or(file.tol).unwrap_or(1e-8),
            out: cli
                .out
                .or(file.out)
                .unwrap_or_else(|| PathBuf::from(format!("mpspec-{}.{ext}", command.name()))),
            format,
            seed: cli.seed.or(file.seed).unwrap_or(0),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), String> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(format!("tolerance must be positive, got {}", self.tol));
        }
        sorted_nonempty("n", &self.n)?;
        sorted_nonempty("lambda", &self.lambda)?;
        if self.degree == 0 {
            return Err("N must be at least 1".into());
        }
        if self.command == Command::Verify && self.rule <= self.degree {
            return Err(format!("rule size {} must exceed N = {}", self.rule, self.degree));
        }
        if self.command == Command::Tensor && self.degree > mpspec::tensor::AXIS_DEGREE_CAP {
            return Err(format!("tensor degree is capped at {}", mpspec::tensor::AXIS_DEGREE_CAP));
        }
        if mpspec::measures::Weight::from_name(&self.weight).is_err() {
            return Err(format!("unknown weight '{}'", self.weight));
        }
        if !["constant", "log", "loglog"].contains(&self.sequence.as_str()) {
            return Err(format!("unknown sequence '{}'", self.sequence));
        }
        if !crate::suites::RATE_FUNCTIONS.contains(&self.function.as_str()) {
            return Err(format!("unknown test function '{}'", self.function));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        assert_eq!(parse_usize_grid("8,16,...,512").unwrap(), vec![8, 16, 32, 64, 128, 256, 512]);
        assert_eq!(parse_usize_grid("8,16,24,...,40").unwrap(), vec![8, 16, 24, 32, 40]);
        assert_eq!(parse_usize_grid("3,5,9").unwrap(), vec![3, 5, 9]);
        assert!(parse_usize_grid("8,16,...,100").is_err());
        assert!(parse_usize_grid("-1").is_err());
        assert_eq!(parse_f64_grid("1, 1.5,2").unwrap(), vec![1.0, 1.5, 2.0]);
    }

    #[test]
    fn flags_win_over_file() {
        let dir = std::env::temp_dir().join(format!("mpspec-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"N": 20, "seed": 3, "weight": "nu2"}"#).unwrap();
        let cli = Cli::parse_from(["mpspec", "verify", "--N", "30", "--config", path.to_str().unwrap()]);
        let c = RunConfig::resolve(cli).unwrap();
        assert_eq!((c.degree, c.seed, c.weight.as_str()), (30, 3, "nu2"));
        std::fs::write(&path, r#"{"bogus": 1}"#).unwrap();
        let cli = Cli::parse_from(["mpspec", "verify", "--config", path.to_str().unwrap()]);
        assert!(RunConfig::resolve(cli).is_err());
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
