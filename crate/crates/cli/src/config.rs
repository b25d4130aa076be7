use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{usage, CliError, CliResult};
use laurent_lab::Rational;

/// Environment variable holding the default `--budget`.
pub const BUDGET_ENV: &str = "LAURENT_LAB_BUDGET";
pub const DEFAULT_BUDGET: u64 = 1 << 20;
pub const DEFAULT_PRECISION_BITS: u32 = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    DegreeScan,
    DegreeCertify,
    FedjaBuild,
    ExplodeRun,
    ExplodeGrid,
    SimCurve,
    SimGrover,
    SimBirthday,
    SimProject,
    TraceCompute,
    TraceMink,
    TraceScan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::DegreeScan => "degree scan",
            Command::DegreeCertify => "degree certify",
            Command::FedjaBuild => "fedja build",
            Command::ExplodeRun => "explode run",
            Command::ExplodeGrid => "explode grid",
            Command::SimCurve => "sim curve",
            Command::SimGrover => "sim grover",
            Command::SimBirthday => "sim birthday",
            Command::SimProject => "sim project",
            Command::TraceCompute => "trace compute",
            Command::TraceMink => "trace mink",
            Command::TraceScan => "trace scan",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SeedSide {
    U,
    V,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum AlgorithmArg {
    Projection,
    Collision,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Auto,
    Brute,
    Symmetric,
}

/// Command parameters; absent keys take per-command defaults.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_u: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_v: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub du_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dv_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_rounds: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed_side: Option<SeedSide>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blowup_threshold: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub copies: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub queries: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algorithm: Option<AlgorithmArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodArg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threshold: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<bool>,
}

macro_rules! overlay {
    ($base:expr, $top:expr, $($f:ident),*) => {
        $(if $top.$f.is_some() { $base.$f = $top.$f.clone(); })*
    };
}

impl Parameters {
    /// Fields set in `top` replace those in `self`.
    pub fn overlay(&mut self, top: &Parameters) {
        overlay!(
            self, top, w, n, l, k, k_cap, degree, deg_u, deg_v, du_cap, dv_cap, max_rounds,
            seed_side, blowup_threshold, copies, queries, trials, algorithm, method, threshold,
            cross_check
        );
    }
}

/// Everything needed to rerun a command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: Command,
    pub parameters: Parameters,
    pub seed: u64,
    pub precision_bits: u32,
    pub budget: u64,
    pub output_format: OutputFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_path: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            parameters: Parameters::default(),
            seed: 0,
            precision_bits: DEFAULT_PRECISION_BITS,
            budget: DEFAULT_BUDGET,
            output_format: OutputFormat::Json,
            output_path: None,
        }
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.precision_bits < 64 {
            return usage(format!(
                "field `precision_bits` must be at least 64, got {}",
                self.precision_bits
            ));
        }
        if self.budget == 0 {
            return usage("field `budget` must be positive");
        }
        Ok(())
    }

    /// Significant decimal digits matching `precision_bits`.
    pub fn digits(&self) -> usize {
        (self.precision_bits as f64 * std::f64::consts::LOG10_2).ceil() as usize
    }

    pub fn check_budget(&self, what: &str, needed: u128) -> CliResult<()> {
        if needed > self.budget as u128 {
            return Err(CliError::Budget(format!(
                "{what} needs {needed}, budget is {}",
                self.budget
            )));
        }
        Ok(())
    }
}

pub fn required<T: Clone>(v: &Option<T>, field: &str) -> CliResult<T> {
    match v {
        Some(x) => Ok(x.clone()),
        None => usage(format!("missing required parameter `{field}`")),
    }
}

/// The single entry of a list-valued parameter.
pub fn single(v: &Option<Vec<u64>>, field: &str) -> CliResult<u64> {
    match v.as_deref() {
        Some([x]) => Ok(*x),
        Some([]) | None => usage(format!("missing required parameter `{field}`")),
        Some(_) => usage(format!("parameter `{field}` takes a single value here")),
    }
}

pub fn list(v: &Option<Vec<u64>>, field: &str) -> CliResult<Vec<u64>> {
    match v.as_deref() {
        Some(xs) if !xs.is_empty() => Ok(xs.to_vec()),
        _ => usage(format!("parameter `{field}` needs at least one value")),
    }
}

/// Parses `p/q`, an integer or a finite decimal as an exact rational.
pub fn parse_rational(s: &str, field: &str) -> CliResult<Rational> {
    let bad = || CliError::Usage(format!("parameter `{field}`: cannot read `{s}` as a rational"));
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: num_bigint::BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: num_bigint::BigInt = q.trim().parse().map_err(|_| bad())?;
        if num_traits::Zero::is_zero(&q) {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    let (mantissa, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (int_part, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits: num_bigint::BigInt = format!("{int_part}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = num_bigint::BigInt::from(10);
    Ok(if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use laurent_lab::poly::rat;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("1/10", "t").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("0.1", "t").unwrap(), rat(1, 10));
        assert_eq!(parse_rational("1e9", "t").unwrap(), rat(1_000_000_000, 1));
        assert_eq!(parse_rational("-2.5e-1", "t").unwrap(), rat(-1, 4));
        assert!(parse_rational("x", "t").is_err());
        assert!(parse_rational("1/0", "t").is_err());
    }

    #[test]
    fn overlay_and_round_trip() {
        let mut base = Parameters {
            w: Some(vec![2]),
            k: Some(3),
            ..Default::default()
        };
        base.overlay(&Parameters {
            k: Some(5),
            ..Default::default()
        });
        assert_eq!((base.w.clone(), base.k), (Some(vec![2]), Some(5)));
        let mut cfg = RunConfig::new(Command::TraceCompute);
        cfg.parameters = base;
        let text = serde_json::to_string(&cfg).unwrap();
        let back: RunConfig = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
}
