use std::path::{Path, PathBuf};

use oge::cascade::{cylindrical_cascade, CascadeParams};
use oge::entropy_report::DeltaRule;
use oge::systems::{self, DynamicalSystemSpec, TwistProfile, GOLDEN, MORSE_SMALE_DEPTH};
use oge::{Error, Result};
use serde::{Deserialize, Serialize};

/// Catalog system and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemConfig {
    FullShift { k: usize, word_len: usize },
    Rotation { alpha: f64 },
    ConjugatedRotation { alpha: f64, amplitude: f64 },
    MorseSmale { amplitude: f64, depth: usize },
    Denjoy { alpha: f64, tail_exponent: f64, depth: usize },
    Twist { slope: f64, offset: f64, t_min: f64, t_max: f64, t_refine: usize },
    TorusLinear { matrix: [[i64; 2]; 2] },
    Cascade { params: PathBuf },
}

pub const SYSTEM_NAMES: &[&str] =
    &["full_shift", "rotation", "conjugated_rotation", "morse_smale", "denjoy", "twist", "torus_linear", "cascade"];

/// Everything one `estimate` or `numbers` run depends on.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub system: SystemConfig,
    pub eps: Vec<f64>,
    pub n_max: usize,
    #[serde(default)]
    pub delta_rule: DeltaRule,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Recorded for reproducibility; every sampler in the catalog is deterministic.
    #[serde(default)]
    pub seed: Option<u64>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
        let cfg: Self = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.eps.is_empty() || self.eps.iter().any(|e| !(*e > 0.0)) || self.eps.windows(2).any(|w| !(w[0] > w[1])) {
            return Err(Error::Invalid("eps list must be positive and strictly descending".into()));
        }
        if self.n_max == 0 {
            return Err(Error::Invalid("n must be positive".into()));
        }
        Ok(())
    }
}

impl SystemConfig {
    pub fn build(&self) -> Result<DynamicalSystemSpec<f64>> {
        match self {
            SystemConfig::FullShift { k, word_len } => systems::full_shift(*k, *word_len),
            SystemConfig::Rotation { alpha } => systems::rotation(*alpha),
            SystemConfig::ConjugatedRotation { alpha, amplitude } => systems::conjugated_rotation(*alpha, *amplitude),
            SystemConfig::MorseSmale { amplitude, depth } => systems::morse_smale_circle(*amplitude, *depth),
            SystemConfig::Denjoy { alpha, tail_exponent, depth } => systems::denjoy(*alpha, *tail_exponent, *depth),
            SystemConfig::Twist { slope, offset, t_min, t_max, t_refine } => {
                systems::twist_annulus(TwistProfile::Linear { slope: *slope, offset: *offset }, *t_min, *t_max, *t_refine)
            }
            SystemConfig::TorusLinear { matrix } => systems::torus_linear(*matrix),
            SystemConfig::Cascade { params } => {
                let text = std::fs::read_to_string(params).map_err(|e| Error::Invalid(format!("{}: {e}", params.display())))?;
                cylindrical_cascade(&read_params(&text)?)
            }
        }
    }
}

/// Parameters alone, or the `params` field of a `cascade-build` report.
pub fn read_params(text: &str) -> Result<CascadeParams> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let inner = v.get("params").cloned().unwrap_or(v);
    serde_json::from_value(inner).map_err(|e| Error::Parse(e.to_string()))
}

/// Flag values that select and parameterise a system.
#[derive(Debug, Clone, clap::Args)]
pub struct SystemArgs {
    /// One of full_shift, rotation, conjugated_rotation, morse_smale, denjoy, twist, torus_linear, cascade
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 14)]
    pub word_len: usize,
    #[arg(long)]
    pub depth: Option<usize>,
    #[arg(long, default_value_t = 2.0)]
    pub tail_exponent: f64,
    #[arg(long, default_value_t = 1.0)]
    pub slope: f64,
    #[arg(long, default_value_t = 0.0)]
    pub offset: f64,
    #[arg(long, default_value_t = 0.0)]
    pub t_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_max: f64,
    #[arg(long, default_value_t = 1)]
    pub t_refine: usize,
    /// 2x2 integer matrix, "a,b;c,d"
    #[arg(long, default_value = "1,1;0,1")]
    pub matrix: String,
    /// Cascade parameters (JSON) for `--system cascade`
    #[arg(long)]
    pub params: Option<PathBuf>,
}

impl SystemArgs {
    pub fn to_config(&self) -> Result<SystemConfig> {
        let name = self.system.as_deref().ok_or_else(|| Error::Invalid("--system or --config is required".into()))?;
        let alpha = self.alpha.unwrap_or(GOLDEN);
        Ok(match name {
            "full_shift" => SystemConfig::FullShift { k: self.k, word_len: self.word_len },
            "rotation" => SystemConfig::Rotation { alpha },
            "conjugated_rotation" => SystemConfig::ConjugatedRotation { alpha, amplitude: self.amplitude.unwrap_or(0.05) },
            "morse_smale" => SystemConfig::MorseSmale {
                amplitude: self.amplitude.unwrap_or(0.05),
                depth: self.depth.unwrap_or(MORSE_SMALE_DEPTH),
            },
            "denjoy" => SystemConfig::Denjoy { alpha, tail_exponent: self.tail_exponent, depth: self.depth.unwrap_or(200) },
            "twist" => SystemConfig::Twist {
                slope: self.slope,
                offset: self.offset,
                t_min: self.t_min,
                t_max: self.t_max,
                t_refine: self.t_refine,
            },
            "torus_linear" => SystemConfig::TorusLinear { matrix: parse_2x2(&self.matrix)? },
            "cascade" => SystemConfig::Cascade {
                params: self.params.clone().ok_or_else(|| Error::Invalid("--system cascade needs --params".into()))?,
            },
            other => {
                return Err(Error::Invalid(format!("unknown system {other:?}; expected one of {}", SYSTEM_NAMES.join(", "))))
            }
        })
    }
}

pub fn parse_2x2(s: &str) -> Result<[[i64; 2]; 2]> {
    let m: oge::homology::IntMatrix = s.parse()?;
    if m.dim() != 2 {
        return Err(Error::Invalid(format!("torus matrix must be 2x2, got {0}x{0}", m.dim())));
    }
    let v = |i: usize, j: usize| -> Result<i64> {
        m[(i, j)].to_string().parse().map_err(|_| Error::Invalid(format!("entry {} out of range", m[(i, j)])))
    };
    Ok([[v(0, 0)?, v(0, 1)?], [v(1, 0)?, v(1, 1)?]])
}

/// `fraction:C` or `fixed:D`.
pub fn parse_delta_rule(s: &str) -> Result<DeltaRule> {
    let bad = || Error::Invalid(format!("delta rule {s:?}: expected fraction:C or fixed:D"));
    let (kind, value) = s.split_once(':').ok_or_else(bad)?;
    let value: f64 = value.trim().parse().map_err(|_| bad())?;
    match kind.trim() {
        "fraction" => Ok(DeltaRule::Fraction(value)),
        "fixed" => Ok(DeltaRule::Fixed(value)),
        _ => Err(bad()),
    }
}

pub fn parse_eps(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::Invalid(format!("bad eps value {x:?}"))))
        .collect()
}
