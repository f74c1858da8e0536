//! Run configuration: command-line flags over a flat `key = value` file over
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use bangl_core::experiment::Composition;
use bangl_core::prover::SearchBudget;
use bangl_core::tensor::{CopyMode, SpaceAssignment, DEFAULT_FOCK_CAP};
use clap::Args;

use crate::CliError;

/// Options shared by every subcommand. Each may also be set in the config
/// file under its long name (`max-depth = 40`).
#[derive(Args, Debug, Default, Clone)]
pub struct Overrides {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub max_contractions: Option<usize>,
    #[arg(long, global = true)]
    pub max_perm_moves: Option<usize>,
    #[arg(long, global = true)]
    pub max_depth: Option<usize>,
    /// cogebra-a | cogebra-b | cofree | full | fock; `experiment` also takes
    /// a comma-separated list or `all`.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Constant of the cofree-inspired copy.
    #[arg(long, global = true)]
    pub k: Option<f64>,
    /// Atom dimensions, `A=2,B=3`.
    #[arg(long, global = true)]
    pub dims: Option<String>,
    /// Largest base dimension allowed under Fock copying.
    #[arg(long, global = true)]
    pub fock_cap: Option<usize>,
    #[arg(long, global = true)]
    pub embeddings: Option<PathBuf>,
    #[arg(long, global = true)]
    pub triples: Option<PathBuf>,
    #[arg(long, global = true)]
    pub lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    pub dataset: Option<PathBuf>,
    /// json | text | dot
    #[arg(long, global = true)]
    pub format: Option<String>,
    /// Lowercase words when reading embeddings and triples.
    #[arg(long, global = true)]
    pub lowercase: bool,
    /// Replace words missing from the lexicon by zero vectors.
    #[arg(long, global = true)]
    pub zero_unknown: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Dot,
}

/// A single copying choice as named on the command line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ModeChoice {
    CogebraA,
    CogebraB,
    Cofree,
    Full,
    Fock,
}

impl ModeChoice {
    fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s.trim() {
            "cogebra-a" | "cogebra" => ModeChoice::CogebraA,
            "cogebra-b" => ModeChoice::CogebraB,
            "cofree" => ModeChoice::Cofree,
            "full" => ModeChoice::Full,
            "fock" => ModeChoice::Fock,
            other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
        })
    }

    pub fn copy_mode(self, k: f64) -> CopyMode {
        match self {
            ModeChoice::CogebraA | ModeChoice::CogebraB => CopyMode::Cogebra,
            ModeChoice::Cofree => CopyMode::cofree(k),
            ModeChoice::Full => CopyMode::Full,
            ModeChoice::Fock => CopyMode::FockGrouplike,
        }
    }

    pub fn composition(self, k: f64) -> Result<Composition, CliError> {
        Composition::from_mode(self.copy_mode(k), self == ModeChoice::CogebraB)
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub budget: SearchBudget,
    pub modes: Vec<ModeChoice>,
    pub k: f64,
    pub dims: SpaceAssignment,
    pub embeddings: Option<PathBuf>,
    pub triples: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub dataset: Option<PathBuf>,
    pub format: Option<Format>,
    pub lowercase: bool,
    pub zero_unknown: bool,
}

impl RunConfig {
    /// The single requested mode, `default` if none was given.
    pub fn mode(&self, default: ModeChoice) -> Result<ModeChoice, CliError> {
        match self.modes.as_slice() {
            [] => Ok(default),
            [m] => Ok(*m),
            _ => Err(CliError::Usage("this command takes a single --mode".into())),
        }
    }
}

fn parse_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let mut map = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::Usage(format!("config line {}: expected key = value", i + 1))
        })?;
        map.insert(key.trim().replace('_', "-"), value.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config `{key}`: cannot parse `{value}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, CliError> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(CliError::Usage(format!(
            "config `{key}`: expected true or false"
        ))),
    }
}

impl Overrides {
    /// Fills every unset flag from the config file, if any.
    fn merged(&self) -> Result<Overrides, CliError> {
        let mut o = self.clone();
        let Some(path) = &self.config else {
            return Ok(o);
        };
        let base = path.parent().unwrap_or(Path::new(""));
        for (key, value) in parse_file(path)? {
            let v = value.as_str();
            let path_value = || Some(base.join(v));
            match key.as_str() {
                "max-contractions" => {
                    o.max_contractions = o.max_contractions.or(Some(parse_value(&key, v)?))
                }
                "max-perm-moves" => {
                    o.max_perm_moves = o.max_perm_moves.or(Some(parse_value(&key, v)?))
                }
                "max-depth" => o.max_depth = o.max_depth.or(Some(parse_value(&key, v)?)),
                "mode" => o.mode = o.mode.or(Some(value.clone())),
                "k" => o.k = o.k.or(Some(parse_value(&key, v)?)),
                "dims" => o.dims = o.dims.or(Some(value.clone())),
                "fock-cap" => o.fock_cap = o.fock_cap.or(Some(parse_value(&key, v)?)),
                "embeddings" => o.embeddings = o.embeddings.or_else(path_value),
                "triples" => o.triples = o.triples.or_else(path_value),
                "lexicon" => o.lexicon = o.lexicon.or_else(path_value),
                "dataset" => o.dataset = o.dataset.or_else(path_value),
                "format" => o.format = o.format.or(Some(value.clone())),
                "lowercase" => o.lowercase |= parse_bool(&key, v)?,
                "zero-unknown" => o.zero_unknown |= parse_bool(&key, v)?,
                other => return Err(CliError::Usage(format!("unknown config key `{other}`"))),
            }
        }
        Ok(o)
    }

    pub fn resolve(&self) -> Result<RunConfig, CliError> {
        let o = self.merged()?;
        let defaults = SearchBudget::default();
        let budget = SearchBudget::new(
            o.max_contractions.unwrap_or(defaults.max_contractions),
            o.max_perm_moves.unwrap_or(defaults.max_perm_moves),
            o.max_depth.unwrap_or(defaults.max_depth),
        );
        let k = o.k.unwrap_or(1.0);
        if !k.is_finite() {
            return Err(CliError::Usage("--k must be finite".into()));
        }
        let modes = match o.mode.as_deref() {
            None => Vec::new(),
            Some("all") => vec![
                ModeChoice::Full,
                ModeChoice::Cofree,
                ModeChoice::CogebraA,
                ModeChoice::CogebraB,
            ],
            Some(list) => list
                .split(',')
                .map(ModeChoice::parse)
                .collect::<Result<_, _>>()?,
        };
        let mut dims = match o.dims.as_deref() {
            Some(text) => {
                SpaceAssignment::parse(text).map_err(|e| CliError::Usage(e.to_string()))?
            }
            None => SpaceAssignment::default(),
        };
        dims.fock_cap = o.fock_cap.unwrap_or(DEFAULT_FOCK_CAP);
        let format = match o.format.as_deref() {
            None => None,
            Some("json") => Some(Format::Json),
            Some("text") => Some(Format::Text),
            Some("dot") => Some(Format::Dot),
            Some(other) => return Err(CliError::Usage(format!("unknown format `{other}`"))),
        };
        Ok(RunConfig {
            budget,
            modes,
            k,
            dims,
            embeddings: o.embeddings,
            triples: o.triples,
            lexicon: o.lexicon,
            dataset: o.dataset,
            format,
            lowercase: o.lowercase,
            zero_unknown: o.zero_unknown,
        })
    }
}
