//! `bangl`: prove, compile and evaluate sequents of Lambek calculus with a
//! relevant modality, and run the parasitic-gap experiment.
//!
//! Exit codes: 0 success, 1 not provable, 2 usage or parse error, 3 data
//! that could not be read or resolved.

mod config;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bangl_core::experiment::{
    dataset_lexicon, evaluate, load_dataset, ExperimentError, PhraseLexicon,
};
use bangl_core::formula::{parse_formula, parse_sequent, Formula, Sequent};
use bangl_core::lexicon::{EmbeddingTable, Resources, TriplesCorpus, TypedLexicon};
use bangl_core::morphism::{compile, export_derivation_dot, export_morphism_dot, TypedMorphism};
use bangl_core::prover::{prove, Derivation};
use bangl_core::tensor::{eval_morphism, EvalError};
use clap::{Parser, Subcommand};
use thiserror::Error;

use config::{Format, ModeChoice, Overrides, RunConfig};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("no proof under budget")]
    NotProvable,
    #[error("{0}")]
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::NotProvable => 1,
            CliError::Usage(_) => 2,
            CliError::Data(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "bangl",
    version,
    about = "Lambek calculus with a relevant modality: proofs, morphisms, tensors"
)]
struct Cli {
    /// More logging (-v info, -vv debug).
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    verbose: u8,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Search for a derivation of `Γ => A`.
    Prove { sequent: String },
    /// Compile a derivation of the sequent into a morphism term.
    Compile {
        sequent: String,
        /// Also write the wiring graph as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Evaluate a phrase: words are typed from the lexicon and derived to the
    /// goal type, and the resulting morphism is applied to their tensors.
    Eval {
        phrase: String,
        #[arg(long, default_value = "S")]
        goal: String,
    },
    /// Score the parasitic-gap dataset under one or more copying modes.
    Experiment,
    /// Materialize a source lexicon against embeddings and triples.
    LexiconBuild,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("bangl: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let cfg = cli.overrides.resolve()?;
    let output = match &cli.command {
        Command::Prove { sequent } => cmd_prove(sequent, &cfg)?,
        Command::Compile { sequent, dot } => cmd_compile(sequent, dot.as_deref(), &cfg)?,
        Command::Eval { phrase, goal } => cmd_eval(phrase, goal, &cfg)?,
        Command::Experiment => return cmd_experiment(&cfg, cli.out.as_deref()),
        Command::LexiconBuild => cmd_lexicon_build(&cfg)?,
    };
    emit(&output, cli.out.as_deref())
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse(sequent: &str) -> Result<Sequent, CliError> {
    parse_sequent(sequent).map_err(|e| CliError::Usage(format!("cannot parse `{sequent}`: {e}")))
}

fn derive(s: &Sequent, cfg: &RunConfig) -> Result<Derivation, CliError> {
    prove(s, cfg.budget).ok_or(CliError::NotProvable)
}

fn compiled(d: &Derivation) -> Result<TypedMorphism, CliError> {
    // a derivation from the prover always checks and typechecks
    compile(d).map_err(|e| CliError::Data(format!("internal compilation failure: {e}")))
}

fn cmd_prove(sequent: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let d = derive(&parse(sequent)?, cfg)?;
    Ok(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => d.to_json(),
        Format::Text => d.pretty(),
        Format::Dot => export_derivation_dot(&d),
    })
}

fn cmd_compile(sequent: &str, dot: Option<&Path>, cfg: &RunConfig) -> Result<String, CliError> {
    let m = compiled(&derive(&parse(sequent)?, cfg)?)?;
    if let Some(path) = dot {
        emit(&export_morphism_dot(&m), Some(path))?;
    }
    Ok(match cfg.format.unwrap_or(Format::Json) {
        Format::Json => m.to_json(),
        Format::Text => format!("{} : {} → {}", m.term.name(), m.domain, m.codomain),
        Format::Dot => export_morphism_dot(&m),
    })
}

fn load_tables(
    cfg: &RunConfig,
) -> Result<(Option<EmbeddingTable>, Option<TriplesCorpus>), CliError> {
    let emb = cfg
        .embeddings
        .as_deref()
        .map(|p| EmbeddingTable::load(p, cfg.lowercase))
        .transpose()
        .map_err(|e| CliError::Data(e.to_string()))?;
    let triples = cfg
        .triples
        .as_deref()
        .map(|p| TriplesCorpus::load(p, cfg.lowercase))
        .transpose()
        .map_err(|e| CliError::Data(e.to_string()))?;
    Ok((emb, triples))
}

fn load_lexicon(cfg: &RunConfig) -> Result<TypedLexicon, CliError> {
    let path = cfg
        .lexicon
        .as_deref()
        .ok_or_else(|| CliError::Usage("--lexicon is required".into()))?;
    let (emb, triples) = load_tables(cfg)?;
    let res = Resources {
        embeddings: emb.as_ref(),
        triples: triples.as_ref(),
        base_dir: PathBuf::new(),
        spaces: cfg.dims.clone(),
    };
    TypedLexicon::load(path, &res).map_err(|e| CliError::Data(e.to_string()))
}

fn cmd_eval(phrase: &str, goal: &str, cfg: &RunConfig) -> Result<String, CliError> {
    let goal: Formula = parse_formula(goal)
        .map_err(|e| CliError::Usage(format!("cannot parse goal `{goal}`: {e}")))?;
    let lex = load_lexicon(cfg)?;
    let words: Vec<&str> = phrase.split_whitespace().collect();
    if words.is_empty() {
        return Err(CliError::Usage("empty phrase".into()));
    }
    let mut antecedent = Vec::new();
    let mut inputs = Vec::new();
    for w in &words {
        let e = lex
            .get(w)
            .ok_or_else(|| CliError::Data(format!("`{w}` is not in the lexicon")))?;
        antecedent.push(e.formula.clone());
        inputs.push(e.expanded());
    }
    let m = compiled(&derive(&Sequent::new(antecedent, goal), cfg)?)?;
    let mut spaces = lex.spaces();
    for (atom, d) in &cfg.dims.dims {
        spaces.set(atom.clone(), *d);
    }
    spaces.fock_cap = cfg.dims.fock_cap;
    let mode = cfg.mode(ModeChoice::Full)?.copy_mode(cfg.k);
    let t = eval_morphism(&m, &inputs, mode, &spaces).map_err(|e| match e {
        EvalError::Unsupported { .. } => CliError::Usage(e.to_string()),
        _ => CliError::Data(e.to_string()),
    })?;
    Ok(match cfg.format.unwrap_or(Format::Text) {
        Format::Json => serde_json::to_string_pretty(&t).expect("tensors serialize"),
        Format::Text => t.to_text(),
        Format::Dot => return Err(CliError::Usage("eval has no DOT output".into())),
    })
}

fn cmd_experiment(cfg: &RunConfig, out: Option<&Path>) -> Result<(), CliError> {
    let data_err = |e: ExperimentError| CliError::Data(e.to_string());
    let path = cfg
        .dataset
        .as_deref()
        .ok_or_else(|| CliError::Usage("--dataset is required".into()))?;
    let dataset = load_dataset(path).map_err(data_err)?;
    if dataset.is_empty() {
        return Err(data_err(ExperimentError::EmptyDataset));
    }
    let modes = if cfg.modes.is_empty() {
        vec![
            ModeChoice::Full,
            ModeChoice::Cofree,
            ModeChoice::CogebraA,
            ModeChoice::CogebraB,
        ]
    } else {
        cfg.modes.clone()
    };
    let comps = modes
        .iter()
        .map(|m| m.composition(cfg.k))
        .collect::<Result<Vec<_>, _>>()?;
    let lex = match &cfg.lexicon {
        Some(_) => load_lexicon(cfg)?,
        None => {
            let (emb, triples) = load_tables(cfg)?;
            let (Some(emb), Some(triples)) = (emb, triples) else {
                return Err(CliError::Usage(
                    "experiment needs --lexicon or both --embeddings and --triples".into(),
                ));
            };
            dataset_lexicon(&dataset, &emb, &triples)
        }
    };
    let pl = PhraseLexicon {
        lex: &lex,
        zero_unknown: cfg.zero_unknown,
    };
    let report = evaluate(&dataset, &comps, &pl).map_err(data_err)?;
    match out {
        Some(path) => {
            // JSON to the named file, the table next to it
            emit(&report.to_json(), Some(path))?;
            emit(&report.to_table(), Some(&path.with_extension("txt")))?;
            print!("{}", report.to_table());
            Ok(())
        }
        None => match cfg.format.unwrap_or(Format::Text) {
            Format::Json => emit(&report.to_json(), None),
            Format::Text => emit(&report.to_table(), None),
            Format::Dot => Err(CliError::Usage("experiment has no DOT output".into())),
        },
    }
}

fn cmd_lexicon_build(cfg: &RunConfig) -> Result<String, CliError> {
    Ok(load_lexicon(cfg)?.to_json())
}
