//! Parasitic-gap disambiguation.
//!
//! Each dataset entry describes a landmark phrase "A's that the B C'ed Prep
//! D'ing" and two candidates that replace the main verb C by C₁ or C₂; the
//! label says which candidate keeps the landmark's meaning. Phrases are
//! composed as the relative clause's two uses of the head noun A dictate,
//! with Prep read as vector addition:
//!
//! | composition | vector |
//! |---|---|
//! | Full | `Ā ⊙ (C×B̄) + D×Ā` |
//! | Cogebra (a) | `Ā ⊙ (C×B̄) + D×Σᵢnᵢ` |
//! | Cogebra (b) | `Σᵢnᵢ ⊙ (C×B̄) + D×Ā` |
//! | Cofree-inspired | `(Ā ⊙ (C×B̄) + D×k⃗) + (k⃗ ⊙ (C×B̄) + D×Ā)` |
//!
//! C is a copy-object verb matrix contracted with the subject, D a relational
//! verb matrix applied to its object.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use log::{info, warn};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::parse_formula;
use crate::lexicon::{
    build_copy_object_verb, build_relational_verb, copy_object_apply, matrix_vector,
    verb_on_subject, EmbeddingTable, LexEntry, LexiconError, SourceKind, TriplesCorpus,
    TypedLexicon,
};
use crate::tensor::{CopyMode, Tensor};

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
    #[error("dataset line {line}: expected 8 columns, found {found}")]
    Columns { line: usize, found: usize },
    #[error("dataset line {line}: label must be 1 or 2, found `{value}`")]
    Label { line: usize, value: String },
    #[error("the dataset is empty")]
    EmptyDataset,
    #[error("no lexicon entry for `{0}`")]
    Missing(String),
    #[error("`{word}` has shape {found:?}, expected {expected:?}")]
    Shape {
        word: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("vectors of different lengths {0} and {1}")]
    Mismatch(usize, usize),
    #[error("{0} copying has no phrase composition")]
    Unsupported(CopyMode),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

/// "A's that the B C'ed Prep D'ing", with candidate main verbs C₁ and C₂.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PgapEntry {
    pub head: String,
    pub subject: String,
    pub verb: String,
    pub prep: String,
    pub second_verb: String,
    pub candidate1: String,
    pub candidate2: String,
    /// 1 or 2: the candidate that is the good disambiguation.
    pub label: u8,
}

impl PgapEntry {
    pub fn good(&self) -> &str {
        if self.label == 1 {
            &self.candidate1
        } else {
            &self.candidate2
        }
    }

    pub fn bad(&self) -> &str {
        if self.label == 1 {
            &self.candidate2
        } else {
            &self.candidate1
        }
    }
}

/// Parses rows `A B C Prep D C1 C2 label`, tab-separated (or whitespace
/// separated if a row has no tab). Blank lines and `#` comments are skipped.
pub fn parse_dataset(text: &str) -> Result<Vec<PgapEntry>, ExperimentError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = if line.contains('\t') {
            line.split('\t').map(str::trim).collect()
        } else {
            line.split_whitespace().collect()
        };
        if cols.len() != 8 || cols.iter().any(|c| c.is_empty()) {
            return Err(ExperimentError::Columns {
                line: i + 1,
                found: cols.len(),
            });
        }
        let label = match cols[7] {
            "1" => 1,
            "2" => 2,
            other => {
                return Err(ExperimentError::Label {
                    line: i + 1,
                    value: other.to_string(),
                })
            }
        };
        out.push(PgapEntry {
            head: cols[0].to_string(),
            subject: cols[1].to_string(),
            verb: cols[2].to_string(),
            prep: cols[3].to_string(),
            second_verb: cols[4].to_string(),
            candidate1: cols[5].to_string(),
            candidate2: cols[6].to_string(),
            label,
        });
    }
    Ok(out)
}

pub fn load_dataset(path: &Path) -> Result<Vec<PgapEntry>, ExperimentError> {
    let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_dataset(&text)
}

/// The four phrase compositions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "composition", rename_all = "kebab-case")]
pub enum Composition {
    Full,
    CogebraA,
    CogebraB,
    Cofree { k: f64 },
}

impl Composition {
    /// The composition for a copying mode; Cogebra needs its variant.
    pub fn from_mode(mode: CopyMode, cogebra_b: bool) -> Result<Self, ExperimentError> {
        Ok(match mode {
            CopyMode::Full => Composition::Full,
            CopyMode::Cogebra if cogebra_b => Composition::CogebraB,
            CopyMode::Cogebra => Composition::CogebraA,
            CopyMode::CofreeK { k } => Composition::Cofree { k },
            CopyMode::FockGrouplike => return Err(ExperimentError::Unsupported(mode)),
        })
    }

    /// All four, with the given Cofree constant.
    pub fn all(k: f64) -> Vec<Composition> {
        vec![
            Composition::Full,
            Composition::Cofree { k },
            Composition::CogebraA,
            Composition::CogebraB,
        ]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Composition::Full => f.write_str("Full"),
            Composition::CogebraA => f.write_str("Cogebra (a)"),
            Composition::CogebraB => f.write_str("Cogebra (b)"),
            Composition::Cofree { k } if *k == 1.0 => f.write_str("Cofree"),
            Composition::Cofree { k } => write!(f, "Cofree (k={k})"),
        }
    }
}

/// Word lookups for composition, optionally replacing unknown words by zeros.
pub struct PhraseLexicon<'a> {
    pub lex: &'a TypedLexicon,
    pub zero_unknown: bool,
}

impl PhraseLexicon<'_> {
    fn dim(&self) -> Option<usize> {
        self.lex
            .entries
            .values()
            .find(|e| e.tensor.shape().len() == 1)
            .map(|e| e.tensor.len())
    }

    fn lookup(
        &self,
        word: &str,
        rank: usize,
        subs: &mut Vec<String>,
    ) -> Result<Tensor, ExperimentError> {
        match self.lex.get(word) {
            Some(e) => {
                let t = &e.tensor;
                let d = t.shape().first().copied().unwrap_or(0);
                let expected = vec![d; rank];
                if t.shape() != expected {
                    return Err(ExperimentError::Shape {
                        word: word.to_string(),
                        expected,
                        found: t.shape().to_vec(),
                    });
                }
                Ok(t.clone())
            }
            None if self.zero_unknown => {
                let d = self
                    .dim()
                    .ok_or_else(|| ExperimentError::Missing(word.to_string()))?;
                warn!("`{word}` is not in the lexicon; using zeros");
                subs.push(word.to_string());
                Ok(Tensor::zeros(vec![d; rank]))
            }
            None => Err(ExperimentError::Missing(word.to_string())),
        }
    }
}

fn add(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

/// The phrase vector for head `a`, subject `b`, main verb `c` and secondary
/// verb `d`. `prep` is read as addition whatever the word.
pub fn compose_pgap(
    a: &str,
    b: &str,
    c: &str,
    prep: &str,
    d: &str,
    comp: Composition,
    lex: &PhraseLexicon,
) -> Result<Vec<f64>, ExperimentError> {
    let mut subs = Vec::new();
    compose_inner(a, b, c, prep, d, comp, lex, &mut subs)
}

#[allow(clippy::too_many_arguments)]
fn compose_inner(
    a: &str,
    b: &str,
    c: &str,
    _prep: &str,
    d: &str,
    comp: Composition,
    lex: &PhraseLexicon,
    subs: &mut Vec<String>,
) -> Result<Vec<f64>, ExperimentError> {
    let av = lex.lookup(a, 1, subs)?.into_data();
    let bv = lex.lookup(b, 1, subs)?.into_data();
    let cm = lex.lookup(c, 2, subs)?;
    let dm = lex.lookup(d, 2, subs)?;
    let n = av.len();
    for (w, len) in [(b, bv.len()), (c, cm.shape()[0]), (d, dm.shape()[0])] {
        if len != n {
            return Err(ExperimentError::Shape {
                word: w.to_string(),
                expected: vec![n],
                found: vec![len],
            });
        }
    }
    let ones = vec![1.0; n];
    Ok(match comp {
        Composition::Full => add(&copy_object_apply(&cm, &bv, &av), &matrix_vector(&dm, &av)),
        Composition::CogebraA => add(
            &copy_object_apply(&cm, &bv, &av),
            &matrix_vector(&dm, &ones),
        ),
        Composition::CogebraB => add(&verb_on_subject(&cm, &bv), &matrix_vector(&dm, &av)),
        Composition::Cofree { k } => {
            let kv = vec![k; n];
            let left = add(&copy_object_apply(&cm, &bv, &av), &matrix_vector(&dm, &kv));
            let right = add(&copy_object_apply(&cm, &bv, &kv), &matrix_vector(&dm, &av));
            add(&left, &right)
        }
    })
}

/// Cosine similarity; 0 if either vector is zero.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64, ExperimentError> {
    if u.len() != v.len() {
        return Err(ExperimentError::Mismatch(u.len(), v.len()));
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    let nu = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nv = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if nu == 0.0 || nv == 0.0 {
        info!("cosine with a zero vector taken as 0");
        return Ok(0.0);
    }
    Ok((dot / (nu * nv)).clamp(-1.0, 1.0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntryScore {
    pub index: usize,
    pub sim_good: f64,
    pub sim_bad: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeReport {
    pub model: String,
    pub composition: Composition,
    /// Fraction of entries whose landmark is closer to the good candidate;
    /// ties count one half.
    pub accuracy: f64,
    /// Mean over entries of the precision at the good candidate's rank
    /// (1 first, 1/2 second, 3/4 for a tie).
    pub map: f64,
    pub ties: usize,
    pub entries: Vec<EntryScore>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub entries: usize,
    pub modes: Vec<ModeReport>,
    /// Words replaced by zeros because they were not in the lexicon.
    pub substituted: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    /// Aligned `Model | Accuracy | MAP` table.
    pub fn to_table(&self) -> String {
        let width = self
            .modes
            .iter()
            .map(|m| m.model.chars().count())
            .chain(std::iter::once(5))
            .max()
            .unwrap_or(5);
        let mut out = format!("{:<width$} | Accuracy | MAP\n", "Model");
        out.push_str(&format!("{}-|----------|-------\n", "-".repeat(width)));
        for m in &self.modes {
            out.push_str(&format!(
                "{:<width$} | {:>8.4} | {:.4}\n",
                m.model, m.accuracy, m.map
            ));
        }
        out
    }
}

/// Scores every entry under every composition.
pub fn evaluate(
    dataset: &[PgapEntry],
    comps: &[Composition],
    lex: &PhraseLexicon,
) -> Result<Report, ExperimentError> {
    if dataset.is_empty() {
        return Err(ExperimentError::EmptyDataset);
    }
    let mut subs = Vec::new();
    let mut modes = Vec::new();
    for &comp in comps {
        let mut scores = Vec::with_capacity(dataset.len());
        let (mut correct, mut ap, mut ties) = (0.0, 0.0, 0usize);
        for (index, e) in dataset.iter().enumerate() {
            let phrase = |verb: &str, subs: &mut Vec<String>| {
                compose_inner(
                    &e.head,
                    &e.subject,
                    verb,
                    &e.prep,
                    &e.second_verb,
                    comp,
                    lex,
                    subs,
                )
            };
            let landmark = phrase(&e.verb, &mut subs)?;
            let good = phrase(e.good(), &mut subs)?;
            let bad = phrase(e.bad(), &mut subs)?;
            let (sg, sb) = (cosine(&landmark, &good)?, cosine(&landmark, &bad)?);
            if sg > sb {
                correct += 1.0;
                ap += 1.0;
            } else if sg == sb {
                info!("entry {index}: tie under {comp}");
                ties += 1;
                correct += 0.5;
                ap += 0.75;
            } else {
                ap += 0.5;
            }
            scores.push(EntryScore {
                index,
                sim_good: sg,
                sim_bad: sb,
            });
        }
        let n = dataset.len() as f64;
        modes.push(ModeReport {
            model: comp.to_string(),
            composition: comp,
            accuracy: correct / n,
            map: ap / n,
            ties,
            entries: scores,
        });
    }
    subs.sort();
    subs.dedup();
    Ok(Report {
        entries: dataset.len(),
        modes,
        substituted: subs,
    })
}

/// A lexicon covering a dataset: heads and subjects from the embedding
/// table, main and candidate verbs as copy-object matrices and secondary
/// verbs as relational matrices, all built from the triples. Words that
/// cannot be built are left out (and reported when composition needs them).
pub fn dataset_lexicon(
    dataset: &[PgapEntry],
    emb: &EmbeddingTable,
    triples: &TriplesCorpus,
) -> TypedLexicon {
    let d = emb.dim;
    let mut entries = BTreeMap::new();
    let noun = parse_formula("N").expect("literal");
    let tv = parse_formula("(NP\\S)/NP").expect("literal");
    let rel = parse_formula("NP/NP").expect("literal");
    for e in dataset {
        for w in [&e.head, &e.subject] {
            if let Ok(t) = emb.vector(w) {
                entries.entry(w.clone()).or_insert(LexEntry {
                    formula: noun.clone(),
                    kind: SourceKind::Embedding,
                    tensor: t,
                });
            }
        }
        for w in [&e.verb, &e.candidate1, &e.candidate2] {
            if entries.contains_key(w) {
                continue;
            }
            match build_copy_object_verb(w, triples, emb) {
                Ok(t) => {
                    entries.insert(
                        w.clone(),
                        LexEntry {
                            formula: tv.clone(),
                            kind: SourceKind::CopyObject,
                            tensor: t,
                        },
                    );
                }
                Err(err) => warn!("{err}"),
            }
        }
        if !entries.contains_key(&e.second_verb) {
            match build_relational_verb(&e.second_verb, triples, emb) {
                Ok(t) => {
                    entries.insert(
                        e.second_verb.clone(),
                        LexEntry {
                            formula: rel.clone(),
                            kind: SourceKind::Relational,
                            tensor: t,
                        },
                    );
                }
                Err(err) => warn!("{err}"),
            }
        }
    }
    TypedLexicon {
        format: "bangl-lexicon".to_string(),
        dims: ["N", "NP", "S"]
            .iter()
            .map(|a| (a.to_string(), d))
            .collect(),
        entries,
    }
}
