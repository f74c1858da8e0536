//! Word embeddings, verb co-occurrence triples and typed lexicons.
//!
//! Nouns come straight from an embedding table. Verb matrices are built from
//! subject–verb–object triples as count-weighted sums of `subject ⊗ object`
//! outer products. A typed lexicon pairs each word with a formula and a
//! tensor whose shape matches the formula's interpretation.

mod typed;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use log::warn;
use thiserror::Error;

use crate::formula::SyntaxError;
use crate::tensor::{SpaceError, Tensor, TensorError};

pub use typed::{assign_types, LexEntry, Resources, SourceKind, TypedLexicon};

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}: expected {expected} scalars, found {found}")]
    Ragged {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: `{token}` is not a number")]
    NotNumeric { line: usize, token: String },
    #[error("no vectors found")]
    Empty,
    #[error("triples line {line}: {message}")]
    Triples { line: usize, message: String },
    #[error("verb `{0}` does not occur in the triples corpus")]
    VerbAbsent(String),
    #[error("verb `{0}` has no subject/object pair with embeddings")]
    NoArguments(String),
    #[error("no embedding for `{0}`")]
    MissingEmbedding(String),
    #[error("lexicon entry `{word}`: {message}")]
    Entry { word: String, message: String },
    #[error("lexicon entry `{word}`: bad type: {source}")]
    Type { word: String, source: SyntaxError },
    #[error("lexicon entry `{word}`: tensor shape {found:?} does not match {expected:?}")]
    Shape {
        word: String,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("lexicon entry `{word}`: unknown source kind `{kind}`")]
    UnknownSource { word: String, kind: String },
    #[error("malformed lexicon JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn read(path: &Path) -> Result<String, LexiconError> {
    std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Word vectors of one common dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingTable {
    pub dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
    lowercase: bool,
}

impl EmbeddingTable {
    pub fn new(dim: usize, lowercase: bool) -> Self {
        EmbeddingTable {
            dim,
            vectors: BTreeMap::new(),
            lowercase,
        }
    }

    fn key(&self, word: &str) -> String {
        if self.lowercase {
            word.to_lowercase()
        } else {
            word.to_string()
        }
    }

    /// Adds or replaces a vector; panics if its length is not `dim`.
    pub fn insert(&mut self, word: &str, v: Vec<f64>) {
        assert_eq!(v.len(), self.dim, "embedding length");
        let k = self.key(word);
        self.vectors.insert(k, v);
    }

    pub fn get(&self, word: &str) -> Option<&[f64]> {
        self.vectors.get(&self.key(word)).map(Vec::as_slice)
    }

    pub fn vector(&self, word: &str) -> Result<Tensor, LexiconError> {
        self.get(word)
            .map(|v| Tensor::vector(v.to_vec()))
            .ok_or_else(|| LexiconError::MissingEmbedding(word.to_string()))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.vectors.keys().map(String::as_str)
    }

    /// Parses the whitespace text format: one `word x₁ … x_d` row per line.
    /// A leading `count dim` header line is skipped. Repeated words keep the
    /// last vector.
    pub fn parse(text: &str, lowercase: bool) -> Result<Self, LexiconError> {
        let mut table: Option<EmbeddingTable> = None;
        let mut first = true;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            if std::mem::take(&mut first)
                && toks.len() == 2
                && toks.iter().all(|t| t.parse::<usize>().is_ok())
            {
                continue;
            }
            let values = toks[1..]
                .iter()
                .map(|t| {
                    t.parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| LexiconError::NotNumeric {
                            line: lineno,
                            token: t.to_string(),
                        })
                })
                .collect::<Result<Vec<f64>, _>>()?;
            let t = table.get_or_insert_with(|| EmbeddingTable::new(values.len(), lowercase));
            if values.len() != t.dim || values.is_empty() {
                return Err(LexiconError::Ragged {
                    line: lineno,
                    expected: t.dim,
                    found: values.len(),
                });
            }
            if t.get(toks[0]).is_some() {
                warn!(
                    "line {lineno}: duplicate embedding for `{}`, keeping the last",
                    toks[0]
                );
            }
            t.insert(toks[0], values);
        }
        table.ok_or(LexiconError::Empty)
    }

    pub fn load(path: &Path, lowercase: bool) -> Result<Self, LexiconError> {
        EmbeddingTable::parse(&read(path)?, lowercase)
    }
}

pub fn load_embeddings(path: &Path, lowercase: bool) -> Result<EmbeddingTable, LexiconError> {
    EmbeddingTable::load(path, lowercase)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub subject: String,
    pub verb: String,
    pub object: String,
    pub count: u64,
}

/// Subject–verb–object occurrence counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TriplesCorpus {
    pub records: Vec<Triple>,
}

impl TriplesCorpus {
    /// Parses `subject<TAB>verb<TAB>object<TAB>count` lines; blank lines and
    /// lines starting with `#` are ignored.
    pub fn parse(text: &str, lowercase: bool) -> Result<Self, LexiconError> {
        let fold = |s: &str| {
            if lowercase {
                s.trim().to_lowercase()
            } else {
                s.trim().to_string()
            }
        };
        let mut records = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| LexiconError::Triples {
                line: i + 1,
                message,
            };
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 4 {
                return Err(err(format!(
                    "expected 4 tab-separated columns, found {}",
                    cols.len()
                )));
            }
            let count: u64 = cols[3]
                .trim()
                .parse()
                .map_err(|_| err(format!("`{}` is not a count", cols[3])))?;
            if count == 0 {
                return Err(err("counts must be positive".into()));
            }
            let (subject, verb, object) = (fold(cols[0]), fold(cols[1]), fold(cols[2]));
            if subject.is_empty() || verb.is_empty() || object.is_empty() {
                return Err(err("empty word".into()));
            }
            records.push(Triple {
                subject,
                verb,
                object,
                count,
            });
        }
        Ok(TriplesCorpus { records })
    }

    pub fn load(path: &Path, lowercase: bool) -> Result<Self, LexiconError> {
        TriplesCorpus::parse(&read(path)?, lowercase)
    }

    pub fn contains_verb(&self, verb: &str) -> bool {
        self.records.iter().any(|t| t.verb == verb)
    }
}

/// `Σ count · (subject ⊗ object)` over the verb's triples, as a `d×d` matrix.
/// Triples with an argument outside the embedding table are skipped.
pub fn build_relational_verb(
    verb: &str,
    corpus: &TriplesCorpus,
    emb: &EmbeddingTable,
) -> Result<Tensor, LexiconError> {
    let verb_key = emb.key(verb);
    let d = emb.dim;
    let mut m = vec![0.0; d * d];
    let mut seen = false;
    let mut used = false;
    for t in corpus
        .records
        .iter()
        .filter(|t| emb.key(&t.verb) == verb_key)
    {
        seen = true;
        let (Some(s), Some(o)) = (emb.get(&t.subject), emb.get(&t.object)) else {
            warn!(
                "skipping `{} {} {}`: argument without an embedding",
                t.subject, t.verb, t.object
            );
            continue;
        };
        used = true;
        let c = t.count as f64;
        for i in 0..d {
            for j in 0..d {
                m[i * d + j] += c * s[i] * o[j];
            }
        }
    }
    if !seen {
        return Err(LexiconError::VerbAbsent(verb.to_string()));
    }
    if !used {
        return Err(LexiconError::NoArguments(verb.to_string()));
    }
    Ok(Tensor::new(vec![d, d], m).expect("finite inputs give a finite matrix"))
}

/// The copy-object verb matrix. The payload is the relational matrix; what
/// differs is how it composes (`Ā ⊙ (Cᵀ B̄)`, see [`copy_object_apply`]).
pub fn build_copy_object_verb(
    verb: &str,
    corpus: &TriplesCorpus,
    emb: &EmbeddingTable,
) -> Result<Tensor, LexiconError> {
    build_relational_verb(verb, corpus, emb)
}

/// `C × B̄`: contracts the subject index of a verb matrix with a subject
/// vector, leaving a vector over the object index.
pub fn verb_on_subject(c: &Tensor, subject: &[f64]) -> Vec<f64> {
    let d = subject.len();
    (0..d)
        .map(|j| (0..d).map(|i| subject[i] * c.data()[i * d + j]).sum())
        .collect()
}

/// `D × Ā`: ordinary matrix–vector product.
pub fn matrix_vector(m: &Tensor, v: &[f64]) -> Vec<f64> {
    let d = v.len();
    (0..d)
        .map(|i| (0..d).map(|j| m.data()[i * d + j] * v[j]).sum())
        .collect()
}

/// Copy-object composition `Ā ⊙ (C × B̄)` for verb `C`, subject `B̄` and
/// object `Ā`.
pub fn copy_object_apply(c: &Tensor, subject: &[f64], object: &[f64]) -> Vec<f64> {
    verb_on_subject(c, subject)
        .into_iter()
        .zip(object)
        .map(|(x, a)| x * a)
        .collect()
}
