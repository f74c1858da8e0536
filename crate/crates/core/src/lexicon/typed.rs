use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{
    build_copy_object_verb, build_relational_verb, read, EmbeddingTable, LexiconError,
    TriplesCorpus,
};
use crate::formula::{parse_formula, Formula};
use crate::morphism::interpret_formula;
use crate::tensor::{CopyMode, SpaceAssignment, Tensor};

const FORMAT: &str = "bangl-lexicon";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SourceKind {
    Embedding,
    Relational,
    CopyObject,
    Tensor,
    Inline,
}

impl SourceKind {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "embedding" => SourceKind::Embedding,
            "relational" => SourceKind::Relational,
            "copy-object" => SourceKind::CopyObject,
            "tensor" => SourceKind::Tensor,
            "inline" => SourceKind::Inline,
            _ => return None,
        })
    }
}

/// A word's type and its tensor.
///
/// Copy-object verbs of type `(A\B)/C` keep only their `d×d` matrix; see
/// [`LexEntry::expanded`] for the full tensor.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LexEntry {
    #[serde(rename = "type")]
    pub formula: Formula,
    pub kind: SourceKind,
    pub tensor: Tensor,
}

impl LexEntry {
    /// The tensor over the formula's wires. For a copy-object matrix `C` this
    /// is the cube `T[i, s, j] = C[i, s] · δ(s, j)`, so that applying it to a
    /// subject `B̄` and an object `Ā` gives `Ā ⊙ (C × B̄)`.
    pub fn expanded(&self) -> Tensor {
        if self.kind != SourceKind::CopyObject {
            return self.tensor.clone();
        }
        let d = self.tensor.shape()[0];
        Tensor::from_fn(vec![d, d, d], |i| {
            if i[1] == i[2] {
                self.tensor.get(&[i[0], i[1]])
            } else {
                0.0
            }
        })
    }
}

/// Words with their types and tensors, plus the atom dimensions they were
/// checked against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TypedLexicon {
    pub format: String,
    pub dims: BTreeMap<String, usize>,
    pub entries: BTreeMap<String, LexEntry>,
}

impl TypedLexicon {
    pub fn spaces(&self) -> SpaceAssignment {
        SpaceAssignment::new(self.dims.iter().map(|(a, d)| (a.clone(), *d)))
    }

    /// Exact lookup, falling back to the lowercased word.
    pub fn get(&self, word: &str) -> Option<&LexEntry> {
        self.entries
            .get(word)
            .or_else(|| self.entries.get(&word.to_lowercase()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("lexicons always serialize")
    }

    /// Reads a materialized lexicon and re-validates every entry.
    pub fn from_json(text: &str) -> Result<Self, LexiconError> {
        let lex: TypedLexicon = serde_json::from_str(text)?;
        if lex.format != FORMAT {
            return Err(LexiconError::Entry {
                word: String::new(),
                message: format!("unknown lexicon format `{}`", lex.format),
            });
        }
        let spaces = lex.spaces();
        for (word, e) in &lex.entries {
            validate(word, &e.formula, e.kind, &e.tensor, &spaces)?;
        }
        Ok(lex)
    }

    /// Loads either a materialized lexicon or a source lexicon, which is then
    /// built from `res`.
    pub fn load(path: &Path, res: &Resources) -> Result<Self, LexiconError> {
        let text = read(path)?;
        let value: Value = serde_json::from_str(&text)?;
        if value.get("format").and_then(Value::as_str) == Some(FORMAT) {
            return TypedLexicon::from_json(&text);
        }
        let mut res = res.clone();
        if res.base_dir.as_os_str().is_empty() {
            res.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        }
        assign_types(&text, &res)
    }
}

/// What a source lexicon may draw on.
#[derive(Clone, Debug, Default)]
pub struct Resources<'a> {
    pub embeddings: Option<&'a EmbeddingTable>,
    pub triples: Option<&'a TriplesCorpus>,
    /// Directory that `tensor` sources are resolved against.
    pub base_dir: PathBuf,
    /// Atom dimensions; atoms left out get the embedding dimension.
    pub spaces: SpaceAssignment,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntrySpec {
    #[serde(rename = "type")]
    ty: String,
    source: SourceSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SourceSpec {
    kind: String,
    #[serde(default)]
    args: Value,
}

#[derive(Deserialize)]
struct InlineArgs {
    shape: Vec<usize>,
    data: Vec<f64>,
}

/// Builds a typed lexicon from JSON mapping each word to
/// `{"type": formula, "source": {"kind": …, "args": …}}`.
///
/// Kinds: `embedding` (args: optional word, defaults to the entry's word),
/// `relational` and `copy-object` (args: optional verb), `tensor` (args: a
/// path to a tensor text file) and `inline` (args: `{shape, data}`).
pub fn assign_types(json: &str, res: &Resources) -> Result<TypedLexicon, LexiconError> {
    let specs: BTreeMap<String, EntrySpec> = serde_json::from_str(json)?;
    let mut spaces = res.spaces.clone();
    for spec in specs.values() {
        if let Ok(f) = parse_formula(&spec.ty) {
            let mut atoms = Vec::new();
            f.atoms(&mut atoms);
            for a in atoms {
                if !spaces.dims.contains_key(&a) {
                    if let Some(e) = res.embeddings {
                        spaces.set(a, e.dim);
                    }
                }
            }
        }
    }

    let mut entries = BTreeMap::new();
    for (word, spec) in &specs {
        let entry_err = |message: String| LexiconError::Entry {
            word: word.clone(),
            message,
        };
        let formula = parse_formula(&spec.ty).map_err(|source| LexiconError::Type {
            word: word.clone(),
            source,
        })?;
        let kind =
            SourceKind::parse(&spec.source.kind).ok_or_else(|| LexiconError::UnknownSource {
                word: word.clone(),
                kind: spec.source.kind.clone(),
            })?;
        let name_arg = || -> Result<String, LexiconError> {
            match &spec.source.args {
                Value::Null => Ok(word.clone()),
                Value::String(s) => Ok(s.clone()),
                Value::Array(v) if v.is_empty() => Ok(word.clone()),
                Value::Array(v) if v.len() == 1 && v[0].is_string() => {
                    Ok(v[0].as_str().unwrap().to_string())
                }
                other => Err(entry_err(format!(
                    "expected one word argument, found {other}"
                ))),
            }
        };
        let need_emb = || {
            res.embeddings
                .ok_or_else(|| entry_err("needs an embedding table".into()))
        };
        let need_triples = || {
            res.triples
                .ok_or_else(|| entry_err("needs a triples corpus".into()))
        };
        let tensor = match kind {
            SourceKind::Embedding => need_emb()?.vector(&name_arg()?)?,
            SourceKind::Relational => {
                build_relational_verb(&name_arg()?, need_triples()?, need_emb()?)?
            }
            SourceKind::CopyObject => {
                build_copy_object_verb(&name_arg()?, need_triples()?, need_emb()?)?
            }
            SourceKind::Tensor => {
                let rel = name_arg()?;
                Tensor::load(&res.base_dir.join(rel))?
            }
            SourceKind::Inline => {
                let args: InlineArgs = serde_json::from_value(spec.source.args.clone())
                    .map_err(|e| entry_err(format!("inline tensor: {e}")))?;
                Tensor::new(args.shape, args.data)?
            }
        };
        validate(word, &formula, kind, &tensor, &spaces)?;
        entries.insert(
            word.clone(),
            LexEntry {
                formula,
                kind,
                tensor,
            },
        );
    }
    Ok(TypedLexicon {
        format: FORMAT.to_string(),
        dims: spaces.dims,
        entries,
    })
}

fn validate(
    word: &str,
    formula: &Formula,
    kind: SourceKind,
    tensor: &Tensor,
    spaces: &SpaceAssignment,
) -> Result<(), LexiconError> {
    let expected = if kind == SourceKind::CopyObject {
        // (A\B)/C with all three spaces of one dimension d, stored as d×d
        let dims = match formula {
            Formula::Over(ab, c) => match &**ab {
                Formula::Under(a, b) => [a, b, c]
                    .iter()
                    .map(|f| spaces.dim(&interpret_formula(f), &CopyMode::Cogebra))
                    .collect::<Result<Vec<_>, _>>()?,
                _ => Vec::new(),
            },
            _ => Vec::new(),
        };
        if dims.len() != 3 || dims.iter().any(|&d| d != dims[0]) {
            return Err(LexiconError::Entry {
                word: word.to_string(),
                message: format!(
                    "copy-object verbs need a type (A\\B)/C over spaces of one dimension, found {formula}"
                ),
            });
        }
        vec![dims[0], dims[0]]
    } else {
        spaces.wires(&interpret_formula(formula), &CopyMode::Cogebra)?
    };
    if tensor.shape() != expected {
        return Err(LexiconError::Shape {
            word: word.to_string(),
            expected,
            found: tensor.shape().to_vec(),
        });
    }
    Ok(())
}
