//! Categorical morphism terms.
//!
//! Formulae are interpreted as objects of a monoidal biclosed category with a
//! coalgebra modality, and derivations compile to morphism terms built from
//! the generators of that structure. Tensor products of objects are kept
//! strict: an [`ObjectTerm::Tensor`] is a flat list of at least two
//! non-unit factors, so associators never appear.

mod compile;
mod dot;
mod simplify;
mod typecheck;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::{Formula, Sequent};

pub use compile::{compile, CompileError};
pub use dot::{export_derivation_dot, export_morphism_dot};
pub use simplify::simplify;
pub use typecheck::{typecheck, TypeError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ObjectTerm {
    UnitI,
    Base(String),
    Tensor(Vec<ObjectTerm>),
    /// `A ⇒ B`, the interpretation of `A\B`.
    HomR(Box<ObjectTerm>, Box<ObjectTerm>),
    /// `B ⇐ A`, the interpretation of `B/A`. Fields are (result, argument).
    HomL(Box<ObjectTerm>, Box<ObjectTerm>),
    BangO(Box<ObjectTerm>),
}

impl ObjectTerm {
    pub fn base(name: impl Into<String>) -> Self {
        ObjectTerm::Base(name.into())
    }

    pub fn hom_r(a: ObjectTerm, b: ObjectTerm) -> Self {
        ObjectTerm::HomR(Box::new(a), Box::new(b))
    }

    pub fn hom_l(b: ObjectTerm, a: ObjectTerm) -> Self {
        ObjectTerm::HomL(Box::new(b), Box::new(a))
    }

    pub fn bang(a: ObjectTerm) -> Self {
        ObjectTerm::BangO(Box::new(a))
    }

    /// Strict tensor product: nested tensors are flattened and units dropped.
    pub fn tensor(parts: impl IntoIterator<Item = ObjectTerm>) -> Self {
        let mut flat = Vec::new();
        for p in parts {
            flat.extend(p.factors());
        }
        match flat.len() {
            0 => ObjectTerm::UnitI,
            1 => flat.pop().unwrap(),
            _ => ObjectTerm::Tensor(flat),
        }
    }

    /// The top-level tensor factors; empty for the unit.
    pub fn factors(&self) -> Vec<ObjectTerm> {
        match self {
            ObjectTerm::UnitI => Vec::new(),
            ObjectTerm::Tensor(v) => v.clone(),
            other => vec![other.clone()],
        }
    }

    /// Rebuilds the term with every tensor flattened.
    pub fn normalized(&self) -> ObjectTerm {
        match self {
            ObjectTerm::UnitI | ObjectTerm::Base(_) => self.clone(),
            ObjectTerm::Tensor(v) => ObjectTerm::tensor(v.iter().map(ObjectTerm::normalized)),
            ObjectTerm::HomR(a, b) => ObjectTerm::hom_r(a.normalized(), b.normalized()),
            ObjectTerm::HomL(b, a) => ObjectTerm::hom_l(b.normalized(), a.normalized()),
            ObjectTerm::BangO(a) => ObjectTerm::bang(a.normalized()),
        }
    }

    pub fn contains_bang(&self) -> bool {
        match self {
            ObjectTerm::UnitI | ObjectTerm::Base(_) => false,
            ObjectTerm::Tensor(v) => v.iter().any(ObjectTerm::contains_bang),
            ObjectTerm::HomR(a, b) | ObjectTerm::HomL(a, b) => {
                a.contains_bang() || b.contains_bang()
            }
            ObjectTerm::BangO(_) => true,
        }
    }
}

impl fmt::Display for ObjectTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectTerm::UnitI => f.write_str("I"),
            ObjectTerm::Base(n) => f.write_str(n),
            ObjectTerm::Tensor(v) => {
                f.write_str("(")?;
                for (i, o) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ⊗ ")?;
                    }
                    write!(f, "{o}")?;
                }
                f.write_str(")")
            }
            ObjectTerm::HomR(a, b) => write!(f, "({a} ⇒ {b})"),
            ObjectTerm::HomL(b, a) => write!(f, "({b} ⇐ {a})"),
            ObjectTerm::BangO(a) => write!(f, "!{a}"),
        }
    }
}

/// The interpretation map on formulae.
pub fn interpret_formula(f: &Formula) -> ObjectTerm {
    match f {
        Formula::Atom(n) => ObjectTerm::Base(n.clone()),
        Formula::Unit => ObjectTerm::UnitI,
        Formula::Product(a, b) => ObjectTerm::tensor([interpret_formula(a), interpret_formula(b)]),
        Formula::Under(a, b) => ObjectTerm::hom_r(interpret_formula(a), interpret_formula(b)),
        Formula::Over(b, a) => ObjectTerm::hom_l(interpret_formula(b), interpret_formula(a)),
        Formula::Bang(a) => ObjectTerm::bang(interpret_formula(a)),
    }
}

/// Tensor of the interpreted formulae; the unit for an empty context.
pub fn interpret_context(ctx: &[Formula]) -> ObjectTerm {
    ObjectTerm::tensor(ctx.iter().map(interpret_formula))
}

/// `(domain, codomain)` of a sequent's interpretation.
pub fn interpret_sequent(s: &Sequent) -> (ObjectTerm, ObjectTerm) {
    (
        interpret_context(&s.antecedent),
        interpret_formula(&s.succedent),
    )
}

/// Morphism terms. Generators carry the objects they are indexed by.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum MorphTerm {
    Id {
        obj: ObjectTerm,
    },
    /// `later ∘ earlier`.
    Compose {
        later: Box<MorphTerm>,
        earlier: Box<MorphTerm>,
    },
    /// `left ⊗ right`.
    Par {
        left: Box<MorphTerm>,
        right: Box<MorphTerm>,
    },
    /// `A ⊗ (A ⇒ B) → B`.
    EvR {
        a: ObjectTerm,
        b: ObjectTerm,
    },
    /// `(A ⇐ B) ⊗ B → A`.
    EvL {
        a: ObjectTerm,
        b: ObjectTerm,
    },
    /// From `body : A ⊗ C → B` to `C → (A ⇒ B)`.
    CurryL {
        arg: ObjectTerm,
        body: Box<MorphTerm>,
    },
    /// From `body : C ⊗ A → B` to `C → (B ⇐ A)`.
    CurryR {
        arg: ObjectTerm,
        body: Box<MorphTerm>,
    },
    /// Comonoid comultiplication `!A → !A ⊗ !A`.
    CopyDelta {
        a: ObjectTerm,
    },
    /// Comonoid counit `!A → I`.
    CounitE {
        a: ObjectTerm,
    },
    /// Comonad counit `!A → A`.
    Epsilon {
        a: ObjectTerm,
    },
    /// Comonad comultiplication `!A → !!A`.
    DeltaComonad {
        a: ObjectTerm,
    },
    /// `!!A₁ ⊗ … ⊗ !!Aₙ → !(!A₁ ⊗ … ⊗ !Aₙ)`; `I → !I` when empty.
    LaxM {
        objs: Vec<ObjectTerm>,
    },
    /// Functorial action: `body : X → Y` gives `!X → !Y`.
    BangF {
        body: Box<MorphTerm>,
    },
    /// `A ⊗ !B → !B ⊗ A`.
    SwapR {
        a: ObjectTerm,
        b: ObjectTerm,
    },
    /// `!A ⊗ B → B ⊗ !A`.
    SwapL {
        a: ObjectTerm,
        b: ObjectTerm,
    },
}

impl MorphTerm {
    pub fn id(obj: ObjectTerm) -> Self {
        MorphTerm::Id { obj }
    }

    pub fn compose(later: MorphTerm, earlier: MorphTerm) -> Self {
        MorphTerm::Compose {
            later: Box::new(later),
            earlier: Box::new(earlier),
        }
    }

    pub fn par(left: MorphTerm, right: MorphTerm) -> Self {
        MorphTerm::Par {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// Right-nested tensor of morphisms; `Id(I)` when empty.
    pub fn par_all(parts: Vec<MorphTerm>) -> Self {
        let mut iter = parts.into_iter().rev();
        match iter.next() {
            None => MorphTerm::id(ObjectTerm::UnitI),
            Some(last) => iter.fold(last, |acc, m| MorphTerm::par(m, acc)),
        }
    }

    /// Short generator name, as used in counts, JSON tags and graph labels.
    pub fn name(&self) -> &'static str {
        match self {
            MorphTerm::Id { .. } => "id",
            MorphTerm::Compose { .. } => "compose",
            MorphTerm::Par { .. } => "par",
            MorphTerm::EvR { .. } => "ev_r",
            MorphTerm::EvL { .. } => "ev_l",
            MorphTerm::CurryL { .. } => "curry_l",
            MorphTerm::CurryR { .. } => "curry_r",
            MorphTerm::CopyDelta { .. } => "copy_delta",
            MorphTerm::CounitE { .. } => "counit_e",
            MorphTerm::Epsilon { .. } => "epsilon",
            MorphTerm::DeltaComonad { .. } => "delta_comonad",
            MorphTerm::LaxM { .. } => "lax_m",
            MorphTerm::BangF { .. } => "bang_f",
            MorphTerm::SwapR { .. } => "swap_r",
            MorphTerm::SwapL { .. } => "swap_l",
        }
    }

    pub fn children(&self) -> Vec<&MorphTerm> {
        match self {
            MorphTerm::Compose { later, earlier } => vec![later, earlier],
            MorphTerm::Par { left, right } => vec![left, right],
            MorphTerm::CurryL { body, .. }
            | MorphTerm::CurryR { body, .. }
            | MorphTerm::BangF { body } => vec![body],
            _ => Vec::new(),
        }
    }

    /// Number of subterms (this one included) with the given generator name.
    pub fn count(&self, name: &str) -> usize {
        usize::from(self.name() == name)
            + self
                .children()
                .into_iter()
                .map(|c| c.count(name))
                .sum::<usize>()
    }

    pub fn size(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(MorphTerm::size)
            .sum::<usize>()
    }
}

/// A morphism term together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypedMorphism {
    pub term: MorphTerm,
    pub domain: ObjectTerm,
    pub codomain: ObjectTerm,
}

impl TypedMorphism {
    /// Wraps a term, computing its endpoints.
    pub fn new(term: MorphTerm) -> Result<Self, TypeError> {
        let (domain, codomain) = typecheck(&term)?;
        Ok(TypedMorphism {
            term,
            domain,
            codomain,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("morphisms always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
