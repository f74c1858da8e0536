use thiserror::Error;

use super::{
    interpret_context, interpret_formula, MorphTerm, ObjectTerm, TypeError, TypedMorphism,
};
use crate::formula::Formula;
use crate::prover::{check, CheckFailure, Derivation, RuleData, RuleTag};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("derivation rejected: {0}")]
    Invalid(#[from] CheckFailure),
    #[error("compiled term does not typecheck: {0}")]
    Type(#[from] TypeError),
}

/// Compiles a checked derivation to a morphism from the tensor of its
/// antecedent to its succedent, rule by rule.
pub fn compile(d: &Derivation) -> Result<TypedMorphism, CompileError> {
    check(d)?;
    let term = node(d);
    Ok(TypedMorphism::new(term)?)
}

fn ids(ctx: &[Formula]) -> MorphTerm {
    MorphTerm::id(interpret_context(ctx))
}

fn body(f: &Formula) -> ObjectTerm {
    match f {
        Formula::Bang(a) => interpret_formula(a),
        other => unreachable!("checked derivation has `!` here, found {other}"),
    }
}

/// `id_before ⊗ m ⊗ id_after` around position `at..at + width`.
fn around(ante: &[Formula], at: usize, width: usize, m: MorphTerm) -> MorphTerm {
    MorphTerm::par_all(vec![ids(&ante[..at]), m, ids(&ante[at + width..])])
}

fn node(d: &Derivation) -> MorphTerm {
    let ante = &d.conclusion.antecedent;
    let prem = |i: usize| node(&d.premises[i]);
    match (d.rule, d.rule_data) {
        (RuleTag::Axiom, _) => MorphTerm::id(interpret_formula(&d.conclusion.succedent)),
        (
            RuleTag::UnderL,
            RuleData::Split {
                principal,
                gamma_len,
            },
        ) => {
            // Δ₁, Γ, A\B, Δ₂  ⟶  Δ₁, A, A\B, Δ₂  ⟶  Δ₁, B, Δ₂  ⟶  C
            let (a, b) = match &ante[principal] {
                Formula::Under(a, b) => (interpret_formula(a), interpret_formula(b)),
                _ => unreachable!(),
            };
            let start = principal - gamma_len;
            let apply_f =
                MorphTerm::par_all(vec![ids(&ante[..start]), prem(0), ids(&ante[principal..])]);
            let ev = MorphTerm::par_all(vec![
                ids(&ante[..start]),
                MorphTerm::EvR { a, b },
                ids(&ante[principal + 1..]),
            ]);
            MorphTerm::compose(prem(1), MorphTerm::compose(ev, apply_f))
        }
        (
            RuleTag::OverL,
            RuleData::Split {
                principal,
                gamma_len,
            },
        ) => {
            // Δ₁, B/A, Γ, Δ₂  ⟶  Δ₁, B/A, A, Δ₂  ⟶  Δ₁, B, Δ₂  ⟶  C
            let (b, a) = match &ante[principal] {
                Formula::Over(b, a) => (interpret_formula(b), interpret_formula(a)),
                _ => unreachable!(),
            };
            let end = principal + 1 + gamma_len;
            let apply_f =
                MorphTerm::par_all(vec![ids(&ante[..=principal]), prem(0), ids(&ante[end..])]);
            let ev = MorphTerm::par_all(vec![
                ids(&ante[..principal]),
                MorphTerm::EvL { a: b, b: a },
                ids(&ante[end..]),
            ]);
            MorphTerm::compose(prem(1), MorphTerm::compose(ev, apply_f))
        }
        (RuleTag::UnderR, _) => match &d.conclusion.succedent {
            Formula::Under(a, _) => MorphTerm::CurryL {
                arg: interpret_formula(a),
                body: Box::new(prem(0)),
            },
            _ => unreachable!(),
        },
        (RuleTag::OverR, _) => match &d.conclusion.succedent {
            Formula::Over(_, a) => MorphTerm::CurryR {
                arg: interpret_formula(a),
                body: Box::new(prem(0)),
            },
            _ => unreachable!(),
        },
        (RuleTag::Contr, RuleData::At { index }) => {
            let copy = MorphTerm::CopyDelta {
                a: body(&ante[index]),
            };
            MorphTerm::compose(prem(0), around(ante, index, 1, copy))
        }
        (RuleTag::BangL, RuleData::At { index }) => {
            let eps = MorphTerm::Epsilon {
                a: body(&ante[index]),
            };
            MorphTerm::compose(prem(0), around(ante, index, 1, eps))
        }
        (RuleTag::BangR, _) => {
            let bodies: Vec<ObjectTerm> = ante.iter().map(body).collect();
            let deltas = MorphTerm::par_all(
                bodies
                    .iter()
                    .map(|a| MorphTerm::DeltaComonad { a: a.clone() })
                    .collect(),
            );
            let lax = MorphTerm::LaxM { objs: bodies };
            let lifted = MorphTerm::BangF {
                body: Box::new(prem(0)),
            };
            MorphTerm::compose(lifted, MorphTerm::compose(lax, deltas))
        }
        (RuleTag::Perm1, RuleData::Block { start, len }) => {
            // Δ₁, Γ, !A, Δ₂  ⟶  Δ₁, !A, Γ, Δ₂ : move !A left one factor at a time
            let mut cur = ante.clone();
            let mut pos = start + len;
            let mut chain = MorphTerm::id(interpret_context(ante));
            while pos > start {
                let swap = MorphTerm::SwapR {
                    a: interpret_formula(&cur[pos - 1]),
                    b: body(&cur[pos]),
                };
                chain = MorphTerm::compose(around(&cur, pos - 1, 2, swap), chain);
                cur.swap(pos - 1, pos);
                pos -= 1;
            }
            MorphTerm::compose(prem(0), chain)
        }
        (RuleTag::Perm2, RuleData::Block { start, len }) => {
            // Δ₁, !A, Γ, Δ₂  ⟶  Δ₁, Γ, !A, Δ₂ : move !A right one factor at a time
            let mut cur = ante.clone();
            let mut pos = start;
            let mut chain = MorphTerm::id(interpret_context(ante));
            while pos < start + len {
                let swap = MorphTerm::SwapL {
                    a: body(&cur[pos]),
                    b: interpret_formula(&cur[pos + 1]),
                };
                chain = MorphTerm::compose(around(&cur, pos, 2, swap), chain);
                cur.swap(pos, pos + 1);
                pos += 1;
            }
            MorphTerm::compose(prem(0), chain)
        }
        (rule, data) => unreachable!("checked derivation has {rule} with {data:?}"),
    }
}
