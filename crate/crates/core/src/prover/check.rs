use thiserror::Error;

use super::{Derivation, RuleData, RuleTag};
use crate::formula::{Formula, Sequent};

/// First rule violation found, with the path of premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid {rule} node at {path:?}: {message}")]
pub struct CheckFailure {
    pub path: Vec<usize>,
    pub rule: RuleTag,
    pub message: String,
}

/// Checks every node of `d` against its rule schema.
pub fn check(d: &Derivation) -> Result<(), CheckFailure> {
    let mut path = Vec::new();
    check_at(d, &mut path)
}

pub fn is_valid(d: &Derivation) -> bool {
    check(d).is_ok()
}

fn check_at(d: &Derivation, path: &mut Vec<usize>) -> Result<(), CheckFailure> {
    let fail = |message: String| CheckFailure {
        path: path.clone(),
        rule: d.rule,
        message,
    };
    if d.premises.len() != d.rule.arity() {
        return Err(fail(format!(
            "expected {} premises, found {}",
            d.rule.arity(),
            d.premises.len()
        )));
    }
    let expected = premise_conclusions(d.rule, d.rule_data, &d.conclusion).map_err(fail)?;
    for (i, (want, prem)) in expected.iter().zip(&d.premises).enumerate() {
        if *want != prem.conclusion {
            return Err(fail(format!(
                "premise {i} should be `{want}`, found `{}`",
                prem.conclusion
            )));
        }
    }
    for (i, prem) in d.premises.iter().enumerate() {
        path.push(i);
        check_at(prem, path)?;
        path.pop();
    }
    Ok(())
}

fn bang_body(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Bang(b) => Some(b),
        _ => None,
    }
}

/// The premises a rule instance demands for a given conclusion.
///
/// This is the single source of truth for the rule schemata: the checker
/// compares against it and the prover builds its subgoals from it.
pub fn premise_conclusions(
    rule: RuleTag,
    data: RuleData,
    conclusion: &Sequent,
) -> Result<Vec<Sequent>, String> {
    let ante = &conclusion.antecedent;
    let succ = &conclusion.succedent;
    let n = ante.len();
    match (rule, data) {
        (RuleTag::Axiom, RuleData::None) => {
            if n == 1 && ante[0] == *succ {
                Ok(Vec::new())
            } else {
                Err("axiom must have the shape A => A".into())
            }
        }
        (
            RuleTag::OverL,
            RuleData::Split {
                principal,
                gamma_len,
            },
        ) => {
            let (b, a) = match ante.get(principal) {
                Some(Formula::Over(b, a)) => (b, a),
                _ => return Err(format!("no `B/A` formula at position {principal}")),
            };
            let gamma_end = principal + 1 + gamma_len;
            if gamma_end > n {
                return Err("argument block runs past the antecedent".into());
            }
            let gamma = ante[principal + 1..gamma_end].to_vec();
            let mut rest = ante[..principal].to_vec();
            rest.push((**b).clone());
            rest.extend_from_slice(&ante[gamma_end..]);
            Ok(vec![
                Sequent::new(gamma, (**a).clone()),
                Sequent::new(rest, succ.clone()),
            ])
        }
        (
            RuleTag::UnderL,
            RuleData::Split {
                principal,
                gamma_len,
            },
        ) => {
            let (a, b) = match ante.get(principal) {
                Some(Formula::Under(a, b)) => (a, b),
                _ => return Err(format!("no `A\\B` formula at position {principal}")),
            };
            if gamma_len > principal {
                return Err("argument block runs past the antecedent".into());
            }
            let gamma_start = principal - gamma_len;
            let gamma = ante[gamma_start..principal].to_vec();
            let mut rest = ante[..gamma_start].to_vec();
            rest.push((**b).clone());
            rest.extend_from_slice(&ante[principal + 1..]);
            Ok(vec![
                Sequent::new(gamma, (**a).clone()),
                Sequent::new(rest, succ.clone()),
            ])
        }
        (RuleTag::OverR, RuleData::None) => match succ {
            Formula::Over(b, a) => {
                let mut prem = ante.clone();
                prem.push((**a).clone());
                Ok(vec![Sequent::new(prem, (**b).clone())])
            }
            _ => Err("succedent is not of the form B/A".into()),
        },
        (RuleTag::UnderR, RuleData::None) => match succ {
            Formula::Under(a, b) => {
                let mut prem = vec![(**a).clone()];
                prem.extend_from_slice(ante);
                Ok(vec![Sequent::new(prem, (**b).clone())])
            }
            _ => Err("succedent is not of the form A\\B".into()),
        },
        (RuleTag::BangL, RuleData::At { index }) => {
            let body = ante
                .get(index)
                .and_then(bang_body)
                .ok_or_else(|| format!("no `!` formula at position {index}"))?;
            let mut prem = ante.clone();
            prem[index] = body.clone();
            Ok(vec![Sequent::new(prem, succ.clone())])
        }
        (RuleTag::BangR, RuleData::None) => {
            let body = bang_body(succ).ok_or("succedent is not a `!` formula")?;
            if let Some(i) = ante.iter().position(|f| !f.is_bang()) {
                return Err(format!("antecedent formula {i} is not `!`-marked"));
            }
            Ok(vec![Sequent::new(ante.clone(), body.clone())])
        }
        (RuleTag::Contr, RuleData::At { index }) => {
            let f = ante
                .get(index)
                .filter(|f| f.is_bang())
                .ok_or_else(|| format!("no `!` formula at position {index}"))?;
            let mut prem = ante.clone();
            prem.insert(index, f.clone());
            Ok(vec![Sequent::new(prem, succ.clone())])
        }
        (RuleTag::Perm1, RuleData::Block { start, len }) => {
            // conclusion: Δ1, Γ, !A, Δ2   premise: Δ1, !A, Γ, Δ2
            if len == 0 {
                return Err("permutation over an empty block".into());
            }
            let bang_at = start + len;
            let bang = ante
                .get(bang_at)
                .filter(|f| f.is_bang())
                .ok_or_else(|| format!("no `!` formula at position {bang_at}"))?;
            let mut prem = ante[..start].to_vec();
            prem.push(bang.clone());
            prem.extend_from_slice(&ante[start..bang_at]);
            prem.extend_from_slice(&ante[bang_at + 1..]);
            Ok(vec![Sequent::new(prem, succ.clone())])
        }
        (RuleTag::Perm2, RuleData::Block { start, len }) => {
            // conclusion: Δ1, !A, Γ, Δ2   premise: Δ1, Γ, !A, Δ2
            if len == 0 {
                return Err("permutation over an empty block".into());
            }
            let bang = ante
                .get(start)
                .filter(|f| f.is_bang())
                .ok_or_else(|| format!("no `!` formula at position {start}"))?;
            let end = start + 1 + len;
            if end > n {
                return Err("permutation block runs past the antecedent".into());
            }
            let mut prem = ante[..start].to_vec();
            prem.extend_from_slice(&ante[start + 1..end]);
            prem.push(bang.clone());
            prem.extend_from_slice(&ante[end..]);
            Ok(vec![Sequent::new(prem, succ.clone())])
        }
        (rule, data) => Err(format!("rule data {data:?} does not fit rule {rule}")),
    }
}
