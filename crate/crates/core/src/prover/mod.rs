//! Derivations for the calculus, a local rule checker and bounded backward
//! proof search.

mod check;
mod search;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::formula::Sequent;

pub use check::{check, is_valid, premise_conclusions, CheckFailure};
pub use search::{prove, prove_all, SearchBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleTag {
    Axiom,
    OverL,
    OverR,
    UnderL,
    UnderR,
    BangL,
    BangR,
    Perm1,
    Perm2,
    Contr,
}

impl RuleTag {
    pub const ALL: [RuleTag; 10] = [
        RuleTag::Axiom,
        RuleTag::OverL,
        RuleTag::OverR,
        RuleTag::UnderL,
        RuleTag::UnderR,
        RuleTag::BangL,
        RuleTag::BangR,
        RuleTag::Perm1,
        RuleTag::Perm2,
        RuleTag::Contr,
    ];

    pub fn arity(self) -> usize {
        match self {
            RuleTag::Axiom => 0,
            RuleTag::OverL | RuleTag::UnderL => 2,
            _ => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RuleTag::Axiom => "ax",
            RuleTag::OverL => "/L",
            RuleTag::OverR => "/R",
            RuleTag::UnderL => "\\L",
            RuleTag::UnderR => "\\R",
            RuleTag::BangL => "!L",
            RuleTag::BangR => "!R",
            RuleTag::Perm1 => "perm1",
            RuleTag::Perm2 => "perm2",
            RuleTag::Contr => "contr",
        }
    }
}

impl fmt::Display for RuleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Positions needed to rebuild a rule instance from its conclusion.
///
/// All indices refer to the conclusion's antecedent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RuleData {
    None,
    /// `/L` and `\L`: the principal formula and the length of the block `Γ`
    /// it consumes (to its right for `/L`, to its left for `\L`).
    Split {
        principal: usize,
        gamma_len: usize,
    },
    /// `!L` and `contr`: the `!`-formula acted on.
    At {
        index: usize,
    },
    /// `perm1`/`perm2`: `Γ` starts at `start` and has `len` formulae. For
    /// `perm1` the `!`-formula sits right after `Γ`, for `perm2` right
    /// before it (at `start`, with `Γ` shifted by one).
    Block {
        start: usize,
        len: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: RuleTag,
    #[serde(rename = "data")]
    pub rule_data: RuleData,
    pub conclusion: Sequent,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn axiom(conclusion: Sequent) -> Self {
        Derivation {
            rule: RuleTag::Axiom,
            rule_data: RuleData::None,
            conclusion,
            premises: Vec::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::node_count)
            .sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(Derivation::height)
            .max()
            .unwrap_or(0)
    }

    pub fn count_rule(&self, tag: RuleTag) -> usize {
        usize::from(self.rule == tag)
            + self
                .premises
                .iter()
                .map(|p| p.count_rule(tag))
                .sum::<usize>()
    }

    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&Derivation> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(d) = stack.pop() {
            out.push(d);
            for p in d.premises.iter().rev() {
                stack.push(p);
            }
        }
        out
    }

    /// Mutable access to the node at a pre-order index.
    pub fn node_mut(&mut self, index: usize) -> Option<&mut Derivation> {
        fn go<'a>(
            d: &'a mut Derivation,
            target: usize,
            seen: &mut usize,
        ) -> Option<&'a mut Derivation> {
            if *seen == target {
                return Some(d);
            }
            *seen += 1;
            for p in d.premises.iter_mut() {
                if let Some(found) = go(p, target, seen) {
                    return Some(found);
                }
            }
            None
        }
        let mut seen = 0;
        go(self, index, &mut seen)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("derivations always serialize")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Indented tree, conclusion first.
    pub fn pretty(&self) -> String {
        let mut out = String::new();
        self.pretty_into(&mut out, 0);
        out
    }

    fn pretty_into(&self, out: &mut String, depth: usize) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}   [{}]\n", self.conclusion, self.rule));
        for p in &self.premises {
            p.pretty_into(out, depth + 1);
        }
    }
}
