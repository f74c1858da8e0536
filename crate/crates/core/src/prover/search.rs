//! Goal-directed, cut-free proof search.
//!
//! Contraction and permutation are budgeted per branch; every rule node also
//! consumes one unit of depth. Subgoals are memoized on the sequent together
//! with the remaining budget.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{premise_conclusions, Derivation, RuleData, RuleTag};
use crate::formula::{Formula, Sequent};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SearchBudget {
    pub max_contractions: usize,
    pub max_perm_moves: usize,
    pub max_depth: usize,
}

impl SearchBudget {
    pub fn new(max_contractions: usize, max_perm_moves: usize, max_depth: usize) -> Self {
        SearchBudget {
            max_contractions,
            max_perm_moves,
            max_depth,
        }
    }

    /// Pure Lambek search: no structural rules.
    pub fn lambek(max_depth: usize) -> Self {
        Self::new(0, 0, max_depth)
    }

    pub fn covers(&self, other: &SearchBudget) -> bool {
        self.max_contractions >= other.max_contractions
            && self.max_perm_moves >= other.max_perm_moves
            && self.max_depth >= other.max_depth
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(1, 4, 64)
    }
}

/// Finds one derivation within the budget, if any exists.
///
/// Structural budgets are raised step by step (contractions outermost), so
/// the derivation returned uses as few contractions, and then as few
/// permutations, as the search can manage.
pub fn prove(s: &Sequent, budget: SearchBudget) -> Option<Derivation> {
    let mut searcher = Searcher::default();
    for contractions in 0..=budget.max_contractions {
        for perms in 0..=budget.max_perm_moves {
            let b = SearchBudget::new(contractions, perms, budget.max_depth);
            if let Some(d) = searcher.search(s, State::start(b), 1).into_iter().next() {
                return Some(d);
            }
        }
    }
    None
}

/// Up to `limit` distinct derivations, in canonical (derived `Ord`) order.
pub fn prove_all(s: &Sequent, budget: SearchBudget, limit: usize) -> Vec<Derivation> {
    if limit == 0 {
        return Vec::new();
    }
    let mut found = Searcher::default().search(s, State::start(budget), limit);
    found.sort();
    found.dedup();
    found
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct State {
    contractions: usize,
    perms: usize,
    depth: usize,
    /// The permutation that produced this goal, to avoid undoing it at once.
    last_perm: Option<(RuleTag, usize)>,
    /// Contraction and permutation are open: no left rule has been applied
    /// since the root or the last right rule.
    structural: bool,
    /// A `!L` has already been applied in the current run of structural
    /// rules; contraction and permutation must come before it.
    after_bang_left: bool,
}

impl State {
    fn start(b: SearchBudget) -> Self {
        State {
            contractions: b.max_contractions,
            perms: b.max_perm_moves,
            depth: b.max_depth,
            last_perm: None,
            structural: true,
            after_bang_left: false,
        }
    }

    fn below(self) -> Self {
        State {
            depth: self.depth - 1,
            last_perm: None,
            after_bang_left: false,
            ..self
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    goal: Sequent,
    state: State,
}

struct Memo {
    results: Vec<Derivation>,
    complete: bool,
}

#[derive(Default)]
struct Searcher {
    memo: HashMap<Key, Memo>,
}

/// One backward rule application: the rule instance plus the state handed to
/// its premises.
struct Step {
    rule: RuleTag,
    data: RuleData,
    next: State,
}

impl Searcher {
    fn search(&mut self, goal: &Sequent, state: State, limit: usize) -> Vec<Derivation> {
        if state.depth == 0 || limit == 0 {
            return Vec::new();
        }
        let key = Key {
            goal: goal.clone(),
            state,
        };
        if let Some(m) = self.memo.get(&key) {
            if m.complete || m.results.len() >= limit {
                return m.results.iter().take(limit).cloned().collect();
            }
        }

        let mut results = Vec::new();
        let mut complete = true;
        for step in candidate_steps(goal, state) {
            let remaining = limit - results.len();
            let premises = match premise_conclusions(step.rule, step.data, goal) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let node = |premises: Vec<Derivation>| Derivation {
                rule: step.rule,
                rule_data: step.data,
                conclusion: goal.clone(),
                premises,
            };
            match premises.len() {
                0 => results.push(node(Vec::new())),
                1 => {
                    for p in self.search(&premises[0], step.next, remaining) {
                        results.push(node(vec![p]));
                    }
                }
                _ => {
                    let left = self.search(&premises[0], step.next, remaining);
                    if left.is_empty() {
                        continue;
                    }
                    let right = self.search(&premises[1], step.next, remaining);
                    'pairs: for l in &left {
                        for r in &right {
                            results.push(node(vec![l.clone(), r.clone()]));
                            if results.len() >= limit {
                                break 'pairs;
                            }
                        }
                    }
                }
            }
            if results.len() >= limit {
                results.truncate(limit);
                complete = false;
                break;
            }
        }
        self.memo.insert(
            key,
            Memo {
                results: results.clone(),
                complete,
            },
        );
        results
    }
}

/// Rule applications to try, in search order: axiom, right rules, then the
/// structural rules (contraction, permutation, `!L`) and finally the left
/// rules for the slashes with every split of the context, left to right.
///
/// Contraction and permutation only open a branch: they are tried at the
/// root and right after a right rule, never above a left rule. Within such a
/// run, `!L` steps sit above every contraction and permutation. A
/// permutation above a left rule can always be pushed below it, at the price
/// of crossing the rule's whole argument block one step at a time.
fn candidate_steps(goal: &Sequent, state: State) -> Vec<Step> {
    let ante = &goal.antecedent;
    let n = ante.len();
    let below = state.below();
    let mut steps = Vec::new();
    let plain = |rule, data| Step {
        rule,
        data,
        next: below,
    };

    let structural = state.structural && !state.after_bang_left;
    let right_rule = |rule| Step {
        rule,
        data: RuleData::None,
        next: State {
            structural: true,
            ..below
        },
    };
    let left_rule = |rule, principal, gamma_len| Step {
        rule,
        data: RuleData::Split {
            principal,
            gamma_len,
        },
        next: State {
            structural: false,
            ..below
        },
    };

    if n == 1 && ante[0] == goal.succedent {
        steps.push(plain(RuleTag::Axiom, RuleData::None));
    }
    match &goal.succedent {
        Formula::Over(..) => steps.push(right_rule(RuleTag::OverR)),
        Formula::Under(..) => steps.push(right_rule(RuleTag::UnderR)),
        Formula::Bang(_) if ante.iter().all(Formula::is_bang) => {
            steps.push(right_rule(RuleTag::BangR))
        }
        _ => {}
    }

    let bangs: Vec<usize> = (0..n).filter(|&i| ante[i].is_bang()).collect();

    if state.contractions > 0 && structural {
        for &i in &bangs {
            steps.push(Step {
                rule: RuleTag::Contr,
                data: RuleData::At { index: i },
                next: State {
                    contractions: state.contractions - 1,
                    ..below
                },
            });
        }
    }

    if state.perms > 0 && structural {
        let moved = |rule, start| Step {
            rule,
            data: RuleData::Block { start, len: 1 },
            next: State {
                perms: state.perms - 1,
                last_perm: Some((rule, start)),
                ..below
            },
        };
        for &i in &bangs {
            // perm1 read upwards moves the `!` one place to the left
            if i >= 1 && ante[i - 1] != ante[i] && state.last_perm != Some((RuleTag::Perm2, i - 1))
            {
                steps.push(moved(RuleTag::Perm1, i - 1));
            }
            if i + 1 < n && ante[i + 1] != ante[i] && state.last_perm != Some((RuleTag::Perm1, i)) {
                steps.push(moved(RuleTag::Perm2, i));
            }
        }
    }

    for &i in &bangs {
        steps.push(Step {
            rule: RuleTag::BangL,
            data: RuleData::At { index: i },
            next: State {
                after_bang_left: true,
                ..below
            },
        });
    }

    for (p, f) in ante.iter().enumerate() {
        match f {
            Formula::Over(..) => {
                for gamma_len in 0..n - p {
                    steps.push(left_rule(RuleTag::OverL, p, gamma_len));
                }
            }
            Formula::Under(..) => {
                for gamma_len in 0..=p {
                    steps.push(left_rule(RuleTag::UnderL, p, gamma_len));
                }
            }
            _ => {}
        }
    }
    steps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;
    use crate::prover::check;

    fn seq(s: &str) -> Sequent {
        parse_sequent(s).unwrap()
    }

    #[test]
    fn axiom() {
        let d = prove(&seq("A => A"), SearchBudget::default()).unwrap();
        assert_eq!(d.rule, RuleTag::Axiom);
    }

    #[test]
    fn john_signed_the_papers() {
        let d = prove(
            &seq("NP, (NP\\S)/NP, NP/N, N => S"),
            SearchBudget::new(0, 0, 30),
        )
        .unwrap();
        assert_eq!(check(&d), Ok(()));
        assert_eq!(d.node_count(), 7);
    }

    #[test]
    fn unprovable() {
        assert!(prove(&seq("NP, N => S"), SearchBudget::new(2, 6, 40)).is_none());
        assert!(prove(&seq("A => B"), SearchBudget::default()).is_none());
        assert!(prove(&seq("=> S"), SearchBudget::default()).is_none());
        assert!(prove_all(&seq("A => B"), SearchBudget::default(), 5).is_empty());
    }

    #[test]
    fn prove_all_is_sorted_and_checked() {
        let all = prove_all(&seq("A, A\\A => A"), SearchBudget::default(), 5);
        assert!(!all.is_empty());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|d| check(d).is_ok()));
    }

    #[test]
    fn zero_depth_finds_nothing() {
        assert!(prove(&seq("A => A"), SearchBudget::new(0, 0, 0)).is_none());
    }

    #[test]
    fn contraction_is_budgeted() {
        let s = seq("!A, A\\(A\\B) => B");
        assert!(prove(&s, SearchBudget::new(0, 0, 20)).is_none());
        let d = prove(&s, SearchBudget::new(1, 0, 20)).unwrap();
        assert_eq!(d.count_rule(RuleTag::Contr), 1);
        assert_eq!(check(&d), Ok(()));
    }
}
