//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use bangl_core::formula::{parse_sequent, Formula, Sequent};
use bangl_core::prover::{prove, Derivation, RuleData, RuleTag, SearchBudget};
use bangl_core::tensor::{copy_delta, counit_e, CopyMode, SpaceAssignment, Tensor};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const JOHN_SIGNED: &str = "NP, (NP\\S)/NP, NP/N, N => S";
pub const PAPERS_THAT: &str = "NP/N, N, (N\\N)/(S/!NP), NP, (NP\\S)/NP => NP";
pub const PARASITIC_GAP: &str =
    "NP/N, N, (N\\N)/(S/!NP), NP, (NP\\S)/NP, ((NP\\S)\\(NP\\S))/NP, NP/NP => NP";

pub fn seq(s: &str) -> Sequent {
    parse_sequent(s).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn random_tensor(rng: &mut impl Rng, shape: Vec<usize>) -> Tensor {
    let n = shape.iter().product();
    Tensor::new(shape, (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).unwrap()
}

pub fn random_spaces(rng: &mut impl Rng, atoms: &[&str]) -> SpaceAssignment {
    SpaceAssignment::new(atoms.iter().map(|a| (*a, rng.gen_range(2..=4))))
}

/// signed(John, the(papers)) by explicit loops.
pub fn john_signed_oracle(john: &Tensor, signed: &Tensor, the: &Tensor, papers: &Tensor) -> Tensor {
    let (np, s, n) = (john.len(), signed.shape()[1], papers.len());
    let mut obj = vec![0.0; np];
    for (j, o) in obj.iter_mut().enumerate() {
        for k in 0..n {
            *o += the.get(&[j, k]) * papers.data()[k];
        }
    }
    let mut out = vec![0.0; s];
    for (x, o) in out.iter_mut().enumerate() {
        for i in 0..np {
            for j in 0..np {
                *o += john.data()[i] * signed.get(&[i, x, j]) * obj[j];
            }
        }
    }
    Tensor::vector(out)
}

/// the(that(paper, without(John, signed(−, n), reading(n)))), with the
/// abstracted noun phrase `n` running over basis vectors and both of its
/// copies bound to the same one.
pub fn parasitic_gap_oracle(inputs: &[Tensor]) -> Tensor {
    let [the, paper, that, john, signed, without, reading] = inputs else {
        panic!("seven inputs expected")
    };
    let np = john.len();
    let s = signed.shape()[1];
    let n = paper.len();
    // x[t, m] = without(John, signed(−, e_m), reading(e_m)) at sentence index t
    let mut x = vec![vec![0.0; np]; s];
    for (t, row) in x.iter_mut().enumerate() {
        for (m, cell) in row.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..np {
                for i in 0..np {
                    for s1 in 0..s {
                        for r in 0..np {
                            acc += john.data()[j]
                                * without.get(&[i, s1, j, t, r])
                                * signed.get(&[i, s1, m])
                                * reading.get(&[r, m]);
                        }
                    }
                }
            }
            *cell = acc;
        }
    }
    // that(paper, x) : N
    let mut noun = vec![0.0; n];
    for (b, o) in noun.iter_mut().enumerate() {
        for a in 0..n {
            for (t, row) in x.iter().enumerate() {
                for (m, xv) in row.iter().enumerate() {
                    *o += paper.data()[a] * that.get(&[a, b, t, m]) * xv;
                }
            }
        }
    }
    let mut out = vec![0.0; np];
    for (p, o) in out.iter_mut().enumerate() {
        for b in 0..n {
            *o += the.get(&[p, b]) * noun[b];
        }
    }
    Tensor::vector(out)
}

/// A bang-free formula over `atoms` with at most `depth` nested slashes.
pub fn random_formula(rng: &mut impl Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.45) {
        return Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
    }
    let l = random_formula(rng, atoms, depth - 1);
    let r = random_formula(rng, atoms, depth - 1);
    if rng.gen_bool(0.5) {
        Formula::over(l, r)
    } else {
        Formula::under(l, r)
    }
}

/// An antecedent from which `goal` follows by application steps.
fn application_context(rng: &mut impl Rng, goal: Formula, depth: usize) -> Vec<Formula> {
    if depth == 0 || rng.gen_bool(0.35) {
        return vec![goal];
    }
    let arg = random_formula(rng, &["A", "B", "C"], 1);
    let mut inner = application_context(rng, arg.clone(), depth - 1);
    if rng.gen_bool(0.5) {
        let mut out = vec![Formula::over(goal, arg)];
        out.append(&mut inner);
        out
    } else {
        inner.push(Formula::under(arg, goal));
        inner
    }
}

/// A random sequent built to be derivable, sometimes needing `!L`,
/// contraction or a permutation.
pub fn random_provable_sequent(rng: &mut impl Rng) -> Sequent {
    let goal = random_formula(rng, &["A", "B", "S"], 1);
    let mut ctx = application_context(rng, goal.clone(), 3);
    match rng.gen_range(0..4) {
        0 => {
            // one argument used twice: !X, X\(X\G)
            let x = Formula::atom(["A", "B"][rng.gen_range(0..2)]);
            let i = rng.gen_range(0..ctx.len());
            let old = ctx.remove(i);
            ctx.insert(i, Formula::under(x.clone(), Formula::under(x.clone(), old)));
            ctx.insert(i, Formula::bang(x));
        }
        1 => {
            // a banged formula moved one step away
            let i = rng.gen_range(0..ctx.len());
            let f = ctx.remove(i);
            let j = if i > 0 && rng.gen_bool(0.5) {
                i - 1
            } else {
                (i + 1).min(ctx.len())
            };
            ctx.insert(j, Formula::bang(f));
        }
        2 => {
            let i = rng.gen_range(0..ctx.len());
            ctx[i] = Formula::bang(ctx[i].clone());
        }
        _ => {}
    }
    Sequent::new(ctx, goal)
}

/// `n` prover outputs for generated sequents (deterministic in `seed`).
pub fn prover_outputs(n: usize, seed: u64) -> Vec<Derivation> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let s = random_provable_sequent(&mut r);
        if let Some(d) = prove(&s, SearchBudget::default()) {
            out.push(d);
        }
    }
    out
}

/// A copy of `d` with one node corrupted so that it no longer checks.
pub fn mutate(d: &Derivation, rng: &mut impl Rng) -> Derivation {
    let mut m = d.clone();
    let index = rng.gen_range(0..m.node_count());
    let node = m.node_mut(index).unwrap();
    match rng.gen_range(0..5) {
        0 => node.conclusion.succedent = Formula::atom("Zz"),
        1 => node.conclusion.antecedent.insert(0, Formula::atom("Zz")),
        2 => {
            if node.premises.is_empty() {
                node.premises
                    .push(Derivation::axiom(node.conclusion.clone()));
            } else {
                node.premises.pop();
            }
        }
        3 => {
            // any other rule, except trading one permutation for the other,
            // which can coincide on blocks of !-formulae
            let choices: Vec<RuleTag> = RuleTag::ALL
                .into_iter()
                .filter(|&t| t != node.rule)
                .filter(|&t| {
                    !matches!(
                        (t, node.rule),
                        (RuleTag::Perm1, RuleTag::Perm2) | (RuleTag::Perm2, RuleTag::Perm1)
                    )
                })
                .collect();
            node.rule = choices[rng.gen_range(0..choices.len())];
        }
        _ => {
            node.rule_data = match node.rule_data {
                RuleData::None => RuleData::At { index: 0 },
                RuleData::Split {
                    principal,
                    gamma_len,
                } => RuleData::Split {
                    principal: principal + 100,
                    gamma_len,
                },
                RuleData::At { index } => RuleData::At { index: index + 100 },
                RuleData::Block { start, len } => RuleData::Block {
                    start: start + 100,
                    len,
                },
            };
        }
    }
    m
}

pub fn basis(d: usize, i: usize) -> Tensor {
    Tensor::from_fn(vec![d], |x| if x[0] == i { 1.0 } else { 0.0 })
}

/// `(Δ⊗id)Δ(v)` and `(id⊗Δ)Δ(v)`, extending `Δ` linearly over basis vectors.
pub fn both_sides(v: &Tensor, mode: CopyMode) -> (Tensor, Tensor) {
    let d = v.len();
    let dv = copy_delta(v, mode);
    let deltas: Vec<Tensor> = (0..d).map(|i| copy_delta(&basis(d, i), mode)).collect();
    let left = Tensor::from_fn(vec![d, d, d], |x| {
        (0..d)
            .map(|i| dv.get(&[i, x[2]]) * deltas[i].get(&[x[0], x[1]]))
            .sum()
    });
    let right = Tensor::from_fn(vec![d, d, d], |x| {
        (0..d)
            .map(|j| dv.get(&[x[0], j]) * deltas[j].get(&[x[1], x[2]]))
            .sum()
    });
    (left, right)
}

/// `(e⊗id)Δ(v)` and `(id⊗e)Δ(v)`.
pub fn counit_sides(v: &Tensor, mode: CopyMode) -> (Tensor, Tensor) {
    let d = v.len();
    let dv = copy_delta(v, mode);
    let e: Vec<f64> = (0..d).map(|i| counit_e(&basis(d, i), mode)).collect();
    let left = Tensor::from_fn(vec![d], |x| (0..d).map(|i| e[i] * dv.get(&[i, x[0]])).sum());
    let right = Tensor::from_fn(vec![d], |x| (0..d).map(|j| dv.get(&[x[0], j]) * e[j]).sum());
    (left, right)
}

/// `C(B̄, X)[s] = X[s] · Σᵢ B̄[i] C[i, s]`
pub fn c_term(c: &Tensor, b: &[f64], x: &[f64]) -> Vec<f64> {
    let d = b.len();
    (0..d)
        .map(|s| x[s] * (0..d).map(|i| b[i] * c.get(&[i, s])).sum::<f64>())
        .collect()
}

/// `D(X)[r] = Σₘ D[r, m] X[m]`
pub fn d_term(dm: &Tensor, x: &[f64]) -> Vec<f64> {
    let d = x.len();
    (0..d)
        .map(|r| (0..d).map(|m| dm.get(&[r, m]) * x[m]).sum())
        .collect()
}

pub fn plus(u: &[f64], v: &[f64]) -> Vec<f64> {
    u.iter().zip(v).map(|(x, y)| x + y).collect()
}

pub fn max_diff(u: &[f64], v: &[f64]) -> f64 {
    u.iter()
        .zip(v)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// A file from the bundled data directory.
pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}
