use std::collections::HashSet;

use thiserror::Error;

use super::copy::CopyMode;
use super::network::{Network, Origin};
use super::space::{SpaceAssignment, SpaceError};
use super::Tensor;
use crate::morphism::{typecheck, MorphTerm, ObjectTerm, TypeError, TypedMorphism};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Type(#[from] TypeError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("expected {expected} inputs, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("input {index} has shape {found:?}, expected {expected:?}")]
    InputShape {
        index: usize,
        expected: Vec<usize>,
        found: Vec<usize>,
    },
    #[error("full copying needs a closed input or an abstracted variable; `{0}` is neither")]
    FullOpenWire(ObjectTerm),
    #[error("`{generator}` is not available in {mode} mode")]
    Unsupported {
        generator: &'static str,
        mode: CopyMode,
    },
    #[error("wire dimensions {0} and {1} cannot be connected")]
    WireMismatch(usize, usize),
}

/// Evaluates a morphism on concrete inputs, one tensor per domain factor.
///
/// Each input must have the shape given by the wires of its factor. The
/// result has the shape of the codomain's wires (a scalar for `I`).
///
/// In [`CopyMode::Full`] a copy is only meaningful on data that is actually
/// there: `Δ` may act on an untouched input, which is duplicated, or on an
/// abstracted variable that nothing has consumed yet. A curried term is the
/// linear extension of its values on basis vectors, and `Δ(eᵢ) = eᵢ⊗eᵢ`, so
/// such a variable is copied index-wise. Anything else is rejected.
pub fn eval_morphism(
    m: &TypedMorphism,
    inputs: &[Tensor],
    mode: CopyMode,
    spaces: &SpaceAssignment,
) -> Result<Tensor, EvalError> {
    let (domain, codomain) = typecheck(&m.term)?;
    let factors = domain.factors();
    if factors.len() != inputs.len() {
        return Err(EvalError::Arity {
            expected: factors.len(),
            found: inputs.len(),
        });
    }
    let mut ev = Evaluator {
        net: Network::default(),
        mode,
        spaces,
        curry_vars: HashSet::new(),
    };
    let mut wires = Vec::new();
    for (index, (obj, t)) in factors.iter().zip(inputs).enumerate() {
        let dims = spaces.wires(obj, &mode)?;
        if dims != t.shape() {
            return Err(EvalError::InputShape {
                index,
                expected: dims,
                found: t.shape().to_vec(),
            });
        }
        let labels: Vec<usize> = dims.iter().map(|&d| ev.net.fresh(d)).collect();
        ev.net.add(t.data().to_vec(), labels.clone(), Origin::Input);
        wires.extend(labels);
    }
    let out = ev.run(&m.term, wires)?;
    let shape: Vec<usize> = out.iter().map(|&l| ev.net.dim(l)).collect();
    debug_assert_eq!(shape, spaces.wires(&codomain, &mode)?);
    let data = ev.net.contract(&out);
    Ok(Tensor::new(shape, data).expect("contraction yields the codomain shape"))
}

struct Evaluator<'a> {
    net: Network,
    mode: CopyMode,
    spaces: &'a SpaceAssignment,
    curry_vars: HashSet<usize>,
}

impl Evaluator<'_> {
    fn dims(&self, obj: &ObjectTerm) -> Result<Vec<usize>, EvalError> {
        Ok(self.spaces.wires(obj, &self.mode)?)
    }

    fn fresh(&mut self, dims: &[usize]) -> Vec<usize> {
        dims.iter().map(|&d| self.net.fresh(d)).collect()
    }

    fn connect(&mut self, a: &[usize], b: &[usize]) -> Result<(), EvalError> {
        debug_assert_eq!(a.len(), b.len());
        for (&x, &y) in a.iter().zip(b) {
            self.net
                .union(x, y)
                .map_err(|(p, q)| EvalError::WireMismatch(p, q))?;
        }
        Ok(())
    }

    fn unsupported(&self, generator: &'static str) -> EvalError {
        EvalError::Unsupported {
            generator,
            mode: self.mode,
        }
    }

    fn run(&mut self, t: &MorphTerm, inputs: Vec<usize>) -> Result<Vec<usize>, EvalError> {
        match t {
            MorphTerm::Id { .. } => Ok(inputs),
            MorphTerm::Compose { later, earlier } => {
                let mid = self.run(earlier, inputs)?;
                self.run(later, mid)
            }
            MorphTerm::Par { left, right } => {
                let (dom, _) = typecheck(left)?;
                let n = self.dims(&dom)?.len();
                let mut left_in = inputs;
                let right_in = left_in.split_off(n);
                let mut out = self.run(left, left_in)?;
                out.extend(self.run(right, right_in)?);
                Ok(out)
            }
            MorphTerm::EvR { a, .. } => {
                // A ⊗ (A ⇒ B): argument wires, then the hom's A wires, then B
                let n = self.dims(a)?.len();
                self.connect(&inputs[..n], &inputs[n..2 * n])?;
                Ok(inputs[2 * n..].to_vec())
            }
            MorphTerm::EvL { a, b } => {
                // (A ⇐ B) ⊗ B: the hom's A wires, its B wires, then the argument
                let na = self.dims(a)?.len();
                let nb = self.dims(b)?.len();
                self.connect(&inputs[na..na + nb], &inputs[na + nb..])?;
                Ok(inputs[..na].to_vec())
            }
            MorphTerm::CurryL { arg, body } => {
                let dims = self.dims(arg)?;
                let var = self.fresh(&dims);
                self.curry_vars.extend(&var);
                let body_in = var.iter().copied().chain(inputs).collect();
                let out = self.run(body, body_in)?;
                Ok(var.into_iter().chain(out).collect())
            }
            MorphTerm::CurryR { arg, body } => {
                let dims = self.dims(arg)?;
                let var = self.fresh(&dims);
                self.curry_vars.extend(&var);
                let body_in = inputs.into_iter().chain(var.iter().copied()).collect();
                let mut out = self.run(body, body_in)?;
                out.extend(var);
                Ok(out)
            }
            MorphTerm::SwapR { a, .. } => {
                // A ⊗ !B → !B ⊗ A
                let n = self.dims(a)?.len();
                let mut out = inputs[n..].to_vec();
                out.extend_from_slice(&inputs[..n]);
                Ok(out)
            }
            MorphTerm::SwapL { a, .. } => {
                // !A ⊗ B → B ⊗ !A
                let n = self.dims(&ObjectTerm::bang(a.clone()))?.len();
                let mut out = inputs[n..].to_vec();
                out.extend_from_slice(&inputs[..n]);
                Ok(out)
            }
            MorphTerm::CopyDelta { a } => self.copy(a, inputs),
            MorphTerm::CounitE { .. } => {
                for l in inputs {
                    let d = self.net.dim(l);
                    self.net.add(vec![1.0; d], vec![l], Origin::Generated);
                }
                Ok(Vec::new())
            }
            MorphTerm::Epsilon { a } => {
                if !self.mode.is_fock() {
                    return Ok(inputs);
                }
                let dims = self.dims(a)?;
                let out = self.fresh(&dims);
                let body: usize = dims.iter().product();
                let fock = self.net.dim(inputs[0]);
                let mut data = vec![0.0; fock * body];
                for i in 0..body {
                    data[(1 << i) * body + i] = 1.0;
                }
                let labels = inputs.iter().copied().chain(out.iter().copied()).collect();
                self.net.add(data, labels, Origin::Generated);
                Ok(out)
            }
            MorphTerm::DeltaComonad { .. } if !self.mode.is_fock() => Ok(inputs),
            MorphTerm::LaxM { .. } if !self.mode.is_fock() => Ok(inputs),
            MorphTerm::BangF { body } if !self.mode.is_fock() => self.run(body, inputs),
            MorphTerm::DeltaComonad { .. } => Err(self.unsupported("delta_comonad")),
            MorphTerm::LaxM { .. } => Err(self.unsupported("lax_m")),
            MorphTerm::BangF { .. } => Err(self.unsupported("bang_f")),
        }
    }

    fn copy(&mut self, a: &ObjectTerm, inputs: Vec<usize>) -> Result<Vec<usize>, EvalError> {
        match self.mode {
            CopyMode::Cogebra | CopyMode::FockGrouplike => {
                // copying basis vectors (or wedge words): a spider on each wire
                Ok(inputs.iter().chain(&inputs).copied().collect())
            }
            CopyMode::CofreeK { k } => {
                let dims: Vec<usize> = inputs.iter().map(|&l| self.net.dim(l)).collect();
                let d: usize = dims.iter().product();
                let first = self.fresh(&dims);
                let second = self.fresh(&dims);
                let mut data = vec![0.0; d * d * d];
                for i in 0..d {
                    for j in 0..d {
                        for l in 0..d {
                            let x =
                                k * f64::from(u8::from(i == j)) + k * f64::from(u8::from(i == l));
                            data[(i * d + j) * d + l] = x;
                        }
                    }
                }
                let labels = inputs
                    .iter()
                    .chain(&first)
                    .chain(&second)
                    .copied()
                    .collect();
                self.net.add(data, labels, Origin::Generated);
                Ok(first.into_iter().chain(second).collect())
            }
            CopyMode::Full => self.full_copy(a, inputs),
        }
    }

    fn full_copy(&mut self, a: &ObjectTerm, inputs: Vec<usize>) -> Result<Vec<usize>, EvalError> {
        let roots: Vec<usize> = inputs.iter().map(|&l| self.net.find(l)).collect();
        let distinct = roots
            .iter()
            .enumerate()
            .all(|(i, r)| !roots[..i].contains(r));

        let is_var = |ev: &Self, r: usize| ev.curry_vars.iter().any(|&v| ev.net.find(v) == r);
        if roots
            .iter()
            .all(|&r| is_var(self, r) && !self.net.class_used(r, None))
        {
            return Ok(inputs.iter().chain(&inputs).copied().collect());
        }

        let owner = self.net.nodes.iter().position(|n| {
            n.origin == Origin::Input
                && n.labels
                    .iter()
                    .map(|&l| self.net.find(l))
                    .collect::<Vec<_>>()
                    == roots
        });
        if let Some(idx) = owner {
            if distinct && roots.iter().all(|&r| !self.net.class_used(r, Some(idx))) {
                let dims: Vec<usize> = inputs.iter().map(|&l| self.net.dim(l)).collect();
                let fresh = self.fresh(&dims);
                let data = self.net.nodes[idx].data.clone();
                self.net.add(data, fresh.clone(), Origin::Input);
                return Ok(inputs.into_iter().chain(fresh).collect());
            }
        }
        Err(EvalError::FullOpenWire(ObjectTerm::bang(a.clone())))
    }
}
