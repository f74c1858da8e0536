//! Dense real tensors and the vector-space semantics of morphism terms.
//!
//! Every object is assigned a list of *wires* (tensor legs): an atom is one
//! wire, a hom object is the wires of its argument and result side by side,
//! and `!A` is either the wires of `A` (the identity-comonad modes) or a
//! single wire indexing the Fock space of `A`. Morphisms evaluate by building
//! a tensor network over these wires and contracting it.

mod copy;
mod eval;
mod fock;
mod network;
mod space;

use std::fmt::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use copy::{copy_delta, counit_e, epsilon_counit, CopyMode};
pub use eval::{eval_morphism, EvalError};
pub use fock::{fock_build, wedge, FockError, FockSpace, DEFAULT_FOCK_CAP};
pub use space::{SpaceAssignment, SpaceError};

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("shape {shape:?} needs {expected} entries, found {found}")]
    Length {
        shape: Vec<usize>,
        expected: usize,
        found: usize,
    },
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    #[error("malformed tensor text: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Row-major array of `f64` with an explicit shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(shape: Vec<usize>, data: Vec<f64>) -> Result<Self, TensorError> {
        let expected: usize = shape.iter().product();
        if data.len() != expected {
            return Err(TensorError::Length {
                shape,
                expected,
                found: data.len(),
            });
        }
        if let Some(i) = data.iter().position(|x| !x.is_finite()) {
            return Err(TensorError::NonFinite(i));
        }
        Ok(Tensor { shape, data })
    }

    pub fn zeros(shape: Vec<usize>) -> Self {
        let n = shape.iter().product();
        Tensor {
            shape,
            data: vec![0.0; n],
        }
    }

    pub fn scalar(x: f64) -> Self {
        Tensor {
            shape: Vec::new(),
            data: vec![x],
        }
    }

    pub fn vector(data: Vec<f64>) -> Self {
        Tensor {
            shape: vec![data.len()],
            data,
        }
    }

    /// Builds a tensor entry by entry from its multi-index.
    pub fn from_fn(shape: Vec<usize>, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let n: usize = shape.iter().product();
        let mut data = Vec::with_capacity(n);
        let mut idx = vec![0usize; shape.len()];
        for _ in 0..n {
            data.push(f(&idx));
            for k in (0..shape.len()).rev() {
                idx[k] += 1;
                if idx[k] < shape[k] {
                    break;
                }
                idx[k] = 0;
            }
        }
        Tensor { shape, data }
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Same data, new shape with the same number of entries.
    pub fn reshape(self, shape: Vec<usize>) -> Result<Self, TensorError> {
        Tensor::new(shape, self.data)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        assert_eq!(idx.len(), self.shape.len(), "index rank");
        let mut off = 0;
        for (i, d) in idx.iter().zip(&self.shape) {
            assert!(i < d, "index out of bounds");
            off = off * d + i;
        }
        self.data[off]
    }

    pub fn scale(&self, a: f64) -> Tensor {
        Tensor {
            shape: self.shape.clone(),
            data: self.data.iter().map(|x| a * x).collect(),
        }
    }

    /// Entrywise sum; shapes must agree.
    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.shape, other.shape, "shape mismatch in add");
        Tensor {
            shape: self.shape.clone(),
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Largest absolute entrywise difference; infinite if shapes differ.
    pub fn max_abs_diff(&self, other: &Tensor) -> f64 {
        if self.shape != other.shape {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Text form: a `shape d₁ d₂ …` line, then the entries, one per line,
    /// with 17 significant digits so that parsing gives back the same bits.
    pub fn to_text(&self) -> String {
        let mut out = String::from("shape");
        for d in &self.shape {
            let _ = write!(out, " {d}");
        }
        out.push('\n');
        for x in &self.data {
            let _ = writeln!(out, "{x:.16e}");
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, TensorError> {
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some("shape") {
            return Err(TensorError::Format("expected a `shape` header".into()));
        }
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().unwrap_or_default();
        let shape = header
            .split_whitespace()
            .skip(1)
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| TensorError::Format(format!("bad dimension `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let data = lines
            .flat_map(str::split_whitespace)
            .map(|t| {
                t.parse::<f64>()
                    .map_err(|_| TensorError::Format(format!("bad scalar `{t}`")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Tensor::new(shape, data)
    }

    pub fn load(path: &Path) -> Result<Self, TensorError> {
        Tensor::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), TensorError> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks_length_and_finiteness() {
        assert!(Tensor::new(vec![2, 2], vec![0.0; 3]).is_err());
        assert!(Tensor::new(vec![2], vec![1.0, f64::NAN]).is_err());
        let t = Tensor::new(vec![2, 3], (0..6).map(f64::from).collect()).unwrap();
        assert_eq!(t.get(&[1, 2]), 5.0);
    }

    #[test]
    fn from_fn_is_row_major() {
        let t = Tensor::from_fn(vec![2, 3], |i| (10 * i[0] + i[1]) as f64);
        assert_eq!(t.data(), &[0.0, 1.0, 2.0, 10.0, 11.0, 12.0]);
    }

    #[test]
    fn text_round_trip_is_exact() {
        let t = Tensor::new(vec![3], vec![0.1, -1.0 / 3.0, 6.02214076e23]).unwrap();
        let back = Tensor::from_text(&t.to_text()).unwrap();
        assert_eq!(back, t);
        let s = Tensor::scalar(std::f64::consts::PI);
        assert_eq!(Tensor::from_text(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn text_errors() {
        assert!(Tensor::from_text("2 2\n1 2 3 4").is_err());
        assert!(Tensor::from_text("shape 2\n1 x").is_err());
        assert!(Tensor::from_text("shape 2\n1 2 3").is_err());
    }
}
