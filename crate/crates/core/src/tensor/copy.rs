use std::fmt;

use serde::{Deserialize, Serialize};

use super::fock::FockError;
use super::Tensor;

/// How `!` and its copying structure are realised on vector spaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum CopyMode {
    /// Identity comonad; `Δ` copies basis vectors, `Δ(Σ Cᵢeᵢ) = Σ Cᵢ eᵢ⊗eᵢ`.
    #[default]
    Cogebra,
    /// Identity comonad; `Δ(v) = v⊗k⃗ + k⃗⊗v` with `k⃗` the constant-`k` vector.
    CofreeK { k: f64 },
    /// Identity comonad with the nonlinear `Δ(v) = v⊗v`.
    Full,
    /// `!V` is the exterior algebra of `V`; `Δ` copies wedge words.
    FockGrouplike,
}

impl CopyMode {
    pub fn cofree(k: f64) -> Self {
        CopyMode::CofreeK { k }
    }

    pub fn is_fock(&self) -> bool {
        matches!(self, CopyMode::FockGrouplike)
    }

    pub fn is_linear(&self) -> bool {
        !matches!(self, CopyMode::Full)
    }
}

impl fmt::Display for CopyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CopyMode::Cogebra => f.write_str("cogebra"),
            CopyMode::CofreeK { k } => write!(f, "cofree(k={k})"),
            CopyMode::Full => f.write_str("full"),
            CopyMode::FockGrouplike => f.write_str("fock"),
        }
    }
}

/// `Δ(v)` as a `d×d` matrix, for `v` read as a flat vector of length `d`.
///
/// In Fock mode `v` is an element of the exterior algebra and `Δ` copies
/// each wedge word, so the result is again diagonal.
pub fn copy_delta(v: &Tensor, mode: CopyMode) -> Tensor {
    let d = v.len();
    let x = v.data();
    match mode {
        CopyMode::Cogebra | CopyMode::FockGrouplike => {
            Tensor::from_fn(vec![d, d], |i| if i[0] == i[1] { x[i[0]] } else { 0.0 })
        }
        CopyMode::CofreeK { k } => Tensor::from_fn(vec![d, d], |i| k * x[i[0]] + k * x[i[1]]),
        CopyMode::Full => Tensor::from_fn(vec![d, d], |i| x[i[0]] * x[i[1]]),
    }
}

/// The comonoid counit `e(v)`: the sum of the coordinates.
///
/// For the grouplike copy on wedge words this is also the only counit that
/// satisfies the counit laws (`e(b) = 1` on every basis word); the degree-0
/// coefficient is available as [`super::FockSpace::degree_zero`].
pub fn counit_e(v: &Tensor, _mode: CopyMode) -> f64 {
    v.data().iter().sum()
}

/// The comonad counit `ε`: the identity, except in Fock mode where it
/// projects onto the degree-one layer.
pub fn epsilon_counit(v: &Tensor, mode: CopyMode) -> Result<Tensor, FockError> {
    if !mode.is_fock() {
        return Ok(v.clone());
    }
    let len = v.len();
    if !len.is_power_of_two() {
        return Err(FockError::Length {
            expected: len.next_power_of_two(),
            found: len,
        });
    }
    let n = len.trailing_zeros() as usize;
    Ok(Tensor::vector((0..n).map(|i| v.data()[1 << i]).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::fock_build;

    fn m(rows: &[[f64; 2]; 2]) -> Tensor {
        Tensor::new(vec![2, 2], rows.iter().flatten().copied().collect()).unwrap()
    }

    #[test]
    fn copy_examples() {
        let v = Tensor::vector(vec![3.0, 4.0]);
        assert_eq!(
            copy_delta(&v, CopyMode::Cogebra),
            m(&[[3.0, 0.0], [0.0, 4.0]])
        );
        let (a, b) = (0.5, -2.0);
        let v = Tensor::vector(vec![a, b]);
        assert_eq!(
            copy_delta(&v, CopyMode::cofree(1.0)),
            m(&[[2.0 * a, a + b], [a + b, 2.0 * b]])
        );
        let e1 = Tensor::vector(vec![1.0, 0.0]);
        for mode in [CopyMode::Full, CopyMode::Cogebra, CopyMode::FockGrouplike] {
            assert_eq!(copy_delta(&e1, mode), m(&[[1.0, 0.0], [0.0, 0.0]]));
        }
    }

    #[test]
    fn counit_examples() {
        assert_eq!(
            counit_e(&Tensor::vector(vec![2.0, 5.0]), CopyMode::Cogebra),
            7.0
        );
        assert_eq!(counit_e(&Tensor::zeros(vec![3]), CopyMode::Full), 0.0);
        let f = fock_build(2, 12).unwrap();
        let x = f.word(&[0, 1]).unwrap().scale(3.0);
        assert_eq!(f.degree_zero(&x), 0.0);
    }

    #[test]
    fn epsilon_examples() {
        let v = Tensor::vector(vec![2.0, 5.0]);
        assert_eq!(epsilon_counit(&v, CopyMode::Cogebra).unwrap(), v);
        // 1 + e₁ + 4·e₁∧e₂ over a 2-dimensional base
        let x = Tensor::vector(vec![1.0, 1.0, 0.0, 4.0]);
        assert_eq!(
            epsilon_counit(&x, CopyMode::FockGrouplike).unwrap(),
            Tensor::vector(vec![1.0, 0.0])
        );
        assert_eq!(
            epsilon_counit(&Tensor::zeros(vec![4]), CopyMode::FockGrouplike).unwrap(),
            Tensor::zeros(vec![2])
        );
        assert!(epsilon_counit(&Tensor::zeros(vec![3]), CopyMode::FockGrouplike).is_err());
    }
}
