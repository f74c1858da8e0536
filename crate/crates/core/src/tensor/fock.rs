//! Exterior (fermionic Fock) algebra over a small real space.
//!
//! The basis of `F(V)` for `dim V = n` is indexed by subsets of `{0..n}`,
//! stored as bitmasks: bit `i` set means `eᵢ` occurs in the wedge word, which
//! is always written in increasing order. An element is a plain vector of
//! length `2ⁿ` indexed by mask.

use thiserror::Error;

use super::Tensor;

/// Default largest base dimension (`2¹²` coordinates).
pub const DEFAULT_FOCK_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FockError {
    #[error("base dimension {n} exceeds the cap of {cap}")]
    Cap { n: usize, cap: usize },
    #[error("element has {found} coordinates, expected {expected}")]
    Length { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockSpace {
    pub base_dim: usize,
}

impl FockSpace {
    pub fn dim(&self) -> usize {
        1 << self.base_dim
    }

    /// Number of basis words of the given degree, `C(n, d)`.
    pub fn layer_dim(&self, degree: usize) -> usize {
        (0..self.dim()).filter(|m| degree_of(*m) == degree).count()
    }

    /// Basis words as sorted index lists, in mask order.
    pub fn basis(&self) -> Vec<Vec<usize>> {
        (0..self.dim())
            .map(|m| (0..self.base_dim).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    /// The basis element for a wedge word; `None` if an index repeats or is
    /// out of range. The sign is that of the sorting permutation.
    pub fn word(&self, indices: &[usize]) -> Option<Tensor> {
        let mut mask = 0usize;
        let mut sign = 1.0;
        for &i in indices {
            if i >= self.base_dim || mask >> i & 1 == 1 {
                return None;
            }
            if (mask >> (i + 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            mask |= 1 << i;
        }
        let mut data = vec![0.0; self.dim()];
        data[mask] = sign;
        Some(Tensor::vector(data))
    }

    /// Embeds `v ∈ V` as a degree-one element.
    pub fn degree_one(&self, v: &[f64]) -> Tensor {
        let mut data = vec![0.0; self.dim()];
        for (i, x) in v.iter().enumerate().take(self.base_dim) {
            data[1 << i] = *x;
        }
        Tensor::vector(data)
    }

    /// Coefficient of the empty word.
    pub fn degree_zero(&self, u: &Tensor) -> f64 {
        u.data()[0]
    }

    fn check(&self, u: &Tensor) -> Result<(), FockError> {
        if u.len() != self.dim() {
            return Err(FockError::Length {
                expected: self.dim(),
                found: u.len(),
            });
        }
        Ok(())
    }
}

pub fn degree_of(mask: usize) -> usize {
    mask.count_ones() as usize
}

pub fn fock_build(n: usize, cap: usize) -> Result<FockSpace, FockError> {
    if n > cap {
        return Err(FockError::Cap { n, cap });
    }
    Ok(FockSpace { base_dim: n })
}

/// Sign of `e_a ∧ e_b` relative to the sorted word `e_{a∪b}`: one factor of
/// −1 for each pair `i ∈ a`, `j ∈ b` with `i > j`.
pub fn wedge_sign(a: usize, b: usize) -> f64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Bilinear wedge product of two elements of the same space.
pub fn wedge(space: &FockSpace, u: &Tensor, w: &Tensor) -> Result<Tensor, FockError> {
    space.check(u)?;
    space.check(w)?;
    let mut out = vec![0.0; space.dim()];
    for (a, &x) in u.data().iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (b, &y) in w.data().iter().enumerate() {
            if y == 0.0 || a & b != 0 {
                continue;
            }
            out[a | b] += wedge_sign(a, b) * x * y;
        }
    }
    Ok(Tensor::vector(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(fock_build(3, 12).unwrap().dim(), 8);
        assert_eq!(fock_build(0, 12).unwrap().dim(), 1);
        assert_eq!(fock_build(1, 12).unwrap().dim(), 2);
        assert!(fock_build(13, 12).is_err());
        let f = fock_build(4, 12).unwrap();
        let layers: Vec<usize> = (0..=4).map(|d| f.layer_dim(d)).collect();
        assert_eq!(layers, vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn wedge_examples() {
        let f = fock_build(2, 12).unwrap();
        let e1 = f.word(&[0]).unwrap();
        let e2 = f.word(&[1]).unwrap();
        assert_eq!(wedge(&f, &e1, &e1).unwrap(), Tensor::zeros(vec![4]));
        let e21 = wedge(&f, &e2, &e1).unwrap();
        let e12 = wedge(&f, &e1, &e2).unwrap();
        assert_eq!(e21, e12.scale(-1.0));
        assert_eq!(e12, f.word(&[0, 1]).unwrap());
        assert_eq!(f.word(&[1, 0]).unwrap(), e12.scale(-1.0));
        let one = f.word(&[]).unwrap();
        let x = Tensor::vector(vec![1.0, 2.0, 3.0, 4.0]);
        assert_eq!(wedge(&f, &one, &x).unwrap(), x);
        assert!(f.word(&[0, 0]).is_none());
    }

    #[test]
    fn length_is_checked() {
        let f = fock_build(2, 12).unwrap();
        let bad = Tensor::vector(vec![1.0; 3]);
        assert!(wedge(&f, &bad, &bad).is_err());
    }
}
