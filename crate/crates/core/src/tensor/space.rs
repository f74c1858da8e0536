use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::copy::CopyMode;
use super::fock::DEFAULT_FOCK_CAP;
use crate::morphism::ObjectTerm;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("no dimension assigned to atom `{0}`")]
    UnknownAtom(String),
    #[error("dimension of `{atom}` must be positive")]
    ZeroDim { atom: String },
    #[error("Fock space over a {dim}-dimensional space exceeds the cap of {cap}")]
    FockCap { dim: usize, cap: usize },
    #[error("malformed dimension list: {0}")]
    Parse(String),
}

/// Dimensions of the atomic spaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceAssignment {
    pub dims: BTreeMap<String, usize>,
    /// Largest base dimension allowed under `!` in Fock mode.
    pub fock_cap: usize,
}

impl Default for SpaceAssignment {
    fn default() -> Self {
        SpaceAssignment {
            dims: BTreeMap::new(),
            fock_cap: DEFAULT_FOCK_CAP,
        }
    }
}

impl SpaceAssignment {
    pub fn new<S: Into<String>>(dims: impl IntoIterator<Item = (S, usize)>) -> Self {
        SpaceAssignment {
            dims: dims.into_iter().map(|(a, d)| (a.into(), d)).collect(),
            fock_cap: DEFAULT_FOCK_CAP,
        }
    }

    /// Parses `NP=3,S=2,N=3`.
    pub fn parse(text: &str) -> Result<Self, SpaceError> {
        let mut dims = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (atom, d) = part
                .split_once('=')
                .ok_or_else(|| SpaceError::Parse(format!("`{part}` is not atom=dim")))?;
            let d: usize = d
                .trim()
                .parse()
                .map_err(|_| SpaceError::Parse(format!("`{d}` is not a dimension")))?;
            if d == 0 {
                return Err(SpaceError::ZeroDim {
                    atom: atom.trim().to_string(),
                });
            }
            dims.insert(atom.trim().to_string(), d);
        }
        Ok(SpaceAssignment {
            dims,
            fock_cap: DEFAULT_FOCK_CAP,
        })
    }

    pub fn set(&mut self, atom: impl Into<String>, dim: usize) {
        self.dims.insert(atom.into(), dim);
    }

    pub fn atom(&self, name: &str) -> Result<usize, SpaceError> {
        match self.dims.get(name) {
            Some(0) => Err(SpaceError::ZeroDim {
                atom: name.to_string(),
            }),
            Some(&d) => Ok(d),
            None => Err(SpaceError::UnknownAtom(name.to_string())),
        }
    }

    /// Dimensions of the wires carrying an object.
    pub fn wires(&self, obj: &ObjectTerm, mode: &CopyMode) -> Result<Vec<usize>, SpaceError> {
        let mut out = Vec::new();
        self.push_wires(obj, mode, &mut out)?;
        Ok(out)
    }

    fn push_wires(
        &self,
        obj: &ObjectTerm,
        mode: &CopyMode,
        out: &mut Vec<usize>,
    ) -> Result<(), SpaceError> {
        match obj {
            ObjectTerm::UnitI => {}
            ObjectTerm::Base(a) => out.push(self.atom(a)?),
            ObjectTerm::Tensor(v) => {
                for o in v {
                    self.push_wires(o, mode, out)?;
                }
            }
            ObjectTerm::HomR(a, b) | ObjectTerm::HomL(a, b) => {
                self.push_wires(a, mode, out)?;
                self.push_wires(b, mode, out)?;
            }
            ObjectTerm::BangO(a) => {
                if mode.is_fock() {
                    let dim = self.dim(a, mode)?;
                    if dim > self.fock_cap {
                        return Err(SpaceError::FockCap {
                            dim,
                            cap: self.fock_cap,
                        });
                    }
                    out.push(1usize << dim);
                } else {
                    self.push_wires(a, mode, out)?;
                }
            }
        }
        Ok(())
    }

    /// Total dimension: the product of the wire dimensions.
    pub fn dim(&self, obj: &ObjectTerm, mode: &CopyMode) -> Result<usize, SpaceError> {
        Ok(self.wires(obj, mode)?.iter().product())
    }
}
