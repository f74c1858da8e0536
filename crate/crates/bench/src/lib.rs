//! Shared fixtures for the benchmarks.

use bangl_core::formula::{parse_sequent, Sequent};
use bangl_core::morphism::TypedMorphism;
use bangl_core::tensor::{CopyMode, SpaceAssignment, Tensor};

pub const JOHN_SIGNED: &str = "NP, (NP\\S)/NP, NP/N, N => S";
pub const PAPERS_THAT: &str = "NP/N, N, (N\\N)/(S/!NP), NP, (NP\\S)/NP => NP";
pub const PARASITIC_GAP: &str =
    "NP/N, N, (N\\N)/(S/!NP), NP, (NP\\S)/NP, ((NP\\S)\\(NP\\S))/NP, NP/NP => NP";

pub fn sequent(s: &str) -> Sequent {
    parse_sequent(s).expect("fixture sequents parse")
}

/// Every atom of the fixtures at dimension `d`.
pub fn spaces(d: usize) -> SpaceAssignment {
    SpaceAssignment::new([("N", d), ("NP", d), ("S", d)])
}

/// Deterministic, non-degenerate entries in (−1, 1).
pub fn filled(shape: Vec<usize>, salt: usize) -> Tensor {
    let n: usize = shape.iter().product();
    Tensor::new(
        shape,
        (0..n)
            .map(|i| ((i * 7 + salt * 13 + 1) as f64).sin())
            .collect(),
    )
    .expect("shape and data agree")
}

/// One input tensor per domain factor of `m`.
pub fn inputs(m: &TypedMorphism, sp: &SpaceAssignment, mode: CopyMode) -> Vec<Tensor> {
    m.domain
        .factors()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            filled(
                sp.wires(f, &mode).expect("fixture atoms have dimensions"),
                i,
            )
        })
        .collect()
}
