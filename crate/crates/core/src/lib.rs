pub mod experiment;
pub mod formula;
pub mod lexicon;
pub mod morphism;
pub mod prover;
pub mod tensor;
