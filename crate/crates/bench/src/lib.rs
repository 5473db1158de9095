//! Deterministic inputs for the benchmarks.

use discocat::{LanguageModel, PregroupType, Tensor};

/// `(n n^r s n^l n)^k`: `k` transitive clauses side by side, reducing to `s^k`.
pub fn clause_chain(k: usize) -> (PregroupType, PregroupType) {
    let word = vec!["n n^r s n^l n"; k].join(" ");
    let target = vec!["s"; k].join(" ");
    (word.parse().unwrap(), target.parse().unwrap())
}

/// Values spread over `[-1, 1]` without a random number generator.
pub fn filler(n: usize) -> Vec<f64> {
    (0..n).map(|i| ((i * 7919 % 1009) as f64 / 504.5) - 1.0).collect()
}

pub fn filled_tensor(model: &LanguageModel, ty: &PregroupType) -> Tensor {
    let n = model.space_size(ty).unwrap();
    Tensor::new(model, ty.clone(), filler(n)).unwrap()
}
