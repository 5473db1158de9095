//! A small built-in setup: a grammar distinguishing singular and plural
//! nouns, translated into one with a single noun type.
//!
//! Nouns live in `ℝ⁴` in the source, the last coordinate recording quantity;
//! the translation projects onto the first three coordinates. The sentence
//! space is one-dimensional and measures surprise.

use crate::error::Result;
use crate::grammar::{BasicType, PregroupType};
use crate::lexicon::Lexicon;
use crate::linalg::Matrix;
use crate::semantics::LanguageModel;
use crate::translation::{GrammarMap, Translation};

#[rustfmt::skip]
pub const WEARS: [f64; 16] = [
     1.0,  1.0,  1.0, 0.0,
    -1.0, -1.0, -1.0, 0.0,
     1.0,  1.0,  1.0, 0.0,
    -2.0, -2.0, -1.0, 1.0,
];

/// Senses of `wears`, singular or plural on each side; the first is the default.
pub const WEARS_TYPES: [&str; 4] = ["n_s^r s n_p^l", "n_s^r s n_s^l", "n_p^r s n_p^l", "n_p^r s n_s^l"];

pub fn number_model() -> LanguageModel {
    LanguageModel::from_dims("F", [("n", 3), ("n_s", 4), ("n_p", 4), ("s", 1)]).expect("valid dims")
}

pub fn plain_model() -> LanguageModel {
    LanguageModel::from_dims("F'", [("n", 3), ("s", 1)]).expect("valid dims")
}

pub fn number_lexicon() -> Result<Lexicon> {
    let mut lex = Lexicon::new(number_model());
    lex.insert_values("Rosie", "n_s", vec![2.0, 5.0, 3.0, 1.0])?;
    lex.insert_values("boots", "n_p", vec![1.0, 0.0, 0.0, 2.0])?;
    lex.insert_values("a_boot", "n_p", vec![1.0, 0.0, 0.0, 1.0])?;
    for ty in WEARS_TYPES {
        lex.insert_values("wears", ty, WEARS.to_vec())?;
    }
    Ok(lex)
}

/// The target lexicon written out by hand (without `a_boot`).
pub fn plain_lexicon() -> Result<Lexicon> {
    let mut lex = Lexicon::new(plain_model());
    lex.insert_values("Rosie", "n", vec![2.0, 5.0, 3.0])?;
    lex.insert_values("boots", "n", vec![1.0, 0.0, 0.0])?;
    #[rustfmt::skip]
    let wears = vec![
         1.0,  1.0,  1.0,
        -1.0, -1.0, -1.0,
         1.0,  1.0,  1.0,
    ];
    lex.insert_values("wears", "n^r s n^l", wears)?;
    Ok(lex)
}

/// Projection of `ℝ⁴` onto its first three coordinates.
pub fn quantity_projection() -> Matrix {
    let mut p = Matrix::zeros(3, 4);
    for i in 0..3 {
        p.set(i, i, 1.0);
    }
    p
}

/// `j(n) = j(n_s) = j(n_p) = n`, `j(s) = s`; identity components except
/// the projection on `n_s` and `n_p`.
pub fn simplification() -> Result<Translation> {
    let n: PregroupType = "n".parse()?;
    let s: PregroupType = "s".parse()?;
    let j = GrammarMap::new(
        [("n", &n), ("n_s", &n), ("n_p", &n), ("s", &s)]
            .into_iter()
            .map(|(b, w)| Ok((BasicType::new(b)?, w.clone())))
            .collect::<Result<_>>()?,
    );
    let alpha = [
        ("n", Matrix::identity(3)),
        ("n_s", quantity_projection()),
        ("n_p", quantity_projection()),
        ("s", Matrix::identity(1)),
    ]
    .into_iter()
    .map(|(b, m)| Ok((BasicType::new(b)?, m)))
    .collect::<Result<_>>()?;
    Translation::new(number_model(), plain_model(), j, alpha)
}
