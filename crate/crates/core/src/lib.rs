//! Compositional distributional language models and translations between them.
//!
//! * [`grammar`]: pregroup types and ε-only type reductions.
//! * [`semantics`]: language models, tensors, and reductions as contractions.
//! * [`product_space`]: typed meanings with distance-labelled morphisms.
//! * [`lexicon`]: words to typed meanings, extended to phrases.
//! * [`translation`]: grammar maps with per-type linear components,
//!   naturality checks, least-squares fitting and the nearest orthogonal matrix.
//! * [`dictionary`]: phrase-to-phrase dictionaries induced by a translation.
//! * [`io`]: the JSON document formats.

pub mod dictionary;
pub mod error;
pub mod grammar;
pub mod io;
pub mod lexicon;
pub mod linalg;
pub mod product_space;
pub mod samples;
pub mod semantics;
pub mod translation;

pub use dictionary::{build_dictionary, threshold_relation, DictionaryEntry, DictionaryQuery};
pub use error::{Error, Result};
pub use grammar::{
    compose_reductions, parse_type, reduce_search, tensor_types, BasicType, PregroupType, Reduction, SimpleType,
};
pub use lexicon::{lex_phrase, phrase_meaning, phrase_meaning_detailed, Lexicon, Phrase, PhraseMeaning};
pub use linalg::Matrix;
pub use product_space::{ps_compose, ps_morphism, ps_tensor, PSMorphism, PSObject};
pub use semantics::{
    apply_reduction, normalize_sentence, reduction_matrix, space_shape, tensor_product, LanguageModel, Tensor,
};
pub use translation::{
    alpha_component, check_naturality, compose_translations, fit_alpha, j_apply, nearest_unitary, translate_lexicon,
    translate_morphism, translate_object, AlphaFit, GrammarMap, NaturalityReport, Translation,
};

/// Formats a number with 12 significant digits, like C's `%.12g`.
pub fn format_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let formatted = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = formatted.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}
