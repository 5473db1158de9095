//! Dictionaries between two lexicons over a translation.
//!
//! An entry `(p, (r, d), q)` pairs a source phrase `p` with a target phrase
//! `q` through a reduction `r: j(g) → g'` of the translated source type, and
//! records the distance `d` between the translated, reduced meaning of `p`
//! and the meaning of `q`.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grammar::{reduce_search, PregroupType, Reduction};
use crate::lexicon::{lex_phrase, Lexicon, Phrase};
use crate::product_space::PSObject;
use crate::semantics::{apply_reduction, Tensor};
use crate::translation::{translate_object, Translation};

/// Enumeration bounds and filters for [`build_dictionary`].
#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryQuery {
    pub max_source_len: usize,
    pub max_target_len: usize,
    /// When set, both sides are reduced to this type before comparing.
    pub target_type: Option<PregroupType>,
    /// Keep only entries with distance `≤ k`.
    pub threshold: Option<f64>,
    /// Hard cap on the number of (source, target) phrase pairs.
    pub max_pairs: usize,
    /// Reductions considered per side of a pair.
    pub max_reductions: usize,
}

impl Default for DictionaryQuery {
    fn default() -> Self {
        DictionaryQuery {
            max_source_len: 1,
            max_target_len: 1,
            target_type: None,
            threshold: None,
            max_pairs: 1_000_000,
            max_reductions: 16,
        }
    }
}

impl DictionaryQuery {
    fn validate(&self) -> Result<()> {
        if self.max_source_len == 0 || self.max_target_len == 0 {
            return Err(Error::InvalidInput("phrase length caps must be at least 1".into()));
        }
        if let Some(k) = self.threshold {
            if k.is_nan() || k < 0.0 {
                return Err(Error::InvalidInput(format!("threshold must be non-negative, got {k}")));
            }
        }
        if self.max_reductions == 0 {
            return Err(Error::InvalidInput("max_reductions must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DictionaryEntry {
    /// Source phrase with the senses used pinned.
    pub source_phrase: Phrase,
    pub target_phrase: Phrase,
    /// `r: j(g) → g'`, or `j(g) → h` when a target type `h` was requested.
    pub reduction: Reduction,
    /// `g' → h` on the target side when a target type was requested.
    pub target_reduction: Option<Reduction>,
    pub distance: f64,
}

impl DictionaryEntry {
    fn sort_key_cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then_with(|| self.source_phrase.cmp(&other.source_phrase))
            .then_with(|| self.target_phrase.cmp(&other.target_phrase))
            .then_with(|| self.reduction.cups().cmp(other.reduction.cups()))
            .then_with(|| {
                let cups = |r: &Option<Reduction>| r.as_ref().map(|r| r.cups().to_vec());
                cups(&self.target_reduction).cmp(&cups(&other.target_reduction))
            })
    }

    /// `p<TAB>q<TAB>reduction<TAB>distance`.
    pub fn to_tsv_row(&self) -> String {
        let mut reduction = self.reduction.to_string();
        if let Some(tr) = &self.target_reduction {
            reduction.push_str(" ; target ");
            reduction.push_str(&tr.to_string());
        }
        format!(
            "{}\t{}\t{}\t{}",
            self.source_phrase,
            self.target_phrase,
            reduction,
            crate::format_g12(self.distance)
        )
    }
}

/// Every phrase of length `1..=max_len` over the lexicon, with every sense
/// assignment, in (length, words, senses) order.
pub fn enumerate_phrases(lex: &Lexicon, max_len: usize) -> Vec<Phrase> {
    let words: Vec<String> = lex.words().map(String::from).collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<String>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|prefix| {
                words.iter().map(move |w| {
                    let mut next = prefix.clone();
                    next.push(w.clone());
                    next
                })
            })
            .collect();
        for ws in &layer {
            let choices = lex.sense_choices(ws).expect("words come from the lexicon");
            for senses in choices {
                let p = Phrase::new(ws.clone()).and_then(|p| p.with_senses(senses));
                out.push(p.expect("lexicon words are valid phrase words"));
            }
        }
    }
    out
}

/// Number of sense-resolved phrases of length `1..=max_len`, or `None` on overflow.
fn phrase_count(lex: &Lexicon, max_len: usize) -> Option<usize> {
    let per_word: usize = lex.entries().map(|(_, s)| s.len()).sum();
    let mut power = 1usize;
    let mut total = 0usize;
    for _ in 0..max_len {
        power = power.checked_mul(per_word)?;
        total = total.checked_add(power)?;
    }
    Some(total)
}

struct Side {
    phrase: Phrase,
    object: PSObject,
}

fn reduce_to(
    model: &crate::semantics::LanguageModel,
    object: &PSObject,
    target: &PregroupType,
    max: usize,
) -> Result<Vec<(Reduction, Tensor)>> {
    reduce_search(object.ty(), target, max)
        .into_iter()
        .map(|r| {
            let image = apply_reduction(model, &r, object.meaning())?;
            Ok((r, image))
        })
        .collect()
}

/// Builds the dictionary between `source_lex` and `target_lex` over `t`.
pub fn build_dictionary(
    source_lex: &Lexicon,
    target_lex: &Lexicon,
    t: &Translation,
    q: &DictionaryQuery,
) -> Result<Vec<DictionaryEntry>> {
    q.validate()?;
    for (lex, model) in [(source_lex, t.source()), (target_lex, t.target())] {
        if lex.model() != model {
            return Err(Error::ModelMismatch {
                expected: model.name().to_string(),
                found: lex.model().name().to_string(),
            });
        }
    }
    let n_source = phrase_count(source_lex, q.max_source_len);
    let n_target = phrase_count(target_lex, q.max_target_len);
    match n_source.zip(n_target).and_then(|(a, b)| a.checked_mul(b)) {
        Some(pairs) if pairs <= q.max_pairs => {}
        pairs => {
            return Err(Error::BudgetExceeded {
                pairs: pairs.unwrap_or(usize::MAX),
                cap: q.max_pairs,
            })
        }
    }

    let translated: Vec<Side> = enumerate_phrases(source_lex, q.max_source_len)
        .into_par_iter()
        .map(|phrase| {
            let object = translate_object(t, &lex_phrase(source_lex, &phrase)?)?;
            Ok(Side { phrase, object })
        })
        .collect::<Result<_>>()?;
    let targets: Vec<Side> = enumerate_phrases(target_lex, q.max_target_len)
        .into_iter()
        .map(|phrase| {
            let object = lex_phrase(target_lex, &phrase)?;
            Ok(Side { phrase, object })
        })
        .collect::<Result<_>>()?;

    let model = t.target();
    let mut entries: Vec<DictionaryEntry> = match &q.target_type {
        Some(h) => {
            let reduced_targets: Vec<(&Side, Vec<(Reduction, Tensor)>)> = targets
                .iter()
                .map(|side| Ok((side, reduce_to(model, &side.object, h, q.max_reductions)?)))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|(_, rs)| !rs.is_empty())
                .collect();
            let per_source = translated
                .par_iter()
                .map(|src| {
                    let mut out = Vec::new();
                    for (r, image) in reduce_to(model, &src.object, h, q.max_reductions)? {
                        for (tgt, target_rs) in &reduced_targets {
                            for (rq, target_image) in target_rs {
                                out.push(DictionaryEntry {
                                    source_phrase: src.phrase.clone(),
                                    target_phrase: tgt.phrase.clone(),
                                    reduction: r.clone(),
                                    target_reduction: Some(rq.clone()),
                                    distance: image.distance(target_image)?,
                                });
                            }
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            per_source.into_iter().flatten().collect()
        }
        None => {
            let per_source = translated
                .par_iter()
                .map(|src| {
                    let mut out = Vec::new();
                    for tgt in &targets {
                        for (r, image) in reduce_to(model, &src.object, tgt.object.ty(), q.max_reductions)? {
                            out.push(DictionaryEntry {
                                source_phrase: src.phrase.clone(),
                                target_phrase: tgt.phrase.clone(),
                                reduction: r,
                                target_reduction: None,
                                distance: image.distance(tgt.object.meaning())?,
                            });
                        }
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            per_source.into_iter().flatten().collect()
        }
    };

    if let Some(k) = q.threshold {
        entries.retain(|e| e.distance <= k);
    }
    entries.sort_by(DictionaryEntry::sort_key_cmp);
    Ok(entries)
}

/// Entries with distance `≤ k`, order preserved.
pub fn threshold_relation(entries: &[DictionaryEntry], k: f64) -> Vec<DictionaryEntry> {
    entries.iter().filter(|e| e.distance <= k).cloned().collect()
}

/// Recomputes an entry's distance from the per-word lexicon entries.
pub fn recompute_distance(
    source_lex: &Lexicon,
    target_lex: &Lexicon,
    t: &Translation,
    entry: &DictionaryEntry,
) -> Result<f64> {
    let p = translate_object(t, &lex_phrase(source_lex, &entry.source_phrase)?)?;
    let q = lex_phrase(target_lex, &entry.target_phrase)?;
    let p_image = apply_reduction(t.target(), &entry.reduction, p.meaning())?;
    let q_image = match &entry.target_reduction {
        Some(rq) => apply_reduction(t.target(), rq, q.meaning())?,
        None => q.into_meaning(),
    };
    p_image.distance(&q_image)
}
