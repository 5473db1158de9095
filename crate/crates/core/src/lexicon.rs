//! Lexicons and the phrase-meaning pipeline.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grammar::{reduce_search, PregroupType, Reduction};
use crate::product_space::{ps_tensor, PSObject};
use crate::semantics::{apply_reduction, LanguageModel, Tensor};

/// Words mapped to one or more typed meanings over a single model.
///
/// A word may carry several senses (e.g. a verb typed for singular and for
/// plural arguments); sense `0` is the default.
#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    model: LanguageModel,
    entries: BTreeMap<String, Vec<PSObject>>,
}

impl Lexicon {
    pub fn new(model: LanguageModel) -> Self {
        Lexicon {
            model,
            entries: BTreeMap::new(),
        }
    }

    pub fn model(&self) -> &LanguageModel {
        &self.model
    }

    /// Appends a sense for `word`.
    pub fn insert(&mut self, word: &str, object: PSObject) -> Result<()> {
        check_word(word)?;
        object.meaning().check_model(&self.model)?;
        self.entries.entry(word.to_string()).or_default().push(object);
        Ok(())
    }

    /// Parses `ty` against the model and appends the sense.
    pub fn insert_values(&mut self, word: &str, ty: &str, data: Vec<f64>) -> Result<()> {
        let ty = self.model.parse_type(ty)?;
        let tensor = Tensor::new(&self.model, ty, data)?;
        self.insert(word, PSObject::from_tensor_unchecked(tensor))
    }

    pub fn senses(&self, word: &str) -> Result<&[PSObject]> {
        self.entries
            .get(word)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::UnknownWord(word.to_string()))
    }

    pub fn sense(&self, word: &str, index: usize) -> Result<&PSObject> {
        let senses = self.senses(word)?;
        senses.get(index).ok_or_else(|| Error::InvalidSense {
            word: word.to_string(),
            index,
            available: senses.len(),
        })
    }

    /// Words in sorted order.
    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &[PSObject])> {
        self.entries.iter().map(|(w, s)| (w.as_str(), s.as_slice()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Every sense assignment for `words`, last word varying fastest.
    pub fn sense_choices(&self, words: &[String]) -> Result<Vec<Vec<usize>>> {
        let counts = words
            .iter()
            .map(|w| self.senses(w).map(<[_]>::len))
            .collect::<Result<Vec<_>>>()?;
        let mut out = vec![Vec::with_capacity(words.len())];
        for &count in &counts {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..count).map(move |k| {
                        let mut next = prefix.clone();
                        next.push(k);
                        next
                    })
                })
                .collect();
        }
        Ok(out)
    }
}

fn check_word(word: &str) -> Result<()> {
    if word.is_empty() || word.chars().any(char::is_whitespace) {
        return Err(Error::InvalidInput(format!(
            "lexicon words are non-empty and contain no whitespace, got {word:?}"
        )));
    }
    Ok(())
}

/// A non-empty sequence of words, optionally pinned to specific senses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Phrase {
    words: Vec<String>,
    senses: Option<Vec<usize>>,
}

impl Phrase {
    pub fn new(words: Vec<String>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InvalidInput("a phrase needs at least one word".into()));
        }
        for w in &words {
            check_word(w)?;
        }
        Ok(Phrase { words, senses: None })
    }

    pub fn with_senses(mut self, senses: Vec<usize>) -> Result<Self> {
        if senses.len() != self.words.len() {
            return Err(Error::InvalidInput(format!(
                "{} sense indices given for {} words",
                senses.len(),
                self.words.len()
            )));
        }
        self.senses = Some(senses);
        Ok(self)
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn senses(&self) -> Option<&[usize]> {
        self.senses.as_deref()
    }

    /// Concatenation; sense pins survive only if both sides carry them.
    pub fn concat(&self, other: &Phrase) -> Phrase {
        let mut words = self.words.clone();
        words.extend(other.words.iter().cloned());
        let senses = match (&self.senses, &other.senses) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        Phrase { words, senses }
    }
}

impl FromStr for Phrase {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Phrase::new(text.split_whitespace().map(String::from).collect())
    }
}

/// Words separated by spaces; a non-default sense is shown as `word#k`.
impl fmt::Display for Phrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, w) in self.words.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(w)?;
            if let Some(k) = self.senses.as_ref().map(|s| s[i]).filter(|&k| k > 0) {
                write!(f, "#{k}")?;
            }
        }
        Ok(())
    }
}

fn lex_with_senses(lex: &Lexicon, words: &[String], senses: &[usize]) -> Result<PSObject> {
    let mut acc = PSObject::unit();
    for (w, &k) in words.iter().zip(senses) {
        acc = ps_tensor(&lex.model, &acc, lex.sense(w, k)?)?;
    }
    Ok(acc)
}

/// The monoidal product of the chosen senses, left to right.
pub fn lex_phrase(lex: &Lexicon, p: &Phrase) -> Result<PSObject> {
    let defaults;
    let senses = match p.senses() {
        Some(s) => s,
        None => {
            defaults = vec![0; p.words.len()];
            &defaults
        }
    };
    lex_with_senses(lex, &p.words, senses)
}

/// Result of evaluating a phrase: the senses and reduction that were used.
#[derive(Debug, Clone, PartialEq)]
pub struct PhraseMeaning {
    pub senses: Vec<usize>,
    pub reduction: Reduction,
    pub meaning: Tensor,
}

/// Evaluates a phrase at `target` using the first reduction found.
///
/// Without pinned senses, sense assignments are tried in order starting
/// from all-default until one of them reduces.
pub fn phrase_meaning_detailed(lex: &Lexicon, p: &Phrase, target: &PregroupType) -> Result<PhraseMeaning> {
    let choices = match p.senses() {
        Some(s) => vec![s.to_vec()],
        None => lex.sense_choices(&p.words)?,
    };
    for senses in choices {
        let object = lex_with_senses(lex, &p.words, &senses)?;
        if let Some(reduction) = reduce_search(object.ty(), target, 1).pop() {
            let meaning = apply_reduction(&lex.model, &reduction, object.meaning())?;
            return Ok(PhraseMeaning {
                senses,
                reduction,
                meaning,
            });
        }
    }
    Err(Error::NoReduction {
        from: lex_phrase(lex, p)?.ty().to_string(),
        to: target.to_string(),
    })
}

pub fn phrase_meaning(lex: &Lexicon, p: &Phrase, target: &PregroupType) -> Result<Tensor> {
    phrase_meaning_detailed(lex, p, target).map(|m| m.meaning)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lexicon() -> Lexicon {
        let model = LanguageModel::from_dims("F", [("n", 2), ("s", 1)]).unwrap();
        let mut lex = Lexicon::new(model);
        lex.insert_values("Rose", "n", vec![1.0, 2.0]).unwrap();
        lex.insert_values("Rosie", "n", vec![0.5, -1.0]).unwrap();
        lex.insert_values("likes", "n^r s n^l", vec![1.0, 0.0, 0.0, 1.0])
            .unwrap();
        lex.insert_values("runs", "s", vec![3.0]).unwrap();
        lex.insert_values("runs", "n^r s", vec![1.0, 1.0]).unwrap();
        lex
    }

    fn p(text: &str) -> Phrase {
        text.parse().unwrap()
    }

    #[test]
    fn single_word_is_its_entry() {
        let lex = lexicon();
        assert_eq!(&lex_phrase(&lex, &p("Rose")).unwrap(), lex.sense("Rose", 0).unwrap());
    }

    #[test]
    fn transitive_phrase_type() {
        let lex = lexicon();
        let o = lex_phrase(&lex, &p("Rose likes Rosie")).unwrap();
        assert_eq!(o.ty(), &"n n^r s n^l n".parse().unwrap());
        assert_eq!(o.meaning().shape(), &[2, 2, 1, 2, 2]);
    }

    #[test]
    fn meaning_of_transitive_sentence() {
        let lex = lexicon();
        let m = phrase_meaning(&lex, &p("Rose likes Rosie"), &"s".parse().unwrap()).unwrap();
        // likes is the identity pairing: Rose · Rosie
        assert!((m.data()[0] - (0.5 - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn noun_to_itself() {
        let lex = lexicon();
        let m = phrase_meaning(&lex, &p("Rosie"), &"n".parse().unwrap()).unwrap();
        assert_eq!(m.data(), &[0.5, -1.0]);
    }

    #[test]
    fn backtracks_over_senses() {
        let lex = lexicon();
        let pm = phrase_meaning_detailed(&lex, &p("Rose runs"), &"s".parse().unwrap()).unwrap();
        assert_eq!(pm.senses, vec![0, 1]);
        assert!((pm.meaning.data()[0] - 3.0).abs() < 1e-12);
        // pinned to the default sense there is no reduction
        let pinned = p("Rose runs").with_senses(vec![0, 0]).unwrap();
        assert!(matches!(
            phrase_meaning(&lex, &pinned, &"s".parse().unwrap()),
            Err(Error::NoReduction { .. })
        ));
    }

    #[test]
    fn unknown_word_and_bad_sense() {
        let lex = lexicon();
        assert!(matches!(lex_phrase(&lex, &p("Rose eats")), Err(Error::UnknownWord(w)) if w == "eats"));
        let bad = p("Rose").with_senses(vec![3]).unwrap();
        assert!(matches!(lex_phrase(&lex, &bad), Err(Error::InvalidSense { .. })));
    }

    #[test]
    fn phrase_display_marks_senses() {
        let q = p("Rose runs").with_senses(vec![0, 1]).unwrap();
        assert_eq!(q.to_string(), "Rose runs#1");
        assert!(Phrase::new(vec![]).is_err());
    }

    #[test]
    fn lex_is_monoid_homomorphism() {
        let lex = lexicon();
        let (a, b) = (p("Rose likes"), p("Rosie"));
        let whole = lex_phrase(&lex, &a.concat(&b)).unwrap();
        let parts = ps_tensor(
            lex.model(),
            &lex_phrase(&lex, &a).unwrap(),
            &lex_phrase(&lex, &b).unwrap(),
        )
        .unwrap();
        assert_eq!(whole, parts);
    }
}
