//! JSON documents for models, lexicons, translations, matrices, fitting
//! pairs and dictionaries.
//!
//! Every document carries `"format": 1`. Tensor data is a flat row-major
//! array; shapes are always derived from the type and the model.
//! Lexicons and translations refer to models either inline or by a path
//! relative to the referring file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::dictionary::DictionaryEntry;
use crate::error::{Error, Result};
use crate::grammar::{BasicType, PregroupType, Reduction};
use crate::lexicon::{Lexicon, Phrase};
use crate::linalg::Matrix;
use crate::semantics::{LanguageModel, Tensor};
use crate::translation::{GrammarMap, Translation};

pub const FORMAT_VERSION: u32 = 1;

fn default_format() -> u32 {
    FORMAT_VERSION
}

fn check_format(format: u32) -> Result<()> {
    if format != FORMAT_VERSION {
        return Err(Error::UnsupportedFormat(format));
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDoc {
    #[serde(default = "default_format")]
    pub format: u32,
    pub name: String,
    pub basic_types: BTreeMap<BasicType, usize>,
}

impl ModelDoc {
    pub fn from_model(model: &LanguageModel) -> Self {
        ModelDoc {
            format: FORMAT_VERSION,
            name: model.name().to_string(),
            basic_types: model.dims().clone(),
        }
    }

    pub fn into_model(self) -> Result<LanguageModel> {
        check_format(self.format)?;
        LanguageModel::new(self.name, self.basic_types)
    }
}

/// A model given inline or as a path relative to the referring document.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModelRef {
    Path(PathBuf),
    Inline(ModelDoc),
}

impl ModelRef {
    fn resolve(self, base: &Path) -> Result<LanguageModel> {
        match self {
            ModelRef::Inline(doc) => doc.into_model(),
            ModelRef::Path(p) => load_model(base.join(p)),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDoc {
    pub word: String,
    #[serde(rename = "type")]
    pub ty: PregroupType,
    pub data: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LexiconDoc {
    #[serde(default = "default_format")]
    pub format: u32,
    pub model: ModelRef,
    pub entries: Vec<EntryDoc>,
}

impl LexiconDoc {
    /// Document with the model inlined.
    pub fn from_lexicon(lex: &Lexicon) -> Self {
        let entries = lex
            .entries()
            .flat_map(|(word, senses)| {
                senses.iter().map(move |o| EntryDoc {
                    word: word.to_string(),
                    ty: o.ty().clone(),
                    data: o.meaning().data().to_vec(),
                })
            })
            .collect();
        LexiconDoc {
            format: FORMAT_VERSION,
            model: ModelRef::Inline(ModelDoc::from_model(lex.model())),
            entries,
        }
    }

    pub fn into_lexicon(self, base: &Path) -> Result<Lexicon> {
        check_format(self.format)?;
        let model = self.model.resolve(base)?;
        let generators = model.generators();
        let mut lex = Lexicon::new(model);
        for e in self.entries {
            e.ty.check_generators(&generators)?;
            let tensor = Tensor::new(lex.model(), e.ty, e.data)?;
            let object = crate::product_space::PSObject::new(lex.model(), tensor)?;
            lex.insert(&e.word, object)?;
        }
        Ok(lex)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TranslationDoc {
    #[serde(default = "default_format")]
    pub format: u32,
    pub source: ModelRef,
    pub target: ModelRef,
    pub j: BTreeMap<BasicType, PregroupType>,
    pub alpha: BTreeMap<BasicType, Matrix>,
}

impl TranslationDoc {
    pub fn from_translation(t: &Translation) -> Self {
        TranslationDoc {
            format: FORMAT_VERSION,
            source: ModelRef::Inline(ModelDoc::from_model(t.source())),
            target: ModelRef::Inline(ModelDoc::from_model(t.target())),
            j: t.grammar_map().images().clone(),
            alpha: t.alpha().clone(),
        }
    }

    pub fn into_translation(self, base: &Path) -> Result<Translation> {
        check_format(self.format)?;
        let source = self.source.resolve(base)?;
        let target = self.target.resolve(base)?;
        Translation::new(source, target, GrammarMap::new(self.j), self.alpha)
    }
}

/// A bare `[[...]]` array or `{"format": 1, "matrix": [[...]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixDoc {
    Wrapped {
        #[serde(default = "default_format")]
        format: u32,
        matrix: Matrix,
    },
    Bare(Matrix),
}

impl MatrixDoc {
    pub fn new(matrix: Matrix) -> Self {
        MatrixDoc::Wrapped {
            format: FORMAT_VERSION,
            matrix,
        }
    }

    pub fn into_matrix(self) -> Result<Matrix> {
        match self {
            MatrixDoc::Wrapped { format, matrix } => {
                check_format(format)?;
                Ok(matrix)
            }
            MatrixDoc::Bare(matrix) => Ok(matrix),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDoc {
    pub source: Vec<f64>,
    pub target: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairsDoc {
    #[serde(default = "default_format")]
    pub format: u32,
    pub pairs: Vec<PairDoc>,
}

impl PairsDoc {
    pub fn into_pairs(self) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        check_format(self.format)?;
        Ok(self.pairs.into_iter().map(|p| (p.source, p.target)).collect())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionaryEntryDoc {
    pub source: String,
    pub source_senses: Vec<usize>,
    pub target: String,
    pub target_senses: Vec<usize>,
    pub reduction: Reduction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_reduction: Option<Reduction>,
    pub distance: f64,
}

fn phrase_parts(p: &Phrase) -> (String, Vec<usize>) {
    let senses = p.senses().map_or_else(|| vec![0; p.words().len()], <[usize]>::to_vec);
    (p.words().join(" "), senses)
}

impl DictionaryEntryDoc {
    pub fn from_entry(e: &DictionaryEntry) -> Self {
        let (source, source_senses) = phrase_parts(&e.source_phrase);
        let (target, target_senses) = phrase_parts(&e.target_phrase);
        DictionaryEntryDoc {
            source,
            source_senses,
            target,
            target_senses,
            reduction: e.reduction.clone(),
            target_reduction: e.target_reduction.clone(),
            distance: e.distance,
        }
    }

    pub fn into_entry(self) -> Result<DictionaryEntry> {
        let source_phrase = self.source.parse::<Phrase>()?.with_senses(self.source_senses)?;
        let target_phrase = self.target.parse::<Phrase>()?.with_senses(self.target_senses)?;
        Ok(DictionaryEntry {
            source_phrase,
            target_phrase,
            reduction: self.reduction,
            target_reduction: self.target_reduction,
            distance: self.distance,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DictionaryDoc {
    #[serde(default = "default_format")]
    pub format: u32,
    pub entries: Vec<DictionaryEntryDoc>,
}

impl DictionaryDoc {
    pub fn from_entries(entries: &[DictionaryEntry]) -> Self {
        DictionaryDoc {
            format: FORMAT_VERSION,
            entries: entries.iter().map(DictionaryEntryDoc::from_entry).collect(),
        }
    }

    pub fn into_entries(self) -> Result<Vec<DictionaryEntry>> {
        check_format(self.format)?;
        self.entries.into_iter().map(DictionaryEntryDoc::into_entry).collect()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|source| Error::Json {
        path: path.display().to_string(),
        source,
    })
}

fn base_dir(path: &Path) -> &Path {
    path.parent().unwrap_or_else(|| Path::new("."))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<LanguageModel> {
    let path = path.as_ref();
    parse::<ModelDoc>(path, &read(path)?)?.into_model()
}

pub fn load_lexicon(path: impl AsRef<Path>) -> Result<Lexicon> {
    let path = path.as_ref();
    parse::<LexiconDoc>(path, &read(path)?)?.into_lexicon(base_dir(path))
}

pub fn load_translation(path: impl AsRef<Path>) -> Result<Translation> {
    let path = path.as_ref();
    parse::<TranslationDoc>(path, &read(path)?)?.into_translation(base_dir(path))
}

pub fn load_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    let path = path.as_ref();
    parse::<MatrixDoc>(path, &read(path)?)?.into_matrix()
}

pub fn load_pairs(path: impl AsRef<Path>) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
    let path = path.as_ref();
    parse::<PairsDoc>(path, &read(path)?)?.into_pairs()
}

pub fn load_dictionary(path: impl AsRef<Path>) -> Result<Vec<DictionaryEntry>> {
    let path = path.as_ref();
    parse::<DictionaryDoc>(path, &read(path)?)?.into_entries()
}

/// Pretty-printed JSON for any document type.
pub fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents always serialize")
}
