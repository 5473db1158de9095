use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use discocat::io;
use discocat::{Error, LanguageModel, Lexicon, Result, Translation};

/// Everything loaded for one command, keyed by file path.
#[derive(Debug, Default)]
pub struct Workspace {
    pub models: BTreeMap<PathBuf, LanguageModel>,
    pub lexicons: BTreeMap<PathBuf, Lexicon>,
    pub translations: BTreeMap<PathBuf, Translation>,
}

impl Workspace {
    pub fn model(&mut self, path: &Path) -> Result<&LanguageModel> {
        if !self.models.contains_key(path) {
            let model = io::load_model(path)?;
            self.models.insert(path.to_path_buf(), model);
        }
        Ok(&self.models[path])
    }

    pub fn lexicon(&mut self, path: &Path) -> Result<&Lexicon> {
        if !self.lexicons.contains_key(path) {
            let lex = io::load_lexicon(path)?;
            self.lexicons.insert(path.to_path_buf(), lex);
        }
        Ok(&self.lexicons[path])
    }

    pub fn translation(&mut self, path: &Path) -> Result<&Translation> {
        if !self.translations.contains_key(path) {
            let t = io::load_translation(path)?;
            self.translations.insert(path.to_path_buf(), t);
        }
        Ok(&self.translations[path])
    }

    /// Checks that every lexicon is over the source or target model of every
    /// translation it is used with.
    pub fn check_link(lex: &Lexicon, model: &LanguageModel) -> Result<()> {
        if lex.model() != model {
            return Err(Error::ModelMismatch {
                expected: model.name().to_string(),
                found: lex.model().name().to_string(),
            });
        }
        Ok(())
    }
}
