//! The sample documents under `data/` describe the built-in sample setup,
//! and every document type survives a write/read round trip.

use std::path::PathBuf;

use discocat::io::*;
use discocat::*;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn sample_documents_match_built_in_setup() {
    assert_eq!(load_model(data("number_model.json")).unwrap(), samples::number_model());
    assert_eq!(load_model(data("plain_model.json")).unwrap(), samples::plain_model());
    let lex = load_lexicon(data("number_lexicon.json")).unwrap();
    let expected = samples::number_lexicon().unwrap();
    assert_eq!(lex.model(), expected.model());
    assert_eq!(
        lex.entries().collect::<Vec<_>>(),
        expected.entries().collect::<Vec<_>>()
    );
    let plain = load_lexicon(data("plain_lexicon.json")).unwrap();
    let expected = samples::plain_lexicon().unwrap();
    assert_eq!(
        plain.entries().collect::<Vec<_>>(),
        expected.entries().collect::<Vec<_>>()
    );
    let t = load_translation(data("simplification.json")).unwrap();
    let expected = samples::simplification().unwrap();
    assert_eq!(t.grammar_map(), expected.grammar_map());
    assert_eq!(t.alpha(), expected.alpha());
    assert_eq!(t.source(), expected.source());
    assert_eq!(t.target(), expected.target());
    assert_eq!(
        load_matrix(data("projection.json")).unwrap(),
        samples::quantity_projection()
    );
    let pairs = load_pairs(data("pairs.json")).unwrap();
    let fit = fit_alpha(&pairs, false).unwrap();
    assert!(!fit.underdetermined);
}

#[test]
fn documents_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let lex = samples::number_lexicon().unwrap();
    let t = samples::simplification().unwrap();

    let path = dir.path().join("lex.json");
    std::fs::write(&path, to_json(&LexiconDoc::from_lexicon(&lex))).unwrap();
    let back = load_lexicon(&path).unwrap();
    assert_eq!(back.entries().collect::<Vec<_>>(), lex.entries().collect::<Vec<_>>());

    let path = dir.path().join("t.json");
    std::fs::write(&path, to_json(&TranslationDoc::from_translation(&t))).unwrap();
    let back = load_translation(&path).unwrap();
    assert_eq!(back.alpha(), t.alpha());
    assert_eq!(back.grammar_map(), t.grammar_map());

    let q = DictionaryQuery {
        max_source_len: 2,
        ..DictionaryQuery::default()
    };
    let entries = build_dictionary(&lex, &translate_lexicon(&t, &lex).unwrap(), &t, &q).unwrap();
    let path = dir.path().join("dict.json");
    std::fs::write(&path, to_json(&DictionaryDoc::from_entries(&entries))).unwrap();
    assert_eq!(load_dictionary(&path).unwrap(), entries);
}

#[test]
fn unknown_format_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    std::fs::write(&path, r#"{"format": 2, "name": "M", "basic_types": {"n": 2}}"#).unwrap();
    assert!(matches!(load_model(&path), Err(Error::UnsupportedFormat(2))));
}
