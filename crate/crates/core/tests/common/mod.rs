//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use discocat::grammar::Cup;
use discocat::{
    BasicType, DictionaryEntry, LanguageModel, Lexicon, Matrix, PSObject, PregroupType, Reduction, SimpleType, Tensor,
    Translation,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn ty(text: &str) -> PregroupType {
    text.parse().unwrap()
}

pub fn basic(name: &str) -> BasicType {
    BasicType::new(name).unwrap()
}

/// Every cup set reachable by eliminating adjacent contracting pairs one at
/// a time, whose survivors spell `target`.
pub fn brute_force_reductions(word: &PregroupType, target: &PregroupType) -> BTreeSet<Vec<Cup>> {
    let simples = word.simples();
    let mut found = BTreeSet::new();
    let mut seen = HashSet::new();
    let alive: Vec<usize> = (0..simples.len()).collect();
    explore(simples, target.simples(), alive, Vec::new(), &mut seen, &mut found);
    found
}

fn explore(
    simples: &[SimpleType],
    target: &[SimpleType],
    alive: Vec<usize>,
    cups: Vec<Cup>,
    seen: &mut HashSet<Vec<Cup>>,
    found: &mut BTreeSet<Vec<Cup>>,
) {
    let mut key = cups.clone();
    key.sort_unstable();
    if !seen.insert(key.clone()) {
        return;
    }
    if alive.len() == target.len() && alive.iter().zip(target).all(|(&i, t)| &simples[i] == t) {
        found.insert(key);
    }
    for w in 0..alive.len().saturating_sub(1) {
        let (i, j) = (alive[w], alive[w + 1]);
        let (a, b) = (&simples[i], &simples[j]);
        if a.base == b.base && a.adjoint + 1 == b.adjoint {
            let mut next = alive.clone();
            next.drain(w..w + 2);
            let mut c = cups.clone();
            c.push((i, j));
            explore(simples, target, next, c, seen, found);
        }
    }
}

/// Contraction by direct summation over every source multi-index.
pub fn naive_contract(shape: &[usize], data: &[f64], r: &Reduction) -> Vec<f64> {
    let out_shape: Vec<usize> = r.survivors().iter().map(|&k| shape[k]).collect();
    let mut out = vec![0.0; out_shape.iter().product()];
    let mut idx = vec![0usize; shape.len()];
    for (flat, &v) in data.iter().enumerate() {
        let mut rest = flat;
        for k in (0..shape.len()).rev() {
            idx[k] = rest % shape[k];
            rest /= shape[k];
        }
        if r.cups().iter().all(|&(i, j)| idx[i] == idx[j]) {
            let mut o = 0;
            for &k in r.survivors() {
                o = o * shape[k] + idx[k];
            }
            out[o] += v;
        }
    }
    out
}

pub fn naive_outer(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

pub fn naive_kron(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for ra in a {
        for rb in b {
            out.push(naive_outer(ra, rb));
        }
    }
    out
}

pub fn naive_matvec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Random model over `names` with dimensions in `1..=max_dim`.
pub fn random_model(rng: &mut ChaCha8Rng, name: &str, names: &[&str], max_dim: usize) -> LanguageModel {
    let dims = names.iter().map(|n| (*n, rng.gen_range(1..=max_dim)));
    LanguageModel::from_dims(name, dims).unwrap()
}

pub fn random_simple(rng: &mut ChaCha8Rng, names: &[&str]) -> SimpleType {
    SimpleType::new(basic(names.choose(rng).unwrap()), rng.gen_range(-1..=1))
}

/// A word built from a few kept simple types with contracting pairs
/// inserted at random positions, so it reduces in at least one way.
pub fn random_reducible_word(rng: &mut ChaCha8Rng, names: &[&str], max_kept: usize, pairs: usize) -> PregroupType {
    let kept = rng.gen_range(0..=max_kept);
    let mut word: Vec<SimpleType> = (0..kept).map(|_| random_simple(rng, names)).collect();
    for _ in 0..pairs {
        let x = random_simple(rng, names);
        let pos = rng.gen_range(0..=word.len());
        word.splice(pos..pos, [x.clone(), x.right_adjoint()]);
    }
    PregroupType::new(word)
}

/// A reduction of `word` made by at most `steps` random adjacent eliminations.
pub fn random_reduction(rng: &mut ChaCha8Rng, word: &PregroupType, steps: usize) -> Reduction {
    let simples = word.simples();
    let mut alive: Vec<usize> = (0..simples.len()).collect();
    let mut cups = Vec::new();
    for _ in 0..steps {
        let options: Vec<usize> = (0..alive.len().saturating_sub(1))
            .filter(|&w| simples[alive[w]].contracts_with(&simples[alive[w + 1]]))
            .collect();
        let Some(&w) = options.choose(rng) else { break };
        cups.push((alive[w], alive[w + 1]));
        alive.drain(w..w + 2);
    }
    Reduction::from_cups(word.clone(), cups).unwrap()
}

pub fn random_data(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()
}

pub fn random_tensor(rng: &mut ChaCha8Rng, model: &LanguageModel, ty: &PregroupType) -> Tensor {
    let n = model.space_size(ty).unwrap();
    Tensor::new(model, ty.clone(), random_data(rng, n)).unwrap()
}

pub fn random_object(rng: &mut ChaCha8Rng, model: &LanguageModel, ty: &PregroupType) -> PSObject {
    PSObject::new(model, random_tensor(rng, model, ty)).unwrap()
}

/// Random orthogonal matrix: Gram–Schmidt on a random square matrix.
pub fn random_orthogonal(rng: &mut ChaCha8Rng, n: usize) -> Matrix {
    loop {
        let mut cols: Vec<Vec<f64>> = Vec::new();
        let mut ok = true;
        for _ in 0..n {
            let mut v = random_data(rng, n);
            for c in &cols {
                let dot: f64 = v.iter().zip(c).map(|(a, b)| a * b).sum();
                v.iter_mut().zip(c).for_each(|(a, b)| *a -= dot * b);
            }
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm < 1e-6 {
                ok = false;
                break;
            }
            v.iter_mut().for_each(|a| *a /= norm);
            cols.push(v);
        }
        if ok {
            return Matrix::from_columns(&cols).unwrap();
        }
    }
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_row_major(rows, cols, random_data(rng, rows * cols)).unwrap()
}

/// Key identifying a dictionary entry independently of its computed distance.
pub type EntryKey = (Vec<String>, Vec<usize>, Vec<String>, Vec<usize>, Vec<Cup>);

pub fn entry_key(e: &DictionaryEntry) -> EntryKey {
    (
        e.source_phrase.words().to_vec(),
        e.source_phrase.senses().unwrap().to_vec(),
        e.target_phrase.words().to_vec(),
        e.target_phrase.senses().unwrap().to_vec(),
        e.reduction.cups().to_vec(),
    )
}

struct NaivePhrase {
    words: Vec<String>,
    senses: Vec<usize>,
    ty: PregroupType,
    data: Vec<f64>,
}

fn naive_phrases(lex: &Lexicon, max_len: usize) -> Vec<NaivePhrase> {
    let mut atoms = Vec::new();
    for (word, senses) in lex.entries() {
        for (k, o) in senses.iter().enumerate() {
            atoms.push((word.to_string(), k, o.ty().clone(), o.meaning().data().to_vec()));
        }
    }
    let mut out = Vec::new();
    let mut layer = vec![NaivePhrase {
        words: vec![],
        senses: vec![],
        ty: PregroupType::unit(),
        data: vec![1.0],
    }];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &layer {
            for (w, k, t, d) in &atoms {
                let mut words = p.words.clone();
                words.push(w.clone());
                let mut senses = p.senses.clone();
                senses.push(*k);
                next.push(NaivePhrase {
                    words,
                    senses,
                    ty: p.ty.tensor(t),
                    data: naive_outer(&p.data, d),
                });
            }
        }
        out.extend(next.iter().map(|p| NaivePhrase {
            words: p.words.clone(),
            senses: p.senses.clone(),
            ty: p.ty.clone(),
            data: p.data.clone(),
        }));
        layer = next;
    }
    out
}

/// The full (unfiltered) dictionary by exhaustive enumeration, using only
/// per-word data, explicit Kronecker products of the α components, the
/// brute-force reduction oracle and direct summation.
pub fn naive_dictionary(
    source: &Lexicon,
    target: &Lexicon,
    t: &Translation,
    max_source_len: usize,
    max_target_len: usize,
) -> BTreeMap<EntryKey, f64> {
    let j = t.grammar_map();
    let alpha_rows = |s: &SimpleType| -> Vec<Vec<f64>> {
        assert!(
            j.image(&s.base).unwrap().len() == 1,
            "oracle handles letter-to-letter maps"
        );
        t.alpha()[&s.base].to_rows()
    };
    let mut out = BTreeMap::new();
    let targets = naive_phrases(target, max_target_len);
    for p in naive_phrases(source, max_source_len) {
        let mut alpha = vec![vec![1.0]];
        for s in p.ty.simples() {
            alpha = naive_kron(&alpha, &alpha_rows(s));
        }
        let translated = naive_matvec(&alpha, &p.data);
        let jg = j.apply(&p.ty).unwrap();
        let shape = t.target().space_shape(&jg).unwrap();
        for q in &targets {
            for cups in brute_force_reductions(&jg, &q.ty) {
                let r = Reduction::new(jg.clone(), q.ty.clone(), cups.clone()).unwrap();
                let image = naive_contract(&shape, &translated, &r);
                let key = (
                    p.words.clone(),
                    p.senses.clone(),
                    q.words.clone(),
                    q.senses.clone(),
                    cups,
                );
                out.insert(key, euclid(&image, &q.data));
            }
        }
    }
    out
}
