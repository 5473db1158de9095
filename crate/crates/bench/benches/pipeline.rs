use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use discocat::{
    apply_reduction, build_dictionary, nearest_unitary, reduce_search, samples, translate_lexicon, DictionaryQuery,
    LanguageModel, Matrix,
};
use discocat_bench::{clause_chain, filled_tensor, filler};
use std::hint::black_box;

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("reduce_search");
    for k in [1, 3, 6] {
        let (word, target) = clause_chain(k);
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| reduce_search(black_box(&word), &target, usize::MAX))
        });
    }
    group.finish();
}

fn contraction(c: &mut Criterion) {
    let model = LanguageModel::from_dims("M", [("n", 4), ("s", 2)]).unwrap();
    let mut group = c.benchmark_group("apply_reduction");
    for k in [1, 2] {
        let (word, target) = clause_chain(k);
        let r = reduce_search(&word, &target, 1).remove(0);
        let t = filled_tensor(&model, &word);
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, _| {
            b.iter(|| apply_reduction(&model, &r, black_box(&t)).unwrap())
        });
    }
    group.finish();
}

fn procrustes(c: &mut Criterion) {
    let mut group = c.benchmark_group("nearest_unitary");
    for n in [4, 16, 64] {
        // diagonally dominant, hence full rank
        let mut a = Matrix::from_row_major(n, n, filler(n * n)).unwrap();
        for i in 0..n {
            a.set(i, i, a.get(i, i) + n as f64);
        }
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| nearest_unitary(black_box(&a)).unwrap())
        });
    }
    group.finish();
}

fn dictionary(c: &mut Criterion) {
    let lex = samples::number_lexicon().unwrap();
    let t = samples::simplification().unwrap();
    let target = translate_lexicon(&t, &lex).unwrap();
    let mut group = c.benchmark_group("build_dictionary");
    group.sample_size(10);
    for len in [1, 2, 3] {
        let q = DictionaryQuery {
            max_source_len: len,
            max_target_len: len,
            ..DictionaryQuery::default()
        };
        group.bench_with_input(BenchmarkId::from_parameter(len), &len, |b, _| {
            b.iter(|| build_dictionary(&lex, &target, &t, black_box(&q)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, search, contraction, procrustes, dictionary);
criterion_main!(benches);
