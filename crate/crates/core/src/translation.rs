//! Translations `T = (j, α)` between language models.
//!
//! `j` sends each source basic type to a word in the target grammar and is
//! extended monoidally; `α` gives one matrix per source basic type, from
//! `F(b)` to the flattened `F'(j(b))`, extended to words by Kronecker
//! products.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::grammar::{BasicType, PregroupType, Reduction, SimpleType};
use crate::lexicon::Lexicon;
use crate::linalg::{pseudo_inverse, svd, Matrix};
use crate::product_space::{ps_morphism, PSMorphism, PSObject};
use crate::semantics::{apply_reduction, LanguageModel, Tensor};

/// A strict monoidal functor between free grammars, given on generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrammarMap {
    images: BTreeMap<BasicType, PregroupType>,
}

impl GrammarMap {
    pub fn new(images: BTreeMap<BasicType, PregroupType>) -> Self {
        GrammarMap { images }
    }

    pub fn identity<'a>(generators: impl IntoIterator<Item = &'a BasicType>) -> Self {
        GrammarMap {
            images: generators
                .into_iter()
                .map(|b| (b.clone(), PregroupType::basic(b.clone())))
                .collect(),
        }
    }

    pub fn images(&self) -> &BTreeMap<BasicType, PregroupType> {
        &self.images
    }

    pub fn image(&self, b: &BasicType) -> Result<&PregroupType> {
        self.images.get(b).ok_or_else(|| Error::UnknownBasicType(b.to_string()))
    }

    /// `j(x^z) = j(x)^z`.
    pub fn apply_simple(&self, s: &SimpleType) -> Result<PregroupType> {
        Ok(self.image(&s.base)?.adjoint_power(s.adjoint))
    }

    pub fn apply(&self, g: &PregroupType) -> Result<PregroupType> {
        let mut simples = Vec::new();
        for s in g.simples() {
            simples.extend(self.apply_simple(s)?.simples().iter().cloned());
        }
        Ok(PregroupType::new(simples))
    }

    /// `j(r)`: each cup on `x^z x^(z+1)` becomes the nested cups that
    /// contract `j(x)^z · j(x)^(z+1)`.
    pub fn apply_reduction(&self, r: &Reduction) -> Result<Reduction> {
        let mut offsets = Vec::with_capacity(r.source().len());
        let mut lengths = Vec::with_capacity(r.source().len());
        let mut total = 0;
        for s in r.source().simples() {
            let len = self.image(&s.base)?.len();
            offsets.push(total);
            lengths.push(len);
            total += len;
        }
        let mut cups = Vec::new();
        for &(i, j) in r.cups() {
            let len = lengths[i];
            if lengths[j] != len {
                return Err(Error::NonFunctorial(format!(
                    "cup ({i},{j}) joins images of different lengths"
                )));
            }
            cups.extend((0..len).map(|m| (offsets[i] + len - 1 - m, offsets[j] + m)));
        }
        let source = self.apply(r.source())?;
        let target = self.apply(r.target())?;
        Reduction::new(source, target, cups)
            .map_err(|e| Error::NonFunctorial(format!("image of {r} is not a reduction: {e}")))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &GrammarMap) -> Result<GrammarMap> {
        let images = first
            .images
            .iter()
            .map(|(b, w)| Ok((b.clone(), self.apply(w)?)))
            .collect::<Result<_>>()?;
        Ok(GrammarMap { images })
    }

    /// Finds a single-valued grammar map sending every required source word
    /// to its required target word, or reports that none exists.
    ///
    /// Generators not mentioned in any requirement are left unmapped.
    pub fn infer(requirements: &[(PregroupType, PregroupType)]) -> Result<GrammarMap> {
        let mut images = BTreeMap::new();
        if solve(requirements, 0, 0, 0, &mut images) {
            return Ok(GrammarMap { images });
        }
        let listed: Vec<String> = requirements.iter().map(|(g, h)| format!("j({g}) = {h}")).collect();
        Err(Error::NonFunctorial(format!(
            "no single-valued monoidal map on generators satisfies {}",
            listed.join(", ")
        )))
    }
}

fn solve(
    reqs: &[(PregroupType, PregroupType)],
    req: usize,
    k: usize,
    offset: usize,
    images: &mut BTreeMap<BasicType, PregroupType>,
) -> bool {
    let Some((src, tgt)) = reqs.get(req) else {
        return true;
    };
    let (src, tgt) = (src.simples(), tgt.simples());
    if k == src.len() {
        return offset == tgt.len() && solve(reqs, req + 1, 0, 0, images);
    }
    let s = &src[k];
    if let Some(w) = images.get(&s.base) {
        let seg = w.adjoint_power(s.adjoint);
        let end = offset + seg.len();
        return end <= tgt.len() && tgt[offset..end] == *seg.simples() && solve(reqs, req, k + 1, end, images);
    }
    // nonempty images first; the unit last
    let ends = (offset + 1..=tgt.len()).chain(std::iter::once(offset));
    for end in ends {
        let seg = PregroupType::new(tgt[offset..end].to_vec());
        images.insert(s.base.clone(), seg.adjoint_power(-s.adjoint));
        if solve(reqs, req, k + 1, end, images) {
            return true;
        }
        images.remove(&s.base);
    }
    false
}

/// A translation between two language models.
#[derive(Debug, Clone, PartialEq)]
pub struct Translation {
    source: LanguageModel,
    target: LanguageModel,
    j: GrammarMap,
    alpha: BTreeMap<BasicType, Matrix>,
}

impl Translation {
    pub fn new(
        source: LanguageModel,
        target: LanguageModel,
        j: GrammarMap,
        alpha: BTreeMap<BasicType, Matrix>,
    ) -> Result<Self> {
        let generators = target.generators();
        for (b, &dim) in source.dims() {
            let image = j.image(b)?;
            image.check_generators(&generators)?;
            let rows = target.space_size(image)?;
            let a = alpha
                .get(b)
                .ok_or_else(|| Error::InvalidInput(format!("no α component for basic type `{b}`")))?;
            if a.shape() != (rows, dim) {
                return Err(Error::DimensionMismatch(format!(
                    "α component for `{b}` is {}x{}, expected {rows}x{dim}",
                    a.rows(),
                    a.cols()
                )));
            }
        }
        if let Some(extra) = j
            .images()
            .keys()
            .chain(alpha.keys())
            .find(|b| !source.dims().contains_key(*b))
        {
            return Err(Error::UnknownBasicType(extra.to_string()));
        }
        Ok(Translation {
            source,
            target,
            j,
            alpha,
        })
    }

    pub fn identity(model: &LanguageModel) -> Self {
        let j = GrammarMap::identity(model.dims().keys());
        let alpha = model
            .dims()
            .iter()
            .map(|(b, &d)| (b.clone(), Matrix::identity(d)))
            .collect();
        Translation {
            source: model.clone(),
            target: model.clone(),
            j,
            alpha,
        }
    }

    pub fn source(&self) -> &LanguageModel {
        &self.source
    }

    pub fn target(&self) -> &LanguageModel {
        &self.target
    }

    pub fn grammar_map(&self) -> &GrammarMap {
        &self.j
    }

    pub fn alpha(&self) -> &BTreeMap<BasicType, Matrix> {
        &self.alpha
    }

    /// The α factor for one simple type.
    ///
    /// Odd adjoints of a multi-letter image reverse its axis order, so the
    /// rows of `α[x]` are permuted to the reversed row-major layout.
    fn simple_component(&self, s: &SimpleType) -> Result<Matrix> {
        let a = self
            .alpha
            .get(&s.base)
            .ok_or_else(|| Error::UnknownBasicType(s.base.to_string()))?;
        let image = self.j.image(&s.base)?;
        if s.adjoint % 2 == 0 || image.len() < 2 {
            return Ok(a.clone());
        }
        let dims = self.target.space_shape(image)?;
        let reversed: Vec<usize> = dims.iter().rev().copied().collect();
        let mut out = Matrix::zeros(a.rows(), a.cols());
        for row in 0..a.rows() {
            // row-major digits over `dims`, re-read over `reversed`
            let mut digits = vec![0; dims.len()];
            let mut rest = row;
            for k in (0..dims.len()).rev() {
                digits[k] = rest % dims[k];
                rest /= dims[k];
            }
            let new_row = digits.iter().rev().zip(&reversed).fold(0, |acc, (&d, &n)| acc * n + d);
            for col in 0..a.cols() {
                out.set(new_row, col, a.get(row, col));
            }
        }
        Ok(out)
    }
}

pub fn j_apply(t: &Translation, g: &PregroupType) -> Result<PregroupType> {
    t.j.apply(g)
}

/// `α_g` as an explicit matrix: the Kronecker product of per-simple-type factors.
pub fn alpha_component(t: &Translation, g: &PregroupType) -> Result<Matrix> {
    g.simples()
        .iter()
        .try_fold(Matrix::identity(1), |acc, s| Ok(acc.kron(&t.simple_component(s)?)))
}

/// `(g, u) ↦ (j(g), α_g u)`, applying one factor per axis.
pub fn translate_object(t: &Translation, o: &PSObject) -> Result<PSObject> {
    let u = o.meaning();
    u.check_model(&t.source)?;
    let mut data = u.data().to_vec();
    let mut outer = 1;
    for (k, s) in o.ty().simples().iter().enumerate() {
        let a = t.simple_component(s)?;
        let inner: usize = u.shape()[k + 1..].iter().product();
        let (rows, cols) = a.shape();
        let mut next = vec![0.0; outer * rows * inner];
        for o_ix in 0..outer {
            for r in 0..rows {
                let dst = &mut next[(o_ix * rows + r) * inner..(o_ix * rows + r + 1) * inner];
                for c in 0..cols {
                    let w = a.get(r, c);
                    if w == 0.0 {
                        continue;
                    }
                    let src = &data[(o_ix * cols + c) * inner..(o_ix * cols + c + 1) * inner];
                    for (d, &x) in dst.iter_mut().zip(src) {
                        *d += w * x;
                    }
                }
            }
        }
        data = next;
        outer *= rows;
    }
    let tensor = Tensor::new(&t.target, t.j.apply(o.ty())?, data)?;
    PSObject::new(&t.target, tensor)
}

/// `(r, d) ↦ (j(r), d')` with `d'` recomputed between the translated endpoints.
pub fn translate_morphism(t: &Translation, m: &PSMorphism, endpoints: [&PSObject; 2]) -> Result<PSMorphism> {
    let [source, target] = endpoints;
    for (expected, found) in [
        (m.reduction().source(), source.ty()),
        (m.reduction().target(), target.ty()),
    ] {
        if expected != found {
            return Err(Error::TypeMismatch {
                expected: expected.to_string(),
                found: found.to_string(),
            });
        }
    }
    let jr = t.j.apply_reduction(m.reduction())?;
    let source = translate_object(t, source)?;
    let target = translate_object(t, target)?;
    ps_morphism(&t.target, &source, &jr, &target)
}

/// `t2 ∘ t1`, computed pointwise.
pub fn compose_translations(t2: &Translation, t1: &Translation) -> Result<Translation> {
    if t1.target != t2.source {
        return Err(Error::ModelMismatch {
            expected: t2.source.name().to_string(),
            found: t1.target.name().to_string(),
        });
    }
    let j = t2.j.compose(&t1.j)?;
    let alpha = t1
        .alpha
        .iter()
        .map(|(b, a1)| {
            let outer = alpha_component(t2, t1.j.image(b)?)?;
            Ok((b.clone(), outer.matmul(a1)?))
        })
        .collect::<Result<_>>()?;
    Translation::new(t1.source.clone(), t2.target.clone(), j, alpha)
}

/// The worst commuting-square defect found by basis probing.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalityReport {
    pub max_residual: f64,
    pub probes: usize,
    pub tolerance: f64,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.max_residual <= self.tolerance
    }
}

/// Measures `max_e ‖α_h(F(r) e) − F'(j(r))(α_g e)‖` over the standard basis
/// of `F(g)`, which is exhaustive since both paths are linear.
///
/// Fails with [`Error::NonFunctorial`] when `j(r)` is not a reduction.
pub fn check_naturality(t: &Translation, r: &Reduction, tolerance: f64) -> Result<NaturalityReport> {
    r.validate()?;
    let jr = t.j.apply_reduction(r)?;
    let size = t.source.space_size(r.source())?;
    let mut max_residual: f64 = 0.0;
    for k in 0..size {
        let e = PSObject::new(&t.source, Tensor::basis(&t.source, r.source().clone(), k)?)?;
        let reduced = PSObject::new(&t.source, apply_reduction(&t.source, r, e.meaning())?)?;
        let down_then_across = translate_object(t, &reduced)?;
        let across = translate_object(t, &e)?;
        let across_then_down = apply_reduction(&t.target, &jr, across.meaning())?;
        max_residual = max_residual.max(down_then_across.meaning().distance(&across_then_down)?);
    }
    Ok(NaturalityReport {
        max_residual,
        probes: size,
        tolerance,
    })
}

/// The orthogonal matrix closest to `a` in Frobenius norm: `U Vᵀ` from
/// `a = U Σ Vᵀ`.
pub fn nearest_unitary(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "nearest orthogonal matrix needs a square input, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let d = svd(a)?;
    let rank = d.rank();
    if rank < a.rows() {
        return Err(Error::RankDeficient { rank, size: a.rows() });
    }
    d.u.matmul(&d.v.transpose())
}

/// A least-squares fit of `A` to `A x_i ≈ y_i`.
#[derive(Debug, Clone)]
pub struct AlphaFit {
    pub matrix: Matrix,
    /// Rank of the stacked source vectors.
    pub rank: usize,
    /// The sources do not span their space; `matrix` is the minimal-norm solution.
    pub underdetermined: bool,
}

/// Minimises `Σ ‖A x_i − y_i‖²` as `A = Y X⁺`, optionally projecting the
/// result to the nearest orthogonal matrix.
pub fn fit_alpha(pairs: &[(Vec<f64>, Vec<f64>)], unitary: bool) -> Result<AlphaFit> {
    let Some((x0, y0)) = pairs.first() else {
        return Err(Error::InvalidInput("fitting needs at least one pair".into()));
    };
    let (n_in, n_out) = (x0.len(), y0.len());
    if n_in == 0 || n_out == 0 {
        return Err(Error::DimensionMismatch("empty vectors in fitting pairs".into()));
    }
    for (i, (x, y)) in pairs.iter().enumerate() {
        if x.len() != n_in || y.len() != n_out {
            return Err(Error::DimensionMismatch(format!(
                "pair {i} has dimensions {}→{}, expected {n_in}→{n_out}",
                x.len(),
                y.len()
            )));
        }
    }
    let xs: Vec<Vec<f64>> = pairs.iter().map(|(x, _)| x.clone()).collect();
    let ys: Vec<Vec<f64>> = pairs.iter().map(|(_, y)| y.clone()).collect();
    let x = Matrix::from_columns(&xs)?;
    let y = Matrix::from_columns(&ys)?;
    let (x_pinv, rank) = pseudo_inverse(&x)?;
    let mut matrix = y.matmul(&x_pinv)?;
    if unitary {
        matrix = nearest_unitary(&matrix)?;
    }
    Ok(AlphaFit {
        matrix,
        rank,
        underdetermined: rank < n_in,
    })
}

/// The lexicon `PS(T) ∘ ℓ`; senses that translate to identical objects are merged.
pub fn translate_lexicon(t: &Translation, lex: &Lexicon) -> Result<Lexicon> {
    if lex.model() != &t.source {
        return Err(Error::ModelMismatch {
            expected: t.source.name().to_string(),
            found: lex.model().name().to_string(),
        });
    }
    let mut out = Lexicon::new(t.target.clone());
    for (word, senses) in lex.entries() {
        let mut seen: Vec<PSObject> = Vec::new();
        for sense in senses {
            let translated = translate_object(t, sense)?;
            if !seen.contains(&translated) {
                seen.push(translated.clone());
                out.insert(word, translated)?;
            }
        }
    }
    Ok(out)
}
