//! Language models: dimensions for basic types, tensor spaces for pregroup
//! types, and reductions evaluated as tensor contractions.
//!
//! Dual spaces are identified with their primal through the standard basis,
//! so `x^z` always has the dimension of `x` and every cup is a dot product.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::grammar::{parse_type, BasicType, PregroupType, Reduction};
use crate::linalg::Matrix;

/// Assignment of a positive dimension to every basic type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LanguageModel {
    name: String,
    dims: BTreeMap<BasicType, usize>,
}

impl LanguageModel {
    pub fn new(name: impl Into<String>, dims: BTreeMap<BasicType, usize>) -> Result<Self> {
        let name = name.into();
        if let Some((b, _)) = dims.iter().find(|(_, &d)| d == 0) {
            return Err(Error::InvalidInput(format!(
                "model `{name}`: basic type `{b}` has dimension 0"
            )));
        }
        Ok(LanguageModel { name, dims })
    }

    /// Convenience constructor from `(name, dimension)` pairs.
    pub fn from_dims<'a>(name: &str, dims: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        let dims = dims
            .into_iter()
            .map(|(b, d)| Ok((BasicType::new(b)?, d)))
            .collect::<Result<_>>()?;
        LanguageModel::new(name, dims)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &BTreeMap<BasicType, usize> {
        &self.dims
    }

    pub fn generators(&self) -> BTreeSet<BasicType> {
        self.dims.keys().cloned().collect()
    }

    pub fn dim(&self, b: &BasicType) -> Result<usize> {
        self.dims
            .get(b)
            .copied()
            .ok_or_else(|| Error::UnknownBasicType(b.to_string()))
    }

    /// Parses a type whose basic types must all belong to this model.
    pub fn parse_type(&self, text: &str) -> Result<PregroupType> {
        parse_type(text, &self.generators())
    }

    pub fn space_shape(&self, g: &PregroupType) -> Result<Vec<usize>> {
        g.simples().iter().map(|s| self.dim(&s.base)).collect()
    }

    /// Dimension of the flattened space `F(g)`.
    pub fn space_size(&self, g: &PregroupType) -> Result<usize> {
        Ok(self.space_shape(g)?.iter().product())
    }
}

pub fn space_shape(model: &LanguageModel, g: &PregroupType) -> Result<Vec<usize>> {
    model.space_shape(g)
}

/// A dense element of `F(g)`, stored row-major over one axis per simple type.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    ty: PregroupType,
    shape: Vec<usize>,
    data: Vec<f64>,
}

impl Tensor {
    pub fn new(model: &LanguageModel, ty: PregroupType, data: Vec<f64>) -> Result<Self> {
        let shape = model.space_shape(&ty)?;
        let size: usize = shape.iter().product();
        if data.len() != size {
            return Err(Error::DimensionMismatch(format!(
                "type `{ty}` has shape {shape:?} ({size} entries), got {} values",
                data.len()
            )));
        }
        Ok(Tensor { ty, shape, data })
    }

    pub fn scalar(value: f64) -> Self {
        Tensor {
            ty: PregroupType::unit(),
            shape: Vec::new(),
            data: vec![value],
        }
    }

    pub fn zeros(model: &LanguageModel, ty: PregroupType) -> Result<Self> {
        let size = model.space_size(&ty)?;
        Tensor::new(model, ty, vec![0.0; size])
    }

    /// The `k`-th standard basis tensor of `F(ty)`.
    pub fn basis(model: &LanguageModel, ty: PregroupType, k: usize) -> Result<Self> {
        let mut t = Tensor::zeros(model, ty)?;
        if k >= t.data.len() {
            return Err(Error::InvalidInput(format!(
                "basis index {k} out of range for {} entries",
                t.data.len()
            )));
        }
        t.data[k] = 1.0;
        Ok(t)
    }

    pub fn ty(&self) -> &PregroupType {
        &self.ty
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Checks that this tensor lives in `F(ty)` for the given model.
    pub fn check_model(&self, model: &LanguageModel) -> Result<()> {
        let expected = model.space_shape(&self.ty)?;
        if expected != self.shape {
            return Err(Error::ShapeMismatch {
                expected,
                found: self.shape.clone(),
            });
        }
        Ok(())
    }

    /// Outer product; the result's axes are `self`'s followed by `other`'s.
    pub fn tensor_product(&self, other: &Tensor) -> Tensor {
        let mut data = Vec::with_capacity(self.data.len() * other.data.len());
        for &a in &self.data {
            data.extend(other.data.iter().map(|&b| a * b));
        }
        let mut shape = self.shape.clone();
        shape.extend_from_slice(&other.shape);
        Tensor {
            ty: self.ty.tensor(&other.ty),
            shape,
            data,
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Euclidean distance between flattened tensors of the same shape.
    pub fn distance(&self, other: &Tensor) -> Result<f64> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                expected: self.shape.clone(),
                found: other.shape.clone(),
            });
        }
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
    }

    /// Reinterprets flat data under a new type, keeping the entry count.
    pub(crate) fn retype(model: &LanguageModel, ty: PregroupType, data: Vec<f64>) -> Result<Self> {
        Tensor::new(model, ty, data)
    }
}

pub fn tensor_product(u: &Tensor, v: &Tensor) -> Tensor {
    u.tensor_product(v)
}

fn strides(shape: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; shape.len()];
    for k in (0..shape.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * shape[k + 1];
    }
    strides
}

/// Offsets reached by every multi-index over `dims`, each axis moving by `steps`.
fn offsets(dims: &[usize], steps: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for (&d, &step) in dims.iter().zip(steps) {
        out = out
            .iter()
            .flat_map(|&base| (0..d).map(move |i| base + i * step))
            .collect();
    }
    out
}

fn check_source(model: &LanguageModel, r: &Reduction, t: &Tensor) -> Result<()> {
    if t.ty() != r.source() {
        return Err(Error::TypeMismatch {
            expected: r.source().to_string(),
            found: t.ty().to_string(),
        });
    }
    t.check_model(model)
}

/// `F(r)(t)`: every cup `(i, j)` sums over a shared index on axes `i` and `j`.
pub fn apply_reduction(model: &LanguageModel, r: &Reduction, t: &Tensor) -> Result<Tensor> {
    check_source(model, r, t)?;
    if r.is_identity() {
        return Ok(t.clone());
    }
    let shape = t.shape();
    let stride = strides(shape);

    let cup_dims: Vec<usize> = r.cups().iter().map(|&(i, _)| shape[i]).collect();
    let cup_steps: Vec<usize> = r.cups().iter().map(|&(i, j)| stride[i] + stride[j]).collect();
    let contracted = offsets(&cup_dims, &cup_steps);

    let out_dims: Vec<usize> = r.survivors().iter().map(|&k| shape[k]).collect();
    let out_steps: Vec<usize> = r.survivors().iter().map(|&k| stride[k]).collect();
    let data: Vec<f64> = offsets(&out_dims, &out_steps)
        .into_iter()
        .map(|base| contracted.iter().map(|&c| t.data[base + c]).sum())
        .collect();

    Tensor::retype(model, r.target().clone(), data)
}

/// Explicit matrix of `F(r)` from the flattened source space to the
/// flattened target space.
pub fn reduction_matrix(model: &LanguageModel, r: &Reduction) -> Result<Matrix> {
    let shape = model.space_shape(r.source())?;
    let out_shape = model.space_shape(r.target())?;
    let cols: usize = shape.iter().product();
    let rows: usize = out_shape.iter().product();
    let mut m = Matrix::zeros(rows, cols);

    let mut index = vec![0usize; shape.len()];
    for col in 0..cols {
        let mut rest = col;
        for k in (0..shape.len()).rev() {
            index[k] = rest % shape[k];
            rest /= shape[k];
        }
        if r.cups().iter().all(|&(i, j)| index[i] == index[j]) {
            let row = r.survivors().iter().fold(0, |acc, &k| acc * shape[k] + index[k]);
            m.set(row, col, 1.0);
        }
    }
    Ok(m)
}

/// Sends a nonzero single-entry meaning to `1` and zero to `0`.
pub fn normalize_sentence(t: &Tensor) -> Result<Tensor> {
    if t.len() != 1 {
        return Err(Error::InvalidInput(format!(
            "normalization needs a one-dimensional meaning, got shape {:?}",
            t.shape()
        )));
    }
    let value = if t.data[0] == 0.0 { 0.0 } else { 1.0 };
    Ok(Tensor {
        ty: t.ty.clone(),
        shape: t.shape.clone(),
        data: vec![value],
    })
}
