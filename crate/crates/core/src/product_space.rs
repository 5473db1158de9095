//! The product-space representation of a language model.
//!
//! Objects pair a type with a meaning in its space. A morphism pairs a
//! reduction with the distance between the reduced source meaning and the
//! target meaning; arrows of the chaotic category are unique, so the label
//! is always recomputed from the endpoints.

use crate::error::{Error, Result};
use crate::grammar::{compose_reductions, PregroupType, Reduction};
use crate::semantics::{apply_reduction, LanguageModel, Tensor};

/// A typed meaning `(g, u)` with `u ∈ F(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PSObject {
    meaning: Tensor,
}

impl PSObject {
    pub fn new(model: &LanguageModel, meaning: Tensor) -> Result<Self> {
        meaning.check_model(model)?;
        Ok(PSObject { meaning })
    }

    /// The monoidal unit `(I, 1)`.
    pub fn unit() -> Self {
        PSObject {
            meaning: Tensor::scalar(1.0),
        }
    }

    pub fn ty(&self) -> &PregroupType {
        self.meaning.ty()
    }

    pub fn meaning(&self) -> &Tensor {
        &self.meaning
    }

    pub fn into_meaning(self) -> Tensor {
        self.meaning
    }

    pub(crate) fn from_tensor_unchecked(meaning: Tensor) -> Self {
        PSObject { meaning }
    }
}

/// A reduction labelled with a Euclidean distance.
#[derive(Debug, Clone, PartialEq)]
pub struct PSMorphism {
    reduction: Reduction,
    distance: f64,
}

impl PSMorphism {
    pub fn new(reduction: Reduction, distance: f64) -> Result<Self> {
        if !distance.is_finite() || distance < 0.0 {
            return Err(Error::InvalidInput(format!(
                "morphism distance must be finite and non-negative, got {distance}"
            )));
        }
        Ok(PSMorphism { reduction, distance })
    }

    pub fn identity(object: &PSObject) -> Self {
        PSMorphism {
            reduction: Reduction::identity(object.ty().clone()),
            distance: 0.0,
        }
    }

    pub fn reduction(&self) -> &Reduction {
        &self.reduction
    }

    pub fn distance(&self) -> f64 {
        self.distance
    }
}

fn check_endpoint(expected: &PregroupType, found: &PregroupType) -> Result<()> {
    if expected != found {
        return Err(Error::TypeMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        });
    }
    Ok(())
}

/// The morphism `source → target` along `r`.
pub fn ps_morphism(model: &LanguageModel, source: &PSObject, r: &Reduction, target: &PSObject) -> Result<PSMorphism> {
    check_endpoint(r.source(), source.ty())?;
    check_endpoint(r.target(), target.ty())?;
    let image = apply_reduction(model, r, source.meaning())?;
    target.meaning().check_model(model)?;
    PSMorphism::new(r.clone(), image.distance(target.meaning())?)
}

/// `m2 ∘ m1` for `m1: a → b` and `m2: b → c`.
pub fn ps_compose(
    model: &LanguageModel,
    m2: &PSMorphism,
    m1: &PSMorphism,
    endpoints: [&PSObject; 3],
) -> Result<PSMorphism> {
    let [a, b, c] = endpoints;
    check_endpoint(m1.reduction.source(), a.ty())?;
    check_endpoint(m1.reduction.target(), b.ty())?;
    check_endpoint(m2.reduction.source(), b.ty())?;
    check_endpoint(m2.reduction.target(), c.ty())?;
    let composite = compose_reductions(&m2.reduction, &m1.reduction)?;
    ps_morphism(model, a, &composite, c)
}

/// `(g, u) ⊗ (h, v) = (g·h, u ⊗ v)`.
pub fn ps_tensor(model: &LanguageModel, a: &PSObject, b: &PSObject) -> Result<PSObject> {
    a.meaning.check_model(model)?;
    b.meaning.check_model(model)?;
    Ok(PSObject {
        meaning: a.meaning.tensor_product(&b.meaning),
    })
}

/// `m1 ⊗ m2` between tensored endpoints, with the label recomputed.
pub fn ps_tensor_morphisms(
    model: &LanguageModel,
    m1: &PSMorphism,
    m2: &PSMorphism,
    sources: [&PSObject; 2],
    targets: [&PSObject; 2],
) -> Result<PSMorphism> {
    let source = ps_tensor(model, sources[0], sources[1])?;
    let target = ps_tensor(model, targets[0], targets[1])?;
    ps_morphism(model, &source, &m1.reduction.tensor(&m2.reduction), &target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grammar::reduce_search;

    fn t(text: &str) -> PregroupType {
        text.parse().unwrap()
    }

    fn obj(m: &LanguageModel, ty: &str, data: Vec<f64>) -> PSObject {
        PSObject::new(m, Tensor::new(m, t(ty), data).unwrap()).unwrap()
    }

    fn small() -> LanguageModel {
        LanguageModel::from_dims("F", [("n", 2), ("s", 2)]).unwrap()
    }

    #[test]
    fn exact_image_has_distance_zero() {
        let m = LanguageModel::from_dims("F", [("n", 4), ("s", 1)]).unwrap();
        let rosie = obj(&m, "n", vec![2.0, 5.0, 3.0, 1.0]);
        #[rustfmt::skip]
        let wears = obj(&m, "n^r s n^l", vec![
             1.0,  1.0,  1.0, 0.0,
            -1.0, -1.0, -1.0, 0.0,
             1.0,  1.0,  1.0, 0.0,
            -2.0, -2.0, -1.0, 1.0,
        ]);
        let boots = obj(&m, "n", vec![1.0, 0.0, 0.0, 2.0]);
        let phrase = ps_tensor(&m, &ps_tensor(&m, &rosie, &wears).unwrap(), &boots).unwrap();
        let r = reduce_search(phrase.ty(), &t("s"), 1).remove(0);
        let target = obj(&m, "s", vec![0.0]);
        let mor = ps_morphism(&m, &phrase, &r, &target).unwrap();
        assert_eq!(mor.distance(), 0.0);
    }

    #[test]
    fn identity_to_self() {
        let m = small();
        let a = obj(&m, "n", vec![0.3, -1.0]);
        let mor = ps_morphism(&m, &a, &Reduction::identity(t("n")), &a).unwrap();
        assert_eq!(mor.distance(), 0.0);
    }

    #[test]
    fn three_four_five() {
        let m = small();
        // (3,4) survives the identity on s; target is the origin.
        let a = obj(&m, "s", vec![3.0, 4.0]);
        let b = obj(&m, "s", vec![0.0, 0.0]);
        let mor = ps_morphism(&m, &a, &Reduction::identity(t("s")), &b).unwrap();
        assert!((mor.distance() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn distance_is_symmetric_under_swap() {
        let m = small();
        let a = obj(&m, "s", vec![1.0, -2.0]);
        let b = obj(&m, "s", vec![0.5, 4.0]);
        let id = Reduction::identity(t("s"));
        let ab = ps_morphism(&m, &a, &id, &b).unwrap().distance();
        let ba = ps_morphism(&m, &b, &id, &a).unwrap().distance();
        assert_eq!(ab, ba);
    }

    #[test]
    fn mismatched_endpoint() {
        let m = small();
        let a = obj(&m, "n", vec![1.0, 0.0]);
        let b = obj(&m, "s", vec![1.0, 0.0]);
        let id = Reduction::identity(t("n"));
        assert!(matches!(ps_morphism(&m, &a, &id, &b), Err(Error::TypeMismatch { .. })));
    }

    #[test]
    fn compose_with_identity() {
        let m = small();
        let a = obj(&m, "n n^r s", vec![1.0, 2.0, 0.0, -1.0, 3.0, 0.5, 0.0, 1.0]);
        let c = obj(&m, "s", vec![0.0, 1.0]);
        let r = reduce_search(a.ty(), c.ty(), 1).remove(0);
        let mor = ps_morphism(&m, &a, &r, &c).unwrap();
        let id = PSMorphism::identity(&c);
        assert_eq!(ps_compose(&m, &id, &mor, [&a, &c, &c]).unwrap(), mor);
        let id = PSMorphism::identity(&a);
        assert_eq!(ps_compose(&m, &mor, &id, [&a, &a, &c]).unwrap(), mor);
    }

    #[test]
    fn composing_exact_morphisms() {
        let m = small();
        let a = obj(&m, "n n^r s", vec![1.0, 2.0, 0.0, -1.0, 3.0, 0.5, 0.0, 1.0]);
        let r = reduce_search(a.ty(), &t("s"), 1).remove(0);
        let b = PSObject::new(&m, apply_reduction(&m, &r, a.meaning()).unwrap()).unwrap();
        let m1 = ps_morphism(&m, &a, &r, &b).unwrap();
        let m2 = PSMorphism::identity(&b);
        assert_eq!(ps_compose(&m, &m2, &m1, [&a, &b, &b]).unwrap().distance(), 0.0);
    }

    #[test]
    fn unit_object() {
        let m = small();
        let a = obj(&m, "n", vec![1.0, 2.0]);
        assert_eq!(ps_tensor(&m, &a, &PSObject::unit()).unwrap(), a);
        assert_eq!(ps_tensor(&m, &PSObject::unit(), &a).unwrap(), a);
    }

    #[test]
    fn rejects_negative_distance() {
        assert!(PSMorphism::new(Reduction::identity(t("n")), -1.0).is_err());
        assert!(PSMorphism::new(Reduction::identity(t("n")), f64::NAN).is_err());
    }
}
