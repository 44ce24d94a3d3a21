//! The ∇-family Tens⊗_∇, the operad BM⊗ and the functor φ between them.

use std::fmt;

use serde::Serialize;

use super::{
    tens_morphisms_over, validate_parts, AssMorphism, EmptyFiberRule, TensMorphism,
    TensObject,
};
use crate::error::{Error, Result};
use crate::simplicial::{
    delta, delta_object, eta, nabla_morphisms, MonotoneMap, NablaMorphism, NablaObject, Ordinal,
};

/// An object `(⟨n⟩, c₋, c₊)` of BM⊗, with colors in `[1]`: `(0,0)` is `a₋`,
/// `(0,1)` is `m`, `(1,1)` is `a₊`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct BMObject {
    pub c_minus: Vec<usize>,
    pub c_plus: Vec<usize>,
}

impl BMObject {
    pub fn new(c_minus: Vec<usize>, c_plus: Vec<usize>) -> Result<Self> {
        let o = BMObject { c_minus, c_plus };
        o.as_tens()?;
        Ok(o)
    }

    pub fn n(&self) -> usize {
        self.c_minus.len()
    }

    /// BM⊗ is the fiber of Tens⊗ over `[1]`.
    pub fn as_tens(&self) -> Result<TensObject> {
        TensObject::new(Ordinal(1), self.c_minus.clone(), self.c_plus.clone())
    }

    /// True when no point has color `a₊` (an LM⊗ object).
    pub fn is_left_module_shape(&self) -> bool {
        self.c_minus.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for BMObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<&str> = self
            .c_minus
            .iter()
            .zip(&self.c_plus)
            .map(|p| match p {
                (0, 0) => "a-",
                (0, _) => "m",
                _ => "a+",
            })
            .collect();
        write!(f, "BM(⟨{}⟩,[{}])", self.n(), cs.join(" "))
    }
}

/// Checks that `α` is a BM⊗ morphism `src -> dst` (fiber conditions over
/// `[1]` with `λ = id`).
pub fn validate_bm_morphism(alpha: &AssMorphism, src: &BMObject, dst: &BMObject) -> Result<bool> {
    validate_parts(
        alpha,
        &MonotoneMap::identity(Ordinal(1)),
        &src.as_tens()?,
        &dst.as_tens()?,
        EmptyFiberRule::Unit,
    )
}

/// An object `(b, ⟨n⟩, [k], c₋, c₊)` of Tens⊗_∇: the colors take values in
/// `δ([k], b)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NablaTensObject {
    pub index: NablaObject,
    pub base: TensObject,
}

impl NablaTensObject {
    pub fn new(index: NablaObject, base: TensObject) -> Result<Self> {
        if base.k != delta_object(index) {
            return Err(Error::shape(format!(
                "colors of an object over {index} take values in {}, not {}",
                delta_object(index),
                base.k
            )));
        }
        Ok(NablaTensObject { index, base })
    }
}

impl fmt::Display for NablaTensObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.index, self.base)
    }
}

/// A morphism `(β, α, λ)` of Tens⊗_∇.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NablaTensMorphism {
    pub nabla: NablaMorphism,
    pub alpha: AssMorphism,
}

impl NablaTensMorphism {
    pub fn identity(o: &NablaTensObject) -> Self {
        NablaTensMorphism {
            nabla: NablaMorphism::identity(o.index),
            alpha: AssMorphism::identity(o.base.n()),
        }
    }

    /// The underlying Tens⊗ morphism `(α, δ(λ, β))`.
    pub fn as_tens(&self) -> TensMorphism {
        TensMorphism {
            alpha: self.alpha.clone(),
            lambda: delta(&self.nabla),
        }
    }

    pub fn then(&self, next: &NablaTensMorphism) -> Result<NablaTensMorphism> {
        Ok(NablaTensMorphism {
            nabla: self.nabla.then(&next.nabla)?,
            alpha: self.alpha.then(&next.alpha)?,
        })
    }

    pub fn validate(&self, src: &NablaTensObject, dst: &NablaTensObject) -> Result<bool> {
        if self.nabla.source != src.index || self.nabla.target != dst.index {
            return Err(Error::shape(format!(
                "∇-component does not connect {} and {}",
                src.index, dst.index
            )));
        }
        validate_parts(&self.alpha, &delta(&self.nabla), &src.base, &dst.base, EmptyFiberRule::Unit)
    }
}

/// All valid Tens⊗_∇ morphisms `src -> dst`.
pub fn nabla_tens_morphisms(
    src: &NablaTensObject,
    dst: &NablaTensObject,
) -> Vec<NablaTensMorphism> {
    let mut out = Vec::new();
    for nabla in nabla_morphisms(src.index, dst.index) {
        let lambda = delta(&nabla);
        for m in tens_morphisms_over(&src.base, &dst.base, &lambda, EmptyFiberRule::Unit) {
            out.push(NablaTensMorphism {
                nabla: nabla.clone(),
                alpha: m.alpha,
            });
        }
    }
    out
}

/// φ on objects: `(b, ⟨n⟩, [k], c₋, c₊) ↦ (⟨n⟩, η∘c₋, η∘c₊)`.
pub fn phi(o: &NablaTensObject) -> BMObject {
    let e = eta(o.index);
    BMObject {
        c_minus: o.base.c_minus.iter().map(|&c| e.apply(c)).collect(),
        c_plus: o.base.c_plus.iter().map(|&c| e.apply(c)).collect(),
    }
}

/// φ on morphisms forgets `(β, λ)` and keeps `α`.
pub fn phi_mor(m: &NablaTensMorphism) -> &AssMorphism {
    &m.alpha
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_on_flag_one_is_all_left_algebra() {
        let x = NablaObject::new(2, 1).unwrap();
        let base = TensObject::new(Ordinal(2), vec![0, 1, 2], vec![1, 1, 2]).unwrap();
        let o = NablaTensObject::new(x, base).unwrap();
        let b = phi(&o);
        assert!(b.c_minus.iter().chain(&b.c_plus).all(|&c| c == 0));
        assert!(b.is_left_module_shape());
    }

    #[test]
    fn phi_sends_infinity_to_the_module_color() {
        let x = NablaObject::new(0, 0).unwrap();
        let base = TensObject::new(Ordinal(1), vec![0], vec![1]).unwrap();
        let o = NablaTensObject::new(x, base).unwrap();
        assert_eq!(phi(&o), BMObject::new(vec![0], vec![1]).unwrap());
    }

    #[test]
    fn base_must_live_over_delta() {
        let x = NablaObject::new(1, 0).unwrap();
        let base = TensObject::new(Ordinal(1), vec![0], vec![1]).unwrap();
        assert!(NablaTensObject::new(x, base).is_err());
    }

    #[test]
    fn bm_morphism_examples() {
        // a₋ m a₊ -> m is the two-sided action.
        let src = BMObject::new(vec![0, 0, 1], vec![0, 1, 1]).unwrap();
        let dst = BMObject::new(vec![0], vec![1]).unwrap();
        let act = AssMorphism::new(3, 1, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(validate_bm_morphism(&act, &src, &dst), Ok(true));
        let wrong = AssMorphism::new(3, 1, vec![vec![1, 0, 2]]).unwrap();
        assert_eq!(validate_bm_morphism(&wrong, &src, &dst), Ok(false));
        // No unit can be inserted for m.
        let empty = AssMorphism::new(0, 1, vec![vec![]]).unwrap();
        let none = BMObject::new(vec![], vec![]).unwrap();
        assert_eq!(validate_bm_morphism(&empty, &none, &dst), Ok(false));
    }
}
