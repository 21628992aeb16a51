//! Normal-form arithmetic in the free rack `A ⋊ Fg(A)` and the free quandle
//! `A ⋊ Fg°(A)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{GroupWord, Letter};

/// Element `(a, g)` of the free rack on a set of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FreeRackElem {
    pub head: usize,
    pub path: GroupWord,
}

impl FreeRackElem {
    pub fn new(head: usize, path: GroupWord) -> Self {
        FreeRackElem { head, path }
    }

    pub fn generator(head: usize) -> Self {
        FreeRackElem {
            head,
            path: GroupWord::empty(),
        }
    }

    /// Right action of a path: `(a, g) · h = (a, g h)`.
    pub fn act(&self, h: &GroupWord) -> Self {
        FreeRackElem {
            head: self.head,
            path: self.path.mul(h),
        }
    }
}

/// `(a, g) ◁^sign (b, h) = (a, g h⁻¹ b^sign h)`.
pub fn fr_op(x: &FreeRackElem, y: &FreeRackElem, sign: i8) -> FreeRackElem {
    x.act(&conjugated_generator(y, sign))
}

/// `h⁻¹ b^sign h` for `y = (b, h)`.
fn conjugated_generator(y: &FreeRackElem, sign: i8) -> GroupWord {
    y.path
        .inverse()
        .mul(&GroupWord::letter(Letter { gen: y.head, sign }))
        .mul(&y.path)
}

/// Element of the free quandle: a head and a characteristic-zero path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FreeQuandleElem {
    head: usize,
    path: GroupWord,
}

impl FreeQuandleElem {
    pub fn generator(head: usize) -> Self {
        FreeQuandleElem {
            head,
            path: GroupWord::empty(),
        }
    }

    /// Accepts `(head, path)` only when `χ(path) = 0`.
    pub fn new(head: usize, path: GroupWord) -> Result<Self> {
        let chi = path.characteristic();
        if chi != 0 {
            return Err(Error::CharacteristicNonZero { chi });
        }
        Ok(FreeQuandleElem { head, path })
    }

    pub fn head(&self) -> usize {
        self.head
    }

    pub fn path(&self) -> &GroupWord {
        &self.path
    }
}

/// Representative of the class of `(head, g)`: `head^{−χ(g)} · g`.
pub fn fq_normalize(head: usize, g: &GroupWord) -> FreeQuandleElem {
    let chi = g.characteristic();
    let path = GroupWord::generator(head).pow(-chi).mul(g);
    FreeQuandleElem { head, path }
}

/// `(a, g) ◁^sign (b, h) = (a, a^{−sign} g h⁻¹ b^sign h)`.
pub fn fq_op(x: &FreeQuandleElem, y: &FreeQuandleElem, sign: i8) -> Result<FreeQuandleElem> {
    for e in [x, y] {
        let chi = e.path.characteristic();
        if chi != 0 {
            return Err(Error::CharacteristicNonZero { chi });
        }
    }
    let yy = FreeRackElem::new(y.head, y.path.clone());
    let g = x.path.mul(&conjugated_generator(&yy, sign));
    Ok(fq_normalize(x.head, &g))
}

/// Right action of a characteristic-zero path on a free quandle element,
/// letter by letter through `fq_op` with generators.
pub fn fq_act(x: &FreeQuandleElem, h: &GroupWord) -> Result<FreeQuandleElem> {
    let mut cur = x.clone();
    for l in h.letters() {
        cur = fq_op(&cur, &FreeQuandleElem::generator(l.gen), l.sign)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;

    fn w(ls: &[Letter]) -> GroupWord {
        GroupWord::from_letters(ls.iter().copied())
    }

    #[test]
    fn free_rack_examples() {
        let a = FreeRackElem::generator(A);
        let b = FreeRackElem::generator(B);
        let ab = fr_op(&a, &b, 1);
        assert_eq!(ab, FreeRackElem::new(A, w(&[Letter::pos(B)])));
        assert_eq!(fr_op(&ab, &b, -1), a);
        let bc = FreeRackElem::new(B, w(&[Letter::pos(C)]));
        assert_eq!(
            fr_op(&a, &bc, 1).path,
            w(&[Letter::neg(C), Letter::pos(B), Letter::pos(C)])
        );
    }

    #[test]
    fn normalization_examples() {
        let n = fq_normalize(A, &w(&[Letter::pos(A)]));
        assert!(n.path().is_empty());
        let n = fq_normalize(A, &w(&[Letter::pos(B)]));
        assert_eq!(n.path(), &w(&[Letter::neg(A), Letter::pos(B)]));
        assert!(fq_normalize(A, &GroupWord::empty()).path().is_empty());
    }

    #[test]
    fn free_quandle_examples() {
        let a = FreeQuandleElem::generator(A);
        let b = FreeQuandleElem::generator(B);
        assert_eq!(fq_op(&a, &a, 1).unwrap(), a);
        let ab = fq_op(&a, &b, 1).unwrap();
        assert_eq!(ab.path(), &w(&[Letter::neg(A), Letter::pos(B)]));
        assert_eq!(fq_op(&ab, &b, -1).unwrap(), a);
    }

    #[test]
    fn nonzero_characteristic_is_rejected() {
        assert_eq!(
            FreeQuandleElem::new(A, w(&[Letter::pos(B)])),
            Err(Error::CharacteristicNonZero { chi: 1 })
        );
        let bad = FreeQuandleElem {
            head: A,
            path: w(&[Letter::pos(B)]),
        };
        assert!(fq_op(&bad, &FreeQuandleElem::generator(A), 1).is_err());
    }

    #[test]
    fn fq_action_by_zero_characteristic_word_is_right_multiplication() {
        let x = FreeQuandleElem::generator(A);
        let h = w(&[Letter::pos(B), Letter::neg(C)]);
        assert_eq!(fq_act(&x, &h).unwrap().path(), &h);
    }
}
