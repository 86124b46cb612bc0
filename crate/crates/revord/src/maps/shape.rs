//! Closed-form orbit descriptions.
//!
//! Curated witness maps know where their orbits end up: after finitely many
//! steps the forward orbit walks one carrier family with a constant index
//! step (or a constant copy step inside an infinite union), and likewise
//! backward. Shipping that description with the map is what lets the
//! extraction oracle answer "for all exponents" questions exactly; every
//! shape is still cross-checked against direct iteration on windows.

use crate::order::{CarrierIndex, ElementId, Family, Selector};

/// Element-valued affine function of a tail parameter t = 0, 1, 2, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementPattern {
    /// Fixed path and family; the leaf index moves by `step`.
    Leaf {
        path: Vec<Selector>,
        family: Option<Family>,
        index0: i64,
        step: i64,
        /// natural-indexed carrier (index must stay nonnegative)
        nat: bool,
    },
    /// One copy selector of an infinite union moves by `copy_step`; the
    /// element inside the copy is fixed.
    Copies {
        prefix: Vec<Selector>,
        copy0: u64,
        copy_step: u64,
        suffix: Vec<Selector>,
        family: Option<Family>,
        index: CarrierIndex,
    },
    /// The tail is a fixed point.
    Constant(ElementId),
}

impl ElementPattern {
    /// The element at tail position t.
    pub fn at(&self, t: u64) -> ElementId {
        match self {
            ElementPattern::Leaf {
                path,
                family,
                index0,
                step,
                nat,
            } => {
                let idx = index0 + step * t as i64;
                let index = if *nat {
                    debug_assert!(idx >= 0, "natural index went negative");
                    CarrierIndex::Nat(idx as u64)
                } else {
                    CarrierIndex::Int(idx)
                };
                ElementId {
                    path: path.clone(),
                    family: *family,
                    index,
                }
            }
            ElementPattern::Copies {
                prefix,
                copy0,
                copy_step,
                suffix,
                family,
                index,
            } => {
                let mut path = prefix.clone();
                path.push(Selector::Copy(copy0 + copy_step * t));
                path.extend_from_slice(suffix);
                ElementId {
                    path,
                    family: *family,
                    index: *index,
                }
            }
            ElementPattern::Constant(e) => e.clone(),
        }
    }

    /// Whether two distinct tail positions can name the same element.
    pub fn is_injective(&self) -> bool {
        match self {
            ElementPattern::Leaf { step, .. } => *step != 0,
            ElementPattern::Copies { copy_step, .. } => *copy_step != 0,
            ElementPattern::Constant(_) => false,
        }
    }
}

/// Where one element's orbit ends up for large exponents in each direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailSpec {
    /// First exponent magnitude covered by the pattern.
    pub from: u64,
    pub pattern: ElementPattern,
}

impl TailSpec {
    /// The orbit element at exponent magnitude k (k >= from).
    pub fn at_exponent(&self, k: u64) -> ElementId {
        debug_assert!(k >= self.from);
        self.pattern.at(k - self.from)
    }
}

/// Closed-form description of a full orbit: explicit middle, affine tails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitShape {
    /// f^k(base) for k >= forward.from.
    pub forward: TailSpec,
    /// f^{-k}(base) for k >= backward.from.
    pub backward: TailSpec,
}

impl OrbitShape {
    /// The orbit element at signed exponent k when the tails cover it.
    pub fn at(&self, k: i64) -> Option<ElementId> {
        if k >= 0 && k as u64 >= self.forward.from {
            Some(self.forward.at_exponent(k as u64))
        } else if k < 0 && k.unsigned_abs() >= self.backward.from {
            Some(self.backward.at_exponent(k.unsigned_abs()))
        } else {
            None
        }
    }

    /// Cross-check the shape against direct iteration of the map out to the
    /// given exponent magnitude. Returns the first disagreeing exponent.
    pub fn check_against(
        &self,
        map: &super::SelfMap,
        base: &ElementId,
        horizon: u64,
    ) -> Result<(), i64> {
        let mut cur = base.clone();
        for k in 1..=horizon as i64 {
            cur = map.apply(&cur);
            if let Some(predicted) = self.at(k) {
                if predicted != cur {
                    return Err(k);
                }
            }
        }
        let mut cur = base.clone();
        for k in 1..=horizon as i64 {
            cur = map.apply_inverse(&cur);
            if let Some(predicted) = self.at(-k) {
                if predicted != cur {
                    return Err(-k);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaf_pattern_steps() {
        let p = ElementPattern::Leaf {
            path: vec![Selector::Right],
            family: None,
            index0: 3,
            step: 2,
            nat: true,
        };
        assert_eq!(p.at(0), ElementId::nat(3).under(Selector::Right));
        assert_eq!(p.at(2), ElementId::nat(7).under(Selector::Right));
    }

    #[test]
    fn copies_pattern_moves_the_copy() {
        let p = ElementPattern::Copies {
            prefix: vec![Selector::Right],
            copy0: 1,
            copy_step: 1,
            suffix: vec![Selector::Left],
            family: None,
            index: CarrierIndex::Nat(0),
        };
        assert_eq!(
            p.at(1),
            ElementId::nat(0)
                .under(Selector::Left)
                .under(Selector::Copy(2))
                .under(Selector::Right)
        );
    }
}
