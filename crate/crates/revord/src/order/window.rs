//! Finite truncations of presentations: the first n enumerated elements with
//! an explicit relation matrix. All desk-scale verification goes through
//! windows.

use super::element::ElementId;
use super::finite::FiniteOrder;
use super::presentation::Presentation;
use super::OrderError;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt::Write as _;

/// Outcome of checking the (pre)order axioms on a window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    Reflexivity { x: ElementId },
    Transitivity { x: ElementId, y: ElementId, z: ElementId },
    Antisymmetry { x: ElementId, y: ElementId },
}

/// First `n` enumerated elements of a presentation with the induced relation
/// materialized as an n-by-n matrix.
#[derive(Debug, Clone)]
pub struct Window {
    parent: Presentation,
    elements: Vec<ElementId>,
    relation: Vec<bool>,
    positions: HashMap<ElementId, usize>,
}

#[derive(Serialize)]
struct WindowJson<'a> {
    elements: &'a [ElementId],
    leq: Vec<Vec<bool>>,
}

impl Window {
    pub fn new(parent: &Presentation, n: u64) -> Self {
        let elements = parent.enumerate(n);
        let len = elements.len();
        let mut relation = vec![false; len * len];
        for i in 0..len {
            for j in 0..len {
                relation[i * len + j] = parent.leq(&elements[i], &elements[j]);
            }
        }
        let positions = elements
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        Window {
            parent: parent.clone(),
            elements,
            relation,
            positions,
        }
    }

    pub fn parent(&self) -> &Presentation {
        &self.parent
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn index_of(&self, x: &ElementId) -> Result<usize, OrderError> {
        self.positions
            .get(x)
            .copied()
            .ok_or_else(|| OrderError::NotInWindow {
                element: x.to_string(),
            })
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.relation[i * self.len() + j]
    }

    pub fn leq(&self, x: &ElementId, y: &ElementId) -> Result<bool, OrderError> {
        Ok(self.leq_idx(self.index_of(x)?, self.index_of(y)?))
    }

    /// Check reflexivity, transitivity and (for posets) antisymmetry over the
    /// whole matrix; first violation wins.
    pub fn verify_axioms(&self) -> Result<(), AxiomViolation> {
        verify_matrix(
            self.len(),
            |i, j| self.leq_idx(i, j),
            self.parent.is_preorder(),
            &self.elements,
        )
    }

    /// Elements of the window above `x` (inclusive).
    pub fn up_set(&self, x: &ElementId) -> Result<Vec<ElementId>, OrderError> {
        let i = self.index_of(x)?;
        Ok((0..self.len())
            .filter(|&j| self.leq_idx(i, j))
            .map(|j| self.elements[j].clone())
            .collect())
    }

    /// Elements of the window below `x` (inclusive).
    pub fn down_set(&self, x: &ElementId) -> Result<Vec<ElementId>, OrderError> {
        let i = self.index_of(x)?;
        Ok((0..self.len())
            .filter(|&j| self.leq_idx(j, i))
            .map(|j| self.elements[j].clone())
            .collect())
    }

    /// Window-relative covering: x < y with no window element strictly
    /// between. Windows cannot see the whole carrier, so a window cover need
    /// not be a cover in the parent presentation.
    pub fn covers(&self, x: &ElementId, y: &ElementId) -> Result<bool, OrderError> {
        let i = self.index_of(x)?;
        let j = self.index_of(y)?;
        Ok(self.covers_idx(i, j))
    }

    fn strictly_below(&self, i: usize, j: usize) -> bool {
        i != j && self.leq_idx(i, j) && !self.leq_idx(j, i)
    }

    fn covers_idx(&self, i: usize, j: usize) -> bool {
        self.strictly_below(i, j)
            && (0..self.len())
                .all(|k| !(self.strictly_below(i, k) && self.strictly_below(k, j)))
    }

    /// Restriction to an explicit finite order on window positions.
    pub fn to_finite_order(&self) -> FiniteOrder {
        FiniteOrder::from_fn(self.len(), self.parent.is_preorder(), |i, j| {
            self.leq_idx(i, j)
        })
    }

    /// JSON export: `{"elements": [...], "leq": [[...]]}`.
    pub fn to_json(&self) -> String {
        let n = self.len();
        let leq = (0..n)
            .map(|i| (0..n).map(|j| self.leq_idx(i, j)).collect())
            .collect();
        serde_json::to_string_pretty(&WindowJson {
            elements: &self.elements,
            leq,
        })
        .expect("window serializes")
    }

    /// DOT export of the window's Hasse diagram (window-relative covers),
    /// deterministic: nodes in enumeration order, edges sorted.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph window {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{e}\"];");
        }
        let mut edges = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.covers_idx(i, j) {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        for (i, j) in edges {
            let _ = writeln!(out, "  n{i} -> n{j};");
        }
        out.push_str("}\n");
        out
    }
}

/// Shared axiom check over any boolean matrix.
pub(crate) fn verify_matrix(
    n: usize,
    leq: impl Fn(usize, usize) -> bool,
    preorder: bool,
    labels: &[ElementId],
) -> Result<(), AxiomViolation> {
    let label = |i: usize| labels[i].clone();
    for i in 0..n {
        if !leq(i, i) {
            return Err(AxiomViolation::Reflexivity { x: label(i) });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !leq(i, j) {
                continue;
            }
            if !preorder && i != j && leq(j, i) {
                return Err(AxiomViolation::Antisymmetry {
                    x: label(i),
                    y: label(j),
                });
            }
            for k in 0..n {
                if leq(j, k) && !leq(i, k) {
                    return Err(AxiomViolation::Transitivity {
                        x: label(i),
                        y: label(j),
                        z: label(k),
                    });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{CarrierIndex, ElementId};

    fn omega() -> Presentation {
        Presentation::omega()
    }

    #[test]
    fn window_of_omega_is_chain() {
        let w = Window::new(&omega(), 4);
        assert_eq!(w.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(w.leq_idx(i, j), i <= j);
            }
        }
        assert!(w.verify_axioms().is_ok());
    }

    #[test]
    fn covers_in_chain_window() {
        let w = Window::new(&omega(), 5);
        let e = |n: u64| ElementId::nat(n);
        assert!(w.covers(&e(1), &e(2)).unwrap());
        assert!(!w.covers(&e(1), &e(3)).unwrap());
    }

    #[test]
    fn up_and_down_sets() {
        let p = Presentation::dinf();
        let w = Window::new(&p, 5);
        let a0 = ElementId::nat(0);
        assert_eq!(w.up_set(&a0).unwrap(), vec![a0.clone()]);
        assert_eq!(w.down_set(&a0).unwrap(), vec![a0]);
    }

    #[test]
    fn missing_element_errors() {
        let w = Window::new(&omega(), 3);
        let far = ElementId::nat(10);
        assert!(matches!(
            w.leq(&far, &far),
            Err(crate::order::OrderError::NotInWindow { .. })
        ));
    }

    #[test]
    fn matrix_agrees_with_parent() {
        let p = Presentation::dinf().disjoint_union(&omega());
        let w = Window::new(&p, 12);
        for x in w.elements() {
            for y in w.elements() {
                assert_eq!(w.leq(x, y).unwrap(), p.leq(x, y));
            }
        }
    }

    #[test]
    fn corrupted_matrix_reports_transitivity() {
        // 3-chain with the 0<=2 edge removed
        let ids: Vec<ElementId> = (0..3).map(ElementId::nat).collect();
        let m = [
            [true, true, false],
            [false, true, true],
            [false, false, true],
        ];
        let res = verify_matrix(3, |i, j| m[i][j], false, &ids);
        assert_eq!(
            res,
            Err(AxiomViolation::Transitivity {
                x: ElementId::nat(0),
                y: ElementId::nat(1),
                z: ElementId::nat(2),
            })
        );
    }

    #[test]
    fn preorder_windows_allow_mutual_pairs() {
        let p = Presentation::zinf();
        let w = Window::new(&p, 10);
        assert!(w.verify_axioms().is_ok());
        let x = ElementId::nat(0);
        let y = ElementId::nat(1);
        assert!(w.leq(&x, &y).unwrap() && w.leq(&y, &x).unwrap());
        assert_ne!(x.index, CarrierIndex::Nat(1));
    }
}
