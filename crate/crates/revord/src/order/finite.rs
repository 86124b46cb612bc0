//! Explicit finite (pre)orders in matrix form.

use super::window::{verify_matrix, AxiomViolation};
use super::ElementId;

/// A labeled finite (pre)order on points 0..n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrder {
    n: usize,
    leq: Vec<bool>,
    preorder: bool,
}

impl FiniteOrder {
    pub fn from_fn(n: usize, preorder: bool, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = f(i, j);
            }
        }
        FiniteOrder { n, leq, preorder }
    }

    pub fn from_matrix(n: usize, preorder: bool, leq: Vec<bool>) -> Self {
        assert_eq!(leq.len(), n * n);
        FiniteOrder { n, leq, preorder }
    }

    pub fn antichain(n: usize) -> Self {
        FiniteOrder::from_fn(n, false, |i, j| i == j)
    }

    pub fn chain(n: usize) -> Self {
        FiniteOrder::from_fn(n, false, |i, j| i <= j)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn is_preorder(&self) -> bool {
        self.preorder
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    pub fn verify_axioms(&self) -> Result<(), AxiomViolation> {
        let labels: Vec<ElementId> = (0..self.n as u64).map(ElementId::nat).collect();
        verify_matrix(self.n, |i, j| self.leq(i, j), self.preorder, &labels)
    }

    /// The same carrier with the order reversed.
    pub fn dual(&self) -> Self {
        FiniteOrder::from_fn(self.n, self.preorder, |i, j| self.leq(j, i))
    }

    /// x <= y and not y <= x.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && !self.leq(j, i)
    }

    /// Minimal points: nothing strictly below.
    pub fn minimal_points(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&j| (0..self.n).all(|i| !self.lt(i, j)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_antichain() {
        assert!(FiniteOrder::chain(4).verify_axioms().is_ok());
        assert!(FiniteOrder::antichain(4).verify_axioms().is_ok());
        assert_eq!(FiniteOrder::chain(3).minimal_points(), vec![0]);
        assert_eq!(FiniteOrder::antichain(3).minimal_points(), vec![0, 1, 2]);
    }

    #[test]
    fn dual_swaps_relation() {
        let c = FiniteOrder::chain(3);
        let d = c.dual();
        assert!(d.leq(2, 0));
        assert!(!d.leq(0, 2));
    }
}
