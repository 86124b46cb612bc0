//! Self-maps of presentations and the window-scale checks that decide
//! whether they witness non-reversibility, plus exhaustive finite oracles.

use crate::order::{ElementId, FiniteOrder, OrderError, Presentation, Window};
use serde::Serialize;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

pub mod shape;
pub use shape::{ElementPattern, OrbitShape, TailSpec};

type ElementFn = Arc<dyn Fn(&ElementId) -> ElementId + Send + Sync>;
type ShapeFn = Arc<dyn Fn(&ElementId) -> Option<OrbitShape> + Send + Sync>;

/// A computable bijection of a presentation's carrier with a computable
/// inverse.
///
/// `displacement_bound` documents how far the map may shift enumeration
/// indices; window checks use it to size codomain windows. A map may carry a
/// closed-form description of its orbits (`orbit_shape`), which lets the
/// extraction oracle answer infinitude queries exactly instead of assuming
/// them from a horizon scan.
#[derive(Clone)]
pub struct SelfMap {
    forward: ElementFn,
    inverse: ElementFn,
    pub displacement_bound: u64,
    orbit_shape: Option<ShapeFn>,
}

impl fmt::Debug for SelfMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SelfMap(displacement <= {})", self.displacement_bound)
    }
}

impl SelfMap {
    pub fn new(
        forward: impl Fn(&ElementId) -> ElementId + Send + Sync + 'static,
        inverse: impl Fn(&ElementId) -> ElementId + Send + Sync + 'static,
        displacement_bound: u64,
    ) -> Self {
        SelfMap {
            forward: Arc::new(forward),
            inverse: Arc::new(inverse),
            displacement_bound,
            orbit_shape: None,
        }
    }

    pub fn identity() -> Self {
        SelfMap::new(|x| x.clone(), |x| x.clone(), 0)
    }

    /// Attach a closed-form orbit description (see [`OrbitShape`]).
    pub fn with_orbit_shape(
        mut self,
        shape: impl Fn(&ElementId) -> Option<OrbitShape> + Send + Sync + 'static,
    ) -> Self {
        self.orbit_shape = Some(Arc::new(shape));
        self
    }

    pub fn apply(&self, x: &ElementId) -> ElementId {
        (self.forward)(x)
    }

    pub fn apply_inverse(&self, x: &ElementId) -> ElementId {
        (self.inverse)(x)
    }

    /// f^k(x); negative k applies the inverse.
    pub fn eval(&self, x: &ElementId, k: i64) -> ElementId {
        let mut cur = x.clone();
        if k >= 0 {
            for _ in 0..k {
                cur = self.apply(&cur);
            }
        } else {
            for _ in 0..(-k) {
                cur = self.apply_inverse(&cur);
            }
        }
        cur
    }

    pub fn orbit_shape(&self, x: &ElementId) -> Option<OrbitShape> {
        self.orbit_shape.as_ref().and_then(|f| f(x))
    }

    pub fn has_orbit_shapes(&self) -> bool {
        self.orbit_shape.is_some()
    }
}

/// k-fold composition; k = 0 is the identity, negative k composes the
/// inverse.
pub fn power(h: &SelfMap, k: i64) -> SelfMap {
    let fwd = h.clone();
    let inv = h.clone();
    SelfMap::new(
        move |x| fwd.eval(x, k),
        move |x| inv.eval(x, -k),
        h.displacement_bound * k.unsigned_abs(),
    )
}

/// The orbit x^k for k over the given range.
pub fn orbit(h: &SelfMap, x: &ElementId, range: RangeInclusive<i64>) -> Vec<ElementId> {
    range.map(|k| h.eval(x, k)).collect()
}

/// Result of a window check, serializable with the failed condition name and
/// the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict")]
pub enum CheckReport {
    Ok,
    Violation {
        condition: String,
        witness: Vec<ElementId>,
    },
}

impl CheckReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, CheckReport::Ok)
    }

    pub fn violation(condition: &str, witness: Vec<ElementId>) -> Self {
        CheckReport::Violation {
            condition: condition.to_string(),
            witness,
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckReport::Ok => write!(f, "ok"),
            CheckReport::Violation { condition, witness } => {
                write!(f, "violation of {condition} at [")?;
                for (i, w) in witness.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{w}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// leq(x, y) must imply leq(h(x), h(y)) for all pairs of the window; images
/// are evaluated directly in the presentation, they need not lie in the
/// window.
pub fn is_order_preserving(p: &Presentation, h: &SelfMap, n: u64) -> CheckReport {
    let w = Window::new(p, n);
    let images: Vec<ElementId> = w.elements().iter().map(|x| h.apply(x)).collect();
    for i in 0..w.len() {
        for j in 0..w.len() {
            if w.leq_idx(i, j) && !p.leq(&images[i], &images[j]) {
                return CheckReport::violation(
                    "order-preservation",
                    vec![w.elements()[i].clone(), w.elements()[j].clone()],
                );
            }
        }
    }
    CheckReport::Ok
}

/// inverse(forward(x)) = x and forward(inverse(x)) = x on the window, and
/// both images are valid carrier elements.
pub fn inverse_consistent(p: &Presentation, h: &SelfMap, n: u64) -> CheckReport {
    for x in p.enumerate(n) {
        let fx = h.apply(&x);
        if p.check_element(&fx).is_err() {
            return CheckReport::violation("image-validity", vec![x, fx]);
        }
        if h.apply_inverse(&fx) != x {
            return CheckReport::violation("inverse-after-forward", vec![x, fx]);
        }
        let gx = h.apply_inverse(&x);
        if p.check_element(&gx).is_err() || h.apply(&gx) != x {
            return CheckReport::violation("forward-after-inverse", vec![x, gx]);
        }
    }
    CheckReport::Ok
}

/// Search the window for a pair proving h is no automorphism: u not <= v
/// while h(u) <= h(v). For posets such a pair is automatically incomparable
/// with comparable images; for preorders the failure can be one-directional.
pub fn non_automorphism_pair(
    p: &Presentation,
    h: &SelfMap,
    n: u64,
) -> Option<(ElementId, ElementId)> {
    let w = Window::new(p, n);
    let images: Vec<ElementId> = w.elements().iter().map(|x| h.apply(x)).collect();
    for i in 0..w.len() {
        for j in 0..w.len() {
            if i != j && !w.leq_idx(i, j) && p.leq(&images[i], &images[j]) {
                return Some((w.elements()[i].clone(), w.elements()[j].clone()));
            }
        }
    }
    None
}

/// Verify that a claimed pair still proves the map is no automorphism.
pub fn check_witness_pair(
    p: &Presentation,
    h: &SelfMap,
    pair: &(ElementId, ElementId),
) -> CheckReport {
    let (u, v) = pair;
    if p.leq(u, v) {
        return CheckReport::violation("witness-pair-unrelated", vec![u.clone(), v.clone()]);
    }
    let (fu, fv) = (h.apply(u), h.apply(v));
    if !p.leq(&fu, &fv) {
        return CheckReport::violation("witness-pair-image", vec![fu, fv]);
    }
    CheckReport::Ok
}

const BRUTE_FORCE_GUARD: usize = 8;

/// Exhaustively decide reversibility of a finite order: every order
/// preserving permutation must have an order preserving inverse. Returns the
/// offending permutation otherwise.
pub fn brute_force_reversible(
    f: &FiniteOrder,
) -> Result<(bool, Option<Vec<usize>>), OrderError> {
    let n = f.len();
    if n > BRUTE_FORCE_GUARD {
        return Err(OrderError::SizeGuard {
            got: n,
            max: BRUTE_FORCE_GUARD,
        });
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn search(
        f: &FiniteOrder,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        depth: usize,
    ) -> Option<Vec<usize>> {
        let n = f.len();
        if depth == n {
            // order preserving by construction; test the inverse
            for i in 0..n {
                for j in 0..n {
                    if f.leq(perm[i], perm[j]) && !f.leq(i, j) {
                        return Some(perm.clone());
                    }
                }
            }
            return None;
        }
        'candidates: for v in 0..n {
            if used[v] {
                continue;
            }
            for i in 0..depth {
                if f.leq(i, depth) && !f.leq(perm[i], v) {
                    continue 'candidates;
                }
                if f.leq(depth, i) && !f.leq(v, perm[i]) {
                    continue 'candidates;
                }
            }
            if f.leq(depth, depth) && !f.leq(v, v) {
                continue;
            }
            perm[depth] = v;
            used[v] = true;
            if let Some(found) = search(f, perm, used, depth + 1) {
                return Some(found);
            }
            used[v] = false;
        }
        perm.truncate(depth);
        perm.resize(n, usize::MAX);
        None
    }
    match search(f, &mut perm, &mut used, 0) {
        Some(counterexample) => Ok((false, Some(counterexample))),
        None => Ok((true, None)),
    }
}

/// All labeled reflexive-transitive (and antisymmetric, for posets)
/// relations on n points, by backtracking over closure-consistent matrices.
pub fn enumerate_finite_orders(n: usize, preorder: bool) -> Vec<FiniteOrder> {
    // cells above and below the diagonal, assigned in a fixed order
    let cells: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| i != j)
        .collect();
    let mut matrix = vec![false; n * n];
    for i in 0..n {
        matrix[i * n + i] = true;
    }
    let mut out = Vec::new();
    fn consistent(
        m: &[bool],
        decided: &[bool],
        n: usize,
        (i, j): (usize, usize),
        preorder: bool,
    ) -> bool {
        let get = |a: usize, b: usize| m[a * n + b];
        let is_decided = |a: usize, b: usize| a == b || decided[a * n + b];
        if get(i, j) {
            if !preorder && get(j, i) {
                return false;
            }
            for k in 0..n {
                // i <= j <= k forces i <= k
                if is_decided(j, k) && get(j, k) && is_decided(i, k) && !get(i, k) {
                    return false;
                }
                // k <= i <= j forces k <= j
                if is_decided(k, i) && get(k, i) && is_decided(k, j) && !get(k, j) {
                    return false;
                }
            }
        } else {
            for k in 0..n {
                if is_decided(i, k) && get(i, k) && is_decided(k, j) && get(k, j) {
                    return false;
                }
            }
        }
        true
    }
    fn fill(
        cells: &[(usize, usize)],
        idx: usize,
        m: &mut Vec<bool>,
        decided: &mut Vec<bool>,
        n: usize,
        preorder: bool,
        out: &mut Vec<FiniteOrder>,
    ) {
        if idx == cells.len() {
            out.push(FiniteOrder::from_matrix(n, preorder, m.clone()));
            return;
        }
        let (i, j) = cells[idx];
        decided[i * n + j] = true;
        for &val in &[false, true] {
            m[i * n + j] = val;
            if consistent(m, decided, n, (i, j), preorder) {
                fill(cells, idx + 1, m, decided, n, preorder, out);
            }
        }
        m[i * n + j] = false;
        decided[i * n + j] = false;
    }
    let mut decided = vec![false; n * n];
    fill(
        &cells,
        0,
        &mut matrix,
        &mut decided,
        n,
        preorder,
        &mut out,
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::CarrierIndex;

    fn swap01_on_omega() -> SelfMap {
        let swap = |x: &ElementId| match x.index {
            CarrierIndex::Nat(0) => ElementId::nat(1),
            CarrierIndex::Nat(1) => ElementId::nat(0),
            _ => x.clone(),
        };
        SelfMap::new(swap, swap, 1)
    }

    #[test]
    fn identity_is_order_preserving_everywhere() {
        for p in [
            Presentation::omega(),
            Presentation::dinf().disjoint_union(&Presentation::omega()),
        ] {
            assert!(is_order_preserving(&p, &SelfMap::identity(), 20).is_ok());
            assert_eq!(non_automorphism_pair(&p, &SelfMap::identity(), 20), None);
        }
    }

    #[test]
    fn swap_violates_order_preservation() {
        let p = Presentation::omega();
        let report = is_order_preserving(&p, &swap01_on_omega(), 5);
        assert_eq!(
            report,
            CheckReport::violation(
                "order-preservation",
                vec![ElementId::nat(0), ElementId::nat(1)]
            )
        );
    }

    #[test]
    fn power_zero_is_identity() {
        let h = swap01_on_omega();
        let id = power(&h, 0);
        for n in 0..10 {
            let x = ElementId::nat(n);
            assert_eq!(id.apply(&x), x);
        }
    }

    #[test]
    fn powers_cancel() {
        let h = swap01_on_omega();
        for k in -5i64..=5 {
            let fwd = power(&h, k);
            let back = power(&h, -k);
            for n in 0..8 {
                let x = ElementId::nat(n);
                assert_eq!(back.apply(&fwd.apply(&x)), x);
            }
        }
    }

    #[test]
    fn two_element_antichain_is_reversible() {
        let (ok, witness) = brute_force_reversible(&FiniteOrder::antichain(2)).unwrap();
        assert!(ok);
        assert!(witness.is_none());
    }

    #[test]
    fn size_guard_enforced() {
        assert!(matches!(
            brute_force_reversible(&FiniteOrder::antichain(9)),
            Err(OrderError::SizeGuard { .. })
        ));
    }

    #[test]
    fn labeled_poset_counts_small() {
        assert_eq!(enumerate_finite_orders(2, false).len(), 3);
        assert_eq!(enumerate_finite_orders(2, true).len(), 4);
    }

    /// Independent oracle for the enumerator: filter every off-diagonal bit
    /// mask. Kept deliberately naive.
    fn raw_count(n: usize, preorder: bool) -> usize {
        let cells: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| i != j)
            .collect();
        let mut count = 0usize;
        for mask in 0u64..(1 << cells.len()) {
            let mut m = vec![false; n * n];
            for i in 0..n {
                m[i * n + i] = true;
            }
            for (b, &(i, j)) in cells.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    m[i * n + j] = true;
                }
            }
            let leq = |i: usize, j: usize| m[i * n + j];
            let transitive = (0..n).all(|i| {
                (0..n).all(|j| {
                    !leq(i, j) || (0..n).all(|k| !leq(j, k) || leq(i, k))
                })
            });
            let antisym =
                preorder || (0..n).all(|i| (0..n).all(|j| i == j || !(leq(i, j) && leq(j, i))));
            if transitive && antisym {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn enumerator_matches_raw_oracle_small() {
        for n in 0..=3 {
            for &pre in &[false, true] {
                assert_eq!(
                    enumerate_finite_orders(n, pre).len(),
                    raw_count(n, pre),
                    "n={n} preorder={pre}"
                );
            }
        }
    }

    #[test]
    fn enumerated_orders_satisfy_axioms() {
        for f in enumerate_finite_orders(3, true) {
            assert!(f.verify_axioms().is_ok());
        }
        for f in enumerate_finite_orders(3, false) {
            assert!(f.verify_axioms().is_ok());
        }
    }
}
