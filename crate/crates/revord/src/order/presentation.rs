//! Lazily queried presentations of countable (pre)orders.
//!
//! A presentation is a tree of generator leaves and combinator nodes. The
//! comparability predicate and the canonical enumeration are both computed by
//! walking that tree, so no carrier is ever materialized.
//!
//! Canonical enumeration:
//! * natural carriers in increasing order, integer carriers in the zigzag
//!   order 0, 1, -1, 2, -2, ...;
//! * multi-family generators round-robin their families per index;
//! * binary combinators interleave their children alternately, draining the
//!   survivor once a finite child is exhausted;
//! * infinite unions sweep (copy, position) pairs by anti-diagonals, so each
//!   copy is reached and enumerations stay prefix-stable.

use super::element::{CarrierIndex, ElementId, Family, Selector};
use super::OrderError;
use std::fmt;
use std::sync::Arc;

/// Zigzag enumeration of the integers: 0, 1, -1, 2, -2, ...
pub fn zigzag(n: u64) -> i64 {
    if n % 2 == 1 {
        ((n + 1) / 2) as i64
    } else {
        -((n / 2) as i64)
    }
}

/// A black-box order: decidable comparability plus an enumeration, used for
/// test fixtures and extensions that the combinator grammar cannot express.
/// Structural analyses treat these opaquely (oracle answers fall back to
/// horizon scans).
#[derive(Clone)]
pub struct OpaqueOrder {
    pub name: &'static str,
    pub preorder: bool,
    pub leq: Arc<dyn Fn(&ElementId, &ElementId) -> bool + Send + Sync>,
    pub nth: Arc<dyn Fn(u64) -> ElementId + Send + Sync>,
    pub contains: Arc<dyn Fn(&ElementId) -> bool + Send + Sync>,
}

impl fmt::Debug for OpaqueOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OpaqueOrder({})", self.name)
    }
}

/// The structure tree of a presentation.
#[derive(Debug, Clone)]
pub enum Structure {
    /// Ascending chain of the naturals.
    Omega,
    /// Descending chain: index 0 on top.
    OmegaDual,
    /// The one-element order.
    D1,
    /// Countable antichain.
    Dinf,
    /// Countable cluster: all pairs mutually comparable (preorder).
    Zinf,
    /// Two-element cluster (preorder).
    Z2,
    /// Descending ladder of two-element antichains (families A, B; smaller
    /// index is higher) with an ascending chain (family C) above it.
    LadderWithChain,
    /// Antichain (family A) under a chain (family C); chain element n sits
    /// above antichain elements 0..=n.
    FanWithChain,
    /// Two integer-indexed antichains: A below B, with a(i) < b(j) unless
    /// i <= 0 and j = i.
    TwoLevelGrid,
    Dual(Box<Structure>),
    DisjointUnion(Box<Structure>, Box<Structure>),
    LinearSum(Box<Structure>, Box<Structure>),
    InfiniteUnion(Box<Structure>),
    Opaque(OpaqueOrder),
}

/// A lazily queried countable (pre)order.
#[derive(Debug, Clone)]
pub struct Presentation {
    structure: Arc<Structure>,
    preorder: bool,
}

fn structure_is_preorder(s: &Structure) -> bool {
    match s {
        Structure::Zinf | Structure::Z2 => true,
        Structure::Dual(p) | Structure::InfiniteUnion(p) => structure_is_preorder(p),
        Structure::DisjointUnion(p, q) | Structure::LinearSum(p, q) => {
            structure_is_preorder(p) || structure_is_preorder(q)
        }
        Structure::Opaque(o) => o.preorder,
        _ => false,
    }
}

/// Carrier size of a structure; `None` means countably infinite.
fn carrier_size(s: &Structure) -> Option<u64> {
    match s {
        Structure::D1 => Some(1),
        Structure::Z2 => Some(2),
        Structure::Omega
        | Structure::OmegaDual
        | Structure::Dinf
        | Structure::Zinf
        | Structure::LadderWithChain
        | Structure::FanWithChain
        | Structure::TwoLevelGrid => None,
        Structure::Dual(p) => carrier_size(p),
        Structure::DisjointUnion(p, q) | Structure::LinearSum(p, q) => {
            Some(carrier_size(p)?.checked_add(carrier_size(q)?).unwrap())
        }
        Structure::InfiniteUnion(_) => None,
        Structure::Opaque(_) => None,
    }
}

impl Presentation {
    pub fn new(structure: Structure) -> Self {
        let preorder = structure_is_preorder(&structure);
        Presentation {
            structure: Arc::new(structure),
            preorder,
        }
    }

    pub fn omega() -> Self {
        Presentation::new(Structure::Omega)
    }
    pub fn omega_dual() -> Self {
        Presentation::new(Structure::OmegaDual)
    }
    pub fn d1() -> Self {
        Presentation::new(Structure::D1)
    }
    pub fn dinf() -> Self {
        Presentation::new(Structure::Dinf)
    }
    pub fn zinf() -> Self {
        Presentation::new(Structure::Zinf)
    }
    pub fn z2() -> Self {
        Presentation::new(Structure::Z2)
    }

    /// Same carrier, reversed order. Double duals unwrap.
    pub fn dual(&self) -> Self {
        match self.structure.as_ref() {
            Structure::Dual(inner) => Presentation::new(inner.as_ref().clone()),
            other => Presentation::new(Structure::Dual(Box::new(other.clone()))),
        }
    }

    /// Side-by-side sum: no cross relations.
    pub fn disjoint_union(&self, other: &Presentation) -> Self {
        Presentation::new(Structure::DisjointUnion(
            Box::new(self.structure.as_ref().clone()),
            Box::new(other.structure.as_ref().clone()),
        ))
    }

    /// Every element of `self` strictly below every element of `other`.
    pub fn linear_sum(&self, other: &Presentation) -> Self {
        Presentation::new(Structure::LinearSum(
            Box::new(self.structure.as_ref().clone()),
            Box::new(other.structure.as_ref().clone()),
        ))
    }

    /// Countably many pairwise-incomparable copies of `self`.
    pub fn infinite_disjoint_union(&self) -> Self {
        Presentation::new(Structure::InfiniteUnion(Box::new(
            self.structure.as_ref().clone(),
        )))
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    /// Whether antisymmetry is waived (any cluster generator in the tree).
    pub fn is_preorder(&self) -> bool {
        self.preorder
    }

    pub fn size(&self) -> Option<u64> {
        carrier_size(&self.structure)
    }

    /// Validate an element address against the structure tree.
    pub fn check_element(&self, x: &ElementId) -> Result<(), OrderError> {
        check_at(&self.structure, x, 0)
    }

    /// Decide x <= y. Both addresses must be valid.
    pub fn leq(&self, x: &ElementId, y: &ElementId) -> bool {
        debug_assert!(self.check_element(x).is_ok(), "invalid element {x}");
        debug_assert!(self.check_element(y).is_ok(), "invalid element {y}");
        leq_at(&self.structure, x, y, 0, 0, false)
    }

    /// Strict comparability in either direction.
    pub fn comparable(&self, x: &ElementId, y: &ElementId) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// The n-th element of the canonical enumeration.
    pub fn nth(&self, n: u64) -> ElementId {
        nth_at(&self.structure, n)
    }

    /// The first `n` elements of the canonical enumeration.
    pub fn enumerate(&self, n: u64) -> Vec<ElementId> {
        (0..n).map(|i| self.nth(i)).collect()
    }

    /// Position of an element in the canonical enumeration, when the
    /// structure is transparent (opaque leaves return `None`).
    pub fn position_of(&self, x: &ElementId) -> Option<u64> {
        position_at(&self.structure, x, 0)
    }
}

fn bad_selector(x: &ElementId, depth: usize, reason: &str) -> OrderError {
    OrderError::BadSelector {
        element: x.to_string(),
        depth,
        reason: reason.to_string(),
    }
}

fn bad_carrier(x: &ElementId, reason: &str) -> OrderError {
    OrderError::BadCarrier {
        element: x.to_string(),
        reason: reason.to_string(),
    }
}

/// Generator carriers: which (family, index) pairs are valid.
fn check_leaf(s: &Structure, x: &ElementId, depth: usize) -> Result<(), OrderError> {
    if x.path.len() != depth {
        return Err(bad_selector(x, depth, "path continues past a generator"));
    }
    let fam = x.family;
    let idx = x.index;
    let nat = |i: CarrierIndex| matches!(i, CarrierIndex::Nat(_));
    match s {
        Structure::Omega | Structure::OmegaDual | Structure::Dinf | Structure::Zinf => {
            if fam.is_some() {
                return Err(bad_carrier(x, "generator has a single family"));
            }
            if !nat(idx) {
                return Err(bad_carrier(x, "natural-indexed carrier"));
            }
            Ok(())
        }
        Structure::D1 => {
            if fam.is_some() || idx != CarrierIndex::Nat(0) {
                return Err(bad_carrier(x, "one-element carrier"));
            }
            Ok(())
        }
        Structure::Z2 => {
            if fam.is_some() || !matches!(idx, CarrierIndex::Nat(0) | CarrierIndex::Nat(1)) {
                return Err(bad_carrier(x, "two-element carrier"));
            }
            Ok(())
        }
        Structure::LadderWithChain => match fam {
            Some(Family::A) | Some(Family::B) | Some(Family::C) if nat(idx) => Ok(()),
            _ => Err(bad_carrier(x, "families a, b, c with natural indices")),
        },
        Structure::FanWithChain => match fam {
            Some(Family::A) | Some(Family::C) if nat(idx) => Ok(()),
            _ => Err(bad_carrier(x, "families a, c with natural indices")),
        },
        Structure::TwoLevelGrid => match (fam, idx) {
            (Some(Family::A), CarrierIndex::Int(_)) | (Some(Family::B), CarrierIndex::Int(_)) => {
                Ok(())
            }
            _ => Err(bad_carrier(x, "families a, b with integer indices")),
        },
        Structure::Opaque(o) => {
            if (o.contains)(x) {
                Ok(())
            } else {
                Err(bad_carrier(x, "outside the opaque carrier"))
            }
        }
        _ => unreachable!("check_leaf called on a combinator"),
    }
}

fn check_at(s: &Structure, x: &ElementId, depth: usize) -> Result<(), OrderError> {
    match s {
        Structure::Dual(p) => check_at(p, x, depth),
        Structure::DisjointUnion(p, q) | Structure::LinearSum(p, q) => {
            match x.path.get(depth) {
                Some(Selector::Left) => check_at(p, x, depth + 1),
                Some(Selector::Right) => check_at(q, x, depth + 1),
                Some(other) => Err(bad_selector(
                    x,
                    depth,
                    &format!("{other} at a binary combinator"),
                )),
                None => Err(bad_selector(x, depth, "path ends at a binary combinator")),
            }
        }
        Structure::InfiniteUnion(p) => match x.path.get(depth) {
            Some(Selector::Copy(_)) => check_at(p, x, depth + 1),
            Some(other) => Err(bad_selector(
                x,
                depth,
                &format!("{other} at an infinite union"),
            )),
            None => Err(bad_selector(x, depth, "path ends at an infinite union")),
        },
        Structure::Opaque(_) => {
            // opaque carriers own their whole remaining address
            check_leaf(s, x, x.path.len().min(depth))
        }
        leaf => check_leaf(leaf, x, depth),
    }
}

/// Comparability of two leaf elements of the same generator.
fn leaf_leq(s: &Structure, x: &ElementId, y: &ElementId) -> bool {
    let xi = x.index.value();
    let yi = y.index.value();
    match s {
        Structure::Omega => xi <= yi,
        Structure::OmegaDual => xi >= yi,
        Structure::D1 => true,
        Structure::Dinf => xi == yi,
        Structure::Zinf | Structure::Z2 => true,
        Structure::LadderWithChain => {
            let (xf, yf) = (x.family.unwrap(), y.family.unwrap());
            match (xf, yf) {
                (Family::C, Family::C) => xi <= yi,
                (Family::C, _) => false,
                (_, Family::C) => true,
                // within the ladder: higher level = smaller index
                _ => (xf == yf && xi == yi) || xi > yi,
            }
        }
        Structure::FanWithChain => {
            let (xf, yf) = (x.family.unwrap(), y.family.unwrap());
            match (xf, yf) {
                (Family::A, Family::A) => xi == yi,
                (Family::A, Family::C) => xi <= yi,
                (Family::C, Family::C) => xi <= yi,
                _ => false,
            }
        }
        Structure::TwoLevelGrid => {
            let (xf, yf) = (x.family.unwrap(), y.family.unwrap());
            match (xf, yf) {
                (Family::A, Family::A) | (Family::B, Family::B) => xi == yi,
                (Family::A, Family::B) => xi > 0 || yi != xi,
                (Family::B, Family::A) => false,
                _ => unreachable!(),
            }
        }
        Structure::Opaque(o) => (o.leq)(x, y),
        _ => unreachable!("leaf_leq called on a combinator"),
    }
}

/// Walk the tree with both elements in lockstep. `flip` tracks dual nesting;
/// paths of x and y are consumed at their own depths (equal in practice,
/// since Dual adds no selector).
fn leq_at(s: &Structure, x: &ElementId, y: &ElementId, dx: usize, dy: usize, flip: bool) -> bool {
    match s {
        Structure::Dual(p) => leq_at(p, x, y, dx, dy, !flip),
        Structure::DisjointUnion(p, q) => match (x.path.get(dx), y.path.get(dy)) {
            (Some(Selector::Left), Some(Selector::Left)) => leq_at(p, x, y, dx + 1, dy + 1, flip),
            (Some(Selector::Right), Some(Selector::Right)) => {
                leq_at(q, x, y, dx + 1, dy + 1, flip)
            }
            _ => false,
        },
        Structure::LinearSum(p, q) => match (x.path.get(dx), y.path.get(dy)) {
            (Some(Selector::Left), Some(Selector::Left)) => leq_at(p, x, y, dx + 1, dy + 1, flip),
            (Some(Selector::Right), Some(Selector::Right)) => {
                leq_at(q, x, y, dx + 1, dy + 1, flip)
            }
            (Some(Selector::Left), Some(Selector::Right)) => !flip,
            (Some(Selector::Right), Some(Selector::Left)) => flip,
            _ => false,
        },
        Structure::InfiniteUnion(p) => match (x.path.get(dx), y.path.get(dy)) {
            (Some(Selector::Copy(i)), Some(Selector::Copy(j))) if i == j => {
                leq_at(p, x, y, dx + 1, dy + 1, flip)
            }
            _ => false,
        },
        leaf => {
            if flip {
                leaf_leq(leaf, y, x)
            } else {
                leaf_leq(leaf, x, y)
            }
        }
    }
}

/// n-th element of the canonical enumeration of `s`.
fn nth_at(s: &Structure, n: u64) -> ElementId {
    match s {
        Structure::Omega | Structure::OmegaDual | Structure::Dinf | Structure::Zinf => {
            ElementId::nat(n)
        }
        Structure::D1 => {
            debug_assert_eq!(n, 0);
            ElementId::nat(0)
        }
        Structure::Z2 => {
            debug_assert!(n < 2);
            ElementId::nat(n)
        }
        Structure::LadderWithChain => {
            let fam = [Family::A, Family::B, Family::C][(n % 3) as usize];
            ElementId::nat(n / 3).in_family(fam)
        }
        Structure::FanWithChain => {
            let fam = [Family::A, Family::C][(n % 2) as usize];
            ElementId::nat(n / 2).in_family(fam)
        }
        Structure::TwoLevelGrid => {
            let fam = [Family::A, Family::B][(n % 2) as usize];
            ElementId::int(zigzag(n / 2)).in_family(fam)
        }
        Structure::Dual(p) => nth_at(p, n),
        Structure::DisjointUnion(p, q) | Structure::LinearSum(p, q) => {
            let (sp, sq) = (carrier_size(p), carrier_size(q));
            let shorter = match (sp, sq) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (Some(a), None) => Some(a),
                (None, Some(b)) => Some(b),
                (None, None) => None,
            };
            match shorter {
                Some(m) if n >= 2 * m => {
                    // one side exhausted: drain the survivor
                    let rest = n - m;
                    let p_survives = match (sp, sq) {
                        (None, _) => true,
                        (Some(a), Some(b)) => a > b,
                        (Some(_), None) => false,
                    };
                    if p_survives {
                        nth_at(p, rest).under(Selector::Left)
                    } else {
                        nth_at(q, rest).under(Selector::Right)
                    }
                }
                _ => {
                    if n % 2 == 0 {
                        nth_at(p, n / 2).under(Selector::Left)
                    } else {
                        nth_at(q, n / 2).under(Selector::Right)
                    }
                }
            }
        }
        Structure::InfiniteUnion(p) => {
            let (copy, pos) = diagonal_pair(n, carrier_size(p));
            nth_at(p, pos).under(Selector::Copy(copy))
        }
        Structure::Opaque(o) => (o.nth)(n),
    }
}

/// Anti-diagonal sweep over (copy, position) pairs; positions are capped by
/// the copy size when finite.
fn diagonal_pair(n: u64, size: Option<u64>) -> (u64, u64) {
    match size {
        None => {
            // diagonal d holds pairs (0, d), (1, d-1), ..., (d, 0)
            let mut d = 0u64;
            let mut before = 0u64;
            while before + d + 1 <= n {
                before += d + 1;
                d += 1;
            }
            let r = n - before;
            (r, d - r)
        }
        Some(s) => {
            debug_assert!(s > 0);
            // ramp-up region: diagonals d < s hold d+1 items; afterwards s each
            let ramp = s * (s.saturating_sub(1)) / 2; // items with d < s-1
            if s > 1 && n < ramp {
                let mut d = 0u64;
                let mut before = 0u64;
                while before + d + 1 <= n {
                    before += d + 1;
                    d += 1;
                }
                let r = n - before;
                (r, d - r)
            } else {
                let q = (n - ramp) / s;
                let r = (n - ramp) % s;
                (q + r, s - 1 - r)
            }
        }
    }
}

fn leaf_position(s: &Structure, x: &ElementId) -> Option<u64> {
    let idx = x.index;
    match s {
        Structure::Omega | Structure::OmegaDual | Structure::Dinf | Structure::Zinf => {
            match idx {
                CarrierIndex::Nat(n) => Some(n),
                _ => None,
            }
        }
        Structure::D1 | Structure::Z2 => match idx {
            CarrierIndex::Nat(n) => Some(n),
            _ => None,
        },
        Structure::LadderWithChain => {
            let f = match x.family? {
                Family::A => 0,
                Family::B => 1,
                Family::C => 2,
            };
            match idx {
                CarrierIndex::Nat(n) => Some(3 * n + f),
                _ => None,
            }
        }
        Structure::FanWithChain => {
            let f = match x.family? {
                Family::A => 0,
                Family::C => 1,
                Family::B => return None,
            };
            match idx {
                CarrierIndex::Nat(n) => Some(2 * n + f),
                _ => None,
            }
        }
        Structure::TwoLevelGrid => {
            let f = match x.family? {
                Family::A => 0,
                Family::B => 1,
                Family::C => return None,
            };
            let i = idx.value();
            let z = if i > 0 { (2 * i - 1) as u64 } else { (-2 * i) as u64 };
            Some(2 * z + f)
        }
        _ => None,
    }
}

fn position_at(s: &Structure, x: &ElementId, depth: usize) -> Option<u64> {
    match s {
        Structure::Dual(p) => position_at(p, x, depth),
        Structure::DisjointUnion(p, q) | Structure::LinearSum(p, q) => {
            let (sp, sq) = (carrier_size(p), carrier_size(q));
            let both = match (sp, sq) {
                (Some(a), Some(b)) => a.min(b),
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => u64::MAX / 2,
            };
            match x.path.get(depth)? {
                Selector::Left => {
                    let k = position_at(p, x, depth + 1)?;
                    if k < both {
                        Some(2 * k)
                    } else {
                        // only reachable when q is the exhausted side
                        Some(both + k)
                    }
                }
                Selector::Right => {
                    let k = position_at(q, x, depth + 1)?;
                    if k < both {
                        Some(2 * k + 1)
                    } else {
                        Some(both + k)
                    }
                }
                Selector::Copy(_) => None,
            }
        }
        Structure::InfiniteUnion(p) => match x.path.get(depth)? {
            Selector::Copy(copy) => {
                let pos = position_at(p, x, depth + 1)?;
                Some(diagonal_index(*copy, pos, carrier_size(p)))
            }
            _ => None,
        },
        Structure::Opaque(_) => None,
        leaf => leaf_position(leaf, x),
    }
}

fn diagonal_index(copy: u64, pos: u64, size: Option<u64>) -> u64 {
    match size {
        None => {
            let d = copy + pos;
            d * (d + 1) / 2 + copy
        }
        Some(s) => {
            let d = copy + pos;
            if d < s {
                d * (d + 1) / 2 + copy
            } else {
                let ramp = s * (s - 1) / 2;
                ramp + (d - (s - 1)) * s + (copy - (d - s + 1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zigzag_canon() {
        let seq: Vec<i64> = (0..5).map(zigzag).collect();
        assert_eq!(seq, vec![0, 1, -1, 2, -2]);
    }

    #[test]
    fn omega_window_is_chain() {
        let p = Presentation::omega();
        for i in 0..4u64 {
            for j in 0..4u64 {
                assert_eq!(
                    p.leq(&ElementId::nat(i), &ElementId::nat(j)),
                    i <= j
                );
            }
        }
    }

    #[test]
    fn double_dual_unwraps() {
        let p = Presentation::omega().dual().dual();
        let panic_free = p.enumerate(10);
        assert_eq!(panic_free.len(), 10);
        for i in 0..10u64 {
            for j in 0..10u64 {
                assert_eq!(
                    p.leq(&ElementId::nat(i), &ElementId::nat(j)),
                    Presentation::omega().leq(&ElementId::nat(i), &ElementId::nat(j))
                );
            }
        }
    }

    #[test]
    fn linear_sum_cross_relations() {
        let p = Presentation::d1().linear_sum(&Presentation::omega());
        let bottom = ElementId::nat(0).under(Selector::Left);
        let chain3 = ElementId::nat(3).under(Selector::Right);
        assert!(p.leq(&bottom, &chain3));
        assert!(!p.leq(&chain3, &bottom));
    }

    #[test]
    fn disjoint_union_no_cross() {
        let p = Presentation::dinf().disjoint_union(&Presentation::omega());
        let a2 = ElementId::nat(2).under(Selector::Left);
        let c2 = ElementId::nat(2).under(Selector::Right);
        assert!(!p.leq(&a2, &c2));
        assert!(!p.leq(&c2, &a2));
    }

    #[test]
    fn infinite_union_components() {
        let block = Presentation::d1().linear_sum(&Presentation::d1());
        let p = block.infinite_disjoint_union();
        let bottom = |c| {
            ElementId::nat(0)
                .under(Selector::Left)
                .under(Selector::Copy(c))
        };
        let top = |c| {
            ElementId::nat(0)
                .under(Selector::Right)
                .under(Selector::Copy(c))
        };
        assert!(p.leq(&bottom(3), &top(3)));
        assert!(!p.leq(&bottom(3), &top(4)));
    }

    #[test]
    fn interleaved_enumeration_single_d1() {
        // D1 (+) omega: the single left element, then the chain
        let p = Presentation::d1().linear_sum(&Presentation::omega());
        let ids = p.enumerate(4);
        assert_eq!(ids[0], ElementId::nat(0).under(Selector::Left));
        assert_eq!(ids[1], ElementId::nat(0).under(Selector::Right));
        assert_eq!(ids[2], ElementId::nat(1).under(Selector::Right));
        assert_eq!(ids[3], ElementId::nat(2).under(Selector::Right));
    }

    #[test]
    fn diagonal_enumeration_of_pairs() {
        let block = Presentation::d1().linear_sum(&Presentation::d1());
        let p = block.infinite_disjoint_union();
        let ids = p.enumerate(5);
        let el = |c, side| {
            ElementId::nat(0)
                .under(side)
                .under(Selector::Copy(c))
        };
        assert_eq!(ids[0], el(0, Selector::Left));
        assert_eq!(ids[1], el(0, Selector::Right));
        assert_eq!(ids[2], el(1, Selector::Left));
        assert_eq!(ids[3], el(1, Selector::Right));
        assert_eq!(ids[4], el(2, Selector::Left));
    }

    #[test]
    fn positions_invert_enumeration() {
        let exprs = [
            Presentation::omega(),
            Presentation::dinf().disjoint_union(&Presentation::omega()),
            Presentation::d1()
                .linear_sum(&Presentation::dinf())
                .disjoint_union(&Presentation::dinf()),
            Presentation::d1()
                .linear_sum(&Presentation::d1())
                .infinite_disjoint_union(),
            Presentation::new(Structure::TwoLevelGrid),
            Presentation::new(Structure::LadderWithChain).dual(),
        ];
        for p in exprs {
            for n in 0..60u64 {
                let id = p.nth(n);
                assert!(p.check_element(&id).is_ok(), "{id} invalid");
                assert_eq!(p.position_of(&id), Some(n), "position of {id}");
            }
        }
    }

    #[test]
    fn invalid_elements_are_rejected() {
        let p = Presentation::dinf().disjoint_union(&Presentation::omega());
        assert!(p.check_element(&ElementId::nat(0)).is_err());
        assert!(p
            .check_element(&ElementId::nat(0).under(Selector::Copy(1)))
            .is_err());
        assert!(p
            .check_element(&ElementId::int(-1).under(Selector::Left))
            .is_err());
        let g = Presentation::new(Structure::TwoLevelGrid);
        assert!(g.check_element(&ElementId::int(0)).is_err());
        assert!(g
            .check_element(&ElementId::int(0).in_family(Family::A))
            .is_ok());
    }
}
