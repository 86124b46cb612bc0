//! The order-topology bridge: specialization preorders, Alexandroff and
//! upper topologies, reversibility of finite spaces, and the level-set
//! machinery of well-founded orders.

use crate::maps::{is_order_preserving, CheckReport, SelfMap};
use crate::order::{ElementId, FiniteOrder, OrderError, Presentation, Window};
use serde::{Deserialize, Serialize};

/// An explicit finite topological space: points carry names, opens are point
/// sets (bitmasks internally).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSpace {
    points: Vec<String>,
    opens: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FiniteSpaceJson {
    points: Vec<String>,
    opens: Vec<Vec<String>>,
}

impl FiniteSpace {
    /// Build a space from named points and opens-as-name-sets; the family is
    /// checked to contain the empty and full sets and to be closed under
    /// union and intersection.
    pub fn new(points: Vec<String>, opens_named: &[Vec<String>]) -> Result<Self, OrderError> {
        let n = points.len();
        assert!(n <= 63, "finite spaces are desk scale");
        let index_of = |name: &str| points.iter().position(|p| p == name);
        let mut opens = Vec::new();
        for open in opens_named {
            let mut mask = 0u64;
            for name in open {
                let Some(i) = index_of(name) else {
                    return Err(OrderError::BadCarrier {
                        element: name.clone(),
                        reason: "unknown point".to_string(),
                    });
                };
                mask |= 1 << i;
            }
            opens.push(mask);
        }
        let space = FiniteSpace { points, opens };
        space.check()?;
        Ok(space)
    }

    pub fn from_masks(n: usize, opens: Vec<u64>) -> Result<Self, OrderError> {
        let points = (0..n).map(|i| format!("p{i}")).collect();
        let space = FiniteSpace { points, opens };
        space.check()?;
        Ok(space)
    }

    fn check(&self) -> Result<(), OrderError> {
        let full = self.full_mask();
        let has = |m: u64| self.opens.contains(&m);
        if !has(0) || !has(full) {
            return Err(OrderError::BadCarrier {
                element: "opens".to_string(),
                reason: "missing the empty or the full set".to_string(),
            });
        }
        for &a in &self.opens {
            for &b in &self.opens {
                if !has(a | b) || !has(a & b) {
                    return Err(OrderError::BadCarrier {
                        element: "opens".to_string(),
                        reason: "family not closed under union and intersection".to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn full_mask(&self) -> u64 {
        if self.points.is_empty() {
            0
        } else {
            (1u64 << self.points.len()) - 1
        }
    }

    pub fn opens(&self) -> &[u64] {
        &self.opens
    }

    pub fn point_names(&self) -> &[String] {
        &self.points
    }

    pub fn to_json(&self) -> String {
        let opens = self
            .opens
            .iter()
            .map(|&m| {
                (0..self.points.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| self.points[i].clone())
                    .collect()
            })
            .collect();
        serde_json::to_string_pretty(&FiniteSpaceJson {
            points: self.points.clone(),
            opens,
        })
        .expect("space serializes")
    }
}

/// Specialization preorder: x below y when x lies in the closure of {y},
/// equivalently every open containing x contains y.
pub fn specialization(space: &FiniteSpace) -> FiniteOrder {
    let n = space.len();
    FiniteOrder::from_fn(n, true, |x, y| {
        space
            .opens()
            .iter()
            .all(|&open| open >> x & 1 == 0 || open >> y & 1 == 1)
    })
}

/// The finest topology with a given specialization preorder: opens are
/// exactly the up-sets.
pub fn alexandroff_space(q: &FiniteOrder) -> FiniteSpace {
    let n = q.len();
    assert!(n <= 20);
    let mut opens = Vec::new();
    for mask in 0u64..(1 << n) {
        let up_closed = (0..n).all(|x| {
            mask >> x & 1 == 0 || (0..n).all(|y| !q.leq(x, y) || mask >> y & 1 == 1)
        });
        if up_closed {
            opens.push(mask);
        }
    }
    FiniteSpace::from_masks(n, opens).expect("up-sets form a topology")
}

/// The coarsest topology with a given specialization preorder: generated by
/// complements of principal down-sets.
pub fn upper_space(q: &FiniteOrder) -> FiniteSpace {
    let n = q.len();
    assert!(n <= 20);
    let full = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut subbasis: Vec<u64> = (0..n)
        .map(|x| {
            let down: u64 = (0..n).filter(|&y| q.leq(y, x)).fold(0, |m, y| m | 1 << y);
            full & !down
        })
        .collect();
    subbasis.push(full);
    // close under intersections, then unions
    let mut inters: Vec<u64> = vec![full];
    for &s in &subbasis {
        let snapshot = inters.clone();
        for i in snapshot {
            if !inters.contains(&(i & s)) {
                inters.push(i & s);
            }
        }
    }
    let mut opens: Vec<u64> = vec![0];
    loop {
        let mut grew = false;
        let snapshot = opens.clone();
        for &a in &snapshot {
            for &b in &inters {
                let u = a | b;
                if !opens.contains(&u) {
                    opens.push(u);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    opens.sort_unstable();
    opens.dedup();
    FiniteSpace::from_masks(n, opens).expect("generated family is a topology")
}

/// Membership predicate of a principal up-set of a presentation.
pub fn alexandroff_basic(p: &Presentation, x: &ElementId) -> impl Fn(&ElementId) -> bool {
    let p = p.clone();
    let x = x.clone();
    move |y| p.leq(&x, y)
}

/// Membership predicate of a subbasic upper-topology open: the complement of
/// a principal down-set.
pub fn upper_subbasic(p: &Presentation, x: &ElementId) -> impl Fn(&ElementId) -> bool {
    let p = p.clone();
    let x = x.clone();
    move |y| !p.leq(y, &x)
}

/// Continuity of a self-map for the Alexandroff topology coincides with
/// order preservation; recorded as its own operation for the topological
/// reading.
pub fn alexandroff_continuous(p: &Presentation, h: &SelfMap, n: u64) -> CheckReport {
    is_order_preserving(p, h, n)
}

/// Finite symbolic expression for a subset of a presentation: a union of
/// principal down-sets and explicit finite sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpression {
    DownSet(ElementId),
    Finite(Vec<ElementId>),
    Union(Vec<SetExpression>),
}

impl SetExpression {
    pub fn contains(&self, p: &Presentation, y: &ElementId) -> bool {
        match self {
            SetExpression::DownSet(x) => p.leq(y, x),
            SetExpression::Finite(els) => els.contains(y),
            SetExpression::Union(parts) => parts.iter().any(|e| e.contains(p, y)),
        }
    }
}

/// Check a claimed symbolic description of the preimage of a principal
/// down-set under a self-map: membership must coincide on the window. A
/// valid family of such certificates over all subbasic sets witnesses
/// upper-topology continuity.
pub fn upper_preimage_certificate_check(
    p: &Presentation,
    h: &SelfMap,
    x: &ElementId,
    claimed: &SetExpression,
    n: u64,
) -> CheckReport {
    for w in p.enumerate(n) {
        let in_preimage = p.leq(&h.apply(&w), x);
        let in_claimed = claimed.contains(p, &w);
        if in_preimage != in_claimed {
            return CheckReport::violation(
                if in_preimage {
                    "preimage-member-missing"
                } else {
                    "claimed-member-extra"
                },
                vec![w, x.clone()],
            );
        }
    }
    CheckReport::Ok
}

const SPACE_GUARD: usize = 5;

/// Exhaustively decide reversibility of a finite space: every continuous
/// permutation must be a homeomorphism.
pub fn finite_space_reversible(
    space: &FiniteSpace,
) -> Result<(bool, Option<Vec<usize>>), OrderError> {
    let n = space.len();
    if n > SPACE_GUARD {
        return Err(OrderError::SizeGuard {
            got: n,
            max: SPACE_GUARD,
        });
    }
    let apply = |perm: &[usize], mask: u64| -> u64 {
        let mut out = 0u64;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                out |= 1 << perm[i];
            }
        }
        out
    };
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let preimages_open = space
            .opens()
            .iter()
            .all(|&open| {
                // preimage of `open` under perm
                let mut pre = 0u64;
                for i in 0..n {
                    if open >> perm[i] & 1 == 1 {
                        pre |= 1 << i;
                    }
                }
                space.opens().contains(&pre)
            });
        if preimages_open {
            // continuous; a homeomorphism also needs open images
            let images_open = space
                .opens()
                .iter()
                .all(|&open| space.opens().contains(&apply(&perm, open)));
            if !images_open {
                return Ok((false, Some(perm)));
            }
        }
        if !next_permutation(&mut perm) {
            return Ok((true, None));
        }
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// All labeled topologies on n points, by brute force over set families.
pub fn enumerate_topologies(n: usize) -> Vec<FiniteSpace> {
    assert!(n <= 4, "family enumeration is exponential in 2^n");
    let subsets = 1usize << n;
    let full = (subsets - 1) as u64;
    let mut out = Vec::new();
    for fam in 0u64..(1 << subsets) {
        if fam & 1 == 0 || fam >> full & 1 == 0 {
            continue;
        }
        let opens: Vec<u64> = (0..subsets as u64).filter(|&m| fam >> m & 1 == 1).collect();
        let closed = opens.iter().all(|&a| {
            opens
                .iter()
                .all(|&b| fam >> (a | b) & 1 == 1 && fam >> (a & b) & 1 == 1)
        });
        if closed {
            out.push(FiniteSpace::from_masks(n, opens).expect("checked"));
        }
    }
    out
}

/// Stratification of a finite order into level sets: minimal points, then
/// minimal points of the rest, and so on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    pub levels: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct LevelsJson {
    levels: Vec<Vec<String>>,
}

impl LevelDecomposition {
    pub fn level_of(&self, x: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(&x))
    }

    pub fn to_json(&self, names: &[ElementId]) -> String {
        let levels = self
            .levels
            .iter()
            .map(|l| l.iter().map(|&i| names[i].to_string()).collect())
            .collect();
        serde_json::to_string_pretty(&LevelsJson { levels }).expect("levels serialize")
    }
}

/// Compute level sets of a finite order by repeatedly removing minimal
/// points; fails on preorder cycles or when the rank bound is exceeded.
pub fn level_sets(f: &FiniteOrder, rank_bound: usize) -> Result<LevelDecomposition, OrderError> {
    let n = f.len();
    let mut remaining: Vec<bool> = vec![true; n];
    let mut left = n;
    let mut levels = Vec::new();
    while left > 0 {
        if levels.len() >= rank_bound {
            return Err(OrderError::SizeGuard {
                got: levels.len() + 1,
                max: rank_bound,
            });
        }
        let level: Vec<usize> = (0..n)
            .filter(|&x| remaining[x])
            .filter(|&x| (0..n).all(|y| !remaining[y] || !f.lt(y, x)))
            .collect();
        if level.is_empty() {
            return Err(OrderError::BadCarrier {
                element: "order".to_string(),
                reason: "no minimal points; not well-founded".to_string(),
            });
        }
        for &x in &level {
            remaining[x] = false;
            left -= 1;
        }
        levels.push(level);
    }
    Ok(LevelDecomposition { levels })
}

/// Level sets of a presented order's window.
pub fn window_level_sets(w: &Window, rank_bound: usize) -> Result<LevelDecomposition, OrderError> {
    level_sets(&w.to_finite_order(), rank_bound)
}

/// The minimal points of an up-set, with the check that the up-set is
/// generated by them.
pub fn min_up(f: &FiniteOrder, up_set: &[usize]) -> (Vec<usize>, bool) {
    let minimal: Vec<usize> = up_set
        .iter()
        .copied()
        .filter(|&x| up_set.iter().all(|&y| !f.lt(y, x)))
        .collect();
    let mut generated: Vec<usize> = (0..f.len())
        .filter(|&y| minimal.iter().any(|&m| f.leq(m, y)))
        .collect();
    generated.sort_unstable();
    let mut sorted = up_set.to_vec();
    sorted.sort_unstable();
    (minimal, generated == sorted)
}

/// Check that an automorphism preserves every level set.
pub fn level_preserving_check(f: &FiniteOrder, g: &[usize]) -> Result<CheckReport, OrderError> {
    let n = f.len();
    let mut seen = vec![false; n];
    for &v in g {
        if v >= n || seen[v] {
            return Err(OrderError::BadCarrier {
                element: format!("{g:?}"),
                reason: "not a permutation".to_string(),
            });
        }
        seen[v] = true;
    }
    for i in 0..n {
        for j in 0..n {
            if f.leq(i, j) != f.leq(g[i], g[j]) {
                return Err(OrderError::BadCarrier {
                    element: format!("{g:?}"),
                    reason: "not an automorphism".to_string(),
                });
            }
        }
    }
    let levels = level_sets(f, n + 1)?;
    for (idx, level) in levels.levels.iter().enumerate() {
        let mut image: Vec<usize> = level.iter().map(|&x| g[x]).collect();
        image.sort_unstable();
        let mut expected = level.clone();
        expected.sort_unstable();
        if image != expected {
            return Ok(CheckReport::violation(
                &format!("level-{idx}-not-preserved"),
                level.iter().map(|&x| ElementId::nat(x as u64)).collect(),
            ));
        }
    }
    Ok(CheckReport::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sierpinski() -> FiniteSpace {
        FiniteSpace::new(
            vec!["0".to_string(), "1".to_string()],
            &[
                vec![],
                vec!["1".to_string()],
                vec!["0".to_string(), "1".to_string()],
            ],
        )
        .unwrap()
    }

    #[test]
    fn sierpinski_specialization() {
        let q = specialization(&sierpinski());
        assert!(q.leq(0, 1));
        assert!(!q.leq(1, 0));
    }

    #[test]
    fn discrete_space_is_an_antichain() {
        let opens: Vec<u64> = (0..8).collect();
        let space = FiniteSpace::from_masks(3, opens).unwrap();
        let q = specialization(&space);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(q.leq(i, j), i == j);
            }
        }
    }

    #[test]
    fn indiscrete_space_is_a_cluster() {
        let space = FiniteSpace::from_masks(2, vec![0, 3]).unwrap();
        let q = specialization(&space);
        assert!(q.leq(0, 1) && q.leq(1, 0));
    }

    #[test]
    fn sierpinski_is_reversible() {
        let (ok, w) = finite_space_reversible(&sierpinski()).unwrap();
        assert!(ok);
        assert!(w.is_none());
    }

    #[test]
    fn space_guard() {
        let discrete: Vec<u64> = (0..(1 << 6)).collect();
        let space = FiniteSpace::from_masks(6, discrete).unwrap();
        assert!(finite_space_reversible(&space).is_err());
    }

    #[test]
    fn levels_of_a_chain() {
        let levels = level_sets(&FiniteOrder::chain(3), 10).unwrap();
        assert_eq!(levels.levels, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn min_up_of_chain_upper_part() {
        let f = FiniteOrder::chain(3);
        let (minimal, generated) = min_up(&f, &[1, 2]);
        assert_eq!(minimal, vec![1]);
        assert!(generated);
    }

    #[test]
    fn clusters_stratify_as_one_level() {
        // mutual comparability carries no strict relations, so the whole
        // cluster is minimal
        let f = FiniteOrder::from_fn(2, true, |_, _| true);
        let levels = level_sets(&f, 10).unwrap();
        assert_eq!(levels.levels, vec![vec![0, 1]]);
    }

    #[test]
    fn identity_preimage_certificate() {
        let p = Presentation::omega();
        let x = ElementId::nat(3);
        let claimed = SetExpression::DownSet(x.clone());
        let report = upper_preimage_certificate_check(&p, &SelfMap::identity(), &x, &claimed, 30);
        assert!(report.is_ok());
    }

    #[test]
    fn wrong_preimage_certificate_names_the_miss() {
        let (p, h, x, _) = crate::fixtures::upper_preimage_fixture();
        let wrong = SetExpression::Finite(vec![]);
        let report = upper_preimage_certificate_check(&p, &h, &x, &wrong, 40);
        assert!(matches!(report, CheckReport::Violation { .. }));
    }

    #[test]
    fn shipped_preimage_certificate_checks() {
        let (p, h, x, claimed) = crate::fixtures::upper_preimage_fixture();
        let report = upper_preimage_certificate_check(&p, &h, &x, &claimed, 100);
        assert!(report.is_ok(), "{report}");
    }
}
