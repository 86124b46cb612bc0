//! Structural comparability analysis of affine element patterns.
//!
//! Orbit tails are affine patterns inside one generator family (or one
//! varying copy of an infinite union). Against the combinator tree, sets
//! like "all t with pattern(t) below c" are decidable exactly; these
//! analyses back the extraction oracle's exact answers.

use crate::maps::ElementPattern;
use crate::order::{ElementId, Family, Presentation, Selector, Structure};

/// Abstract subset of the naturals with guaranteed semantics:
/// `Empty`/`All` are exact, `UpTo(b)` guarantees members <= b, `From(f)`
/// guarantees every t >= f is a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TSet {
    Empty,
    UpTo(u64),
    From(u64),
    All,
}

impl TSet {
    pub fn is_infinite(&self) -> bool {
        matches!(self, TSet::From(_) | TSet::All)
    }

    /// An upper bound on members when the set is finite.
    pub fn finite_bound(&self) -> Option<u64> {
        match self {
            TSet::Empty => Some(0),
            TSet::UpTo(b) => Some(*b),
            _ => None,
        }
    }

    pub fn complement(self) -> TSet {
        match self {
            TSet::Empty => TSet::All,
            TSet::All => TSet::Empty,
            TSet::UpTo(b) => TSet::From(b + 1),
            TSet::From(0) => TSet::Empty,
            TSet::From(f) => TSet::UpTo(f - 1),
        }
    }

    pub fn intersect(self, other: TSet) -> TSet {
        use TSet::*;
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (All, x) | (x, All) => x,
            (UpTo(a), UpTo(b)) => UpTo(a.min(b)),
            (UpTo(a), From(_)) | (From(_), UpTo(a)) => UpTo(a),
            (From(a), From(b)) => From(a.max(b)),
        }
    }

    pub fn union(self, other: TSet) -> TSet {
        use TSet::*;
        match (self, other) {
            (Empty, x) | (x, Empty) => x,
            (All, _) | (_, All) => All,
            (UpTo(a), UpTo(b)) => UpTo(a.max(b)),
            (From(f), UpTo(_)) | (UpTo(_), From(f)) => From(f),
            (From(a), From(b)) => From(a.min(b)),
        }
    }
}

/// Uniform shape of the slices of a two-parameter relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SliceShape {
    Empty,
    Finite,
    Cofinite,
    All,
}

impl SliceShape {
    pub fn all_finite(self) -> bool {
        matches!(self, SliceShape::Empty | SliceShape::Finite)
    }

    fn complement(self) -> SliceShape {
        match self {
            SliceShape::Empty => SliceShape::All,
            SliceShape::All => SliceShape::Empty,
            SliceShape::Finite => SliceShape::Cofinite,
            SliceShape::Cofinite => SliceShape::Finite,
        }
    }

    fn intersect(self, other: SliceShape) -> SliceShape {
        use SliceShape::*;
        match (self, other) {
            (Empty, _) | (_, Empty) => Empty,
            (All, x) | (x, All) => x,
            (Finite, _) | (_, Finite) => Finite,
            (Cofinite, Cofinite) => Cofinite,
        }
    }
}

/// Shape of the solution set of a two-pattern relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossKind {
    Empty,
    All,
    /// related iff t = s + offset
    Diag,
    /// related iff t >= s + c
    BandLower(i64),
    /// related iff t <= s + c
    BandUpper(i64),
    /// at most one t per s and one s per t
    Sparse,
    Other,
}

impl CrossKind {
    fn transpose(self) -> CrossKind {
        match self {
            CrossKind::BandLower(c) => CrossKind::BandUpper(-c),
            CrossKind::BandUpper(c) => CrossKind::BandLower(-c),
            other => other,
        }
    }
}

/// Classified relation {(t, s) : A(t) rel B(s)}: the shape of its t-slices
/// (fixed s), s-slices (fixed t), and the overall solution set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cross {
    pub t_slices: Option<SliceShape>,
    pub s_slices: Option<SliceShape>,
    pub kind: CrossKind,
}

impl Cross {
    fn uniform(shape: SliceShape, kind: CrossKind) -> Cross {
        Cross {
            t_slices: Some(shape),
            s_slices: Some(shape),
            kind,
        }
    }

    fn empty() -> Cross {
        Cross::uniform(SliceShape::Empty, CrossKind::Empty)
    }

    fn full() -> Cross {
        Cross::uniform(SliceShape::All, CrossKind::All)
    }

    fn transpose(self) -> Cross {
        Cross {
            t_slices: self.s_slices,
            s_slices: self.t_slices,
            kind: self.kind.transpose(),
        }
    }

    /// Slice-wise conjunction with a complement: {A rel1 B} minus {A rel2 B}.
    fn and_not(self, other: Cross) -> Cross {
        let combine = |a: Option<SliceShape>, b: Option<SliceShape>| -> Option<SliceShape> {
            Some(a?.intersect(b?.complement()))
        };
        Cross {
            t_slices: combine(self.t_slices, other.t_slices),
            s_slices: combine(self.s_slices, other.s_slices),
            kind: match (self.kind, other.kind) {
                (k, CrossKind::Empty) => k,
                (_, CrossKind::All) => CrossKind::Empty,
                (CrossKind::Empty, _) => CrossKind::Empty,
                // removing a disjoint band changes nothing
                (CrossKind::BandLower(c1), CrossKind::BandUpper(c2)) if c2 < c1 => {
                    CrossKind::BandLower(c1)
                }
                (CrossKind::BandUpper(c1), CrossKind::BandLower(c2)) if c1 < c2 => {
                    CrossKind::BandUpper(c1)
                }
                _ => CrossKind::Other,
            },
        }
    }
}

/// Normalized pattern view: a selector walk with at most one varying copy,
/// then an affine leaf.
struct NormPat {
    steps: Vec<PStep>,
    family: Option<Family>,
    index0: i64,
    step: i64,
}

enum PStep {
    Sel(Selector),
    Vary { copy0: u64, copy_step: u64 },
}

fn normalize(pat: &ElementPattern) -> NormPat {
    match pat {
        ElementPattern::Leaf {
            path,
            family,
            index0,
            step,
            ..
        } => NormPat {
            steps: path.iter().map(|&s| PStep::Sel(s)).collect(),
            family: *family,
            index0: *index0,
            step: *step,
        },
        ElementPattern::Copies {
            prefix,
            copy0,
            copy_step,
            suffix,
            family,
            index,
        } => {
            let mut steps: Vec<PStep> = prefix.iter().map(|&s| PStep::Sel(s)).collect();
            steps.push(PStep::Vary {
                copy0: *copy0,
                copy_step: *copy_step,
            });
            steps.extend(suffix.iter().map(|&s| PStep::Sel(s)));
            NormPat {
                steps,
                family: *family,
                index0: index.value(),
                step: 0,
            }
        }
        ElementPattern::Constant(e) => NormPat {
            steps: e.path.iter().map(|&s| PStep::Sel(s)).collect(),
            family: e.family,
            index0: e.index.value(),
            step: 0,
        },
    }
}

/// {t : i0 + step*t REL m} over natural t.
fn affine_vs_const(i0: i64, step: i64, m: i64, rel_le: bool) -> TSet {
    if rel_le {
        // i0 + step*t <= m
        match step.cmp(&0) {
            std::cmp::Ordering::Greater => {
                if i0 > m {
                    TSet::Empty
                } else {
                    TSet::UpTo(((m - i0) / step) as u64)
                }
            }
            std::cmp::Ordering::Equal => {
                if i0 <= m {
                    TSet::All
                } else {
                    TSet::Empty
                }
            }
            std::cmp::Ordering::Less => {
                if i0 <= m {
                    TSet::All
                } else {
                    // ceiling of (i0 - m) / (-step), both positive
                    TSet::From(((i0 - m + (-step) - 1) / (-step)) as u64)
                }
            }
        }
    } else {
        // i0 + step*t >= m
        affine_vs_const(-i0, -step, -m, true)
    }
}

/// {t : i0 + step*t = m}.
fn affine_eq_const(i0: i64, step: i64, m: i64) -> TSet {
    if step == 0 {
        if i0 == m {
            TSet::All
        } else {
            TSet::Empty
        }
    } else if (m - i0) % step == 0 && (m - i0) / step >= 0 {
        TSet::UpTo(((m - i0) / step) as u64)
    } else {
        TSet::Empty
    }
}

/// Leaf answer for {t : pat(t) <= c} (pat_below) or {t : c <= pat(t)}.
fn leaf_vs_point(
    gen: &Structure,
    pat: &NormPat,
    c: &ElementId,
    pat_below: bool,
) -> Option<TSet> {
    let (i0, s) = (pat.index0, pat.step);
    let m = c.index.value();
    let res = match gen {
        Structure::Omega => affine_vs_const(i0, s, m, pat_below),
        Structure::OmegaDual => affine_vs_const(i0, s, m, !pat_below),
        Structure::D1 | Structure::Zinf | Structure::Z2 => TSet::All,
        Structure::Dinf => affine_eq_const(i0, s, m),
        Structure::LadderWithChain => {
            let pf = pat.family?;
            let cf = c.family?;
            match (pf, cf, pat_below) {
                (Family::C, Family::C, below) => affine_vs_const(i0, s, m, below),
                (Family::C, _, true) | (_, Family::C, false) => TSet::Empty,
                (Family::C, _, false) | (_, Family::C, true) => TSet::All,
                // ladder: below iff same family and equal, or strictly deeper
                (pf, cf, true) => {
                    let strict = affine_vs_const(i0, s, m + 1, false);
                    if pf == cf {
                        strict.union(affine_eq_const(i0, s, m))
                    } else {
                        strict
                    }
                }
                (pf, cf, false) => {
                    let strict = affine_vs_const(i0, s, m - 1, true);
                    if pf == cf {
                        strict.union(affine_eq_const(i0, s, m))
                    } else {
                        strict
                    }
                }
            }
        }
        Structure::FanWithChain => {
            let pf = pat.family?;
            let cf = c.family?;
            match (pf, cf, pat_below) {
                (Family::A, Family::A, _) => affine_eq_const(i0, s, m),
                (Family::A, Family::C, true) => affine_vs_const(i0, s, m, true),
                (Family::A, Family::C, false) => TSet::Empty,
                (Family::C, Family::A, true) => TSet::Empty,
                (Family::C, Family::A, false) => affine_vs_const(i0, s, m, false),
                (Family::C, Family::C, below) => affine_vs_const(i0, s, m, below),
                _ => return None,
            }
        }
        Structure::TwoLevelGrid => {
            let pf = pat.family?;
            let cf = c.family?;
            match (pf, cf, pat_below) {
                (Family::A, Family::A, _) | (Family::B, Family::B, _) => {
                    affine_eq_const(i0, s, m)
                }
                (Family::A, Family::B, true) | (Family::B, Family::A, false) => {
                    // a_i related to b_j unless i <= 0 and j = i; the other
                    // index here is m
                    let exception = if pat_below {
                        // pat is the a-side: excluded t has i(t) = m <= 0
                        if m <= 0 {
                            affine_eq_const(i0, s, m)
                        } else {
                            TSet::Empty
                        }
                    } else {
                        // pat is the b-side: excluded t has i(t) = m and m... the
                        // a-index is m, excluded iff m <= 0 and i(t) = m
                        if m <= 0 {
                            affine_eq_const(i0, s, m)
                        } else {
                            TSet::Empty
                        }
                    };
                    exception.complement()
                }
                (Family::B, Family::A, true) | (Family::A, Family::B, false) => TSet::Empty,
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(res)
}

/// The set {t : pattern(t) <= c} (pat_below = true) or {t : c <= pattern(t)}
/// computed exactly against the structure tree; `None` when the structure or
/// pattern is not recognized (opaque leaves, mismatched addresses).
pub fn pattern_vs_point(
    p: &Presentation,
    pat: &ElementPattern,
    c: &ElementId,
    pat_below: bool,
) -> Option<TSet> {
    let np = normalize(pat);
    walk_point(p, p.structure(), &np, 0, c, 0, false, pat_below)
}

#[allow(clippy::too_many_arguments)]
fn walk_point(
    p: &Presentation,
    s: &Structure,
    pat: &NormPat,
    pd: usize,
    c: &ElementId,
    cd: usize,
    flip: bool,
    pat_below: bool,
) -> Option<TSet> {
    match s {
        Structure::Dual(inner) => walk_point(p, inner, pat, pd, c, cd, !flip, pat_below),
        Structure::DisjointUnion(l, r) | Structure::LinearSum(l, r) => {
            let pside = match pat.steps.get(pd)? {
                PStep::Sel(sel) => *sel,
                PStep::Vary { .. } => return None,
            };
            let cside = *c.path.get(cd)?;
            if pside == cside {
                let child = if pside == Selector::Left { l } else { r };
                return walk_point(p, child, pat, pd + 1, c, cd + 1, flip, pat_below);
            }
            if matches!(s, Structure::DisjointUnion(..)) {
                return Some(TSet::Empty);
            }
            // linear sum: left below right in node orientation
            let (xside, yside) = if pat_below { (pside, cside) } else { (cside, pside) };
            let holds = match (xside, yside) {
                (Selector::Left, Selector::Right) => !flip,
                (Selector::Right, Selector::Left) => flip,
                _ => return None,
            };
            Some(if holds { TSet::All } else { TSet::Empty })
        }
        Structure::InfiniteUnion(inner) => {
            let ccopy = match c.path.get(cd)? {
                Selector::Copy(m) => *m,
                _ => return None,
            };
            match pat.steps.get(pd)? {
                PStep::Sel(Selector::Copy(i)) => {
                    if *i == ccopy {
                        walk_point(p, inner, pat, pd + 1, c, cd + 1, flip, pat_below)
                    } else {
                        Some(TSet::Empty)
                    }
                }
                PStep::Sel(_) => None,
                PStep::Vary { copy0, copy_step } => {
                    // copies match for at most one t; evaluate that element
                    if ccopy < *copy0 || (ccopy - copy0) % copy_step != 0 {
                        return Some(TSet::Empty);
                    }
                    let t = (ccopy - copy0) / copy_step;
                    // evaluate the single candidate concretely; the full
                    // presentation leq already accounts for dual nesting
                    let el = rebuild_at(pat, t);
                    let holds = if pat_below {
                        p.leq(&el, c)
                    } else {
                        p.leq(c, &el)
                    };
                    Some(if holds { TSet::UpTo(t) } else { TSet::Empty })
                }
            }
        }
        leaf => leaf_vs_point(leaf, pat, c, pat_below ^ flip),
    }
}

/// Reconstruct the concrete element of a pattern at tail position t.
fn rebuild_at(pat: &NormPat, t: u64) -> ElementId {
    let mut path = Vec::with_capacity(pat.steps.len());
    for step in &pat.steps {
        match step {
            PStep::Sel(sel) => path.push(*sel),
            PStep::Vary { copy0, copy_step } => {
                path.push(Selector::Copy(copy0 + copy_step * t))
            }
        }
    }
    let idx = pat.index0 + pat.step * t as i64;
    ElementId {
        path,
        family: pat.family,
        index: if idx >= 0 && pat.step >= 0 && pat.index0 >= 0 {
            crate::order::CarrierIndex::Nat(idx as u64)
        } else {
            crate::order::CarrierIndex::Int(idx)
        },
    }
}

/// Strictly-below and incomparability sets, derived from the two one-sided
/// queries with sound set algebra.
pub fn pattern_vs_point_strict(
    p: &Presentation,
    pat: &ElementPattern,
    c: &ElementId,
    pat_below: bool,
) -> Option<TSet> {
    let le = pattern_vs_point(p, pat, c, pat_below)?;
    let ge = pattern_vs_point(p, pat, c, !pat_below)?;
    Some(le.intersect(ge.complement()))
}

pub fn pattern_vs_point_incomparable(
    p: &Presentation,
    pat: &ElementPattern,
    c: &ElementId,
) -> Option<TSet> {
    let le = pattern_vs_point(p, pat, c, true)?;
    let ge = pattern_vs_point(p, pat, c, false)?;
    Some(le.complement().intersect(ge.complement()))
}

/// {(t, s) : a0 + sa*t <= b0 + sb*s} over natural (t, s).
fn linear_le_cross(a0: i64, sa: i64, b0: i64, sb: i64) -> Cross {
    use SliceShape::*;
    let t_slices = match (sa.cmp(&0), sb.cmp(&0)) {
        (std::cmp::Ordering::Greater, _) => Some(Finite),
        (std::cmp::Ordering::Less, _) => Some(Cofinite),
        (std::cmp::Ordering::Equal, std::cmp::Ordering::Equal) => {
            Some(if a0 <= b0 { All } else { Empty })
        }
        _ => None,
    };
    let s_slices = match (sb.cmp(&0), sa.cmp(&0)) {
        (std::cmp::Ordering::Greater, _) => Some(Cofinite),
        (std::cmp::Ordering::Less, _) => Some(Finite),
        (std::cmp::Ordering::Equal, std::cmp::Ordering::Equal) => {
            Some(if a0 <= b0 { All } else { Empty })
        }
        _ => None,
    };
    let kind = if sa == sb && sa > 0 {
        CrossKind::BandUpper((b0 - a0).div_euclid(sa))
    } else if sa == sb && sa < 0 {
        CrossKind::BandLower(-((b0 - a0).div_euclid(sa)))
    } else if sa > 0 && sb < 0 || sa < 0 && sb > 0 {
        CrossKind::Other
    } else {
        CrossKind::Other
    };
    Cross {
        t_slices,
        s_slices,
        kind,
    }
}

/// {(t, s) : i(t) = j(s)}.
fn linear_eq_cross(a0: i64, sa: i64, b0: i64, sb: i64) -> Cross {
    if sa == 0 && sb == 0 {
        return if a0 == b0 { Cross::full() } else { Cross::empty() };
    }
    if sa != 0 && sb != 0 {
        let kind = if sa == sb {
            if (b0 - a0) % sa == 0 && (b0 - a0) / sa >= i64::MIN {
                CrossKind::Diag
            } else {
                CrossKind::Empty
            }
        } else {
            CrossKind::Sparse
        };
        return Cross {
            t_slices: Some(SliceShape::Finite),
            s_slices: Some(SliceShape::Finite),
            kind,
        };
    }
    // one side constant: slices are not uniform
    Cross {
        t_slices: if sa != 0 { Some(SliceShape::Finite) } else { None },
        s_slices: if sb != 0 { Some(SliceShape::Finite) } else { None },
        kind: CrossKind::Other,
    }
}

fn leaf_cross_le(gen: &Structure, a: &NormPat, b: &NormPat) -> Option<Cross> {
    let (a0, sa) = (a.index0, a.step);
    let (b0, sb) = (b.index0, b.step);
    let res = match gen {
        Structure::Omega => linear_le_cross(a0, sa, b0, sb),
        Structure::OmegaDual => linear_le_cross(b0, sb, a0, sa).transpose(),
        Structure::D1 | Structure::Zinf | Structure::Z2 => Cross::full(),
        Structure::Dinf => linear_eq_cross(a0, sa, b0, sb),
        Structure::LadderWithChain => {
            let (fa, fb) = (a.family?, b.family?);
            match (fa, fb) {
                (Family::C, Family::C) => linear_le_cross(a0, sa, b0, sb),
                (Family::C, _) => Cross::empty(),
                (_, Family::C) => Cross::full(),
                (fa, fb) => {
                    // below iff deeper: i(t) >= j(s) + delta
                    let delta = if fa == fb { 0 } else { 1 };
                    linear_le_cross(b0 + delta, sb, a0, sa).transpose()
                }
            }
        }
        Structure::FanWithChain => {
            let (fa, fb) = (a.family?, b.family?);
            match (fa, fb) {
                (Family::A, Family::A) => linear_eq_cross(a0, sa, b0, sb),
                (Family::A, Family::C) => linear_le_cross(a0, sa, b0, sb),
                (Family::C, Family::C) => linear_le_cross(a0, sa, b0, sb),
                (Family::C, Family::A) => Cross::empty(),
                _ => return None,
            }
        }
        Structure::TwoLevelGrid => {
            let (fa, fb) = (a.family?, b.family?);
            match (fa, fb) {
                (Family::A, Family::A) | (Family::B, Family::B) => {
                    linear_eq_cross(a0, sa, b0, sb)
                }
                (Family::B, Family::A) => Cross::empty(),
                (Family::A, Family::B) => {
                    // exception set {i(t) = j(s) <= 0} is sparse or a
                    // half-diagonal; slices of the relation stay cofinite
                    Cross {
                        t_slices: Some(SliceShape::Cofinite),
                        s_slices: Some(SliceShape::Cofinite),
                        kind: CrossKind::Other,
                    }
                }
                _ => return None,
            }
        }
        _ => return None,
    };
    Some(res)
}

/// Classified relation {(t, s) : A(t) <= B(s)} against the structure tree.
pub fn pattern_cross_le(
    p: &Presentation,
    pa: &ElementPattern,
    pb: &ElementPattern,
) -> Option<Cross> {
    let na = normalize(pa);
    let nb = normalize(pb);
    walk_cross(p, p.structure(), &na, 0, &nb, 0, false)
}

#[allow(clippy::too_many_arguments)]
fn walk_cross(
    p: &Presentation,
    s: &Structure,
    a: &NormPat,
    ad: usize,
    b: &NormPat,
    bd: usize,
    flip: bool,
) -> Option<Cross> {
    match s {
        Structure::Dual(inner) => walk_cross(p, inner, a, ad, b, bd, !flip),
        Structure::DisjointUnion(l, r) | Structure::LinearSum(l, r) => {
            let aside = match a.steps.get(ad)? {
                PStep::Sel(sel) => *sel,
                PStep::Vary { .. } => return None,
            };
            let bside = match b.steps.get(bd)? {
                PStep::Sel(sel) => *sel,
                PStep::Vary { .. } => return None,
            };
            if aside == bside {
                let child = if aside == Selector::Left { l } else { r };
                return walk_cross(p, child, a, ad + 1, b, bd + 1, flip);
            }
            if matches!(s, Structure::DisjointUnion(..)) {
                return Some(Cross::empty());
            }
            let holds = match (aside, bside) {
                (Selector::Left, Selector::Right) => !flip,
                (Selector::Right, Selector::Left) => flip,
                _ => return None,
            };
            Some(if holds { Cross::full() } else { Cross::empty() })
        }
        Structure::InfiniteUnion(inner) => {
            match (a.steps.get(ad)?, b.steps.get(bd)?) {
                (PStep::Sel(Selector::Copy(i)), PStep::Sel(Selector::Copy(j))) => {
                    if i == j {
                        walk_cross(p, inner, a, ad + 1, b, bd + 1, flip)
                    } else {
                        Some(Cross::empty())
                    }
                }
                (
                    PStep::Vary {
                        copy0: ca,
                        copy_step: da,
                    },
                    PStep::Vary {
                        copy0: cb,
                        copy_step: db,
                    },
                ) => {
                    // equal copies: ca + da*t = cb + db*s; find one aligned
                    // pair to probe the inner relation
                    let mut aligned = None;
                    for t in 0..4 * (*da + *db) {
                        let c = ca + da * t;
                        if c >= *cb && (c - cb) % db == 0 {
                            aligned = Some((t, (c - cb) / db));
                            break;
                        }
                    }
                    match aligned {
                        None => Some(Cross::empty()),
                        Some((t0, s0)) => {
                            let ea = rebuild_at(a, t0);
                            let eb = rebuild_at(b, s0);
                            let related = p.leq(&ea, &eb);
                            if !related {
                                return Some(Cross::empty());
                            }
                            let kind = if da == db {
                                CrossKind::Diag
                            } else {
                                CrossKind::Sparse
                            };
                            Some(Cross {
                                t_slices: Some(SliceShape::Finite),
                                s_slices: Some(SliceShape::Finite),
                                kind,
                            })
                        }
                    }
                }
                _ => None,
            }
        }
        leaf => {
            if flip {
                leaf_cross_le(leaf, b, a).map(Cross::transpose)
            } else {
                leaf_cross_le(leaf, a, b)
            }
        }
    }
}

/// Strict cross relation {(t, s) : A(t) < B(s)}.
pub fn pattern_cross_strict(
    p: &Presentation,
    pa: &ElementPattern,
    pb: &ElementPattern,
) -> Option<Cross> {
    let le = pattern_cross_le(p, pa, pb)?;
    let ge = pattern_cross_le(p, pb, pa)?.transpose();
    Some(le.and_not(ge))
}

/// Cross incomparability {(t, s) : A(t) and B(s) unrelated}.
pub fn pattern_cross_incomparable(
    p: &Presentation,
    pa: &ElementPattern,
    pb: &ElementPattern,
) -> Option<Cross> {
    let le = pattern_cross_le(p, pa, pb)?;
    let ge = pattern_cross_le(p, pb, pa)?.transpose();
    let full = Cross::full();
    Some(full.and_not(le).and_not(ge))
}

/// Self-comparability of a pattern: what structure the stream it describes
/// forms on its own.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelfShape {
    /// strictly ascending in t
    ChainAsc,
    /// strictly descending in t
    ChainDesc,
    Antichain,
    /// all pairs mutually comparable
    Cluster,
}

pub fn pattern_self_shape(p: &Presentation, pat: &ElementPattern) -> Option<SelfShape> {
    let np = normalize(pat);
    walk_self(p.structure(), &np, 0, false)
}

fn walk_self(s: &Structure, pat: &NormPat, pd: usize, flip: bool) -> Option<SelfShape> {
    match s {
        Structure::Dual(inner) => walk_self(inner, pat, pd, !flip),
        Structure::DisjointUnion(l, r) | Structure::LinearSum(l, r) => {
            match pat.steps.get(pd)? {
                PStep::Sel(Selector::Left) => walk_self(l, pat, pd + 1, flip),
                PStep::Sel(Selector::Right) => walk_self(r, pat, pd + 1, flip),
                _ => None,
            }
        }
        Structure::InfiniteUnion(inner) => match pat.steps.get(pd)? {
            PStep::Sel(Selector::Copy(_)) => walk_self(inner, pat, pd + 1, flip),
            PStep::Vary { copy_step, .. } if *copy_step > 0 => Some(SelfShape::Antichain),
            _ => None,
        },
        leaf => {
            let step = pat.step;
            let asc = |cond: bool| {
                Some(if cond ^ flip {
                    SelfShape::ChainAsc
                } else {
                    SelfShape::ChainDesc
                })
            };
            match leaf {
                Structure::Omega => {
                    if step == 0 {
                        None
                    } else {
                        asc(step > 0)
                    }
                }
                Structure::OmegaDual => {
                    if step == 0 {
                        None
                    } else {
                        asc(step < 0)
                    }
                }
                Structure::Dinf => Some(SelfShape::Antichain),
                Structure::Zinf | Structure::Z2 => Some(SelfShape::Cluster),
                Structure::LadderWithChain => match pat.family? {
                    Family::C => {
                        if step == 0 {
                            None
                        } else {
                            asc(step > 0)
                        }
                    }
                    // deeper index is lower
                    _ => {
                        if step == 0 {
                            None
                        } else {
                            asc(step < 0)
                        }
                    }
                },
                Structure::FanWithChain => match pat.family? {
                    Family::A => Some(SelfShape::Antichain),
                    Family::C => {
                        if step == 0 {
                            None
                        } else {
                            asc(step > 0)
                        }
                    }
                    _ => None,
                },
                Structure::TwoLevelGrid => Some(SelfShape::Antichain),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{forbidden, witness, ForbiddenKind};
    use crate::extract::streams::{Orbit, Stream};
    use crate::order::ElementId;

    fn k(s: &str) -> ForbiddenKind {
        s.parse().unwrap()
    }

    #[test]
    fn tail_of_f4_antichain_is_below_chain_elements() {
        let p = forbidden(k("F4"));
        let w = witness(k("F4"));
        // backward orbit of a_1 stays in the antichain
        let orbit = Orbit::new(w.map.clone(), ElementId::nat(1).under(Selector::Left));
        let bwd = Stream::backward_from(orbit, 0, "bwd");
        let (_, pat) = bwd.tail_pattern().unwrap();
        let c0 = ElementId::nat(0).under(Selector::Right);
        assert_eq!(pattern_vs_point(&p, &pat, &c0, true), Some(TSet::All));
        assert_eq!(pattern_vs_point(&p, &pat, &c0, false), Some(TSet::Empty));
        assert_eq!(
            pattern_vs_point_incomparable(&p, &pat, &c0),
            Some(TSet::Empty)
        );
    }

    #[test]
    fn f1_cross_components_are_incomparable() {
        let p = forbidden(k("F1"));
        let w = witness(k("F1"));
        let orbit = Orbit::new(w.map.clone(), ElementId::nat(0).under(Selector::Left));
        let bwd = Stream::backward_from(orbit, 1, "bwd");
        let (_, pat) = bwd.tail_pattern().unwrap();
        let c3 = ElementId::nat(3).under(Selector::Right);
        assert_eq!(
            pattern_vs_point_incomparable(&p, &pat, &c3),
            Some(TSet::All)
        );
    }

    #[test]
    fn f8_below_sets_are_finite_per_slice() {
        let p = forbidden(k("F8"));
        let w = witness(k("F8"));
        let a0 = ElementId::int(0).in_family(Family::A);
        let b0 = ElementId::int(0).in_family(Family::B);
        let va = Orbit::new(w.map.clone(), a0);
        let ub = Orbit::new(w.map.clone(), b0);
        let a_fwd = Stream::forward(va, "a").tail_pattern().unwrap().1;
        let b_fwd = Stream::forward(ub, "b").tail_pattern().unwrap().1;
        // strictly-below relation of the a-stream under the b-stream:
        // cofinite slices both ways
        let cross = pattern_cross_strict(&p, &a_fwd, &b_fwd).unwrap();
        assert_eq!(cross.t_slices, Some(SliceShape::Cofinite));
        // incomparability: finite slices
        let inc = pattern_cross_incomparable(&p, &a_fwd, &b_fwd).unwrap();
        assert!(inc.t_slices.unwrap().all_finite());
        assert!(inc.s_slices.unwrap().all_finite());
    }

    #[test]
    fn ladder_columns_form_bands() {
        let p = forbidden(k("F6"));
        let w = witness(k("F6"));
        let a0 = ElementId::nat(0).in_family(Family::A);
        let b0 = ElementId::nat(0).in_family(Family::B);
        let ua = Orbit::new(w.map.clone(), a0);
        let vb = Orbit::new(w.map.clone(), b0);
        let a_bwd = Stream::backward_from(ua, 0, "a").tail_pattern().unwrap().1;
        let b_bwd = Stream::backward_from(vb, 0, "b").tail_pattern().unwrap().1;
        let cross = pattern_cross_strict(&p, &a_bwd, &b_bwd).unwrap();
        assert!(matches!(cross.kind, CrossKind::BandLower(1)), "{cross:?}");
    }

    #[test]
    fn self_shapes_recognized() {
        let f1 = forbidden(k("F1"));
        let w1 = witness(k("F1"));
        let a1 = Orbit::new(w1.map.clone(), ElementId::nat(1).under(Selector::Left));
        let bwd = Stream::backward_from(a1.clone(), 0, "bwd")
            .tail_pattern()
            .unwrap()
            .1;
        assert_eq!(pattern_self_shape(&f1, &bwd), Some(SelfShape::Antichain));
        let fwd = Stream::forward(a1, "fwd").tail_pattern().unwrap().1;
        assert_eq!(pattern_self_shape(&f1, &fwd), Some(SelfShape::ChainAsc));

        let g3 = forbidden(k("G3"));
        let w3 = witness(k("G3"));
        let z = Orbit::new(w3.map.clone(), ElementId::nat(0).under(Selector::Left));
        let zp = Stream::forward(z, "z").tail_pattern().unwrap().1;
        assert_eq!(pattern_self_shape(&g3, &zp), Some(SelfShape::Cluster));
    }
}
