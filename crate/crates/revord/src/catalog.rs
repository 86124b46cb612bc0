//! The curated catalog of order structures that obstruct hereditary
//! reversibility: eight posets, four preorders, and their duals, each paired
//! with an order preserving bijection that is provably no automorphism.
//!
//! Witness maps were derived by hand and are validated exhaustively on
//! windows; each ships with a closed-form orbit description so the
//! extraction oracle can answer infinitude queries exactly.

use crate::maps::{ElementPattern, OrbitShape, SelfMap, TailSpec};
use crate::order::{
    CarrierIndex, ElementId, Family, Presentation, Selector, Structure,
};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Base name of a forbidden structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForbiddenFamily {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    G1,
    G2,
    G3,
    G4,
}

impl ForbiddenFamily {
    pub const ALL: [ForbiddenFamily; 12] = [
        ForbiddenFamily::F1,
        ForbiddenFamily::F2,
        ForbiddenFamily::F3,
        ForbiddenFamily::F4,
        ForbiddenFamily::F5,
        ForbiddenFamily::F6,
        ForbiddenFamily::F7,
        ForbiddenFamily::F8,
        ForbiddenFamily::G1,
        ForbiddenFamily::G2,
        ForbiddenFamily::G3,
        ForbiddenFamily::G4,
    ];

    /// Preorders (clusters allowed) rather than posets.
    pub fn is_preorder(self) -> bool {
        matches!(
            self,
            ForbiddenFamily::G1 | ForbiddenFamily::G2 | ForbiddenFamily::G3 | ForbiddenFamily::G4
        )
    }

    /// Structures isomorphic to their own dual.
    pub fn is_self_dual(self) -> bool {
        matches!(self, ForbiddenFamily::F3 | ForbiddenFamily::F8)
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ForbiddenFamily::F1 => "F1",
            ForbiddenFamily::F2 => "F2",
            ForbiddenFamily::F3 => "F3",
            ForbiddenFamily::F4 => "F4",
            ForbiddenFamily::F5 => "F5",
            ForbiddenFamily::F6 => "F6",
            ForbiddenFamily::F7 => "F7",
            ForbiddenFamily::F8 => "F8",
            ForbiddenFamily::G1 => "G1",
            ForbiddenFamily::G2 => "G2",
            ForbiddenFamily::G3 => "G3",
            ForbiddenFamily::G4 => "G4",
        };
        write!(f, "{s}")
    }
}

/// A catalog entry: base family plus an optional dualization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ForbiddenKind {
    pub family: ForbiddenFamily,
    pub dualized: bool,
}

impl ForbiddenKind {
    pub fn straight(family: ForbiddenFamily) -> Self {
        ForbiddenKind {
            family,
            dualized: false,
        }
    }

    pub fn dual_of(family: ForbiddenFamily) -> Self {
        ForbiddenKind {
            family,
            dualized: true,
        }
    }

    /// The entry for the reversed order.
    pub fn dual(self) -> Self {
        ForbiddenKind {
            family: self.family,
            dualized: !self.dualized,
        }
    }

    /// All 24 addressable keys (F3d and F8d are isomorphic duplicates of
    /// their straight forms but remain addressable).
    pub fn all() -> Vec<ForbiddenKind> {
        ForbiddenFamily::ALL
            .iter()
            .flat_map(|&f| [ForbiddenKind::straight(f), ForbiddenKind::dual_of(f)])
            .collect()
    }

    /// The 22 pairwise non-isomorphic forms: 14 posets (self-dual families
    /// counted once) and 8 preorders.
    pub fn canonical() -> Vec<ForbiddenKind> {
        ForbiddenKind::all()
            .into_iter()
            .filter(|k| !(k.dualized && k.family.is_self_dual()))
            .collect()
    }
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, if self.dualized { "d" } else { "" })
    }
}

impl FromStr for ForbiddenKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (base, dualized) = match s.strip_suffix('d') {
            Some(b) => (b, true),
            None => (s, false),
        };
        let family = match base {
            "F1" => ForbiddenFamily::F1,
            "F2" => ForbiddenFamily::F2,
            "F3" => ForbiddenFamily::F3,
            "F4" => ForbiddenFamily::F4,
            "F5" => ForbiddenFamily::F5,
            "F6" => ForbiddenFamily::F6,
            "F7" => ForbiddenFamily::F7,
            "F8" => ForbiddenFamily::F8,
            "G1" => ForbiddenFamily::G1,
            "G2" => ForbiddenFamily::G2,
            "G3" => ForbiddenFamily::G3,
            "G4" => ForbiddenFamily::G4,
            _ => return Err(format!("unknown catalog key {s:?}")),
        };
        Ok(ForbiddenKind { family, dualized })
    }
}

impl Serialize for ForbiddenKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ForbiddenKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The canonical presentation of a catalog entry.
pub fn forbidden(kind: ForbiddenKind) -> Presentation {
    let base = match kind.family {
        // antichain beside a chain
        ForbiddenFamily::F1 => Presentation::dinf().disjoint_union(&Presentation::omega()),
        // a point under an antichain, beside a free antichain
        ForbiddenFamily::F2 => Presentation::d1()
            .linear_sum(&Presentation::dinf())
            .disjoint_union(&Presentation::dinf()),
        // antichain beside infinitely many two-element chains
        ForbiddenFamily::F3 => Presentation::dinf().disjoint_union(
            &Presentation::d1()
                .linear_sum(&Presentation::d1())
                .infinite_disjoint_union(),
        ),
        // antichain under a chain
        ForbiddenFamily::F4 => Presentation::dinf().linear_sum(&Presentation::omega()),
        // a point beside a descending chain, under an ascending chain
        ForbiddenFamily::F5 => Presentation::d1()
            .disjoint_union(&Presentation::omega_dual())
            .linear_sum(&Presentation::omega()),
        ForbiddenFamily::F6 => Presentation::new(Structure::LadderWithChain),
        ForbiddenFamily::F7 => Presentation::new(Structure::FanWithChain),
        ForbiddenFamily::F8 => Presentation::new(Structure::TwoLevelGrid),
        ForbiddenFamily::G1 => Presentation::zinf().linear_sum(&Presentation::dinf()),
        ForbiddenFamily::G2 => Presentation::zinf().disjoint_union(&Presentation::dinf()),
        ForbiddenFamily::G3 => Presentation::zinf().linear_sum(&Presentation::omega()),
        ForbiddenFamily::G4 => Presentation::dinf()
            .disjoint_union(&Presentation::z2().infinite_disjoint_union()),
    };
    if kind.dualized {
        base.dual()
    } else {
        base
    }
}

/// A witness of non-reversibility: an order preserving bijection together
/// with a pair (u, v) such that u is not below v while the images are.
#[derive(Debug, Clone)]
pub struct WitnessPackage {
    pub kind: ForbiddenKind,
    pub map: SelfMap,
    pub pair: (ElementId, ElementId),
}

fn under(sel: Selector, n: u64) -> ElementId {
    ElementId::nat(n).under(sel)
}

fn under2(a: Selector, b: Selector, n: u64) -> ElementId {
    ElementId::nat(n).under(b).under(a)
}

fn nat_of(x: &ElementId) -> u64 {
    match x.index {
        CarrierIndex::Nat(n) => n,
        CarrierIndex::Int(_) => panic!("expected natural index in {x}"),
    }
}

fn leaf_tail(path: &[Selector], family: Option<Family>, from: u64, index0: i64, step: i64) -> TailSpec {
    TailSpec {
        from,
        pattern: ElementPattern::Leaf {
            path: path.to_vec(),
            family,
            index0,
            step,
            nat: true,
        },
    }
}

fn int_tail(family: Family, from: u64, index0: i64, step: i64) -> TailSpec {
    TailSpec {
        from,
        pattern: ElementPattern::Leaf {
            path: Vec::new(),
            family: Some(family),
            index0,
            step,
            nat: false,
        },
    }
}

fn copies_tail(
    prefix: &[Selector],
    from: u64,
    copy0: u64,
    suffix: &[Selector],
    index: u64,
) -> TailSpec {
    TailSpec {
        from,
        pattern: ElementPattern::Copies {
            prefix: prefix.to_vec(),
            copy0,
            copy_step: 1,
            suffix: suffix.to_vec(),
            family: None,
            index: CarrierIndex::Nat(index),
        },
    }
}

fn const_tail(x: &ElementId) -> TailSpec {
    TailSpec {
        from: 0,
        pattern: ElementPattern::Constant(x.clone()),
    }
}

use Selector::{Left, Right};

/// Shared shape of the maps that absorb the head of one natural-indexed
/// family into the head of another and shift both: `lo_0 -> hi_0`,
/// `lo_{n+1} -> lo_n`, `hi_n -> hi_{n+1}` (paths given per catalog entry).
fn absorb_map(lo: &'static [Selector], hi: &'static [Selector]) -> SelfMap {
    let fwd = move |x: &ElementId| -> ElementId {
        let n = nat_of(x);
        if x.path == lo {
            if n == 0 {
                ElementId::nat(0).under_path(hi)
            } else {
                ElementId::nat(n - 1).under_path(lo)
            }
        } else if x.path == hi {
            ElementId::nat(n + 1).under_path(hi)
        } else {
            x.clone()
        }
    };
    let inv = move |x: &ElementId| -> ElementId {
        let n = nat_of(x);
        if x.path == hi {
            if n == 0 {
                ElementId::nat(0).under_path(lo)
            } else {
                ElementId::nat(n - 1).under_path(hi)
            }
        } else if x.path == lo {
            ElementId::nat(n + 1).under_path(lo)
        } else {
            x.clone()
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        let n = nat_of(x);
        if x.path == lo {
            Some(OrbitShape {
                forward: leaf_tail(hi, None, n + 1, 0, 1),
                backward: leaf_tail(lo, None, 0, n as i64, 1),
            })
        } else if x.path == hi {
            Some(OrbitShape {
                forward: leaf_tail(hi, None, 0, n as i64, 1),
                backward: leaf_tail(lo, None, n + 1, 0, 1),
            })
        } else {
            Some(OrbitShape {
                forward: const_tail(x),
                backward: const_tail(x),
            })
        }
    };
    SelfMap::new(fwd, inv, 1).with_orbit_shape(shape)
}

const PATH_L: &[Selector] = &[Left];
const PATH_R: &[Selector] = &[Right];
const PATH_LL: &[Selector] = &[Left, Left];
const PATH_LR: &[Selector] = &[Left, Right];

fn witness_f1() -> WitnessPackage {
    // a_0 -> c_0, a_{n+1} -> a_n, c_n -> c_{n+1}
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F1),
        map: absorb_map(PATH_L, PATH_R),
        pair: (under(Left, 0), under(Right, 0)),
    }
}

fn witness_f2() -> WitnessPackage {
    // p fixed, y_0 -> x_0, y_{n+1} -> y_n, x_n -> x_{n+1}
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F2),
        map: absorb_map(PATH_R, PATH_LR),
        pair: (under2(Left, Left, 0), under(Right, 0)),
    }
}

fn witness_f3() -> WitnessPackage {
    // a_0 -> bottom_0, a_1 -> top_0, a_{n+2} -> a_n, copies shift up
    let copy_el = |i: u64, side: Selector| {
        ElementId::nat(0)
            .under(side)
            .under(Selector::Copy(i))
            .under(Right)
    };
    let fwd = move |x: &ElementId| -> ElementId {
        match x.path.as_slice() {
            [Left] => {
                let n = nat_of(x);
                match n {
                    0 => copy_el(0, Left),
                    1 => copy_el(0, Right),
                    _ => under(Left, n - 2),
                }
            }
            [Right, Selector::Copy(i), side] => copy_el(i + 1, *side),
            _ => panic!("not an element of F3: {x}"),
        }
    };
    let inv = move |x: &ElementId| -> ElementId {
        match x.path.as_slice() {
            [Left] => under(Left, nat_of(x) + 2),
            [Right, Selector::Copy(0), Left] => under(Left, 0),
            [Right, Selector::Copy(0), Right] => under(Left, 1),
            [Right, Selector::Copy(i), side] => copy_el(i - 1, *side),
            _ => panic!("not an element of F3: {x}"),
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        match x.path.as_slice() {
            [Left] => {
                let n = nat_of(x);
                let side = if n % 2 == 0 { Left } else { Right };
                Some(OrbitShape {
                    forward: copies_tail(&[Right], n / 2 + 1, 0, &[side], 0),
                    backward: leaf_tail(PATH_L, None, 0, n as i64, 2),
                })
            }
            [Right, Selector::Copy(i), side] => {
                let start = if *side == Left { 0 } else { 1 };
                Some(OrbitShape {
                    forward: copies_tail(&[Right], 0, *i, &[*side], 0),
                    backward: leaf_tail(PATH_L, None, *i + 1, start, 2),
                })
            }
            _ => None,
        }
    };
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F3),
        map: SelfMap::new(fwd, inv, 2).with_orbit_shape(shape),
        pair: (under(Left, 0), under(Left, 1)),
    }
}

fn witness_f4() -> WitnessPackage {
    // a_0 -> c_0, a_{n+1} -> a_n, c_n -> c_{n+1}
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F4),
        map: absorb_map(PATH_L, PATH_R),
        pair: (under(Left, 1), under(Left, 0)),
    }
}

fn witness_f5() -> WitnessPackage {
    // d fixed, b_0 -> c_0, b_{n+1} -> b_n, c_n -> c_{n+1}
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F5),
        map: absorb_map(PATH_LR, PATH_R),
        pair: (under2(Left, Left, 0), under2(Left, Right, 0)),
    }
}

fn witness_f6() -> WitnessPackage {
    // ladder shifts up a level, its top row absorbs into the chain:
    // a_0 -> c_1, b_0 -> c_0, a_{i+1} -> a_i, b_{i+1} -> b_i, c_n -> c_{n+2}
    let el = |f: Family, n: u64| ElementId::nat(n).in_family(f);
    let fwd = move |x: &ElementId| -> ElementId {
        let n = nat_of(x);
        match x.family {
            Some(Family::A) => {
                if n == 0 {
                    el(Family::C, 1)
                } else {
                    el(Family::A, n - 1)
                }
            }
            Some(Family::B) => {
                if n == 0 {
                    el(Family::C, 0)
                } else {
                    el(Family::B, n - 1)
                }
            }
            Some(Family::C) => el(Family::C, n + 2),
            None => panic!("not an element of F6: {x}"),
        }
    };
    let inv = move |x: &ElementId| -> ElementId {
        let n = nat_of(x);
        match x.family {
            Some(Family::A) => el(Family::A, n + 1),
            Some(Family::B) => el(Family::B, n + 1),
            Some(Family::C) => match n {
                0 => el(Family::B, 0),
                1 => el(Family::A, 0),
                _ => el(Family::C, n - 2),
            },
            None => panic!("not an element of F6: {x}"),
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        let n = nat_of(x);
        let chain_tail = |from: u64, index0: i64| TailSpec {
            from,
            pattern: ElementPattern::Leaf {
                path: Vec::new(),
                family: Some(Family::C),
                index0,
                step: 2,
                nat: true,
            },
        };
        let ladder_tail = |fam: Family, from: u64, index0: i64| TailSpec {
            from,
            pattern: ElementPattern::Leaf {
                path: Vec::new(),
                family: Some(fam),
                index0,
                step: 1,
                nat: true,
            },
        };
        match x.family {
            Some(Family::A) => Some(OrbitShape {
                forward: chain_tail(n + 1, 1),
                backward: ladder_tail(Family::A, 0, n as i64),
            }),
            Some(Family::B) => Some(OrbitShape {
                forward: chain_tail(n + 1, 0),
                backward: ladder_tail(Family::B, 0, n as i64),
            }),
            Some(Family::C) => {
                let steps_to_bottom = n / 2;
                let backward = if n % 2 == 0 {
                    ladder_tail(Family::B, steps_to_bottom + 1, 0)
                } else {
                    ladder_tail(Family::A, steps_to_bottom + 1, 0)
                };
                Some(OrbitShape {
                    forward: chain_tail(0, n as i64),
                    backward,
                })
            }
            None => None,
        }
    };
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F6),
        map: SelfMap::new(fwd, inv, 2).with_orbit_shape(shape),
        pair: (
            ElementId::nat(0).in_family(Family::B),
            ElementId::nat(0).in_family(Family::A),
        ),
    }
}

fn witness_f7() -> WitnessPackage {
    // a_0 -> c_0, a_{n+1} -> a_n, c_n -> c_{n+1}
    let el = |f: Family, n: u64| ElementId::nat(n).in_family(f);
    let fwd = move |x: &ElementId| -> ElementId {
        let n = nat_of(x);
        match x.family {
            Some(Family::A) => {
                if n == 0 {
                    el(Family::C, 0)
                } else {
                    el(Family::A, n - 1)
                }
            }
            Some(Family::C) => el(Family::C, n + 1),
            _ => panic!("not an element of F7: {x}"),
        }
    };
    let inv = move |x: &ElementId| -> ElementId {
        let n = nat_of(x);
        match x.family {
            Some(Family::C) => {
                if n == 0 {
                    el(Family::A, 0)
                } else {
                    el(Family::C, n - 1)
                }
            }
            Some(Family::A) => el(Family::A, n + 1),
            _ => panic!("not an element of F7: {x}"),
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        let n = nat_of(x);
        let tail = |fam: Family, from: u64, index0: i64| TailSpec {
            from,
            pattern: ElementPattern::Leaf {
                path: Vec::new(),
                family: Some(fam),
                index0,
                step: 1,
                nat: true,
            },
        };
        match x.family {
            Some(Family::A) => Some(OrbitShape {
                forward: tail(Family::C, n + 1, 0),
                backward: tail(Family::A, 0, n as i64),
            }),
            Some(Family::C) => Some(OrbitShape {
                forward: tail(Family::C, 0, n as i64),
                backward: tail(Family::A, n + 1, 0),
            }),
            _ => None,
        }
    };
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F7),
        map: SelfMap::new(fwd, inv, 1).with_orbit_shape(shape),
        pair: (el(Family::A, 1), el(Family::A, 0)),
    }
}

fn witness_f8() -> WitnessPackage {
    // both families shift one step up in index
    let shift = |delta: i64| {
        move |x: &ElementId| -> ElementId {
            match x.index {
                CarrierIndex::Int(i) => x.clone().with_index(CarrierIndex::Int(i + delta)),
                _ => panic!("not an element of F8: {x}"),
            }
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        let fam = x.family?;
        let i = x.index.value();
        Some(OrbitShape {
            forward: int_tail(fam, 0, i, 1),
            backward: int_tail(fam, 0, i, -1),
        })
    };
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::F8),
        map: SelfMap::new(shift(1), shift(-1), 1).with_orbit_shape(shape),
        pair: (
            ElementId::int(0).in_family(Family::A),
            ElementId::int(0).in_family(Family::B),
        ),
    }
}

fn witness_g1() -> WitnessPackage {
    // a_0 -> z_0, a_{n+1} -> a_n, z_n -> z_{n+1}
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::G1),
        map: absorb_map(PATH_R, PATH_L),
        pair: (under(Right, 0), under(Right, 1)),
    }
}

fn witness_g2() -> WitnessPackage {
    // same shape; the pair compares an antichain element with the cluster
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::G2),
        map: absorb_map(PATH_R, PATH_L),
        pair: (under(Right, 0), under(Left, 0)),
    }
}

fn witness_g3() -> WitnessPackage {
    // c_0 -> z_0, c_{n+1} -> c_n, z_n -> z_{n+1}
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::G3),
        map: absorb_map(PATH_R, PATH_L),
        pair: (under(Right, 0), under(Left, 0)),
    }
}

fn witness_g4() -> WitnessPackage {
    // a_0 -> cluster_0 low, a_1 -> cluster_0 high, a_{n+2} -> a_n, copies shift
    let copy_el = |i: u64, pos: u64| ElementId::nat(pos).under(Selector::Copy(i)).under(Right);
    let fwd = move |x: &ElementId| -> ElementId {
        match x.path.as_slice() {
            [Left] => {
                let n = nat_of(x);
                match n {
                    0 => copy_el(0, 0),
                    1 => copy_el(0, 1),
                    _ => under(Left, n - 2),
                }
            }
            [Right, Selector::Copy(i)] => copy_el(i + 1, nat_of(x)),
            _ => panic!("not an element of G4: {x}"),
        }
    };
    let inv = move |x: &ElementId| -> ElementId {
        match x.path.as_slice() {
            [Left] => under(Left, nat_of(x) + 2),
            [Right, Selector::Copy(0)] => under(Left, nat_of(x)),
            [Right, Selector::Copy(i)] => copy_el(i - 1, nat_of(x)),
            _ => panic!("not an element of G4: {x}"),
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        match x.path.as_slice() {
            [Left] => {
                let n = nat_of(x);
                Some(OrbitShape {
                    forward: copies_tail(&[Right], n / 2 + 1, 0, &[], n % 2),
                    backward: leaf_tail(PATH_L, None, 0, n as i64, 2),
                })
            }
            [Right, Selector::Copy(i)] => {
                let pos = nat_of(x);
                Some(OrbitShape {
                    forward: copies_tail(&[Right], 0, *i, &[], pos),
                    backward: leaf_tail(PATH_L, None, *i + 1, pos as i64, 2),
                })
            }
            _ => None,
        }
    };
    WitnessPackage {
        kind: ForbiddenKind::straight(ForbiddenFamily::G4),
        map: SelfMap::new(fwd, inv, 2).with_orbit_shape(shape),
        pair: (under(Left, 0), under(Left, 1)),
    }
}

/// The witness package for any catalog entry. Dual entries reuse the
/// straight map with the pair swapped: if u is not below v with comparable
/// images in P, then v is not below u in the dual, with the same images.
pub fn witness(kind: ForbiddenKind) -> WitnessPackage {
    let straight = match kind.family {
        ForbiddenFamily::F1 => witness_f1(),
        ForbiddenFamily::F2 => witness_f2(),
        ForbiddenFamily::F3 => witness_f3(),
        ForbiddenFamily::F4 => witness_f4(),
        ForbiddenFamily::F5 => witness_f5(),
        ForbiddenFamily::F6 => witness_f6(),
        ForbiddenFamily::F7 => witness_f7(),
        ForbiddenFamily::F8 => witness_f8(),
        ForbiddenFamily::G1 => witness_g1(),
        ForbiddenFamily::G2 => witness_g2(),
        ForbiddenFamily::G3 => witness_g3(),
        ForbiddenFamily::G4 => witness_g4(),
    };
    if kind.dualized {
        WitnessPackage {
            kind,
            map: straight.map,
            pair: (straight.pair.1, straight.pair.0),
        }
    } else {
        straight
    }
}

/// Explicit order isomorphism from a self-dual entry onto its dual
/// presentation, as a relabeling of elements: the two-element chains swap
/// their ends, the two-level grid swaps its families.
pub fn self_dual_relabeling(family: ForbiddenFamily) -> Option<impl Fn(&ElementId) -> ElementId> {
    if !family.is_self_dual() {
        return None;
    }
    let is_grid = family == ForbiddenFamily::F8;
    Some(move |x: &ElementId| -> ElementId {
        if is_grid {
            let fam = match x.family {
                Some(Family::A) => Family::B,
                Some(Family::B) => Family::A,
                _ => panic!("not an element of F8: {x}"),
            };
            x.clone().in_family(fam)
        } else {
            match x.path.as_slice() {
                [Left] => x.clone(),
                [Right, Selector::Copy(i), side] => {
                    let flipped = if *side == Left { Right } else { Left };
                    ElementId::nat(0)
                        .under(flipped)
                        .under(Selector::Copy(*i))
                        .under(Right)
                }
                _ => panic!("not an element of F3: {x}"),
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{
        check_witness_pair, inverse_consistent, is_order_preserving, non_automorphism_pair,
    };
    use crate::order::Window;

    #[test]
    fn twenty_two_canonical_forms() {
        assert_eq!(ForbiddenKind::all().len(), 24);
        let canon = ForbiddenKind::canonical();
        assert_eq!(canon.len(), 22);
        let posets = canon.iter().filter(|k| !k.family.is_preorder()).count();
        assert_eq!(posets, 14);
    }

    #[test]
    fn keys_roundtrip() {
        for kind in ForbiddenKind::all() {
            let key = kind.to_string();
            assert_eq!(key.parse::<ForbiddenKind>().unwrap(), kind);
        }
    }

    #[test]
    fn f8_relation_formula() {
        let p = forbidden("F8".parse().unwrap());
        let a = |i: i64| ElementId::int(i).in_family(Family::A);
        let b = |i: i64| ElementId::int(i).in_family(Family::B);
        assert!(p.leq(&a(1), &b(5)));
        assert!(!p.leq(&a(0), &b(0)));
        assert!(p.leq(&a(-3), &b(2)));
        assert!(!p.leq(&a(-3), &b(-3)));
        assert!(!p.leq(&b(2), &a(1)));
    }

    #[test]
    fn f2_is_point_under_antichain_beside_antichain() {
        let p = forbidden("F2".parse().unwrap());
        let point = ElementId::nat(0).under(Left).under(Left);
        let raised = |n| ElementId::nat(n).under(Right).under(Left);
        let free = |n| ElementId::nat(n).under(Right);
        assert!(p.leq(&point, &raised(4)));
        assert!(!p.leq(&point, &free(4)));
        assert!(!p.leq(&raised(0), &raised(1)));
    }

    #[test]
    fn g3_cluster_under_chain() {
        let p = forbidden("G3".parse().unwrap());
        let cluster4 = ElementId::nat(4).under(Left);
        let chain0 = ElementId::nat(0).under(Right);
        assert!(p.leq(&cluster4, &chain0));
        assert!(!p.leq(&chain0, &cluster4));
        assert!(p.is_preorder());
    }

    #[test]
    fn all_windows_satisfy_axioms() {
        for kind in ForbiddenKind::all() {
            let p = forbidden(kind);
            let w = Window::new(&p, 40);
            assert!(w.verify_axioms().is_ok(), "axioms fail for {kind}");
        }
    }

    #[test]
    fn witnesses_pass_window_checks() {
        for kind in ForbiddenKind::all() {
            let p = forbidden(kind);
            let w = witness(kind);
            assert!(
                is_order_preserving(&p, &w.map, 60).is_ok(),
                "{kind} map not order preserving"
            );
            assert!(
                inverse_consistent(&p, &w.map, 60).is_ok(),
                "{kind} map not bijective"
            );
            assert!(
                check_witness_pair(&p, &w.map, &w.pair).is_ok(),
                "{kind} pair fails"
            );
            assert!(
                non_automorphism_pair(&p, &w.map, 40).is_some(),
                "{kind} has no search witness"
            );
        }
    }

    #[test]
    fn identity_is_never_a_witness() {
        for kind in ForbiddenKind::canonical() {
            let p = forbidden(kind);
            assert_eq!(
                non_automorphism_pair(&p, &SelfMap::identity(), 30),
                None,
                "{kind}"
            );
        }
    }

    #[test]
    fn orbit_shapes_match_iteration() {
        for kind in ForbiddenKind::all() {
            let p = forbidden(kind);
            let w = witness(kind);
            for x in p.enumerate(25) {
                let shape = w
                    .map
                    .orbit_shape(&x)
                    .unwrap_or_else(|| panic!("{kind}: no shape for {x}"));
                if let Err(k) = shape.check_against(&w.map, &x, 40) {
                    panic!("{kind}: shape of {x} wrong at exponent {k}");
                }
            }
        }
    }

    #[test]
    fn self_dual_relabelings_are_isomorphisms() {
        for family in [ForbiddenFamily::F3, ForbiddenFamily::F8] {
            let straight = forbidden(ForbiddenKind::straight(family));
            let dualized = forbidden(ForbiddenKind::dual_of(family));
            let phi = self_dual_relabeling(family).unwrap();
            let w = Window::new(&straight, 30);
            for x in w.elements() {
                for y in w.elements() {
                    assert_eq!(
                        straight.leq(x, y),
                        dualized.leq(&phi(x), &phi(y)),
                        "{family}: {x} vs {y}"
                    );
                }
            }
        }
    }

    #[test]
    fn witness_maps_shift_enumeration_mildly() {
        // displacement bounds are honest: image of the n-th element appears
        // within a few positions of n
        for kind in ForbiddenKind::canonical() {
            let p = forbidden(kind);
            let w = witness(kind);
            for n in 0..60u64 {
                let x = p.nth(n);
                let fx = w.map.apply(&x);
                let pos = p.position_of(&fx).expect("image enumerable");
                let slack = 4 * w.map.displacement_bound + 4;
                assert!(
                    pos <= n + slack && n <= pos + slack,
                    "{kind}: {x} at {n} maps to {fx} at {pos}"
                );
            }
        }
    }
}
