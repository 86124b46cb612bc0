//! Shipped fixtures: composite presentations with curated witness maps used
//! by the verification suites and the examples.

use crate::catalog::WitnessPackage;
use crate::maps::{ElementPattern, OrbitShape, SelfMap, TailSpec};
use crate::order::{CarrierIndex, ElementId, Presentation, Selector};


/// Lift a witness map of a component to the composite: the map acts inside
/// the addressed component and fixes everything else. The witness pair and
/// the orbit shapes lift along.
pub fn witness_in_component(
    inner: &WitnessPackage,
    side: Selector,
) -> (SelfMap, (ElementId, ElementId)) {
    let strip = move |x: &ElementId| -> Option<ElementId> {
        if x.path.first() == Some(&side) {
            let mut y = x.clone();
            y.path.remove(0);
            Some(y)
        } else {
            None
        }
    };
    let fwd_inner = inner.map.clone();
    let inv_inner = inner.map.clone();
    let shape_inner = inner.map.clone();
    let fwd = move |x: &ElementId| match strip(x) {
        Some(y) => fwd_inner.apply(&y).under(side),
        None => x.clone(),
    };
    let inv = move |x: &ElementId| match strip(x) {
        Some(y) => inv_inner.apply_inverse(&y).under(side),
        None => x.clone(),
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        match strip(x) {
            Some(y) => {
                let s = shape_inner.orbit_shape(&y)?;
                Some(OrbitShape {
                    forward: lift_tail(&s.forward, side),
                    backward: lift_tail(&s.backward, side),
                })
            }
            None => Some(OrbitShape {
                forward: TailSpec {
                    from: 0,
                    pattern: ElementPattern::Constant(x.clone()),
                },
                backward: TailSpec {
                    from: 0,
                    pattern: ElementPattern::Constant(x.clone()),
                },
            }),
        }
    };
    let map = SelfMap::new(fwd, inv, inner.map.displacement_bound).with_orbit_shape(shape);
    let pair = (
        inner.pair.0.clone().under(side),
        inner.pair.1.clone().under(side),
    );
    (map, pair)
}

fn lift_tail(tail: &TailSpec, side: Selector) -> TailSpec {
    let pattern = match &tail.pattern {
        ElementPattern::Leaf {
            path,
            family,
            index0,
            step,
            nat,
        } => {
            let mut p = Vec::with_capacity(path.len() + 1);
            p.push(side);
            p.extend_from_slice(path);
            ElementPattern::Leaf {
                path: p,
                family: *family,
                index0: *index0,
                step: *step,
                nat: *nat,
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
            let mut p = Vec::with_capacity(prefix.len() + 1);
            p.push(side);
            p.extend_from_slice(prefix);
            ElementPattern::Copies {
                prefix: p,
                copy0: *copy0,
                copy_step: *copy_step,
                suffix: suffix.clone(),
                family: *family,
                index: *index,
            }
        }
        ElementPattern::Constant(e) => ElementPattern::Constant(e.clone().under(side)),
    };
    TailSpec {
        from: tail.from,
        pattern,
    }
}

/// The counterexample order separating reversibility of the upper-topology
/// space from reversibility of the order: countably many copies of a chain
/// under an antichain, beside countably many copies of a chain under a
/// reversed chain.
pub fn remark_counterexample() -> Presentation {
    let chain_under_antichain = Presentation::omega().linear_sum(&Presentation::dinf());
    let chain_under_reversed = Presentation::omega().linear_sum(&Presentation::omega_dual());
    chain_under_antichain
        .infinite_disjoint_union()
        .disjoint_union(&chain_under_reversed.infinite_disjoint_union())
}

/// A non-automorphism witness on the counterexample order: the first family
/// of copies shifts down with copy zero crossing into the second family,
/// whose copies shift up.
pub fn remark_witness() -> (SelfMap, (ElementId, ElementId)) {
    use Selector::{Copy, Left, Right};
    let rebuild = |outer: Selector, copy: u64, inner: Selector, index: CarrierIndex| ElementId {
        path: vec![outer, Copy(copy), inner],
        family: None,
        index,
    };
    let fwd = move |x: &ElementId| -> ElementId {
        match x.path.as_slice() {
            [Left, Copy(0), inner] => rebuild(Right, 0, *inner, x.index),
            [Left, Copy(c), inner] => rebuild(Left, c - 1, *inner, x.index),
            [Right, Copy(c), inner] => rebuild(Right, c + 1, *inner, x.index),
            _ => panic!("not an element of the counterexample: {x}"),
        }
    };
    let inv = move |x: &ElementId| -> ElementId {
        match x.path.as_slice() {
            [Right, Copy(0), inner] => rebuild(Left, 0, *inner, x.index),
            [Right, Copy(c), inner] => rebuild(Right, c - 1, *inner, x.index),
            [Left, Copy(c), inner] => rebuild(Left, c + 1, *inner, x.index),
            _ => panic!("not an element of the counterexample: {x}"),
        }
    };
    let copies = |outer: Selector, copy0: u64, inner: Selector, index: CarrierIndex, from: u64| {
        TailSpec {
            from,
            pattern: ElementPattern::Copies {
                prefix: vec![outer],
                copy0,
                copy_step: 1,
                suffix: vec![inner],
                family: None,
                index,
            },
        }
    };
    let shape = move |x: &ElementId| -> Option<OrbitShape> {
        match x.path.as_slice() {
            [Left, Copy(c), inner] => Some(OrbitShape {
                // down through the first family, then up the second
                forward: copies(Right, 0, *inner, x.index, c + 1),
                backward: copies(Left, *c, *inner, x.index, 0),
            }),
            [Right, Copy(c), inner] => Some(OrbitShape {
                forward: copies(Right, *c, *inner, x.index, 0),
                backward: copies(Left, 0, *inner, x.index, c + 1),
            }),
            _ => None,
        }
    };
    let map = SelfMap::new(fwd, inv, 1).with_orbit_shape(shape);
    // two antichain elements of the first family's copy zero
    let antichain_el = |i: u64| {
        ElementId::nat(i)
            .under(Selector::Right)
            .under(Selector::Copy(0))
            .under(Selector::Left)
    };
    (map, (antichain_el(1), antichain_el(0)))
}

/// Upper-topology preimage certificate fixture: for the absorbing witness
/// map on the point-beside-descending-chain shape, the preimage of the
/// principal down-set of the descending chain's top is the next element's
/// down-set.
pub fn upper_preimage_fixture() -> (
    Presentation,
    SelfMap,
    ElementId,
    crate::topology::SetExpression,
) {
    let kind: crate::catalog::ForbiddenKind = "F5".parse().expect("known key");
    let p = crate::catalog::forbidden(kind);
    let w = crate::catalog::witness(kind);
    let desc = |i: u64| ElementId::nat(i).under(Selector::Right).under(Selector::Left);
    let claimed = crate::topology::SetExpression::DownSet(desc(1));
    (p, w.map, desc(0), claimed)
}
