//! Orbit profiles: how an element relates to its own iterates, the data
//! behind the chain-or-antichain dichotomy and the orbit transport checks.

use super::streams::Orbit;
use crate::maps::CheckReport;
use crate::order::{ElementId, Presentation};

/// Relation of the base to its d-th iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitRel {
    BaseBelow,
    BaseAbove,
    Equal,
    MutuallyComparable,
    Incomparable,
}

/// Comparability of an element with its forward iterates up to a horizon.
#[derive(Debug, Clone)]
pub struct OrbitProfile {
    pub base: ElementId,
    pub horizon: u64,
    /// classification[d - 1] relates base to base^d
    pub classification: Vec<OrbitRel>,
}

pub fn orbit_profile(p: &Presentation, orbit: &Orbit, horizon: u64) -> OrbitProfile {
    let base = orbit.base().clone();
    let classification = (1..=horizon as i64)
        .map(|d| {
            let xd = orbit.at(d);
            if xd == base {
                return OrbitRel::Equal;
            }
            match (p.leq(&base, &xd), p.leq(&xd, &base)) {
                (true, true) => OrbitRel::MutuallyComparable,
                (true, false) => OrbitRel::BaseBelow,
                (false, true) => OrbitRel::BaseAbove,
                (false, false) => OrbitRel::Incomparable,
            }
        })
        .collect();
    OrbitProfile {
        base,
        horizon,
        classification,
    }
}

impl OrbitProfile {
    /// First d with the base comparable (or equal) to its d-th iterate.
    pub fn first_comparable(&self) -> Option<(u64, OrbitRel)> {
        self.classification
            .iter()
            .enumerate()
            .find(|(_, r)| !matches!(r, OrbitRel::Incomparable))
            .map(|(i, r)| (i as u64 + 1, *r))
    }
}

/// One-way transport: backward comparability forces forward comparability,
/// base^{-m} related to base^{-n} only if base relates to base^{|m-n|}.
pub fn orbit_transport_check(
    p: &Presentation,
    orbit: &Orbit,
    horizon: u64,
) -> CheckReport {
    for m in 0..=horizon as i64 {
        for n in (m + 1)..=horizon as i64 {
            let xm = orbit.at(-m);
            let xn = orbit.at(-n);
            if p.comparable(&xm, &xn) {
                let d = n - m;
                let xd = orbit.at(d);
                let base = orbit.base();
                if !(p.comparable(base, &xd) || *base == xd) {
                    return CheckReport::violation(
                        "orbit-transport",
                        vec![xm, xn, base.clone(), xd],
                    );
                }
            }
        }
    }
    CheckReport::Ok
}

/// When the map moves the base strictly up, the backward orbit contains no
/// pair ascending against the index order.
pub fn no_ascending_backward_check(
    p: &Presentation,
    orbit: &Orbit,
    horizon: u64,
) -> CheckReport {
    let base = orbit.base();
    let fx = orbit.at(1);
    if !(p.leq(base, &fx) && !p.leq(&fx, base)) {
        return CheckReport::violation("precondition-base-moves-up", vec![base.clone(), fx]);
    }
    for k in 0..=horizon as i64 {
        for n in (k + 1)..=horizon as i64 {
            let xk = orbit.at(-k);
            let xn = orbit.at(-n);
            if p.leq(&xk, &xn) && !p.leq(&xn, &xk) {
                return CheckReport::violation("ascending-backward-pair", vec![xn, xk]);
            }
        }
    }
    CheckReport::Ok
}

/// The index arithmetic of the descending-chain shift: chain positions
/// k_0 < k_1 < ... in the backward orbit move to exponents k_0 - k_i, all
/// at or below the base.
pub fn descending_chain_in_downset(chain_positions: &[i64]) -> Vec<i64> {
    match chain_positions.first() {
        None => Vec::new(),
        Some(&k0) => chain_positions.iter().map(|&k| k0 - k).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{forbidden, witness, ForbiddenKind};
    use crate::order::Selector;

    #[test]
    fn shift_indices_are_forced() {
        assert_eq!(descending_chain_in_downset(&[2, 5, 9]), vec![0, -3, -7]);
        assert_eq!(descending_chain_in_downset(&[0, 1, 2]), vec![0, -1, -2]);
    }

    #[test]
    fn profile_of_chain_orbit() {
        let kind: ForbiddenKind = "F1".parse().unwrap();
        let p = forbidden(kind);
        let w = witness(kind);
        let c0 = ElementId::nat(0).under(Selector::Right);
        let orbit = Orbit::new(w.map.clone(), c0);
        let profile = orbit_profile(&p, &orbit, 10);
        assert!(profile
            .classification
            .iter()
            .all(|r| *r == OrbitRel::BaseBelow));
        assert_eq!(profile.first_comparable(), Some((1, OrbitRel::BaseBelow)));
    }

    #[test]
    fn transport_holds_on_witness_orbits() {
        for key in ["F1", "F4", "F8", "G3"] {
            let kind: ForbiddenKind = key.parse().unwrap();
            let p = forbidden(kind);
            let w = witness(kind);
            for base in [w.pair.0.clone(), w.pair.1.clone()] {
                let orbit = Orbit::new(w.map.clone(), base);
                assert!(orbit_transport_check(&p, &orbit, 20).is_ok(), "{key}");
            }
        }
    }
}
