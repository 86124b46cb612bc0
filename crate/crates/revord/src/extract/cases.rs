//! The constructive case analysis: classify a non-automorphism witness into
//! the proof's twelve cases, run the lemma machinery, and assemble a
//! verifiable certificate of a forbidden substructure. Preorder witnesses
//! whose orbits enter clusters take the dedicated cluster routes.

use super::analysis::{
    pattern_cross_incomparable, pattern_cross_le, pattern_self_shape, pattern_vs_point,
    pattern_vs_point_strict, CrossKind, SelfShape, TSet,
};
use super::certificate::{canonical_slot, ForbiddenCertificate, Provenance, Slot};
use super::oracle::{Assumption, InfinityOracle, Rel, Reply};
use super::streams::{Orbit, PickTable, Stream};
use super::{Budget, ExtractError};
use crate::catalog::{ForbiddenFamily, ForbiddenKind};
use crate::maps::{power, SelfMap};
use crate::order::{zigzag, ElementId, Presentation};
use std::sync::Arc;

/// Relation of two elements, with mutual comparability kept separate from
/// equality for preorders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel5 {
    Lt,
    Gt,
    Eq,
    Inc,
    Mutual,
}

pub fn rel5(p: &Presentation, a: &ElementId, b: &ElementId) -> Rel5 {
    if a == b {
        return Rel5::Eq;
    }
    match (p.leq(a, b), p.leq(b, a)) {
        (true, true) => Rel5::Mutual,
        (true, false) => Rel5::Lt,
        (false, true) => Rel5::Gt,
        (false, false) => Rel5::Inc,
    }
}

fn strictly_below(p: &Presentation, a: &ElementId, b: &ElementId) -> bool {
    p.leq(a, b) && !p.leq(b, a)
}

/// Outcome of the sixteen-way split: the case number in the paper's order,
/// plus which normalization reaches its primal analogue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// case as classified on entry, 1..=12
    pub case: u8,
    /// case actually implemented after normalization (5, 7, 9, 10 and 11
    /// reduce to 2, 1, 8, 6 and 4 by dualizing and swapping)
    pub normalized_case: u8,
    /// whether the pair was swapped to reach the image orientation
    pub swapped: bool,
    /// whether the dualize-and-swap normalization applies
    pub dualized: bool,
    /// the pair in image orientation (before dualization)
    pub pair: (ElementId, ElementId),
}

fn case_of(ru: Rel5, rv: Rel5) -> Option<u8> {
    Some(match (ru, rv) {
        (Rel5::Gt, Rel5::Eq) => 1,
        (Rel5::Gt, Rel5::Gt) => 2,
        (Rel5::Gt, Rel5::Lt) => 3,
        (Rel5::Gt, Rel5::Inc) => 4,
        (Rel5::Lt, Rel5::Lt) => 5,
        (Rel5::Lt, Rel5::Inc) => 6,
        (Rel5::Eq, Rel5::Lt) => 7,
        (Rel5::Eq, Rel5::Inc) => 8,
        (Rel5::Inc, Rel5::Eq) => 9,
        (Rel5::Inc, Rel5::Gt) => 10,
        (Rel5::Inc, Rel5::Lt) => 11,
        (Rel5::Inc, Rel5::Inc) => 12,
        _ => return None,
    })
}

const NORMALIZATION: [(u8, u8); 5] = [(5, 2), (7, 1), (9, 8), (10, 6), (11, 4)];

/// Classify a witness into the twelve cases. The pair may come in either
/// directional orientation; it is swapped so that the first image sits
/// strictly above the second, matching the proof's convention. The four
/// combinations contradicting the pair's incomparability are rejected with
/// the witnessing chain.
pub fn case_classify(
    p: &Presentation,
    f: &SelfMap,
    u: &ElementId,
    v: &ElementId,
) -> Result<Classification, ExtractError> {
    let (fu, fv) = (f.apply(u), f.apply(v));
    let orient_a = !p.leq(u, v) && p.leq(&fu, &fv);
    let orient_b = !p.leq(v, u) && p.leq(&fv, &fu);
    if !orient_a && !orient_b {
        return Err(ExtractError::Precondition(format!(
            "pair ({u}, {v}) does not witness a non-automorphism"
        )));
    }
    let (big, small, swapped) = if orient_a && !p.leq(&fv, &fu) {
        (v.clone(), u.clone(), true)
    } else if orient_b && !p.leq(&fu, &fv) {
        (u.clone(), v.clone(), false)
    } else {
        return Err(ExtractError::Precondition(
            "images are mutually comparable; the pair classifies through the preorder routes"
                .to_string(),
        ));
    };
    if p.comparable(&big, &small) {
        return Err(ExtractError::Precondition(
            "pair is comparable; only preorders admit such witnesses".to_string(),
        ));
    }
    let ru = rel5(p, &f.apply(&big), &big);
    let rv = rel5(p, &f.apply(&small), &small);
    if matches!(ru, Rel5::Mutual) || matches!(rv, Rel5::Mutual) {
        return Err(ExtractError::Precondition(
            "cluster relation; the pair classifies through the preorder routes".to_string(),
        ));
    }
    let case = case_of(ru, rv).ok_or_else(|| ExtractError::HypothesisViolation {
        detail: format!(
            "excluded combination ({ru:?}, {rv:?}): {small} <= f({small}) < f({big}) <= {big} \
             makes the pair comparable"
        ),
    })?;
    let normalized = NORMALIZATION
        .iter()
        .find(|(c, _)| *c == case)
        .map(|(_, n)| *n);
    Ok(Classification {
        case,
        normalized_case: normalized.unwrap_or(case),
        swapped,
        dualized: normalized.is_some(),
        pair: (big, small),
    })
}

/// How a stream sits inside its presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StreamClass {
    Chain { ascending: bool, exact: bool },
    Antichain { exact: bool },
    Cluster { exact: bool },
    Unknown,
}

/// Classify a stream by a prefix scan, then try to certify the observation
/// structurally from the tail pattern.
pub fn classify_stream(p: &Presentation, stream: &Stream, horizon: u64) -> StreamClass {
    let probe = horizon.clamp(4, 24);
    let els: Vec<ElementId> = (0..probe).map(|k| stream.at(k)).collect();
    let (mut desc, mut asc, mut anti, mut cluster) = (true, true, true, true);
    for i in 0..els.len() {
        for j in (i + 1)..els.len() {
            match rel5(p, &els[i], &els[j]) {
                Rel5::Lt => {
                    desc = false;
                    anti = false;
                    cluster = false;
                }
                Rel5::Gt => {
                    asc = false;
                    anti = false;
                    cluster = false;
                }
                Rel5::Mutual => {
                    asc = false;
                    desc = false;
                    anti = false;
                }
                Rel5::Inc => {
                    asc = false;
                    desc = false;
                    cluster = false;
                }
                Rel5::Eq => return StreamClass::Unknown,
            }
        }
    }
    let candidate = if anti {
        StreamClass::Antichain { exact: false }
    } else if desc {
        StreamClass::Chain {
            ascending: false,
            exact: false,
        }
    } else if asc {
        StreamClass::Chain {
            ascending: true,
            exact: false,
        }
    } else if cluster {
        StreamClass::Cluster { exact: false }
    } else {
        return StreamClass::Unknown;
    };
    let Some((from, pat)) = stream.tail_pattern() else {
        return candidate;
    };
    let Some(shape) = pattern_self_shape(p, &pat) else {
        return candidate;
    };
    let heads: Vec<ElementId> = (0..from).map(|k| stream.at(k)).collect();
    let heads_ok = |want: SelfShape| -> bool {
        heads.iter().all(|h| match want {
            SelfShape::Antichain => {
                pattern_vs_point(p, &pat, h, true) == Some(TSet::Empty)
                    && pattern_vs_point(p, &pat, h, false) == Some(TSet::Empty)
            }
            // the whole tail strictly under every head
            SelfShape::ChainDesc => pattern_vs_point_strict(p, &pat, h, true) == Some(TSet::All),
            SelfShape::ChainAsc => pattern_vs_point_strict(p, &pat, h, false) == Some(TSet::All),
            SelfShape::Cluster => {
                pattern_vs_point(p, &pat, h, true) == Some(TSet::All)
                    && pattern_vs_point(p, &pat, h, false) == Some(TSet::All)
            }
        })
    };
    match (candidate, shape) {
        (StreamClass::Antichain { .. }, SelfShape::Antichain) => StreamClass::Antichain {
            exact: heads_ok(SelfShape::Antichain),
        },
        (
            StreamClass::Chain {
                ascending: false, ..
            },
            SelfShape::ChainDesc,
        ) => StreamClass::Chain {
            ascending: false,
            exact: heads_ok(SelfShape::ChainDesc),
        },
        (
            StreamClass::Chain {
                ascending: true, ..
            },
            SelfShape::ChainAsc,
        ) => StreamClass::Chain {
            ascending: true,
            exact: heads_ok(SelfShape::ChainAsc),
        },
        (StreamClass::Cluster { .. }, SelfShape::Cluster) => StreamClass::Cluster {
            exact: heads_ok(SelfShape::Cluster),
        },
        _ => candidate,
    }
}

/// Result of the chain-or-antichain dichotomy on a stream.
#[derive(Debug, Clone)]
pub enum Dichotomy {
    /// the whole stream from `from` onward forms the chain
    ChainTail {
        from: u64,
        ascending: bool,
        exact: bool,
    },
    /// explicitly picked positions form a chain
    ChainPicks { positions: Vec<u64>, ascending: bool },
    /// the whole stream is an antichain
    Antichain { exact: bool },
    Exhausted,
}

/// Extract an infinite chain or an infinite antichain from a stream:
/// structural answers where available, greedy extraction within budget
/// otherwise.
pub fn chain_or_antichain(p: &Presentation, stream: &Stream, budget: &Budget) -> Dichotomy {
    match classify_stream(p, stream, budget.horizon) {
        StreamClass::Antichain { exact } => Dichotomy::Antichain { exact },
        StreamClass::Chain { ascending, exact } => Dichotomy::ChainTail {
            from: 0,
            ascending,
            exact,
        },
        StreamClass::Cluster { .. } | StreamClass::Unknown => {
            let target = (budget.horizon / 4).clamp(4, 16) as usize;
            for ascending in [false, true] {
                let mut picks: Vec<u64> = vec![0];
                for k in 1..=budget.horizon {
                    let last = stream.at(*picks.last().expect("nonempty"));
                    let cur = stream.at(k);
                    let ok = match rel5(p, &cur, &last) {
                        Rel5::Lt => !ascending,
                        Rel5::Gt => ascending,
                        _ => false,
                    };
                    if ok {
                        picks.push(k);
                    }
                }
                if picks.len() >= target {
                    return Dichotomy::ChainPicks {
                        positions: picks,
                        ascending,
                    };
                }
            }
            let mut picks: Vec<u64> = vec![0];
            for k in 1..=budget.horizon {
                let cur = stream.at(k);
                if picks
                    .iter()
                    .all(|&i| rel5(p, &cur, &stream.at(i)) == Rel5::Inc)
                {
                    picks.push(k);
                }
            }
            if picks.len() as u64 >= budget.horizon / 2 {
                Dichotomy::Antichain { exact: false }
            } else {
                Dichotomy::Exhausted
            }
        }
    }
}

enum Flow {
    Restart(i64),
    Fail(ExtractError),
}

impl From<ExtractError> for Flow {
    fn from(e: ExtractError) -> Flow {
        Flow::Fail(e)
    }
}

type CaseResult = Result<ForbiddenCertificate, Flow>;

/// Outcome of the machinery for an incomparable image relation.
enum IncOutcome {
    /// the backward orbit (and, when requested, the whole orbit) is an
    /// antichain
    Ready { exact: bool },
    /// the forward orbit settles into a cluster (preorder territory)
    ClusterForward,
    /// a comparable power was found; restart with that power of the map
    Power(i64),
    /// a forward comparability x^n with x^{n+step} escapes to the
    /// antichain-beside-chain shape directly
    Escape { n: i64, step: i64, ascending: bool },
}

/// Skyscraper outcome: one chain contributes a single element beside the
/// other chain's tail, or the alternating recursion builds the ladder.
pub enum SkyOutcome {
    Isolated {
        /// the isolated point comes from the second chain
        iso_from_second: bool,
        position: u64,
    },
    Ladder { picks: Arc<PickTable> },
}

pub(super) struct Engine {
    pub p: Presentation,
    pub f: SelfMap,
    pub budget: Budget,
    pub oracle: InfinityOracle,
    pub assumptions: Vec<Assumption>,
    pub power_used: u32,
    pub dual_flips: u32,
}

impl Engine {
    pub fn new(p: &Presentation, f: &SelfMap, budget: Budget) -> Engine {
        let oracle = InfinityOracle::new(budget.horizon, f.has_orbit_shapes());
        Engine {
            p: p.clone(),
            f: f.clone(),
            budget,
            oracle,
            assumptions: Vec::new(),
            power_used: 1,
            dual_flips: 0,
        }
    }

    pub fn with_oracle(p: &Presentation, f: &SelfMap, budget: Budget, oracle: InfinityOracle) -> Engine {
        Engine {
            p: p.clone(),
            f: f.clone(),
            budget,
            oracle,
            assumptions: Vec::new(),
            power_used: 1,
            dual_flips: 0,
        }
    }

    fn note(&mut self, query: impl Into<String>, answer: impl Into<String>, exact: bool) {
        if !exact {
            self.assumptions.push(Assumption {
                query: query.into(),
                answer: answer.into(),
            });
        }
    }

    fn count(&mut self, label: &str, stream: &Stream, c: &ElementId, rel: Rel) -> Reply {
        let reply = self.oracle.count_vs_point(&self.p, stream, c, rel);
        self.note(
            format!("{label}: members of {} {rel:?} {c}", stream.label),
            if reply.infinite { "infinite" } else { "finite" },
            reply.exact,
        );
        reply
    }

    fn orbit_of(&self, x: &ElementId) -> Arc<Orbit> {
        Orbit::new(self.f.clone(), x.clone())
    }

    /// Run the full pipeline on a witness pair, restarting on power
    /// reductions, and report the certificate relative to the original
    /// orientation.
    pub fn run(
        &mut self,
        u: &ElementId,
        v: &ElementId,
    ) -> Result<ForbiddenCertificate, ExtractError> {
        for _round in 0..4 {
            match self.dispatch(u, v) {
                Ok(cert) => {
                    let cert = if self.dual_flips % 2 == 1 {
                        cert.dualized()
                    } else {
                        cert
                    };
                    return Ok(cert);
                }
                Err(Flow::Fail(e)) => return Err(e),
                Err(Flow::Restart(k)) => {
                    // restore the original frame before re-entering with f^k
                    if self.dual_flips % 2 == 1 {
                        self.p = self.p.dual();
                    }
                    self.dual_flips = 0;
                    self.f = power(&self.f, k);
                    self.power_used = self.power_used.saturating_mul(k.unsigned_abs() as u32);
                    self.oracle =
                        InfinityOracle::new(self.budget.horizon, self.f.has_orbit_shapes());
                }
            }
        }
        Err(ExtractError::Exhausted {
            state: "power reductions did not stabilize".to_string(),
        })
    }

    fn dispatch(&mut self, u: &ElementId, v: &ElementId) -> CaseResult {
        let p = self.p.clone();
        let f = self.f.clone();
        let (fu, fv) = (f.apply(u), f.apply(v));
        let orient_a = !p.leq(u, v) && p.leq(&fu, &fv);
        let orient_b = !p.leq(v, u) && p.leq(&fv, &fu);
        if !orient_a && !orient_b {
            return Err(Flow::Fail(ExtractError::Precondition(format!(
                "pair ({u}, {v}) does not witness a non-automorphism"
            ))));
        }
        let (big, small) = if orient_a && !p.leq(&fv, &fu) {
            (v.clone(), u.clone())
        } else if orient_b && !p.leq(&fu, &fv) {
            (u.clone(), v.clone())
        } else {
            // mutually comparable images: preorder territory
            let (w1, w2) = if orient_a {
                (u.clone(), v.clone())
            } else {
                (v.clone(), u.clone())
            };
            let ru = rel5(&p, &f.apply(&w1), &w1);
            let rv = rel5(&p, &f.apply(&w2), &w2);
            return self.g_dispatch(&w1, &w2, ru, rv);
        };
        if p.comparable(&big, &small) {
            // comparable witness pairs exist only in preorders
            let ru = rel5(&p, &f.apply(&big), &big);
            let rv = rel5(&p, &f.apply(&small), &small);
            return self.g_dispatch(&big, &small, ru, rv);
        }
        self.dispatch_cases(big, small)
    }

    fn dispatch_cases(&mut self, mut u: ElementId, mut v: ElementId) -> CaseResult {
        for _flip in 0..2 {
            let p = self.p.clone();
            let f = self.f.clone();
            let ru = rel5(&p, &f.apply(&u), &u);
            let rv = rel5(&p, &f.apply(&v), &v);
            if matches!(ru, Rel5::Mutual) || matches!(rv, Rel5::Mutual) {
                return self.g_dispatch(&u, &v, ru, rv);
            }
            let Some(case) = case_of(ru, rv) else {
                return Err(Flow::Fail(ExtractError::HypothesisViolation {
                    detail: format!(
                        "excluded combination ({ru:?}, {rv:?}): {v} <= f({v}) < f({u}) <= {u} \
                         contradicts incomparability of the pair"
                    ),
                }));
            };
            match case {
                1 => return self.case1(case, &u, &v),
                2 => return self.case2(case, &u, &v),
                3 => return self.case3(case, &u, &v),
                4 => return self.case4(case, &u, &v),
                6 => return self.case6(case, &u, &v),
                8 => return self.case8(case, &u, &v),
                12 => return self.case12(case, &u, &v),
                _ => {
                    // dualize the frame and swap the pair; the primal
                    // analogue handles it there
                    self.p = self.p.dual();
                    self.dual_flips += 1;
                    std::mem::swap(&mut u, &mut v);
                }
            }
        }
        Err(Flow::Fail(ExtractError::Exhausted {
            state: "normalization did not reach a primal case".to_string(),
        }))
    }

    fn provenance(&self, case: u8, subcase: &str) -> Provenance {
        Provenance {
            case,
            subcase: if subcase.is_empty() {
                None
            } else {
                Some(subcase.to_string())
            },
            dualized: self.dual_flips % 2 == 1,
            power: self.power_used,
        }
    }

    // ----- case implementations -------------------------------------------

    /// f(u) > u, f(v) = v.
    fn case1(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        let p = self.p.clone();
        let orbit_u = self.orbit_of(u);
        let bwd = Stream::backward_from(orbit_u.clone(), 1, format!("{u}^-"));
        match classify_stream(&p, &bwd, self.budget.horizon) {
            StreamClass::Antichain { exact } => {
                self.note(format!("backward orbit of {u} is an antichain"), "yes", exact);
                let chain = Stream::forward(orbit_u.clone(), format!("{u}^+"));
                self.no_antichains(case, &bwd, &chain)
            }
            StreamClass::Chain {
                ascending: false,
                exact,
            } => {
                self.note(format!("backward orbit of {u} descends"), "yes", exact);
                let ou = orbit_u.clone();
                let ou2 = orbit_u;
                let vv = v.clone();
                let prov = self.provenance(case, "downset-chain");
                Ok(ForbiddenCertificate::new(
                    ForbiddenKind::straight(ForbiddenFamily::F5),
                    prov,
                    move |x| match canonical_slot(ForbiddenFamily::F5, x) {
                        Some(Slot::Point) => Ok(vv.clone()),
                        Some(Slot::A(j)) => Ok(ou.at(-(j as i64))),
                        Some(Slot::C(m)) => Ok(ou2.at(m as i64 + 1)),
                        _ => Err(not_canonical(x)),
                    },
                ))
            }
            other => Err(Flow::Fail(ExtractError::Exhausted {
                state: format!("case 1: backward orbit of {u} unresolved ({other:?})"),
            })),
        }
    }

    /// f(u) > u, f(v) > v.
    fn case2(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        let p = self.p.clone();
        let orbit_u = self.orbit_of(u);
        let orbit_v = self.orbit_of(v);
        let bwd_u = Stream::backward_from(orbit_u.clone(), 1, format!("{u}^-"));
        if let StreamClass::Antichain { exact } = classify_stream(&p, &bwd_u, self.budget.horizon)
        {
            self.note(format!("backward orbit of {u} is an antichain"), "yes", exact);
            let chain = Stream::forward(orbit_u.clone(), format!("{u}^+"));
            return self.no_antichains(case, &bwd_u, &chain);
        }
        let bwd_v = Stream::backward_from(orbit_v.clone(), 1, format!("{v}^-"));
        if let StreamClass::Antichain { exact } = classify_stream(&p, &bwd_v, self.budget.horizon)
        {
            self.note(format!("backward orbit of {v} is an antichain"), "yes", exact);
            let chain = Stream::forward(orbit_v.clone(), format!("{v}^+"));
            return self.no_antichains(case, &bwd_v, &chain);
        }
        let down_u = Stream::new(orbit_u.clone(), 0, -1, format!("{u}-downchain"));
        let down_v = Stream::new(orbit_v.clone(), 0, -1, format!("{v}-downchain"));
        for s in [&down_u, &down_v] {
            match classify_stream(&p, s, self.budget.horizon) {
                StreamClass::Chain {
                    ascending: false, ..
                } => {}
                other => {
                    return Err(Flow::Fail(ExtractError::Exhausted {
                        state: format!(
                            "case 2: {} is not a descending chain ({other:?})",
                            s.label
                        ),
                    }))
                }
            }
        }
        for i in 0..12.min(self.budget.horizon) {
            let a = down_u.at(i);
            let b = down_v.at(i);
            if p.comparable(&a, &b) {
                return Err(Flow::Fail(ExtractError::HypothesisViolation {
                    detail: format!("aligned backward elements comparable: {a} vs {b}"),
                }));
            }
        }
        let outcome = self.skyscraper(&down_u, &down_v)?;
        let completion = Stream::new(orbit_u, 1, 1, format!("{u}-completion"));
        Ok(self.assemble_skyscraper(case, outcome, &down_u, &down_v, &completion))
    }

    /// f(u) > u, f(v) < v.
    fn case3(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        let p = self.p.clone();
        let orbit_u = self.orbit_of(u);
        let orbit_v = self.orbit_of(v);
        let bwd_u = Stream::backward_from(orbit_u.clone(), 1, format!("{u}^-"));
        if let StreamClass::Antichain { exact } = classify_stream(&p, &bwd_u, self.budget.horizon)
        {
            self.note(format!("backward orbit of {u} is an antichain"), "yes", exact);
            let chain = Stream::forward(orbit_u.clone(), format!("{u}^+"));
            return self.no_antichains(case, &bwd_u, &chain);
        }
        let bwd_v = Stream::backward_from(orbit_v.clone(), 1, format!("{v}^-"));
        match classify_stream(&p, &bwd_v, self.budget.horizon) {
            StreamClass::Antichain { exact } => {
                self.note(format!("backward orbit of {v} is an antichain"), "yes", exact);
                // the forward orbit of v descends; in the dual it ascends
                // over that antichain
                self.p = self.p.dual();
                self.dual_flips += 1;
                let chain = Stream::forward(orbit_v.clone(), format!("{v}^+"));
                return self.no_antichains(case, &bwd_v, &chain);
            }
            StreamClass::Chain {
                ascending: true, ..
            } => {}
            other => {
                return Err(Flow::Fail(ExtractError::Exhausted {
                    state: format!("case 3: backward orbit of {v} unresolved ({other:?})"),
                }))
            }
        }
        // branch: is u above some forward iterate of v?
        let fwd_v_tail = Stream::new(orbit_v.clone(), 1, 1, format!("{v}^+"));
        let reply = self.count("case3-branch", &fwd_v_tail, u, Rel::StrictlyAbove);
        let scan_to = reply
            .position_bound
            .map_or(self.budget.horizon, |b| b.min(self.budget.horizon));
        let first_below = (0..=scan_to).find(|&n| strictly_below(&p, &fwd_v_tail.at(n), u));
        match first_below {
            Some(n) => {
                let uu = u.clone();
                let ov1 = orbit_v.clone();
                let ov2 = orbit_v;
                // forward exponent of the dominated element
                let n0 = n as i64 + 1;
                let prov = self.provenance(case, "dominating-point");
                Ok(ForbiddenCertificate::new(
                    ForbiddenKind::dual_of(ForbiddenFamily::F5),
                    prov,
                    move |x| match canonical_slot(ForbiddenFamily::F5, x) {
                        Some(Slot::Point) => Ok(uu.clone()),
                        Some(Slot::A(j)) => Ok(ov1.at(-(j as i64))),
                        Some(Slot::C(m)) => Ok(ov2.at(n0 + 1 + m as i64)),
                        _ => Err(not_canonical(x)),
                    },
                ))
            }
            None => {
                let uu = u.clone();
                let ov = orbit_v;
                let ou = orbit_u;
                let prov = self.provenance(case, "beside-point");
                Ok(ForbiddenCertificate::new(
                    ForbiddenKind::straight(ForbiddenFamily::F5),
                    prov,
                    move |x| match canonical_slot(ForbiddenFamily::F5, x) {
                        Some(Slot::Point) => Ok(uu.clone()),
                        Some(Slot::A(j)) => Ok(ov.at(j as i64 + 1)),
                        Some(Slot::C(m)) => Ok(ou.at(m as i64 + 1)),
                        _ => Err(not_canonical(x)),
                    },
                ))
            }
        }
    }

    /// f(u) > u, f(v) incomparable to its image.
    fn case4(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        let p = self.p.clone();
        match self.inc_machinery(v, false)? {
            IncOutcome::Power(k) => return Err(Flow::Restart(k)),
            IncOutcome::Escape { n, step, ascending } => {
                return Ok(self.f1_escape(case, v, n, step, ascending))
            }
            IncOutcome::ClusterForward => {
                return Err(Flow::Fail(ExtractError::Exhausted {
                    state: format!("case 4: forward orbit of {v} enters a cluster"),
                }))
            }
            IncOutcome::Ready { exact } => {
                self.note(format!("backward orbit of {v} is an antichain"), "yes", exact);
            }
        }
        let orbit_u = self.orbit_of(u);
        let orbit_v = self.orbit_of(v);
        let antichain = Stream::new(orbit_v, 0, -1, format!("{v}^-"));
        let chain = Stream::forward(orbit_u.clone(), format!("{u}^+"));
        // the forward orbit of u may enter a cluster: preorder territory
        if let StreamClass::Cluster { exact } = classify_stream(&p, &chain, self.budget.horizon) {
            self.note(format!("forward orbit of {u} is a cluster"), "yes", exact);
            return self.route_cluster_antichain(case, &chain, &antichain);
        }
        if let Some((from, _)) = chain.tail_pattern() {
            if from > 0 {
                let tail = chain.suffix(from);
                if let StreamClass::Cluster { exact } =
                    classify_stream(&p, &tail, self.budget.horizon)
                {
                    self.note(
                        format!("forward orbit of {u} enters a cluster"),
                        "yes",
                        exact,
                    );
                    return self.route_cluster_antichain(case, &tail, &antichain);
                }
            }
        }
        self.no_antichains(case, &antichain, &chain)
    }

    /// f(u) < u, f(v) incomparable: the dual antichain-beside-chain lemma.
    fn case6(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        match self.inc_machinery(v, false)? {
            IncOutcome::Power(k) => return Err(Flow::Restart(k)),
            IncOutcome::Escape { n, step, ascending } => {
                return Ok(self.f1_escape(case, v, n, step, ascending))
            }
            IncOutcome::ClusterForward => {
                return Err(Flow::Fail(ExtractError::Exhausted {
                    state: format!("case 6: forward orbit of {v} enters a cluster"),
                }))
            }
            IncOutcome::Ready { exact } => {
                self.note(format!("backward orbit of {v} is an antichain"), "yes", exact);
            }
        }
        // in the dual frame the forward orbit of u ascends
        self.p = self.p.dual();
        self.dual_flips += 1;
        let orbit_u = self.orbit_of(u);
        let orbit_v = self.orbit_of(v);
        let antichain = Stream::new(orbit_v, 0, -1, format!("{v}^-"));
        let chain = Stream::forward(orbit_u, format!("{u}^+"));
        self.no_antichains(case, &antichain, &chain)
    }

    /// f(u) = u, f(v) incomparable.
    fn case8(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        match self.inc_machinery(v, true)? {
            IncOutcome::Power(k) => return Err(Flow::Restart(k)),
            IncOutcome::Escape { n, step, ascending } => {
                return Ok(self.f1_escape(case, v, n, step, ascending))
            }
            IncOutcome::ClusterForward => {
                return Err(Flow::Fail(ExtractError::Exhausted {
                    state: format!("case 8: forward orbit of {v} enters a cluster"),
                }))
            }
            IncOutcome::Ready { exact } => {
                self.note(format!("orbit of {v} is an antichain"), "yes", exact);
            }
        }
        let orbit_v = self.orbit_of(v);
        let uu = u.clone();
        let ov1 = orbit_v.clone();
        let ov2 = orbit_v;
        let prov = self.provenance(case, "fixed-point");
        Ok(ForbiddenCertificate::new(
            ForbiddenKind::dual_of(ForbiddenFamily::F2),
            prov,
            move |x| match canonical_slot(ForbiddenFamily::F2, x) {
                Some(Slot::Point) => Ok(uu.clone()),
                Some(Slot::A(n)) => Ok(ov1.at(n as i64 + 1)),
                Some(Slot::B(n)) => Ok(ov2.at(-(n as i64))),
                _ => Err(not_canonical(x)),
            },
        ))
    }

    /// Both images incomparable to their sources.
    fn case12(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        for x in [u, v] {
            match self.inc_machinery(x, true)? {
                IncOutcome::Power(k) => return Err(Flow::Restart(k)),
                IncOutcome::Escape { n, step, ascending } => {
                    return Ok(self.f1_escape(case, x, n, step, ascending))
                }
                IncOutcome::ClusterForward => {
                    return Err(Flow::Fail(ExtractError::Exhausted {
                        state: format!("two-level analysis: forward orbit of {x} enters a cluster"),
                    }))
                }
                IncOutcome::Ready { exact } => {
                    self.note(format!("orbit of {x} is an antichain"), "yes", exact);
                }
            }
        }
        self.two_level(case, u, v)
    }

    // ----- preorder routes --------------------------------------------------

    fn g_dispatch(&mut self, u: &ElementId, v: &ElementId, ru: Rel5, rv: Rel5) -> CaseResult {
        match (ru, rv) {
            (Rel5::Inc, Rel5::Inc) => self.case12(12, u, v),
            (Rel5::Mutual, other) => self.g_cluster(u, v, other),
            (other, Rel5::Mutual) => self.g_cluster(v, u, other),
            _ => Err(Flow::Fail(ExtractError::Exhausted {
                state: format!("preorder witness with relations ({ru:?}, {rv:?}) unsupported"),
            })),
        }
    }

    /// One endpoint's orbit sits in a cluster; the companion's backward
    /// orbit supplies the second half of the structure.
    fn g_cluster(&mut self, cluster_x: &ElementId, companion: &ElementId, rel: Rel5) -> CaseResult {
        let p = self.p.clone();
        let orbit_z = self.orbit_of(cluster_x);
        let fwd = Stream::forward(orbit_z, format!("{cluster_x}^+"));
        let cluster = match classify_stream(&p, &fwd, self.budget.horizon) {
            StreamClass::Cluster { exact } => {
                self.note(format!("orbit of {cluster_x} is a cluster"), "yes", exact);
                fwd
            }
            _ => match fwd.tail_pattern() {
                Some((from, _)) if from > 0 => {
                    let tail = fwd.suffix(from);
                    match classify_stream(&p, &tail, self.budget.horizon) {
                        StreamClass::Cluster { exact } => {
                            self.note(
                                format!("orbit of {cluster_x} enters a cluster"),
                                "yes",
                                exact,
                            );
                            tail
                        }
                        other => {
                            return Err(Flow::Fail(ExtractError::Exhausted {
                                state: format!("expected a cluster orbit, found {other:?}"),
                            }))
                        }
                    }
                }
                _ => {
                    return Err(Flow::Fail(ExtractError::Exhausted {
                        state: "expected a cluster orbit".to_string(),
                    }))
                }
            },
        };
        match rel {
            Rel5::Inc => {
                match self.inc_machinery(companion, false)? {
                    IncOutcome::Power(k) => return Err(Flow::Restart(k)),
                    IncOutcome::Escape { n, step, ascending } => {
                        return Ok(self.f1_escape(0, companion, n, step, ascending))
                    }
                    IncOutcome::ClusterForward => {
                        return Err(Flow::Fail(ExtractError::Exhausted {
                            state: "cluster route: companion orbit enters a cluster".to_string(),
                        }))
                    }
                    IncOutcome::Ready { exact } => {
                        self.note(
                            format!("backward orbit of {companion} is an antichain"),
                            "yes",
                            exact,
                        );
                    }
                }
                let orbit_a = self.orbit_of(companion);
                let antichain = Stream::new(orbit_a, 0, -1, format!("{companion}^-"));
                self.route_cluster_antichain(0, &cluster, &antichain)
            }
            Rel5::Lt => {
                let orbit_c = self.orbit_of(companion);
                let chain = Stream::new(orbit_c, 0, -1, format!("{companion}^-"));
                match classify_stream(&p, &chain, self.budget.horizon) {
                    StreamClass::Chain {
                        ascending: true,
                        exact,
                    } => {
                        self.note(
                            format!("backward orbit of {companion} ascends"),
                            "yes",
                            exact,
                        );
                        self.route_cluster_chain(&cluster, &chain, true)
                    }
                    other => Err(Flow::Fail(ExtractError::Exhausted {
                        state: format!("cluster route: companion orbit unresolved ({other:?})"),
                    })),
                }
            }
            Rel5::Gt => {
                let orbit_c = self.orbit_of(companion);
                let chain = Stream::new(orbit_c, 0, -1, format!("{companion}^-"));
                match classify_stream(&p, &chain, self.budget.horizon) {
                    StreamClass::Chain {
                        ascending: false,
                        exact,
                    } => {
                        self.note(
                            format!("backward orbit of {companion} descends"),
                            "yes",
                            exact,
                        );
                        self.route_cluster_chain(&cluster, &chain, false)
                    }
                    other => Err(Flow::Fail(ExtractError::Exhausted {
                        state: format!("cluster route: companion orbit unresolved ({other:?})"),
                    })),
                }
            }
            _ => Err(Flow::Fail(ExtractError::Exhausted {
                state: format!("cluster route with companion relation {rel:?} unsupported"),
            })),
        }
    }

    /// Cluster beside or under an antichain: three catalog shapes.
    fn route_cluster_antichain(
        &mut self,
        case: u8,
        cluster: &Stream,
        antichain: &Stream,
    ) -> CaseResult {
        let p = self.p.clone();
        let probe = 10.min(self.budget.horizon);
        let mut below = true;
        let mut above = true;
        let mut incomp = true;
        for i in 0..probe {
            for j in 0..probe {
                let z = cluster.at(i);
                let a = antichain.at(j);
                let le = p.leq(&z, &a);
                let ge = p.leq(&a, &z);
                below &= le && !ge;
                above &= ge && !le;
                incomp &= !le && !ge;
            }
        }
        // structural certification when both tails have patterns
        let exact = match (cluster.tail_pattern(), antichain.tail_pattern()) {
            (Some((_, zp)), Some((_, ap))) => {
                if below {
                    pattern_cross_le(&p, &zp, &ap).map(|c| c.kind) == Some(CrossKind::All)
                } else if above {
                    pattern_cross_le(&p, &ap, &zp).map(|c| c.kind) == Some(CrossKind::All)
                } else if incomp {
                    pattern_cross_incomparable(&p, &zp, &ap).map(|c| c.kind)
                        == Some(CrossKind::All)
                } else {
                    false
                }
            }
            _ => false,
        };
        let (kind, subcase) = if below {
            (ForbiddenKind::straight(ForbiddenFamily::G1), "cluster-below")
        } else if above {
            (ForbiddenKind::dual_of(ForbiddenFamily::G1), "cluster-above")
        } else if incomp {
            (ForbiddenKind::straight(ForbiddenFamily::G2), "cluster-beside")
        } else {
            return Err(Flow::Fail(ExtractError::Exhausted {
                state: "cluster-antichain interface is mixed".to_string(),
            }));
        };
        self.note(
            format!("cluster {} vs antichain {}", cluster.label, antichain.label),
            subcase,
            exact,
        );
        let prov = self.provenance(case, subcase);
        Ok(two_part_certificate(kind, prov, cluster.clone(), antichain.clone()))
    }

    /// Cluster under an ascending chain, or over a descending one.
    fn route_cluster_chain(
        &mut self,
        cluster: &Stream,
        chain: &Stream,
        ascending: bool,
    ) -> CaseResult {
        let p = self.p.clone();
        let probe = 10.min(self.budget.horizon);
        let ok_probe = (0..probe).all(|i| {
            (0..probe).all(|j| {
                let z = cluster.at(i);
                let c = chain.at(j);
                if ascending {
                    strictly_below(&p, &z, &c)
                } else {
                    strictly_below(&p, &c, &z)
                }
            })
        });
        if !ok_probe {
            return Err(Flow::Fail(ExtractError::Exhausted {
                state: "cluster-chain interface is mixed".to_string(),
            }));
        }
        let exact = match (cluster.tail_pattern(), chain.tail_pattern()) {
            (Some((_, zp)), Some((_, cp))) => {
                let (lo, hi) = if ascending { (&zp, &cp) } else { (&cp, &zp) };
                pattern_cross_le(&p, lo, hi).map(|c| c.kind) == Some(CrossKind::All)
            }
            _ => false,
        };
        let subcase = if ascending {
            "cluster-under-chain"
        } else {
            "cluster-over-chain"
        };
        self.note(
            format!("cluster {} vs chain {}", cluster.label, chain.label),
            subcase,
            exact,
        );
        let kind = if ascending {
            ForbiddenKind::straight(ForbiddenFamily::G3)
        } else {
            ForbiddenKind::dual_of(ForbiddenFamily::G3)
        };
        let prov = self.provenance(0, subcase);
        Ok(two_part_certificate(kind, prov, cluster.clone(), chain.clone()))
    }

    // ----- shared machinery -------------------------------------------------

    /// Incomparable-image pre-steps. The backward orbit must come out an
    /// antichain; if it does not, a comparable power restarts the pipeline.
    /// When the whole orbit is needed, forward comparabilities escape to the
    /// antichain-beside-chain shape and forward clusters divert to the
    /// preorder routes.
    fn inc_machinery(&mut self, x: &ElementId, need_forward: bool) -> Result<IncOutcome, Flow> {
        let p = self.p.clone();
        let orbit = self.orbit_of(x);
        let h = self.budget.horizon as i64;
        let power_scan = |orbit: &Arc<Orbit>| -> Option<i64> {
            (1..=h.min(16)).find(|&k| {
                let xk = orbit.at(k);
                xk == *x || rel5(&p, x, &xk) != Rel5::Inc
            })
        };
        let bwd = Stream::backward_from(orbit.clone(), 1, format!("{x}^-"));
        let bwd_exact = match classify_stream(&p, &bwd, self.budget.horizon) {
            StreamClass::Antichain { exact } => exact,
            _ => {
                // backward comparabilities transport to a comparable power
                return match power_scan(&orbit) {
                    Some(k) if k > 1 => Ok(IncOutcome::Power(k)),
                    Some(_) => Err(Flow::Fail(ExtractError::HypothesisViolation {
                        detail: format!("{x} comparable to its own image"),
                    })),
                    None => Err(Flow::Fail(ExtractError::Exhausted {
                        state: format!(
                            "backward orbit of {x} is no antichain and no comparable power was found"
                        ),
                    })),
                };
            }
        };
        if !need_forward {
            return Ok(IncOutcome::Ready { exact: bwd_exact });
        }
        let fwd = Stream::forward(orbit.clone(), format!("{x}^+"));
        match classify_stream(&p, &fwd, self.budget.horizon) {
            StreamClass::Antichain { exact } => {
                return Ok(IncOutcome::Ready {
                    exact: bwd_exact && exact,
                })
            }
            StreamClass::Cluster { .. } => return Ok(IncOutcome::ClusterForward),
            _ => {}
        }
        if let Some((from, _)) = fwd.tail_pattern() {
            if from > 0
                && matches!(
                    classify_stream(&p, &fwd.suffix(from), self.budget.horizon),
                    StreamClass::Cluster { .. }
                )
            {
                return Ok(IncOutcome::ClusterForward);
            }
        }
        if let Some(k) = power_scan(&orbit) {
            if k > 1 {
                return Ok(IncOutcome::Power(k));
            }
            return Err(Flow::Fail(ExtractError::HypothesisViolation {
                detail: format!("{x} comparable to its own image"),
            }));
        }
        let scan = (h / 2).max(8);
        for n in 1..=scan {
            for k in 1..=(scan - n).max(1) {
                match rel5(&p, &orbit.at(n), &orbit.at(n + k)) {
                    Rel5::Lt => {
                        return Ok(IncOutcome::Escape {
                            n,
                            step: k,
                            ascending: true,
                        })
                    }
                    Rel5::Gt => {
                        return Ok(IncOutcome::Escape {
                            n,
                            step: k,
                            ascending: false,
                        })
                    }
                    _ => {}
                }
            }
        }
        // nothing contradicts the antichain reading within the horizon
        Ok(IncOutcome::Ready { exact: false })
    }

    /// A forward comparability inside an otherwise antichain orbit yields an
    /// antichain beside a chain with no cross relations.
    fn f1_escape(
        &mut self,
        case: u8,
        x: &ElementId,
        n: i64,
        step: i64,
        ascending: bool,
    ) -> ForbiddenCertificate {
        let orbit = self.orbit_of(x);
        let o2 = orbit.clone();
        let kind = if ascending {
            ForbiddenKind::straight(ForbiddenFamily::F1)
        } else {
            ForbiddenKind::dual_of(ForbiddenFamily::F1)
        };
        let prov = self.provenance(case, "forward-chain-escape");
        ForbiddenCertificate::new(kind, prov, move |c| {
            match canonical_slot(ForbiddenFamily::F1, c) {
                Some(Slot::A(m)) => Ok(orbit.at(-(m as i64))),
                Some(Slot::C(m)) => Ok(o2.at(n + step * m as i64)),
                _ => Err(not_canonical(c)),
            }
        })
    }

    /// The antichain-beside-chain lemma: an antichain A and an ascending
    /// chain C with no chain element below an antichain element contain one
    /// of three shapes.
    fn no_antichains(
        &mut self,
        case: u8,
        antichain: &Stream,
        chain: &Stream,
    ) -> CaseResult {
        let p = self.p.clone();
        let guard = 12.min(self.budget.horizon);
        for i in 0..guard {
            for j in 0..guard {
                let c = chain.at(i);
                let a = antichain.at(j);
                if p.leq(&c, &a) {
                    return Err(Flow::Fail(ExtractError::HypothesisViolation {
                        detail: format!("chain element {c} below antichain element {a}"),
                    }));
                }
            }
        }
        // subcase (i): fully incomparable infinite halves
        match (antichain.tail_pattern(), chain.tail_pattern()) {
            (Some((a_from, a_pat)), Some((c_from, c_pat))) => {
                if let Some(cross) = pattern_cross_incomparable(&p, &a_pat, &c_pat) {
                    if cross.kind == CrossKind::All {
                        let prov = self.provenance(case, "no-antichains-i");
                        return Ok(two_part_certificate(
                            ForbiddenKind::straight(ForbiddenFamily::F1),
                            prov,
                            antichain.suffix(a_from),
                            chain.suffix(c_from),
                        ));
                    }
                }
            }
            _ => {
                let h = self.budget.horizon / 2;
                let clean = (0..h)
                    .all(|i| (0..h).all(|j| !p.comparable(&antichain.at(j), &chain.at(i))));
                if clean {
                    self.note(
                        format!("{} and {} fully incomparable", antichain.label, chain.label),
                        "yes",
                        false,
                    );
                    let prov = self.provenance(case, "no-antichains-i");
                    return Ok(two_part_certificate(
                        ForbiddenKind::straight(ForbiddenFamily::F1),
                        prov,
                        antichain.clone(),
                        chain.clone(),
                    ));
                }
            }
        }
        // subcase (ii): a chain element with infinitely much antichain below
        let probe = 10.min(self.budget.horizon);
        for j in 0..probe {
            let c = chain.at(j);
            let reply = self.count("no-antichains-ii", antichain, &c, Rel::StrictlyBelow);
            if reply.infinite {
                let below = filtered_stream(
                    &p,
                    antichain.clone(),
                    c.clone(),
                    Rel::StrictlyBelow,
                    self.budget.horizon,
                );
                let prov = self.provenance(case, "no-antichains-ii");
                return Ok(two_part_certificate(
                    ForbiddenKind::straight(ForbiddenFamily::F4),
                    prov,
                    below,
                    chain.suffix(j),
                ));
            }
        }
        // subcase (iii): greedy alternating construction of the fan
        match self
            .oracle
            .slices_all_finite(&p, antichain, chain, Rel::StrictlyBelow)
        {
            Some((true, exact)) => self.note(
                "every chain down-set meets the antichain finitely",
                "yes",
                exact,
            ),
            Some((false, _)) | None => {
                return Err(Flow::Fail(ExtractError::Exhausted {
                    state: "antichain-chain interface unresolved".to_string(),
                }))
            }
        }
        self.greedy_fan(case, antichain, chain)
    }

    /// Alternately pick antichain elements beside the chain prefix and chain
    /// elements above the picked antichain part.
    fn greedy_fan(&mut self, case: u8, antichain: &Stream, chain: &Stream) -> CaseResult {
        let p = self.p.clone();
        let oracle = self.oracle;
        let horizon = self.budget.horizon;
        let a_picks = PickTable::new();
        let c_picks = PickTable::new();
        let (a2, c2) = (antichain.clone(), chain.clone());
        let (ap2, cp2) = (a_picks.clone(), c_picks.clone());
        let grow = move |rounds: usize| -> Result<(), ExtractError> {
            while ap2.len() < rounds || cp2.len() < rounds {
                let round = ap2.len();
                let mut lo = ap2.last().map_or(0, |k| k as u64 + 1);
                for i in 0..cp2.len() {
                    let c = c2.at(cp2.get(i).expect("picked") as u64);
                    let reply = oracle.count_vs_point(&p, &a2, &c, Rel::StrictlyBelow);
                    if let Some(b) = reply.position_bound {
                        lo = lo.max(b + 1);
                    }
                }
                let a_pos = (lo..lo + horizon)
                    .find(|&k| {
                        let a = a2.at(k);
                        (0..cp2.len()).all(|i| {
                            let c = c2.at(cp2.get(i).expect("picked") as u64);
                            !p.comparable(&a, &c)
                        })
                    })
                    .ok_or_else(|| ExtractError::Exhausted {
                        state: format!("greedy fan: no fresh antichain element at round {round}"),
                    })?;
                ap2.push(a_pos as i64);
                let mut lo_c = cp2.last().map_or(0, |k| k as u64 + 1);
                if let Some((from, pat)) = c2.tail_pattern() {
                    for i in 0..ap2.len() {
                        let a = a2.at(ap2.get(i).expect("picked") as u64);
                        if let Some(TSet::From(f0)) = pattern_vs_point_strict(&p, &pat, &a, false)
                        {
                            lo_c = lo_c.max(from + f0);
                        }
                    }
                }
                let c_pos = (lo_c..lo_c + horizon)
                    .find(|&k| {
                        let c = c2.at(k);
                        (0..ap2.len()).all(|i| {
                            let a = a2.at(ap2.get(i).expect("picked") as u64);
                            strictly_below(&p, &a, &c)
                        })
                    })
                    .ok_or_else(|| ExtractError::Exhausted {
                        state: format!("greedy fan: no dominating chain element at round {round}"),
                    })?;
                cp2.push(c_pos as i64);
            }
            Ok(())
        };
        let grow = Arc::new(grow);
        let (a3, c3) = (antichain.clone(), chain.clone());
        let (ap3, cp3) = (a_picks, c_picks);
        let prov = self.provenance(case, "no-antichains-iii");
        Ok(ForbiddenCertificate::new(
            ForbiddenKind::straight(ForbiddenFamily::F7),
            prov,
            move |x| match canonical_slot(ForbiddenFamily::F7, x) {
                Some(Slot::A(n)) => {
                    grow(n as usize + 1)?;
                    Ok(a3.at(ap3.get(n as usize).expect("grown") as u64))
                }
                Some(Slot::C(n)) => {
                    grow(n as usize + 1)?;
                    Ok(c3.at(cp3.get(n as usize).expect("grown") as u64))
                }
                _ => Err(not_canonical(x)),
            },
        ))
    }

    // ----- skyscraper -------------------------------------------------------

    fn skyscraper(&mut self, a: &Stream, b: &Stream) -> Result<SkyOutcome, Flow> {
        let p = self.p.clone();
        let qa = self.oracle.coverings(&p, a, b);
        self.note(
            format!("coverings of {} under {}", a.label, b.label),
            if qa.infinite {
                "infinitely many"
            } else {
                "finitely many"
            },
            qa.exact,
        );
        if !qa.infinite {
            return Ok(SkyOutcome::Isolated {
                iso_from_second: true,
                position: qa.max_low_position.unwrap_or(0),
            });
        }
        let qb = self.oracle.coverings(&p, b, a);
        self.note(
            format!("coverings of {} under {}", b.label, a.label),
            if qb.infinite {
                "infinitely many"
            } else {
                "finitely many"
            },
            qb.exact,
        );
        if !qb.infinite {
            return Ok(SkyOutcome::Isolated {
                iso_from_second: false,
                position: qb.max_low_position.unwrap_or(0),
            });
        }
        Ok(SkyOutcome::Ladder {
            picks: PickTable::seeded(vec![0]),
        })
    }

    fn assemble_skyscraper(
        &mut self,
        case: u8,
        outcome: SkyOutcome,
        a: &Stream,
        b: &Stream,
        completion: &Stream,
    ) -> ForbiddenCertificate {
        let comp = completion.clone();
        match outcome {
            SkyOutcome::Isolated {
                iso_from_second,
                position,
            } => {
                let (tail, iso_stream) = if iso_from_second {
                    (a.clone(), b.clone())
                } else {
                    (b.clone(), a.clone())
                };
                let iso = iso_stream.at(position);
                let prov = self.provenance(case, "skyscraper-finite");
                ForbiddenCertificate::new(
                    ForbiddenKind::straight(ForbiddenFamily::F5),
                    prov,
                    move |x| match canonical_slot(ForbiddenFamily::F5, x) {
                        Some(Slot::Point) => Ok(iso.clone()),
                        Some(Slot::A(j)) => Ok(tail.at(position + j)),
                        Some(Slot::C(m)) => Ok(comp.at(m)),
                        _ => Err(not_canonical(x)),
                    },
                )
            }
            SkyOutcome::Ladder { picks } => {
                let p = self.p.clone();
                let horizon = self.budget.horizon;
                let (sa, sb) = (a.clone(), b.clone());
                let (ga, gb) = (a.clone(), b.clone());
                let picks2 = picks.clone();
                let grow = move |want: usize| -> Result<(), ExtractError> {
                    let ok = picks2.ensure(want, |have| {
                        let last = *have.last().expect("seeded") as u64;
                        let ja = (0..=last + horizon)
                            .find(|&j| strictly_below(&p, &gb.at(j), &ga.at(last)))?;
                        let jb = (0..=last + horizon)
                            .find(|&j| strictly_below(&p, &ga.at(j), &gb.at(last)))?;
                        let next = ja.max(jb);
                        if next <= last {
                            return None;
                        }
                        Some(next as i64)
                    });
                    if ok {
                        Ok(())
                    } else {
                        Err(ExtractError::Exhausted {
                            state: "ladder recursion ran out of budget".to_string(),
                        })
                    }
                };
                let grow = Arc::new(grow);
                let prov = self.provenance(case, "skyscraper-ladder");
                ForbiddenCertificate::new(
                    ForbiddenKind::straight(ForbiddenFamily::F6),
                    prov,
                    move |x| match canonical_slot(ForbiddenFamily::F6, x) {
                        Some(Slot::A(i)) => {
                            grow(i as usize + 1)?;
                            Ok(sa.at(picks.get(i as usize).expect("grown") as u64))
                        }
                        Some(Slot::B(i)) => {
                            grow(i as usize + 1)?;
                            Ok(sb.at(picks.get(i as usize).expect("grown") as u64))
                        }
                        Some(Slot::C(n)) => Ok(comp.at(n)),
                        _ => Err(not_canonical(x)),
                    },
                )
            }
        }
    }

    // ----- the two-level analysis -------------------------------------------

    fn zcount(
        &mut self,
        label: &str,
        c: &ElementId,
        fwd: &Stream,
        bwd: &Stream,
        rel: Rel,
    ) -> (bool, Option<u64>, bool) {
        let rf = self.oracle.count_vs_point(&self.p, fwd, c, rel);
        let rb = self.oracle.count_vs_point(&self.p, bwd, c, rel);
        let infinite = rf.infinite || rb.infinite;
        let exact = rf.exact && rb.exact;
        let mag = match (infinite, rf.position_bound, rb.position_bound) {
            (false, Some(bf), Some(bb)) => Some(bf.max(bb + 1)),
            _ => None,
        };
        self.note(
            format!("{label}: members of the orbit {rel:?} {c}"),
            if infinite { "infinite" } else { "finite" },
            exact,
        );
        (infinite, mag, exact)
    }

    fn z_all_finite(
        &mut self,
        label: &str,
        a: (&Stream, &Stream),
        b: (&Stream, &Stream),
        rel: Rel,
    ) -> Option<bool> {
        let mut all = true;
        let mut exact = true;
        for bs in [b.0, b.1] {
            for asx in [a.0, a.1] {
                let (fin, ex) = self.oracle.slices_all_finite(&self.p, asx, bs, rel)?;
                all &= fin;
                exact &= ex;
            }
        }
        self.note(
            format!("{label} ({rel:?})"),
            if all { "all finite" } else { "some infinite" },
            exact,
        );
        Some(all)
    }

    fn two_level(&mut self, case: u8, u: &ElementId, v: &ElementId) -> CaseResult {
        let p = self.p.clone();
        let ou = self.orbit_of(u);
        let ov = self.orbit_of(v);
        // structure guard: nothing of the second orbit strictly above the
        // first
        let g = 8.min(self.budget.horizon) as i64;
        for m in -g..=g {
            for n in -g..=g {
                let vm = ov.at(m);
                let un = ou.at(n);
                if strictly_below(&p, &un, &vm) {
                    return Err(Flow::Fail(ExtractError::HypothesisViolation {
                        detail: format!("two-level structure broken: {un} strictly below {vm}"),
                    }));
                }
            }
        }
        let u_fwd = Stream::forward(ou.clone(), format!("{u}^+"));
        let u_bwd = Stream::backward_from(ou.clone(), 1, format!("{u}^-"));
        let v_fwd = Stream::forward(ov.clone(), format!("{v}^+"));
        let v_bwd = Stream::backward_from(ov.clone(), 1, format!("{v}^-"));
        // subcase (i) probe: an orbit element with infinite split
        let probe = 12.min(2 * self.budget.horizon);
        for t in 0..probe {
            let n = zigzag(t);
            let un = ou.at(n);
            let (a_inf, _, _) = self.zcount("two-level-i", &un, &v_fwd, &v_bwd, Rel::StrictlyBelow);
            if a_inf {
                let (b_inf, _, _) =
                    self.zcount("two-level-i", &un, &v_fwd, &v_bwd, Rel::NotStrictlyBelow);
                if b_inf {
                    let prov = self.provenance(case, "two-level-i");
                    return Ok(split_certificate(
                        &p,
                        ForbiddenKind::dual_of(ForbiddenFamily::F2),
                        prov,
                        un,
                        ov.clone(),
                        Rel::StrictlyBelow,
                        self.budget.horizon,
                    ));
                }
            }
            let vn = ov.at(n);
            let (a_inf, _, _) = self.zcount("two-level-i", &vn, &u_fwd, &u_bwd, Rel::StrictlyAbove);
            if a_inf {
                let (b_inf, _, _) =
                    self.zcount("two-level-i", &vn, &u_fwd, &u_bwd, Rel::NotStrictlyAbove);
                if b_inf {
                    let prov = self.provenance(case, "two-level-i");
                    return Ok(split_certificate(
                        &p,
                        ForbiddenKind::straight(ForbiddenFamily::F2),
                        prov,
                        vn,
                        ou.clone(),
                        Rel::StrictlyAbove,
                        self.budget.horizon,
                    ));
                }
            }
        }
        // subcase (ii): every complement is finite
        let bu_fin = self.z_all_finite(
            "two-level-ii: complements over the upper orbit",
            (&v_fwd, &v_bwd),
            (&u_fwd, &u_bwd),
            Rel::NotStrictlyBelow,
        );
        if bu_fin == Some(true) {
            let bv_fin = self.z_all_finite(
                "two-level-ii: complements over the lower orbit",
                (&u_fwd, &u_bwd),
                (&v_fwd, &v_bwd),
                Rel::NotStrictlyAbove,
            );
            if bv_fin == Some(true) {
                return self.two_level_recursion(case, &ou, &ov, true);
            }
            // some complement over the lower orbit is infinite: its split
            // fires the first subcase
            for t in 0..2 * self.budget.horizon {
                let n = zigzag(t);
                let vn = ov.at(n);
                let (b_inf, _, _) = self.zcount(
                    "two-level-ii-fallback",
                    &vn,
                    &u_fwd,
                    &u_bwd,
                    Rel::NotStrictlyAbove,
                );
                if b_inf {
                    let prov = self.provenance(case, "two-level-i");
                    return Ok(split_certificate(
                        &p,
                        ForbiddenKind::straight(ForbiddenFamily::F2),
                        prov,
                        vn,
                        ou.clone(),
                        Rel::StrictlyAbove,
                        self.budget.horizon,
                    ));
                }
            }
            return Err(Flow::Fail(ExtractError::Exhausted {
                state: "two-level: infinite complement not located".to_string(),
            }));
        }
        // subcase (iii): every cross relation set is finite
        let au_fin = self.z_all_finite(
            "two-level-iii: relations under the upper orbit",
            (&v_fwd, &v_bwd),
            (&u_fwd, &u_bwd),
            Rel::StrictlyBelow,
        );
        let av_fin = self.z_all_finite(
            "two-level-iii: relations over the lower orbit",
            (&u_fwd, &u_bwd),
            (&v_fwd, &v_bwd),
            Rel::StrictlyAbove,
        );
        if au_fin == Some(true) && av_fin == Some(true) {
            return self.two_level_recursion(case, &ou, &ov, false);
        }
        Err(Flow::Fail(ExtractError::Exhausted {
            state: "two-level interface unresolved".to_string(),
        }))
    }

    /// The index recursion of the two-level subcases: pick symmetric orbit
    /// exponents clear of all earlier exceptional sets. `complement_mode`
    /// selects the fully-related target (the grid) over the fully-unrelated
    /// one (the two-chain family or its cluster variant).
    fn two_level_recursion(
        &mut self,
        case: u8,
        ou: &Arc<Orbit>,
        ov: &Arc<Orbit>,
        complement_mode: bool,
    ) -> CaseResult {
        let p = self.p.clone();
        let oracle = self.oracle;
        let horizon = self.budget.horizon;
        let u_fwd = Stream::forward(ou.clone(), "upper+");
        let u_bwd = Stream::backward_from(ou.clone(), 1, "upper-");
        let v_fwd = Stream::forward(ov.clone(), "lower+");
        let v_bwd = Stream::backward_from(ov.clone(), 1, "lower-");
        // flavor for the unrelated target: strict two-chains or clusters
        let first_kind = if complement_mode {
            ForbiddenKind::straight(ForbiddenFamily::F8)
        } else {
            // decided by the first positive diagonal pair
            match rel5(&p, &ov.at(1), &ou.at(1)) {
                Rel5::Lt => ForbiddenKind::straight(ForbiddenFamily::F3),
                Rel5::Mutual => ForbiddenKind::straight(ForbiddenFamily::G4),
                other => {
                    return Err(Flow::Fail(ExtractError::Exhausted {
                        state: format!("two-level recursion: diagonal relation {other:?}"),
                    }))
                }
            }
        };
        let mutual_diag = first_kind.family == ForbiddenFamily::G4;
        let picks = PickTable::seeded(vec![0]);
        let picks2 = picks.clone();
        let (gu, gv) = (ou.clone(), ov.clone());
        let grow = move |want: usize| -> Result<(), ExtractError> {
            let ok = picks2.ensure(want, |have| {
                let last = *have.last().expect("seeded");
                let mut lo = (last + 1) as u64;
                let (rel_v, rel_u) = if complement_mode {
                    (Rel::NotStrictlyBelow, Rel::NotStrictlyAbove)
                } else {
                    (Rel::StrictlyBelow, Rel::StrictlyAbove)
                };
                for sign in [1i64, -1] {
                    let c = gu.at(sign * last);
                    for s in [&v_fwd, &v_bwd] {
                        let r = oracle.count_vs_point(&p, s, &c, rel_v);
                        match r.position_bound {
                            Some(b) => lo = lo.max(b + 2),
                            None if r.infinite => return None,
                            None => {}
                        }
                    }
                    let c = gv.at(sign * last);
                    for s in [&u_fwd, &u_bwd] {
                        let r = oracle.count_vs_point(&p, s, &c, rel_u);
                        match r.position_bound {
                            Some(b) => lo = lo.max(b + 2),
                            None if r.infinite => return None,
                            None => {}
                        }
                    }
                }
                // same-level adjustments
                let good = |n: i64| -> bool {
                    let pos_diag = rel5(&p, &gv.at(n), &gu.at(n));
                    let neg_diag = rel5(&p, &gv.at(-n), &gu.at(-n));
                    let mixed_a = rel5(&p, &gv.at(-n), &gu.at(n));
                    let mixed_b = rel5(&p, &gv.at(n), &gu.at(-n));
                    if complement_mode {
                        pos_diag == Rel5::Lt
                            && neg_diag == Rel5::Inc
                            && mixed_a == Rel5::Lt
                            && mixed_b == Rel5::Lt
                    } else {
                        let diag_ok = if mutual_diag {
                            pos_diag == Rel5::Mutual
                        } else {
                            pos_diag == Rel5::Lt
                        };
                        diag_ok
                            && neg_diag == Rel5::Inc
                            && mixed_a == Rel5::Inc
                            && mixed_b == Rel5::Inc
                    }
                };
                (lo..lo + horizon).find(|&n| good(n as i64)).map(|n| n as i64)
            });
            if ok {
                Ok(())
            } else {
                Err(ExtractError::Exhausted {
                    state: "two-level recursion ran out of budget".to_string(),
                })
            }
        };
        let grow = Arc::new(grow);
        let subcase = if complement_mode {
            "two-level-ii"
        } else {
            "two-level-iii"
        };
        let prov = self.provenance(case, subcase);
        let family = first_kind.family;
        let (eu, ev) = (ou.clone(), ov.clone());
        Ok(ForbiddenCertificate::new(first_kind, prov, move |x| {
            let slot = canonical_slot(family, x).ok_or_else(|| not_canonical(x))?;
            let pick = |i: usize| -> Result<i64, ExtractError> {
                grow(i + 1)?;
                Ok(picks.get(i).expect("grown"))
            };
            match slot {
                Slot::GridA(i) => {
                    let e = pick(i.unsigned_abs() as usize)?;
                    Ok(ev.at(i.signum() * e))
                }
                Slot::GridB(i) => {
                    let e = pick(i.unsigned_abs() as usize)?;
                    Ok(eu.at(i.signum() * e))
                }
                // interleaved negative picks form the free antichain
                Slot::A(j) => {
                    let level = (j / 2) as usize;
                    let e = pick(level)?;
                    if j % 2 == 0 {
                        Ok(eu.at(-e))
                    } else {
                        Ok(ev.at(-e))
                    }
                }
                Slot::CopyLow(i) => {
                    let e = pick(i as usize + 1)?;
                    Ok(ev.at(e))
                }
                Slot::CopyHigh(i) => {
                    let e = pick(i as usize + 1)?;
                    Ok(eu.at(e))
                }
                _ => Err(not_canonical(x)),
            }
        }))
    }
}

impl Engine {
    // standalone entry points for the lemma operations

    pub fn no_antichains_public(
        &mut self,
        antichain: &Stream,
        chain: &Stream,
    ) -> Result<ForbiddenCertificate, ExtractError> {
        self.no_antichains(0, antichain, chain).map_err(flow_to_err)
    }

    pub fn skyscraper_public(
        &mut self,
        first: &Stream,
        second: &Stream,
        completion: &Stream,
    ) -> Result<ForbiddenCertificate, ExtractError> {
        let outcome = self.skyscraper(first, second).map_err(flow_to_err)?;
        Ok(self.assemble_skyscraper(0, outcome, first, second, completion))
    }

    pub fn two_level_public(
        &mut self,
        u: &ElementId,
        v: &ElementId,
    ) -> Result<ForbiddenCertificate, ExtractError> {
        self.two_level(12, u, v).map_err(flow_to_err)
    }
}

fn flow_to_err(f: Flow) -> ExtractError {
    match f {
        Flow::Fail(e) => e,
        Flow::Restart(_) => ExtractError::Exhausted {
            state: "power reduction requested outside the full pipeline".to_string(),
        },
    }
}

fn not_canonical(x: &ElementId) -> ExtractError {
    ExtractError::Precondition(format!("not a canonical element: {x}"))
}

/// A certificate whose canonical carrier splits into a primary part and an
/// attached part mapped to two streams.
fn two_part_certificate(
    kind: ForbiddenKind,
    prov: Provenance,
    primary: Stream,
    secondary: Stream,
) -> ForbiddenCertificate {
    let family = kind.family;
    ForbiddenCertificate::new(kind, prov, move |x| match canonical_slot(family, x) {
        Some(Slot::A(n)) => Ok(primary.at(n)),
        Some(Slot::C(n)) | Some(Slot::B(n)) => Ok(secondary.at(n)),
        _ => Err(not_canonical(x)),
    })
}

/// The split certificate of the two-level first subcase: one orbit element
/// over its related part and the unrelated remainder of the other orbit.
fn split_certificate(
    p: &Presentation,
    kind: ForbiddenKind,
    prov: Provenance,
    pivot: ElementId,
    other: Arc<Orbit>,
    related: Rel,
    horizon: u64,
) -> ForbiddenCertificate {
    let complement = match related {
        Rel::StrictlyBelow => Rel::NotStrictlyBelow,
        Rel::StrictlyAbove => Rel::NotStrictlyAbove,
        _ => Rel::Incomparable,
    };
    let rel_part = z_filtered(p, other.clone(), pivot.clone(), related, horizon);
    let unrel_part = z_filtered(p, other, pivot.clone(), complement, horizon);
    let family = kind.family;
    ForbiddenCertificate::new(kind, prov, move |x| match canonical_slot(family, x) {
        Some(Slot::Point) => Ok(pivot.clone()),
        Some(Slot::A(n)) => rel_part(n),
        Some(Slot::B(n)) => unrel_part(n),
        _ => Err(not_canonical(x)),
    })
}

type LazyElements = Arc<dyn Fn(u64) -> Result<ElementId, ExtractError> + Send + Sync>;

/// Lazily enumerate the orbit elements (zigzag over exponents) satisfying a
/// relation against a fixed element.
fn z_filtered(
    p: &Presentation,
    orbit: Arc<Orbit>,
    c: ElementId,
    rel: Rel,
    horizon: u64,
) -> LazyElements {
    let picks = PickTable::new();
    let p = p.clone();
    Arc::new(move |n: u64| {
        let ok = picks.ensure(n as usize + 1, |have| {
            let mut t = have.last().map_or(0, |v| *v as u64 + 1);
            let cap = t + horizon * 40 + 400;
            while t < cap {
                let x = orbit.at(zigzag(t));
                let le = p.leq(&x, &c);
                let ge = p.leq(&c, &x);
                let holds = match rel {
                    Rel::StrictlyBelow => le && !ge,
                    Rel::StrictlyAbove => ge && !le,
                    Rel::Incomparable => !le && !ge,
                    Rel::NotStrictlyBelow => !(le && !ge),
                    Rel::NotStrictlyAbove => !(ge && !le),
                };
                if holds {
                    return Some(t as i64);
                }
                t += 1;
            }
            None
        });
        if !ok {
            return Err(ExtractError::Exhausted {
                state: "filtered orbit enumeration ran out of budget".to_string(),
            });
        }
        Ok(orbit.at(zigzag(picks.get(n as usize).expect("ensured") as u64)))
    })
}

/// Lazily filtered stream: positions whose element satisfies the relation
/// against a fixed element.
fn filtered_stream(
    p: &Presentation,
    base: Stream,
    c: ElementId,
    rel: Rel,
    horizon: u64,
) -> Stream {
    let picks = PickTable::new();
    let p = p.clone();
    let label = format!("{} filtered", base.label);
    Stream::synthetic(
        move |n: u64| {
            let ok = picks.ensure(n as usize + 1, |have| {
                let mut k = have.last().map_or(0, |v| *v as u64 + 1);
                let cap = k + horizon * 40 + 400;
                while k < cap {
                    let x = base.at(k);
                    let le = p.leq(&x, &c);
                    let ge = p.leq(&c, &x);
                    let holds = match rel {
                        Rel::StrictlyBelow => le && !ge,
                        Rel::StrictlyAbove => ge && !le,
                        Rel::Incomparable => !le && !ge,
                        Rel::NotStrictlyBelow => !(le && !ge),
                        Rel::NotStrictlyAbove => !(ge && !le),
                    };
                    if holds {
                        return Some(k as i64);
                    }
                    k += 1;
                }
                None
            });
            if ok {
                base.at(picks.get(n as usize).expect("ensured") as u64)
            } else {
                // an impossible address surfaces through the verifier
                ElementId::nat(u64::MAX)
            }
        },
        label,
    )
}
