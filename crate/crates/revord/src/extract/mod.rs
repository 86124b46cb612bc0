//! The extraction engine: given a presentation, an order preserving
//! bijection and a pair witnessing that it is no automorphism, classify the
//! witness into the proof's cases and produce a certificate embedding a
//! forbidden structure, verified on windows before it is returned.

mod analysis;
mod cases;
mod certificate;
mod oracle;
mod profile;
mod streams;

pub use analysis::{
    pattern_cross_incomparable, pattern_cross_le, pattern_cross_strict, pattern_self_shape,
    pattern_vs_point, pattern_vs_point_incomparable, pattern_vs_point_strict, Cross, CrossKind,
    SelfShape, SliceShape, TSet,
};
pub use cases::{
    case_classify, chain_or_antichain, classify_stream, rel5, Classification, Dichotomy, Rel5,
    SkyOutcome, StreamClass,
};
pub use certificate::{
    certificate_to_json, reverify_json, verify_certificate, CertificateJson, EmbeddingPair,
    ForbiddenCertificate, Provenance,
};
pub use oracle::{Assumption, CoveringsReply, InfinityOracle, Rel, Reply};
pub use profile::{
    descending_chain_in_downset, no_ascending_backward_check, orbit_profile,
    orbit_transport_check, OrbitProfile, OrbitRel,
};
pub use streams::{Orbit, PickTable, Stream};

use crate::maps::{inverse_consistent, is_order_preserving, SelfMap};
use crate::order::{ElementId, OrderError, Presentation};
use thiserror::Error;

/// Search and verification budget: orbit and oracle searches run to the
/// horizon; certificates must verify on a window of the given size before
/// they are returned.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub horizon: u64,
    pub verify_window: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            horizon: 64,
            verify_window: 50,
        }
    }
}

#[derive(Debug, Clone, Error)]
pub enum ExtractError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("budget exhausted: {state}")]
    Exhausted { state: String },
    #[error("hypothesis violation: {detail}")]
    HypothesisViolation { detail: String },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// Full pipeline: classify, apply the pre-case reductions, dispatch to the
/// per-case constructions, and return a certificate that has passed
/// verification at the budget's window size.
pub fn extract_forbidden(
    p: &Presentation,
    f: &SelfMap,
    u: &ElementId,
    v: &ElementId,
    budget: &Budget,
) -> Result<ForbiddenCertificate, ExtractError> {
    let precheck = budget.verify_window.min(24);
    if let crate::maps::CheckReport::Violation { condition, .. } =
        is_order_preserving(p, f, precheck)
    {
        return Err(ExtractError::Precondition(format!(
            "map is not order preserving on the check window ({condition})"
        )));
    }
    if let crate::maps::CheckReport::Violation { condition, .. } =
        inverse_consistent(p, f, precheck)
    {
        return Err(ExtractError::Precondition(format!(
            "map is not a bijection on the check window ({condition})"
        )));
    }
    let mut engine = cases::Engine::new(p, f, *budget);
    let mut cert = engine.run(u, v)?;
    cert.assumptions = engine.assumptions.clone();
    match verify_certificate(p, &cert, budget.verify_window) {
        crate::maps::CheckReport::Ok => Ok(cert),
        crate::maps::CheckReport::Violation { condition, witness } => {
            Err(ExtractError::Exhausted {
                state: format!(
                    "certificate of {} ({}) failed verification: {condition} at {:?}",
                    cert.kind,
                    cert.provenance,
                    witness.iter().map(|w| w.to_string()).collect::<Vec<_>>()
                ),
            })
        }
    }
}

/// The antichain-beside-chain lemma as a standalone operation: both streams
/// must live in `p`, the antichain pairwise incomparable and the chain
/// ascending, with no chain element below an antichain element.
pub fn no_antichains_extract(
    p: &Presentation,
    antichain: &Stream,
    chain: &Stream,
    oracle: InfinityOracle,
    budget: &Budget,
) -> Result<(ForbiddenCertificate, Vec<Assumption>), ExtractError> {
    let mut engine = cases::Engine::with_oracle(p, &SelfMap::identity(), *budget, oracle);
    let cert = engine
        .no_antichains_public(antichain, chain)
        .map_err(|e| e)?;
    Ok((cert, engine.assumptions))
}

/// The two-descending-chains lemma as a standalone operation: the streams
/// partition their union into two descending chains with incomparable
/// levels; the caller supplies the ascending chain completing the shape.
pub fn skyscraper_extract(
    p: &Presentation,
    first: &Stream,
    second: &Stream,
    completion: &Stream,
    oracle: InfinityOracle,
    budget: &Budget,
) -> Result<(ForbiddenCertificate, Vec<Assumption>), ExtractError> {
    let mut engine = cases::Engine::with_oracle(p, &SelfMap::identity(), *budget, oracle);
    let cert = engine.skyscraper_public(first, second, completion)?;
    Ok((cert, engine.assumptions))
}

/// The two-level analysis as a standalone operation; both orbits must
/// already be antichains with the first orbit maximal.
pub fn case12_extract(
    p: &Presentation,
    f: &SelfMap,
    u: &ElementId,
    v: &ElementId,
    oracle: InfinityOracle,
    budget: &Budget,
) -> Result<(ForbiddenCertificate, Vec<Assumption>), ExtractError> {
    let mut engine = cases::Engine::with_oracle(p, f, *budget, oracle);
    let cert = engine.two_level_public(u, v)?;
    Ok((cert, engine.assumptions))
}
