//! Forbidden-substructure certificates: a claimed embedding of a canonical
//! catalog structure into a target presentation, lazily evaluable and
//! verifiable on windows. The verifier checks induced-subposet semantics:
//! comparability must transfer in both directions.

use super::oracle::Assumption;
use super::ExtractError;
use crate::catalog::{forbidden, ForbiddenFamily, ForbiddenKind};
use crate::maps::CheckReport;
use crate::order::{CarrierIndex, ElementId, Family, Presentation, Selector};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Which proof step produced a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    /// case of the sixteen-way split, after the contradictory four are
    /// removed (1..=12); 0 for the preorder cluster routes
    pub case: u8,
    /// sub-branch tag, e.g. "no-antichains-ii" or "two-level-iii"
    pub subcase: Option<String>,
    /// whether a dualization normalization was applied on entry
    pub dualized: bool,
    /// power of the original map actually used
    pub power: u32,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}", self.case)?;
        if let Some(s) = &self.subcase {
            write!(f, " ({s})")?;
        }
        if self.dualized {
            write!(f, " [dualized]")?;
        }
        if self.power > 1 {
            write!(f, " [power {}]", self.power)?;
        }
        Ok(())
    }
}

type EmbedFn = Arc<dyn Fn(&ElementId) -> Result<ElementId, ExtractError> + Send + Sync>;

/// A claimed embedding of the canonical presentation of `kind` into a
/// target presentation.
#[derive(Clone)]
pub struct ForbiddenCertificate {
    pub kind: ForbiddenKind,
    pub provenance: Provenance,
    pub assumptions: Vec<Assumption>,
    embed: EmbedFn,
}

impl fmt::Debug for ForbiddenCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ForbiddenCertificate({}, {})", self.kind, self.provenance)
    }
}

impl ForbiddenCertificate {
    pub fn new(
        kind: ForbiddenKind,
        provenance: Provenance,
        embed: impl Fn(&ElementId) -> Result<ElementId, ExtractError> + Send + Sync + 'static,
    ) -> Self {
        ForbiddenCertificate {
            kind,
            provenance,
            assumptions: Vec::new(),
            embed: Arc::new(embed),
        }
    }

    /// The certificate for the dual reading of the same element map.
    pub fn dualized(mut self) -> Self {
        self.kind = self.kind.dual();
        self
    }

    pub fn embed(&self, canonical: &ElementId) -> Result<ElementId, ExtractError> {
        (self.embed)(canonical)
    }
}

/// Check injectivity and two-way order equivalence of the embedding on the
/// first n canonical elements.
pub fn verify_certificate(
    p: &Presentation,
    cert: &ForbiddenCertificate,
    n: u64,
) -> CheckReport {
    let canon = forbidden(cert.kind);
    let ids = canon.enumerate(n);
    let mut targets = Vec::with_capacity(ids.len());
    for id in &ids {
        match cert.embed(id) {
            Ok(t) => {
                if p.check_element(&t).is_err() {
                    return CheckReport::violation("embedding-image-invalid", vec![id.clone(), t]);
                }
                targets.push(t);
            }
            Err(e) => {
                return CheckReport::violation(
                    &format!("embedding-unavailable: {e}"),
                    vec![id.clone()],
                )
            }
        }
    }
    let mut seen: HashMap<&ElementId, usize> = HashMap::new();
    for (i, t) in targets.iter().enumerate() {
        if let Some(&j) = seen.get(t) {
            return CheckReport::violation("embedding-injectivity", vec![ids[j].clone(), ids[i].clone()]);
        }
        seen.insert(t, i);
    }
    for i in 0..ids.len() {
        for j in 0..ids.len() {
            let canon_le = canon.leq(&ids[i], &ids[j]);
            let target_le = p.leq(&targets[i], &targets[j]);
            if canon_le != target_le {
                return CheckReport::violation(
                    "induced-order-equivalence",
                    vec![ids[i].clone(), ids[j].clone(), targets[i].clone(), targets[j].clone()],
                );
            }
        }
    }
    CheckReport::Ok
}

/// Serialized certificate: the verified prefix is materialized, the rest of
/// the embedding stays lazy in memory only.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertificateJson {
    pub kind: String,
    pub dual: bool,
    pub case: String,
    pub assumptions: Vec<Assumption>,
    pub embedding: Vec<EmbeddingPair>,
    pub verified_window: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingPair {
    pub canonical: ElementId,
    pub target: ElementId,
}

pub fn certificate_to_json(
    cert: &ForbiddenCertificate,
    window: u64,
) -> Result<CertificateJson, ExtractError> {
    let canon = forbidden(cert.kind);
    let mut embedding = Vec::new();
    for id in canon.enumerate(window) {
        let target = cert.embed(&id)?;
        embedding.push(EmbeddingPair {
            canonical: id,
            target,
        });
    }
    Ok(CertificateJson {
        kind: cert.kind.to_string(),
        dual: cert.kind.dualized,
        case: cert.provenance.to_string(),
        assumptions: cert.assumptions.clone(),
        embedding,
        verified_window: window,
    })
}

/// Re-verify a serialized certificate against a presentation: the stored
/// canonical prefix must match the canonical enumeration, targets must be
/// injective and order-equivalent.
pub fn reverify_json(p: &Presentation, json: &CertificateJson, n: u64) -> CheckReport {
    let kind: ForbiddenKind = match json.kind.parse() {
        Ok(k) => k,
        Err(e) => return CheckReport::violation(&format!("bad-kind: {e}"), vec![]),
    };
    let canon = forbidden(kind);
    let upto = (n as usize).min(json.embedding.len());
    if (n as usize) > json.embedding.len() {
        return CheckReport::violation(
            &format!(
                "certificate holds {} pairs, {} requested",
                json.embedding.len(),
                n
            ),
            vec![],
        );
    }
    let ids = canon.enumerate(upto as u64);
    for (i, pair) in json.embedding.iter().take(upto).enumerate() {
        if pair.canonical != ids[i] {
            return CheckReport::violation(
                "canonical-enumeration-mismatch",
                vec![ids[i].clone(), pair.canonical.clone()],
            );
        }
        if p.check_element(&pair.target).is_err() {
            return CheckReport::violation("target-invalid", vec![pair.target.clone()]);
        }
    }
    let mut seen: HashMap<&ElementId, usize> = HashMap::new();
    for (i, pair) in json.embedding.iter().take(upto).enumerate() {
        if let Some(&j) = seen.get(&pair.target) {
            return CheckReport::violation(
                "embedding-injectivity",
                vec![ids[j].clone(), ids[i].clone()],
            );
        }
        seen.insert(&pair.target, i);
    }
    for i in 0..upto {
        for j in 0..upto {
            let canon_le = canon.leq(&ids[i], &ids[j]);
            let target_le = p.leq(&json.embedding[i].target, &json.embedding[j].target);
            if canon_le != target_le {
                return CheckReport::violation(
                    "induced-order-equivalence",
                    vec![
                        ids[i].clone(),
                        ids[j].clone(),
                        json.embedding[i].target.clone(),
                        json.embedding[j].target.clone(),
                    ],
                );
            }
        }
    }
    CheckReport::Ok
}

/// Canonical-carrier slots shared by the embedding builders: which part of
/// a catalog structure a canonical element addresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    /// primary natural-indexed part (antichain, cluster or ladder column A)
    A(u64),
    /// secondary natural-indexed part (ladder column B, free antichain)
    B(u64),
    /// attached chain part
    C(u64),
    /// the single extra point of the shapes that have one
    Point,
    /// integer-indexed grid families
    GridA(i64),
    GridB(i64),
    /// two-point components of the infinite-union shapes
    CopyLow(u64),
    CopyHigh(u64),
}

/// Parse a canonical element of `family`'s presentation into its slot.
pub fn canonical_slot(family: ForbiddenFamily, x: &ElementId) -> Option<Slot> {
    use Selector::{Copy, Left, Right};
    let nat = |x: &ElementId| match x.index {
        CarrierIndex::Nat(n) => Some(n),
        _ => None,
    };
    match family {
        ForbiddenFamily::F1 | ForbiddenFamily::F4 => match x.path.as_slice() {
            [Left] => Some(Slot::A(nat(x)?)),
            [Right] => Some(Slot::C(nat(x)?)),
            _ => None,
        },
        ForbiddenFamily::G1 | ForbiddenFamily::G2 | ForbiddenFamily::G3 => {
            match x.path.as_slice() {
                [Left] => Some(Slot::A(nat(x)?)),
                [Right] => Some(Slot::C(nat(x)?)),
                _ => None,
            }
        }
        ForbiddenFamily::F2 => match x.path.as_slice() {
            [Left, Left] => Some(Slot::Point),
            [Left, Right] => Some(Slot::A(nat(x)?)),
            [Right] => Some(Slot::B(nat(x)?)),
            _ => None,
        },
        ForbiddenFamily::F5 => match x.path.as_slice() {
            [Left, Left] => Some(Slot::Point),
            [Left, Right] => Some(Slot::A(nat(x)?)),
            [Right] => Some(Slot::C(nat(x)?)),
            _ => None,
        },
        ForbiddenFamily::F6 => match x.family? {
            Family::A => Some(Slot::A(nat(x)?)),
            Family::B => Some(Slot::B(nat(x)?)),
            Family::C => Some(Slot::C(nat(x)?)),
        },
        ForbiddenFamily::F7 => match x.family? {
            Family::A => Some(Slot::A(nat(x)?)),
            Family::C => Some(Slot::C(nat(x)?)),
            _ => None,
        },
        ForbiddenFamily::F8 => {
            let i = match x.index {
                CarrierIndex::Int(i) => i,
                _ => return None,
            };
            match x.family? {
                Family::A => Some(Slot::GridA(i)),
                Family::B => Some(Slot::GridB(i)),
                _ => None,
            }
        }
        ForbiddenFamily::F3 => match x.path.as_slice() {
            [Left] => Some(Slot::A(nat(x)?)),
            [Right, Copy(i), Left] => Some(Slot::CopyLow(*i)),
            [Right, Copy(i), Right] => Some(Slot::CopyHigh(*i)),
            _ => None,
        },
        ForbiddenFamily::G4 => match x.path.as_slice() {
            [Left] => Some(Slot::A(nat(x)?)),
            [Right, Copy(i)] => match nat(x)? {
                0 => Some(Slot::CopyLow(*i)),
                1 => Some(Slot::CopyHigh(*i)),
                _ => None,
            },
            _ => None,
        },
    }
}
