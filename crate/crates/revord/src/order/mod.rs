//! Countable (pre)orders presented lazily: element addressing, the structure
//! tree of generators and combinators, canonical enumerations, and finite
//! windows.

mod element;
mod finite;
mod presentation;
mod window;

pub use element::{CarrierIndex, ElementId, Family, Selector};
pub use finite::FiniteOrder;
pub use presentation::{zigzag, OpaqueOrder, Presentation, Structure};
pub use window::{AxiomViolation, Window};

use thiserror::Error;

/// Errors raised by element addressing and window lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    /// The element's path names a selector that does not exist in the
    /// structure tree (wrong side, wrong arity, selector left over, ...).
    #[error("invalid element {element}: bad selector at depth {depth} ({reason})")]
    BadSelector {
        element: String,
        depth: usize,
        reason: String,
    },
    /// The element's index or family is outside the generator's carrier.
    #[error("invalid element {element}: {reason}")]
    BadCarrier { element: String, reason: String },
    /// An element was expected to be part of a window but is not.
    #[error("element {element} is not in the window")]
    NotInWindow { element: String },
    /// A size guard was exceeded (brute-force enumerations).
    #[error("size {got} exceeds the guard {max}")]
    SizeGuard { got: usize, max: usize },
}
