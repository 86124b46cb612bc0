//! Memoized orbits and the element streams the extraction engine works on.

use crate::maps::{ElementPattern, SelfMap};
use crate::order::ElementId;
use std::sync::{Arc, Mutex};

/// The full two-sided orbit of one element under a self-map, extended and
/// cached on demand. Shared by streams and certificate embeddings.
pub struct Orbit {
    map: SelfMap,
    base: ElementId,
    fwd: Mutex<Vec<ElementId>>,
    bwd: Mutex<Vec<ElementId>>,
}

impl Orbit {
    pub fn new(map: SelfMap, base: ElementId) -> Arc<Self> {
        Arc::new(Orbit {
            map,
            base,
            fwd: Mutex::new(Vec::new()),
            bwd: Mutex::new(Vec::new()),
        })
    }

    pub fn base(&self) -> &ElementId {
        &self.base
    }

    pub fn map(&self) -> &SelfMap {
        &self.map
    }

    /// The orbit element at signed exponent k.
    pub fn at(&self, k: i64) -> ElementId {
        if k == 0 {
            return self.base.clone();
        }
        let (cache, step_fwd) = if k > 0 {
            (&self.fwd, true)
        } else {
            (&self.bwd, false)
        };
        let need = k.unsigned_abs() as usize;
        let mut cache = cache.lock().expect("orbit cache");
        while cache.len() < need {
            let prev = cache.last().unwrap_or(&self.base);
            let next = if step_fwd {
                self.map.apply(prev)
            } else {
                self.map.apply_inverse(prev)
            };
            cache.push(next);
        }
        cache[need - 1].clone()
    }
}

type NthFn = Arc<dyn Fn(u64) -> ElementId + Send + Sync>;

#[derive(Clone)]
enum StreamKind {
    /// s_k = orbit(offset + step * k)
    OrbitRay {
        orbit: Arc<Orbit>,
        offset: i64,
        step: i64,
    },
    /// arbitrary element function, no structural tail
    Synthetic { nth: NthFn },
}

/// An infinite element sequence, lazily evaluated. Orbit-backed streams
/// inherit a structural tail from the map's orbit shape; synthetic streams
/// (greedy picks, filters) are opaque to the oracle.
#[derive(Clone)]
pub struct Stream {
    kind: StreamKind,
    pub label: String,
}

impl Stream {
    pub fn new(orbit: Arc<Orbit>, offset: i64, step: i64, label: impl Into<String>) -> Self {
        debug_assert!(step != 0);
        Stream {
            kind: StreamKind::OrbitRay {
                orbit,
                offset,
                step,
            },
            label: label.into(),
        }
    }

    /// Forward orbit x, x^1, x^2, ...
    pub fn forward(orbit: Arc<Orbit>, label: impl Into<String>) -> Self {
        Stream::new(orbit, 0, 1, label)
    }

    /// Backward orbit starting at x^{-start}: x^{-start}, x^{-start-1}, ...
    pub fn backward_from(orbit: Arc<Orbit>, start: u64, label: impl Into<String>) -> Self {
        Stream::new(orbit, -(start as i64), -1, label)
    }

    pub fn synthetic(
        nth: impl Fn(u64) -> ElementId + Send + Sync + 'static,
        label: impl Into<String>,
    ) -> Self {
        Stream {
            kind: StreamKind::Synthetic { nth: Arc::new(nth) },
            label: label.into(),
        }
    }

    pub fn at(&self, k: u64) -> ElementId {
        match &self.kind {
            StreamKind::OrbitRay {
                orbit,
                offset,
                step,
            } => orbit.at(offset + step * k as i64),
            StreamKind::Synthetic { nth } => nth(k),
        }
    }

    /// The stream shifted to start at position n.
    pub fn suffix(&self, n: u64) -> Stream {
        let label = format!("{}[{n}..]", self.label);
        match &self.kind {
            StreamKind::OrbitRay {
                orbit,
                offset,
                step,
            } => Stream::new(orbit.clone(), offset + step * n as i64, *step, label),
            StreamKind::Synthetic { nth } => {
                let nth = nth.clone();
                Stream {
                    kind: StreamKind::Synthetic {
                        nth: Arc::new(move |k| nth(k + n)),
                    },
                    label,
                }
            }
        }
    }

    /// The structural tail: for k >= from, s_k = pattern.at(k - from).
    /// Derived from the orbit shape of the base element.
    pub fn tail_pattern(&self) -> Option<(u64, ElementPattern)> {
        let StreamKind::OrbitRay {
            orbit,
            offset,
            step,
        } = &self.kind
        else {
            return None;
        };
        let shape = orbit.map().orbit_shape(orbit.base())?;
        let exponent = |k: i64| offset + step * k;
        if *step > 0 {
            let from = shape.forward.from as i64;
            let k0 = div_ceil(from - offset, *step).max(0);
            let t0 = exponent(k0) - from;
            debug_assert!(t0 >= 0);
            Some((
                k0 as u64,
                reparam(&shape.forward.pattern, t0 as u64, *step as u64),
            ))
        } else {
            let from = shape.backward.from as i64;
            let k0 = div_ceil(-from - offset, *step).max(0);
            let t0 = -exponent(k0) - from;
            debug_assert!(t0 >= 0);
            Some((
                k0 as u64,
                reparam(&shape.backward.pattern, t0 as u64, (-step) as u64),
            ))
        }
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    let q = a / b;
    if a % b != 0 && ((a % b > 0) == (b > 0)) {
        q + 1
    } else {
        q
    }
}

/// Reindex a pattern: t -> t0 + mult * t.
fn reparam(pat: &ElementPattern, t0: u64, mult: u64) -> ElementPattern {
    match pat {
        ElementPattern::Leaf {
            path,
            family,
            index0,
            step,
            nat,
        } => ElementPattern::Leaf {
            path: path.clone(),
            family: *family,
            index0: index0 + step * t0 as i64,
            step: step * mult as i64,
            nat: *nat,
        },
        ElementPattern::Copies {
            prefix,
            copy0,
            copy_step,
            suffix,
            family,
            index,
        } => ElementPattern::Copies {
            prefix: prefix.clone(),
            copy0: copy0 + copy_step * t0,
            copy_step: copy_step * mult,
            suffix: suffix.clone(),
            family: *family,
            index: *index,
        },
        ElementPattern::Constant(e) => ElementPattern::Constant(e.clone()),
    }
}

/// A lazily extended, memoized pick of positions (greedy constructions and
/// recursions); certificate embeddings capture these tables.
pub struct PickTable {
    picks: Mutex<Vec<i64>>,
}

impl PickTable {
    pub fn new() -> Arc<Self> {
        Arc::new(PickTable {
            picks: Mutex::new(Vec::new()),
        })
    }

    pub fn seeded(initial: Vec<i64>) -> Arc<Self> {
        Arc::new(PickTable {
            picks: Mutex::new(initial),
        })
    }

    pub fn len(&self) -> usize {
        self.picks.lock().expect("pick table").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, i: usize) -> Option<i64> {
        self.picks.lock().expect("pick table").get(i).copied()
    }

    pub fn push(&self, v: i64) {
        self.picks.lock().expect("pick table").push(v);
    }

    pub fn last(&self) -> Option<i64> {
        self.picks.lock().expect("pick table").last().copied()
    }

    pub fn snapshot(&self) -> Vec<i64> {
        self.picks.lock().expect("pick table").clone()
    }

    /// Grow the table with `extend` until it has n entries; `extend`
    /// returns None when its budget is exhausted.
    pub fn ensure(&self, n: usize, mut extend: impl FnMut(&[i64]) -> Option<i64>) -> bool {
        let mut picks = self.picks.lock().expect("pick table");
        while picks.len() < n {
            match extend(&picks) {
                Some(v) => picks.push(v),
                None => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{witness, ForbiddenKind};
    use crate::order::Selector;

    #[test]
    fn orbit_caches_both_directions() {
        let w = witness("F1".parse::<ForbiddenKind>().unwrap());
        let orbit = Orbit::new(w.map.clone(), ElementId::nat(0).under(Selector::Left));
        // a_0 -> c_0 -> c_1; backward a_1, a_2
        assert_eq!(orbit.at(1), ElementId::nat(0).under(Selector::Right));
        assert_eq!(orbit.at(2), ElementId::nat(1).under(Selector::Right));
        assert_eq!(orbit.at(-2), ElementId::nat(2).under(Selector::Left));
        assert_eq!(orbit.at(0), ElementId::nat(0).under(Selector::Left));
    }

    #[test]
    fn stream_tail_composes_shape() {
        let w = witness("F1".parse::<ForbiddenKind>().unwrap());
        let orbit = Orbit::new(w.map.clone(), ElementId::nat(0).under(Selector::Left));
        let fwd = Stream::forward(orbit.clone(), "fwd");
        let (from, pat) = fwd.tail_pattern().expect("shape");
        for k in from..from + 10 {
            assert_eq!(pat.at(k - from), fwd.at(k), "forward k={k}");
        }
        let bwd = Stream::backward_from(orbit, 1, "bwd");
        let (from, pat) = bwd.tail_pattern().expect("shape");
        for k in from..from + 10 {
            assert_eq!(pat.at(k - from), bwd.at(k), "backward k={k}");
        }
    }

    #[test]
    fn suffix_shifts_positions() {
        let w = witness("F4".parse::<ForbiddenKind>().unwrap());
        let orbit = Orbit::new(w.map.clone(), ElementId::nat(0).under(Selector::Left));
        let fwd = Stream::forward(orbit, "fwd");
        let tail = fwd.suffix(3);
        for k in 0..5 {
            assert_eq!(tail.at(k), fwd.at(k + 3));
        }
    }
}
