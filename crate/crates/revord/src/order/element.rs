//! Element addressing for presented orders.
//!
//! An element is addressed by the path it takes through the combinator tree
//! (which side of a binary node, which copy of an infinite union), an optional
//! family tag inside multi-family generators, and an index into its carrier.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// One step of an element's path through the combinator tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Selector {
    /// First operand of a binary combinator.
    Left,
    /// Second operand of a binary combinator.
    Right,
    /// Component number inside an infinite disjoint union.
    Copy(u64),
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selector::Left => write!(f, "L"),
            Selector::Right => write!(f, "R"),
            Selector::Copy(i) => write!(f, "C{i}"),
        }
    }
}

/// Family tag inside a generator with more than one carrier family.
///
/// The reading is per generator: the two-row generators use `A`/`B` for
/// their antichain or ladder families, `C` for an attached chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::A => write!(f, "a"),
            Family::B => write!(f, "b"),
            Family::C => write!(f, "c"),
        }
    }
}

/// Position within a carrier: natural-indexed carriers never go below zero,
/// integer-indexed carriers admit any integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CarrierIndex {
    Nat(u64),
    Int(i64),
}

impl CarrierIndex {
    /// The index as a plain integer, whatever the carrier kind.
    pub fn value(&self) -> i64 {
        match *self {
            CarrierIndex::Nat(n) => n as i64,
            CarrierIndex::Int(i) => i,
        }
    }
}

/// Address of one element of a presented order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementId {
    pub path: Vec<Selector>,
    pub family: Option<Family>,
    pub index: CarrierIndex,
}

impl ElementId {
    pub fn nat(n: u64) -> Self {
        ElementId {
            path: Vec::new(),
            family: None,
            index: CarrierIndex::Nat(n),
        }
    }

    pub fn int(i: i64) -> Self {
        ElementId {
            path: Vec::new(),
            family: None,
            index: CarrierIndex::Int(i),
        }
    }

    pub fn in_family(mut self, family: Family) -> Self {
        self.family = Some(family);
        self
    }

    /// Prefix the path with one selector (address the same element one
    /// combinator level up).
    pub fn under(mut self, sel: Selector) -> Self {
        self.path.insert(0, sel);
        self
    }

    /// Prefix the path with several selectors, outermost first.
    pub fn under_path(mut self, prefix: &[Selector]) -> Self {
        let mut path = prefix.to_vec();
        path.append(&mut self.path);
        self.path = path;
        self
    }

    /// The element with the same address except for its index.
    pub fn with_index(mut self, index: CarrierIndex) -> Self {
        self.index = index;
        self
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for sel in &self.path {
            write!(f, "{sel}.")?;
        }
        if let Some(fam) = self.family {
            write!(f, "{fam}")?;
        }
        match self.index {
            CarrierIndex::Nat(n) => write!(f, "{n}"),
            CarrierIndex::Int(i) => {
                if i < 0 {
                    write!(f, "{i}")
                } else {
                    // keep integer carriers visually distinct from naturals
                    write!(f, "+{i}")
                }
            }
        }
    }
}

impl FromStr for ElementId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut path = Vec::new();
        let mut rest = s;
        loop {
            let Some(dot) = rest.find('.') else { break };
            let (seg, tail) = (&rest[..dot], &rest[dot + 1..]);
            let sel = match seg {
                "L" => Selector::Left,
                "R" => Selector::Right,
                _ => {
                    let Some(num) = seg.strip_prefix('C') else {
                        return Err(format!("bad path segment {seg:?} in {s:?}"));
                    };
                    Selector::Copy(num.parse::<u64>().map_err(|e| e.to_string())?)
                }
            };
            path.push(sel);
            rest = tail;
        }
        let family = match rest.chars().next() {
            Some('a') => Some(Family::A),
            Some('b') => Some(Family::B),
            Some('c') => Some(Family::C),
            _ => None,
        };
        let num = if family.is_some() { &rest[1..] } else { rest };
        let index = if let Some(pos) = num.strip_prefix('+') {
            CarrierIndex::Int(pos.parse::<i64>().map_err(|e| e.to_string())?)
        } else if num.starts_with('-') {
            CarrierIndex::Int(num.parse::<i64>().map_err(|e| e.to_string())?)
        } else {
            CarrierIndex::Nat(num.parse::<u64>().map_err(|e| e.to_string())?)
        };
        Ok(ElementId {
            path,
            family,
            index,
        })
    }
}

impl Serialize for ElementId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ElementId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_roundtrip() {
        let ids = [
            ElementId::nat(3),
            ElementId::nat(0).under(Selector::Right),
            ElementId::int(-2).in_family(Family::A),
            ElementId::int(4).in_family(Family::B),
            ElementId::nat(1)
                .under(Selector::Copy(7))
                .under(Selector::Right),
            ElementId::nat(5).in_family(Family::C).under(Selector::Left),
        ];
        for id in ids {
            let s = id.to_string();
            let back: ElementId = s.parse().unwrap();
            assert_eq!(back, id, "roundtrip of {s}");
        }
    }

    #[test]
    fn display_form() {
        assert_eq!(
            ElementId::nat(3).under(Selector::Right).to_string(),
            "R.3"
        );
        assert_eq!(
            ElementId::int(-2).in_family(Family::A).to_string(),
            "a-2"
        );
        assert_eq!(ElementId::int(2).in_family(Family::B).to_string(), "b+2");
    }
}
