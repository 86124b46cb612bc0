//! A small expression language for building presentations.
//!
//! Grammar:
//! ```text
//! expr := atom | "dual(" expr ")" | "du(" expr "," expr ")"
//!       | "ls(" expr "," expr ")" | "duinf(" expr ")"
//! atom := "omega" | "omega_d" | "D1" | "Dinf" | "Zinf" | "Z2"
//!       | "F1".."F8" | "F1d".."F8d" | "G1".."G4" | "G1d".."G4d"
//! ```
//! Whitespace is insignificant. Printing a parsed expression normalizes it.

use crate::catalog::{self, ForbiddenKind};
use crate::order::Presentation;
use std::fmt;
use thiserror::Error;

/// Abstract syntax of order expressions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetExpr {
    Atom(Atom),
    Dual(Box<PosetExpr>),
    DisjointUnion(Box<PosetExpr>, Box<PosetExpr>),
    LinearSum(Box<PosetExpr>, Box<PosetExpr>),
    InfiniteUnion(Box<PosetExpr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Omega,
    OmegaDual,
    D1,
    Dinf,
    Zinf,
    Z2,
    Forbidden(ForbiddenKind),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Omega => write!(f, "omega"),
            Atom::OmegaDual => write!(f, "omega_d"),
            Atom::D1 => write!(f, "D1"),
            Atom::Dinf => write!(f, "Dinf"),
            Atom::Zinf => write!(f, "Zinf"),
            Atom::Z2 => write!(f, "Z2"),
            Atom::Forbidden(k) => write!(f, "{k}"),
        }
    }
}

impl fmt::Display for PosetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetExpr::Atom(a) => write!(f, "{a}"),
            PosetExpr::Dual(e) => write!(f, "dual({e})"),
            PosetExpr::DisjointUnion(a, b) => write!(f, "du({a}, {b})"),
            PosetExpr::LinearSum(a, b) => write!(f, "ls({a}, {b})"),
            PosetExpr::InfiniteUnion(e) => write!(f, "duinf({e})"),
        }
    }
}

/// Syntax error with 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: impl Into<String>) -> ParseError {
        let mut line = 1;
        let mut col = 1;
        for c in self.src[..self.pos].chars() {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn word(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.src[self.pos..]
            .chars()
            .next()
            .is_some_and(|c| c.is_alphanumeric() || c == '_')
        {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn expr(&mut self) -> Result<PosetExpr, ParseError> {
        self.skip_ws();
        let at_word = self.pos;
        let w = self.word();
        if w.is_empty() {
            return Err(self.err("expected an expression"));
        }
        match w.as_str() {
            "dual" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(PosetExpr::Dual(Box::new(e)))
            }
            "du" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(PosetExpr::DisjointUnion(Box::new(a), Box::new(b)))
            }
            "ls" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                Ok(PosetExpr::LinearSum(Box::new(a), Box::new(b)))
            }
            "duinf" => {
                self.expect('(')?;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(PosetExpr::InfiniteUnion(Box::new(e)))
            }
            "omega" => Ok(PosetExpr::Atom(Atom::Omega)),
            "omega_d" => Ok(PosetExpr::Atom(Atom::OmegaDual)),
            "D1" => Ok(PosetExpr::Atom(Atom::D1)),
            "Dinf" => Ok(PosetExpr::Atom(Atom::Dinf)),
            "Zinf" => Ok(PosetExpr::Atom(Atom::Zinf)),
            "Z2" => Ok(PosetExpr::Atom(Atom::Z2)),
            other => match other.parse::<ForbiddenKind>() {
                Ok(kind) => Ok(PosetExpr::Atom(Atom::Forbidden(kind))),
                Err(_) => {
                    self.pos = at_word;
                    Err(self.err(format!("unknown atom '{other}'")))
                }
            },
        }
    }
}

/// Parse an expression; trailing garbage is an error.
pub fn parse(text: &str) -> Result<PosetExpr, ParseError> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

/// Turn an expression into a presentation. Atoms map to generators and
/// catalog entries, nodes to combinators; the preorder flag propagates from
/// cluster atoms automatically.
pub fn elaborate(expr: &PosetExpr) -> Presentation {
    match expr {
        PosetExpr::Atom(Atom::Omega) => Presentation::omega(),
        PosetExpr::Atom(Atom::OmegaDual) => Presentation::omega_dual(),
        PosetExpr::Atom(Atom::D1) => Presentation::d1(),
        PosetExpr::Atom(Atom::Dinf) => Presentation::dinf(),
        PosetExpr::Atom(Atom::Zinf) => Presentation::zinf(),
        PosetExpr::Atom(Atom::Z2) => Presentation::z2(),
        PosetExpr::Atom(Atom::Forbidden(kind)) => catalog::forbidden(*kind),
        PosetExpr::Dual(e) => elaborate(e).dual(),
        PosetExpr::DisjointUnion(a, b) => elaborate(a).disjoint_union(&elaborate(b)),
        PosetExpr::LinearSum(a, b) => elaborate(a).linear_sum(&elaborate(b)),
        PosetExpr::InfiniteUnion(e) => elaborate(e).infinite_disjoint_union(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_normalizes() {
        let e = parse("  du( Dinf ,omega )").unwrap();
        assert_eq!(e.to_string(), "du(Dinf, omega)");
        let again = parse(&e.to_string()).unwrap();
        assert_eq!(again, e);
    }

    #[test]
    fn unclosed_paren_is_positioned() {
        let err = parse("du(Dinf,").unwrap_err();
        assert_eq!(err.line, 1);
        assert_eq!(err.col, 9);
    }

    #[test]
    fn unknown_atom() {
        let err = parse("du(Dinf, omegaX)").unwrap_err();
        assert!(err.message.contains("omegaX"), "{err}");
        assert_eq!(err.col, 10);
    }

    #[test]
    fn forbidden_atoms_parse() {
        for key in ["F1", "F8", "F3d", "G2", "G4d"] {
            let e = parse(key).unwrap();
            assert_eq!(e.to_string(), key);
        }
    }

    #[test]
    fn preorder_flag_propagates() {
        let p = elaborate(&parse("du(omega, Zinf)").unwrap());
        assert!(p.is_preorder());
        let q = elaborate(&parse("du(omega, Dinf)").unwrap());
        assert!(!q.is_preorder());
    }
}
