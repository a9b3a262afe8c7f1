//! Parser for torus-knot sum expressions.
//!
//! Grammar (whitespace insensitive, leading `-` allowed):
//!
//! ```text
//! expr := term (("+" | "-") term)*
//! term := [uint "*"] "T" "(" uint "," uint ")"
//! ```
//!
//! Connected sum is `+`, the mirror is `-`, and `k*K` is the k-fold sum.

use crate::error::{Error, Result};
use crate::semigroup::TorusKnot;
use crate::sum::TorusKnotSum;

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn uint(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == start {
            return Err(self.error("expected an unsigned integer"));
        }
        self.text[start..self.pos]
            .parse::<u64>()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer literal out of range".into(),
            })
    }

    /// `[uint "*"] "T" "(" uint "," uint ")"`, returning (knot, multiplicity).
    fn term(&mut self) -> Result<(TorusKnot, u64)> {
        self.skip_ws();
        let term_start = self.pos;
        let mut multiplicity = 1u64;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            multiplicity = self.uint()?;
            self.skip_ws();
            self.expect('*')?;
            self.skip_ws();
        }
        if self.peek() != Some('T') {
            return Err(self.error("expected a torus knot 'T(p,q)'"));
        }
        self.bump();
        self.skip_ws();
        self.expect('(')?;
        self.skip_ws();
        let p = self.uint()?;
        self.skip_ws();
        self.expect(',')?;
        self.skip_ws();
        let q = self.uint()?;
        self.skip_ws();
        self.expect(')')?;
        let knot = TorusKnot::new(p, q).map_err(|e| Error::Parse {
            pos: term_start,
            msg: e.to_string(),
        })?;
        Ok((knot, multiplicity))
    }
}

/// Parse an expression into a formal sum. Coefficients of repeated knots are
/// merged and zero net terms dropped.
pub fn parse(text: &str) -> Result<TorusKnotSum> {
    let mut cur = Cursor::new(text);
    let mut sum = TorusKnotSum::empty();
    cur.skip_ws();
    let mut sign: i64 = 1;
    if cur.peek() == Some('-') {
        cur.bump();
        sign = -1;
    }
    loop {
        let (knot, multiplicity) = cur.term()?;
        let coeff = i64::try_from(multiplicity)
            .ok()
            .and_then(|m| m.checked_mul(sign))
            .ok_or_else(|| cur.error("coefficient out of range"))?;
        sum.add_term(knot, coeff);
        cur.skip_ws();
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                sign = 1;
            }
            Some('-') => {
                cur.bump();
                sign = -1;
            }
            Some(c) => return Err(cur.error(format!("unexpected character '{c}'"))),
        }
    }
    Ok(sum)
}
