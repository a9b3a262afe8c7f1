//! Formal integer combinations of torus knots.
//!
//! A sum models a connected sum of torus knots and their mirrors inside the
//! concordance group: negative coefficients are mirrored summands.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::semigroup::TorusKnot;

/// A formal sum of torus knots with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusKnotSum {
    terms: BTreeMap<TorusKnot, i64>,
}

impl TorusKnotSum {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Merge a term in; zero net coefficients are dropped.
    pub fn add_term(&mut self, knot: TorusKnot, coeff: i64) {
        let entry = self.terms.entry(knot).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.terms.remove(&knot);
        }
    }

    /// The knot T(q,kq+p) - T(p,q) - k*T(q,q+1), whose Upsilon invariant
    /// vanishes by the recursion.
    pub fn vanishing_combination(p: u64, q: u64, k: u64) -> Result<Self> {
        let kq_plus_p = k
            .checked_mul(q)
            .and_then(|kq| kq.checked_add(p))
            .ok_or_else(|| Error::Precondition("k*q + p overflows".into()))?;
        let mut sum = Self::empty();
        sum.add_term(TorusKnot::normalized(q, kq_plus_p)?, 1);
        sum.add_term(TorusKnot::normalized(p, q)?, -1);
        sum.add_term(TorusKnot::new(q, q + 1)?, -(k as i64));
        Ok(sum)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TorusKnot, &i64)> {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, knot: &TorusKnot) -> i64 {
        self.terms.get(knot).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (knot, coeff) in other.terms() {
            out.add_term(*knot, *coeff);
        }
        out
    }

    pub fn negate(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::empty();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }
}

impl fmt::Display for TorusKnotSum {
    /// Canonical form: terms in (p,q) order, coefficient 1 left implicit,
    /// e.g. `-T(4,9) - T(9,10) + T(9,13)`. The empty sum prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (knot, coeff)) in self.terms.iter().enumerate() {
            let magnitude = coeff.unsigned_abs();
            if i == 0 {
                if *coeff < 0 {
                    write!(f, "-")?;
                }
            } else if *coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if magnitude != 1 {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{knot}")?;
        }
        Ok(())
    }
}

impl FromStr for TorusKnotSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse(s)
    }
}
