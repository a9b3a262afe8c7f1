//! Decomposition of a torus-knot class into a block multiple plus a bounded
//! remainder.
//!
//! For T(p,q) with 4 <= p < q, write q = kp + r. The staircase starts with
//! the block (1,p-1)^k, so the class splits as k*[1,p-1,p-1,1] + O with the
//! remainder O controlled by the shape of the tail:
//!
//! - r = 1: the tail starts with a 2, and O is dominated by [1,n,n,1] for
//!   every positive n.
//! - r >= 2: the tail starts (1, r-1), and O is dominated by [1,p-1,p-1,1].
//! - 3 <= r < p/2: the tail starts (1, r-1, 1, p-r-1) and the concrete split
//!   of the staircase gives the lower bound O >> [1,r-1,r-1,1].
//!
//! The staircase prefixes are verified against the run scan on every call;
//! the domination conclusions themselves are imported results and are tagged
//! as axioms in certificates.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{peel, BracketClass, ClassExpr};
use crate::semigroup::TorusKnot;
use crate::staircase::Staircase;

/// Which tail shape the division q = kp + r produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    /// r = 1: tail begins with 2.
    UnitTail,
    /// r >= 2 without the refinement range: tail begins (1, r-1).
    GeneralTail,
    /// 3 <= r < p/2: tail begins (1, r-1, 1, p-r-1) and a lower bound holds.
    RefinedTail,
}

/// The upper bound recorded for the remainder O.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailBound {
    /// Dominated by [1,n,n,1] for every positive n (r = 1).
    AllUnitBrackets,
    /// Dominated by the given bracket, here always [1,p-1,p-1,1].
    Bracket(BracketClass),
}

/// The refinement data available when 3 <= r < p/2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    /// Number of (1,p-1) blocks peeled off; equals the quotient.
    pub peel_count: u64,
    /// The middle palindrome left after peeling; this is the concrete
    /// staircase class of the remainder O.
    pub middle: Staircase,
    /// O dominates this bracket, [1,r-1,r-1,1].
    pub dominates: BracketClass,
}

/// The verified decomposition [[T(p,q)]] = k*[1,p-1,p-1,1] + O.
#[derive(Clone, Debug)]
pub struct DecompositionRecord {
    knot: TorusKnot,
    quotient: u64,
    remainder: u64,
    branch: Branch,
    prefix: Vec<u64>,
    bracket: BracketClass,
    tail_a_prefix: Vec<u64>,
    dominated_by: TailBound,
    refinement: Option<Refinement>,
}

impl DecompositionRecord {
    pub fn knot(&self) -> &TorusKnot {
        &self.knot
    }

    /// k = floor(q/p).
    pub fn quotient(&self) -> u64 {
        self.quotient
    }

    /// r = q mod p.
    pub fn remainder(&self) -> u64 {
        self.remainder
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// The staircase prefix that was verified against the run scan.
    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    /// The block class [1,p-1,p-1,1].
    pub fn bracket(&self) -> &BracketClass {
        &self.bracket
    }

    /// Leading entries of the a-tuple of O: (2) for r = 1, else (1, r-1).
    pub fn tail_a_prefix(&self) -> &[u64] {
        &self.tail_a_prefix
    }

    pub fn dominated_by(&self) -> &TailBound {
        &self.dominated_by
    }

    pub fn refinement(&self) -> Option<&Refinement> {
        self.refinement.as_ref()
    }

    /// The symbolic class expression k*[1,p-1,p-1,1] + O(p,q).
    pub fn class_expr(&self) -> ClassExpr {
        let mut expr = ClassExpr::zero();
        expr.add_bracket(&self.bracket, self.quotient as i64);
        expr.add_remainder(self.knot.p(), self.knot.q(), 1);
        expr
    }
}

impl fmt::Display for DecompositionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}]] = {}*{} + O({},{})",
            self.knot,
            self.quotient,
            self.bracket,
            self.knot.p(),
            self.knot.q()
        )
    }
}

/// The expected staircase prefix for the plain split: (1,p-1)^k then the
/// start of the tail.
pub(crate) fn plain_prefix(p: u64, quotient: u64, remainder: u64) -> Vec<u64> {
    let mut prefix = Vec::with_capacity(2 * quotient as usize + 2);
    for _ in 0..quotient {
        prefix.extend([1, p - 1]);
    }
    if remainder == 1 {
        prefix.push(2);
    } else {
        prefix.extend([1, remainder - 1]);
    }
    prefix
}

/// The expected staircase prefix for the refined split:
/// (1,p-1)^k, 1, r-1, 1, p-r-1.
pub(crate) fn refined_prefix(p: u64, quotient: u64, remainder: u64) -> Vec<u64> {
    let mut prefix = Vec::with_capacity(2 * quotient as usize + 4);
    for _ in 0..quotient {
        prefix.extend([1, p - 1]);
    }
    prefix.extend([1, remainder - 1, 1, p - remainder - 1]);
    prefix
}

/// Decompose [[T(p,q)]] as k*[1,p-1,p-1,1] + O, verifying the staircase
/// prefix for the selected branch. Requires 4 <= p < q coprime.
pub fn decompose_torus(p: u64, q: u64) -> Result<DecompositionRecord> {
    let knot = TorusKnot::new(p, q)?;
    if p < 4 {
        return Err(Error::Precondition(format!(
            "decomposition requires p >= 4, got p = {p}"
        )));
    }
    let quotient = q / p;
    let remainder = q % p;
    debug_assert!(remainder >= 1, "coprime pair cannot have r = 0");
    let staircase = Staircase::of(&knot);

    let refined = remainder >= 3 && 2 * remainder < p;
    let branch = if remainder == 1 {
        Branch::UnitTail
    } else if refined {
        Branch::RefinedTail
    } else {
        Branch::GeneralTail
    };

    let prefix = if refined {
        refined_prefix(p, quotient, remainder)
    } else {
        plain_prefix(p, quotient, remainder)
    };
    if !staircase.has_prefix(&prefix) {
        return Err(Error::Certificate(format!(
            "staircase of T({p},{q}) does not begin with the expected prefix {prefix:?}"
        )));
    }

    let bracket = BracketClass::unit(p - 1)?;
    let tail_a_prefix = if remainder == 1 {
        vec![2]
    } else {
        vec![1, remainder - 1]
    };
    let dominated_by = if remainder == 1 {
        TailBound::AllUnitBrackets
    } else {
        TailBound::Bracket(bracket.clone())
    };

    let refinement = if refined {
        if let Some(max) = staircase.max_entry() {
            if max > p - 1 {
                return Err(Error::Certificate(format!(
                    "staircase of T({p},{q}) has an entry {max} above p-1"
                )));
            }
        }
        let (peel_count, middle) = peel(&staircase, p - 1)?;
        if peel_count != quotient {
            return Err(Error::Certificate(format!(
                "peeled {peel_count} blocks off T({p},{q}) but the quotient is {quotient}"
            )));
        }
        Some(Refinement {
            peel_count,
            middle,
            dominates: BracketClass::unit(remainder - 1)?,
        })
    } else {
        None
    };

    Ok(DecompositionRecord {
        knot,
        quotient,
        remainder,
        branch,
        prefix,
        bracket,
        tail_a_prefix,
        dominated_by,
        refinement,
    })
}
