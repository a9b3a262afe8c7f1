//! The epsilon-order calculus: a-tuples and their trichotomy, the two
//! comparison rules decidable from a1/a2, the prefix-block split of
//! staircases, torus-knot decompositions, and machine-checkable domination
//! certificates.

mod certificate;
mod decompose;
mod family;

pub use certificate::{
    certify_proposition, certify_upper_bound, verify_certificate, verify_json_document,
    Certificate, Goal, Hypothesis, KnotTerm, Step, StepKind,
};
pub use decompose::{decompose_torus, Branch, DecompositionRecord, TailBound};
pub use family::{build_family, FamilyMember, FamilyRule};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::staircase::Staircase;

/// The epsilon invariant value of a complex or knot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EpsilonSign {
    MinusOne,
    Zero,
    PlusOne,
}

impl EpsilonSign {
    pub fn value(&self) -> i8 {
        match self {
            EpsilonSign::MinusOne => -1,
            EpsilonSign::Zero => 0,
            EpsilonSign::PlusOne => 1,
        }
    }

    /// Mirroring a knot negates epsilon.
    pub fn negate(&self) -> Self {
        match self {
            EpsilonSign::MinusOne => EpsilonSign::PlusOne,
            EpsilonSign::Zero => EpsilonSign::Zero,
            EpsilonSign::PlusOne => EpsilonSign::MinusOne,
        }
    }
}

/// Hom's tuple of numerical invariants a(C) = (a_1,...,a_n), defined when
/// epsilon(C) = 1. Entries are nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ATuple {
    entries: Vec<i64>,
}

/// The three mutually exclusive shapes a valid a-tuple can take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// (1) every entry is a positive integer.
    AllPositive,
    /// (2) n > 1, the first n-1 entries positive, the last below -1.
    NegativeLast,
    /// (3) n > 2, the first n-2 entries positive, a_{n-1} = -1, a_n negative.
    MinusOneThenNegative,
}

impl Condition {
    pub fn index(&self) -> u8 {
        match self {
            Condition::AllPositive => 1,
            Condition::NegativeLast => 2,
            Condition::MinusOneThenNegative => 3,
        }
    }
}

impl ATuple {
    /// Entries must be nonempty and nonzero; the trichotomy is checked by
    /// [`ATuple::classify`].
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Precondition("a-tuple must be nonempty".into()));
        }
        if let Some(i) = entries.iter().position(|&e| e == 0) {
            return Err(Error::Precondition(format!(
                "a-tuple entries must be nonzero; entry {i} is zero"
            )));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// The unique matching condition, or an error for a malformed tuple.
    pub fn classify(&self) -> Result<Condition> {
        let n = self.entries.len();
        let positive_through = |end: usize| self.entries[..end].iter().all(|&e| e > 0);
        if positive_through(n) {
            return Ok(Condition::AllPositive);
        }
        if n > 1 && positive_through(n - 1) && self.entries[n - 1] < -1 {
            return Ok(Condition::NegativeLast);
        }
        if n > 2 && positive_through(n - 2) && self.entries[n - 2] == -1 && self.entries[n - 1] < 0
        {
            return Ok(Condition::MinusOneThenNegative);
        }
        Err(Error::Precondition(format!(
            "a-tuple {:?} matches none of the three admissible shapes",
            self.entries
        )))
    }
}

impl fmt::Display for ATuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Outcome of the a1/a2 comparison between two classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparison {
    /// The left class is dominated by the right one.
    MuchLess,
    /// The left class dominates the right one.
    MuchGreater,
    /// Neither rule applies; the order is not decided here.
    Unknown,
}

/// The two comparison rules, applied in both argument orders and nothing
/// more: a1 strictly larger (both positive) forces "much less"; equal a1 and
/// a2 strictly larger forces "much greater". Everything else is Unknown.
pub fn compare(lhs: &ATuple, rhs: &ATuple) -> Comparison {
    if !matches!(lhs.classify(), Ok(Condition::AllPositive))
        || !matches!(rhs.classify(), Ok(Condition::AllPositive))
    {
        return Comparison::Unknown;
    }
    let a1 = lhs.entries[0];
    let b1 = rhs.entries[0];
    if a1 > b1 && b1 > 0 {
        return Comparison::MuchLess;
    }
    if b1 > a1 && a1 > 0 {
        return Comparison::MuchGreater;
    }
    if a1 == b1 && a1 > 0 {
        if let (Some(&a2), Some(&b2)) = (lhs.entries.get(1), rhs.entries.get(1)) {
            if a2 > b2 && b2 > 0 {
                return Comparison::MuchGreater;
            }
            if b2 > a2 && a2 > 0 {
                return Comparison::MuchLess;
            }
        }
    }
    Comparison::Unknown
}

/// Strip the maximal block prefix (1,n)^k (and its mirrored suffix) from a
/// staircase, leaving the middle palindrome. The split rewrites the class as
/// k*[1,n,n,1] + [middle] and is valid only when every remaining entry stays
/// at most n; a violation is an error naming the offending entry.
pub fn peel(staircase: &Staircase, n: u64) -> Result<(u64, Staircase)> {
    if n < 1 {
        return Err(Error::Precondition(
            "split block parameter must be positive".into(),
        ));
    }
    let b = staircase.entries();
    let mut k = 0usize;
    while (k + 1) * 4 <= b.len() && b[2 * k] == 1 && b[2 * k + 1] == n {
        k += 1;
    }
    let middle = &b[2 * k..b.len() - 2 * k];
    for (offset, &entry) in middle.iter().enumerate() {
        if entry > n {
            return Err(Error::SplitHypothesis {
                index: 2 * k + offset,
                entry,
                bound: n,
            });
        }
    }
    Ok((k as u64, Staircase::from_entries(middle.to_vec())?))
}

/// The epsilon-equivalence class [b1,...,b2m] of a staircase complex:
/// a palindromic vector of positive entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BracketClass {
    entries: Vec<u64>,
}

impl BracketClass {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        // Same shape constraints as a staircase vector.
        Staircase::from_entries(entries.clone())?;
        if entries.is_empty() {
            return Err(Error::Precondition("bracket class must be nonempty".into()));
        }
        Ok(Self { entries })
    }

    /// The four-entry class [1,x,x,1].
    pub fn unit(x: u64) -> Result<Self> {
        Self::new(vec![1, x, x, 1])
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn a_tuple(&self) -> ATuple {
        ATuple::new(self.entries.iter().map(|&e| e as i64).collect())
            .expect("bracket entries are positive")
    }
}

impl fmt::Display for BracketClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

/// A formal integer combination of bracket classes and opaque split
/// remainders O(p,q), used for the symbolic cancellation inside certificates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClassExpr {
    brackets: BTreeMap<Vec<u64>, i64>,
    remainders: BTreeMap<(u64, u64), i64>,
}

impl ClassExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_bracket(&mut self, bracket: &BracketClass, coeff: i64) {
        let entry = self.brackets.entry(bracket.entries().to_vec()).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.brackets.remove(bracket.entries());
        }
    }

    pub fn add_remainder(&mut self, p: u64, q: u64, coeff: i64) {
        let entry = self.remainders.entry((p, q)).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.remainders.remove(&(p, q));
        }
    }

    pub fn brackets(&self) -> impl Iterator<Item = (&Vec<u64>, &i64)> {
        self.brackets.iter()
    }

    pub fn remainders(&self) -> impl Iterator<Item = (&(u64, u64), &i64)> {
        self.remainders.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.brackets.is_empty() && self.remainders.is_empty()
    }
}

impl fmt::Display for ClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut write_term = |f: &mut fmt::Formatter<'_>,
                              coeff: i64,
                              body: String|
         -> fmt::Result {
            if first {
                first = false;
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = coeff.unsigned_abs();
            if magnitude != 1 {
                write!(f, "{magnitude}*")?;
            }
            write!(f, "{body}")
        };
        for (entries, coeff) in &self.brackets {
            let body = format!(
                "[{}]",
                entries
                    .iter()
                    .map(|e| e.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            write_term(f, *coeff, body)?;
        }
        for ((p, q), coeff) in &self.remainders {
            write_term(f, *coeff, format!("O({p},{q})"))?;
        }
        Ok(())
    }
}
