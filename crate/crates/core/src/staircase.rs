//! Staircase complexes of torus knots.
//!
//! The knot Floer complex of T(p,q) is a staircase complex St(b1,...,b2m)
//! whose step lengths are the run-length encoding of semigroup membership on
//! [0, conductor): b1 = length of the member run starting at 0, b2 = length of
//! the gap run after it, and so on, ending with the gap run whose last element
//! is the Frobenius number. The b-vector determines the Alexander polynomial
//! and the a-tuple.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{ATuple, EpsilonSign};
use crate::semigroup::TorusKnot;

/// A staircase complex, encoded by its palindromic vector of positive step
/// lengths. The empty vector is the trivial complex of the unknot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Staircase {
    b: Vec<u64>,
}

impl Staircase {
    /// Validate an explicit step vector: even length, all entries positive,
    /// palindromic.
    pub fn from_entries(b: Vec<u64>) -> Result<Self> {
        if !b.len().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "staircase vector must have even length, got {}",
                b.len()
            )));
        }
        if let Some(i) = b.iter().position(|&e| e == 0) {
            return Err(Error::Precondition(format!(
                "staircase entries must be positive; entry {i} is zero"
            )));
        }
        for i in 0..b.len() / 2 {
            if b[i] != b[b.len() - 1 - i] {
                return Err(Error::Precondition(format!(
                    "staircase vector is not palindromic at index {i}"
                )));
            }
        }
        Ok(Self { b })
    }

    /// The staircase of a torus knot, by run-length scan of semigroup
    /// membership below the conductor. Empty for the unknot.
    pub fn of(knot: &TorusKnot) -> Self {
        if knot.is_unknot() {
            return Self { b: Vec::new() };
        }
        let sg = knot.semigroup();
        let conductor = sg.conductor();
        let mut b = Vec::new();
        let mut in_run = true; // 0 is always a member
        let mut run_len = 0u64;
        for n in 0..conductor {
            let member = sg.contains(n as i64);
            if member == in_run {
                run_len += 1;
            } else {
                b.push(run_len);
                in_run = member;
                run_len = 1;
            }
        }
        b.push(run_len); // final gap run, ending at the Frobenius number
        Self { b }
    }

    pub fn entries(&self) -> &[u64] {
        &self.b
    }

    pub fn is_trivial(&self) -> bool {
        self.b.is_empty()
    }

    pub fn len(&self) -> usize {
        self.b.len()
    }

    pub fn is_empty(&self) -> bool {
        self.b.is_empty()
    }

    /// Sum of all steps; equals (p-1)(q-1) for torus knots.
    pub fn conductor(&self) -> u64 {
        self.b.iter().sum()
    }

    /// Sum of the even-position steps (the gap runs); equals the genus.
    pub fn genus(&self) -> u64 {
        self.b.iter().skip(1).step_by(2).sum()
    }

    pub fn max_entry(&self) -> Option<u64> {
        self.b.iter().copied().max()
    }

    pub fn has_prefix(&self, pattern: &[u64]) -> bool {
        self.b.starts_with(pattern)
    }

    /// Exponents of the Alexander polynomial sum (-1)^i t^alpha_i: the prefix
    /// sums of the step vector, with alpha_0 = 0.
    pub fn alexander_exponents(&self) -> Vec<u64> {
        let mut alpha = Vec::with_capacity(self.b.len() + 1);
        let mut acc = 0;
        alpha.push(acc);
        for &step in &self.b {
            acc += step;
            alpha.push(acc);
        }
        alpha
    }

    /// Hom's a-tuple of the staircase, which equals the step vector verbatim.
    /// Undefined for the trivial complex (epsilon = 0 there).
    pub fn a_tuple(&self) -> Result<ATuple> {
        if self.b.is_empty() {
            return Err(Error::Precondition(
                "a-tuple is undefined for the trivial staircase (epsilon = 0)".into(),
            ));
        }
        ATuple::new(self.b.iter().map(|&e| e as i64).collect())
    }

    /// Epsilon of the complex: +1 for a nonempty staircase, 0 for the trivial
    /// one.
    pub fn epsilon(&self) -> EpsilonSign {
        if self.b.is_empty() {
            EpsilonSign::Zero
        } else {
            EpsilonSign::PlusOne
        }
    }
}

impl fmt::Display for Staircase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "St(")?;
        for (i, e) in self.b.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// True when every step of the staircase of `knot` is at most p-1. A gap run
/// of length p or more would contradict p being a generator, so this holds
/// for every torus knot.
pub fn max_entry_bound(knot: &TorusKnot) -> bool {
    match Staircase::of(knot).max_entry() {
        Some(m) => m < knot.p(),
        None => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::gcd;

    fn st(p: u64, q: u64) -> Staircase {
        Staircase::of(&TorusKnot::new(p, q).unwrap())
    }

    /// Oracle: run-length scan over double-loop membership, no Apery logic.
    fn brute_staircase(p: u64, q: u64) -> Vec<u64> {
        let member = |n: u64| -> bool {
            let mut x = 0;
            while x * p <= n {
                if (n - x * p).is_multiple_of(q) {
                    return true;
                }
                x += 1;
            }
            false
        };
        let conductor = (p - 1) * (q - 1);
        let mut b = Vec::new();
        let mut in_run = true;
        let mut run_len = 0u64;
        for n in 0..conductor {
            if member(n) == in_run {
                run_len += 1;
            } else {
                b.push(run_len);
                in_run = !in_run;
                run_len = 1;
            }
        }
        if conductor > 0 {
            b.push(run_len);
        }
        b
    }

    #[test]
    fn staircase_examples() {
        assert_eq!(st(2, 3).entries(), &[1, 1]);
        assert_eq!(brute_staircase(2, 3), vec![1, 1]);
        assert_eq!(st(3, 4).entries(), &[1, 2, 2, 1]);
        assert_eq!(brute_staircase(3, 4), vec![1, 2, 2, 1]);
        assert_eq!(st(4, 9).entries(), &[1, 3, 1, 3, 2, 2, 2, 2, 3, 1, 3, 1]);
        assert_eq!(
            brute_staircase(4, 9),
            vec![1, 3, 1, 3, 2, 2, 2, 2, 3, 1, 3, 1]
        );
        assert!(st(1, 5).is_trivial());
    }

    #[test]
    fn alexander_exponent_examples() {
        assert_eq!(st(2, 3).alexander_exponents(), vec![0, 1, 2]);
        assert_eq!(st(3, 4).alexander_exponents(), vec![0, 1, 3, 5, 6]);
        assert_eq!(
            Staircase::from_entries(vec![]).unwrap().alexander_exponents(),
            vec![0]
        );
    }

    #[test]
    fn a_tuple_examples() {
        assert_eq!(st(3, 4).a_tuple().unwrap().entries(), &[1, 2, 2, 1]);
        assert_eq!(st(2, 3).a_tuple().unwrap().entries(), &[1, 1]);
        assert!(st(1, 5).a_tuple().is_err());
        assert_eq!(st(1, 5).epsilon(), EpsilonSign::Zero);
        assert_eq!(st(3, 4).epsilon(), EpsilonSign::PlusOne);
    }

    #[test]
    fn max_entry_bound_examples() {
        assert!(max_entry_bound(&TorusKnot::new(4, 9).unwrap()));
        assert!(max_entry_bound(&TorusKnot::new(2, 3).unwrap()));
        assert!(max_entry_bound(&TorusKnot::new(9, 13).unwrap()));
        assert!(st(9, 13).max_entry().unwrap() <= 8);
    }

    #[test]
    fn prefix_examples() {
        assert!(st(4, 9).has_prefix(&[1, 3, 1, 3]));
        assert!(st(9, 13).has_prefix(&[1, 8, 1, 3, 1, 4]));
        assert!(!Staircase::from_entries(vec![1, 1]).unwrap().has_prefix(&[2]));
    }

    #[test]
    fn from_entries_validation() {
        assert!(Staircase::from_entries(vec![1, 2, 1]).is_err());
        assert!(Staircase::from_entries(vec![1, 2, 2, 3]).is_err());
        assert!(Staircase::from_entries(vec![1, 0, 0, 1]).is_err());
        assert!(Staircase::from_entries(vec![1, 2, 2, 1]).is_ok());
    }

    /// (1-t) * sum_{s in S} t^s as polynomial coefficients up to the
    /// conductor degree, via double-loop membership.
    fn expansion_coefficients(p: u64, q: u64) -> Vec<i64> {
        let member = |n: i64| -> bool {
            if n < 0 {
                return false;
            }
            let n = n as u64;
            let mut x = 0;
            while x * p <= n {
                if (n - x * p).is_multiple_of(q) {
                    return true;
                }
                x += 1;
            }
            false
        };
        let degree = (p - 1) * (q - 1);
        (0..=degree as i64)
            .map(|n| member(n) as i64 - member(n - 1) as i64)
            .collect()
    }

    fn alternating_polynomial(alpha: &[u64], degree: u64) -> Vec<i64> {
        let mut coeffs = vec![0i64; degree as usize + 1];
        for (i, &a) in alpha.iter().enumerate() {
            coeffs[a as usize] += if i % 2 == 0 { 1 } else { -1 };
        }
        coeffs
    }

    #[test]
    fn alexander_polynomial_identity() {
        for p in 2..=9u64 {
            for q in (p + 1)..=16 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let s = st(p, q);
                let alpha = s.alexander_exponents();
                assert_eq!(*alpha.last().unwrap(), (p - 1) * (q - 1));
                assert_eq!(
                    expansion_coefficients(p, q),
                    alternating_polynomial(&alpha, (p - 1) * (q - 1)),
                    "Alexander identity fails for T({p},{q})"
                );
            }
        }
    }

    #[test]
    fn structural_invariants_small_range() {
        for p in 2..=12u64 {
            for q in (p + 1)..=20 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let knot = TorusKnot::new(p, q).unwrap();
                let s = Staircase::of(&knot);
                assert_eq!(s.entries(), brute_staircase(p, q).as_slice());
                assert_eq!(s.conductor(), (p - 1) * (q - 1));
                assert_eq!(s.genus(), knot.genus());
                assert!(s.len().is_multiple_of(2));
                assert!(max_entry_bound(&knot));
                assert!(Staircase::from_entries(s.entries().to_vec()).is_ok());
            }
        }
    }
}
