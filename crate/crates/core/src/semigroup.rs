//! Numerical semigroup arithmetic for torus knots.
//!
//! The semigroup of T(p,q) is <p,q> = {px + qy | x,y >= 0}. Its gap count is
//! the knot genus and its largest gap is the Frobenius number; everything the
//! staircase and Upsilon modules need is derived from membership queries.

use std::fmt;

use crate::error::{Error, Result};

/// Greatest common divisor.
pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// Inverse of `a` modulo `m`, for gcd(a,m) = 1 and m >= 1.
fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

/// The torus knot T(p,q), stored with 1 <= p < q and gcd(p,q) = 1.
///
/// `p == 1` encodes the unknot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusKnot {
    p: u64,
    q: u64,
}

impl TorusKnot {
    /// Build T(p,q). Requires 1 <= p < q and gcd(p,q) = 1.
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidKnot {
                p,
                q,
                reason: "indices must be positive".into(),
            });
        }
        if p >= q {
            return Err(Error::InvalidKnot {
                p,
                q,
                reason: "requires p < q".into(),
            });
        }
        if gcd(p, q) != 1 {
            return Err(Error::InvalidKnot {
                p,
                q,
                reason: format!("gcd({p},{q}) != 1"),
            });
        }
        // Conductor and genus must stay representable; anything larger is far
        // beyond what a run scan could traverse anyway.
        if u64::try_from((p as u128 - 1) * (q as u128 - 1)).is_err() {
            return Err(Error::InvalidKnot {
                p,
                q,
                reason: "conductor exceeds the supported integer range".into(),
            });
        }
        Ok(Self { p, q })
    }

    /// Build the knot from indices in either order, since T(a,b) and T(b,a)
    /// are the same knot. T(1,1) normalizes to the unknot T(1,2).
    pub fn normalized(a: u64, b: u64) -> Result<Self> {
        if a == 1 && b == 1 {
            return Self::new(1, 2);
        }
        if a <= b {
            Self::new(a, b)
        } else {
            Self::new(b, a)
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn is_unknot(&self) -> bool {
        self.p == 1
    }

    /// Seifert genus (p-1)(q-1)/2, which equals the semigroup gap count.
    pub fn genus(&self) -> u64 {
        (self.p - 1) * (self.q - 1) / 2
    }

    /// Conductor (p-1)(q-1) of the semigroup <p,q>.
    pub fn conductor(&self) -> u64 {
        (self.p - 1) * (self.q - 1)
    }

    pub fn semigroup(&self) -> Semigroup {
        Semigroup::new(self)
    }
}

impl fmt::Display for TorusKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{})", self.p, self.q)
    }
}

/// The numerical semigroup <p,q> of a torus knot, with membership answered in
/// O(1) by Apery-set arithmetic: n belongs to <p,q> exactly when n is at least
/// the smallest multiple of q in its residue class mod p.
#[derive(Clone, Debug)]
pub struct Semigroup {
    p: u64,
    q: u64,
    conductor: u64,
    genus: u64,
    q_inv_mod_p: u64,
}

impl Semigroup {
    pub fn new(knot: &TorusKnot) -> Self {
        let (p, q) = (knot.p(), knot.q());
        Self {
            p,
            q,
            conductor: knot.conductor(),
            genus: knot.genus(),
            q_inv_mod_p: if p == 1 { 0 } else { mod_inverse(q % p, p) },
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Smallest N such that every n >= N is a member: (p-1)(q-1).
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Number of gaps, (p-1)(q-1)/2.
    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// Largest non-member pq - p - q, or None for the unknot semigroup.
    pub fn frobenius(&self) -> Option<u64> {
        if self.p == 1 {
            None
        } else {
            Some(self.conductor - 1)
        }
    }

    /// Membership test. Negative integers are never members.
    pub fn contains(&self, n: i64) -> bool {
        if n < 0 {
            return false;
        }
        let n = n as u64;
        if self.p == 1 || n >= self.conductor {
            return true;
        }
        let residue = n % self.p;
        let witness = (residue as u128 * self.q_inv_mod_p as u128 % self.p as u128)
            * self.q as u128;
        n as u128 >= witness
    }

    /// The gaps of the semigroup, in increasing order.
    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&n| !self.contains(n as i64))
            .collect()
    }

    /// Counting function: the number of members strictly below `m`.
    pub fn counting(&self, m: u64) -> u64 {
        if m >= self.conductor {
            return m - self.genus;
        }
        (0..m).filter(|&n| self.contains(n as i64)).count() as u64
    }
}

impl fmt::Display for Semigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{}>", self.p, self.q)
    }
}
