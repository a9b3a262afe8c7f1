//! The Upsilon invariant, exact on [0,2].
//!
//! For an L-space knot the invariant is the lower envelope of lines built
//! from the semigroup counting function I(m) = #(S intersect [0,m)):
//!
//! ```text
//! Upsilon(t) = -2 * min over m in {0,...,2g} of ( I(m) + (t/2)(g - m) )
//! ```
//!
//! which after clearing denominators is the negated lower envelope of the
//! integer lines (g - m) t + 2 I(m). The construction is validated against
//! the Feller-Krcatovich recursion
//! Upsilon_{T(q,kq+p)} = Upsilon_{T(p,q)} + k Upsilon_{T(q,q+1)},
//! which holds for every coprime pair and every k.

use num::BigInt;

use crate::error::{Error, Result};
use crate::pl::{lower_envelope, Line, PLFunction};
use crate::semigroup::{gcd, TorusKnot};
use crate::sum::TorusKnotSum;

/// Upsilon of a single torus knot. The unknot gives the zero function.
pub fn upsilon_torus(knot: &TorusKnot) -> PLFunction {
    if knot.is_unknot() {
        return PLFunction::zero();
    }
    let sg = knot.semigroup();
    let g = knot.genus();
    let mut lines = Vec::with_capacity(2 * g as usize + 1);
    let mut count: u64 = 0; // I(m), accumulated as m grows
    for m in 0..=2 * g {
        lines.push(Line::new(
            BigInt::from(g as i128 - m as i128),
            BigInt::from(2 * count as u128),
        ));
        if sg.contains(m as i64) {
            count += 1;
        }
    }
    lower_envelope(&lines)
        .expect("torus knot envelope is over a nonempty line set")
        .negate()
}

/// Upsilon of a formal sum, by linearity.
pub fn upsilon_of_sum(sum: &TorusKnotSum) -> PLFunction {
    let mut total = PLFunction::zero();
    for (knot, coeff) in sum.terms() {
        total = total.add(&upsilon_torus(knot).scale_i64(*coeff));
    }
    total
}

/// Exact check of the recursion
/// Upsilon_{T(q,kq+p)} = Upsilon_{T(p,q)} + k Upsilon_{T(q,q+1)}.
///
/// True for every coprime positive pair and every k >= 0; a false return
/// signals an implementation bug.
pub fn check_recursion(q: u64, p: u64, k: u64) -> Result<bool> {
    if p == 0 || q == 0 {
        return Err(Error::Precondition(
            "recursion check requires positive p and q".into(),
        ));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Precondition(format!(
            "recursion check requires coprime indices, got gcd({p},{q}) = {}",
            gcd(p, q)
        )));
    }
    let kq_plus_p = k
        .checked_mul(q)
        .and_then(|kq| kq.checked_add(p))
        .ok_or_else(|| Error::Precondition("k*q + p overflows".into()))?;
    let lhs = upsilon_torus(&TorusKnot::normalized(q, kq_plus_p)?);
    let base = upsilon_torus(&TorusKnot::normalized(p, q)?);
    let step = upsilon_torus(&TorusKnot::new(q, q + 1)?);
    let rhs = base.add(&step.scale(&BigInt::from(k)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pl::{rat, rat_int};
    use num::BigRational;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn knot(p: u64, q: u64) -> TorusKnot {
        TorusKnot::new(p, q).unwrap()
    }

    /// Direct minimization oracle, no envelope: -2 min_m (I(m) + (t/2)(g-m)).
    fn upsilon_direct(k: &TorusKnot, t: &BigRational) -> BigRational {
        let sg = k.semigroup();
        let g = k.genus();
        let half_t = t / rat_int(2);
        let mut best: Option<BigRational> = None;
        for m in 0..=2 * g {
            let val = rat_int(sg.counting(m) as i64)
                + &half_t * rat_int(g as i64 - m as i64);
            best = Some(match best {
                Some(b) if b <= val => b,
                _ => val,
            });
        }
        rat_int(-2) * best.unwrap()
    }

    #[test]
    fn trefoil_breakpoints() {
        let f = upsilon_torus(&knot(2, 3));
        assert_eq!(f.breakpoints(), &[rat_int(0), rat_int(1), rat_int(2)]);
        assert_eq!(f.values(), &[rat_int(0), rat_int(-1), rat_int(0)]);
        assert_eq!(f.eval(&rat_int(1)).unwrap(), rat_int(-1));
        assert_eq!(f.eval(&rat_int(0)).unwrap(), rat_int(0));
        // Envelope agrees with the direct minimization at a dense sample.
        for n in 0..=16 {
            let t = rat(n, 8);
            assert_eq!(f.eval(&t).unwrap(), upsilon_direct(&knot(2, 3), &t));
        }
    }

    #[test]
    fn unknot_is_zero() {
        assert!(upsilon_torus(&knot(1, 7)).is_zero());
        assert_eq!(upsilon_of_sum(&TorusKnotSum::empty()), PLFunction::zero());
    }

    #[test]
    fn torus_4_9_doubles_4_5() {
        let f49 = upsilon_torus(&knot(4, 9));
        let f45 = upsilon_torus(&knot(4, 5));
        assert_eq!(f49, f45.scale_i64(2));
    }

    #[test]
    fn envelope_matches_direct_minimization_at_random_points() {
        let mut rng = StdRng::seed_from_u64(7);
        for k in [knot(3, 5), knot(4, 9), knot(9, 13)] {
            let f = upsilon_torus(&k);
            for _ in 0..40 {
                let den = rng.random_range(1i64..=24);
                let num = rng.random_range(0i64..=2 * den);
                let t = rat(num, den);
                assert_eq!(f.eval(&t).unwrap(), upsilon_direct(&k, &t));
            }
        }
    }

    #[test]
    fn structural_properties_small_range() {
        for p in 2..=7u64 {
            for q in (p + 1)..=11 {
                if gcd(p, q) != 1 {
                    continue;
                }
                let k = knot(p, q);
                let f = upsilon_torus(&k);
                assert_eq!(f.eval(&rat_int(0)).unwrap(), rat_int(0));
                assert_eq!(f.eval(&rat_int(2)).unwrap(), rat_int(0));
                assert_eq!(f.reflected(), f, "T({p},{q}) not symmetric");
                assert!(f.is_convex(), "T({p},{q}) not convex");
                assert_eq!(f.slopes()[0], rat_int(-(k.genus() as i64)));
            }
        }
    }

    #[test]
    fn recursion_examples() {
        assert!(check_recursion(4, 1, 2).unwrap());
        assert!(check_recursion(9, 4, 1).unwrap());
        assert!(check_recursion(5, 3, 0).unwrap());
        assert!(check_recursion(4, 2, 1).is_err());
        assert!(check_recursion(0, 1, 1).is_err());
    }

    #[test]
    fn vanishing_combinations() {
        for text in [
            "T(9,13) - T(4,9) - T(9,10)",
            "T(21,31) - T(10,21) - T(21,22)",
        ] {
            let sum: TorusKnotSum = text.parse().unwrap();
            assert!(upsilon_of_sum(&sum).is_zero(), "{text} should vanish");
        }
        let nonzero: TorusKnotSum = "T(2,3)".parse().unwrap();
        assert!(!upsilon_of_sum(&nonzero).is_zero());
    }

    #[test]
    fn sum_map_is_a_homomorphism() {
        let a: TorusKnotSum = "T(2,3) + 2*T(3,4)".parse().unwrap();
        let b: TorusKnotSum = "-T(3,4) + T(4,5)".parse().unwrap();
        let lhs = upsilon_of_sum(&a.add(&b));
        let rhs = upsilon_of_sum(&a).add(&upsilon_of_sum(&b));
        assert_eq!(lhs, rhs);
        assert_eq!(
            upsilon_of_sum(&a.negate()),
            upsilon_of_sum(&a).negate()
        );
    }
}
