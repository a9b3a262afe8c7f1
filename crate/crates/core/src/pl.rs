//! Exact piecewise-linear functions on [0,2] with rational breakpoints.
//!
//! Functions are stored in canonical form: a strictly increasing list of
//! breakpoints from 0 to 2 with no interior point at which the left and right
//! slopes agree. Equality of canonical forms is exact function equality, so
//! zero-testing never involves floating point.

use std::fmt;

use num::{BigInt, BigRational, Zero};

use crate::error::{Error, Result};

/// Rational from an integer.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Rational n/d. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A piecewise-linear function on [0,2], linearly interpolated between
/// breakpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PLFunction {
    ts: Vec<BigRational>,
    vs: Vec<BigRational>,
}

impl PLFunction {
    /// Build from (t, value) pairs. The abscissae must be strictly increasing
    /// and run exactly from 0 to 2. Redundant collinear points are removed.
    pub fn new(points: Vec<(BigRational, BigRational)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::Precondition(
                "a piecewise-linear function needs at least the two endpoints".into(),
            ));
        }
        if points[0].0 != rat_int(0) || points[points.len() - 1].0 != rat_int(2) {
            return Err(Error::Precondition(
                "domain must be exactly [0,2]".into(),
            ));
        }
        for w in points.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Precondition(
                    "breakpoints must be strictly increasing".into(),
                ));
            }
        }
        Ok(Self::canonicalized(points))
    }

    fn canonicalized(points: Vec<(BigRational, BigRational)>) -> Self {
        let n = points.len();
        let mut kept: Vec<(BigRational, BigRational)> = Vec::with_capacity(n);
        kept.push(points[0].clone());
        for i in 1..n - 1 {
            let prev = kept.last().unwrap();
            let cur = &points[i];
            let next = &points[i + 1];
            // cur is redundant iff (prev, cur, next) are collinear:
            // (v_c - v_p)(t_n - t_c) == (v_n - v_c)(t_c - t_p)
            let lhs = (&cur.1 - &prev.1) * (&next.0 - &cur.0);
            let rhs = (&next.1 - &cur.1) * (&cur.0 - &prev.0);
            if lhs != rhs {
                kept.push(cur.clone());
            }
        }
        kept.push(points[n - 1].clone());
        let (ts, vs) = kept.into_iter().unzip();
        Self { ts, vs }
    }

    /// The zero function.
    pub fn zero() -> Self {
        Self {
            ts: vec![rat_int(0), rat_int(2)],
            vs: vec![rat_int(0), rat_int(0)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.vs.iter().all(|v| v.is_zero())
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.ts
    }

    pub fn values(&self) -> &[BigRational] {
        &self.vs
    }

    pub fn points(&self) -> impl Iterator<Item = (&BigRational, &BigRational)> {
        self.ts.iter().zip(self.vs.iter())
    }

    /// Exact value at `t` in [0,2].
    pub fn eval(&self, t: &BigRational) -> Result<BigRational> {
        if t < &rat_int(0) || t > &rat_int(2) {
            return Err(Error::OutOfDomain(t.to_string()));
        }
        let idx = self.ts.partition_point(|x| x <= t);
        if idx == self.ts.len() {
            return Ok(self.vs[self.vs.len() - 1].clone());
        }
        let (t0, v0) = (&self.ts[idx - 1], &self.vs[idx - 1]);
        let (t1, v1) = (&self.ts[idx], &self.vs[idx]);
        Ok(v0 + (v1 - v0) * (t - t0) / (t1 - t0))
    }

    /// Exact pointwise sum, re-canonicalized. The breakpoint set of the sum
    /// is contained in the union of the input breakpoints.
    pub fn add(&self, other: &Self) -> Self {
        let mut ts: Vec<BigRational> = Vec::with_capacity(self.ts.len() + other.ts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.ts.len() || j < other.ts.len() {
            let next = match (self.ts.get(i), other.ts.get(j)) {
                (Some(a), Some(b)) => {
                    if a < b {
                        i += 1;
                        a.clone()
                    } else if b < a {
                        j += 1;
                        b.clone()
                    } else {
                        i += 1;
                        j += 1;
                        a.clone()
                    }
                }
                (Some(a), None) => {
                    i += 1;
                    a.clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (None, None) => unreachable!(),
            };
            ts.push(next);
        }
        let points = ts
            .into_iter()
            .map(|t| {
                let v = self.eval(&t).unwrap() + other.eval(&t).unwrap();
                (t, v)
            })
            .collect();
        Self::canonicalized(points)
    }

    /// Exact scalar multiple.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let c = BigRational::from_integer(c.clone());
        Self {
            ts: self.ts.clone(),
            vs: self.vs.iter().map(|v| v * &c).collect(),
        }
    }

    pub fn scale_i64(&self, c: i64) -> Self {
        self.scale(&BigInt::from(c))
    }

    pub fn negate(&self) -> Self {
        self.scale_i64(-1)
    }

    /// Segment slopes, left to right.
    pub fn slopes(&self) -> Vec<BigRational> {
        self.ts
            .windows(2)
            .zip(self.vs.windows(2))
            .map(|(t, v)| (&v[1] - &v[0]) / (&t[1] - &t[0]))
            .collect()
    }

    /// Convex iff the slopes are nondecreasing left to right.
    pub fn is_convex(&self) -> bool {
        self.slopes().windows(2).all(|w| w[0] <= w[1])
    }

    /// The reflection t -> 2 - t.
    pub fn reflected(&self) -> Self {
        let two = rat_int(2);
        let points = self
            .ts
            .iter()
            .rev()
            .zip(self.vs.iter().rev())
            .map(|(t, v)| (&two - t, v.clone()))
            .collect();
        Self::canonicalized(points)
    }
}

impl fmt::Display for PLFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, v)) in self.points().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({t},{v})")?;
        }
        Ok(())
    }
}

/// A line y = slope * t + intercept with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub slope: BigInt,
    pub intercept: BigInt,
}

impl Line {
    pub fn new(slope: impl Into<BigInt>, intercept: impl Into<BigInt>) -> Self {
        Self {
            slope: slope.into(),
            intercept: intercept.into(),
        }
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        BigRational::from_integer(self.slope.clone()) * t
            + BigRational::from_integer(self.intercept.clone())
    }
}

/// Pointwise minimum of finitely many lines, restricted to [0,2].
///
/// Standard convex-hull-trick scan: sort by slope, drop lines that never
/// attain the minimum using the cross-multiplication test on consecutive
/// triples, intersect neighbors for the breakpoints. All arithmetic exact.
pub fn lower_envelope(lines: &[Line]) -> Result<PLFunction> {
    if lines.is_empty() {
        return Err(Error::Precondition(
            "lower envelope of an empty line set".into(),
        ));
    }
    // Decreasing slope; among equal slopes only the lowest intercept matters.
    let mut sorted: Vec<&Line> = lines.iter().collect();
    sorted.sort_by(|a, b| b.slope.cmp(&a.slope).then(a.intercept.cmp(&b.intercept)));
    sorted.dedup_by(|a, b| a.slope == b.slope);

    let mut hull: Vec<&Line> = Vec::with_capacity(sorted.len());
    for line in sorted {
        while hull.len() >= 2 {
            let l1 = hull[hull.len() - 2];
            let l2 = hull[hull.len() - 1];
            // l2 never strictly below both neighbors iff
            // x(l1,l3) <= x(l1,l2), cross-multiplied with positive denominators.
            let lhs = (&line.intercept - &l1.intercept) * (&l1.slope - &l2.slope);
            let rhs = (&l2.intercept - &l1.intercept) * (&l1.slope - &line.slope);
            if lhs <= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(line);
    }

    // Intersections of consecutive hull lines, strictly increasing.
    let crossings: Vec<BigRational> = hull
        .windows(2)
        .map(|w| {
            BigRational::new(
                &w[1].intercept - &w[0].intercept,
                &w[0].slope - &w[1].slope,
            )
        })
        .collect();

    let zero = rat_int(0);
    let two = rat_int(2);
    let mut points = Vec::new();
    let mut i = 0;
    while i < crossings.len() && crossings[i] <= zero {
        i += 1;
    }
    points.push((zero.clone(), hull[i].eval(&zero)));
    while i < crossings.len() && crossings[i] < two {
        points.push((crossings[i].clone(), hull[i].eval(&crossings[i])));
        i += 1;
    }
    points.push((two.clone(), hull[i].eval(&two)));
    PLFunction::new(points)
}
