//! Machine-checkable domination certificates.
//!
//! A certificate is an append-only derivation: each step applies a named
//! rule to structured hypotheses and records the claim it establishes.
//! Structural rules are fully recomputed during verification (staircase
//! prefixes, block peels, exact Upsilon sums, symbolic cancellation in the
//! class group); axiom rules are imported results whose computable
//! hypotheses are re-checked and whose conclusions are taken on trust, and
//! they are explicitly labeled as such.
//!
//! Verification is independent of the code path that produced a certificate:
//! every hypothesis is re-checked, every claim re-rendered from the step's
//! own data, every cross-reference matched against the referenced step, and
//! the final facts matched against the goal. Changing any number in a
//! serialized certificate breaks at least one of these checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::decompose::{plain_prefix, refined_prefix};
use crate::order::{peel, BracketClass, ClassExpr};
use crate::semigroup::{gcd, TorusKnot};
use crate::staircase::Staircase;
use crate::sum::TorusKnotSum;
use crate::upsilon::upsilon_of_sum;

/// One summand of a formal knot sum, as stored in certificates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotTerm {
    pub p: u64,
    pub q: u64,
    pub coeff: i64,
}

/// Whether a step is recomputed outright or cites an imported result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Structural,
    Axiom,
}

/// A verifiable hypothesis of a certificate step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Hypothesis {
    /// gcd(a,b) = 1.
    Coprime { a: u64, b: u64 },
    /// q = quotient * p + remainder with 1 <= remainder < p.
    Division {
        p: u64,
        q: u64,
        quotient: u64,
        remainder: u64,
    },
    /// lhs < rhs.
    IntLt { lhs: i64, rhs: i64 },
    /// lhs <= rhs.
    IntLe { lhs: i64, rhs: i64 },
    /// The staircase of T(p,q) begins with the given entries.
    StaircasePrefix { p: u64, q: u64, prefix: Vec<u64> },
    /// Every staircase entry of T(p,q) is at most `bound`.
    StaircaseMaxEntry { p: u64, q: u64, bound: u64 },
    /// Peeling (1,level)^count off the staircase of T(p,q) leaves `middle`.
    StaircasePeel {
        p: u64,
        q: u64,
        level: u64,
        count: u64,
        middle: Vec<u64>,
    },
    /// A well-formed bracket class.
    Bracket { entries: Vec<u64> },
    /// A well-formed bracket class, cited for its positivity.
    BracketPositive { entries: Vec<u64> },
    /// A well-formed formal knot sum.
    KnotSum { terms: Vec<KnotTerm> },
    /// The Upsilon invariant of the sum is exactly the zero function.
    UpsilonZero { terms: Vec<KnotTerm> },
    /// Reference to the claim established by an earlier step.
    StepRef { index: usize, claim: String },
}

/// One derivation step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub kind: StepKind,
    pub lemma: String,
    pub hypotheses: Vec<Hypothesis>,
    pub claim: String,
}

/// What a certificate sets out to establish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Goal {
    /// [[sum]] >> [bracket], the lower-bound statement.
    Dominates {
        p: u64,
        q: u64,
        k: u64,
        knot: Vec<KnotTerm>,
        bracket: Vec<u64>,
        text: String,
    },
    /// |[[sum]]| << [bracket], the upper-bound statement.
    DominatedBy {
        p: u64,
        q: u64,
        k: u64,
        knot: Vec<KnotTerm>,
        bracket: Vec<u64>,
        text: String,
    },
    /// A chain of knots with independent classes and vanishing Upsilon.
    Family {
        members: Vec<crate::order::FamilyMember>,
        text: String,
    },
}

/// A goal, its derivation, and the verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub goal: Goal,
    pub steps: Vec<Step>,
    pub verdict: String,
}

/// Facts established by steps, in structured form. Claims are rendered from
/// these, never parsed back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Fact {
    Decomposition {
        p: u64,
        q: u64,
        quotient: u64,
        remainder: u64,
        bracket: Vec<u64>,
        tail: Tail,
    },
    RemainderDominatedUniversal {
        p: u64,
        q: u64,
    },
    RemainderDominated {
        p: u64,
        q: u64,
        bracket: Vec<u64>,
    },
    RemainderDominates {
        p: u64,
        q: u64,
        bracket: Vec<u64>,
    },
    BracketLess {
        small: Vec<u64>,
        large: Vec<u64>,
    },
    KnotDominates {
        terms: Vec<KnotTerm>,
        bracket: Vec<u64>,
    },
    KnotDominated {
        terms: Vec<KnotTerm>,
        bracket: Vec<u64>,
    },
    KnotPositive {
        terms: Vec<KnotTerm>,
    },
    EpsilonOne {
        terms: Vec<KnotTerm>,
    },
    ATupleBound {
        terms: Vec<KnotTerm>,
        a2_min: u64,
    },
    UpsilonVanishes {
        terms: Vec<KnotTerm>,
    },
    KnotMuchLess {
        lhs: Vec<KnotTerm>,
        rhs: Vec<KnotTerm>,
    },
    FamilyIndependent {
        members: Vec<Vec<KnotTerm>>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tail {
    /// Leading a-tuple entries of an opaque remainder complex.
    APrefix(Vec<u64>),
    /// The concrete middle staircase left by a block peel.
    Middle(Vec<u64>),
}

fn cert_err(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

fn to_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| cert_err(format!("{x} exceeds the signed integer range")))
}

fn unit_entries(x: u64) -> Vec<u64> {
    vec![1, x, x, 1]
}

/// Some(x) iff entries = [1,x,x,1] with x >= 1.
fn unit_param(entries: &[u64]) -> Option<u64> {
    match entries {
        [1, x, y, 1] if x == y && *x >= 1 => Some(*x),
        _ => None,
    }
}

/// The three-term sum T(q,kq+p) - T(p,q) - k*T(q,q+1) in certificate order.
pub(crate) fn family_terms(p: u64, q: u64, k: u64) -> Result<Vec<KnotTerm>> {
    let kq_plus_p = k
        .checked_mul(q)
        .and_then(|kq| kq.checked_add(p))
        .ok_or_else(|| Error::Precondition("k*q + p overflows".into()))?;
    Ok(vec![
        KnotTerm {
            p: q,
            q: kq_plus_p,
            coeff: 1,
        },
        KnotTerm { p, q, coeff: -1 },
        KnotTerm {
            p: q,
            q: q + 1,
            coeff: -to_i64(k)?,
        },
    ])
}

// ---------------------------------------------------------------------------
// Rendering

pub(crate) fn render_terms(terms: &[KnotTerm]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, term) in terms.iter().enumerate() {
        let magnitude = term.coeff.unsigned_abs();
        if i == 0 {
            if term.coeff < 0 {
                out.push('-');
            }
        } else if term.coeff < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if magnitude != 1 {
            out.push_str(&magnitude.to_string());
            out.push('*');
        }
        out.push_str(&format!("T({},{})", term.p, term.q));
    }
    out
}

fn render_bracket(entries: &[u64]) -> String {
    format!(
        "[{}]",
        entries
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn render_middle(entries: &[u64]) -> String {
    let shown: Vec<String> = entries.iter().take(4).map(|e| e.to_string()).collect();
    let ellipsis = if entries.len() > 4 { ",..." } else { "" };
    format!(
        "St({}{}; {} entries)",
        shown.join(","),
        ellipsis,
        entries.len()
    )
}

fn render_claim(fact: &Fact) -> String {
    match fact {
        Fact::Decomposition {
            p,
            q,
            quotient,
            bracket,
            tail,
            ..
        } => {
            let head = format!(
                "[[T({p},{q})]] = {quotient}*{} + O({p},{q})",
                render_bracket(bracket)
            );
            match tail {
                Tail::APrefix(ap) => {
                    let entries: Vec<String> = ap.iter().map(|e| e.to_string()).collect();
                    format!("{head}; a(O({p},{q})) = ({},...)", entries.join(","))
                }
                Tail::Middle(mid) => format!("{head}; O({p},{q}) = {}", render_middle(mid)),
            }
        }
        Fact::RemainderDominatedUniversal { p, q } => {
            format!("O({p},{q}) << [1,n,n,1] for every n >= 1")
        }
        Fact::RemainderDominated { p, q, bracket } => {
            format!("O({p},{q}) << {}", render_bracket(bracket))
        }
        Fact::RemainderDominates { p, q, bracket } => {
            format!("O({p},{q}) >> {}", render_bracket(bracket))
        }
        Fact::BracketLess { small, large } => {
            format!("{} << {}", render_bracket(small), render_bracket(large))
        }
        Fact::KnotDominates { terms, bracket } => {
            format!("[[{}]] >> {}", render_terms(terms), render_bracket(bracket))
        }
        Fact::KnotDominated { terms, bracket } => {
            format!(
                "|[[{}]]| << {}",
                render_terms(terms),
                render_bracket(bracket)
            )
        }
        Fact::KnotPositive { terms } => format!("[[{}]] > 0", render_terms(terms)),
        Fact::EpsilonOne { terms } => format!("epsilon({}) = 1", render_terms(terms)),
        Fact::ATupleBound { terms, a2_min } => {
            let t = render_terms(terms);
            format!("a1({t}) = 1 and a2({t}) >= {a2_min}")
        }
        Fact::UpsilonVanishes { terms } => format!("Upsilon({}) = 0", render_terms(terms)),
        Fact::KnotMuchLess { lhs, rhs } => {
            format!("[[{}]] << [[{}]]", render_terms(lhs), render_terms(rhs))
        }
        Fact::FamilyIndependent { members } => {
            let rendered: Vec<String> = members
                .iter()
                .map(|m| format!("[[{}]]", render_terms(m)))
                .collect();
            format!("linearly independent classes: {}", rendered.join(", "))
        }
    }
}

fn goal_text(goal: &Goal) -> Result<String> {
    match goal {
        Goal::Dominates { knot, bracket, .. } => Ok(format!(
            "[[{}]] >> {}",
            render_terms(knot),
            render_bracket(bracket)
        )),
        Goal::DominatedBy { knot, bracket, .. } => Ok(format!(
            "|[[{}]]| << {}",
            render_terms(knot),
            render_bracket(bracket)
        )),
        Goal::Family { members, .. } => {
            if members.is_empty() {
                return Ok("independent family: (empty)".into());
            }
            let parts: Result<Vec<String>> = members
                .iter()
                .enumerate()
                .map(|(i, m)| {
                    Ok(format!(
                        "K{} = {}",
                        i + 1,
                        render_terms(&family_terms(m.p, m.q, m.k)?)
                    ))
                })
                .collect();
            Ok(format!("independent family: {}", parts?.join("; ")))
        }
    }
}

fn verdict_text(text: &str) -> String {
    format!("established: {text}")
}

// ---------------------------------------------------------------------------
// Hypothesis checking

fn valid_knot_terms(terms: &[KnotTerm]) -> Result<()> {
    if terms.is_empty() {
        return Err(cert_err("knot sum must be nonempty"));
    }
    for term in terms {
        TorusKnot::new(term.p, term.q)?;
        if term.coeff == 0 {
            return Err(cert_err(format!(
                "zero coefficient stored for T({},{})",
                term.p, term.q
            )));
        }
    }
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            if (a.p, a.q) == (b.p, b.q) {
                return Err(cert_err(format!(
                    "duplicate term T({},{}) in knot sum",
                    a.p, a.q
                )));
            }
        }
    }
    Ok(())
}

fn sum_of_terms(terms: &[KnotTerm]) -> Result<TorusKnotSum> {
    valid_knot_terms(terms)?;
    let mut sum = TorusKnotSum::empty();
    for term in terms {
        sum.add_term(TorusKnot::new(term.p, term.q)?, term.coeff);
    }
    Ok(sum)
}

/// Re-check one hypothesis computationally. `steps` holds the steps before
/// the current one, for resolving references.
fn check_hypothesis(hyp: &Hypothesis, step_index: usize, steps: &[Step]) -> Result<()> {
    match hyp {
        Hypothesis::Coprime { a, b } => {
            if gcd(*a, *b) != 1 {
                return Err(cert_err(format!("gcd({a},{b}) != 1")));
            }
        }
        Hypothesis::Division {
            p,
            q,
            quotient,
            remainder,
        } => {
            if *p == 0 || *quotient != q / p || *remainder != q % p || *remainder == 0 {
                return Err(cert_err(format!(
                    "division record p={p} q={q} quotient={quotient} remainder={remainder} is wrong"
                )));
            }
        }
        Hypothesis::IntLt { lhs, rhs } => {
            if lhs >= rhs {
                return Err(cert_err(format!("{lhs} < {rhs} is false")));
            }
        }
        Hypothesis::IntLe { lhs, rhs } => {
            if lhs > rhs {
                return Err(cert_err(format!("{lhs} <= {rhs} is false")));
            }
        }
        Hypothesis::StaircasePrefix { p, q, prefix } => {
            if prefix.is_empty() {
                return Err(cert_err("empty staircase prefix"));
            }
            let staircase = Staircase::of(&TorusKnot::new(*p, *q)?);
            if !staircase.has_prefix(prefix) {
                return Err(cert_err(format!(
                    "staircase of T({p},{q}) does not begin with {prefix:?}"
                )));
            }
        }
        Hypothesis::StaircaseMaxEntry { p, q, bound } => {
            let staircase = Staircase::of(&TorusKnot::new(*p, *q)?);
            if staircase.max_entry().is_some_and(|m| m > *bound) {
                return Err(cert_err(format!(
                    "staircase of T({p},{q}) has an entry above {bound}"
                )));
            }
        }
        Hypothesis::StaircasePeel {
            p,
            q,
            level,
            count,
            middle,
        } => {
            let staircase = Staircase::of(&TorusKnot::new(*p, *q)?);
            let (peeled, rest) = peel(&staircase, *level)?;
            if peeled != *count || rest.entries() != middle.as_slice() {
                return Err(cert_err(format!(
                    "peel of T({p},{q}) at {level} does not match the recorded block count or middle"
                )));
            }
        }
        Hypothesis::Bracket { entries } | Hypothesis::BracketPositive { entries } => {
            BracketClass::new(entries.clone())?;
        }
        Hypothesis::KnotSum { terms } => valid_knot_terms(terms)?,
        Hypothesis::UpsilonZero { terms } => {
            let sum = sum_of_terms(terms)?;
            if !upsilon_of_sum(&sum).is_zero() {
                return Err(cert_err(format!(
                    "Upsilon({}) is not the zero function",
                    render_terms(terms)
                )));
            }
        }
        Hypothesis::StepRef { index, claim } => {
            if *index >= step_index {
                return Err(cert_err(format!(
                    "step {step_index} references step {index}, which is not earlier"
                )));
            }
            if steps[*index].claim != *claim {
                return Err(cert_err(format!(
                    "reference to step {index} does not match its claim"
                )));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Rule application

struct HypReader<'a> {
    lemma: &'a str,
    hyps: &'a [Hypothesis],
    pos: usize,
}

impl<'a> HypReader<'a> {
    fn new(lemma: &'a str, hyps: &'a [Hypothesis]) -> Self {
        Self {
            lemma,
            hyps,
            pos: 0,
        }
    }

    fn bail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(cert_err(format!("rule '{}': {}", self.lemma, msg.into())))
    }

    fn next(&mut self) -> Result<&'a Hypothesis> {
        let hyp = self
            .hyps
            .get(self.pos)
            .ok_or_else(|| cert_err(format!("rule '{}': missing hypothesis", self.lemma)))?;
        self.pos += 1;
        Ok(hyp)
    }

    fn peek(&self) -> Option<&'a Hypothesis> {
        self.hyps.get(self.pos)
    }

    fn done(&self) -> bool {
        self.pos >= self.hyps.len()
    }

    fn finish(&self) -> Result<()> {
        if !self.done() {
            return Err(cert_err(format!(
                "rule '{}': {} unused hypotheses",
                self.lemma,
                self.hyps.len() - self.pos
            )));
        }
        Ok(())
    }

    fn coprime(&mut self) -> Result<(u64, u64)> {
        match self.next()? {
            Hypothesis::Coprime { a, b } => Ok((*a, *b)),
            other => self.bail(format!("expected a coprimality hypothesis, got {other:?}")),
        }
    }

    fn division(&mut self, p: u64, q: u64) -> Result<(u64, u64)> {
        match self.next()? {
            Hypothesis::Division {
                p: hp,
                q: hq,
                quotient,
                remainder,
            } if (*hp, *hq) == (p, q) => Ok((*quotient, *remainder)),
            other => self.bail(format!("expected the division record for ({p},{q}), got {other:?}")),
        }
    }

    fn int_lt(&mut self, lhs: i64, rhs: i64) -> Result<()> {
        match self.next()? {
            Hypothesis::IntLt { lhs: hl, rhs: hr } if (*hl, *hr) == (lhs, rhs) => Ok(()),
            other => self.bail(format!("expected the inequality {lhs} < {rhs}, got {other:?}")),
        }
    }

    fn int_le(&mut self, lhs: i64, rhs: i64) -> Result<()> {
        match self.next()? {
            Hypothesis::IntLe { lhs: hl, rhs: hr } if (*hl, *hr) == (lhs, rhs) => Ok(()),
            other => self.bail(format!("expected the inequality {lhs} <= {rhs}, got {other:?}")),
        }
    }

    fn staircase_prefix(&mut self, p: u64, q: u64, expected: &[u64]) -> Result<()> {
        match self.next()? {
            Hypothesis::StaircasePrefix {
                p: hp,
                q: hq,
                prefix,
            } if (*hp, *hq) == (p, q) && prefix.as_slice() == expected => Ok(()),
            other => self.bail(format!(
                "expected the staircase prefix {expected:?} for T({p},{q}), got {other:?}"
            )),
        }
    }

    fn staircase_max_entry(&mut self, p: u64, q: u64, bound: u64) -> Result<()> {
        match self.next()? {
            Hypothesis::StaircaseMaxEntry {
                p: hp,
                q: hq,
                bound: hb,
            } if (*hp, *hq, *hb) == (p, q, bound) => Ok(()),
            other => self.bail(format!(
                "expected the staircase bound {bound} for T({p},{q}), got {other:?}"
            )),
        }
    }

    fn staircase_peel(&mut self, p: u64, q: u64, level: u64, count: u64) -> Result<&'a [u64]> {
        match self.next()? {
            Hypothesis::StaircasePeel {
                p: hp,
                q: hq,
                level: hl,
                count: hc,
                middle,
            } if (*hp, *hq, *hl, *hc) == (p, q, level, count) => Ok(middle),
            other => self.bail(format!(
                "expected the peel record for T({p},{q}) at level {level}, got {other:?}"
            )),
        }
    }

    fn bracket(&mut self) -> Result<&'a [u64]> {
        match self.next()? {
            Hypothesis::Bracket { entries } => Ok(entries),
            other => self.bail(format!("expected a bracket hypothesis, got {other:?}")),
        }
    }

    fn bracket_positive(&mut self, expected: &[u64]) -> Result<()> {
        match self.next()? {
            Hypothesis::BracketPositive { entries } if entries.as_slice() == expected => Ok(()),
            other => self.bail(format!(
                "expected the positivity of {}, got {other:?}",
                render_bracket(expected)
            )),
        }
    }

    fn knot_sum(&mut self) -> Result<&'a [KnotTerm]> {
        match self.next()? {
            Hypothesis::KnotSum { terms } => Ok(terms),
            other => self.bail(format!("expected a knot sum hypothesis, got {other:?}")),
        }
    }

    fn upsilon_zero(&mut self) -> Result<&'a [KnotTerm]> {
        match self.next()? {
            Hypothesis::UpsilonZero { terms } => Ok(terms),
            other => self.bail(format!("expected an Upsilon-zero hypothesis, got {other:?}")),
        }
    }

    fn fact_ref(&mut self, facts: &'a [Fact]) -> Result<(usize, &'a Fact)> {
        match self.next()? {
            Hypothesis::StepRef { index, .. } => match facts.get(*index) {
                Some(fact) => Ok((*index, fact)),
                None => self.bail(format!("reference to unverified step {index}")),
            },
            other => self.bail(format!("expected a step reference, got {other:?}")),
        }
    }
}

/// The expected step kind for each rule.
fn rule_kind(lemma: &str) -> Result<StepKind> {
    Ok(match lemma {
        "order-arithmetic" | "domination-transitive" | "upsilon-vanishing"
        | "domination-bridge" => StepKind::Structural,
        "tail-split" | "split-lemma" | "tail-dominates" | "a1-comparison" | "a2-comparison"
        | "positive-class" | "epsilon-sign" | "a-tuple-bounds" | "chain-independence" => {
            StepKind::Axiom
        }
        other => return Err(cert_err(format!("unknown rule '{other}'"))),
    })
}

/// Shared front matter of the two split rules: coprimality, bounds and the
/// division record for the pair.
fn read_split_header(reader: &mut HypReader<'_>) -> Result<(u64, u64, u64, u64)> {
    let (p, q) = reader.coprime()?;
    reader.int_le(4, to_i64(p)?)?;
    reader.int_lt(to_i64(p)?, to_i64(q)?)?;
    let (quotient, remainder) = reader.division(p, q)?;
    Ok((p, q, quotient, remainder))
}

/// Validate a step as an instance of its rule and produce the established
/// fact. Hypotheses have already been checked individually.
fn apply_rule(lemma: &str, hyps: &[Hypothesis], facts: &[Fact]) -> Result<Fact> {
    let mut r = HypReader::new(lemma, hyps);
    match lemma {
        "tail-split" => {
            let (p, q, quotient, remainder) = read_split_header(&mut r)?;
            r.staircase_prefix(p, q, &plain_prefix(p, quotient, remainder))?;
            r.finish()?;
            let tail = if remainder == 1 {
                vec![2]
            } else {
                vec![1, remainder - 1]
            };
            Ok(Fact::Decomposition {
                p,
                q,
                quotient,
                remainder,
                bracket: unit_entries(p - 1),
                tail: Tail::APrefix(tail),
            })
        }
        "split-lemma" => {
            let (p, q, quotient, remainder) = read_split_header(&mut r)?;
            if remainder < 2 || remainder + 1 >= p {
                return r.bail(format!(
                    "tail (1,{},1,{}) needs 2 <= r <= p-2",
                    remainder as i64 - 1,
                    p as i64 - remainder as i64 - 1
                ));
            }
            r.staircase_prefix(p, q, &refined_prefix(p, quotient, remainder))?;
            r.staircase_max_entry(p, q, p - 1)?;
            let middle = r.staircase_peel(p, q, p - 1, quotient)?;
            r.finish()?;
            Ok(Fact::Decomposition {
                p,
                q,
                quotient,
                remainder,
                bracket: unit_entries(p - 1),
                tail: Tail::Middle(middle.to_vec()),
            })
        }
        "tail-dominates" => {
            let (_, fact) = r.fact_ref(facts)?;
            let Fact::Decomposition {
                p,
                q,
                remainder,
                tail: Tail::Middle(middle),
                ..
            } = fact
            else {
                return r.bail("needs a concrete split decomposition");
            };
            let (p, q, remainder) = (*p, *q, *remainder);
            r.int_le(3, to_i64(remainder)?)?;
            r.int_lt(to_i64(remainder - 1)?, to_i64(p - remainder - 1)?)?;
            r.finish()?;
            if middle.len() < 4 || middle[0..4] != [1, remainder - 1, 1, p - remainder - 1] {
                return r.bail("peeled middle does not begin (1,r-1,1,p-r-1)");
            }
            Ok(Fact::RemainderDominates {
                p,
                q,
                bracket: unit_entries(remainder - 1),
            })
        }
        "a1-comparison" => {
            let (_, fact) = r.fact_ref(facts)?;
            let Fact::Decomposition {
                p,
                q,
                tail: Tail::APrefix(ap),
                ..
            } = fact
            else {
                return r.bail("needs an opaque split decomposition");
            };
            if ap[0] < 2 {
                return r.bail("tail a-tuple must start above 1");
            }
            r.int_lt(1, to_i64(ap[0])?)?;
            r.finish()?;
            Ok(Fact::RemainderDominatedUniversal { p: *p, q: *q })
        }
        "a2-comparison" => match r.peek() {
            Some(Hypothesis::StepRef { .. }) => {
                let (_, fact) = r.fact_ref(facts)?;
                let Fact::Decomposition {
                    p,
                    q,
                    remainder,
                    bracket,
                    tail: Tail::APrefix(ap),
                    ..
                } = fact
                else {
                    return r.bail("needs an opaque split decomposition");
                };
                if ap.as_slice() != [1, remainder - 1] {
                    return r.bail("tail a-tuple must be (1, r-1)");
                }
                let x = unit_param(bracket)
                    .ok_or_else(|| cert_err("a2-comparison: block bracket must be [1,x,x,1]"))?;
                r.int_lt(0, to_i64(remainder - 1)?)?;
                r.int_lt(to_i64(remainder - 1)?, to_i64(x)?)?;
                r.finish()?;
                Ok(Fact::RemainderDominated {
                    p: *p,
                    q: *q,
                    bracket: bracket.clone(),
                })
            }
            _ => {
                let small = r.bracket()?.to_vec();
                let a = unit_param(&small)
                    .ok_or_else(|| cert_err("a2-comparison: brackets must be [1,x,x,1]"))?;
                let large = r.bracket()?.to_vec();
                let b = unit_param(&large)
                    .ok_or_else(|| cert_err("a2-comparison: brackets must be [1,x,x,1]"))?;
                r.int_lt(0, to_i64(a)?)?;
                r.int_lt(to_i64(a)?, to_i64(b)?)?;
                r.finish()?;
                Ok(Fact::BracketLess { small, large })
            }
        },
        "domination-transitive" => {
            let (_, first) = r.fact_ref(facts)?;
            let Fact::RemainderDominated { p, q, bracket } = first else {
                return r.bail("first reference must bound a remainder by a bracket");
            };
            let (_, second) = r.fact_ref(facts)?;
            let Fact::BracketLess { small, large } = second else {
                return r.bail("second reference must compare two brackets");
            };
            if small != bracket {
                return r.bail("bracket chain does not line up");
            }
            r.finish()?;
            Ok(Fact::RemainderDominated {
                p: *p,
                q: *q,
                bracket: large.clone(),
            })
        }
        "order-arithmetic" => apply_order_arithmetic(r, facts),
        "positive-class" => {
            let (_, fact) = r.fact_ref(facts)?;
            let Fact::KnotDominates { terms, bracket } = fact else {
                return r.bail("needs a lower-bound fact");
            };
            r.bracket_positive(bracket)?;
            r.finish()?;
            Ok(Fact::KnotPositive {
                terms: terms.clone(),
            })
        }
        "epsilon-sign" => {
            let (_, fact) = r.fact_ref(facts)?;
            let Fact::KnotPositive { terms } = fact else {
                return r.bail("needs a positivity fact");
            };
            r.finish()?;
            Ok(Fact::EpsilonOne {
                terms: terms.clone(),
            })
        }
        "a-tuple-bounds" => {
            let (_, fact) = r.fact_ref(facts)?;
            let Fact::KnotDominates { terms, bracket } = fact else {
                return r.bail("needs a lower-bound fact");
            };
            let x = unit_param(bracket)
                .ok_or_else(|| cert_err("a-tuple-bounds: bracket must be [1,x,x,1]"))?;
            r.finish()?;
            Ok(Fact::ATupleBound {
                terms: terms.clone(),
                a2_min: x,
            })
        }
        "upsilon-vanishing" => {
            let terms = r.upsilon_zero()?.to_vec();
            r.finish()?;
            Ok(Fact::UpsilonVanishes { terms })
        }
        "domination-bridge" => {
            let (_, upper) = r.fact_ref(facts)?;
            let Fact::KnotDominated {
                terms: lhs,
                bracket: small,
            } = upper
            else {
                return r.bail("first reference must be an upper bound");
            };
            let y = unit_param(small)
                .ok_or_else(|| cert_err("domination-bridge: brackets must be [1,x,x,1]"))?;
            let (_, lower) = r.fact_ref(facts)?;
            let Fact::KnotDominates {
                terms: rhs,
                bracket: large,
            } = lower
            else {
                return r.bail("second reference must be a lower bound");
            };
            let x = unit_param(large)
                .ok_or_else(|| cert_err("domination-bridge: brackets must be [1,x,x,1]"))?;
            let (_, pos_lhs) = r.fact_ref(facts)?;
            if pos_lhs != (&Fact::KnotPositive { terms: lhs.clone() }) {
                return r.bail("third reference must be positivity of the left knot");
            }
            let (_, pos_rhs) = r.fact_ref(facts)?;
            if pos_rhs != (&Fact::KnotPositive { terms: rhs.clone() }) {
                return r.bail("fourth reference must be positivity of the right knot");
            }
            r.int_le(to_i64(y + 1)?, to_i64(x + 1)?)?;
            if y < x {
                let (_, less) = r.fact_ref(facts)?;
                let Fact::BracketLess {
                    small: ls,
                    large: ll,
                } = less
                else {
                    return r.bail("bridging reference must compare the two brackets");
                };
                if ls != small || ll != large {
                    return r.bail("bridging brackets do not line up");
                }
            } else if y > x {
                return r.bail("upper-bound bracket exceeds the next lower-bound bracket");
            }
            r.finish()?;
            Ok(Fact::KnotMuchLess {
                lhs: lhs.clone(),
                rhs: rhs.clone(),
            })
        }
        "chain-independence" => {
            let (_, first) = r.fact_ref(facts)?;
            let Fact::KnotPositive { terms } = first else {
                return r.bail("first reference must be positivity of the first knot");
            };
            let mut members = vec![terms.clone()];
            while !r.done() {
                let (_, link) = r.fact_ref(facts)?;
                let Fact::KnotMuchLess { lhs, rhs } = link else {
                    return r.bail("chain references must be domination links");
                };
                if lhs != members.last().unwrap() {
                    return r.bail("domination chain is not consecutive");
                }
                members.push(rhs.clone());
            }
            Ok(Fact::FamilyIndependent { members })
        }
        other => Err(cert_err(format!("unknown rule '{other}'"))),
    }
}

/// The cancellation step: substitute each referenced decomposition into the
/// formal sum, cancel brackets exactly, and check that every leftover term is
/// controlled relative to the target bracket.
fn apply_order_arithmetic<'a>(mut r: HypReader<'a>, facts: &'a [Fact]) -> Result<Fact> {
    let terms = r.knot_sum()?.to_vec();
    let target = r.bracket()?.to_vec();
    BracketClass::new(target.clone())?;

    let mut refs: Vec<(&Fact, bool)> = Vec::new();
    while !r.done() {
        let (_, fact) = r.fact_ref(facts)?;
        refs.push((fact, false));
    }

    // Assign one decomposition to every term of the sum.
    let mut expr = ClassExpr::zero();
    for term in &terms {
        let mut found = None;
        for (fact, used) in refs.iter_mut() {
            if *used {
                continue;
            }
            if let Fact::Decomposition {
                p,
                q,
                quotient,
                bracket,
                ..
            } = fact
            {
                if (*p, *q) == (term.p, term.q) {
                    *used = true;
                    found = Some((*quotient, bracket.clone()));
                    break;
                }
            }
        }
        let Some((quotient, bracket)) = found else {
            return r.bail(format!(
                "no decomposition referenced for T({},{})",
                term.p, term.q
            ));
        };
        let block_coeff = term
            .coeff
            .checked_mul(to_i64(quotient)?)
            .ok_or_else(|| cert_err("bracket coefficient overflows"))?;
        expr.add_bracket(&BracketClass::new(bracket)?, block_coeff);
        expr.add_remainder(term.p, term.q, term.coeff);
    }

    // Cover every leftover remainder by a referenced domination fact.
    let mut dominating: Option<(u64, u64)> = None;
    for (&(p, q), &coeff) in expr.remainders() {
        let mut covered = false;
        for (fact, used) in refs.iter_mut() {
            if *used {
                continue;
            }
            match fact {
                Fact::RemainderDominates {
                    p: fp,
                    q: fq,
                    bracket,
                } if (*fp, *fq) == (p, q) => {
                    if bracket != &target {
                        return Err(cert_err(format!(
                            "rule 'order-arithmetic': O({p},{q}) dominates {} but the target is {}",
                            render_bracket(bracket),
                            render_bracket(&target)
                        )));
                    }
                    if coeff != 1 {
                        return Err(cert_err(format!(
                            "rule 'order-arithmetic': dominating remainder O({p},{q}) must have coefficient 1"
                        )));
                    }
                    if dominating.is_some() {
                        return Err(cert_err(
                            "rule 'order-arithmetic': two dominating remainders".to_string(),
                        ));
                    }
                    dominating = Some((p, q));
                    *used = true;
                    covered = true;
                    break;
                }
                Fact::RemainderDominated {
                    p: fp,
                    q: fq,
                    bracket,
                } if (*fp, *fq) == (p, q) && bracket == &target => {
                    *used = true;
                    covered = true;
                    break;
                }
                Fact::RemainderDominatedUniversal { p: fp, q: fq } if (*fp, *fq) == (p, q) => {
                    if unit_param(&target).is_none() {
                        return Err(cert_err(
                            "rule 'order-arithmetic': universal bound needs a [1,x,x,1] target"
                                .to_string(),
                        ));
                    }
                    *used = true;
                    covered = true;
                    break;
                }
                _ => {}
            }
        }
        if !covered {
            return Err(cert_err(format!(
                "rule 'order-arithmetic': leftover remainder O({p},{q}) has no bound against the target"
            )));
        }
    }

    // Leftover brackets must equal the target (lower-bound mode only) or be
    // strictly dominated by it.
    let mut target_leftover = false;
    for (entries, _coeff) in expr.brackets() {
        if entries == &target {
            target_leftover = true;
            continue;
        }
        let mut covered = false;
        for (fact, used) in refs.iter_mut() {
            if *used {
                continue;
            }
            if let Fact::BracketLess { small, large } = fact {
                if small == entries && large == &target {
                    *used = true;
                    covered = true;
                    break;
                }
            }
        }
        if !covered {
            return Err(cert_err(format!(
                "rule 'order-arithmetic': leftover bracket {} has no bound against the target",
                render_bracket(entries)
            )));
        }
    }

    if refs.iter().any(|(_, used)| !used) {
        return Err(cert_err(
            "rule 'order-arithmetic': unused step reference".to_string(),
        ));
    }

    if dominating.is_some() {
        Ok(Fact::KnotDominates {
            terms,
            bracket: target,
        })
    } else {
        if target_leftover {
            return Err(cert_err(
                "rule 'order-arithmetic': an upper bound cannot absorb a multiple of the target"
                    .to_string(),
            ));
        }
        Ok(Fact::KnotDominated {
            terms,
            bracket: target,
        })
    }
}

// ---------------------------------------------------------------------------
// Goal checking and verification

pub(crate) fn validate_proposition_inputs(p: u64, q: u64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if p < 4 {
        return Err(Error::Precondition(format!("requires p >= 4, got p = {p}")));
    }
    if 2 * p >= q {
        return Err(Error::Precondition(format!(
            "requires p < q/2, got p = {p}, q = {q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Precondition(format!("gcd({p},{q}) != 1")));
    }
    Ok(())
}

pub(crate) fn validate_upper_bound_inputs(p: u64, q: u64, k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    if p < 4 {
        return Err(Error::Precondition(format!("requires p >= 4, got p = {p}")));
    }
    if p >= q {
        return Err(Error::Precondition(format!(
            "requires p < q, got p = {p}, q = {q}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(Error::Precondition(format!("gcd({p},{q}) != 1")));
    }
    Ok(())
}

fn require_fact(facts: &[Fact], wanted: &Fact, what: &str) -> Result<()> {
    if facts.iter().any(|f| f == wanted) {
        Ok(())
    } else {
        Err(cert_err(format!("goal fact not established: {what}")))
    }
}

fn check_goal(goal: &Goal, facts: &[Fact], steps: &[Step]) -> Result<()> {
    match goal {
        Goal::Dominates {
            p,
            q,
            k,
            knot,
            bracket,
            text,
        } => {
            validate_proposition_inputs(*p, *q, *k)?;
            let expected = family_terms(*p, *q, *k)?;
            if knot != &expected {
                return Err(cert_err("goal knot does not match its parameters"));
            }
            if bracket != &unit_entries(p - 1) {
                return Err(cert_err("goal bracket does not match its parameters"));
            }
            if *text != goal_text(goal)? {
                return Err(cert_err("goal text does not match its parameters"));
            }
            require_fact(
                facts,
                &Fact::KnotDominates {
                    terms: expected,
                    bracket: bracket.clone(),
                },
                text,
            )
        }
        Goal::DominatedBy {
            p,
            q,
            k,
            knot,
            bracket,
            text,
        } => {
            validate_upper_bound_inputs(*p, *q, *k)?;
            let expected = family_terms(*p, *q, *k)?;
            if knot != &expected {
                return Err(cert_err("goal knot does not match its parameters"));
            }
            if bracket != &unit_entries(q - 1) {
                return Err(cert_err("goal bracket does not match its parameters"));
            }
            if *text != goal_text(goal)? {
                return Err(cert_err("goal text does not match its parameters"));
            }
            require_fact(
                facts,
                &Fact::KnotDominated {
                    terms: expected,
                    bracket: bracket.clone(),
                },
                text,
            )
        }
        Goal::Family { members, text } => {
            crate::order::family::validate_family(members)?;
            if *text != goal_text(goal)? {
                return Err(cert_err("goal text does not match its parameters"));
            }
            if members.is_empty() {
                if !steps.is_empty() {
                    return Err(cert_err("empty family must have an empty derivation"));
                }
                return Ok(());
            }
            let mut knots = Vec::new();
            for member in members {
                let terms = family_terms(member.p, member.q, member.k)?;
                require_fact(
                    facts,
                    &Fact::KnotDominates {
                        terms: terms.clone(),
                        bracket: unit_entries(member.p - 1),
                    },
                    "member lower bound",
                )?;
                require_fact(
                    facts,
                    &Fact::KnotDominated {
                        terms: terms.clone(),
                        bracket: unit_entries(member.q - 1),
                    },
                    "member upper bound",
                )?;
                require_fact(
                    facts,
                    &Fact::UpsilonVanishes {
                        terms: terms.clone(),
                    },
                    "member Upsilon vanishing",
                )?;
                require_fact(
                    facts,
                    &Fact::EpsilonOne {
                        terms: terms.clone(),
                    },
                    "member epsilon sign",
                )?;
                knots.push(terms);
            }
            require_fact(
                facts,
                &Fact::FamilyIndependent { members: knots },
                "family independence",
            )
        }
    }
}

/// Re-verify a certificate from scratch: every hypothesis recomputed, every
/// step re-validated as an instance of its rule, every claim re-rendered,
/// and the goal checked against the established facts.
pub fn verify_certificate(cert: &Certificate) -> Result<()> {
    let mut facts: Vec<Fact> = Vec::with_capacity(cert.steps.len());
    for (index, step) in cert.steps.iter().enumerate() {
        for hyp in &step.hypotheses {
            check_hypothesis(hyp, index, &cert.steps)
                .map_err(|e| cert_err(format!("step {index}: {e}")))?;
        }
        if step.kind != rule_kind(&step.lemma)? {
            return Err(cert_err(format!(
                "step {index}: rule '{}' is mislabeled",
                step.lemma
            )));
        }
        let fact = apply_rule(&step.lemma, &step.hypotheses, &facts)
            .map_err(|e| cert_err(format!("step {index}: {e}")))?;
        if render_claim(&fact) != step.claim {
            return Err(cert_err(format!(
                "step {index}: claim does not match the rule output"
            )));
        }
        facts.push(fact);
    }
    check_goal(&cert.goal, &facts, &cert.steps)?;
    let text = goal_text(&cert.goal)?;
    if cert.verdict != verdict_text(&text) {
        return Err(cert_err("verdict does not match the goal"));
    }
    Ok(())
}

/// Verify every certificate inside a JSON document. Accepts a bare
/// certificate, the certify output `{"lower_bound":..,"upper_bound":..}`, or
/// a family document `{"members":..,"certificate":..}` (whose member list
/// must agree with the certified goal). Returns the number of certificates
/// verified.
pub fn verify_json_document(text: &str) -> Result<usize> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| cert_err(format!("not a certificate document: {e}")))?;

    let mut checked = 0usize;
    let mut check = |value: &serde_json::Value, what: &str| -> Result<()> {
        let cert: Certificate = serde_json::from_value(value.clone())
            .map_err(|e| cert_err(format!("{what}: malformed certificate: {e}")))?;
        verify_certificate(&cert).map_err(|e| cert_err(format!("{what}: {e}")))?;
        checked += 1;
        Ok(())
    };

    if value.get("goal").is_some() {
        check(&value, "certificate")?;
    } else {
        if let Some(lower) = value.get("lower_bound") {
            check(lower, "lower_bound")?;
        }
        if let Some(upper) = value.get("upper_bound") {
            check(upper, "upper_bound")?;
        }
        if let Some(cert) = value.get("certificate") {
            check(cert, "certificate")?;
            if let Some(members) = value.get("members") {
                check_member_list(members, cert)?;
            }
        }
    }
    if checked == 0 {
        return Err(cert_err("no certificate found in the document"));
    }
    Ok(checked)
}

/// The member list of a family document is presentation data; it must match
/// the goal inside the certificate.
fn check_member_list(members: &serde_json::Value, cert: &serde_json::Value) -> Result<()> {
    let mismatch = || cert_err("member list does not match the certificate goal");
    let listed = members.as_array().ok_or_else(mismatch)?;
    let goal_members = cert
        .get("goal")
        .and_then(|g| g.get("members"))
        .and_then(|m| m.as_array())
        .ok_or_else(mismatch)?;
    if listed.len() != goal_members.len() {
        return Err(mismatch());
    }
    for (shown, goal) in listed.iter().zip(goal_members) {
        for field in ["p", "q", "k"] {
            if shown.get(field) != goal.get(field) {
                return Err(mismatch());
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Construction

/// Incremental certificate builder. Every pushed step goes through the same
/// rule validation as verification, so built certificates verify.
pub(crate) struct CertBuilder {
    steps: Vec<Step>,
    facts: Vec<Fact>,
}

impl CertBuilder {
    pub(crate) fn new() -> Self {
        Self {
            steps: Vec::new(),
            facts: Vec::new(),
        }
    }

    pub(crate) fn push(
        &mut self,
        lemma: &str,
        hypotheses: Vec<Hypothesis>,
    ) -> Result<usize> {
        for hyp in &hypotheses {
            check_hypothesis(hyp, self.steps.len(), &self.steps)?;
        }
        let fact = apply_rule(lemma, &hypotheses, &self.facts)?;
        let claim = render_claim(&fact);
        self.steps.push(Step {
            kind: rule_kind(lemma)?,
            lemma: lemma.into(),
            hypotheses,
            claim,
        });
        self.facts.push(fact);
        Ok(self.steps.len() - 1)
    }

    pub(crate) fn refer(&self, index: usize) -> Hypothesis {
        Hypothesis::StepRef {
            index,
            claim: self.steps[index].claim.clone(),
        }
    }

    pub(crate) fn into_certificate(self, goal: Goal) -> Result<Certificate> {
        let text = goal_text(&goal)?;
        let goal = match goal {
            Goal::Dominates {
                p,
                q,
                k,
                knot,
                bracket,
                ..
            } => Goal::Dominates {
                p,
                q,
                k,
                knot,
                bracket,
                text: text.clone(),
            },
            Goal::DominatedBy {
                p,
                q,
                k,
                knot,
                bracket,
                ..
            } => Goal::DominatedBy {
                p,
                q,
                k,
                knot,
                bracket,
                text: text.clone(),
            },
            Goal::Family { members, .. } => Goal::Family {
                members,
                text: text.clone(),
            },
        };
        let cert = Certificate {
            goal,
            steps: self.steps,
            verdict: verdict_text(&text),
        };
        check_goal(&cert.goal, &self.facts, &cert.steps)?;
        Ok(cert)
    }
}

/// Push the two split-rule step variants for T(p,q).
pub(crate) fn push_decomposition(
    builder: &mut CertBuilder,
    p: u64,
    q: u64,
    refined: bool,
) -> Result<usize> {
    let knot = TorusKnot::new(p, q)?;
    let quotient = q / p;
    let remainder = q % p;
    let mut hyps = vec![
        Hypothesis::Coprime { a: p, b: q },
        Hypothesis::IntLe {
            lhs: 4,
            rhs: to_i64(p)?,
        },
        Hypothesis::IntLt {
            lhs: to_i64(p)?,
            rhs: to_i64(q)?,
        },
        Hypothesis::Division {
            p,
            q,
            quotient,
            remainder,
        },
    ];
    if refined {
        hyps.push(Hypothesis::StaircasePrefix {
            p,
            q,
            prefix: refined_prefix(p, quotient, remainder),
        });
        hyps.push(Hypothesis::StaircaseMaxEntry { p, q, bound: p - 1 });
        let (count, middle) = peel(&Staircase::of(&knot), p - 1)?;
        hyps.push(Hypothesis::StaircasePeel {
            p,
            q,
            level: p - 1,
            count,
            middle: middle.entries().to_vec(),
        });
        builder.push("split-lemma", hyps)
    } else {
        hyps.push(Hypothesis::StaircasePrefix {
            p,
            q,
            prefix: plain_prefix(p, quotient, remainder),
        });
        builder.push("tail-split", hyps)
    }
}

/// Indices of the key steps pushed for one lower-bound derivation.
pub(crate) struct PropositionSteps {
    pub conclusion: usize,
    pub positive: usize,
}

/// Push the full lower-bound derivation for T(q,kq+p) - T(p,q) - k*T(q,q+1):
/// [[K]] >> [1,p-1,p-1,1], plus the positivity, epsilon, and a-tuple
/// consequences.
pub(crate) fn push_proposition(
    builder: &mut CertBuilder,
    p: u64,
    q: u64,
    k: u64,
) -> Result<PropositionSteps> {
    let terms = family_terms(p, q, k)?;
    let kq_plus_p = terms[0].q;
    let target = unit_entries(p - 1);

    let d1 = push_decomposition(builder, q, kq_plus_p, true)?;
    let t1 = builder.push(
        "tail-dominates",
        vec![
            builder.refer(d1),
            Hypothesis::IntLe {
                lhs: 3,
                rhs: to_i64(p)?,
            },
            Hypothesis::IntLt {
                lhs: to_i64(p - 1)?,
                rhs: to_i64(q - p - 1)?,
            },
        ],
    )?;
    let d2 = push_decomposition(builder, p, q, false)?;
    let r2 = q % p;
    let t2 = if r2 == 1 {
        builder.push(
            "a1-comparison",
            vec![builder.refer(d2), Hypothesis::IntLt { lhs: 1, rhs: 2 }],
        )?
    } else {
        builder.push(
            "a2-comparison",
            vec![
                builder.refer(d2),
                Hypothesis::IntLt {
                    lhs: 0,
                    rhs: to_i64(r2 - 1)?,
                },
                Hypothesis::IntLt {
                    lhs: to_i64(r2 - 1)?,
                    rhs: to_i64(p - 1)?,
                },
            ],
        )?
    };
    let d3 = push_decomposition(builder, q, q + 1, false)?;
    let t3 = builder.push(
        "a1-comparison",
        vec![builder.refer(d3), Hypothesis::IntLt { lhs: 1, rhs: 2 }],
    )?;
    let conclusion = builder.push(
        "order-arithmetic",
        vec![
            Hypothesis::KnotSum {
                terms: terms.clone(),
            },
            Hypothesis::Bracket {
                entries: target.clone(),
            },
            builder.refer(d1),
            builder.refer(d2),
            builder.refer(d3),
            builder.refer(t1),
            builder.refer(t2),
            builder.refer(t3),
        ],
    )?;
    let positive = builder.push(
        "positive-class",
        vec![
            builder.refer(conclusion),
            Hypothesis::BracketPositive {
                entries: target.clone(),
            },
        ],
    )?;
    builder.push("epsilon-sign", vec![builder.refer(positive)])?;
    builder.push("a-tuple-bounds", vec![builder.refer(conclusion)])?;
    Ok(PropositionSteps {
        conclusion,
        positive,
    })
}

/// Push the full upper-bound derivation: |[[K]]| << [1,q-1,q-1,1].
pub(crate) fn push_upper_bound(
    builder: &mut CertBuilder,
    p: u64,
    q: u64,
    k: u64,
) -> Result<usize> {
    let terms = family_terms(p, q, k)?;
    let kq_plus_p = terms[0].q;
    let block_small = unit_entries(p - 1);
    let target = unit_entries(q - 1);

    let d1 = push_decomposition(builder, q, kq_plus_p, false)?;
    let t1 = builder.push(
        "a2-comparison",
        vec![
            builder.refer(d1),
            Hypothesis::IntLt {
                lhs: 0,
                rhs: to_i64(p - 1)?,
            },
            Hypothesis::IntLt {
                lhs: to_i64(p - 1)?,
                rhs: to_i64(q - 1)?,
            },
        ],
    )?;
    let d2 = push_decomposition(builder, p, q, false)?;
    let r2 = q % p;
    let t2 = if r2 == 1 {
        builder.push(
            "a1-comparison",
            vec![builder.refer(d2), Hypothesis::IntLt { lhs: 1, rhs: 2 }],
        )?
    } else {
        builder.push(
            "a2-comparison",
            vec![
                builder.refer(d2),
                Hypothesis::IntLt {
                    lhs: 0,
                    rhs: to_i64(r2 - 1)?,
                },
                Hypothesis::IntLt {
                    lhs: to_i64(r2 - 1)?,
                    rhs: to_i64(p - 1)?,
                },
            ],
        )?
    };
    let d3 = push_decomposition(builder, q, q + 1, false)?;
    let t3 = builder.push(
        "a1-comparison",
        vec![builder.refer(d3), Hypothesis::IntLt { lhs: 1, rhs: 2 }],
    )?;
    let bracket_step = builder.push(
        "a2-comparison",
        vec![
            Hypothesis::Bracket {
                entries: block_small.clone(),
            },
            Hypothesis::Bracket {
                entries: target.clone(),
            },
            Hypothesis::IntLt {
                lhs: 0,
                rhs: to_i64(p - 1)?,
            },
            Hypothesis::IntLt {
                lhs: to_i64(p - 1)?,
                rhs: to_i64(q - 1)?,
            },
        ],
    )?;
    let o2 = if r2 == 1 {
        t2
    } else {
        builder.push(
            "domination-transitive",
            vec![builder.refer(t2), builder.refer(bracket_step)],
        )?
    };
    builder.push(
        "order-arithmetic",
        vec![
            Hypothesis::KnotSum {
                terms: terms.clone(),
            },
            Hypothesis::Bracket {
                entries: target.clone(),
            },
            builder.refer(d1),
            builder.refer(d2),
            builder.refer(d3),
            builder.refer(t1),
            builder.refer(o2),
            builder.refer(t3),
            builder.refer(bracket_step),
        ],
    )
}

/// Certificate for the lower bound [[T(q,kq+p) - T(p,q) - k*T(q,q+1)]] >>
/// [1,p-1,p-1,1]. Requires gcd(p,q) = 1, 4 <= p < q/2 and k >= 1.
pub fn certify_proposition(p: u64, q: u64, k: u64) -> Result<Certificate> {
    validate_proposition_inputs(p, q, k)?;
    let mut builder = CertBuilder::new();
    push_proposition(&mut builder, p, q, k)?;
    builder.into_certificate(Goal::Dominates {
        p,
        q,
        k,
        knot: family_terms(p, q, k)?,
        bracket: unit_entries(p - 1),
        text: String::new(),
    })
}

/// Certificate for the upper bound: the same combination is dominated by
/// [1,q-1,q-1,1]. Requires gcd(p,q) = 1, 4 <= p < q and k >= 1.
pub fn certify_upper_bound(p: u64, q: u64, k: u64) -> Result<Certificate> {
    validate_upper_bound_inputs(p, q, k)?;
    let mut builder = CertBuilder::new();
    push_upper_bound(&mut builder, p, q, k)?;
    builder.into_certificate(Goal::DominatedBy {
        p,
        q,
        k,
        knot: family_terms(p, q, k)?,
        bracket: unit_entries(q - 1),
        text: String::new(),
    })
}
