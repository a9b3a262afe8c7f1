//! Families of vanishing-Upsilon knots with independent classes.
//!
//! Members K_i = T(q_i, k_i q_i + p_i) - T(p_i, q_i) - k_i T(q_i, q_i+1) with
//! 4 <= p_i < q_i/2, coprime pairs and q_i <= p_{i+1}. The chain of
//! certificates gives [[K_1]] << [[K_2]] << ... and hence linear
//! independence, while every member's Upsilon invariant vanishes exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::order::certificate::{
    family_terms, push_proposition, push_upper_bound, validate_proposition_inputs, CertBuilder,
    Certificate, Goal, Hypothesis,
};
use crate::sum::TorusKnotSum;

/// Parameters (p,q,k) of one family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub p: u64,
    pub q: u64,
    pub k: u64,
}

impl FamilyMember {
    /// The member's knot as a formal sum.
    pub fn knot(&self) -> Result<TorusKnotSum> {
        TorusKnotSum::vanishing_combination(self.p, self.q, self.k)
    }

    /// The member's knot rendered in construction order,
    /// `T(q,kq+p) - T(p,q) - k*T(q,q+1)`.
    pub fn knot_text(&self) -> Result<String> {
        Ok(crate::order::certificate::render_terms(&family_terms(
            self.p, self.q, self.k,
        )?))
    }
}

/// How family members are generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyRule {
    /// p_i = 3^i + 1, q_i = 2*3^i + 3, k_i = 1.
    Default,
    /// An explicit list of members.
    Explicit(Vec<FamilyMember>),
}

impl FamilyRule {
    /// The i-th member, 1-based.
    fn member(&self, i: usize) -> Result<FamilyMember> {
        match self {
            FamilyRule::Default => {
                let power = 3u64
                    .checked_pow(u32::try_from(i).map_err(|_| overflow(i))?)
                    .ok_or_else(|| overflow(i))?;
                Ok(FamilyMember {
                    p: power.checked_add(1).ok_or_else(|| overflow(i))?,
                    q: power
                        .checked_mul(2)
                        .and_then(|d| d.checked_add(3))
                        .ok_or_else(|| overflow(i))?,
                    k: 1,
                })
            }
            FamilyRule::Explicit(members) => members.get(i - 1).copied().ok_or_else(|| {
                Error::Precondition(format!(
                    "family rule provides only {} members, member {i} requested",
                    members.len()
                ))
            }),
        }
    }
}

fn overflow(i: usize) -> Error {
    Error::Precondition(format!("family member {i} overflows the integer range"))
}

/// Check every member's constraints and the chain condition q_i <= p_{i+1},
/// reporting the first offending index.
pub(crate) fn validate_family(members: &[FamilyMember]) -> Result<()> {
    for (idx, member) in members.iter().enumerate() {
        validate_proposition_inputs(member.p, member.q, member.k).map_err(|e| {
            Error::Precondition(format!("family member {}: {e}", idx + 1))
        })?;
    }
    for (idx, pair) in members.windows(2).enumerate() {
        if pair[0].q > pair[1].p {
            return Err(Error::Precondition(format!(
                "family member {}: requires q_{} <= p_{}, got {} > {}",
                idx + 2,
                idx + 1,
                idx + 2,
                pair[0].q,
                pair[1].p
            )));
        }
    }
    Ok(())
}

/// Build `count` members from the rule together with one certificate that
/// derives, for every member, the lower and upper domination bounds, the
/// exact Upsilon vanishing, the epsilon sign, and finally the independence
/// of the whole chain.
pub fn build_family(count: usize, rule: &FamilyRule) -> Result<(Vec<FamilyMember>, Certificate)> {
    let members: Vec<FamilyMember> = (1..=count)
        .map(|i| rule.member(i))
        .collect::<Result<_>>()?;
    validate_family(&members)?;

    let mut builder = CertBuilder::new();
    let mut lower = Vec::with_capacity(members.len());
    let mut upper = Vec::with_capacity(members.len());
    for member in &members {
        let proposition = push_proposition(&mut builder, member.p, member.q, member.k)?;
        let bound = push_upper_bound(&mut builder, member.p, member.q, member.k)?;
        builder.push(
            "upsilon-vanishing",
            vec![Hypothesis::UpsilonZero {
                terms: family_terms(member.p, member.q, member.k)?,
            }],
        )?;
        lower.push(proposition);
        upper.push(bound);
    }

    let mut links = Vec::new();
    for i in 0..members.len().saturating_sub(1) {
        let (here, next) = (members[i], members[i + 1]);
        let mut hyps = vec![
            builder.refer(upper[i]),
            builder.refer(lower[i + 1].conclusion),
            builder.refer(lower[i].positive),
            builder.refer(lower[i + 1].positive),
            Hypothesis::IntLe {
                lhs: as_i64(here.q)?,
                rhs: as_i64(next.p)?,
            },
        ];
        if here.q < next.p {
            let bridge = builder.push(
                "a2-comparison",
                vec![
                    Hypothesis::Bracket {
                        entries: vec![1, here.q - 1, here.q - 1, 1],
                    },
                    Hypothesis::Bracket {
                        entries: vec![1, next.p - 1, next.p - 1, 1],
                    },
                    Hypothesis::IntLt {
                        lhs: 0,
                        rhs: as_i64(here.q - 1)?,
                    },
                    Hypothesis::IntLt {
                        lhs: as_i64(here.q - 1)?,
                        rhs: as_i64(next.p - 1)?,
                    },
                ],
            )?;
            hyps.push(builder.refer(bridge));
        }
        links.push(builder.push("domination-bridge", hyps)?);
    }

    if !members.is_empty() {
        let mut hyps = vec![builder.refer(lower[0].positive)];
        hyps.extend(links.iter().map(|&idx| builder.refer(idx)));
        builder.push("chain-independence", hyps)?;
    }

    let certificate = builder.into_certificate(Goal::Family {
        members: members.clone(),
        text: String::new(),
    })?;
    Ok((members, certificate))
}

fn as_i64(x: u64) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::Precondition(format!("{x} exceeds the integer range")))
}
