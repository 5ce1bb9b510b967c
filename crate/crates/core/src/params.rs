//! King's parameters for metacyclic p-groups.
//!
//! A tuple `(p, α, β, ε, δ, ±)` names the group
//! `⟨x, y | x^(p^α) = 1, y^(p^β) = x^(p^(α−ε)), x^y = x^r⟩`
//! with `r = p^(α−δ) + 1` (positive type) or `r = p^(α−δ) − 1` (negative type).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The `±` of the presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

impl FromStr for Sign {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+" | "positive" | "pos" => Ok(Sign::Positive),
            "-" | "negative" | "neg" => Ok(Sign::Negative),
            other => Err(ParamError::BadSign(other.to_string())),
        }
    }
}

/// A King constraint that a raw tuple can violate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    AlphaPositive,
    BetaPositive,
    DeltaAtMostAlphaMinusOne,
    DeltaAtMostBeta,
    DeltaPlusEpsilonAtMostAlpha,
    NegativeEpsilonAtMostOne,
    AlphaMinusDeltaAboveOneForP2,
    NegativeEps0AlphaAtLeastDeltaPlus2,
    NegativeEps1BetaAtLeastDeltaPlus1,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Constraint::AlphaPositive => "alpha > 0",
            Constraint::BetaPositive => "beta > 0",
            Constraint::DeltaAtMostAlphaMinusOne => "delta <= alpha - 1",
            Constraint::DeltaAtMostBeta => "delta <= beta",
            Constraint::DeltaPlusEpsilonAtMostAlpha => "delta + epsilon <= alpha",
            Constraint::NegativeEpsilonAtMostOne => "negative type requires epsilon in {0, 1}",
            Constraint::AlphaMinusDeltaAboveOneForP2 => "p = 2 requires alpha - delta > 1",
            Constraint::NegativeEps0AlphaAtLeastDeltaPlus2 => {
                "negative type with epsilon = 0 requires alpha >= delta + 2 and beta >= delta"
            }
            Constraint::NegativeEps1BetaAtLeastDeltaPlus1 => {
                "negative type with epsilon = 1 requires beta >= delta + 1"
            }
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("p = {0} is not prime")]
    NonPrimeP(i64),
    #[error("negative type requires p = 2 (got p = {0})")]
    NegativeTypeRequiresP2(i64),
    #[error("King constraint violated: {0}")]
    ConstraintViolated(Constraint),
    #[error("parameter out of range: {0}")]
    OutOfRange(&'static str),
    #[error("invalid sign {0:?}, expected '+' or '-'")]
    BadSign(String),
    #[error("group order p^{exponent} exceeds the enumeration budget of {budget} elements")]
    OverflowBudgetExceeded { exponent: u32, budget: u64 },
}

/// A validated parameter tuple. Construct through [`GroupParams::new`] or [`validate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupParams {
    p: u64,
    alpha: u32,
    beta: u32,
    epsilon: u32,
    delta: u32,
    sign: Sign,
}

/// Unvalidated input tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawParams {
    pub p: i64,
    pub alpha: i64,
    pub beta: i64,
    pub epsilon: i64,
    pub delta: i64,
    pub sign: Sign,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `p^e`, or `None` on overflow.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

/// Checks a raw tuple against King's constraints.
pub fn validate(raw: RawParams) -> Result<GroupParams, ParamError> {
    let RawParams {
        p,
        alpha,
        beta,
        epsilon,
        delta,
        sign,
    } = raw;
    if p < 2 || !is_prime(p as u64) {
        return Err(ParamError::NonPrimeP(p));
    }
    if sign == Sign::Negative && p != 2 {
        return Err(ParamError::NegativeTypeRequiresP2(p));
    }
    use Constraint::*;
    let violated = |c| Err(ParamError::ConstraintViolated(c));
    if alpha <= 0 {
        return violated(AlphaPositive);
    }
    if beta <= 0 {
        return violated(BetaPositive);
    }
    if epsilon < 0 {
        return Err(ParamError::OutOfRange("epsilon must be non-negative"));
    }
    if delta < 0 {
        return Err(ParamError::OutOfRange("delta must be non-negative"));
    }
    if alpha > 63 || beta > 63 {
        return Err(ParamError::OutOfRange("alpha and beta must be below 64"));
    }
    if delta > alpha - 1 {
        return violated(DeltaAtMostAlphaMinusOne);
    }
    if delta > beta {
        return violated(DeltaAtMostBeta);
    }
    if delta + epsilon > alpha {
        return violated(DeltaPlusEpsilonAtMostAlpha);
    }
    if p == 2 && alpha - delta <= 1 {
        return violated(AlphaMinusDeltaAboveOneForP2);
    }
    if sign == Sign::Negative {
        match epsilon {
            0 if alpha < delta + 2 || beta < delta => {
                return violated(NegativeEps0AlphaAtLeastDeltaPlus2)
            }
            1 if beta < delta + 1 => return violated(NegativeEps1BetaAtLeastDeltaPlus1),
            0 | 1 => {}
            _ => return violated(NegativeEpsilonAtMostOne),
        }
    }
    Ok(GroupParams {
        p: p as u64,
        alpha: alpha as u32,
        beta: beta as u32,
        epsilon: epsilon as u32,
        delta: delta as u32,
        sign,
    })
}

impl GroupParams {
    pub fn new(
        p: u64,
        alpha: u32,
        beta: u32,
        epsilon: u32,
        delta: u32,
        sign: Sign,
    ) -> Result<Self, ParamError> {
        validate(RawParams {
            p: p as i64,
            alpha: alpha as i64,
            beta: beta as i64,
            epsilon: epsilon as i64,
            delta: delta as i64,
            sign,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn alpha(&self) -> u32 {
        self.alpha
    }
    pub fn beta(&self) -> u32 {
        self.beta
    }
    pub fn epsilon(&self) -> u32 {
        self.epsilon
    }
    pub fn delta(&self) -> u32 {
        self.delta
    }
    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn raw(&self) -> RawParams {
        RawParams {
            p: self.p as i64,
            alpha: self.alpha as i64,
            beta: self.beta as i64,
            epsilon: self.epsilon as i64,
            delta: self.delta as i64,
            sign: self.sign,
        }
    }

    /// `|⟨x⟩| = p^α`.
    pub fn x_order(&self) -> u64 {
        self.p.pow(self.alpha)
    }

    /// `|G : ⟨x⟩| = p^β`.
    pub fn y_order(&self) -> u64 {
        self.p.pow(self.beta)
    }

    /// The conjugation exponent `r`, reduced mod `p^α`.
    pub fn r(&self) -> u64 {
        let modulus = self.x_order();
        let base = self.p.pow(self.alpha - self.delta);
        match self.sign {
            Sign::Positive => (base + 1) % modulus,
            Sign::Negative => (base - 1) % modulus,
        }
    }

    /// `α + β`, so that `|G| = p^(α+β)`.
    pub fn order_exponent(&self) -> u32 {
        self.alpha + self.beta
    }

    pub fn is_abelian(&self) -> bool {
        self.sign == Sign::Positive && self.delta == 0
    }
}

impl fmt::Display for GroupParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "G_{}({},{},{},{},{})",
            self.p, self.alpha, self.beta, self.epsilon, self.delta, self.sign
        )
    }
}

/// The 2-groups of maximal class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalClassFamily {
    Dihedral,
    GeneralizedQuaternion,
    Semidihedral,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub group_type: Sign,
    pub is_abelian: bool,
    pub maximal_class_family: Option<MaximalClassFamily>,
    pub canonical_params: GroupParams,
    pub group_order_exponent: u32,
}

/// Flags abelian and maximal-class groups and applies the one isomorphism
/// rewrite the formulas rely on: `G_2(α,β,1,1,−) ≅ G_2(α,β,1,0,−)` for `α ≥ 3, β ≥ 2`.
pub fn classify(params: &GroupParams) -> Classification {
    let maximal_class_family = match (params.sign, params.beta) {
        (Sign::Negative, 1) => match (params.epsilon, params.delta) {
            (0, 0) => Some(MaximalClassFamily::Dihedral),
            (1, 0) => Some(MaximalClassFamily::GeneralizedQuaternion),
            (0, 1) => Some(MaximalClassFamily::Semidihedral),
            // β = 1 forces δ ≤ 1, and ε = 1 forces β ≥ δ + 1.
            _ => unreachable!("validated negative tuple with beta = 1: {params}"),
        },
        _ => None,
    };
    let mut canonical_params = *params;
    if params.sign == Sign::Negative
        && params.epsilon == 1
        && params.delta == 1
        && params.alpha >= 3
        && params.beta >= 2
    {
        canonical_params.delta = 0;
    }
    Classification {
        group_type: params.sign,
        is_abelian: params.is_abelian(),
        maximal_class_family,
        canonical_params,
        group_order_exponent: params.order_exponent(),
    }
}

/// `p^(α+β)`. Fails if the order exceeds `budget` (or `u64`).
pub fn group_order(params: &GroupParams, budget: u64) -> Result<u64, ParamError> {
    let exponent = params.order_exponent();
    match checked_pow(params.p, exponent) {
        Some(n) if n <= budget => Ok(n),
        _ => Err(ParamError::OverflowBudgetExceeded { exponent, budget }),
    }
}
