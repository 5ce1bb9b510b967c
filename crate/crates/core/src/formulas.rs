//! Closed-form η for every valid parameter tuple.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{classify, GroupParams, Sign};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("closed-form abelianization is only available for positive type")]
    NegativeTypeUnsupported,
    #[error("quotient parameters are undefined for delta = 0")]
    DeltaZeroUndefined,
}

/// `η(C_{p^a} × C_{p^b}) = p^(l−1)·((k−l)(p−1) + p + 1)` with
/// `k = max(a, b)`, `l = min(a, b)`. Returns 1 when the product is cyclic
/// (`min(a, b) = 0`).
pub fn g_p(p: u64, a: u32, b: u32) -> u64 {
    let (k, l) = (a.max(b), a.min(b));
    if l == 0 {
        return 1;
    }
    p.pow(l - 1) * ((k - l) as u64 * (p - 1) + p + 1)
}

/// Which case of the closed form produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseTag {
    Eta3Family,
    PositiveViaAbelianizationI,
    PositiveViaAbelianizationIi,
    NegEps0Beta2,
    NegEps0Large,
    NegEps1Beta2,
    NegEps1Alpha2,
    NegEps1LargeAgeb,
    NegEps1LargeAltb,
    NegDeltaGe2Beta2,
    NegDeltaGe2,
}

impl CaseTag {
    pub const ALL: [CaseTag; 11] = [
        CaseTag::Eta3Family,
        CaseTag::PositiveViaAbelianizationI,
        CaseTag::PositiveViaAbelianizationIi,
        CaseTag::NegEps0Beta2,
        CaseTag::NegEps0Large,
        CaseTag::NegEps1Beta2,
        CaseTag::NegEps1Alpha2,
        CaseTag::NegEps1LargeAgeb,
        CaseTag::NegEps1LargeAltb,
        CaseTag::NegDeltaGe2Beta2,
        CaseTag::NegDeltaGe2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Eta3Family => "eta3_family",
            CaseTag::PositiveViaAbelianizationI => "positive_via_abelianization_i",
            CaseTag::PositiveViaAbelianizationIi => "positive_via_abelianization_ii",
            CaseTag::NegEps0Beta2 => "neg_eps0_beta2",
            CaseTag::NegEps0Large => "neg_eps0_large",
            CaseTag::NegEps1Beta2 => "neg_eps1_beta2",
            CaseTag::NegEps1Alpha2 => "neg_eps1_alpha2",
            CaseTag::NegEps1LargeAgeb => "neg_eps1_large_ageb",
            CaseTag::NegEps1LargeAltb => "neg_eps1_large_altb",
            CaseTag::NegDeltaGe2Beta2 => "neg_delta_ge2_beta2",
            CaseTag::NegDeltaGe2 => "neg_delta_ge2",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaFormulaResult {
    pub eta: u64,
    pub case_tag: CaseTag,
    /// `G/G' ≅ C_{p^a} × C_{p^b}`, positive type only.
    pub abelianization: Option<(u32, u32)>,
}

fn abelianization_case(params: &GroupParams) -> (u32, u32, bool) {
    let (alpha, beta, epsilon, delta) = (
        params.alpha(),
        params.beta(),
        params.epsilon(),
        params.delta(),
    );
    if delta >= epsilon || alpha >= beta + epsilon {
        (alpha - delta, beta, true)
    } else {
        (alpha - epsilon, beta + epsilon - delta, false)
    }
}

/// Exponents `(a, b)` with `G/G' ≅ C_{p^a} × C_{p^b}` for positive type.
pub fn abelianization_type(params: &GroupParams) -> Result<(u32, u32), FormulaError> {
    if params.sign() == Sign::Negative {
        return Err(FormulaError::NegativeTypeUnsupported);
    }
    let (a, b, _) = abelianization_case(params);
    Ok((a, b))
}

/// Parameters of `G/⟨x^(p^(α−δ+1))⟩`: `(α−δ+1, β, (ε−δ+1)*, 1, ±)`
/// where `(ε−δ+1)* = max(ε−δ+1, 0)`. For `δ = 1` the subgroup is trivial.
pub fn quotient_params(params: &GroupParams) -> Result<GroupParams, FormulaError> {
    let delta = params.delta();
    match delta {
        0 => Err(FormulaError::DeltaZeroUndefined),
        1 => Ok(*params),
        _ => {
            let epsilon = (params.epsilon() + 1).saturating_sub(delta);
            let q = GroupParams::new(
                params.p(),
                params.alpha() - delta + 1,
                params.beta(),
                epsilon,
                1,
                params.sign(),
            )
            .expect("quotient of a valid tuple is valid");
            Ok(q)
        }
    }
}

/// `g_2(a, b) / 2`, which every negative-type case needs to be exact.
fn half_g2(a: u32, b: u32) -> u64 {
    let g = g_p(2, a, b);
    assert!(g.is_multiple_of(2), "g_2({a},{b}) = {g} is odd");
    g / 2
}

/// η(G) by case analysis on the canonicalized parameters.
pub fn eta_formula(params: &GroupParams) -> EtaFormulaResult {
    let class = classify(params);
    let c = class.canonical_params;
    let (alpha, beta, epsilon, delta) = (c.alpha(), c.beta(), c.epsilon(), c.delta());

    if c.sign() == Sign::Positive {
        let (a, b, first_case) = abelianization_case(&c);
        return EtaFormulaResult {
            eta: g_p(c.p(), a, b),
            case_tag: if first_case {
                CaseTag::PositiveViaAbelianizationI
            } else {
                CaseTag::PositiveViaAbelianizationIi
            },
            abelianization: Some((a, b)),
        };
    }

    let (eta, case_tag) = if class.maximal_class_family.is_some() {
        (3, CaseTag::Eta3Family)
    } else if delta >= 2 {
        if beta == 2 {
            (alpha as u64 + 1, CaseTag::NegDeltaGe2Beta2)
        } else {
            (
                half_g2(alpha - delta + 1, beta - 1) + 2,
                CaseTag::NegDeltaGe2,
            )
        }
    } else if epsilon == 0 {
        // δ ∈ {0, 1}: δ = 0 picks up one extra class.
        let extra = if delta == 0 { 1 } else { 0 };
        if beta == 2 {
            (alpha as u64 + 2 + extra, CaseTag::NegEps0Beta2)
        } else {
            (half_g2(alpha, beta - 1) + 2 + extra, CaseTag::NegEps0Large)
        }
    } else {
        // ε = 1 and, after canonicalization, δ = 0.
        debug_assert_eq!(
            delta, 0,
            "canonicalization leaves delta = 0 for epsilon = 1"
        );
        if beta == 2 {
            (alpha as u64 + 2, CaseTag::NegEps1Beta2)
        } else if alpha == 2 {
            (beta as u64 + 2, CaseTag::NegEps1Alpha2)
        } else if alpha >= beta {
            (half_g2(alpha, beta - 1) + 3, CaseTag::NegEps1LargeAgeb)
        } else {
            (half_g2(alpha - 1, beta) + 3, CaseTag::NegEps1LargeAltb)
        }
    };
    EtaFormulaResult {
        eta,
        case_tag,
        abelianization: None,
    }
}

/// The `η ≥ n − 2` bound for a tuple of order `p^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerBound {
    pub n_minus_2: i64,
    /// False for the maximal-class 2-groups, which the bound excludes, and for
    /// cyclic groups, where `η = 1`.
    pub bound_applies: bool,
    /// Whether `η = n − 2` exactly.
    pub equality_expected: bool,
}

pub fn eta_lower_bound(params: &GroupParams) -> LowerBound {
    let (alpha, beta, delta) = (params.alpha(), params.beta(), params.delta());
    let class = classify(params);
    let cyclic = abelianization_type(params).is_ok_and(|(a, b)| a.min(b) == 0);
    let equality_expected = params.sign() == Sign::Negative
        && delta >= 2
        && beta == delta
        && (beta == 3 || (beta >= 4 && alpha == beta + 2));
    LowerBound {
        n_minus_2: alpha as i64 + beta as i64 - 2,
        bound_applies: class.maximal_class_family.is_none() && !cyclic,
        equality_expected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, alpha: u32, beta: u32, epsilon: u32, delta: u32, sign: Sign) -> GroupParams {
        GroupParams::new(p, alpha, beta, epsilon, delta, sign).unwrap()
    }

    #[test]
    fn g_p_values() {
        assert_eq!(g_p(2, 4, 4), 24);
        assert_eq!(g_p(2, 4, 1), 6);
        assert_eq!(g_p(2, 1, 4), 6);
        assert_eq!(g_p(3, 2, 2), 12);
        assert_eq!(g_p(5, 3, 0), 1);
        assert_eq!(g_p(2, 0, 0), 1);
    }

    #[test]
    fn small_g2_identities() {
        for k in 1..=30 {
            assert_eq!(g_p(2, k, 1), k as u64 + 2);
            if k >= 2 {
                assert_eq!(g_p(2, k, 2), 2 * (k as u64 + 1));
            }
            if k >= 3 {
                assert_eq!(g_p(2, k, 3), 4 * k as u64);
            }
            for l in 4..=k {
                assert!(g_p(2, k, l) >= 4 * k as u64 + 2 * l as u64, "g_2({k},{l})");
            }
        }
    }

    #[test]
    fn abelianization_examples() {
        assert_eq!(
            abelianization_type(&params(3, 3, 2, 0, 1, Sign::Positive)),
            Ok((2, 2))
        );
        assert_eq!(
            abelianization_type(&params(2, 4, 3, 2, 1, Sign::Positive)),
            Ok((2, 4))
        );
        assert_eq!(
            abelianization_type(&params(5, 3, 2, 0, 0, Sign::Positive)),
            Ok((3, 2))
        );
        assert_eq!(
            abelianization_type(&params(2, 3, 2, 0, 0, Sign::Negative)),
            Err(FormulaError::NegativeTypeUnsupported)
        );
    }

    #[test]
    fn quotient_parameter_examples() {
        assert_eq!(
            quotient_params(&params(2, 5, 3, 0, 3, Sign::Negative)),
            Ok(params(2, 3, 3, 0, 1, Sign::Negative))
        );
        assert_eq!(
            quotient_params(&params(3, 5, 3, 2, 2, Sign::Positive)),
            Ok(params(3, 4, 3, 1, 1, Sign::Positive))
        );
        let g = params(2, 4, 2, 1, 1, Sign::Negative);
        assert_eq!(quotient_params(&g), Ok(g));
        assert_eq!(
            quotient_params(&params(3, 2, 2, 0, 0, Sign::Positive)),
            Err(FormulaError::DeltaZeroUndefined)
        );
    }

    #[test]
    fn dispatcher_examples() {
        let r = eta_formula(&params(2, 3, 2, 0, 0, Sign::Negative));
        assert_eq!((r.eta, r.case_tag), (6, CaseTag::NegEps0Beta2));
        let r = eta_formula(&params(2, 4, 3, 0, 2, Sign::Negative));
        assert_eq!((r.eta, r.case_tag), (6, CaseTag::NegDeltaGe2));
        let r = eta_formula(&params(3, 3, 2, 0, 1, Sign::Positive));
        assert_eq!(
            (r.eta, r.case_tag),
            (12, CaseTag::PositiveViaAbelianizationI)
        );
        assert_eq!(r.abelianization, Some((2, 2)));
        let r = eta_formula(&params(2, 2, 2, 1, 0, Sign::Negative));
        assert_eq!((r.eta, r.case_tag), (4, CaseTag::NegEps1Beta2));
        let r = eta_formula(&params(2, 4, 1, 0, 0, Sign::Negative));
        assert_eq!((r.eta, r.case_tag), (3, CaseTag::Eta3Family));
    }

    #[test]
    fn lower_bound_examples() {
        let g = params(2, 5, 3, 0, 3, Sign::Negative);
        let b = eta_lower_bound(&g);
        assert_eq!(b.n_minus_2, 6);
        assert!(b.equality_expected && b.bound_applies);
        assert_eq!(eta_formula(&g).eta, 6);

        let g = params(2, 6, 4, 0, 4, Sign::Negative);
        let b = eta_lower_bound(&g);
        assert_eq!(b.n_minus_2, 8);
        assert!(b.equality_expected);
        assert_eq!(eta_formula(&g).eta, g_p(2, 3, 3) / 2 + 2);
        assert_eq!(eta_formula(&g).eta, 8);

        let b = eta_lower_bound(&params(2, 4, 1, 0, 0, Sign::Negative));
        assert!(!b.bound_applies);
    }

    #[test]
    fn lower_bound_skips_cyclic() {
        // y^4 = x generates: cyclic of order 16.
        let g = params(2, 2, 2, 2, 0, Sign::Positive);
        assert_eq!(eta_formula(&g).eta, 1);
        assert!(!eta_lower_bound(&g).bound_applies);
        assert!(eta_lower_bound(&params(2, 2, 2, 0, 0, Sign::Positive)).bound_applies);
    }
}
