//! Formula-versus-oracle comparison and theorem checks over parameter sweeps.

pub mod acceptance;
mod theorems;

pub use theorems::{verify_theorems, CheckResult};

use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{make_metacyclic, quotient_view};
use crate::formulas::{eta_formula, eta_lower_bound, CaseTag};
use crate::oracle::{abelian_invariants, derived_subgroup, eta};
use crate::params::{checked_pow, GroupParams, Sign};

/// Oracle cap for full sweeps.
pub const SWEEP_ORACLE_BUDGET: u64 = 1 << 12;
/// Oracle cap for single-tuple verification.
pub const SINGLE_ORACLE_BUDGET: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EtaReport {
    pub params: GroupParams,
    pub order: u64,
    pub eta_formula: u64,
    pub case_tag: CaseTag,
    pub eta_oracle: Option<u64>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub n_minus_2: i64,
    pub bound_ok: bool,
    pub equality_expected: bool,
    pub equality_observed: Option<bool>,
    /// Positive type with the oracle run: `η(G/G')` measured on the coset quotient.
    pub eta_abelianization: Option<u64>,
    /// Positive type with the oracle run: invariants of `G/G'` measured on the quotient.
    pub abelianization_oracle: Option<(u32, u32)>,
    pub abelianization_formula: Option<(u32, u32)>,
}

impl EtaReport {
    /// True unless some comparison that ran disagreed.
    pub fn is_consistent(&self) -> bool {
        let ab_ok = match (self.abelianization_oracle, self.abelianization_formula) {
            (Some((a, b)), Some((c, d))) => (a.max(b), a.min(b)) == (c.max(d), c.min(d)),
            _ => true,
        };
        let quotient_ok = match (self.eta_oracle, self.eta_abelianization) {
            (Some(g), Some(q)) => g == q,
            _ => true,
        };
        self.matches != Some(false) && self.bound_ok && ab_ok && quotient_ok
    }
}

/// Formula value, bound diagnostics and, if requested and within `oracle_budget`,
/// the oracle value. Over budget the oracle fields stay `None`.
pub fn verify_tuple(params: &GroupParams, run_oracle: bool, oracle_budget: u64) -> EtaReport {
    let formula = eta_formula(params);
    let bound = eta_lower_bound(params);
    let order = checked_pow(params.p(), params.order_exponent()).unwrap_or(u64::MAX);
    let mut report = EtaReport {
        params: *params,
        order,
        eta_formula: formula.eta,
        case_tag: formula.case_tag,
        eta_oracle: None,
        matches: None,
        n_minus_2: bound.n_minus_2,
        bound_ok: !bound.bound_applies
            || (formula.eta as i64 >= bound.n_minus_2
                && (formula.eta as i64 == bound.n_minus_2) == bound.equality_expected),
        equality_expected: bound.equality_expected,
        equality_observed: None,
        eta_abelianization: None,
        abelianization_oracle: None,
        abelianization_formula: formula.abelianization,
    };
    if !run_oracle {
        return report;
    }
    let Ok(group) = make_metacyclic(params, oracle_budget) else {
        return report;
    };
    let observed = eta(&group);
    report.eta_oracle = Some(observed);
    report.matches = Some(observed == formula.eta);
    if bound.bound_applies {
        report.equality_observed = Some(observed as i64 == bound.n_minus_2);
    }
    if params.sign() == Sign::Positive {
        let derived = derived_subgroup(&group);
        let quotient = quotient_view(&group, &derived).expect("derived subgroup is normal");
        report.eta_abelianization = Some(eta(&quotient));
        report.abelianization_oracle = abelian_invariants(&quotient).ok();
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepGrid {
    pub p: u64,
    pub max_order_exponent: u32,
    pub signs: Vec<Sign>,
    /// Largest group order for which the oracle runs.
    pub oracle_budget: u64,
}

impl SweepGrid {
    pub fn new(p: u64, max_order_exponent: u32) -> Self {
        SweepGrid {
            p,
            max_order_exponent,
            signs: vec![Sign::Positive, Sign::Negative],
            oracle_budget: SWEEP_ORACLE_BUDGET,
        }
    }

    /// Every valid tuple with `α + β ≤ max_order_exponent`, ordered by `(α, β, ε, δ, sign)`.
    pub fn tuples(&self) -> Vec<GroupParams> {
        let n = self.max_order_exponent;
        let mut out = Vec::new();
        for alpha in 1..n {
            for beta in 1..=(n - alpha) {
                for epsilon in 0..=alpha {
                    for delta in 0..=alpha {
                        for &sign in &self.signs {
                            if let Ok(g) =
                                GroupParams::new(self.p, alpha, beta, epsilon, delta, sign)
                            {
                                out.push(g);
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// One report per grid tuple, in grid order regardless of thread count.
pub fn sweep(grid: &SweepGrid) -> Vec<EtaReport> {
    let mut reports: Vec<EtaReport> = grid
        .tuples()
        .par_iter()
        .map(|g| verify_tuple(g, true, grid.oracle_budget))
        .collect();
    reports.sort_by_key(|r| r.params);
    reports
}
