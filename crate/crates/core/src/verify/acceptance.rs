//! The ten acceptance criteria as library functions, so the CLI `check`
//! subcommand and the `acceptance` test target share one implementation.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use super::theorems::{
    conjugacy_lemma, index_two_subgroup, negative_quotient, positive_class_cosets,
    quotient_monotone, quotient_parameters_match, structure_closed_forms, CheckResult,
};
use super::{verify_tuple, SweepGrid};
use crate::engine::{
    check_axioms_exhaustive, check_axioms_sampled, make_direct_product, make_metacyclic,
    quotient_view, subgroup_closure, AxiomReport, FiniteGroupView, MetacyclicGroup, SubgroupView,
};
use crate::formulas::{eta_formula, eta_lower_bound, g_p};
use crate::oracle::{eta, structure};
use crate::params::{GroupParams, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "[{status}] {:>2}. {}: {}",
            self.id, self.name, self.detail
        )
    }
}

/// Order caps for each criterion. Exponents are per prime; orders are absolute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AcceptanceLimits {
    pub p2_max_exp: u32,
    pub p3_max_exp: u32,
    pub p5_max_exp: u32,
    /// Quotient theorems, the index-two proposition and direct products.
    pub theorem_max_order: u64,
    /// Exhaustive `cl(g) = gG'` outside the p-th powers.
    pub class_max_order: u64,
    pub eta3_max_order: u64,
    pub exhaustive_axiom_order: u64,
    pub axiom_samples: usize,
}

impl Default for AcceptanceLimits {
    fn default() -> Self {
        AcceptanceLimits {
            p2_max_exp: 12,
            p3_max_exp: 7,
            p5_max_exp: 5,
            theorem_max_order: 1 << 10,
            class_max_order: 729,
            eta3_max_order: 1 << 12,
            exhaustive_axiom_order: 1 << 8,
            axiom_samples: 10_000,
        }
    }
}

impl AcceptanceLimits {
    /// The default caps, further limited to groups of order at most `2^max_order_exp`.
    pub fn capped(max_order_exp: u32) -> Self {
        let full = Self::default();
        let cap = 1u64 << max_order_exp.min(62);
        let exp_under = |p: u64, e: u32| (0..=e).rev().find(|&k| p.pow(k) <= cap).unwrap_or(0);
        AcceptanceLimits {
            p2_max_exp: exp_under(2, full.p2_max_exp),
            p3_max_exp: exp_under(3, full.p3_max_exp),
            p5_max_exp: exp_under(5, full.p5_max_exp),
            theorem_max_order: full.theorem_max_order.min(cap),
            class_max_order: full.class_max_order.min(cap),
            eta3_max_order: full.eta3_max_order.min(cap),
            exhaustive_axiom_order: full.exhaustive_axiom_order.min(cap),
            axiom_samples: full.axiom_samples,
        }
    }

    fn grids(&self) -> [SweepGrid; 3] {
        let mut p2 = SweepGrid::new(2, self.p2_max_exp);
        let mut p3 = SweepGrid::new(3, self.p3_max_exp);
        let mut p5 = SweepGrid::new(5, self.p5_max_exp);
        for g in [&mut p2, &mut p3, &mut p5] {
            g.oracle_budget = u64::MAX;
        }
        [p2, p3, p5]
    }

    /// Every valid tuple on the three grids.
    fn swept(&self) -> Vec<GroupParams> {
        self.grids().iter().flat_map(SweepGrid::tuples).collect()
    }
}

fn group_of(params: &GroupParams) -> MetacyclicGroup {
    make_metacyclic(params, u64::MAX).expect("no budget")
}

fn order_of(params: &GroupParams) -> u64 {
    params.p().pow(params.order_exponent())
}

/// Collects failures; the criterion passes when none are recorded.
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn from_results(results: Vec<(usize, Vec<String>)>) -> Self {
        let checked = results.iter().map(|r| r.0).sum();
        let failures = results.into_iter().flat_map(|r| r.1).collect();
        Tally { checked, failures }
    }

    fn criterion(self, id: u8, name: &'static str, unit: &str) -> Criterion {
        let detail = if self.failures.is_empty() {
            format!("{} {unit} checked, 0 failures", self.checked)
        } else {
            let shown: Vec<&str> = self.failures.iter().take(5).map(String::as_str).collect();
            format!(
                "{} {unit} checked, {} failures: {}",
                self.checked,
                self.failures.len(),
                shown.join("; ")
            )
        };
        Criterion {
            id,
            name,
            passed: self.failures.is_empty() && self.checked > 0,
            detail,
        }
    }
}

fn failed_checks(params: &GroupParams, checks: &[CheckResult]) -> Vec<String> {
    checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{params} {}: {}", c.name, c.detail))
        .collect()
}

/// Formula equals oracle on every p = 2 tuple, both signs.
pub fn formula_oracle_p2(limits: &AcceptanceLimits) -> Criterion {
    let tuples = limits.grids()[0].tuples();
    let results = tuples
        .par_iter()
        .map(|g| {
            let formula = eta_formula(g).eta;
            let oracle = eta(&group_of(g));
            let fail =
                (formula != oracle).then(|| format!("{g}: formula {formula}, oracle {oracle}"));
            (1, fail.into_iter().collect())
        })
        .collect();
    Tally::from_results(results).criterion(1, "formula = oracle, p = 2", "tuples")
}

/// Formula equals oracle for odd p positive type, and `η(G) = η(G/G')`.
pub fn formula_oracle_odd(limits: &AcceptanceLimits) -> Criterion {
    let grids = limits.grids();
    let tuples: Vec<GroupParams> = grids[1..]
        .iter()
        .flat_map(|grid| {
            SweepGrid {
                signs: vec![Sign::Positive],
                ..grid.clone()
            }
            .tuples()
        })
        .collect();
    let results = tuples
        .par_iter()
        .map(|g| {
            let r = verify_tuple(g, true, u64::MAX);
            let mut fails = Vec::new();
            if r.matches != Some(true) {
                fails.push(format!(
                    "{g}: formula {}, oracle {:?}",
                    r.eta_formula, r.eta_oracle
                ));
            }
            if r.eta_abelianization != r.eta_oracle {
                fails.push(format!(
                    "{g}: eta(G) = {:?}, eta(G/G') = {:?}",
                    r.eta_oracle, r.eta_abelianization
                ));
            }
            if r.abelianization_oracle.map(sorted) != r.abelianization_formula.map(sorted) {
                fails.push(format!(
                    "{g}: G/G' invariants {:?}, formula {:?}",
                    r.abelianization_oracle, r.abelianization_formula
                ));
            }
            (1, fails)
        })
        .collect();
    Tally::from_results(results).criterion(
        2,
        "formula = oracle and eta(G) = eta(G/G'), odd p",
        "tuples",
    )
}

fn sorted((a, b): (u32, u32)) -> (u32, u32) {
    (a.max(b), a.min(b))
}

/// Dihedral, generalized quaternion and semidihedral groups have `η = 3`.
pub fn eta3_family(limits: &AcceptanceLimits) -> Criterion {
    let mut tuples = Vec::new();
    for alpha in 2..64u32 {
        if 1u64 << (alpha + 1) > limits.eta3_max_order {
            break;
        }
        for (epsilon, delta) in [(0, 0), (1, 0), (0, 1)] {
            if let Ok(g) = GroupParams::new(2, alpha, 1, epsilon, delta, Sign::Negative) {
                tuples.push(g);
            }
        }
    }
    let results = tuples
        .par_iter()
        .map(|g| {
            let oracle = eta(&group_of(g));
            let fail = (oracle != 3).then(|| format!("{g}: oracle {oracle}"));
            (1, fail.into_iter().collect())
        })
        .collect();
    Tally::from_results(results).criterion(3, "eta = 3 on the maximal class family", "groups")
}

/// `η(C_{p^a} × C_{p^b}) = g_p(a, b)`.
pub fn direct_products(limits: &AcceptanceLimits) -> Criterion {
    let mut cases = Vec::new();
    for p in [2u64, 3, 5] {
        for a in 1..64u32 {
            for b in 1..64u32 {
                if let Some(order) = p.checked_pow(a + b) {
                    if order <= limits.theorem_max_order {
                        cases.push((p, a, b));
                    }
                }
            }
        }
    }
    let results = cases
        .par_iter()
        .map(|&(p, a, b)| {
            let view = make_direct_product(p, a, b, u64::MAX).expect("p is prime");
            let (oracle, expected) = (eta(&view), g_p(p, a, b));
            let fail = (oracle != expected)
                .then(|| format!("C_{p}^{a} x C_{p}^{b}: oracle {oracle}, g_p {expected}"));
            (1, fail.into_iter().collect())
        })
        .collect();
    Tally::from_results(results).criterion(4, "eta of abelian rank-two groups = g_p", "products")
}

/// `η ≥ n − 2` off the maximal class, equality exactly where flagged, plus spot values.
pub fn lower_bound(limits: &AcceptanceLimits) -> Criterion {
    let tuples = limits.swept();
    let mut fails = Vec::new();
    let mut checked = 0;
    let mut cyclic = 0;
    for g in &tuples {
        let bound = eta_lower_bound(g);
        if !bound.bound_applies {
            cyclic += usize::from(eta_formula(g).eta == 1);
            continue;
        }
        checked += 1;
        let value = eta_formula(g).eta as i64;
        if value < bound.n_minus_2 {
            fails.push(format!("{g}: eta {value} < {}", bound.n_minus_2));
        } else if (value == bound.n_minus_2) != bound.equality_expected {
            fails.push(format!(
                "{g}: eta {value}, n - 2 = {}, equality flagged {}",
                bound.n_minus_2, bound.equality_expected
            ));
        }
    }
    for (alpha, beta, expected) in [(5, 3, 6u64), (6, 4, 8)] {
        let g = GroupParams::new(2, alpha, beta, 0, beta, Sign::Negative).expect("valid");
        checked += 1;
        let formula = eta_formula(&g).eta;
        let bound = eta_lower_bound(&g);
        let oracle = (order_of(&g) <= limits.eta3_max_order).then(|| eta(&group_of(&g)));
        if formula != expected || oracle.is_some_and(|o| o != expected) || !bound.equality_expected
        {
            fails.push(format!(
                "{g}: formula {formula}, oracle {oracle:?}, expected {expected}"
            ));
        }
    }
    let mut c = Tally {
        checked,
        failures: fails,
    }
    .criterion(
        5,
        "eta >= n - 2 with equality exactly where flagged",
        "tuples",
    );
    c.detail
        .push_str(&format!(" ({cyclic} cyclic tuples outside the bound)"));
    c
}

fn p2_tuples_up_to(limits: &AcceptanceLimits, max_order: u64) -> Vec<GroupParams> {
    limits.grids()[0]
        .tuples()
        .into_iter()
        .filter(|g| order_of(g) <= max_order)
        .collect()
}

/// Quotient monotonicity, the negative-type quotient equality, and quotient parameters.
pub fn quotient_theorems(limits: &AcceptanceLimits) -> Criterion {
    let tuples = p2_tuples_up_to(limits, limits.theorem_max_order);
    let results = tuples
        .par_iter()
        .map(|g| {
            let group = group_of(g);
            let eta_g = eta(&group);
            let mut checks = quotient_monotone(&group, eta_g);
            if g.sign() == Sign::Negative && g.delta() >= 1 {
                checks.extend(negative_quotient(&group, eta_g));
            }
            if g.delta() >= 1 {
                checks.push(quotient_parameters_match(&group));
            }
            (checks.len(), failed_checks(g, &checks))
        })
        .collect();
    Tally::from_results(results).criterion(6, "quotient theorems", "checks")
}

/// Brute-force derived subgroup, center, powerful flag and power sets against closed forms.
pub fn structure_checks(limits: &AcceptanceLimits) -> Criterion {
    let tuples = limits.swept();
    let results = tuples
        .par_iter()
        .map(|g| {
            let group = group_of(g);
            let checks = structure_closed_forms(&group, &structure(&group));
            (checks.len(), failed_checks(g, &checks))
        })
        .collect();
    Tally::from_results(results).criterion(7, "structure closed forms", "checks")
}

/// Sampled classes above this order in the lemma on `y^(pl+a) x^m`.
const LARGE_GROUP_CLASS_SAMPLES: usize = 64;

/// `cl(g) = gG'` outside the p-th powers (positive type, small order) and on
/// `y^(pl+a) x^m` (all tuples, sampled on large groups).
pub fn conjugacy_lemmas(limits: &AcceptanceLimits) -> Criterion {
    let tuples = limits.swept();
    let results = tuples
        .par_iter()
        .map(|g| {
            let group = group_of(g);
            let report = structure(&group);
            let mut checks = vec![conjugacy_lemma(
                &group,
                &report.derived,
                LARGE_GROUP_CLASS_SAMPLES,
            )];
            if g.sign() == Sign::Positive && order_of(g) <= limits.class_max_order {
                checks.push(positive_class_cosets(
                    &group,
                    &report.derived,
                    &report.pth_powers,
                ));
            }
            (checks.len(), failed_checks(g, &checks))
        })
        .collect();
    Tally::from_results(results).criterion(8, "conjugacy classes are cosets of G'", "checks")
}

/// `η(G) = η*(M) + 1` (δ = 0) or `η*(M)` (δ = 1) with `M = ⟨x, y²⟩`.
pub fn index_two_proposition(limits: &AcceptanceLimits) -> Criterion {
    let tuples: Vec<GroupParams> = p2_tuples_up_to(limits, limits.theorem_max_order)
        .into_iter()
        .filter(|g| g.sign() == Sign::Negative && g.delta() <= 1 && g.beta() >= 2)
        .collect();
    let results = tuples
        .par_iter()
        .map(|g| {
            let group = group_of(g);
            let checks = index_two_subgroup(&group, eta(&group));
            (checks.len(), failed_checks(g, &checks))
        })
        .collect();
    Tally::from_results(results).criterion(9, "eta through the index-two subgroup", "checks")
}

fn axiom_failures<V: FiniteGroupView + ?Sized>(
    name: &str,
    view: &V,
    limits: &AcceptanceLimits,
    seed: u64,
) -> Vec<String> {
    let report: AxiomReport = if view.order() as u64 <= limits.exhaustive_axiom_order {
        check_axioms_exhaustive(view)
    } else {
        check_axioms_sampled(view, limits.axiom_samples as u64, seed)
    };
    if report.is_sound() {
        Vec::new()
    } else {
        vec![format!("{name}: {report:?}")]
    }
}

/// Group axioms on every metacyclic, direct-product, subgroup and quotient view built.
pub fn engine_soundness(limits: &AcceptanceLimits) -> Criterion {
    let tuples = limits.swept();
    let results: Vec<(usize, Vec<String>)> = tuples
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let group = group_of(g);
            let seed = i as u64;
            let mut fails = axiom_failures(&g.to_string(), &group, limits, seed);
            let mut views = 1;
            if order_of(g) <= 2 * limits.exhaustive_axiom_order {
                let p = g.p() as i64;
                let m = subgroup_closure(&group, &[group.x(), group.power(group.y(), p)]);
                let sub = SubgroupView::new(&group, &m);
                fails.extend(axiom_failures(
                    &format!("{g} subgroup <x, y^p>"),
                    &sub,
                    limits,
                    seed,
                ));
                let top =
                    subgroup_closure(&group, &[group.power(group.x(), g.x_order() as i64 / p)]);
                let q = quotient_view(&group, &top).expect("subgroups of <x> are normal");
                fails.extend(axiom_failures(&format!("{g} quotient"), &q, limits, seed));
                views += 2;
            }
            (views, fails)
        })
        .collect();
    let mut products = Vec::new();
    for p in [2u64, 3, 5] {
        for a in 0..13u32 {
            for b in 0..13u32 {
                if p.checked_pow(a + b)
                    .is_some_and(|o| o <= limits.theorem_max_order)
                {
                    products.push((p, a, b));
                }
            }
        }
    }
    let product_results: Vec<(usize, Vec<String>)> = products
        .par_iter()
        .map(|&(p, a, b)| {
            let view = make_direct_product(p, a, b, u64::MAX).expect("p is prime");
            let name = format!("C_{p}^{a} x C_{p}^{b}");
            (1, axiom_failures(&name, &view, limits, (a * 16 + b) as u64))
        })
        .collect();
    Tally::from_results(results.into_iter().chain(product_results).collect()).criterion(
        10,
        "engine group axioms",
        "views",
    )
}

/// All ten criteria in order.
pub fn run_all(limits: &AcceptanceLimits) -> Vec<Criterion> {
    type Check = fn(&AcceptanceLimits) -> Criterion;
    const CRITERIA: [Check; 10] = [
        formula_oracle_p2,
        formula_oracle_odd,
        eta3_family,
        direct_products,
        lower_bound,
        quotient_theorems,
        structure_checks,
        conjugacy_lemmas,
        index_two_proposition,
        engine_soundness,
    ];
    CRITERIA.iter().map(|c| c(limits)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn capped_limits() {
        let l = AcceptanceLimits::capped(6);
        assert_eq!((l.p2_max_exp, l.p3_max_exp, l.p5_max_exp), (6, 3, 2));
        assert_eq!(l.theorem_max_order, 64);
        assert_eq!(AcceptanceLimits::capped(40), AcceptanceLimits::default());
    }

    #[test]
    fn small_run_passes() {
        let criteria = run_all(&AcceptanceLimits::capped(6));
        assert_eq!(criteria.len(), 10);
        for (i, c) in criteria.iter().enumerate() {
            assert_eq!(c.id as usize, i + 1);
            assert!(c.passed, "{c}");
        }
    }
}
