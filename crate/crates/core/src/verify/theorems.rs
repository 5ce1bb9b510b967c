use std::fmt;

use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::engine::{
    make_metacyclic, order_profile, quotient_view, subgroup_closure, Element, ElementSet,
    FiniteGroupView, MetacyclicGroup, SubgroupElements, SubgroupView,
};
use crate::formulas::{eta_formula, quotient_params};
use crate::oracle::{
    conjugacy_class_of, eta, eta_star, quotient_eta_equality_witness, structure, CyclicLattice,
};
use crate::params::{classify, GroupParams, Sign};

/// Outcome of one named check on one tuple.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "ok" } else { "FAILED" };
        write!(f, "{status:>6} {}: {}", self.name, self.detail)
    }
}

/// Elements above this order get sampled conjugacy-lemma checks instead of exhaustive ones.
const EXHAUSTIVE_CLASS_LIMIT: usize = 1 << 10;
pub(crate) const CLASS_SAMPLES: usize = 256;

/// Runs every theorem-level check that applies to `params`. Returns an empty
/// list when the group is larger than `oracle_budget`.
pub fn verify_theorems(params: &GroupParams, oracle_budget: u64) -> Vec<CheckResult> {
    let Ok(group) = make_metacyclic(params, oracle_budget) else {
        return Vec::new();
    };
    let eta_g = eta(&group);
    let mut out = vec![CheckResult::new(
        "formula_matches_oracle",
        eta_formula(params).eta == eta_g,
        format!("formula {} oracle {}", eta_formula(params).eta, eta_g),
    )];
    out.extend(quotient_monotone(&group, eta_g));
    out.extend(normal_subgroup_bounds(&group, eta_g));
    if params.delta() >= 1 && params.sign() == Sign::Negative {
        out.extend(negative_quotient(&group, eta_g));
    }
    if params.delta() >= 1 {
        out.push(quotient_parameters_match(&group));
    }
    if params.sign() == Sign::Negative && params.delta() <= 1 && params.beta() >= 2 {
        out.extend(index_two_subgroup(&group, eta_g));
    }
    let report = structure(&group);
    out.extend(structure_closed_forms(&group, &report));
    out.push(conjugacy_lemma(&group, &report.derived, CLASS_SAMPLES));
    if params.sign() == Sign::Positive {
        out.push(positive_class_cosets(
            &group,
            &report.derived,
            &report.pth_powers,
        ));
        let crit = quotient_eta_equality_witness(&group, &report.derived)
            .expect("derived subgroup is normal");
        out.push(CheckResult::new(
            "positive_quotient_criterion",
            crit.holds && crit.is_consistent() && crit.eta_group == crit.eta_quotient,
            format!(
                "eta(G) = {}, eta(G/G') = {}, criterion {}",
                crit.eta_group, crit.eta_quotient, crit.holds
            ),
        ));
    }
    out
}

/// `⟨x^(p^j)⟩`.
fn x_power_subgroup(group: &MetacyclicGroup, j: u32) -> SubgroupElements {
    let x = group.power(group.x(), group.params().p().pow(j) as i64);
    subgroup_closure(group, &[x])
}

pub(crate) fn quotient_monotone(group: &MetacyclicGroup, eta_g: u64) -> Vec<CheckResult> {
    (1..=group.params().alpha())
        .map(|j| {
            let n = x_power_subgroup(group, j);
            let q = quotient_view(group, &n).expect("subgroups of <x> are normal");
            let eta_q = eta(&q);
            CheckResult::new(
                "quotient_monotone",
                eta_q <= eta_g,
                format!("j = {j}: eta(G/N) = {eta_q} <= eta(G) = {eta_g}"),
            )
        })
        .collect()
}

/// `M = ⟨x, y^p⟩`, which has index p and contains `⟨x⟩`.
fn index_p_subgroup(group: &MetacyclicGroup) -> SubgroupElements {
    let p = group.params().p() as i64;
    subgroup_closure(group, &[group.x(), group.power(group.y(), p)])
}

pub(crate) fn normal_subgroup_bounds(group: &MetacyclicGroup, eta_g: u64) -> Vec<CheckResult> {
    let m = index_p_subgroup(group);
    let star = eta_star(group, &m).expect("M contains <x>, so it is normal");
    let center = crate::oracle::center(group);
    let eta_z = eta(&SubgroupView::new(group, &center));
    vec![
        CheckResult::new(
            "eta_star_bound",
            eta_g >= star.eta_star,
            format!("eta(G) = {eta_g} >= eta*(M) = {}", star.eta_star),
        ),
        CheckResult::new(
            "index_bound",
            eta_g * star.index >= star.eta_n,
            format!(
                "eta(G) = {eta_g} >= eta(M)/{} = {}/{}",
                star.index, star.eta_n, star.index
            ),
        ),
        CheckResult::new(
            "central_bound",
            eta_g >= eta_z,
            format!("eta(G) = {eta_g} >= eta(Z(G)) = {eta_z}"),
        ),
    ]
}

pub(crate) fn negative_quotient(group: &MetacyclicGroup, eta_g: u64) -> Vec<CheckResult> {
    let params = group.params();
    let n = x_power_subgroup(group, params.alpha() - params.delta() + 1);
    let crit = quotient_eta_equality_witness(group, &n).expect("subgroups of <x> are normal");
    vec![
        CheckResult::new(
            "negative_quotient_equality",
            crit.eta_quotient == eta_g,
            format!(
                "eta(G) = {eta_g}, eta(G/N) = {}, |N| = {}",
                crit.eta_quotient,
                n.len()
            ),
        ),
        CheckResult::new(
            "negative_quotient_criterion",
            crit.holds && crit.is_consistent(),
            format!(
                "N in G^{{2}}: {}, failing coset: {:?}",
                crit.n_in_pth_powers, crit.failing_coset
            ),
        ),
    ]
}

pub(crate) fn quotient_parameters_match(group: &MetacyclicGroup) -> CheckResult {
    let params = group.params();
    let qp = quotient_params(params).expect("delta >= 2");
    let n = x_power_subgroup(group, params.alpha() - params.delta() + 1);
    let q = quotient_view(group, &n).expect("subgroups of <x> are normal");
    let model = make_metacyclic(&qp, u64::MAX).expect("quotient is smaller than the group");
    let passed = q.order() == model.order() && order_profile(&q) == order_profile(&model);
    CheckResult::new(
        "quotient_parameters",
        passed,
        format!(
            "G/N has order {}, {qp} has order {}",
            q.order(),
            model.order()
        ),
    )
}

/// Runs on the canonical presentation: `(α, β, 1, 1, −)` is read as `(α, β, 1, 0, −)`.
pub(crate) fn index_two_subgroup(group: &MetacyclicGroup, eta_g: u64) -> Vec<CheckResult> {
    let canonical = classify(group.params()).canonical_params;
    if canonical != *group.params() {
        let model = make_metacyclic(&canonical, u64::MAX).expect("same order as the group");
        let eta_model = eta(&model);
        let mut out = index_two_subgroup(&model, eta_model);
        out.push(CheckResult::new(
            "canonical_presentation",
            eta_model == eta_g,
            format!("eta(G) = {eta_g}, eta({canonical}) = {eta_model}"),
        ));
        return out;
    }
    let params = group.params();
    let m = index_p_subgroup(group);
    let star = eta_star(group, &m).expect("M contains <x>, so it is normal");
    let (expected, relation) = if params.delta() == 0 {
        (star.eta_star + 1, "eta*(M) + 1")
    } else {
        (star.eta_star, "eta*(M)")
    };

    // Maximal cyclic subgroups of M that stop being maximal in G.
    let sub = SubgroupView::new(group, &m);
    let m_lattice = CyclicLattice::build(&sub);
    let g_lattice = CyclicLattice::build(group);
    let mut demoted: Vec<usize> = m_lattice
        .maximal_ids()
        .map(|id| g_lattice.id_of(sub.to_ambient(m_lattice.generator(id))))
        .filter(|&gid| !g_lattice.is_maximal(gid))
        .collect();
    demoted.sort_unstable();
    let y2 = group.power(group.y(), 2);
    let mut claimed = vec![g_lattice.id_of(y2)];
    if params.delta() == 1 {
        let twist = group.multiply(y2, group.power(group.x(), 1 << (params.alpha() - 1)));
        claimed.push(g_lattice.id_of(twist));
    }
    claimed.sort_unstable();
    claimed.dedup();

    vec![
        CheckResult::new(
            "index_two_eta",
            eta_g == expected,
            format!("eta(G) = {eta_g}, {relation} = {expected}"),
        ),
        CheckResult::new(
            "index_two_maximality",
            demoted == claimed,
            format!(
                "{} maximal cyclic subgroups of M are not maximal in G, {} claimed",
                demoted.len(),
                claimed.len()
            ),
        ),
    ]
}

fn coset(group: &MetacyclicGroup, g: Element, n: &SubgroupElements) -> ElementSet {
    ElementSet::from_elements(group.order(), n.iter().map(|k| group.multiply(g, k)))
}

pub(crate) fn structure_closed_forms(
    group: &MetacyclicGroup,
    report: &crate::oracle::StructureReport,
) -> Vec<CheckResult> {
    let params = group.params();
    let (p, alpha, beta, delta) = (params.p(), params.alpha(), params.beta(), params.delta());
    let x = group.x();
    let y = group.y();
    let pow = |g, e: u32| group.power(g, p.pow(e) as i64);
    let mut out = Vec::new();

    let derived_closed = match params.sign() {
        Sign::Positive => subgroup_closure(group, &[pow(x, alpha - delta)]),
        Sign::Negative => subgroup_closure(group, &[group.power(x, 2)]),
    };
    out.push(CheckResult::new(
        "derived_subgroup",
        derived_closed.elements() == report.derived.elements(),
        format!(
            "|G'| = {}, closed form {}",
            report.derived.len(),
            derived_closed.len()
        ),
    ));

    let center_closed = match params.sign() {
        Sign::Positive => subgroup_closure(group, &[pow(x, delta), pow(y, delta)]),
        Sign::Negative => subgroup_closure(group, &[pow(x, alpha - 1), pow(y, delta.max(1))]),
    };
    let mut center_ok = center_closed.elements() == report.center.elements();
    if params.sign() == Sign::Positive {
        center_ok &= report.center.len() as u64 == p.pow(alpha + beta - 2 * delta);
    }
    out.push(CheckResult::new(
        "center",
        center_ok,
        format!(
            "|Z(G)| = {}, closed form {}",
            report.center.len(),
            center_closed.len()
        ),
    ));

    if params.sign() == Sign::Positive {
        out.push(CheckResult::new(
            "powerful",
            report.is_powerful,
            format!("powerful = {}", report.is_powerful),
        ));
        out.push(CheckResult::new(
            "power_set_is_subgroup",
            report.power_set_is_subgroup(),
            format!(
                "|G^{{p}}| = {}, |G^p| = {}",
                report.pth_powers.len(),
                report.pth_power_subgroup.len()
            ),
        ));
    }
    out
}

/// `cl(g) = gG'` for `g = y^b x^m` with `p ∤ b`: every such element up to
/// `EXHAUSTIVE_CLASS_LIMIT`, otherwise `samples` seeded draws.
pub(crate) fn conjugacy_lemma(
    group: &MetacyclicGroup,
    derived: &SubgroupElements,
    samples: usize,
) -> CheckResult {
    let p = group.params().p();
    let candidates: Vec<Element> = group
        .elements()
        .filter(|&g| !group.exponents(g).1.is_multiple_of(p))
        .collect();
    let chosen: Vec<Element> = if group.order() <= EXHAUSTIVE_CLASS_LIMIT {
        candidates
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(group.order() as u64);
        (0..samples)
            .map(|_| candidates[rng.gen_range(0..candidates.len())])
            .collect()
    };
    let failures = chosen
        .iter()
        .filter(|&&g| conjugacy_class_of(group, g) != coset(group, g, derived))
        .count();
    CheckResult::new(
        "conjugacy_lemma",
        failures == 0,
        format!("{} of {} classes differ from gG'", failures, chosen.len()),
    )
}

/// `cl(g) = gG'` for every `g` outside the set of p-th powers.
pub(crate) fn positive_class_cosets(
    group: &MetacyclicGroup,
    derived: &SubgroupElements,
    pth_powers: &ElementSet,
) -> CheckResult {
    let outside: Vec<Element> = group
        .elements()
        .filter(|&g| !pth_powers.contains(g))
        .collect();
    let failures = outside
        .iter()
        .filter(|&&g| conjugacy_class_of(group, g) != coset(group, g, derived))
        .count();
    CheckResult::new(
        "positive_class_cosets",
        failures == 0,
        format!(
            "{} of {} elements outside G^{{p}} fail",
            failures,
            outside.len()
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::SINGLE_ORACLE_BUDGET;

    fn run(
        p: u64,
        alpha: u32,
        beta: u32,
        epsilon: u32,
        delta: u32,
        sign: Sign,
    ) -> Vec<CheckResult> {
        let g = GroupParams::new(p, alpha, beta, epsilon, delta, sign).unwrap();
        verify_theorems(&g, SINGLE_ORACLE_BUDGET)
    }

    fn find<'a>(checks: &'a [CheckResult], name: &str) -> Vec<&'a CheckResult> {
        checks.iter().filter(|c| c.name == name).collect()
    }

    #[test]
    fn negative_quotient_for_delta_three() {
        let checks = run(2, 5, 3, 0, 3, Sign::Negative);
        let c = find(&checks, "negative_quotient_equality");
        assert_eq!(c.len(), 1);
        assert!(c[0].passed, "{}", c[0]);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn index_two_subgroup_for_dihedral_like() {
        let checks = run(2, 3, 2, 0, 0, Sign::Negative);
        let c = find(&checks, "index_two_eta");
        assert!(c[0].passed);
        assert_eq!(c[0].detail, "eta(G) = 6, eta*(M) + 1 = 6");
        let c = find(&checks, "index_two_eta");
        assert!(c[0].passed);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn positive_class_cosets_for_order_243() {
        let checks = run(3, 3, 2, 0, 1, Sign::Positive);
        let c = find(&checks, "positive_class_cosets");
        assert!(c[0].passed, "{}", c[0]);
        assert!(checks.iter().all(|c| c.passed), "{checks:#?}");
    }

    #[test]
    fn over_budget_is_empty() {
        let g = GroupParams::new(2, 10, 8, 0, 0, Sign::Positive).unwrap();
        assert!(verify_theorems(&g, 1 << 10).is_empty());
    }
}
