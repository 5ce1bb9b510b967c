use eta_meta::engine::{
    make_direct_product, make_metacyclic, subgroup_closure, FiniteGroupView, MetacyclicGroup,
    DEFAULT_BUDGET,
};
use eta_meta::formulas::{eta_formula, g_p, quotient_params, CaseTag};
use eta_meta::oracle::{
    abelian_invariants, center, conjugacy_class_of, cyclic_subgroups, derived_subgroup, eta,
    eta_star, maximal_cyclic_subgroups, maximal_cyclic_subgroups_by_containment, pth_power_set,
    quotient_eta_equality_witness, structure,
};
use eta_meta::params::{GroupParams, Sign};
use eta_meta::verify::{sweep, verify_theorems, SweepGrid, SINGLE_ORACLE_BUDGET};

fn params(p: u64, alpha: u32, beta: u32, epsilon: u32, delta: u32, sign: Sign) -> GroupParams {
    GroupParams::new(p, alpha, beta, epsilon, delta, sign).unwrap()
}

fn meta(p: u64, alpha: u32, beta: u32, epsilon: u32, delta: u32, sign: Sign) -> MetacyclicGroup {
    make_metacyclic(
        &params(p, alpha, beta, epsilon, delta, sign),
        DEFAULT_BUDGET,
    )
    .unwrap()
}

#[test]
fn cyclic_subgroup_counts() {
    let klein = make_direct_product(2, 1, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(cyclic_subgroups(&klein).len(), 4);
    assert_eq!(maximal_cyclic_subgroups(&klein).len(), 3);
    assert_eq!(eta(&klein), 3);

    let c8 = make_direct_product(2, 3, 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(cyclic_subgroups(&c8).len(), 4);
    assert_eq!(maximal_cyclic_subgroups(&c8).len(), 1);

    let q8 = meta(2, 2, 1, 1, 0, Sign::Negative);
    assert_eq!(cyclic_subgroups(&q8).len(), 5);
    let maximal = maximal_cyclic_subgroups(&q8);
    assert_eq!(maximal.len(), 3);
    assert!(maximal.iter().all(|k| k.len() == 4));
    let trivial = make_direct_product(2, 0, 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(eta(&trivial), 1);
}

#[test]
fn chain_marking_agrees_with_containment() {
    for g in SweepGrid::new(2, 6).tuples() {
        let group = make_metacyclic(&g, DEFAULT_BUDGET).unwrap();
        let mut a = maximal_cyclic_subgroups(&group);
        let mut b = maximal_cyclic_subgroups_by_containment(&group);
        a.sort();
        b.sort();
        assert_eq!(a, b, "{g}");
    }
}

#[test]
fn maximal_class_family_has_eta_three() {
    for g in [
        params(2, 4, 1, 0, 0, Sign::Negative),
        params(2, 3, 1, 1, 0, Sign::Negative),
        params(2, 4, 1, 0, 1, Sign::Negative),
    ] {
        let group = make_metacyclic(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(eta(&group), 3, "{g}");
        assert_eq!(eta_formula(&g).case_tag, CaseTag::Eta3Family);
    }
}

#[test]
fn direct_products_match_g_p() {
    for (p, a, b) in [(2, 4, 4), (2, 4, 1), (3, 2, 2), (5, 2, 1), (3, 3, 1)] {
        let view = make_direct_product(p, a, b, DEFAULT_BUDGET).unwrap();
        assert_eq!(eta(&view), g_p(p, a, b), "p = {p}, ({a}, {b})");
    }
    assert_eq!(g_p(3, 2, 2), 12);
}

#[test]
fn eta_star_examples() {
    let g = meta(2, 3, 2, 0, 0, Sign::Negative);
    let whole = subgroup_closure(&g, &g.generators());
    assert_eq!(eta_star(&g, &whole).unwrap().eta_star, eta(&g));
    let m = subgroup_closure(&g, &[g.x(), g.power(g.y(), 2)]);
    assert_eq!(eta(&g), eta_star(&g, &m).unwrap().eta_star + 1);
    assert_eq!(eta(&g), 6);

    let g = meta(2, 3, 2, 0, 1, Sign::Negative);
    let m = subgroup_closure(&g, &[g.x(), g.power(g.y(), 2)]);
    assert_eq!(eta(&g), eta_star(&g, &m).unwrap().eta_star);
}

#[test]
fn power_sets() {
    let klein = make_direct_product(2, 1, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(pth_power_set(&klein, 2).as_slice(), &[klein.identity()]);
    let q8 = meta(2, 2, 1, 1, 0, Sign::Negative);
    let squares = pth_power_set(&q8, 2);
    assert_eq!(squares.len(), 2);
    assert!(squares.contains(q8.power(q8.x(), 2)));
    // C_9 × C_3: the cubes are ⟨x^3⟩, each with 9 cube roots.
    let g = meta(3, 2, 1, 0, 0, Sign::Positive);
    let cubes = pth_power_set(&g, 3);
    assert_eq!(cubes.len(), 3);
    assert!(cubes.contains(g.power(g.x(), 3)));
    for c in cubes.iter() {
        assert_eq!(g.elements().filter(|&h| g.power(h, 3) == c).count(), 9);
    }
}

#[test]
fn structure_examples() {
    let d16 = meta(2, 3, 1, 0, 0, Sign::Negative);
    let derived = derived_subgroup(&d16);
    assert_eq!(derived.len(), 4);
    assert!(derived.contains(d16.power(d16.x(), 2)));

    let g = meta(3, 3, 2, 0, 1, Sign::Positive);
    assert_eq!(center(&g).len(), 27);

    let abelian = make_direct_product(3, 2, 1, DEFAULT_BUDGET).unwrap();
    let report = structure(&abelian);
    assert_eq!(report.derived.len(), 1);
    assert_eq!(report.center.len(), abelian.order());
    assert!(report.is_powerful);
}

#[test]
fn abelianization_examples() {
    let g = meta(3, 3, 2, 0, 1, Sign::Positive);
    let q = eta_meta::engine::quotient_view(&g, &derived_subgroup(&g)).unwrap();
    assert_eq!(abelian_invariants(&q).unwrap(), (2, 2));

    let g = meta(2, 4, 3, 2, 1, Sign::Positive);
    let q = eta_meta::engine::quotient_view(&g, &derived_subgroup(&g)).unwrap();
    assert_eq!(abelian_invariants(&q).unwrap(), (4, 2));

    let c8 = make_direct_product(2, 3, 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(abelian_invariants(&c8).unwrap(), (3, 0));
}

#[test]
fn quotient_criterion_examples() {
    let c4 = make_direct_product(2, 2, 0, DEFAULT_BUDGET).unwrap();
    let n = subgroup_closure(&c4, &[c4.element(2, 0)]);
    let crit = quotient_eta_equality_witness(&c4, &n).unwrap();
    assert!(crit.holds && crit.is_consistent());
    assert_eq!((crit.eta_group, crit.eta_quotient), (1, 1));

    let klein = make_direct_product(2, 1, 1, DEFAULT_BUDGET).unwrap();
    let n = subgroup_closure(&klein, &[klein.element(1, 0)]);
    let crit = quotient_eta_equality_witness(&klein, &n).unwrap();
    assert!(!crit.holds && crit.is_consistent());
    assert_eq!((crit.eta_group, crit.eta_quotient), (3, 1));

    for g in SweepGrid::new(2, 9).tuples() {
        if g.sign() != Sign::Negative || g.delta() < 2 {
            continue;
        }
        let group = make_metacyclic(&g, DEFAULT_BUDGET).unwrap();
        let x = group.power(group.x(), 1 << (g.alpha() - g.delta() + 1));
        let n = subgroup_closure(&group, &[x]);
        let crit = quotient_eta_equality_witness(&group, &n).unwrap();
        assert!(crit.holds && crit.is_consistent(), "{g}");
    }
}

#[test]
fn conjugacy_classes() {
    let g = meta(3, 3, 2, 0, 1, Sign::Positive);
    let derived = derived_subgroup(&g);
    for m in 0..27 {
        let elt = g.element(m, 1);
        let class = conjugacy_class_of(&g, elt);
        assert_eq!(class.len(), 3);
        assert!(derived.iter().all(|d| class.contains(g.multiply(elt, d))));
    }
    let central = g.power(g.x(), 9);
    assert_eq!(conjugacy_class_of(&g, central).len(), 1);
}

#[test]
fn formula_examples_match_oracle() {
    let cases = [
        (
            params(2, 3, 2, 0, 0, Sign::Negative),
            6,
            CaseTag::NegEps0Beta2,
        ),
        (
            params(2, 4, 3, 0, 2, Sign::Negative),
            6,
            CaseTag::NegDeltaGe2,
        ),
        (
            params(3, 3, 2, 0, 1, Sign::Positive),
            12,
            CaseTag::PositiveViaAbelianizationI,
        ),
        (
            params(2, 2, 2, 1, 0, Sign::Negative),
            4,
            CaseTag::NegEps1Beta2,
        ),
        (
            params(2, 5, 3, 0, 3, Sign::Negative),
            6,
            CaseTag::NegDeltaGe2,
        ),
        (
            params(2, 6, 4, 0, 4, Sign::Negative),
            8,
            CaseTag::NegDeltaGe2,
        ),
    ];
    for (g, expected, tag) in cases {
        let formula = eta_formula(&g);
        assert_eq!((formula.eta, formula.case_tag), (expected, tag), "{g}");
        let group = make_metacyclic(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(eta(&group), expected, "{g}");
    }
}

#[test]
fn quotient_params_examples() {
    assert_eq!(
        quotient_params(&params(2, 5, 3, 0, 3, Sign::Negative)).unwrap(),
        params(2, 3, 3, 0, 1, Sign::Negative)
    );
    assert_eq!(
        quotient_params(&params(3, 5, 3, 2, 2, Sign::Positive)).unwrap(),
        params(3, 4, 3, 1, 1, Sign::Positive)
    );
    let g = params(2, 4, 3, 1, 1, Sign::Positive);
    assert_eq!(quotient_params(&g).unwrap(), g);
}

#[test]
fn theorem_checks_on_spec_tuples() {
    for g in [
        params(2, 5, 3, 0, 3, Sign::Negative),
        params(2, 3, 2, 0, 0, Sign::Negative),
        params(3, 3, 2, 0, 1, Sign::Positive),
        params(2, 4, 2, 1, 1, Sign::Negative),
    ] {
        let checks = verify_theorems(&g, SINGLE_ORACLE_BUDGET);
        assert!(!checks.is_empty());
        for c in &checks {
            assert!(c.passed, "{g}: {c}");
        }
    }
    let checks = verify_theorems(&params(3, 3, 2, 0, 1, Sign::Positive), SINGLE_ORACLE_BUDGET);
    let coset_check = checks
        .iter()
        .find(|c| c.name == "positive_class_cosets")
        .unwrap();
    assert_eq!(coset_check.detail, "0 of 216 elements outside G^{p} fail");
}

#[test]
fn small_sweeps_match() {
    let reports = sweep(&SweepGrid::new(2, 6));
    assert!(!reports.is_empty());
    assert!(reports
        .iter()
        .all(|r| r.matches == Some(true) && r.is_consistent()));

    let mut grid = SweepGrid::new(3, 5);
    grid.signs = vec![Sign::Positive];
    for r in sweep(&grid) {
        assert_eq!(r.matches, Some(true), "{}", r.params);
        let order_exp = r.params.order_exponent() as u64;
        // Cyclic groups have η = 1; the lower bound η ≥ α + β holds for all others.
        if r.eta_formula == 1 {
            assert_eq!(r.abelianization_formula.map(|(a, b)| a.min(b)), Some(0));
        } else {
            assert!(r.eta_formula >= order_exp, "{}", r.params);
        }
    }
}
