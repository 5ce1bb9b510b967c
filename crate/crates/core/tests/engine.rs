use eta_meta::engine::{
    check_axioms_exhaustive, check_axioms_sampled, make_direct_product, make_metacyclic,
    order_profile, quotient_view, subgroup_closure, FiniteGroupView, MetacyclicGroup,
    DEFAULT_BUDGET,
};
use eta_meta::params::{GroupParams, Sign};
use eta_meta::verify::SweepGrid;

fn meta(p: u64, alpha: u32, beta: u32, epsilon: u32, delta: u32, sign: Sign) -> MetacyclicGroup {
    make_metacyclic(
        &GroupParams::new(p, alpha, beta, epsilon, delta, sign).unwrap(),
        DEFAULT_BUDGET,
    )
    .unwrap()
}

#[test]
fn presentation_relations_hold_on_every_small_tuple() {
    for (p, n) in [(2, 8), (3, 5), (5, 4)] {
        for g in SweepGrid::new(p, n).tuples() {
            let group = make_metacyclic(&g, DEFAULT_BUDGET).unwrap();
            let (x, y) = (group.x(), group.y());
            let id = group.identity();
            assert_eq!(group.element_order(x), group.x_order(), "{g}");
            assert_eq!(group.power(x, group.x_order() as i64), id, "{g}");
            assert_eq!(group.conjugate(x, y), group.power(x, g.r() as i64), "{g}");
            let tail = p.pow(g.alpha() - g.epsilon()) as i64;
            assert_eq!(
                group.power(y, g.y_order() as i64),
                group.power(x, tail),
                "{g}"
            );
            assert_eq!(group.order() as u64, p.pow(g.order_exponent()), "{g}");
        }
    }
}

#[test]
fn exhaustive_axioms_up_to_order_64() {
    for p in [2, 3] {
        for g in SweepGrid::new(p, if p == 2 { 6 } else { 3 }).tuples() {
            let group = make_metacyclic(&g, DEFAULT_BUDGET).unwrap();
            let report = check_axioms_exhaustive(&group);
            assert!(report.is_sound(), "{g}: {report:?}");
        }
    }
}

#[test]
fn sampled_axioms_are_seeded() {
    let g = meta(2, 7, 5, 1, 0, Sign::Negative);
    let a = check_axioms_sampled(&g, 1000, 42);
    let b = check_axioms_sampled(&g, 1000, 42);
    assert_eq!(a, b);
    assert!(a.is_sound());
}

#[test]
fn identity_law_on_samples() {
    let g = meta(3, 3, 2, 0, 1, Sign::Positive);
    for g_elt in g.elements().step_by(2).take(100) {
        assert_eq!(g.multiply(g_elt, g.identity()), g_elt);
        assert_eq!(g.multiply(g.identity(), g_elt), g_elt);
    }
    assert_eq!(g.inverse(g.identity()), g.identity());
    assert_eq!(g.element_order(g.identity()), 1);
    assert_eq!(g.conjugate(g.x(), g.identity()), g.x());
}

#[test]
fn quaternion_generator() {
    let q = meta(2, 2, 1, 1, 0, Sign::Negative);
    assert_eq!(q.order(), 8);
    assert_eq!(q.element_order(q.y()), 4);
    assert_eq!(q.power(q.y(), 2), q.power(q.x(), 2));
}

#[test]
fn direct_product_orders_and_commutativity() {
    let klein = make_direct_product(2, 1, 1, DEFAULT_BUDGET).unwrap();
    assert_eq!(klein.order(), 4);
    assert_eq!(order_profile(&klein), vec![(1, 1), (2, 3)]);
    let c8 = make_direct_product(2, 3, 0, DEFAULT_BUDGET).unwrap();
    assert_eq!(order_profile(&c8), vec![(1, 1), (2, 1), (4, 2), (8, 4)]);
    let g = make_direct_product(3, 2, 2, DEFAULT_BUDGET).unwrap();
    assert_eq!(g.order(), 81);
    for a in g.elements() {
        for b in g.elements() {
            assert_eq!(g.conjugate(a, b), a);
        }
    }
}

#[test]
fn subgroup_sizes() {
    let g = meta(2, 4, 3, 0, 2, Sign::Negative);
    assert_eq!(subgroup_closure(&g, &[g.x()]).len(), 16);
    let n = subgroup_closure(&g, &[g.power(g.x(), 8)]);
    assert_eq!(n.len(), 2);
    assert!(n.check_normal(&g).is_ok());
    assert_eq!(quotient_view(&g, &n).unwrap().order(), 64);

    let g = meta(2, 3, 2, 0, 0, Sign::Negative);
    let m = subgroup_closure(&g, &[g.x(), g.power(g.y(), 2)]);
    assert_eq!((m.len(), g.order()), (16, 32));
}

#[test]
fn quotient_axioms() {
    let g = meta(2, 4, 2, 1, 2, Sign::Positive);
    for j in 1..=4 {
        let n = subgroup_closure(&g, &[g.power(g.x(), 1 << j)]);
        let q = quotient_view(&g, &n).unwrap();
        assert_eq!(q.order() * n.len(), g.order());
        assert!(check_axioms_exhaustive(&q).is_sound());
    }
}
