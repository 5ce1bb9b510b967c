use super::{Element, EngineError, FiniteGroupView, SubgroupElements};

/// `G/N` over coset indices; each coset is represented by its smallest handle.
pub struct QuotientView<'a, V: ?Sized> {
    ambient: &'a V,
    reps: Vec<Element>,
    coset_of: Vec<u32>,
    generators: Vec<Element>,
}

/// Builds `view / n`. Fails with `NotNormal` unless `n` is normal.
pub fn quotient_view<'a, V: FiniteGroupView + ?Sized>(
    view: &'a V,
    n: &SubgroupElements,
) -> Result<QuotientView<'a, V>, EngineError> {
    n.check_normal(view)?;
    let mut coset_of = vec![u32::MAX; view.order()];
    let mut reps = Vec::with_capacity(view.order() / n.len());
    for g in view.elements() {
        if coset_of[g.index()] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g);
        for k in n.iter() {
            coset_of[view.multiply(g, k).index()] = id;
        }
    }
    let mut generators: Vec<Element> = view
        .generators()
        .into_iter()
        .map(|g| Element(coset_of[g.index()]))
        .filter(|g| g.0 != coset_of[view.identity().index()])
        .collect();
    generators.dedup();
    Ok(QuotientView {
        ambient: view,
        reps,
        coset_of,
        generators,
    })
}

impl<V: FiniteGroupView + ?Sized> QuotientView<'_, V> {
    /// The coset containing an ambient element.
    pub fn project(&self, g: Element) -> Element {
        Element(self.coset_of[g.index()])
    }

    pub fn representative(&self, coset: Element) -> Element {
        self.reps[coset.index()]
    }
}

impl<V: FiniteGroupView + ?Sized> FiniteGroupView for QuotientView<'_, V> {
    fn order(&self) -> usize {
        self.reps.len()
    }

    fn prime(&self) -> u64 {
        self.ambient.prime()
    }

    fn identity(&self) -> Element {
        self.project(self.ambient.identity())
    }

    fn multiply(&self, g: Element, h: Element) -> Element {
        self.project(
            self.ambient
                .multiply(self.representative(g), self.representative(h)),
        )
    }

    fn inverse(&self, g: Element) -> Element {
        self.project(self.ambient.inverse(self.representative(g)))
    }

    fn generators(&self) -> Vec<Element> {
        self.generators.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{make_metacyclic, order_profile, subgroup_closure, DEFAULT_BUDGET};
    use crate::params::{GroupParams, Sign};

    #[test]
    fn quotient_orders() {
        let params = GroupParams::new(2, 4, 3, 0, 2, Sign::Negative).unwrap();
        let g = make_metacyclic(&params, DEFAULT_BUDGET).unwrap();
        let n = subgroup_closure(&g, &[g.element(8, 0)]);
        let q = quotient_view(&g, &n).unwrap();
        assert_eq!(q.order(), 64);
        assert_eq!(q.order() * n.len(), g.order());

        let all = subgroup_closure(&g, &g.generators());
        let trivial = quotient_view(&g, &all).unwrap();
        assert_eq!(trivial.order(), 1);
        assert!(trivial.generators().is_empty());
    }

    #[test]
    fn dihedral_quotient_profile() {
        let d16 = make_metacyclic(
            &GroupParams::new(2, 3, 1, 0, 0, Sign::Negative).unwrap(),
            DEFAULT_BUDGET,
        )
        .unwrap();
        let d8 = make_metacyclic(
            &GroupParams::new(2, 2, 1, 0, 0, Sign::Negative).unwrap(),
            DEFAULT_BUDGET,
        )
        .unwrap();
        let n = subgroup_closure(&d16, &[d16.element(4, 0)]);
        let q = quotient_view(&d16, &n).unwrap();
        assert_eq!(order_profile(&q), order_profile(&d8));
        assert_eq!(order_profile(&d8), vec![(1, 1), (2, 5), (4, 2)]);
    }

    #[test]
    fn rejects_non_normal() {
        let d16 = make_metacyclic(
            &GroupParams::new(2, 3, 1, 0, 0, Sign::Negative).unwrap(),
            DEFAULT_BUDGET,
        )
        .unwrap();
        let h = subgroup_closure(&d16, &[d16.y()]);
        assert!(matches!(
            quotient_view(&d16, &h),
            Err(EngineError::NotNormal { .. })
        ));
    }
}
