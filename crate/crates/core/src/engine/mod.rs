//! Exact arithmetic for finite p-groups given as dense element handles.
//!
//! Every view numbers its elements `0..order`, so element sets can be stored
//! as flat bitmaps and subgroups as sorted handle lists.

mod direct;
mod metacyclic;
mod quotient;
mod subgroup;

pub use direct::{make_direct_product, DirectProduct};
pub use metacyclic::{make_metacyclic, MetacyclicGroup};
pub use quotient::{quotient_view, QuotientView};
pub use subgroup::{subgroup_closure, ElementSet, SubgroupElements, SubgroupView};

use std::fmt;

use thiserror::Error;

/// Default cap on the number of elements a view may materialize.
pub const DEFAULT_BUDGET: u64 = 1 << 16;

/// Opaque handle of a group element inside one view.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Element(pub(crate) u32);

impl Element {
    pub fn from_index(index: usize) -> Self {
        Element(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("group of order p^{exponent} (p = {p}) exceeds the enumeration budget of {budget}")]
    BudgetExceeded { p: u64, exponent: u32, budget: u64 },
    #[error("element handle {handle} does not belong to a view of order {order}")]
    ForeignHandle { handle: u32, order: usize },
    #[error("subgroup is not normal: conjugating {element:?} by {by:?} leaves it")]
    NotNormal { element: Element, by: Element },
    #[error("subgroup belongs to an ambient group of order {subgroup_ambient}, not {order}")]
    AmbientMismatch {
        subgroup_ambient: usize,
        order: usize,
    },
}

pub(crate) fn check_budget(p: u64, exponent: u32, budget: u64) -> Result<usize, EngineError> {
    let err = EngineError::BudgetExceeded {
        p,
        exponent,
        budget,
    };
    match p.checked_pow(exponent) {
        Some(n) if n <= budget && n <= u32::MAX as u64 => Ok(n as usize),
        _ => Err(err),
    }
}

/// A finite p-group with dense element handles `0..order()`.
///
/// `multiply` and `inverse` assume their arguments belong to the view; the
/// `try_*` methods check that first.
pub trait FiniteGroupView: Send + Sync {
    fn order(&self) -> usize;

    /// The prime `p` of this p-group.
    fn prime(&self) -> u64;

    fn identity(&self) -> Element;

    fn multiply(&self, g: Element, h: Element) -> Element;

    fn inverse(&self, g: Element) -> Element;

    /// A generating set. Conjugation orbits are closed under these only.
    fn generators(&self) -> Vec<Element>;

    fn elements(&self) -> ElementIter {
        ElementIter {
            next: 0,
            end: self.order() as u32,
        }
    }

    fn contains(&self, g: Element) -> bool {
        g.index() < self.order()
    }

    fn check(&self, g: Element) -> Result<Element, EngineError> {
        if self.contains(g) {
            Ok(g)
        } else {
            Err(EngineError::ForeignHandle {
                handle: g.0,
                order: self.order(),
            })
        }
    }

    fn try_multiply(&self, g: Element, h: Element) -> Result<Element, EngineError> {
        Ok(self.multiply(self.check(g)?, self.check(h)?))
    }

    fn try_inverse(&self, g: Element) -> Result<Element, EngineError> {
        Ok(self.inverse(self.check(g)?))
    }

    /// `g^n` by square-and-multiply; negative `n` powers the inverse.
    fn power(&self, g: Element, n: i64) -> Element {
        let mut base = if n < 0 { self.inverse(g) } else { g };
        let mut e = n.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.multiply(base, base);
            }
        }
        acc
    }

    fn try_power(&self, g: Element, n: i64) -> Result<Element, EngineError> {
        Ok(self.power(self.check(g)?, n))
    }

    /// Least `n ≥ 1` with `g^n = 1`, found by repeated p-th powers.
    fn element_order(&self, g: Element) -> u64 {
        let p = self.prime();
        let e = self.identity();
        let mut order = 1;
        let mut h = g;
        while h != e {
            h = self.power(h, p as i64);
            order *= p;
        }
        order
    }

    /// `h⁻¹ g h`.
    fn conjugate(&self, g: Element, h: Element) -> Element {
        self.multiply(self.multiply(self.inverse(h), g), h)
    }

    /// `g⁻¹ h⁻¹ g h`.
    fn commutator(&self, g: Element, h: Element) -> Element {
        self.multiply(self.inverse(g), self.conjugate(g, h))
    }

    fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter().all(|&a| {
            gens.iter()
                .all(|&b| self.multiply(a, b) == self.multiply(b, a))
        })
    }
}

impl<V: FiniteGroupView + ?Sized> FiniteGroupView for &V {
    fn order(&self) -> usize {
        (**self).order()
    }
    fn prime(&self) -> u64 {
        (**self).prime()
    }
    fn identity(&self) -> Element {
        (**self).identity()
    }
    fn multiply(&self, g: Element, h: Element) -> Element {
        (**self).multiply(g, h)
    }
    fn inverse(&self, g: Element) -> Element {
        (**self).inverse(g)
    }
    fn generators(&self) -> Vec<Element> {
        (**self).generators()
    }
}

/// Iterator over all handles of a view.
#[derive(Clone, Debug)]
pub struct ElementIter {
    next: u32,
    end: u32,
}

impl Iterator for ElementIter {
    type Item = Element;

    fn next(&mut self) -> Option<Element> {
        if self.next < self.end {
            self.next += 1;
            Some(Element(self.next - 1))
        } else {
            None
        }
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for ElementIter {}

/// Sorted multiset of element orders, as `(order, count)` pairs.
pub fn order_profile<V: FiniteGroupView + ?Sized>(view: &V) -> Vec<(u64, usize)> {
    let mut counts = std::collections::BTreeMap::new();
    for g in view.elements() {
        *counts.entry(view.element_order(g)).or_insert(0usize) += 1;
    }
    counts.into_iter().collect()
}

/// Group-axiom failures found by [`check_axioms_exhaustive`] or [`check_axioms_sampled`].
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub triples_checked: u64,
    pub associativity_failures: u64,
    pub identity_failures: u64,
    pub inverse_failures: u64,
}

impl AxiomReport {
    pub fn is_sound(&self) -> bool {
        self.associativity_failures == 0
            && self.identity_failures == 0
            && self.inverse_failures == 0
    }
}

fn check_identity_inverse<V: FiniteGroupView + ?Sized>(view: &V, report: &mut AxiomReport) {
    let e = view.identity();
    for g in view.elements() {
        if view.multiply(g, e) != g || view.multiply(e, g) != g {
            report.identity_failures += 1;
        }
        let inv = view.inverse(g);
        if view.multiply(g, inv) != e || view.multiply(inv, g) != e {
            report.inverse_failures += 1;
        }
    }
}

pub fn check_axioms_exhaustive<V: FiniteGroupView + ?Sized>(view: &V) -> AxiomReport {
    let mut report = AxiomReport::default();
    check_identity_inverse(view, &mut report);
    for a in view.elements() {
        for b in view.elements() {
            let ab = view.multiply(a, b);
            for c in view.elements() {
                report.triples_checked += 1;
                if view.multiply(ab, c) != view.multiply(a, view.multiply(b, c)) {
                    report.associativity_failures += 1;
                }
            }
        }
    }
    report
}

pub fn check_axioms_sampled<V: FiniteGroupView + ?Sized>(
    view: &V,
    samples: u64,
    seed: u64,
) -> AxiomReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = AxiomReport::default();
    check_identity_inverse(view, &mut report);
    let n = view.order();
    for _ in 0..samples {
        let a = Element::from_index(rng.gen_range(0..n));
        let b = Element::from_index(rng.gen_range(0..n));
        let c = Element::from_index(rng.gen_range(0..n));
        report.triples_checked += 1;
        if view.multiply(view.multiply(a, b), c) != view.multiply(a, view.multiply(b, c)) {
            report.associativity_failures += 1;
        }
    }
    report
}
