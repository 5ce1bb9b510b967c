use super::{check_budget, Element, EngineError, FiniteGroupView};
use crate::params::is_prime;

/// `C_{p^a} × C_{p^b}` with handle `u + p^a·v`.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    p: u64,
    first: u64,
    second: u64,
}

pub fn make_direct_product(
    p: u64,
    a: u32,
    b: u32,
    budget: u64,
) -> Result<DirectProduct, EngineError> {
    assert!(is_prime(p), "direct product needs a prime, got {p}");
    check_budget(p, a + b, budget)?;
    Ok(DirectProduct {
        p,
        first: p.pow(a),
        second: p.pow(b),
    })
}

impl DirectProduct {
    pub fn element(&self, u: u64, v: u64) -> Element {
        Element(((u % self.first) + self.first * (v % self.second)) as u32)
    }

    pub fn components(&self, g: Element) -> (u64, u64) {
        let code = g.0 as u64;
        (code % self.first, code / self.first)
    }
}

impl FiniteGroupView for DirectProduct {
    fn order(&self) -> usize {
        (self.first * self.second) as usize
    }

    fn prime(&self) -> u64 {
        self.p
    }

    fn identity(&self) -> Element {
        Element(0)
    }

    fn multiply(&self, g: Element, h: Element) -> Element {
        let (u1, v1) = self.components(g);
        let (u2, v2) = self.components(h);
        self.element(u1 + u2, v1 + v2)
    }

    fn inverse(&self, g: Element) -> Element {
        let (u, v) = self.components(g);
        self.element(self.first - u, self.second - v)
    }

    fn generators(&self) -> Vec<Element> {
        let mut gens = Vec::new();
        if self.first > 1 {
            gens.push(self.element(1, 0));
        }
        if self.second > 1 {
            gens.push(self.element(0, 1));
        }
        gens
    }
}
