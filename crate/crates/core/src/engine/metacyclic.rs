use super::{check_budget, Element, EngineError, FiniteGroupView};
use crate::params::GroupParams;

/// `G_p(α, β, ε, δ, ±)` realized on normal forms `y^b x^a`.
///
/// The handle of `y^b x^a` is `a + p^α·b` with `0 ≤ a < p^α`, `0 ≤ b < p^β`.
#[derive(Clone, Debug)]
pub struct MetacyclicGroup {
    params: GroupParams,
    x_order: u64,
    y_order: u64,
    /// `p^(α−ε) mod p^α`: the x-exponent picked up each time `b` wraps past `p^β`.
    carry: u64,
    /// `r^b mod p^α` for every `0 ≤ b < p^β`.
    r_pow: Vec<u64>,
}

pub fn make_metacyclic(params: &GroupParams, budget: u64) -> Result<MetacyclicGroup, EngineError> {
    check_budget(params.p(), params.order_exponent(), budget)?;
    let x_order = params.x_order();
    let y_order = params.y_order();
    let r = params.r();
    let mut r_pow = Vec::with_capacity(y_order as usize);
    let mut acc = 1 % x_order;
    for _ in 0..y_order {
        r_pow.push(acc);
        acc = acc * r % x_order;
    }
    let carry = params.p().pow(params.alpha() - params.epsilon()) % x_order;
    Ok(MetacyclicGroup {
        params: *params,
        x_order,
        y_order,
        carry,
        r_pow,
    })
}

impl MetacyclicGroup {
    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    /// The handle of `y^b x^a`; both exponents may be any integers.
    pub fn element(&self, a: i64, b: i64) -> Element {
        let y = self.y();
        let x = self.x();
        self.multiply(self.power(y, b), self.power(x, a))
    }

    /// Exponents `(a, b)` of the normal form `y^b x^a`.
    pub fn exponents(&self, g: Element) -> (u64, u64) {
        let code = g.0 as u64;
        (code % self.x_order, code / self.x_order)
    }

    fn encode(&self, a: u64, b: u64) -> Element {
        Element((a + self.x_order * b) as u32)
    }

    pub fn x(&self) -> Element {
        self.encode(1 % self.x_order, 0)
    }

    pub fn y(&self) -> Element {
        if self.y_order == 1 {
            self.identity()
        } else {
            self.encode(0, 1)
        }
    }

    pub fn r(&self) -> u64 {
        self.params.r()
    }

    pub fn x_order(&self) -> u64 {
        self.x_order
    }

    pub fn y_order(&self) -> u64 {
        self.y_order
    }
}

impl FiniteGroupView for MetacyclicGroup {
    fn order(&self) -> usize {
        (self.x_order * self.y_order) as usize
    }

    fn prime(&self) -> u64 {
        self.params.p()
    }

    fn identity(&self) -> Element {
        Element(0)
    }

    // y^b1 x^a1 · y^b2 x^a2 = y^(b1+b2) x^(a1·r^b2 + a2), then fold
    // y^(p^β) = x^(p^(α−ε)) once if b1 + b2 wraps.
    fn multiply(&self, g: Element, h: Element) -> Element {
        let (a1, b1) = self.exponents(g);
        let (a2, b2) = self.exponents(h);
        let mut b = b1 + b2;
        let mut a = a1 * self.r_pow[b2 as usize] + a2;
        if b >= self.y_order {
            b -= self.y_order;
            a += self.carry;
        }
        self.encode(a % self.x_order, b)
    }

    // (y^b x^a)⁻¹ = x^(−a) y^(−b) = x^(−a) y^(p^β − b) x^(−carry)
    //             = y^(p^β − b) x^(−a·r^(p^β − b) − carry).
    fn inverse(&self, g: Element) -> Element {
        let (a, b) = self.exponents(g);
        let n = self.x_order;
        if b == 0 {
            return self.encode((n - a) % n, 0);
        }
        let b_inv = self.y_order - b;
        let shifted = a * self.r_pow[b_inv as usize] % n;
        let neg = (2 * n - shifted - self.carry) % n;
        self.encode(neg, b_inv)
    }

    fn generators(&self) -> Vec<Element> {
        vec![self.x(), self.y()]
    }
}
