//! Brute-force ground truth over any [`FiniteGroupView`].
//!
//! Nothing here knows about the closed forms; everything is computed by
//! enumerating elements.

use thiserror::Error;

use crate::engine::{
    quotient_view, subgroup_closure, Element, ElementSet, EngineError, FiniteGroupView,
    SubgroupElements, SubgroupView,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("group is not abelian")]
    NotAbelian,
    #[error("abelian group is not a product of at most two cyclic factors")]
    RankExceeded,
}

/// The identity of a cyclic subgroup: its sorted element handles.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicSubgroupKey(Vec<u32>);

impl CyclicSubgroupKey {
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.0.iter().map(|&c| Element::from_index(c as usize))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, g: Element) -> bool {
        self.0.binary_search(&g.code()).is_ok()
    }

    pub fn is_subset(&self, other: &CyclicSubgroupKey) -> bool {
        self.0.iter().all(|c| other.0.binary_search(c).is_ok())
    }
}

/// All cyclic subgroups of a view, each element tagged with the subgroup it generates.
#[derive(Clone, Debug)]
pub struct CyclicLattice {
    subgroup_of: Vec<u32>,
    generator: Vec<Element>,
    order: Vec<u64>,
    maximal: Vec<bool>,
}

impl CyclicLattice {
    pub fn build<V: FiniteGroupView + ?Sized>(view: &V) -> Self {
        let p = view.prime() as usize;
        let e = view.identity();
        let mut subgroup_of = vec![u32::MAX; view.order()];
        let mut generator = Vec::new();
        let mut order = Vec::new();
        let mut powers = Vec::new();
        for g in view.elements() {
            if subgroup_of[g.index()] != u32::MAX {
                continue;
            }
            powers.clear();
            let mut h = g;
            powers.push(e);
            while h != e {
                powers.push(h);
                h = view.multiply(h, g);
            }
            let id = generator.len() as u32;
            // The generators of ⟨g⟩ are the powers g^i with p ∤ i.
            for (i, &h) in powers.iter().enumerate() {
                if i % p != 0 || powers.len() == 1 {
                    subgroup_of[h.index()] = id;
                }
            }
            generator.push(g);
            order.push(powers.len() as u64);
        }
        // Proper subgroups of a cyclic p-group form a chain, so ⟨h^p⟩ is
        // non-maximal for every h ≠ 1 and that covers every non-maximal one.
        let mut maximal = vec![true; generator.len()];
        for (id, &g) in generator.iter().enumerate() {
            if order[id] > 1 {
                let below = subgroup_of[view.power(g, p as i64).index()];
                maximal[below as usize] = false;
            }
        }
        CyclicLattice {
            subgroup_of,
            generator,
            order,
            maximal,
        }
    }

    pub fn len(&self) -> usize {
        self.generator.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generator.is_empty()
    }

    /// Id of `⟨g⟩`.
    pub fn id_of(&self, g: Element) -> usize {
        self.subgroup_of[g.index()] as usize
    }

    pub fn generator(&self, id: usize) -> Element {
        self.generator[id]
    }

    pub fn subgroup_order(&self, id: usize) -> u64 {
        self.order[id]
    }

    pub fn is_maximal(&self, id: usize) -> bool {
        self.maximal[id]
    }

    pub fn maximal_ids(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&id| self.maximal[id])
    }

    pub fn key<V: FiniteGroupView + ?Sized>(&self, view: &V, id: usize) -> CyclicSubgroupKey {
        cyclic_key(view, self.generator[id])
    }

    /// Partition of the given subgroup ids into conjugation orbits.
    pub fn orbits<V: FiniteGroupView + ?Sized>(
        &self,
        view: &V,
        ids: &[usize],
        mode: ConjugationMode,
    ) -> Orbits {
        let conjugators = mode.conjugators(view);
        let mut uf = UnionFind::new(self.len());
        for &id in ids {
            let g = self.generator[id];
            for &h in &conjugators {
                uf.union(id, self.id_of(view.conjugate(g, h)));
            }
        }
        Orbits::collect(&mut uf, ids)
    }
}

/// Which elements conjugate subgroups when computing orbits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConjugationMode {
    /// The view's generators, closed transitively.
    #[default]
    Generators,
    /// Every element of the view.
    AllElements,
}

impl ConjugationMode {
    fn conjugators<V: FiniteGroupView + ?Sized>(self, view: &V) -> Vec<Element> {
        match self {
            ConjugationMode::Generators => view.generators(),
            ConjugationMode::AllElements => view.elements().collect(),
        }
    }
}

/// Orbit partition: `orbit_of[i]` is the orbit index of `ids[i]`.
#[derive(Clone, Debug)]
pub struct Orbits {
    pub count: usize,
    root_to_orbit: std::collections::HashMap<usize, usize>,
    roots: Vec<usize>,
}

impl Orbits {
    fn collect(uf: &mut UnionFind, all: &[usize]) -> Self {
        let mut root_to_orbit = std::collections::HashMap::new();
        let mut roots = vec![usize::MAX; uf.parent.len()];
        for &id in all {
            let root = uf.find(id);
            let next = root_to_orbit.len();
            root_to_orbit.entry(root).or_insert(next);
            roots[id] = root;
        }
        Orbits {
            count: root_to_orbit.len(),
            root_to_orbit,
            roots,
        }
    }

    /// Orbit index of a subgroup id that was part of the orbit computation.
    pub fn orbit_of(&self, id: usize) -> usize {
        self.root_to_orbit[&self.roots[id]]
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn cyclic_key<V: FiniteGroupView + ?Sized>(view: &V, g: Element) -> CyclicSubgroupKey {
    let e = view.identity();
    let mut codes = vec![e.code()];
    let mut h = g;
    while h != e {
        codes.push(h.code());
        h = view.multiply(h, g);
    }
    codes.sort_unstable();
    CyclicSubgroupKey(codes)
}

/// `{⟨g⟩ : g ∈ G}`, sorted.
pub fn cyclic_subgroups<V: FiniteGroupView + ?Sized>(view: &V) -> Vec<CyclicSubgroupKey> {
    let lattice = CyclicLattice::build(view);
    let mut keys: Vec<_> = (0..lattice.len()).map(|id| lattice.key(view, id)).collect();
    keys.sort();
    keys
}

/// Cyclic subgroups not properly contained in another cyclic subgroup, sorted.
pub fn maximal_cyclic_subgroups<V: FiniteGroupView + ?Sized>(view: &V) -> Vec<CyclicSubgroupKey> {
    let lattice = CyclicLattice::build(view);
    let mut keys: Vec<_> = lattice
        .maximal_ids()
        .map(|id| lattice.key(view, id))
        .collect();
    keys.sort();
    keys
}

/// The same set as [`maximal_cyclic_subgroups`] by all-pairs containment,
/// without using the chain structure of cyclic p-groups. Quadratic; for cross-checks.
pub fn maximal_cyclic_subgroups_by_containment<V: FiniteGroupView + ?Sized>(
    view: &V,
) -> Vec<CyclicSubgroupKey> {
    let mut keys: Vec<CyclicSubgroupKey> = view.elements().map(|g| cyclic_key(view, g)).collect();
    keys.sort();
    keys.dedup();
    keys.iter()
        .filter(|c| !keys.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
        .cloned()
        .collect()
}

/// η: the number of conjugacy classes of maximal cyclic subgroups.
pub fn eta<V: FiniteGroupView + ?Sized>(view: &V) -> u64 {
    eta_with_mode(view, ConjugationMode::Generators)
}

pub fn eta_with_mode<V: FiniteGroupView + ?Sized>(view: &V, mode: ConjugationMode) -> u64 {
    let lattice = CyclicLattice::build(view);
    let ids: Vec<usize> = lattice.maximal_ids().collect();
    lattice.orbits(view, &ids, mode).count as u64
}

/// Counts attached to a normal subgroup `N` of `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EtaStar {
    /// `G`-orbits on the `N`-classes of maximal cyclic subgroups of `N`.
    pub eta_star: u64,
    /// `η(N)`: the `N`-classes themselves.
    pub eta_n: u64,
    /// `|G : N|`.
    pub index: u64,
}

pub fn eta_star<V: FiniteGroupView + ?Sized>(
    view: &V,
    n: &SubgroupElements,
) -> Result<EtaStar, OracleError> {
    n.check_normal(view)?;
    let sub = SubgroupView::new(view, n);
    let lattice = CyclicLattice::build(&sub);
    let ids: Vec<usize> = lattice.maximal_ids().collect();
    let eta_n = lattice
        .orbits(&sub, &ids, ConjugationMode::Generators)
        .count as u64;

    // G-conjugation maps N's maximal cyclic subgroups among themselves; the
    // N-classes are unions of these orbits, so counting G-orbits on subgroups
    // counts G-orbits on N-classes.
    let mut uf = UnionFind::new(lattice.len());
    let ambient_gens = view.generators();
    for &id in &ids {
        let g = sub.to_ambient(lattice.generator(id));
        for &h in &ambient_gens {
            let conj = sub
                .to_local(view.conjugate(g, h))
                .expect("normal subgroup is closed under conjugation");
            uf.union(id, lattice.id_of(conj));
        }
    }
    let eta_star = Orbits::collect(&mut uf, &ids).count as u64;
    Ok(EtaStar {
        eta_star,
        eta_n,
        index: (view.order() / n.len()) as u64,
    })
}

/// `{g^k : g ∈ G}`. With `k = p` this is the set of p-th powers.
pub fn power_set<V: FiniteGroupView + ?Sized>(view: &V, k: u64) -> ElementSet {
    ElementSet::from_elements(
        view.order(),
        view.elements().map(|g| view.power(g, k as i64)),
    )
}

pub fn pth_power_set<V: FiniteGroupView + ?Sized>(view: &V, p: u64) -> ElementSet {
    power_set(view, p)
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    /// `G'`.
    pub derived: SubgroupElements,
    /// `Z(G)`.
    pub center: SubgroupElements,
    /// The set of p-th powers.
    pub pth_powers: ElementSet,
    /// The subgroup generated by the p-th powers.
    pub pth_power_subgroup: SubgroupElements,
    pub is_powerful: bool,
}

impl StructureReport {
    pub fn power_set_is_subgroup(&self) -> bool {
        self.pth_powers.len() == self.pth_power_subgroup.len()
    }
}

fn closure_of_set<V: FiniteGroupView + ?Sized>(view: &V, set: &ElementSet) -> SubgroupElements {
    let gens: Vec<Element> = set.iter().collect();
    subgroup_closure(view, &gens)
}

/// `G'`. Up to `2^10` elements this closes the set of all commutators;
/// above that it takes the normal closure of the generator commutators.
pub fn derived_subgroup<V: FiniteGroupView + ?Sized>(view: &V) -> SubgroupElements {
    if view.order() <= ALL_PAIRS_DERIVED_LIMIT {
        derived_subgroup_all_pairs(view)
    } else {
        let gens = view.generators();
        let commutators: Vec<Element> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| view.commutator(a, b))
            .collect();
        normal_closure(view, &commutators)
    }
}

const ALL_PAIRS_DERIVED_LIMIT: usize = 1 << 10;

pub fn derived_subgroup_all_pairs<V: FiniteGroupView + ?Sized>(view: &V) -> SubgroupElements {
    let mut members = vec![false; view.order()];
    for g in view.elements() {
        for h in view.elements() {
            members[view.commutator(g, h).index()] = true;
        }
    }
    let commutators: Vec<Element> = members
        .iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| Element::from_index(i))
        .collect();
    subgroup_closure(view, &commutators)
}

/// Smallest normal subgroup containing `elements`.
pub fn normal_closure<V: FiniteGroupView + ?Sized>(
    view: &V,
    elements: &[Element],
) -> SubgroupElements {
    let conjugators = view.generators();
    let mut gens = elements.to_vec();
    loop {
        let h = subgroup_closure(view, &gens);
        let escaped: Vec<Element> = h
            .generators()
            .iter()
            .flat_map(|&g| conjugators.iter().map(move |&s| (g, s)))
            .map(|(g, s)| view.conjugate(g, s))
            .filter(|&c| !h.contains(c))
            .collect();
        if escaped.is_empty() {
            return h;
        }
        gens = h.generators().to_vec();
        gens.extend(escaped);
    }
}

pub fn center<V: FiniteGroupView + ?Sized>(view: &V) -> SubgroupElements {
    let gens = view.generators();
    let central: Vec<Element> = view
        .elements()
        .filter(|&g| {
            gens.iter()
                .all(|&s| view.multiply(g, s) == view.multiply(s, g))
        })
        .collect();
    subgroup_closure(view, &central)
}

/// Derived subgroup, center, power structure and the powerful flag
/// (`G' ≤ G^p` for odd p, `G' ≤ G^4` for p = 2).
pub fn structure<V: FiniteGroupView + ?Sized>(view: &V) -> StructureReport {
    let p = view.prime();
    let derived = derived_subgroup(view);
    let center = center(view);
    let pth_powers = pth_power_set(view, p);
    let pth_power_subgroup = closure_of_set(view, &pth_powers);
    let is_powerful = if p == 2 {
        let fourth = closure_of_set(view, &power_set(view, 4));
        derived.elements().is_subset(fourth.elements())
    } else {
        derived.elements().is_subset(pth_power_subgroup.elements())
    };
    StructureReport {
        derived,
        center,
        pth_powers,
        pth_power_subgroup,
        is_powerful,
    }
}

/// Exponents `(a, b)`, `a ≥ b`, with `view ≅ C_{p^a} × C_{p^b}`.
pub fn abelian_invariants<V: FiniteGroupView + ?Sized>(
    view: &V,
) -> Result<(u32, u32), OracleError> {
    if !view.is_abelian() {
        return Err(OracleError::NotAbelian);
    }
    let p = view.prime();
    let orders: Vec<u64> = view.elements().map(|g| view.element_order(g)).collect();
    let exponent = orders.iter().copied().max().unwrap_or(1);
    let a = log_p(exponent, p);
    let total = log_p(view.order() as u64, p);
    if total < a || total - a > a {
        return Err(OracleError::RankExceeded);
    }
    let b = total - a;
    // An abelian p-group is determined by how many elements have order
    // dividing p^j for each j.
    for j in 0..=a {
        let bound = p.pow(j);
        let observed = orders.iter().filter(|&&o| o <= bound).count() as u64;
        let expected = p.pow(j.min(a) + j.min(b));
        if observed != expected {
            return Err(OracleError::RankExceeded);
        }
    }
    Ok((a, b))
}

fn log_p(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        n /= p;
        k += 1;
    }
    k
}

/// `cl(g)`: the orbit of `g` under conjugation.
pub fn conjugacy_class_of<V: FiniteGroupView + ?Sized>(view: &V, g: Element) -> ElementSet {
    let gens = view.generators();
    let mut members = vec![false; view.order()];
    members[g.index()] = true;
    let mut stack = vec![g];
    let mut found = vec![g];
    while let Some(h) = stack.pop() {
        for &s in &gens {
            let k = view.conjugate(h, s);
            if !members[k.index()] {
                members[k.index()] = true;
                stack.push(k);
                found.push(k);
            }
        }
    }
    ElementSet::from_elements(view.order(), found)
}

/// Outcome of testing whether `η(G/N) = η(G)` through the coset criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientCriterion {
    /// Both clauses hold.
    pub holds: bool,
    /// `N ⊆ G^{p}`.
    pub n_in_pth_powers: bool,
    /// Some `g ∉ G^{p}` with an element of `gN` not conjugate to a generator of `⟨g⟩`.
    pub failing_coset: Option<Element>,
    pub eta_group: u64,
    pub eta_quotient: u64,
}

impl QuotientCriterion {
    /// The criterion agrees with the directly computed η values.
    pub fn is_consistent(&self) -> bool {
        self.holds == (self.eta_group == self.eta_quotient) && self.eta_quotient <= self.eta_group
    }
}

pub fn quotient_eta_equality_witness<V: FiniteGroupView + ?Sized>(
    view: &V,
    n: &SubgroupElements,
) -> Result<QuotientCriterion, OracleError> {
    let quotient = quotient_view(view, n)?;
    let pth = pth_power_set(view, view.prime());
    let n_in_pth_powers = n.elements().is_subset(&pth);

    // h is conjugate to a generator of ⟨g⟩ iff ⟨h⟩ is conjugate to ⟨g⟩.
    let lattice = CyclicLattice::build(view);
    let all: Vec<usize> = (0..lattice.len()).collect();
    let orbits = lattice.orbits(view, &all, ConjugationMode::Generators);
    let failing_coset = view.elements().filter(|&g| !pth.contains(g)).find(|&g| {
        let target = orbits.orbit_of(lattice.id_of(g));
        n.iter()
            .any(|k| orbits.orbit_of(lattice.id_of(view.multiply(g, k))) != target)
    });
    Ok(QuotientCriterion {
        holds: n_in_pth_powers && failing_coset.is_none(),
        n_in_pth_powers,
        failing_coset,
        eta_group: eta(view),
        eta_quotient: eta(&quotient),
    })
}
