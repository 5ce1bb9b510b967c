use std::collections::VecDeque;

use super::{Element, EngineError, FiniteGroupView};

/// A set of handles of one view, kept both sorted and as a membership bitmap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    members: Vec<bool>,
    sorted: Vec<Element>,
}

impl ElementSet {
    pub fn empty(ambient_order: usize) -> Self {
        ElementSet {
            members: vec![false; ambient_order],
            sorted: Vec::new(),
        }
    }

    pub fn from_elements(
        ambient_order: usize,
        elements: impl IntoIterator<Item = Element>,
    ) -> Self {
        let mut members = vec![false; ambient_order];
        for g in elements {
            members[g.index()] = true;
        }
        Self::from_members(members)
    }

    fn from_members(members: Vec<bool>) -> Self {
        let sorted = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| Element::from_index(i))
            .collect();
        ElementSet { members, sorted }
    }

    pub fn contains(&self, g: Element) -> bool {
        self.members.get(g.index()).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn ambient_order(&self) -> usize {
        self.members.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.sorted.iter().copied()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.sorted
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.iter().all(|g| other.contains(g))
    }
}

/// A subgroup of a view: a closed element set plus the generators it was built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupElements {
    set: ElementSet,
    generators: Vec<Element>,
}

impl SubgroupElements {
    pub fn elements(&self) -> &ElementSet {
        &self.set
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn contains(&self, g: Element) -> bool {
        self.set.contains(g)
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.set.iter()
    }

    pub fn ambient_order(&self) -> usize {
        self.set.ambient_order()
    }

    /// Finds an element of the subgroup and an element of `by` (usually the
    /// view's generators, or every element) whose conjugate leaves the subgroup.
    pub fn normality_witness<V: FiniteGroupView + ?Sized>(
        &self,
        view: &V,
        by: &[Element],
    ) -> Option<(Element, Element)> {
        for &h in by {
            for g in self.iter() {
                if !self.contains(view.conjugate(g, h)) {
                    return Some((g, h));
                }
            }
        }
        None
    }

    /// Normality test. Exhaustive for views of order at most `2^12`,
    /// generator-based above that.
    pub fn check_normal<V: FiniteGroupView + ?Sized>(&self, view: &V) -> Result<(), EngineError> {
        if self.ambient_order() != view.order() {
            return Err(EngineError::AmbientMismatch {
                subgroup_ambient: self.ambient_order(),
                order: view.order(),
            });
        }
        let by: Vec<Element> = if view.order() <= EXHAUSTIVE_NORMALITY_LIMIT {
            view.elements().collect()
        } else {
            view.generators()
        };
        match self.normality_witness(view, &by) {
            Some((element, by)) => Err(EngineError::NotNormal { element, by }),
            None => Ok(()),
        }
    }

    pub fn is_normal_in<V: FiniteGroupView + ?Sized>(&self, view: &V) -> bool {
        self.check_normal(view).is_ok()
    }
}

const EXHAUSTIVE_NORMALITY_LIMIT: usize = 1 << 12;

/// Smallest subgroup containing `generators`, by breadth-first closure under
/// right multiplication by the generators. Generators already inside the
/// closure of the earlier ones are dropped from the stored generating set.
pub fn subgroup_closure<V: FiniteGroupView + ?Sized>(
    view: &V,
    generators: &[Element],
) -> SubgroupElements {
    let n = view.order();
    let e = view.identity();
    let mut members = vec![false; n];
    members[e.index()] = true;
    let mut found = vec![e];
    let mut kept: Vec<Element> = Vec::new();
    let mut queue = VecDeque::new();
    for &g in generators {
        if members[g.index()] {
            continue;
        }
        kept.push(g);
        // Existing elements must also be multiplied by the new generator.
        queue.extend(found.iter().copied());
        while let Some(h) = queue.pop_front() {
            for &s in &kept {
                let k = view.multiply(h, s);
                if !members[k.index()] {
                    members[k.index()] = true;
                    found.push(k);
                    queue.push_back(k);
                }
            }
        }
    }
    SubgroupElements {
        set: ElementSet::from_members(members),
        generators: kept,
    }
}

/// A subgroup as a group in its own right, with dense handles into its sorted element list.
pub struct SubgroupView<'a, V: ?Sized> {
    ambient: &'a V,
    subgroup: &'a SubgroupElements,
    local_of: Vec<u32>,
    identity: Element,
}

impl<'a, V: FiniteGroupView + ?Sized> SubgroupView<'a, V> {
    pub fn new(ambient: &'a V, subgroup: &'a SubgroupElements) -> Self {
        let mut local_of = vec![u32::MAX; ambient.order()];
        for (i, g) in subgroup.iter().enumerate() {
            local_of[g.index()] = i as u32;
        }
        let identity = Element(local_of[ambient.identity().index()]);
        SubgroupView {
            ambient,
            subgroup,
            local_of,
            identity,
        }
    }

    pub fn to_ambient(&self, g: Element) -> Element {
        self.subgroup.set.sorted[g.index()]
    }

    /// `None` when `g` lies outside the subgroup.
    pub fn to_local(&self, g: Element) -> Option<Element> {
        match self.local_of[g.index()] {
            u32::MAX => None,
            i => Some(Element(i)),
        }
    }

    fn local(&self, g: Element) -> Element {
        Element(self.local_of[g.index()])
    }
}

impl<V: FiniteGroupView + ?Sized> FiniteGroupView for SubgroupView<'_, V> {
    fn order(&self) -> usize {
        self.subgroup.len()
    }

    fn prime(&self) -> u64 {
        self.ambient.prime()
    }

    fn identity(&self) -> Element {
        self.identity
    }

    fn multiply(&self, g: Element, h: Element) -> Element {
        self.local(
            self.ambient
                .multiply(self.to_ambient(g), self.to_ambient(h)),
        )
    }

    fn inverse(&self, g: Element) -> Element {
        self.local(self.ambient.inverse(self.to_ambient(g)))
    }

    fn generators(&self) -> Vec<Element> {
        self.subgroup
            .generators
            .iter()
            .map(|&g| self.local(g))
            .collect()
    }
}
