use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::{Element, FiniteGroup, GroupError};

/// Largest order for which [`all_subgroups_brute_force`] will run.
pub const BRUTE_FORCE_ORDER_LIMIT: usize = 24;

/// A subgroup, stored as the sorted list of its elements.
///
/// Equality, ordering and hashing use the element set (plus the parent
/// group's fingerprint), so two subgroups built independently compare equal.
#[derive(Clone)]
pub struct Subgroup {
    group: FiniteGroup,
    elements: Arc<[Element]>,
}

impl Subgroup {
    /// Validates `elements` as a subgroup of `group`.
    pub fn new(group: &FiniteGroup, elements: impl IntoIterator<Item = Element>) -> Result<Self, GroupError> {
        let set: BTreeSet<Element> = elements.into_iter().collect();
        if set.iter().any(|&x| x >= group.order()) || !set.contains(&0) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &set {
            if !set.contains(&group.inv(a)) {
                return Err(GroupError::NotASubgroup);
            }
            for &b in &set {
                if !set.contains(&group.mul(a, b)) {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        let sub = Self::from_sorted_unchecked(group, set.into_iter().collect());
        debug_assert_eq!(group.order() % sub.order(), 0);
        Ok(sub)
    }

    pub(crate) fn from_sorted_unchecked(group: &FiniteGroup, elements: Vec<Element>) -> Self {
        Self { group: group.clone(), elements: elements.into() }
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(group, vec![0])
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(group, group.elements().collect())
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(group: &FiniteGroup, gens: impl IntoIterator<Item = Element>) -> Self {
        let mut member = vec![false; group.order()];
        member[0] = true;
        let mut found = vec![0];
        let gens: Vec<Element> = gens.into_iter().collect();
        let mut i = 0;
        while i < found.len() {
            let x = found[i];
            for &s in &gens {
                let y = group.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    found.push(y);
                }
            }
            i += 1;
        }
        found.sort_unstable();
        Self::from_sorted_unchecked(group, found)
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.group.order() / self.order()
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() < other.order() && self.is_subset_of(other)
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|&x| self.group.element_order(x) == self.order())
    }

    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(&Subgroup::whole(&self.group))
    }

    /// Whether every element of `by` conjugates `self` to itself.
    pub fn is_normalized_by(&self, by: &Subgroup) -> bool {
        by.elements.iter().all(|&g| self.is_normalized_by_element(g))
    }

    pub fn is_normalized_by_element(&self, g: Element) -> bool {
        self.elements.iter().all(|&h| self.contains(self.group.conj(g, h)))
    }

    /// Minimal element of the left coset `g·self`.
    pub fn coset_rep(&self, g: Element) -> Element {
        self.elements.iter().map(|&h| self.group.mul(g, h)).min().expect("subgroups are nonempty")
    }

    pub fn left_coset(&self, g: Element) -> Coset {
        Coset { representative: self.coset_rep(g), subgroup: self.clone() }
    }

    fn check_parent(&self, other: &Subgroup) -> Result<(), GroupError> {
        if self.group.same_as(&other.group) {
            Ok(())
        } else {
            Err(GroupError::ParentMismatch)
        }
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.fingerprint() == other.group.fingerprint() && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by size, then lexicographically by element list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.elements.cmp(&other.elements))
            .then_with(|| self.group.fingerprint().cmp(&other.group.fingerprint()))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", &self.elements[..])
    }
}

/// A left coset `g·H`, identified by its minimal element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Coset {
    pub representative: Element,
    pub subgroup: Subgroup,
}

impl Coset {
    pub fn elements(&self) -> Vec<Element> {
        let g = self.subgroup.group();
        let mut v: Vec<Element> = self.subgroup.elements().iter().map(|&h| g.mul(self.representative, h)).collect();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, x: Element) -> bool {
        self.subgroup.coset_rep(x) == self.representative
    }
}

/// Checks that `h` really is a subgroup of `g` (closure, inverses, identity).
pub fn validate_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<(), GroupError> {
    if !h.group().same_as(g) {
        // Still accept it if the element set happens to be closed in `g`.
        Subgroup::new(g, h.elements().iter().copied())?;
    }
    Ok(())
}

/// Every subgroup of `g`, sorted by `(order, elements)`.
///
/// Starts from the cyclic subgroups and closes the list under pairwise joins.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Subgroup> = g.elements().map(|x| Subgroup::generated_by(g, [x])).collect();
    let mut frontier: Vec<Subgroup> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let current: Vec<Subgroup> = found.iter().cloned().collect();
        let mut next = Vec::new();
        for a in &frontier {
            for b in &current {
                if a.is_subset_of(b) || b.is_subset_of(a) {
                    continue;
                }
                let j = join(a, b);
                if !found.contains(&j) {
                    found.insert(j.clone());
                    next.push(j);
                }
            }
        }
        frontier = next;
    }
    found.into_iter().collect()
}

/// Subgroup enumeration by testing every subset containing the identity for
/// closure. Exponential; only for cross-checking [`all_subgroups`].
pub fn all_subgroups_brute_force(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    let n = g.order();
    if n > BRUTE_FORCE_ORDER_LIMIT {
        return Err(GroupError::TooLarge { order: n, limit: BRUTE_FORCE_ORDER_LIMIT });
    }
    let mut out = Vec::new();
    let mut members = Vec::with_capacity(n);
    // Bit i of the mask stands for element i + 1; the identity is always in.
    for mask in 0u64..(1u64 << (n - 1)) {
        members.clear();
        members.push(0);
        members.extend((1..n).filter(|i| mask >> (i - 1) & 1 == 1));
        let closed = members.iter().all(|&a| {
            members.iter().all(|&b| {
                let ab = g.mul(a, b);
                ab == 0 || (mask >> (ab - 1) & 1 == 1)
            })
        });
        if closed {
            out.push(Subgroup::from_sorted_unchecked(g, members.clone()));
        }
    }
    out.sort();
    Ok(out)
}

pub fn join(a: &Subgroup, b: &Subgroup) -> Subgroup {
    Subgroup::generated_by(a.group(), a.elements().iter().chain(b.elements()).copied())
}

/// `N_G(H) = {g : gHg⁻¹ = H}`.
pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup, GroupError> {
    validate_subgroup(g, h)?;
    let elems: Vec<Element> = g.elements().filter(|&x| h.is_normalized_by_element(x)).collect();
    Ok(Subgroup::from_sorted_unchecked(g, elems))
}

/// The left cosets `gH`, ordered by representative.
pub fn left_cosets(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<Coset>, GroupError> {
    validate_subgroup(g, h)?;
    let reps: BTreeSet<Element> = g.elements().map(|x| h.coset_rep(x)).collect();
    Ok(reps.into_iter().map(|r| Coset { representative: r, subgroup: h.clone() }).collect())
}

/// `gHg⁻¹`.
pub fn conjugate_subgroup(g: Element, h: &Subgroup) -> Subgroup {
    let grp = h.group();
    let mut elems: Vec<Element> = h.elements().iter().map(|&x| grp.conj(g, x)).collect();
    elems.sort_unstable();
    Subgroup::from_sorted_unchecked(grp, elems)
}

pub fn intersect(h: &Subgroup, k: &Subgroup) -> Result<Subgroup, GroupError> {
    h.check_parent(k)?;
    let elems: Vec<Element> = h.elements().iter().copied().filter(|&x| k.contains(x)).collect();
    Ok(Subgroup::from_sorted_unchecked(h.group(), elems))
}

/// `H ⊆ K`, requiring both to live in the same group.
pub fn is_subchain_compatible(h: &Subgroup, k: &Subgroup) -> Result<bool, GroupError> {
    h.check_parent(k)?;
    Ok(h.is_subset_of(k))
}
