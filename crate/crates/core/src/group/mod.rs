//! Finite groups as Cayley tables, with the subgroup, coset and normalizer
//! machinery the rest of the crate is built on.

pub mod families;
mod json;
mod subgroup;
mod table;

use std::collections::BTreeMap;

pub use json::GroupJson;
pub use subgroup::{
    all_subgroups, all_subgroups_brute_force, conjugate_subgroup, intersect, is_subchain_compatible, join, left_cosets,
    normalizer, validate_subgroup, Coset, Subgroup, BRUTE_FORCE_ORDER_LIMIT,
};
pub use table::{Element, FiniteGroup, EXHAUSTIVE_ORDER_LIMIT};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not associative: ({a}·{b})·{c} ≠ {a}·({b}·{c})")]
    NonAssociativeTable { a: Element, b: Element, c: Element },
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Element),
    #[error("malformed multiplication table: {0}")]
    BadTable(String),
    #[error("element set is not a subgroup of the given group")]
    NotASubgroup,
    #[error("subgroups belong to different groups")]
    ParentMismatch,
    #[error("group of order {order} exceeds the limit {limit} for this operation")]
    TooLarge { order: usize, limit: usize },
    #[error("unsupported group: {0}")]
    Unsupported(String),
    #[error("invalid group JSON: {0}")]
    Json(String),
}

/// All subgroups of a group together with short display names.
///
/// Names are structural (`e`, `C2`, `V4`, `H6`, the group's own name for the
/// whole group); repeated names get `.1`, `.2`, ... suffixes in lattice order.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: FiniteGroup,
    subgroups: Vec<Subgroup>,
    names: Vec<String>,
    index: BTreeMap<Subgroup, usize>,
}

impl SubgroupLattice {
    pub fn new(group: &FiniteGroup) -> Self {
        let subgroups = all_subgroups(group);
        let base: Vec<String> = subgroups
            .iter()
            .map(|h| {
                if h.is_trivial() {
                    "e".to_string()
                } else if h.is_whole() && group.name().is_some() {
                    group.name().unwrap_or_default().to_string()
                } else if h.is_cyclic() {
                    format!("C{}", h.order())
                } else if h.order() == 4 {
                    "V4".to_string()
                } else if h.is_whole() {
                    "G".to_string()
                } else {
                    format!("H{}", h.order())
                }
            })
            .collect();
        let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
        for b in &base {
            *seen.entry(b.as_str()).or_default() += 1;
        }
        let mut counter: BTreeMap<&str, usize> = BTreeMap::new();
        let names = base
            .iter()
            .map(|b| {
                if seen[b.as_str()] > 1 {
                    let c = counter.entry(b.as_str()).or_default();
                    *c += 1;
                    format!("{b}.{c}")
                } else {
                    b.clone()
                }
            })
            .collect();
        let index = subgroups.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        Self { group: group.clone(), subgroups, names, index }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        self.index.get(h).copied()
    }

    pub fn name(&self, h: &Subgroup) -> String {
        match self.index_of(h) {
            Some(i) => self.names[i].clone(),
            None => format!("{:?}", h.elements()),
        }
    }

    pub fn name_at(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn by_name(&self, name: &str) -> Option<&Subgroup> {
        self.names.iter().position(|n| n == name).map(|i| &self.subgroups[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_names_for_c4() {
        let g = families::cyclic(4).unwrap();
        let lat = SubgroupLattice::new(&g);
        let names: Vec<&str> = (0..lat.len()).map(|i| lat.name_at(i)).collect();
        assert_eq!(names, ["e", "C2", "C4"]);
    }

    #[test]
    fn lattice_names_are_unique() {
        for name in families::BATTERY {
            let lat = SubgroupLattice::new(&families::by_name(name).unwrap());
            let mut names: Vec<&str> = (0..lat.len()).map(|i| lat.name_at(i)).collect();
            names.sort();
            names.dedup();
            assert_eq!(names.len(), lat.len(), "{name}");
        }
    }

    #[test]
    fn normalizers_contain_and_are_divisible() {
        for name in families::BATTERY {
            let g = families::by_name(name).unwrap();
            for h in all_subgroups(&g) {
                let n = normalizer(&g, &h).unwrap();
                assert!(h.is_subset_of(&n));
                assert_eq!(n.order() % h.order(), 0);
            }
        }
    }
}
