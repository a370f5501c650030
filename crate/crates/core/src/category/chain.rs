use std::fmt;
use std::sync::Arc;

use crate::group::{Coset, FiniteGroup, Subgroup, SubgroupLattice};

use super::CategoryError;

/// A strictly increasing chain `H₀ < H₁ < ⋯ < Hₙ` of subgroups.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupChain {
    subgroups: Arc<[Subgroup]>,
}

impl SubgroupChain {
    pub fn new(subgroups: Vec<Subgroup>) -> Result<Self, CategoryError> {
        let first = subgroups.first().ok_or(CategoryError::EmptyChain)?;
        for w in subgroups.windows(2) {
            if w[0].group() != first.group() || w[1].group() != first.group() {
                return Err(CategoryError::Group(crate::group::GroupError::ParentMismatch));
            }
            if !w[0].is_proper_subgroup_of(&w[1]) {
                return Err(CategoryError::NotStrictlyIncreasing);
            }
        }
        Ok(Self { subgroups: subgroups.into() })
    }

    pub fn single(h: Subgroup) -> Self {
        Self { subgroups: vec![h].into() }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.subgroups[0].group()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    /// Number of subgroups, `n + 1`.
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The simplex dimension `n`.
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn base(&self) -> &Subgroup {
        &self.subgroups[0]
    }

    /// Every order-preserving inclusion `ι` with `other[ι(j)] = self[j]`.
    ///
    /// Subgroups in a chain are distinct, so there is at most one; the search
    /// is written for arbitrary position lists anyway.
    pub fn inclusions_into(&self, other: &SubgroupChain) -> Vec<Vec<usize>> {
        fn go(src: &[Subgroup], dst: &[Subgroup], from: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            let j = acc.len();
            if j == src.len() {
                out.push(acc.clone());
                return;
            }
            for i in from..dst.len() {
                if dst[i] == src[j] {
                    acc.push(i);
                    go(src, dst, i + 1, acc, out);
                    acc.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(&self.subgroups, &other.subgroups, 0, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_subchain_of(&self, other: &SubgroupChain) -> bool {
        !self.inclusions_into(other).is_empty()
    }

    /// `⋂ᵢ N_G(Hᵢ)`.
    pub fn common_normalizer(&self) -> Subgroup {
        let g = self.group();
        let elems: Vec<usize> =
            g.elements().filter(|&x| self.subgroups.iter().all(|h| h.is_normalized_by_element(x))).collect();
        Subgroup::new(g, elems).expect("intersection of normalizers is a subgroup")
    }

    /// Whether `x` normalizes every subgroup in the chain.
    pub fn is_normalized_by(&self, x: usize) -> bool {
        self.subgroups.iter().all(|h| h.is_normalized_by_element(x))
    }

    /// The multi-Weil group `⋂ᵢ N_G(Hᵢ) / H₀`, as canonical cosets of `H₀`.
    pub fn multi_weil(&self) -> Vec<Coset> {
        let n = self.common_normalizer();
        let h0 = self.base();
        debug_assert!(h0.is_normalized_by(&n));
        let mut reps: Vec<usize> = n.elements().iter().map(|&x| h0.coset_rep(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps.into_iter().map(|r| Coset { representative: r, subgroup: h0.clone() }).collect()
    }

    pub fn multi_weil_order(&self) -> usize {
        self.common_normalizer().order() / self.base().order()
    }

    pub fn display(&self, lattice: &SubgroupLattice) -> String {
        self.subgroups.iter().map(|h| lattice.name(h)).collect::<Vec<_>>().join("<")
    }
}

impl fmt::Debug for SubgroupChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.subgroups.iter().map(|h| format!("{:?}", h.elements())).collect();
        write!(f, "Chain[{}]", parts.join(" < "))
    }
}

/// All strictly increasing chains, ordered by length then by lattice indices.
pub fn enumerate_chains(lattice: &SubgroupLattice) -> Vec<SubgroupChain> {
    let subs = lattice.subgroups();
    let mut found: Vec<Vec<usize>> = Vec::new();
    // DFS over the containment DAG, extending upward.
    fn extend(subs: &[Subgroup], path: &mut Vec<usize>, found: &mut Vec<Vec<usize>>) {
        found.push(path.clone());
        let last = *path.last().expect("nonempty path");
        for next in last + 1..subs.len() {
            if subs[last].is_proper_subgroup_of(&subs[next]) {
                path.push(next);
                extend(subs, path, found);
                path.pop();
            }
        }
    }
    for start in 0..subs.len() {
        extend(subs, &mut vec![start], &mut found);
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|idx| SubgroupChain { subgroups: idx.into_iter().map(|i| subs[i].clone()).collect() })
        .collect()
}

/// Chain enumeration over subsets of the subgroup list that are totally
/// ordered by proper inclusion. Exponential in the number of subgroups;
/// used to cross-check [`enumerate_chains`].
pub fn enumerate_chains_brute_force(lattice: &SubgroupLattice) -> Vec<SubgroupChain> {
    let subs = lattice.subgroups();
    let n = subs.len();
    assert!(n < 32, "brute-force chain enumeration needs fewer than 32 subgroups");
    let mut found: Vec<Vec<usize>> = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let mut members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        members.sort_by(|&a, &b| subs[a].cmp(&subs[b]));
        let total = members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| subs[a].is_proper_subgroup_of(&subs[b])));
        if total {
            found.push(members);
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|idx| SubgroupChain { subgroups: idx.into_iter().map(|i| subs[i].clone()).collect() })
        .collect()
}
