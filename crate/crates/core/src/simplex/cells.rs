use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::Zero;

use crate::category::{LinkMorphism, SubgroupChain};
use crate::complex::{GSemiSimplicialSet, GSimplicialMap, Simplex, SimplexImage};
use crate::group::{conjugate_subgroup, Coset, Element, Subgroup, SubgroupLattice};

use super::{SimplexError, SimplexPoint};

/// An open cell of `Δ^H_G`: the points `(g, t)` with `tᵢ ≠ 0` exactly for
/// `i ∈ S`, for one coset `gH_k`, `k = n − max S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StratifiedCell {
    /// Sorted, nonempty subset of `0..=n`.
    pub support: Vec<usize>,
    /// Minimal element of the coset.
    pub rep: Element,
}

impl StratifiedCell {
    pub fn dim(&self) -> usize {
        self.support.len() - 1
    }

    /// `k = n − max S`.
    pub fn stratum(&self, chain: &SubgroupChain) -> usize {
        chain.top() - self.support.last().copied().expect("nonempty support")
    }

    pub fn coset(&self, chain: &SubgroupChain) -> Coset {
        chain.get(self.stratum(chain)).left_coset(self.rep)
    }

    pub fn stabilizer(&self, chain: &SubgroupChain) -> Subgroup {
        conjugate_subgroup(self.rep, chain.get(self.stratum(chain)))
    }
}

/// The cell structure of `Δ^H_G`, realized as an ordered `G`-semi-simplicial
/// set: vertices of a cell are ordered by slot index, and `dⱼ` drops the
/// `j`-th slot of the support.
#[derive(Clone, Debug)]
pub struct LinkingRealization {
    pub chain: SubgroupChain,
    /// `cells[d][s]` is the cell of simplex `(d, s)`.
    pub cells: Vec<Vec<StratifiedCell>>,
    pub complex: Arc<GSemiSimplicialSet>,
    index: HashMap<StratifiedCell, Simplex>,
}

/// Every cell of `Δ^H_G`, grouped by dimension; supports in lexicographic
/// order, then cosets by representative.
pub fn cell_model(chain: &SubgroupChain) -> Vec<Vec<StratifiedCell>> {
    let n = chain.top();
    let g = chain.group();
    let mut levels: Vec<Vec<StratifiedCell>> = vec![Vec::new(); n + 1];
    let mut supports: Vec<Vec<usize>> =
        (1u64..(1 << (n + 1))).map(|m| (0..=n).filter(|i| m >> i & 1 == 1).collect()).collect();
    supports.sort();
    for s in supports {
        let h = chain.get(n - s.last().unwrap());
        let mut reps: Vec<Element> = g.elements().map(|x| h.coset_rep(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        let d = s.len() - 1;
        levels[d].extend(reps.into_iter().map(|rep| StratifiedCell { support: s.clone(), rep }));
    }
    levels
}

/// Realizes the cell model as a `G`-semi-simplicial set.
pub fn to_semisimplicial(chain: &SubgroupChain) -> LinkingRealization {
    let g = chain.group();
    let cells = cell_model(chain);
    let index: HashMap<StratifiedCell, Simplex> = cells
        .iter()
        .enumerate()
        .flat_map(|(d, l)| l.iter().enumerate().map(move |(i, c)| (c.clone(), Simplex::new(d, i))))
        .collect();
    let lookup = |c: &StratifiedCell| index[c].id;
    let canon = |support: Vec<usize>, x: Element| {
        let h = chain.get(chain.top() - support.last().unwrap());
        StratifiedCell { rep: h.coset_rep(x), support }
    };
    let faces: Vec<Vec<Vec<usize>>> = cells
        .iter()
        .enumerate()
        .map(|(d, l)| {
            l.iter()
                .map(|c| {
                    if d == 0 {
                        return Vec::new();
                    }
                    (0..=d)
                        .map(|j| {
                            let mut s = c.support.clone();
                            s.remove(j);
                            lookup(&canon(s, c.rep))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let action: Vec<Vec<Vec<usize>>> = cells
        .iter()
        .map(|l| {
            g.elements()
                .map(|a| l.iter().map(|c| lookup(&canon(c.support.clone(), g.mul(a, c.rep)))).collect())
                .collect()
        })
        .collect();
    let names = cells
        .iter()
        .map(|l| {
            l.iter()
                .map(|c| {
                    let s: Vec<String> = c.support.iter().map(|i| i.to_string()).collect();
                    format!("{}{{{}}}", g.element_name(c.rep), s.join(","))
                })
                .collect()
        })
        .collect();
    let complex = GSemiSimplicialSet::new(g, faces, action)
        .and_then(|x| x.with_names(names))
        .expect("linking simplex realization is a valid G-complex");
    LinkingRealization { chain: chain.clone(), cells, complex: Arc::new(complex), index }
}

impl LinkingRealization {
    pub fn simplex_of(&self, cell: &StratifiedCell) -> Option<Simplex> {
        self.index.get(cell).copied()
    }

    pub fn cell(&self, s: Simplex) -> &StratifiedCell {
        &self.cells[s.dim][s.id]
    }

    /// The open cell containing a point.
    pub fn cell_of_point(&self, p: &SimplexPoint) -> Result<Simplex, SimplexError> {
        if p.chain() != &self.chain {
            return Err(SimplexError::ChainMismatch);
        }
        let support: Vec<usize> = (0..p.coords().len()).filter(|&i| !p.coords()[i].is_zero()).collect();
        let cell = StratifiedCell { support, rep: p.g() };
        Ok(self.simplex_of(&cell).expect("canonical points lie in a cell"))
    }

    /// The top simplex over the identity coset, `([n], eH₀)`.
    pub fn base_simplex(&self) -> Simplex {
        let n = self.chain.top();
        self.simplex_of(&StratifiedCell { support: (0..=n).collect(), rep: 0 }).expect("base simplex")
    }

    /// Text summary: cells by dimension with strata and stabilizers.
    pub fn describe(&self, lattice: &SubgroupLattice) -> String {
        let g = self.chain.group();
        let mut out = String::new();
        writeln!(out, "chain {}", self.chain.display(lattice)).unwrap();
        writeln!(out, "cells per dimension {:?}", self.complex.counts()).unwrap();
        for (d, l) in self.cells.iter().enumerate() {
            for c in l {
                let k = c.stratum(&self.chain);
                let stab = c.stabilizer(&self.chain);
                let stab_name = lattice.name(&stab);
                writeln!(
                    out,
                    "  dim {d} support {:?} coset {}·{} stratum k={k} stabilizer {stab_name}",
                    c.support,
                    g.element_name(c.rep),
                    lattice.name(self.chain.get(k)),
                )
                .unwrap();
            }
        }
        out
    }
}

/// `Δ^(ι,γ)` as a simplicial map between realizations: slot `i` goes to
/// slot `m − ι(n − i)` and the coset `gH_k` to `gγK_{ι(k)}`.
pub fn realize_morphism(
    m: &LinkMorphism,
    src: &LinkingRealization,
    dst: &LinkingRealization,
) -> Result<GSimplicialMap, SimplexError> {
    if src.chain != m.src || dst.chain != m.dst {
        return Err(SimplexError::ChainMismatch);
    }
    let g = m.group();
    let (n, top) = (m.src.top(), m.dst.top());
    let images = src
        .cells
        .iter()
        .map(|l| {
            l.iter()
                .map(|c| {
                    let support: Vec<usize> = c.support.iter().map(|&i| top - m.iota[n - i]).collect();
                    let k = top - support.last().unwrap();
                    let rep = m.dst.get(k).coset_rep(g.mul(c.rep, m.gamma));
                    let target = dst.simplex_of(&StratifiedCell { support, rep }).expect("image cell exists");
                    SimplexImage::nondegenerate(target)
                })
                .collect()
        })
        .collect();
    Ok(GSimplicialMap::new(src.complex.clone(), dst.complex.clone(), images)?)
}

/// Reads `(ι, γ)` off a map of realizations from where it sends the base
/// simplex `([n], eH₀)`: if that lands on `(S′, g′)` then
/// `ι(j) = m − S′[n − j]` and `γ = g′`.
pub fn classify_link_map(
    f: &GSimplicialMap,
    src: &LinkingRealization,
    dst: &LinkingRealization,
) -> Result<LinkMorphism, SimplexError> {
    if f.src().as_ref() != src.complex.as_ref() || f.dst().as_ref() != dst.complex.as_ref() {
        return Err(SimplexError::ChainMismatch);
    }
    let image = f.image(src.base_simplex());
    if image.is_degenerate() {
        return Err(SimplexError::NotALinkMap("the base simplex is collapsed".into()));
    }
    let cell = dst.cell(image.simplex);
    let (n, top) = (src.chain.top(), dst.chain.top());
    let iota: Vec<usize> = (0..=n).map(|j| top - cell.support[n - j]).collect();
    Ok(LinkMorphism::new(src.chain.clone(), dst.chain.clone(), iota, cell.rep)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::LinkOrbitCategory;
    use crate::group::families;

    #[test]
    fn length_zero_chain_is_an_orbit() {
        let g = families::symmetric(3).unwrap();
        let cat = LinkOrbitCategory::new(&g);
        for (i, c) in cat.objects().iter().enumerate().filter(|(_, c)| c.len() == 1) {
            let r = to_semisimplicial(c);
            assert_eq!(r.complex.counts(), vec![g.order() / c.base().order()], "{}", cat.object_name(i));
            assert_eq!(*r.complex, GSemiSimplicialSet::orbit(c.base()));
        }
    }

    #[test]
    fn c2_link_is_two_intervals() {
        let cat = LinkOrbitCategory::new(&families::cyclic(2).unwrap());
        let r = to_semisimplicial(cat.object(cat.object_by_name("e<C2").unwrap()));
        assert_eq!(r.complex.counts(), vec![3, 2]);
        // the generator swaps the two edges
        assert_eq!(r.complex.action_table()[1][1], vec![1, 0]);
        assert_eq!(r.complex.component_count(), 1);
    }

    #[test]
    fn c4_top_chain_counts() {
        let cat = LinkOrbitCategory::new(&families::cyclic(4).unwrap());
        let chain = cat.object(cat.object_by_name("e<C2<C4").unwrap()).clone();
        let cells = cell_model(&chain);
        assert_eq!(cells[0].len(), 1 + 2 + 4);
        for l in &cells {
            for c in l {
                let expected = 4 / chain.get(c.stratum(&chain)).order();
                let same = l.iter().filter(|d| d.support == c.support).count();
                assert_eq!(same, expected);
            }
        }
    }

    #[test]
    fn realization_stabilizers_match_cells() {
        for name in ["c4", "s3"] {
            let cat = LinkOrbitCategory::new(&families::by_name(name).unwrap());
            for c in cat.objects() {
                let r = to_semisimplicial(c);
                for s in r.complex.simplices() {
                    assert_eq!(r.complex.stabilizer(s), r.cell(s).stabilizer(c));
                }
            }
        }
    }

    #[test]
    fn classify_inverts_realize_on_c4() {
        let cat = LinkOrbitCategory::new(&families::cyclic(4).unwrap());
        let reals: Vec<LinkingRealization> = cat.objects().iter().map(to_semisimplicial).collect();
        for (&(a, b), ms) in cat.nonempty_homs() {
            for m in ms {
                let f = realize_morphism(m, &reals[a], &reals[b]).unwrap();
                assert!(f.is_isovariant());
                assert_eq!(&classify_link_map(&f, &reals[a], &reals[b]).unwrap(), m);
            }
        }
    }
}
