use std::fmt;

use crate::group::{Coset, Element, FiniteGroup};

use super::{CategoryError, SubgroupChain};

/// A morphism `(ι, γH₀)` of the link orbit category.
///
/// `iota[j]` is the position in `dst` of the `j`-th subgroup of `src`;
/// `gamma` is the minimal element of the multi-Weil coset `γH₀` of the
/// source chain.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkMorphism {
    pub src: SubgroupChain,
    pub dst: SubgroupChain,
    pub iota: Vec<usize>,
    pub gamma: Element,
}

impl LinkMorphism {
    /// Validates `(ι, γ)` and canonicalizes `γ` to its coset representative.
    pub fn new(
        src: SubgroupChain,
        dst: SubgroupChain,
        iota: Vec<usize>,
        gamma: Element,
    ) -> Result<Self, CategoryError> {
        if iota.len() != src.len() || iota.windows(2).any(|w| w[0] >= w[1]) || iota.iter().any(|&i| i >= dst.len()) {
            return Err(CategoryError::BadInclusion);
        }
        if iota.iter().enumerate().any(|(j, &i)| dst.get(i) != src.get(j)) {
            return Err(CategoryError::BadInclusion);
        }
        if gamma >= src.group().order() || !src.is_normalized_by(gamma) {
            return Err(CategoryError::NotInMultiWeil(gamma));
        }
        let gamma = src.base().coset_rep(gamma);
        Ok(Self { src, dst, iota, gamma })
    }

    pub fn identity(chain: &SubgroupChain) -> Self {
        Self { src: chain.clone(), dst: chain.clone(), iota: (0..chain.len()).collect(), gamma: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.gamma == 0 && self.iota.iter().enumerate().all(|(j, &i)| i == j)
    }

    pub fn gamma_coset(&self) -> Coset {
        self.src.base().left_coset(self.gamma)
    }

    pub fn group(&self) -> &FiniteGroup {
        self.src.group()
    }
}

impl fmt::Debug for LinkMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} -> {:?}, ι={:?}, γ={})", self.src, self.dst, self.iota, self.gamma)
    }
}

/// The composite `h ∘ f` of `f: H → K` and `h: K → J`.
///
/// Labels multiply in the order `γ·γ′` (γ from `f`, γ′ from `h`), matching
/// `R_γ′ ∘ R_γ = R_γγ′` on cosets `gHᵢ ↦ gγγ′Hᵢ`.
pub fn compose(f: &LinkMorphism, h: &LinkMorphism) -> Result<LinkMorphism, CategoryError> {
    if f.dst != h.src {
        return Err(CategoryError::NotComposable);
    }
    let g = f.group();
    let iota = f.iota.iter().map(|&i| h.iota[i]).collect();
    let gamma = f.src.base().coset_rep(g.mul(f.gamma, h.gamma));
    Ok(LinkMorphism { src: f.src.clone(), dst: h.dst.clone(), iota, gamma })
}

/// All morphisms `K → H`: every inclusion paired with every multi-Weil coset
/// of the source.
pub fn hom(src: &SubgroupChain, dst: &SubgroupChain) -> Vec<LinkMorphism> {
    let incl = src.inclusions_into(dst);
    if incl.is_empty() {
        return Vec::new();
    }
    let weil = src.multi_weil();
    let mut out = Vec::with_capacity(incl.len() * weil.len());
    for iota in incl {
        for c in &weil {
            out.push(LinkMorphism { src: src.clone(), dst: dst.clone(), iota: iota.clone(), gamma: c.representative });
        }
    }
    out.sort();
    out
}

/// Definition-level hom-set: all order-preserving maps `[n] → [m]` filtered by
/// `dst[ι(j)] = src[j]`, times all group elements normalizing every `srcⱼ`,
/// deduplicated by coset. Independent of [`hom`].
pub fn hom_brute_force(src: &SubgroupChain, dst: &SubgroupChain) -> Vec<LinkMorphism> {
    let g = src.group();
    let (n, m) = (src.len(), dst.len());
    let mut maps = Vec::new();
    // all (n)-subsets of 0..m as increasing lists
    if n <= m {
        let mut idx: Vec<usize> = (0..n).collect();
        loop {
            maps.push(idx.clone());
            let mut k = n;
            let mut advanced = false;
            while k > 0 {
                k -= 1;
                if idx[k] < m - n + k {
                    idx[k] += 1;
                    for l in k + 1..n {
                        idx[l] = idx[l - 1] + 1;
                    }
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
    let mut out = Vec::new();
    for iota in maps.into_iter().filter(|iota| iota.iter().enumerate().all(|(j, &i)| dst.get(i) == src.get(j))) {
        for x in g.elements() {
            let normalizes = src
                .subgroups()
                .iter()
                .all(|h| h.elements().iter().all(|&y| h.elements().contains(&g.mul(g.mul(x, y), g.inv(x)))));
            if !normalizes {
                continue;
            }
            let rep = src.base().elements().iter().map(|&y| g.mul(x, y)).min().unwrap_or(x);
            out.push(LinkMorphism { src: src.clone(), dst: dst.clone(), iota: iota.clone(), gamma: rep });
        }
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::enumerate_chains;
    use crate::group::{families, SubgroupLattice};

    fn chains(name: &str) -> (SubgroupLattice, Vec<SubgroupChain>) {
        let lat = SubgroupLattice::new(&families::by_name(name).unwrap());
        let ch = enumerate_chains(&lat);
        (lat, ch)
    }

    fn find(lat: &SubgroupLattice, ch: &[SubgroupChain], name: &str) -> SubgroupChain {
        ch.iter().find(|c| c.display(lat) == name).unwrap().clone()
    }

    #[test]
    fn pictured_hom_counts_for_c4() {
        let (lat, ch) = chains("c4");
        let top = find(&lat, &ch, "e<C2<C4");
        assert_eq!(hom(&find(&lat, &ch, "e"), &top).len(), 4);
        assert_eq!(hom(&find(&lat, &ch, "C2<C4"), &top).len(), 2);
        assert_eq!(hom(&find(&lat, &ch, "C4"), &find(&lat, &ch, "e<C4")).len(), 1);
    }

    #[test]
    fn no_map_from_free_to_fixed_orbit() {
        let (lat, ch) = chains("c2");
        assert!(hom(&find(&lat, &ch, "e"), &find(&lat, &ch, "C2")).is_empty());
    }

    #[test]
    fn identity_laws_and_swap() {
        let (lat, ch) = chains("c2");
        let link = find(&lat, &ch, "e<C2");
        let endo = hom(&link, &link);
        assert_eq!(endo.len(), 2);
        let id = LinkMorphism::identity(&link);
        assert_eq!(id.gamma, 0);
        let swap = endo.iter().find(|m| m.gamma == 1).unwrap();
        assert_eq!(compose(swap, swap).unwrap(), id);
        for m in &endo {
            assert_eq!(&compose(m, &id).unwrap(), m);
            assert_eq!(&compose(&id, m).unwrap(), m);
        }
    }

    #[test]
    fn not_composable() {
        let (lat, ch) = chains("c4");
        let a = LinkMorphism::identity(&find(&lat, &ch, "e"));
        let b = LinkMorphism::identity(&find(&lat, &ch, "C2"));
        assert_eq!(compose(&a, &b).unwrap_err(), CategoryError::NotComposable);
    }

    #[test]
    fn constructor_validates() {
        let (lat, ch) = chains("s3");
        let c2 = lat.subgroups().iter().find(|h| h.order() == 2).unwrap().clone();
        let chain = SubgroupChain::single(c2.clone());
        // an element outside N(C2) = C2
        let outside = lat.group().elements().find(|&x| !c2.contains(x)).unwrap();
        assert_eq!(
            LinkMorphism::new(chain.clone(), chain.clone(), vec![0], outside).unwrap_err(),
            CategoryError::NotInMultiWeil(outside)
        );
        assert_eq!(
            LinkMorphism::new(chain.clone(), chain.clone(), vec![1], 0).unwrap_err(),
            CategoryError::BadInclusion
        );
        let nontrivial = c2.elements()[1];
        assert_eq!(LinkMorphism::new(chain.clone(), chain, vec![0], nontrivial).unwrap().gamma, 0);
        let _ = ch;
    }

    #[test]
    fn brute_force_matches_formula_on_c4() {
        let (_, ch) = chains("c4");
        for a in &ch {
            for b in &ch {
                assert_eq!(hom(a, b), hom_brute_force(a, b));
            }
        }
    }
}
