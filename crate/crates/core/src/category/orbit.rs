use crate::group::{Coset, FiniteGroup, GroupError, Subgroup};

use super::CategoryError;

/// An equivariant map `R_γ: G/H → G/K`, `gH ↦ gγK`.
///
/// Well-definedness needs `hγK = γK` for `h ∈ H`, i.e. `γ⁻¹Hγ ⊆ K`. The
/// usual textbook phrasing `γHγ⁻¹ ≤ K` is the same condition written for
/// right cosets; the fixed-point count below settles which one matches
/// `(G/K)^H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitMorphism {
    pub src: Subgroup,
    pub dst: Subgroup,
    /// Minimal element of `γK`.
    pub gamma: usize,
}

impl OrbitMorphism {
    pub fn gamma_coset(&self) -> Coset {
        self.dst.left_coset(self.gamma)
    }

    /// `R_γ′ ∘ R_γ = R_γγ′`.
    pub fn then(&self, next: &OrbitMorphism) -> Result<OrbitMorphism, CategoryError> {
        if self.dst != next.src {
            return Err(CategoryError::NotComposable);
        }
        let g = self.src.group();
        Ok(OrbitMorphism {
            src: self.src.clone(),
            dst: next.dst.clone(),
            gamma: next.dst.coset_rep(g.mul(self.gamma, next.gamma)),
        })
    }

    /// Image of the coset `xH`.
    pub fn apply(&self, x: usize) -> usize {
        let g = self.src.group();
        self.dst.coset_rep(g.mul(x, self.gamma))
    }
}

/// `𝒪_G(G/H, G/K)`.
pub fn orbit_hom(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<Vec<OrbitMorphism>, CategoryError> {
    if h.group() != g || k.group() != g {
        return Err(GroupError::ParentMismatch.into());
    }
    let mut reps: Vec<usize> = g
        .elements()
        .filter(|&x| h.elements().iter().all(|&y| k.contains(g.conj(g.inv(x), y))))
        .map(|x| k.coset_rep(x))
        .collect();
    reps.sort_unstable();
    reps.dedup();
    Ok(reps.into_iter().map(|gamma| OrbitMorphism { src: h.clone(), dst: k.clone(), gamma }).collect())
}

/// `|(G/K)^H|`, counted by letting `H` act on the cosets of `K` directly.
pub fn orbit_hom_fixed_point_count(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> usize {
    let mut seen = vec![false; g.order()];
    let mut fixed = 0;
    for x in g.elements() {
        let rep = k.coset_rep(x);
        if seen[rep] {
            continue;
        }
        seen[rep] = true;
        if h.elements().iter().all(|&y| k.coset_rep(g.mul(y, rep)) == rep) {
            fixed += 1;
        }
    }
    fixed
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_subgroups, families};

    #[test]
    fn c2_free_to_fixed_only() {
        let g = families::cyclic(2).unwrap();
        let (e, whole) = (Subgroup::trivial(&g), Subgroup::whole(&g));
        assert_eq!(orbit_hom(&g, &e, &whole).unwrap().len(), 1);
        assert!(orbit_hom(&g, &whole, &e).unwrap().is_empty());
    }

    #[test]
    fn counts_match_fixed_points() {
        for name in families::BATTERY {
            let g = families::by_name(name).unwrap();
            let subs = all_subgroups(&g);
            for h in &subs {
                for k in &subs {
                    assert_eq!(orbit_hom(&g, h, k).unwrap().len(), orbit_hom_fixed_point_count(&g, h, k), "{name}");
                }
            }
        }
    }

    #[test]
    fn maps_are_equivariant_and_compose() {
        let g = families::symmetric(3).unwrap();
        let subs = all_subgroups(&g);
        for h in &subs {
            for k in &subs {
                for f in orbit_hom(&g, h, k).unwrap() {
                    // well defined on H-cosets and equivariant
                    for x in g.elements() {
                        for &y in h.elements() {
                            assert_eq!(f.apply(x), f.apply(g.mul(x, y)));
                        }
                        for a in g.elements() {
                            assert_eq!(f.apply(g.mul(a, x)), k.coset_rep(g.mul(a, f.apply(x))));
                        }
                    }
                    for j in &subs {
                        for f2 in orbit_hom(&g, k, j).unwrap() {
                            let c = f.then(&f2).unwrap();
                            for x in g.elements() {
                                assert_eq!(c.apply(x), f2.apply(f.apply(x)));
                            }
                        }
                    }
                }
            }
        }
    }
}
