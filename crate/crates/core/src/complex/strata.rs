use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;

use crate::group::{all_subgroups, conjugate_subgroup, normalizer, Element, Subgroup, SubgroupLattice};

use super::{ComplexError, GSemiSimplicialSet, GSimplicialMap, Simplex};

/// Simplices whose stabilizer is exactly `subgroup`. An open stratum, so
/// generally not closed under faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropyStratum {
    pub subgroup: Subgroup,
    /// Sorted.
    pub simplices: Vec<Simplex>,
}

impl IsotropyStratum {
    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn contains(&self, s: Simplex) -> bool {
        self.simplices.binary_search(&s).is_ok()
    }
}

pub fn simplex_stabilizer(x: &GSemiSimplicialSet, s: Simplex) -> Subgroup {
    x.stabilizer(s)
}

pub fn exact_stratum(x: &GSemiSimplicialSet, h: &Subgroup) -> IsotropyStratum {
    let simplices = x.simplices().filter(|&s| &x.stabilizer(s) == h).collect();
    IsotropyStratum { subgroup: h.clone(), simplices }
}

/// `X^H`: the face-closed set of simplices fixed by every element of `H`,
/// as a semi-simplicial set with trivial action, together with the
/// original index of each of its simplices.
pub fn fixed_subset(x: &GSemiSimplicialSet, h: &Subgroup) -> (GSemiSimplicialSet, Vec<Vec<usize>>) {
    let keep: Vec<Vec<bool>> =
        (0..x.levels()).map(|d| x.level(d).map(|s| h.elements().iter().all(|&g| x.act(g, s) == s)).collect()).collect();
    let mut old: Vec<Vec<usize>> = keep.iter().map(|l| (0..l.len()).filter(|&i| l[i]).collect()).collect();
    while old.last().is_some_and(Vec::is_empty) {
        old.pop();
    }
    let mut new_id: Vec<BTreeMap<usize, usize>> = Vec::new();
    for o in &old {
        new_id.push(o.iter().enumerate().map(|(i, &s)| (s, i)).collect());
    }
    let faces: Vec<Vec<Vec<usize>>> = old
        .iter()
        .enumerate()
        .map(|(d, o)| {
            o.iter().map(|&s| x.face_ids(Simplex::new(d, s)).iter().map(|f| new_id[d - 1][f]).collect()).collect()
        })
        .collect();
    let fixed = GSemiSimplicialSet::with_trivial_action(x.group(), faces).expect("fixed set of a G-complex is valid");
    (fixed, old)
}

/// Components of a set of simplices under "one is a face of the other".
/// Labels follow the order of `simplices`.
pub fn components_of(x: &GSemiSimplicialSet, simplices: &[Simplex]) -> (usize, Vec<usize>) {
    let pos: BTreeMap<Simplex, usize> = simplices.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut uf = UnionFind::<usize>::new(simplices.len());
    for (i, &s) in simplices.iter().enumerate() {
        if s.dim == 0 {
            continue;
        }
        for k in 0..=s.dim {
            if let Some(&j) = pos.get(&x.face(s, k)) {
                uf.union(i, j);
            }
        }
    }
    let mut label_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let labels = (0..simplices.len())
        .map(|i| {
            let r = uf.find(i);
            let next = label_of_root.len();
            *label_of_root.entry(r).or_insert(next)
        })
        .collect();
    (label_of_root.len(), labels)
}

/// `π₀` of an exact stratum with the action of `N_G(H)` on components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumPi0 {
    pub count: usize,
    /// Component label of each simplex of the stratum, in stratum order.
    pub labels: Vec<usize>,
    /// For each element of `N_G(H)`, the permutation it induces on labels.
    pub action: BTreeMap<Element, Vec<usize>>,
}

impl StratumPi0 {
    /// Number of `N_G(H)`-orbits of components.
    pub fn orbit_count(&self) -> usize {
        let mut uf = UnionFind::<usize>::new(self.count);
        for p in self.action.values() {
            for (i, &j) in p.iter().enumerate() {
                uf.union(i, j);
            }
        }
        let mut roots: Vec<usize> = (0..self.count).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }

    pub fn is_transitive(&self) -> bool {
        self.count > 0 && self.orbit_count() == 1
    }
}

pub fn stratum_pi0(x: &GSemiSimplicialSet, stratum: &IsotropyStratum) -> StratumPi0 {
    let (count, labels) = components_of(x, &stratum.simplices);
    let n = normalizer(x.group(), &stratum.subgroup).expect("stratum subgroup lives in the group");
    let mut action = BTreeMap::new();
    for &g in n.elements() {
        let mut perm = vec![usize::MAX; count];
        for (i, &s) in stratum.simplices.iter().enumerate() {
            let j = stratum.simplices.binary_search(&x.act(g, s)).expect("normalizer preserves the stratum");
            perm[labels[i]] = labels[j];
        }
        action.insert(g, perm);
    }
    StratumPi0 { count, labels, action }
}

/// `g · X_H = X_{gHg⁻¹}`, checked for every element and subgroup.
pub fn strata_are_permuted(x: &GSemiSimplicialSet) -> bool {
    let g = x.group();
    all_subgroups(g).iter().all(|h| {
        let s = exact_stratum(x, h);
        g.elements().all(|a| {
            let mut moved: Vec<Simplex> = s.simplices.iter().map(|&t| x.act(a, t)).collect();
            moved.sort_unstable();
            moved == exact_stratum(x, &conjugate_subgroup(a, h)).simplices
        })
    })
}

/// One row of a [`WeObstructionReport`].
#[derive(Clone, Debug)]
pub struct StratumComparison {
    pub subgroup: Subgroup,
    pub source_pi0: usize,
    pub target_pi0: usize,
    pub source_orbits: usize,
    pub target_orbits: usize,
    /// Whether `f` induces a bijection `π₀ X_H → π₀ Y_H`.
    pub bijective: bool,
    pub problem: Option<String>,
}

/// Necessary conditions for an isovariant weak equivalence, read off the
/// exact strata `X_H ≅ Map_isvt(G/H, X)`. A failure is a certificate; a pass
/// says nothing about higher chains or higher homotopy.
#[derive(Clone, Debug)]
pub struct WeObstructionReport {
    pub rows: Vec<StratumComparison>,
    pub isovariant: bool,
}

impl WeObstructionReport {
    pub fn failed(&self) -> bool {
        !self.isovariant || self.rows.iter().any(|r| r.problem.is_some())
    }

    pub fn problems(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        if !self.isovariant {
            out.push("map is not isovariant".into());
        }
        out.extend(self.rows.iter().filter_map(|r| r.problem.clone()));
        out
    }
}

pub fn we_obstruction(f: &GSimplicialMap) -> WeObstructionReport {
    let (x, y) = (f.src(), f.dst());
    let isovariant = f.is_isovariant();
    let lattice = SubgroupLattice::new(x.group());
    let mut rows = Vec::new();
    for h in all_subgroups(x.group()) {
        let (sx, sy) = (exact_stratum(x, &h), exact_stratum(y, &h));
        let (px, py) = (stratum_pi0(x, &sx), stratum_pi0(y, &sy));
        let mut hit = vec![false; py.count];
        let mut bijective = isovariant && px.count == py.count;
        if isovariant {
            let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
            for (i, &s) in sx.simplices.iter().enumerate() {
                let t = f.image(s).simplex;
                let Ok(j) = sy.simplices.binary_search(&t) else {
                    bijective = false;
                    continue;
                };
                let (a, b) = (px.labels[i], py.labels[j]);
                hit[b] = true;
                if *seen.entry(a).or_insert(b) != b {
                    bijective = false;
                }
            }
            let mut targets: Vec<usize> = seen.values().copied().collect();
            targets.sort_unstable();
            targets.dedup();
            bijective &= targets.len() == px.count && hit.iter().all(|&b| b);
        }
        let label = match (h.is_trivial(), h.is_whole()) {
            (true, _) => format!("{} (free)", lattice.name(&h)),
            (_, true) => format!("{} (fixed)", lattice.name(&h)),
            _ => lattice.name(&h),
        };
        let problem = if sx.is_empty() != sy.is_empty() {
            let (empty, full) = if sx.is_empty() { ("source", "target") } else { ("target", "source") };
            Some(format!("stratum {label}: {empty} stratum is empty but the {full} stratum is not"))
        } else if px.count != py.count {
            Some(format!(
                "stratum {label}: π₀ has {} components in the source and {} in the target",
                px.count, py.count
            ))
        } else if px.orbit_count() != py.orbit_count() {
            Some(format!("stratum {label}: normalizer orbits on π₀ differ"))
        } else if isovariant && !bijective {
            Some(format!("stratum {label}: f does not induce a bijection on π₀"))
        } else {
            None
        };
        rows.push(StratumComparison {
            subgroup: h,
            source_pi0: px.count,
            target_pi0: py.count,
            source_orbits: px.orbit_count(),
            target_orbits: py.orbit_count(),
            bijective,
            problem,
        });
    }
    WeObstructionReport { rows, isovariant }
}

/// Checks that a set of simplices lies in one level structure; used by
/// loaders that accept simplex lists.
pub(crate) fn check_simplex(x: &GSemiSimplicialSet, s: Simplex) -> Result<(), ComplexError> {
    if s.id < x.count(s.dim) {
        Ok(())
    } else {
        Err(ComplexError::Malformed(format!("no simplex {s}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;
    use std::sync::Arc;

    #[test]
    fn free_orbit_stratum() {
        let g = families::cyclic(2).unwrap();
        let x = GSemiSimplicialSet::orbit(&Subgroup::trivial(&g));
        let s = exact_stratum(&x, &Subgroup::trivial(&g));
        assert_eq!(s.len(), 2);
        let p = stratum_pi0(&x, &s);
        assert_eq!(p.count, 2);
        assert_eq!(p.action[&1], vec![1, 0]);
        assert!(p.is_transitive());
        assert!(exact_stratum(&x, &Subgroup::whole(&g)).is_empty());
        assert_eq!(fixed_subset(&x, &Subgroup::trivial(&g)).0.counts(), vec![2]);
        assert!(fixed_subset(&x, &Subgroup::whole(&g)).0.is_empty());
        assert!(strata_are_permuted(&x));
    }

    #[test]
    fn obstruction_on_orbit_to_point() {
        let g = families::cyclic(2).unwrap();
        let pt = Arc::new(GSemiSimplicialSet::point(&g));
        let free = Arc::new(GSemiSimplicialSet::orbit(&Subgroup::trivial(&g)));
        assert!(!we_obstruction(&GSimplicialMap::identity(free.clone())).failed());
        let collapse = GSimplicialMap::constant(free, pt, 0).unwrap();
        let r = we_obstruction(&collapse);
        assert!(r.failed());
        assert!(!r.isovariant);
    }
}
