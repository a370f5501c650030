//! The link orbit category `ℒ_G`: strictly increasing subgroup chains with
//! chain inclusions labelled by multi-Weil cosets. Also the ordinary orbit
//! category `𝒪_G`, kept for comparison.

mod chain;
mod export;
mod morphism;
mod orbit;

use std::collections::{BTreeMap, HashMap};

pub use chain::{enumerate_chains, enumerate_chains_brute_force, SubgroupChain};
pub use export::{CategoryJson, DotOptions, MorphismJson};
pub use morphism::{compose, hom, hom_brute_force, LinkMorphism};
pub use orbit::{orbit_hom, orbit_hom_fixed_point_count, OrbitMorphism};

use crate::group::{FiniteGroup, GroupError, SubgroupLattice};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CategoryError {
    #[error("a subgroup chain needs at least one subgroup")]
    EmptyChain,
    #[error("chain is not strictly increasing")]
    NotStrictlyIncreasing,
    #[error("ι is not an order-preserving inclusion of the source chain into the target chain")]
    BadInclusion,
    #[error("γ = {0} does not normalize every subgroup of the source chain")]
    NotInMultiWeil(usize),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("chain is not an object of this category")]
    UnknownObject,
    #[error("invalid category JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Index of an object in [`LinkOrbitCategory::objects`].
pub type ObjectId = usize;

/// `ℒ_G` with every hom-set materialized.
#[derive(Clone, Debug)]
pub struct LinkOrbitCategory {
    lattice: SubgroupLattice,
    objects: Vec<SubgroupChain>,
    index: HashMap<SubgroupChain, ObjectId>,
    homs: BTreeMap<(ObjectId, ObjectId), Vec<LinkMorphism>>,
}

impl LinkOrbitCategory {
    pub fn new(group: &FiniteGroup) -> Self {
        Self::from_lattice(SubgroupLattice::new(group))
    }

    pub fn from_lattice(lattice: SubgroupLattice) -> Self {
        let objects = enumerate_chains(&lattice);
        let index = objects.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let mut homs = BTreeMap::new();
        for (i, a) in objects.iter().enumerate() {
            for (j, b) in objects.iter().enumerate() {
                let h = hom(a, b);
                if !h.is_empty() {
                    homs.insert((i, j), h);
                }
            }
        }
        Self { lattice, objects, index, homs }
    }

    pub fn group(&self) -> &FiniteGroup {
        self.lattice.group()
    }

    pub fn lattice(&self) -> &SubgroupLattice {
        &self.lattice
    }

    pub fn objects(&self) -> &[SubgroupChain] {
        &self.objects
    }

    pub fn object(&self, id: ObjectId) -> &SubgroupChain {
        &self.objects[id]
    }

    pub fn object_id(&self, chain: &SubgroupChain) -> Option<ObjectId> {
        self.index.get(chain).copied()
    }

    pub fn object_name(&self, id: ObjectId) -> String {
        self.objects[id].display(&self.lattice)
    }

    /// Looks an object up by its display name, e.g. `"e<C2<C4"`.
    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        let wanted = name.replace(' ', "");
        (0..self.objects.len()).find(|&i| self.object_name(i) == wanted)
    }

    pub fn hom_ids(&self, src: ObjectId, dst: ObjectId) -> &[LinkMorphism] {
        self.homs.get(&(src, dst)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn hom(&self, src: &SubgroupChain, dst: &SubgroupChain) -> Result<&[LinkMorphism], CategoryError> {
        let s = self.object_id(src).ok_or(CategoryError::UnknownObject)?;
        let d = self.object_id(dst).ok_or(CategoryError::UnknownObject)?;
        Ok(self.hom_ids(s, d))
    }

    /// Nonempty hom-sets keyed by `(src, dst)`.
    pub fn nonempty_homs(&self) -> impl Iterator<Item = (&(ObjectId, ObjectId), &Vec<LinkMorphism>)> {
        self.homs.iter()
    }

    pub fn morphism_count(&self) -> usize {
        self.homs.values().map(Vec::len).sum()
    }

    pub fn identity(&self, id: ObjectId) -> LinkMorphism {
        LinkMorphism::identity(&self.objects[id])
    }

    pub fn compose(&self, f: &LinkMorphism, h: &LinkMorphism) -> Result<LinkMorphism, CategoryError> {
        compose(f, h)
    }

    /// `(#inclusions) · |⋂ⱼ N_G(Kⱼ)| / |K₀|`.
    pub fn hom_count_formula(&self, src: ObjectId, dst: ObjectId) -> usize {
        let (a, b) = (&self.objects[src], &self.objects[dst]);
        a.inclusions_into(b).len() * a.common_normalizer().order() / a.base().order()
    }

    fn position(&self, src: ObjectId, dst: ObjectId, m: &LinkMorphism) -> Option<usize> {
        self.hom_ids(src, dst).binary_search_by(|x| (&x.iota, x.gamma).cmp(&(&m.iota, m.gamma))).ok()
    }

    /// Exhaustive check of identity laws, closure, associativity and hom
    /// counts.
    pub fn verify_axioms(&self) -> AxiomReport {
        let mut report =
            AxiomReport { objects: self.objects.len(), morphisms: self.morphism_count(), ..Default::default() };
        let fail = |report: &mut AxiomReport, msg: String| {
            if report.failures.len() < 20 {
                report.failures.push(msg);
            }
            report.failure_count += 1;
        };

        for a in 0..self.objects.len() {
            for b in 0..self.objects.len() {
                report.hom_count_checks += 1;
                let expected = self.hom_count_formula(a, b);
                if self.hom_ids(a, b).len() != expected {
                    fail(
                        &mut report,
                        format!(
                            "|hom({}, {})| = {} but the counting formula gives {expected}",
                            self.object_name(a),
                            self.object_name(b),
                            self.hom_ids(a, b).len()
                        ),
                    );
                }
            }
        }

        let out: Vec<Vec<ObjectId>> = (0..self.objects.len())
            .map(|a| (0..self.objects.len()).filter(|&b| self.homs.contains_key(&(a, b))).collect())
            .collect();

        for (&(a, b), fs) in &self.homs {
            let (ida, idb) = (self.identity(a), self.identity(b));
            if self.position(a, a, &ida).is_none() {
                fail(&mut report, format!("identity of {} missing", self.object_name(a)));
            }
            for f in fs {
                report.identity_checks += 1;
                let left = compose(&ida, f);
                let right = compose(f, &idb);
                if left.as_ref().ok() != Some(f) || right.as_ref().ok() != Some(f) {
                    fail(&mut report, format!("identity law fails for {f:?}"));
                }
            }
            for &c in &out[b] {
                for f in fs {
                    for h in self.hom_ids(b, c) {
                        report.composable_pairs += 1;
                        match compose(f, h) {
                            Ok(fh) if self.position(a, c, &fh).is_some() => {}
                            Ok(fh) => fail(&mut report, format!("composite {fh:?} is not in hom")),
                            Err(e) => fail(&mut report, format!("composition failed: {e}")),
                        }
                    }
                }
                for &d in &out[c] {
                    for f in fs {
                        for g in self.hom_ids(b, c) {
                            let fg = compose(f, g).expect("composable");
                            for h in self.hom_ids(c, d) {
                                report.associativity_triples += 1;
                                let left = compose(&fg, h).expect("composable");
                                let right = compose(f, &compose(g, h).expect("composable")).expect("composable");
                                if left != right {
                                    fail(&mut report, format!("associativity fails: {f:?}, {g:?}, {h:?}"));
                                }
                            }
                        }
                    }
                }
            }
        }
        report
    }
}

/// Outcome of [`LinkOrbitCategory::verify_axioms`].
#[derive(Clone, Debug, Default)]
pub struct AxiomReport {
    pub objects: usize,
    pub morphisms: usize,
    pub hom_count_checks: usize,
    pub identity_checks: usize,
    pub composable_pairs: usize,
    pub associativity_triples: usize,
    pub failure_count: usize,
    /// First few counterexamples.
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn c4_and_s3_pass() {
        for name in ["c4", "s3"] {
            let cat = LinkOrbitCategory::new(&families::by_name(name).unwrap());
            let report = cat.verify_axioms();
            assert!(report.passed(), "{name}: {:?}", report.failures);
            assert!(report.associativity_triples > 0);
        }
    }

    #[test]
    fn length_zero_chains_only_have_self_maps() {
        for name in families::BATTERY {
            let cat = LinkOrbitCategory::new(&families::by_name(name).unwrap());
            for a in 0..cat.objects().len() {
                for b in 0..cat.objects().len() {
                    if cat.object(a).len() == 1 && cat.object(b).len() == 1 && a != b {
                        assert!(cat.hom_ids(a, b).is_empty());
                    }
                }
            }
        }
    }

    #[test]
    fn morphism_labels_normalize_the_source() {
        let cat = LinkOrbitCategory::new(&families::dihedral(4).unwrap());
        for (_, ms) in cat.nonempty_homs() {
            for m in ms {
                assert!(m.src.is_normalized_by(m.gamma));
            }
        }
    }

    #[test]
    fn lookup_by_name() {
        let cat = LinkOrbitCategory::new(&families::cyclic(4).unwrap());
        let id = cat.object_by_name("e < C2 < C4").unwrap();
        assert_eq!(cat.object(id).len(), 3);
        assert!(cat.object_by_name("C3").is_none());
    }
}
