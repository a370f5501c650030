use std::collections::BTreeSet;

use crate::category::{LinkMorphism, LinkOrbitCategory};
use crate::complex::{enumerate_isovariant_maps, EnumerateOptions};

use super::{classify_link_map, realize_morphism, to_semisimplicial, LinkingRealization, SimplexError};

/// Outcome of [`verify_classification`].
#[derive(Clone, Debug, Default)]
pub struct ClassificationReport {
    pub pairs: usize,
    pub maps_enumerated: usize,
    pub morphisms: usize,
    /// Morphisms no enumerated map classifies to.
    pub missed: usize,
    /// Morphisms with `classify(realize(m)) ≠ m`.
    pub roundtrip_mismatches: usize,
    /// Enumerated maps whose label is not a morphism of ℒ_G.
    pub unlabelled: usize,
    pub failures: Vec<String>,
}

impl ClassificationReport {
    pub fn passed(&self) -> bool {
        self.missed == 0 && self.roundtrip_mismatches == 0 && self.unlabelled == 0
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

/// Enumerates every nondegenerate isovariant map `Δ^K → Δ^H` for every pair
/// of objects, classifies each, and checks the labels cover `ℒ_G(K, H)`;
/// also checks `classify ∘ realize = id`.
///
/// Exact only for abelian groups: otherwise isovariant maps onto conjugate
/// orbits exist whose label lies outside the multi-Weil group.
pub fn verify_classification(cat: &LinkOrbitCategory, budget: u64) -> Result<ClassificationReport, SimplexError> {
    let reals: Vec<LinkingRealization> = cat.objects().iter().map(to_semisimplicial).collect();
    let opts = EnumerateOptions { budget, ..Default::default() };
    let mut r = ClassificationReport::default();
    let n = cat.objects().len();
    for a in 0..n {
        for b in 0..n {
            r.pairs += 1;
            let homs = cat.hom_ids(a, b);
            r.morphisms += homs.len();
            for m in homs {
                let f = realize_morphism(m, &reals[a], &reals[b])?;
                if &classify_link_map(&f, &reals[a], &reals[b])? != m {
                    r.roundtrip_mismatches += 1;
                    r.fail(format!(
                        "classify∘realize moves a morphism {} -> {}",
                        cat.object_name(a),
                        cat.object_name(b)
                    ));
                }
            }
            let maps = enumerate_isovariant_maps(&reals[a].complex, &reals[b].complex, opts)?;
            r.maps_enumerated += maps.len();
            let mut hit: BTreeSet<&LinkMorphism> = BTreeSet::new();
            for f in &maps {
                match classify_link_map(f, &reals[a], &reals[b]) {
                    Ok(m) => match homs.iter().find(|h| **h == m) {
                        Some(h) => {
                            hit.insert(h);
                        }
                        None => {
                            r.unlabelled += 1;
                            r.fail(format!("label outside hom({}, {})", cat.object_name(a), cat.object_name(b)));
                        }
                    },
                    Err(e) => {
                        r.unlabelled += 1;
                        r.fail(format!("{} -> {}: {e}", cat.object_name(a), cat.object_name(b)));
                    }
                }
            }
            if hit.len() != homs.len() {
                r.missed += homs.len() - hit.len();
                r.fail(format!(
                    "{} of {} morphisms {} -> {} never hit",
                    homs.len() - hit.len(),
                    homs.len(),
                    cat.object_name(a),
                    cat.object_name(b)
                ));
            }
        }
    }
    Ok(r)
}
