use std::collections::{BTreeSet, HashMap};

use crate::category::{compose, LinkMorphism, LinkOrbitCategory};
use crate::group::FiniteGroup;

use super::{induced_map, SimplexPoint};

/// Outcome of [`verify_functor`].
#[derive(Clone, Debug, Default)]
pub struct FunctorReport {
    pub objects: usize,
    pub morphisms: usize,
    pub sample_points: usize,
    pub identity_checks: usize,
    pub composition_checks: usize,
    pub equivariance_checks: usize,
    pub isovariance_checks: usize,
    pub injectivity_checks: usize,
    pub failure_count: usize,
    /// First few counterexamples.
    pub failures: Vec<String>,
}

impl FunctorReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    fn fail(&mut self, msg: String) {
        self.failure_count += 1;
        if self.failures.len() < 20 {
            self.failures.push(msg);
        }
    }
}

/// The canonical points `(g, barycenter of a face)` for every `g` and every
/// nonempty face. Vertices and edge midpoints are among them, and affine
/// maps on the fundamental domain are determined by these values.
pub fn sample_points(chain: &crate::category::SubgroupChain) -> Vec<SimplexPoint> {
    let n = chain.top();
    let mut out = BTreeSet::new();
    for mask in 1u64..(1 << (n + 1)) {
        let support: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        for g in chain.group().elements() {
            out.insert(SimplexPoint::barycenter(chain, g, &support));
        }
    }
    out.into_iter().collect()
}

/// Checks that `Δ^•_G` is a functor on the whole link orbit category: for
/// every composable pair the composite of induced maps is the induced map of
/// the composite, identities go to identities, and every induced map is
/// equivariant, stabilizer-preserving and injective on samples.
pub fn verify_functor(group: &FiniteGroup) -> FunctorReport {
    verify_functor_on(&LinkOrbitCategory::new(group))
}

pub fn verify_functor_on(cat: &LinkOrbitCategory) -> FunctorReport {
    let g = cat.group();
    let samples: Vec<Vec<SimplexPoint>> = cat.objects().iter().map(sample_points).collect();
    let mut r = FunctorReport {
        objects: cat.objects().len(),
        morphisms: cat.morphism_count(),
        sample_points: samples.iter().map(Vec::len).sum(),
        ..Default::default()
    };

    // Image tables: images[(a, b)][k][p] = induced(hom(a,b)[k], samples[a][p]).
    let mut images: HashMap<(usize, usize), Vec<Vec<SimplexPoint>>> = HashMap::new();
    for (&(a, b), ms) in cat.nonempty_homs() {
        let table: Vec<Vec<SimplexPoint>> = ms
            .iter()
            .map(|m| samples[a].iter().map(|p| induced_map(m, p).expect("source chain matches")).collect())
            .collect();
        images.insert((a, b), table);
    }

    for (a, pts) in samples.iter().enumerate() {
        let id = cat.identity(a);
        for p in pts {
            r.identity_checks += 1;
            let q = induced_map(&id, p).expect("identity");
            if &q != p {
                r.fail(format!("identity of {} moves {p:?} to {q:?}", cat.object_name(a)));
            }
        }
    }

    for (&(a, b), ms) in cat.nonempty_homs() {
        let table = &images[&(a, b)];
        for (k, m) in ms.iter().enumerate() {
            let imgs = &table[k];
            let distinct: BTreeSet<&SimplexPoint> = imgs.iter().collect();
            r.injectivity_checks += 1;
            if distinct.len() != imgs.len() {
                r.fail(format!("{} is not injective on samples", describe(cat, m)));
            }
            for (p, q) in samples[a].iter().zip(imgs) {
                r.isovariance_checks += 1;
                if p.stabilizer() != q.stabilizer() {
                    r.fail(format!("{} changes the stabilizer of {p:?}", describe(cat, m)));
                }
                for x in g.elements() {
                    r.equivariance_checks += 1;
                    let lhs = induced_map(m, &p.act(x)).expect("source chain matches");
                    if lhs != q.act(x) {
                        r.fail(format!("{} is not equivariant at {p:?}, g = {x}", describe(cat, m)));
                    }
                }
            }
        }
    }

    let pos: HashMap<&LinkMorphism, usize> =
        cat.nonempty_homs().flat_map(|(_, ms)| ms.iter().enumerate().map(|(k, m)| (m, k))).collect();
    let sample_pos: Vec<HashMap<&SimplexPoint, usize>> =
        samples.iter().map(|s| s.iter().enumerate().map(|(i, p)| (p, i)).collect()).collect();
    for (&(a, b), fs) in cat.nonempty_homs() {
        for c in 0..cat.objects().len() {
            let hs = cat.hom_ids(b, c);
            if hs.is_empty() {
                continue;
            }
            for (kf, f) in fs.iter().enumerate() {
                for (kh, h) in hs.iter().enumerate() {
                    let fh = compose(f, h).expect("composable");
                    let kfh = pos[&fh];
                    for p in 0..samples[a].len() {
                        r.composition_checks += 1;
                        let mid = &images[&(a, b)][kf][p];
                        // images of samples are samples of the target
                        let via = match sample_pos[b].get(mid) {
                            Some(&i) => images[&(b, c)][kh][i].clone(),
                            None => induced_map(h, mid).expect("chain matches"),
                        };
                        let direct = &images[&(a, c)][kfh][p];
                        if &via != direct {
                            r.fail(format!(
                                "composite {} then {} disagrees at {:?}",
                                describe(cat, f),
                                describe(cat, h),
                                samples[a][p]
                            ));
                        }
                    }
                }
            }
        }
    }
    r
}

fn describe(cat: &LinkOrbitCategory, m: &LinkMorphism) -> String {
    let name = |c| cat.object_id(c).map(|i| cat.object_name(i)).unwrap_or_default();
    format!("({} -> {}, ι={:?}, γ={})", name(&m.src), name(&m.dst), m.iota, cat.group().element_name(m.gamma))
}
