use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{
    components_of, exact_stratum, from_complex, stratum_pi0, GSemiSimplicialSet, GSimplicialMap, Simplex,
};
use crate::group::{all_subgroups, FiniteGroup, Subgroup};

use super::{double_mapping_cylinder, quotient, ColimitError, PushoutData};

/// Outcome of [`hocolim_pi0_property_test`].
#[derive(Clone, Debug, Default)]
pub struct HocolimReport {
    pub seed: u64,
    pub trials: usize,
    /// One per trial and subgroup.
    pub comparisons: usize,
    pub agreements: usize,
    pub failures: Vec<String>,
}

impl HocolimReport {
    pub fn agreement_rate(&self) -> f64 {
        if self.comparisons == 0 {
            1.0
        } else {
            self.agreements as f64 / self.comparisons as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.agreements == self.comparisons
    }
}

/// Vertices as a union of orbits `G/H`, with the permutation action.
struct Vertices {
    stabs: Vec<usize>,
    perms: Vec<Vec<usize>>,
}

impl Vertices {
    fn new(g: &FiniteGroup) -> Self {
        Self { stabs: Vec::new(), perms: vec![Vec::new(); g.order()] }
    }

    fn add_orbit(&mut self, h: &Subgroup, tag: usize) {
        let g = h.group();
        let mut reps: Vec<usize> = g.elements().map(|x| h.coset_rep(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        let base = self.stabs.len();
        let pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, base + i)).collect();
        self.stabs.extend(std::iter::repeat_n(tag, reps.len()));
        for x in g.elements() {
            let p = &mut self.perms[x];
            p.extend(reps.iter().map(|&r| pos[&h.coset_rep(g.mul(x, r))]));
        }
    }

    fn len(&self) -> usize {
        self.stabs.len()
    }

    /// The orbit of a vertex set, if every element keeps its sorted order.
    fn ordered_orbit(&self, s: &[usize]) -> Option<Vec<Vec<usize>>> {
        let mut out = BTreeSet::new();
        for p in &self.perms {
            let img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
            if img.windows(2).any(|w| w[0] >= w[1]) {
                return None;
            }
            out.insert(img);
        }
        Some(out.into_iter().collect())
    }
}

/// Adds a few random edge orbits, and triangles over them, on top of
/// `simplices`, keeping the index order compatible with the action.
fn grow(rng: &mut ChaCha8Rng, v: &Vertices, simplices: &mut BTreeSet<Vec<usize>>, edges: usize) {
    let n = v.len();
    if n < 2 {
        return;
    }
    for _ in 0..edges {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a == b {
            continue;
        }
        let e = [a.min(b), a.max(b)];
        if let Some(orbit) = v.ordered_orbit(&e) {
            simplices.extend(orbit);
        }
    }
    if rng.gen_bool(0.3) {
        let edges: Vec<Vec<usize>> = simplices.iter().filter(|s| s.len() == 2).cloned().collect();
        if let Some(e) = edges.choose(rng) {
            for w in 0..n {
                let mut t = vec![e[0], e[1], w];
                t.sort_unstable();
                t.dedup();
                if t.len() == 3
                    && [[t[0], t[1]], [t[0], t[2]], [t[1], t[2]]].iter().all(|f| simplices.contains(&f.to_vec()))
                {
                    if let Some(orbit) = v.ordered_orbit(&t) {
                        simplices.extend(orbit);
                        break;
                    }
                }
            }
        }
    }
}

fn build(
    g: &FiniteGroup,
    v: &Vertices,
    simplices: &BTreeSet<Vec<usize>>,
) -> (Arc<GSemiSimplicialSet>, HashMap<Vec<usize>, Simplex>) {
    let list: Vec<Vec<usize>> = simplices.iter().cloned().collect();
    let built = from_complex(g, &v.perms, &list).expect("random complex is closed");
    assert!(!built.subdivided, "orbits were chosen order-compatible");
    let x = built.complex;
    let index = x.simplices().map(|s| (x.vertices(s), s)).collect();
    (Arc::new(x), index)
}

fn inclusion(a: &GSemiSimplicialSet, index: &HashMap<Vec<usize>, Simplex>) -> Vec<Vec<usize>> {
    (0..a.levels()).map(|d| a.level(d).map(|s| index[&a.vertices(s)].id).collect()).collect()
}

/// Glues two vertices of equal stabilizer from different orbits, when that
/// keeps `f` isovariant.
fn maybe_fold(rng: &mut ChaCha8Rng, f: GSimplicialMap) -> GSimplicialMap {
    let x = f.dst().clone();
    if x.count(0) < 2 || !rng.gen_bool(0.4) {
        return f;
    }
    let (p, q) = (rng.gen_range(0..x.count(0)), rng.gen_range(0..x.count(0)));
    let (p, q) = (Simplex::new(0, p), Simplex::new(0, q));
    if x.stabilizer(p) != x.stabilizer(q) || x.orbit_of(p).contains(&q) {
        return f;
    }
    let Ok(qt) = quotient(&x, &[(p, q)]) else { return f };
    let folded = f.then(&qt.projection(x)).expect("composable");
    if folded.is_isovariant() {
        folded
    } else {
        f
    }
}

/// A random small span `B ← A → C` over `G` with isovariant,
/// nondegenerate legs. The legs are inclusions, sometimes followed by
/// gluing two vertices.
pub fn random_pushout_data(rng: &mut ChaCha8Rng, g: &FiniteGroup) -> PushoutData {
    let subs = all_subgroups(g);
    let mut va = Vertices::new(g);
    for _ in 0..rng.gen_range(1..=2) {
        let k = rng.gen_range(0..subs.len());
        va.add_orbit(&subs[k], k);
    }
    let mut sa: BTreeSet<Vec<usize>> = (0..va.len()).map(|v| vec![v]).collect();
    grow(rng, &va, &mut sa, 2);
    let (a, _) = build(g, &va, &sa);

    let leg = |rng: &mut ChaCha8Rng| {
        let mut vb = Vertices { stabs: va.stabs.clone(), perms: va.perms.clone() };
        for _ in 0..rng.gen_range(0..=2) {
            let k = rng.gen_range(0..subs.len());
            vb.add_orbit(&subs[k], k);
        }
        let mut sb = sa.clone();
        sb.extend((0..vb.len()).map(|v| vec![v]));
        grow(rng, &vb, &mut sb, 3);
        let (b, index) = build(g, &vb, &sb);
        let levels = inclusion(&a, &index);
        let f = GSimplicialMap::from_levels(a.clone(), b, levels).expect("inclusion");
        maybe_fold(rng, f)
    };
    let f = leg(rng);
    let h = leg(rng);
    PushoutData::new(f, h).expect("legs are isovariant inclusions or safe folds")
}

/// `π₀` of the `H`-stratum of the double mapping cylinder, against the
/// pushout of the sets `π₀ B_H ← A_H → π₀ C_H` computed from adjacency.
pub fn compare_pi0(d: &PushoutData, h: &Subgroup, hc: &GSemiSimplicialSet) -> (usize, usize) {
    let lhs = stratum_pi0(hc, &exact_stratum(hc, h)).count;
    let (b, c) = (d.b(), d.c());
    let (sb, sc) = (exact_stratum(b, h), exact_stratum(c, h));
    let (nb, lb) = components_of(b, &sb.simplices);
    let (nc, lc) = components_of(c, &sc.simplices);
    let mut uf = UnionFind::<usize>::new(nb + nc);
    for s in exact_stratum(d.a(), h).simplices {
        let x = sb.simplices.binary_search(&d.f.image(s).simplex).expect("isovariant leg");
        let y = sc.simplices.binary_search(&d.g.image(s).simplex).expect("isovariant leg");
        uf.union(lb[x], nb + lc[y]);
    }
    let mut roots: Vec<usize> = (0..nb + nc).map(|i| uf.find(i)).collect();
    roots.sort_unstable();
    roots.dedup();
    (lhs, roots.len())
}

/// Random spans over `G`; for every trial and every subgroup compares the
/// two sides of [`compare_pi0`]. Trial `i` uses seed `seed + i`.
pub fn hocolim_pi0_property_test(seed: u64, trials: usize, g: &FiniteGroup) -> Result<HocolimReport, ColimitError> {
    let subs = all_subgroups(g);
    let mut r = HocolimReport { seed, trials, ..Default::default() };
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t as u64));
        let d = random_pushout_data(&mut rng, g);
        let hc = double_mapping_cylinder(&d)?;
        for h in &subs {
            r.comparisons += 1;
            let (lhs, rhs) = compare_pi0(&d, h, &hc.complex);
            if lhs == rhs {
                r.agreements += 1;
            } else if r.failures.len() < 20 {
                r.failures.push(format!("trial {t}, subgroup of order {}: cylinder {lhs}, pushout {rhs}", h.order()));
            }
        }
    }
    Ok(r)
}
