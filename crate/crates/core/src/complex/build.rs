use std::collections::{BTreeSet, HashMap};

use crate::group::FiniteGroup;

use super::{ComplexError, GSemiSimplicialSet};

/// Output of [`from_complex`].
#[derive(Clone, Debug)]
pub struct BuiltComplex {
    pub complex: GSemiSimplicialSet,
    /// Whether a barycentric subdivision was needed to order the simplices
    /// compatibly with the action.
    pub subdivided: bool,
    /// For each vertex of the output, the input simplex it stands for (a
    /// single vertex unless subdivided).
    pub vertex_carriers: Vec<Vec<usize>>,
}

/// Builds an ordered `G`-complex from a vertex action (one permutation of
/// `0..n` per group element) and a list of simplices given as vertex sets.
///
/// Simplices are ordered by vertex index, or failing that by vertex orbit.
/// If neither order is respected by the action the complex is subdivided
/// once: vertices become the input simplices, simplices become flags, and
/// flags are ordered by length, which every action respects.
pub fn from_complex(
    group: &FiniteGroup,
    vertex_action: &[Vec<usize>],
    simplices: &[Vec<usize>],
) -> Result<BuiltComplex, ComplexError> {
    let n = vertex_action.first().map_or(0, Vec::len);
    if vertex_action.len() != group.order() {
        return Err(ComplexError::Malformed(format!("need {} vertex permutations", group.order())));
    }
    let mut set: BTreeSet<Vec<usize>> = BTreeSet::new();
    for s in simplices {
        let mut v = s.clone();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() || v.iter().any(|&x| x >= n) {
            return Err(ComplexError::Malformed(format!("bad simplex {s:?}")));
        }
        set.insert(v);
    }
    for s in &set {
        if s.len() > 1 {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                if !set.contains(&f) {
                    return Err(ComplexError::NotClosedUnderFaces);
                }
            }
        }
        for p in vertex_action {
            let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
            img.sort_unstable();
            if !set.contains(&img) {
                return Err(ComplexError::NotClosedUnderAction);
            }
        }
    }
    let tentative = GSemiSimplicialSet::discrete(group, vertex_action.to_vec())?;
    let list: Vec<Vec<usize>> = set.into_iter().collect();

    let index_rank: Vec<usize> = (0..n).collect();
    let mut orbit_rank: Vec<usize> = (0..n).collect();
    orbit_rank.sort_by_key(|&v| (tentative.orbit_of(super::Simplex::new(0, v))[0].id, v));
    let mut rank = vec![0; n];
    for (r, &v) in orbit_rank.iter().enumerate() {
        rank[v] = r;
    }
    for r in [&index_rank, &rank] {
        if let Some(c) = ordered(group, vertex_action, &list, r) {
            let carriers = (0..n).map(|v| vec![v]).collect();
            return Ok(BuiltComplex { complex: c, subdivided: false, vertex_carriers: carriers });
        }
    }

    // Barycentric subdivision: vertices are the input simplices.
    let pos: HashMap<&Vec<usize>, usize> = list.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let sub_action: Vec<Vec<usize>> = vertex_action
        .iter()
        .map(|p| {
            list.iter()
                .map(|s| {
                    let mut img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
                    img.sort_unstable();
                    pos[&img]
                })
                .collect()
        })
        .collect();
    let mut flags: Vec<Vec<usize>> = Vec::new();
    fn extend(list: &[Vec<usize>], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        let last = &list[*cur.last().unwrap()];
        for (j, s) in list.iter().enumerate() {
            if s.len() > last.len() && last.iter().all(|v| s.contains(v)) {
                cur.push(j);
                extend(list, cur, out);
                cur.pop();
            }
        }
    }
    for i in 0..list.len() {
        extend(&list, &mut vec![i], &mut flags);
    }
    let dim_rank: Vec<usize> = {
        let mut order: Vec<usize> = (0..list.len()).collect();
        order.sort_by_key(|&i| (list[i].len(), i));
        let mut r = vec![0; list.len()];
        for (k, &i) in order.iter().enumerate() {
            r[i] = k;
        }
        r
    };
    let complex =
        ordered(group, &sub_action, &flags, &dim_rank).expect("flags ordered by length are respected by every action");
    Ok(BuiltComplex { complex, subdivided: true, vertex_carriers: list })
}

/// Ordered complex on `simplices` (vertex sets), vertices sorted by `rank`;
/// `None` if some group element reverses the order on a simplex.
fn ordered(
    group: &FiniteGroup,
    vertex_action: &[Vec<usize>],
    simplices: &[Vec<usize>],
    rank: &[usize],
) -> Option<GSemiSimplicialSet> {
    let sorted: Vec<Vec<usize>> = simplices
        .iter()
        .map(|s| {
            let mut v = s.clone();
            v.sort_by_key(|&x| rank[x]);
            v
        })
        .collect();
    for s in &sorted {
        for p in vertex_action {
            let img: Vec<usize> = s.iter().map(|&v| p[v]).collect();
            if img.windows(2).any(|w| rank[w[0]] > rank[w[1]]) {
                return None;
            }
        }
    }
    let top = sorted.iter().map(Vec::len).max().unwrap_or(0);
    let mut levels: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    for s in &sorted {
        levels[s.len() - 1].push(s.clone());
    }
    levels[0].sort();
    for l in levels.iter_mut().skip(1) {
        l.sort_by(|a, b| {
            let ka: Vec<usize> = a.iter().map(|&x| rank[x]).collect();
            let kb: Vec<usize> = b.iter().map(|&x| rank[x]).collect();
            ka.cmp(&kb)
        });
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s, i)).collect()).collect();
    let mut faces = Vec::with_capacity(top);
    let mut action = Vec::with_capacity(top);
    for (d, l) in levels.iter().enumerate() {
        let f: Vec<Vec<usize>> = l
            .iter()
            .map(|s| {
                if d == 0 {
                    return Vec::new();
                }
                (0..s.len())
                    .map(|i| {
                        let mut t = s.clone();
                        t.remove(i);
                        index[d - 1][&t]
                    })
                    .collect()
            })
            .collect();
        faces.push(f);
        let a: Vec<Vec<usize>> = vertex_action
            .iter()
            .map(|p| l.iter().map(|s| index[d][&s.iter().map(|&v| p[v]).collect::<Vec<_>>()]).collect())
            .collect();
        action.push(a);
    }
    let names = levels
        .iter()
        .map(|l| l.iter().map(|s| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")).collect())
        .collect();
    let x = GSemiSimplicialSet::new(group, faces, action).ok()?;
    x.with_names(names).ok()
}

/// `Δⁿ` with trivial action.
pub fn standard_simplex(group: &FiniteGroup, n: usize) -> GSemiSimplicialSet {
    let subsets = nonempty_subsets(n + 1, |_| true);
    from_complex(group, &vec![(0..=n).collect(); group.order()], &subsets).expect("simplex").complex
}

/// `∂Δⁿ⁺¹ ≅ Sⁿ` with trivial action; `S⁻¹` is empty.
pub fn sphere(group: &FiniteGroup, n: isize) -> GSemiSimplicialSet {
    if n < 0 {
        return GSemiSimplicialSet::empty(group);
    }
    let k = n as usize + 2;
    let subsets = nonempty_subsets(k, |s| s.len() < k);
    from_complex(group, &vec![(0..k).collect(); group.order()], &subsets).expect("sphere").complex
}

/// `Dⁿ = Δⁿ`, with `Sⁿ⁻¹ = ∂Δⁿ` as its boundary.
pub fn disk(group: &FiniteGroup, n: usize) -> GSemiSimplicialSet {
    standard_simplex(group, n)
}

fn nonempty_subsets(k: usize, keep: impl Fn(&[usize]) -> bool) -> Vec<Vec<usize>> {
    (1u32..(1 << k)).map(|m| (0..k).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()).filter(|s| keep(s)).collect()
}
