use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::complex::{GSemiSimplicialSet, GSimplicialMap, Simplex, SimplexImage};

use super::ColimitError;

/// `X/∼` for the smallest equivalence relation containing `pairs` that is
/// closed under faces and under the action.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub complex: Arc<GSemiSimplicialSet>,
    /// `class_of[d][s]`: the simplex of the quotient that `(d, s)` lands on.
    pub class_of: Vec<Vec<usize>>,
}

impl Quotient {
    pub fn projection(&self, src: Arc<GSemiSimplicialSet>) -> GSimplicialMap {
        let images = self
            .class_of
            .iter()
            .enumerate()
            .map(|(d, l)| l.iter().map(|&c| SimplexImage::nondegenerate(Simplex::new(d, c))).collect())
            .collect();
        GSimplicialMap::from_parts_unchecked(src, self.complex.clone(), images)
    }

    pub fn class(&self, s: Simplex) -> Simplex {
        Simplex::new(s.dim, self.class_of[s.dim][s.id])
    }
}

pub fn quotient(x: &GSemiSimplicialSet, pairs: &[(Simplex, Simplex)]) -> Result<Quotient, ColimitError> {
    let g = x.group();
    let mut uf: Vec<UnionFind<usize>> = (0..x.levels()).map(|d| UnionFind::new(x.count(d))).collect();
    for &(a, b) in pairs {
        if a.dim != b.dim {
            return Err(ColimitError::Malformed(format!("cannot identify {a} with {b}")));
        }
        uf[a.dim].union(a.id, b.id);
    }
    loop {
        let mut changed = false;
        for d in (0..x.levels()).rev() {
            for s in 0..x.count(d) {
                let r = uf[d].find(s);
                if r == s {
                    continue;
                }
                let (ss, rr) = (Simplex::new(d, s), Simplex::new(d, r));
                if d > 0 {
                    for i in 0..=d {
                        changed |= uf[d - 1].union(x.face(ss, i).id, x.face(rr, i).id);
                    }
                }
                for e in g.elements() {
                    changed |= uf[d].union(x.act(e, ss).id, x.act(e, rr).id);
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut class_of: Vec<Vec<usize>> = Vec::with_capacity(x.levels());
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(x.levels());
    for (d, level_uf) in uf.iter_mut().enumerate() {
        let mut root_class = vec![usize::MAX; x.count(d)];
        let mut cls = Vec::with_capacity(x.count(d));
        let mut r = Vec::new();
        for s in 0..x.count(d) {
            let root = level_uf.find(s);
            if root_class[root] == usize::MAX {
                root_class[root] = r.len();
                r.push(s);
            }
            cls.push(root_class[root]);
        }
        class_of.push(cls);
        reps.push(r);
    }
    let faces = reps
        .iter()
        .enumerate()
        .map(|(d, r)| {
            r.iter()
                .map(|&s| {
                    if d == 0 {
                        Vec::new()
                    } else {
                        x.face_ids(Simplex::new(d, s)).iter().map(|&f| class_of[d - 1][f]).collect()
                    }
                })
                .collect()
        })
        .collect();
    let action = reps
        .iter()
        .enumerate()
        .map(|(d, r)| {
            g.elements().map(|e| r.iter().map(|&s| class_of[d][x.act(e, Simplex::new(d, s)).id]).collect()).collect()
        })
        .collect();
    let complex = GSemiSimplicialSet::new(g, faces, action)?;
    let complex = if x.has_names() {
        let names =
            reps.iter().enumerate().map(|(d, r)| r.iter().map(|&s| x.name(Simplex::new(d, s))).collect()).collect();
        complex.with_names(names)?
    } else {
        complex
    };
    Ok(Quotient { complex: Arc::new(complex), class_of })
}
