use std::collections::BTreeMap;

use crate::complex::{GSemiSimplicialSet, Simplex};
use crate::group::Element;

use super::{ColimitError, DEFAULT_BUDGET};

/// A levelwise bijection `X → Y` commuting with faces and the action:
/// `levels[d][s]` is the image of `(d, s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GIsomorphism {
    pub levels: Vec<Vec<usize>>,
}

impl GIsomorphism {
    /// Independent check of the witness.
    pub fn verify(&self, x: &GSemiSimplicialSet, y: &GSemiSimplicialSet) -> bool {
        if x.counts() != y.counts() || self.levels.len() != x.levels() {
            return false;
        }
        for (d, l) in self.levels.iter().enumerate() {
            let mut seen = vec![false; y.count(d)];
            for &t in l {
                if t >= seen.len() || std::mem::replace(&mut seen[t], true) {
                    return false;
                }
            }
        }
        x.simplices().all(|s| {
            let t = Simplex::new(s.dim, self.levels[s.dim][s.id]);
            let faces_ok =
                s.dim == 0 || (0..=s.dim).all(|i| self.levels[s.dim - 1][x.face(s, i).id] == y.face(t, i).id);
            faces_ok && x.group().elements().all(|g| self.levels[s.dim][x.act(g, s).id] == y.act(g, t).id)
        })
    }
}

pub fn g_isomorphic(x: &GSemiSimplicialSet, y: &GSemiSimplicialSet) -> Result<Option<GIsomorphism>, ColimitError> {
    g_isomorphic_with_budget(x, y, DEFAULT_BUDGET)
}

/// Per simplex: the stabilizer, and for each face slot the number of
/// cofaces attached there.
type Signature = (Vec<Element>, Vec<usize>);

fn signatures(x: &GSemiSimplicialSet) -> Vec<Vec<Signature>> {
    let cof = x.coface_index();
    (0..x.levels())
        .map(|d| {
            x.level(d)
                .map(|s| {
                    let mut slots = vec![0; d + 2];
                    for &(_, i) in cof.get(d).map(|c| c[s.id].as_slice()).unwrap_or(&[]) {
                        slots[i] += 1;
                    }
                    (x.stabilizer(s).elements().to_vec(), slots)
                })
                .collect()
        })
        .collect()
}

fn tally(s: &[Signature]) -> BTreeMap<&Signature, usize> {
    let mut m = BTreeMap::new();
    for k in s {
        *m.entry(k).or_default() += 1;
    }
    m
}

struct Search<'a> {
    x: &'a GSemiSimplicialSet,
    y: &'a GSemiSimplicialSet,
    sx: Vec<Vec<Signature>>,
    sy: Vec<Vec<Signature>>,
    fwd: Vec<Vec<Option<usize>>>,
    bwd: Vec<Vec<Option<usize>>>,
    trail: Vec<(usize, usize, usize)>,
    order: Vec<Simplex>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Maps `s ↦ t`, its whole orbit, and all faces. Leaves partial work on
    /// the trail when it fails.
    fn assign(&mut self, s: Simplex, t: usize) -> bool {
        let mut stack = vec![(s, t)];
        while let Some((s, t)) = stack.pop() {
            let d = s.dim;
            if let Some(u) = self.fwd[d][s.id] {
                if u != t {
                    return false;
                }
                continue;
            }
            if self.sx[d][s.id] != self.sy[d][t] {
                return false;
            }
            for g in self.x.group().elements() {
                let gs = self.x.act(g, s);
                let gt = self.y.act(g, Simplex::new(d, t));
                match (self.fwd[d][gs.id], self.bwd[d][gt.id]) {
                    (Some(u), _) if u == gt.id => continue,
                    (None, None) => {}
                    _ => return false,
                }
                self.fwd[d][gs.id] = Some(gt.id);
                self.bwd[d][gt.id] = Some(gs.id);
                self.trail.push((d, gs.id, gt.id));
                if d > 0 {
                    for i in 0..=d {
                        stack.push((self.x.face(gs, i), self.y.face(gt, i).id));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (d, s, t) = self.trail.pop().unwrap();
            self.fwd[d][s] = None;
            self.bwd[d][t] = None;
        }
    }

    fn search(&mut self, pos: usize) -> Result<bool, ColimitError> {
        let mut pos = pos;
        while pos < self.order.len() && self.fwd[self.order[pos].dim][self.order[pos].id].is_some() {
            pos += 1;
        }
        let Some(&s) = self.order.get(pos) else {
            return Ok(true);
        };
        for t in 0..self.y.count(s.dim) {
            if self.bwd[s.dim][t].is_some() || self.sx[s.dim][s.id] != self.sy[s.dim][t] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(ColimitError::SearchBudgetExceeded { budget: self.budget });
            }
            let mark = self.trail.len();
            if self.assign(s, t) && self.search(pos + 1)? {
                return Ok(true);
            }
            self.undo(mark);
        }
        Ok(false)
    }
}

/// Backtracking search for a `G`-isomorphism. Top simplices are assigned
/// first, one orbit at a time, and faces follow by propagation; candidates
/// must match the stabilizer and the coface counts per face slot.
pub fn g_isomorphic_with_budget(
    x: &GSemiSimplicialSet,
    y: &GSemiSimplicialSet,
    budget: u64,
) -> Result<Option<GIsomorphism>, ColimitError> {
    if x.group() != y.group() {
        return Err(ColimitError::Malformed("complexes live over different groups".into()));
    }
    if x.counts() != y.counts() {
        return Ok(None);
    }
    let (sx, sy) = (signatures(x), signatures(y));
    for d in 0..x.levels() {
        if tally(&sx[d]) != tally(&sy[d]) {
            return Ok(None);
        }
    }
    let order: Vec<Simplex> = (0..x.levels()).rev().flat_map(|d| x.orbit_representatives(d)).collect();
    let mut s = Search {
        x,
        y,
        sx,
        sy,
        fwd: (0..x.levels()).map(|d| vec![None; x.count(d)]).collect(),
        bwd: (0..x.levels()).map(|d| vec![None; x.count(d)]).collect(),
        trail: Vec::new(),
        order,
        nodes: 0,
        budget,
    };
    if !s.search(0)? {
        return Ok(None);
    }
    let levels = s.fwd.into_iter().map(|l| l.into_iter().map(|t| t.expect("complete")).collect()).collect();
    let iso = GIsomorphism { levels };
    debug_assert!(iso.verify(x, y));
    Ok(Some(iso))
}
