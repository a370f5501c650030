use std::fmt;

use crate::group::{Element, FiniteGroup, Subgroup};

use super::ComplexError;

/// A simplex of a [`GSemiSimplicialSet`]: its dimension and its index in
/// that level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub dim: usize,
    pub id: usize,
}

impl Simplex {
    pub fn new(dim: usize, id: usize) -> Self {
        Self { dim, id }
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.id)
    }
}

/// A finite ordered semi-simplicial set with a levelwise `G`-action that
/// commutes with the face maps.
#[derive(Clone)]
pub struct GSemiSimplicialSet {
    group: FiniteGroup,
    /// `faces[d][s][i]` is the index of `dᵢ s` in level `d − 1`.
    faces: Vec<Vec<Vec<usize>>>,
    /// `action[d][g][s]` is the index of `g·s`.
    action: Vec<Vec<Vec<usize>>>,
    names: Vec<Vec<String>>,
}

/// Equality ignores display names.
impl PartialEq for GSemiSimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.faces == other.faces && self.action == other.action
    }
}

impl Eq for GSemiSimplicialSet {}

impl fmt::Debug for GSemiSimplicialSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSemiSimplicialSet(counts={:?}, |G|={})", self.counts(), self.group.order())
    }
}

impl GSemiSimplicialSet {
    /// Validates the simplicial identities, the action axioms and
    /// action/face compatibility.
    pub fn new(
        group: &FiniteGroup,
        faces: Vec<Vec<Vec<usize>>>,
        action: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, ComplexError> {
        let x = Self::from_parts_unchecked(group, faces, action);
        x.validate()?;
        Ok(x)
    }

    /// Same as [`new`](Self::new) with every group element acting trivially.
    pub fn with_trivial_action(group: &FiniteGroup, faces: Vec<Vec<Vec<usize>>>) -> Result<Self, ComplexError> {
        let action = faces.iter().map(|lvl| vec![(0..lvl.len()).collect(); group.order()]).collect();
        Self::new(group, faces, action)
    }

    pub(crate) fn from_parts_unchecked(
        group: &FiniteGroup,
        mut faces: Vec<Vec<Vec<usize>>>,
        mut action: Vec<Vec<Vec<usize>>>,
    ) -> Self {
        while faces.last().is_some_and(Vec::is_empty) {
            faces.pop();
        }
        action.truncate(faces.len());
        Self { group: group.clone(), faces, action, names: Vec::new() }
    }

    pub fn empty(group: &FiniteGroup) -> Self {
        Self::from_parts_unchecked(group, Vec::new(), Vec::new())
    }

    /// A single `G`-fixed vertex.
    pub fn point(group: &FiniteGroup) -> Self {
        Self::with_trivial_action(group, vec![vec![vec![]]]).expect("point is valid")
    }

    /// The discrete `G`-set given by one permutation of `0..n` per element.
    pub fn discrete(group: &FiniteGroup, perms: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        let n = perms.first().map_or(0, Vec::len);
        Self::new(group, vec![vec![vec![]; n]], vec![perms])
    }

    /// `G/H` as a discrete set, points indexed by sorted canonical coset
    /// representatives.
    pub fn orbit(h: &Subgroup) -> Self {
        let g = h.group();
        let mut reps: Vec<Element> = g.elements().map(|x| h.coset_rep(x)).collect();
        reps.sort_unstable();
        reps.dedup();
        let pos = |r: Element| reps.binary_search(&r).expect("rep");
        let perms = g.elements().map(|a| reps.iter().map(|&r| pos(h.coset_rep(g.mul(a, r)))).collect()).collect();
        Self::discrete(g, perms).expect("coset action is an action")
    }

    pub fn with_names(mut self, names: Vec<Vec<String>>) -> Result<Self, ComplexError> {
        if names.len() != self.faces.len() || names.iter().zip(&self.faces).any(|(n, f)| n.len() != f.len()) {
            return Err(ComplexError::Malformed("name list does not match level sizes".into()));
        }
        self.names = names;
        Ok(self)
    }

    pub fn name(&self, s: Simplex) -> String {
        self.names.get(s.dim).and_then(|l| l.get(s.id)).cloned().unwrap_or_else(|| s.to_string())
    }

    pub fn has_names(&self) -> bool {
        !self.names.is_empty()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Number of levels (top dimension + 1); zero for the empty complex.
    pub fn levels(&self) -> usize {
        self.faces.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn simplices(&self) -> impl Iterator<Item = Simplex> + '_ {
        self.faces.iter().enumerate().flat_map(|(d, l)| (0..l.len()).map(move |i| Simplex::new(d, i)))
    }

    pub fn level(&self, dim: usize) -> impl Iterator<Item = Simplex> {
        (0..self.count(dim)).map(move |i| Simplex::new(dim, i))
    }

    pub fn face(&self, s: Simplex, i: usize) -> Simplex {
        Simplex::new(s.dim - 1, self.faces[s.dim][s.id][i])
    }

    pub fn face_ids(&self, s: Simplex) -> &[usize] {
        &self.faces[s.dim][s.id]
    }

    pub fn face_table(&self) -> &[Vec<Vec<usize>>] {
        &self.faces
    }

    pub fn action_table(&self) -> &[Vec<Vec<usize>>] {
        &self.action
    }

    pub fn act(&self, g: Element, s: Simplex) -> Simplex {
        Simplex::new(s.dim, self.action[s.dim][g][s.id])
    }

    /// Ordered vertex list of `s`.
    pub fn vertices(&self, s: Simplex) -> Vec<usize> {
        (0..=s.dim).map(|i| self.vertex(s, i)).collect()
    }

    pub fn vertex(&self, mut s: Simplex, mut i: usize) -> usize {
        while s.dim > 0 {
            if i < s.dim {
                s = self.face(s, s.dim);
            } else {
                s = self.face(s, 0);
                i -= 1;
            }
        }
        s.id
    }

    /// `{g : g·s = s}`; for ordered simplices this fixes `s` pointwise.
    pub fn stabilizer(&self, s: Simplex) -> Subgroup {
        let elems: Vec<Element> = self.group.elements().filter(|&g| self.action[s.dim][g][s.id] == s.id).collect();
        Subgroup::from_sorted_unchecked(&self.group, elems)
    }

    /// The orbit of `s`, sorted.
    pub fn orbit_of(&self, s: Simplex) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = self.group.elements().map(|g| self.act(g, s)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// One representative (the smallest index) per orbit in level `dim`.
    pub fn orbit_representatives(&self, dim: usize) -> Vec<Simplex> {
        self.level(dim).filter(|&s| self.group.elements().all(|g| self.action[dim][g][s.id] >= s.id)).collect()
    }

    /// All `(coface, i)` with `dᵢ(coface) = s`, for every simplex.
    pub fn coface_index(&self) -> Vec<Vec<Vec<(usize, usize)>>> {
        let mut out: Vec<Vec<Vec<(usize, usize)>>> = self.faces.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for d in 1..self.faces.len() {
            for (s, fs) in self.faces[d].iter().enumerate() {
                for (i, &f) in fs.iter().enumerate() {
                    out[d - 1][f].push((s, i));
                }
            }
        }
        out
    }

    /// Whether the action is trivial on every level.
    pub fn has_trivial_action(&self) -> bool {
        self.action.iter().all(|lvl| lvl.iter().all(|p| p.iter().enumerate().all(|(i, &j)| i == j)))
    }

    /// Connected components of the whole complex (by face adjacency).
    pub fn component_count(&self) -> usize {
        let all: Vec<Simplex> = self.simplices().collect();
        super::strata::components_of(self, &all).0
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        let g = &self.group;
        if self.action.len() != self.faces.len() {
            return Err(ComplexError::Malformed("action has the wrong number of levels".into()));
        }
        for (d, lvl) in self.faces.iter().enumerate() {
            for (s, fs) in lvl.iter().enumerate() {
                let expected = if d == 0 { 0 } else { d + 1 };
                if fs.len() != expected {
                    return Err(ComplexError::Malformed(format!("simplex {d}:{s} has {} faces", fs.len())));
                }
                if d > 0 {
                    if let Some(&bad) = fs.iter().find(|&&f| f >= self.faces[d - 1].len()) {
                        return Err(ComplexError::FaceOutOfRange { simplex: Simplex::new(d, s), face: bad });
                    }
                }
            }
        }
        for d in 2..self.faces.len() {
            for s in 0..self.faces[d].len() {
                for j in 0..=d {
                    for i in 0..j {
                        let a = self.faces[d - 1][self.faces[d][s][j]][i];
                        let b = self.faces[d - 1][self.faces[d][s][i]][j - 1];
                        if a != b {
                            return Err(ComplexError::SimplicialIdentity { simplex: Simplex::new(d, s), i, j });
                        }
                    }
                }
            }
        }
        for (d, lvl) in self.action.iter().enumerate() {
            let n = self.faces[d].len();
            if lvl.len() != g.order() {
                return Err(ComplexError::Malformed(format!("level {d} action needs {} permutations", g.order())));
            }
            for (x, p) in lvl.iter().enumerate() {
                let mut seen = vec![false; n];
                if p.len() != n || p.iter().any(|&y| y >= n || std::mem::replace(&mut seen[y], true)) {
                    return Err(ComplexError::NotAPermutation { dim: d, element: x });
                }
            }
            if lvl[g.identity()].iter().enumerate().any(|(i, &j)| i != j) {
                return Err(ComplexError::NotAnAction { dim: d });
            }
            for a in g.elements() {
                for b in g.elements() {
                    let ab = g.mul(a, b);
                    if (0..n).any(|s| lvl[a][lvl[b][s]] != lvl[ab][s]) {
                        return Err(ComplexError::NotAnAction { dim: d });
                    }
                }
            }
        }
        for d in 1..self.faces.len() {
            for x in g.elements() {
                for s in 0..self.faces[d].len() {
                    let gs = self.action[d][x][s];
                    for i in 0..=d {
                        if self.faces[d][gs][i] != self.action[d - 1][x][self.faces[d][s][i]] {
                            return Err(ComplexError::ActionFaceMismatch { simplex: Simplex::new(d, s), element: x });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `X ⊔ Y` with the two inclusion offsets per level.
    pub fn disjoint_union(&self, other: &Self) -> Result<(Self, Vec<usize>, Vec<usize>), ComplexError> {
        if self.group != other.group {
            return Err(ComplexError::GroupMismatch);
        }
        let levels = self.levels().max(other.levels());
        let mut faces = Vec::with_capacity(levels);
        let mut action = Vec::with_capacity(levels);
        let (mut off_a, mut off_b) = (Vec::new(), Vec::new());
        for d in 0..levels {
            let (na, nb) = (self.count(d), other.count(d));
            off_a.push(0);
            off_b.push(na);
            let below = if d > 0 { self.count(d - 1) } else { 0 };
            let mut lvl: Vec<Vec<usize>> = Vec::with_capacity(na + nb);
            lvl.extend((0..na).map(|s| self.faces[d][s].clone()));
            lvl.extend((0..nb).map(|s| other.faces[d][s].iter().map(|&f| f + below).collect()));
            faces.push(lvl);
            let act: Vec<Vec<usize>> = self
                .group
                .elements()
                .map(|x| {
                    let mut p = Vec::with_capacity(na + nb);
                    p.extend((0..na).map(|s| self.action[d][x][s]));
                    p.extend((0..nb).map(|s| other.action[d][x][s] + na));
                    p
                })
                .collect();
            action.push(act);
        }
        let mut out = Self::from_parts_unchecked(&self.group, faces, action);
        if self.has_names() || other.has_names() {
            let names = (0..levels)
                .map(|d| {
                    let mut l: Vec<String> = self.level(d).map(|s| self.name(s)).collect();
                    l.extend(other.level(d).map(|s| other.name(s)));
                    l
                })
                .collect();
            out.names = names;
        }
        Ok((out, off_a, off_b))
    }

    /// The sub-semi-simplicial set on a face-closed, `G`-invariant set of
    /// simplices. Returns it with the old index of every new simplex.
    pub fn subcomplex(&self, keep: &[Vec<bool>]) -> Result<(Self, Vec<Vec<usize>>), ComplexError> {
        let mut new_id: Vec<Vec<Option<usize>>> = Vec::with_capacity(self.levels());
        let mut old: Vec<Vec<usize>> = Vec::with_capacity(self.levels());
        for d in 0..self.levels() {
            let mut ids = vec![None; self.count(d)];
            let mut o = Vec::new();
            for (s, id) in ids.iter_mut().enumerate() {
                if keep.get(d).and_then(|l| l.get(s)).copied().unwrap_or(false) {
                    *id = Some(o.len());
                    o.push(s);
                }
            }
            new_id.push(ids);
            old.push(o);
        }
        let mut faces = Vec::with_capacity(self.levels());
        let mut action = Vec::with_capacity(self.levels());
        for d in 0..self.levels() {
            let mut lvl = Vec::with_capacity(old[d].len());
            for &s in &old[d] {
                let fs = self.faces[d][s]
                    .iter()
                    .map(|&f| new_id[d - 1][f].ok_or(ComplexError::NotClosedUnderFaces))
                    .collect::<Result<Vec<_>, _>>()?;
                lvl.push(fs);
            }
            faces.push(lvl);
            let act = self
                .group
                .elements()
                .map(|x| {
                    old[d]
                        .iter()
                        .map(|&s| new_id[d][self.action[d][x][s]].ok_or(ComplexError::NotClosedUnderAction))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            action.push(act);
        }
        let mut out = Self::from_parts_unchecked(&self.group, faces, action);
        if self.has_names() {
            out.names =
                old.iter().enumerate().map(|(d, o)| o.iter().map(|&s| self.names[d][s].clone()).collect()).collect();
            out.names.truncate(out.faces.len());
        }
        old.truncate(out.faces.len());
        Ok((out, old))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    fn c2() -> FiniteGroup {
        families::cyclic(2).unwrap()
    }

    #[test]
    fn free_orbit_and_point() {
        let g = c2();
        let x = GSemiSimplicialSet::orbit(&Subgroup::trivial(&g));
        assert_eq!(x.counts(), vec![2]);
        assert!(x.stabilizer(Simplex::new(0, 0)).is_trivial());
        let p = GSemiSimplicialSet::point(&g);
        assert!(p.stabilizer(Simplex::new(0, 0)).is_whole());
    }

    #[test]
    fn rejects_broken_identities() {
        let g = c2();
        // a 2-simplex whose faces do not agree on vertices
        let faces = vec![
            vec![vec![], vec![], vec![], vec![]],
            vec![vec![1, 0], vec![2, 1], vec![2, 0], vec![3, 0]],
            vec![vec![1, 3, 0]],
        ];
        assert!(matches!(
            GSemiSimplicialSet::with_trivial_action(&g, faces),
            Err(ComplexError::SimplicialIdentity { .. })
        ));
    }

    #[test]
    fn rejects_action_not_commuting_with_faces() {
        let g = c2();
        // one edge 0→1; swapping the endpoints but fixing the edge is incoherent
        let faces = vec![vec![vec![], vec![]], vec![vec![1, 0]]];
        let action = vec![vec![vec![0, 1], vec![1, 0]], vec![vec![0], vec![0]]];
        assert!(matches!(GSemiSimplicialSet::new(&g, faces, action), Err(ComplexError::ActionFaceMismatch { .. })));
    }

    #[test]
    fn vertices_of_a_triangle() {
        let g = c2();
        // vertices 0,1,2; edges [0,1],[0,2],[1,2]; triangle [0,1,2]
        let faces = vec![vec![vec![], vec![], vec![]], vec![vec![1, 0], vec![2, 0], vec![2, 1]], vec![vec![2, 1, 0]]];
        let x = GSemiSimplicialSet::with_trivial_action(&g, faces).unwrap();
        assert_eq!(x.vertices(Simplex::new(2, 0)), vec![0, 1, 2]);
        assert_eq!(x.vertices(Simplex::new(1, 1)), vec![0, 2]);
        assert_eq!(x.component_count(), 1);
    }

    #[test]
    fn union_and_subcomplex() {
        let g = c2();
        let free = GSemiSimplicialSet::orbit(&Subgroup::trivial(&g));
        let fixed = GSemiSimplicialSet::point(&g);
        let (u, _, off) = free.disjoint_union(&fixed).unwrap();
        u.validate().unwrap();
        assert_eq!(u.counts(), vec![3]);
        assert_eq!(off, vec![2]);
        let (sub, old) = u.subcomplex(&[vec![true, true, false]]).unwrap();
        assert_eq!(sub, free);
        assert_eq!(old, vec![vec![0, 1]]);
        assert_eq!(u.subcomplex(&[vec![true, false, false]]).unwrap_err(), ComplexError::NotClosedUnderAction);
    }
}
