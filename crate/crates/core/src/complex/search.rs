use std::sync::Arc;

use crate::group::Subgroup;

use super::{ComplexError, GSemiSimplicialSet, GSimplicialMap, Simplex, SimplexImage};

/// Knobs for [`enumerate_isovariant_maps`].
#[derive(Clone, Copy, Debug)]
pub struct EnumerateOptions {
    /// Maximum number of candidate images tried.
    pub budget: u64,
    /// Also allow simplices to be collapsed onto lower-dimensional ones.
    pub allow_degenerate: bool,
    /// Keep only isovariant maps; otherwise every equivariant map.
    pub isovariant: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        Self { budget: 10_000_000, allow_degenerate: false, isovariant: true }
    }
}

/// Monotone surjections `[d] → [e]`.
fn surjections(d: usize, e: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(d: usize, e: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *cur.last().unwrap();
        if cur.len() == d + 1 {
            if last == e {
                out.push(cur.clone());
            }
            return;
        }
        for next in [last, last + 1] {
            if next <= e {
                cur.push(next);
                go(d, e, cur, out);
                cur.pop();
            }
        }
    }
    go(d, e, &mut vec![0], &mut out);
    out
}

struct Enumerator<'a> {
    x: &'a GSemiSimplicialSet,
    y: &'a GSemiSimplicialSet,
    reps: Vec<Simplex>,
    stab_x: Vec<Vec<Subgroup>>,
    stab_y: Vec<Vec<Subgroup>>,
    images: Vec<Vec<Option<SimplexImage>>>,
    opts: EnumerateOptions,
    spent: u64,
    found: Vec<Vec<Vec<SimplexImage>>>,
}

impl Enumerator<'_> {
    fn candidates(&self, s: Simplex) -> Vec<SimplexImage> {
        let d = s.dim;
        let mut out = Vec::new();
        let lowest = if self.opts.allow_degenerate { 0 } else { d };
        for e in lowest..=d.min(self.y.levels().saturating_sub(1)) {
            if self.y.count(e) == 0 {
                continue;
            }
            let surj = surjections(d, e);
            for t in self.y.level(e) {
                for phi in &surj {
                    out.push(SimplexImage { simplex: t, surjection: phi.clone() });
                }
            }
        }
        out
    }

    fn fits(&self, s: Simplex, im: &SimplexImage) -> bool {
        let (a, b) = (&self.stab_x[s.dim][s.id], &self.stab_y[im.simplex.dim][im.simplex.id]);
        let ok = if self.opts.isovariant { a == b } else { a.is_subset_of(b) };
        if !ok {
            return false;
        }
        (0..=s.dim)
            .all(|i| s.dim == 0 || self.images[s.dim - 1][self.x.face(s, i).id].as_ref() == Some(&im.face(self.y, i)))
    }

    fn run(&mut self, k: usize) -> Result<(), ComplexError> {
        if k == self.reps.len() {
            let done = self.images.iter().map(|l| l.iter().map(|i| i.clone().expect("assigned")).collect()).collect();
            self.found.push(done);
            return Ok(());
        }
        let s = self.reps[k];
        for im in self.candidates(s) {
            self.spent += 1;
            if self.spent > self.opts.budget {
                return Err(ComplexError::SearchBudgetExceeded { budget: self.opts.budget });
            }
            if !self.fits(s, &im) {
                continue;
            }
            let orbit: Vec<(Simplex, SimplexImage)> =
                self.x.group().elements().map(|g| (self.x.act(g, s), im.act(self.y, g))).collect();
            if orbit.iter().any(|(t, j)| self.images[t.dim][t.id].as_ref().is_some_and(|old| old != j)) {
                continue;
            }
            let fresh: Vec<Simplex> =
                orbit.iter().filter(|(t, _)| self.images[t.dim][t.id].is_none()).map(|p| p.0).collect();
            for (t, j) in &orbit {
                self.images[t.dim][t.id] = Some(j.clone());
            }
            let res = self.run(k + 1);
            for t in fresh {
                self.images[t.dim][t.id] = None;
            }
            res?;
        }
        Ok(())
    }
}

/// Every isovariant (or equivariant) simplicial map `X → Y`, found by
/// choosing images orbit by orbit, lowest dimension first.
pub fn enumerate_isovariant_maps(
    x: &Arc<GSemiSimplicialSet>,
    y: &Arc<GSemiSimplicialSet>,
    opts: EnumerateOptions,
) -> Result<Vec<GSimplicialMap>, ComplexError> {
    if x.group() != y.group() {
        return Err(ComplexError::GroupMismatch);
    }
    let reps = (0..x.levels()).flat_map(|d| x.orbit_representatives(d)).collect();
    let mut e = Enumerator {
        x,
        y,
        reps,
        stab_x: (0..x.levels()).map(|d| x.level(d).map(|s| x.stabilizer(s)).collect()).collect(),
        stab_y: (0..y.levels()).map(|d| y.level(d).map(|s| y.stabilizer(s)).collect()).collect(),
        images: (0..x.levels()).map(|d| vec![None; x.count(d)]).collect(),
        opts,
        spent: 0,
        found: Vec::new(),
    };
    e.run(0)?;
    Ok(e.found.into_iter().map(|images| GSimplicialMap::from_parts_unchecked(x.clone(), y.clone(), images)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(2, 1).len(), 2);
        assert_eq!(surjections(3, 3).len(), 1);
        assert_eq!(surjections(3, 0), vec![vec![0, 0, 0, 0]]);
    }

    #[test]
    fn maps_between_orbits() {
        let g = families::cyclic(2).unwrap();
        let free = Arc::new(GSemiSimplicialSet::orbit(&Subgroup::trivial(&g)));
        let pt = Arc::new(GSemiSimplicialSet::point(&g));
        assert_eq!(enumerate_isovariant_maps(&free, &free, EnumerateOptions::default()).unwrap().len(), 2);
        assert!(enumerate_isovariant_maps(&free, &pt, EnumerateOptions::default()).unwrap().is_empty());
        let eq = EnumerateOptions { isovariant: false, ..Default::default() };
        let maps = enumerate_isovariant_maps(&free, &pt, eq).unwrap();
        assert_eq!(maps.len(), 1);
        assert!(maps[0].is_equivariant() && !maps[0].is_isovariant());
        let tight = EnumerateOptions { budget: 1, ..Default::default() };
        assert!(matches!(
            enumerate_isovariant_maps(&free, &free, tight),
            Err(ComplexError::SearchBudgetExceeded { .. })
        ));
    }
}
