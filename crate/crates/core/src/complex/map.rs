use std::sync::Arc;

use crate::group::Subgroup;

use super::{ComplexError, GSemiSimplicialSet, Simplex};

/// Where a `d`-simplex goes: a target simplex `τ` of dimension `e ≤ d` and a
/// monotone surjection `[d] → [e]` telling which vertices collapse.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexImage {
    pub simplex: Simplex,
    pub surjection: Vec<usize>,
}

impl SimplexImage {
    pub fn nondegenerate(simplex: Simplex) -> Self {
        Self { simplex, surjection: (0..=simplex.dim).collect() }
    }

    /// `τ` with every vertex of a `d`-simplex sent to its single vertex.
    pub fn collapsed(vertex: usize, d: usize) -> Self {
        Self { simplex: Simplex::new(0, vertex), surjection: vec![0; d + 1] }
    }

    pub fn source_dim(&self) -> usize {
        self.surjection.len() - 1
    }

    pub fn is_degenerate(&self) -> bool {
        self.simplex.dim + 1 != self.surjection.len()
    }

    /// Whether the surjection is monotone and onto `[simplex.dim]`.
    pub fn is_well_formed(&self) -> bool {
        let s = &self.surjection;
        !s.is_empty()
            && s[0] == 0
            && *s.last().unwrap() == self.simplex.dim
            && s.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1)
    }

    /// `dᵢ` of the image, computed in `target`.
    pub fn face(&self, target: &GSemiSimplicialSet, i: usize) -> SimplexImage {
        let v = self.surjection[i];
        let mut rest = self.surjection.clone();
        rest.remove(i);
        if rest.contains(&v) {
            SimplexImage { simplex: self.simplex, surjection: rest }
        } else {
            for x in rest.iter_mut().filter(|x| **x > v) {
                *x -= 1;
            }
            SimplexImage { simplex: target.face(self.simplex, v), surjection: rest }
        }
    }

    pub fn act(&self, target: &GSemiSimplicialSet, g: usize) -> SimplexImage {
        SimplexImage { simplex: target.act(g, self.simplex), surjection: self.surjection.clone() }
    }

    /// Image under a further map `h`.
    pub fn then(&self, h: &GSimplicialMap) -> SimplexImage {
        let next = h.image(self.simplex);
        SimplexImage {
            simplex: next.simplex,
            surjection: self.surjection.iter().map(|&j| next.surjection[j]).collect(),
        }
    }
}

/// A map of semi-simplicial sets, allowed to collapse simplices.
#[derive(Clone, Debug)]
pub struct GSimplicialMap {
    src: Arc<GSemiSimplicialSet>,
    dst: Arc<GSemiSimplicialSet>,
    images: Vec<Vec<SimplexImage>>,
}

impl PartialEq for GSimplicialMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images && self.src == other.src && self.dst == other.dst
    }
}

impl Eq for GSimplicialMap {}

impl GSimplicialMap {
    /// Validates shapes and compatibility with faces. Equivariance is
    /// checked separately by [`is_equivariant`](Self::is_equivariant).
    pub fn new(
        src: Arc<GSemiSimplicialSet>,
        dst: Arc<GSemiSimplicialSet>,
        images: Vec<Vec<SimplexImage>>,
    ) -> Result<Self, ComplexError> {
        let f = Self::from_parts_unchecked(src, dst, images);
        f.validate()?;
        Ok(f)
    }

    /// Nondegenerate map given by a target index per simplex.
    pub fn from_levels(
        src: Arc<GSemiSimplicialSet>,
        dst: Arc<GSemiSimplicialSet>,
        levels: Vec<Vec<usize>>,
    ) -> Result<Self, ComplexError> {
        let images = levels
            .into_iter()
            .enumerate()
            .map(|(d, l)| l.into_iter().map(|t| SimplexImage::nondegenerate(Simplex::new(d, t))).collect())
            .collect();
        Self::new(src, dst, images)
    }

    pub(crate) fn from_parts_unchecked(
        src: Arc<GSemiSimplicialSet>,
        dst: Arc<GSemiSimplicialSet>,
        images: Vec<Vec<SimplexImage>>,
    ) -> Self {
        Self { src, dst, images }
    }

    pub fn identity(x: Arc<GSemiSimplicialSet>) -> Self {
        let images = (0..x.levels()).map(|d| x.level(d).map(SimplexImage::nondegenerate).collect()).collect();
        Self { src: x.clone(), dst: x, images }
    }

    /// Every simplex collapsed onto vertex `v` of `dst`.
    pub fn constant(
        src: Arc<GSemiSimplicialSet>,
        dst: Arc<GSemiSimplicialSet>,
        v: usize,
    ) -> Result<Self, ComplexError> {
        let images = (0..src.levels()).map(|d| vec![SimplexImage::collapsed(v, d); src.count(d)]).collect();
        Self::new(src, dst, images)
    }

    pub fn src(&self) -> &Arc<GSemiSimplicialSet> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<GSemiSimplicialSet> {
        &self.dst
    }

    pub fn image(&self, s: Simplex) -> &SimplexImage {
        &self.images[s.dim][s.id]
    }

    pub fn images(&self) -> &[Vec<SimplexImage>] {
        &self.images
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.images.iter().flatten().all(|im| !im.is_degenerate())
    }

    /// Target indices per level, if no simplex is collapsed.
    pub fn levels(&self) -> Option<Vec<Vec<usize>>> {
        self.is_nondegenerate()
            .then(|| self.images.iter().map(|l| l.iter().map(|im| im.simplex.id).collect()).collect())
    }

    pub fn validate(&self) -> Result<(), ComplexError> {
        if self.src.group() != self.dst.group() {
            return Err(ComplexError::GroupMismatch);
        }
        if self.images.len() != self.src.levels() {
            return Err(ComplexError::Malformed("map has the wrong number of levels".into()));
        }
        for s in self.src.simplices() {
            let im = self
                .images
                .get(s.dim)
                .and_then(|l| l.get(s.id))
                .ok_or_else(|| ComplexError::Malformed(format!("no image for simplex {s}")))?;
            if im.source_dim() != s.dim || !im.is_well_formed() || im.simplex.id >= self.dst.count(im.simplex.dim) {
                return Err(ComplexError::Malformed(format!("bad image for simplex {s}")));
            }
        }
        for (d, l) in self.images.iter().enumerate() {
            if l.len() != self.src.count(d) {
                return Err(ComplexError::Malformed(format!("level {d} has {} images", l.len())));
            }
        }
        for s in self.src.simplices().filter(|s| s.dim > 0) {
            for i in 0..=s.dim {
                if self.image(self.src.face(s, i)) != &self.image(s).face(&self.dst, i) {
                    return Err(ComplexError::FaceMismatch { simplex: s, face: i });
                }
            }
        }
        Ok(())
    }

    /// First simplex `s` and element `g` with `f(g·s) ≠ g·f(s)`.
    pub fn equivariance_counterexample(&self) -> Option<(Simplex, usize)> {
        let g = self.src.group();
        self.src.simplices().find_map(|s| {
            g.elements().find(|&x| self.image(self.src.act(x, s)) != &self.image(s).act(&self.dst, x)).map(|x| (s, x))
        })
    }

    pub fn is_equivariant(&self) -> bool {
        self.equivariance_counterexample().is_none()
    }

    /// Equivariant and stabilizer-preserving; on failure the offending simplex.
    pub fn check_isovariant(&self) -> Result<(), IsovarianceFailure> {
        if let Some((simplex, element)) = self.equivariance_counterexample() {
            return Err(IsovarianceFailure::NotEquivariant { simplex, element });
        }
        for s in self.src.simplices() {
            let (a, b) = (self.src.stabilizer(s), self.dst.stabilizer(self.image(s).simplex));
            if a != b {
                return Err(IsovarianceFailure::StabilizerChanged { simplex: s, source: a, target: b });
            }
        }
        Ok(())
    }

    pub fn is_isovariant(&self) -> bool {
        self.check_isovariant().is_ok()
    }

    /// `h ∘ self`.
    pub fn then(&self, h: &GSimplicialMap) -> Result<GSimplicialMap, ComplexError> {
        if !Arc::ptr_eq(&self.dst, &h.src) && self.dst != h.src {
            return Err(ComplexError::NotComposable);
        }
        let images = self.images.iter().map(|l| l.iter().map(|im| im.then(h)).collect()).collect();
        Ok(Self { src: self.src.clone(), dst: h.dst.clone(), images })
    }

    /// Whether each level is injective and no simplex is collapsed.
    pub fn is_injective(&self) -> bool {
        self.is_nondegenerate()
            && self.images.iter().all(|l| {
                let mut ids: Vec<usize> = l.iter().map(|im| im.simplex.id).collect();
                ids.sort_unstable();
                ids.windows(2).all(|w| w[0] != w[1])
            })
    }
}

/// Why a map is not isovariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsovarianceFailure {
    NotEquivariant { simplex: Simplex, element: usize },
    StabilizerChanged { simplex: Simplex, source: Subgroup, target: Subgroup },
}

impl IsovarianceFailure {
    pub fn simplex(&self) -> Simplex {
        match self {
            Self::NotEquivariant { simplex, .. } | Self::StabilizerChanged { simplex, .. } => *simplex,
        }
    }
}

impl std::fmt::Display for IsovarianceFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::NotEquivariant { simplex, element } => {
                write!(f, "simplex {simplex}: f(g·σ) ≠ g·f(σ) for g = {element}")
            }
            Self::StabilizerChanged { simplex, source, target } => write!(
                f,
                "simplex {simplex}: stabilizer {:?} maps to a simplex with stabilizer {:?}",
                source.elements(),
                target.elements()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{families, Subgroup};

    #[test]
    fn face_of_degenerate_image() {
        let g = families::cyclic(2).unwrap();
        let edge = GSemiSimplicialSet::with_trivial_action(&g, vec![vec![vec![], vec![]], vec![vec![1, 0]]]).unwrap();
        // a 2-simplex sent onto the edge with vertices 0,1 ↦ 0 and 2 ↦ 1
        let im = SimplexImage { simplex: Simplex::new(1, 0), surjection: vec![0, 0, 1] };
        assert_eq!(im.face(&edge, 0), SimplexImage { simplex: Simplex::new(1, 0), surjection: vec![0, 1] });
        assert_eq!(im.face(&edge, 2), SimplexImage { simplex: Simplex::new(0, 0), surjection: vec![0, 0] });
    }

    #[test]
    fn free_orbit_to_point_is_equivariant_not_isovariant() {
        let g = families::cyclic(2).unwrap();
        let free = Arc::new(GSemiSimplicialSet::orbit(&Subgroup::trivial(&g)));
        let pt = Arc::new(GSemiSimplicialSet::point(&g));
        let f = GSimplicialMap::constant(free.clone(), pt.clone(), 0).unwrap();
        assert!(f.is_equivariant());
        let err = f.check_isovariant().unwrap_err();
        assert!(matches!(err, IsovarianceFailure::StabilizerChanged { .. }));
        let id = GSimplicialMap::identity(free);
        assert!(id.is_isovariant());
        assert_eq!(id.then(&f).unwrap(), f);
    }

    #[test]
    fn non_simplicial_assignment_is_rejected() {
        let g = families::cyclic(2).unwrap();
        let edge = Arc::new(
            GSemiSimplicialSet::with_trivial_action(&g, vec![vec![vec![], vec![]], vec![vec![1, 0]]]).unwrap(),
        );
        let res = GSimplicialMap::from_levels(edge.clone(), edge, vec![vec![1, 0], vec![0]]);
        assert!(matches!(res, Err(ComplexError::FaceMismatch { .. })));
    }
}
