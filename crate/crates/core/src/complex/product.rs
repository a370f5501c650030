use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::group::{families, FiniteGroup, Subgroup};

use super::{from_complex, ComplexError, GSemiSimplicialSet, GSimplicialMap, Simplex, SimplexImage};

/// `X × Y` triangulated: a `d`-simplex is a pair of images `(σ, φ)`,
/// `(τ, ψ)` with `φ, ψ` monotone surjections out of `[d]` that are jointly
/// injective. The group acts diagonally.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub complex: Arc<GSemiSimplicialSet>,
    /// `factors[d][s]` = (left image, right image).
    pub factors: Vec<Vec<(SimplexImage, SimplexImage)>>,
    pub left: Arc<GSemiSimplicialSet>,
    pub right: Arc<GSemiSimplicialSet>,
}

impl ProductComplex {
    pub fn projection_left(&self) -> GSimplicialMap {
        let images = self.factors.iter().map(|l| l.iter().map(|(a, _)| a.clone()).collect()).collect();
        GSimplicialMap::from_parts_unchecked(self.complex.clone(), self.left.clone(), images)
    }

    pub fn projection_right(&self) -> GSimplicialMap {
        let images = self.factors.iter().map(|l| l.iter().map(|(_, b)| b.clone()).collect()).collect();
        GSimplicialMap::from_parts_unchecked(self.complex.clone(), self.right.clone(), images)
    }

    /// The simplex with the given factor data, if present.
    pub fn find(&self, left: &SimplexImage, right: &SimplexImage) -> Option<Simplex> {
        let d = left.source_dim();
        self.factors.get(d)?.iter().position(|(a, b)| a == left && b == right).map(|i| Simplex::new(d, i))
    }

    /// `σ × v` for a nondegenerate `σ` of the left factor and a vertex `v`
    /// of the right factor.
    pub fn slice(&self, s: Simplex, v: usize) -> Simplex {
        let left = SimplexImage::nondegenerate(s);
        let right = SimplexImage::collapsed(v, s.dim);
        self.find(&left, &right).expect("slice simplices exist")
    }
}

/// All lattice paths from `(0,0)` to `(p,q)` with steps `(1,0)`, `(0,1)`, `(1,1)`.
fn paths(p: usize, q: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    fn go(p: usize, q: usize, a: &mut Vec<usize>, b: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, Vec<usize>)>) {
        let (x, y) = (*a.last().unwrap(), *b.last().unwrap());
        if x == p && y == q {
            out.push((a.clone(), b.clone()));
            return;
        }
        for (dx, dy) in [(1, 0), (0, 1), (1, 1)] {
            if x + dx <= p && y + dy <= q {
                a.push(x + dx);
                b.push(y + dy);
                go(p, q, a, b, out);
                a.pop();
                b.pop();
            }
        }
    }
    go(p, q, &mut vec![0], &mut vec![0], &mut out);
    out
}

pub fn product(x: &Arc<GSemiSimplicialSet>, y: &Arc<GSemiSimplicialSet>) -> Result<ProductComplex, ComplexError> {
    if x.group() != y.group() {
        return Err(ComplexError::GroupMismatch);
    }
    let g = x.group().clone();
    let levels = if x.is_empty() || y.is_empty() { 0 } else { x.levels() + y.levels() - 1 };
    let mut factors: Vec<Vec<(SimplexImage, SimplexImage)>> = vec![Vec::new(); levels];
    for p in 0..x.levels() {
        for q in 0..y.levels() {
            let ps = paths(p, q);
            for s in x.level(p) {
                for t in y.level(q) {
                    for (a, b) in &ps {
                        let d = a.len() - 1;
                        factors[d].push((
                            SimplexImage { simplex: s, surjection: a.clone() },
                            SimplexImage { simplex: t, surjection: b.clone() },
                        ));
                    }
                }
            }
        }
    }
    let index: Vec<HashMap<&(SimplexImage, SimplexImage), usize>> =
        factors.iter().map(|l| l.iter().enumerate().map(|(i, k)| (k, i)).collect()).collect();
    let mut faces = Vec::with_capacity(levels);
    let mut action = Vec::with_capacity(levels);
    for (d, l) in factors.iter().enumerate() {
        let f: Vec<Vec<usize>> = l
            .iter()
            .map(|(a, b)| {
                if d == 0 {
                    return Vec::new();
                }
                (0..=d).map(|i| index[d - 1][&(a.face(x, i), b.face(y, i))]).collect()
            })
            .collect();
        faces.push(f);
        let act: Vec<Vec<usize>> =
            g.elements().map(|e| l.iter().map(|(a, b)| index[d][&(a.act(x, e), b.act(y, e))]).collect()).collect();
        action.push(act);
    }
    let complex = Arc::new(GSemiSimplicialSet::from_parts_unchecked(&g, faces, action));
    Ok(ProductComplex { complex, factors, left: x.clone(), right: y.clone() })
}

/// The discrete isovariant product `{(x, y) : G_x = G_y}` of two finite
/// `G`-sets, with the surviving pairs in order.
pub fn isovariant_product_discrete(
    x: &GSemiSimplicialSet,
    y: &GSemiSimplicialSet,
) -> Result<(GSemiSimplicialSet, Vec<(usize, usize)>), ComplexError> {
    if x.levels() > 1 || y.levels() > 1 {
        return Err(ComplexError::NotDiscrete);
    }
    if x.group() != y.group() {
        return Err(ComplexError::GroupMismatch);
    }
    let g = x.group();
    let sx: Vec<Subgroup> = x.level(0).map(|s| x.stabilizer(s)).collect();
    let sy: Vec<Subgroup> = y.level(0).map(|s| y.stabilizer(s)).collect();
    let mut pairs = Vec::new();
    for (i, a) in sx.iter().enumerate() {
        for (j, b) in sy.iter().enumerate() {
            if a == b {
                pairs.push((i, j));
            }
        }
    }
    let pos: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
    let perms = g
        .elements()
        .map(|e| {
            pairs
                .iter()
                .map(|&(i, j)| pos[&(x.act(e, Simplex::new(0, i)).id, y.act(e, Simplex::new(0, j)).id)])
                .collect()
        })
        .collect();
    let out = if pairs.is_empty() { GSemiSimplicialSet::empty(g) } else { GSemiSimplicialSet::discrete(g, perms)? };
    Ok((out, pairs))
}

/// A point of `|X|`: a carrier simplex and exact barycentric coordinates on
/// its ordered vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexPoint {
    pub simplex: Simplex,
    pub coords: Vec<BigRational>,
}

impl ComplexPoint {
    pub fn new(simplex: Simplex, coords: Vec<BigRational>) -> Self {
        Self { simplex, coords }
    }

    /// The open simplex containing the point.
    pub fn open_carrier(&self, x: &GSemiSimplicialSet) -> Result<Simplex, ComplexError> {
        super::strata::check_simplex(x, self.simplex)?;
        if self.coords.len() != self.simplex.dim + 1 {
            return Err(ComplexError::BadCoordinates(format!(
                "{} coordinates for a {}-simplex",
                self.coords.len(),
                self.simplex.dim
            )));
        }
        if self.coords.iter().any(|c| c.is_negative()) {
            return Err(ComplexError::BadCoordinates("negative coordinate".into()));
        }
        if self.coords.iter().fold(BigRational::zero(), |a, c| a + c) != BigRational::one() {
            return Err(ComplexError::BadCoordinates("coordinates do not sum to 1".into()));
        }
        let mut s = self.simplex;
        for i in (0..self.coords.len()).rev() {
            if self.coords[i].is_zero() {
                s = x.face(s, i);
            }
        }
        Ok(s)
    }

    /// `{g : g·p = p}`. Ordered simplices are fixed pointwise by their
    /// stabilizers, so this is the stabilizer of the open carrier.
    pub fn isotropy(&self, x: &GSemiSimplicialSet) -> Result<Subgroup, ComplexError> {
        Ok(x.stabilizer(self.open_carrier(x)?))
    }
}

/// Whether `(p, q)` lies in the isovariant product `|X| ×_isvt |Y|`.
pub fn isovariant_product_membership(
    x: &GSemiSimplicialSet,
    y: &GSemiSimplicialSet,
    p: &ComplexPoint,
    q: &ComplexPoint,
) -> Result<bool, ComplexError> {
    Ok(p.isotropy(x)? == q.isotropy(y)?)
}

/// `[-1, 1]` with `C₂` acting by negation: vertex 0 is the origin, 1 is
/// `-1`, 2 is `+1`; edges run from the origin outward.
pub fn interval_with_negation() -> GSemiSimplicialSet {
    let g = families::cyclic(2).expect("C2");
    let act = [vec![0, 1, 2], vec![0, 2, 1]];
    let built = from_complex(&g, &act, &[vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2]]).expect("interval");
    debug_assert!(!built.subdivided);
    built.complex
}

/// A finite `G`-set from a list of subgroups: the disjoint union of the
/// orbits `G/Hᵢ`.
pub fn g_set(group: &FiniteGroup, orbits: &[Subgroup]) -> Result<GSemiSimplicialSet, ComplexError> {
    let mut acc = GSemiSimplicialSet::empty(group);
    for h in orbits {
        acc = acc.disjoint_union(&GSemiSimplicialSet::orbit(h))?.0;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard_simplex;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn square_has_two_triangles() {
        let g = families::cyclic(1).unwrap();
        let i = Arc::new(standard_simplex(&g, 1));
        let p = product(&i, &i).unwrap();
        p.complex.validate().unwrap();
        assert_eq!(p.complex.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn prism_counts() {
        let g = families::cyclic(1).unwrap();
        let t = Arc::new(standard_simplex(&g, 2));
        let i = Arc::new(standard_simplex(&g, 1));
        let p = product(&t, &i).unwrap();
        p.complex.validate().unwrap();
        // 6 vertices; edges: 3·2 + 3·1 + 3 diagonals; 2-simplices 3·2 + 1·2 ... ; three tetrahedra
        assert_eq!(p.complex.counts()[0], 6);
        assert_eq!(p.complex.counts()[3], 3);
        let euler: i64 =
            p.complex.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        assert_eq!(euler, 1);
        assert!(p.projection_left().validate().is_ok());
        assert!(p.projection_right().validate().is_ok());
    }

    #[test]
    fn three_point_set_product() {
        let g = families::cyclic(2).unwrap();
        let x = g_set(&g, &[Subgroup::trivial(&g), Subgroup::whole(&g)]).unwrap();
        let (prod, pairs) = isovariant_product_discrete(&x, &x).unwrap();
        assert_eq!(prod.counts(), vec![5]);
        assert!(pairs.contains(&(2, 2)));
        let trivial = GSemiSimplicialSet::point(&g);
        let free = GSemiSimplicialSet::orbit(&Subgroup::trivial(&g));
        assert!(isovariant_product_discrete(&trivial, &free).unwrap().0.is_empty());
    }

    #[test]
    fn interval_membership() {
        let x = interval_with_negation();
        let origin = ComplexPoint::new(Simplex::new(0, 0), vec![q(1, 1)]);
        let half = ComplexPoint::new(Simplex::new(1, 1), vec![q(1, 2), q(1, 2)]);
        let origin_on_edge = ComplexPoint::new(Simplex::new(1, 0), vec![q(1, 1), q(0, 1)]);
        assert!(isovariant_product_membership(&x, &x, &origin, &origin_on_edge).unwrap());
        assert!(!isovariant_product_membership(&x, &x, &origin, &half).unwrap());
        assert!(isovariant_product_membership(&x, &x, &half, &half).unwrap());
        let bad = ComplexPoint::new(Simplex::new(1, 0), vec![q(1, 2), q(1, 3)]);
        assert!(matches!(isovariant_product_membership(&x, &x, &bad, &half), Err(ComplexError::BadCoordinates(_))));
    }
}
