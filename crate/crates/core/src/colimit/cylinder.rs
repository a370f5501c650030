use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::complex::{
    product, standard_simplex, GSemiSimplicialSet, GSimplicialMap, ProductComplex, Simplex, SimplexImage,
};

use super::pushout::check_leg;
use super::{quotient, ColimitError, Pushout, PushoutData, Quotient};

/// Which piece of `B ⊔ A×Δ¹ ⊔ C` a simplex of the cylinder comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderPart {
    B(Simplex),
    Prism(Simplex),
    C(Simplex),
}

/// `B ∪_f A×[0,1] ∪_g C`, the prism triangulated with trivial action on
/// the interval factor.
#[derive(Clone, Debug)]
pub struct CylinderSpace {
    pub complex: Arc<GSemiSimplicialSet>,
    /// `[min, max]` of the cylinder coordinate over each simplex: `0` on
    /// `B`, `1` on `C`.
    pub cylinder_coordinate: Vec<Vec<(BigRational, BigRational)>>,
    /// One preimage per simplex, preferring `B` and `C` over the prism.
    pub part: Vec<Vec<CylinderPart>>,
    pub prism: ProductComplex,
    pub from_b: GSimplicialMap,
    pub from_c: GSimplicialMap,
}

impl CylinderSpace {
    /// Simplices over the open cylinder `A × (0,1)`.
    pub fn is_open_cylinder(&self, s: Simplex) -> bool {
        let (lo, hi) = &self.cylinder_coordinate[s.dim][s.id];
        lo.is_zero() && hi.is_one()
    }

    /// Collapses the cylinder coordinate onto the pushout: `(a, t) ↦ [f(a)]`.
    /// Prism simplices go to possibly degenerate images.
    pub fn collapse(&self, d: &PushoutData, p: &Pushout) -> Result<GSimplicialMap, ColimitError> {
        let x = &self.complex;
        let images = (0..x.levels())
            .map(|k| {
                x.level(k)
                    .map(|s| match self.part[k][s.id] {
                        CylinderPart::B(b) => SimplexImage::nondegenerate(b).then(&p.from_b),
                        CylinderPart::C(c) => SimplexImage::nondegenerate(c).then(&p.from_c),
                        CylinderPart::Prism(t) => {
                            let (left, _) = &self.prism.factors[t.dim][t.id];
                            left.then(&d.f).then(&p.from_b)
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(GSimplicialMap::new(x.clone(), p.complex.clone(), images)?)
    }
}

fn end_pairs(prism: &ProductComplex, a: &GSemiSimplicialSet) -> (HashMap<(Simplex, usize), Simplex>, Vec<Simplex>) {
    let mut slices = HashMap::new();
    for s in a.simplices() {
        for v in 0..2 {
            slices.insert((s, v), prism.slice(s, v));
        }
    }
    (slices, a.simplices().collect())
}

pub fn double_mapping_cylinder(d: &PushoutData) -> Result<CylinderSpace, ColimitError> {
    let (a, b, c) = (d.a(), d.b(), d.c());
    let g = a.group();
    let interval = Arc::new(standard_simplex(g, 1));
    let prism = product(a, &interval)?;
    let (bp, _, off_p) = b.disjoint_union(&prism.complex)?;
    let (sum, _, off_c) = bp.disjoint_union(c)?;
    let shift = |s: Simplex, off: &[usize]| Simplex::new(s.dim, s.id + off[s.dim]);
    let (slices, a_simplices) = end_pairs(&prism, a);
    let mut pairs = Vec::new();
    for s in a_simplices {
        pairs.push((d.f.image(s).simplex, shift(slices[&(s, 0)], &off_p)));
        pairs.push((shift(d.g.image(s).simplex, &off_c), shift(slices[&(s, 1)], &off_p)));
    }
    let q = quotient(&sum, &pairs)?;

    let x = q.complex.clone();
    let mut part: Vec<Vec<Option<CylinderPart>>> = (0..x.levels()).map(|k| vec![None; x.count(k)]).collect();
    for k in 0..sum.levels() {
        for s in sum.level(k) {
            let which = if s.id < off_p.get(k).copied().unwrap_or(0) {
                CylinderPart::B(s)
            } else if s.id < off_c[k] {
                CylinderPart::Prism(Simplex::new(k, s.id - off_p[k]))
            } else {
                CylinderPart::C(Simplex::new(k, s.id - off_c[k]))
            };
            let slot = &mut part[k][q.class_of[k][s.id]];
            if slot.is_none()
                || matches!(slot, Some(CylinderPart::Prism(_))) && !matches!(which, CylinderPart::Prism(_))
            {
                *slot = Some(which);
            }
        }
    }
    let part: Vec<Vec<CylinderPart>> =
        part.into_iter().map(|l| l.into_iter().map(|p| p.expect("covered")).collect()).collect();
    let cylinder_coordinate = part
        .iter()
        .map(|l| {
            l.iter()
                .map(|p| match p {
                    CylinderPart::B(_) => (BigRational::zero(), BigRational::zero()),
                    CylinderPart::C(_) => (BigRational::one(), BigRational::one()),
                    CylinderPart::Prism(t) => {
                        let (_, right) = &prism.factors[t.dim][t.id];
                        let vs = interval.vertices(right.simplex);
                        let lo = BigRational::from_integer((*vs.first().unwrap()).into());
                        let hi = BigRational::from_integer((*vs.last().unwrap()).into());
                        (lo, hi)
                    }
                })
                .collect()
        })
        .collect();
    let from_b = inclusion(b, &q, &|_| 0);
    let from_c = inclusion(c, &q, &|k| off_c[k]);
    Ok(CylinderSpace { complex: x, cylinder_coordinate, part, prism, from_b, from_c })
}

fn inclusion(src: &Arc<GSemiSimplicialSet>, q: &Quotient, shift: &dyn Fn(usize) -> usize) -> GSimplicialMap {
    let images = (0..src.levels())
        .map(|k| src.level(k).map(|s| SimplexImage::nondegenerate(q.class(Simplex::new(k, s.id + shift(k))))).collect())
        .collect();
    GSimplicialMap::from_parts_unchecked(src.clone(), q.complex.clone(), images)
}

/// `X₀×[0,1] ∪ X₁×[0,1] ∪ … ∪ X_k`, gluing `(x, 1) ∼ (fᵢ(x), 0)`.
#[derive(Clone, Debug)]
pub struct Telescope {
    pub complex: Arc<GSemiSimplicialSet>,
    /// `Xᵢ` at cylinder coordinate `0` of its own stage.
    pub stages: Vec<GSimplicialMap>,
}

pub fn mapping_telescope(maps: &[GSimplicialMap]) -> Result<Telescope, ColimitError> {
    let first = maps.first().ok_or_else(|| ColimitError::Malformed("empty sequence of maps".into()))?;
    for w in maps.windows(2) {
        if w[0].dst() != w[1].src() {
            return Err(ColimitError::Malformed("maps are not composable".into()));
        }
    }
    for m in maps {
        check_leg("telescope", m, false)?;
    }
    let g = first.src().group();
    let interval = Arc::new(standard_simplex(g, 1));
    let prisms: Vec<ProductComplex> = maps.iter().map(|m| product(m.src(), &interval)).collect::<Result<_, _>>()?;
    let last = maps.last().unwrap().dst().clone();
    let mut sum = GSemiSimplicialSet::empty(g);
    let mut offsets = Vec::new();
    for p in &prisms {
        let (s, _, off) = sum.disjoint_union(&p.complex)?;
        sum = s;
        offsets.push(off);
    }
    let (s, _, off_last) = sum.disjoint_union(&last)?;
    sum = s;
    let at = |off: &[usize], s: Simplex| Simplex::new(s.dim, s.id + off[s.dim]);
    let mut pairs = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        for s in m.src().simplices() {
            let top = at(&offsets[i], prisms[i].slice(s, 1));
            let t = m.image(s).simplex;
            let bottom =
                if i + 1 < maps.len() { at(&offsets[i + 1], prisms[i + 1].slice(t, 0)) } else { at(&off_last, t) };
            pairs.push((top, bottom));
        }
    }
    let q = quotient(&sum, &pairs)?;
    let mut stages = Vec::new();
    for (i, m) in maps.iter().enumerate() {
        let images = (0..m.src().levels())
            .map(|k| {
                m.src()
                    .level(k)
                    .map(|s| SimplexImage::nondegenerate(q.class(at(&offsets[i], prisms[i].slice(s, 0)))))
                    .collect()
            })
            .collect();
        stages.push(GSimplicialMap::from_parts_unchecked(m.src().clone(), q.complex.clone(), images));
    }
    stages.push(inclusion(&last, &q, &|k| off_last[k]));
    Ok(Telescope { complex: q.complex.clone(), stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{exact_stratum, from_complex, stratum_pi0};
    use crate::group::{all_subgroups, families, Subgroup};

    fn free_arcs() -> Arc<GSemiSimplicialSet> {
        // two edges swapped by C₂
        let g = families::cyclic(2).unwrap();
        Arc::new(
            from_complex(
                &g,
                &[vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
                &[vec![0], vec![1], vec![2], vec![3], vec![0, 1], vec![2, 3]],
            )
            .unwrap()
            .complex,
        )
    }

    fn pi0_counts(x: &GSemiSimplicialSet) -> Vec<usize> {
        all_subgroups(x.group()).iter().map(|h| stratum_pi0(x, &exact_stratum(x, h)).count).collect()
    }

    #[test]
    fn identity_cylinder_keeps_strata() {
        let a = free_arcs();
        let id = GSimplicialMap::identity(a.clone());
        let d = PushoutData::new(id.clone(), id).unwrap();
        let hc = double_mapping_cylinder(&d).unwrap();
        hc.complex.validate().unwrap();
        assert_eq!(pi0_counts(&hc.complex), pi0_counts(&a));
        let p = super::super::pushout(&d).unwrap();
        let collapse = hc.collapse(&d, &p).unwrap();
        assert!(collapse.is_equivariant());
    }

    #[test]
    fn open_cylinder_strata_match_a() {
        let a = free_arcs();
        let g = a.group().clone();
        let id = GSimplicialMap::identity(a.clone());
        let hc = double_mapping_cylinder(&PushoutData::new(id.clone(), id).unwrap()).unwrap();
        for h in all_subgroups(&g) {
            let over_a: usize = exact_stratum(&a, &h)
                .simplices
                .iter()
                .map(|&s| {
                    hc.prism
                        .complex
                        .simplices()
                        .filter(|t| {
                            let (l, r) = &hc.prism.factors[t.dim][t.id];
                            l.simplex == s && r.simplex.dim == 1
                        })
                        .count()
                })
                .sum();
            let open: Vec<Simplex> =
                exact_stratum(&hc.complex, &h).simplices.into_iter().filter(|&s| hc.is_open_cylinder(s)).collect();
            assert_eq!(open.len(), over_a, "{h:?}");
        }
    }

    #[test]
    fn flip_disk_boundary_data() {
        // A = free pair of points, B = C = free arcs, f and g hit opposite ends
        let arcs = free_arcs();
        let g = arcs.group().clone();
        let pair = Arc::new(GSemiSimplicialSet::orbit(&Subgroup::trivial(&g)));
        let f = GSimplicialMap::from_levels(pair.clone(), arcs.clone(), vec![vec![0, 2]]).unwrap();
        let h = GSimplicialMap::from_levels(pair, arcs, vec![vec![1, 3]]).unwrap();
        let d = PushoutData::new(f, h).unwrap();
        let hc = double_mapping_cylinder(&d).unwrap();
        let p = super::super::pushout(&d).unwrap();
        let e = Subgroup::trivial(&g);
        let lhs = stratum_pi0(&hc.complex, &exact_stratum(&hc.complex, &e)).count;
        let rhs = stratum_pi0(&p.complex, &exact_stratum(&p.complex, &e)).count;
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, 2);
        hc.collapse(&d, &p).unwrap();
    }

    #[test]
    fn telescope_of_identities() {
        let a = free_arcs();
        let id = GSimplicialMap::identity(a.clone());
        let t = mapping_telescope(&[id.clone(), id.clone(), id]).unwrap();
        t.complex.validate().unwrap();
        assert_eq!(t.stages.len(), 4);
        assert_eq!(pi0_counts(&t.complex), pi0_counts(&a));
        for s in &t.stages {
            s.validate().unwrap();
            assert!(s.is_isovariant());
        }
    }
}
