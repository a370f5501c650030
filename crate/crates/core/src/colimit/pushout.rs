use std::sync::Arc;

use crate::complex::{GSemiSimplicialSet, GSimplicialMap, Simplex, SimplexImage};

use super::{quotient, ColimitError, Quotient};

/// A span `B ← A → C`.
#[derive(Clone, Debug)]
pub struct PushoutData {
    pub f: GSimplicialMap,
    pub g: GSimplicialMap,
}

pub(crate) fn check_leg(leg: &'static str, m: &GSimplicialMap, isovariant: bool) -> Result<(), ColimitError> {
    if !m.is_nondegenerate() {
        return Err(ColimitError::DegenerateLeg { leg });
    }
    if isovariant {
        m.check_isovariant().map_err(|e| ColimitError::NotIsovariantLeg { leg, reason: e.to_string() })
    } else if let Some((s, x)) = m.equivariance_counterexample() {
        Err(ColimitError::NotIsovariantLeg { leg, reason: format!("not even equivariant at {s}, g = {x}") })
    } else {
        Ok(())
    }
}

impl PushoutData {
    /// Both legs must be nondegenerate and isovariant.
    pub fn new(f: GSimplicialMap, g: GSimplicialMap) -> Result<Self, ColimitError> {
        Self::build(f, g, true)
    }

    /// Escape hatch for experiments: legs only need to be equivariant. The
    /// strata of the result are then not controlled.
    pub fn equivariant_only(f: GSimplicialMap, g: GSimplicialMap) -> Result<Self, ColimitError> {
        Self::build(f, g, false)
    }

    fn build(f: GSimplicialMap, g: GSimplicialMap, isovariant: bool) -> Result<Self, ColimitError> {
        if f.src() != g.src() {
            return Err(ColimitError::Malformed("legs have different sources".into()));
        }
        check_leg("f", &f, isovariant)?;
        check_leg("g", &g, isovariant)?;
        Ok(Self { f, g })
    }

    pub fn a(&self) -> &Arc<GSemiSimplicialSet> {
        self.f.src()
    }

    pub fn b(&self) -> &Arc<GSemiSimplicialSet> {
        self.f.dst()
    }

    pub fn c(&self) -> &Arc<GSemiSimplicialSet> {
        self.g.dst()
    }
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub complex: Arc<GSemiSimplicialSet>,
    pub from_b: GSimplicialMap,
    pub from_c: GSimplicialMap,
    /// Per level, where `C` starts inside `B ⊔ C`.
    offsets: Vec<usize>,
    quotient: Quotient,
}

/// `B ⊔ C / f(a) ∼ g(a)`.
pub fn pushout(d: &PushoutData) -> Result<Pushout, ColimitError> {
    let (b, c) = (d.b(), d.c());
    let (sum, _, off) = b.disjoint_union(c)?;
    let mut pairs = Vec::new();
    for s in d.a().simplices() {
        let (x, y) = (d.f.image(s).simplex, d.g.image(s).simplex);
        pairs.push((x, Simplex::new(y.dim, y.id + off[y.dim])));
    }
    let q = quotient(&sum, &pairs)?;
    let proj = |src: &Arc<GSemiSimplicialSet>, shift: &dyn Fn(usize) -> usize| {
        let images = (0..src.levels())
            .map(|k| {
                src.level(k).map(|s| SimplexImage::nondegenerate(q.class(Simplex::new(k, s.id + shift(k))))).collect()
            })
            .collect();
        GSimplicialMap::from_parts_unchecked(src.clone(), q.complex.clone(), images)
    };
    let from_b = proj(b, &|_| 0);
    let from_c = proj(c, &|k| off[k]);
    Ok(Pushout { complex: q.complex.clone(), from_b, from_c, offsets: off, quotient: q })
}

impl Pushout {
    /// The unique map out of the pushout restricting to `u` on `B` and `v`
    /// on `C`. Fails when `u∘f ≠ v∘g`.
    pub fn mediate(
        &self,
        d: &PushoutData,
        u: &GSimplicialMap,
        v: &GSimplicialMap,
    ) -> Result<GSimplicialMap, ColimitError> {
        if u.src() != d.b() || v.src() != d.c() || u.dst() != v.dst() {
            return Err(ColimitError::NotACocone("maps do not start at B and C or end in different places".into()));
        }
        let uf = d.f.then(u)?;
        let vg = d.g.then(v)?;
        if uf.images() != vg.images() {
            let s = d.a().simplices().find(|&s| uf.image(s) != vg.image(s)).expect("some simplex differs");
            return Err(ColimitError::NotACocone(format!("u∘f and v∘g differ on {s}")));
        }
        let p = &self.complex;
        let mut images: Vec<Vec<Option<SimplexImage>>> = (0..p.levels()).map(|k| vec![None; p.count(k)]).collect();
        let mut set = |cls: Simplex, img: &SimplexImage| -> Result<(), ColimitError> {
            match &images[cls.dim][cls.id] {
                Some(prev) if prev != img => {
                    Err(ColimitError::NotACocone(format!("two values on the glued simplex {cls}")))
                }
                _ => {
                    images[cls.dim][cls.id] = Some(img.clone());
                    Ok(())
                }
            }
        };
        for s in d.b().simplices() {
            set(self.quotient.class(s), u.image(s))?;
        }
        for s in d.c().simplices() {
            let t = Simplex::new(s.dim, s.id + self.offsets[s.dim]);
            set(self.quotient.class(t), v.image(s))?;
        }
        let images =
            images.into_iter().map(|l| l.into_iter().map(|x| x.expect("pushout is covered")).collect()).collect();
        Ok(GSimplicialMap::new(p.clone(), u.dst().clone(), images)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{exact_stratum, from_complex, stratum_pi0, GSemiSimplicialSet};
    use crate::group::{families, Subgroup};

    fn fixed_arc() -> Arc<GSemiSimplicialSet> {
        let g = families::cyclic(2).unwrap();
        Arc::new(from_complex(&g, &[vec![0, 1], vec![0, 1]], &[vec![0], vec![1], vec![0, 1]]).unwrap().complex)
    }

    #[test]
    fn wedge_of_fixed_arcs() {
        let arc = fixed_arc();
        let g = arc.group().clone();
        let pt = Arc::new(GSemiSimplicialSet::point(&g));
        let f = GSimplicialMap::from_levels(pt.clone(), arc.clone(), vec![vec![1]]).unwrap();
        let h = GSimplicialMap::from_levels(pt, arc.clone(), vec![vec![0]]).unwrap();
        let d = PushoutData::new(f, h).unwrap();
        let p = pushout(&d).unwrap();
        assert_eq!(p.complex.counts(), vec![3, 2]);
        let whole = Subgroup::whole(&g);
        assert_eq!(stratum_pi0(&p.complex, &exact_stratum(&p.complex, &whole)).count, 1);
    }

    #[test]
    fn identity_span_gives_back_b() {
        let arc = fixed_arc();
        let id = GSimplicialMap::identity(arc.clone());
        let p = pushout(&PushoutData::new(id.clone(), id).unwrap()).unwrap();
        assert_eq!(*p.complex, *arc);
    }

    #[test]
    fn equivariant_leg_needs_the_flag() {
        let g = families::cyclic(2).unwrap();
        let free = Arc::new(GSemiSimplicialSet::orbit(&Subgroup::trivial(&g)));
        let pt = Arc::new(GSemiSimplicialSet::point(&g));
        let collapse = GSimplicialMap::from_levels(free.clone(), pt, vec![vec![0, 0]]).unwrap();
        let id = GSimplicialMap::identity(free);
        assert!(matches!(
            PushoutData::new(collapse.clone(), id.clone()),
            Err(ColimitError::NotIsovariantLeg { leg: "f", .. })
        ));
        let d = PushoutData::equivariant_only(collapse, id).unwrap();
        assert_eq!(pushout(&d).unwrap().complex.counts(), vec![1]);
    }
}
