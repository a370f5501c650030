use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{LinkOrbitCategory, ObjectId};
use crate::complex::{product, ComplexJson, GSemiSimplicialSet, GSimplicialMap, ProductComplex, Simplex, SimplexImage};
use crate::group::GroupJson;
use crate::simplex::{realize_morphism, to_semisimplicial, LinkingRealization};

use super::{quotient, ColimitError};

/// A contravariant functor `T: ℒ_G^op → sSet` with values carrying the
/// trivial action. `arrows[(a, b)][k]` is `T(m): T(b) → T(a)` for the
/// `k`-th morphism `m` of `hom(a, b)`.
#[derive(Clone, Debug)]
pub struct Diagram {
    pub category: Arc<LinkOrbitCategory>,
    pub values: Vec<Arc<GSemiSimplicialSet>>,
    pub arrows: BTreeMap<(ObjectId, ObjectId), Vec<GSimplicialMap>>,
}

fn bad(msg: String) -> ColimitError {
    ColimitError::NonFunctorialDiagram(msg)
}

impl Diagram {
    pub fn new(
        category: Arc<LinkOrbitCategory>,
        values: Vec<Arc<GSemiSimplicialSet>>,
        arrows: BTreeMap<(ObjectId, ObjectId), Vec<GSimplicialMap>>,
    ) -> Result<Self, ColimitError> {
        let d = Self { category, values, arrows };
        d.validate()?;
        Ok(d)
    }

    /// Shapes, trivial action on values, identities and every composite.
    pub fn validate(&self) -> Result<(), ColimitError> {
        let cat = &self.category;
        let n = cat.objects().len();
        if self.values.len() != n {
            return Err(bad(format!("{} values for {n} objects", self.values.len())));
        }
        for (i, v) in self.values.iter().enumerate() {
            if v.group() != cat.group() {
                return Err(bad(format!("value at {} lives over another group", cat.object_name(i))));
            }
            if !v.has_trivial_action() {
                return Err(bad(format!("value at {} has a nontrivial action", cat.object_name(i))));
            }
        }
        for key in self.arrows.keys() {
            if cat.hom_ids(key.0, key.1).is_empty() {
                return Err(bad(format!("arrow listed for the empty hom-set {key:?}")));
            }
        }
        for (&(a, b), ms) in cat.nonempty_homs() {
            let ts = self.arrows.get(&(a, b)).ok_or_else(|| bad(format!("no arrows for {a}->{b}")))?;
            if ts.len() != ms.len() {
                return Err(bad(format!("{} arrows for {} morphisms {a}->{b}", ts.len(), ms.len())));
            }
            for t in ts {
                if t.src() != &self.values[b] || t.dst() != &self.values[a] {
                    return Err(bad(format!("arrow for {a}->{b} must go from T({b}) to T({a})")));
                }
                if !t.is_nondegenerate() {
                    return Err(bad(format!("arrow for {a}->{b} collapses simplices")));
                }
            }
        }
        for a in 0..n {
            let k = cat.hom_ids(a, a).iter().position(|m| m.is_identity()).expect("identity exists");
            if self.arrows[&(a, a)][k].images() != GSimplicialMap::identity(self.values[a].clone()).images() {
                return Err(bad(format!("identity of {} is not sent to the identity", cat.object_name(a))));
            }
        }
        for (&(a, b), fs) in cat.nonempty_homs() {
            for c in 0..n {
                let hs = cat.hom_ids(b, c);
                for (kf, f) in fs.iter().enumerate() {
                    for (kh, h) in hs.iter().enumerate() {
                        let fh = cat.compose(f, h)?;
                        let kfh = cat.hom_ids(a, c).iter().position(|m| m == &fh).expect("hom sets are closed");
                        let via = self.arrows[&(b, c)][kh].then(&self.arrows[&(a, b)][kf])?;
                        if via.images() != self.arrows[&(a, c)][kfh].images() {
                            return Err(bad(format!(
                                "T({a}->{b} #{kf}) ∘ T({b}->{c} #{kh}) differs from T of the composite"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn points(cat: &LinkOrbitCategory, n: usize) -> Arc<GSemiSimplicialSet> {
    let g = cat.group();
    Arc::new(if n == 0 {
        GSemiSimplicialSet::empty(g)
    } else {
        GSemiSimplicialSet::with_trivial_action(g, vec![vec![Vec::new(); n]]).expect("discrete set")
    })
}

/// `ℒ_G(−, H)` as a diagram of finite sets.
pub fn representable_diagram(cat: Arc<LinkOrbitCategory>, h: ObjectId) -> Diagram {
    let n = cat.objects().len();
    let values: Vec<Arc<GSemiSimplicialSet>> = (0..n).map(|k| points(&cat, cat.hom_ids(k, h).len())).collect();
    let mut arrows = BTreeMap::new();
    for (&(a, b), ms) in cat.nonempty_homs() {
        let maps = ms
            .iter()
            .map(|m| {
                let level: Vec<usize> = cat
                    .hom_ids(b, h)
                    .iter()
                    .map(|t| {
                        let mt = cat.compose(m, t).expect("composable");
                        cat.hom_ids(a, h).iter().position(|x| x == &mt).expect("hom sets are closed")
                    })
                    .collect();
                let levels = if level.is_empty() { vec![] } else { vec![level] };
                GSimplicialMap::from_levels(values[b].clone(), values[a].clone(), levels).expect("map of sets")
            })
            .collect();
        arrows.insert((a, b), maps);
    }
    Diagram { category: cat, values, arrows }
}

/// Every value `x`, every arrow the identity.
pub fn constant_diagram(cat: Arc<LinkOrbitCategory>, x: Arc<GSemiSimplicialSet>) -> Result<Diagram, ColimitError> {
    let n = cat.objects().len();
    let values = vec![x.clone(); n];
    let arrows = cat.nonempty_homs().map(|(&k, ms)| (k, vec![GSimplicialMap::identity(x.clone()); ms.len()])).collect();
    Diagram::new(cat, values, arrows)
}

#[derive(Clone, Debug)]
pub struct CoendResult {
    pub complex: Arc<GSemiSimplicialSet>,
    /// `Δ^K × T(K)` for every object, in category order.
    pub pieces: Vec<ProductComplex>,
}

pub fn coend(t: &Diagram) -> Result<CoendResult, ColimitError> {
    let n = t.category.objects().len();
    let order: Vec<(ObjectId, ObjectId, usize)> =
        t.category.nonempty_homs().flat_map(|(&(a, b), ms)| (0..ms.len()).map(move |k| (a, b, k))).collect();
    coend_with_order(t, &(0..n).collect::<Vec<_>>(), &order)
}

/// `⊔_K Δ^K × T(K)` modulo `(Δ^m x, t) ∼ (x, T(m) t)`, laying out the
/// pieces in `object_order` and adding relations in `morphism_order`
/// (triples `(a, b, k)`). The result does not depend on either order up to
/// isomorphism.
pub fn coend_with_order(
    t: &Diagram,
    object_order: &[ObjectId],
    morphism_order: &[(ObjectId, ObjectId, usize)],
) -> Result<CoendResult, ColimitError> {
    t.validate()?;
    let cat = &t.category;
    let n = cat.objects().len();
    let mut sorted = object_order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(ColimitError::Malformed("object order is not a permutation".into()));
    }
    let reals: Vec<LinkingRealization> = cat.objects().iter().map(to_semisimplicial).collect();
    let pieces: Vec<ProductComplex> =
        (0..n).map(|k| product(&reals[k].complex, &t.values[k])).collect::<Result<_, _>>()?;
    let mut sum = GSemiSimplicialSet::empty(cat.group());
    let mut offsets: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &k in object_order {
        let (s, _, off) = sum.disjoint_union(&pieces[k].complex)?;
        sum = s;
        offsets[k] = off;
    }
    let index: Vec<HashMap<&(SimplexImage, SimplexImage), usize>> = pieces
        .iter()
        .map(|p| p.factors.iter().flat_map(|l| l.iter().enumerate().map(|(i, f)| (f, i))).collect())
        .collect();
    let locate = |k: ObjectId, key: &(SimplexImage, SimplexImage)| {
        let d = key.0.source_dim();
        Simplex::new(d, index[k][key] + offsets[k][d])
    };

    let mut pairs = Vec::new();
    for &(a, b, k) in morphism_order {
        let m =
            cat.hom_ids(a, b).get(k).ok_or_else(|| ColimitError::Malformed(format!("no morphism {a}->{b} #{k}")))?;
        let dm = realize_morphism(m, &reals[a], &reals[b])?;
        let tm = &t.arrows[&(a, b)][k];
        let middle = product(&reals[a].complex, &t.values[b])?;
        for lvl in &middle.factors {
            for (x, y) in lvl {
                let lhs = (x.then(&dm), y.clone());
                let rhs = (x.clone(), y.then(tm));
                pairs.push((locate(b, &lhs), locate(a, &rhs)));
            }
        }
    }
    let q = quotient(&sum, &pairs)?;
    Ok(CoendResult { complex: q.complex, pieces })
}

/// A value given either as a plain number of points or as a complex.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum ValueJson {
    Points { points: usize },
    Complex(ComplexJson),
}

/// `{"group": …, "objects": ["e", "e<C2", …], "values": [...],
/// "arrows": {"a->b": [levels per morphism, in hom order]}}`.
///
/// Objects are indexed as in the category of the group; the optional
/// `objects` list is checked against the names when present.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct DiagramJson {
    pub group: GroupJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    pub values: Vec<ValueJson>,
    pub arrows: BTreeMap<String, Vec<Vec<Vec<usize>>>>,
}

impl DiagramJson {
    pub fn from_diagram(d: &Diagram) -> Self {
        let cat = &d.category;
        let values = d
            .values
            .iter()
            .map(|v| {
                if v.levels() <= 1 {
                    ValueJson::Points { points: v.count(0) }
                } else {
                    ValueJson::Complex(ComplexJson::from_complex(v))
                }
            })
            .collect();
        let arrows = d
            .arrows
            .iter()
            .map(|(&(a, b), ms)| (format!("{a}->{b}"), ms.iter().map(|m| m.levels().expect("nondegenerate")).collect()))
            .collect();
        Self {
            group: GroupJson::from_group(cat.group()),
            objects: Some((0..cat.objects().len()).map(|i| cat.object_name(i)).collect()),
            values,
            arrows,
        }
    }

    pub fn into_diagram(self) -> Result<Diagram, ColimitError> {
        let json = |e: String| ColimitError::Json(e);
        let g = self.group.into_group().map_err(|e| json(e.to_string()))?;
        let cat = Arc::new(LinkOrbitCategory::new(&g));
        if let Some(names) = &self.objects {
            let expected: Vec<String> = (0..cat.objects().len()).map(|i| cat.object_name(i)).collect();
            if names != &expected {
                return Err(json(format!("objects {names:?} do not match the category order {expected:?}")));
            }
        }
        let values = self
            .values
            .into_iter()
            .map(|v| match v {
                ValueJson::Points { points: n } => Ok(points(&cat, n)),
                ValueJson::Complex(c) => c.into_complex(&g).map(Arc::new).map_err(|e| json(e.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if values.len() != cat.objects().len() {
            return Err(bad(format!("{} values for {} objects", values.len(), cat.objects().len())));
        }
        let mut arrows = BTreeMap::new();
        for (key, list) in self.arrows {
            let (a, b) = key
                .split_once("->")
                .and_then(|(a, b)| Some((a.trim().parse::<usize>().ok()?, b.trim().parse::<usize>().ok()?)))
                .filter(|&(a, b)| a < values.len() && b < values.len())
                .ok_or_else(|| json(format!("bad arrow key {key:?}")))?;
            let maps = list
                .into_iter()
                .map(|levels| GSimplicialMap::from_levels(values[b].clone(), values[a].clone(), levels))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(e.to_string()))?;
            arrows.insert((a, b), maps);
        }
        Diagram::new(cat, values, arrows)
    }

    pub fn parse(text: &str) -> Result<Diagram, ColimitError> {
        let raw: Self = serde_json::from_str(text).map_err(|e| ColimitError::Json(e.to_string()))?;
        raw.into_diagram()
    }

    pub fn to_string_pretty(d: &Diagram) -> String {
        serde_json::to_string_pretty(&Self::from_diagram(d)).expect("diagram JSON serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colimit::g_isomorphic;
    use crate::complex::exact_stratum;
    use crate::group::{all_subgroups, families, normalizer};

    fn c2_cat() -> Arc<LinkOrbitCategory> {
        Arc::new(LinkOrbitCategory::new(&families::cyclic(2).unwrap()))
    }

    #[test]
    fn representable_coend_is_the_linking_simplex() {
        let cat = c2_cat();
        for h in 0..cat.objects().len() {
            let t = representable_diagram(cat.clone(), h);
            t.validate().unwrap();
            let c = coend(&t).unwrap();
            let target = to_semisimplicial(cat.object(h)).complex;
            assert!(g_isomorphic(&c.complex, &target).unwrap().is_some(), "{}", cat.object_name(h));
        }
    }

    #[test]
    fn constant_point_strata_are_normalizers() {
        // The automorphisms (id, γ) of a length-one chain K act on Δ^K by
        // right translation, and the constant diagram glues every point to
        // its translates, leaving G/N(K). A stratum survives exactly when
        // H = N(K) for some K.
        for name in ["c2", "c4", "s3", "d4"] {
            let cat = Arc::new(LinkOrbitCategory::new(&families::by_name(name).unwrap()));
            let g = cat.group().clone();
            let pt = Arc::new(GSemiSimplicialSet::point(&g));
            let c = coend(&constant_diagram(cat.clone(), pt).unwrap()).unwrap();
            assert_eq!(c.complex.component_count(), 1);
            let subs = all_subgroups(&g);
            let normalizers: Vec<_> = subs.iter().map(|h| normalizer(&g, h).unwrap()).collect();
            for h in &subs {
                assert_eq!(!exact_stratum(&c.complex, h).is_empty(), normalizers.contains(h), "{name} {h:?}");
            }
        }
    }

    #[test]
    fn corrupted_arrow_is_rejected() {
        let cat = Arc::new(LinkOrbitCategory::new(&families::cyclic(4).unwrap()));
        let top = cat.object_by_name("e<C2<C4").unwrap();
        let mut t = representable_diagram(cat.clone(), top);
        t.validate().unwrap();
        // corrupt T of a composite of two non-identities, so the
        // composition check has something to compare against
        let n = cat.objects().len();
        let mut target = None;
        'search: for (&(a, b), fs) in cat.nonempty_homs() {
            for c in 0..n {
                for f in fs.iter().filter(|f| !f.is_identity()) {
                    for h in cat.hom_ids(b, c).iter().filter(|h| !h.is_identity()) {
                        let fh = cat.compose(f, h).unwrap();
                        let k = cat.hom_ids(a, c).iter().position(|m| m == &fh).unwrap();
                        if t.values[a].count(0) > 1 {
                            target = Some((a, c, k));
                            break 'search;
                        }
                    }
                }
            }
        }
        let (a, c, k) = target.expect("C4 has composites");
        let m = &t.arrows[&(a, c)][k];
        let mut levels = m.levels().unwrap();
        let size = m.dst().count(0);
        levels[0][0] = (levels[0][0] + 1) % size;
        let corrupt = GSimplicialMap::from_levels(m.src().clone(), m.dst().clone(), levels).unwrap();
        t.arrows.get_mut(&(a, c)).unwrap()[k] = corrupt;
        assert!(matches!(t.validate(), Err(ColimitError::NonFunctorialDiagram(_))));
    }

    #[test]
    fn json_round_trip() {
        let cat = c2_cat();
        let t = representable_diagram(cat, 2);
        let text = DiagramJson::to_string_pretty(&t);
        let back = DiagramJson::parse(&text).unwrap();
        assert_eq!(back.values, t.values);
        assert_eq!(back.arrows, t.arrows);
    }
}
