use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::group::{GroupJson, Subgroup};

use super::{CategoryError, LinkMorphism, LinkOrbitCategory, SubgroupChain};

#[derive(Clone, Copy, Debug, Default)]
pub struct DotOptions {
    /// Drop every endomorphism, the way hand-drawn pictures usually do.
    pub suppress_self_maps: bool,
}

impl LinkOrbitCategory {
    /// Graphviz source: one node per chain, one edge per morphism labelled by
    /// its `γ` representative. Byte-stable for a given group.
    pub fn to_dot(&self, opts: DotOptions) -> String {
        let g = self.group();
        let mut out = String::new();
        let title = g.name().map(str::to_string).unwrap_or_else(|| format!("G{}", g.order()));
        writeln!(out, "digraph \"L_{title}\" {{").unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        writeln!(out, "  node [shape=plaintext];").unwrap();
        for i in 0..self.objects().len() {
            writeln!(out, "  n{i} [label=\"{}\"];", self.object_name(i)).unwrap();
        }
        for (&(a, b), ms) in self.nonempty_homs() {
            if a == b && opts.suppress_self_maps {
                continue;
            }
            for m in ms {
                writeln!(out, "  n{a} -> n{b} [label=\"{}\"];", g.element_name(m.gamma)).unwrap();
            }
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> CategoryJson {
        let objects =
            self.objects().iter().map(|c| c.subgroups().iter().map(|h| h.elements().to_vec()).collect()).collect();
        let homs = self
            .nonempty_homs()
            .map(|(&(a, b), ms)| {
                let list = ms.iter().map(|m| MorphismJson { iota: m.iota.clone(), gamma: m.gamma }).collect();
                (format!("{a}->{b}"), list)
            })
            .collect();
        CategoryJson { group: GroupJson::from_group(self.group()), objects, homs }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub iota: Vec<usize>,
    pub gamma: usize,
}

/// `{"group": ..., "objects": [[[...], ...], ...], "homs": {"i->j": [{"iota": [...], "gamma": k}]}}`
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CategoryJson {
    pub group: GroupJson,
    pub objects: Vec<Vec<Vec<usize>>>,
    pub homs: BTreeMap<String, Vec<MorphismJson>>,
}

impl CategoryJson {
    pub fn to_string_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("category JSON serializes")
    }

    pub fn parse(text: &str) -> Result<Self, CategoryError> {
        serde_json::from_str(text).map_err(|e| CategoryError::Json(e.to_string()))
    }

    /// Rebuilds the category from its group and checks that the stored
    /// objects and hom-sets are exactly the ones the group determines.
    pub fn into_category(self) -> Result<LinkOrbitCategory, CategoryError> {
        let group = self.group.into_group()?;
        let mut chains = Vec::with_capacity(self.objects.len());
        for obj in &self.objects {
            let subs =
                obj.iter().map(|elems| Subgroup::new(&group, elems.iter().copied())).collect::<Result<Vec<_>, _>>()?;
            chains.push(SubgroupChain::new(subs)?);
        }
        let mut stored: BTreeMap<(usize, usize), Vec<LinkMorphism>> = BTreeMap::new();
        for (key, list) in &self.homs {
            let (a, b) = parse_key(key, chains.len())?;
            let mut ms = list
                .iter()
                .map(|m| LinkMorphism::new(chains[a].clone(), chains[b].clone(), m.iota.clone(), m.gamma))
                .collect::<Result<Vec<_>, _>>()?;
            ms.sort();
            stored.insert((a, b), ms);
        }

        let cat = LinkOrbitCategory::new(&group);
        if cat.objects() != chains.as_slice() {
            return Err(CategoryError::Json("object list does not match the group's chains".into()));
        }
        let computed: BTreeMap<(usize, usize), Vec<LinkMorphism>> =
            cat.nonempty_homs().map(|(&k, v)| (k, v.clone())).collect();
        if computed != stored {
            return Err(CategoryError::Json("hom-sets do not match the group's chains".into()));
        }
        Ok(cat)
    }
}

fn parse_key(key: &str, n: usize) -> Result<(usize, usize), CategoryError> {
    let bad = || CategoryError::Json(format!("bad hom key {key:?}"));
    let (a, b) = key.split_once("->").ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a >= n || b >= n {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::families;

    #[test]
    fn c4_dot_counts() {
        let cat = LinkOrbitCategory::new(&families::cyclic(4).unwrap());
        let dot = cat.to_dot(DotOptions { suppress_self_maps: true });
        assert_eq!(dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 7);
        assert_eq!(dot, cat.to_dot(DotOptions { suppress_self_maps: true }));
        let e = cat.object_by_name("e").unwrap();
        let top = cat.object_by_name("e<C2<C4").unwrap();
        let edge = format!("  n{e} -> n{top} ");
        assert_eq!(dot.lines().filter(|l| l.starts_with(&edge)).count(), 4);
    }

    #[test]
    fn trivial_group_is_one_node() {
        let cat = LinkOrbitCategory::new(&families::cyclic(1).unwrap());
        let dot = cat.to_dot(DotOptions { suppress_self_maps: true });
        assert!(dot.contains("n0 [label=\"e\"]"));
        assert!(!dot.contains("->"));
    }

    #[test]
    fn json_round_trip() {
        for name in ["c2", "c4", "s3"] {
            let cat = LinkOrbitCategory::new(&families::by_name(name).unwrap());
            let text = cat.to_json().to_string_pretty();
            let back = CategoryJson::parse(&text).unwrap().into_category().unwrap();
            assert_eq!(back.objects(), cat.objects());
            assert_eq!(back.to_json(), cat.to_json());
        }
    }

    #[test]
    fn tampered_json_is_rejected() {
        let cat = LinkOrbitCategory::new(&families::cyclic(2).unwrap());
        let mut raw = cat.to_json();
        let first = raw.homs.keys().next().unwrap().clone();
        raw.homs.get_mut(&first).unwrap().pop();
        assert!(matches!(raw.into_category(), Err(CategoryError::Json(_))));
    }
}
