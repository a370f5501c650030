use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, GroupJson};

use super::{ComplexError, GSemiSimplicialSet, GSimplicialMap, Simplex, SimplexImage};

/// `{"levels": [[names]...], "faces": {"d,i": [...]}, "action": {"g": {"d": [perm]}}}`.
///
/// `faces["d,i"][s]` is `dᵢ` of simplex `s` in level `d`. Elements missing
/// from `action` must act trivially; an empty `action` means the trivial
/// action.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ComplexJson {
    pub levels: Vec<Vec<String>>,
    #[serde(default)]
    pub faces: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, Vec<usize>>>,
}

impl ComplexJson {
    pub fn from_complex(x: &GSemiSimplicialSet) -> Self {
        let levels = (0..x.levels()).map(|d| x.level(d).map(|s| x.name(s)).collect()).collect();
        let mut faces = BTreeMap::new();
        for d in 1..x.levels() {
            for i in 0..=d {
                faces.insert(format!("{d},{i}"), x.level(d).map(|s| x.face(s, i).id).collect());
            }
        }
        let mut action = BTreeMap::new();
        for g in x.group().elements().skip(1) {
            let per: BTreeMap<String, Vec<usize>> =
                (0..x.levels()).map(|d| (d.to_string(), x.action_table()[d][g].clone())).collect();
            action.insert(g.to_string(), per);
        }
        Self { levels, faces, action }
    }

    pub fn into_complex(self, group: &FiniteGroup) -> Result<GSemiSimplicialSet, ComplexError> {
        let n = self.levels.len();
        let mut faces: Vec<Vec<Vec<usize>>> = self.levels.iter().map(|l| vec![Vec::new(); l.len()]).collect();
        for (key, list) in &self.faces {
            let (d, i) = parse_pair(key)?;
            if d == 0 || d >= n || i > d || list.len() != self.levels[d].len() {
                return Err(ComplexError::Json(format!("bad face entry {key:?}")));
            }
            for (s, &f) in list.iter().enumerate() {
                if faces[d][s].len() != i {
                    return Err(ComplexError::Json(format!("face entries for level {d} out of order")));
                }
                faces[d][s].push(f);
            }
        }
        let mut action: Vec<Vec<Vec<usize>>> =
            self.levels.iter().map(|l| vec![(0..l.len()).collect(); group.order()]).collect();
        for (gk, per) in &self.action {
            let g: usize = gk.parse().map_err(|_| ComplexError::Json(format!("bad element key {gk:?}")))?;
            if g >= group.order() {
                return Err(ComplexError::Json(format!("element {g} out of range")));
            }
            for (dk, perm) in per {
                let d: usize = dk.parse().map_err(|_| ComplexError::Json(format!("bad level key {dk:?}")))?;
                if d >= n {
                    return Err(ComplexError::Json(format!("level {d} out of range")));
                }
                action[d][g] = perm.clone();
            }
        }
        GSemiSimplicialSet::new(group, faces, action)?.with_names(self.levels)
    }

    pub fn parse(text: &str, group: &FiniteGroup) -> Result<GSemiSimplicialSet, ComplexError> {
        let raw: Self = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        raw.into_complex(group)
    }

    pub fn to_string_pretty(x: &GSemiSimplicialSet) -> String {
        serde_json::to_string_pretty(&Self::from_complex(x)).expect("complex JSON serializes")
    }
}

fn parse_pair(key: &str) -> Result<(usize, usize), ComplexError> {
    let bad = || ComplexError::Json(format!("bad face key {key:?}"));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

/// One entry of a map's level array: a target index, or a collapsed image.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(untagged)]
pub enum ImageJson {
    Simplex(usize),
    Collapsed { simplex: usize, surjection: Vec<usize> },
}

/// `{"group": ..., "src": complex, "dst": complex, "levels": [[image, ...], ...]}`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MapJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupJson>,
    pub src: ComplexJson,
    pub dst: ComplexJson,
    pub levels: Vec<Vec<ImageJson>>,
}

impl MapJson {
    pub fn from_map(f: &GSimplicialMap) -> Self {
        let levels = f
            .images()
            .iter()
            .map(|l| {
                l.iter()
                    .map(|im| {
                        if im.is_degenerate() {
                            ImageJson::Collapsed { simplex: im.simplex.id, surjection: im.surjection.clone() }
                        } else {
                            ImageJson::Simplex(im.simplex.id)
                        }
                    })
                    .collect()
            })
            .collect();
        Self {
            group: Some(GroupJson::from_group(f.src().group())),
            src: ComplexJson::from_complex(f.src()),
            dst: ComplexJson::from_complex(f.dst()),
            levels,
        }
    }

    /// Loads the map; `fallback` supplies the group when the file has none.
    pub fn into_map(self, fallback: Option<&FiniteGroup>) -> Result<GSimplicialMap, ComplexError> {
        let group = match (self.group, fallback) {
            (Some(g), _) => g.into_group()?,
            (None, Some(g)) => g.clone(),
            (None, None) => return Err(ComplexError::Json("map file names no group".into())),
        };
        let src = Arc::new(self.src.into_complex(&group)?);
        let dst = Arc::new(self.dst.into_complex(&group)?);
        let images = self
            .levels
            .into_iter()
            .enumerate()
            .map(|(d, l)| {
                l.into_iter()
                    .map(|im| match im {
                        ImageJson::Simplex(t) => SimplexImage::nondegenerate(Simplex::new(d, t)),
                        ImageJson::Collapsed { simplex, surjection } => {
                            let e = surjection.iter().copied().max().unwrap_or(0);
                            SimplexImage { simplex: Simplex::new(e, simplex), surjection }
                        }
                    })
                    .collect()
            })
            .collect();
        GSimplicialMap::new(src, dst, images)
    }

    pub fn parse(text: &str, fallback: Option<&FiniteGroup>) -> Result<GSimplicialMap, ComplexError> {
        let raw: Self = serde_json::from_str(text).map_err(|e| ComplexError::Json(e.to_string()))?;
        raw.into_map(fallback)
    }

    pub fn to_string_pretty(f: &GSimplicialMap) -> String {
        serde_json::to_string_pretty(&Self::from_map(f)).expect("map JSON serializes")
    }
}
