use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{LinkOrbitCategory, SubgroupChain};
use crate::complex::{
    product, standard_simplex, GSemiSimplicialSet, GSimplicialMap, ProductComplex, Simplex, SimplexImage,
};
use crate::group::{families, FiniteGroup, SubgroupLattice};
use crate::simplex::{to_semisimplicial, LinkingRealization};

use super::{pushout, ColimitError, PushoutData};

/// A generating cofibration `Δ^chain × ∂ → Δ^chain × Dⁿ`.
///
/// For `n ≥ 1` the attaching region is `Δ^chain × Sⁿ⁻¹`. For `n = 0` it is
/// `∂Δ^chain × D⁰`, the cells over proper subchains; with `S⁻¹ = ∅` the
/// link 0-cells would otherwise float free of the strata they link.
#[derive(Clone, Debug)]
pub struct Cell {
    pub chain: SubgroupChain,
    pub n: usize,
    pub realization: LinkingRealization,
    pub disk: ProductComplex,
    pub boundary: ProductComplex,
    /// `boundary → disk`.
    pub inclusion: GSimplicialMap,
    /// Old ids of the boundary factors inside the realization and `Dⁿ`.
    left_old: Vec<Vec<usize>>,
    right_old: Vec<Vec<usize>>,
}

pub fn generating_cell(chain: &SubgroupChain, n: usize) -> Result<Cell, ColimitError> {
    if n > 2 {
        return Err(ColimitError::Malformed(format!("cells are triangulated up to dimension 2, not {n}")));
    }
    let g = chain.group();
    let realization = to_semisimplicial(chain);
    let r = realization.complex.clone();
    let d = Arc::new(standard_simplex(g, n));
    let full = chain.top();
    let keep_left: Vec<Vec<bool>> =
        realization.cells.iter().map(|l| l.iter().map(|c| n > 0 || c.support.len() < full + 1).collect()).collect();
    let keep_right: Vec<Vec<bool>> = (0..d.levels()).map(|k| vec![n == 0 || k < n; d.count(k)]).collect();
    let (l, left_old) = r.subcomplex(&keep_left)?;
    let (rt, right_old) = d.subcomplex(&keep_right)?;
    let boundary = product(&Arc::new(l), &Arc::new(rt))?;
    let disk = product(&r, &d)?;
    let index: HashMap<&(SimplexImage, SimplexImage), usize> =
        disk.factors.iter().flat_map(|lv| lv.iter().enumerate().map(|(i, k)| (k, i))).collect();
    let lift = |img: &SimplexImage, old: &[Vec<usize>]| SimplexImage {
        simplex: Simplex::new(img.simplex.dim, old[img.simplex.dim][img.simplex.id]),
        surjection: img.surjection.clone(),
    };
    let levels = boundary
        .factors
        .iter()
        .map(|lv| lv.iter().map(|(a, b)| index[&(lift(a, &left_old), lift(b, &right_old))]).collect())
        .collect();
    let inclusion = GSimplicialMap::from_levels(boundary.complex.clone(), disk.complex.clone(), levels)?;
    Ok(Cell { chain: chain.clone(), n, realization, disk, boundary, inclusion, left_old, right_old })
}

impl Cell {
    /// For a boundary simplex: the realization simplex and the disk simplex
    /// its two factors come from, with their surjections.
    pub fn boundary_factors(&self, s: Simplex) -> (SimplexImage, SimplexImage) {
        let (a, b) = &self.boundary.factors[s.dim][s.id];
        let lift = |img: &SimplexImage, old: &[Vec<usize>]| SimplexImage {
            simplex: Simplex::new(img.simplex.dim, old[img.simplex.dim][img.simplex.id]),
            surjection: img.surjection.clone(),
        };
        (lift(a, &self.left_old), lift(b, &self.right_old))
    }

    pub fn name(&self, lattice: &SubgroupLattice) -> String {
        format!("Δ^{{{}}} × D^{}", self.chain.display(lattice), self.n)
    }
}

/// Result of gluing a cell onto `X`.
#[derive(Clone, Debug)]
pub struct Attached {
    pub complex: Arc<GSemiSimplicialSet>,
    /// `X → X ∪ cell`.
    pub inclusion: GSimplicialMap,
    /// `Δ^chain × Dⁿ → X ∪ cell`.
    pub characteristic: GSimplicialMap,
}

/// The pushout of `cell.boundary → cell.disk` along `attaching`.
pub fn attach_cell(
    x: &Arc<GSemiSimplicialSet>,
    cell: &Cell,
    attaching: &GSimplicialMap,
) -> Result<Attached, ColimitError> {
    if attaching.src().as_ref() != cell.boundary.complex.as_ref() || attaching.dst().as_ref() != x.as_ref() {
        return Err(ColimitError::Malformed("attaching map must go from the cell boundary to X".into()));
    }
    attaching.check_isovariant().map_err(|e| ColimitError::NotIsovariantAttachment(e.to_string()))?;
    if !attaching.is_nondegenerate() {
        return Err(ColimitError::DegenerateLeg { leg: "attaching" });
    }
    let d = PushoutData { f: attaching.clone(), g: cell.inclusion.clone() };
    let p = pushout(&d)?;
    Ok(Attached { complex: p.complex.clone(), inclusion: p.from_b, characteristic: p.from_c })
}

/// The `C₂` flip disk with its cell structure.
#[derive(Clone, Debug)]
pub struct FlipDisk {
    pub complex: Arc<GSemiSimplicialSet>,
    /// The two fixed 0-cells.
    pub fixed_points: [Simplex; 2],
    /// Cell names in attachment order.
    pub cells: Vec<String>,
}

/// Builds `D²` with `C₂` reflecting across a diameter: two fixed 0-cells,
/// two free 0-cells, two link 0-cells joining them, and one link 1-cell
/// filling the disk. Every attaching map is isovariant.
pub fn flip_disk() -> Result<FlipDisk, ColimitError> {
    let g = families::cyclic(2).expect("C2");
    let cat = LinkOrbitCategory::new(&g);
    let chain = |name: &str| cat.object(cat.object_by_name(name).expect("chain of C2")).clone();
    let fixed0 = generating_cell(&chain("C2"), 0)?;
    let free0 = generating_cell(&chain("e"), 0)?;
    let link0 = generating_cell(&chain("e<C2"), 0)?;
    let link1 = generating_cell(&chain("e<C2"), 1)?;

    let mut x = Arc::new(GSemiSimplicialSet::empty(&g));
    let mut chars: Vec<GSimplicialMap> = Vec::new();
    let mut names = Vec::new();
    let mut attach = |x: &mut Arc<GSemiSimplicialSet>,
                      chars: &mut Vec<GSimplicialMap>,
                      cell: &Cell,
                      levels: Vec<Vec<usize>>|
     -> Result<(), ColimitError> {
        let f = GSimplicialMap::from_levels(cell.boundary.complex.clone(), x.clone(), levels)?;
        let a = attach_cell(x, cell, &f)?;
        for c in chars.iter_mut() {
            *c = c.then(&a.inclusion)?;
        }
        chars.push(a.characteristic);
        names.push(cell.name(cat.lattice()));
        *x = a.complex;
        Ok(())
    };
    let vertex_of = |c: &GSimplicialMap, s: Simplex| c.image(s).simplex.id;

    for _ in 0..2 {
        attach(&mut x, &mut chars, &fixed0, vec![])?;
    }
    for _ in 0..2 {
        attach(&mut x, &mut chars, &free0, vec![])?;
    }
    // link 0-cells: the fixed end goes to xᵢ, the free ends to yᵢ
    for i in 0..2 {
        let (xi, yi) = (&chars[i], &chars[2 + i]);
        let level0 = link0
            .boundary
            .complex
            .level(0)
            .map(|s| {
                let (l, _) = link0.boundary_factors(s);
                let cell = link0.realization.cell(l.simplex);
                if cell.stabilizer(&link0.chain).is_whole() {
                    vertex_of(xi, fixed0.disk.slice(Simplex::new(0, 0), 0))
                } else {
                    vertex_of(yi, free0.disk.slice(Simplex::new(0, cell.rep), 0))
                }
            })
            .collect();
        attach(&mut x, &mut chars, &link0, vec![level0])?;
    }
    // the link 1-cell spans from the first link 0-cell to the second
    let levels = (0..link1.boundary.complex.levels())
        .map(|k| {
            link1
                .boundary
                .complex
                .level(k)
                .map(|s| {
                    let (l, r) = link1.boundary_factors(s);
                    let m = &chars[4 + r.simplex.id];
                    vertex_of(m, link0.disk.slice(l.simplex, 0))
                })
                .collect()
        })
        .collect();
    attach(&mut x, &mut chars, &link1, levels)?;

    let fixed_points = [chars[0].image(Simplex::new(0, 0)).simplex, chars[1].image(Simplex::new(0, 0)).simplex];
    Ok(FlipDisk { complex: x, fixed_points, cells: names })
}

/// One generating cofibration with its acyclic partner.
#[derive(Clone, Debug)]
pub struct GeneratingEntry {
    pub chain: SubgroupChain,
    pub chain_name: String,
    pub n: usize,
    pub cofibration: String,
    pub acyclic_cofibration: String,
}

impl GeneratingEntry {
    /// The triangulated cell, available for `n ≤ 2`.
    pub fn realize(&self) -> Option<Cell> {
        generating_cell(&self.chain, self.n).ok()
    }
}

/// Every pair `(chain, n)` with `n ≤ n_max`; empty for negative `n_max`.
pub fn generating_sets(group: &FiniteGroup, n_max: i64) -> Vec<GeneratingEntry> {
    if n_max < 0 {
        return Vec::new();
    }
    let cat = LinkOrbitCategory::new(group);
    let mut out = Vec::new();
    for (i, c) in cat.objects().iter().enumerate() {
        let name = cat.object_name(i);
        for n in 0..=n_max as usize {
            out.push(GeneratingEntry {
                chain: c.clone(),
                chain_name: name.clone(),
                n,
                cofibration: format!("Δ^{{{name}}} × S^{} → Δ^{{{name}}} × D^{n}", n as i64 - 1),
                acyclic_cofibration: format!("Δ^{{{name}}} × D^{n} × {{0}} → Δ^{{{name}}} × D^{n} × [0,1]"),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{exact_stratum, stratum_pi0};
    use crate::group::Subgroup;

    #[test]
    fn fixed_point_onto_nothing() {
        let g = families::cyclic(2).unwrap();
        let cat = LinkOrbitCategory::new(&g);
        let cell = generating_cell(cat.object(cat.object_by_name("C2").unwrap()), 0).unwrap();
        let empty = Arc::new(GSemiSimplicialSet::empty(&g));
        let f = GSimplicialMap::from_levels(cell.boundary.complex.clone(), empty.clone(), vec![]).unwrap();
        let a = attach_cell(&empty, &cell, &f).unwrap();
        assert_eq!(a.complex.counts(), vec![1]);
        assert!(a.complex.stabilizer(Simplex::new(0, 0)).is_whole());
    }

    #[test]
    fn free_interval_on_fixed_points_is_rejected() {
        let g = families::cyclic(2).unwrap();
        let cat = LinkOrbitCategory::new(&g);
        let cell = generating_cell(cat.object(cat.object_by_name("e").unwrap()), 1).unwrap();
        // boundary: two free orbits {0,1} × S⁰
        assert_eq!(cell.boundary.complex.counts(), vec![4]);
        let two_fixed = Arc::new(GSemiSimplicialSet::with_trivial_action(&g, vec![vec![vec![], vec![]]]).unwrap());
        let levels = vec![(0..4).map(|s| cell.boundary_factors(Simplex::new(0, s)).1.simplex.id).collect()];
        let f = GSimplicialMap::from_levels(cell.boundary.complex.clone(), two_fixed.clone(), levels).unwrap();
        assert!(f.is_equivariant());
        assert!(matches!(attach_cell(&two_fixed, &cell, &f), Err(ColimitError::NotIsovariantAttachment(_))));
    }

    #[test]
    fn flip_disk_shape() {
        let d = flip_disk().unwrap();
        let x = &d.complex;
        assert_eq!(x.counts(), vec![6, 9, 4]);
        assert_eq!(x.component_count(), 1);
        let g = x.group();
        let fixed = stratum_pi0(x, &exact_stratum(x, &Subgroup::whole(g)));
        assert_eq!(fixed.count, 1);
        let free = stratum_pi0(x, &exact_stratum(x, &Subgroup::trivial(g)));
        assert_eq!(free.count, 2);
        assert!(free.is_transitive());
        assert_eq!(d.cells.len(), 7);
    }

    #[test]
    fn generating_set_counts() {
        let c2 = families::cyclic(2).unwrap();
        assert_eq!(generating_sets(&c2, 2).len(), 9);
        assert_eq!(generating_sets(&families::cyclic(4).unwrap(), 0).len(), 7);
        assert!(generating_sets(&c2, -1).is_empty());
        let e = &generating_sets(&c2, 1)[1];
        assert!(e.cofibration.contains("S^0"));
        assert!(e.realize().is_some());
    }
}
