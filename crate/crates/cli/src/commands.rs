use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};

use linkorbit_core::category::DotOptions;
use linkorbit_core::colimit::{
    coend, flip_disk, g_isomorphic_with_budget, generating_sets, representable_diagram, DiagramJson, FORMAL_TERMINAL,
};
use linkorbit_core::complex::{exact_stratum, stratum_pi0, we_obstruction, ComplexJson, MapJson};
use linkorbit_core::group::{families, normalizer, GroupJson};
use linkorbit_core::simplex::to_semisimplicial;
use linkorbit_core::{FiniteGroup, GSemiSimplicialSet, GSimplicialMap, LinkOrbitCategory, SubgroupLattice};

use crate::{verify, Command, SimplexAction, Status};

/// Resolves `--group`: an existing file is read as group JSON, anything
/// else as a family name.
pub fn load_group(arg: &str) -> Result<FiniteGroup> {
    let path = Path::new(arg);
    if arg.ends_with(".json") || path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading group file {arg}"))?;
        return GroupJson::parse(&text).with_context(|| format!("loading group file {arg}"));
    }
    families::by_name(arg).map_err(Into::into)
}

/// One line that reproduces the run.
pub fn config_line(cmd: &Command) -> String {
    match cmd {
        Command::Lattice { group, json } => format!("lattice group={} json={json}", group.group),
        Command::Chains { group, cells } => {
            format!("chains group={} cells={}", group.group, cells.map_or("none".into(), |n| n.to_string()))
        }
        Command::Category { group, dot, json, no_self_maps, emit } => format!(
            "category group={} dot={dot} json={json} no_self_maps={no_self_maps} emit={}",
            group.group,
            show(emit)
        ),
        Command::Simplex { action: SimplexAction::Describe { group, chain, json, emit } } => {
            format!("simplex describe group={} chain={chain} json={json} emit={}", group.group, show(emit))
        }
        Command::Check { isovariant, we, group } => format!(
            "check isovariant={} we={we} group={}",
            isovariant.display(),
            group.as_deref().unwrap_or("from-file")
        ),
        Command::Coend { group, diagram, representable, emit, emit_diagram, budget } => format!(
            "coend group={} diagram={} representable={} emit={} emit_diagram={} budget={budget}",
            group.group,
            show(diagram),
            representable.as_deref().unwrap_or("none"),
            show(emit),
            show(emit_diagram)
        ),
        Command::Flipdisk { emit, emit_collapse, emit_axis } => {
            format!("flipdisk emit={} emit_collapse={} emit_axis={}", show(emit), show(emit_collapse), show(emit_axis))
        }
        Command::Verify { suite, group, seed, trials, budget } => {
            format!("verify suite={suite:?} group={} seed={seed} trials={trials} budget={budget}", group.group)
        }
    }
}

fn show(p: &Option<PathBuf>) -> String {
    p.as_ref().map_or_else(|| "none".into(), |p| p.display().to_string())
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Lattice { group, json } => lattice(&load_group(&group.group)?, json),
        Command::Chains { group, cells } => chains(&load_group(&group.group)?, cells),
        Command::Category { group, dot, json, no_self_maps, emit } => {
            let cat = LinkOrbitCategory::new(&load_group(&group.group)?);
            let text = if json {
                cat.to_json().to_string_pretty() + "\n"
            } else if dot || no_self_maps {
                cat.to_dot(DotOptions { suppress_self_maps: no_self_maps })
            } else {
                category_summary(&cat)
            };
            match emit {
                Some(p) => write(&p, &text)?,
                None => print!("{text}"),
            }
            Ok(Status::Pass)
        }
        Command::Simplex { action: SimplexAction::Describe { group, chain, json, emit } } => {
            let cat = LinkOrbitCategory::new(&load_group(&group.group)?);
            let id = cat.object_by_name(&chain).ok_or_else(|| unknown_chain(&cat, &chain))?;
            let real = to_semisimplicial(cat.object(id));
            let complex_json = ComplexJson::to_string_pretty(&real.complex) + "\n";
            if let Some(p) = emit {
                write(&p, &complex_json)?;
            }
            if json {
                print!("{complex_json}");
            } else {
                print!("{}", real.describe(cat.lattice()));
                print_strata(&real.complex, cat.lattice());
            }
            Ok(Status::Pass)
        }
        Command::Check { isovariant, we, group } => {
            let fallback = group.as_deref().map(load_group).transpose()?;
            let text = fs::read_to_string(&isovariant).with_context(|| format!("reading {}", isovariant.display()))?;
            let f = MapJson::parse(&text, fallback.as_ref())
                .with_context(|| format!("loading {}", isovariant.display()))?;
            Ok(check(&f, we))
        }
        Command::Coend { group, diagram, representable, emit, emit_diagram, budget } => {
            coend_cmd(&group.group, diagram, representable, emit, emit_diagram, budget)
        }
        Command::Flipdisk { emit, emit_collapse, emit_axis } => flipdisk(emit, emit_collapse, emit_axis),
        Command::Verify { suite, group, seed, trials, budget } => {
            let g = load_group(&group.group)?;
            verify::run(suite, &g, &verify::Params { seed, trials, budget })
        }
    }
}

fn unknown_chain(cat: &LinkOrbitCategory, name: &str) -> anyhow::Error {
    let names: Vec<String> = (0..cat.objects().len()).map(|i| cat.object_name(i)).collect();
    anyhow!("no chain named {name:?}; chains are {}", names.join(", "))
}

fn lattice(g: &FiniteGroup, json: bool) -> Result<Status> {
    if json {
        println!("{}", GroupJson::to_string_pretty(g));
        return Ok(Status::Pass);
    }
    let lat = SubgroupLattice::new(g);
    println!("group {} of order {}", g.name().unwrap_or("G"), g.order());
    for (i, h) in lat.subgroups().iter().enumerate() {
        let n = normalizer(g, h)?;
        let elems: Vec<&str> = h.elements().iter().map(|&x| g.element_name(x)).collect();
        println!(
            "{:<6} order {:<2} {} N={} {{{}}}",
            lat.name_at(i),
            h.order(),
            if h.is_normal() { "normal " } else { "       " },
            lat.name(&n),
            elems.join(",")
        );
    }
    Ok(Status::Pass)
}

fn chains(g: &FiniteGroup, cells: Option<i64>) -> Result<Status> {
    let cat = LinkOrbitCategory::new(g);
    for (i, c) in cat.objects().iter().enumerate() {
        println!("{:<16} length {} multi-Weil order {}", cat.object_name(i), c.len(), c.multi_weil_order());
    }
    if let Some(n) = cells {
        let entries = generating_sets(g, n);
        println!("generating sets up to n = {n}: {} entries", entries.len());
        for e in entries {
            println!("  I: {}", e.cofibration);
            println!("  J: {}", e.acyclic_cofibration);
        }
    }
    Ok(Status::Pass)
}

fn category_summary(cat: &LinkOrbitCategory) -> String {
    let mut out = format!("{} objects, {} morphisms\n", cat.objects().len(), cat.morphism_count());
    for (&(a, b), ms) in cat.nonempty_homs() {
        out += &format!("  {} -> {}: {}\n", cat.object_name(a), cat.object_name(b), ms.len());
    }
    out += &format!("terminal object: {FORMAL_TERMINAL}\n");
    out
}

fn print_strata(x: &GSemiSimplicialSet, lat: &SubgroupLattice) {
    for h in lat.subgroups() {
        let s = exact_stratum(x, h);
        if s.is_empty() {
            continue;
        }
        let p = stratum_pi0(x, &s);
        println!(
            "stratum {}: {} simplices, pi0 {}, normalizer orbits {}{}",
            lat.name(h),
            s.len(),
            p.count,
            p.orbit_count(),
            if p.is_transitive() { " (transitive)" } else { "" }
        );
    }
}

fn check(f: &GSimplicialMap, we: bool) -> Status {
    let mut status = match f.check_isovariant() {
        Ok(()) => {
            println!("isovariant: yes");
            Status::Pass
        }
        Err(e) => {
            println!("isovariant: no");
            println!("counterexample: {e}");
            Status::Fail
        }
    };
    if we {
        let lat = SubgroupLattice::new(f.src().group());
        let r = we_obstruction(f);
        for row in &r.rows {
            println!(
                "stratum {}: pi0 {} -> {}, orbits {} -> {}{}",
                lat.name(&row.subgroup),
                row.source_pi0,
                row.target_pi0,
                row.source_orbits,
                row.target_orbits,
                row.problem.as_ref().map_or(String::new(), |p| format!("  FAIL {p}"))
            );
        }
        if r.failed() {
            println!("weak equivalence: obstructed");
            for p in r.problems() {
                println!("  {p}");
            }
            status = Status::Fail;
        } else {
            println!("weak equivalence: no obstruction on strata");
        }
    }
    status
}

fn coend_cmd(
    group: &str,
    diagram: Option<PathBuf>,
    representable: Option<String>,
    emit: Option<PathBuf>,
    emit_diagram: Option<PathBuf>,
    budget: u64,
) -> Result<Status> {
    let (d, target) = match (diagram, representable) {
        (Some(p), None) => {
            let text = fs::read_to_string(&p).with_context(|| format!("reading {}", p.display()))?;
            (DiagramJson::parse(&text).with_context(|| format!("loading {}", p.display()))?, None)
        }
        (None, Some(name)) => {
            let cat = Arc::new(LinkOrbitCategory::new(&load_group(group)?));
            let id = cat.object_by_name(&name).ok_or_else(|| unknown_chain(&cat, &name))?;
            let target = to_semisimplicial(cat.object(id)).complex;
            (representable_diagram(cat, id), Some((name, target)))
        }
        _ => bail!("give exactly one of --diagram or --representable"),
    };
    if let Some(p) = emit_diagram {
        write(&p, &(DiagramJson::to_string_pretty(&d) + "\n"))?;
    }
    let c = coend(&d)?;
    println!("coend: simplices per dimension {:?}", c.complex.counts());
    print_strata(&c.complex, d.category.lattice());
    if let Some(p) = emit {
        write(&p, &(ComplexJson::to_string_pretty(&c.complex) + "\n"))?;
    }
    let Some((name, target)) = target else { return Ok(Status::Pass) };
    match g_isomorphic_with_budget(&c.complex, &target, budget)? {
        Some(iso) if iso.verify(&c.complex, &target) => {
            println!("G-isomorphic to the realization of Δ^{name}: yes");
            Ok(Status::Pass)
        }
        _ => {
            println!("G-isomorphic to the realization of Δ^{name}: no");
            Ok(Status::Fail)
        }
    }
}

fn flipdisk(emit: Option<PathBuf>, emit_collapse: Option<PathBuf>, emit_axis: Option<PathBuf>) -> Result<Status> {
    let d = flip_disk()?;
    let x = &d.complex;
    let lat = SubgroupLattice::new(x.group());
    println!("flip disk: simplices per dimension {:?}", x.counts());
    println!("cells: {}", d.cells.join(", "));
    print_strata(x, &lat);
    if let Some(p) = emit {
        write(&p, &(ComplexJson::to_string_pretty(x) + "\n"))?;
    }
    let pt = Arc::new(GSemiSimplicialSet::point(x.group()));
    if let Some(p) = emit_collapse {
        let f = GSimplicialMap::constant(x.clone(), pt.clone(), 0)?;
        write(&p, &(MapJson::to_string_pretty(&f) + "\n"))?;
    }
    if let Some(p) = emit_axis {
        let f = GSimplicialMap::constant(pt, x.clone(), d.fixed_points[0].id)?;
        write(&p, &(MapJson::to_string_pretty(&f) + "\n"))?;
    }
    Ok(Status::Pass)
}
