//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;

use linkorbit_core::category::hom_brute_force;
use linkorbit_core::colimit::{
    attach_cell, coend, flip_disk, g_isomorphic, generating_cell, hocolim_pi0_property_test, representable_diagram,
    ColimitError, DiagramJson, DEFAULT_BUDGET,
};
use linkorbit_core::complex::{
    exact_stratum, g_set, interval_with_negation, isovariant_product_discrete, isovariant_product_membership,
    stratum_pi0, we_obstruction, ComplexPoint,
};
use linkorbit_core::group::{families, GroupError, GroupJson};
use linkorbit_core::simplex::{to_semisimplicial, verify_classification, verify_functor};
use linkorbit_core::{FiniteGroup, GSemiSimplicialSet, GSimplicialMap, LinkOrbitCategory, Simplex, Subgroup};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn battery() -> Vec<(&'static str, FiniteGroup)> {
    families::BATTERY.iter().map(|&n| (n, families::by_name(n).unwrap())).collect()
}

fn linkorbit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkorbit")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn per_group_bound(bound: Duration, run: impl Fn(&str, &FiniteGroup) -> Result<(), String>) -> Outcome {
    let mut times = Vec::new();
    for (name, g) in battery() {
        let t = Instant::now();
        run(name, &g)?;
        let dt = t.elapsed();
        ensure(dt < bound, || format!("{name} took {dt:?}"))?;
        times.push(format!("{name} {:.2}s", dt.as_secs_f64()));
    }
    Ok(times.join(", "))
}

fn category_axioms() -> Outcome {
    per_group_bound(Duration::from_secs(60), |name, _| {
        let o = linkorbit(&["verify", "category", "--group", name]);
        ensure(o.status.code() == Some(0), || format!("{name}: exit {:?}\n{}", o.status.code(), stdout(&o)))
    })
}

fn hom_count_oracle() -> Outcome {
    let mut pairs = 0;
    for (name, g) in battery() {
        let cat = LinkOrbitCategory::new(&g);
        let n = cat.objects().len();
        for a in 0..n {
            for b in 0..n {
                pairs += 1;
                let brute = hom_brute_force(cat.object(a), cat.object(b)).len();
                let formula = cat.hom_count_formula(a, b);
                ensure(brute == formula, || {
                    format!(
                        "{name}: hom({}, {}) brute {brute} formula {formula}",
                        cat.object_name(a),
                        cat.object_name(b)
                    )
                })?;
            }
        }
    }
    Ok(format!("{pairs} chain pairs, 0 mismatches"))
}

fn c4_figure() -> Outcome {
    let args = ["category", "--group", "c4", "--no-self-maps"];
    let first = linkorbit(&args);
    let second = linkorbit(&args);
    ensure(first.status.success(), || "category exited nonzero".into())?;
    ensure(first.stdout == second.stdout, || "DOT differs between runs".into())?;
    let dot = stdout(&first);

    let mut labels: BTreeMap<String, String> = BTreeMap::new();
    let mut edges: BTreeMap<(String, String), usize> = BTreeMap::new();
    for line in dot.lines().map(str::trim) {
        if let Some((lhs, rhs)) = line.split_once(" -> ") {
            let dst = rhs.split_whitespace().next().unwrap().to_string();
            *edges.entry((lhs.to_string(), dst)).or_default() += 1;
        } else if let Some((node, rest)) = line.split_once(" [label=\"") {
            if node.starts_with('n') {
                labels.insert(node.to_string(), rest.trim_end_matches("\"];").to_string());
            }
        }
    }
    ensure(labels.len() == 7, || format!("{} nodes", labels.len()))?;

    // Independent oracle: an arrow K → H exists iff K is a proper subchain
    // of H, and (all inclusions being unique in C4) its multiplicity is
    // |C4 : K₀| read off the chain's bottom subgroup name.
    let chain = |n: &str| labels[n].split('<').map(str::to_string).collect::<Vec<_>>();
    let index = |h: &str| match h {
        "e" => 4,
        "C2" => 2,
        "C4" => 1,
        other => panic!("unexpected subgroup {other}"),
    };
    for a in labels.keys() {
        for b in labels.keys() {
            let (ca, cb) = (chain(a), chain(b));
            let sub = a != b && ca.iter().all(|h| cb.contains(h));
            let want = if sub { index(&ca[0]) } else { 0 };
            let got = edges.get(&(a.clone(), b.clone())).copied().unwrap_or(0);
            ensure(got == want, || format!("{} -> {}: {got} arrows, expected {want}", labels[a], labels[b]))?;
        }
    }
    Ok(format!("7 nodes, {} arrows, byte-stable", edges.values().sum::<usize>()))
}

fn functoriality() -> Outcome {
    let mut checks = 0;
    for (name, g) in battery() {
        let r = verify_functor(&g);
        ensure(r.passed(), || format!("{name}: {:?}", r.failures))?;
        checks += r.composition_checks + r.identity_checks;
    }
    Ok(format!("{checks} identity and composition checks"))
}

fn representable_coend() -> Outcome {
    let t = Instant::now();
    let mut chains = 0;
    for name in ["c2", "c4", "s3"] {
        let cat = Arc::new(LinkOrbitCategory::new(&families::by_name(name).unwrap()));
        for h in 0..cat.objects().len() {
            chains += 1;
            let c = coend(&representable_diagram(cat.clone(), h)).map_err(|e| e.to_string())?;
            let target = to_semisimplicial(cat.object(h)).complex;
            let iso = g_isomorphic(&c.complex, &target).map_err(|e| e.to_string())?;
            ensure(iso.is_some_and(|i| i.verify(&c.complex, &target)), || {
                format!("{name}: no witness for {}", cat.object_name(h))
            })?;
        }
    }
    ensure(t.elapsed() < Duration::from_secs(120), || format!("took {:?}", t.elapsed()))?;
    Ok(format!("{chains} chains certified within budget {DEFAULT_BUDGET}"))
}

fn flip_disk_example() -> Outcome {
    let d = flip_disk().map_err(|e| e.to_string())?;
    let x = d.complex.clone();
    let g = x.group().clone();
    let pt = Arc::new(GSemiSimplicialSet::point(&g));

    let axis = GSimplicialMap::constant(pt.clone(), x.clone(), d.fixed_points[0].id).unwrap();
    ensure(axis.is_isovariant(), || "axis map rejected".into())?;
    let collapse = GSimplicialMap::constant(x.clone(), pt, 0).unwrap();
    let err = collapse.check_isovariant().err().ok_or("collapse accepted")?;
    ensure(x.stabilizer(err.simplex()).is_trivial(), || "counterexample is not a free simplex".into())?;

    let we = we_obstruction(&axis);
    let free = we.rows.iter().find(|r| r.subgroup.is_trivial()).unwrap();
    ensure(we.failed() && free.source_pi0 == 0 && free.target_pi0 > 0, || "free stratum not cited".into())?;
    ensure(free.problem.as_deref().is_some_and(|p| p.contains("free") && p.contains("empty")), || {
        format!("problem text {:?}", free.problem)
    })?;

    let fixed = stratum_pi0(&x, &exact_stratum(&x, &Subgroup::whole(&g)));
    let free_pi0 = stratum_pi0(&x, &exact_stratum(&x, &Subgroup::trivial(&g)));
    ensure(fixed.count == 1 && free_pi0.count == 2 && free_pi0.is_transitive(), || {
        format!("strata pi0 fixed {} free {}", fixed.count, free_pi0.count)
    })?;

    // the same through the binary
    let (c, a) = (scratch("collapse.json"), scratch("axis.json"));
    let o = linkorbit(&["flipdisk", "--emit-collapse", c.to_str().unwrap(), "--emit-axis", a.to_str().unwrap()]);
    ensure(o.status.success(), || "flipdisk failed".into())?;
    let o = linkorbit(&["check", "--isovariant", c.to_str().unwrap()]);
    ensure(o.status.code() == Some(1) && stdout(&o).contains("counterexample: simplex"), || stdout(&o))?;
    let o = linkorbit(&["check", "--isovariant", a.to_str().unwrap()]);
    ensure(o.status.code() == Some(0), || stdout(&o))?;
    Ok("axis accepted, collapse rejected, free stratum cited, pi0 fixed 1 free 2 transitive".into())
}

fn isovariant_product() -> Outcome {
    let x = interval_with_negation();
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let origin = ComplexPoint::new(Simplex::new(0, 0), vec![r(1, 1)]);
    let plus_one = ComplexPoint::new(Simplex::new(0, 2), vec![r(1, 1)]);
    // the two edges run from the origin outward
    let inner = |e: usize, t: i64| ComplexPoint::new(Simplex::new(1, e), vec![r(4 - t, 4), r(t, 4)]);
    let zero_by_coords = inner(0, 0);
    let m = |p: &ComplexPoint, q: &ComplexPoint| isovariant_product_membership(&x, &x, p, q).map_err(|e| e.to_string());

    let cases = [
        ("both zero", &origin, &origin, true),
        ("both zero, via an edge", &zero_by_coords, &origin, true),
        ("mixed", &origin, &plus_one, false),
        ("mixed", &inner(1, 3), &origin, false),
        ("both nonzero", &inner(0, 1), &inner(1, 2), true),
        ("both nonzero", &plus_one, &inner(0, 4), true),
    ];
    for (what, p, q, want) in cases {
        ensure(m(p, q)? == want, || format!("{what}: {p:?}, {q:?}"))?;
    }

    let g = families::cyclic(2).unwrap();
    let three = g_set(&g, &[Subgroup::whole(&g), Subgroup::trivial(&g)]).unwrap();
    ensure(three.count(0) == 3, || "3-point set".into())?;
    let (prod, _) = isovariant_product_discrete(&three, &three).map_err(|e| e.to_string())?;
    ensure(prod.count(0) == 5, || format!("{} points", prod.count(0)))?;
    Ok("membership exact on all cases, discrete product has 5 points".into())
}

fn lemma_pi0() -> Outcome {
    per_group_bound(Duration::from_secs(120), |name, g| {
        let r = hocolim_pi0_property_test(0, 200, g).map_err(|e| e.to_string())?;
        ensure(r.passed() && r.trials == 200, || format!("{name}: {:?}", r.failures))
    })
}

fn classification() -> Outcome {
    let mut maps = 0;
    for name in ["c2", "c4"] {
        let cat = LinkOrbitCategory::new(&families::by_name(name).unwrap());
        let r = verify_classification(&cat, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{name}: {:?}", r.failures))?;
        maps += r.maps_enumerated;
    }
    Ok(format!("{maps} maps classified, 0 mismatches"))
}

fn mutations() -> Outcome {
    // non-associative table: a latin square with identity 0 that is not
    // a group, in memory and through the binary
    let mut json = GroupJson::from_group(&families::cyclic(5).unwrap());
    json.mult =
        vec![vec![0, 1, 2, 3, 4], vec![1, 0, 3, 4, 2], vec![2, 4, 0, 1, 3], vec![3, 2, 4, 0, 1], vec![4, 3, 1, 2, 0]];
    json.names = None;
    ensure(matches!(json.clone().into_group(), Err(GroupError::NonAssociativeTable { .. })), || {
        "latin square accepted".into()
    })?;
    let p = scratch("bad_group.json");
    std::fs::write(&p, serde_json::to_string(&json).unwrap()).unwrap();
    let o = linkorbit(&["lattice", "--group", p.to_str().unwrap()]);
    ensure(o.status.code() == Some(2) && String::from_utf8_lossy(&o.stderr).contains("not associative"), || {
        format!("binary: {:?}", o.status.code())
    })?;

    // non-functorial diagram: swap the two points hit by one arrow
    let cat = Arc::new(LinkOrbitCategory::new(&families::cyclic(2).unwrap()));
    let top = cat.object_by_name("e<C2").unwrap();
    let mut dj = DiagramJson::from_diagram(&representable_diagram(cat.clone(), top));
    let e = cat.object_by_name("e").unwrap();
    let key = format!("{e}->{top}");
    let arrow = &mut dj.arrows.get_mut(&key).ok_or("no arrow e -> e<C2")?[0];
    arrow[0].reverse();
    let text = serde_json::to_string(&dj).unwrap();
    match DiagramJson::parse(&text) {
        Err(ColimitError::NonFunctorialDiagram(_)) => {}
        other => return Err(format!("corrupted diagram gave {:?}", other.map(|_| ()))),
    }
    let p = scratch("bad_diagram.json");
    std::fs::write(&p, &text).unwrap();
    let o = linkorbit(&["coend", "--diagram", p.to_str().unwrap()]);
    ensure(o.status.code() == Some(2), || format!("binary accepted the diagram: {:?}", o.status.code()))?;

    // non-isovariant attachment: a free 1-cell glued onto two fixed points
    let g = families::cyclic(2).unwrap();
    let cat = LinkOrbitCategory::new(&g);
    let cell = generating_cell(cat.object(cat.object_by_name("e").unwrap()), 1).map_err(|e| e.to_string())?;
    let two_fixed = Arc::new(GSemiSimplicialSet::with_trivial_action(&g, vec![vec![vec![], vec![]]]).unwrap());
    let n = cell.boundary.complex.count(0);
    let levels = vec![(0..n).map(|s| cell.boundary_factors(Simplex::new(0, s)).1.simplex.id).collect()];
    let f = GSimplicialMap::from_levels(cell.boundary.complex.clone(), two_fixed.clone(), levels).unwrap();
    ensure(f.is_equivariant(), || "attaching map should be equivariant".into())?;
    match attach_cell(&two_fixed, &cell, &f) {
        Err(ColimitError::NotIsovariantAttachment(_)) => {}
        other => return Err(format!("attachment gave {:?}", other.map(|_| ()))),
    }
    Ok("table, diagram and attachment mutations rejected".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("category axioms", category_axioms),
        ("hom-count oracle", hom_count_oracle),
        ("C4 figure", c4_figure),
        ("functoriality", functoriality),
        ("representable coend", representable_coend),
        ("flip disk example", flip_disk_example),
        ("isovariant product", isovariant_product),
        ("pi0 of homotopy pushouts", lemma_pi0),
        ("map classification", classification),
        ("mutation robustness", mutations),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let dt = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({dt:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({dt:.2}s): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
