use std::sync::Arc;

use anyhow::Result;

use linkorbit_core::category::{enumerate_chains, enumerate_chains_brute_force, hom_brute_force};
use linkorbit_core::colimit::{coend, g_isomorphic_with_budget, hocolim_pi0_property_test, representable_diagram};
use linkorbit_core::simplex::{to_semisimplicial, verify_classification, verify_functor_on};
use linkorbit_core::{FiniteGroup, LinkOrbitCategory};

use crate::{Status, Suite};

pub struct Params {
    pub seed: u64,
    pub trials: usize,
    pub budget: u64,
}

fn report(name: &str, ok: bool, detail: String, failures: &[String]) -> Status {
    println!("[{}] {name}: {detail}", if ok { "PASS" } else { "FAIL" });
    for f in failures.iter().take(5) {
        println!("    counterexample: {f}");
    }
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

pub fn run(suite: Suite, g: &FiniteGroup, p: &Params) -> Result<Status> {
    let cat = Arc::new(LinkOrbitCategory::new(g));
    let mut status = Status::Pass;
    let all = suite == Suite::All;
    if all || suite == Suite::Category {
        status = status.and(category(&cat));
    }
    if all || suite == Suite::Functor {
        let r = verify_functor_on(&cat);
        status = status.and(report(
            "functor",
            r.passed(),
            format!(
                "{} morphisms on {} sample points, {} composition checks",
                r.morphisms, r.sample_points, r.composition_checks
            ),
            &r.failures,
        ));
    }
    if all || suite == Suite::LemmaPi0 {
        let r = hocolim_pi0_property_test(p.seed, p.trials, g)?;
        status = status.and(report(
            "lemma-pi0",
            r.passed(),
            format!(
                "{}/{} stratum comparisons agree over {} trials from seed {} ({:.1}%)",
                r.agreements,
                r.comparisons,
                r.trials,
                r.seed,
                100.0 * r.agreement_rate()
            ),
            &r.failures,
        ));
    }
    if all || suite == Suite::Coend {
        status = status.and(representable_coends(&cat, p.budget)?);
    }
    if all || suite == Suite::Classification {
        if g.is_abelian() {
            let r = verify_classification(&cat, p.budget)?;
            status = status.and(report(
                "classification",
                r.passed(),
                format!(
                    "{} maps over {} chain pairs cover {} morphisms, {} missed, {} round-trip mismatches",
                    r.maps_enumerated, r.pairs, r.morphisms, r.missed, r.roundtrip_mismatches
                ),
                &r.failures,
            ));
        } else {
            println!("[SKIP] classification: exact only for abelian groups");
        }
    }
    Ok(status)
}

fn category(cat: &LinkOrbitCategory) -> Status {
    let r = cat.verify_axioms();
    let mut status = report(
        "category axioms",
        r.passed(),
        format!(
            "{} objects, {} morphisms, {} composable pairs, {} associativity triples",
            r.objects, r.morphisms, r.composable_pairs, r.associativity_triples
        ),
        &r.failures,
    );

    let mut fast = enumerate_chains(cat.lattice());
    let mut slow = enumerate_chains_brute_force(cat.lattice());
    fast.sort();
    slow.sort();
    status = status.and(report(
        "chain enumeration oracle",
        fast == slow,
        format!("{} chains, brute force {}", fast.len(), slow.len()),
        &[],
    ));

    let n = cat.objects().len();
    let mut mismatches = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut brute = hom_brute_force(cat.object(a), cat.object(b));
            brute.sort();
            let formula = cat.hom_count_formula(a, b);
            if brute.as_slice() != cat.hom_ids(a, b) || brute.len() != formula {
                mismatches.push(format!(
                    "hom({}, {}): brute force {}, formula {formula}, table {}",
                    cat.object_name(a),
                    cat.object_name(b),
                    brute.len(),
                    cat.hom_ids(a, b).len()
                ));
            }
        }
    }
    status.and(report(
        "hom-set oracle",
        mismatches.is_empty(),
        format!("{} chain pairs, {} mismatches", n * n, mismatches.len()),
        &mismatches,
    ))
}

fn representable_coends(cat: &Arc<LinkOrbitCategory>, budget: u64) -> Result<Status> {
    let mut failures = Vec::new();
    for h in 0..cat.objects().len() {
        let c = coend(&representable_diagram(cat.clone(), h))?;
        let target = to_semisimplicial(cat.object(h)).complex;
        match g_isomorphic_with_budget(&c.complex, &target, budget)? {
            Some(iso) if iso.verify(&c.complex, &target) => {}
            _ => failures.push(format!("chain {}: no G-isomorphism", cat.object_name(h))),
        }
    }
    Ok(report(
        "representable coend",
        failures.is_empty(),
        format!("{} chains, {} without a witness", cat.objects().len(), failures.len()),
        &failures,
    ))
}
