//! Acceptance gate: ten timed criteria covering the comodule axioms, the
//! splitting of the coaction, the canonical braiding, uniqueness, the
//! brute-force cross-check, the monoidal functor, descent, separability,
//! and the probe dimension. Every assertion is exact; each criterion also
//! carries a wall-clock budget. Run with `-- --nocapture` to see the lines.

use std::time::{Duration, Instant};

use sweedler::algebra::{builtin, Algebra};
use sweedler::braiding::{check_cofree_monoidal, verify_braiding, BraidFamily, BraidingOptions};
use sweedler::comodule::{
    check_comodule, check_descent_equivalence, check_morphism, check_splitting, cofree,
    regular_comodule, rho_as_morphism, splitting_muE, Comodule,
};
use sweedler::field::{FieldSpec, Scalar};
use sweedler::oracle::enumerate_with_oracle;
use sweedler::separability::{
    build_E_from_augmentation, build_E_from_separability, build_E_unit_projection, check_E,
    check_separability_element, find_separability_element, CentralMap,
};
use sweedler::solver::enumerate_braidings;
use sweedler::tensor::tensor_over_a;

const ZOO_Q: [&str; 7] =
    ["q", "dual-numbers", "prod2", "group:c2", "group:c3", "m2", "quaternion:-1,-1"];
const ZOO_F7: [&str; 4] = ["q", "dual-numbers", "prod2", "group:c2"];

fn zoo() -> Vec<(String, Algebra)> {
    let f7 = FieldSpec::prime(7).expect("7 is prime");
    let mut out = Vec::new();
    for name in ZOO_Q {
        out.push((format!("{name} over Q"), builtin(FieldSpec::Rationals, name).expect(name)));
    }
    for name in ZOO_F7 {
        out.push((format!("{name} over F7"), builtin(f7, name).expect(name)));
    }
    out
}

/// Character of the algebra when one is evident from the construction.
fn known_character(name: &str, a: &Algebra) -> Option<Vec<Scalar>> {
    let one = a.field.one();
    let zero = a.field.zero();
    if name.starts_with("q") {
        return Some(vec![one]);
    }
    if name.starts_with("dual-numbers") || name.starts_with("prod2") {
        return Some(vec![one, zero]);
    }
    if name.starts_with("group:") {
        return Some(vec![one; a.dim]);
    }
    None
}

/// Every splitting-map constructor that applies to this algebra.
fn applicable_es(name: &str, a: &Algebra) -> Vec<(String, CentralMap)> {
    let mut out = Vec::new();
    if let Some(sep) = find_separability_element(a) {
        let e = build_E_from_separability(a, &sep).expect("separability element is checked");
        out.push(("separability".into(), e));
    }
    let up = build_E_unit_projection(a);
    if check_E(a, &up).passed() {
        out.push(("unit projection".into(), up));
    }
    if let Some(eps) = known_character(name, a) {
        if let Ok(e) = build_E_from_augmentation(a, &eps) {
            out.push(("augmentation".into(), e));
        }
    }
    out
}

/// One valid splitting map per algebra, preferring the separability one.
fn default_e(name: &str, a: &Algebra) -> CentralMap {
    applicable_es(name, a)
        .into_iter()
        .next()
        .unwrap_or_else(|| panic!("no splitting map applies to {name}"))
        .1
}

fn braid_objects(a: &Algebra) -> Vec<(String, Comodule)> {
    vec![
        ("A".to_string(), regular_comodule(a)),
        ("A (x) A".to_string(), cofree(a, a.dim)),
        ("F(V2)".to_string(), cofree(a, 2)),
    ]
}

fn criterion_1_comodule_axioms() -> Result<(), String> {
    for (name, a) in zoo() {
        let base = [
            ("regular".to_string(), regular_comodule(&a)),
            ("cofree V1".to_string(), cofree(&a, 1)),
            ("cofree V2".to_string(), cofree(&a, 2)),
        ];
        for (label, m) in &base {
            let rep = check_comodule(&a, m);
            if !rep.passed() {
                return Err(format!("{name}: {label} fails the comodule axioms"));
            }
            let target = cofree(&a, m.dim);
            let rep = check_morphism(&a, m, &target, &rho_as_morphism(&a, m));
            if !rep.passed() {
                return Err(format!("{name}: rho on {label} is not a comodule morphism"));
            }
        }
        for (ml, m) in &base {
            for (nl, n) in &base {
                let t = tensor_over_a(&a, m, n).map_err(|e| format!("{name}: {e}"))?;
                let rep = check_comodule(&a, &t.comodule);
                if !rep.passed() {
                    return Err(format!("{name}: {ml} (x)_A {nl} fails the comodule axioms"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_2_splitting() -> Result<(), String> {
    for (name, a) in zoo() {
        let es = applicable_es(name.split(' ').next().unwrap(), &a);
        if es.is_empty() {
            return Err(format!("{name}: no splitting-map constructor applies"));
        }
        for (kind, e) in es {
            for (label, m) in
                [("regular".to_string(), regular_comodule(&a)), ("cofree V2".to_string(), cofree(&a, 2))]
            {
                let mu = splitting_muE(&a, &e, &m)
                    .map_err(|e| format!("{name}: {kind} on {label}: {e}"))?;
                let rep = check_splitting(&a, &m, &mu);
                if !rep.passed() {
                    return Err(format!(
                        "{name}: {kind} splitting on {label} fails {}",
                        rep.first_failure().map(|c| c.name.clone()).unwrap_or_default()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn criterion_3_canonical_braiding() -> Result<(), String> {
    for (name, a) in zoo() {
        let rep = verify_braiding(
            &a,
            &BraidFamily::Canonical,
            &braid_objects(&a),
            &BraidingOptions::default(),
        );
        if !rep.passed() {
            return Err(format!(
                "{name}: canonical braiding fails {}",
                rep.first_failure().map(|c| c.name.clone()).unwrap_or_default()
            ));
        }
    }
    Ok(())
}

fn criterion_4_twisted_family() -> Result<(), String> {
    let opts = BraidingOptions { fail_fast: true, ..BraidingOptions::default() };
    for (name, a) in zoo() {
        let mut candidates: Vec<Vec<Scalar>> = (0..a.dim).map(|i| a.basis_el(i)).collect();
        if a.field.characteristic() != 2 {
            let two: Vec<Scalar> = a.unit.iter().map(|u| u.add(u)).collect();
            candidates.push(two);
        }
        if name.starts_with("prod2") {
            let mut idem = vec![a.field.zero(); a.dim];
            idem[0] = a.field.one();
            candidates.push(idem);
        }
        for elt in candidates {
            let expected = elt == a.unit;
            let rep = verify_braiding(&a, &BraidFamily::Ca(elt.clone()), &braid_objects(&a), &opts);
            if rep.passed() != expected {
                return Err(format!(
                    "{name}: twist by {} {} verification",
                    a.el_to_string(&elt),
                    if rep.passed() { "passes" } else { "fails" }
                ));
            }
        }
    }
    Ok(())
}

fn criterion_5_uniqueness() -> Result<(), String> {
    for (name, a) in zoo() {
        let e = default_e(name.split(' ').next().unwrap(), &a);
        let rep = enumerate_braidings(&a, &e).map_err(|e| format!("{name}: {e}"))?;
        if !rep.exactly_canonical {
            return Err(format!("{name}: survivor set is not exactly the canonical braiding"));
        }
        let dims: Vec<usize> = rep.stages.iter().map(|s| s.dim).collect();
        if dims.windows(2).any(|w| w[1] > w[0]) {
            return Err(format!("{name}: stage dimensions {dims:?} are not monotone"));
        }
    }
    Ok(())
}

fn criterion_6_oracle_agreement() -> Result<(), String> {
    for (name, a) in zoo() {
        if a.dim > 4 {
            continue;
        }
        let e = default_e(name.split(' ').next().unwrap(), &a);
        let (rep, _orc) = enumerate_with_oracle(&a, &e).map_err(|e| format!("{name}: {e}"))?;
        if rep.oracle_agrees != Some(true) {
            return Err(format!("{name}: oracle and pipeline disagree"));
        }
    }
    Ok(())
}

fn criterion_7_monoidal_functor() -> Result<(), String> {
    for (name, a) in zoo() {
        for v in 1..=3 {
            for w in 1..=3 {
                let rep = check_cofree_monoidal(&a, v, w);
                if !rep.passed() {
                    return Err(format!(
                        "{name}: F on V{v}, V{w} fails {}",
                        rep.first_failure().map(|c| c.name.clone()).unwrap_or_default()
                    ));
                }
            }
        }
    }
    Ok(())
}

fn criterion_8_descent() -> Result<(), String> {
    for (name, a) in zoo() {
        for v in 1..=3 {
            for (label, m) in
                [("regular".to_string(), regular_comodule(&a)), ("cofree V2".to_string(), cofree(&a, 2))]
            {
                let rep = check_descent_equivalence(&a, v, &m);
                if !rep.passed() {
                    return Err(format!("{name}: descent fails for V{v} and {label}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_9_separability() -> Result<(), String> {
    let q = FieldSpec::Rationals;
    for name in ["m2", "group:c2", "group:c3", "quaternion:-1,-1"] {
        let a = builtin(q, name).expect(name);
        match find_separability_element(&a) {
            Some(e) => {
                if !check_separability_element(&a, &e).passed() {
                    return Err(format!("{name}: found element fails verification"));
                }
            }
            None => return Err(format!("{name}: no separability element found")),
        }
    }
    let dual = builtin(q, "dual-numbers").unwrap();
    if find_separability_element(&dual).is_some() {
        return Err("dual numbers: a separability element appeared".into());
    }
    for (name, a) in zoo() {
        if let Some(e) = find_separability_element(&a) {
            if !check_separability_element(&a, &e).passed() {
                return Err(format!("{name}: found element fails verification"));
            }
        }
    }
    Ok(())
}

fn criterion_10_probe_dimension() -> Result<(), String> {
    for (name, a) in zoo() {
        let aa = cofree(&a, a.dim);
        let probe = tensor_over_a(&a, &aa, &aa).map_err(|e| format!("{name}: {e}"))?;
        let expected = a.dim * a.dim * a.dim;
        if probe.comodule.dim != expected {
            return Err(format!(
                "{name}: probe dimension {} instead of {expected}",
                probe.comodule.dim
            ));
        }
    }
    Ok(())
}

struct Outcome {
    index: usize,
    name: &'static str,
    budget: Duration,
    elapsed: Duration,
    result: Result<(), String>,
}

fn run(
    outcomes: &mut Vec<Outcome>,
    index: usize,
    name: &'static str,
    budget_secs: u64,
    f: fn() -> Result<(), String>,
) {
    let start = Instant::now();
    let result = f();
    outcomes.push(Outcome {
        index,
        name,
        budget: Duration::from_secs(budget_secs),
        elapsed: start.elapsed(),
        result,
    });
}

#[test]
fn acceptance() {
    let mut outcomes = Vec::new();
    run(&mut outcomes, 1, "comodule axioms on regular, cofree and tensor objects", 10, criterion_1_comodule_axioms);
    run(&mut outcomes, 2, "splitting map is left linear and splits the coaction", 5, criterion_2_splitting);
    run(&mut outcomes, 3, "canonical braiding passes every axiom on the probe objects", 120, criterion_3_canonical_braiding);
    run(&mut outcomes, 4, "twisted family is accepted exactly at the unit", 30, criterion_4_twisted_family);
    run(&mut outcomes, 5, "enumeration returns exactly the canonical braiding", 60, criterion_5_uniqueness);
    run(&mut outcomes, 6, "brute-force oracle agrees with the pipeline", 120, criterion_6_oracle_agreement);
    run(&mut outcomes, 7, "cofree functor is strong symmetric monoidal", 20, criterion_7_monoidal_functor);
    run(&mut outcomes, 8, "descent unit and counit are isomorphisms", 10, criterion_8_descent);
    run(&mut outcomes, 9, "separability elements found and verified where they exist", 10, criterion_9_separability);
    run(&mut outcomes, 10, "probe object has dimension n cubed", 5, criterion_10_probe_dimension);

    let mut all_pass = true;
    for o in &outcomes {
        let in_budget = o.elapsed <= o.budget;
        let ok = o.result.is_ok() && in_budget;
        all_pass &= ok;
        let status = if ok { "pass" } else { "FAIL" };
        print!(
            "criterion {:>2}: {status}  {:>8.2?} (budget {:>4?})  {}",
            o.index, o.elapsed, o.budget, o.name
        );
        match &o.result {
            Ok(()) if !in_budget => println!("  [over budget]"),
            Ok(()) => println!(),
            Err(w) => println!("  [{w}]"),
        }
    }
    assert!(all_pass, "an acceptance criterion failed; see the lines above");
}
