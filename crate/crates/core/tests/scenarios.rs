use purespin::scenario::{builtin, parse_scenarios, run, Kind, Status, BUILTINS};
use serde_json::{json, Value};

fn run_json(v: Value) -> purespin::scenario::Report {
    let s = parse_scenarios(&v.to_string()).unwrap();
    assert_eq!(s.len(), 1);
    run(&s[0]).unwrap()
}

fn run_err(v: Value) -> String {
    let s = parse_scenarios(&v.to_string()).unwrap();
    run(&s[0]).unwrap_err().to_string()
}

#[test]
fn builtins_report() {
    for name in BUILTINS {
        let r = builtin(name).unwrap();
        assert_eq!(r.id, name);
        if name == "tduality-basic" {
            continue;
        }
        assert_eq!(r.status, Status::Pass, "{name}: {:?}", r.checks);
        assert!(r.mismatches.is_empty());
    }
    assert!(builtin("no-such-example").is_err());
}

#[test]
fn tduality_builtin_is_red_on_intertwining_only() {
    let r = builtin("tduality-basic").unwrap();
    assert_eq!(r.status, Status::Fail);
    assert!(r.checks["tau_one_is_theta2"]);
    assert!(r.checks["tau_theta1_is_one"]);
    assert!(r.checks["purity_preserved"]);
    assert!(!r.checks["intertwining"]);
    // every generator anti-commutes; the ones that "hold" are those where both sides vanish
    assert_eq!(r.values["intertwining_anti"], r.values["generators"]);
    assert!(r.values["intertwining_holds"].as_u64() < r.values["generators"].as_u64());
}

#[test]
fn builtins_are_deterministic() {
    for name in ["cp1", "nitta-toy"] {
        let a = serde_json::to_string(&builtin(name).unwrap()).unwrap();
        let b = serde_json::to_string(&builtin(name).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}

fn reduce_scenario() -> Value {
    // L = T ⊕ 0 on R^3, N = {x3 = 0}, no symmetry.
    json!({
        "id": "graph-restrict",
        "kind": "reduce",
        "payload": {
            "m": 3,
            "lagrangian": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,1,0,0,0]],
            "datum": {"tangent": [[1,0,0],[0,1,0]]},
            "expect_reduced": [[1,0,0,0],[0,1,0,0]]
        }
    })
}

#[test]
fn reduce_from_json() {
    let r = run_json(reduce_scenario());
    assert_eq!(r.kind, Kind::Reduce);
    assert_eq!(r.status, Status::Pass, "{:?}", r.checks);
    assert!(r.checks["reduced_matches"]);
    assert_eq!(r.values["intersection_rank"], json!(0));
}

#[test]
fn expectations_decide_status() {
    let mut v = reduce_scenario();
    v["expectations"] = json!({"checks": {"reduced_matches": true}, "values": {"intersection_rank": 0}});
    assert_eq!(run_json(v.clone()).status, Status::Pass);

    v["expectations"] = json!({"values": {"intersection_rank": 1}, "checks": {"missing": true}});
    let r = run_json(v);
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.mismatches.len(), 2);
    assert!(r.mismatches.iter().any(|m| m.contains("intersection_rank")));
    assert!(r.mismatches.iter().any(|m| m.contains("not computed")));
}

#[test]
fn nontransversal_reduce_with_perturbation() {
    // L = span{e1, e2, e3*} meets K = span{e3*}.
    let r = run_json(json!({
        "id": "pert",
        "kind": "reduce",
        "payload": {
            "m": 3,
            "lagrangian": [[1,0,0,0,0,0],[0,1,0,0,0,0],[0,0,0,0,0,1]],
            "datum": {"tangent": [[1,0,0],[0,1,0]]},
            "perturbation": "auto"
        }
    }));
    assert_eq!(r.values["intersection_rank"], json!(1));
    for c in ["perturbed_lagrangian", "perturbed_transversal", "perturbed_same_reduction", "reduced_lagrangian"] {
        assert!(r.checks[c], "{c}");
    }
}

#[test]
fn spinor_from_json() {
    let r = run_json(json!({
        "id": "sp",
        "kind": "spinor",
        "payload": {"m": 2, "form": {"[]": 1, "[1,2]": "1/2"}, "datum": {"tangent": [[1,0]]}}
    }));
    assert_eq!(r.status, Status::Pass, "{:?}", r.checks);
    assert!(r.checks["annihilator_matches_reduction"]);

    let r = run_json(json!({
        "id": "impure",
        "kind": "spinor",
        "payload": {"m": 4, "form": {"[]": 1, "[1,2,3,4]": 1}, "datum": {"tangent": [[1,0,0,0]]}}
    }));
    assert_eq!(r.status, Status::Flagged);
    assert!(!r.checks["pure"]);
}

#[test]
fn gcs_from_json() {
    let r = run_json(json!({
        "id": "j",
        "kind": "gcs-check",
        "payload": {"m": 2, "structure": {"complex": [[0,-1],[1,0]]}}
    }));
    assert_eq!(r.status, Status::Pass, "{:?}", r.checks);
    assert!(r.checks["generalized_complex"] && r.checks["reconstructs"]);
}

#[test]
fn tduality_from_json() {
    let r = run_json(json!({
        "id": "t",
        "kind": "tduality",
        "payload": {"base": 1, "a1": {}, "a2": {}, "orientation": "right"}
    }));
    assert!(r.checks["intertwining"]);
    assert!(!r.checks["tau_one_is_theta2"]);
    assert_eq!(r.status, Status::Flagged);
}

#[test]
fn polyform_checks_from_json() {
    let r = run_json(json!({
        "id": "g",
        "kind": "polyform-check",
        "payload": {"check": "graph", "n": 3, "omega": {"[1,2]": "x3"}, "h": {"[1,2,3]": "-1"}}
    }));
    assert_eq!(r.status, Status::Pass, "{:?}", r.checks);

    let r = run_json(json!({
        "id": "g2",
        "kind": "polyform-check",
        "payload": {"check": "graph", "n": 3, "omega": {"[1,2]": "x3"}}
    }));
    assert_eq!(r.status, Status::Flagged);
    assert!(r.checks["routes_agree"]);

    let r = run_json(json!({
        "id": "s",
        "kind": "polyform-check",
        "payload": {
            "check": "spinor", "n": 2, "phi": {"[]": "1", "[1,2]": "x1"},
            "points": [[0,0],[1,2],["1/2",-3]]
        }
    }));
    assert_eq!(r.values["passed_points"], json!(3));
}

#[test]
fn diagnostics_name_the_location() {
    let mut v = reduce_scenario();
    v["payload"]["datum"]["tangent"][1][2] = json!("1/0x");
    assert!(run_err(v).contains("payload.datum.tangent[1][2]"));

    let mut v = reduce_scenario();
    v["payload"]["lagrangian"] = json!("oops");
    let e = run_err(v);
    assert!(e.contains("payload.lagrangian"), "{e}");

    let mut v = reduce_scenario();
    v["payload"]["extra"] = json!(1);
    assert!(run_err(v).contains("extra"));

    let e = parse_scenarios(r#"[{"id":"a","kind":"reduce","payload":{}},{"id":"b","kind":"bogus","payload":{}}]"#)
        .unwrap_err()
        .to_string();
    assert!(e.contains("scenario 1") && e.contains("kind"), "{e}");
    assert!(parse_scenarios("{").is_err());
}
