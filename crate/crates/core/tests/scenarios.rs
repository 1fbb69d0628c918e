use sgps_core::lab::{run_scenario, ScenarioParams};

#[test]
fn freealg_full_size_agrees_everywhere() {
    let rep = run_scenario("ex-freealg", &ScenarioParams::new()).unwrap();
    assert_eq!(rep.params["N"], "16");
    assert_eq!(rep.claims.len(), 8);
    for c in &rep.claims {
        assert!(c.agrees, "{c:?}");
    }
}

#[test]
fn exterior_full_size() {
    let rep = run_scenario("ex-exterior", &ScenarioParams::new()).unwrap();
    println!("{}", serde_json::to_string_pretty(&rep.to_json()).unwrap());
    for id in [
        "alpha-endomorphism",
        "v3-rigidity-witness",
        "p0-inverse",
        "p1-powers",
    ] {
        assert!(rep.claim(id).unwrap().agrees, "{id}");
    }
    for n in 1..=5 {
        assert!(
            rep.claim(&format!("recursion-scaled-b-n{n}"))
                .unwrap()
                .agrees
        );
        assert!(
            !rep.claim(&format!("recursion-constant-b-n{n}"))
                .unwrap()
                .agrees
        );
    }
}

#[test]
fn reports_are_deterministic() {
    for id in sgps_core::lab::SCENARIOS {
        let a = run_scenario(id, &ScenarioParams::new()).unwrap().to_json();
        let b = run_scenario(id, &ScenarioParams::new()).unwrap().to_json();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap(),
            "{id}"
        );
    }
}
