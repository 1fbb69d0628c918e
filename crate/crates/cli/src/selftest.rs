//! End-to-end checks of the library against the reference computations.
//! `sgps-lab selftest` runs all of them; the acceptance test target adds
//! independent oracles on top.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use sgps_core::lab::{
    archimedean_probe, factorization_sequence_check_monoid, jordan_rigidity_search,
    rigid_lemma_suite, run_scenario, FactorizationVerdict, ScenarioParams, ScenarioReport,
};
use sgps_core::laurent::{JordanElement, JordanRing};
use sgps_core::monoid::inverse_power_of_two;
use sgps_core::ring::props::{
    is_reduced, is_rigidity_witness, Certification, ReducedVerdict, Side,
};
use sgps_core::ring::CoeffRing;
use sgps_core::rings::examples::{
    exterior, exterior_shift, heinzer_lantz, orthogonal_free, OrthogonalReading,
};
use sgps_core::{
    DivisibilityResult, Endo, Error, Monoid, MonoidElement, OmegaRule, Ring, Series, SkewContext,
};

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "series ring axioms on seeded triples"),
    (2, "rigid lemma suite"),
    (3, "ex-qchain strict chain"),
    (4, "ex-heinzer-lantz identities"),
    (
        5,
        "ex-freealg identities, unit search, annihilators, reducedness",
    ),
    (6, "ex-exterior claims and determinism"),
    (7, "Jordan extension arithmetic and rigidity"),
    (8, "series inversion"),
    (9, "archimedean probes"),
];

pub const AXIOM_TRIPLES: usize = 1000;
pub const AXIOM_TIME_LIMIT: Duration = Duration::from_secs(10);
pub const AXIOM_TRUNC: i64 = 12;
pub const INVERSION_SAMPLES: usize = 100;
pub const INVERSION_CUTOFF: i64 = 16;
pub const JORDAN_TRIPLES: usize = 1000;
pub const JORDAN_PAIRS: usize = 500;
pub const JORDAN_LEVEL: u64 = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lift<T>(r: sgps_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn criterion(id: u8, seed: u64) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map_or("unknown criterion", |(_, n)| n);
    let out = match id {
        1 => axioms(seed),
        2 => lemmas(),
        3 => qchain(),
        4 => heinzer_lantz_identities(),
        5 => freealg(),
        6 => exterior_claims(),
        7 => jordan(seed),
        8 => inversion(seed),
        9 => archimedean(),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail) = match out {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
    }
}

pub fn run_all(seed: u64) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .map(|(id, _)| criterion(*id, seed))
        .collect()
}

fn random_series(
    ctx: &SkewContext,
    rng: &mut ChaCha8Rng,
    integral: bool,
    trunc: i64,
) -> Result<Series, String> {
    let r = ctx.ring();
    let n = rng.gen_range(0..5);
    let pairs: Vec<(MonoidElement, _)> = (0..n)
        .map(|_| {
            let s = if integral {
                MonoidElement::int(rng.gen_range(0..=trunc))
            } else {
                let q = rng.gen_range(1..=4);
                MonoidElement::frac(rng.gen_range(0..=trunc * q), q)
            };
            (s, r.random(rng))
        })
        .collect();
    lift(Series::new(ctx, pairs, Some(MonoidElement::int(trunc))))
}

fn axioms(seed: u64) -> Check {
    let z6 = lift(Ring::zmod(6))?;
    let gf4 = lift(Ring::galois(2, 2))?;
    let frob = lift(Endo::frobenius(&gf4))?;
    let contexts = [
        (SkewContext::identity(&z6, Monoid::nat()), true),
        (
            lift(SkewContext::new(
                &gf4,
                Monoid::nat(),
                OmegaRule::Power(frob),
            ))?,
            true,
        ),
        (SkewContext::identity(&z6, Monoid::rat_nonneg()), false),
    ];
    let start = Instant::now();
    let mut failures = Vec::new();
    for (k, (ctx, integral)) in contexts.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
        for t in 0..AXIOM_TRIPLES {
            let f = random_series(ctx, &mut rng, *integral, AXIOM_TRUNC)?;
            let g = random_series(ctx, &mut rng, *integral, AXIOM_TRUNC)?;
            let h = random_series(ctx, &mut rng, *integral, AXIOM_TRUNC)?;
            let assoc = lift(lift(f.mul(&g))?.mul(&h))? == lift(f.mul(&lift(g.mul(&h))?))?;
            let gh = lift(g.add(&h))?;
            let left = lift(f.mul(&gh))? == lift(lift(f.mul(&g))?.add(&lift(f.mul(&h))?))?;
            let fg = lift(f.add(&g))?;
            let right = lift(fg.mul(&h))? == lift(lift(f.mul(&h))?.add(&lift(g.mul(&h))?))?;
            if !(assoc && left && right) {
                failures.push(format!("{ctx} triple {t}"));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure!(
        failures.is_empty(),
        "axiom failures: {}",
        failures.join(", ")
    );
    ensure!(
        elapsed < AXIOM_TIME_LIMIT,
        "took {elapsed:?}, limit {AXIOM_TIME_LIMIT:?}"
    );
    Ok(format!(
        "3 × {AXIOM_TRIPLES} triples, 0 failures, {} ms",
        elapsed.as_millis()
    ))
}

pub const LEMMA_MODULI: [u64; 7] = [2, 3, 5, 6, 10, 15, 30];

fn lemmas() -> Check {
    let mut contexts: Vec<SkewContext> = LEMMA_MODULI
        .iter()
        .map(|&n| Ok(SkewContext::identity(&lift(Ring::zmod(n))?, Monoid::nat())))
        .collect::<Result<_, String>>()?;
    let gf4 = lift(Ring::galois(2, 2))?;
    contexts.push(lift(SkewContext::new(
        &gf4,
        Monoid::nat(),
        OmegaRule::Power(lift(Endo::frobenius(&gf4))?),
    ))?);
    let mut checked = 0;
    for ctx in &contexts {
        let reports = lift(rigid_lemma_suite(ctx, 5))?;
        let names: Vec<&str> = reports.iter().map(|r| r.property.as_str()).collect();
        ensure!(
            names == ["jav-1", "jav-2", "kav"],
            "{ctx}: unexpected properties {names:?}"
        );
        for r in &reports {
            ensure!(
                r.exhaustive && r.passed(),
                "{ctx}: {} fails at {:?}",
                r.property,
                r.counterexample
            );
            checked += r.checked;
        }
    }
    let z4 = SkewContext::identity(&lift(Ring::zmod(4))?, Monoid::nat());
    match rigid_lemma_suite(&z4, 5) {
        Err(Error::NotRigid(w)) if w == "2" => {}
        other => {
            return Err(format!(
                "Z/4 should be rejected with witness 2, got {other:?}"
            ))
        }
    }
    Ok(format!(
        "{} contexts pass, {checked} hypothesis instances; Z/4 rejected with witness 2",
        contexts.len()
    ))
}

pub const QCHAIN_N: u32 = 10;
pub const QCHAIN_HORIZON: usize = 20;

fn qchain() -> Check {
    let ring = lift(Ring::zmod(6))?;
    let ctx = SkewContext::identity(&ring, Monoid::rat_nonneg());
    let e = |k: u32| lift(Series::e(&ctx, inverse_power_of_two(k)));
    let e1 = e(0)?;
    for n in 1..=QCHAIN_N {
        let g = e(n)?;
        match lift(e1.divide_left(&g, 10_000))? {
            DivisibilityResult::Yes(h) => {
                ensure!(
                    lift(h.mul(&g))? == e1,
                    "witness for e_1 in A·e_(1/2^{n}) does not replay"
                );
            }
            other => return Err(format!("e_1 in A·e_(1/2^{n}): {}", other.tag())),
        }
        let next = e(n + 1)?;
        let back = lift(next.divide_left(&g, 10_000))?;
        ensure!(
            back.is_no(),
            "e_(1/2^{}) in A·e_(1/2^{n}) should be refuted, got {}",
            n + 1,
            back.tag()
        );
    }
    let m = Monoid::rat_nonneg();
    let verdict = lift(factorization_sequence_check_monoid(
        &m,
        |k| inverse_power_of_two(k as u32),
        |k| inverse_power_of_two(k as u32 + 1),
        QCHAIN_HORIZON,
    ))?;
    ensure!(
        verdict == FactorizationVerdict::NoUnitFactorUpTo(QCHAIN_HORIZON),
        "factorization check returned {verdict:?}"
    );
    let report = lift(run_scenario("ex-qchain", &ScenarioParams::new()))?;
    for id in [
        "e1-in-every-ideal",
        "chain-not-stabilized",
        "no-unit-factor",
    ] {
        ensure!(
            report.claim(id).is_some_and(|c| c.agrees),
            "scenario claim {id} disagrees"
        );
    }
    Ok(format!(
        "n ≤ {QCHAIN_N}: forward witnesses replay, backward refuted; {verdict:?}"
    ))
}

fn heinzer_lantz_identities() -> Check {
    let r = lift(heinzer_lantz(&Ring::rationals(), 3, None))?;
    let a = |i: usize| r.var(i - 1);
    let d = r.sub(&a(1), &a(2));
    let d2 = r.mul(&d, &d);
    let x = r.mul(&r.mul(&a(3), &a(3)), &d2);
    let y = r.mul(&r.mul(&a(3), &a(2)), &d2);
    let z = r.mul(&a(3), &d);
    ensure!(x.is_zero(), "a3²(a1−a2)² = {}", r.format(&x));
    ensure!(y.is_zero(), "a3a2(a1−a2)² = {}", r.format(&y));
    ensure!(
        r.format(&z) == "a1*a3 - a2*a3",
        "a3(a1−a2) = {}",
        r.format(&z)
    );
    let report = lift(run_scenario(
        "ex-heinzer-lantz",
        &ScenarioParams::new().with("N", 3),
    ))?;
    ensure!(
        report.claims.len() == 3 && report.agreements() == 3,
        "scenario agrees on {}/3",
        report.agreements()
    );
    Ok("a3²(a1−a2)² = 0, a3a2(a1−a2)² = 0, a3(a1−a2) = a1*a3 - a2*a3".into())
}

fn freealg() -> Check {
    let report = lift(run_scenario(
        "ex-freealg",
        &ScenarioParams::new().with("N", 16).with("field", "F2,Q"),
    ))?;
    ensure!(
        report.claims.len() == 8,
        "expected 8 claims, got {}",
        report.claims.len()
    );
    for c in &report.claims {
        ensure!(c.agrees, "{}: {}", c.id, c.observed);
    }
    for f in ["F2", "Q"] {
        let chain = report
            .claim(&format!("{f}:annihilator-chain"))
            .map(|c| c.observed.as_str());
        ensure!(
            chain == Some("2 strict steps, separated by x1 and x2"),
            "{f}: chain {chain:?}"
        );
    }
    for field in [lift(Ring::zmod(2))?, Ring::rationals()] {
        let r = lift(orthogonal_free(
            &field,
            16,
            OrthogonalReading::AllDistinct,
            Some(6),
        ))?;
        let v = lift(is_reduced(&r, 8))?;
        ensure!(
            v == ReducedVerdict::Reduced(Certification::MonomialCriterion { max_degree: 6 }),
            "{field}: {v:?}"
        );
    }
    Ok(
        "8/8 claims agree; two strict annihilator steps (x1, x2); reduced under degree cap 6"
            .into(),
    )
}

fn exterior_claims() -> Check {
    let params = ScenarioParams::new().with("N", 20).with("field", "Q");
    let first: ScenarioReport = lift(run_scenario("ex-exterior", &params))?;
    let second = lift(run_scenario("ex-exterior", &params))?;
    ensure!(first == second, "two runs differ");
    ensure!(
        first.to_json() == second.to_json(),
        "serializations differ"
    );
    for id in [
        "alpha-endomorphism",
        "v3-rigidity-witness",
        "p0-inverse",
        "p1-powers",
    ] {
        ensure!(
            first.claim(id).is_some_and(|c| c.agrees),
            "claim {id} disagrees"
        );
    }
    let r = lift(exterior(&Ring::rationals(), 20))?;
    let alpha = lift(exterior_shift(&r))?;
    ensure!(
        is_rigidity_witness(&r, &alpha, &r.var(2)),
        "v3 is not a rigidity witness"
    );
    let mut scaled = 0;
    let mut constant = 0;
    for n in 1..=5 {
        let s = first
            .claim(&format!("recursion-scaled-b-n{n}"))
            .ok_or(format!("missing scaled n={n}"))?;
        let c = first
            .claim(&format!("recursion-constant-b-n{n}"))
            .ok_or(format!("missing constant n={n}"))?;
        scaled += s.agrees as usize;
        constant += c.agrees as usize;
    }
    ensure!(
        scaled == 5 && constant == 0,
        "recursion agreement: scaled {scaled}/5, constant {constant}/5"
    );
    Ok("α endomorphism, v3·α(v3) = 0, p0·(1−v1) = 1, deg p1^k = k; recursion: scaled 5/5, constant 0/5".into())
}

fn random_jordan(
    j: &JordanRing,
    els: &[sgps_core::Elem],
    rng: &mut ChaCha8Rng,
) -> Result<JordanElement, String> {
    lift(j.element(
        rng.gen_range(0..=JORDAN_LEVEL),
        els[rng.gen_range(0..els.len())].clone(),
    ))
}

fn jordan(seed: u64) -> Check {
    let gf4 = lift(Ring::galois(2, 2))?;
    let j = lift(JordanRing::new(&lift(Endo::frobenius(&gf4))?))?;
    let canon = lift(j.canonical_elements(JORDAN_LEVEL))?;
    for e in &canon {
        ensure!(
            j.normalize(&j.normalize(e)) == j.normalize(e) && j.normalize(e) == *e,
            "normalize not idempotent at {e:?}"
        );
    }
    let els = lift(gf4.elements())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..JORDAN_TRIPLES {
        let (a, b, c) = (
            random_jordan(&j, &els, &mut rng)?,
            random_jordan(&j, &els, &mut rng)?,
            random_jordan(&j, &els, &mut rng)?,
        );
        ensure!(
            j.mul(&j.mul(&a, &b), &c) == j.mul(&a, &j.mul(&b, &c)),
            "associativity fails at triple {t}"
        );
        ensure!(
            j.mul(&a, &j.add(&b, &c)) == j.add(&j.mul(&a, &b), &j.mul(&a, &c)),
            "left distributivity fails at triple {t}"
        );
        ensure!(
            j.mul(&j.add(&a, &b), &c) == j.add(&j.mul(&a, &c), &j.mul(&b, &c)),
            "right distributivity fails at triple {t}"
        );
        ensure!(
            j.add(&a, &b) == j.add(&b, &a),
            "addition not commutative at triple {t}"
        );
    }
    for t in 0..JORDAN_PAIRS {
        let mut triple = || {
            (
                rng.gen_range(0..=JORDAN_LEVEL),
                els[rng.gen_range(0..els.len())].clone(),
                rng.gen_range(0..=JORDAN_LEVEL),
            )
        };
        let (x, y) = (triple(), triple());
        let prod = lift(j.iso(std::slice::from_ref(&x)).mul(&j.iso(std::slice::from_ref(&y))))?;
        ensure!(
            prod == j.iso(&[j.triple_mul(&x, &y)]),
            "iso not multiplicative at pair {t}"
        );
        let same = (x.0, y.1.clone(), x.2);
        let sum = lift(j.iso(std::slice::from_ref(&x)).add(&j.iso(std::slice::from_ref(&same))))?;
        ensure!(
            sum == j.iso(&[(x.0, gf4.add(&x.1, &same.1), x.2)]),
            "iso not additive at pair {t}"
        );
    }
    let z6 = lift(Ring::zmod(6))?;
    let searches = [
        lift(jordan_rigidity_search(&j, JORDAN_LEVEL))?,
        lift(jordan_rigidity_search(
            &lift(JordanRing::new(&Endo::identity(&z6)))?,
            JORDAN_LEVEL,
        ))?,
    ];
    for s in &searches {
        ensure!(s.passed(), "{}: witness {:?}", s.universe, s.counterexample);
    }
    Ok(format!(
        "{} canonical elements, {JORDAN_TRIPLES} triples, {JORDAN_PAIRS} iso pairs, no rigidity witness",
        canon.len()
    ))
}

fn inversion(seed: u64) -> Check {
    let z5 = lift(Ring::zmod(5))?;
    let ctx = SkewContext::identity(&z5, Monoid::nat());
    let cut = MonoidElement::int(INVERSION_CUTOFF);
    let one = Series::one(&ctx).truncate(&cut);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..INVERSION_SAMPLES {
        let mut pairs = vec![(MonoidElement::zero(), z5.from_i64(rng.gen_range(1..5)))];
        for _ in 0..rng.gen_range(0..6) {
            pairs.push((
                MonoidElement::int(rng.gen_range(1..=INVERSION_CUTOFF + 4)),
                z5.random(&mut rng),
            ));
        }
        let f = lift(Series::new(&ctx, pairs, None))?;
        let g = lift(f.invert(&cut))?;
        ensure!(
            lift(f.mul(&g))?.truncate(&cut) == one,
            "f·g ≠ 1 for sample {t}: f = {}",
            f.format()
        );
        ensure!(
            lift(g.mul(&f))?.truncate(&cut) == one,
            "g·f ≠ 1 for sample {t}: f = {}",
            f.format()
        );
    }
    let z6 = lift(Ring::zmod(6))?;
    let ctx6 = SkewContext::identity(&z6, Monoid::nat());
    let f = lift(Series::new(
        &ctx6,
        [
            (MonoidElement::zero(), z6.from_i64(2)),
            (MonoidElement::int(1), z6.one()),
        ],
        None,
    ))?;
    match f.invert(&cut) {
        Err(Error::NonUnitLeadingCoefficient(c)) if c == "2" => {}
        other => {
            return Err(format!(
                "Z/6 with f(0) = 2: expected NonUnitLeadingCoefficient, got {other:?}"
            ))
        }
    }
    Ok(format!("{INVERSION_SAMPLES} inverses replay on both sides mod exponents > {INVERSION_CUTOFF}; Z/6 rejected"))
}

pub const ARCHIMEDEAN_MODULI: [u64; 10] = [4, 8, 9, 25, 2, 3, 5, 7, 11, 13];

fn archimedean() -> Check {
    for n in ARCHIMEDEAN_MODULI {
        let r = lift(Ring::zmod(n))?;
        let a = lift(archimedean_probe(&r, Side::Left))?;
        ensure!(a.archimedean(), "Z/{n} reported non-archimedean");
    }
    let z6 = lift(Ring::zmod(6))?;
    let a = lift(archimedean_probe(&z6, Side::Left))?;
    let (w, set) = a.witness.clone().ok_or("Z/6 reported archimedean")?;
    ensure!(z6.format(&w) == "3", "Z/6 witness {}", z6.format(&w));
    let set: Vec<String> = set.iter().map(|e| z6.format(e)).collect();
    ensure!(set == ["0", "3"], "Z/6 stable set {set:?}");
    let report = lift(run_scenario("ex-qchain", &ScenarioParams::new()))?;
    let claim = report
        .claim("coefficients-archimedean")
        .ok_or("missing archimedean claim")?;
    ensure!(
        !claim.agrees && claim.observed.contains("{0,3}"),
        "scenario records {:?}",
        claim.observed
    );
    Ok(format!(
        "{} moduli archimedean; Z/6 fails at 3 with {{0,3}}, recorded as a disagreement",
        ARCHIMEDEAN_MODULI.len()
    ))
}
