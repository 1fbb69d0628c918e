//! The four worked examples, rebuilt and checked claim by claim.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::chain::chain_explore;
use super::probes::{
    annihilator_chain, archimedean_probe, bounded_inverse_search,
    factorization_sequence_check_monoid, FactorizationVerdict,
};
use crate::error::{Error, Result};
use crate::laurent::{SkewPoly, TwistedBase};
use crate::monoid::{inverse_power_of_two, Monoid, MonoidElement};
use crate::ring::props::{
    is_reduced, is_rigid, is_rigidity_witness, is_unit, ReducedVerdict, RigidVerdict, Side,
};
use crate::ring::{Elem, Ring};
use crate::rings::examples::{
    exterior, exterior_shift, heinzer_lantz, orthogonal_free, OrthogonalReading,
};
use crate::series::{DivisibilityResult, Series, SkewContext};

pub const SCENARIOS: [&str; 4] = ["ex-qchain", "ex-heinzer-lantz", "ex-freealg", "ex-exterior"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub id: String,
    pub claim: String,
    pub expected: String,
    pub observed: String,
    pub agrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScenarioReport {
    pub id: String,
    pub params: BTreeMap<String, String>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
}

impl ScenarioReport {
    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn agreements(&self) -> usize {
        self.claims.iter().filter(|c| c.agrees).count()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["agreements"] = json!(self.agreements());
        v
    }
}

struct Builder {
    report: ScenarioReport,
}

impl Builder {
    fn new(id: &str) -> Self {
        Self {
            report: ScenarioReport {
                id: id.into(),
                params: BTreeMap::new(),
                claims: vec![],
                notes: vec![],
            },
        }
    }

    fn param(&mut self, k: &str, v: impl Display) {
        self.report.params.insert(k.into(), v.to_string());
    }

    fn claim(
        &mut self,
        id: impl Into<String>,
        text: impl Into<String>,
        expected: impl Display,
        observed: impl Display,
        agrees: bool,
    ) {
        self.report.claims.push(Claim {
            id: id.into(),
            claim: text.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            agrees,
        });
    }

    fn note(&mut self, n: impl Into<String>) {
        self.report.notes.push(n.into());
    }
}

/// `key=value` parameters with range checks.
#[derive(Clone, Debug, Default)]
pub struct ScenarioParams(BTreeMap<String, String>);

impl ScenarioParams {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, k: &str, v: impl Display) -> Self {
        self.0.insert(k.into(), v.to_string());
        self
    }

    pub fn parse<'a>(pairs: impl IntoIterator<Item = &'a str>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for p in pairs {
            let (k, v) = p
                .split_once('=')
                .ok_or_else(|| Error::BadParameter(format!("expected key=value, got {p:?}")))?;
            out.insert(k.trim().to_string(), v.trim().to_string());
        }
        Ok(Self(out))
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.0
    }

    fn only(&self, allowed: &[&str]) -> Result<()> {
        match self.0.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::BadParameter(format!(
                "unknown parameter {k:?}; expected one of {allowed:?}"
            ))),
            None => Ok(()),
        }
    }

    fn get<T: FromStr + PartialOrd + Display>(
        &self,
        key: &str,
        default: T,
        lo: T,
        hi: T,
    ) -> Result<T> {
        let v = match self.0.get(key) {
            None => default,
            Some(s) => s
                .parse()
                .map_err(|_| Error::BadParameter(format!("{key}={s} is not a valid value")))?,
        };
        if v < lo || v > hi {
            return Err(Error::BadParameter(format!(
                "{key}={v} outside [{lo}, {hi}]"
            )));
        }
        Ok(v)
    }

    fn fields(&self, default: &str) -> Result<Vec<(String, Ring)>> {
        let spec = self.0.get("field").map(String::as_str).unwrap_or(default);
        spec.split(',')
            .map(|name| {
                let ring = match name.trim() {
                    "Q" => Ring::rationals(),
                    "F2" => Ring::zmod(2)?,
                    "F3" => Ring::zmod(3)?,
                    "F5" => Ring::zmod(5)?,
                    other => {
                        return Err(Error::BadParameter(format!(
                            "field={other}: expected Q, F2, F3 or F5"
                        )))
                    }
                };
                Ok((name.trim().to_string(), ring))
            })
            .collect()
    }
}

pub fn run_scenario(id: &str, params: &ScenarioParams) -> Result<ScenarioReport> {
    match id {
        "ex-qchain" => qchain(params),
        "ex-heinzer-lantz" => heinzer_lantz_scenario(params),
        "ex-freealg" => freealg(params),
        "ex-exterior" => exterior_scenario(params),
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn qchain(p: &ScenarioParams) -> Result<ScenarioReport> {
    p.only(&["n", "trunc", "modulus", "horizon", "budget"])?;
    let n: usize = p.get("n", 10, 1, 24)?;
    let modulus: u64 = p.get("modulus", 6, 2, 64)?;
    let horizon: usize = p.get("horizon", 20, 1, 60)?;
    let budget: usize = p.get("budget", 10_000, 1, 1_000_000)?;
    let trunc: MonoidElement = match p.0.get("trunc") {
        None => MonoidElement::int(2),
        Some(s) => s
            .parse()
            .map_err(|_| Error::BadParameter(format!("trunc={s}")))?,
    };
    if trunc < MonoidElement::int(1) {
        return Err(Error::BadParameter(format!(
            "trunc={trunc} must be at least 1"
        )));
    }
    let mut b = Builder::new("ex-qchain");
    b.param("n", n);
    b.param("modulus", modulus);
    b.param("trunc", &trunc);
    b.param("horizon", horizon);
    b.param("budget", budget);

    let ring = Ring::zmod(modulus)?;
    let ctx = SkewContext::identity(&ring, Monoid::rat_nonneg());
    let e = |k: usize| {
        Series::new(
            &ctx,
            [(inverse_power_of_two(k as u32), ring.one())],
            Some(trunc.clone()),
        )
    };
    let e1 = e(0)?;

    let mut failures = Vec::new();
    for k in 1..=n {
        let g = e(k)?;
        match e1.divide_left(&g, budget)? {
            DivisibilityResult::Yes(h) if h.mul(&g)? == e1 => {}
            other => failures.push(format!("n={k}: {}", other.tag())),
        }
    }
    b.claim(
        "e1-in-every-ideal",
        format!("e_1 lies in A·e_(1/2^n) for n = 1..{n}, with a replayed witness"),
        "yes",
        if failures.is_empty() {
            "yes".to_string()
        } else {
            failures.join("; ")
        },
        failures.is_empty(),
    );

    let chain = chain_explore(|i| e(i - 1), Side::Left, n + 1, budget)?;
    let strict = chain.strictly_ascending() && chain.stabilized_at.is_none();
    b.claim(
        "chain-not-stabilized",
        format!("A·e_1 ⊊ A·e_(1/2) ⊊ … ⊊ A·e_(1/2^{n}) with no stabilization"),
        "strictly ascending",
        match (strict, chain.stabilized_at) {
            (true, _) => "strictly ascending".to_string(),
            (false, Some(i)) => format!("stabilized at {i}"),
            (false, None) => "some step undecided".to_string(),
        },
        strict,
    );

    let m = Monoid::rat_nonneg();
    let verdict = factorization_sequence_check_monoid(
        &m,
        |k| inverse_power_of_two(k as u32),
        |k| inverse_power_of_two(k as u32 + 1),
        horizon,
    )?;
    let expected = FactorizationVerdict::NoUnitFactorUpTo(horizon);
    b.claim(
        "no-unit-factor",
        format!("s_n = 1/2^n, r_n = 1/2^(n+1) satisfy s_n = r_n + s_(n+1) and no r_n is a unit, n ≤ {horizon}"),
        format!("{expected:?}"),
        format!("{verdict:?}"),
        verdict == expected,
    );

    let arch = archimedean_probe(&ring, Side::Left)?;
    let observed = match &arch.witness {
        None => "archimedean".to_string(),
        Some((w, set)) => format!(
            "not archimedean: ⋂ R·{}^n = {{{}}}",
            ring.format(w),
            set.iter()
                .map(|e| ring.format(e))
                .collect::<Vec<_>>()
                .join(",")
        ),
    };
    b.claim(
        "coefficients-archimedean",
        format!("the coefficient ring Z/{modulus} is archimedean"),
        "archimedean",
        observed,
        arch.archimedean(),
    );
    if !arch.archimedean() {
        let all: Vec<String> = arch.failing.iter().map(|(e, _)| ring.format(e)).collect();
        b.note(format!(
            "nonunits with nonzero power intersection: {}",
            all.join(", ")
        ));
    }
    Ok(b.report)
}

fn heinzer_lantz_scenario(p: &ScenarioParams) -> Result<ScenarioReport> {
    p.only(&["N", "field"])?;
    let n: usize = p.get("N", 3, 3, 12)?;
    let fields = p.fields("Q")?;
    let [(fname, field)] = &fields[..] else {
        return Err(Error::BadParameter(
            "ex-heinzer-lantz takes a single field".into(),
        ));
    };
    let mut b = Builder::new("ex-heinzer-lantz");
    b.param("N", n);
    b.param("field", fname);
    let r = heinzer_lantz(field, n, None)?;
    let a = |i: usize| r.var(i - 1);
    let d = r.sub(&a(1), &a(2));
    let d2 = r.mul(&d, &d);
    let lhs1 = r.mul(&r.mul(&a(3), &a(3)), &d2);
    let lhs2 = r.mul(&r.mul(&a(3), &a(2)), &d2);
    let lhs3 = r.mul(&a(3), &d);
    b.claim(
        "a3^2(a1-a2)^2",
        "a3²·(a1 − a2)² vanishes",
        "0",
        r.format(&lhs1),
        lhs1.is_zero(),
    );
    b.claim(
        "a3a2(a1-a2)^2",
        "a3·a2·(a1 − a2)² vanishes",
        "0",
        r.format(&lhs2),
        lhs2.is_zero(),
    );
    b.claim(
        "a3(a1-a2)",
        "a3·(a1 − a2) is nonzero",
        "nonzero",
        r.format(&lhs3),
        !lhs3.is_zero(),
    );
    if let ReducedVerdict::NotReduced { witness, exponent } = is_reduced(&r, 8)? {
        b.note(format!(
            "nilpotent found by search: ({})^{exponent} = 0",
            r.format(&witness)
        ));
    }
    Ok(b.report)
}

fn freealg_series(ctx: &SkewContext, lin: &Elem, constant: &Elem) -> Result<Series> {
    Series::new(
        ctx,
        [
            (MonoidElement::int(1), lin.clone()),
            (MonoidElement::zero(), constant.clone()),
        ],
        None,
    )
}

/// `f_n = a_n t + (1 + a_n)` and `g_n = x_{n-1} t + (1 + x_{n-1})`.
fn freealg_pair(ctx: &SkewContext, n: usize, vars: usize) -> Result<(Series, Series, Series)> {
    let r = ctx.ring();
    let f = |k: usize| {
        let a = r.var_sum(k - 1..vars);
        freealg_series(ctx, &a, &r.add(&r.one(), &a))
    };
    let x = r.var(n - 2);
    Ok((
        f(n)?,
        freealg_series(ctx, &x, &r.add(&r.one(), &x))?,
        f(n - 1)?,
    ))
}

fn identity_failures(r: &Ring, vars: usize) -> Result<Vec<usize>> {
    let ctx = SkewContext::identity(r, Monoid::nat());
    let mut bad = Vec::new();
    for n in 2..=vars / 2 {
        let (f, g, prev) = freealg_pair(&ctx, n, vars)?;
        if f.mul(&g)? != prev {
            bad.push(n);
        }
    }
    Ok(bad)
}

fn freealg(p: &ScenarioParams) -> Result<ScenarioReport> {
    p.only(&["N", "cap", "field", "degree"])?;
    let vars: usize = p.get("N", 16, 4, 32)?;
    let cap: usize = p.get("cap", 6, 2, 8)?;
    let degree: usize = p.get("degree", 4, 1, 6)?;
    let fields = p.fields("F2,Q")?;
    let mut b = Builder::new("ex-freealg");
    b.param("N", vars);
    b.param("cap", cap);
    b.param("degree", degree);
    b.param(
        "field",
        fields
            .iter()
            .map(|(n, _)| n.as_str())
            .collect::<Vec<_>>()
            .join(","),
    );
    let top = vars / 2;

    for (fname, field) in &fields {
        let r = orthogonal_free(field, vars, OrthogonalReading::AllDistinct, Some(cap))?;
        let bad = identity_failures(&r, vars)?;
        b.claim(
            format!("{fname}:fg-identity"),
            format!("f_n·g_n = f_(n-1) for 2 ≤ n ≤ {top}"),
            "holds",
            if bad.is_empty() {
                "holds".to_string()
            } else {
                format!("fails at n = {bad:?}")
            },
            bad.is_empty(),
        );

        let open = orthogonal_free(field, vars, OrthogonalReading::AllDistinct, None)?;
        let ctx = SkewContext::identity(&open, Monoid::nat());
        let mut found = Vec::new();
        for n in 2..=top {
            let (_, g, _) = freealg_pair(&ctx, n, vars)?;
            for side in [Side::Right, Side::Left] {
                if let Some(h) = bounded_inverse_search(&g, side, degree as u64, degree)? {
                    found.push(format!("n={n} {side:?}: {}", h.format()));
                }
            }
        }
        b.claim(
            format!("{fname}:g-not-unit"),
            format!("g_n has no one-sided inverse of t-degree and coefficient degree ≤ {degree}, 2 ≤ n ≤ {top}"),
            "none exists",
            if found.is_empty() { "none exists".to_string() } else { found.join("; ") },
            found.is_empty(),
        );

        let families: Vec<Vec<Elem>> = (1..=3)
            .map(|n| (n..=vars).map(|i| r.var(i - 1)).collect())
            .collect();
        let chain = annihilator_chain(&r, &families, Side::Left)?;
        let witnesses: Vec<String> = chain
            .steps
            .iter()
            .map(|s| s.separating.as_ref().map_or("-".into(), |w| r.format(w)))
            .collect();
        let ok = chain.strict_steps() == 2 && witnesses == ["x1", "x2"];
        b.claim(
            format!("{fname}:annihilator-chain"),
            "Ann(x1, x2, …) ⊊ Ann(x2, x3, …) ⊊ Ann(x3, x4, …)",
            "strict twice, separated by x1 and x2",
            format!(
                "{} strict steps, separated by {}",
                chain.strict_steps(),
                witnesses.join(" and ")
            ),
            ok,
        );

        let red = is_reduced(&r, 8)?;
        b.claim(
            format!("{fname}:reduced"),
            "the coefficient algebra has no nonzero nilpotent",
            "reduced",
            match &red {
                ReducedVerdict::Reduced(c) => format!("reduced ({c:?})"),
                ReducedVerdict::NotReduced { witness, exponent } => {
                    format!("({})^{exponent} = 0", r.format(witness))
                }
                ReducedVerdict::Inconclusive(why) => format!("inconclusive: {why}"),
            },
            matches!(red, ReducedVerdict::Reduced(_)),
        );
    }

    let (_, field) = &fields[0];
    for reading in [
        OrthogonalReading::FirstIndexOne,
        OrthogonalReading::IncreasingPairs,
    ] {
        let r = orthogonal_free(field, vars, reading, Some(cap))?;
        let bad = identity_failures(&r, vars)?;
        b.note(format!(
            "relations {}: f_n·g_n = f_(n-1) {}",
            reading.label(),
            if bad.is_empty() {
                "holds".to_string()
            } else {
                format!("fails at n = {bad:?}")
            }
        ));
    }
    Ok(b.report)
}

fn exterior_scenario(p: &ScenarioParams) -> Result<ScenarioReport> {
    p.only(&["N", "k", "n", "field", "seed"])?;
    let vars: usize = p.get("N", 20, 4, 40)?;
    let k: u64 = p.get("k", 8, 1, vars.div_ceil(2) as u64)?;
    let depth: usize = p.get("n", 5, 1, 10)?;
    let seed: u64 = p.get("seed", 0, 0, u64::MAX)?;
    let fields = p.fields("Q")?;
    let [(fname, field)] = &fields[..] else {
        return Err(Error::BadParameter(
            "ex-exterior takes a single field".into(),
        ));
    };
    let mut b = Builder::new("ex-exterior");
    b.param("N", vars);
    b.param("k", k);
    b.param("n", depth);
    b.param("field", fname);
    b.param("seed", seed);

    let r = exterior(field, vars)?;
    let v = |i: usize| r.var(i - 1);
    let alpha = exterior_shift(&r)?;
    let hom = alpha.check_homomorphism(1000, seed);
    let alpha_one = alpha.apply(&r.one());
    b.claim(
        "alpha-endomorphism",
        "the even/odd shift is a ring endomorphism with α(1) = 1",
        "yes",
        match &hom {
            Ok(()) => format!("yes (α(1) = {})", r.format(&alpha_one)),
            Err(e) => e.to_string(),
        },
        hom.is_ok() && r.is_one(&alpha_one),
    );
    if !alpha.escaped().is_empty() {
        let names: Vec<String> = alpha
            .escaped()
            .iter()
            .map(|j| format!("v{}", j + 1))
            .collect();
        b.note(format!(
            "images beyond the materialized variables are set to 0: {}",
            names.join(", ")
        ));
    }

    let v3 = v(3);
    let witness = is_rigidity_witness(&r, &alpha, &v3);
    b.claim(
        "v3-rigidity-witness",
        "v3 ≠ 0 and v3·α(v3) = 0, so α is not rigid",
        "yes",
        format!(
            "{} (v3·α(v3) = {})",
            yes_no(witness),
            r.format(&r.mul(&v3, &alpha.apply(&v3)))
        ),
        witness,
    );
    match is_rigid(&r, &alpha)? {
        RigidVerdict::NotRigid(w) => b.note(format!(
            "first rigidity witness in search order: {}",
            r.format(&w)
        )),
        other => b.note(format!("rigidity search: {other:?}")),
    }

    let p0 = r.add(&r.one(), &v(1));
    let p1 = r.var_sum((0..vars).step_by(2));
    let one_minus_v1 = r.sub(&r.one(), &v(1));
    let prod = r.mul(&p0, &one_minus_v1);
    b.claim(
        "p0-inverse",
        "p0·(1 − v1) = 1",
        "1",
        r.format(&prod),
        r.is_one(&prod),
    );

    let mut degree_fail = Vec::new();
    let mut pk = r.one();
    for e in 1..=k {
        pk = r.mul(&pk, &p1);
        let poly = pk.as_alg();
        let homogeneous = poly.terms().all(|(m, _)| m.degree() as u64 == e);
        if pk.is_zero() || !homogeneous {
            degree_fail.push(e);
        }
    }
    b.claim(
        "p1-powers",
        format!("p1^k is nonzero of total degree k for k ≤ {k}"),
        "yes",
        if degree_fail.is_empty() {
            "yes".to_string()
        } else {
            format!("fails at k = {degree_fail:?}")
        },
        degree_fail.is_empty(),
    );

    let p0_inv =
        is_unit(&r, &p0)?.ok_or_else(|| Error::NotComputable("p0 is not a unit".into()))?;
    let base = TwistedBase::new(&alpha)?;
    let lhs_factor = SkewPoly::new(&base, [(1, p1.clone()), (0, p0.clone())]);
    let a0 = p1.clone();
    let b0 = r.var_sum((1..vars).step_by(2));
    let b0 = r.add(&r.one(), &b0);
    let step_a = |a_prev: &Elem, b_prev: &Elem| {
        let inner = r.mul(&r.mul(&p1, &alpha.apply(&p0_inv)), &alpha.apply(b_prev));
        r.mul(&p0_inv, &r.sub(a_prev, &inner))
    };
    let readings: [(&str, &str, bool); 2] = [
        ("constant-b", "b_n = b_0 for every n", false),
        ("scaled-b", "b_n = p0⁻¹·b_(n-1)", true),
    ];
    for (tag, text, scaled) in readings {
        let (mut a_prev, mut b_prev) = (a0.clone(), b0.clone());
        for n in 1..=depth {
            let a_n = step_a(&a_prev, &b_prev);
            let b_n = if scaled {
                r.mul(&p0_inv, &b_prev)
            } else {
                b0.clone()
            };
            let f_prev = SkewPoly::new(&base, [(1, a_prev.clone()), (0, b_prev.clone())]);
            let f_n = SkewPoly::new(&base, [(1, a_n.clone()), (0, b_n.clone())]);
            let rhs = lhs_factor.mul(&f_n)?;
            let holds = rhs == f_prev;
            let observed = if holds {
                "holds".to_string()
            } else {
                let diff = f_prev.sub(&rhs)?;
                format!(
                    "fails; f_(n-1) − (p1x+p0)·f_n has {} nonzero x-coefficients",
                    diff.coeffs().count()
                )
            };
            b.claim(
                format!("recursion-{tag}-n{n}"),
                format!("f_(n-1) = (p1·x + p0)·f_n at n = {n}, reading {text}"),
                "holds",
                observed,
                holds,
            );
            a_prev = a_n;
            b_prev = b_n;
        }
    }
    Ok(b.report)
}
