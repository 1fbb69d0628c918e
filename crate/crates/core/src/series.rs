//! Finite-support skew generalized power series `R[[S, ω]]`.
//!
//! A series is a finite map from exponents to nonzero coefficients, kept in
//! ascending exponent order, with an optional cutoff above which all
//! coefficients are unknown.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidElement};
use crate::ring::endo::DEFAULT_HOM_SAMPLES;
use crate::ring::linalg::{nullspace, solve};
use crate::ring::props::{coords, from_coords, is_unit};
use crate::ring::{Elem, Endo, Ring, ENUMERATION_LIMIT};
use crate::rings::algebra::Monomial;

/// How ω: S → End(R) is generated.
#[derive(Clone, Debug)]
pub enum OmegaRule {
    /// ω_s = id for every s.
    Identity,
    /// ω_n = αⁿ for integer exponents; negative n uses α⁻¹.
    Power(Endo),
    /// Explicit values; unlisted nonzero exponents are undefined.
    Table(Vec<(MonoidElement, Endo)>),
}

#[derive(Debug)]
struct CtxData {
    ring: Ring,
    monoid: Monoid,
    omega: OmegaRule,
    alpha_inv: Option<Endo>,
    label: String,
}

/// The triple (R, S, ω).
#[derive(Clone, Debug)]
pub struct SkewContext(Arc<CtxData>);

impl PartialEq for SkewContext {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring
                && self.0.monoid == other.0.monoid
                && self.0.label == other.0.label)
    }
}

impl Eq for SkewContext {}

impl fmt::Display for SkewContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[[{}, {}]]", self.0.ring, self.0.monoid, self.0.label)
    }
}

impl SkewContext {
    /// Builds and validates a context: the base endomorphism must satisfy
    /// the homomorphism law, and a table must satisfy ω(0) = id and
    /// ω(s+t) = ω(s)∘ω(t) wherever both sides are listed.
    pub fn new(ring: &Ring, monoid: Monoid, omega: OmegaRule) -> Result<Self> {
        let mut alpha_inv = None;
        let label = match &omega {
            OmegaRule::Identity => "id".to_string(),
            OmegaRule::Power(a) => {
                if a.ring() != ring {
                    return Err(Error::MixedRings(a.ring().to_string(), ring.to_string()));
                }
                a.check_homomorphism(DEFAULT_HOM_SAMPLES, 0)?;
                if !monoid.kind().is_integral() && !a.is_identity() {
                    return Err(Error::UnsupportedMonoid(format!(
                        "ω_s = α^s needs integer exponents, not {monoid}"
                    )));
                }
                if !monoid.kind().is_nonneg() && !a.is_identity() {
                    alpha_inv = Some(a.inverse()?);
                }
                format!("{}^s", a.label())
            }
            OmegaRule::Table(entries) => {
                validate_table(ring, &monoid, entries)?;
                let mut parts: Vec<String> = entries
                    .iter()
                    .map(|(s, e)| format!("{s}:{}", e.label()))
                    .collect();
                parts.sort();
                format!("table{{{}}}", parts.join(","))
            }
        };
        Ok(Self(Arc::new(CtxData {
            ring: ring.clone(),
            monoid,
            omega,
            alpha_inv,
            label,
        })))
    }

    pub fn identity(ring: &Ring, monoid: Monoid) -> Self {
        Self::new(ring, monoid, OmegaRule::Identity).expect("identity twist is always valid")
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn monoid(&self) -> &Monoid {
        &self.0.monoid
    }

    pub fn omega(&self) -> &OmegaRule {
        &self.0.omega
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn omega_is_identity(&self) -> bool {
        match &self.0.omega {
            OmegaRule::Identity => true,
            OmegaRule::Power(a) => a.is_identity(),
            OmegaRule::Table(t) => t.iter().all(|(_, e)| e.is_identity()),
        }
    }

    /// ω_s(r).
    pub fn omega_apply(&self, s: &MonoidElement, r: &Elem) -> Result<Elem> {
        if s.is_zero() {
            return Ok(r.clone());
        }
        match &self.0.omega {
            OmegaRule::Identity => Ok(r.clone()),
            OmegaRule::Power(a) => {
                if a.is_identity() {
                    return Ok(r.clone());
                }
                let n = s
                    .to_i64()
                    .ok_or_else(|| Error::OmegaUndefined(s.to_string()))?;
                if n >= 0 {
                    Ok(a.apply_pow(r, n as u64))
                } else {
                    let inv = self
                        .0
                        .alpha_inv
                        .as_ref()
                        .ok_or_else(|| Error::OmegaUndefined(s.to_string()))?;
                    Ok(inv.apply_pow(r, n.unsigned_abs()))
                }
            }
            OmegaRule::Table(t) => t
                .iter()
                .find(|(k, _)| k == s)
                .map(|(_, e)| e.apply(r))
                .ok_or_else(|| Error::OmegaUndefined(s.to_string())),
        }
    }

    /// Every value ω_s(r) as s ranges over S, when this set is finite and
    /// computable (used by ideal-membership tests).
    fn omega_orbit(&self, r: &Elem) -> Option<Vec<Elem>> {
        let mut seen: Vec<Elem> = vec![r.clone()];
        match &self.0.omega {
            OmegaRule::Identity => {}
            OmegaRule::Power(a) if a.is_identity() => {}
            OmegaRule::Power(a) => {
                let mut set: HashSet<Elem> = seen.iter().cloned().collect();
                let mut x = r.clone();
                for _ in 0..=ENUMERATION_LIMIT {
                    x = a.apply(&x);
                    if !set.insert(x.clone()) {
                        break;
                    }
                    seen.push(x.clone());
                }
                if let Some(inv) = &self.0.alpha_inv {
                    let mut x = r.clone();
                    for _ in 0..=ENUMERATION_LIMIT {
                        x = inv.apply(&x);
                        if !set.insert(x.clone()) {
                            break;
                        }
                        seen.push(x.clone());
                    }
                }
            }
            OmegaRule::Table(_) => return None,
        }
        Some(seen)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ring": self.0.ring.descriptor(),
            "monoid": self.0.monoid.label(),
            "omega": self.0.label,
        })
    }
}

fn validate_table(ring: &Ring, monoid: &Monoid, entries: &[(MonoidElement, Endo)]) -> Result<()> {
    use rand::SeedableRng;
    let samples: Vec<Elem> = if ring.universe_size().is_some_and(|n| n <= 4096) {
        ring.elements()?
    } else {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        (0..64).map(|_| ring.random(&mut rng)).collect()
    };
    let mut keys = HashSet::new();
    for (s, e) in entries {
        monoid.check(s)?;
        if e.ring() != ring {
            return Err(Error::MixedRings(e.ring().to_string(), ring.to_string()));
        }
        if !keys.insert(s.clone()) {
            return Err(Error::BadParameter(format!("ω listed twice at {s}")));
        }
        e.check_homomorphism(DEFAULT_HOM_SAMPLES, 0)?;
        if s.is_zero() && samples.iter().any(|r| &e.apply(r) != r) {
            return Err(Error::NotEndomorphism("ω(0) is not the identity".into()));
        }
    }
    let lookup: HashMap<&MonoidElement, &Endo> = entries.iter().map(|(s, e)| (s, e)).collect();
    for (s, es) in entries {
        for (t, et) in entries {
            let st = MonoidElement(&s.0 + &t.0);
            if let Some(est) = lookup.get(&st) {
                if samples
                    .iter()
                    .any(|r| est.apply(r) != es.apply(&et.apply(r)))
                {
                    return Err(Error::NotEndomorphism(format!(
                        "ω({st}) differs from ω({s})∘ω({t})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// A finite-support series with optional cutoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    ctx: SkewContext,
    terms: BTreeMap<MonoidElement, Elem>,
    trunc: Option<MonoidElement>,
}

fn min_trunc(a: &Option<MonoidElement>, b: &Option<MonoidElement>) -> Option<MonoidElement> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (Some(x), None) | (None, Some(x)) => Some(x.clone()),
        (None, None) => None,
    }
}

impl Series {
    /// Normalizes: duplicate exponents are summed, zero coefficients and
    /// exponents above the cutoff dropped.
    pub fn new(
        ctx: &SkewContext,
        pairs: impl IntoIterator<Item = (MonoidElement, Elem)>,
        trunc: Option<MonoidElement>,
    ) -> Result<Self> {
        let r = ctx.ring();
        let mut terms: BTreeMap<MonoidElement, Elem> = BTreeMap::new();
        for (s, c) in pairs {
            ctx.monoid().check(&s)?;
            r.check_members([&c])?;
            let entry = terms.entry(s).or_insert_with(|| r.zero());
            *entry = r.add(entry, &c);
        }
        if let Some(t) = &trunc {
            ctx.monoid().check(t)?;
        }
        Ok(Self::from_map(ctx, terms, trunc))
    }

    fn from_map(
        ctx: &SkewContext,
        mut terms: BTreeMap<MonoidElement, Elem>,
        trunc: Option<MonoidElement>,
    ) -> Self {
        terms.retain(|s, c| !c.is_zero() && trunc.as_ref().is_none_or(|t| s <= t));
        Self {
            ctx: ctx.clone(),
            terms,
            trunc,
        }
    }

    pub fn zero(ctx: &SkewContext) -> Self {
        Self {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
            trunc: None,
        }
    }

    /// c_r: r at exponent 0.
    pub fn c(ctx: &SkewContext, r: Elem) -> Result<Self> {
        Self::new(ctx, [(MonoidElement::zero(), r)], None)
    }

    /// e_s: 1 at exponent s.
    pub fn e(ctx: &SkewContext, s: MonoidElement) -> Result<Self> {
        Self::new(ctx, [(s, ctx.ring().one())], None)
    }

    pub fn one(ctx: &SkewContext) -> Self {
        Self::c(ctx, ctx.ring().one()).expect("identity is valid")
    }

    pub fn ctx(&self) -> &SkewContext {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<MonoidElement, Elem> {
        &self.terms
    }

    pub fn support(&self) -> Vec<MonoidElement> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, s: &MonoidElement) -> Elem {
        self.terms
            .get(s)
            .cloned()
            .unwrap_or_else(|| self.ctx.ring().zero())
    }

    pub fn trunc(&self) -> Option<&MonoidElement> {
        self.trunc.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{} vs {}",
                self.ctx, other.ctx
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let r = self.ctx.ring();
        let mut terms = self.terms.clone();
        for (s, c) in &other.terms {
            let entry = terms.entry(s.clone()).or_insert_with(|| r.zero());
            *entry = r.add(entry, c);
        }
        Ok(Self::from_map(
            &self.ctx,
            terms,
            min_trunc(&self.trunc, &other.trunc),
        ))
    }

    pub fn neg(&self) -> Self {
        let r = self.ctx.ring();
        Self {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(s, c)| (s.clone(), r.neg(c)))
                .collect(),
            trunc: self.trunc.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Twisted convolution `fg(s) = Σ_{u+v=s} f(u)·ω_u(g(v))`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ctx(other)?;
        let r = self.ctx.ring();
        let trunc = min_trunc(&self.trunc, &other.trunc);
        let mut acc: BTreeMap<MonoidElement, Elem> = BTreeMap::new();
        for (u, fu) in &self.terms {
            for (v, gv) in &other.terms {
                let s = MonoidElement(&u.0 + &v.0);
                if trunc.as_ref().is_some_and(|t| &s > t) {
                    continue;
                }
                let term = r.mul(fu, &self.ctx.omega_apply(u, gv)?);
                if term.is_zero() {
                    continue;
                }
                let entry = acc.entry(s).or_insert_with(|| r.zero());
                *entry = r.add(entry, &term);
            }
        }
        Ok(Self::from_map(&self.ctx, acc, trunc))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        acc.trunc = self.trunc.clone();
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// (π(f), f(π(f))).
    pub fn pi(&self) -> Result<(MonoidElement, Elem)> {
        self.terms
            .iter()
            .next()
            .map(|(s, c)| (s.clone(), c.clone()))
            .ok_or(Error::ZeroSeries)
    }

    /// Drops exponents above `t`; the cutoff becomes the smaller one.
    pub fn truncate(&self, t: &MonoidElement) -> Self {
        let trunc = min_trunc(&self.trunc, &Some(t.clone()));
        Self::from_map(&self.ctx, self.terms.clone(), trunc)
    }

    /// Same terms with the cutoff removed (the caller asserts exactness).
    pub fn without_trunc(&self) -> Self {
        Self {
            trunc: None,
            ..self.clone()
        }
    }

    /// π(f) ∈ U(S) and f(π(f)) ∈ U(R): the sufficient unit criterion.
    pub fn satisfies_unit_criterion(&self) -> Result<bool> {
        let Ok((s, c)) = self.pi() else {
            return Ok(false);
        };
        Ok(self.ctx.monoid().is_unit(&s) && is_unit(self.ctx.ring(), &c)?.is_some())
    }

    /// Inverse up to `cutoff` by leading-term recursion.
    pub fn invert(&self, cutoff: &MonoidElement) -> Result<Self> {
        let m = self.ctx.monoid();
        if !m.kind().is_nonneg() {
            return Err(Error::UnsupportedMonoid(format!("inversion over {m}")));
        }
        m.check(cutoff)?;
        let (p, f0) = self.pi()?;
        if !p.is_zero() {
            return Err(Error::NonZeroLeadingExponent(p.to_string()));
        }
        let r = self.ctx.ring();
        let inv0 =
            is_unit(r, &f0)?.ok_or_else(|| Error::NonUnitLeadingCoefficient(r.format(&f0)))?;
        let cutoff = min_trunc(&self.trunc, &Some(cutoff.clone())).expect("some");
        let positive: Vec<(&MonoidElement, &Elem)> = self.terms.iter().skip(1).collect();
        let exps = sums_up_to(positive.iter().map(|(s, _)| *s), &cutoff);
        let mut g: BTreeMap<MonoidElement, Elem> = BTreeMap::new();
        for s in exps {
            let mut acc = if s.is_zero() { r.one() } else { r.zero() };
            for (u, fu) in &positive {
                let Some(v) = m.difference(&s, u) else {
                    continue;
                };
                if let Some(gv) = g.get(&v) {
                    acc = r.sub(&acc, &r.mul(fu, &self.ctx.omega_apply(u, gv)?));
                }
            }
            let gs = r.mul(&inv0, &acc);
            if !gs.is_zero() {
                g.insert(s, gs);
            }
        }
        Ok(Self::from_map(&self.ctx, g, Some(cutoff)))
    }

    pub fn divide_right(&self, g: &Self, budget: usize) -> Result<DivisibilityResult> {
        Divider::new(self, g, Side::Right, budget)?.run()
    }

    pub fn divide_left(&self, g: &Self, budget: usize) -> Result<DivisibilityResult> {
        Divider::new(self, g, Side::Left, budget)?.run()
    }

    /// Text form accepted by the series parser: `3 + 2*e(1/2) + e(1)`.
    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let r = self.ctx.ring();
        let mut out = String::new();
        for (i, (s, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = r.split_sign(c);
            let coeff = coeff_atom(r, &abs);
            let body = if s.is_zero() {
                coeff
            } else if r.is_one(&abs) {
                format!("e({s})")
            } else {
                format!("{coeff}*e({s})")
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let r = self.ctx.ring();
        json!({
            "terms": self.terms.iter().map(|(s, c)| json!([s.to_string(), r.to_json(c)])).collect::<Vec<_>>(),
            "trunc": self.trunc.as_ref().map(|t| t.to_string()),
            "text": self.format(),
        })
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())?;
        if let Some(t) = &self.trunc {
            write!(f, " (mod exponents > {t})")?;
        }
        Ok(())
    }
}

/// Ring element text, parenthesized when it is a sum.
pub fn coeff_atom(r: &Ring, c: &Elem) -> String {
    let s = r.format(c);
    if s.chars()
        .skip(1)
        .any(|ch| ch == '+' || ch == '-' || ch == ' ')
        || s.contains('/')
    {
        format!("({s})")
    } else {
        s
    }
}

/// All finite sums of the given positive exponents not exceeding `cap`,
/// including 0, ascending.
fn sums_up_to<'a>(
    gens: impl Iterator<Item = &'a MonoidElement>,
    cap: &MonoidElement,
) -> Vec<MonoidElement> {
    let gens: Vec<&MonoidElement> = gens.collect();
    let mut set: BTreeSet<MonoidElement> = BTreeSet::new();
    let mut frontier = vec![MonoidElement::zero()];
    set.insert(MonoidElement::zero());
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = MonoidElement(&x.0 + &g.0);
            if &y <= cap && set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    /// Find h with g·h = f.
    Right,
    /// Find h with h·g = f.
    Left,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisibilityResult {
    Yes(Series),
    No(String),
    Unknown(String),
}

impl DivisibilityResult {
    pub fn is_yes(&self) -> bool {
        matches!(self, DivisibilityResult::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, DivisibilityResult::No(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            DivisibilityResult::Yes(_) => "yes",
            DivisibilityResult::No(_) => "no",
            DivisibilityResult::Unknown(_) => "unknown",
        }
    }
}

/// Solutions `c` of the leading coefficient equation at one step.
enum Candidates {
    /// Every solution; `injective` when the solution is unique for every
    /// right-hand side (then a dead end proves non-divisibility).
    All {
        sols: Vec<Elem>,
        injective: bool,
    },
    /// One particular solution of a linear system.
    Particular {
        sol: Option<Elem>,
        injective: bool,
    },
    Unsupported(String),
}

struct Divider<'a> {
    f: &'a Series,
    g: &'a Series,
    side: Side,
    budget: usize,
    steps: usize,
    g0: Elem,
    pg: MonoidElement,
    trunc: Option<MonoidElement>,
    elements: Option<Vec<Elem>>,
    failed: HashSet<Vec<(MonoidElement, Elem)>>,
    complete: bool,
    injective_cache: HashMap<MonoidElement, bool>,
}

enum Outcome {
    Found(BTreeMap<MonoidElement, Elem>),
    Dead,
    Budget,
}

impl<'a> Divider<'a> {
    fn new(f: &'a Series, g: &'a Series, side: Side, budget: usize) -> Result<Self> {
        f.same_ctx(g)?;
        let (pg, g0) = if g.is_zero() {
            (MonoidElement::zero(), f.ctx.ring().zero())
        } else {
            g.pi()?
        };
        let r = f.ctx.ring();
        let elements = if r.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
            Some(r.elements()?)
        } else {
            None
        };
        Ok(Self {
            f,
            g,
            side,
            budget,
            steps: 0,
            g0,
            pg,
            trunc: min_trunc(&f.trunc, &g.trunc),
            elements,
            failed: HashSet::new(),
            complete: true,
            injective_cache: HashMap::new(),
        })
    }

    fn ctx(&self) -> &SkewContext {
        &self.f.ctx
    }

    fn product(&self, h: &Series) -> Result<Series> {
        match self.side {
            Side::Right => self.g.mul(h),
            Side::Left => h.mul(self.g),
        }
    }

    fn run(mut self) -> Result<DivisibilityResult> {
        let ctx = self.ctx().clone();
        if self.f.is_zero() {
            return Ok(DivisibilityResult::Yes(Series::zero(&ctx)));
        }
        if self.g.is_zero() {
            return Ok(DivisibilityResult::No("the divisor is zero".into()));
        }
        if ctx.monoid().kind().is_nonneg() {
            let (pf, _) = self.f.pi()?;
            if pf < self.pg {
                return Ok(DivisibilityResult::No(format!(
                    "π(f) = {pf} < π(g) = {}, so every multiple starts too late",
                    self.pg
                )));
            }
        }
        if let Some(bad) = self.ideal_obstruction()? {
            return Ok(DivisibilityResult::No(bad));
        }
        let residual = self.f.terms.clone();
        match self.search(residual, BTreeMap::new())? {
            Outcome::Found(h) => {
                let h = Series::from_map(&ctx, h, self.trunc.clone());
                let back = self.product(&h)?;
                let target = match &self.trunc {
                    Some(t) => self.f.truncate(t),
                    None => self.f.clone(),
                };
                if back.terms != target.terms {
                    return Err(Error::Undecidable(
                        "divisibility witness failed to replay".into(),
                    ));
                }
                Ok(DivisibilityResult::Yes(h))
            }
            Outcome::Dead if self.complete => Ok(DivisibilityResult::No(
                "the leading-coefficient recursion has no solution".into(),
            )),
            Outcome::Dead => Ok(DivisibilityResult::Unknown(
                "search exhausted over non-unique leading solutions".into(),
            )),
            Outcome::Budget => Ok(DivisibilityResult::Unknown(format!(
                "budget of {} steps exhausted",
                self.budget
            ))),
        }
    }

    /// Every coefficient of g·h lies in the right ideal generated by the
    /// coefficients of g; every coefficient of h·g in the left ideal
    /// generated by the ω-orbits of g's coefficients.
    fn ideal_obstruction(&self) -> Result<Option<String>> {
        let Some(els) = &self.elements else {
            return Ok(None);
        };
        let r = self.ctx().ring();
        let gens: Vec<Elem> = match self.side {
            Side::Right => self.g.terms.values().cloned().collect(),
            Side::Left => {
                let mut v = Vec::new();
                for c in self.g.terms.values() {
                    match self.ctx().omega_orbit(c) {
                        Some(o) => v.extend(o),
                        None => return Ok(None),
                    }
                }
                v
            }
        };
        let mut ideal: HashSet<Elem> = HashSet::new();
        ideal.insert(r.zero());
        let products: Vec<Elem> = gens
            .iter()
            .flat_map(|x| {
                els.iter().map(move |a| match self.side {
                    Side::Right => r.mul(x, a),
                    Side::Left => r.mul(a, x),
                })
            })
            .collect();
        let mut frontier: Vec<Elem> = vec![r.zero()];
        while let Some(x) = frontier.pop() {
            for p in &products {
                let y = r.add(&x, p);
                if ideal.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        for (s, c) in &self.f.terms {
            if self.trunc.as_ref().is_some_and(|t| s > t) {
                continue;
            }
            if !ideal.contains(c) {
                return Ok(Some(format!(
                    "f({s}) = {} lies outside the {} ideal generated by the coefficients of g",
                    r.format(c),
                    if self.side == Side::Right {
                        "right"
                    } else {
                        "left"
                    }
                )));
            }
        }
        Ok(None)
    }

    /// Left side of the coefficient equation for a new term `c·e_t`.
    fn lead(&self, t: &MonoidElement, c: &Elem) -> Result<Elem> {
        let r = self.ctx().ring();
        Ok(match self.side {
            Side::Right => r.mul(&self.g0, &self.ctx().omega_apply(&self.pg, c)?),
            Side::Left => r.mul(c, &self.ctx().omega_apply(t, &self.g0)?),
        })
    }

    fn candidates(&mut self, t: &MonoidElement, rhs: &Elem) -> Result<Candidates> {
        if let Some(els) = self.elements.clone() {
            let sols: Vec<Elem> = els
                .iter()
                .filter_map(|c| match self.lead(t, c) {
                    Ok(v) if &v == rhs => Some(Ok(c.clone())),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                })
                .collect::<Result<_>>()?;
            let key = match self.side {
                Side::Right => MonoidElement::zero(),
                Side::Left => t.clone(),
            };
            let injective = match self.injective_cache.get(&key) {
                Some(&b) => b,
                None => {
                    let mut kernel = 0;
                    for c in &els {
                        if self.lead(t, c)?.is_zero() {
                            kernel += 1;
                        }
                    }
                    self.injective_cache.insert(key, kernel == 1);
                    kernel == 1
                }
            };
            return Ok(Candidates::All { sols, injective });
        }
        let r = self.ctx().ring().clone();
        if r.is_field() {
            return Ok(match r.inverse(&self.lead(t, &r.one())?) {
                Some(inv) => {
                    let sol = match self.side {
                        Side::Right => {
                            let y = r.mul(&r.inverse(&self.g0).expect("nonzero"), rhs);
                            self.preimage(&y)?
                        }
                        Side::Left => Some(r.mul(rhs, &inv)),
                    };
                    Candidates::Particular {
                        sol,
                        injective: true,
                    }
                }
                None => Candidates::Unsupported("twisted leading coefficient vanished".into()),
            });
        }
        if r.algebra().is_some() {
            return self.linear_candidates(t, rhs);
        }
        if let (Elem::Int(a), Elem::Int(b)) = (&self.g0, rhs) {
            // every endomorphism of Z is the identity
            use num_integer::Integer;
            let sol = (b.is_multiple_of(a)).then(|| Elem::Int(b / a));
            return Ok(Candidates::Particular {
                sol,
                injective: true,
            });
        }
        Ok(Candidates::Unsupported(format!(
            "coefficient equations over {r}"
        )))
    }

    fn preimage(&self, y: &Elem) -> Result<Option<Elem>> {
        let ctx = self.ctx();
        if self.pg.is_zero() {
            return Ok(Some(y.clone()));
        }
        match ctx.omega() {
            OmegaRule::Identity => Ok(Some(y.clone())),
            OmegaRule::Power(a) if a.is_identity() => Ok(Some(y.clone())),
            _ => {
                let n = self.pg.to_i64().unwrap_or(0);
                if n > 0 {
                    if let Ok(inv) = match ctx.omega() {
                        OmegaRule::Power(a) => a.inverse(),
                        _ => Err(Error::OmegaUndefined(self.pg.to_string())),
                    } {
                        return Ok(Some(inv.apply_pow(y, n as u64)));
                    }
                }
                Err(Error::NotComputable(
                    "preimage under a non-invertible twist".into(),
                ))
            }
        }
    }

    /// Coefficient equation over a quotient algebra, solved linearly on
    /// the monomials up to the degree of the data. Only the identity twist
    /// (right side) keeps the equation linear in `c` over the field.
    fn linear_candidates(&mut self, t: &MonoidElement, rhs: &Elem) -> Result<Candidates> {
        let r = self.ctx().ring().clone();
        let alg = r.algebra().expect("algebra");
        if self.side == Side::Right && !self.pg.is_zero() && !self.ctx().omega_is_identity() {
            return Ok(Candidates::Unsupported(
                "right equation under a nontrivial twist".into(),
            ));
        }
        let (basis, exact) = match alg.finite_basis() {
            Some(b) => (b, true),
            None => {
                let d = rhs.as_alg().degree().unwrap_or(0);
                (alg.basis(d)?, false)
            }
        };
        let mut index: HashMap<Monomial, usize> = HashMap::new();
        let mut images: Vec<Elem> = Vec::with_capacity(basis.len());
        for m in &basis {
            let me = Elem::Alg(crate::rings::algebra::AlgPoly::monomial(
                m.clone(),
                alg.field().one(),
            ));
            images.push(self.lead(t, &me)?);
        }
        let mut out_monos: Vec<Monomial> = Vec::new();
        let mut push = |p: &Elem, out: &mut Vec<Monomial>| {
            for (m, _) in p.as_alg().terms() {
                if !index.contains_key(m) {
                    index.insert(m.clone(), out.len());
                    out.push(m.clone());
                }
            }
        };
        for im in &images {
            push(im, &mut out_monos);
        }
        push(rhs, &mut out_monos);
        let cols: Vec<Vec<Elem>> = images
            .iter()
            .map(|im| coords(alg, &index, im.as_alg()))
            .collect();
        let nrows = out_monos.len();
        let mat: Vec<Vec<Elem>> = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        let b = coords(alg, &index, rhs.as_alg());
        let field = alg.field();
        let sol = solve(field, &mat, &b, basis.len()).map(|x| from_coords(alg, &basis, &x));
        let injective = exact && nullspace(field, &mat, basis.len()).is_empty();
        Ok(Candidates::Particular { sol, injective })
    }

    fn search(
        &mut self,
        residual: BTreeMap<MonoidElement, Elem>,
        h: BTreeMap<MonoidElement, Elem>,
    ) -> Result<Outcome> {
        let mut residual = residual;
        if let Some(t) = &self.trunc {
            residual.retain(|s, _| s <= t);
        }
        let Some((s, rs)) = residual.iter().next().map(|(s, c)| (s.clone(), c.clone())) else {
            return Ok(Outcome::Found(h));
        };
        self.steps += 1;
        if self.steps > self.budget {
            return Ok(Outcome::Budget);
        }
        let key: Vec<(MonoidElement, Elem)> = residual
            .iter()
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect();
        if self.failed.contains(&key) {
            return Ok(Outcome::Dead);
        }
        let Some(t) = self.ctx().monoid().difference(&s, &self.pg) else {
            self.failed.insert(key);
            return Ok(Outcome::Dead);
        };
        let sols = match self.candidates(&t, &rs)? {
            Candidates::All { sols, injective } => {
                if !injective {
                    self.complete = false;
                }
                sols
            }
            Candidates::Particular { sol, injective } => {
                if !injective {
                    self.complete = false;
                }
                sol.into_iter().collect()
            }
            Candidates::Unsupported(why) => {
                self.complete = false;
                let _ = why;
                Vec::new()
            }
        };
        let ctx = self.ctx().clone();
        for c in sols {
            let term = Series::from_map(
                &ctx,
                BTreeMap::from([(t.clone(), c.clone())]),
                self.trunc.clone(),
            );
            let contrib = self.product(&term)?;
            let r = ctx.ring();
            let mut next = residual.clone();
            for (k, v) in &contrib.terms {
                let e = next.entry(k.clone()).or_insert_with(|| r.zero());
                *e = r.sub(e, v);
                if e.is_zero() {
                    next.remove(k);
                }
            }
            let mut h2 = h.clone();
            let e = h2.entry(t.clone()).or_insert_with(|| r.zero());
            *e = r.add(e, &c);
            match self.search(next, h2)? {
                Outcome::Dead => continue,
                other => return Ok(other),
            }
        }
        self.failed.insert(key);
        Ok(Outcome::Dead)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::MonoidElement as M;

    fn z(n: u64) -> Ring {
        Ring::zmod(n).unwrap()
    }

    fn ser(ctx: &SkewContext, pairs: &[(i64, u64)]) -> Series {
        Series::new(
            ctx,
            pairs.iter().map(|&(s, c)| (M::int(s), Elem::Res(c))),
            None,
        )
        .unwrap()
    }

    #[test]
    fn constructors_normalize() {
        let ctx = SkewContext::identity(&z(6), Monoid::rat_nonneg());
        assert!(Series::c(&ctx, Elem::Res(0)).unwrap().is_zero());
        let e = Series::e(&ctx, M::frac(1, 2)).unwrap();
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.coeff(&M::frac(1, 2)), Elem::Res(1));
        let s = Series::new(
            &ctx,
            [(M::int(1), Elem::Res(0)), (M::int(2), Elem::Res(3))],
            None,
        )
        .unwrap();
        assert_eq!(s.support(), vec![M::int(2)]);
        assert!(matches!(
            Series::e(&ctx, M::int(-1)),
            Err(Error::OutOfCarrier(_))
        ));
    }

    #[test]
    fn convolution_over_z6() {
        let ctx = SkewContext::identity(&z(6), Monoid::nat());
        let f = ser(&ctx, &[(0, 2), (1, 3)]);
        let g = ser(&ctx, &[(0, 3), (1, 2)]);
        assert_eq!(f.mul(&g).unwrap(), Series::e(&ctx, M::int(1)).unwrap());
        assert_eq!(Series::one(&ctx).mul(&f).unwrap(), f);
    }

    #[test]
    fn frobenius_twist_over_gf4() {
        let r = Ring::galois(2, 2).unwrap();
        let ctx = SkewContext::new(
            &r,
            Monoid::nat(),
            OmegaRule::Power(Endo::frobenius(&r).unwrap()),
        )
        .unwrap();
        let w = Elem::Gf(vec![0, 1]);
        let prod = Series::e(&ctx, M::int(1))
            .unwrap()
            .mul(&Series::c(&ctx, w).unwrap())
            .unwrap();
        assert_eq!(prod.coeff(&M::int(1)), Elem::Gf(vec![1, 1]));
    }

    #[test]
    fn pi_and_truncate() {
        let ctx = SkewContext::identity(&z(6), Monoid::rat_nonneg());
        let f = Series::e(&ctx, M::int(1))
            .unwrap()
            .add(&Series::e(&ctx, M::frac(1, 2)).unwrap())
            .unwrap();
        assert_eq!(f.pi().unwrap(), (M::frac(1, 2), Elem::Res(1)));
        assert!(matches!(Series::zero(&ctx).pi(), Err(Error::ZeroSeries)));
        let g = Series::one(&ctx)
            .add(&f)
            .unwrap()
            .add(&Series::e(&ctx, M::int(2)).unwrap())
            .unwrap();
        let t = g.truncate(&M::int(1));
        assert_eq!(t.support(), vec![M::int(0), M::frac(1, 2), M::int(1)]);
        assert_eq!(t.truncate(&M::int(5)), t);
        assert_eq!(g.truncate(&M::frac(1, 4)).support(), vec![M::int(0)]);
    }

    #[test]
    fn inversion_over_z5() {
        let ctx = SkewContext::identity(&z(5), Monoid::nat());
        let f = ser(&ctx, &[(0, 1), (1, 2)]);
        let g = f.invert(&M::int(3)).unwrap();
        let expect = Series::new(
            &ctx,
            [
                (M::int(0), Elem::Res(1)),
                (M::int(1), Elem::Res(3)),
                (M::int(2), Elem::Res(4)),
                (M::int(3), Elem::Res(2)),
            ],
            Some(M::int(3)),
        )
        .unwrap();
        assert_eq!(g, expect);
        assert_eq!(f.mul(&g).unwrap().terms(), Series::one(&ctx).terms());
        let c6 = SkewContext::identity(&z(6), Monoid::nat());
        let bad = ser(&c6, &[(0, 2), (1, 1)]);
        assert!(matches!(
            bad.invert(&M::int(3)),
            Err(Error::NonUnitLeadingCoefficient(_))
        ));
        let shifted = ser(&c6, &[(1, 1)]);
        assert!(matches!(
            shifted.invert(&M::int(3)),
            Err(Error::NonZeroLeadingExponent(_))
        ));
    }

    #[test]
    fn divisibility_examples() {
        let ctx = SkewContext::identity(&z(6), Monoid::rat_nonneg());
        let e1 = Series::e(&ctx, M::int(1)).unwrap();
        let eh = Series::e(&ctx, M::frac(1, 2)).unwrap();
        match e1.divide_right(&eh, 100).unwrap() {
            DivisibilityResult::Yes(h) => assert_eq!(h, eh),
            other => panic!("{other:?}"),
        }
        assert!(eh.divide_right(&e1, 100).unwrap().is_no());
        assert!(Series::zero(&ctx).divide_right(&e1, 100).unwrap().is_yes());
        let two = Series::c(&ctx, Elem::Res(2)).unwrap();
        let three = Series::c(&ctx, Elem::Res(3)).unwrap();
        assert!(three.divide_left(&two, 100).unwrap().is_no());
        assert!(Series::c(&ctx, Elem::Res(4))
            .unwrap()
            .divide_left(&two, 100)
            .unwrap()
            .is_yes());
    }
}
