//! Evaluates declarations and dispatches commands to the algebra layers.

use std::collections::HashMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use sgps_core::lab::lemmas::DEFAULT_LEMMA_GRID;
use sgps_core::lab::{
    annihilator_chain, archimedean_probe, chain_explore, intersection_powers,
    jordan_rigidity_search, leading_coeff_ideal_sample, rigid_lemma_suite, run_scenario,
    ScenarioParams,
};
use sgps_core::laurent::{JordanRing, LaurentPoly, TwistedBase, TwistedRing};
use sgps_core::monoid::{verify_strict_order, OrderVerdict};
use sgps_core::ring::endo::{VarImage, DEFAULT_HOM_SAMPLES};
use sgps_core::ring::props::{self, ReducedVerdict, RigidVerdict, Side};
use sgps_core::rings::examples::{
    exterior, exterior_shift, heinzer_lantz, orthogonal_free, OrthogonalReading,
};
use sgps_core::rings::{Monomial, RewriteSystem, Rule, TruncationPolicy};
use sgps_core::{
    DivisibilityResult, Elem, Endo, Error, Monoid, MonoidElement, OmegaRule, Ring, Series,
    SkewContext,
};

use crate::ast::*;
use crate::error::{AtSpan, CliError, CliResult, Span};
use crate::parser::parse_session;
use crate::report::JsonReport;

pub const DEFAULT_BUDGET: u64 = 10_000;
pub const DEFAULT_CUTOFF: i64 = 16;
pub const DEFAULT_JORDAN_LEVEL: u64 = 3;
/// Longest chain the `chain` command will build.
pub const MAX_CHAIN: u64 = 64;

type Poly = LaurentPoly<TwistedBase>;

#[derive(Clone)]
enum Ctx {
    Series(SkewContext),
    Poly {
        base: TwistedBase,
        var: String,
        laurent: bool,
    },
}

#[derive(Clone)]
enum Value_ {
    Series(Series),
    Poly(Poly),
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub seed: u64,
    pub timing: bool,
}

#[derive(Default)]
pub struct Executor {
    rings: HashMap<String, Ring>,
    endos: HashMap<String, Endo>,
    monoids: HashMap<String, Monoid>,
    contexts: HashMap<String, Ctx>,
    lets: HashMap<String, (String, Value_)>,
    opts: RunOptions,
}

/// Evaluation scope: the statement span and an optional bound integer.
#[derive(Clone, Copy)]
struct Scope<'a> {
    span: Span,
    bound: Option<(&'a str, i64)>,
}

fn domain(span: Span, e: Error) -> CliError {
    CliError::Domain { span, source: e }
}

fn bad(span: Span, msg: impl Into<String>) -> CliError {
    domain(span, Error::BadParameter(msg.into()))
}

fn small(span: Span, n: &BigInt, what: &str) -> CliResult<u64> {
    n.to_u64()
        .ok_or_else(|| bad(span, format!("{what} {n} is out of range")))
}

/// `a1..a4` as `[a1, a2, a3, a4]`.
fn var_range(span: Span, first: &str, last: &str) -> CliResult<Vec<String>> {
    let split = |s: &str| {
        let prefix = s.trim_end_matches(|c: char| c.is_ascii_digit());
        (prefix.to_string(), s[prefix.len()..].parse::<usize>().ok())
    };
    match (split(first), split(last)) {
        ((p, Some(lo)), (q, Some(hi))) if p == q && !p.is_empty() && lo <= hi => {
            Ok((lo..=hi).map(|i| format!("{p}{i}")).collect())
        }
        _ => Err(bad(
            span,
            format!("{first}..{last} is not a variable range"),
        )),
    }
}

pub fn poly_json(p: &Poly, var: &str) -> Value {
    let r = p.base().ring();
    json!({
        "terms": p.coeffs().iter().map(|(d, c)| json!([d, r.to_json(c)])).collect::<Vec<_>>(),
        "text": p.format_var(var),
    })
}

/// Parses and runs a session. Parse errors and failing declarations abort;
/// command failures are recorded in their reports.
pub fn run_session(src: &str, opts: RunOptions) -> CliResult<Vec<JsonReport>> {
    let session = parse_session(src)?;
    let mut ex = Executor::new(opts);
    let mut reports = Vec::new();
    for item in &session.items {
        match &item.stmt {
            Stmt::Command(cmd) => reports.push(ex.run_command(cmd, item.span)),
            _ => ex.declare(item)?,
        }
    }
    Ok(reports)
}

impl Executor {
    pub fn new(opts: RunOptions) -> Self {
        Self {
            opts,
            ..Self::default()
        }
    }

    pub fn declare(&mut self, item: &Item) -> CliResult<()> {
        let span = item.span;
        match &item.stmt {
            Stmt::Ring { name, def } => {
                let r = self.build_ring(def, span)?;
                self.rings.insert(name.clone(), r);
            }
            Stmt::Endo { name, ring, def } => {
                let e = self.build_endo(&self.rings[ring], def, span)?;
                self.endos.insert(name.clone(), e);
            }
            Stmt::Monoid { name, kind } => {
                let m = match kind.as_str() {
                    "Nat" => Monoid::nat(),
                    "Int" => Monoid::int(),
                    "QNonNeg" => Monoid::rat_nonneg(),
                    _ => Monoid::rat(),
                };
                self.monoids.insert(name.clone(), m);
            }
            Stmt::Context { name, def } => {
                let c = self.build_context(def, span)?;
                self.contexts.insert(name.clone(), c);
            }
            Stmt::Let { name, ctx, expr } => {
                let v = self.eval(ctx, expr, Scope { span, bound: None })?;
                self.lets.insert(name.clone(), (ctx.clone(), v));
            }
            Stmt::Command(_) => unreachable!("commands are not declarations"),
        }
        Ok(())
    }

    fn build_ring(&self, def: &RingDef, span: Span) -> CliResult<Ring> {
        Ok(match def {
            RingDef::Ref(n) => self.rings[n].clone(),
            RingDef::Zmod(n) => Ring::zmod(small(span, n, "modulus")?).at(span)?,
            RingDef::Integers => Ring::integers(),
            RingDef::Rationals => Ring::rationals(),
            RingDef::Gf(p, k) => {
                let k = k.as_ref().map_or(Ok(1), |k| small(span, k, "degree"))?;
                Ring::galois(small(span, p, "characteristic")?, k as usize).at(span)?
            }
            RingDef::QuotAlg {
                field,
                first,
                last,
                rels,
                commutative,
                degcap,
            } => {
                let field = self.build_ring(field, span)?;
                let names = var_range(span, first, last)?;
                let n = names.len();
                let free = Ring::quotient(
                    &field,
                    names.clone(),
                    TruncationPolicy {
                        num_vars: n,
                        degree_cap: None,
                    },
                    RewriteSystem {
                        rules: vec![],
                        commutative: *commutative,
                        weights: None,
                    },
                )
                .at(span)?;
                let scope = Scope { span, bound: None };
                let mut rules = Vec::new();
                for (l, r) in rels {
                    let lhs = self.ring_elem(&free, l, scope)?;
                    let rhs = self.ring_elem(&free, r, scope)?;
                    let terms: Vec<(&Monomial, &Elem)> = lhs.as_alg().terms().collect();
                    match terms[..] {
                        [(m, c)] if field.is_one(c) && m.degree() > 0 => rules.push(Rule {
                            lhs: m.clone(),
                            rhs: rhs.as_alg().clone(),
                        }),
                        _ => {
                            return Err(CliError::mismatch(
                                span,
                                format!("left side {l} of a relation must be a monomial"),
                            ))
                        }
                    }
                }
                let degree_cap = degcap
                    .as_ref()
                    .map(|d| small(span, d, "degree cap"))
                    .transpose()?;
                Ring::quotient(
                    &field,
                    names,
                    TruncationPolicy {
                        num_vars: n,
                        degree_cap: degree_cap.map(|d| d as usize),
                    },
                    RewriteSystem {
                        rules,
                        commutative: *commutative,
                        weights: None,
                    },
                )
                .at(span)?
            }
            RingDef::Named {
                family,
                field,
                vars,
                degcap,
            } => {
                let field = self.build_ring(field, span)?;
                let n = small(span, vars, "variable count")? as usize;
                let cap = degcap
                    .as_ref()
                    .map(|d| small(span, d, "degree cap"))
                    .transpose()?
                    .map(|d| d as usize);
                match family.as_str() {
                    "Exterior" if cap.is_some() => {
                        return Err(bad(span, "Exterior takes no degree cap"))
                    }
                    "Exterior" => exterior(&field, n),
                    "HeinzerLantz" => heinzer_lantz(&field, n, cap),
                    _ => orthogonal_free(&field, n, OrthogonalReading::AllDistinct, cap),
                }
                .at(span)?
            }
        })
    }

    fn build_endo(&self, r: &Ring, def: &EndoDef, span: Span) -> CliResult<Endo> {
        match def {
            EndoDef::Identity => Ok(Endo::identity(r)),
            EndoDef::Frobenius => Endo::frobenius(r).at(span),
            EndoDef::EvenShift => exterior_shift(r).at(span),
            EndoDef::VarMap(map) => {
                let alg = r
                    .algebra()
                    .ok_or_else(|| bad(span, format!("{r} has no variables")))?;
                let mut images: Vec<Option<VarImage>> = vec![None; alg.names().len()];
                for (v, e) in map {
                    let i = alg.names().iter().position(|n| n == v).ok_or_else(|| {
                        CliError::UnknownIdentifier {
                            span,
                            name: v.clone(),
                        }
                    })?;
                    if images[i].is_some() {
                        return Err(bad(span, format!("{v} is mapped twice")));
                    }
                    images[i] = Some(VarImage::Elem(self.ring_elem(
                        r,
                        e,
                        Scope { span, bound: None },
                    )?));
                }
                let images = images
                    .into_iter()
                    .enumerate()
                    .map(|(i, im)| im.unwrap_or_else(|| VarImage::Elem(r.var(i))))
                    .collect();
                Endo::varmap(r, images).at(span)
            }
        }
    }

    fn twist(&self, r: &Ring, omega: &Omega) -> Endo {
        match omega {
            Omega::Identity => Endo::identity(r),
            Omega::Endo(n) => self.endos[n].clone(),
        }
    }

    fn build_context(&self, def: &ContextDef, span: Span) -> CliResult<Ctx> {
        Ok(match def {
            ContextDef::Series {
                ring,
                monoid,
                omega,
            } => {
                let r = &self.rings[ring];
                let rule = match omega {
                    Omega::Identity => OmegaRule::Identity,
                    Omega::Endo(n) => OmegaRule::Power(self.endos[n].clone()),
                };
                Ctx::Series(SkewContext::new(r, self.monoids[monoid], rule).at(span)?)
            }
            ContextDef::Skew { ring, var, omega } => {
                let base = TwistedBase::new(&self.twist(&self.rings[ring], omega)).at(span)?;
                Ctx::Poly {
                    base,
                    var: var.clone(),
                    laurent: false,
                }
            }
            ContextDef::Laurent { ring, var, omega } => {
                let base =
                    TwistedBase::invertible(&self.twist(&self.rings[ring], omega)).at(span)?;
                Ctx::Poly {
                    base,
                    var: var.clone(),
                    laurent: true,
                }
            }
        })
    }

    fn rational(&self, e: &Expr, sc: Scope) -> CliResult<BigRational> {
        let rec = |x: &Expr| self.rational(x, sc);
        Ok(match e {
            Expr::Int(n) => BigRational::from_integer(n.clone()),
            Expr::Ident(n) => match sc.bound {
                Some((b, v)) if b == n => BigRational::from_integer(v.into()),
                _ => {
                    return Err(CliError::UnknownIdentifier {
                        span: sc.span,
                        name: n.clone(),
                    })
                }
            },
            Expr::Add(a, b) => rec(a)? + rec(b)?,
            Expr::Sub(a, b) => rec(a)? - rec(b)?,
            Expr::Mul(a, b) => rec(a)? * rec(b)?,
            Expr::Div(a, b) => {
                let d = rec(b)?;
                if d.is_zero() {
                    return Err(bad(sc.span, "division by zero"));
                }
                rec(a)? / d
            }
            Expr::Neg(a) => -rec(a)?,
            Expr::Pow(a, k) => {
                let base = rec(a)?;
                let k = self.exponent(k, sc)?;
                if k < 0 && base.is_zero() {
                    return Err(bad(sc.span, "division by zero"));
                }
                let p = num_traits::pow(base, k.unsigned_abs() as usize);
                if k < 0 {
                    p.recip()
                } else {
                    p
                }
            }
            Expr::C(_) | Expr::E(_) => {
                return Err(CliError::mismatch(
                    sc.span,
                    format!("{e} is not an exact rational"),
                ))
            }
        })
    }

    fn exponent(&self, e: &Expr, sc: Scope) -> CliResult<i64> {
        let q = self.rational(e, sc)?;
        if !q.is_integer() {
            return Err(bad(sc.span, format!("exponent {e} is not an integer")));
        }
        q.to_integer()
            .to_i64()
            .filter(|k| k.abs() <= 1 << 20)
            .ok_or_else(|| bad(sc.span, format!("exponent {e} is too large")))
    }

    fn ring_elem(&self, r: &Ring, e: &Expr, sc: Scope) -> CliResult<Elem> {
        let rec = |x: &Expr| self.ring_elem(r, x, sc);
        Ok(match e {
            Expr::Int(n) => r
                .from_rational(&BigRational::from_integer(n.clone()))
                .at(sc.span)?,
            Expr::Ident(n) => match sc.bound {
                Some((b, v)) if b == n => r.from_i64(v),
                _ => {
                    if let Some(i) = r
                        .algebra()
                        .and_then(|a| a.names().iter().position(|m| m == n))
                    {
                        r.var(i)
                    } else if let (Some(g), "w") = (r.galois_field(), n.as_str()) {
                        Elem::Gf(g.generator())
                    } else {
                        return Err(CliError::UnknownIdentifier {
                            span: sc.span,
                            name: n.clone(),
                        });
                    }
                }
            },
            Expr::Add(a, b) => r.add(&rec(a)?, &rec(b)?),
            Expr::Sub(a, b) => r.sub(&rec(a)?, &rec(b)?),
            Expr::Mul(a, b) => r.mul(&rec(a)?, &rec(b)?),
            Expr::Neg(a) => r.neg(&rec(a)?),
            Expr::Div(a, b) => {
                let d = rec(b)?;
                r.mul(&rec(a)?, &self.unit_inverse(r, &d, sc.span)?)
            }
            Expr::Pow(a, k) => {
                let k = self.exponent(k, sc)?;
                let mut base = rec(a)?;
                if k < 0 {
                    base = self.unit_inverse(r, &base, sc.span)?;
                }
                r.pow(&base, k.unsigned_abs())
            }
            Expr::C(_) | Expr::E(_) => {
                return Err(CliError::mismatch(
                    sc.span,
                    format!("series literal in the ring expression {e}"),
                ))
            }
        })
    }

    fn unit_inverse(&self, r: &Ring, a: &Elem, span: Span) -> CliResult<Elem> {
        props::is_unit(r, a)
            .at(span)?
            .ok_or_else(|| bad(span, format!("{} is not a unit of {r}", r.format(a))))
    }

    fn context(&self, name: &str) -> &Ctx {
        &self.contexts[name]
    }

    fn eval(&self, ctx_name: &str, e: &Expr, sc: Scope) -> CliResult<Value_> {
        Ok(match self.context(ctx_name) {
            Ctx::Series(c) => Value_::Series(self.series(ctx_name, c, e, sc)?),
            Ctx::Poly { base, var, laurent } => {
                Value_::Poly(self.poly(ctx_name, base, var, *laurent, e, sc)?)
            }
        })
    }

    fn binding(&self, ctx_name: &str, name: &str, span: Span) -> CliResult<Option<&Value_>> {
        match self.lets.get(name) {
            Some((c, v)) if c == ctx_name => Ok(Some(v)),
            Some((c, _)) => Err(CliError::mismatch(
                span,
                format!("{name} lives in {c}, not {ctx_name}"),
            )),
            None => Ok(None),
        }
    }

    fn series(&self, cn: &str, ctx: &SkewContext, e: &Expr, sc: Scope) -> CliResult<Series> {
        let rec = |x: &Expr| self.series(cn, ctx, x, sc);
        let r = ctx.ring();
        let span = sc.span;
        Ok(match e {
            Expr::Ident(n) if sc.bound.is_none_or(|(b, _)| b != n) => match self
                .binding(cn, n, span)?
            {
                Some(Value_::Series(f)) => f.clone(),
                Some(Value_::Poly(_)) => unreachable!("bindings are checked against their context"),
                None => Series::c(ctx, self.ring_elem(r, e, sc)?).at(span)?,
            },
            Expr::Int(_) | Expr::Ident(_) => Series::c(ctx, self.ring_elem(r, e, sc)?).at(span)?,
            Expr::C(a) => Series::c(ctx, self.ring_elem(r, a, sc)?).at(span)?,
            Expr::E(q) => Series::e(ctx, MonoidElement(self.rational(q, sc)?)).at(span)?,
            Expr::Add(a, b) => rec(a)?.add(&rec(b)?).at(span)?,
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?).at(span)?,
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?).at(span)?,
            Expr::Neg(a) => rec(a)?.neg(),
            Expr::Div(a, b) => {
                let d = rec(b)?;
                let c = match d.terms().iter().collect::<Vec<_>>()[..] {
                    [(s, c)] if s.is_zero() => c.clone(),
                    _ => {
                        return Err(domain(
                            span,
                            Error::NotComputable(format!(
                                "division by the non-constant series {}; use divide",
                                d.format()
                            )),
                        ))
                    }
                };
                rec(a)?
                    .mul(&Series::c(ctx, self.unit_inverse(r, &c, span)?).at(span)?)
                    .at(span)?
            }
            Expr::Pow(a, k) => {
                let k = self.exponent(k, sc)?;
                if k < 0 {
                    return Err(bad(span, format!("negative power in {e}; use invert")));
                }
                rec(a)?.pow(k as u32).at(span)?
            }
        })
    }

    fn poly(
        &self,
        cn: &str,
        base: &TwistedBase,
        var: &str,
        laurent: bool,
        e: &Expr,
        sc: Scope,
    ) -> CliResult<Poly> {
        let rec = |x: &Expr| self.poly(cn, base, var, laurent, x, sc);
        let r = base.ring();
        let span = sc.span;
        let x_pow = |d: i64| {
            if d < 0 && !laurent {
                return Err(bad(
                    span,
                    format!("negative power of {var} outside a Laurent context"),
                ));
            }
            Poly::x_pow(base, d).at(span)
        };
        Ok(match e {
            Expr::Ident(n) if n == var => x_pow(1)?,
            Expr::Pow(a, k) if matches!(&**a, Expr::Ident(n) if n == var) => {
                x_pow(self.exponent(k, sc)?)?
            }
            Expr::Ident(n) if sc.bound.is_none_or(|(b, _)| b != n) => {
                match self.binding(cn, n, span)? {
                    Some(Value_::Poly(p)) => p.clone(),
                    Some(Value_::Series(_)) => {
                        unreachable!("bindings are checked against their context")
                    }
                    None => Poly::constant(base, self.ring_elem(r, e, sc)?),
                }
            }
            Expr::Int(_) | Expr::Ident(_) => Poly::constant(base, self.ring_elem(r, e, sc)?),
            Expr::C(a) => Poly::constant(base, self.ring_elem(r, a, sc)?),
            Expr::E(_) => {
                return Err(CliError::mismatch(
                    span,
                    "series literal e(…) in a polynomial context",
                ))
            }
            Expr::Add(a, b) => rec(a)?.add(&rec(b)?).at(span)?,
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?).at(span)?,
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?).at(span)?,
            Expr::Neg(a) => rec(a)?.neg(),
            Expr::Div(a, b) => {
                let d = rec(b)?;
                let c = match d.coeffs().iter().collect::<Vec<_>>()[..] {
                    [(0, c)] => c.clone(),
                    _ => {
                        return Err(domain(
                            span,
                            Error::NotComputable(format!(
                                "division by the non-constant {}",
                                d.format()
                            )),
                        ))
                    }
                };
                rec(a)?
                    .mul(&Poly::constant(base, self.unit_inverse(r, &c, span)?))
                    .at(span)?
            }
            Expr::Pow(a, k) => {
                let k = self.exponent(k, sc)?;
                if k < 0 {
                    return Err(bad(span, format!("negative power in {e}; use invert")));
                }
                rec(a)?.pow(k as u32).at(span)?
            }
        })
    }

    /// Runs one command. Domain failures become the report's `error` entry.
    pub fn run_command(&self, cmd: &Command, span: Span) -> JsonReport {
        let mut rep = JsonReport::new(cmd.to_string());
        for f in &cmd.flags {
            rep.param(
                &f.name,
                f.value.clone().map_or(Value::Bool(true), Value::String),
            );
        }
        let start = Instant::now();
        if let Err(e) = self.dispatch(cmd, span, &mut rep) {
            rep.fail(e.kind(), e.to_string());
        }
        if self.opts.timing || cmd.flag("timing").is_some() {
            rep.timing_ms = Some(start.elapsed().as_millis() as u64);
        }
        rep
    }

    fn flag_u64(&self, cmd: &Command, name: &str, default: u64, span: Span) -> CliResult<u64> {
        match cmd.flag(name).and_then(|f| f.value.as_deref()) {
            None => Ok(default),
            Some(v) => v
                .parse()
                .map_err(|_| bad(span, format!("--{name}={v} is not a nonnegative integer"))),
        }
    }

    fn seed(&self, cmd: &Command, span: Span) -> CliResult<u64> {
        self.flag_u64(cmd, "seed", self.opts.seed, span)
    }

    fn side(&self, cmd: &Command, span: Span) -> CliResult<Side> {
        match cmd.flag("side").and_then(|f| f.value.as_deref()) {
            None | Some("left") => Ok(Side::Left),
            Some("right") => Ok(Side::Right),
            Some(v) => Err(bad(span, format!("--side={v}: expected left or right"))),
        }
    }

    fn trunc(&self, cmd: &Command, span: Span) -> CliResult<Option<MonoidElement>> {
        self.exponent_flag(cmd, "trunc", span)
    }

    fn exponent_flag(
        &self,
        cmd: &Command,
        name: &str,
        span: Span,
    ) -> CliResult<Option<MonoidElement>> {
        cmd.flag(name)
            .and_then(|f| f.value.as_deref())
            .map(|v| v.parse::<MonoidElement>().at(span))
            .transpose()
    }

    fn series_in(
        &self,
        ctx_name: &str,
        e: &Expr,
        cmd: &Command,
        sc: Scope,
    ) -> CliResult<(SkewContext, Series)> {
        let Ctx::Series(ctx) = self.context(ctx_name) else {
            return Err(CliError::mismatch(
                sc.span,
                format!("{ctx_name} is not a series context"),
            ));
        };
        let f = self.series(ctx_name, ctx, e, sc)?;
        let f = match self.trunc(cmd, sc.span)? {
            Some(t) => f.truncate(&t),
            None => f,
        };
        Ok((ctx.clone(), f))
    }

    fn dispatch(&self, cmd: &Command, span: Span, rep: &mut JsonReport) -> CliResult<()> {
        let sc = Scope { span, bound: None };
        match &cmd.verb {
            Verb::Eval { verb, ctx, expr } => match self.context(ctx) {
                Ctx::Series(_) => self.eval_series(*verb, ctx, expr, cmd, sc, rep),
                Ctx::Poly { .. } => self.eval_poly(*verb, ctx, expr, sc, rep),
            },
            Verb::Divide { ctx, num, den } => {
                let (_, f) = self.series_in(ctx, num, cmd, sc)?;
                let (_, g) = self.series_in(ctx, den, cmd, sc)?;
                let side = self.side(cmd, span)?;
                let budget = self.flag_u64(cmd, "budget", DEFAULT_BUDGET, span)?;
                rep.param("side", json!(side)).param("budget", budget);
                let res = match side {
                    Side::Left => f.divide_left(&g, budget as usize),
                    Side::Right => f.divide_right(&g, budget as usize),
                }
                .at(span)?;
                rep.verdict("divides", res.tag());
                match res {
                    DivisibilityResult::Yes(h) => {
                        let back = match side {
                            Side::Left => h.mul(&g),
                            Side::Right => g.mul(&h),
                        }
                        .at(span)?;
                        rep.verdict("replayed", back == f)
                            .verdict("quotient", h.format());
                        rep.witness("quotient", h.to_json());
                    }
                    DivisibilityResult::No(why) | DivisibilityResult::Unknown(why) => {
                        rep.verdict("reason", why);
                    }
                }
                Ok(())
            }
            Verb::Chain {
                ctx,
                generator,
                length,
            } => {
                let n = small(span, length, "chain length")?;
                if n == 0 || n > MAX_CHAIN {
                    return Err(bad(
                        span,
                        format!("chain length {n} outside [1, {MAX_CHAIN}]"),
                    ));
                }
                let elems = (1..=n as i64)
                    .map(|i| {
                        Ok(self
                            .series_in(
                                ctx,
                                generator,
                                cmd,
                                Scope {
                                    span,
                                    bound: Some(("n", i)),
                                },
                            )?
                            .1)
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let side = self.side(cmd, span)?;
                let budget = self.flag_u64(cmd, "budget", DEFAULT_BUDGET, span)?;
                rep.param("side", json!(side)).param("budget", budget);
                let report = chain_explore(
                    |i| Ok(elems[i - 1].clone()),
                    side,
                    n as usize,
                    budget as usize,
                )
                .at(span)?;
                rep.verdict("strictly_ascending", report.strictly_ascending())
                    .verdict("stabilized_at", json!(report.stabilized_at));
                rep.witness("chain", report.to_json());
                Ok(())
            }
            Verb::Probe { kind, target, expr } => {
                self.probe(*kind, target, expr.as_ref(), cmd, sc, rep)
            }
            Verb::Check { kind, target, expr } => {
                self.check(*kind, target, expr.as_ref(), cmd, sc, rep)
            }
            Verb::Scenario { id, params } => {
                let mut p = ScenarioParams::new();
                for (k, v) in params {
                    p = p.with(k, v);
                    rep.param(k, v.clone());
                }
                let report = run_scenario(id, &p).at(span)?;
                for c in &report.claims {
                    rep.verdict(&c.id, c.agrees);
                }
                rep.verdict("agreements", report.agreements())
                    .verdict("claims", report.claims.len());
                rep.witness("report", report.to_json());
                Ok(())
            }
            Verb::AnnChain { ring, families } => {
                let r = &self.rings[ring];
                let fams = families
                    .iter()
                    .map(|f| {
                        f.iter()
                            .map(|e| self.ring_elem(r, e, sc))
                            .collect::<CliResult<Vec<_>>>()
                    })
                    .collect::<CliResult<Vec<_>>>()?;
                let side = self.side(cmd, span)?;
                rep.param("side", json!(side));
                let report = annihilator_chain(r, &fams, side).at(span)?;
                rep.verdict("strict_steps", report.strict_steps())
                    .verdict("sizes", json!(report.sizes));
                let separators: Vec<Value> = report
                    .steps
                    .iter()
                    .map(|s| json!(s.separating.as_ref().map(|x| r.format(x))))
                    .collect();
                rep.verdict("separators", separators);
                rep.witness("chain", report.to_json(r));
                Ok(())
            }
        }
    }

    fn eval_series(
        &self,
        verb: EvalVerb,
        ctx: &str,
        expr: &Expr,
        cmd: &Command,
        sc: Scope,
        rep: &mut JsonReport,
    ) -> CliResult<()> {
        let span = sc.span;
        let (c, f) = self.series_in(ctx, expr, cmd, sc)?;
        let r = c.ring();
        match verb {
            EvalVerb::Mul | EvalVerb::Add => {
                rep.verdict("result", f.format());
                rep.witness("result", f.to_json());
            }
            EvalVerb::Invert => {
                let cutoff = match self.exponent_flag(cmd, "cutoff", span)? {
                    Some(c) => c,
                    None => self
                        .trunc(cmd, span)?
                        .unwrap_or_else(|| MonoidElement::int(DEFAULT_CUTOFF)),
                };
                rep.param("cutoff", cutoff.to_string());
                let g = f.invert(&cutoff).at(span)?;
                let one = Series::one(&c).truncate(&cutoff);
                let right = f.mul(&g).at(span)?.truncate(&cutoff) == one;
                let left = g.mul(&f).at(span)?.truncate(&cutoff) == one;
                rep.verdict("inverse", g.format())
                    .verdict("replayed", right && left);
                rep.witness("inverse", g.to_json());
            }
            EvalVerb::Pi => {
                let (s, lead) = f.pi().at(span)?;
                rep.verdict("pi", s.to_string())
                    .verdict("leading_coefficient", r.format(&lead))
                    .verdict("unit_criterion", f.satisfies_unit_criterion().at(span)?);
                rep.witness("leading_coefficient", r.to_json(&lead));
            }
        }
        Ok(())
    }

    fn eval_poly(
        &self,
        verb: EvalVerb,
        ctx: &str,
        expr: &Expr,
        sc: Scope,
        rep: &mut JsonReport,
    ) -> CliResult<()> {
        let span = sc.span;
        let Value_::Poly(p) = self.eval(ctx, expr, sc)? else {
            unreachable!("polynomial context")
        };
        let Ctx::Poly { laurent, var, .. } = self.context(ctx) else {
            unreachable!("polynomial context")
        };
        let (laurent, var) = (*laurent, var.as_str());
        let base = p.base().clone();
        let r = base.ring().clone();
        match verb {
            EvalVerb::Mul | EvalVerb::Add => {
                rep.verdict("result", p.format_var(var));
                rep.witness("result", poly_json(&p, var));
            }
            EvalVerb::Invert => {
                let (d, c) = match p.coeffs().iter().collect::<Vec<_>>()[..] {
                    [(d, c)] if laurent || *d == 0 => (*d, c.clone()),
                    _ => {
                        return Err(domain(
                            span,
                            Error::NotComputable(format!("inversion of {} (only unit monomials are supported, and only constants outside Laurent contexts)", p.format_var(var))),
                        ))
                    }
                };
                let cinv = self.unit_inverse(&r, &c, span)?;
                let g = Poly::new(&base, [(-d, base.twist(&cinv, -d).at(span)?)]).at(span)?;
                let one = Poly::constant(&base, r.one());
                let replayed = p.mul(&g).at(span)? == one && g.mul(&p).at(span)? == one;
                rep.verdict("inverse", g.format_var(var))
                    .verdict("replayed", replayed);
                rep.witness("inverse", poly_json(&g, var));
            }
            EvalVerb::Pi => {
                let (lo, _) = p.degrees().at(span)?;
                let lead = p.coeff(lo);
                rep.verdict("pi", lo)
                    .verdict("leading_coefficient", r.format(&lead));
                rep.witness("leading_coefficient", r.to_json(&lead));
            }
        }
        Ok(())
    }

    fn probe(
        &self,
        kind: ProbeKind,
        target: &RingDef,
        expr: Option<&Expr>,
        cmd: &Command,
        sc: Scope,
        rep: &mut JsonReport,
    ) -> CliResult<()> {
        let span = sc.span;
        if kind == ProbeKind::Rigid {
            let RingDef::Ref(name) = target else {
                unreachable!("parser resolves rigid targets to endomorphisms")
            };
            let alpha = &self.endos[name];
            let r = alpha.ring();
            match props::is_rigid(r, alpha).at(span)? {
                RigidVerdict::Rigid(cert) => {
                    rep.verdict("rigid", true)
                        .verdict("certification", json!(cert));
                }
                RigidVerdict::NotRigid(w) => {
                    rep.verdict("rigid", false).verdict("witness", r.format(&w));
                    rep.witness("witness", r.to_json(&w));
                }
                RigidVerdict::Inconclusive(why) => {
                    rep.verdict("rigid", "inconclusive").verdict("reason", why);
                }
            }
            return Ok(());
        }
        let r = self.build_ring(target, span)?;
        rep.param("ring", r.to_string());
        match kind {
            ProbeKind::Archimedean => {
                let side = self.side(cmd, span)?;
                rep.param("side", json!(side));
                let a = archimedean_probe(&r, side).at(span)?;
                rep.verdict("archimedean", a.archimedean());
                if let Some((w, set)) = &a.witness {
                    rep.verdict("witness", r.format(w)).verdict(
                        "stable_set",
                        set.iter().map(|e| r.format(e)).collect::<Vec<_>>(),
                    );
                }
                rep.witness("probe", a.to_json(&r));
            }
            ProbeKind::Powers => {
                let x = self.ring_elem(&r, expr.expect("parser requires an element"), sc)?;
                let side = self.side(cmd, span)?;
                rep.param("side", json!(side));
                let set = intersection_powers(&r, &x, side).at(span)?;
                rep.verdict("zero", set.iter().all(Elem::is_zero)).verdict(
                    "stable_set",
                    set.iter().map(|e| r.format(e)).collect::<Vec<_>>(),
                );
                rep.witness(
                    "stable_set",
                    set.iter().map(|e| r.to_json(e)).collect::<Vec<_>>(),
                );
            }
            ProbeKind::Reduced => {
                let bound =
                    self.flag_u64(cmd, "level", props::DEFAULT_SEARCH_BOUND as u64, span)?;
                rep.param("level", bound);
                match props::is_reduced(&r, bound as u32).at(span)? {
                    ReducedVerdict::Reduced(cert) => {
                        rep.verdict("reduced", true)
                            .verdict("certification", json!(cert));
                    }
                    ReducedVerdict::NotReduced { witness, exponent } => {
                        rep.verdict("reduced", false)
                            .verdict("witness", r.format(&witness))
                            .verdict("exponent", exponent);
                        rep.witness("witness", r.to_json(&witness));
                    }
                    ReducedVerdict::Inconclusive(why) => {
                        rep.verdict("reduced", "inconclusive")
                            .verdict("reason", why);
                    }
                }
            }
            ProbeKind::Rigid => unreachable!(),
        }
        Ok(())
    }

    fn check(
        &self,
        kind: CheckKind,
        target: &str,
        expr: Option<&Expr>,
        cmd: &Command,
        sc: Scope,
        rep: &mut JsonReport,
    ) -> CliResult<()> {
        let span = sc.span;
        match kind {
            CheckKind::Lemmas => {
                let Ctx::Series(ctx) = self.context(target) else {
                    unreachable!("parser checks the context kind")
                };
                let grid = self.flag_u64(cmd, "grid", DEFAULT_LEMMA_GRID, span)?;
                rep.param("grid", grid);
                match rigid_lemma_suite(ctx, grid) {
                    Ok(reports) => {
                        rep.verdict("rigid", true)
                            .verdict("passed", reports.iter().all(|r| r.passed()));
                        for r in &reports {
                            rep.verdict(&r.property, r.passed());
                        }
                        rep.witness(
                            "reports",
                            reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                        );
                    }
                    Err(Error::NotRigid(w)) => {
                        rep.verdict("rigid", false).verdict("witness", w);
                    }
                    Err(e) => return Err(domain(span, e)),
                }
            }
            CheckKind::Order => {
                let m = &self.monoids[target];
                let samples = self.flag_u64(cmd, "samples", 1000, span)?;
                let seed = self.seed(cmd, span)?;
                rep.param("samples", samples).param("seed", seed);
                match verify_strict_order(m, samples as usize, seed) {
                    OrderVerdict::Pass { checked } => {
                        rep.verdict("strict_order", true)
                            .verdict("checked", checked);
                    }
                    OrderVerdict::Fail(bad) => {
                        let (a, b, c) = &bad[0];
                        rep.verdict("strict_order", false)
                            .verdict("witness", json!([a, b, c]));
                    }
                }
            }
            CheckKind::Homomorphism => {
                let alpha = &self.endos[target];
                let samples = self.flag_u64(cmd, "samples", DEFAULT_HOM_SAMPLES as u64, span)?;
                let seed = self.seed(cmd, span)?;
                rep.param("samples", samples).param("seed", seed);
                match alpha.check_homomorphism(samples as usize, seed) {
                    Ok(()) => {
                        rep.verdict("homomorphism", true);
                    }
                    Err(Error::NotEndomorphism(why)) => {
                        rep.verdict("homomorphism", false).verdict("witness", why);
                    }
                    Err(e) => return Err(domain(span, e)),
                }
                if !alpha.escaped().is_empty() {
                    let names = alpha
                        .ring()
                        .algebra()
                        .map(|a| a.names().to_vec())
                        .unwrap_or_default();
                    let esc: Vec<String> =
                        alpha.escaped().iter().map(|&i| names[i].clone()).collect();
                    rep.verdict("escaped", esc);
                }
            }
            CheckKind::Jordan => {
                let alpha = &self.endos[target];
                let level = self.flag_u64(cmd, "level", DEFAULT_JORDAN_LEVEL, span)?;
                rep.param("level", level);
                let j = JordanRing::new(alpha).at(span)?;
                let report = jordan_rigidity_search(&j, level).at(span)?;
                rep.verdict("rigid", report.passed())
                    .verdict("checked", report.checked);
                if let Some(cx) = &report.counterexample {
                    rep.verdict("witness", cx.clone());
                }
                rep.witness("report", report.to_json());
            }
            CheckKind::Leading => {
                let (_, f) =
                    self.series_in(target, expr.expect("parser requires an element"), cmd, sc)?;
                let r = f.ctx().ring().clone();
                let ideal = leading_coeff_ideal_sample(&f, None).at(span)?;
                rep.verdict(
                    "ideal_sample",
                    ideal.iter().map(|e| r.format(e)).collect::<Vec<_>>(),
                )
                .verdict("exact", false);
                rep.witness(
                    "ideal_sample",
                    ideal.iter().map(|e| r.to_json(e)).collect::<Vec<_>>(),
                );
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(src: &str) -> Vec<JsonReport> {
        run_session(src, RunOptions::default()).unwrap()
    }

    #[test]
    fn series_product_over_z6() {
        let reps = run("ring R = Zmod(6)\nmonoid M = Nat\ncontext A = R[[M; id]]\nmul A : (c(2)+c(3)*e(1)) * (c(3)+c(2)*e(1))");
        assert_eq!(reps[0].verdicts["result"], json!("e(1)"));
        assert!(!reps[0].is_error());
    }

    #[test]
    fn archimedean_probe_on_z6() {
        let reps = run("probe archimedean Zmod(6)");
        assert_eq!(reps[0].verdicts["archimedean"], json!(false));
        assert_eq!(reps[0].verdicts["witness"], json!("3"));
        assert_eq!(reps[0].verdicts["stable_set"], json!(["0", "3"]));
    }

    #[test]
    fn modulus_one_fails_with_a_span() {
        match run_session("ring R = Zmod(1)", RunOptions::default()) {
            Err(CliError::Domain {
                span,
                source: Error::BadModulus(1),
            }) => assert_eq!((span.line, span.col), (1, 1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn inversion_reports_non_unit_leading_coefficient() {
        let src = "ring R = Zmod(6)\nmonoid M = Nat\ncontext A = R[[M; id]]\ninvert A : 2 + e(1)\ninvert A : 1 + e(1) --trunc=5\ninvert A : 1 + e(1) --cutoff=3";
        let reps = run(src);
        assert_eq!(
            reps[0].error.as_ref().unwrap().kind,
            "NonUnitLeadingCoefficient"
        );
        assert_eq!(reps[1].verdicts["replayed"], json!(true));
        assert_eq!(
            reps[1].verdicts["inverse"],
            json!("1 + 5*e(1) + e(2) + 5*e(3) + e(4) + 5*e(5)")
        );
        assert_eq!(
            reps[2].verdicts["inverse"],
            json!("1 + 5*e(1) + e(2) + 5*e(3)")
        );
        assert_eq!(reps[2].params["cutoff"], json!("3"));
    }

    #[test]
    fn chain_of_halving_exponents_is_strict() {
        let reps = run(
            "ring R = Zmod(6)\nmonoid M = QNonNeg\ncontext A = R[[M; id]]\nchain A e(1/2^n) n=6",
        );
        assert_eq!(reps[0].verdicts["strictly_ascending"], json!(true));
        assert_eq!(reps[0].verdicts["stabilized_at"], Value::Null);
    }

    #[test]
    fn quotient_relations_and_lets() {
        let src = "ring K = Q\n\
                   ring A = QuotAlg(K; vars a1..a3; rels \"a2^2 -> a1*a2, a3^2 -> a2*a3\"; comm)\n\
                   monoid M = Nat\ncontext S = A[[M; id]]\n\
                   let f = S : c(a3*(a1 - a2))\n\
                   mul S : f*f\nmul S : c(a3)*f";
        let reps = run(src);
        assert_eq!(reps[0].verdicts["result"], json!("0"));
        assert_eq!(reps[1].verdicts["result"], json!("0"));
    }

    #[test]
    fn laurent_and_skew_contexts() {
        let src = "ring F = GF(2, 2)\nendo f on F = frobenius\n\
                   context P = F[x; f]\ncontext L = F[x, x^-1; f]\n\
                   mul P : x*w\ninvert L : w*x^2\ninvert P : x";
        let reps = run(src);
        assert_eq!(reps[0].verdicts["result"], json!("(w+1)*x"));
        assert_eq!(reps[1].verdicts["replayed"], json!(true));
        assert!(reps[2].is_error());
    }

    #[test]
    fn lemma_check_reports_non_rigid_rings_as_verdicts() {
        let reps = run("ring R = Zmod(4)\nmonoid M = Nat\ncontext A = R[[M; id]]\ncheck lemmas A");
        assert_eq!(reps[0].verdicts["rigid"], json!(false));
        assert_eq!(reps[0].verdicts["witness"], json!("2"));
        assert!(!reps[0].is_error());
    }

    #[test]
    fn divisibility_with_replay() {
        let src = "ring R = Zmod(6)\nmonoid M = QNonNeg\ncontext A = R[[M; id]]\n\
                   divide A : e(1) by e(1/2)\ndivide A : e(1/2) by e(1)";
        let reps = run(src);
        assert_eq!(reps[0].verdicts["divides"], json!("yes"));
        assert_eq!(reps[0].verdicts["replayed"], json!(true));
        assert_eq!(reps[1].verdicts["divides"], json!("no"));
    }
}
