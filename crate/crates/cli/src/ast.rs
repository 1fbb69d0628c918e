//! Session syntax tree and its canonical printer.
//!
//! `Display` output reparses to an equal tree; spans are ignored by
//! equality.

use std::fmt;

use num_bigint::BigInt;

use crate::error::Span;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Session {
    pub items: Vec<Item>,
}

#[derive(Clone, Debug)]
pub struct Item {
    pub span: Span,
    pub stmt: Stmt,
}

impl PartialEq for Item {
    fn eq(&self, other: &Self) -> bool {
        self.stmt == other.stmt
    }
}

impl Eq for Item {}

impl Session {
    pub fn declarations(&self) -> impl Iterator<Item = &Item> {
        self.items
            .iter()
            .filter(|i| !matches!(i.stmt, Stmt::Command(_)))
    }

    pub fn commands(&self) -> impl Iterator<Item = &Item> {
        self.items
            .iter()
            .filter(|i| matches!(i.stmt, Stmt::Command(_)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Ring {
        name: String,
        def: RingDef,
    },
    Endo {
        name: String,
        ring: String,
        def: EndoDef,
    },
    Monoid {
        name: String,
        kind: String,
    },
    Context {
        name: String,
        def: ContextDef,
    },
    Let {
        name: String,
        ctx: String,
        expr: Expr,
    },
    Command(Command),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingDef {
    Ref(String),
    Zmod(BigInt),
    Integers,
    Rationals,
    Gf(BigInt, Option<BigInt>),
    QuotAlg {
        field: Box<RingDef>,
        first: String,
        last: String,
        rels: Vec<(Expr, Expr)>,
        commutative: bool,
        degcap: Option<BigInt>,
    },
    /// `Exterior`, `HeinzerLantz` or `Orthogonal`.
    Named {
        family: String,
        field: Box<RingDef>,
        vars: BigInt,
        degcap: Option<BigInt>,
    },
}

pub const NAMED_FAMILIES: [&str; 3] = ["Exterior", "HeinzerLantz", "Orthogonal"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EndoDef {
    Identity,
    Frobenius,
    /// `v_i ↦ v_{i+1}` for even i, `v_i ↦ 0` for odd i.
    EvenShift,
    VarMap(Vec<(String, Expr)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Omega {
    Identity,
    Endo(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextDef {
    Series {
        ring: String,
        monoid: String,
        omega: Omega,
    },
    Skew {
        ring: String,
        var: String,
        omega: Omega,
    },
    Laurent {
        ring: String,
        var: String,
        omega: Omega,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Ident(String),
    /// Constant series `c(r)`.
    C(Box<Expr>),
    /// Monomial series `e(q)`.
    E(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn any(&self, pred: &dyn Fn(&Expr) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Expr::Int(_) | Expr::Ident(_) => false,
            Expr::C(a) | Expr::E(a) | Expr::Neg(a) => a.any(pred),
            Expr::Add(a, b)
            | Expr::Sub(a, b)
            | Expr::Mul(a, b)
            | Expr::Div(a, b)
            | Expr::Pow(a, b) => a.any(pred) || b.any(pred),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.write(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Ident(s) => f.write_str(s),
            Expr::C(a) => write!(f, "c({a})"),
            Expr::E(a) => write!(f, "e({a})"),
            Expr::Add(a, b) => binary(f, a, " + ", b, 1),
            Expr::Sub(a, b) => binary(f, a, " - ", b, 1),
            Expr::Mul(a, b) => binary(f, a, "*", b, 2),
            Expr::Div(a, b) => binary(f, a, "/", b, 2),
            Expr::Neg(a) => {
                f.write_str("-")?;
                if matches!(**a, Expr::Neg(_)) {
                    a.write(f, 6)
                } else {
                    a.write(f, 3)
                }
            }
            Expr::Pow(a, b) => {
                a.write(f, 5)?;
                f.write_str("^")?;
                if matches!(**b, Expr::Neg(_)) {
                    return b.write(f, 3);
                }
                b.write(f, 4)
            }
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, a: &Expr, op: &str, b: &Expr, p: u8) -> fmt::Result {
    a.write(f, p)?;
    f.write_str(op)?;
    b.write(f, p + 1)
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub name: String,
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Command {
    pub verb: Verb,
    pub flags: Vec<Flag>,
}

impl Command {
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        self.flags.iter().rev().find(|f| f.name == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalVerb {
    Mul,
    Add,
    Invert,
    Pi,
}

impl EvalVerb {
    pub fn keyword(self) -> &'static str {
        match self {
            EvalVerb::Mul => "mul",
            EvalVerb::Add => "add",
            EvalVerb::Invert => "invert",
            EvalVerb::Pi => "pi",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeKind {
    Archimedean,
    Powers,
    Reduced,
    Rigid,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Lemmas,
    Order,
    Homomorphism,
    Jordan,
    Leading,
}

macro_rules! keywords {
    ($t:ty { $($v:ident => $s:literal),* $(,)? }) => {
        impl $t {
            pub const ALL: &'static [$t] = &[$(<$t>::$v),*];
            pub fn keyword(self) -> &'static str {
                match self { $(<$t>::$v => $s),* }
            }
        }
    };
}

keywords!(ProbeKind { Archimedean => "archimedean", Powers => "powers", Reduced => "reduced", Rigid => "rigid" });
keywords!(CheckKind {
    Lemmas => "lemmas",
    Order => "order",
    Homomorphism => "homomorphism",
    Jordan => "jordan",
    Leading => "leading",
});

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verb {
    Eval {
        verb: EvalVerb,
        ctx: String,
        expr: Expr,
    },
    Divide {
        ctx: String,
        num: Expr,
        den: Expr,
    },
    Chain {
        ctx: String,
        generator: Expr,
        length: BigInt,
    },
    /// `target` names a ring (inline definitions allowed) or, for `rigid`,
    /// an endomorphism.
    Probe {
        kind: ProbeKind,
        target: RingDef,
        expr: Option<Expr>,
    },
    Check {
        kind: CheckKind,
        target: String,
        expr: Option<Expr>,
    },
    Scenario {
        id: String,
        params: Vec<(String, String)>,
    },
    AnnChain {
        ring: String,
        families: Vec<Vec<Expr>>,
    },
}

fn join<T: fmt::Display>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

impl fmt::Display for RingDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDef::Ref(n) => f.write_str(n),
            RingDef::Zmod(n) => write!(f, "Zmod({n})"),
            RingDef::Integers => f.write_str("Z"),
            RingDef::Rationals => f.write_str("Q"),
            RingDef::Gf(p, None) => write!(f, "GF({p})"),
            RingDef::Gf(p, Some(k)) => write!(f, "GF({p}, {k})"),
            RingDef::QuotAlg {
                field,
                first,
                last,
                rels,
                commutative,
                degcap,
            } => {
                let rels: Vec<String> = rels.iter().map(|(l, r)| format!("{l} = {r}")).collect();
                write!(
                    f,
                    "QuotAlg({field}; vars {first}..{last}; rels \"{}\"; {}",
                    rels.join(", "),
                    if *commutative { "comm" } else { "noncomm" }
                )?;
                if let Some(d) = degcap {
                    write!(f, "; degcap={d}")?;
                }
                f.write_str(")")
            }
            RingDef::Named {
                family,
                field,
                vars,
                degcap,
            } => {
                write!(f, "{family}({field}, {vars}")?;
                if let Some(d) = degcap {
                    write!(f, "; degcap={d}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for EndoDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EndoDef::Identity => f.write_str("id"),
            EndoDef::Frobenius => f.write_str("frobenius"),
            EndoDef::EvenShift => f.write_str("evenshift"),
            EndoDef::VarMap(m) => {
                let parts: Vec<String> = m.iter().map(|(v, e)| format!("{v} -> {e}")).collect();
                write!(f, "varmap{{{}}}", parts.join(", "))
            }
        }
    }
}

impl fmt::Display for Omega {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Omega::Identity => f.write_str("id"),
            Omega::Endo(e) => f.write_str(e),
        }
    }
}

impl fmt::Display for ContextDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextDef::Series {
                ring,
                monoid,
                omega,
            } => write!(f, "{ring}[[{monoid}; {omega}]]"),
            ContextDef::Skew { ring, var, omega } => write!(f, "{ring}[{var}; {omega}]"),
            ContextDef::Laurent { ring, var, omega } => {
                write!(f, "{ring}[{var}, {var}^-1; {omega}]")
            }
        }
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Some(v) => write!(f, "--{}={v}", self.name),
            None => write!(f, "--{}", self.name),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verb {
            Verb::Eval { verb, ctx, expr } => write!(f, "{} {ctx} : {expr}", verb.keyword())?,
            Verb::Divide { ctx, num, den } => write!(f, "divide {ctx} : {num} by {den}")?,
            Verb::Chain {
                ctx,
                generator,
                length,
            } => write!(f, "chain {ctx} {generator} n={length}")?,
            Verb::Probe { kind, target, expr } => {
                write!(f, "probe {} {target}", kind.keyword())?;
                if let Some(e) = expr {
                    write!(f, " : {e}")?;
                }
            }
            Verb::Check { kind, target, expr } => {
                write!(f, "check {} {target}", kind.keyword())?;
                if let Some(e) = expr {
                    write!(f, " : {e}")?;
                }
            }
            Verb::Scenario { id, params } => {
                write!(f, "scenario {id}")?;
                for (k, v) in params {
                    write!(f, " {k}={v}")?;
                }
            }
            Verb::AnnChain { ring, families } => {
                write!(f, "annchain {ring} :")?;
                for fam in families {
                    write!(f, " {{{}}}", join(fam, ", "))?;
                }
            }
        }
        for flag in &self.flags {
            write!(f, " {flag}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Ring { name, def } => write!(f, "ring {name} = {def}"),
            Stmt::Endo { name, ring, def } => write!(f, "endo {name} on {ring} = {def}"),
            Stmt::Monoid { name, kind } => write!(f, "monoid {name} = {kind}"),
            Stmt::Context { name, def } => write!(f, "context {name} = {def}"),
            Stmt::Let { name, ctx, expr } => write!(f, "let {name} = {ctx} : {expr}"),
            Stmt::Command(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for item in &self.items {
            writeln!(f, "{}", item.stmt)?;
        }
        Ok(())
    }
}
