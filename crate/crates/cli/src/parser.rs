//! Recursive-descent parser for sessions. One statement per line.
//!
//! ```text
//! ring ID = Zmod(n) | Z | Q | GF(p[, k]) | ID
//!         | QuotAlg(RING; vars x1..xN; rels "lhs = rhs, …"; comm|noncomm[; degcap=D])
//!         | Exterior(RING, N) | HeinzerLantz(RING, N[; degcap=D]) | Orthogonal(RING, N[; degcap=D])
//! endo ID on RING = id | frobenius | evenshift | varmap{x1 -> expr, …}
//! monoid ID = Nat | Int | QNonNeg | Q
//! context ID = RING[[MONOID; id|ENDO]] | RING[x; id|ENDO] | RING[x, x^-1; id|ENDO]
//! let ID = CTX : expr
//! mul|add|invert|pi CTX : expr
//! divide CTX : expr by expr
//! chain CTX expr n=N
//! probe archimedean|powers|reduced|rigid TARGET [: expr]
//! check lemmas|order|homomorphism|jordan|leading ID [: expr]
//! scenario SCENARIO-ID [key=value …]
//! annchain RING : {expr, …} {expr, …} …
//! ```
//! Commands accept trailing `--flag[=value]` options.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::ast::*;
use crate::error::{CliError, CliResult, Span};
use crate::lexer::{lex, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum CtxKind {
    Series,
    Skew,
    Laurent,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ring,
    Endo,
    Monoid,
    Context(CtxKind),
    Let(CtxKind),
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Endo => "endomorphism",
            Kind::Monoid => "monoid",
            Kind::Context(_) => "context",
            Kind::Let(_) => "binding",
        }
    }
}

const RESERVED: [&str; 9] = [
    "Z",
    "Q",
    "Zmod",
    "GF",
    "QuotAlg",
    "id",
    "Exterior",
    "HeinzerLantz",
    "Orthogonal",
];

pub const KNOWN_FLAGS: [&str; 9] = [
    "trunc", "budget", "seed", "side", "grid", "samples", "level", "timing", "cutoff",
];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<Token>,
    pos: usize,
    symbols: HashMap<String, Kind>,
}

pub fn parse_session(src: &str) -> CliResult<Session> {
    let mut p = Parser {
        src,
        toks: lex(src)?,
        pos: 0,
        symbols: HashMap::new(),
    };
    let mut items = Vec::new();
    loop {
        while p.peek() == &Tok::Newline {
            p.pos += 1;
        }
        if p.peek() == &Tok::Eof {
            break;
        }
        let span = p.span();
        let stmt = p.statement()?;
        match p.peek() {
            Tok::Newline | Tok::Eof => {}
            other => {
                return Err(CliError::syntax(
                    p.span(),
                    format!("unexpected {} after statement", show(other)),
                ))
            }
        }
        items.push(Item { span, stmt });
    }
    Ok(Session { items })
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("identifier {s:?}"),
        Tok::Int(n) => format!("integer {n}"),
        Tok::Str(_) => "string".into(),
        Tok::Flag(n, _) => format!("flag --{n}"),
        Tok::Sym(s) => format!("{s:?}"),
        Tok::Newline => "end of line".into(),
        Tok::Eof => "end of input".into(),
    }
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Tok::Sym(x) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, s: &str) -> CliResult<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(CliError::syntax(
                self.span(),
                format!("expected {s:?}, found {}", show(self.peek())),
            ))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == w)
    }

    fn expect_word(&mut self, w: &str) -> CliResult<()> {
        if self.is_word(w) {
            self.pos += 1;
            Ok(())
        } else {
            Err(CliError::syntax(
                self.span(),
                format!("expected {w:?}, found {}", show(self.peek())),
            ))
        }
    }

    fn ident(&mut self) -> CliResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.pos += 1;
                Ok(s)
            }
            other => Err(CliError::syntax(
                self.span(),
                format!("expected identifier, found {}", show(&other)),
            )),
        }
    }

    fn int(&mut self) -> CliResult<BigInt> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(n)
            }
            other => Err(CliError::syntax(
                self.span(),
                format!("expected integer, found {}", show(&other)),
            )),
        }
    }

    /// Maximal run of tokens with no whitespace between them, as source text.
    fn word(&mut self) -> CliResult<String> {
        let first = self.bump();
        if matches!(first.tok, Tok::Newline | Tok::Eof | Tok::Flag(..)) {
            return Err(CliError::syntax(
                first.span,
                format!("expected a word, found {}", show(&first.tok)),
            ));
        }
        let mut end = first.end;
        while !matches!(self.peek(), Tok::Newline | Tok::Eof | Tok::Flag(..))
            && self.toks[self.pos].start == end
        {
            end = self.bump().end;
        }
        Ok(self.src[first.start..end].to_string())
    }

    fn declare(&mut self, span: Span, name: &str, kind: Kind) -> CliResult<()> {
        if RESERVED.contains(&name) || self.symbols.contains_key(name) {
            return Err(CliError::Redeclared {
                span,
                name: name.into(),
            });
        }
        self.symbols.insert(name.into(), kind);
        Ok(())
    }

    fn reference(&mut self, want: &[Kind]) -> CliResult<(String, Kind)> {
        let span = self.span();
        let name = self.ident()?;
        match self.symbols.get(&name) {
            None => Err(CliError::UnknownIdentifier { span, name }),
            Some(k) if want.iter().any(|w| same_kind(*w, *k)) => Ok((name, *k)),
            Some(k) => Err(CliError::mismatch(
                span,
                format!("{name} is a {}, expected a {}", k.noun(), want[0].noun()),
            )),
        }
    }

    fn ring_ref(&mut self) -> CliResult<String> {
        Ok(self.reference(&[Kind::Ring])?.0)
    }

    fn context_ref(&mut self) -> CliResult<(String, CtxKind)> {
        match self.reference(&[Kind::Context(CtxKind::Series)])? {
            (n, Kind::Context(k)) => Ok((n, k)),
            _ => unreachable!(),
        }
    }

    fn statement(&mut self) -> CliResult<Stmt> {
        let span = self.span();
        let kw = self.ident()?;
        match kw.as_str() {
            "ring" => {
                let name_span = self.span();
                let name = self.ident()?;
                self.expect_sym("=")?;
                let def = self.ring_def()?;
                self.declare(name_span, &name, Kind::Ring)?;
                Ok(Stmt::Ring { name, def })
            }
            "endo" => {
                let name_span = self.span();
                let name = self.ident()?;
                self.expect_word("on")?;
                let ring = self.ring_ref()?;
                self.expect_sym("=")?;
                let def = self.endo_def()?;
                self.declare(name_span, &name, Kind::Endo)?;
                Ok(Stmt::Endo { name, ring, def })
            }
            "monoid" => {
                let name_span = self.span();
                let name = self.ident()?;
                self.expect_sym("=")?;
                let kind_span = self.span();
                let kind = self.ident()?;
                if !["Nat", "Int", "QNonNeg", "Q"].contains(&kind.as_str()) {
                    return Err(CliError::syntax(
                        kind_span,
                        format!("unknown monoid {kind}; expected Nat, Int, QNonNeg or Q"),
                    ));
                }
                self.declare(name_span, &name, Kind::Monoid)?;
                Ok(Stmt::Monoid { name, kind })
            }
            "context" => {
                let name_span = self.span();
                let name = self.ident()?;
                self.expect_sym("=")?;
                let def = self.context_def()?;
                let kind = match def {
                    ContextDef::Series { .. } => CtxKind::Series,
                    ContextDef::Skew { .. } => CtxKind::Skew,
                    ContextDef::Laurent { .. } => CtxKind::Laurent,
                };
                self.declare(name_span, &name, Kind::Context(kind))?;
                Ok(Stmt::Context { name, def })
            }
            "let" => {
                let name_span = self.span();
                let name = self.ident()?;
                self.expect_sym("=")?;
                let (ctx, kind) = self.context_ref()?;
                self.expect_sym(":")?;
                let expr = self.typed_expr(kind)?;
                self.declare(name_span, &name, Kind::Let(kind))?;
                Ok(Stmt::Let { name, ctx, expr })
            }
            _ => {
                self.pos -= 1;
                let verb = self.verb().map_err(|e| match e {
                    CliError::Syntax { msg, .. } if msg.starts_with("unknown command") => {
                        CliError::syntax(span, format!("unknown statement {kw:?}"))
                    }
                    e => e,
                })?;
                let mut flags = Vec::new();
                while let Tok::Flag(name, value) = self.peek().clone() {
                    if !KNOWN_FLAGS.contains(&name.as_str()) {
                        return Err(CliError::syntax(
                            self.span(),
                            format!("unknown flag --{name}"),
                        ));
                    }
                    self.pos += 1;
                    flags.push(Flag { name, value });
                }
                Ok(Stmt::Command(Command { verb, flags }))
            }
        }
    }

    fn ring_def(&mut self) -> CliResult<RingDef> {
        let span = self.span();
        let head = self.ident()?;
        match head.as_str() {
            "Z" => Ok(RingDef::Integers),
            "Q" => Ok(RingDef::Rationals),
            "Zmod" => {
                self.expect_sym("(")?;
                let n = self.int()?;
                self.expect_sym(")")?;
                Ok(RingDef::Zmod(n))
            }
            "GF" => {
                self.expect_sym("(")?;
                let p = self.int()?;
                let k = if self.eat_sym(",") {
                    Some(self.int()?)
                } else {
                    None
                };
                self.expect_sym(")")?;
                Ok(RingDef::Gf(p, k))
            }
            "QuotAlg" => {
                self.expect_sym("(")?;
                let field = Box::new(self.ring_def()?);
                self.expect_sym(";")?;
                self.expect_word("vars")?;
                let first = self.ident()?;
                self.expect_sym("..")?;
                let last = self.ident()?;
                self.expect_sym(";")?;
                self.expect_word("rels")?;
                let rels = self.relations()?;
                self.expect_sym(";")?;
                let commutative = match self.ident()?.as_str() {
                    "comm" => true,
                    "noncomm" => false,
                    other => {
                        return Err(CliError::syntax(
                            span,
                            format!("expected comm or noncomm, found {other}"),
                        ))
                    }
                };
                let degcap = self.degcap()?;
                self.expect_sym(")")?;
                Ok(RingDef::QuotAlg {
                    field,
                    first,
                    last,
                    rels,
                    commutative,
                    degcap,
                })
            }
            fam if NAMED_FAMILIES.contains(&fam) => {
                self.expect_sym("(")?;
                let field = Box::new(self.ring_def()?);
                self.expect_sym(",")?;
                let vars = self.int()?;
                let degcap = self.degcap()?;
                self.expect_sym(")")?;
                Ok(RingDef::Named {
                    family: fam.to_string(),
                    field,
                    vars,
                    degcap,
                })
            }
            _ => match self.symbols.get(&head) {
                Some(Kind::Ring) => Ok(RingDef::Ref(head)),
                Some(k) => Err(CliError::mismatch(
                    span,
                    format!("{head} is a {}, expected a ring", k.noun()),
                )),
                None => Err(CliError::UnknownIdentifier { span, name: head }),
            },
        }
    }

    fn degcap(&mut self) -> CliResult<Option<BigInt>> {
        if !self.eat_sym(";") {
            return Ok(None);
        }
        self.expect_word("degcap")?;
        self.expect_sym("=")?;
        Ok(Some(self.int()?))
    }

    fn relations(&mut self) -> CliResult<Vec<(Expr, Expr)>> {
        let span = self.span();
        let Tok::Str(body) = self.peek().clone() else {
            return Err(CliError::syntax(span, "expected a quoted relation list"));
        };
        self.pos += 1;
        let shift = |e: CliError| match e {
            CliError::Syntax { msg, .. } => CliError::syntax(span, format!("in relations: {msg}")),
            e => e,
        };
        let mut sub = Parser {
            src: &body,
            toks: lex(&body).map_err(shift)?,
            pos: 0,
            symbols: HashMap::new(),
        };
        let mut rels = Vec::new();
        while sub.peek() != &Tok::Eof {
            let lhs = sub.expr().map_err(shift)?;
            if !(sub.eat_sym("=") || sub.eat_sym("->")) {
                return Err(CliError::syntax(span, "in relations: expected = or ->"));
            }
            let rhs = sub.expr().map_err(shift)?;
            rels.push((lhs, rhs));
            if !sub.eat_sym(",") && sub.peek() != &Tok::Eof {
                return Err(CliError::syntax(
                    span,
                    format!("in relations: unexpected {}", show(sub.peek())),
                ));
            }
        }
        Ok(rels)
    }

    fn endo_def(&mut self) -> CliResult<EndoDef> {
        let span = self.span();
        match self.ident()?.as_str() {
            "id" => Ok(EndoDef::Identity),
            "frobenius" => Ok(EndoDef::Frobenius),
            "evenshift" => Ok(EndoDef::EvenShift),
            "varmap" => {
                self.expect_sym("{")?;
                let mut map = Vec::new();
                if !self.eat_sym("}") {
                    loop {
                        let v = self.ident()?;
                        self.expect_sym("->")?;
                        map.push((v, self.expr()?));
                        if self.eat_sym("}") {
                            break;
                        }
                        self.expect_sym(",")?;
                    }
                }
                Ok(EndoDef::VarMap(map))
            }
            other => Err(CliError::syntax(span, format!("unknown endomorphism {other}; expected id, frobenius, evenshift or varmap{{…}}"))),
        }
    }

    fn omega(&mut self) -> CliResult<Omega> {
        if self.is_word("id") {
            self.pos += 1;
            return Ok(Omega::Identity);
        }
        Ok(Omega::Endo(self.reference(&[Kind::Endo])?.0))
    }

    fn context_def(&mut self) -> CliResult<ContextDef> {
        let ring = self.ring_ref()?;
        if self.eat_sym("[[") {
            let monoid = self.reference(&[Kind::Monoid])?.0;
            self.expect_sym(";")?;
            let omega = self.omega()?;
            self.expect_sym("]]")?;
            return Ok(ContextDef::Series {
                ring,
                monoid,
                omega,
            });
        }
        self.expect_sym("[")?;
        let var = self.ident()?;
        let laurent = if self.eat_sym(",") {
            let span = self.span();
            let again = self.ident()?;
            self.expect_sym("^")?;
            self.expect_sym("-")?;
            let one = self.int()?;
            if again != var || one != BigInt::from(1) {
                return Err(CliError::syntax(span, format!("expected {var}^-1")));
            }
            true
        } else {
            false
        };
        self.expect_sym(";")?;
        let omega = self.omega()?;
        self.expect_sym("]")?;
        Ok(if laurent {
            ContextDef::Laurent { ring, var, omega }
        } else {
            ContextDef::Skew { ring, var, omega }
        })
    }

    fn typed_expr(&mut self, kind: CtxKind) -> CliResult<Expr> {
        let span = self.span();
        let e = self.expr()?;
        if kind != CtxKind::Series && e.any(&|x| matches!(x, Expr::E(_))) {
            return Err(CliError::mismatch(
                span,
                "series literal e(…) in a polynomial context",
            ));
        }
        Ok(e)
    }

    fn verb(&mut self) -> CliResult<Verb> {
        let span = self.span();
        let kw = self.ident()?;
        let eval = match kw.as_str() {
            "mul" => Some(EvalVerb::Mul),
            "add" => Some(EvalVerb::Add),
            "invert" => Some(EvalVerb::Invert),
            "pi" => Some(EvalVerb::Pi),
            _ => None,
        };
        if let Some(verb) = eval {
            let (ctx, kind) = self.context_ref()?;
            self.expect_sym(":")?;
            let expr = self.typed_expr(kind)?;
            return Ok(Verb::Eval { verb, ctx, expr });
        }
        match kw.as_str() {
            "divide" => {
                let (ctx, kind) = self.context_ref()?;
                self.expect_sym(":")?;
                let num = self.typed_expr(kind)?;
                self.expect_word("by")?;
                let den = self.typed_expr(kind)?;
                Ok(Verb::Divide { ctx, num, den })
            }
            "chain" => {
                let (ctx, kind) = self.context_ref()?;
                let generator = self.typed_expr(kind)?;
                self.expect_word("n")?;
                self.expect_sym("=")?;
                let length = self.int()?;
                Ok(Verb::Chain {
                    ctx,
                    generator,
                    length,
                })
            }
            "probe" => {
                let kind_span = self.span();
                let word = self.ident()?;
                let kind = *ProbeKind::ALL
                    .iter()
                    .find(|k| k.keyword() == word)
                    .ok_or_else(|| CliError::syntax(kind_span, format!("unknown probe {word}")))?;
                let target = if kind == ProbeKind::Rigid {
                    RingDef::Ref(self.reference(&[Kind::Endo])?.0)
                } else {
                    self.ring_def()?
                };
                let expr = if self.eat_sym(":") {
                    Some(self.expr()?)
                } else {
                    None
                };
                if (kind == ProbeKind::Powers) != expr.is_some() {
                    return Err(CliError::syntax(
                        kind_span,
                        "probe powers takes `RING : element`; other probes take no element",
                    ));
                }
                Ok(Verb::Probe { kind, target, expr })
            }
            "check" => {
                let kind_span = self.span();
                let word = self.ident()?;
                let kind = *CheckKind::ALL
                    .iter()
                    .find(|k| k.keyword() == word)
                    .ok_or_else(|| CliError::syntax(kind_span, format!("unknown check {word}")))?;
                let want = match kind {
                    CheckKind::Lemmas | CheckKind::Leading => Kind::Context(CtxKind::Series),
                    CheckKind::Order => Kind::Monoid,
                    CheckKind::Homomorphism | CheckKind::Jordan => Kind::Endo,
                };
                let (target, found) = self.reference(&[want])?;
                if matches!(found, Kind::Context(k) if k != CtxKind::Series) {
                    return Err(CliError::mismatch(
                        kind_span,
                        format!("check {word} needs a series context"),
                    ));
                }
                let expr = if self.eat_sym(":") {
                    Some(self.typed_expr(CtxKind::Series)?)
                } else {
                    None
                };
                if (kind == CheckKind::Leading) != expr.is_some() {
                    return Err(CliError::syntax(
                        kind_span,
                        "check leading takes `CTX : element`; other checks take no element",
                    ));
                }
                Ok(Verb::Check { kind, target, expr })
            }
            "scenario" => {
                let id = self.word()?;
                let mut params = Vec::new();
                while !matches!(self.peek(), Tok::Newline | Tok::Eof | Tok::Flag(..)) {
                    let w_span = self.span();
                    let w = self.word()?;
                    let (k, v) = w.split_once('=').ok_or_else(|| {
                        CliError::syntax(w_span, format!("expected key=value, found {w:?}"))
                    })?;
                    params.push((k.to_string(), v.to_string()));
                }
                Ok(Verb::Scenario { id, params })
            }
            "annchain" => {
                let ring = self.ring_ref()?;
                self.expect_sym(":")?;
                let mut families = Vec::new();
                while self.eat_sym("{") {
                    let mut fam = Vec::new();
                    if !self.eat_sym("}") {
                        loop {
                            fam.push(self.expr()?);
                            if self.eat_sym("}") {
                                break;
                            }
                            self.expect_sym(",")?;
                        }
                    }
                    families.push(fam);
                }
                if families.is_empty() {
                    return Err(CliError::syntax(
                        self.span(),
                        "expected at least one {…} family",
                    ));
                }
                Ok(Verb::AnnChain { ring, families })
            }
            _ => Err(CliError::syntax(span, format!("unknown command {kw:?}"))),
        }
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat_sym("+") {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat_sym("*") {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat_sym("/") {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> CliResult<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            return Ok(Expr::Pow(Box::new(base), Box::new(self.unary()?)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> CliResult<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Tok::Sym("(") => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            Tok::Ident(s) => {
                self.pos += 1;
                if (s == "c" || s == "e") && self.eat_sym("(") {
                    let inner = Box::new(self.expr()?);
                    self.expect_sym(")")?;
                    return Ok(if s == "c" {
                        Expr::C(inner)
                    } else {
                        Expr::E(inner)
                    });
                }
                Ok(Expr::Ident(s))
            }
            other => Err(CliError::syntax(
                span,
                format!("expected an expression, found {}", show(&other)),
            )),
        }
    }
}

fn same_kind(want: Kind, got: Kind) -> bool {
    matches!(
        (want, got),
        (Kind::Ring, Kind::Ring)
            | (Kind::Endo, Kind::Endo)
            | (Kind::Monoid, Kind::Monoid)
            | (Kind::Context(_), Kind::Context(_))
            | (Kind::Let(_), Kind::Let(_))
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_node_session() {
        let ast = parse_session(
            "ring R = Zmod(6)\nmonoid M = QNonNeg\ncontext A = R[[M; id]]\nchain A e(1/2^n) n=10",
        )
        .unwrap();
        assert_eq!(ast.items.len(), 4);
        assert_eq!(ast.declarations().count(), 3);
        let Stmt::Command(c) = &ast.items[3].stmt else {
            panic!()
        };
        assert_eq!(c.to_string(), "chain A e(1/2^n) n=10");
    }

    #[test]
    fn undeclared_and_redeclared_names() {
        let e = parse_session("context A = R[[M; id]]").unwrap_err();
        assert!(
            matches!(e, CliError::UnknownIdentifier { ref name, span } if name == "R" && span.line == 1 && span.col == 13)
        );
        let e = parse_session("ring R = Z\nring R = Q").unwrap_err();
        assert!(matches!(
            e,
            CliError::Redeclared {
                span: Span { line: 2, .. },
                ..
            }
        ));
    }

    #[test]
    fn series_literal_in_polynomial_context_is_rejected() {
        let src = "ring F = GF(2, 2)\nendo f on F = frobenius\ncontext P = F[x; f]\nmul P : x*e(1)";
        assert!(matches!(
            parse_session(src).unwrap_err(),
            CliError::TypeMismatch {
                span: Span { line: 4, .. },
                ..
            }
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_session("ring R = Zmod(6\n").unwrap_err();
        assert!(
            matches!(
                e,
                CliError::Syntax {
                    span: Span { line: 1, col: 16 },
                    ..
                }
            ),
            "{e}"
        );
        assert!(matches!(
            parse_session("frobnicate"),
            Err(CliError::Syntax { .. })
        ));
        assert!(matches!(
            parse_session("scenario ex-qchain --bogus"),
            Err(CliError::Syntax { .. })
        ));
    }

    #[test]
    fn expressions_round_trip() {
        let src = "ring R = Z\nmonoid M = Int\ncontext A = R[[M; id]]\n\
                   let f = A : -(c(2) - c(3))*e(-1/2)^2 + c(1)*-c(1) - -c(4)\n\
                   mul A : f*f^-(-1)\n";
        let ast = parse_session(src).unwrap();
        let printed = ast.to_string();
        assert_eq!(parse_session(&printed).unwrap(), ast);
        assert_eq!(parse_session(&printed).unwrap().to_string(), printed);
    }

    #[test]
    fn quotient_and_scenario_syntax() {
        let src = "ring K = Q\nring A = QuotAlg(K; vars a1..a3; rels \"a2^2 -> a1*a2, a3^2 = a2*a3\"; comm)\n\
                   ring B = Orthogonal(Zmod(2), 8; degcap=6)\n\
                   annchain B : {x1, x2} {x2}\n\
                   scenario ex-heinzer-lantz N=3 field=Q --timing\n";
        let ast = parse_session(src).unwrap();
        let Stmt::Command(Command {
            verb: Verb::Scenario { id, params },
            flags,
        }) = &ast.items[4].stmt
        else {
            panic!()
        };
        assert_eq!(id, "ex-heinzer-lantz");
        assert_eq!(
            params,
            &vec![
                ("N".to_string(), "3".to_string()),
                ("field".to_string(), "Q".to_string())
            ]
        );
        assert_eq!(flags.len(), 1);
        assert_eq!(parse_session(&ast.to_string()).unwrap(), ast);
    }
}
