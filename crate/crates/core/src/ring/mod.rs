//! Coefficient rings with identity, their elements, and endomorphisms.
//!
//! A [`Ring`] is a cheap, shareable handle. Elements are bare canonical
//! payloads ([`Elem`]); every constructor normalizes eagerly, so element
//! equality is payload equality. Operations take the owning handle
//! explicitly.

pub mod endo;
pub mod linalg;
pub mod props;

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rings::algebra::{AlgPoly, QuotientAlgebra, RewriteSystem, TruncationPolicy};
use crate::rings::gf::{is_prime, GaloisField};

pub use endo::{Endo, EndoRule};

/// Largest universe that exhaustive searches will walk.
pub const ENUMERATION_LIMIT: u128 = 1 << 16;

/// Canonical element payload.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    /// Residue in `[0, n)`.
    Res(u64),
    /// GF(p^k) coefficient vector, constant term first.
    Gf(Vec<u64>),
    Alg(AlgPoly),
}

impl Elem {
    /// Payload-level zero test; valid because payloads are canonical.
    pub fn is_zero(&self) -> bool {
        match self {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(q) => q.is_zero(),
            Elem::Res(r) => *r == 0,
            Elem::Gf(v) => v.iter().all(|&c| c == 0),
            Elem::Alg(p) => p.is_zero(),
        }
    }

    pub fn as_alg(&self) -> &AlgPoly {
        match self {
            Elem::Alg(p) => p,
            other => panic!("expected an algebra element, got {other:?}"),
        }
    }
}

#[derive(Debug)]
pub enum RingKind {
    Integers,
    Rationals,
    Zmod(u64),
    Galois(GaloisField),
    Quotient(QuotientAlgebra),
}

#[derive(Debug)]
struct RingData {
    kind: RingKind,
    descriptor: String,
}

/// Handle to a coefficient ring. Two handles are equal when they describe
/// the same ring.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.descriptor == other.0.descriptor
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.descriptor)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.descriptor)
    }
}

fn modulo(a: u64, b: u64, op: impl Fn(u128, u128) -> u128, n: u64) -> u64 {
    (op(a as u128, b as u128) % n as u128) as u64
}

impl Ring {
    fn wrap(kind: RingKind, descriptor: String) -> Self {
        Ring(Arc::new(RingData { kind, descriptor }))
    }

    pub fn integers() -> Self {
        Self::wrap(RingKind::Integers, "Z".into())
    }

    pub fn rationals() -> Self {
        Self::wrap(RingKind::Rationals, "Q".into())
    }

    /// ℤ/n for n ≥ 2.
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadModulus(n));
        }
        Ok(Self::wrap(RingKind::Zmod(n), format!("Zmod({n})")))
    }

    pub fn galois(p: u64, k: usize) -> Result<Self> {
        let gf = GaloisField::new(p, k)?;
        Ok(Self::wrap(RingKind::Galois(gf), format!("GF({p},{k})")))
    }

    /// Quotient algebra `field<x1..xN>/(rules)` under a truncation policy.
    pub fn quotient(
        field: &Ring,
        names: Vec<String>,
        policy: TruncationPolicy,
        rels: RewriteSystem,
    ) -> Result<Self> {
        let alg = QuotientAlgebra::new(field.clone(), names, policy, rels)?;
        let rules: Vec<String> = alg
            .rules()
            .iter()
            .map(|r| format!("{}->{}", alg.format_monomial(&r.lhs), alg.format(&r.rhs)))
            .collect();
        let descriptor = format!(
            "QuotAlg({}; vars {}; rels [{}]; {}{})",
            field.descriptor(),
            alg.names().join(","),
            rules.join(", "),
            if alg.is_commutative() {
                "comm"
            } else {
                "noncomm"
            },
            alg.policy()
                .degree_cap
                .map(|d| format!("; degcap={d}"))
                .unwrap_or_default()
        );
        Ok(Self::wrap(RingKind::Quotient(alg), descriptor))
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    pub fn descriptor(&self) -> &str {
        &self.0.descriptor
    }

    pub fn algebra(&self) -> Option<&QuotientAlgebra> {
        match &self.0.kind {
            RingKind::Quotient(a) => Some(a),
            _ => None,
        }
    }

    pub fn galois_field(&self) -> Option<&GaloisField> {
        match &self.0.kind {
            RingKind::Galois(g) => Some(g),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            RingKind::Integers | RingKind::Rationals => 0,
            RingKind::Zmod(n) => *n,
            RingKind::Galois(g) => g.characteristic(),
            RingKind::Quotient(a) => a.field().characteristic(),
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.0.kind {
            RingKind::Rationals | RingKind::Galois(_) => true,
            RingKind::Zmod(n) => is_prime(*n),
            _ => false,
        }
    }

    pub fn zero(&self) -> Elem {
        match &self.0.kind {
            RingKind::Integers => Elem::Int(BigInt::zero()),
            RingKind::Rationals => Elem::Rat(BigRational::zero()),
            RingKind::Zmod(_) => Elem::Res(0),
            RingKind::Galois(g) => Elem::Gf(g.zero()),
            RingKind::Quotient(_) => Elem::Alg(AlgPoly::zero()),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &self.0.kind {
            RingKind::Integers => Elem::Int(BigInt::from(n)),
            RingKind::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
            RingKind::Zmod(m) => Elem::Res(n.rem_euclid(*m as i64) as u64),
            RingKind::Galois(g) => Elem::Gf(g.from_int(n)),
            RingKind::Quotient(a) => Elem::Alg(a.constant(a.field().from_i64(n))),
        }
    }

    /// Image of an exact rational; only defined when the denominator is
    /// invertible in the ring.
    pub fn from_rational(&self, q: &BigRational) -> Result<Elem> {
        if let RingKind::Rationals = self.0.kind {
            return Ok(Elem::Rat(q.clone()));
        }
        if let RingKind::Quotient(a) = &self.0.kind {
            return Ok(Elem::Alg(a.constant(a.field().from_rational(q)?)));
        }
        let to_i64 = |n: &BigInt| -> Result<i64> {
            let m = self.characteristic();
            if m == 0 {
                n.to_i64()
                    .ok_or_else(|| Error::BadParameter(format!("{n} is too large")))
            } else {
                let r = n % BigInt::from(m);
                Ok(r.to_i64().unwrap())
            }
        };
        let num = self.from_i64(to_i64(q.numer())?);
        if q.denom().is_one() {
            return Ok(num);
        }
        let den = self.from_i64(to_i64(q.denom())?);
        let inv = self
            .inverse(&den)
            .ok_or_else(|| Error::BadParameter(format!("{q} is not defined in {self}")))?;
        Ok(self.mul(&num, &inv))
    }

    pub fn contains(&self, a: &Elem) -> bool {
        match (&self.0.kind, a) {
            (RingKind::Integers, Elem::Int(_)) | (RingKind::Rationals, Elem::Rat(_)) => true,
            (RingKind::Zmod(n), Elem::Res(r)) => r < n,
            (RingKind::Galois(g), Elem::Gf(v)) => g.is_valid(v),
            (RingKind::Quotient(q), Elem::Alg(p)) => q.is_valid(p),
            _ => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (RingKind::Zmod(n), Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(modulo(*x, *y, |a, b| a + b, *n))
            }
            (RingKind::Galois(g), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(g.add(x, y)),
            (RingKind::Quotient(q), Elem::Alg(x), Elem::Alg(y)) => Elem::Alg(q.add(x, y)),
            _ => panic!("element does not belong to {self}: {a:?}, {b:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&self.0.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => Elem::Int(-x),
            (RingKind::Rationals, Elem::Rat(x)) => Elem::Rat(-x),
            (RingKind::Zmod(n), Elem::Res(x)) => Elem::Res((n - x) % n),
            (RingKind::Galois(g), Elem::Gf(x)) => Elem::Gf(g.neg(x)),
            (RingKind::Quotient(q), Elem::Alg(x)) => Elem::Alg(q.neg(x)),
            _ => panic!("element does not belong to {self}: {a:?}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&self.0.kind, a, b) {
            (RingKind::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (RingKind::Rationals, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (RingKind::Zmod(n), Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(modulo(*x, *y, |a, b| a * b, *n))
            }
            (RingKind::Galois(g), Elem::Gf(x), Elem::Gf(y)) => Elem::Gf(g.mul(x, y)),
            (RingKind::Quotient(q), Elem::Alg(x), Elem::Alg(y)) => Elem::Alg(q.mul(x, y)),
            _ => panic!("element does not belong to {self}: {a:?}, {b:?}"),
        }
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    /// Multiplicative inverse in ℤ, ℤ/n or a field. Quotient algebras go
    /// through [`props::is_unit`].
    pub fn inverse(&self, a: &Elem) -> Option<Elem> {
        match (&self.0.kind, a) {
            (RingKind::Integers, Elem::Int(x)) => (x.abs().is_one()).then(|| Elem::Int(x.clone())),
            (RingKind::Rationals, Elem::Rat(x)) => (!x.is_zero()).then(|| Elem::Rat(x.recip())),
            (RingKind::Zmod(n), Elem::Res(x)) => mod_inverse(*x, *n).map(Elem::Res),
            (RingKind::Galois(g), Elem::Gf(x)) => g.inverse(x).map(Elem::Gf),
            _ => None,
        }
    }

    /// Number of elements when the ring is finite.
    pub fn universe_size(&self) -> Option<u128> {
        match &self.0.kind {
            RingKind::Integers | RingKind::Rationals => None,
            RingKind::Zmod(n) => Some(*n as u128),
            RingKind::Galois(g) => Some(g.order() as u128),
            RingKind::Quotient(a) => {
                let q = a.field().universe_size()?;
                let b = a.finite_basis()?;
                let mut total: u128 = 1;
                for _ in 0..b.len() {
                    total = total.checked_mul(q)?;
                }
                Some(total)
            }
        }
    }

    pub fn is_enumerable(&self) -> bool {
        self.universe_size().is_some()
    }

    /// Every element exactly once, starting with zero, in a fixed order.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let size = self
            .universe_size()
            .ok_or_else(|| Error::NotEnumerable(self.to_string()))?;
        if size > ENUMERATION_LIMIT {
            return Err(Error::TooLarge(format!("{self} has {size} elements")));
        }
        Ok(match &self.0.kind {
            RingKind::Zmod(n) => (0..*n).map(Elem::Res).collect(),
            RingKind::Galois(g) => g.elements().into_iter().map(Elem::Gf).collect(),
            RingKind::Quotient(a) => {
                let basis = a.finite_basis().expect("finite basis");
                let scalars = a.field().elements()?;
                let q = scalars.len();
                (0..size as usize)
                    .map(|mut idx| {
                        let terms: Vec<_> = basis
                            .iter()
                            .map(|m| {
                                let c = scalars[idx % q].clone();
                                idx /= q;
                                (m.clone(), c)
                            })
                            .collect();
                        Elem::Alg(AlgPoly::from_terms(terms, a.field()))
                    })
                    .collect()
            }
            RingKind::Integers | RingKind::Rationals => unreachable!(),
        })
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &self.0.kind {
            RingKind::Integers => Elem::Int(BigInt::from(rng.gen_range(-20i64..=20))),
            RingKind::Rationals => Elem::Rat(BigRational::new(
                BigInt::from(rng.gen_range(-9i64..=9)),
                BigInt::from(rng.gen_range(1i64..=4)),
            )),
            RingKind::Zmod(n) => Elem::Res(rng.gen_range(0..*n)),
            RingKind::Galois(g) => Elem::Gf(
                (0..g.degree())
                    .map(|_| rng.gen_range(0..g.characteristic()))
                    .collect(),
            ),
            RingKind::Quotient(a) => Elem::Alg(a.random(rng)),
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// Splits a displayed sign off ordered scalars: returns (negative, |a|).
    pub fn split_sign(&self, a: &Elem) -> (bool, Elem) {
        match a {
            Elem::Int(x) if x.is_negative() => (true, Elem::Int(-x)),
            Elem::Rat(x) if x.is_negative() => (true, Elem::Rat(-x)),
            _ => (false, a.clone()),
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        match (&self.0.kind, a) {
            (_, Elem::Int(x)) => x.to_string(),
            (_, Elem::Rat(x)) => format_rational(x),
            (_, Elem::Res(x)) => x.to_string(),
            (RingKind::Galois(g), Elem::Gf(v)) => g.format(v),
            (RingKind::Quotient(q), Elem::Alg(p)) => q.format(p),
            (_, other) => format!("{other:?}"),
        }
    }

    /// JSON form of an element: integers and residues as numbers, rationals
    /// as "p/q", GF elements as coefficient vectors, algebra elements as
    /// polynomial strings.
    pub fn to_json(&self, a: &Elem) -> Value {
        match a {
            Elem::Int(x) => x
                .to_i64()
                .map_or_else(|| json!(x.to_string()), |v| json!(v)),
            Elem::Rat(x) => json!(format_rational(x)),
            Elem::Res(x) => json!(x),
            Elem::Gf(v) => json!(v),
            Elem::Alg(_) => json!(self.format(a)),
        }
    }

    /// Checks that every element belongs to this ring.
    pub fn check_members<'a>(&self, elems: impl IntoIterator<Item = &'a Elem>) -> Result<()> {
        for e in elems {
            if !self.contains(e) {
                return Err(Error::MixedRings(format!("{e:?}"), self.to_string()));
            }
        }
        Ok(())
    }

    /// Image of the variable with 0-based index `i` of a quotient algebra.
    pub fn var(&self, i: usize) -> Elem {
        let a = self.algebra().expect("var() on a non-algebra ring");
        Elem::Alg(a.var(i))
    }

    /// Sum of the given variables (0-based indices).
    pub fn var_sum(&self, indices: impl IntoIterator<Item = usize>) -> Elem {
        indices
            .into_iter()
            .fold(self.zero(), |acc, i| self.add(&acc, &self.var(i)))
    }
}

pub(crate) fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, (a % n) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// An element paired with its owning ring, used where operands may come
/// from different handles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    pub ring: Ring,
    pub value: Elem,
}

impl RingElement {
    pub fn new(ring: &Ring, value: Elem) -> Result<Self> {
        ring.check_members([&value])?;
        Ok(Self {
            ring: ring.clone(),
            value,
        })
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::MixedRings(
                self.ring.to_string(),
                other.ring.to_string(),
            ));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            value: self.ring.add(&self.value, &other.value),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            value: self.ring.sub(&self.value, &other.value),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(Self {
            ring: self.ring.clone(),
            value: self.ring.mul(&self.value, &other.value),
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            ring: self.ring.clone(),
            value: self.ring.neg(&self.value),
        }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self {
            ring: self.ring.clone(),
            value: self.ring.pow(&self.value, e),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

/// Arithmetic expression over named elements of one ring.
#[derive(Clone, Debug)]
pub enum RingExpr {
    Elem(RingElement),
    Int(i64),
    Add(Box<RingExpr>, Box<RingExpr>),
    Sub(Box<RingExpr>, Box<RingExpr>),
    Mul(Box<RingExpr>, Box<RingExpr>),
    Neg(Box<RingExpr>),
    Pow(Box<RingExpr>, u64),
}

/// Evaluates `expr` in `ring`, rejecting operands from any other ring.
pub fn eval_ring_expr(ring: &Ring, expr: &RingExpr) -> Result<RingElement> {
    Ok(match expr {
        RingExpr::Elem(e) => {
            if e.ring != *ring {
                return Err(Error::MixedRings(e.ring.to_string(), ring.to_string()));
            }
            e.clone()
        }
        RingExpr::Int(n) => RingElement {
            ring: ring.clone(),
            value: ring.from_i64(*n),
        },
        RingExpr::Add(a, b) => eval_ring_expr(ring, a)?.try_add(&eval_ring_expr(ring, b)?)?,
        RingExpr::Sub(a, b) => eval_ring_expr(ring, a)?.try_sub(&eval_ring_expr(ring, b)?)?,
        RingExpr::Mul(a, b) => eval_ring_expr(ring, a)?.try_mul(&eval_ring_expr(ring, b)?)?,
        RingExpr::Neg(a) => eval_ring_expr(ring, a)?.neg(),
        RingExpr::Pow(a, e) => eval_ring_expr(ring, a)?.pow(*e),
    })
}

/// Minimal ring interface shared by base rings and derived coefficient
/// rings (Jordan's construction).
pub trait CoeffRing {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

impl CoeffRing for Ring {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        Ring::zero(self)
    }
    fn one(&self) -> Elem {
        Ring::one(self)
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::add(self, a, b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        Ring::neg(self, a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        Ring::mul(self, a, b)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(r: &Ring, v: Elem) -> RingExpr {
        RingExpr::Elem(RingElement::new(r, v).unwrap())
    }

    #[test]
    fn zmod6_two_times_three_is_zero() {
        let r = Ring::zmod(6).unwrap();
        let e = RingExpr::Mul(
            Box::new(el(&r, Elem::Res(2))),
            Box::new(el(&r, Elem::Res(3))),
        );
        assert_eq!(eval_ring_expr(&r, &e).unwrap().value, Elem::Res(0));
    }

    #[test]
    fn one_times_a_is_a() {
        let r = Ring::galois(3, 2).unwrap();
        let a = Elem::Gf(vec![2, 1]);
        let e = RingExpr::Mul(Box::new(RingExpr::Int(1)), Box::new(el(&r, a.clone())));
        assert_eq!(eval_ring_expr(&r, &e).unwrap().value, a);
    }

    #[test]
    fn gf4_w_squared_is_w_plus_one() {
        let r = Ring::galois(2, 2).unwrap();
        let w = el(&r, Elem::Gf(vec![0, 1]));
        let e = RingExpr::Pow(Box::new(w), 2);
        let out = eval_ring_expr(&r, &e).unwrap();
        assert_eq!(out.value, Elem::Gf(vec![1, 1]));
        assert_eq!(out.to_string(), "w+1");
    }

    #[test]
    fn mixing_rings_is_rejected() {
        let r6 = Ring::zmod(6).unwrap();
        let r5 = Ring::zmod(5).unwrap();
        let e = RingExpr::Add(
            Box::new(el(&r6, Elem::Res(1))),
            Box::new(el(&r5, Elem::Res(1))),
        );
        assert!(matches!(
            eval_ring_expr(&r6, &e),
            Err(Error::MixedRings(..))
        ));
    }

    #[test]
    fn zmod_below_two_is_rejected() {
        assert_eq!(Ring::zmod(1), Err(Error::BadModulus(1)));
        assert_eq!(Ring::zmod(0), Err(Error::BadModulus(0)));
        let f2 = Ring::zmod(2).unwrap();
        assert!(f2.is_field());
        assert_eq!(f2.elements().unwrap(), vec![Elem::Res(0), Elem::Res(1)]);
    }

    #[test]
    fn universe_starts_with_zero_and_contains_one() {
        for r in [Ring::zmod(6).unwrap(), Ring::galois(2, 2).unwrap()] {
            let els = r.elements().unwrap();
            assert_eq!(els[0], r.zero());
            assert!(els.contains(&r.one()));
            let mut sorted = els.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), els.len());
        }
    }

    #[test]
    fn mod_inverse_matches_brute_force() {
        for n in 2..30u64 {
            for a in 0..n {
                let brute = (0..n).find(|b| a * b % n == 1 % n);
                assert_eq!(mod_inverse(a, n), brute, "a={a} n={n}");
            }
        }
    }
}
