//! Skew polynomials `R[x; α]`, skew Laurent polynomials `R[x, x⁻¹; α]`
//! and Jordan's extension `A(R, α)`, generic over the coefficient ring.

pub mod jordan;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{CoeffRing, Elem, Endo, Ring};

pub use jordan::{JordanElement, JordanRing};

/// A coefficient ring with a distinguished endomorphism; `twist(a, n)` is
/// αⁿ(a), where negative `n` requires α to be invertible.
pub trait TwistedRing: CoeffRing + Clone + fmt::Debug {
    fn twist(&self, a: &Self::Elem, n: i64) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    fn same(&self, other: &Self) -> bool;
    fn twist_invertible(&self) -> bool;
}

/// `(R, α)` with α⁻¹ cached when it exists.
#[derive(Clone, Debug)]
pub struct TwistedBase {
    ring: Ring,
    alpha: Endo,
    alpha_inv: Option<Endo>,
}

impl TwistedBase {
    pub fn new(alpha: &Endo) -> Result<Self> {
        alpha.check_homomorphism(crate::ring::endo::DEFAULT_HOM_SAMPLES, 0)?;
        Ok(Self {
            ring: alpha.ring().clone(),
            alpha: alpha.clone(),
            alpha_inv: alpha.inverse().ok(),
        })
    }

    /// Like [`TwistedBase::new`] but fails unless α is invertible.
    pub fn invertible(alpha: &Endo) -> Result<Self> {
        let b = Self::new(alpha)?;
        if b.alpha_inv.is_none() {
            return Err(Error::NotInvertibleTwist(b.ring.to_string()));
        }
        Ok(b)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn alpha(&self) -> &Endo {
        &self.alpha
    }
}

impl CoeffRing for TwistedBase {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        self.ring.zero()
    }
    fn one(&self) -> Elem {
        self.ring.one()
    }
    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        self.ring.add(a, b)
    }
    fn neg(&self, a: &Elem) -> Elem {
        self.ring.neg(a)
    }
    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        self.ring.mul(a, b)
    }
    fn is_zero(&self, a: &Elem) -> bool {
        a.is_zero()
    }
}

impl TwistedRing for TwistedBase {
    fn twist(&self, a: &Elem, n: i64) -> Result<Elem> {
        if n >= 0 {
            return Ok(self.alpha.apply_pow(a, n as u64));
        }
        let inv = self
            .alpha_inv
            .as_ref()
            .ok_or_else(|| Error::NotInvertibleTwist(self.ring.to_string()))?;
        Ok(inv.apply_pow(a, n.unsigned_abs()))
    }

    fn format(&self, a: &Elem) -> String {
        crate::series::coeff_atom(&self.ring, a)
    }

    fn same(&self, other: &Self) -> bool {
        self.ring == other.ring && self.alpha.label() == other.alpha.label()
    }

    fn twist_invertible(&self) -> bool {
        self.alpha_inv.is_some()
    }
}

/// Finite sum `Σ a_d x^d` over integer degrees, with `x a = α(a) x`.
#[derive(Clone, Debug)]
pub struct LaurentPoly<T: TwistedRing> {
    base: T,
    coeffs: BTreeMap<i64, T::Elem>,
}

impl<T: TwistedRing> PartialEq for LaurentPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.base.same(&other.base) && self.coeffs == other.coeffs
    }
}

impl<T: TwistedRing> Eq for LaurentPoly<T> {}

/// A skew polynomial: a Laurent polynomial whose degrees are all ≥ 0.
/// Negative powers never arise, so α need not be invertible.
#[derive(Clone, Debug)]
pub struct SkewPoly<T: TwistedRing>(LaurentPoly<T>);

impl<T: TwistedRing> PartialEq for SkewPoly<T> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl<T: TwistedRing> Eq for SkewPoly<T> {}

impl<T: TwistedRing> LaurentPoly<T> {
    fn build(base: &T, terms: impl IntoIterator<Item = (i64, T::Elem)>) -> Self {
        let mut coeffs: BTreeMap<i64, T::Elem> = BTreeMap::new();
        for (d, c) in terms {
            let e = coeffs.entry(d).or_insert_with(|| base.zero());
            *e = base.add(e, &c);
        }
        coeffs.retain(|_, c| !base.is_zero(c));
        Self {
            base: base.clone(),
            coeffs,
        }
    }

    pub fn new(base: &T, terms: impl IntoIterator<Item = (i64, T::Elem)>) -> Result<Self> {
        let p = Self::build(base, terms);
        if p.coeffs.keys().any(|&d| d < 0) && !base.twist_invertible() {
            return Err(Error::NotInvertibleTwist(format!("{base:?}")));
        }
        Ok(p)
    }

    pub fn zero(base: &T) -> Self {
        Self::build(base, [])
    }

    pub fn constant(base: &T, c: T::Elem) -> Self {
        Self::build(base, [(0, c)])
    }

    /// `x^d`.
    pub fn x_pow(base: &T, d: i64) -> Result<Self> {
        Self::new(base, [(d, base.one())])
    }

    pub fn base(&self) -> &T {
        &self.base
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, T::Elem> {
        &self.coeffs
    }

    pub fn coeff(&self, d: i64) -> T::Elem {
        self.coeffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.base.same(&other.base) {
            Ok(())
        } else {
            Err(Error::ContextMismatch(format!(
                "{:?} vs {:?}",
                self.base, other.base
            )))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::build(
            &self.base,
            self.coeffs
                .iter()
                .chain(&other.coeffs)
                .map(|(d, c)| (*d, c.clone())),
        ))
    }

    pub fn neg(&self) -> Self {
        Self::build(
            &self.base,
            self.coeffs.iter().map(|(d, c)| (*d, self.base.neg(c))),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// `Σ f_i α^i(g_j) x^{i+j}`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let b = &self.base;
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (i, fi) in &self.coeffs {
            for (j, gj) in &other.coeffs {
                terms.push((i + j, b.mul(fi, &b.twist(gj, *i)?)));
            }
        }
        Ok(Self::build(b, terms))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::constant(&self.base, self.base.one());
        for _ in 0..n {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `(d₋, d₊)`: least and greatest degree.
    pub fn degrees(&self) -> Result<(i64, i64)> {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(&lo), Some(&hi)) => Ok((lo, hi)),
            _ => Err(Error::ZeroPoly),
        }
    }

    pub fn format(&self) -> String {
        self.format_var("x")
    }

    /// Renders with `var` as the indeterminate.
    pub fn format_var(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(d, c)| {
                let one = self.base.one();
                let coeff = self.base.format(c);
                match (*d, c == &one) {
                    (0, _) => coeff,
                    (1, true) => var.into(),
                    (d, true) => format!("{var}^{d}"),
                    (1, false) => format!("{coeff}*{var}"),
                    (d, false) => format!("{coeff}*{var}^{d}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<T: TwistedRing> fmt::Display for LaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}

impl<T: TwistedRing> SkewPoly<T> {
    pub fn new(base: &T, terms: impl IntoIterator<Item = (u64, T::Elem)>) -> Self {
        SkewPoly(LaurentPoly::build(
            base,
            terms.into_iter().map(|(d, c)| (d as i64, c)),
        ))
    }

    pub fn zero(base: &T) -> Self {
        SkewPoly(LaurentPoly::zero(base))
    }

    pub fn constant(base: &T, c: T::Elem) -> Self {
        SkewPoly(LaurentPoly::constant(base, c))
    }

    pub fn x(base: &T) -> Self {
        Self::new(base, [(1, base.one())])
    }

    pub fn as_laurent(&self) -> &LaurentPoly<T> {
        &self.0
    }

    pub fn coeff(&self, d: u64) -> T::Elem {
        self.0.coeff(d as i64)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &T::Elem)> {
        self.0.coeffs.iter().map(|(d, c)| (*d as u64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn degree(&self) -> Result<u64> {
        Ok(self.0.degrees()?.1 as u64)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(SkewPoly(self.0.add(&other.0)?))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(SkewPoly(self.0.sub(&other.0)?))
    }

    pub fn neg(&self) -> Self {
        SkewPoly(self.0.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Ok(SkewPoly(self.0.mul(&other.0)?))
    }

    pub fn format(&self) -> String {
        self.0.format()
    }
}

impl<T: TwistedRing> fmt::Display for SkewPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format())
    }
}
