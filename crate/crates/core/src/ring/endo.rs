//! Ring endomorphisms: identity, Frobenius, variable substitutions on
//! quotient algebras, explicit tables, and powers/compositions of these.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Elem, Ring, RingKind, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::rings::algebra::AlgPoly;

/// Default number of sampled pairs for the homomorphism law.
pub const DEFAULT_HOM_SAMPLES: usize = 1000;

#[derive(Clone)]
pub enum EndoRule {
    Identity,
    /// x ↦ x^p in characteristic p.
    Frobenius,
    /// Substitution of variables followed by normalization.
    VarMap {
        images: Arc<Vec<AlgPoly>>,
        escaped: Vec<usize>,
    },
    /// Explicit element table (enumerable rings).
    Table(Arc<HashMap<Elem, Elem>>),
    Power(Box<Endo>, u64),
    /// `Compose(f, g)` is f∘g: g applied first.
    Compose(Box<Endo>, Box<Endo>),
}

/// One variable's image in [`Endo::varmap`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VarImage {
    Elem(Elem),
    /// The image is a variable that is not materialized; it is sent to 0.
    Beyond,
}

#[derive(Clone)]
pub struct Endo {
    ring: Ring,
    rule: EndoRule,
}

impl fmt::Debug for Endo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Endo({} on {})", self.label(), self.ring)
    }
}

impl Endo {
    pub fn identity(ring: &Ring) -> Self {
        Self {
            ring: ring.clone(),
            rule: EndoRule::Identity,
        }
    }

    pub fn frobenius(ring: &Ring) -> Result<Self> {
        let ok = match ring.kind() {
            RingKind::Galois(_) => true,
            RingKind::Zmod(_) => ring.is_field(),
            RingKind::Quotient(a) => a.is_commutative() && ring.characteristic() > 0,
            _ => false,
        };
        if !ok {
            return Err(Error::NotEndomorphism(format!(
                "frobenius is not an endomorphism of {ring}"
            )));
        }
        Ok(Self {
            ring: ring.clone(),
            rule: EndoRule::Frobenius,
        })
    }

    /// Variable substitution on a quotient algebra. Every rewriting relation
    /// must map to zero; images given as [`VarImage::Beyond`] are sent to 0
    /// and recorded in [`Endo::escaped`].
    pub fn varmap(ring: &Ring, images: Vec<VarImage>) -> Result<Self> {
        let alg = ring
            .algebra()
            .ok_or_else(|| Error::NotEndomorphism(format!("{ring} has no variables")))?;
        let n = alg.policy().num_vars;
        if images.len() != n {
            return Err(Error::NotWellDefined(format!(
                "expected {n} variable images, got {}",
                images.len()
            )));
        }
        let mut escaped = Vec::new();
        let mut imgs = Vec::with_capacity(n);
        for (i, im) in images.into_iter().enumerate() {
            match im {
                VarImage::Elem(e) => {
                    if !ring.contains(&e) {
                        return Err(Error::MixedRings(format!("{e:?}"), ring.to_string()));
                    }
                    if alg.policy().degree_cap.is_some() && !alg.constant_term(e.as_alg()).is_zero()
                    {
                        return Err(Error::NotWellDefined(format!(
                            "image of {} has a constant term, so the degree cap is not preserved",
                            alg.names()[i]
                        )));
                    }
                    imgs.push(e.as_alg().clone());
                }
                VarImage::Beyond => {
                    escaped.push(i);
                    imgs.push(AlgPoly::zero());
                }
            }
        }
        let endo = Self {
            ring: ring.clone(),
            rule: EndoRule::VarMap {
                images: Arc::new(imgs),
                escaped,
            },
        };
        for rule in alg.rules() {
            let lhs = endo.apply(&Elem::Alg(AlgPoly::monomial(
                rule.lhs.clone(),
                alg.field().one(),
            )));
            let rhs = endo.apply(&Elem::Alg(rule.rhs.clone()));
            let diff = ring.sub(&lhs, &rhs);
            if !diff.is_zero() {
                return Err(Error::NotWellDefined(format!(
                    "relation {} -> {} maps to {} != 0",
                    alg.format_monomial(&rule.lhs),
                    alg.format(&rule.rhs),
                    ring.format(&diff)
                )));
            }
        }
        Ok(endo)
    }

    /// Endomorphism given by an explicit table; must be total on an
    /// enumerable ring.
    pub fn table(ring: &Ring, table: HashMap<Elem, Elem>) -> Result<Self> {
        for e in ring.elements()? {
            match table.get(&e) {
                Some(img) if ring.contains(img) => {}
                _ => {
                    return Err(Error::NotEndomorphism(format!(
                        "table has no valid image for {}",
                        ring.format(&e)
                    )))
                }
            }
        }
        Ok(Self {
            ring: ring.clone(),
            rule: EndoRule::Table(Arc::new(table)),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rule(&self) -> &EndoRule {
        &self.rule
    }

    /// Variables whose images fell outside the materialized range.
    pub fn escaped(&self) -> &[usize] {
        match &self.rule {
            EndoRule::VarMap { escaped, .. } => escaped,
            EndoRule::Power(b, _) => b.escaped(),
            _ => &[],
        }
    }

    pub fn is_identity(&self) -> bool {
        match &self.rule {
            EndoRule::Identity => true,
            EndoRule::Power(b, n) => *n == 0 || b.is_identity(),
            EndoRule::Compose(f, g) => f.is_identity() && g.is_identity(),
            _ => false,
        }
    }

    pub fn label(&self) -> String {
        match &self.rule {
            EndoRule::Identity => "id".into(),
            EndoRule::Frobenius => "frobenius".into(),
            EndoRule::VarMap { .. } => "varmap".into(),
            EndoRule::Table(_) => "table".into(),
            EndoRule::Power(b, n) => format!("({})^{n}", b.label()),
            EndoRule::Compose(f, g) => format!("{}∘{}", f.label(), g.label()),
        }
    }

    pub fn pow(&self, n: u64) -> Self {
        match (&self.rule, n) {
            (_, 1) => self.clone(),
            (EndoRule::Identity, _) | (_, 0) => Self::identity(&self.ring),
            (EndoRule::Power(b, m), _) => Self {
                ring: self.ring.clone(),
                rule: EndoRule::Power(b.clone(), m * n),
            },
            _ => Self {
                ring: self.ring.clone(),
                rule: EndoRule::Power(Box::new(self.clone()), n),
            },
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endo) -> Self {
        Self {
            ring: self.ring.clone(),
            rule: EndoRule::Compose(Box::new(self.clone()), Box::new(other.clone())),
        }
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        match &self.rule {
            EndoRule::Identity => a.clone(),
            EndoRule::Frobenius => match (self.ring.kind(), a) {
                (RingKind::Galois(g), Elem::Gf(v)) => Elem::Gf(g.frobenius(v)),
                _ => self.ring.pow(a, self.ring.characteristic()),
            },
            EndoRule::VarMap { images, .. } => {
                let alg = self.ring.algebra().expect("varmap on algebra");
                let p = a.as_alg();
                let mut acc = AlgPoly::zero();
                for (m, c) in p.terms() {
                    let mut img = alg.constant(c.clone());
                    for &v in m.vars() {
                        img = alg.mul(&img, &images[v as usize]);
                        if img.is_zero() {
                            break;
                        }
                    }
                    acc = alg.add(&acc, &img);
                }
                Elem::Alg(acc)
            }
            EndoRule::Table(t) => t.get(a).cloned().expect("table is total"),
            EndoRule::Power(b, n) => {
                let steps = match (b.rule(), self.ring.galois_field()) {
                    (EndoRule::Frobenius, Some(g)) => n % g.degree() as u64,
                    _ => *n,
                };
                let mut x = a.clone();
                for _ in 0..steps {
                    x = b.apply(&x);
                }
                x
            }
            EndoRule::Compose(f, g) => f.apply(&g.apply(a)),
        }
    }

    /// Applies `self^n` for n ≥ 0.
    pub fn apply_pow(&self, a: &Elem, n: u64) -> Elem {
        if self.is_identity() {
            return a.clone();
        }
        self.pow(n).apply(a)
    }

    /// Checks α(1) = 1 and the additive/multiplicative laws: exhaustively on
    /// small enumerable rings, on `samples` seeded random pairs otherwise.
    pub fn check_homomorphism(&self, samples: usize, seed: u64) -> Result<()> {
        let r = &self.ring;
        if self.apply(&r.one()) != r.one() {
            return Err(Error::NotEndomorphism(format!(
                "{} does not fix 1",
                self.label()
            )));
        }
        let check = |a: &Elem, b: &Elem| -> Result<()> {
            let (fa, fb) = (self.apply(a), self.apply(b));
            if self.apply(&r.add(a, b)) != r.add(&fa, &fb) {
                return Err(Error::NotEndomorphism(format!(
                    "additivity fails at ({}, {})",
                    r.format(a),
                    r.format(b)
                )));
            }
            if self.apply(&r.mul(a, b)) != r.mul(&fa, &fb) {
                return Err(Error::NotEndomorphism(format!(
                    "multiplicativity fails at ({}, {})",
                    r.format(a),
                    r.format(b)
                )));
            }
            Ok(())
        };
        match r.universe_size() {
            Some(n) if n * n <= ENUMERATION_LIMIT * 16 => {
                let els = r.elements()?;
                for a in &els {
                    for b in &els {
                        check(a, b)?;
                    }
                }
            }
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..samples {
                    let (a, b) = (r.random(&mut rng), r.random(&mut rng));
                    check(&a, &b)?;
                }
            }
        }
        Ok(())
    }

    /// Two-sided inverse when it exists and is computable.
    pub fn inverse(&self) -> Result<Endo> {
        let not_inv = || Error::NotInvertibleTwist(self.ring.to_string());
        match &self.rule {
            EndoRule::Identity => Ok(self.clone()),
            EndoRule::Frobenius => match self.ring.galois_field() {
                Some(g) => Ok(self.pow(g.degree() as u64 - 1)),
                None if self.ring.is_field() => Ok(Self::identity(&self.ring)),
                None => self.inverse_by_table().map_err(|_| not_inv()),
            },
            EndoRule::Power(b, n) => Ok(b.inverse()?.pow(*n)),
            EndoRule::Compose(f, g) => Ok(g.inverse()?.compose(&f.inverse()?)),
            _ => self.inverse_by_table().map_err(|_| not_inv()),
        }
    }

    fn inverse_by_table(&self) -> Result<Endo> {
        let els = self.ring.elements()?;
        let mut inv = HashMap::with_capacity(els.len());
        for e in &els {
            if inv.insert(self.apply(e), e.clone()).is_some() {
                return Err(Error::NotInvertibleTwist(self.ring.to_string()));
            }
        }
        if inv.len() != els.len() {
            return Err(Error::NotInvertibleTwist(self.ring.to_string()));
        }
        Endo::table(&self.ring, inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_on_gf4_is_an_involutive_automorphism() {
        let r = Ring::galois(2, 2).unwrap();
        let f = Endo::frobenius(&r).unwrap();
        f.check_homomorphism(DEFAULT_HOM_SAMPLES, 0).unwrap();
        let inv = f.inverse().unwrap();
        for e in r.elements().unwrap() {
            assert_eq!(inv.apply(&f.apply(&e)), e);
            assert_eq!(f.apply_pow(&e, 2), e);
        }
    }

    #[test]
    fn power_equals_iterated_application() {
        let r = Ring::galois(2, 3).unwrap();
        let f = Endo::frobenius(&r).unwrap();
        for e in r.elements().unwrap() {
            let mut x = e.clone();
            for n in 0..7u64 {
                assert_eq!(f.apply_pow(&e, n), x);
                x = f.apply(&x);
            }
        }
    }

    #[test]
    fn non_additive_table_is_rejected() {
        let r = Ring::zmod(6).unwrap();
        // x ↦ x^2 is not additive on Z/6.
        let t = r
            .elements()
            .unwrap()
            .into_iter()
            .map(|e| (e.clone(), r.mul(&e, &e)))
            .collect();
        let sq = Endo::table(&r, t).unwrap();
        assert!(matches!(
            sq.check_homomorphism(10, 0),
            Err(Error::NotEndomorphism(_))
        ));
    }

    #[test]
    fn frobenius_on_integers_is_rejected() {
        assert!(Endo::frobenius(&Ring::integers()).is_err());
        assert!(Endo::frobenius(&Ring::zmod(6).unwrap()).is_err());
    }
}
