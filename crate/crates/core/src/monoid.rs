//! Strictly totally ordered additive exponent monoids: (ℕ,+), (ℤ,+),
//! (ℚ≥0,+) and (ℚ,+), with exact rational elements.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonoidKind {
    Nat,
    Int,
    RatNonneg,
    Rat,
}

impl MonoidKind {
    pub fn label(self) -> &'static str {
        match self {
            MonoidKind::Nat => "nat",
            MonoidKind::Int => "int",
            MonoidKind::RatNonneg => "rat-nonneg",
            MonoidKind::Rat => "rat",
        }
    }

    pub fn is_integral(self) -> bool {
        matches!(self, MonoidKind::Nat | MonoidKind::Int)
    }

    pub fn is_nonneg(self) -> bool {
        matches!(self, MonoidKind::Nat | MonoidKind::RatNonneg)
    }
}

impl FromStr for MonoidKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "nat" | "n" => MonoidKind::Nat,
            "int" | "z" => MonoidKind::Int,
            "rat-nonneg" | "ratnonneg" | "qnonneg" | "q+" => MonoidKind::RatNonneg,
            "rat" | "q" => MonoidKind::Rat,
            other => return Err(Error::BadParameter(format!("unknown monoid kind {other}"))),
        })
    }
}

/// Exact exponent; integers are rationals with denominator 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MonoidElement(pub BigRational);

impl MonoidElement {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn int(n: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(p: i64, q: i64) -> Self {
        Self(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    /// The value as a `u64`, when it is a nonnegative integer that fits.
    pub fn to_u64(&self) -> Option<u64> {
        use num_traits::ToPrimitive;
        (self.0.is_integer() && !self.0.is_negative()).then(|| self.0.to_integer().to_u64())?
    }

    pub fn to_i64(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        self.0.is_integer().then(|| self.0.to_integer().to_i64())?
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::ring::format_rational(&self.0))
    }
}

impl Serialize for MonoidElement {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl FromStr for MonoidElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadParameter(format!("not an exact rational: {s}"));
        let q = match s.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                BigRational::new(p, q)
            }
            None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
        };
        Ok(Self(q))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Monoid {
    kind: MonoidKind,
}

/// The unit group `U(S)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitGroup {
    /// `{0}`
    Trivial,
    /// Every element is invertible.
    Whole,
}

impl Monoid {
    pub fn new(kind: MonoidKind) -> Self {
        Self { kind }
    }

    pub fn nat() -> Self {
        Self::new(MonoidKind::Nat)
    }

    pub fn int() -> Self {
        Self::new(MonoidKind::Int)
    }

    pub fn rat_nonneg() -> Self {
        Self::new(MonoidKind::RatNonneg)
    }

    pub fn rat() -> Self {
        Self::new(MonoidKind::Rat)
    }

    pub fn kind(&self) -> MonoidKind {
        self.kind
    }

    pub fn label(&self) -> &'static str {
        self.kind.label()
    }

    /// Declared by kind: the nonnegative kinds have well-ordered supports
    /// for free, the others need a per-series lower bound.
    pub fn declared_artinian(&self) -> bool {
        self.kind.is_nonneg()
    }

    pub fn contains(&self, s: &MonoidElement) -> bool {
        (!self.kind.is_integral() || s.0.is_integer())
            && (!self.kind.is_nonneg() || !s.0.is_negative())
    }

    pub fn check(&self, s: &MonoidElement) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OutOfCarrier(format!(
                "{s} is not in {}",
                self.label()
            )))
        }
    }

    pub fn element(&self, q: BigRational) -> Result<MonoidElement> {
        let s = MonoidElement(q);
        self.check(&s)?;
        Ok(s)
    }

    pub fn identity(&self) -> MonoidElement {
        MonoidElement::zero()
    }

    pub fn mop(&self, s: &MonoidElement, t: &MonoidElement) -> Result<MonoidElement> {
        self.check(s)?;
        self.check(t)?;
        Ok(MonoidElement(&s.0 + &t.0))
    }

    pub fn mcompare(&self, s: &MonoidElement, t: &MonoidElement) -> Ordering {
        s.cmp(t)
    }

    pub fn units_of(&self) -> UnitGroup {
        if self.kind.is_nonneg() {
            UnitGroup::Trivial
        } else {
            UnitGroup::Whole
        }
    }

    pub fn is_unit(&self, s: &MonoidElement) -> bool {
        match self.units_of() {
            UnitGroup::Trivial => s.is_zero(),
            UnitGroup::Whole => self.contains(s),
        }
    }

    /// Additive inverse when it lies in the carrier.
    pub fn inverse(&self, s: &MonoidElement) -> Option<MonoidElement> {
        let t = MonoidElement(-&s.0);
        self.contains(&t).then_some(t)
    }

    /// `t - s` when it lies in the carrier.
    pub fn difference(&self, t: &MonoidElement, s: &MonoidElement) -> Option<MonoidElement> {
        let d = MonoidElement(&t.0 - &s.0);
        self.contains(&d).then_some(d)
    }

    /// A random element: integers in [-20, 20] or fractions with
    /// denominators up to 12, clipped to the carrier.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> MonoidElement {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = if self.kind.is_integral() {
            1
        } else {
            rng.gen_range(1..=12)
        };
        let num = if self.kind.is_nonneg() {
            num.abs()
        } else {
            num
        };
        MonoidElement::frac(num, den)
    }
}

impl fmt::Display for Monoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum OrderVerdict<T> {
    Pass {
        checked: usize,
    },
    /// Every violating triple `(a, b, c)` with `a < b`, in lexicographic order.
    Fail(Vec<(T, T, T)>),
}

impl<T> OrderVerdict<T> {
    pub fn passed(&self) -> bool {
        matches!(self, OrderVerdict::Pass { .. })
    }

    pub fn witness(&self) -> Option<&(T, T, T)> {
        match self {
            OrderVerdict::Pass { .. } => None,
            OrderVerdict::Fail(v) => v.first(),
        }
    }
}

fn strict_on(a_lt_b: bool, ca_lt_cb: bool, ac_lt_bc: bool) -> bool {
    !a_lt_b || (ca_lt_cb && ac_lt_bc)
}

/// Samples triples and checks that `a < b` implies `c+a < c+b` and
/// `a+c < b+c`.
pub fn verify_strict_order(m: &Monoid, samples: usize, seed: u64) -> OrderVerdict<MonoidElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    for _ in 0..samples {
        let (a, b, c) = (m.random(&mut rng), m.random(&mut rng), m.random(&mut rng));
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        let ok = strict_on(
            a < b,
            m.mop(&c, &a).expect("sampled") < m.mop(&c, &b).expect("sampled"),
            m.mop(&a, &c).expect("sampled") < m.mop(&b, &c).expect("sampled"),
        );
        if !ok {
            bad.push((a, b, c));
        }
    }
    if bad.is_empty() {
        OrderVerdict::Pass { checked: samples }
    } else {
        bad.sort();
        OrderVerdict::Fail(bad)
    }
}

/// Exhausts all triples of a finite carrier whose order is the natural
/// order on `i64` and whose products may leave the carrier.
pub fn verify_strict_order_table(
    carrier: &[i64],
    op: impl Fn(i64, i64) -> i64,
) -> OrderVerdict<i64> {
    let mut els = carrier.to_vec();
    els.sort_unstable();
    els.dedup();
    let mut bad = Vec::new();
    let mut checked = 0;
    for &a in &els {
        for &b in els.iter().filter(|&&b| b > a) {
            for &c in &els {
                checked += 1;
                if !strict_on(true, op(c, a) < op(c, b), op(a, c) < op(b, c)) {
                    bad.push((a, b, c));
                }
            }
        }
    }
    if bad.is_empty() {
        OrderVerdict::Pass { checked }
    } else {
        OrderVerdict::Fail(bad)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArtinianReport {
    pub artinian: bool,
    pub narrow: bool,
    pub sorted: Vec<MonoidElement>,
    pub note: &'static str,
}

/// Finite subsets of a totally ordered set are trivially Artinian and
/// narrow; the report carries the ascending presentation.
pub fn check_artinian_narrow(subset: &[MonoidElement], m: &Monoid) -> Result<ArtinianReport> {
    for s in subset {
        m.check(s)?;
    }
    let mut sorted = subset.to_vec();
    sorted.sort();
    sorted.dedup();
    Ok(ArtinianReport {
        artinian: true,
        narrow: true,
        sorted,
        note: "finite subset of a totally ordered monoid; no incomparable pairs",
    })
}

/// `1/2^n` in ℚ.
pub fn inverse_power_of_two(n: u32) -> MonoidElement {
    MonoidElement(BigRational::new(BigInt::one(), BigInt::from(2u8).pow(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> MonoidElement {
        MonoidElement::frac(p, d)
    }

    #[test]
    fn arithmetic_and_order() {
        let m = Monoid::rat_nonneg();
        assert_eq!(m.mop(&q(1, 2), &q(1, 2)).unwrap(), MonoidElement::int(1));
        assert_eq!(m.mcompare(&q(1, 4), &q(1, 2)), Ordering::Less);
        let n = Monoid::nat();
        assert_eq!(
            n.mop(&MonoidElement::zero(), &MonoidElement::int(7))
                .unwrap(),
            MonoidElement::int(7)
        );
        assert!(matches!(
            n.mop(&q(1, 2), &q(1, 2)),
            Err(Error::OutOfCarrier(_))
        ));
        assert!(matches!(
            m.mop(&q(-1, 2), &q(1, 2)),
            Err(Error::OutOfCarrier(_))
        ));
    }

    #[test]
    fn unit_groups() {
        assert_eq!(Monoid::rat_nonneg().units_of(), UnitGroup::Trivial);
        assert_eq!(Monoid::nat().units_of(), UnitGroup::Trivial);
        assert_eq!(Monoid::int().units_of(), UnitGroup::Whole);
        assert!(Monoid::rat().is_unit(&q(-3, 7)));
        assert!(!Monoid::nat().is_unit(&MonoidElement::int(1)));
    }

    #[test]
    fn strict_order_checks() {
        assert!(verify_strict_order(&Monoid::rat_nonneg(), 1000, 1).passed());
        assert!(verify_strict_order(&Monoid::int(), 1000, 2).passed());
        let v = verify_strict_order_table(&[0, 1, 2, 3], |a, b| a * b);
        assert_eq!(v.witness(), Some(&(0, 1, 0)));
        match v {
            OrderVerdict::Fail(all) => assert!(all.contains(&(1, 2, 0))),
            OrderVerdict::Pass { .. } => panic!("multiplication by 0 is not strict"),
        }
    }

    #[test]
    fn artinian_reports() {
        let r = check_artinian_narrow(&[q(1, 1), q(1, 2), q(1, 4)], &Monoid::rat_nonneg()).unwrap();
        assert_eq!(r.sorted, vec![q(1, 4), q(1, 2), q(1, 1)]);
        assert!(check_artinian_narrow(&[], &Monoid::nat()).unwrap().artinian);
        let r = check_artinian_narrow(&[q(5, 1), q(3, 1), q(4, 1)], &Monoid::nat()).unwrap();
        assert_eq!(r.sorted, vec![q(3, 1), q(4, 1), q(5, 1)]);
    }

    #[test]
    fn parse_elements() {
        assert_eq!("1/2".parse::<MonoidElement>().unwrap(), q(1, 2));
        assert_eq!("-4/8".parse::<MonoidElement>().unwrap(), q(-1, 2));
        assert!("1/0".parse::<MonoidElement>().is_err());
        assert_eq!(inverse_power_of_two(3), q(1, 8));
    }
}
