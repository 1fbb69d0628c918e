//! Brute-force and structural ring predicates: units, annihilators,
//! reducedness, rigidity of an endomorphism, preservation of nonunits.
//!
//! Infinite rings only admit bounded searches, so verdicts carry an explicit
//! `Inconclusive` arm (or an `Undecidable` error) instead of guessing.

use std::collections::HashMap;

use serde::Serialize;

use super::linalg::{nullspace, Subspace};
use super::{Elem, Endo, Ring, RingKind, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::rings::algebra::{AlgPoly, Monomial, QuotientAlgebra};

/// Default nilpotency exponent bound.
pub const DEFAULT_SEARCH_BOUND: u32 = 8;
/// Degree window for algebra candidate searches when no cap is set.
pub const DEFAULT_DEGREE_WINDOW: usize = 3;
/// Number of leading monomials combined pairwise in binomial searches.
const BINOMIAL_POOL: usize = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// Product with the unknown on this side: `a·x` for left, `x·a` for right.
    pub fn mul(self, r: &Ring, unknown: &Elem, x: &Elem) -> Elem {
        match self {
            Side::Left => r.mul(unknown, x),
            Side::Right => r.mul(x, unknown),
        }
    }
}

/// Returns the two-sided inverse when `a` is a unit, `None` when it is not.
pub fn is_unit(r: &Ring, a: &Elem) -> Result<Option<Elem>> {
    match r.kind() {
        RingKind::Integers | RingKind::Rationals | RingKind::Zmod(_) | RingKind::Galois(_) => {
            Ok(r.inverse(a))
        }
        RingKind::Quotient(alg) => {
            if r.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
                let one = r.one();
                return Ok(r
                    .elements()?
                    .into_iter()
                    .find(|b| r.mul(a, b) == one && r.mul(b, a) == one));
            }
            algebra_unit(r, alg, a.as_alg())
        }
    }
}

/// Units of a graded algebra: the constant term must be invertible, and the
/// positive-degree part must be nilpotent for the geometric series to stop.
fn algebra_unit(r: &Ring, alg: &QuotientAlgebra, a: &AlgPoly) -> Result<Option<Elem>> {
    if !alg.is_graded() {
        return Err(Error::Undecidable(format!(
            "unit test on the non-graded algebra {r}"
        )));
    }
    let c = alg.constant_term(a);
    let Some(c_inv) = alg.field().inverse(&c) else {
        return Ok(None);
    };
    let c_inv_e = Elem::Alg(alg.constant(c_inv));
    let n = r.sub(&Elem::Alg(a.clone()), &Elem::Alg(alg.constant(c)));
    let m = r.mul(&c_inv_e, &n);
    let bound = alg.policy().degree_cap.map_or(64, |d| d + 1);
    let neg_m = r.neg(&m);
    let mut term = r.one();
    let mut series = r.zero();
    for _ in 0..=bound {
        if term.is_zero() {
            let inv = r.mul(&series, &c_inv_e);
            let ae = Elem::Alg(a.clone());
            debug_assert!(r.mul(&ae, &inv) == r.one() && r.mul(&inv, &ae) == r.one());
            return Ok(Some(inv));
        }
        series = r.add(&series, &term);
        term = r.mul(&term, &neg_m);
    }
    Err(Error::Undecidable(format!(
        "positive part of {} is not nilpotent within {bound} steps",
        r.format(&Elem::Alg(a.clone()))
    )))
}

/// Annihilator presented as an explicit element set (enumerable rings) or a
/// linear basis in echelon form (finite-basis algebras).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annihilator {
    Elements(Vec<Elem>),
    Basis(Vec<Elem>),
}

impl Annihilator {
    pub fn elements(&self) -> &[Elem] {
        match self {
            Annihilator::Elements(e) | Annihilator::Basis(e) => e,
        }
    }
}

pub fn annihilator(r: &Ring, xs: &[Elem], side: Side) -> Result<Annihilator> {
    r.check_members(xs)?;
    if let Some(alg) = r.algebra() {
        if alg.finite_basis().is_some() {
            let (basis, space) = annihilator_subspace(r, xs, side)?;
            return Ok(Annihilator::Basis(
                space
                    .rows
                    .iter()
                    .map(|v| from_coords(alg, &basis, v))
                    .collect(),
            ));
        }
    }
    if r.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
        let els = r.elements()?;
        return Ok(Annihilator::Elements(
            els.into_iter()
                .filter(|a| xs.iter().all(|x| side.mul(r, a, x).is_zero()))
                .collect(),
        ));
    }
    Err(Error::NotComputable(format!(
        "annihilator in {r}: neither enumerable nor finite-basis"
    )))
}

/// `{a : a·X = 0}`.
pub fn annihilator_left(r: &Ring, xs: &[Elem]) -> Result<Annihilator> {
    annihilator(r, xs, Side::Left)
}

/// `{a : X·a = 0}`.
pub fn annihilator_right(r: &Ring, xs: &[Elem]) -> Result<Annihilator> {
    annihilator(r, xs, Side::Right)
}

pub(crate) fn coords(
    alg: &QuotientAlgebra,
    index: &HashMap<Monomial, usize>,
    p: &AlgPoly,
) -> Vec<Elem> {
    let mut v = vec![alg.field().zero(); index.len()];
    for (m, c) in p.terms() {
        v[index[m]] = c.clone();
    }
    v
}

pub(crate) fn from_coords(alg: &QuotientAlgebra, basis: &[Monomial], v: &[Elem]) -> Elem {
    Elem::Alg(AlgPoly::from_terms(
        basis
            .iter()
            .cloned()
            .zip(v.iter().cloned())
            .collect::<Vec<_>>(),
        alg.field(),
    ))
}

/// Annihilator of `xs` as a subspace of the finite monomial basis.
pub fn annihilator_subspace(
    r: &Ring,
    xs: &[Elem],
    side: Side,
) -> Result<(Vec<Monomial>, Subspace)> {
    let alg = r
        .algebra()
        .ok_or_else(|| Error::NotComputable(format!("{r} is not a quotient algebra")))?;
    let basis = alg
        .finite_basis()
        .ok_or_else(|| Error::NotComputable(format!("{r} has no finite monomial basis")))?;
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let nb = basis.len();
    let field = alg.field();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for x in xs {
        // column j = coordinates of basis[j]·x (or x·basis[j])
        let cols: Vec<Vec<Elem>> = basis
            .iter()
            .map(|m| {
                let me = Elem::Alg(AlgPoly::monomial(m.clone(), field.one()));
                coords(alg, &index, side.mul(r, &me, x).as_alg())
            })
            .collect();
        for k in 0..nb {
            let row: Vec<Elem> = cols.iter().map(|c| c[k].clone()).collect();
            if row.iter().any(|e| !e.is_zero()) {
                rows.push(row);
            }
        }
    }
    let ns = nullspace(field, &rows, nb);
    Ok((basis, Subspace::span(field, &ns, nb)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// Every element was examined.
    Exhaustive,
    /// Follows from the ring's structure (ℤ, ℚ, fields, injective twists).
    Structural,
    /// Monomial algebra: no normal monomial of degree ≤ `max_degree` is
    /// nilpotent, and a leading-monomial argument lifts this to all
    /// elements supported in that window.
    MonomialCriterion { max_degree: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedVerdict {
    Reduced(Certification),
    NotReduced { witness: Elem, exponent: u32 },
    Inconclusive(String),
}

fn nilpotency(r: &Ring, a: &Elem, bound: u32) -> Option<u32> {
    let mut p = a.clone();
    for k in 2..=bound.max(2) {
        p = r.mul(&p, a);
        if p.is_zero() {
            return Some(k);
        }
    }
    None
}

/// Searches for a nonzero nilpotent. On enumerable rings this is complete
/// (any nilpotent ring element yields a square-zero one, checked at k = 2).
pub fn is_reduced(r: &Ring, search_bound: u32) -> Result<ReducedVerdict> {
    match r.kind() {
        RingKind::Integers | RingKind::Rationals | RingKind::Galois(_) => {
            return Ok(ReducedVerdict::Reduced(Certification::Structural))
        }
        _ => {}
    }
    if r.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
        for a in r.elements()?.iter().skip(1) {
            if let Some(k) = nilpotency(r, a, search_bound) {
                return Ok(ReducedVerdict::NotReduced {
                    witness: a.clone(),
                    exponent: k,
                });
            }
        }
        return Ok(ReducedVerdict::Reduced(Certification::Exhaustive));
    }
    let alg = r.algebra().expect("non-enumerable rings here are algebras");
    let window = alg.policy().degree_cap.unwrap_or(DEFAULT_DEGREE_WINDOW);
    if alg.is_monomial() {
        return monomial_reducedness(alg, window);
    }
    for cand in algebra_candidates(alg, window)? {
        let e = Elem::Alg(cand);
        if let Some(k) = nilpotency(r, &e, search_bound) {
            return Ok(ReducedVerdict::NotReduced {
                witness: e,
                exponent: k,
            });
        }
    }
    Ok(ReducedVerdict::Inconclusive(format!(
        "no nilpotent among monomials and binomials of degree <= {window}"
    )))
}

/// In an algebra defined by monomial relations, an element is nilpotent
/// only if its leading monomial is (deg-lex is multiplicative and products
/// of monomials are monomials or zero). Monomial nilpotency is decided in
/// the untruncated rewriting system, where powers beyond the longest
/// relation cannot create new factors.
fn monomial_reducedness(alg: &QuotientAlgebra, window: usize) -> Result<ReducedVerdict> {
    let longest = alg
        .rules()
        .iter()
        .map(|r| r.lhs.degree())
        .max()
        .unwrap_or(1);
    let one = alg.field().one();
    for m in alg.basis(window)?.into_iter().skip(1) {
        let mp = AlgPoly::monomial(m.clone(), one.clone());
        let mut pow = mp.clone();
        for k in 2..=(longest as u32 + 1) {
            pow = alg.mul_with(&pow, &mp, None);
            if pow.is_zero() {
                return Ok(ReducedVerdict::NotReduced {
                    witness: Elem::Alg(mp),
                    exponent: k,
                });
            }
        }
    }
    Ok(ReducedVerdict::Reduced(Certification::MonomialCriterion {
        max_degree: window,
    }))
}

/// Monomials of positive degree up to `max_degree`, then binomials
/// `m_i ± m_j` over the first monomials, in a fixed order.
pub fn algebra_candidates(alg: &QuotientAlgebra, max_degree: usize) -> Result<Vec<AlgPoly>> {
    let field = alg.field();
    let one = field.one();
    let mons: Vec<Monomial> = alg.basis(max_degree)?.into_iter().skip(1).collect();
    let mut out: Vec<AlgPoly> = mons
        .iter()
        .map(|m| AlgPoly::monomial(m.clone(), one.clone()))
        .collect();
    let pool = &mons[..mons.len().min(BINOMIAL_POOL)];
    let minus = field.neg(&one);
    for j in 0..pool.len() {
        for i in 0..j {
            for s in [&minus, &one] {
                out.push(AlgPoly::from_terms(
                    [(pool[i].clone(), one.clone()), (pool[j].clone(), s.clone())],
                    field,
                ));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RigidVerdict {
    Rigid(Certification),
    NotRigid(Elem),
    Inconclusive(String),
}

/// `a ≠ 0` and `a·α(a) = 0`.
pub fn is_rigidity_witness(r: &Ring, alpha: &Endo, a: &Elem) -> bool {
    !a.is_zero() && r.mul(a, &alpha.apply(a)).is_zero()
}

/// Searches for `a ≠ 0` with `a·α(a) = 0` after validating α.
pub fn is_rigid(r: &Ring, alpha: &Endo) -> Result<RigidVerdict> {
    alpha.check_homomorphism(super::endo::DEFAULT_HOM_SAMPLES, 0)?;
    match r.kind() {
        // ℤ has only the identity; fields have only injective endomorphisms.
        RingKind::Integers | RingKind::Rationals | RingKind::Galois(_) => {
            return Ok(RigidVerdict::Rigid(Certification::Structural))
        }
        _ => {}
    }
    if r.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
        for a in r.elements()?.iter().skip(1) {
            if is_rigidity_witness(r, alpha, a) {
                return Ok(RigidVerdict::NotRigid(a.clone()));
            }
        }
        return Ok(RigidVerdict::Rigid(Certification::Exhaustive));
    }
    let alg = r.algebra().expect("non-enumerable rings here are algebras");
    let window = alg
        .policy()
        .degree_cap
        .unwrap_or(DEFAULT_DEGREE_WINDOW)
        .min(DEFAULT_DEGREE_WINDOW);
    for cand in algebra_candidates(alg, window)? {
        let e = Elem::Alg(cand);
        if is_rigidity_witness(r, alpha, &e) {
            return Ok(RigidVerdict::NotRigid(e));
        }
    }
    Ok(RigidVerdict::Inconclusive(format!(
        "no witness among monomials and binomials of degree <= {window}"
    )))
}

/// `None` when α maps every nonunit to a nonunit; otherwise a nonunit whose
/// image is a unit.
pub fn preserves_nonunits(r: &Ring, alpha: &Endo) -> Result<Option<Elem>> {
    alpha.check_homomorphism(super::endo::DEFAULT_HOM_SAMPLES, 0)?;
    match r.kind() {
        RingKind::Integers => return Ok(None),
        RingKind::Rationals | RingKind::Galois(_) => return Ok(None),
        RingKind::Zmod(_) if r.is_field() => return Ok(None),
        _ => {}
    }
    if r.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
        for a in r.elements()? {
            if is_unit(r, &a)?.is_none() && is_unit(r, &alpha.apply(&a))?.is_some() {
                return Ok(Some(a));
            }
        }
        return Ok(None);
    }
    Err(Error::Undecidable(format!(
        "nonunits of {r} cannot be enumerated"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::endo::VarImage;
    use crate::rings::algebra::{RewriteSystem, Rule, TruncationPolicy};

    fn z(n: u64) -> Ring {
        Ring::zmod(n).unwrap()
    }

    #[test]
    fn units_in_zmod6_and_z() {
        assert_eq!(is_unit(&z(6), &Elem::Res(5)).unwrap(), Some(Elem::Res(5)));
        assert_eq!(is_unit(&z(6), &Elem::Res(2)).unwrap(), None);
        let zz = Ring::integers();
        assert_eq!(is_unit(&zz, &zz.one()).unwrap(), Some(zz.one()));
        assert_eq!(is_unit(&zz, &zz.from_i64(2)).unwrap(), None);
    }

    #[test]
    fn annihilators_in_small_rings() {
        let r = z(6);
        assert_eq!(
            annihilator_left(&r, &[Elem::Res(4)]).unwrap(),
            Annihilator::Elements(vec![Elem::Res(0), Elem::Res(3)])
        );
        assert_eq!(annihilator_left(&r, &[]).unwrap().elements().len(), 6);
        assert_eq!(
            annihilator_left(&z(5), &[Elem::Res(2)]).unwrap(),
            Annihilator::Elements(vec![Elem::Res(0)])
        );
    }

    #[test]
    fn reducedness_of_small_rings() {
        assert_eq!(
            is_reduced(&z(4), DEFAULT_SEARCH_BOUND).unwrap(),
            ReducedVerdict::NotReduced {
                witness: Elem::Res(2),
                exponent: 2
            }
        );
        assert_eq!(
            is_reduced(&z(6), DEFAULT_SEARCH_BOUND).unwrap(),
            ReducedVerdict::Reduced(Certification::Exhaustive)
        );
    }

    #[test]
    fn rigidity_of_identity() {
        let id4 = Endo::identity(&z(4));
        assert_eq!(
            is_rigid(&z(4), &id4).unwrap(),
            RigidVerdict::NotRigid(Elem::Res(2))
        );
        let id6 = Endo::identity(&z(6));
        assert_eq!(
            is_rigid(&z(6), &id6).unwrap(),
            RigidVerdict::Rigid(Certification::Exhaustive)
        );
    }

    #[test]
    fn preserves_nonunits_examples() {
        let gf4 = Ring::galois(2, 2).unwrap();
        assert_eq!(
            preserves_nonunits(&gf4, &Endo::frobenius(&gf4).unwrap()).unwrap(),
            None
        );
        assert_eq!(
            preserves_nonunits(&z(6), &Endo::identity(&z(6))).unwrap(),
            None
        );

        // F2 x F2 as F2[e]/(e^2 - e); e = (1,0), 1 - e = (0,1).
        let f2 = z(2);
        let sys = RewriteSystem {
            rules: vec![Rule {
                lhs: Monomial(vec![0, 0]),
                rhs: AlgPoly::monomial(Monomial(vec![0]), Elem::Res(1)),
            }],
            commutative: true,
            weights: None,
        };
        let pol = TruncationPolicy {
            num_vars: 1,
            degree_cap: None,
        };
        let r = Ring::quotient(&f2, vec!["e".into()], pol, sys).unwrap();
        assert_eq!(r.universe_size(), Some(4));
        // α(x, y) = (x, x) sends e ↦ 1.
        let alpha = Endo::varmap(&r, vec![VarImage::Elem(r.one())]).unwrap();
        alpha.check_homomorphism(100, 0).unwrap();
        assert_eq!(preserves_nonunits(&r, &alpha).unwrap(), Some(r.var(0)));
    }
}
