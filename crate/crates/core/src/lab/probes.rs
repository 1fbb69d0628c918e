//! Exhaustive probes over enumerable rings: power intersections, the
//! archimedean condition, factorization sequences, bounded samples of the
//! leading-coefficient ideal and annihilator chains.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monoid::{Monoid, MonoidElement};
use crate::ring::linalg::{solve, Subspace};
use crate::ring::props::{
    annihilator, annihilator_subspace, from_coords, is_unit, Annihilator, Side,
};
use crate::ring::{Elem, Ring};
use crate::rings::algebra::{AlgPoly, Monomial};
use crate::series::Series;

fn enumerate(r: &Ring) -> Result<Vec<Elem>> {
    if !r.is_enumerable() {
        return Err(Error::NotEnumerable(r.to_string()));
    }
    r.elements()
}

/// `⋂ R·rⁿ` (left) or `⋂ rⁿ·R` (right), reached once the descending sets
/// stop shrinking. Sorted in enumeration order.
pub fn intersection_powers(r: &Ring, x: &Elem, side: Side) -> Result<Vec<Elem>> {
    let els = enumerate(r)?;
    r.check_members([x])?;
    let mut power = x.clone();
    let mut current: BTreeSet<Elem> = els.iter().map(|a| side.mul(r, a, &power)).collect();
    loop {
        power = r.mul(&power, x);
        let next: BTreeSet<Elem> = els.iter().map(|a| side.mul(r, a, &power)).collect();
        if next == current {
            break;
        }
        current = next;
    }
    Ok(els.into_iter().filter(|e| current.contains(e)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArchimedeanReport {
    pub ring: String,
    pub side: Side,
    pub nonunits: usize,
    /// Every nonunit whose power intersection is nonzero, with that set.
    pub failing: Vec<(Elem, Vec<Elem>)>,
    /// The failing nonunit with the smallest stable set; earliest on ties.
    pub witness: Option<(Elem, Vec<Elem>)>,
}

impl ArchimedeanReport {
    pub fn archimedean(&self) -> bool {
        self.failing.is_empty()
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        let set = |s: &[Elem]| s.iter().map(|e| r.to_json(e)).collect::<Vec<_>>();
        json!({
            "ring": self.ring,
            "side": self.side,
            "archimedean": self.archimedean(),
            "nonunits": self.nonunits,
            "witness": self.witness.as_ref().map(|(w, s)| json!({"element": r.to_json(w), "stable_set": set(s)})),
            "failing": self.failing.iter().map(|(w, s)| json!({"element": r.to_json(w), "stable_set": set(s)})).collect::<Vec<_>>(),
        })
    }
}

pub fn archimedean_probe(r: &Ring, side: Side) -> Result<ArchimedeanReport> {
    let els = enumerate(r)?;
    let mut nonunits = 0;
    let mut failing = Vec::new();
    for x in &els {
        if is_unit(r, x)?.is_some() {
            continue;
        }
        nonunits += 1;
        let stable = intersection_powers(r, x, side)?;
        if stable.iter().any(|e| !e.is_zero()) {
            failing.push((x.clone(), stable));
        }
    }
    let witness = failing.iter().min_by_key(|(_, s)| s.len()).cloned();
    Ok(ArchimedeanReport {
        ring: r.to_string(),
        side,
        nonunits,
        failing,
        witness,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorizationVerdict {
    /// Least 1-based index m with b_m a unit.
    UnitAt(usize),
    NoUnitFactorUpTo(usize),
}

fn factorization_core<T: PartialEq>(
    a: impl Fn(usize) -> T,
    b: impl Fn(usize) -> T,
    horizon: usize,
    compose: impl Fn(&T, &T) -> Result<T>,
    unit: impl Fn(&T) -> Result<bool>,
) -> Result<FactorizationVerdict> {
    for n in 1..horizon {
        if compose(&b(n), &a(n + 1))? != a(n) {
            return Err(Error::RecursionViolated(n as u64));
        }
    }
    for m in 1..=horizon {
        if unit(&b(m))? {
            return Ok(FactorizationVerdict::UnitAt(m));
        }
    }
    Ok(FactorizationVerdict::NoUnitFactorUpTo(horizon))
}

/// Checks `a_n = b_n · a_{n+1}` in `r` for `n < horizon`, then looks for a
/// unit among `b_1, …, b_horizon`.
pub fn factorization_sequence_check_ring(
    r: &Ring,
    a: impl Fn(usize) -> Elem,
    b: impl Fn(usize) -> Elem,
    horizon: usize,
) -> Result<FactorizationVerdict> {
    factorization_core(
        a,
        b,
        horizon,
        |x, y| Ok(r.mul(x, y)),
        |x| Ok(is_unit(r, x)?.is_some()),
    )
}

/// Additive form for a monoid: `s_n = r_n + s_{n+1}`.
pub fn factorization_sequence_check_monoid(
    m: &Monoid,
    s: impl Fn(usize) -> MonoidElement,
    r: impl Fn(usize) -> MonoidElement,
    horizon: usize,
) -> Result<FactorizationVerdict> {
    factorization_core(s, r, horizon, |x, y| m.mop(x, y), |x| Ok(m.is_unit(x)))
}

/// Default pool for [`leading_coeff_ideal_sample`]: `c_r·e_s` for every r of
/// the ring and s in `{0, 1/2, 1}` intersected with the monoid.
pub fn default_pool(f: &Series) -> Result<Vec<Series>> {
    let ctx = f.ctx();
    let grid = [
        MonoidElement::zero(),
        MonoidElement::frac(1, 2),
        MonoidElement::int(1),
    ];
    let mut pool = Vec::new();
    for r in enumerate(ctx.ring())? {
        for s in grid.iter().filter(|s| ctx.monoid().contains(s)) {
            pool.push(Series::new(ctx, [(s.clone(), r.clone())], None)?);
        }
    }
    Ok(pool)
}

/// Two-sided ideal of an enumerable ring generated by `gens`.
pub fn ideal_closure(r: &Ring, gens: impl IntoIterator<Item = Elem>) -> Result<Vec<Elem>> {
    let els = enumerate(r)?;
    let mut ideal: BTreeSet<Elem> = BTreeSet::from([r.zero()]);
    let mut frontier: Vec<Elem> = gens.into_iter().collect();
    while let Some(g) = frontier.pop() {
        if !ideal.insert(g.clone()) {
            continue;
        }
        let existing: Vec<Elem> = ideal.iter().cloned().collect();
        for x in existing {
            frontier.push(r.add(&x, &g));
        }
        for a in &els {
            frontier.push(r.mul(a, &g));
            frontier.push(r.mul(&g, a));
        }
    }
    Ok(els.into_iter().filter(|e| ideal.contains(e)).collect())
}

/// Under-approximation of `I_f`: the ideal generated by the leading
/// coefficients of all nonzero `a·f·b` with `a, b` from `pool`.
pub fn leading_coeff_ideal_sample(f: &Series, pool: Option<&[Series]>) -> Result<Vec<Elem>> {
    let owned;
    let pool = match pool {
        Some(p) => p,
        None => {
            owned = default_pool(f)?;
            &owned
        }
    };
    let mut leads = Vec::new();
    if !f.is_zero() {
        for a in pool {
            let af = a.mul(f)?;
            if af.is_zero() {
                continue;
            }
            for b in pool {
                let afb = af.mul(b)?;
                if !afb.is_zero() {
                    leads.push(afb.pi()?.1);
                }
            }
        }
    }
    ideal_closure(f.ctx().ring(), leads)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorStep {
    /// 1-based index i of the pair (X_i, X_{i+1}).
    pub index: usize,
    pub included: bool,
    /// An element of `Ann(X_{i+1})` outside `Ann(X_i)`; present iff strict.
    pub separating: Option<Elem>,
    /// An element of `Ann(X_i)` outside `Ann(X_{i+1})` when inclusion fails.
    pub obstruction: Option<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorChainReport {
    pub side: Side,
    /// Dimension (basis case) or cardinality (enumerable case) per family.
    pub sizes: Vec<usize>,
    pub exhaustive: bool,
    pub steps: Vec<AnnihilatorStep>,
}

impl AnnihilatorChainReport {
    pub fn strict_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.included && s.separating.is_some())
            .count()
    }

    pub fn to_json(&self, r: &Ring) -> Value {
        let el = |e: &Option<Elem>| e.as_ref().map(|x| r.format(x));
        json!({
            "side": self.side,
            "sizes": self.sizes,
            "mode": if self.exhaustive { "exhaustive" } else { "linear" },
            "strict_steps": self.strict_steps(),
            "steps": self.steps.iter().map(|s| json!({
                "i": s.index,
                "included": s.included,
                "separating": el(&s.separating),
                "obstruction": el(&s.obstruction),
            })).collect::<Vec<_>>(),
        })
    }
}

fn first_outside(field: &Ring, small: &Subspace, big: &Subspace) -> Option<Vec<Elem>> {
    big.rows.iter().find(|v| !small.contains(field, v)).cloned()
}

/// Annihilators of each family and the inclusions between neighbours, with
/// linear algebra on a finite monomial basis or exhaustive search otherwise.
pub fn annihilator_chain(
    r: &Ring,
    families: &[Vec<Elem>],
    side: Side,
) -> Result<AnnihilatorChainReport> {
    if let Some(alg) = r.algebra().filter(|a| a.finite_basis().is_some()) {
        let spaces: Vec<(Vec<_>, Subspace)> = families
            .iter()
            .map(|x| annihilator_subspace(r, x, side))
            .collect::<Result<_>>()?;
        let steps = spaces
            .windows(2)
            .enumerate()
            .map(|(i, w)| {
                let (basis, a0) = &w[0];
                let a1 = &w[1].1;
                let to_elem = |v: Vec<Elem>| from_coords(alg, basis, &v);
                let field = alg.field();
                AnnihilatorStep {
                    index: i + 1,
                    included: a0.is_subspace_of(field, a1),
                    separating: first_outside(field, a0, a1).map(to_elem),
                    obstruction: first_outside(field, a1, a0).map(to_elem),
                }
            })
            .collect();
        return Ok(AnnihilatorChainReport {
            side,
            sizes: spaces.iter().map(|(_, s)| s.dim()).collect(),
            exhaustive: false,
            steps,
        });
    }
    let sets: Vec<Vec<Elem>> = families
        .iter()
        .map(|x| match annihilator(r, x, side)? {
            Annihilator::Elements(e) => Ok(e),
            Annihilator::Basis(_) => Err(Error::NotComputable(format!(
                "{r}: mixed annihilator modes"
            ))),
        })
        .collect::<Result<_>>()?;
    let steps = sets
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let outside = |a: &[Elem], b: &[Elem]| b.iter().find(|e| !a.contains(e)).cloned();
            AnnihilatorStep {
                index: i + 1,
                included: w[0].iter().all(|e| w[1].contains(e)),
                separating: outside(&w[0], &w[1]),
                obstruction: outside(&w[1], &w[0]),
            }
        })
        .collect();
    Ok(AnnihilatorChainReport {
        side,
        sizes: sets.iter().map(Vec::len).collect(),
        exhaustive: true,
        steps,
    })
}

/// Searches for `h` with `g·h = 1` (`Side::Right`) or `h·g = 1`
/// (`Side::Left`) among series of exponent at most `max_exp` over ℕ whose
/// coefficients lie in the span of the normal monomials of degree at most
/// `coeff_degree`. The search is a single linear solve, so `None` proves
/// that no inverse exists in that finite-dimensional space.
pub fn bounded_inverse_search(
    g: &Series,
    side: Side,
    max_exp: u64,
    coeff_degree: usize,
) -> Result<Option<Series>> {
    let ctx = g.ctx();
    let r = ctx.ring();
    let alg = r
        .algebra()
        .ok_or_else(|| Error::NotComputable(format!("{r} is not a quotient algebra")))?;
    if !ctx.monoid().kind().is_integral() || !ctx.monoid().kind().is_nonneg() {
        return Err(Error::UnsupportedMonoid(format!(
            "bounded inverse search needs ℕ, not {}",
            ctx.monoid()
        )));
    }
    let field = alg.field();
    let basis = alg.basis(coeff_degree)?;
    let mut unknowns = Vec::new();
    for k in 0..=max_exp {
        for m in &basis {
            let c = Elem::Alg(AlgPoly::monomial(m.clone(), field.one()));
            unknowns.push(Series::new(ctx, [(MonoidElement::int(k as i64), c)], None)?);
        }
    }
    let mut index: HashMap<(MonoidElement, Monomial), usize> = HashMap::new();
    let mut columns = Vec::with_capacity(unknowns.len());
    for u in &unknowns {
        let p = match side {
            Side::Right => g.mul(u)?,
            Side::Left => u.mul(g)?,
        };
        let mut col = Vec::new();
        for (s, c) in p.terms() {
            for (m, a) in c.as_alg().terms() {
                let next = index.len();
                let row = *index.entry((s.clone(), m.clone())).or_insert(next);
                col.push((row, a.clone()));
            }
        }
        columns.push(col);
    }
    let one_key = (MonoidElement::zero(), Monomial::one());
    let next = index.len();
    let one_row = *index.entry(one_key).or_insert(next);
    let mut mat = vec![vec![field.zero(); unknowns.len()]; index.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, a) in col {
            mat[i][j] = a;
        }
    }
    let mut rhs = vec![field.zero(); index.len()];
    rhs[one_row] = field.one();
    let Some(x) = solve(field, &mat, &rhs, unknowns.len()) else {
        return Ok(None);
    };
    let mut h = Series::zero(ctx);
    for (u, c) in unknowns.iter().zip(&x) {
        if !c.is_zero() {
            h = h.add(&Series::c(ctx, Elem::Alg(alg.constant(c.clone())))?.mul(u)?)?;
        }
    }
    let check = match side {
        Side::Right => g.mul(&h)?,
        Side::Left => h.mul(g)?,
    };
    if check != Series::one(ctx) {
        return Err(Error::NotComputable(
            "inverse candidate failed to replay".into(),
        ));
    }
    Ok(Some(h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::inverse_power_of_two;
    use crate::rings::examples::{orthogonal_free, OrthogonalReading};
    use crate::series::SkewContext;
    use num_bigint::BigInt;

    fn res(xs: &[u64]) -> Vec<Elem> {
        xs.iter().map(|&x| Elem::Res(x)).collect()
    }

    #[test]
    fn power_intersections() {
        let z6 = Ring::zmod(6).unwrap();
        assert_eq!(
            intersection_powers(&z6, &Elem::Res(3), Side::Left).unwrap(),
            res(&[0, 3])
        );
        assert_eq!(
            intersection_powers(&z6, &Elem::Res(0), Side::Right).unwrap(),
            res(&[0])
        );
        let z4 = Ring::zmod(4).unwrap();
        assert_eq!(
            intersection_powers(&z4, &Elem::Res(2), Side::Left).unwrap(),
            res(&[0])
        );
        assert!(matches!(
            intersection_powers(&Ring::integers(), &Elem::Int(BigInt::from(2)), Side::Left),
            Err(Error::NotEnumerable(_))
        ));
    }

    #[test]
    fn archimedean_small_rings() {
        for n in [4, 5, 8, 9] {
            assert!(
                archimedean_probe(&Ring::zmod(n).unwrap(), Side::Left)
                    .unwrap()
                    .archimedean(),
                "Z/{n}"
            );
        }
        let rep = archimedean_probe(&Ring::zmod(6).unwrap(), Side::Left).unwrap();
        assert!(!rep.archimedean());
        assert_eq!(rep.witness, Some((Elem::Res(3), res(&[0, 3]))));
        let failing: Vec<Elem> = rep.failing.iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(failing, res(&[2, 3, 4]));
    }

    #[test]
    fn factorization_sequences() {
        let q = Monoid::rat_nonneg();
        let v = factorization_sequence_check_monoid(
            &q,
            |n| inverse_power_of_two(n as u32),
            |n| inverse_power_of_two(n as u32 + 1),
            20,
        )
        .unwrap();
        assert_eq!(v, FactorizationVerdict::NoUnitFactorUpTo(20));

        let z6 = Ring::zmod(6).unwrap();
        let v =
            factorization_sequence_check_ring(&z6, |_| Elem::Res(1), |_| Elem::Res(1), 5).unwrap();
        assert_eq!(v, FactorizationVerdict::UnitAt(1));

        let z = Ring::integers();
        let k = 12;
        let v = factorization_sequence_check_ring(
            &z,
            |n| Elem::Int(BigInt::from(2).pow((k - n) as u32)),
            |_| Elem::Int(BigInt::from(2)),
            k,
        )
        .unwrap();
        assert_eq!(v, FactorizationVerdict::NoUnitFactorUpTo(k));

        let err = factorization_sequence_check_ring(&z6, |_| Elem::Res(1), |_| Elem::Res(2), 4);
        assert!(matches!(err, Err(Error::RecursionViolated(1))));
    }

    #[test]
    fn leading_coefficient_samples() {
        let ctx = SkewContext::identity(&Ring::zmod(6).unwrap(), Monoid::nat());
        let pool: Vec<Series> = (0..6)
            .map(|r| Series::c(&ctx, Elem::Res(r)).unwrap())
            .collect();
        let f = Series::c(&ctx, Elem::Res(2)).unwrap();
        assert_eq!(
            leading_coeff_ideal_sample(&f, Some(&pool)).unwrap(),
            res(&[0, 2, 4])
        );
        let e1 = Series::e(&ctx, MonoidElement::int(1)).unwrap();
        assert_eq!(leading_coeff_ideal_sample(&e1, None).unwrap().len(), 6);
        assert_eq!(
            leading_coeff_ideal_sample(&Series::zero(&ctx), None).unwrap(),
            res(&[0])
        );
        let small = leading_coeff_ideal_sample(&f, Some(&pool[..2])).unwrap();
        assert!(small
            .iter()
            .all(|e| leading_coeff_ideal_sample(&f, Some(&pool))
                .unwrap()
                .contains(e)));
    }

    #[test]
    fn orthogonal_annihilator_chain_is_strict_twice() {
        let f2 = Ring::zmod(2).unwrap();
        let r = orthogonal_free(&f2, 8, OrthogonalReading::AllDistinct, Some(6)).unwrap();
        let fam: Vec<Vec<Elem>> = (1..=3)
            .map(|n| (n..=8).map(|i| r.var(i - 1)).collect())
            .collect();
        let rep = annihilator_chain(&r, &fam, Side::Left).unwrap();
        assert_eq!(rep.strict_steps(), 2);
        assert_eq!(rep.steps[0].separating, Some(r.var(0)));
        assert_eq!(rep.steps[1].separating, Some(r.var(1)));

        let same = annihilator_chain(&r, &[fam[0].clone(), fam[0].clone()], Side::Left).unwrap();
        assert_eq!(same.strict_steps(), 0);
    }

    #[test]
    fn inverse_search_finds_units_and_refutes_nonunits() {
        let f2 = Ring::zmod(2).unwrap();
        let r = orthogonal_free(&f2, 4, OrthogonalReading::AllDistinct, None).unwrap();
        let ctx = SkewContext::identity(&r, Monoid::nat());
        let one = Series::one(&ctx);
        let x1 = Series::c(&ctx, r.var(0)).unwrap();
        let t = Series::e(&ctx, MonoidElement::int(1)).unwrap();
        let g = one.add(&x1.mul(&t).unwrap()).unwrap();
        assert!(bounded_inverse_search(&g, Side::Right, 4, 4)
            .unwrap()
            .is_none());
        let u = one.add(&x1).unwrap();
        assert!(bounded_inverse_search(&u, Side::Right, 2, 4)
            .unwrap()
            .is_none());
        let q = Ring::rationals();
        let ext = crate::rings::examples::exterior(&q, 3).unwrap();
        let ctx = SkewContext::identity(&ext, Monoid::nat());
        let v1t = Series::new(&ctx, [(MonoidElement::int(1), ext.var(0))], None).unwrap();
        let g = Series::one(&ctx).add(&v1t).unwrap();
        let h = bounded_inverse_search(&g, Side::Left, 2, 2)
            .unwrap()
            .unwrap();
        assert_eq!(h.mul(&g).unwrap(), Series::one(&ctx));
    }

    #[test]
    fn enumerable_annihilator_chain() {
        let z6 = Ring::zmod(6).unwrap();
        let rep = annihilator_chain(&z6, &[res(&[2, 3]), res(&[2]), vec![]], Side::Right).unwrap();
        assert!(rep.exhaustive);
        assert_eq!(rep.sizes, vec![1, 2, 6]);
        assert_eq!(rep.strict_steps(), 2);
        assert_eq!(rep.steps[0].separating, Some(Elem::Res(3)));
    }
}
