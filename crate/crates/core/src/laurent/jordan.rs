//! Jordan's ring `A(R, α) = {x⁻ⁱ r xⁱ}` inside `R[x, x⁻¹; α]` for an
//! injective α, with elements kept at minimal level.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use super::{LaurentPoly, TwistedRing};
use crate::error::{Error, Result};
use crate::ring::linalg::{nullspace, solve};
use crate::ring::props::{annihilator_left, coords, from_coords, is_rigid, RigidVerdict};
use crate::ring::{CoeffRing, Elem, Endo, EndoRule, Ring, ENUMERATION_LIMIT};
use crate::rings::algebra::{AlgPoly, Monomial};

/// `x⁻ˡᵉᵛᵉˡ · rep · xˡᵉᵛᵉˡ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JordanElement {
    pub level: u64,
    pub rep: Elem,
}

#[derive(Debug)]
enum Preimage {
    Identity,
    /// α(r) ↦ r for every r of an enumerable ring.
    Table(HashMap<Elem, Elem>),
    /// Linear α on a finite monomial basis: columns are images of basis
    /// monomials in output coordinates.
    Linear {
        basis: Vec<Monomial>,
        out_index: HashMap<Monomial, usize>,
        matrix: Vec<Vec<Elem>>,
    },
}

#[derive(Debug)]
struct JordanData {
    ring: Ring,
    alpha: Endo,
    pre: Preimage,
}

#[derive(Clone, Debug)]
pub struct JordanRing(Arc<JordanData>);

impl JordanRing {
    /// Requires α injective; preimages come from an exhaustive table on
    /// enumerable rings and from a linear solve on finite-basis algebras.
    pub fn new(alpha: &Endo) -> Result<Self> {
        let ring = alpha.ring().clone();
        alpha.check_homomorphism(crate::ring::endo::DEFAULT_HOM_SAMPLES, 0)?;
        let pre = if alpha.is_identity() {
            Preimage::Identity
        } else if ring.universe_size().is_some_and(|n| n <= ENUMERATION_LIMIT) {
            let mut t = HashMap::new();
            for r in ring.elements()? {
                if let Some(prev) = t.insert(alpha.apply(&r), r.clone()) {
                    return Err(Error::NotInjective(format!(
                        "{} and {} have the same image",
                        ring.format(&prev),
                        ring.format(&r)
                    )));
                }
            }
            Preimage::Table(t)
        } else if let (Some(alg), true) = (ring.algebra(), linear_rule(alpha)) {
            let basis = alg.finite_basis().ok_or_else(|| {
                Error::PreimageSearchExhausted(format!("{ring} has no finite monomial basis"))
            })?;
            let images: Vec<Elem> = basis
                .iter()
                .map(|m| alpha.apply(&Elem::Alg(AlgPoly::monomial(m.clone(), alg.field().one()))))
                .collect();
            let out_index: HashMap<Monomial, usize> = basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect();
            let cols: Vec<Vec<Elem>> = images
                .iter()
                .map(|e| coords(alg, &out_index, e.as_alg()))
                .collect();
            let matrix: Vec<Vec<Elem>> = (0..basis.len())
                .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                .collect();
            if !nullspace(alg.field(), &matrix, basis.len()).is_empty() {
                return Err(Error::NotInjective(format!("{} on {ring}", alpha.label())));
            }
            Preimage::Linear {
                basis,
                out_index,
                matrix,
            }
        } else {
            return Err(Error::PreimageSearchExhausted(format!(
                "no preimage procedure for {} on {ring}",
                alpha.label()
            )));
        };
        Ok(Self(Arc::new(JordanData {
            ring,
            alpha: alpha.clone(),
            pre,
        })))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn alpha(&self) -> &Endo {
        &self.0.alpha
    }

    fn preimage(&self, r: &Elem) -> Option<Elem> {
        match &self.0.pre {
            Preimage::Identity => Some(r.clone()),
            Preimage::Table(t) => t.get(r).cloned(),
            Preimage::Linear {
                basis,
                out_index,
                matrix,
            } => {
                let alg = self.0.ring.algebra().expect("algebra");
                let rhs = coords(alg, out_index, r.as_alg());
                solve(alg.field(), matrix, &rhs, basis.len()).map(|x| from_coords(alg, basis, &x))
            }
        }
    }

    /// Lowers the level while the representative has an α-preimage.
    pub fn normalize(&self, e: &JordanElement) -> JordanElement {
        if e.rep.is_zero() {
            return JordanElement {
                level: 0,
                rep: e.rep.clone(),
            };
        }
        let mut out = e.clone();
        while out.level > 0 {
            match self.preimage(&out.rep) {
                Some(p) => {
                    out.rep = p;
                    out.level -= 1;
                }
                None => break,
            }
        }
        out
    }

    pub fn element(&self, level: u64, rep: Elem) -> Result<JordanElement> {
        self.0.ring.check_members([&rep])?;
        Ok(self.normalize(&JordanElement { level, rep }))
    }

    pub fn embed(&self, r: Elem) -> JordanElement {
        JordanElement { level: 0, rep: r }
    }

    fn lift(&self, e: &JordanElement, by: u64) -> Elem {
        self.0.alpha.apply_pow(&e.rep, by)
    }

    /// `x⁻ⁱ r xⁱ` as a Laurent polynomial `α⁻ⁱ(r)`; only defined in
    /// `R[x, x⁻¹; α]` when α is invertible.
    pub fn to_base(&self, e: &JordanElement) -> Result<Elem> {
        match &self.0.pre {
            Preimage::Identity => Ok(e.rep.clone()),
            _ => {
                let mut r = e.rep.clone();
                for _ in 0..e.level {
                    r = self.preimage(&r).ok_or_else(|| {
                        Error::NotInvertibleTwist(format!(
                            "{} has no preimage",
                            self.0.ring.format(&r)
                        ))
                    })?;
                }
                Ok(r)
            }
        }
    }

    /// All canonical elements presented at level ≤ `max_level`, sorted and
    /// deduplicated (enumerable rings only).
    pub fn canonical_elements(&self, max_level: u64) -> Result<Vec<JordanElement>> {
        let els = self.0.ring.elements()?;
        let mut out = BTreeSet::new();
        for level in 0..=max_level {
            for r in &els {
                out.insert(self.normalize(&JordanElement {
                    level,
                    rep: r.clone(),
                }));
            }
        }
        Ok(out.into_iter().collect())
    }

    /// α on A: `(i, r) ↦ (i, α(r))`, inverse `(i, r) ↦ (i + 1, r)`.
    pub fn alpha_pow(&self, e: &JordanElement, n: i64) -> JordanElement {
        if n >= 0 {
            self.normalize(&JordanElement {
                level: e.level,
                rep: self.lift(e, n as u64),
            })
        } else {
            self.normalize(&JordanElement {
                level: e.level + n.unsigned_abs(),
                rep: e.rep.clone(),
            })
        }
    }

    /// Image of the triple `x⁻ⁱ r xʲ` under the isomorphism onto
    /// `A(R, α)[x, x⁻¹; α]`: coefficient `(i, r)` at degree `j − i`.
    pub fn iso_term(&self, i: u64, r: &Elem, j: u64) -> LaurentPoly<JordanRing> {
        LaurentPoly::build(
            self,
            [(
                j as i64 - i as i64,
                self.normalize(&JordanElement {
                    level: i,
                    rep: r.clone(),
                }),
            )],
        )
    }

    pub fn iso(&self, triples: &[(u64, Elem, u64)]) -> LaurentPoly<JordanRing> {
        let terms: Vec<(i64, JordanElement)> = triples
            .iter()
            .map(|(i, r, j)| {
                (
                    *j as i64 - *i as i64,
                    self.normalize(&JordanElement {
                        level: *i,
                        rep: r.clone(),
                    }),
                )
            })
            .collect();
        LaurentPoly::build(self, terms)
    }

    /// Product of `x⁻ⁱ r xʲ` and `x⁻ᵏ s xˡ` in the source ring, as a triple.
    pub fn triple_mul(&self, a: &(u64, Elem, u64), b: &(u64, Elem, u64)) -> (u64, Elem, u64) {
        let r = &self.0.ring;
        let ((i, ra, j), (k, sb, l)) = (a, b);
        if j >= k {
            (*i, r.mul(ra, &self.0.alpha.apply_pow(sb, j - k)), j - k + l)
        } else {
            let d = k - j;
            (i + d, r.mul(&self.0.alpha.apply_pow(ra, d), sb), *l)
        }
    }
}

fn linear_rule(alpha: &Endo) -> bool {
    match alpha.rule() {
        EndoRule::Identity | EndoRule::VarMap { .. } => true,
        EndoRule::Power(b, _) => linear_rule(b),
        EndoRule::Compose(f, g) => linear_rule(f) && linear_rule(g),
        EndoRule::Frobenius | EndoRule::Table(_) => false,
    }
}

impl CoeffRing for JordanRing {
    type Elem = JordanElement;

    fn zero(&self) -> JordanElement {
        self.embed(self.0.ring.zero())
    }

    fn one(&self) -> JordanElement {
        self.embed(self.0.ring.one())
    }

    /// Both summands lifted to the common level `i + j`.
    fn add(&self, a: &JordanElement, b: &JordanElement) -> JordanElement {
        let rep = self
            .0
            .ring
            .add(&self.lift(a, b.level), &self.lift(b, a.level));
        self.normalize(&JordanElement {
            level: a.level + b.level,
            rep,
        })
    }

    fn neg(&self, a: &JordanElement) -> JordanElement {
        JordanElement {
            level: a.level,
            rep: self.0.ring.neg(&a.rep),
        }
    }

    /// `(i, r)(j, s) = (i + j, αʲ(r) αⁱ(s))`.
    fn mul(&self, a: &JordanElement, b: &JordanElement) -> JordanElement {
        let rep = self
            .0
            .ring
            .mul(&self.lift(a, b.level), &self.lift(b, a.level));
        self.normalize(&JordanElement {
            level: a.level + b.level,
            rep,
        })
    }

    fn is_zero(&self, a: &JordanElement) -> bool {
        a.rep.is_zero()
    }
}

impl TwistedRing for JordanRing {
    fn twist(&self, a: &JordanElement, n: i64) -> Result<JordanElement> {
        Ok(self.alpha_pow(a, n))
    }

    fn format(&self, a: &JordanElement) -> String {
        let r = self.0.ring.format(&a.rep);
        if a.level == 0 {
            crate::series::coeff_atom(&self.0.ring, &a.rep)
        } else {
            format!("[{}|{r}]", a.level)
        }
    }

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.ring == other.0.ring && self.0.alpha.label() == other.0.alpha.label())
    }

    fn twist_invertible(&self) -> bool {
        true
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pro4Report {
    /// Consecutive pairs where `Ann(L_i) ⊆ Ann(L_{i+1})` holds in A.
    pub hypotheses_holding: usize,
    /// Pairs where the hypothesis holds but `Ann(K_i) ⊆ Ann(K_{i+1})`
    /// fails in R, with a separating element.
    pub violations: Vec<(usize, Elem)>,
    pub k_sets: Vec<Vec<Elem>>,
}

impl Pro4Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For enumerable α-rigid R, computes the sets `K_i` of representatives of
/// each `L_i` at every level and checks that ascending left annihilators of
/// the `L_i` in A force ascending left annihilators of the `K_i` in R.
pub fn lemma_pro4_check(j: &JordanRing, chains: &[Vec<JordanElement>]) -> Result<Pro4Report> {
    let r = j.ring();
    if let RigidVerdict::NotRigid(w) = is_rigid(r, j.alpha())? {
        return Err(Error::NotRigid(r.format(&w)));
    }
    let els = r.elements()?;
    // A finite ring's injective α is bijective, so A is R at level 0.
    let a_elems: Vec<JordanElement> = els.iter().map(|e| j.embed(e.clone())).collect();
    let ann_a = |l: &[JordanElement]| -> HashSet<JordanElement> {
        a_elems
            .iter()
            .filter(|s| l.iter().all(|x| j.mul(s, x).rep.is_zero()))
            .cloned()
            .collect()
    };
    let k_sets: Vec<Vec<Elem>> = chains
        .iter()
        .map(|l| {
            let mut ks = BTreeSet::new();
            for e in l {
                let mut rep = e.rep.clone();
                for _ in 0..=els.len() {
                    if !ks.insert(rep.clone()) {
                        break;
                    }
                    rep = j.alpha().apply(&rep);
                }
            }
            ks.into_iter().collect()
        })
        .collect();
    let mut holding = 0;
    let mut violations = Vec::new();
    for i in 0..chains.len().saturating_sub(1) {
        let (a0, a1) = (ann_a(&chains[i]), ann_a(&chains[i + 1]));
        if !a0.is_subset(&a1) {
            continue;
        }
        holding += 1;
        let k0 = annihilator_left(r, &k_sets[i])?;
        let k1 = annihilator_left(r, &k_sets[i + 1])?;
        if let Some(w) = k0.elements().iter().find(|x| !k1.elements().contains(x)) {
            violations.push((i, w.clone()));
        }
    }
    Ok(Pro4Report {
        hypotheses_holding: holding,
        violations,
        k_sets,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> (Ring, JordanRing) {
        let r = Ring::galois(2, 2).unwrap();
        let j = JordanRing::new(&Endo::frobenius(&r).unwrap()).unwrap();
        (r, j)
    }

    fn w() -> Elem {
        Elem::Gf(vec![0, 1])
    }

    fn w1() -> Elem {
        Elem::Gf(vec![1, 1])
    }

    #[test]
    fn normalization_over_gf4() {
        let (_, j) = gf4();
        assert_eq!(
            j.element(1, w()).unwrap(),
            JordanElement {
                level: 0,
                rep: w1()
            }
        );
        assert_eq!(
            j.element(0, w()).unwrap(),
            JordanElement { level: 0, rep: w() }
        );
        assert_eq!(
            j.element(2, w()).unwrap(),
            JordanElement { level: 0, rep: w() }
        );
    }

    #[test]
    fn arithmetic_over_gf4() {
        let (_, j) = gf4();
        let a = JordanElement { level: 1, rep: w() };
        assert_eq!(j.mul(&a, &a), JordanElement { level: 0, rep: w() });
        let b = JordanElement {
            level: 1,
            rep: w1(),
        };
        assert_eq!(j.add(&a, &b), j.one());
        assert_eq!(j.mul(&j.normalize(&a), &j.one()), j.normalize(&a));
    }

    #[test]
    fn iso_examples() {
        let (_, j) = gf4();
        let p = j.iso(&[(1, w(), 2)]);
        assert_eq!(p.coeffs().len(), 1);
        assert_eq!(
            p.coeff(1),
            JordanElement {
                level: 0,
                rep: w1()
            }
        );
        let r = Ring::zmod(6).unwrap();
        let jz = JordanRing::new(&Endo::identity(&r)).unwrap();
        assert_eq!(
            jz.iso(&[(0, Elem::Res(5), 0)]),
            LaurentPoly::constant(&jz, jz.embed(Elem::Res(5)))
        );
    }

    #[test]
    fn non_injective_rejected() {
        let r = Ring::zmod(4).unwrap();
        let mut t = HashMap::new();
        for e in r.elements().unwrap() {
            t.insert(e, Elem::Res(0));
        }
        // constant zero map is not unital, rejected before injectivity
        assert!(Endo::table(&r, t)
            .and_then(|a| JordanRing::new(&a))
            .is_err());
    }

    #[test]
    fn pro4_equal_chains() {
        let (_, j) = gf4();
        let l = vec![j.embed(w())];
        let rep = lemma_pro4_check(&j, &[l.clone(), l.clone(), l]).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.hypotheses_holding, 2);
    }
}
