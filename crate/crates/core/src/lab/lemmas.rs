//! Exhaustive lemma checks over small rigid contexts.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::laurent::jordan::{JordanElement, JordanRing};
use crate::monoid::MonoidElement;
use crate::ring::{CoeffRing, Elem};
use crate::series::SkewContext;

/// Grid size used by [`rigid_lemma_suite`] when none is given.
pub const DEFAULT_LEMMA_GRID: u64 = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub universe: String,
    /// First violation found, described in the ring's own notation.
    pub counterexample: Option<String>,
    pub exhaustive: bool,
    pub checked: usize,
    pub seed: Option<u64>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("plain data");
        v["passed"] = json!(self.passed());
        v
    }
}

/// `ω_t` for every `t ≤ grid²` of an integer grid, tabulated on all of R.
struct OmegaTable {
    els: Vec<Elem>,
    /// `images[t][i]` is the index of `ω_t(els[i])`.
    images: Vec<Vec<usize>>,
    /// `prod[i][j]` is the index of `els[i]·els[j]`.
    prod: Vec<Vec<usize>>,
}

impl OmegaTable {
    fn new(ctx: &SkewContext, max_exp: u64) -> Result<Self> {
        let r = ctx.ring();
        if !r.is_enumerable() {
            return Err(Error::NotEnumerable(r.to_string()));
        }
        let els = r.elements()?;
        let index: std::collections::HashMap<&Elem, usize> =
            els.iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut images = Vec::new();
        for t in 0..=max_exp {
            let s = MonoidElement::int(t as i64);
            let row = els
                .iter()
                .map(|e| Ok(index[&ctx.omega_apply(&s, e)?]))
                .collect::<Result<Vec<_>>>()?;
            images.push(row);
        }
        let prod = els
            .iter()
            .map(|a| els.iter().map(|b| index[&r.mul(a, b)]).collect())
            .collect();
        Ok(Self { els, images, prod })
    }

    fn is_zero(&self, i: usize) -> bool {
        self.els[i].is_zero()
    }
}

/// Checks that every `ω_t`, `t ≤ grid²`, is rigid; returns the first
/// nonzero `a` with `a·ω_t(a) = 0` otherwise.
fn s_rigidity_witness(t: &OmegaTable) -> Option<(u64, usize)> {
    for (exp, img) in t.images.iter().enumerate() {
        for (a, &ia) in img.iter().enumerate() {
            if !t.is_zero(a) && t.is_zero(t.prod[a][ia]) {
                return Some((exp as u64, a));
            }
        }
    }
    None
}

/// Exhaustive checks of the two rigidity lemmas over all pairs of an
/// enumerable R, with `s, s' ∈ {0, …, grid}` and powers `n, k ∈ {1, …, grid}`:
///
/// * `jav-1`: `ab = 0 ⇒ a·ω_{ns}(b) = ω_{ns}(a)·b = 0`
/// * `jav-2`: `a·ω_{ks}(b) = ω_{ks}(a)·b = 0 ⇒ ab = 0`
/// * `kav`: `ω_s(ab) = 0 ⇒ ω_{s+s'}(a)·ω_s(b) = 0`
///
/// Fails with `NotRigid` before any lemma is checked if some `ω_t` on the
/// grid is not rigid.
pub fn rigid_lemma_suite(ctx: &SkewContext, grid: u64) -> Result<Vec<PropertyReport>> {
    let r = ctx.ring();
    let t = OmegaTable::new(ctx, grid * grid)?;
    if let Some((_, a)) = s_rigidity_witness(&t) {
        return Err(Error::NotRigid(r.format(&t.els[a])));
    }
    let n_el = t.els.len();
    let fmt = |i: usize| r.format(&t.els[i]);
    let universe = format!("{ctx}, {n_el}² pairs, s,s' ≤ {grid}, n,k ≤ {grid}");
    let report = |name: &str, checked: usize, cx: Option<String>| PropertyReport {
        property: name.to_string(),
        universe: universe.clone(),
        counterexample: cx,
        exhaustive: true,
        checked,
        seed: None,
    };

    let mut out = Vec::new();
    for lemma in ["jav-1", "jav-2"] {
        let mut checked = 0;
        let mut cx = None;
        'pairs: for a in 0..n_el {
            for b in 0..n_el {
                let ab_zero = t.is_zero(t.prod[a][b]);
                for s in 0..=grid {
                    for n in 1..=grid {
                        let w = &t.images[(n * s) as usize];
                        let both = t.is_zero(t.prod[a][w[b]]) && t.is_zero(t.prod[w[a]][b]);
                        let (hyp, concl) = if lemma == "jav-1" {
                            (ab_zero, both)
                        } else {
                            (both, ab_zero)
                        };
                        if hyp {
                            checked += 1;
                            if !concl {
                                cx = Some(format!("a={}, b={}, s={s}, n={n}", fmt(a), fmt(b)));
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        out.push(report(lemma, checked, cx));
    }

    let mut checked = 0;
    let mut cx = None;
    'kav: for a in 0..n_el {
        for b in 0..n_el {
            let ab = t.prod[a][b];
            for s in 0..=grid as usize {
                if !t.is_zero(t.images[s][ab]) {
                    continue;
                }
                for s2 in 0..=grid as usize {
                    checked += 1;
                    let lhs = t.prod[t.images[s + s2][a]][t.images[s][b]];
                    if !t.is_zero(lhs) {
                        cx = Some(format!("a={}, b={}, s={s}, s'={s2}", fmt(a), fmt(b)));
                        break 'kav;
                    }
                }
            }
        }
    }
    out.push(report("kav", checked, cx));
    Ok(out)
}

/// Searches canonical elements of level ≤ `max_level` for a nonzero `a`
/// with `a·ᾱ(a) = 0`, where ᾱ is the induced automorphism of A(R, α).
pub fn jordan_rigidity_search(j: &JordanRing, max_level: u64) -> Result<PropertyReport> {
    let els = j.canonical_elements(max_level)?;
    let cx = els.iter().find(|a| {
        !CoeffRing::is_zero(j, a) && CoeffRing::is_zero(j, &j.mul(a, &j.alpha_pow(a, 1)))
    });
    Ok(PropertyReport {
        property: "rigidity of the induced automorphism".into(),
        universe: format!(
            "A({}, {}), level ≤ {max_level}",
            j.ring(),
            j.alpha().label()
        ),
        counterexample: cx
            .map(|a: &JordanElement| format!("level {}, rep {}", a.level, j.ring().format(&a.rep))),
        exhaustive: true,
        checked: els.len(),
        seed: None,
    })
}

/// Exhaustive domain check: no two nonzero elements multiply to zero.
pub fn zero_divisor_search(ctx: &SkewContext) -> Result<PropertyReport> {
    let t = OmegaTable::new(ctx, 0)?;
    let n = t.els.len();
    let cx = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .find(|&(a, b)| !t.is_zero(a) && !t.is_zero(b) && t.is_zero(t.prod[a][b]));
    let r = ctx.ring();
    Ok(PropertyReport {
        property: "no zero divisors".into(),
        universe: format!("{r}, all pairs"),
        counterexample: cx
            .map(|(a, b)| format!("{} * {}", r.format(&t.els[a]), r.format(&t.els[b]))),
        exhaustive: true,
        checked: n * n,
        seed: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::Monoid;
    use crate::ring::{Endo, Ring};
    use crate::series::OmegaRule;

    #[test]
    fn lemma_suite_passes_on_reduced_residue_rings() {
        for n in [2, 3, 5, 6, 10] {
            let ctx = SkewContext::identity(&Ring::zmod(n).unwrap(), Monoid::nat());
            let reps = rigid_lemma_suite(&ctx, DEFAULT_LEMMA_GRID).unwrap();
            assert_eq!(reps.len(), 3);
            assert!(
                reps.iter().all(|r| r.passed() && r.checked > 0),
                "Z/{n}: {reps:?}"
            );
        }
    }

    #[test]
    fn lemma_suite_passes_with_frobenius_twist() {
        let gf4 = Ring::galois(2, 2).unwrap();
        let ctx = SkewContext::new(
            &gf4,
            Monoid::nat(),
            OmegaRule::Power(Endo::frobenius(&gf4).unwrap()),
        )
        .unwrap();
        assert!(rigid_lemma_suite(&ctx, 5)
            .unwrap()
            .iter()
            .all(PropertyReport::passed));
    }

    #[test]
    fn z4_is_rejected_before_checking() {
        let ctx = SkewContext::identity(&Ring::zmod(4).unwrap(), Monoid::nat());
        match rigid_lemma_suite(&ctx, 5) {
            Err(Error::NotRigid(w)) => assert_eq!(w, "2"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn jordan_rings_have_no_rigidity_witness() {
        let gf4 = Ring::galois(2, 2).unwrap();
        let j = JordanRing::new(&Endo::frobenius(&gf4).unwrap()).unwrap();
        assert!(jordan_rigidity_search(&j, 3).unwrap().passed());
        let z6 = Ring::zmod(6).unwrap();
        let j = JordanRing::new(&Endo::identity(&z6)).unwrap();
        assert!(jordan_rigidity_search(&j, 3).unwrap().passed());
    }

    #[test]
    fn domain_checks() {
        let z5 = SkewContext::identity(&Ring::zmod(5).unwrap(), Monoid::nat());
        assert!(zero_divisor_search(&z5).unwrap().passed());
        let z6 = SkewContext::identity(&Ring::zmod(6).unwrap(), Monoid::nat());
        assert_eq!(
            zero_divisor_search(&z6).unwrap().counterexample.as_deref(),
            Some("2 * 3")
        );
    }
}
