use proptest::prelude::*;

use sgps_core::lab::{intersection_powers, leading_coeff_ideal_sample};
use sgps_core::laurent::jordan::JordanRing;
use sgps_core::laurent::{SkewPoly, TwistedBase};
use sgps_core::ring::props::Side;
use sgps_core::{Elem, Endo, Monoid, MonoidElement, OmegaRule, Ring, Series, SkewContext};

fn z6_nat() -> SkewContext {
    SkewContext::identity(&Ring::zmod(6).unwrap(), Monoid::nat())
}

fn gf4_frob() -> SkewContext {
    let gf4 = Ring::galois(2, 2).unwrap();
    SkewContext::new(
        &gf4,
        Monoid::nat(),
        OmegaRule::Power(Endo::frobenius(&gf4).unwrap()),
    )
    .unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec((0u8..6, 0u8..16), 0..5)
}

fn series(ctx: &SkewContext, ts: &[(u8, u8)]) -> Series {
    let r = ctx.ring();
    let els = r.elements().unwrap();
    Series::new(
        ctx,
        ts.iter().map(|&(s, c)| {
            (
                MonoidElement::int(s as i64),
                els[c as usize % els.len()].clone(),
            )
        }),
        None,
    )
    .unwrap()
}

proptest! {
    #[test]
    fn series_ring_axioms(a in terms(), b in terms(), c in terms(), twisted in any::<bool>()) {
        let ctx = if twisted { gf4_frob() } else { z6_nat() };
        let (f, g, h) = (series(&ctx, &a), series(&ctx, &b), series(&ctx, &c));
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
        prop_assert_eq!(
            f.mul(&g.add(&h).unwrap()).unwrap(),
            f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(
            f.add(&g).unwrap().mul(&h).unwrap(),
            f.mul(&h).unwrap().add(&g.mul(&h).unwrap()).unwrap()
        );
        prop_assert_eq!(f.mul(&Series::one(&ctx)).unwrap(), f.clone());
    }

    #[test]
    fn inverses_replay_up_to_the_cutoff(lead in 1u64..5, rest in prop::collection::vec((1u8..20, 0u64..5), 0..6)) {
        let ctx = SkewContext::identity(&Ring::zmod(5).unwrap(), Monoid::nat());
        let cut = MonoidElement::int(12);
        let f = Series::new(
            &ctx,
            std::iter::once((MonoidElement::zero(), Elem::Res(lead)))
                .chain(rest.iter().map(|&(s, c)| (MonoidElement::int(s as i64), Elem::Res(c)))),
            None,
        ).unwrap();
        let g = f.invert(&cut).unwrap();
        let one = Series::one(&ctx).truncate(&cut);
        prop_assert_eq!(f.mul(&g).unwrap().truncate(&cut), one.clone());
        prop_assert_eq!(g.mul(&f).unwrap().truncate(&cut), one);
    }

    #[test]
    fn divisibility_witnesses_replay(a in terms(), b in terms()) {
        let ctx = z6_nat();
        let (f, g) = (series(&ctx, &a), series(&ctx, &b));
        let fg = g.mul(&f).unwrap();
        if let sgps_core::DivisibilityResult::Yes(h) = fg.divide_right(&g, 2000).unwrap() {
            prop_assert_eq!(g.mul(&h).unwrap(), fg.clone());
        }
        if let sgps_core::DivisibilityResult::Yes(h) = fg.divide_left(&f, 2000).unwrap() {
            prop_assert_eq!(h.mul(&f).unwrap(), fg);
        }
    }

    #[test]
    fn skew_polynomials_associate(a in terms(), b in terms(), c in terms()) {
        let gf4 = Ring::galois(2, 2).unwrap();
        let base = TwistedBase::new(&Endo::frobenius(&gf4).unwrap()).unwrap();
        let els = gf4.elements().unwrap();
        let poly = |ts: &[(u8, u8)]| SkewPoly::new(&base, ts.iter().map(|&(d, c)| (d as u64, els[c as usize % 4].clone())));
        let (f, g, h) = (poly(&a), poly(&b), poly(&c));
        prop_assert_eq!(f.mul(&g).unwrap().mul(&h).unwrap(), f.mul(&g.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn jordan_iso_is_multiplicative(i in 0u64..4, j in 0u64..4, k in 0u64..4, l in 0u64..4, r in 0usize..4, s in 0usize..4) {
        let gf4 = Ring::galois(2, 2).unwrap();
        let jr = JordanRing::new(&Endo::frobenius(&gf4).unwrap()).unwrap();
        let els = gf4.elements().unwrap();
        let x = (i, els[r].clone(), j);
        let y = (k, els[s].clone(), l);
        let prod = jr.iso(std::slice::from_ref(&x)).mul(&jr.iso(std::slice::from_ref(&y))).unwrap();
        prop_assert_eq!(prod, jr.iso(&[jr.triple_mul(&x, &y)]));
    }

    #[test]
    fn leading_ideal_sample_is_monotone(a in terms(), cut in 1usize..12) {
        let ctx = z6_nat();
        let f = series(&ctx, &a);
        let pool: Vec<Series> = (0..6u64)
            .flat_map(|r| (0..2).map(move |s| (r, s)))
            .map(|(r, s)| Series::new(&ctx, [(MonoidElement::int(s), Elem::Res(r))], None).unwrap())
            .collect();
        let small = leading_coeff_ideal_sample(&f, Some(&pool[..cut])).unwrap();
        let big = leading_coeff_ideal_sample(&f, Some(&pool)).unwrap();
        prop_assert!(small.iter().all(|e| big.contains(e)));
    }

    #[test]
    fn power_intersection_matches_a_high_power(n in 2u64..30, x in 0u64..30) {
        let r = Ring::zmod(n).unwrap();
        let x = Elem::Res(x % n);
        let xn = r.pow(&x, n);
        let oracle: std::collections::BTreeSet<Elem> = r.elements().unwrap().iter().map(|a| r.mul(a, &xn)).collect();
        let stable = intersection_powers(&r, &x, Side::Left).unwrap();
        prop_assert_eq!(stable.into_iter().collect::<std::collections::BTreeSet<_>>(), oracle);
    }
}
