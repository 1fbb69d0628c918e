//! Named example algebras and their endomorphisms.

use super::algebra::{AlgPoly, Monomial, RewriteSystem, Rule, TruncationPolicy};
use crate::error::{Error, Result};
use crate::ring::endo::VarImage;
use crate::ring::{Endo, Ring};

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn zero_rule(lhs: Vec<u32>) -> Rule {
    Rule {
        lhs: Monomial(lhs),
        rhs: AlgPoly::zero(),
    }
}

/// `k[a1..aN] / (a_n^2 - a_n a_{n-1} : n >= 2)`, oriented as
/// `a_n^2 -> a_{n-1} a_n`.
pub fn heinzer_lantz(field: &Ring, n: usize, degree_cap: Option<usize>) -> Result<Ring> {
    let rules = (1..n as u32)
        .map(|i| Rule {
            lhs: Monomial(vec![i, i]),
            rhs: AlgPoly::monomial(Monomial(vec![i - 1, i]), field.one()),
        })
        .collect();
    Ring::quotient(
        field,
        names("a", n),
        TruncationPolicy {
            num_vars: n,
            degree_cap,
        },
        RewriteSystem {
            rules,
            commutative: true,
            weights: None,
        },
    )
}

/// Which pairs `x_i x_j` are declared zero in the free-algebra example.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrthogonalReading {
    /// Every product of two distinct variables, in both orders.
    AllDistinct,
    /// Only `x_1 x_j` for `j != 1`.
    FirstIndexOne,
    /// Only `x_i x_j` for `i < j`.
    IncreasingPairs,
}

impl OrthogonalReading {
    pub const ALL: [OrthogonalReading; 3] = [
        Self::AllDistinct,
        Self::FirstIndexOne,
        Self::IncreasingPairs,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Self::AllDistinct => "all i != j",
            Self::FirstIndexOne => "x1*xj, j != 1",
            Self::IncreasingPairs => "i < j",
        }
    }

    fn kills(self, i: u32, j: u32) -> bool {
        match self {
            Self::AllDistinct => i != j,
            Self::FirstIndexOne => i == 0 && j != 0,
            Self::IncreasingPairs => i < j,
        }
    }
}

/// `k<x1..xN> / (x_i x_j)` for the pairs selected by `reading`.
pub fn orthogonal_free(
    field: &Ring,
    n: usize,
    reading: OrthogonalReading,
    degree_cap: Option<usize>,
) -> Result<Ring> {
    let n32 = n as u32;
    let rules = (0..n32)
        .flat_map(|i| (0..n32).map(move |j| (i, j)))
        .filter(|&(i, j)| reading.kills(i, j))
        .map(|(i, j)| zero_rule(vec![i, j]))
        .collect();
    Ring::quotient(
        field,
        names("x", n),
        TruncationPolicy {
            num_vars: n,
            degree_cap,
        },
        RewriteSystem {
            rules,
            commutative: false,
            weights: None,
        },
    )
}

/// `k[v1..vN] / (v_i^2)`.
pub fn exterior(field: &Ring, n: usize) -> Result<Ring> {
    let rules = (0..n as u32).map(|i| zero_rule(vec![i, i])).collect();
    Ring::quotient(
        field,
        names("v", n),
        TruncationPolicy {
            num_vars: n,
            degree_cap: None,
        },
        RewriteSystem {
            rules,
            commutative: true,
            weights: None,
        },
    )
}

/// `v_i -> v_{i+1}` for even `i`, `v_i -> 0` for odd `i`; the image of
/// `v_N` lies beyond the materialized variables when `N` is even.
pub fn exterior_shift(r: &Ring) -> Result<Endo> {
    let alg = r
        .algebra()
        .ok_or_else(|| Error::NotEndomorphism(format!("{r} has no variables")))?;
    let n = alg.policy().num_vars;
    let images = (0..n)
        .map(|j| {
            if (j + 1) % 2 == 1 {
                VarImage::Elem(r.zero())
            } else if j + 1 < n {
                VarImage::Elem(r.var(j + 1))
            } else {
                VarImage::Beyond
            }
        })
        .collect();
    Endo::varmap(r, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Elem;

    #[test]
    fn heinzer_lantz_identities() {
        let q = Ring::rationals();
        let s = heinzer_lantz(&q, 3, None).unwrap();
        let (a1, a2, a3) = (s.var(0), s.var(1), s.var(2));
        let d = s.sub(&a1, &a2);
        let x = s.mul(&a3, &d);
        assert_eq!(s.format(&x), "a1*a3 - a2*a3");
        assert!(s.mul(&x, &x).is_zero());
        let a3sq = s.mul(&a3, &a3);
        assert!(s.mul(&a3sq, &s.mul(&d, &d)).is_zero());
    }

    #[test]
    fn orthogonal_products() {
        let f2 = Ring::zmod(2).unwrap();
        let r = orthogonal_free(&f2, 8, OrthogonalReading::AllDistinct, None).unwrap();
        for j in 1..8 {
            assert!(r.mul(&r.var(0), &r.var(j)).is_zero());
            assert!(r.mul(&r.var(j), &r.var(0)).is_zero());
        }
        assert!(!r.mul(&r.var(0), &r.var(0)).is_zero());
        let inc = orthogonal_free(&f2, 4, OrthogonalReading::IncreasingPairs, None).unwrap();
        assert!(!inc.mul(&inc.var(1), &inc.var(0)).is_zero());
    }

    #[test]
    fn exterior_shift_is_endomorphism() {
        let q = Ring::rationals();
        let r = exterior(&q, 6).unwrap();
        let a = exterior_shift(&r).unwrap();
        assert_eq!(a.escaped(), &[5]);
        assert_eq!(a.apply(&r.var(1)), r.var(2));
        assert!(a.apply(&r.var(2)).is_zero());
        assert_eq!(a.apply(&r.one()), r.one());
        a.check_homomorphism(200, 3).unwrap();
    }

    #[test]
    fn non_relation_preserving_map_rejected() {
        let q = Ring::rationals();
        let r = exterior(&q, 2).unwrap();
        let img = r.add(&r.var(0), &r.one());
        let err = Endo::varmap(&r, vec![VarImage::Elem(img), VarImage::Elem(r.var(1))]);
        assert!(matches!(err, Err(Error::NotWellDefined(_))));
        let _ = Elem::Res(0);
    }
}
