//! Chains of principal one-sided ideals generated by series.

use serde_json::{json, Value};

use crate::error::Result;
use crate::ring::props::Side;
use crate::series::{DivisibilityResult, Series};

/// Containment evidence for one consecutive pair of the chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    /// 1-based index i of the pair (f_i, f_{i+1}).
    pub index: usize,
    pub element: Series,
    /// f_i in the ideal of f_{i+1}.
    pub forward: DivisibilityResult,
    /// f_{i+1} in the ideal of f_i.
    pub backward: DivisibilityResult,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainReport {
    pub side: Side,
    pub steps: Vec<ChainStep>,
    pub last: Option<Series>,
    /// First i with the ideals of f_i and f_{i+1} equal, or f_i a unit.
    pub stabilized_at: Option<usize>,
    pub budget: usize,
}

impl ChainReport {
    /// Every forward containment proven and every backward one refuted.
    pub fn strictly_ascending(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.forward.is_yes() && s.backward.is_no())
    }

    pub fn to_json(&self) -> Value {
        let verdict = |d: &DivisibilityResult| match d {
            DivisibilityResult::Yes(h) => json!({"verdict": "yes", "witness": h.to_json()}),
            DivisibilityResult::No(why) => json!({"verdict": "no", "reason": why}),
            DivisibilityResult::Unknown(why) => json!({"verdict": "unknown", "reason": why}),
        };
        json!({
            "side": self.side,
            "budget": self.budget,
            "stabilized_at": self.stabilized_at,
            "strictly_ascending": self.strictly_ascending(),
            "steps": self.steps.iter().map(|s| json!({
                "i": s.index,
                "f": s.element.format(),
                "forward": verdict(&s.forward),
                "backward": verdict(&s.backward),
            })).collect::<Vec<_>>(),
        })
    }
}

fn divides(f: &Series, g: &Series, side: Side, budget: usize) -> Result<DivisibilityResult> {
    match side {
        Side::Right => f.divide_right(g, budget),
        Side::Left => f.divide_left(g, budget),
    }
}

/// Walks `f_1, …, f_n` from `generator(i)` and classifies each inclusion
/// `f_i A ⊆ f_{i+1} A` (right) or `A f_i ⊆ A f_{i+1}` (left).
pub fn chain_explore(
    generator: impl Fn(usize) -> Result<Series>,
    side: Side,
    n: usize,
    budget: usize,
) -> Result<ChainReport> {
    let elems: Vec<Series> = (1..=n).map(&generator).collect::<Result<_>>()?;
    let mut steps = Vec::new();
    let mut stabilized_at = None;
    for i in 0..elems.len().saturating_sub(1) {
        let (f, g) = (&elems[i], &elems[i + 1]);
        let forward = divides(f, g, side, budget)?;
        let backward = divides(g, f, side, budget)?;
        if stabilized_at.is_none()
            && (f.satisfies_unit_criterion()? || (forward.is_yes() && backward.is_yes()))
        {
            stabilized_at = Some(i + 1);
        }
        steps.push(ChainStep {
            index: i + 1,
            element: f.clone(),
            forward,
            backward,
        });
    }
    if stabilized_at.is_none() {
        if let Some(last) = elems.last() {
            if last.satisfies_unit_criterion()? {
                stabilized_at = Some(elems.len());
            }
        }
    }
    Ok(ChainReport {
        side,
        steps,
        last: elems.last().cloned(),
        stabilized_at,
        budget,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{inverse_power_of_two, Monoid, MonoidElement};
    use crate::ring::{Elem, Ring};
    use crate::series::SkewContext;

    #[test]
    fn halving_exponents_give_a_strict_chain() {
        let ctx = SkewContext::identity(&Ring::zmod(6).unwrap(), Monoid::rat_nonneg());
        let rep = chain_explore(
            |i| Series::e(&ctx, inverse_power_of_two(i as u32 - 1)),
            Side::Right,
            10,
            1000,
        )
        .unwrap();
        assert_eq!(rep.steps.len(), 9);
        assert!(rep.strictly_ascending());
        assert_eq!(rep.stabilized_at, None);
    }

    #[test]
    fn powers_of_two_in_z8_stabilize_at_the_unit() {
        let ctx = SkewContext::identity(&Ring::zmod(8).unwrap(), Monoid::nat());
        let rep = chain_explore(
            |i| Series::c(&ctx, Elem::Res(1 << (3 - i))),
            Side::Right,
            3,
            1000,
        )
        .unwrap();
        assert!(rep.steps.iter().all(|s| s.forward.is_yes()));
        assert!(rep.steps.iter().all(|s| s.backward.is_no()));
        assert_eq!(rep.stabilized_at, Some(3));
    }

    #[test]
    fn constant_chain_stabilizes_immediately() {
        let ctx = SkewContext::identity(&Ring::zmod(6).unwrap(), Monoid::nat());
        let f = Series::e(&ctx, MonoidElement::int(2)).unwrap();
        let rep = chain_explore(|_| Ok(f.clone()), Side::Left, 4, 100).unwrap();
        assert_eq!(rep.stabilized_at, Some(1));
    }
}
