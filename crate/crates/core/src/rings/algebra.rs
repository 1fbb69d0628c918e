//! Truncated quotient algebras `k<x1..xN> / (rules)` over a field, with
//! elements kept in rewriting normal form.
//!
//! Monomials are words over variable indices. In a commutative algebra the
//! word is kept sorted, so the same `Vec<u32>` serves as a multiset. Words are
//! ordered degree-lexicographically, which is a monomial order on both the
//! free monoid and the free commutative monoid.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use rand::Rng;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// Upper bound on the number of basis monomials materialized at once.
pub const BASIS_LIMIT: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn vars(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite map monomial → nonzero field coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgPoly {
    terms: BTreeMap<Monomial, Elem>,
}

impl AlgPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Elem)>, field: &Ring) -> Self {
        let mut out = BTreeMap::new();
        for (m, c) in terms {
            accumulate(&mut out, m, c, field);
        }
        Self { terms: out }
    }

    pub fn monomial(m: Monomial, c: Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Elem)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Elem> {
        self.terms.get(m)
    }

    /// Total degree (maximum monomial length); `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Largest monomial in degree-lex order with its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next_back()
    }

    /// Smallest monomial in degree-lex order with its coefficient.
    pub fn lowest(&self) -> Option<(&Monomial, &Elem)> {
        self.terms.iter().next()
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Elem>, m: Monomial, c: Elem, field: &Ring) {
    if c.is_zero() {
        return;
    }
    match map.remove(&m) {
        Some(old) => {
            let s = field.add(&old, &c);
            if !s.is_zero() {
                map.insert(m, s);
            }
        }
        None => {
            map.insert(m, c);
        }
    }
}

/// One oriented relation `lhs -> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: AlgPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteSystem {
    pub rules: Vec<Rule>,
    pub commutative: bool,
    /// Per-variable positive weights; defaults to `i + 1` for variable `i`.
    pub weights: Option<Vec<u64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationPolicy {
    pub num_vars: usize,
    /// Monomials of total degree above the cap are identified with zero.
    pub degree_cap: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Redex {
    /// Factor starting at this position (noncommutative).
    At(usize),
    /// Remaining multiset after removing the left side (commutative).
    Rest(Vec<u32>),
}

#[derive(Debug)]
pub struct QuotientAlgebra {
    field: Ring,
    names: Vec<String>,
    policy: TruncationPolicy,
    commutative: bool,
    rules: Vec<Rule>,
    weights: Vec<u64>,
    index: HashMap<Vec<u32>, usize>,
    lhs_lens: Vec<usize>,
    graded: bool,
    monomial_only: bool,
}

fn merge_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a \ b` for sorted multisets when `b ⊆ a`.
fn multiset_minus(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(a.len());
    let mut j = 0;
    for &x in a {
        if j < b.len() && b[j] == x {
            j += 1;
        } else if j < b.len() && b[j] < x {
            return None;
        } else {
            out.push(x);
        }
    }
    (j == b.len()).then_some(out)
}

impl QuotientAlgebra {
    pub fn new(
        field: Ring,
        names: Vec<String>,
        policy: TruncationPolicy,
        system: RewriteSystem,
    ) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::BadField(format!(
                "{} is not a field",
                field.descriptor()
            )));
        }
        if names.len() != policy.num_vars || policy.num_vars == 0 {
            return Err(Error::BadParameter(format!(
                "expected {} variable names, got {}",
                policy.num_vars,
                names.len()
            )));
        }
        let n = policy.num_vars as u32;
        let weights = system
            .weights
            .clone()
            .unwrap_or_else(|| (1..=policy.num_vars as u64).collect());
        if weights.len() != policy.num_vars || weights.contains(&0) {
            return Err(Error::BadParameter(
                "weights must be positive, one per variable".into(),
            ));
        }
        let commutative = system.commutative;
        let canon = |m: &Monomial| -> Monomial {
            let mut v = m.0.clone();
            if commutative {
                v.sort_unstable();
            }
            Monomial(v)
        };
        let mut rules: Vec<Rule> = Vec::new();
        let mut index: HashMap<Vec<u32>, usize> = HashMap::new();
        for rule in &system.rules {
            if rule.lhs.0.is_empty() {
                return Err(Error::BadParameter("rule with empty left side".into()));
            }
            let lhs = canon(&rule.lhs);
            let rhs =
                AlgPoly::from_terms(rule.rhs.terms().map(|(m, c)| (canon(m), c.clone())), &field);
            for m in std::iter::once(&lhs).chain(rhs.terms().map(|(m, _)| m)) {
                if m.0.iter().any(|&v| v >= n) {
                    return Err(Error::BadParameter(format!(
                        "rule mentions a variable beyond {}",
                        policy.num_vars
                    )));
                }
            }
            let rule = Rule { lhs, rhs };
            if let Some(&prev) = index.get(&rule.lhs.0) {
                if rules[prev].rhs != rule.rhs {
                    return Err(Error::NonConfluent(format!(
                        "two rules rewrite the same monomial {:?}",
                        rule.lhs.0
                    )));
                }
                continue;
            }
            index.insert(rule.lhs.0.clone(), rules.len());
            rules.push(rule);
        }
        let mut lhs_lens: Vec<usize> = rules.iter().map(|r| r.lhs.degree()).collect();
        lhs_lens.sort_unstable();
        lhs_lens.dedup();
        let graded = rules
            .iter()
            .all(|r| r.rhs.terms().all(|(m, _)| m.degree() == r.lhs.degree()));
        let monomial_only = rules.iter().all(|r| r.rhs.is_zero());
        let alg = Self {
            field,
            names,
            policy,
            commutative,
            rules,
            weights,
            index,
            lhs_lens,
            graded,
            monomial_only,
        };
        alg.check_termination()?;
        if alg.policy.degree_cap.is_some() {
            alg.check_cap_ideal()?;
        }
        alg.check_confluence()?;
        Ok(alg)
    }

    pub fn field(&self) -> &Ring {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn policy(&self) -> TruncationPolicy {
        self.policy
    }

    pub fn is_commutative(&self) -> bool {
        self.commutative
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Every relation is homogeneous (or a monomial killed), so total degree
    /// is a grading and the degree-0 part is multiplicative.
    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// All relations have the form `m -> 0`.
    pub fn is_monomial(&self) -> bool {
        self.monomial_only
    }

    pub fn weight(&self, m: &Monomial) -> u64 {
        m.0.iter().map(|&v| self.weights[v as usize]).sum()
    }

    fn check_termination(&self) -> Result<()> {
        for r in &self.rules {
            let lw = self.weight(&r.lhs);
            if r.rhs.terms().any(|(m, _)| self.weight(m) >= lw) {
                return Err(Error::NonTerminating(self.format_monomial(&r.lhs)));
            }
        }
        Ok(())
    }

    fn check_cap_ideal(&self) -> Result<()> {
        for r in &self.rules {
            if r.rhs.terms().any(|(m, _)| m.degree() < r.lhs.degree()) {
                return Err(Error::CapNotIdeal(self.format_monomial(&r.lhs)));
            }
        }
        Ok(())
    }

    /// Critical-pair check. For a terminating system, joinability of every
    /// critical pair is equivalent to confluence.
    fn check_confluence(&self) -> Result<()> {
        let mut words: Vec<(Vec<u32>, usize, Redex, usize, Redex)> = Vec::new();
        if self.commutative {
            for i in 0..self.rules.len() {
                for j in (i + 1)..self.rules.len() {
                    let (li, lj) = (&self.rules[i].lhs.0, &self.rules[j].lhs.0);
                    if self.rules[i].rhs.is_zero() && self.rules[j].rhs.is_zero() {
                        continue;
                    }
                    if !li.iter().any(|v| lj.contains(v)) {
                        continue;
                    }
                    let lcm = multiset_lcm(li, lj);
                    let ri = multiset_minus(&lcm, li).expect("lcm contains lhs");
                    let rj = multiset_minus(&lcm, lj).expect("lcm contains lhs");
                    words.push((lcm, i, Redex::Rest(ri), j, Redex::Rest(rj)));
                }
            }
        } else {
            let mut prefixes: HashMap<&[u32], Vec<usize>> = HashMap::new();
            for (j, r) in self.rules.iter().enumerate() {
                for k in 1..r.lhs.0.len() {
                    prefixes.entry(&r.lhs.0[..k]).or_default().push(j);
                }
            }
            for (i, ri) in self.rules.iter().enumerate() {
                let li = &ri.lhs.0;
                // inclusions
                for pos in 0..li.len() {
                    for &len in &self.lhs_lens {
                        if pos + len > li.len() || (pos == 0 && len == li.len()) {
                            continue;
                        }
                        if let Some(&j) = self.index.get(&li[pos..pos + len]) {
                            if ri.rhs.is_zero() && self.rules[j].rhs.is_zero() {
                                continue;
                            }
                            words.push((li.clone(), i, Redex::At(0), j, Redex::At(pos)));
                        }
                    }
                }
                // proper overlaps: suffix of li = proper prefix of lj
                for k in 1..li.len() {
                    if let Some(js) = prefixes.get(&li[k..]) {
                        for &j in js {
                            if ri.rhs.is_zero() && self.rules[j].rhs.is_zero() {
                                continue;
                            }
                            let mut w = li.clone();
                            w.extend_from_slice(&self.rules[j].lhs.0[li.len() - k..]);
                            words.push((w, i, Redex::At(0), j, Redex::At(k)));
                        }
                    }
                }
            }
        }
        let one = self.field.one();
        for (w, i, ri, j, rj) in words {
            let a = self.reduce_with(self.rewrite(&w, i, &ri, &one), None);
            let b = self.reduce_with(self.rewrite(&w, j, &rj, &one), None);
            if a != b {
                return Err(Error::NonConfluent(format!(
                    "{} reduces to {} and to {}",
                    self.format_monomial(&Monomial(w)),
                    self.format(&a),
                    self.format(&b)
                )));
            }
        }
        Ok(())
    }

    fn find_redex(&self, m: &[u32]) -> Option<(usize, Redex)> {
        if self.commutative {
            self.rules.iter().enumerate().find_map(|(i, r)| {
                if r.lhs.0.len() > m.len() {
                    return None;
                }
                multiset_minus(m, &r.lhs.0).map(|rest| (i, Redex::Rest(rest)))
            })
        } else {
            for pos in 0..m.len() {
                for &len in &self.lhs_lens {
                    if pos + len > m.len() {
                        break;
                    }
                    if let Some(&i) = self.index.get(&m[pos..pos + len]) {
                        return Some((i, Redex::At(pos)));
                    }
                }
            }
            None
        }
    }

    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.find_redex(&m.0).is_none()
    }

    fn rewrite(&self, m: &[u32], rule: usize, redex: &Redex, c: &Elem) -> AlgPoly {
        let r = &self.rules[rule];
        let terms = r.rhs.terms().map(|(rm, rc)| {
            let word = match redex {
                Redex::At(pos) => {
                    let mut w = m[..*pos].to_vec();
                    w.extend_from_slice(&rm.0);
                    w.extend_from_slice(&m[pos + r.lhs.0.len()..]);
                    w
                }
                Redex::Rest(rest) => merge_sorted(rest, &rm.0),
            };
            (Monomial(word), self.field.mul(c, rc))
        });
        AlgPoly::from_terms(terms.collect::<Vec<_>>(), &self.field)
    }

    /// Normal form under the rules, with the given degree cap.
    pub fn reduce_with(&self, p: AlgPoly, cap: Option<usize>) -> AlgPoly {
        let mut out = BTreeMap::new();
        let mut stack: Vec<(Monomial, Elem)> = p.terms.into_iter().collect();
        while let Some((m, c)) = stack.pop() {
            if cap.is_some_and(|d| m.degree() > d) {
                continue;
            }
            match self.find_redex(&m.0) {
                None => accumulate(&mut out, m, c, &self.field),
                Some((rule, redex)) => {
                    let r = self.rewrite(&m.0, rule, &redex, &c);
                    stack.extend(r.terms);
                }
            }
        }
        AlgPoly { terms: out }
    }

    /// Normal form in the truncated quotient.
    pub fn reduce(&self, p: AlgPoly) -> AlgPoly {
        self.reduce_with(p, self.policy.degree_cap)
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Monomial {
        if self.commutative {
            Monomial(merge_sorted(&a.0, &b.0))
        } else {
            let mut w = a.0.clone();
            w.extend_from_slice(&b.0);
            Monomial(w)
        }
    }

    fn raw_mul(&self, a: &AlgPoly, b: &AlgPoly, cap: Option<usize>) -> AlgPoly {
        let mut out = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if cap.is_some_and(|d| ma.degree() + mb.degree() > d) {
                    continue;
                }
                accumulate(
                    &mut out,
                    self.mul_monomials(ma, mb),
                    self.field.mul(ca, cb),
                    &self.field,
                );
            }
        }
        AlgPoly { terms: out }
    }

    pub fn mul_with(&self, a: &AlgPoly, b: &AlgPoly, cap: Option<usize>) -> AlgPoly {
        self.reduce_with(self.raw_mul(a, b, cap), cap)
    }

    pub fn mul(&self, a: &AlgPoly, b: &AlgPoly) -> AlgPoly {
        self.mul_with(a, b, self.policy.degree_cap)
    }

    pub fn add(&self, a: &AlgPoly, b: &AlgPoly) -> AlgPoly {
        let mut out = a.terms.clone();
        for (m, c) in &b.terms {
            accumulate(&mut out, m.clone(), c.clone(), &self.field);
        }
        AlgPoly { terms: out }
    }

    pub fn neg(&self, a: &AlgPoly) -> AlgPoly {
        AlgPoly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.field.neg(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Elem, a: &AlgPoly) -> AlgPoly {
        AlgPoly::from_terms(
            a.terms
                .iter()
                .map(|(m, x)| (m.clone(), self.field.mul(c, x)))
                .collect::<Vec<_>>(),
            &self.field,
        )
    }

    pub fn constant(&self, c: Elem) -> AlgPoly {
        AlgPoly::monomial(Monomial::one(), c)
    }

    pub fn one(&self) -> AlgPoly {
        self.constant(self.field.one())
    }

    /// The variable with 0-based index `i`, in normal form.
    pub fn var(&self, i: usize) -> AlgPoly {
        self.reduce(AlgPoly::monomial(
            Monomial(vec![i as u32]),
            self.field.one(),
        ))
    }

    pub fn constant_term(&self, a: &AlgPoly) -> Elem {
        a.coeff(&Monomial::one())
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_valid(&self, a: &AlgPoly) -> bool {
        a.terms().all(|(m, c)| {
            !c.is_zero()
                && self.field.contains(c)
                && m.0.iter().all(|&v| (v as usize) < self.policy.num_vars)
                && (!self.commutative || m.0.windows(2).all(|w| w[0] <= w[1]))
                && self.policy.degree_cap.is_none_or(|d| m.degree() <= d)
                && self.is_normal(m)
        })
    }

    /// Normal monomials of degree at most `max_degree`, in degree-lex order.
    pub fn basis(&self, max_degree: usize) -> Result<Vec<Monomial>> {
        let n = self.policy.num_vars as u32;
        let mut all = vec![Monomial::one()];
        let mut level = vec![Vec::<u32>::new()];
        for _ in 0..max_degree {
            let mut next = Vec::new();
            for w in &level {
                let start = if self.commutative {
                    w.last().copied().unwrap_or(0)
                } else {
                    0
                };
                for v in start..n {
                    let mut x = w.clone();
                    x.push(v);
                    if self.find_redex(&x).is_none() {
                        next.push(x);
                    }
                }
                if all.len() + next.len() > BASIS_LIMIT {
                    return Err(Error::TooLarge(format!(
                        "more than {BASIS_LIMIT} normal monomials of degree <= {max_degree}"
                    )));
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned().map(Monomial));
            level = next;
        }
        Ok(all)
    }

    /// The full monomial basis of the truncated quotient, when finite.
    pub fn finite_basis(&self) -> Option<Vec<Monomial>> {
        match self.policy.degree_cap {
            Some(d) => self.basis(d).ok(),
            None => {
                const MAX_LEN: usize = 64;
                let b = self.basis(MAX_LEN).ok()?;
                let top = b.last().map_or(0, Monomial::degree);
                (top < MAX_LEN).then_some(b)
            }
        }
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgPoly {
        let max_deg = self.policy.degree_cap.unwrap_or(3).min(3);
        let nterms = rng.gen_range(0..=4);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let len = rng.gen_range(0..=max_deg);
            let mut w: Vec<u32> = (0..len)
                .map(|_| rng.gen_range(0..self.policy.num_vars as u32))
                .collect();
            if self.commutative {
                w.sort_unstable();
            }
            terms.push((Monomial(w), self.field.random_nonzero(rng)));
        }
        self.reduce(AlgPoly::from_terms(terms, &self.field))
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.0.is_empty() {
            return "1".into();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < m.0.len() {
            let v = m.0[i];
            let mut j = i;
            while j < m.0.len() && m.0[j] == v {
                j += 1;
            }
            let name = &self.names[v as usize];
            parts.push(if j - i == 1 {
                name.clone()
            } else {
                format!("{name}^{}", j - i)
            });
            i = j;
        }
        parts.join("*")
    }

    pub fn format(&self, a: &AlgPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in a.terms.iter().enumerate() {
            let (neg, mag) = self.field.split_sign(c);
            let cs = self.field.format(&mag);
            let needs_parens = cs.contains('+') || cs.contains('-');
            let coeff = if needs_parens { format!("({cs})") } else { cs };
            let body = match (m.0.is_empty(), self.field.is_one(&mag)) {
                (true, _) => coeff,
                (false, true) => self.format_monomial(m),
                (false, false) => format!("{coeff}*{}", self.format_monomial(m)),
            };
            match (k, neg) {
                (0, false) => out.push_str(&body),
                (0, true) => {
                    out.push('-');
                    out.push_str(&body)
                }
                (_, false) => {
                    out.push_str(" + ");
                    out.push_str(&body)
                }
                (_, true) => {
                    out.push_str(" - ");
                    out.push_str(&body)
                }
            }
        }
        out
    }
}

fn multiset_lcm(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut counts: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for &x in a {
        counts.entry(x).or_default().0 += 1;
    }
    for &x in b {
        counts.entry(x).or_default().1 += 1;
    }
    counts
        .into_iter()
        .flat_map(|(v, (ca, cb))| std::iter::repeat_n(v, ca.max(cb)))
        .collect()
}
