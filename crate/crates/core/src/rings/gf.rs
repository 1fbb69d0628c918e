//! Finite fields GF(p^k) as polynomials over Z/p modulo a fixed irreducible.

use crate::error::{Error, Result};

/// GF(p^k) with elements stored as coefficient vectors of length `k`
/// (constant term first) reduced modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisField {
    p: u64,
    k: usize,
    /// Monic modulus, constant term first, length k + 1.
    modulus: Vec<u64>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Remainder of `a` modulo the monic polynomial `m` over Z/p.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = mulmod(lead, c, p);
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

/// All monic polynomials of degree `d` over Z/p in counting order.
fn monic_polys(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut v = Vec::with_capacity(d + 1);
        for _ in 0..d {
            v.push(idx % p);
            idx /= p;
        }
        v.push(1);
        v
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    (1..=d / 2).all(|e| monic_polys(p, e).all(|g| !poly_rem(f, &g, p).is_empty()))
}

impl GaloisField {
    /// GF(p^k) using the first monic irreducible polynomial of degree k in
    /// counting order (x^2 + x + 1 for GF(4)).
    pub fn new(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadField(format!(
                "GF characteristic {p} is not prime"
            )));
        }
        if k == 0 {
            return Err(Error::BadField(
                "GF extension degree must be positive".into(),
            ));
        }
        if (p as f64).powi(k as i32) > 1e9 {
            return Err(Error::BadField(format!("GF({p}^{k}) is too large")));
        }
        let modulus = monic_polys(p, k)
            .find(|f| is_irreducible(f, p))
            .ok_or_else(|| Error::BadField(format!("no irreducible of degree {k} over F_{p}")))?;
        Ok(Self { p, k, modulus })
    }

    /// GF(p^k) with an explicit modulus, validated for irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::BadField(format!(
                "GF characteristic {p} is not prime"
            )));
        }
        let modulus = trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::BadField(
                "modulus must be monic of positive degree".into(),
            ));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::BadField(format!("modulus {modulus:?} is reducible")));
        }
        Ok(Self {
            p,
            k: modulus.len() - 1,
            modulus,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k as u32)
    }

    fn pad(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.resize(self.k, 0);
        v
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.k]
    }

    pub fn one(&self) -> Vec<u64> {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = n.rem_euclid(self.p as i64) as u64;
        v
    }

    /// The class of the polynomial variable (the generator `w`).
    pub fn generator(&self) -> Vec<u64> {
        self.reduce(&[0, 1])
    }

    pub fn reduce(&self, coeffs: &[u64]) -> Vec<u64> {
        let c: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        self.pad(poly_rem(&c, &self.modulus, self.p))
    }

    pub fn is_valid(&self, a: &[u64]) -> bool {
        a.len() == self.k && a.iter().all(|&c| c < self.p)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().map(|x| (self.p - x) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; 2 * self.k];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mulmod(x, y, self.p)) % self.p;
            }
        }
        self.reduce(&prod)
    }

    pub fn pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inverse(&self, a: &[u64]) -> Option<Vec<u64>> {
        if a.iter().all(|&c| c == 0) {
            None
        } else {
            Some(self.pow(a, self.order() - 2))
        }
    }

    /// x ↦ x^p.
    pub fn frobenius(&self, a: &[u64]) -> Vec<u64> {
        self.pow(a, self.p)
    }

    /// Elements in counting order: index i has base-p digits as coefficients.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.order())
            .map(|mut idx| {
                (0..self.k)
                    .map(|_| {
                        let d = idx % self.p;
                        idx /= self.p;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    /// Polynomial display in the generator `w`, e.g. `w+1`.
    pub fn format(&self, a: &[u64]) -> String {
        let mut parts = Vec::new();
        for (i, &c) in a.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mon = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            parts.push(match (c, i) {
                (_, 0) => c.to_string(),
                (1, _) => mon,
                _ => format!("{c}{mon}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_modulus_and_generator_relation() {
        let f = GaloisField::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = f.generator();
        // w^2 = w + 1
        assert_eq!(f.mul(&w, &w), vec![1, 1]);
        assert_eq!(f.format(&f.mul(&w, &w)), "w+1");
    }

    #[test]
    fn frobenius_of_gf4_swaps_w_and_w_plus_one() {
        let f = GaloisField::new(2, 2).unwrap();
        assert_eq!(f.frobenius(&[0, 1]), vec![1, 1]);
        assert_eq!(f.frobenius(&[1, 1]), vec![0, 1]);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for (p, k) in [(2, 3), (3, 2), (5, 1)] {
            let f = GaloisField::new(p, k).unwrap();
            for a in f.elements().into_iter().skip(1) {
                let inv = f.inverse(&a).unwrap();
                assert_eq!(f.mul(&a, &inv), f.one());
            }
        }
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(GaloisField::with_modulus(2, vec![1, 0, 1]).is_err());
        assert!(GaloisField::new(4, 1).is_err());
    }
}
