//! Exact linear algebra over a field handle (ℚ, 𝔽ₚ, GF(pᵏ)).

use super::{Elem, Ring};

/// Row-reduces `rows` in place to reduced echelon form; returns the pivot
/// column of each remaining nonzero row. Pivots are chosen leftmost first.
pub fn rref(field: &Ring, rows: &mut Vec<Vec<Elem>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = field
            .inverse(&rows[r][c])
            .expect("nonzero field element is invertible");
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x = field.mul(&inv, x);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` where `mat` is given row by row.
pub fn nullspace(field: &Ring, mat: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = mat
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let pivots = rref(field, &mut rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = field.neg(&rows[i][free]);
        }
        basis.push(v);
    }
    basis
}

/// A solution of `M x = b`, if any.
pub fn solve(field: &Ring, mat: &[Vec<Elem>], rhs: &[Elem], ncols: usize) -> Option<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = mat
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let pivots = rref(field, &mut rows, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![field.zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = rows[i][ncols].clone();
    }
    Some(x)
}

/// A subspace kept in reduced echelon form; pivots are the leftmost
/// (smallest-index) coordinates of each basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub rows: Vec<Vec<Elem>>,
    pub pivots: Vec<usize>,
    pub dim_ambient: usize,
}

impl Subspace {
    pub fn span(field: &Ring, vectors: &[Vec<Elem>], ncols: usize) -> Self {
        let mut rows = vectors.to_vec();
        let pivots = rref(field, &mut rows, ncols);
        Self {
            rows,
            pivots,
            dim_ambient: ncols,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, field: &Ring, v: &[Elem]) -> bool {
        let mut w = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if w[c].is_zero() {
                continue;
            }
            let f = w[c].clone();
            for (x, y) in w.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = field.sub(x, &field.mul(&f, y));
                }
            }
        }
        w.iter().all(Elem::is_zero)
    }

    pub fn is_subspace_of(&self, field: &Ring, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(field, r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q(n: i64) -> Elem {
        Elem::Rat(BigRational::from_integer(BigInt::from(n)))
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let f = Ring::rationals();
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        let ns = nullspace(&f, &m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let dot = row
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)));
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = Ring::zmod(2).unwrap();
        let m = vec![
            vec![Elem::Res(1), Elem::Res(1)],
            vec![Elem::Res(1), Elem::Res(1)],
        ];
        assert!(solve(&f, &m, &[Elem::Res(0), Elem::Res(1)], 2).is_none());
        let x = solve(&f, &m, &[Elem::Res(1), Elem::Res(1)], 2).unwrap();
        assert_eq!(f.add(&x[0], &x[1]), Elem::Res(1));
    }
}
