//! Exact rational matrices and fraction-free Gaussian elimination.
//!
//! All kernels and ranks are computed by clearing denominators row-wise and
//! running Bareiss elimination with full pivoting over the integers, so no
//! intermediate result is ever rounded. A machine-word fast path handles the
//! common case; it falls back to arbitrary precision on overflow.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

/// Exact rational scalar, always stored in lowest terms with positive denominator.
pub type Q = BigRational;

/// Parse a rational from `"p/q"` or `"p"` form.
pub fn parse_q(s: &str) -> Option<Q> {
    s.trim().parse::<Q>().ok()
}

pub fn q_from_i64(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Dense matrix over the rationals, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.at(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        debug_assert!(rows.iter().all(|x| x.len() == c));
        QMat { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Q) -> Self {
        let mut m = QMat::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> QMat {
        QMat::from_fn(self.cols, self.rows, |r, c| self.at(c, r).clone())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        let mut out = QMat::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if !b.is_zero() {
                        let v = out.at(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) + other.at(r, c))
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) - other.at(r, c))
    }

    pub fn scale(&self, s: &Q) -> QMat {
        QMat::from_fn(self.rows, self.cols, |r, c| self.at(r, c) * s)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    pub fn block_diag(blocks: &[&QMat]) -> QMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = QMat::zeros(rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for r in 0..b.rows {
                for c in 0..b.cols {
                    out.set(ro + r, co + c, b.at(r, c).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the right null space `{x : Ax = 0}`, deterministic order.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let ech = self.echelon();
        let n = self.cols;
        let rank = ech.rank;
        let mut basis = Vec::with_capacity(n - rank);
        // One kernel vector per free (non-pivot) position, in permuted coordinates.
        for free in rank..n {
            let mut y = vec![Q::zero(); n];
            y[free] = Q::one();
            for k in (0..rank).rev() {
                let mut s = Q::zero();
                for j in (k + 1)..n {
                    if !y[j].is_zero() && !ech.mat.at(k, j).is_zero() {
                        s += ech.mat.at(k, j) * &y[j];
                    }
                }
                y[k] = -s / ech.mat.at(k, k);
            }
            let mut x = vec![Q::zero(); n];
            for (pos, &orig) in ech.col_perm.iter().enumerate() {
                x[orig] = std::mem::take(&mut y[pos]);
            }
            basis.push(x);
        }
        basis
    }

    /// Basis of the column space, as column vectors, deterministic order.
    pub fn column_space(&self) -> Vec<Vec<Q>> {
        let ech = self.transpose().echelon();
        (0..ech.rank)
            .map(|r| (0..self.rows).map(|c| ech.mat.at(r, c).clone()).collect())
            .collect()
    }

    fn echelon(&self) -> Echelon {
        // Clear denominators row by row: the kernel and rank are unchanged.
        let mut int_rows: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut lcm = BigInt::one();
            for c in 0..self.cols {
                let d = self.at(r, c).denom();
                lcm = num::integer::lcm(lcm, d.clone());
            }
            int_rows.push(
                (0..self.cols)
                    .map(|c| {
                        let e = self.at(r, c);
                        e.numer() * (&lcm / e.denom())
                    })
                    .collect(),
            );
        }
        if let Some(e) = echelon_i128(&int_rows, self.cols) {
            return e;
        }
        echelon_bigint(int_rows, self.cols)
    }
}

/// Row echelon data after fraction-free elimination with full pivoting.
/// Columns are permuted so pivots sit at positions `0..rank`.
struct Echelon {
    mat: QMat,
    col_perm: Vec<usize>,
    rank: usize,
}

fn echelon_bigint(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let rows = m.len();
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        // Full pivoting: pick the nonzero entry of smallest magnitude.
        let mut best: Option<(usize, usize)> = None;
        for r in step..rows {
            for c in step..cols {
                if !m[r][c].is_zero()
                    && best.map_or(true, |(br, bc)| m[r][c].magnitude() < m[br][bc].magnitude())
                {
                    best = Some((r, c));
                }
            }
        }
        let (pr, pc) = match best {
            Some(p) => p,
            None => break,
        };
        m.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
            col_perm.swap(step, pc);
        }
        for r in (step + 1)..rows {
            for c in (step + 1)..cols {
                let v = (&m[step][step] * &m[r][c] - &m[r][step] * &m[step][c]) / &prev;
                m[r][c] = v;
            }
            m[r][step] = BigInt::zero();
        }
        prev = m[step][step].clone();
        rank = step + 1;
    }
    let mat = QMat::from_fn(rows, cols, |r, c| Q::from_integer(m[r][c].clone()));
    Echelon { mat, col_perm, rank }
}

fn echelon_i128(rows_in: &[Vec<BigInt>], cols: usize) -> Option<Echelon> {
    let rows = rows_in.len();
    let mut m: Vec<Vec<i128>> = Vec::with_capacity(rows);
    for r in rows_in {
        let mut row = Vec::with_capacity(cols);
        for v in r {
            row.push(i128::try_from(v).ok().filter(|x| x.abs() < i128::MAX >> 2)?);
        }
        m.push(row);
    }
    let mut col_perm: Vec<usize> = (0..cols).collect();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for step in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for r in step..rows {
            for c in step..cols {
                if m[r][c] != 0
                    && best.map_or(true, |(br, bc)| m[r][c].abs() < m[br][bc].abs())
                {
                    best = Some((r, c));
                }
            }
        }
        let (pr, pc) = match best {
            Some(p) => p,
            None => break,
        };
        m.swap(step, pr);
        if pc != step {
            for row in m.iter_mut() {
                row.swap(step, pc);
            }
            col_perm.swap(step, pc);
        }
        for r in (step + 1)..rows {
            for c in (step + 1)..cols {
                let a = m[step][step].checked_mul(m[r][c])?;
                let b = m[r][step].checked_mul(m[step][c])?;
                m[r][c] = a.checked_sub(b)? / prev;
            }
            m[r][step] = 0;
        }
        prev = m[step][step];
        rank = step + 1;
    }
    let mat = QMat::from_fn(rows, cols, |r, c| Q::from_integer(BigInt::from(m[r][c])));
    Some(Echelon { mat, col_perm, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> QMat {
        QMat::from_rows(rows.iter().map(|r| r.iter().map(|&v| q_from_i64(v)).collect()).collect())
    }

    #[test]
    fn rank_and_kernel_small() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(QMat::identity(4).kernel().is_empty());
        assert!(QMat::identity(4).is_invertible());
    }

    #[test]
    fn zero_matrix_kernel_is_full() {
        let m = QMat::zeros(2, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 3);
    }

    #[test]
    fn rational_entries_exact() {
        let mut m = QMat::zeros(2, 2);
        m.set(0, 0, parse_q("1/2").unwrap());
        m.set(0, 1, parse_q("1/3").unwrap());
        m.set(1, 0, parse_q("3/2").unwrap());
        m.set(1, 1, parse_q("1").unwrap());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn bigint_fallback_matches() {
        // Entries large enough to overflow the fast path during elimination.
        let big = i64::MAX / 3;
        let m = qm(&[&[big, big - 1, 1], &[big - 2, big, 2], &[1, 2, 0]]);
        let k = m.kernel();
        assert_eq!(m.rank() + k.len(), 3);
        for v in &k {
            assert!(m.apply(v).iter().all(|x| x.is_zero()));
        }
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(rows in 1usize..5, cols in 1usize..5,
                                     seed in proptest::collection::vec(-8i64..8, 25)) {
            let m = QMat::from_fn(rows, cols, |r, c| q_from_i64(seed[r * 5 + c]));
            let k = m.kernel();
            prop_assert_eq!(m.rank() + k.len(), cols);
            for v in &k {
                prop_assert!(m.apply(v).iter().all(|x| x.is_zero()));
            }
            // Kernel basis is linearly independent: stack as rows, full rank.
            if !k.is_empty() {
                let kb = QMat::from_rows(k.clone());
                prop_assert_eq!(kb.rank(), k.len());
            }
        }
    }
}
