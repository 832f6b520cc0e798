//! Dense matrices over an `InvolutiveField`, with the exact linear algebra
//! the rest of the crate leans on: reduced row echelon form, rank, inverse,
//! right kernels, and deterministic linear solves.
//!
//! A `Mat` stores element codes only; every operation that needs arithmetic
//! takes the field explicitly. Derived `Ord` (rows, cols, then row-major
//! data) gives the canonical element order used for reproducible output.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fel, InvolutiveField};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat {
    rows: usize,
    cols: usize,
    a: Vec<Fel>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn new(rows: usize, cols: usize, a: Vec<Fel>) -> Self {
        assert_eq!(a.len(), rows * cols, "data length must be rows*cols");
        Mat { rows, cols, a }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, a: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Fel>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat { rows: r, cols: c, a: rows.concat() }
    }

    pub fn col_vec(v: &[Fel]) -> Self {
        Mat { rows: v.len(), cols: 1, a: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fel {
        self.a[i * self.cols + j]
    }
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fel) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fel] {
        &self.a[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Fel> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[Fel] {
        &self.a
    }

    pub fn to_rows(&self) -> Vec<Vec<Fel>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(Fel) -> Fel) -> Mat {
        Mat { rows: self.rows, cols: self.cols, a: self.a.iter().map(|&x| f(x)).collect() }
    }

    /// Entrywise involution.
    pub fn star_entrywise(&self, f: &InvolutiveField) -> Mat {
        self.map(|x| f.star(x))
    }

    /// Conjugate transpose: involution entrywise, then transpose.
    pub fn conj_transpose(&self, f: &InvolutiveField) -> Mat {
        self.star_entrywise(f).transpose()
    }

    pub fn add(&self, f: &InvolutiveField, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn sub(&self, f: &InvolutiveField, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f.sub(x, y)).collect(),
        }
    }

    pub fn neg(&self, f: &InvolutiveField) -> Mat {
        self.map(|x| f.neg(x))
    }

    pub fn scalar_mul(&self, f: &InvolutiveField, c: Fel) -> Mat {
        self.map(|x| f.mul(c, x))
    }

    pub fn mul(&self, f: &InvolutiveField, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let x = self.get(i, k);
                if x == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let y = other.get(k, j);
                    if y != 0 {
                        let cur = out.get(i, j);
                        out.set(i, j, f.add(cur, f.mul(x, y)));
                    }
                }
            }
        }
        out
    }

    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut a = self.a.clone();
        a.extend_from_slice(&other.a);
        Mat { rows: self.rows + other.rows, cols: self.cols, a }
    }

    pub fn block_diag(f_blocks: &[&Mat]) -> Mat {
        let rows = f_blocks.iter().map(|m| m.rows).sum();
        let cols = f_blocks.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in f_blocks {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.set(r0 + i, c0 + j, m.get(i, j));
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Reduced row echelon form; returns the RREF and the pivot columns.
    pub fn rref(&self, f: &InvolutiveField) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let mut pivot = None;
            for r in row..m.rows {
                if m.get(r, col) != 0 {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            if p != row {
                for j in 0..m.cols {
                    let (x, y) = (m.get(row, j), m.get(p, j));
                    m.set(row, j, y);
                    m.set(p, j, x);
                }
            }
            let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                m.set(row, j, f.mul(inv, m.get(row, j)));
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &InvolutiveField) -> usize {
        self.rref(f).1.len()
    }

    pub fn inverse(&self, f: &InvolutiveField) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(n));
        let (r, pivots) = aug.rref(f);
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    /// Basis (as rows) of the right kernel `{x : A x = 0}`.
    pub fn right_kernel(&self, f: &InvolutiveField) -> Mat {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(prow, fc));
            }
            rows.push(v);
        }
        if rows.is_empty() {
            Mat::zeros(0, self.cols)
        } else {
            Mat::from_rows(&rows)
        }
    }

    /// Deterministic particular solution of `A X = B` (free variables 0),
    /// or `None` when the system is inconsistent.
    pub fn solve(&self, f: &InvolutiveField, b: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b);
        let (r, pivots) = aug.rref(f);
        // a pivot in the augmented block means inconsistency
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(self.cols, b.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(prow, self.cols + j));
            }
        }
        Some(x)
    }

    /// All matrices of the given shape, in code order (row-major digits,
    /// first entry least significant). Errors when the count exceeds `cap`.
    pub fn enumerate_all(
        f: &InvolutiveField,
        rows: usize,
        cols: usize,
        cap: u64,
    ) -> Result<Vec<Mat>> {
        let q = f.order();
        let cells = rows * cols;
        let mut count: u64 = 1;
        for _ in 0..cells {
            count = count.saturating_mul(q);
        }
        if count > cap {
            return Err(Error::EnumerationCap { count, cap });
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u64; cells];
        loop {
            out.push(Mat::new(rows, cols, digits.iter().map(|&d| d as Fel).collect()));
            let mut i = 0;
            loop {
                if i == cells {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }
}

/// Vector with the given index, little-endian base-q digits. This is the
/// "standard order" used whenever an operation scans vectors of `F^n`.
pub fn vec_from_index(f: &InvolutiveField, n: usize, idx: u64) -> Vec<Fel> {
    let q = f.order();
    let mut v = Vec::with_capacity(n);
    let mut idx = idx;
    for _ in 0..n {
        v.push((idx % q) as Fel);
        idx /= q;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Involution;
    use proptest::prelude::*;

    fn gf3() -> InvolutiveField {
        InvolutiveField::new(3, 1, None, Involution::Identity).unwrap()
    }

    #[test]
    fn rref_known() {
        let f = gf3();
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![2, 2, 1], vec![0, 0, 1]]);
        let (r, pivots) = m.rref(&f);
        assert_eq!(pivots, vec![0, 1, 2]);
        assert_eq!(r, Mat::identity(3));
        // rank-deficient: row2 = row1 - 2*row0 forces a skipped column
        let s = Mat::from_rows(&[vec![1, 2, 0], vec![2, 1, 1], vec![0, 0, 1]]);
        let (r, pivots) = s.rref(&f);
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r, Mat::from_rows(&[vec![1, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]));
    }

    #[test]
    fn inverse_round_trip() {
        let f = gf3();
        let m = Mat::from_rows(&[vec![1, 2], vec![1, 1]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Mat::identity(2));
        assert_eq!(inv.mul(&f, &m), Mat::identity(2));
        let singular = Mat::from_rows(&[vec![1, 2], vec![2, 1]]);
        assert_eq!(singular.rank(&f), 1);
        assert!(singular.inverse(&f).is_none());
    }

    #[test]
    fn kernel_annihilates() {
        let f = gf3();
        let m = Mat::from_rows(&[vec![1, 2, 1], vec![2, 1, 1]]);
        let k = m.right_kernel(&f);
        assert_eq!(k.rows(), 1);
        let prod = m.mul(&f, &k.transpose());
        assert!(prod.is_zero());
    }

    #[test]
    fn solve_picks_free_vars_zero() {
        let f = gf3();
        let m = Mat::from_rows(&[vec![1, 1, 0]]);
        let b = Mat::col_vec(&[2]);
        let x = m.solve(&f, &b).unwrap();
        assert_eq!(m.mul(&f, &x), b);
        assert_eq!(x.get(1, 0), 0);
        assert_eq!(x.get(2, 0), 0);
        // inconsistent system
        let m2 = Mat::from_rows(&[vec![1, 0], vec![1, 0]]);
        let b2 = Mat::col_vec(&[1, 2]);
        assert!(m2.solve(&f, &b2).is_none());
    }

    #[test]
    fn enumerate_counts_and_caps() {
        let f = gf3();
        let all = Mat::enumerate_all(&f, 2, 1, 100).unwrap();
        assert_eq!(all.len(), 9);
        assert!(Mat::enumerate_all(&f, 3, 3, 100).is_err());
    }

    proptest! {
        #[test]
        fn rref_is_idempotent(data in proptest::collection::vec(0u16..3, 12)) {
            let f = gf3();
            let m = Mat::new(3, 4, data);
            let (r, p1) = m.rref(&f);
            let (r2, p2) = r.rref(&f);
            prop_assert_eq!(r, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn kernel_vectors_annihilate(data in proptest::collection::vec(0u16..3, 12)) {
            let f = gf3();
            let m = Mat::new(3, 4, data);
            let k = m.right_kernel(&f);
            prop_assert_eq!(k.rows() + m.rank(&f), 4);
            if k.rows() > 0 {
                prop_assert!(m.mul(&f, &k.transpose()).is_zero());
            }
        }
    }
}
