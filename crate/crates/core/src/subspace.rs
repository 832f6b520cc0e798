//! Subspaces of `F^n`, stored as canonical reduced-row-echelon bases so that
//! equality, hashing, and ordering are representation independent.
//!
//! The canonical order on subspaces is by dimension, then lexicographically
//! by the RREF basis matrix; `enumerate_all` lists every subspace in that
//! order, which fixes element indices in lattices, geometries, and reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fel, InvolutiveField};
use crate::mat::Mat;

/// Cap on the number of subspaces an exhaustive enumeration may produce.
pub const SUBSPACE_ENUM_CAP: u64 = 20_000;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    n: usize,
    /// RREF basis, one row per basis vector, no zero rows.
    basis: Mat,
}

/// Wire format: `{"n": 3, "basis": [[1,0,0],[0,1,0]]}`. The ambient
/// dimension travels alongside the basis so the zero subspace stays
/// well-defined. Deserialization validates the RREF shape structurally
/// (pivot entries are the code `1`, pivot columns strictly increase and
/// vanish elsewhere, no zero rows) since no field is in scope to
/// re-reduce arbitrary rows.
#[derive(Serialize, Deserialize)]
struct SubspaceSpec {
    n: usize,
    basis: Vec<Vec<Fel>>,
}

impl Serialize for Subspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceSpec { n: self.n, basis: self.basis.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let SubspaceSpec { n, basis } = SubspaceSpec::deserialize(d)?;
        if basis.len() > n {
            return Err(D::Error::custom("more basis rows than the ambient dimension"));
        }
        let mut last_pivot = None;
        for row in &basis {
            if row.len() != n {
                return Err(D::Error::custom("basis row length differs from ambient dimension"));
            }
            let pivot = match row.iter().position(|&x| x != 0) {
                Some(j) => j,
                None => return Err(D::Error::custom("zero row in basis")),
            };
            if row[pivot] != 1 {
                return Err(D::Error::custom("pivot entry is not the unit code 1"));
            }
            if last_pivot.is_some_and(|p| pivot <= p) {
                return Err(D::Error::custom("pivot columns must strictly increase"));
            }
            last_pivot = Some(pivot);
        }
        // pivot columns must vanish in every other row
        for (i, row) in basis.iter().enumerate() {
            let pivot = row.iter().position(|&x| x != 0).unwrap();
            if basis.iter().enumerate().any(|(i2, r2)| i2 != i && r2[pivot] != 0) {
                return Err(D::Error::custom("pivot column has a nonzero entry off its row"));
            }
        }
        let basis = if basis.is_empty() { Mat::zeros(0, n) } else { Mat::from_rows(&basis) };
        Ok(Subspace { n, basis })
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.basis.data().cmp(other.basis.data()))
            .then_with(|| self.n.cmp(&other.n))
    }
}

impl Subspace {
    /// Row space of `rows`, canonicalized.
    pub fn from_mat(f: &InvolutiveField, rows: &Mat) -> Subspace {
        let n = rows.cols();
        let (r, pivots) = rows.rref(f);
        let kept: Vec<Vec<Fel>> = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        let basis = if kept.is_empty() { Mat::zeros(0, n) } else { Mat::from_rows(&kept) };
        Subspace { n, basis }
    }

    pub fn from_vectors(f: &InvolutiveField, n: usize, vecs: &[Vec<Fel>]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(n);
        }
        Subspace::from_mat(f, &Mat::from_rows(vecs))
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace { n, basis: Mat::zeros(0, n) }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace { n, basis: Mat::identity(n) }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Fel>> {
        self.basis.to_rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn contains_vec(&self, f: &InvolutiveField, v: &[Fel]) -> bool {
        assert_eq!(v.len(), self.n);
        // reduce v by the RREF basis; membership iff the residue vanishes
        let mut v = v.to_vec();
        for i in 0..self.basis.rows() {
            let pivot = self.basis.row(i).iter().position(|&x| x != 0).unwrap();
            let c = v[pivot];
            if c != 0 {
                for j in 0..self.n {
                    v[j] = f.sub(v[j], f.mul(c, self.basis.get(i, j)));
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, f: &InvolutiveField, other: &Subspace) -> bool {
        assert_eq!(self.n, other.n);
        (0..other.dim()).all(|i| self.contains_vec(f, other.basis.row(i)))
    }

    pub fn sum(&self, f: &InvolutiveField, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        Subspace::from_mat(f, &self.basis.vstack(&other.basis))
    }

    /// Intersection of row spaces: pairs `(x, y)` with `x A = y B` come from
    /// the kernel of `[A^T | -B^T]`.
    pub fn meet(&self, f: &InvolutiveField, other: &Subspace) -> Subspace {
        assert_eq!(self.n, other.n);
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.n);
        }
        let at = self.basis.transpose();
        let bt = other.basis.transpose().neg(f);
        let stacked = at.hstack(&bt);
        let ker = stacked.right_kernel(f);
        let mut vecs = Vec::new();
        for i in 0..ker.rows() {
            let x = &ker.row(i)[..self.dim()];
            let mut v = vec![0; self.n];
            for (r, &c) in x.iter().enumerate() {
                if c != 0 {
                    for j in 0..self.n {
                        v[j] = f.add(v[j], f.mul(c, self.basis.get(r, j)));
                    }
                }
            }
            vecs.push(v);
        }
        Subspace::from_vectors(f, self.n, &vecs)
    }

    /// Greedy complement of `self` inside `within` (`self` must be a
    /// subspace of `within`): extend by `within`'s basis rows in order.
    pub fn complement_within(&self, f: &InvolutiveField, within: &Subspace) -> Subspace {
        debug_assert!(within.contains(f, self));
        let mut acc = self.basis.clone();
        let mut rank = self.dim();
        let mut picked = Vec::new();
        for i in 0..within.dim() {
            let cand = within.basis.row(i).to_vec();
            let trial = acc.vstack(&Mat::from_rows(std::slice::from_ref(&cand)));
            if trial.rank(f) > rank {
                rank += 1;
                acc = trial;
                picked.push(cand);
            }
        }
        Subspace::from_vectors(f, self.n, &picked)
    }

    /// Short human label, used for lattice elements and DOT output.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let rows: Vec<String> = (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(if self.basis.cols() > 0 && self.basis.data().iter().any(|&x| x > 9) {
                        ","
                    } else {
                        ""
                    })
            })
            .collect();
        rows.join("|")
    }
}

/// Number of subspaces of `F^n` for `|F| = q` (sum of Gaussian binomials),
/// saturating at `u64::MAX`.
pub fn subspace_count(q: u64, n: usize) -> u64 {
    let mut total: u64 = 0;
    for r in 0..=n {
        // [n choose r]_q = prod_{i<r} (q^n - q^i) / (q^r - q^i)
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        let mut over = false;
        for i in 0..r {
            let qi = (q as u128).pow(i as u32);
            let qn = (q as u128).checked_pow(n as u32);
            let qr = (q as u128).pow(r as u32);
            match qn {
                Some(qn) => {
                    num = match num.checked_mul(qn - qi) {
                        Some(v) => v,
                        None => {
                            over = true;
                            break;
                        }
                    };
                    den *= qr - qi;
                }
                None => {
                    over = true;
                    break;
                }
            }
        }
        if over {
            return u64::MAX;
        }
        let binom = num / den;
        total = total.saturating_add(binom.min(u64::MAX as u128) as u64);
    }
    total
}

/// Every subspace of `F^n`, sorted by dimension then lexicographic RREF.
/// Errors with `EnumerationCap` when the count exceeds `cap`.
pub fn enumerate_all(f: &InvolutiveField, n: usize, cap: u64) -> Result<Vec<Subspace>> {
    let count = subspace_count(f.order(), n);
    if count > cap {
        return Err(Error::EnumerationCap { count, cap });
    }
    let q = f.order();
    let mut out = Vec::with_capacity(count as usize);
    out.push(Subspace::zero(n));
    for r in 1..=n {
        for pivots in combinations(n, r) {
            // free cells: entries right of each pivot, in non-pivot columns
            // not claimed by a later pivot
            let mut free_cells = Vec::new();
            for (i, &p) in pivots.iter().enumerate() {
                for c in (p + 1)..n {
                    if !pivots.contains(&c) {
                        free_cells.push((i, c));
                    }
                }
            }
            let mut assign = vec![0u64; free_cells.len()];
            loop {
                let mut basis = Mat::zeros(r, n);
                for (i, &p) in pivots.iter().enumerate() {
                    basis.set(i, p, 1);
                }
                for (&(i, c), &v) in free_cells.iter().zip(&assign) {
                    basis.set(i, c, v as Fel);
                }
                out.push(Subspace { n, basis });
                let mut idx = 0;
                loop {
                    if idx == assign.len() {
                        break;
                    }
                    assign[idx] += 1;
                    if assign[idx] < q {
                        break;
                    }
                    assign[idx] = 0;
                    idx += 1;
                }
                if idx == assign.len() {
                    break;
                }
            }
        }
    }
    out.sort();
    debug_assert_eq!(out.len() as u64, count);
    Ok(out)
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Involution;

    fn gf(p: u64, k: u32) -> InvolutiveField {
        InvolutiveField::new(p, k, None, Involution::Identity).unwrap()
    }

    #[test]
    fn canonical_representation() {
        let f = gf(3, 1);
        let a = Subspace::from_vectors(&f, 2, &[vec![1, 2], vec![1, 1]]);
        let b = Subspace::from_vectors(&f, 2, &[vec![1, 1], vec![1, 2]]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        // (2,1) = 2*(1,2): proportional vectors span a line with lex-least
        // canonical basis vector
        let c = Subspace::from_vectors(&f, 2, &[vec![1, 2], vec![2, 1]]);
        assert_eq!(c.dim(), 1);
        assert_eq!(c.basis().row(0), &[1, 2]);
    }

    #[test]
    fn sum_and_meet() {
        let f = gf(2, 1);
        let u = Subspace::from_vectors(&f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let w = Subspace::from_vectors(&f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
        let s = u.sum(&f, &w);
        assert_eq!(s, Subspace::full(3));
        let m = u.meet(&f, &w);
        assert_eq!(m, Subspace::from_vectors(&f, 3, &[vec![0, 1, 0]]));
        assert!(u.contains(&f, &m));
        assert!(w.contains(&f, &m));
        assert!(s.contains(&f, &u));
    }

    #[test]
    fn counts_match_gaussian_binomials() {
        assert_eq!(subspace_count(2, 3), 16);
        assert_eq!(subspace_count(2, 4), 67);
        assert_eq!(subspace_count(3, 2), 6);
        assert_eq!(subspace_count(3, 3), 28);
        let f2 = gf(2, 1);
        assert_eq!(enumerate_all(&f2, 3, 1000).unwrap().len(), 16);
        assert_eq!(enumerate_all(&f2, 4, 1000).unwrap().len(), 67);
        let f3 = gf(3, 1);
        assert_eq!(enumerate_all(&f3, 2, 1000).unwrap().len(), 6);
        let f4 = InvolutiveField::new(2, 2, None, Involution::FrobeniusHalf).unwrap();
        assert_eq!(enumerate_all(&f4, 2, 1000).unwrap().len(), 7);
    }

    #[test]
    fn enumeration_is_sorted_and_distinct() {
        let f = gf(2, 1);
        let all = enumerate_all(&f, 4, 1000).unwrap();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        // every enumerated basis is already canonical
        for s in &all {
            let re = Subspace::from_mat(&f, s.basis());
            assert_eq!(&re, s);
        }
    }

    #[test]
    fn enumeration_cap() {
        let f = gf(2, 1);
        assert!(matches!(
            enumerate_all(&f, 4, 10),
            Err(Error::EnumerationCap { count: 67, cap: 10 })
        ));
    }

    #[test]
    fn complement_within_splits() {
        let f = gf(3, 1);
        let within = Subspace::full(3);
        let u = Subspace::from_vectors(&f, 3, &[vec![1, 1, 0]]);
        let c = u.complement_within(&f, &within);
        assert_eq!(c.dim(), 2);
        assert_eq!(u.sum(&f, &c), within);
        assert!(u.meet(&f, &c).is_zero());
    }

    #[test]
    fn wire_format_is_ambient_dim_plus_basis_rows() {
        let f = gf(2, 1);
        let u = Subspace::from_vectors(&f, 3, &[vec![1, 0, 1], vec![0, 1, 0]]);
        let json = serde_json::to_string(&u).unwrap();
        assert_eq!(json, r#"{"n":3,"basis":[[1,0,1],[0,1,0]]}"#);
        assert_eq!(serde_json::from_str::<Subspace>(&json).unwrap(), u);

        let zero = Subspace::zero(2);
        let json = serde_json::to_string(&zero).unwrap();
        assert_eq!(json, r#"{"n":2,"basis":[]}"#);
        assert_eq!(serde_json::from_str::<Subspace>(&json).unwrap(), zero);
    }

    #[test]
    fn deserialization_rejects_non_echelon_bases() {
        for bad in [
            r#"{"n":2,"basis":[[0,0]]}"#,            // zero row
            r#"{"n":2,"basis":[[2,0]]}"#,            // pivot is not the unit
            r#"{"n":2,"basis":[[0,1],[1,0]]}"#,      // pivots out of order
            r#"{"n":2,"basis":[[1,1],[0,1]]}"#,      // pivot column not cleared
            r#"{"n":2,"basis":[[1,0,0]]}"#,          // row length mismatch
            r#"{"n":1,"basis":[[1],[1]]}"#,          // more rows than ambient dim
        ] {
            assert!(serde_json::from_str::<Subspace>(bad).is_err(), "accepted {bad}");
        }
    }
}
