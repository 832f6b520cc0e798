//! Finite-dimensional sesquilinear spaces: `F^n` with a Gram matrix `G`
//! and the form `<u, v> = u*^T G v` (involution applied to the left
//! argument, column convention).
//!
//! `make_space` classifies eagerly: nondegeneracy, the form constant
//! epsilon (the unique scalar with `G_ji = eps * (G_ij)*` when one exists),
//! and the alternate / anisotropic / orthosymmetric predicates. The
//! geometric operations (orthogonal complements, radicals, summand
//! extension, subquotients) all require orthosymmetry, which makes `_|_`
//! a symmetric relation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fel, InvolutiveField};
use crate::mat::{vec_from_index, Mat};
use crate::subspace::Subspace;

/// Cap on space dimension.
pub const SPACE_DIM_CAP: usize = 8;
/// Above this many vector pairs, orthosymmetry switches from the pair scan
/// to the per-vector kernel comparison (same relation, less work).
const PAIR_SCAN_CAP: u64 = 1 << 20;
/// Above this many vectors, predicates fall back to exact algebraic
/// criteria instead of enumeration.
const VECTOR_SCAN_CAP: u64 = 1 << 26;
/// Cap on the `|F|^(n^2)` transform scan in `is_similar`.
pub const SIMILARITY_SCAN_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceClass {
    pub nondegenerate: bool,
    /// The unique scalar code `eps` with `G_ji = eps * (G_ij)*` for all
    /// `i, j`, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Fel>,
    pub hermitian: bool,
    pub skew_symmetric: bool,
    /// `<v, v> = 0` for every `v`.
    pub alternate: bool,
    /// `<v, v> != 0` for every `v != 0`.
    pub anisotropic: bool,
    /// `<u, v> = 0` iff `<v, u> = 0`, for all pairs.
    pub orthosymmetric: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramSpace {
    field: InvolutiveField,
    n: usize,
    gram: Mat,
    class: SpaceClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub radical: Subspace,
    /// `U ^ _|_ _|_ == U`; always true at finite dimension, but computed.
    pub closed: bool,
    /// `rad U = 0`, i.e. `V = U (+) U^_|_`.
    pub summand: bool,
}

impl GramSpace {
    pub fn new(field: InvolutiveField, gram: Mat) -> Result<GramSpace> {
        if !gram.is_square() {
            return Err(Error::NonSquareGram { rows: gram.rows(), cols: gram.cols() });
        }
        let n = gram.rows();
        if n > SPACE_DIM_CAP {
            return Err(Error::DimensionCap(n, SPACE_DIM_CAP));
        }
        if gram.data().iter().any(|&c| c as u64 >= field.order()) {
            return Err(Error::InvalidInput("gram entry out of field range".into()));
        }
        let class = classify(&field, &gram);
        Ok(GramSpace { field, n, gram, class })
    }

    pub fn field(&self) -> &InvolutiveField {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn class(&self) -> &SpaceClass {
        &self.class
    }

    /// `<u, v> = u*^T G v`.
    pub fn inner(&self, u: &[Fel], v: &[Fel]) -> Result<Fel> {
        if u.len() != self.n {
            return Err(Error::LengthMismatch { got: u.len(), want: self.n });
        }
        if v.len() != self.n {
            return Err(Error::LengthMismatch { got: v.len(), want: self.n });
        }
        Ok(inner_raw(&self.field, &self.gram, u, v))
    }

    /// `U^_|_ = { v : <u, v> = 0 for all u in U }`, the right kernel of
    /// `(basis U)*^T G` read as row equations.
    pub fn orthogonal(&self, u: &Subspace) -> Result<Subspace> {
        self.require_nondegenerate()?;
        self.require_ambient(u)?;
        if u.is_zero() {
            return Ok(Subspace::full(self.n));
        }
        let m = u.basis().star_entrywise(&self.field).mul(&self.field, &self.gram);
        let ker = m.right_kernel(&self.field);
        Ok(Subspace::from_mat(&self.field, &ker))
    }

    pub fn radical_report(&self, u: &Subspace) -> Result<RadicalReport> {
        let perp = self.orthogonal(u)?;
        let radical = u.meet(&self.field, &perp);
        let closed = self.orthogonal(&perp)? == *u;
        let summand = radical.is_zero();
        Ok(RadicalReport { radical, closed, summand })
    }

    /// Grow `w` to a summand by pairing each radical vector with a partner
    /// of nonzero product. Each step strictly shrinks the radical, so the
    /// result has dimension at most `2 * dim w`.
    pub fn extend_to_summand(&self, w: &Subspace) -> Result<Subspace> {
        self.require_nondegenerate()?;
        self.require_orthosymmetric()?;
        self.require_ambient(w)?;
        let mut u = w.clone();
        loop {
            let report = self.radical_report(&u)?;
            if report.summand {
                debug_assert!(u.dim() <= 2 * w.dim());
                return Ok(u);
            }
            let v = report.radical.basis().row(0).to_vec();
            let partner = self.first_nonorthogonal(&v)?;
            u = u.sum(&self.field, &Subspace::from_vectors(&self.field, self.n, &[partner]));
        }
    }

    /// First vector `w` in standard order with `<v, w> != 0`. Exists in a
    /// nondegenerate space for `v != 0`.
    fn first_nonorthogonal(&self, v: &[Fel]) -> Result<Vec<Fel>> {
        let total = self.field.order().pow(self.n as u32);
        for idx in 1..total {
            let w = vec_from_index(&self.field, self.n, idx);
            if self.inner(v, &w)? != 0 {
                return Ok(w);
            }
        }
        Err(Error::DegenerateSpace)
    }

    /// The nondegenerate space induced on `U / rad U`: pick a greedy
    /// complement of the radical inside `U` and restrict the form to it.
    pub fn subquotient(&self, u: &Subspace) -> Result<GramSpace> {
        self.require_nondegenerate()?;
        self.require_orthosymmetric()?;
        self.require_ambient(u)?;
        let report = self.radical_report(u)?;
        let w = report.radical.complement_within(&self.field, u);
        let gram = self.restrict_gram(&w);
        GramSpace::new(self.field.clone(), gram)
    }

    /// Gram matrix of the form restricted to the rows of `w`.
    fn restrict_gram(&self, w: &Subspace) -> Mat {
        let b = w.basis();
        let bs = b.star_entrywise(&self.field);
        bs.mul(&self.field, &self.gram).mul(&self.field, &b.transpose())
    }

    /// Scale the form by a nonzero `mu`. Orthogonality is unchanged;
    /// epsilon moves to `mu * (mu*)^-1 * eps`.
    pub fn scale(&self, mu: Fel) -> Result<GramSpace> {
        if mu == 0 {
            return Err(Error::ZeroScale);
        }
        GramSpace::new(self.field.clone(), self.gram.scalar_mul(&self.field, mu))
    }

    pub fn orthogonal_sum(&self, other: &GramSpace) -> Result<GramSpace> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n + other.n > SPACE_DIM_CAP {
            return Err(Error::DimensionCap(self.n + other.n, SPACE_DIM_CAP));
        }
        let gram = Mat::block_diag(&[&self.gram, &other.gram]);
        GramSpace::new(self.field.clone(), gram)
    }

    /// Brute-force similitude test: is there an invertible `T` and scalar
    /// `mu != 0` with `G_other = mu * T*^T G_self T`?
    pub fn is_similar(&self, other: &GramSpace) -> Result<bool> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Ok(false);
        }
        let n = self.n;
        if n == 0 {
            return Ok(true);
        }
        let count = (1..=n * n).try_fold(1u64, |acc, _| {
            let next = acc.saturating_mul(self.field.order());
            (next <= SIMILARITY_SCAN_CAP).then_some(next)
        });
        if count.is_none() {
            return Err(Error::Infeasible(format!(
                "similitude scan needs |F|^(n^2) <= {SIMILARITY_SCAN_CAP}"
            )));
        }
        let f = &self.field;
        for t in Mat::enumerate_all(f, n, n, SIMILARITY_SCAN_CAP)? {
            let c = t.conj_transpose(f).mul(f, &self.gram).mul(f, &t);
            if let Some(mu) = proportionality(f, &c, &other.gram) {
                if mu != 0 && t.rank(f) == n {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.class.nondegenerate {
            Ok(())
        } else {
            Err(Error::DegenerateSpace)
        }
    }

    pub fn require_orthosymmetric(&self) -> Result<()> {
        if self.class.orthosymmetric {
            Ok(())
        } else {
            Err(Error::NotOrthosymmetric)
        }
    }

    fn require_ambient(&self, u: &Subspace) -> Result<()> {
        if u.ambient_dim() != self.n {
            return Err(Error::LengthMismatch { got: u.ambient_dim(), want: self.n });
        }
        Ok(())
    }

    /// All `1`-dimensional subspaces in canonical order.
    pub fn lines(&self) -> Vec<Subspace> {
        let total = self.field.order().pow(self.n as u32);
        let mut seen = std::collections::BTreeSet::new();
        for idx in 1..total {
            let v = vec_from_index(&self.field, self.n, idx);
            seen.insert(Subspace::from_vectors(&self.field, self.n, &[v]));
        }
        seen.into_iter().collect()
    }
}

fn inner_raw(f: &InvolutiveField, gram: &Mat, u: &[Fel], v: &[Fel]) -> Fel {
    let mut acc = 0;
    for (i, &ui) in u.iter().enumerate() {
        if ui == 0 {
            continue;
        }
        let us = f.star(ui);
        for (j, &vj) in v.iter().enumerate() {
            let g = gram.get(i, j);
            if g != 0 && vj != 0 {
                acc = f.add(acc, f.mul(us, f.mul(g, vj)));
            }
        }
    }
    acc
}

/// `b = mu * a` for some scalar `mu`? Returns the witness (0 only when both
/// are zero matrices).
fn proportionality(f: &InvolutiveField, a: &Mat, b: &Mat) -> Option<Fel> {
    debug_assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
    let mut mu = None;
    for (x, y) in a.data().iter().zip(b.data()) {
        match (x, y) {
            (0, 0) => continue,
            (0, _) | (_, 0) => return None,
            (&x, &y) => {
                let ratio = f.mul(y, f.inv(x).ok()?);
                match mu {
                    None => mu = Some(ratio),
                    Some(m) if m == ratio => {}
                    Some(_) => return None,
                }
            }
        }
    }
    Some(mu.unwrap_or(0))
}

fn classify(f: &InvolutiveField, gram: &Mat) -> SpaceClass {
    let n = gram.rows();
    let nondegenerate = gram.rank(f) == n;
    let epsilon = find_epsilon(f, gram);
    let hermitian = epsilon == Some(1);
    let skew_symmetric = epsilon == Some(f.neg(1)) && f.has_identity_involution();
    let alternate = is_alternate(f, gram);
    let orthosymmetric = is_orthosymmetric(f, gram, epsilon);
    let anisotropic = is_anisotropic(f, gram, alternate, orthosymmetric);
    SpaceClass {
        nondegenerate,
        epsilon,
        hermitian,
        skew_symmetric,
        alternate,
        anisotropic,
        orthosymmetric,
    }
}

fn find_epsilon(f: &InvolutiveField, gram: &Mat) -> Option<Fel> {
    let n = gram.rows();
    // any nonzero entry pins the candidate
    let mut cand = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let g = gram.get(i, j);
            if g != 0 {
                cand = Some(f.mul(gram.get(j, i), f.inv(f.star(g)).unwrap()));
                break 'outer;
            }
        }
    }
    let eps = cand.unwrap_or(1); // zero Gram: every scalar works, report 1
    for i in 0..n {
        for j in 0..n {
            if gram.get(j, i) != f.mul(eps, f.star(gram.get(i, j))) {
                return None;
            }
        }
    }
    if eps == 0 {
        None
    } else {
        Some(eps)
    }
}

/// `<v, v> = 0` for all `v`, decided from the Gram matrix: all diagonal
/// entries vanish and, for the identity involution, `G_ij = -G_ji`; for a
/// nontrivial involution the off-diagonal pairs must vanish outright
/// (restrict to two coordinates and vary one scalar to see both facts).
fn is_alternate(f: &InvolutiveField, gram: &Mat) -> bool {
    let n = gram.rows();
    for i in 0..n {
        if gram.get(i, i) != 0 {
            return false;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let (a, b) = (gram.get(i, j), gram.get(j, i));
            if f.has_identity_involution() {
                if b != f.neg(a) {
                    return false;
                }
            } else if a != 0 || b != 0 {
                return false;
            }
        }
    }
    true
}

fn is_orthosymmetric(f: &InvolutiveField, gram: &Mat, epsilon: Option<Fel>) -> bool {
    let n = gram.rows();
    if n == 0 {
        return true;
    }
    let q = f.order();
    let vectors = q.saturating_pow(n as u32);
    if vectors.saturating_mul(vectors) <= PAIR_SCAN_CAP {
        // plain brute force over ordered pairs
        for ui in 0..vectors {
            let u = vec_from_index(f, n, ui);
            for vi in 0..vectors {
                let v = vec_from_index(f, n, vi);
                let uv = inner_raw(f, gram, &u, &v) == 0;
                let vu = inner_raw(f, gram, &v, &u) == 0;
                if uv != vu {
                    return false;
                }
            }
        }
        return true;
    }
    if vectors <= VECTOR_SCAN_CAP {
        // per-vector: { v : <u,v> = 0 } and { v : <v,u> = 0 } are kernels of
        // the covectors u*^T G and (G u)*^T; equal iff proportional.
        for ui in 0..vectors {
            let u = vec_from_index(f, n, ui);
            let us: Vec<Fel> = u.iter().map(|&x| f.star(x)).collect();
            let mut a = vec![0; n];
            let mut b = vec![0; n];
            for j in 0..n {
                for i in 0..n {
                    a[j] = f.add(a[j], f.mul(us[i], gram.get(i, j)));
                    b[j] = f.add(b[j], f.star(f.mul(gram.get(j, i), u[i])));
                }
            }
            if !covectors_share_kernel(f, &a, &b) {
                return false;
            }
        }
        return true;
    }
    // enormous spaces: the epsilon criterion (exact for nondegenerate
    // spaces of dimension >= 2, which is the only regime reachable here)
    epsilon.is_some()
}

fn covectors_share_kernel(f: &InvolutiveField, a: &[Fel], b: &[Fel]) -> bool {
    let fa = a.iter().position(|&x| x != 0);
    let fb = b.iter().position(|&x| x != 0);
    match (fa, fb) {
        (None, None) => true,
        (None, _) | (_, None) => false,
        (Some(i), Some(j)) => {
            if i != j {
                return false;
            }
            let ratio = f.mul(b[i], f.inv(a[i]).unwrap());
            a.iter().zip(b).all(|(&x, &y)| f.mul(ratio, x) == y)
        }
    }
}

fn is_anisotropic(f: &InvolutiveField, gram: &Mat, alternate: bool, orthosymmetric: bool) -> bool {
    let n = gram.rows();
    if n == 0 {
        return true;
    }
    let q = f.order();
    let vectors = q.saturating_pow(n as u32);
    if vectors <= VECTOR_SCAN_CAP {
        for idx in 1..vectors {
            let v = vec_from_index(f, n, idx);
            if inner_raw(f, gram, &v, &v) == 0 {
                return false;
            }
        }
        return true;
    }
    // exact shortcuts for spaces too large to scan
    if alternate {
        return false;
    }
    if (0..n).any(|i| gram.get(i, i) == 0) {
        return false; // a basis vector is isotropic
    }
    if f.has_identity_involution() {
        if f.p() == 2 {
            // <v,v> = (sum sqrt(g_ii) v_i)^2 is a square of a linear form,
            // whose kernel is nonzero once n >= 2
            return n < 2;
        }
        if n >= 3 {
            return false; // classical: odd-char symmetric forms of rank >= 3
        }
        // n == 2, all diagonal nonzero: isotropic iff the binary form has a
        // root, iff the discriminant is a square
        let b = f.add(gram.get(0, 1), gram.get(1, 0));
        let disc = f.sub(f.mul(b, b), f.mul(f.from_prime(4), f.mul(gram.get(0, 0), gram.get(1, 1))));
        return !f.is_square(disc);
    }
    if orthosymmetric {
        // nondegenerate hermitian-type forms over a finite field are
        // isotropic from dimension 2 up
        return n < 2;
    }
    // nontrivial involution, not orthosymmetric, astronomically many
    // vectors: pay for the honest scan
    for idx in 1..vectors {
        let v = vec_from_index(f, n, idx);
        if inner_raw(f, gram, &v, &v) == 0 {
            return false;
        }
    }
    true
}

/// Wire format: `{"field":{...},"dim":n,"gram":[[..],..]}`.
#[derive(Serialize, Deserialize)]
struct SpaceSpec {
    field: InvolutiveField,
    dim: usize,
    gram: Vec<Vec<Fel>>,
}

impl Serialize for GramSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceSpec { field: self.field.clone(), dim: self.n, gram: self.gram.to_rows() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GramSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = SpaceSpec::deserialize(d)?;
        if spec.gram.len() != spec.dim || spec.gram.iter().any(|r| r.len() != spec.dim) {
            return Err(D::Error::custom("gram shape does not match dim"));
        }
        let gram = if spec.dim == 0 { Mat::zeros(0, 0) } else { Mat::from_rows(&spec.gram) };
        GramSpace::new(spec.field, gram).map_err(|e| D::Error::custom(e.to_string()))
    }
}
