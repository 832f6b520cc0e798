//! Finite rings with involution: the full endomorphism ring of a
//! nondegenerate space under the Gram adjoint `A* = G^-1 A*^T G`, finite
//! products of such rings, and carrier-enumerated generated subrings.
//!
//! The regularity calculus implemented here: quasi-inverses (`axa = a`),
//! the idempotent `e = ax` generating the same right ideal, orthogonal
//! projections as generators in the anisotropic case, common left units
//! for pairs, and the regular/proper/*-regular report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Fel, InvolutiveField};
use crate::mat::{vec_from_index, Mat};
use crate::space::GramSpace;
use crate::subspace::Subspace;

/// Cap on enumerated ring carriers.
pub const CARRIER_CAP: u64 = 1 << 20;
/// Cap on carriers for the quadratic right-ideal scans in
/// `regularity_report` of enumerated rings.
pub const IDEAL_SCAN_CAP: u64 = 4096;
/// Cap on the element scan proving or refuting properness in matrix rings.
pub const PROPER_SCAN_CAP: u64 = 1_000_000;

/// Ring element: a matrix for endomorphism rings, a tuple for products.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RElem {
    Mat(Mat),
    Tuple(Vec<RElem>),
}

/// Wire format: matrices as row-major nested code lists, tuples as lists
/// of such matrices — `[[0,1],[1,0]]` or `[[[1]],[[0,1],[0,0]]]`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RElemSpec {
    Mat(Vec<Vec<Fel>>),
    Tuple(Vec<RElemSpec>),
}

impl From<&RElem> for RElemSpec {
    fn from(x: &RElem) -> RElemSpec {
        match x {
            RElem::Mat(m) => RElemSpec::Mat(m.to_rows()),
            RElem::Tuple(t) => RElemSpec::Tuple(t.iter().map(RElemSpec::from).collect()),
        }
    }
}

impl TryFrom<RElemSpec> for RElem {
    type Error = String;

    fn try_from(spec: RElemSpec) -> std::result::Result<RElem, String> {
        match spec {
            RElemSpec::Mat(rows) => {
                if rows.is_empty() {
                    return Ok(RElem::Mat(Mat::zeros(0, 0)));
                }
                let width = rows[0].len();
                if rows.iter().any(|r| r.len() != width) {
                    return Err("matrix rows have unequal lengths".into());
                }
                Ok(RElem::Mat(Mat::from_rows(&rows)))
            }
            RElemSpec::Tuple(parts) => Ok(RElem::Tuple(
                parts.into_iter().map(RElem::try_from).collect::<std::result::Result<_, _>>()?,
            )),
        }
    }
}

impl Serialize for RElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RElemSpec::from(self).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for RElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = RElemSpec::deserialize(d)?;
        RElem::try_from(spec).map_err(D::Error::custom)
    }
}

impl RElem {
    pub fn as_mat(&self) -> &Mat {
        match self {
            RElem::Mat(m) => m,
            RElem::Tuple(_) => panic!("expected a matrix ring element"),
        }
    }

    pub fn as_tuple(&self) -> &[RElem] {
        match self {
            RElem::Tuple(t) => t,
            RElem::Mat(_) => panic!("expected a product ring element"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarRing {
    /// All endomorphisms of a nondegenerate space, starred by the Gram
    /// adjoint.
    Matrix { space: GramSpace, gram_inv: Mat },
    Product { factors: Vec<StarRing> },
    /// Subring of `parent` with an explicit carrier, closed under the
    /// operations and containing 0 and 1.
    Generated { parent: Box<StarRing>, carrier: Vec<RElem> },
}

impl StarRing {
    pub fn matrix(space: GramSpace) -> Result<StarRing> {
        space.require_nondegenerate()?;
        let gram_inv = space
            .gram()
            .inverse(space.field())
            .expect("nondegenerate gram is invertible");
        Ok(StarRing::Matrix { space, gram_inv })
    }

    pub fn product(factors: Vec<StarRing>) -> Result<StarRing> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("product needs at least one factor".into()));
        }
        let p = factors[0].characteristic();
        if factors.iter().any(|r| r.characteristic() != p) {
            return Err(Error::FieldMismatch);
        }
        let mut size: u64 = 1;
        for f in &factors {
            size = size.saturating_mul(f.size());
        }
        if size > CARRIER_CAP {
            return Err(Error::EnumerationCap { count: size, cap: CARRIER_CAP });
        }
        Ok(StarRing::Product { factors })
    }

    /// Least subring containing `generators`, 0, and 1, closed under add,
    /// mul, and star.
    pub fn generated(parent: &StarRing, generators: &[RElem]) -> Result<StarRing> {
        let mut carrier: Vec<RElem> = vec![parent.zero(), parent.one()];
        carrier.extend_from_slice(generators);
        carrier.sort_unstable();
        carrier.dedup();
        loop {
            let mut fresh: Vec<RElem> = Vec::new();
            let know = |x: RElem, carrier: &[RElem], fresh: &mut Vec<RElem>| {
                if carrier.binary_search(&x).is_err() && !fresh.contains(&x) {
                    fresh.push(x);
                }
            };
            for a in &carrier {
                know(parent.star(a), &carrier, &mut fresh);
                for b in &carrier {
                    know(parent.add(a, b), &carrier, &mut fresh);
                    know(parent.mul(a, b), &carrier, &mut fresh);
                }
            }
            if fresh.is_empty() {
                break;
            }
            carrier.extend(fresh);
            carrier.sort_unstable();
            carrier.dedup();
            if carrier.len() as u64 > CARRIER_CAP {
                return Err(Error::EnumerationCap {
                    count: carrier.len() as u64,
                    cap: CARRIER_CAP,
                });
            }
        }
        Ok(StarRing::Generated { parent: Box::new(parent.clone()), carrier })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            StarRing::Matrix { space, .. } => space.field().p(),
            StarRing::Product { factors } => factors[0].characteristic(),
            StarRing::Generated { parent, .. } => parent.characteristic(),
        }
    }

    /// Number of elements (saturating).
    pub fn size(&self) -> u64 {
        match self {
            StarRing::Matrix { space, .. } => {
                let n = space.dim() as u32;
                space.field().order().saturating_pow(n * n)
            }
            StarRing::Product { factors } => {
                factors.iter().fold(1u64, |acc, f| acc.saturating_mul(f.size()))
            }
            StarRing::Generated { carrier, .. } => carrier.len() as u64,
        }
    }

    /// All elements in deterministic order.
    pub fn carrier(&self) -> Result<Vec<RElem>> {
        let size = self.size();
        if size > CARRIER_CAP {
            return Err(Error::EnumerationCap { count: size, cap: CARRIER_CAP });
        }
        match self {
            StarRing::Matrix { space, .. } => {
                let n = space.dim();
                Ok(Mat::enumerate_all(space.field(), n, n, CARRIER_CAP)?
                    .into_iter()
                    .map(RElem::Mat)
                    .collect())
            }
            StarRing::Product { factors } => {
                let mut out = vec![Vec::new()];
                for f in factors {
                    let elems = f.carrier()?;
                    let mut next = Vec::with_capacity(out.len() * elems.len());
                    // leftmost component varies slowest
                    for prefix in &out {
                        for e in &elems {
                            let mut t = prefix.clone();
                            t.push(e.clone());
                            next.push(t);
                        }
                    }
                    out = next;
                }
                Ok(out.into_iter().map(RElem::Tuple).collect())
            }
            StarRing::Generated { carrier, .. } => Ok(carrier.clone()),
        }
    }

    pub fn zero(&self) -> RElem {
        match self {
            StarRing::Matrix { space, .. } => {
                RElem::Mat(Mat::zeros(space.dim(), space.dim()))
            }
            StarRing::Product { factors } => {
                RElem::Tuple(factors.iter().map(|f| f.zero()).collect())
            }
            StarRing::Generated { parent, .. } => parent.zero(),
        }
    }

    pub fn one(&self) -> RElem {
        match self {
            StarRing::Matrix { space, .. } => RElem::Mat(Mat::identity(space.dim())),
            StarRing::Product { factors } => {
                RElem::Tuple(factors.iter().map(|f| f.one()).collect())
            }
            StarRing::Generated { parent, .. } => parent.one(),
        }
    }

    pub fn add(&self, a: &RElem, b: &RElem) -> RElem {
        match self {
            StarRing::Matrix { space, .. } => {
                RElem::Mat(a.as_mat().add(space.field(), b.as_mat()))
            }
            StarRing::Product { factors } => RElem::Tuple(
                factors
                    .iter()
                    .zip(a.as_tuple())
                    .zip(b.as_tuple())
                    .map(|((f, x), y)| f.add(x, y))
                    .collect(),
            ),
            StarRing::Generated { parent, .. } => parent.add(a, b),
        }
    }

    pub fn neg(&self, a: &RElem) -> RElem {
        match self {
            StarRing::Matrix { space, .. } => RElem::Mat(a.as_mat().neg(space.field())),
            StarRing::Product { factors } => RElem::Tuple(
                factors.iter().zip(a.as_tuple()).map(|(f, x)| f.neg(x)).collect(),
            ),
            StarRing::Generated { parent, .. } => parent.neg(a),
        }
    }

    pub fn sub(&self, a: &RElem, b: &RElem) -> RElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &RElem, b: &RElem) -> RElem {
        match self {
            StarRing::Matrix { space, .. } => {
                RElem::Mat(a.as_mat().mul(space.field(), b.as_mat()))
            }
            StarRing::Product { factors } => RElem::Tuple(
                factors
                    .iter()
                    .zip(a.as_tuple())
                    .zip(b.as_tuple())
                    .map(|((f, x), y)| f.mul(x, y))
                    .collect(),
            ),
            StarRing::Generated { parent, .. } => parent.mul(a, b),
        }
    }

    /// Action of the prime subfield (the common scalar structure of all
    /// variants).
    pub fn scalar(&self, lambda: u64, a: &RElem) -> RElem {
        match self {
            StarRing::Matrix { space, .. } => {
                let f = space.field();
                RElem::Mat(a.as_mat().scalar_mul(f, f.from_prime(lambda)))
            }
            StarRing::Product { factors } => RElem::Tuple(
                factors.iter().zip(a.as_tuple()).map(|(f, x)| f.scalar(lambda, x)).collect(),
            ),
            StarRing::Generated { parent, .. } => parent.scalar(lambda, a),
        }
    }

    /// The involution: Gram adjoint on matrices, componentwise on tuples.
    pub fn star(&self, a: &RElem) -> RElem {
        match self {
            StarRing::Matrix { space, gram_inv } => {
                let f = space.field();
                let adj = gram_inv
                    .mul(f, &a.as_mat().conj_transpose(f))
                    .mul(f, space.gram());
                RElem::Mat(adj)
            }
            StarRing::Product { factors } => RElem::Tuple(
                factors.iter().zip(a.as_tuple()).map(|(f, x)| f.star(x)).collect(),
            ),
            StarRing::Generated { parent, .. } => parent.star(a),
        }
    }

    pub fn is_zero(&self, a: &RElem) -> bool {
        *a == self.zero()
    }

    pub fn is_idempotent(&self, e: &RElem) -> bool {
        self.mul(e, e) == *e
    }

    pub fn is_projection(&self, e: &RElem) -> bool {
        self.is_idempotent(e) && self.star(e) == *e
    }

    /// The underlying matrix space for `Matrix` (and `Generated` over it).
    pub fn matrix_space(&self) -> Option<&GramSpace> {
        match self {
            StarRing::Matrix { space, .. } => Some(space),
            StarRing::Generated { parent, .. } => parent.matrix_space(),
            StarRing::Product { .. } => None,
        }
    }

    /// Some `x` with `axa = a`.
    ///
    /// Matrix rings: by rank factorization `A = BC` with `B` the pivot
    /// columns of `A` and `C` the nonzero rows of `rref(A)`; then
    /// `x = C^R B^L` from one-sided inverses solved deterministically.
    /// Products: componentwise. Generated: first carrier element that
    /// works.
    pub fn quasi_inverse(&self, a: &RElem) -> Result<RElem> {
        match self {
            StarRing::Matrix { space, .. } => {
                let f = space.field();
                let m = a.as_mat();
                if m.is_zero() {
                    return Ok(self.zero());
                }
                Ok(RElem::Mat(matrix_quasi_inverse(f, m)))
            }
            StarRing::Product { factors } => Ok(RElem::Tuple(
                factors
                    .iter()
                    .zip(a.as_tuple())
                    .map(|(f, x)| f.quasi_inverse(x))
                    .collect::<Result<_>>()?,
            )),
            StarRing::Generated { parent, carrier } => carrier
                .iter()
                .find(|x| parent.mul(&parent.mul(a, x), a) == *a)
                .cloned()
                .ok_or(Error::NotRegularElement),
        }
    }

    /// Idempotent `e = a·x` with `eR = aR`.
    pub fn idempotent_generator(&self, a: &RElem) -> Result<RElem> {
        let x = self.quasi_inverse(a)?;
        Ok(self.mul(a, &x))
    }

    /// The unique projection `e = e² = e*` with `eR = aR`: the orthogonal
    /// projection onto `im a`. Exists iff `im a` is a summand.
    pub fn projection_generator(&self, a: &RElem) -> Result<RElem> {
        let StarRing::Matrix { space, .. } = self else {
            return Err(Error::NotStarRegular);
        };
        let image = column_space(space.field(), a.as_mat());
        let report = space.radical_report(&image)?;
        if !report.summand {
            return Err(Error::NotStarRegular);
        }
        Ok(RElem::Mat(orthogonal_projection(space, &image)?))
    }

    /// Idempotent `e ∈ aR + bR` with `ea = a` and `eb = b`.
    pub fn common_left_unit(&self, a: &RElem, b: &RElem) -> Result<RElem> {
        let e1 = self.idempotent_generator(a)?;
        let b1 = self.sub(b, &self.mul(&e1, b));
        // f = b1·x has e1·f = 0 because e1·b1 = 0
        let f = self.idempotent_generator(&b1)?;
        let e = self.sub(&self.add(&e1, &f), &self.mul(&f, &e1));
        debug_assert!(self.is_idempotent(&e));
        debug_assert_eq!(self.mul(&e, a), *a);
        debug_assert_eq!(self.mul(&e, b), *b);
        Ok(e)
    }

    pub fn regularity_report(&self) -> Result<RegularityReport> {
        match self {
            StarRing::Matrix { space, .. } => matrix_regularity(space),
            _ => enumerated_regularity(self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    /// Every element has a quasi-inverse.
    pub regular: bool,
    /// `r*r = 0` implies `r = 0`.
    pub proper: bool,
    /// Regular and proper.
    pub star_regular: bool,
    /// A projection generating a minimal right ideal exists (rank 1 in the
    /// matrix case).
    pub has_rank1_projection: bool,
    /// Nonzero `w` with `w*w = 0`, when the ring is not proper.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improper_witness: Option<RElem>,
}

fn matrix_quasi_inverse(f: &InvolutiveField, a: &Mat) -> Mat {
    let n = a.rows();
    let (rref, pivots) = a.rref(f);
    let r = pivots.len();
    debug_assert!(r > 0);
    // C: the nonzero rows of rref (r x n); B: the pivot columns of A (n x r)
    let mut c = Mat::zeros(r, n);
    let mut b = Mat::zeros(n, r);
    for (i, &pivot) in pivots.iter().enumerate() {
        for j in 0..n {
            c.set(i, j, rref.get(i, j));
        }
        for row in 0..n {
            b.set(row, i, a.get(row, pivot));
        }
    }
    // left inverse of B: L·B = I_r, via B^T L^T = I_r (consistent: full
    // column rank); right inverse of C: C·R = I_r (full row rank)
    let lt = b.transpose().solve(f, &Mat::identity(r)).expect("B has full column rank");
    let rr = c.solve(f, &Mat::identity(r)).expect("C has full row rank");
    let x = rr.mul(f, &lt.transpose());
    debug_assert_eq!(a.mul(f, &x).mul(f, a), *a);
    x
}

/// Column space of `a` as a subspace (row-space of the transpose).
pub fn column_space(f: &InvolutiveField, a: &Mat) -> Subspace {
    Subspace::from_mat(f, &a.transpose())
}

/// The projection onto `U` along `U^⊥` as a matrix acting on column
/// vectors: `T^T · diag(I,0) · T^-T` for `T` stacking bases of `U` and
/// `U^⊥`.
pub fn orthogonal_projection(space: &GramSpace, u: &Subspace) -> Result<Mat> {
    let report = space.radical_report(u)?;
    if !report.summand {
        return Err(Error::NotASummand);
    }
    let f = space.field();
    let n = space.dim();
    let perp = space.orthogonal(u)?;
    let t = u.basis().vstack(perp.basis()).transpose();
    let t_inv = t.inverse(f).expect("direct sum basis is invertible");
    let mut d = Mat::zeros(n, n);
    for i in 0..u.dim() {
        d.set(i, i, 1);
    }
    Ok(t.mul(f, &d).mul(f, &t_inv))
}

fn matrix_regularity(space: &GramSpace) -> Result<RegularityReport> {
    let f = space.field();
    let n = space.dim();
    let class = space.class();
    // full matrix rings over fields are regular; this is also what the
    // rank-factorization quasi-inverse certifies elementwise
    let regular = true;

    // properness: r*r = 0 for r = v·w^T with v isotropic and any w, since
    // <rx, ry> = (w^T x)* <v,v> (w^T y); conversely anisotropic spaces are
    // *-regular. So proper == anisotropic, and small rings double-check by
    // scanning every element.
    let proper = class.anisotropic;
    let ring_size = f.order().saturating_pow((n * n) as u32);
    let mut improper_witness = None;
    if !proper {
        improper_witness = isotropic_rank1(space);
    }
    if ring_size <= PROPER_SCAN_CAP {
        let mut scan_witness = None;
        let ring = StarRing::matrix(space.clone())?;
        for m in Mat::enumerate_all(f, n, n, PROPER_SCAN_CAP)? {
            if m.is_zero() {
                continue;
            }
            let e = RElem::Mat(m);
            if ring.is_zero(&ring.mul(&ring.star(&e), &e)) {
                scan_witness = Some(e);
                break;
            }
        }
        debug_assert_eq!(proper, scan_witness.is_none());
        if scan_witness.is_some() {
            improper_witness = scan_witness;
        }
    }

    // rank-1 projections are the projections onto 1-dimensional summands;
    // a line vF is a summand iff <v,v> != 0, so existence == not alternate
    let has_rank1_projection = !class.alternate;
    Ok(RegularityReport {
        regular,
        proper,
        star_regular: regular && proper,
        has_rank1_projection,
        improper_witness,
    })
}

/// First rank-1 matrix `w` with `w*w = 0`, built from an isotropic vector:
/// the matrix with every column a multiple of `v`.
fn isotropic_rank1(space: &GramSpace) -> Option<RElem> {
    let f = space.field();
    let n = space.dim();
    let total = f.order().saturating_pow(n as u32);
    for idx in 1..total {
        let v = vec_from_index(f, n, idx);
        if space.inner(&v, &v).ok()? != 0 {
            continue;
        }
        // w = v · e_0^T: first column v, rest zero
        let mut w = Mat::zeros(n, n);
        for (i, &vi) in v.iter().enumerate() {
            w.set(i, 0, vi);
        }
        return Some(RElem::Mat(w));
    }
    None
}

fn enumerated_regularity(ring: &StarRing) -> Result<RegularityReport> {
    let size = ring.size();
    if size > IDEAL_SCAN_CAP {
        return Err(Error::EnumerationCap { count: size, cap: IDEAL_SCAN_CAP });
    }
    let carrier = ring.carrier()?;
    let regular = carrier.iter().all(|a| ring.quasi_inverse(a).is_ok());
    let mut improper_witness = None;
    for a in &carrier {
        if !ring.is_zero(a) && ring.is_zero(&ring.mul(&ring.star(a), a)) {
            improper_witness = Some(a.clone());
            break;
        }
    }
    let proper = improper_witness.is_none();

    // right-ideal sets aR, to find projections with aR minimal
    let right_ideal = |a: &RElem| -> Vec<RElem> {
        let mut ideal: Vec<RElem> = carrier.iter().map(|r| ring.mul(a, r)).collect();
        ideal.sort_unstable();
        ideal.dedup();
        ideal
    };
    let ideals: Vec<Vec<RElem>> = carrier.iter().map(right_ideal).collect();
    let is_minimal = |target: &Vec<RElem>| -> bool {
        target.len() > 1
            && !ideals.iter().any(|other| {
                other.len() > 1
                    && other != target
                    && other.iter().all(|x| target.binary_search(x).is_ok())
            })
    };
    let has_rank1_projection = carrier
        .iter()
        .zip(&ideals)
        .any(|(e, ideal)| ring.is_projection(e) && is_minimal(ideal));
    Ok(RegularityReport {
        regular,
        proper,
        star_regular: regular && proper,
        has_rank1_projection,
        improper_witness,
    })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::field::Fel;
    use crate::space::tests::{gf2_symplectic, gf3_euclidean, gf4_hermitian};

    pub(crate) fn ring_of(space: GramSpace) -> StarRing {
        StarRing::matrix(space).unwrap()
    }

    fn mat(rows: &[Vec<Fel>]) -> RElem {
        RElem::Mat(Mat::from_rows(rows))
    }

    #[test]
    fn adjoint_of_identity_and_known_forms() {
        let r3 = ring_of(gf3_euclidean());
        assert_eq!(r3.star(&r3.one()), r3.one());
        // orthonormal gram, identity involution: adjoint = transpose
        let a = mat(&[vec![1, 2], vec![0, 1]]);
        assert_eq!(r3.star(&a), mat(&[vec![1, 0], vec![2, 1]]));

        // hermitian gram I over GF(4): adjoint = conjugate transpose
        let r4 = ring_of(gf4_hermitian());
        let a = mat(&[vec![2, 1], vec![0, 3]]);
        assert_eq!(r4.star(&a), mat(&[vec![3, 0], vec![1, 2]]));

        // symplectic GF(2): [[a,b],[c,d]]* = [[d,b],[c,a]]
        let rs = ring_of(gf2_symplectic());
        for m in Mat::enumerate_all(rs.matrix_space().unwrap().field(), 2, 2, 100).unwrap() {
            let (a, b, c, d) = (m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1));
            let star = rs.star(&RElem::Mat(m));
            assert_eq!(star, mat(&[vec![d, b], vec![c, a]]));
        }
    }

    #[test]
    fn adjoint_satisfies_defining_equation() {
        for space in [gf2_symplectic(), gf3_euclidean(), gf4_hermitian()] {
            let ring = ring_of(space.clone());
            let f = space.field();
            let n = space.dim();
            for m in Mat::enumerate_all(f, n, n, 1 << 10).unwrap() {
                let a = RElem::Mat(m.clone());
                let astar = ring.star(&a).as_mat().clone();
                let total = f.order().pow(n as u32);
                for ui in 0..total {
                    let u = vec_from_index(f, n, ui);
                    let au = m.mul(f, &Mat::col_vec(&u));
                    for vi in 0..total {
                        let v = vec_from_index(f, n, vi);
                        let astarv = astar.mul(f, &Mat::col_vec(&v));
                        // <Au, v> = <u, A*v>
                        let lhs = space.inner(&au.col(0), &v).unwrap();
                        let rhs = space.inner(&u, &astarv.col(0)).unwrap();
                        assert_eq!(lhs, rhs, "A = {m:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn star_is_involutive_antiautomorphism() {
        for space in [gf2_symplectic(), gf3_euclidean(), gf4_hermitian()] {
            let ring = ring_of(space);
            let carrier = ring.carrier().unwrap();
            for a in &carrier {
                assert_eq!(ring.star(&ring.star(a)), *a);
                for b in &carrier {
                    assert_eq!(
                        ring.star(&ring.mul(a, b)),
                        ring.mul(&ring.star(b), &ring.star(a))
                    );
                    assert_eq!(
                        ring.star(&ring.add(a, b)),
                        ring.add(&ring.star(a), &ring.star(b))
                    );
                }
            }
        }
    }

    #[test]
    fn quasi_inverse_cases() {
        let ring = ring_of(gf3_euclidean());
        // zero
        assert_eq!(ring.quasi_inverse(&ring.zero()).unwrap(), ring.zero());
        // invertible: x = a^-1
        let a = mat(&[vec![1, 1], vec![0, 1]]);
        let x = ring.quasi_inverse(&a).unwrap();
        assert_eq!(ring.mul(&a, &x), ring.one());
        // the known singular example
        let a = mat(&[vec![1, 1], vec![0, 0]]);
        let x = ring.quasi_inverse(&a).unwrap();
        assert_eq!(ring.mul(&ring.mul(&a, &x), &a), a);
        // exhaustive over a small ring
        let r2 = ring_of(gf2_symplectic());
        for a in r2.carrier().unwrap() {
            let x = r2.quasi_inverse(&a).unwrap();
            assert_eq!(r2.mul(&r2.mul(&a, &x), &a), a);
        }
    }

    #[test]
    fn idempotent_generator_matches_image() {
        let ring = ring_of(gf3_euclidean());
        let f = ring.matrix_space().unwrap().field().clone();
        let a = mat(&[vec![1, 1], vec![0, 0]]);
        let e = ring.idempotent_generator(&a).unwrap();
        assert!(ring.is_idempotent(&e));
        assert_eq!(
            column_space(&f, e.as_mat()),
            Subspace::from_vectors(&f, 2, &[vec![1, 0]]),
            "im(e) = span(1,0), the column space of a"
        );
        // invertible element generates the unit ideal
        let u = mat(&[vec![1, 1], vec![0, 1]]);
        assert_eq!(ring.idempotent_generator(&u).unwrap(), ring.one());
        // exhaustively: im(e) = im(a)
        for m in Mat::enumerate_all(&f, 2, 2, 100).unwrap() {
            let a = RElem::Mat(m.clone());
            let e = ring.idempotent_generator(&a).unwrap();
            assert!(ring.is_idempotent(&e));
            assert_eq!(column_space(&f, e.as_mat()), column_space(&f, &m));
        }
    }

    #[test]
    fn projection_generator_on_anisotropic_space() {
        let ring = ring_of(gf3_euclidean());
        assert_eq!(ring.projection_generator(&ring.zero()).unwrap(), ring.zero());
        let a = mat(&[vec![1, 1], vec![0, 0]]);
        let e = ring.projection_generator(&a).unwrap();
        assert_eq!(e, mat(&[vec![1, 0], vec![0, 0]]));
        assert!(ring.is_projection(&e));

        // isotropic image: no projection generator
        let r4 = ring_of(gf4_hermitian());
        let a = mat(&[vec![1, 0], vec![1, 0]]); // im = span(1,1), isotropic
        assert!(matches!(r4.projection_generator(&a), Err(Error::NotStarRegular)));
        // product rings refuse outright
        let prod = StarRing::product(vec![ring_of(gf3_euclidean())]).unwrap();
        let z = prod.zero();
        assert!(matches!(prod.projection_generator(&z), Err(Error::NotStarRegular)));
    }

    #[test]
    fn orthogonal_projection_properties() {
        let space = gf3_euclidean();
        let f = space.field().clone();
        let ring = ring_of(space.clone());
        let u = Subspace::from_vectors(&f, 2, &[vec![1, 0]]);
        let p = orthogonal_projection(&space, &u).unwrap();
        assert_eq!(p, Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        assert_eq!(
            orthogonal_projection(&space, &Subspace::full(2)).unwrap(),
            Mat::identity(2)
        );
        assert_eq!(
            orthogonal_projection(&space, &Subspace::zero(2)).unwrap(),
            Mat::zeros(2, 2)
        );
        // a slanted line: p^2 = p, p* = p, im p = U
        let u = Subspace::from_vectors(&f, 2, &[vec![1, 1]]);
        let p = orthogonal_projection(&space, &u).unwrap();
        let pe = RElem::Mat(p.clone());
        assert!(ring.is_projection(&pe));
        assert_eq!(column_space(&f, &p), u);
        // isotropic line of the symplectic plane is not a summand
        let s = gf2_symplectic();
        let f2 = s.field().clone();
        let iso = Subspace::from_vectors(&f2, 2, &[vec![1, 0]]);
        assert!(matches!(
            orthogonal_projection(&s, &iso),
            Err(Error::NotASummand)
        ));
    }

    #[test]
    fn common_left_unit_examples() {
        let ring = ring_of(gf2_symplectic());
        let z = ring.zero();
        assert_eq!(ring.common_left_unit(&z, &z).unwrap(), z);
        let a = mat(&[vec![1, 0], vec![0, 0]]);
        let b = mat(&[vec![0, 0], vec![0, 1]]);
        assert_eq!(ring.common_left_unit(&a, &b).unwrap(), ring.one());
        // invertible a forces e = 1
        let inv = mat(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(ring.common_left_unit(&inv, &a).unwrap(), ring.one());
        // exhaustive postcondition check on all pairs
        let carrier = ring.carrier().unwrap();
        for a in &carrier {
            for b in &carrier {
                let e = ring.common_left_unit(a, b).unwrap();
                assert!(ring.is_idempotent(&e));
                assert_eq!(ring.mul(&e, a), *a);
                assert_eq!(ring.mul(&e, b), *b);
            }
        }
    }

    #[test]
    fn regularity_of_euclidean_plane_ring() {
        let r = ring_of(gf3_euclidean()).regularity_report().unwrap();
        assert!(r.regular && r.proper && r.star_regular && r.has_rank1_projection);
        assert!(r.improper_witness.is_none());
    }

    #[test]
    fn regularity_of_symplectic_ring() {
        let ring = ring_of(gf2_symplectic());
        let r = ring.regularity_report().unwrap();
        assert!(r.regular);
        assert!(!r.proper && !r.star_regular);
        assert!(!r.has_rank1_projection, "alternate: only 0 and I are projections");
        let w = r.improper_witness.unwrap();
        assert!(!ring.is_zero(&w));
        assert!(ring.is_zero(&ring.mul(&ring.star(&w), &w)));
        // directly: the only projections in the 16-element ring are 0, I
        let projections: Vec<RElem> =
            ring.carrier().unwrap().into_iter().filter(|e| ring.is_projection(e)).collect();
        assert_eq!(projections, vec![ring.zero(), ring.one()]);
    }

    #[test]
    fn regularity_of_gf4_hermitian_ring() {
        let ring = ring_of(gf4_hermitian());
        let r = ring.regularity_report().unwrap();
        assert!(r.regular && !r.proper && !r.star_regular);
        assert!(r.has_rank1_projection, "not alternate: (1,0) has norm 1");
        let w = r.improper_witness.unwrap();
        assert!(ring.is_zero(&ring.mul(&ring.star(&w), &w)));
        // the transpose orientation: r with rows (1,1),(0,0) kills r·r*
        let named = mat(&[vec![1, 1], vec![0, 0]]);
        assert!(ring.is_zero(&ring.mul(&named, &ring.star(&named))));
        assert!(!ring.is_zero(&ring.mul(&ring.star(&named), &named)));
    }

    #[test]
    fn product_ring_componentwise() {
        let m2 = || ring_of(gf2_symplectic());
        let prod = StarRing::product(vec![m2(), m2()]).unwrap();
        assert_eq!(prod.size(), 256);
        let carrier = prod.carrier().unwrap();
        assert_eq!(carrier.len(), 256);
        let r = prod.regularity_report().unwrap();
        assert!(r.regular && !r.proper);
        // componentwise quasi-inverse
        let a = RElem::Tuple(vec![
            mat(&[vec![1, 0], vec![0, 0]]),
            mat(&[vec![0, 1], vec![0, 0]]),
        ]);
        let x = prod.quasi_inverse(&a).unwrap();
        assert_eq!(prod.mul(&prod.mul(&a, &x), &a), a);
        // mixed characteristics refused
        assert!(matches!(
            StarRing::product(vec![m2(), ring_of(gf3_euclidean())]),
            Err(Error::FieldMismatch)
        ));
    }

    #[test]
    fn generated_subring_of_diagonals() {
        let ring = ring_of(gf3_euclidean());
        let sub = StarRing::generated(&ring, &[mat(&[vec![1, 0], vec![0, 0]])]).unwrap();
        assert_eq!(sub.size(), 9, "all diagonal matrices arise");
        let carrier = sub.carrier().unwrap();
        assert!(carrier.iter().all(|e| {
            let m = e.as_mat();
            m.get(0, 1) == 0 && m.get(1, 0) == 0
        }));
        let r = sub.regularity_report().unwrap();
        assert!(r.regular && r.proper && r.star_regular);
        // quasi-inverse inside the subring stays diagonal
        let a = mat(&[vec![2, 0], vec![0, 0]]);
        let x = sub.quasi_inverse(&a).unwrap();
        assert_eq!(sub.mul(&sub.mul(&a, &x), &a), a);
        assert!(carrier.contains(&x));
    }

    #[test]
    fn generated_subring_with_nilpotents_is_not_regular() {
        let ring = ring_of(gf2_symplectic());
        // upper triangular matrices: e12 is not regular inside
        let sub = StarRing::generated(&ring, &[mat(&[vec![0, 1], vec![0, 0]])]).unwrap();
        let nil = mat(&[vec![0, 1], vec![0, 0]]);
        assert!(matches!(sub.quasi_inverse(&nil), Err(Error::NotRegularElement)));
        let r = sub.regularity_report().unwrap();
        assert!(!r.regular);
    }

    #[test]
    fn elements_serialize_as_row_major_code_lists() {
        let a = mat(&[vec![0, 1], vec![2, 3]]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, "[[0,1],[2,3]]");
        assert_eq!(serde_json::from_str::<RElem>(&json).unwrap(), a);

        let t = RElem::Tuple(vec![mat(&[vec![1]]), mat(&[vec![0, 1], vec![0, 0]])]);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "[[[1]],[[0,1],[0,0]]]");
        assert_eq!(serde_json::from_str::<RElem>(&json).unwrap(), t);

        // the empty list is the 0x0 matrix, the identity of the empty ring
        assert_eq!(serde_json::from_str::<RElem>("[]").unwrap(), RElem::Mat(Mat::zeros(0, 0)));
        // ragged rows are rejected
        assert!(serde_json::from_str::<RElem>("[[1,0],[1]]").is_err());
    }
}
