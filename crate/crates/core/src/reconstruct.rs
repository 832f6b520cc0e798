//! Rebuilding a sesquilinear space from its endomorphism ∗-ring.
//!
//! A matrix ∗-ring `R = LEnd(V)` determines the space it came from up to
//! similitude. The witness is any rank-1 idempotent `e` that is either a
//! projection (`e = e∗`) or of alternate type (`e e∗ = 0 = e∗ e`): the left
//! ideal `Re` is an `n`-dimensional vector space over `eRe ≅ F`, and
//!
//! ```text
//! ⟨x, y⟩ = α⁻¹(ψ · x∗ · y)          x, y ∈ Re
//! ```
//!
//! is a scalar product on it, where `ψ = e` in the projection case, `ψ` is
//! any nonzero element of `e R e∗` in the alternate case, and `α(λ) = λ e`
//! is the isomorphism of `F` onto `eRe`. [`reconstruct_space`] evaluates
//! this Gram matrix on the basis `x_i = ε_i ρ` of `Re` (for the rank
//! factorization `e = κ ρ`) and packages the action of `R` on `Re` as a
//! ring homomorphism whose ∗-compatibility is checkable.

use crate::error::{Error, Result};
use crate::field::{Fel, InvolutiveField};
use crate::hom::RingHom;
use crate::mat::{vec_from_index, Mat};
use crate::ring::{orthogonal_projection, RElem, StarRing};
use crate::space::GramSpace;
use crate::subspace::Subspace;

/// A space rebuilt from ring data, together with the representation of the
/// ring on it.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub space: GramSpace,
    /// The ring acting on the rebuilt space. In the chosen basis of `Re`
    /// left multiplication by `r` has matrix `r` itself, so the map is
    /// conjugation by the identity; its ∗-law content is that the Gram
    /// adjoint of the rebuilt space agrees with the original one.
    pub rep: RingHom,
}

/// Scalar `c` with `x = c·e`, read off at the first nonzero entry of `e`.
fn scalar_multiple_of(f: &InvolutiveField, e: &Mat, x: &Mat) -> Result<Fel> {
    let (i0, j0) = (0..e.rows() * e.cols())
        .map(|t| (t / e.cols(), t % e.cols()))
        .find(|&(i, j)| e.get(i, j) != f.zero())
        .ok_or_else(|| Error::InvalidInput("zero idempotent".into()))?;
    let c = f.mul(x.get(i0, j0), f.inv(e.get(i0, j0))?);
    debug_assert_eq!(e.scalar_mul(f, c), *x, "not a scalar multiple of e");
    Ok(c)
}

/// Rebuild the space of a matrix ∗-ring from a rank-1 idempotent `e` with
/// `e = e∗` or `e e∗ = 0 = e∗ e`.
///
/// The result's `space` is similar to the ring's underlying space, and
/// `rep` is a ∗-isomorphism onto the endomorphism ring of the rebuilt
/// space (verifiable with [`RingHom::check`]).
pub fn reconstruct_space(ring: &StarRing, e: &RElem) -> Result<Reconstruction> {
    let space_v = ring
        .matrix_space()
        .ok_or_else(|| Error::InvalidInput("reconstruction needs a matrix ring".into()))?;
    let f = space_v.field().clone();
    let n = space_v.dim();

    let em = e.as_mat();
    if em.rows() != n || em.cols() != n {
        return Err(Error::NonSquareGram { rows: em.rows(), cols: em.cols() });
    }
    if ring.mul(e, e) != *e {
        return Err(Error::BadIdempotent);
    }
    let rank = em.rank(&f);
    if rank != 1 {
        return Err(Error::RankNotOne(rank));
    }
    let e_star = ring.star(e);
    let projection = e_star == *e;
    let zero = ring.zero();
    let alternate =
        ring.mul(e, &e_star) == zero && ring.mul(&e_star, e) == zero;
    if !projection && !alternate {
        return Err(Error::BadIdempotent);
    }

    // rank factorization e = κρ: ρ = the nonzero row of rref(e), κ = the
    // pivot column of e.
    let (rref, pivots) = em.rref(&f);
    let rho: Vec<Fel> = rref.row(0).to_vec();
    debug_assert_eq!(pivots.len(), 1);

    // ψ: e itself, or the first nonzero e·E_ij·e∗ in the alternate case.
    let psi = if projection {
        em.clone()
    } else {
        let esm = e_star.as_mat();
        let mut found = None;
        'scan: for i in 0..n {
            for j in 0..n {
                let mut unit = Mat::zeros(n, n);
                unit.set(i, j, f.one());
                let cand = em.mul(&f, &unit).mul(&f, esm);
                if !cand.is_zero() {
                    found = Some(cand);
                    break 'scan;
                }
            }
        }
        found.ok_or(Error::BadIdempotent)?
    };

    // Basis x_i = ε_i ρ of Re; Gram entry B_ij = α⁻¹(ψ x_i∗ x_j).
    let basis: Vec<RElem> = (0..n)
        .map(|i| {
            let mut x = Mat::zeros(n, n);
            for (j, &c) in rho.iter().enumerate() {
                x.set(i, j, c);
            }
            RElem::Mat(x)
        })
        .collect();
    let mut gram = Mat::zeros(n, n);
    for i in 0..n {
        let xi_star = ring.star(&basis[i]);
        for (j, xj) in basis.iter().enumerate() {
            let prod = psi.mul(&f, xi_star.as_mat()).mul(&f, xj.as_mat());
            gram.set(i, j, scalar_multiple_of(&f, em, &prod)?);
        }
    }

    let space = GramSpace::new(f, gram)?;
    space.require_nondegenerate()?;
    let target = StarRing::matrix(space.clone())?;
    let rep = RingHom::conjugation(ring.clone(), target, Mat::identity(n))?;
    Ok(Reconstruction { space, rep })
}

/// A rank-1 idempotent suitable for [`reconstruct_space`]: the orthogonal
/// projection onto the first non-isotropic line when one exists, otherwise
/// (alternate space) `v·ρ` for the first covector `ρ` with `ρ v = 1` and
/// `ρ G⁻¹ ρ∗ᵀ = 0`.
pub fn find_rank1_idempotent(space: &GramSpace) -> Result<RElem> {
    space.require_nondegenerate()?;
    let f = space.field();
    let n = space.dim();
    if n == 0 {
        return Err(Error::RankNotOne(0));
    }
    if !space.class().alternate {
        let count = f.order().saturating_pow(n as u32);
        for idx in 1..count {
            let v = vec_from_index(f, n, idx);
            if space.inner(&v, &v)? != f.zero() {
                let line = Subspace::from_vectors(f, n, &[v]);
                return Ok(RElem::Mat(orthogonal_projection(space, &line)?));
            }
        }
        unreachable!("non-alternate spaces have a non-isotropic vector");
    }
    // alternate: every vector is isotropic, so e∗e = 0 is automatic for
    // e = v·ρ; it remains to pick ρ with ρv = 1 (idempotence) and
    // ρ G⁻¹ ρ∗ᵀ = 0 (which forces e·e∗ = 0).
    let v = vec_from_index(f, n, 1);
    let g_inv = space
        .gram()
        .inverse(f)
        .expect("nondegenerate gram is invertible");
    for rho in Mat::enumerate_all(f, 1, n, f.order().saturating_pow(n as u32))? {
        let rv = rho.mul(f, &Mat::col_vec(&v));
        if rv.get(0, 0) != f.one() {
            continue;
        }
        let q = rho.mul(f, &g_inv).mul(f, &rho.conj_transpose(f));
        if q.get(0, 0) != f.zero() {
            continue;
        }
        let e = Mat::col_vec(&v).mul(f, &rho);
        debug_assert_eq!(e.mul(f, &e), e);
        return Ok(RElem::Mat(e));
    }
    Err(Error::Infeasible(
        "no alternate-type rank-1 idempotent found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::tests::ring_of;
    use crate::space::tests::{gf, gf2_symplectic, gf3_euclidean, gf4_hermitian, space};
    use crate::field::Involution;

    #[test]
    fn euclidean_projection_case_rebuilds_identity_gram() {
        let sp = gf3_euclidean();
        let ring = ring_of(sp.clone());
        let e = RElem::Mat(Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        let rec = reconstruct_space(&ring, &e).unwrap();
        assert_eq!(rec.space.gram(), &Mat::identity(2));
        assert!(rec.space.is_similar(&sp).unwrap());
        let report = rec.rep.check().unwrap();
        assert!(report.is_star_hom, "{:?}", report.witness);
        assert!(report.injective);
        assert!(rec.rep.is_surjective().unwrap());
    }

    #[test]
    fn one_dimensional_ring_gives_scalar_product() {
        let f = gf(2, 2, Involution::FrobeniusHalf);
        // gram [ω] on a line; e = 1 rebuilds ⟨λ,μ⟩ = λ∗μ, i.e. gram [1]
        let sp = space(&f, &[vec![2]]);
        let ring = ring_of(sp.clone());
        let rec = reconstruct_space(&ring, &ring.one()).unwrap();
        assert_eq!(rec.space.gram(), &Mat::from_rows(&[vec![1]]));
        assert!(rec.space.is_similar(&sp).unwrap());
    }

    #[test]
    fn symplectic_alternate_case_rebuilds_symplectic_gram() {
        let sp = gf2_symplectic();
        let ring = ring_of(sp.clone());
        let e = RElem::Mat(Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        let rec = reconstruct_space(&ring, &e).unwrap();
        assert_eq!(rec.space.gram(), sp.gram());
        assert!(rec.space.is_similar(&sp).unwrap());
        let report = rec.rep.check().unwrap();
        assert!(report.is_star_hom, "{:?}", report.witness);
        assert!(report.injective);
        assert!(rec.rep.is_surjective().unwrap());
    }

    #[test]
    fn scaled_space_rebuilds_to_similar_space() {
        let f = gf(3, 1, Involution::Identity);
        let sp = space(&f, &[vec![2, 0], vec![0, 2]]);
        let ring = ring_of(sp.clone());
        let e = find_rank1_idempotent(&sp).unwrap();
        let rec = reconstruct_space(&ring, &e).unwrap();
        assert!(rec.space.is_similar(&sp).unwrap());
        assert!(rec.rep.check().unwrap().is_star_hom);
    }

    #[test]
    fn found_idempotents_are_frozen() {
        // non-alternate: orthogonal projection onto the first good line
        let e = find_rank1_idempotent(&gf3_euclidean()).unwrap();
        assert_eq!(e.as_mat(), &Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        let e = find_rank1_idempotent(&gf4_hermitian()).unwrap();
        assert_eq!(e.as_mat(), &Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        // alternate: v·ρ with the first admissible covector
        let sp = gf2_symplectic();
        let e = find_rank1_idempotent(&sp).unwrap();
        assert_eq!(e.as_mat(), &Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        let ring = ring_of(sp);
        let es = ring.star(&e);
        assert!(ring.is_zero(&ring.mul(&e, &es)));
        assert!(ring.is_zero(&ring.mul(&es, &e)));
    }

    #[test]
    fn bad_idempotents_are_rejected() {
        let ring = ring_of(gf3_euclidean());
        // not idempotent
        let nilpotent = RElem::Mat(Mat::from_rows(&[vec![0, 1], vec![0, 0]]));
        assert!(matches!(
            reconstruct_space(&ring, &nilpotent),
            Err(Error::BadIdempotent)
        ));
        // idempotent but rank 2
        assert!(matches!(
            reconstruct_space(&ring, &ring.one()),
            Err(Error::RankNotOne(2))
        ));
        // rank-1 idempotent that is neither projection nor alternate type
        let slanted = RElem::Mat(Mat::from_rows(&[vec![1, 1], vec![0, 0]]));
        assert!(matches!(
            reconstruct_space(&ring, &slanted),
            Err(Error::BadIdempotent)
        ));
    }
}
