//! Scalar extension of spaces and the embeddings it induces.
//!
//! A field embedding `α: F → K` that respects the involutions turns a
//! sesquilinear space over `F` into one over `K` with the entrywise-`α`
//! Gram matrix. That single move lifts in two directions: the matrix
//! ∗-ring of the source embeds into the matrix ∗-ring of the target
//! (entrywise `α` again), and the subspace lattice embeds by sending a
//! subspace to the span of its `α`-image. [`joint_extension`] glues two
//! such extensions over a common scalar field into one orthogonal-sum
//! space, embedding the product of the rings block-diagonally and the
//! product of the lattices componentwise. Every embedding produced here
//! is re-verified and returned with its verification report.

use crate::bridge::lattice_of_space;
use crate::congruence::{hom_tools, HomReport, LatticeHom};
use crate::error::{Error, Result};
use crate::field::{Fel, FieldEmbedding, InvolutiveField};
use crate::hom::{RingHom, RingHomReport};
use crate::lattice::GaloisLattice;
use crate::ring::StarRing;
use crate::space::GramSpace;
use crate::subspace::Subspace;

/// Finds the lexicographically least involution-compatible embedding of
/// one field into another. See [`FieldEmbedding::new`].
pub fn field_embedding(
    source: &InvolutiveField,
    target: &InvolutiveField,
) -> Result<FieldEmbedding> {
    FieldEmbedding::new(source, target)
}

/// A space embedded into its scalar extension: the coordinate map
/// `v ↦ (α(v_1), …, α(v_n))` into `K^n` carrying the entrywise-`α` Gram
/// matrix. The map is `α`-semilinear, injective, its image spans the
/// target over `K` (it contains the standard basis), and it transports
/// the form: `⟨ω(v), ω(w)⟩ = α(⟨v, w⟩)`.
#[derive(Clone, Debug)]
pub struct TensorialEmbedding {
    alpha: FieldEmbedding,
    source: GramSpace,
    target: GramSpace,
}

impl TensorialEmbedding {
    pub fn alpha(&self) -> &FieldEmbedding {
        &self.alpha
    }

    pub fn source(&self) -> &GramSpace {
        &self.source
    }

    pub fn target(&self) -> &GramSpace {
        &self.target
    }

    /// Image of a source vector under the coordinate map.
    pub fn apply(&self, v: &[Fel]) -> Result<Vec<Fel>> {
        if v.len() != self.source.dim() {
            return Err(Error::LengthMismatch { got: v.len(), want: self.source.dim() });
        }
        Ok(v.iter().map(|&a| self.alpha.apply(a)).collect())
    }
}

/// Extends the scalars of a nondegenerate orthosymmetric space along a
/// field embedding. The form transport `⟨ω(e_i), ω(e_j)⟩ = α(G_ij)` is
/// re-verified on all basis pairs.
pub fn tensorial_embed(space: &GramSpace, alpha: &FieldEmbedding) -> Result<TensorialEmbedding> {
    space.require_nondegenerate()?;
    space.require_orthosymmetric()?;
    if alpha.source() != space.field() {
        return Err(Error::FieldMismatch);
    }
    let gram = space.gram().map(|a| alpha.apply(a));
    let target = GramSpace::new(alpha.target().clone(), gram)?;

    let n = space.dim();
    for i in 0..n {
        for j in 0..n {
            let ei = unit_vector(n, i);
            let ej = unit_vector(n, j);
            let lhs = target.inner(&ei, &ej)?;
            let rhs = alpha.apply(space.inner(&ei, &ej)?);
            if lhs != rhs {
                return Err(Error::NotAHom(format!(
                    "form not transported on basis pair ({i},{j}): got {lhs}, want {rhs}"
                )));
            }
        }
    }
    Ok(TensorialEmbedding { alpha: alpha.clone(), source: space.clone(), target })
}

fn unit_vector(n: usize, i: usize) -> Vec<Fel> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// A verified pair of embeddings induced by one tensorial embedding: the
/// matrix ∗-ring of the source into that of the target, and the subspace
/// lattice of the source into that of the target.
#[derive(Clone, Debug)]
pub struct LiftedEmbedding {
    pub ring: RingHom,
    pub ring_report: RingHomReport,
    pub lattice: LatticeHom,
    pub lattice_report: HomReport,
    pub source_lattice: GaloisLattice,
    pub target_lattice: GaloisLattice,
}

/// Lifts a tensorial embedding to its endomorphism rings (entrywise `α`
/// on matrices) and subspace lattices (span of the `α`-image). Both maps
/// are verified: the ring map must be an injective ∗-homomorphism and
/// the lattice map an injective Galois-lattice homomorphism.
pub fn lift_ring_embedding(t: &TensorialEmbedding) -> Result<LiftedEmbedding> {
    let source_ring = StarRing::matrix(t.source().clone())?;
    let target_ring = StarRing::matrix(t.target().clone())?;
    let ring = RingHom::entrywise(source_ring, target_ring, t.alpha().clone())?;
    let ring_report = ring.check()?;
    if !ring_report.is_star_hom || !ring_report.injective {
        return Err(Error::NotAHom(
            ring_report
                .witness
                .unwrap_or_else(|| "entrywise matrix map failed verification".into()),
        ));
    }

    let src = lattice_of_space(t.source())?;
    let dst = lattice_of_space(t.target())?;
    let lattice = span_of_image_hom(t, &src.subspaces, &dst.subspaces)?;
    let lattice_report = hom_tools(&src.lattice, &dst.lattice, &lattice)?;
    if !lattice_report.is_hom || !lattice_report.is_galois_hom || !lattice_report.injective {
        return Err(Error::NotAHom(
            lattice_report
                .witness
                .unwrap_or_else(|| "span-of-image lattice map failed verification".into()),
        ));
    }
    Ok(LiftedEmbedding {
        ring,
        ring_report,
        lattice,
        lattice_report,
        source_lattice: src.lattice,
        target_lattice: dst.lattice,
    })
}

/// `U ↦ span_K(α(U))` as a map between two sorted subspace enumerations.
fn span_of_image_hom(
    t: &TensorialEmbedding,
    source_subspaces: &[Subspace],
    target_subspaces: &[Subspace],
) -> Result<LatticeHom> {
    let k = t.target().field();
    let n = t.source().dim();
    let mut map = Vec::with_capacity(source_subspaces.len());
    for u in source_subspaces {
        let rows: Vec<Vec<Fel>> = u
            .basis_rows()
            .iter()
            .map(|row| row.iter().map(|&a| t.alpha().apply(a)).collect())
            .collect();
        let image = Subspace::from_vectors(k, n, &rows);
        let idx = target_subspaces
            .binary_search(&image)
            .map_err(|_| Error::Infeasible("image subspace missing from target enumeration".into()))?;
        map.push(idx as u32);
    }
    Ok(LatticeHom { map })
}

/// A common extension of two spaces: the orthogonal sum of their scalar
/// extensions, with the product of their ∗-rings embedded block-
/// diagonally and the product of their subspace lattices embedded
/// componentwise. All three artifacts are verified.
#[derive(Clone, Debug)]
pub struct JointExtension {
    pub space: GramSpace,
    pub ring_emb: RingHom,
    pub ring_report: RingHomReport,
    pub lattice_emb: LatticeHom,
    pub lattice_report: HomReport,
    pub product_lattice: GaloisLattice,
    pub target_lattice: GaloisLattice,
}

/// Glues two tensorial embeddings with a common target field into one
/// extension of the orthogonal-sum space.
///
/// The two embedded spaces must carry the same form constant: if
/// `G_i^{∗T} = ε_i G_i` then `α_0(ε_0) = α_1(ε_1)` is required, or the
/// block-diagonal Gram matrix would fail to be ε-hermitian for a single
/// ε. Zero-dimensional factors impose no constraint.
pub fn joint_extension(
    t0: &TensorialEmbedding,
    t1: &TensorialEmbedding,
) -> Result<JointExtension> {
    if t0.alpha().target() != t1.alpha().target() {
        return Err(Error::FieldMismatch);
    }
    let e0 = t0.target().class().epsilon;
    let e1 = t1.target().class().epsilon;
    if let (Some(a), Some(b)) = (e0, e1) {
        if a != b {
            return Err(Error::EpsilonMismatch);
        }
    }

    let space = t0.target().orthogonal_sum(t1.target())?;

    let ring0 = StarRing::matrix(t0.source().clone())?;
    let ring1 = StarRing::matrix(t1.source().clone())?;
    let product = StarRing::product(vec![ring0, ring1])?;
    let target_ring = StarRing::matrix(space.clone())?;
    let ring_emb = RingHom::block_diag(
        product,
        target_ring,
        vec![t0.alpha().clone(), t1.alpha().clone()],
    )?;
    let ring_report = ring_emb.check()?;
    if !ring_report.is_star_hom || !ring_report.injective {
        return Err(Error::NotAHom(
            ring_report
                .witness
                .unwrap_or_else(|| "block-diagonal ring map failed verification".into()),
        ));
    }

    let l0 = lattice_of_space(t0.source())?;
    let l1 = lattice_of_space(t1.source())?;
    let product_lattice = GaloisLattice::product(&[&l0.lattice, &l1.lattice])?;
    let target = lattice_of_space(&space)?;
    let k = space.field();
    let (n0, n1) = (t0.source().dim(), t1.source().dim());
    let m0 = l0.lattice.size();

    let mut map = Vec::with_capacity(product_lattice.size());
    for idx in 0..product_lattice.size() {
        // Product elements are mixed-radix with the first factor fastest.
        let u0 = &l0.subspaces[idx % m0];
        let u1 = &l1.subspaces[idx / m0];
        let mut rows: Vec<Vec<Fel>> = Vec::with_capacity(u0.dim() + u1.dim());
        for row in u0.basis_rows() {
            let mut padded: Vec<Fel> = row.iter().map(|&a| t0.alpha().apply(a)).collect();
            padded.resize(n0 + n1, 0);
            rows.push(padded);
        }
        for row in u1.basis_rows() {
            let mut padded = vec![0; n0];
            padded.extend(row.iter().map(|&a| t1.alpha().apply(a)));
            rows.push(padded);
        }
        let image = Subspace::from_vectors(k, n0 + n1, &rows);
        let at = target
            .subspaces
            .binary_search(&image)
            .map_err(|_| Error::Infeasible("sum subspace missing from target enumeration".into()))?;
        map.push(at as u32);
    }
    let lattice_emb = LatticeHom { map };
    let lattice_report = hom_tools(&product_lattice, &target.lattice, &lattice_emb)?;
    if !lattice_report.is_hom || !lattice_report.is_galois_hom || !lattice_report.injective {
        return Err(Error::NotAHom(
            lattice_report
                .witness
                .unwrap_or_else(|| "componentwise lattice map failed verification".into()),
        ));
    }

    Ok(JointExtension {
        space,
        ring_emb,
        ring_report,
        lattice_emb,
        lattice_report,
        product_lattice,
        target_lattice: target.lattice,
    })
}
