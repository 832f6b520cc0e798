//! Lattice representations of spaces and rings.
//!
//! A nondegenerate orthosymmetric space yields the Galois lattice of all
//! its subspaces with `'` = orthogonal complement ([`lattice_of_space`]).
//! A regular ∗-ring yields the lattice of its principal right ideals with
//! `'` mapping `eR` to `(1−e∗)R` ([`lattice_of_ring`]). For the
//! endomorphism ring of a space the two coincide under the map
//! `aR ↦ im a`, which [`lrep_check`] constructs and verifies to be an
//! isomorphism of Galois lattices.

use std::collections::BTreeSet;

use crate::congruence::{hom_tools, LatticeHom};
use crate::error::{Error, Result};
use crate::lattice::GaloisLattice;
use crate::mat::Mat;
use crate::ring::{column_space, RElem, StarRing, IDEAL_SCAN_CAP};
use crate::space::GramSpace;
use crate::subspace::{enumerate_all, Subspace, SUBSPACE_ENUM_CAP};

/// The subspace lattice of a space, with the subspaces index-aligned to the
/// lattice elements.
#[derive(Clone, Debug)]
pub struct SpaceLattice {
    pub lattice: GaloisLattice,
    pub subspaces: Vec<Subspace>,
}

/// All subspaces ordered by dimension then lexicographic canonical basis,
/// `'` = orthogonal complement.
pub fn lattice_of_space(space: &GramSpace) -> Result<SpaceLattice> {
    lattice_of_space_capped(space, SUBSPACE_ENUM_CAP)
}

/// [`lattice_of_space`] with an explicit enumeration cap, for callers
/// that deliberately raise (or lower) the default budget.
pub fn lattice_of_space_capped(space: &GramSpace, cap: u64) -> Result<SpaceLattice> {
    space.require_nondegenerate()?;
    space.require_orthosymmetric()?;
    let f = space.field();
    let subspaces = enumerate_all(f, space.dim(), cap)?;
    let mut prime = Vec::with_capacity(subspaces.len());
    for u in &subspaces {
        let perp = space.orthogonal(u)?;
        let at = subspaces
            .binary_search(&perp)
            .map_err(|_| Error::Infeasible("orthogonal complement not enumerated".into()))?;
        prime.push(at as u32);
    }
    let labels = subspaces.iter().map(|u| u.label()).collect();
    let lattice = GaloisLattice::from_leq(labels, prime, |i, j| {
        subspaces[j].contains(f, &subspaces[i])
    })?;
    Ok(SpaceLattice { lattice, subspaces })
}

/// The principal-right-ideal lattice of a ring, with a chosen idempotent
/// generator per ideal.
#[derive(Clone, Debug)]
pub struct RingLattice {
    pub lattice: GaloisLattice,
    /// Idempotent generator of each ideal, index-aligned with the lattice.
    pub generators: Vec<RElem>,
    /// For matrix rings: the column space corresponding to each ideal.
    pub images: Option<Vec<Subspace>>,
}

/// Principal right ideals of a regular ring ordered by inclusion, with
/// `eR ↦ (1−e∗)R` as `'`.
///
/// Matrix rings use the correspondence `aR ↦ im a`: the ideals are exactly
/// the subspaces of the column space, and only the `'` computation
/// materializes idempotents. Product and generated rings enumerate ideal
/// element sets from the carrier.
pub fn lattice_of_ring(ring: &StarRing) -> Result<RingLattice> {
    match ring {
        StarRing::Matrix { space, .. } => matrix_ideal_lattice(ring, space),
        _ => enumerated_ideal_lattice(ring),
    }
}

/// An `n×n` matrix whose column space is `u`.
fn generator_matrix(u: &Subspace, n: usize) -> Mat {
    let mut a = Mat::zeros(n, n);
    for (col, row) in (0..u.dim()).enumerate() {
        for i in 0..n {
            a.set(i, col, u.basis().get(row, i));
        }
    }
    a
}

fn matrix_ideal_lattice(ring: &StarRing, space: &GramSpace) -> Result<RingLattice> {
    let f = space.field();
    let n = space.dim();
    let one = Mat::identity(n);
    let subspaces = enumerate_all(f, n, SUBSPACE_ENUM_CAP)?;
    let mut generators = Vec::with_capacity(subspaces.len());
    let mut prime = Vec::with_capacity(subspaces.len());
    for u in &subspaces {
        let a = RElem::Mat(generator_matrix(u, n));
        let e = ring.idempotent_generator(&a)?;
        let complement = column_space(f, &one.sub(f, ring.star(&e).as_mat()));
        let at = subspaces
            .binary_search(&complement)
            .map_err(|_| Error::Infeasible("ideal complement not enumerated".into()))?;
        prime.push(at as u32);
        generators.push(e);
    }
    let labels = subspaces.iter().map(|u| u.label()).collect();
    let lattice = GaloisLattice::from_leq(labels, prime, |i, j| {
        subspaces[j].contains(f, &subspaces[i])
    })?;
    Ok(RingLattice { lattice, generators, images: Some(subspaces) })
}

fn enumerated_ideal_lattice(ring: &StarRing) -> Result<RingLattice> {
    let carrier = ring.carrier()?;
    if carrier.len() as u64 > IDEAL_SCAN_CAP {
        return Err(Error::EnumerationCap {
            count: carrier.len() as u64,
            cap: IDEAL_SCAN_CAP,
        });
    }
    // principal right ideals as element sets, keyed to their first generator
    let mut ideals: Vec<(BTreeSet<RElem>, RElem)> = Vec::new();
    for a in &carrier {
        let set: BTreeSet<RElem> = carrier.iter().map(|r| ring.mul(a, r)).collect();
        if !ideals.iter().any(|(s, _)| *s == set) {
            ideals.push((set, a.clone()));
        }
    }
    ideals.sort_by(|(s, _), (t, _)| s.len().cmp(&t.len()).then_with(|| s.cmp(t)));

    let find = |set: &BTreeSet<RElem>| -> Result<u32> {
        ideals
            .iter()
            .position(|(s, _)| s == set)
            .map(|i| i as u32)
            .ok_or_else(|| Error::Infeasible("ideal image not principal".into()))
    };

    let mut generators = Vec::with_capacity(ideals.len());
    let mut prime = Vec::with_capacity(ideals.len());
    for (_, a) in &ideals {
        let e = ring
            .idempotent_generator(a)
            .map_err(|_| Error::NotRegular)?;
        let m = ring.sub(&ring.one(), &ring.star(&e));
        let set: BTreeSet<RElem> = carrier.iter().map(|r| ring.mul(&m, r)).collect();
        prime.push(find(&set)?);
        generators.push(e);
    }

    let labels = (0..ideals.len())
        .map(|i| format!("I{i}:{}", ideals[i].0.len()))
        .collect();
    let lattice = GaloisLattice::from_leq(labels, prime, |i, j| {
        ideals[i].0.is_subset(&ideals[j].0)
    })?;
    Ok(RingLattice { lattice, generators, images: None })
}

/// Result of verifying `aR ↦ im a` as a Galois-lattice isomorphism from
/// the ideal lattice of `LEnd(V)` onto the subspace lattice of `V`.
#[derive(Clone, Debug)]
pub struct LrepReport {
    pub iso: LatticeHom,
    pub ok: bool,
}

pub fn lrep_check(space: &GramSpace) -> Result<LrepReport> {
    let sl = lattice_of_space(space)?;
    let ring = StarRing::matrix(space.clone())?;
    let rl = lattice_of_ring(&ring)?;
    let images = rl.images.as_ref().expect("matrix ring lattice carries images");
    let mut map = Vec::with_capacity(images.len());
    for u in images {
        let at = sl
            .subspaces
            .binary_search(u)
            .map_err(|_| Error::Infeasible("ideal image missing from subspace lattice".into()))?;
        map.push(at as u32);
    }
    let iso = LatticeHom { map };
    let report = hom_tools(&rl.lattice, &sl.lattice, &iso)?;
    let ok = report.is_galois_hom
        && report.injective
        && rl.lattice.size() == sl.lattice.size();
    Ok(LrepReport { iso, ok })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Involution;
    use crate::lattice::{Law, LawCheckConfig};
    use crate::ring::tests::ring_of;
    use crate::space::tests::{gf, gf2_symplectic, gf3_euclidean, space};

    fn passes(l: &GaloisLattice, law: Law) -> bool {
        l.check_law(law, &LawCheckConfig::default()).pass
    }

    #[test]
    fn symplectic_plane_gives_m3_with_selfperp_lines() {
        let sl = lattice_of_space(&gf2_symplectic()).unwrap();
        let l = &sl.lattice;
        assert_eq!(l.size(), 5);
        assert_eq!(l.atoms().len(), 3);
        // every line of an alternate plane is its own perp
        for &a in &l.atoms() {
            assert_eq!(l.prime(a), a);
        }
        for law in [Law::Modular, Law::Complemented, Law::Galois, Law::Polarity, Law::Involution] {
            assert!(passes(l, law), "{law:?}");
        }
        assert!(!passes(l, Law::Ortho), "isotropic lines break x·x' = 0");
    }

    #[test]
    fn euclidean_plane_gives_m4_matching_perp() {
        let sl = lattice_of_space(&gf3_euclidean()).unwrap();
        let l = &sl.lattice;
        assert_eq!(l.size(), 6);
        let atoms = l.atoms();
        assert_eq!(atoms.len(), 4);
        // anisotropic: ' is a fixed-point-free involution on the lines
        for &a in &atoms {
            assert_ne!(l.prime(a), a);
            assert!(atoms.contains(&l.prime(a)));
            assert_eq!(l.prime(l.prime(a)), a);
        }
        assert!(passes(l, Law::Ortho));
        assert!(passes(l, Law::Arguesian));
    }

    #[test]
    fn gf2_cube_has_sixteen_subspaces_and_isotropic_lines() {
        let f = gf(2, 1, Involution::Identity);
        let sp = space(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        let sl = lattice_of_space(&sp).unwrap();
        let l = &sl.lattice;
        assert_eq!(l.size(), 16);
        assert_eq!(l.height_of(l.one()), 3);
        let isotropic: Vec<u32> = l
            .atoms()
            .into_iter()
            .filter(|&a| l.leq(a, l.prime(a)))
            .collect();
        // even-weight vectors (1,1,0),(1,0,1),(0,1,1) span the 3 isotropic lines
        assert_eq!(isotropic.len(), 3);
        for &a in &isotropic {
            let u = &sl.subspaces[a as usize];
            let v = u.basis().row(0);
            let weight = v.iter().filter(|&&c| c != 0).count();
            assert_eq!(weight % 2, 0);
        }
        for law in [Law::Modular, Law::Galois, Law::Involution, Law::Arguesian] {
            assert!(passes(l, law), "{law:?}");
        }
    }

    #[test]
    fn degenerate_and_asymmetric_spaces_rejected() {
        let f = gf(3, 1, Involution::Identity);
        let degenerate = space(&f, &[vec![1, 0], vec![0, 0]]);
        assert!(matches!(
            lattice_of_space(&degenerate),
            Err(Error::DegenerateSpace)
        ));
        let skewed = space(&f, &[vec![1, 1], vec![0, 1]]);
        assert!(matches!(
            lattice_of_space(&skewed),
            Err(Error::NotOrthosymmetric)
        ));
    }

    #[test]
    fn one_by_one_ring_has_two_ideals() {
        let f = gf(3, 1, Involution::Identity);
        let ring = ring_of(space(&f, &[vec![1]]));
        let rl = lattice_of_ring(&ring).unwrap();
        assert_eq!(rl.lattice.size(), 2);
        assert_eq!(rl.generators[rl.lattice.zero() as usize], ring.zero());
        assert_eq!(rl.generators[rl.lattice.one() as usize], ring.one());
    }

    #[test]
    fn product_of_fields_gives_boolean_square() {
        let f = gf(2, 1, Involution::Identity);
        let line = ring_of(space(&f, &[vec![1]]));
        let product = StarRing::product(vec![line.clone(), line]).unwrap();
        let rl = lattice_of_ring(&product).unwrap();
        let l = &rl.lattice;
        assert_eq!(l.size(), 4);
        assert_eq!(l.atoms().len(), 2);
        for &a in &l.atoms() {
            assert_ne!(l.prime(a), a);
        }
        for law in [Law::Modular, Law::Complemented, Law::Galois, Law::Involution, Law::Ortho] {
            assert!(passes(l, law), "{law:?}");
        }
    }

    #[test]
    fn diagonal_subring_ideals_form_boolean_square() {
        let parent = ring_of(gf3_euclidean());
        let e11 = RElem::Mat(Mat::from_rows(&[vec![1, 0], vec![0, 0]]));
        let e22 = RElem::Mat(Mat::from_rows(&[vec![0, 0], vec![0, 1]]));
        let diag = StarRing::generated(&parent, &[e11.clone(), e22.clone()]).unwrap();
        assert_eq!(diag.size(), 9);
        let rl = lattice_of_ring(&diag).unwrap();
        let l = &rl.lattice;
        assert_eq!(l.size(), 4);
        // (1 − e11∗)R = e22·R: the two atoms are each other's prime
        let atoms = l.atoms();
        assert_eq!(atoms.len(), 2);
        assert_eq!(l.prime(atoms[0]), atoms[1]);
        assert_eq!(l.prime(atoms[1]), atoms[0]);
    }

    #[test]
    fn nonregular_generated_ring_is_rejected() {
        // under the symplectic adjoint e12 is self-adjoint, so it generates
        // the 4-element ring {0, 1, e12, 1+e12} with a nilpotent inside
        let parent = ring_of(gf2_symplectic());
        let e12 = RElem::Mat(Mat::from_rows(&[vec![0, 1], vec![0, 0]]));
        let upper = StarRing::generated(&parent, &[e12]).unwrap();
        assert_eq!(upper.size(), 4);
        assert!(matches!(lattice_of_ring(&upper), Err(Error::NotRegular)));
    }

    #[test]
    fn lrep_isomorphism_on_the_worked_spaces() {
        let f = gf(2, 1, Involution::Identity);
        for sp in [
            gf3_euclidean(),
            gf2_symplectic(),
            space(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
        ] {
            let report = lrep_check(&sp).unwrap();
            assert!(report.ok, "lattice representation failed for {:?}", sp.gram());
        }
    }

    #[test]
    fn matrix_ring_lattice_matches_space_lattice_by_images() {
        let sp = gf2_symplectic();
        let ring = ring_of(sp.clone());
        let rl = lattice_of_ring(&ring).unwrap();
        assert_eq!(rl.lattice.size(), 5);
        // generators are idempotents whose image is the recorded subspace
        let f = sp.field();
        for (e, u) in rl.generators.iter().zip(rl.images.as_ref().unwrap()) {
            assert!(ring.is_idempotent(e));
            assert_eq!(&column_space(f, e.as_mat()), u);
        }
    }
}
