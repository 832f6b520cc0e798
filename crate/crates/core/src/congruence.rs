//! Congruences of finite lattices (equivalences compatible with join and
//! meet), the congruence lattice, quotients, and lattice homomorphism
//! tools.
//!
//! Two tiers of "simple"/"subdirectly irreducible" are computed: the
//! strict tier quantifies over all lattice congruences; the plain tier
//! restricts to congruences that are additionally closed under the unary
//! operation (`a ~ b` implies `a' ~ b'`), the congruences of the structure
//! *with* prime.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::GaloisLattice;

/// Cap on lattice size for full congruence-lattice generation.
pub const CONGRUENCE_ELEMENT_CAP: usize = 500;
/// Cap on the number of congruences materialized.
pub const CONGRUENCE_COUNT_CAP: usize = 4096;

/// A partition of the element indices, compatible with join and meet.
/// Canonical form: `class_of[i]` is the class id of element `i`, classes
/// numbered by first occurrence, so equal partitions have equal vectors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    class_of: Vec<u32>,
}

impl Congruence {
    pub fn delta(m: usize) -> Congruence {
        Congruence { class_of: (0..m as u32).collect() }
    }

    pub fn nabla(m: usize) -> Congruence {
        Congruence { class_of: vec![0; m] }
    }

    fn from_class_ids(raw: &[u32]) -> Congruence {
        // Class ids are arbitrary (e.g. indices into a larger codomain),
        // so size the rename table by their range, not by `raw.len()`.
        let ids = raw.iter().copied().max().map_or(0, |top| top as usize + 1);
        let mut rename = vec![u32::MAX; ids];
        let mut next = 0;
        let class_of = raw
            .iter()
            .map(|&c| {
                if rename[c as usize] == u32::MAX {
                    rename[c as usize] = next;
                    next += 1;
                }
                rename[c as usize]
            })
            .collect();
        Congruence { class_of }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn same(&self, a: u32, b: u32) -> bool {
        self.class_of[a as usize] == self.class_of[b as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_of.iter().map(|&c| c + 1).max().unwrap_or(0) as usize
    }

    pub fn class_of(&self, a: u32) -> u32 {
        self.class_of[a as usize]
    }

    pub fn is_delta(&self) -> bool {
        self.class_count() == self.size()
    }

    pub fn is_nabla(&self) -> bool {
        self.class_count() <= 1
    }

    pub fn blocks(&self) -> Vec<Vec<u32>> {
        let mut blocks = vec![Vec::new(); self.class_count()];
        for (i, &c) in self.class_of.iter().enumerate() {
            blocks[c as usize].push(i as u32);
        }
        blocks
    }

    /// Every class of `self` is contained in a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        let mut image = vec![u32::MAX; self.class_count()];
        for (i, &c) in self.class_of.iter().enumerate() {
            let target = other.class_of[i];
            if image[c as usize] == u32::MAX {
                image[c as usize] = target;
            } else if image[c as usize] != target {
                return false;
            }
        }
        true
    }

    /// Common refinement (meet in the congruence lattice).
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut ids = std::collections::BTreeMap::new();
        let raw: Vec<u32> = self
            .class_of
            .iter()
            .zip(&other.class_of)
            .map(|(&a, &b)| {
                let next = ids.len() as u32;
                *ids.entry((a, b)).or_insert(next)
            })
            .collect();
        Congruence::from_class_ids(&raw)
    }

    /// Closed under prime: `a ~ b` implies `a' ~ b'`.
    pub fn prime_closed(&self, l: &GaloisLattice) -> bool {
        for block in self.blocks() {
            let first = l.prime(block[0]);
            if block.iter().any(|&x| !self.same(l.prime(x), first)) {
                return false;
            }
        }
        true
    }

    /// Image partition under prime: the equivalence generated by the pairs
    /// `(a', b')` with `a ~ b`.
    pub fn prime_image(&self, l: &GaloisLattice) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for block in self.blocks() {
            let first = l.prime(block[0]);
            for &x in &block[1..] {
                uf.union(first, l.prime(x));
            }
        }
        uf.collapse()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(m: usize) -> UnionFind {
        UnionFind { parent: (0..m as u32).collect() }
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Merge; returns the pair of old roots when two classes fused.
    fn union(&mut self, a: u32, b: u32) -> Option<(u32, u32)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi as usize] = lo;
        Some((ra, rb))
    }

    fn collapse(&mut self) -> Congruence {
        let raw: Vec<u32> = (0..self.parent.len() as u32).map(|x| self.find(x)).collect();
        Congruence::from_class_ids(&raw)
    }
}

/// Smallest congruence containing the seed pairs: merge, then propagate
/// compatibility (`x ~ y` forces `x+c ~ y+c` and `xc ~ yc`) to a fixpoint.
fn close_compatible(l: &GaloisLattice, seed: &[(u32, u32)]) -> Congruence {
    let m = l.size();
    let mut uf = UnionFind::new(m);
    let mut work: Vec<(u32, u32)> = Vec::new();
    for &(a, b) in seed {
        if let Some(pair) = uf.union(a, b) {
            work.push(pair);
        }
    }
    while let Some((x, y)) = work.pop() {
        for c in 0..m as u32 {
            for (p, q) in [(l.join(x, c), l.join(y, c)), (l.meet(x, c), l.meet(y, c))] {
                if let Some(pair) = uf.union(p, q) {
                    work.push(pair);
                }
            }
        }
    }
    uf.collapse()
}

/// Principal congruence generated by identifying `a` and `b`.
pub fn principal(l: &GaloisLattice, a: u32, b: u32) -> Congruence {
    close_compatible(l, &[(a, b)])
}

/// Join in the congruence lattice.
pub fn join(l: &GaloisLattice, x: &Congruence, y: &Congruence) -> Congruence {
    let mut seed = Vec::new();
    for theta in [x, y] {
        for block in theta.blocks() {
            for &e in &block[1..] {
                seed.push((block[0], e));
            }
        }
    }
    close_compatible(l, &seed)
}

/// Check that a partition is compatible with join and meet.
pub fn is_congruence(l: &GaloisLattice, theta: &Congruence) -> bool {
    if theta.size() != l.size() {
        return false;
    }
    for block in theta.blocks() {
        let a = block[0];
        for &b in &block[1..] {
            for c in 0..l.size() as u32 {
                if !theta.same(l.join(a, c), l.join(b, c))
                    || !theta.same(l.meet(a, c), l.meet(b, c))
                {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, Serialize)]
pub struct CongruenceReport {
    /// All lattice congruences, sorted coarse-last (delta first).
    pub all: Vec<Congruence>,
    /// `galois[i]` iff `all[i]` is prime-closed.
    pub galois: Vec<bool>,
    /// Unique minimal nontrivial lattice congruence, when it exists.
    pub monolith: Option<Congruence>,
    /// Prime-closed congruences are exactly delta and nabla.
    pub simple: bool,
    /// Unique minimal nontrivial prime-closed congruence exists.
    pub sdi: bool,
    /// All lattice congruences are exactly delta and nabla.
    pub strict_simple: bool,
    /// Unique minimal nontrivial lattice congruence exists.
    pub strict_sdi: bool,
}

/// Full congruence lattice: principal congruences of cover pairs, closed
/// under join (these generate, since collapsing any `a <= b` factors
/// through the covers of a maximal chain).
pub fn congruences(l: &GaloisLattice) -> Result<CongruenceReport> {
    let m = l.size();
    if m > CONGRUENCE_ELEMENT_CAP {
        return Err(Error::CongruenceCap { got: m as u64, cap: CONGRUENCE_ELEMENT_CAP as u64 });
    }
    let mut set: BTreeSet<Congruence> = BTreeSet::new();
    set.insert(Congruence::delta(m));
    let mut frontier: Vec<Congruence> = Vec::new();
    for (a, b) in l.covers() {
        let p = principal(l, a, b);
        if set.insert(p.clone()) {
            frontier.push(p);
        }
    }
    while let Some(theta) = frontier.pop() {
        let snapshot: Vec<Congruence> = set.iter().cloned().collect();
        for psi in snapshot {
            let j = join(l, &theta, &psi);
            if set.insert(j.clone()) {
                if set.len() > CONGRUENCE_COUNT_CAP {
                    return Err(Error::CongruenceCap {
                        got: set.len() as u64,
                        cap: CONGRUENCE_COUNT_CAP as u64,
                    });
                }
                frontier.push(j);
            }
        }
    }
    let mut all: Vec<Congruence> = set.into_iter().collect();
    all.sort_by_key(|c| (m - c.class_count(), c.class_of.clone()));
    debug_assert!(all.iter().all(|c| is_congruence(l, c)));

    let galois: Vec<bool> = all.iter().map(|c| c.prime_closed(l)).collect();
    let monolith = unique_minimal(&all);
    let galois_all: Vec<&Congruence> =
        all.iter().zip(&galois).filter(|(_, &g)| g).map(|(c, _)| c).collect();
    let galois_monolith = unique_minimal_ref(&galois_all);
    let nontrivial_exists = m >= 2;
    Ok(CongruenceReport {
        strict_simple: nontrivial_exists && all.len() == 2,
        strict_sdi: monolith.is_some(),
        simple: nontrivial_exists && galois_all.len() == 2,
        sdi: galois_monolith.is_some(),
        monolith,
        galois,
        all,
    })
}

fn unique_minimal(all: &[Congruence]) -> Option<Congruence> {
    let refs: Vec<&Congruence> = all.iter().collect();
    unique_minimal_ref(&refs)
}

/// Unique minimal nontrivial congruence in a duplicate-free list.
fn unique_minimal_ref(all: &[&Congruence]) -> Option<Congruence> {
    let nontrivial: Vec<&Congruence> =
        all.iter().copied().filter(|c| !c.is_delta()).collect();
    let minimal: Vec<&Congruence> = nontrivial
        .iter()
        .copied()
        .filter(|c| !nontrivial.iter().any(|d| d != c && d.refines(c)))
        .collect();
    match minimal.as_slice() {
        [only] => Some((*only).clone()),
        _ => None,
    }
}

/// Quotient lattice `L / theta`. Requires `theta` to be a congruence that
/// is also prime-closed, so the quotient carries an induced prime.
pub fn quotient(l: &GaloisLattice, theta: &Congruence) -> Result<GaloisLattice> {
    if theta.size() != l.size() || !is_congruence(l, theta) {
        return Err(Error::InvalidInput("partition is not a lattice congruence".into()));
    }
    if !theta.prime_closed(l) {
        return Err(Error::PrimeIncompatibleCongruence);
    }
    let blocks = theta.blocks();
    let labels: Vec<String> = blocks
        .iter()
        .map(|b| {
            if b.len() == 1 {
                l.label(b[0]).to_string()
            } else {
                let parts: Vec<&str> = b.iter().map(|&x| l.label(x)).collect();
                format!("{{{}}}", parts.join(","))
            }
        })
        .collect();
    let reps: Vec<u32> = blocks.iter().map(|b| b[0]).collect();
    let prime: Vec<u32> = reps.iter().map(|&r| theta.class_of(l.prime(r))).collect();
    GaloisLattice::from_leq(labels, prime, |i, j| {
        theta.same(l.join(reps[i], reps[j]), reps[j])
    })
}

/// Element-to-block index map of the canonical surjection `L -> L/theta`.
pub fn canonical_map(theta: &Congruence) -> LatticeHom {
    LatticeHom { map: theta.class_of.clone() }
}

/// A map between lattices, not assumed to preserve anything until checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeHom {
    pub map: Vec<u32>,
}

impl LatticeHom {
    pub fn identity(m: usize) -> LatticeHom {
        LatticeHom { map: (0..m as u32).collect() }
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.map[x as usize]
    }

    /// Validating constructor: errors unless the map preserves join, meet,
    /// and the bounds.
    pub fn validated(src: &GaloisLattice, dst: &GaloisLattice, map: Vec<u32>) -> Result<LatticeHom> {
        let hom = LatticeHom { map };
        let report = hom_tools(src, dst, &hom)?;
        if let Some(witness) = report.witness {
            return Err(Error::NotAHom(witness));
        }
        Ok(hom)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomReport {
    pub is_hom: bool,
    /// Hom that additionally satisfies `phi(x') = phi(x)'`.
    pub is_galois_hom: bool,
    pub injective: bool,
    /// Partition of the source by equal images; a congruence iff the map
    /// is a hom onto its image.
    pub kernel: Option<Congruence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn hom_tools(src: &GaloisLattice, dst: &GaloisLattice, hom: &LatticeHom) -> Result<HomReport> {
    let m = src.size();
    if hom.map.len() != m {
        return Err(Error::LengthMismatch { got: hom.map.len(), want: m });
    }
    if hom.map.iter().any(|&y| y as usize >= dst.size()) {
        return Err(Error::InvalidInput("hom image index out of range".into()));
    }
    let mut witness = None;
    'scan: for x in 0..m as u32 {
        for y in 0..m as u32 {
            if hom.apply(src.join(x, y)) != dst.join(hom.apply(x), hom.apply(y)) {
                witness = Some(format!("join of elements {x},{y} not preserved"));
                break 'scan;
            }
            if hom.apply(src.meet(x, y)) != dst.meet(hom.apply(x), hom.apply(y)) {
                witness = Some(format!("meet of elements {x},{y} not preserved"));
                break 'scan;
            }
        }
    }
    if witness.is_none() && hom.apply(src.zero()) != dst.zero() {
        witness = Some("zero not preserved".into());
    }
    if witness.is_none() && hom.apply(src.one()) != dst.one() {
        witness = Some("one not preserved".into());
    }
    let is_hom = witness.is_none();
    let is_galois_hom = is_hom
        && (0..m as u32).all(|x| hom.apply(src.prime(x)) == dst.prime(hom.apply(x)));
    let mut seen = BTreeSet::new();
    let injective = hom.map.iter().all(|&y| seen.insert(y));
    let kernel = is_hom.then(|| Congruence::from_class_ids(&hom.map));
    if let Some(k) = &kernel {
        debug_assert!(is_congruence(src, k));
    }
    Ok(HomReport { is_hom, is_galois_hom, injective, kernel, witness })
}

/// Kernel congruence of a validated hom.
pub fn kernel(src: &GaloisLattice, dst: &GaloisLattice, hom: &LatticeHom) -> Result<Congruence> {
    let report = hom_tools(src, dst, hom)?;
    report.kernel.ok_or_else(|| Error::NotAHom(report.witness.unwrap_or_default()))
}

/// A family of homs is faithful when the meet of their kernels is delta,
/// i.e. the joint map separates all elements.
pub fn faithful_family(
    src: &GaloisLattice,
    homs: &[(&GaloisLattice, &LatticeHom)],
) -> Result<bool> {
    let mut acc = Congruence::nabla(src.size());
    for (dst, hom) in homs {
        acc = acc.meet(&kernel(src, dst, hom)?);
    }
    Ok(acc.is_delta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::{chain, galois_not_polarity, m3, n5};
    use crate::lattice::{Law, LawCheckConfig};

    #[test]
    fn two_chain_is_simple() {
        let l = chain(2);
        let r = congruences(&l).unwrap();
        assert_eq!(r.all.len(), 2);
        assert!(r.strict_simple && r.simple && r.strict_sdi && r.sdi);
        assert_eq!(r.monolith, Some(Congruence::nabla(2)));
    }

    #[test]
    fn m3_is_simple() {
        let r = congruences(&m3()).unwrap();
        assert_eq!(r.all.len(), 2, "diamond collapses entirely or not at all");
        assert!(r.strict_simple && r.simple);
    }

    #[test]
    fn n5_congruence_lattice() {
        let l = n5();
        let r = congruences(&l).unwrap();
        assert_eq!(r.all.len(), 5);
        // cg(a, c) collapses only the doubled edge and refines every other
        // nontrivial congruence: the pentagon is subdirectly irreducible
        let p = principal(&l, 1, 2);
        assert_eq!(p.blocks(), vec![vec![0], vec![1, 2], vec![3], vec![4]]);
        assert_eq!(r.monolith, Some(p));
        assert!(r.strict_sdi && !r.strict_simple);
    }

    #[test]
    fn product_of_simple_is_not_sdi() {
        let l = GaloisLattice::product(&[&m3(), &m3()]).unwrap();
        let r = congruences(&l).unwrap();
        assert_eq!(r.all.len(), 4, "congruences of a product of simples");
        assert!(!r.strict_sdi && !r.sdi);
    }

    #[test]
    fn galois_tier_differs_from_strict_tier() {
        // 0 < p,q < 1 with x' = 0 for x != 0: the two middle collapses are
        // lattice congruences but not prime-closed
        let l = galois_not_polarity();
        let r = congruences(&l).unwrap();
        assert_eq!(r.all.len(), 4);
        assert_eq!(r.galois.iter().filter(|&&g| g).count(), 2);
        assert!(r.simple, "prime-closed congruences are only delta, nabla");
        assert!(!r.strict_simple);
        assert!(r.sdi && !r.strict_sdi);
    }

    #[test]
    fn prime_image_biconditional_on_involutive_lattice() {
        let l = m3(); // involution holds
        assert!(l.check_law(Law::Involution, &LawCheckConfig::default()).pass);
        let r = congruences(&l).unwrap();
        for theta in &r.all {
            let image = theta.prime_image(&l);
            for a in 0..l.size() as u32 {
                for b in 0..l.size() as u32 {
                    assert_eq!(theta.same(a, b), image.same(l.prime(a), l.prime(b)));
                }
            }
        }
    }

    #[test]
    fn quotient_by_delta_and_nabla() {
        let l = n5();
        let q = quotient(&l, &Congruence::delta(5)).unwrap();
        assert_eq!(q.size(), 5);
        assert_eq!(q.covers(), l.covers());
        let q = quotient(&l, &Congruence::nabla(5)).unwrap();
        assert_eq!(q.size(), 1);
    }

    #[test]
    fn quotient_collapse_of_pentagon() {
        let l = n5();
        // {0,a,c},{b,1} is prime-compatible for the chosen prime table
        let theta = principal(&l, 0, 1);
        assert_eq!(theta.class_count(), 2);
        let q = quotient(&l, &theta).unwrap();
        assert_eq!(q.size(), 2);
        // canonical surjection is a hom with kernel theta
        let cmap = canonical_map(&theta);
        let report = hom_tools(&l, &q, &cmap).unwrap();
        assert!(report.is_hom && !report.injective);
        assert_eq!(report.kernel.unwrap(), theta);
    }

    #[test]
    fn quotient_requires_prime_compatibility() {
        let l = galois_not_polarity();
        let theta = principal(&l, 0, 1); // {0,p},{q,1}: 0'=1 vs p'=0 split
        assert_eq!(theta.class_count(), 2);
        assert!(matches!(
            quotient(&l, &theta),
            Err(Error::PrimeIncompatibleCongruence)
        ));
    }

    #[test]
    fn hom_tools_flags() {
        let l = m3();
        let id = LatticeHom::identity(5);
        let r = hom_tools(&l, &l, &id).unwrap();
        assert!(r.is_hom && r.is_galois_hom && r.injective);
        assert!(r.kernel.unwrap().is_delta());
        // collapsing two atoms of the diamond onto one is not a hom
        let collapse = LatticeHom { map: vec![0, 1, 1, 3, 4] };
        let r = hom_tools(&l, &l, &collapse).unwrap();
        assert!(!r.is_hom, "join of merged atoms breaks: {:?}", r.witness);
        assert!(LatticeHom::validated(&l, &l, vec![0, 1, 1, 3, 4]).is_err());
    }

    #[test]
    fn projections_of_product_form_faithful_family() {
        let a = m3();
        let b = chain(3);
        let l = GaloisLattice::product(&[&a, &b]).unwrap();
        let proj0 = LatticeHom {
            map: (0..l.size() as u32).map(|i| i % a.size() as u32).collect(),
        };
        let proj1 = LatticeHom {
            map: (0..l.size() as u32).map(|i| i / a.size() as u32).collect(),
        };
        let r0 = hom_tools(&l, &a, &proj0).unwrap();
        let r1 = hom_tools(&l, &b, &proj1).unwrap();
        assert!(r0.is_hom && !r0.injective);
        assert!(r1.is_hom && !r1.injective);
        assert!(faithful_family(&l, &[(&a, &proj0), (&b, &proj1)]).unwrap());
        assert!(!faithful_family(&l, &[(&a, &proj0)]).unwrap());
    }

    #[test]
    fn congruence_cap() {
        let l = chain(CONGRUENCE_ELEMENT_CAP + 1);
        assert!(matches!(congruences(&l), Err(Error::CongruenceCap { .. })));
    }

    #[test]
    fn one_element_lattice_is_not_simple() {
        let l = chain(1);
        let r = congruences(&l).unwrap();
        assert_eq!(r.all.len(), 1);
        assert!(!r.simple && !r.strict_simple && !r.sdi && !r.strict_sdi);
    }
}
