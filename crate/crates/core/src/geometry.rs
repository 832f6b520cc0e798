//! Point–line geometries with orthogonality.
//!
//! An [`Orthogeometry`] is the combinatorial shadow of a sesquilinear
//! space: its points are the one-dimensional subspaces, three distinct
//! points are *collinear* when each lies in the span of the other two,
//! and two points are *perpendicular* when their representing vectors
//! are. The same data can be read off any atomic modular involution
//! lattice, using atoms for points, `p <= q + r` for collinearity, and
//! `p <= q'` for perpendicularity.
//!
//! This module builds both views, checks the defining axioms with
//! explicit witnesses, rebuilds the lattice of closed point sets from a
//! geometry (so the space → lattice → geometry → lattice round trip can
//! be verified), and searches lattice subalgebras for complemented
//! Galois lattices that fail the polarity laws.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bridge::lattice_of_space;
use crate::congruence::{hom_tools, LatticeHom};
use crate::error::{Error, Result};
use crate::field::Fel;
use crate::lattice::{GaloisLattice, Law, LawCheckConfig, LATTICE_SIZE_CAP};
use crate::space::GramSpace;

/// Largest number of points a geometry may carry. Axiom checks scan
/// pairs of collinear triples and are cubic-to-quartic in the point
/// count, so this is kept deliberately small.
pub const GEOMETRY_POINT_CAP: usize = 256;

/// A finite point set with a ternary collinearity relation and a binary
/// perpendicularity relation.
///
/// Both relations are stored extensionally, exactly as constructed; no
/// symmetrisation or closure is applied. This keeps
/// [`Orthogeometry::axiom_check`] meaningful: permutation invariance of
/// collinearity and symmetry of perpendicularity are genuine checks, not
/// artefacts of the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orthogeometry {
    labels: Vec<String>,
    collinear: BTreeSet<(u32, u32, u32)>,
    perp: BTreeSet<(u32, u32)>,
}

/// Wire format:
/// `{"points":["..."],"collinear":[[i,j,k],...],"perp":[[i,j],...]}`.
///
/// One representative per orbit: triples sorted strictly increasing,
/// pairs weakly increasing. Serialization filters to these
/// representatives and deserialization expands every permutation back,
/// so the round trip is exact precisely for geometries whose relations
/// already are permutation-invariant and symmetric — the ones the
/// axioms accept.
#[derive(Serialize, serde::Deserialize)]
struct GeometrySpec {
    points: Vec<String>,
    collinear: Vec<(u32, u32, u32)>,
    perp: Vec<(u32, u32)>,
}

impl Serialize for Orthogeometry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GeometrySpec {
            points: self.labels.clone(),
            collinear: self.canonical_triples(),
            perp: self.canonical_perp_pairs(),
        }
        .serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Orthogeometry {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let GeometrySpec { points, collinear, perp } = GeometrySpec::deserialize(d)?;
        let mut triples = BTreeSet::new();
        for (p, q, r) in collinear {
            for (a, b, c) in
                [(p, q, r), (p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)]
            {
                triples.insert((a, b, c));
            }
        }
        let mut pairs = BTreeSet::new();
        for (p, q) in perp {
            pairs.insert((p, q));
            pairs.insert((q, p));
        }
        Orthogeometry::new(points, triples, pairs).map_err(D::Error::custom)
    }
}

/// Verdict for a single geometry axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    /// Stable identifier of the axiom, e.g. `"delta-permutation"`.
    pub axiom: &'static str,
    pub holds: bool,
    /// Human-readable description of the first violation found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Outcome of checking all orthogeometry axioms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeometryReport {
    pub points: usize,
    pub axioms: Vec<AxiomReport>,
    pub all_hold: bool,
}

/// The lattice of collinearity-closed point sets of a geometry, with the
/// point set backing each lattice element.
#[derive(Clone, Debug)]
pub struct GeometryLattice {
    pub lattice: GaloisLattice,
    /// `point_sets[i]` is the strictly increasing list of point indices
    /// forming lattice element `i`. Elements are ordered by size, then
    /// lexicographically.
    pub point_sets: Vec<Vec<u32>>,
}

/// Result of searching a lattice for complemented Galois subalgebras
/// that fail the polarity laws.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolaritySearchReport {
    /// Number of generator sets whose closure was examined.
    pub tried: u64,
    /// True when every generator set of size at most three was examined.
    pub exhausted: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<PolarityWitness>,
}

/// A complemented Galois subalgebra violating a polarity law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarityWitness {
    /// Labels of the generating elements in the ambient lattice.
    pub generators: Vec<String>,
    pub subalgebra_size: usize,
    /// Element tuple of the subalgebra witnessing the failure, if the
    /// law check produced one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failed_elements: Option<Vec<u32>>,
}

impl Orthogeometry {
    /// Builds a geometry from explicit relations. Indices must reference
    /// `labels`; the relations are stored as given.
    pub fn new<C, P>(labels: Vec<String>, collinear: C, perp: P) -> Result<Orthogeometry>
    where
        C: IntoIterator<Item = (u32, u32, u32)>,
        P: IntoIterator<Item = (u32, u32)>,
    {
        let m = labels.len();
        if m > GEOMETRY_POINT_CAP {
            return Err(Error::EnumerationCap { count: m as u64, cap: GEOMETRY_POINT_CAP as u64 });
        }
        let collinear: BTreeSet<(u32, u32, u32)> = collinear.into_iter().collect();
        let perp: BTreeSet<(u32, u32)> = perp.into_iter().collect();
        for &(p, q, r) in &collinear {
            if p as usize >= m || q as usize >= m || r as usize >= m {
                return Err(Error::InvalidInput(format!(
                    "collinear triple ({p},{q},{r}) references a missing point"
                )));
            }
        }
        for &(p, q) in &perp {
            if p as usize >= m || q as usize >= m {
                return Err(Error::InvalidInput(format!(
                    "perp pair ({p},{q}) references a missing point"
                )));
            }
        }
        Ok(Orthogeometry { labels, collinear, perp })
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, p: u32) -> &str {
        &self.labels[p as usize]
    }

    pub fn is_collinear(&self, p: u32, q: u32, r: u32) -> bool {
        self.collinear.contains(&(p, q, r))
    }

    pub fn is_perp(&self, p: u32, q: u32) -> bool {
        self.perp.contains(&(p, q))
    }

    /// True when `t` lies on the line spanned by `p` and `q`, counting
    /// the spanning points themselves. For `p == q` this degenerates to
    /// membership in `{p}` plus whatever the relation asserts.
    pub fn on_line(&self, p: u32, q: u32, t: u32) -> bool {
        t == p || t == q || self.is_collinear(p, q, t)
    }

    /// Collinear triples `(p, q, r)` with `p < q < r`, one per orbit
    /// when the relation is permutation-invariant.
    pub fn canonical_triples(&self) -> Vec<(u32, u32, u32)> {
        self.collinear.iter().copied().filter(|&(p, q, r)| p < q && q < r).collect()
    }

    /// Perpendicular pairs `(p, q)` with `p <= q`, one per orbit when
    /// the relation is symmetric.
    pub fn canonical_perp_pairs(&self) -> Vec<(u32, u32)> {
        self.perp.iter().copied().filter(|&(p, q)| p <= q).collect()
    }

    /// Smallest collinearity-closed set of points containing `seed`.
    pub fn span(&self, seed: &BTreeSet<u32>) -> BTreeSet<u32> {
        let m = self.point_count() as u32;
        let mut out = seed.clone();
        loop {
            let mut grew = false;
            let members: Vec<u32> = out.iter().copied().collect();
            for (i, &p) in members.iter().enumerate() {
                for &q in &members[i + 1..] {
                    for r in 0..m {
                        if !out.contains(&r) && self.is_collinear(p, q, r) {
                            out.insert(r);
                            grew = true;
                        }
                    }
                }
            }
            if !grew {
                return out;
            }
        }
    }

    /// Points perpendicular to every point of `xs`.
    pub fn perp_set(&self, xs: &BTreeSet<u32>) -> BTreeSet<u32> {
        (0..self.point_count() as u32)
            .filter(|&q| xs.iter().all(|&p| self.is_perp(q, p)))
            .collect()
    }

    /// Checks every defining axiom and reports the first violation of
    /// each with a witness.
    ///
    /// The axioms, in report order:
    /// * `delta-permutation` — collinear triples are pairwise distinct
    ///   and the relation is invariant under permuting the triple;
    /// * `delta-closure` — two distinct points collinear with a common
    ///   pair are collinear with its first member;
    /// * `delta-pasch` — a line meeting two sides of a triangle meets
    ///   the third: whenever `(p,a,b)` and `(p,c,d)` are collinear there
    ///   is a point on both the line through `a,c` and the line through
    ///   `b,d` (spanning points count as lying on their line);
    /// * `perp-symmetric` — perpendicularity is symmetric;
    /// * `perp-subspace` — the points perpendicular to a fixed point are
    ///   closed under collinearity;
    /// * `perp-nondegenerate` — no point is perpendicular to all points;
    /// * `polarity` — for distinct `p, q` and any `r`, the line through
    ///   `p, q` carries a point perpendicular to `r`.
    pub fn axiom_check(&self) -> GeometryReport {
        let axioms = vec![
            self.check_permutation(),
            self.check_closure(),
            self.check_pasch(),
            self.check_perp_symmetric(),
            self.check_perp_subspace(),
            self.check_perp_nondegenerate(),
            self.check_polarity(),
        ];
        let all_hold = axioms.iter().all(|a| a.holds);
        GeometryReport { points: self.point_count(), axioms, all_hold }
    }

    fn check_permutation(&self) -> AxiomReport {
        for &(p, q, r) in &self.collinear {
            if p == q || q == r || p == r {
                return fail(
                    "delta-permutation",
                    format!("triple ({p},{q},{r}) has repeated points"),
                );
            }
            for perm in [(p, r, q), (q, p, r), (q, r, p), (r, p, q), (r, q, p)] {
                if !self.collinear.contains(&perm) {
                    return fail(
                        "delta-permutation",
                        format!(
                            "({p},{q},{r}) is collinear but ({},{},{}) is not",
                            perm.0, perm.1, perm.2
                        ),
                    );
                }
            }
        }
        pass("delta-permutation")
    }

    fn check_closure(&self) -> AxiomReport {
        let mut by_pair: BTreeMap<(u32, u32), Vec<u32>> = BTreeMap::new();
        for &(p, q, r) in &self.collinear {
            by_pair.entry((p, q)).or_default().push(r);
        }
        for (&(p0, _), third) in &by_pair {
            for &a in third {
                for &b in third {
                    if a != b && !self.is_collinear(p0, a, b) {
                        return fail(
                            "delta-closure",
                            format!("{a} and {b} lie on a common line through {p0} but ({p0},{a},{b}) is not collinear"),
                        );
                    }
                }
            }
        }
        pass("delta-closure")
    }

    fn check_pasch(&self) -> AxiomReport {
        let m = self.point_count() as u32;
        let mut by_vertex: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for &(p, a, b) in &self.collinear {
            by_vertex.entry(p).or_default().push((a, b));
        }
        for (&p, sides) in &by_vertex {
            for &(a, b) in sides {
                for &(c, d) in sides {
                    // Identical sides degenerate to a single line and
                    // assert nothing; `on_line` handles the remaining
                    // repeated-point cases (a line through one point is
                    // that point).
                    if a == c && b == d {
                        continue;
                    }
                    let found =
                        (0..m).any(|q| self.on_line(a, c, q) && self.on_line(b, d, q));
                    if !found {
                        return fail(
                            "delta-pasch",
                            format!("({p},{a},{b}) and ({p},{c},{d}) are collinear but no point lies on both the line {a},{c} and the line {b},{d}"),
                        );
                    }
                }
            }
        }
        pass("delta-pasch")
    }

    fn check_perp_symmetric(&self) -> AxiomReport {
        for &(p, q) in &self.perp {
            if !self.perp.contains(&(q, p)) {
                return fail("perp-symmetric", format!("{p} ⊥ {q} but not {q} ⊥ {p}"));
            }
        }
        pass("perp-symmetric")
    }

    fn check_perp_subspace(&self) -> AxiomReport {
        for p in 0..self.point_count() as u32 {
            for &(q, r, s) in &self.collinear {
                if self.is_perp(p, q) && self.is_perp(p, r) && !self.is_perp(p, s) {
                    return fail(
                        "perp-subspace",
                        format!("{p} ⊥ {q} and {p} ⊥ {r}, ({q},{r},{s}) is collinear, but {p} ⊥ {s} fails"),
                    );
                }
            }
        }
        pass("perp-subspace")
    }

    fn check_perp_nondegenerate(&self) -> AxiomReport {
        let m = self.point_count() as u32;
        for p in 0..m {
            if (0..m).all(|q| self.is_perp(p, q)) {
                return fail(
                    "perp-nondegenerate",
                    format!("point {p} is perpendicular to every point"),
                );
            }
        }
        pass("perp-nondegenerate")
    }

    fn check_polarity(&self) -> AxiomReport {
        let m = self.point_count() as u32;
        for p in 0..m {
            for q in 0..m {
                if p == q {
                    continue;
                }
                for r in 0..m {
                    let found = (0..m).any(|t| self.is_perp(r, t) && self.on_line(p, q, t));
                    if !found {
                        return fail(
                            "polarity",
                            format!("no point on the line through {p},{q} is perpendicular to {r}"),
                        );
                    }
                }
            }
        }
        pass("polarity")
    }
}

fn pass(axiom: &'static str) -> AxiomReport {
    AxiomReport { axiom, holds: true, witness: None }
}

fn fail(axiom: &'static str, witness: String) -> AxiomReport {
    AxiomReport { axiom, holds: false, witness: Some(witness) }
}

/// The orthogeometry of a nondegenerate orthosymmetric space: points are
/// the one-dimensional subspaces, `(p, q, r)` is collinear when the
/// three are distinct and `p` lies in `q + r`, and `p ⊥ q` when their
/// representing vectors are perpendicular under the form.
pub fn geometry_of_space(space: &GramSpace) -> Result<Orthogeometry> {
    space.require_nondegenerate()?;
    space.require_orthosymmetric()?;
    let f = space.field();
    let points = space.lines();
    let m = points.len();
    if m > GEOMETRY_POINT_CAP {
        return Err(Error::EnumerationCap { count: m as u64, cap: GEOMETRY_POINT_CAP as u64 });
    }
    let reps: Vec<Vec<Fel>> = points.iter().map(|p| p.basis().row(0).to_vec()).collect();

    let mut collinear = BTreeSet::new();
    for q in 0..m {
        for r in 0..m {
            if q == r {
                continue;
            }
            let line = points[q].sum(f, &points[r]);
            for (p, rep) in reps.iter().enumerate() {
                if p != q && p != r && line.contains_vec(f, rep) {
                    collinear.insert((p as u32, q as u32, r as u32));
                }
            }
        }
    }
    let mut perp = BTreeSet::new();
    for p in 0..m {
        for q in 0..m {
            if space.inner(&reps[p], &reps[q])? == 0 {
                perp.insert((p as u32, q as u32));
            }
        }
    }
    let labels = points.iter().map(|p| p.label()).collect();
    Orthogeometry::new(labels, collinear, perp)
}

/// The atom geometry of an atomic involution lattice: points are the
/// atoms, `(p, q, r)` is collinear when the atoms are distinct and
/// `p <= q + r`, and `p ⊥ q` when `p <= q'`.
///
/// The lattice must be atomistic — every element the join of the atoms
/// below it — or the atom geometry would lose elements. (In a finite
/// lattice every nonzero element *dominates* an atom, so the weaker
/// reading of atomicity would be vacuous here.)
pub fn geometry_of_lattice(lattice: &GaloisLattice) -> Result<Orthogeometry> {
    let atoms = lattice.atoms();
    for x in 0..lattice.size() as u32 {
        let join = atoms
            .iter()
            .filter(|&&a| lattice.leq(a, x))
            .fold(lattice.zero(), |acc, &a| lattice.join(acc, a));
        if join != x {
            return Err(Error::NotAtomic);
        }
    }
    let m = atoms.len();
    if m > GEOMETRY_POINT_CAP {
        return Err(Error::EnumerationCap { count: m as u64, cap: GEOMETRY_POINT_CAP as u64 });
    }
    let mut collinear = BTreeSet::new();
    for (q, &aq) in atoms.iter().enumerate() {
        for (r, &ar) in atoms.iter().enumerate() {
            if q == r {
                continue;
            }
            let line = lattice.join(aq, ar);
            for (p, &ap) in atoms.iter().enumerate() {
                if p != q && p != r && lattice.leq(ap, line) {
                    collinear.insert((p as u32, q as u32, r as u32));
                }
            }
        }
    }
    let mut perp = BTreeSet::new();
    for (p, &ap) in atoms.iter().enumerate() {
        for (q, &aq) in atoms.iter().enumerate() {
            if lattice.leq(ap, lattice.prime(aq)) {
                perp.insert((p as u32, q as u32));
            }
        }
    }
    let labels = atoms.iter().map(|&a| lattice.label(a).to_string()).collect();
    Orthogeometry::new(labels, collinear, perp)
}

/// The lattice of collinearity-closed point sets of a geometry, with the
/// orthogonal map `X ↦ X^⊥` as the prime operation.
///
/// Fails when the orthogonal of some closed set is not itself closed,
/// which can only happen when the geometry violates its axioms.
pub fn lattice_of_geometry(geometry: &Orthogeometry) -> Result<GeometryLattice> {
    let closed = enumerate_closed_sets(geometry)?;
    let index: BTreeMap<&[u32], u32> =
        closed.iter().enumerate().map(|(i, s)| (s.as_slice(), i as u32)).collect();

    let mut prime = Vec::with_capacity(closed.len());
    for set in &closed {
        let members: BTreeSet<u32> = set.iter().copied().collect();
        let perp: Vec<u32> = geometry.perp_set(&members).into_iter().collect();
        let Some(&at) = index.get(perp.as_slice()) else {
            return Err(Error::InvalidInput(format!(
                "orthogonal of the closed set {set:?} is not collinearity-closed"
            )));
        };
        prime.push(at);
    }

    let labels: Vec<String> = closed
        .iter()
        .map(|s| {
            let names: Vec<&str> = s.iter().map(|&p| geometry.label(p)).collect();
            format!("{{{}}}", names.join(" "))
        })
        .collect();
    let sets = closed.clone();
    let lattice = GaloisLattice::from_leq(labels, prime, |i, j| {
        let small = &sets[i];
        let big = &sets[j];
        small.iter().all(|p| big.binary_search(p).is_ok())
    })?;
    Ok(GeometryLattice { lattice, point_sets: closed })
}

/// All collinearity-closed subsets, each strictly increasing, ordered by
/// size and then lexicographically.
fn enumerate_closed_sets(geometry: &Orthogeometry) -> Result<Vec<Vec<u32>>> {
    let m = geometry.point_count() as u32;
    let mut closed: BTreeSet<Vec<u32>> = BTreeSet::new();
    let mut queue: Vec<BTreeSet<u32>> = vec![BTreeSet::new()];
    closed.insert(Vec::new());
    while let Some(base) = queue.pop() {
        for p in 0..m {
            if base.contains(&p) {
                continue;
            }
            let mut seed = base.clone();
            seed.insert(p);
            let span = geometry.span(&seed);
            let as_vec: Vec<u32> = span.iter().copied().collect();
            if closed.insert(as_vec) {
                if closed.len() > LATTICE_SIZE_CAP {
                    return Err(Error::SizeCap {
                        got: closed.len() as u64,
                        cap: LATTICE_SIZE_CAP as u64,
                    });
                }
                queue.push(span);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = closed.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// Verifies the space → lattice → geometry → lattice round trip: the map
/// sending a subspace to its set of one-dimensional subspaces must be an
/// isomorphism of involution lattices.
pub fn arg2_roundtrip(space: &GramSpace) -> Result<bool> {
    let built = lattice_of_space(space)?;
    let lattice = &built.lattice;
    let geometry = geometry_of_lattice(lattice)?;
    let rebuilt = lattice_of_geometry(&geometry)?;
    if lattice.size() != rebuilt.lattice.size() {
        return Ok(false);
    }

    let atoms = lattice.atoms();
    let index: BTreeMap<&[u32], u32> = rebuilt
        .point_sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i as u32))
        .collect();
    let mut map = Vec::with_capacity(lattice.size());
    for a in 0..lattice.size() as u32 {
        let set: Vec<u32> = atoms
            .iter()
            .enumerate()
            .filter(|&(_, &at)| lattice.leq(at, a))
            .map(|(i, _)| i as u32)
            .collect();
        match index.get(set.as_slice()) {
            Some(&i) => map.push(i),
            None => return Ok(false),
        }
    }
    let hom = LatticeHom { map };
    let report = hom_tools(lattice, &rebuilt.lattice, &hom)?;
    Ok(report.is_hom && report.is_galois_hom && report.injective)
}

/// Searches the subspace lattice of `space` for a complemented Galois
/// subalgebra that fails a polarity law. Generator sets of size at most
/// three are closed under join, meet, and prime in a fixed order (by
/// size, then lexicographically); `budget` bounds how many sets are
/// examined.
pub fn polarity_subalgebra_search(space: &GramSpace, budget: u64) -> Result<PolaritySearchReport> {
    let built = lattice_of_space(space)?;
    let lattice = &built.lattice;
    let m = lattice.size() as u32;
    let config = LawCheckConfig::default();

    let mut tried = 0u64;
    let examine = |gens: &[u32], tried: &mut u64| -> Result<Option<PolarityWitness>> {
        *tried += 1;
        let (sub, _) = lattice.galois_closure(gens)?;
        if !sub.check_law(Law::Complemented, &config).pass {
            return Ok(None);
        }
        let polarity = sub.check_law(Law::Polarity, &config);
        if polarity.pass {
            return Ok(None);
        }
        Ok(Some(PolarityWitness {
            generators: gens.iter().map(|&g| lattice.label(g).to_string()).collect(),
            subalgebra_size: sub.size(),
            failed_elements: polarity.witness,
        }))
    };

    let mut sets: Vec<Vec<u32>> = vec![Vec::new()];
    sets.extend((0..m).map(|a| vec![a]));
    for a in 0..m {
        for b in a + 1..m {
            sets.push(vec![a, b]);
        }
    }
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                sets.push(vec![a, b, c]);
            }
        }
    }

    for gens in &sets {
        if tried >= budget {
            return Ok(PolaritySearchReport { tried, exhausted: false, counterexample: None });
        }
        if let Some(witness) = examine(gens, &mut tried)? {
            return Ok(PolaritySearchReport { tried, exhausted: false, counterexample: Some(witness) });
        }
    }
    Ok(PolaritySearchReport { tried, exhausted: true, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::tests::{gf, gf2_symplectic, gf3_euclidean, space};

    fn gf2_cube() -> GramSpace {
        let f = gf(2, 1, crate::field::Involution::Identity);
        space(&f, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
    }

    #[test]
    fn wire_format_stores_one_representative_per_orbit() {
        let geometry = geometry_of_space(&gf2_symplectic()).unwrap();
        let json = serde_json::to_string(&geometry).unwrap();
        // 6 permutations of the single line collapse to one sorted triple,
        // the self-perpendicularities to one pair each
        assert!(json.contains(r#""collinear":[[0,1,2]]"#), "{json}");
        assert!(json.contains(r#""perp":[[0,0],[1,1],[2,2]]"#), "{json}");
        let back: Orthogeometry = serde_json::from_str(&json).unwrap();
        assert_eq!(back, geometry);

        // out-of-range indices are rejected on the way in
        let bad = r#"{"points":["a","b"],"collinear":[[0,1,2]],"perp":[]}"#;
        assert!(serde_json::from_str::<Orthogeometry>(bad).is_err());
    }

    #[test]
    fn symplectic_plane_geometry_has_three_mutually_collinear_points() {
        let geometry = geometry_of_space(&gf2_symplectic()).unwrap();
        assert_eq!(geometry.point_count(), 3);
        for p in 0..3 {
            for q in 0..3 {
                for r in 0..3 {
                    let distinct = p != q && q != r && p != r;
                    assert_eq!(geometry.is_collinear(p, q, r), distinct);
                }
            }
        }
        // Alternate form: every point is self-perpendicular, and the
        // perpendicular pairs are exactly the equal ones.
        for p in 0..3 {
            for q in 0..3 {
                assert_eq!(geometry.is_perp(p, q), p == q, "perp({p},{q})");
            }
        }
        let report = geometry.axiom_check();
        assert!(report.all_hold, "{report:?}");
    }

    #[test]
    fn euclidean_plane_geometry_perp_is_a_perfect_matching() {
        let geometry = geometry_of_space(&gf3_euclidean()).unwrap();
        assert_eq!(geometry.point_count(), 4);
        let mut partner = [None; 4];
        for p in 0..4u32 {
            let mates: Vec<u32> = (0..4).filter(|&q| geometry.is_perp(p, q)).collect();
            assert_eq!(mates.len(), 1, "point {p} should have one perpendicular");
            assert_ne!(mates[0], p, "no point is isotropic here");
            partner[p as usize] = Some(mates[0]);
        }
        // The matching is an involution without fixed points.
        for p in 0..4u32 {
            let q = partner[p as usize].unwrap();
            assert_eq!(partner[q as usize], Some(p));
        }
        let report = geometry.axiom_check();
        assert!(report.all_hold, "{report:?}");
    }

    #[test]
    fn lattice_geometry_matches_space_geometry_pointwise() {
        for space in [gf2_symplectic(), gf3_euclidean(), gf2_cube()] {
            let from_space = geometry_of_space(&space).unwrap();
            let built = lattice_of_space(&space).unwrap();
            let from_lattice = geometry_of_lattice(&built.lattice).unwrap();
            assert_eq!(from_space, from_lattice);
        }
    }

    #[test]
    fn axiom_reports_carry_witnesses_for_broken_geometries() {
        // Two points, no collinearity, p0 perpendicular to everything.
        let geometry = Orthogeometry::new(
            vec!["a".into(), "b".into()],
            Vec::new(),
            vec![(0, 0), (0, 1), (1, 0)],
        )
        .unwrap();
        let report = geometry.axiom_check();
        assert!(!report.all_hold);
        let by_name = |name: &str| {
            report.axioms.iter().find(|a| a.axiom == name).cloned().unwrap()
        };
        assert!(by_name("delta-permutation").holds);
        assert!(by_name("perp-symmetric").holds);
        assert!(!by_name("perp-nondegenerate").holds);
        assert!(by_name("perp-nondegenerate").witness.unwrap().contains("point 0"));

        // Polarity fails when some point sees no perpendicular on a
        // line: here point 1 is perpendicular to nothing at all.
        let isolated = Orthogeometry::new(
            vec!["a".into(), "b".into()],
            Vec::new(),
            vec![(0, 0)],
        )
        .unwrap();
        let report = isolated.axiom_check();
        let polarity =
            report.axioms.iter().find(|a| a.axiom == "polarity").unwrap();
        assert!(!polarity.holds);
        assert!(polarity.witness.as_ref().unwrap().contains("perpendicular"));

        // A triple with a repeated point, and an asymmetric perp.
        let broken = Orthogeometry::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 0, 1)],
            vec![(0, 1)],
        )
        .unwrap();
        let report = broken.axiom_check();
        assert!(!report.all_hold);
        let perm = report.axioms.iter().find(|a| a.axiom == "delta-permutation").unwrap();
        assert!(!perm.holds);
        assert!(perm.witness.as_ref().unwrap().contains("repeated"));
        let sym = report.axioms.iter().find(|a| a.axiom == "perp-symmetric").unwrap();
        assert!(!sym.holds);

        // Out-of-range references are rejected outright.
        assert!(matches!(
            Orthogeometry::new(vec!["a".into()], vec![(0, 0, 7)], Vec::new()),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn closed_sets_of_the_cube_geometry_rebuild_its_subspace_lattice() {
        let space = gf2_cube();
        let geometry = geometry_of_space(&space).unwrap();
        let rebuilt = lattice_of_geometry(&geometry).unwrap();
        // 1 empty set + 7 points + 7 lines + the full plane.
        assert_eq!(rebuilt.lattice.size(), 16);
        assert_eq!(rebuilt.point_sets[0], Vec::<u32>::new());
        assert_eq!(*rebuilt.point_sets.last().unwrap(), (0..7).collect::<Vec<u32>>());
        // Lines of the geometry have three points each.
        let line_count =
            rebuilt.point_sets.iter().filter(|s| s.len() == 3).count();
        assert_eq!(line_count, 7);
        let laws = rebuilt.lattice.check_laws(
            &[Law::Modular, Law::Galois, Law::Involution, Law::Complemented],
            &LawCheckConfig::default(),
        );
        assert!(laws.iter().all(|r| r.pass), "{laws:?}");
    }

    #[test]
    fn roundtrip_rebuilds_the_subspace_lattice_up_to_isomorphism() {
        for space in [gf2_symplectic(), gf3_euclidean(), gf2_cube()] {
            assert!(arg2_roundtrip(&space).unwrap(), "{:?}", space.gram());
        }
    }

    #[test]
    fn geometry_of_lattice_requires_atomicity() {
        // In the chain 0 < a < 1 the top is not a join of atoms, so its
        // atom geometry (a single point) would forget an element.
        let labels = vec!["0".into(), "a".into(), "1".into()];
        let prime = vec![2, 1, 0];
        let lattice = GaloisLattice::from_leq(labels, prime, |i, j| i <= j).unwrap();
        assert!(matches!(geometry_of_lattice(&lattice), Err(Error::NotAtomic)));
    }

    #[test]
    fn cube_subalgebra_search_is_deterministic_and_exhausts_budget() {
        // 16 lattice elements: 1 empty set + 16 singletons + 120 pairs
        // + 560 triples of generators. The outcome itself is recorded,
        // not asserted: whether a complemented Galois subalgebra can
        // fail polarity is exactly what the search probes.
        let space = gf2_cube();
        let report = polarity_subalgebra_search(&space, 10_000).unwrap();
        assert!(report.exhausted);
        assert_eq!(report.tried, 697);
        let again = polarity_subalgebra_search(&space, 10_000).unwrap();
        assert_eq!(report, again);
    }

    #[test]
    fn symplectic_plane_has_no_polarity_counterexample_among_small_subalgebras() {
        let report = polarity_subalgebra_search(&gf2_symplectic(), u64::MAX).unwrap();
        assert!(report.exhausted);
        assert!(report.counterexample.is_none());
        // 1 empty + 5 singletons + 10 pairs + 10 triples.
        assert_eq!(report.tried, 26);
    }

    #[test]
    fn budget_limits_the_subalgebra_search() {
        let report = polarity_subalgebra_search(&gf2_symplectic(), 7).unwrap();
        assert!(!report.exhausted);
        assert_eq!(report.tried, 7);
        assert!(report.counterexample.is_none());
    }
}
