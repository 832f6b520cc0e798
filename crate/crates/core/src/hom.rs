//! Homomorphisms between ∗-rings.
//!
//! A [`RingHom`] couples a source and target [`StarRing`] with one of a few
//! structural map forms ([`HomMap`]): an explicit table, a product
//! projection, an entrywise field embedding, a block-diagonal assembly of
//! entrywise embeddings, or conjugation by an invertible matrix. The shapes
//! are validated at construction; the algebraic laws (preservation of add,
//! mul, star, 1, and prime-subfield scalars) are checked by [`RingHom::check`]
//! — exhaustively over all pairs on small carriers, otherwise on a spanning
//! set plus seeded random samples.
//!
//! [`lift_quasi_inverse`] solves the following relative regularity problem
//! along a surjection with regular kernel: given `a b a = a` downstairs and
//! preimages `c` of `a` and `y` of `b`, produce `d` with `c d c = c` that
//! still maps to `b`.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Fel, FieldEmbedding};
use crate::lattice::CheckMethod;
use crate::mat::Mat;
use crate::ring::{RElem, StarRing};

/// Carriers up to this size get all-pairs law verification in `check`.
pub const HOM_FULL_PAIR_CAP: u64 = 1024;
/// Number of seeded random pairs checked on larger carriers.
pub const HOM_SAMPLE_PAIRS: u64 = 2000;
/// Seed for the sampled tier.
pub const HOM_SAMPLE_SEED: u64 = 1729;
/// At most this many kernel elements are listed in a report (the size field
/// stays exact).
pub const KERNEL_LIST_CAP: usize = 4096;

/// The map part of a ring homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomMap {
    Identity,
    /// Total lookup table on the source carrier.
    Table(BTreeMap<RElem, RElem>),
    /// Projection of a product ring onto one factor.
    Projection(usize),
    /// Entrywise application of a field embedding to matrices.
    Entrywise(FieldEmbedding),
    /// Tuple of matrices mapped entrywise by per-factor embeddings into one
    /// block-diagonal matrix over the common target field.
    BlockDiag(Vec<FieldEmbedding>),
    /// `r -> c⁻¹ r c` between matrix rings over the same field.
    Conjugation { c: Mat, c_inv: Mat },
}

/// A homomorphism of ∗-rings with explicit source and target.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: StarRing,
    target: StarRing,
    map: HomMap,
}

/// Outcome of the law scan for a ring homomorphism.
#[derive(Clone, Debug, Serialize)]
pub struct RingHomReport {
    /// All checked instances of add/mul/star/one/scalar preservation hold.
    pub is_star_hom: bool,
    pub injective: bool,
    /// Exact number of carrier elements mapping to zero.
    pub kernel_size: u64,
    /// The kernel elements, truncated to [`KERNEL_LIST_CAP`].
    pub kernel: Vec<RElem>,
    /// Every listed kernel element has its star in the kernel.
    pub kernel_star_closed: bool,
    pub method: CheckMethod,
    /// Human-readable description of the first failed law, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// Shape-level membership: the element has the right format and entry range
/// for the ring (and lies in the carrier, for generated rings).
fn contains(ring: &StarRing, x: &RElem) -> bool {
    match (ring, x) {
        (StarRing::Matrix { space, .. }, RElem::Mat(m)) => {
            m.rows() == space.dim()
                && m.cols() == space.dim()
                && m.data().iter().all(|&e| (e as u64) < space.field().order())
        }
        (StarRing::Product { factors }, RElem::Tuple(t)) => {
            factors.len() == t.len() && factors.iter().zip(t).all(|(f, e)| contains(f, e))
        }
        (StarRing::Generated { carrier, .. }, x) => carrier.binary_search(x).is_ok(),
        _ => false,
    }
}

/// A deterministic additive spanning set of the ring: scaled matrix units
/// for matrix rings, factor injections for products, the carrier itself for
/// generated rings.
fn spanning_set(ring: &StarRing) -> Result<Vec<RElem>> {
    match ring {
        StarRing::Matrix { space, .. } => {
            let f = space.field();
            let n = space.dim();
            let mut out = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    for lambda in f.elements().skip(1) {
                        let mut m = Mat::zeros(n, n);
                        m.set(i, j, lambda);
                        out.push(RElem::Mat(m));
                    }
                }
            }
            Ok(out)
        }
        StarRing::Product { factors } => {
            let mut out = Vec::new();
            for (i, factor) in factors.iter().enumerate() {
                for e in spanning_set(factor)? {
                    let tuple = factors
                        .iter()
                        .enumerate()
                        .map(|(j, fj)| if j == i { e.clone() } else { fj.zero() })
                        .collect();
                    out.push(RElem::Tuple(tuple));
                }
            }
            Ok(out)
        }
        StarRing::Generated { .. } => ring.carrier(),
    }
}

/// A uniformly random element, for sampled law checks.
fn sample_element(ring: &StarRing, rng: &mut ChaCha8Rng) -> RElem {
    match ring {
        StarRing::Matrix { space, .. } => {
            let n = space.dim();
            let order = space.field().order();
            let mut m = Mat::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    m.set(i, j, rng.gen_range(0..order) as Fel);
                }
            }
            RElem::Mat(m)
        }
        StarRing::Product { factors } => {
            RElem::Tuple(factors.iter().map(|f| sample_element(f, rng)).collect())
        }
        StarRing::Generated { carrier, .. } => carrier[rng.gen_range(0..carrier.len())].clone(),
    }
}

impl RingHom {
    /// Validates the structural fit of `map` between `source` and `target`.
    /// Algebraic laws are the business of [`RingHom::check`].
    pub fn new(source: StarRing, target: StarRing, map: HomMap) -> Result<RingHom> {
        match &map {
            HomMap::Identity => {
                if source != target {
                    return Err(Error::NotAHom(
                        "identity map needs equal source and target".into(),
                    ));
                }
            }
            HomMap::Table(table) => {
                let carrier = source.carrier()?;
                if carrier.len() != table.len()
                    || carrier.iter().any(|x| !table.contains_key(x))
                {
                    return Err(Error::NotAHom(
                        "hom table is not total on the source carrier".into(),
                    ));
                }
                if let Some(bad) = table.values().find(|v| !contains(&target, v)) {
                    return Err(Error::NotAHom(format!(
                        "table value {bad:?} is not a target element"
                    )));
                }
            }
            HomMap::Projection(i) => match &source {
                StarRing::Product { factors } => {
                    if *i >= factors.len() {
                        return Err(Error::NotAHom(format!(
                            "projection index {i} out of range for {} factors",
                            factors.len()
                        )));
                    }
                    if factors[*i] != target {
                        return Err(Error::NotAHom(
                            "projection target must be the selected factor".into(),
                        ));
                    }
                }
                _ => {
                    return Err(Error::NotAHom(
                        "projection needs a product ring source".into(),
                    ))
                }
            },
            HomMap::Entrywise(emb) => {
                let (s, t) = match (&source, &target) {
                    (
                        StarRing::Matrix { space: s, .. },
                        StarRing::Matrix { space: t, .. },
                    ) => (s, t),
                    _ => {
                        return Err(Error::NotAHom(
                            "entrywise embedding needs matrix rings".into(),
                        ))
                    }
                };
                if s.dim() != t.dim() {
                    return Err(Error::NotAHom("entrywise embedding needs equal dimensions".into()));
                }
                if emb.source() != s.field() || emb.target() != t.field() {
                    return Err(Error::FieldMismatch);
                }
            }
            HomMap::BlockDiag(embs) => {
                let factors = match &source {
                    StarRing::Product { factors } => factors,
                    _ => {
                        return Err(Error::NotAHom(
                            "block-diagonal map needs a product ring source".into(),
                        ))
                    }
                };
                let t = match &target {
                    StarRing::Matrix { space, .. } => space,
                    _ => {
                        return Err(Error::NotAHom(
                            "block-diagonal map needs a matrix ring target".into(),
                        ))
                    }
                };
                if factors.len() != embs.len() {
                    return Err(Error::LengthMismatch {
                        got: embs.len(),
                        want: factors.len(),
                    });
                }
                let mut total = 0;
                for (factor, emb) in factors.iter().zip(embs) {
                    match factor {
                        StarRing::Matrix { space, .. } => {
                            if emb.source() != space.field() {
                                return Err(Error::FieldMismatch);
                            }
                            total += space.dim();
                        }
                        _ => {
                            return Err(Error::NotAHom(
                                "block-diagonal factors must be matrix rings".into(),
                            ))
                        }
                    }
                    if emb.target() != t.field() {
                        return Err(Error::FieldMismatch);
                    }
                }
                if total != t.dim() {
                    return Err(Error::NotAHom(format!(
                        "block sizes sum to {total}, target dimension is {}",
                        t.dim()
                    )));
                }
            }
            HomMap::Conjugation { c, c_inv } => {
                let (s, t) = match (&source, &target) {
                    (
                        StarRing::Matrix { space: s, .. },
                        StarRing::Matrix { space: t, .. },
                    ) => (s, t),
                    _ => {
                        return Err(Error::NotAHom(
                            "conjugation needs matrix rings".into(),
                        ))
                    }
                };
                if s.field() != t.field() {
                    return Err(Error::FieldMismatch);
                }
                let n = s.dim();
                if t.dim() != n || c.rows() != n || c.cols() != n {
                    return Err(Error::NonSquareGram { rows: c.rows(), cols: c.cols() });
                }
                if c.mul(s.field(), c_inv) != Mat::identity(n) {
                    return Err(Error::NotAHom("conjugating matrix inverse is wrong".into()));
                }
            }
        }
        Ok(RingHom { source, target, map })
    }

    pub fn identity(ring: &StarRing) -> RingHom {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            map: HomMap::Identity,
        }
    }

    pub fn projection(product: &StarRing, component: usize) -> Result<RingHom> {
        let target = match product {
            StarRing::Product { factors } => factors
                .get(component)
                .ok_or_else(|| {
                    Error::NotAHom(format!("projection index {component} out of range"))
                })?
                .clone(),
            _ => {
                return Err(Error::NotAHom(
                    "projection needs a product ring source".into(),
                ))
            }
        };
        RingHom::new(product.clone(), target, HomMap::Projection(component))
    }

    pub fn table(
        source: StarRing,
        target: StarRing,
        pairs: impl IntoIterator<Item = (RElem, RElem)>,
    ) -> Result<RingHom> {
        RingHom::new(source, target, HomMap::Table(pairs.into_iter().collect()))
    }

    pub fn entrywise(source: StarRing, target: StarRing, emb: FieldEmbedding) -> Result<RingHom> {
        RingHom::new(source, target, HomMap::Entrywise(emb))
    }

    /// Conjugation `r -> c⁻¹ r c`; `source` and `target` may carry different
    /// Gram forms over the same field.
    pub fn conjugation(source: StarRing, target: StarRing, c: Mat) -> Result<RingHom> {
        let field = match &source {
            StarRing::Matrix { space, .. } => space.field(),
            _ => return Err(Error::NotAHom("conjugation needs matrix rings".into())),
        };
        let c_inv = c.inverse(field).ok_or(Error::DivisionByZero)?;
        RingHom::new(source, target, HomMap::Conjugation { c, c_inv })
    }

    pub fn block_diag(
        source: StarRing,
        target: StarRing,
        embs: Vec<FieldEmbedding>,
    ) -> Result<RingHom> {
        RingHom::new(source, target, HomMap::BlockDiag(embs))
    }

    pub fn source(&self) -> &StarRing {
        &self.source
    }
    pub fn target(&self) -> &StarRing {
        &self.target
    }
    pub fn map(&self) -> &HomMap {
        &self.map
    }

    pub fn apply(&self, x: &RElem) -> Result<RElem> {
        match &self.map {
            HomMap::Identity => Ok(x.clone()),
            HomMap::Table(table) => table
                .get(x)
                .cloned()
                .ok_or_else(|| Error::InvalidInput("element not in hom table".into())),
            HomMap::Projection(i) => {
                let t = x.as_tuple();
                t.get(*i)
                    .cloned()
                    .ok_or_else(|| Error::LengthMismatch { got: t.len(), want: *i + 1 })
            }
            HomMap::Entrywise(emb) => Ok(RElem::Mat(x.as_mat().map(|a| emb.apply(a)))),
            HomMap::BlockDiag(embs) => {
                let parts = x.as_tuple();
                if parts.len() != embs.len() {
                    return Err(Error::LengthMismatch { got: parts.len(), want: embs.len() });
                }
                let blocks: Vec<Mat> = parts
                    .iter()
                    .zip(embs)
                    .map(|(part, emb)| part.as_mat().map(|a| emb.apply(a)))
                    .collect();
                let refs: Vec<&Mat> = blocks.iter().collect();
                Ok(RElem::Mat(Mat::block_diag(&refs)))
            }
            HomMap::Conjugation { c, c_inv } => {
                let f = match &self.source {
                    StarRing::Matrix { space, .. } => space.field(),
                    _ => unreachable!("validated at construction"),
                };
                Ok(RElem::Mat(c_inv.mul(f, x.as_mat()).mul(f, c)))
            }
        }
    }

    /// Carrier elements mapping to the target's zero, in carrier order.
    pub fn kernel(&self) -> Result<Vec<RElem>> {
        let zero = self.target.zero();
        let mut out = Vec::new();
        for x in self.source.carrier()? {
            if self.apply(&x)? == zero {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Whether every target element is hit (by carrier scan on both sides).
    pub fn is_surjective(&self) -> Result<bool> {
        let image: BTreeSet<RElem> = self
            .source
            .carrier()?
            .iter()
            .map(|x| self.apply(x))
            .collect::<Result<_>>()?;
        Ok(image.len() as u64 == self.target.size())
    }

    /// Scan the homomorphism laws, the kernel, and injectivity.
    ///
    /// Unary laws (star, 1, prime scalars on a spanning set) and the kernel
    /// are always checked on the whole carrier. Binary laws run over all
    /// pairs when the carrier has at most [`HOM_FULL_PAIR_CAP`] elements;
    /// otherwise over all spanning-set pairs plus [`HOM_SAMPLE_PAIRS`]
    /// seeded random pairs.
    pub fn check(&self) -> Result<RingHomReport> {
        let carrier = self.source.carrier()?;
        let mut witness: Option<String> = None;
        let mut note = |w: String, ok: &mut bool| {
            *ok = false;
            if witness.is_none() {
                witness = Some(w);
            }
        };

        let mut laws_ok = true;
        if self.apply(&self.source.one())? != self.target.one() {
            note("1 is not preserved".into(), &mut laws_ok);
        }
        for x in &carrier {
            if self.apply(&self.source.star(x))? != self.target.star(&self.apply(x)?) {
                note(format!("star not preserved at {x:?}"), &mut laws_ok);
                break;
            }
        }
        let spanning = spanning_set(&self.source)?;
        let p = self.source.characteristic();
        'scalar: for x in &spanning {
            for lambda in 0..p {
                if self.apply(&self.source.scalar(lambda, x))?
                    != self.target.scalar(lambda, &self.apply(x)?)
                {
                    note(format!("scalar {lambda} not preserved at {x:?}"), &mut laws_ok);
                    break 'scalar;
                }
            }
        }

        let mut pair_law = |x: &RElem, y: &RElem, laws_ok: &mut bool| -> Result<bool> {
            let fx = self.apply(x)?;
            let fy = self.apply(y)?;
            if self.apply(&self.source.add(x, y))? != self.target.add(&fx, &fy) {
                note(format!("addition not preserved at ({x:?}, {y:?})"), laws_ok);
                return Ok(false);
            }
            if self.apply(&self.source.mul(x, y))? != self.target.mul(&fx, &fy) {
                note(format!("multiplication not preserved at ({x:?}, {y:?})"), laws_ok);
                return Ok(false);
            }
            Ok(true)
        };

        let method = if carrier.len() as u64 <= HOM_FULL_PAIR_CAP {
            'pairs: for x in &carrier {
                for y in &carrier {
                    if !pair_law(x, y, &mut laws_ok)? {
                        break 'pairs;
                    }
                }
            }
            CheckMethod::Exhaustive
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(HOM_SAMPLE_SEED);
            'sampled: {
                for x in &spanning {
                    for y in &spanning {
                        if !pair_law(x, y, &mut laws_ok)? {
                            break 'sampled;
                        }
                    }
                }
                for _ in 0..HOM_SAMPLE_PAIRS {
                    let x = sample_element(&self.source, &mut rng);
                    let y = sample_element(&self.source, &mut rng);
                    if !pair_law(&x, &y, &mut laws_ok)? {
                        break 'sampled;
                    }
                }
            }
            CheckMethod::Sampled { seed: HOM_SAMPLE_SEED, count: HOM_SAMPLE_PAIRS }
        };

        let zero = self.target.zero();
        let mut kernel = Vec::new();
        let mut kernel_size = 0u64;
        let mut images = BTreeSet::new();
        for x in &carrier {
            let fx = self.apply(x)?;
            if fx == zero {
                kernel_size += 1;
                if kernel.len() < KERNEL_LIST_CAP {
                    kernel.push(x.clone());
                }
            }
            images.insert(fx);
        }
        let injective = images.len() == carrier.len();
        let kernel_set: BTreeSet<&RElem> = kernel.iter().collect();
        let kernel_star_closed = kernel_size == kernel.len() as u64
            && kernel.iter().all(|x| kernel_set.contains(&self.source.star(x)));

        Ok(RingHomReport {
            is_star_hom: laws_ok,
            injective,
            kernel_size,
            kernel,
            kernel_star_closed,
            method,
            witness,
        })
    }

    /// Like [`RingHom::new`] followed by [`RingHom::check`], erroring unless
    /// every checked law holds.
    pub fn validated(source: StarRing, target: StarRing, map: HomMap) -> Result<RingHom> {
        let hom = RingHom::new(source, target, map)?;
        let report = hom.check()?;
        if !report.is_star_hom {
            return Err(Error::NotAHom(
                report.witness.unwrap_or_else(|| "law scan failed".into()),
            ));
        }
        Ok(hom)
    }
}

/// A quasi-inverse of `z` taken inside the kernel of `hom`: some `u` with
/// `z u z = z` and `hom(u) = 0`.
fn kernel_quasi_inverse(hom: &RingHom, z: &RElem) -> Result<RElem> {
    let source = hom.source();
    match hom.map() {
        // The kernel is 0 × ... × (full factors) × ... × 0; the projected
        // component of z is zero and quasi-inverses are componentwise with
        // qi(0) = 0, so the plain quasi-inverse already lands in the kernel.
        HomMap::Projection(_) => {
            debug_assert!(hom.target().is_zero(&hom.apply(z)?));
            let u = source
                .quasi_inverse(z)
                .map_err(|_| Error::KernelNotRegular)?;
            if !hom.target().is_zero(&hom.apply(&u)?) {
                return Err(Error::KernelNotRegular);
            }
            Ok(u)
        }
        // Injective forms have zero kernel: only z = 0 is regular inside it.
        HomMap::Identity
        | HomMap::Entrywise(_)
        | HomMap::BlockDiag(_)
        | HomMap::Conjugation { .. } => {
            if source.is_zero(z) {
                Ok(source.zero())
            } else {
                Err(Error::KernelNotRegular)
            }
        }
        // General table: scan the kernel for a witness.
        HomMap::Table(_) => {
            for u in hom.kernel()? {
                if source.mul(&source.mul(z, &u), z) == *z {
                    return Ok(u);
                }
            }
            Err(Error::KernelNotRegular)
        }
    }
}

/// Lift a quasi-inverse along a surjection with ∗-closed regular kernel.
///
/// Given `a b a = a` in the target, a preimage `c` of `a`, and a preimage
/// `y` of `b`, returns `d` with `c d c = c` and `hom(d) = b`. With
/// `z = c − c y c` (a kernel element) and `u` a quasi-inverse of `z` inside
/// the kernel, the lift is
///
/// ```text
/// d = u − u c y − y c u + y c u c y + y.
/// ```
///
/// Expanding `c d c` gives `z u z + c y c = z + c y c = c`, and `hom(d) = b`
/// because every other summand contains `u`.
pub fn lift_quasi_inverse(
    hom: &RingHom,
    a: &RElem,
    b: &RElem,
    c: &RElem,
    y: &RElem,
) -> Result<RElem> {
    let s = hom.source();
    let t = hom.target();
    if hom.apply(c)? != *a {
        return Err(Error::PreimageMismatch("hom(c) != a".into()));
    }
    if hom.apply(y)? != *b {
        return Err(Error::PreimageMismatch("hom(y) != b".into()));
    }
    if t.mul(&t.mul(a, b), a) != *a {
        return Err(Error::InvalidInput("a b a != a in the target".into()));
    }

    let cyc = s.mul(&s.mul(c, y), c);
    let z = s.sub(c, &cyc);
    let u = kernel_quasi_inverse(hom, &z)?;

    let ucy = s.mul(&s.mul(&u, c), y);
    let ycu = s.mul(&s.mul(y, c), &u);
    let ycucy = s.mul(&s.mul(&ycu, c), y);
    let d = s.add(&s.add(&s.sub(&s.sub(&u, &ucy), &ycu), &ycucy), y);

    debug_assert_eq!(s.mul(&s.mul(c, &d), c), *c);
    debug_assert_eq!(hom.apply(&d)?, *b);
    Ok(d)
}
