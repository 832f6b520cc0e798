//! Finite fields `GF(p^k)` of order at most 2^16, each carrying an
//! involution: either the identity or, for even `k`, the "half" Frobenius
//! `x -> x^(p^(k/2))` whose fixed field is the index-2 subfield `GF(p^(k/2))`.
//!
//! Elements are integer codes in `0..p^k`; the base-`p` digits of a code,
//! little-endian, are the coefficients of the element in the polynomial
//! basis `1, x, x^2, ...` modulo the field's irreducible modulus.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest allowed field order.
pub const FIELD_ORDER_CAP: u64 = 1 << 16;

/// Element code. Valid codes are `< field.order()`.
pub type Fel = u16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Involution {
    Identity,
    FrobeniusHalf,
}

/// A finite field together with its involution.
///
/// All arithmetic goes through `&self` methods; codes themselves carry no
/// field reference. Two fields compare equal when they have the same
/// characteristic, degree, modulus, and involution.
#[derive(Clone, Debug)]
pub struct InvolutiveField {
    p: u16,
    k: u32,
    order: u32,
    /// Little-endian coefficients, length `k + 1`, monic.
    modulus: Vec<u16>,
    involution: Involution,
    /// Involution table, `order` entries.
    star: Vec<Fel>,
}

impl PartialEq for InvolutiveField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.k == other.k
            && self.modulus == other.modulus
            && self.involution == other.involution
    }
}
impl Eq for InvolutiveField {}

/// Default moduli for the extension orders the test grids use. Little-endian
/// coefficient lists; each is re-verified irreducible at load time.
const DEFAULT_MODULI: &[(u16, u32, &[u16])] = &[
    (2, 2, &[1, 1, 1]),    // x^2 + x + 1
    (2, 3, &[1, 1, 0, 1]), // x^3 + x + 1
    (3, 2, &[1, 0, 1]),    // x^2 + 1
    (2, 4, &[1, 1, 0, 0, 1]), // x^4 + x + 1
    (5, 2, &[2, 0, 1]),    // x^2 + 2
    (3, 3, &[1, 2, 0, 1]), // x^3 + 2x + 1
    (7, 2, &[1, 0, 1]),    // x^2 + 1
];

impl InvolutiveField {
    /// Build `GF(p^k)` with the given involution. When `modulus` is `None`
    /// the embedded default table is consulted, falling back to the
    /// lexicographically least monic irreducible of degree `k`.
    pub fn new(p: u64, k: u32, modulus: Option<Vec<u16>>, involution: Involution) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidInput("extension degree k must be >= 1".into()));
        }
        let order = (p as u128).checked_pow(k).filter(|&o| o <= FIELD_ORDER_CAP as u128);
        let order = match order {
            Some(o) => o as u32,
            None => return Err(Error::FieldTooLarge(p.saturating_pow(k.min(64)))),
        };
        if involution == Involution::FrobeniusHalf && !k.is_multiple_of(2) {
            return Err(Error::OddDegreeFrobenius(k));
        }
        let p = p as u16;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m.last() != Some(&1) {
                    return Err(Error::InvalidInput(format!(
                        "modulus must be monic of degree {k} (little-endian, {} coefficients)",
                        k + 1
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidInput("modulus coefficient out of range".into()));
                }
                if !poly_is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus { p: p as u64 });
                }
                m
            }
            None => default_modulus(p, k)?,
        };
        let mut f = InvolutiveField { p, k, order, modulus, involution, star: Vec::new() };
        f.star = f.build_star_table();
        Ok(f)
    }

    fn build_star_table(&self) -> Vec<Fel> {
        match self.involution {
            Involution::Identity => (0..self.order).map(|c| c as Fel).collect(),
            Involution::FrobeniusHalf => {
                // x -> x^(p^(k/2)) is a ring automorphism fixing GF(p), so it
                // is determined by the image of the generator x.
                let s = (self.p as u64).pow(self.k / 2);
                let ximg = self.pow(self.gen_x(), s);
                (0..self.order)
                    .map(|c| self.eval_digits(c as Fel, ximg))
                    .collect()
            }
        }
    }

    /// Evaluate the polynomial whose coefficients are the digits of `c`
    /// at the point `at`.
    fn eval_digits(&self, c: Fel, at: Fel) -> Fel {
        let mut acc = 0;
        let mut c = c as u32;
        let mut power = self.one();
        while c > 0 {
            let digit = (c % self.p as u32) as Fel;
            acc = self.add(acc, self.mul(digit, power));
            power = self.mul(power, at);
            c /= self.p as u32;
        }
        acc
    }

    /// The class of the polynomial `x` (code `p`); for `k = 1` this is 0.
    fn gen_x(&self) -> Fel {
        if self.k == 1 { 0 } else { self.p }
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn order(&self) -> u64 {
        self.order as u64
    }
    pub fn modulus(&self) -> &[u16] {
        &self.modulus
    }
    pub fn involution(&self) -> Involution {
        self.involution
    }
    pub fn has_identity_involution(&self) -> bool {
        self.involution == Involution::Identity
    }

    pub fn elements(&self) -> impl Iterator<Item = Fel> {
        (0..self.order).map(|c| c as Fel)
    }

    pub fn zero(&self) -> Fel {
        0
    }
    pub fn one(&self) -> Fel {
        1
    }

    fn digits(&self, a: Fel) -> Vec<u16> {
        let mut d = vec![0; self.k as usize];
        let mut a = a as u32;
        for slot in d.iter_mut() {
            *slot = (a % self.p as u32) as u16;
            a /= self.p as u32;
        }
        d
    }

    fn pack_digits(&self, d: &[u16]) -> Fel {
        let mut code: u32 = 0;
        for &c in d.iter().rev() {
            code = code * self.p as u32 + c as u32;
        }
        code as Fel
    }

    pub fn add(&self, a: Fel, b: Fel) -> Fel {
        debug_assert!((a as u32) < self.order && (b as u32) < self.order);
        let (mut a, mut b) = (a as u32, b as u32);
        let p = self.p as u32;
        let mut code = 0;
        let mut place = 1;
        for _ in 0..self.k {
            code += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        code as Fel
    }

    pub fn neg(&self, a: Fel) -> Fel {
        let mut a = a as u32;
        let p = self.p as u32;
        let mut code = 0;
        let mut place = 1;
        for _ in 0..self.k {
            code += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        code as Fel
    }

    pub fn sub(&self, a: Fel, b: Fel) -> Fel {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fel, b: Fel) -> Fel {
        debug_assert!((a as u32) < self.order && (b as u32) < self.order);
        if self.k == 1 {
            return ((a as u32 * b as u32) % self.p as u32) as Fel;
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let p = self.p as u32;
        let mut prod = vec![0u32; 2 * self.k as usize - 1];
        for (i, &ca) in da.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + ca as u32 * cb as u32) % p;
            }
        }
        // reduce by the monic modulus
        for i in (self.k as usize..prod.len()).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            let shift = i - self.k as usize;
            for (j, &m) in self.modulus.iter().enumerate().take(self.k as usize) {
                let idx = j + shift;
                prod[idx] = (prod[idx] + c * (p - m as u32)) % p;
            }
        }
        let d: Vec<u16> = prod[..self.k as usize].iter().map(|&c| c as u16).collect();
        self.pack_digits(&d)
    }

    pub fn pow(&self, a: Fel, mut e: u64) -> Fel {
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Fel) -> Result<Fel> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order() - 2))
    }

    pub fn star(&self, a: Fel) -> Fel {
        self.star[a as usize]
    }

    /// Multiplicative embedding of `0..p` (the prime subfield has the same
    /// codes in every `GF(p^k)`).
    pub fn from_prime(&self, c: u64) -> Fel {
        (c % self.p as u64) as Fel
    }

    pub fn is_square(&self, a: Fel) -> bool {
        if a == 0 || self.p == 2 {
            return true;
        }
        self.pow(a, (self.order() - 1) / 2) == self.one()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` divided by monic `m`, coefficients mod `p`.
fn poly_rem(a: &[u16], m: &[u16], p: u16) -> Vec<u16> {
    let p = p as u32;
    let mut r: Vec<u32> = a.iter().map(|&c| c as u32).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let top = r.len() - 1;
        if lead != 0 {
            for (j, &mc) in m.iter().enumerate().take(dm) {
                let idx = top - dm + j;
                r[idx] = (r[idx] + lead * (p - mc as u32)) % p;
            }
        }
        r.pop();
    }
    while r.len() > 1 && *r.last().unwrap() == 0 {
        r.pop();
    }
    r.iter().map(|&c| c as u16).collect()
}

/// Trial division by every monic polynomial of degree 1 ..= deg/2.
fn poly_is_irreducible(m: &[u16], p: u16) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for c in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut c = c;
            for _ in 0..d {
                div.push((c % p as u64) as u16);
                c /= p as u64;
            }
            div.push(1);
            let r = poly_rem(m, &div, p);
            if r.len() == 1 && r[0] == 0 {
                return false;
            }
        }
    }
    true
}

fn default_modulus(p: u16, k: u32) -> Result<Vec<u16>> {
    for &(tp, tk, m) in DEFAULT_MODULI {
        if tp == p && tk == k {
            let m = m.to_vec();
            // trust nothing baked in: re-verify at load
            if !poly_is_irreducible(&m, p) {
                return Err(Error::ReducibleModulus { p: p as u64 });
            }
            return Ok(m);
        }
    }
    // lexicographically least monic irreducible of degree k
    let count = (p as u64).pow(k);
    for c in 0..count {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut c = c;
        for _ in 0..k {
            m.push((c % p as u64) as u16);
            c /= p as u64;
        }
        m.push(1);
        if poly_is_irreducible(&m, p) {
            return Ok(m);
        }
    }
    Err(Error::ReducibleModulus { p: p as u64 })
}

/// Wire format: `{"p":2,"k":2,"modulus":[1,1,1],"involution":"frobenius_half"}`.
#[derive(Serialize, Deserialize)]
struct FieldSpec {
    p: u64,
    k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    modulus: Option<Vec<u16>>,
    involution: Involution,
}

impl Serialize for InvolutiveField {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldSpec {
            p: self.p(),
            k: self.k,
            modulus: Some(self.modulus.clone()),
            involution: self.involution,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for InvolutiveField {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = FieldSpec::deserialize(d)?;
        InvolutiveField::new(spec.p, spec.k, spec.modulus, spec.involution)
            .map_err(|e| D::Error::custom(e.to_string()))
    }
}

/// An injective unital field homomorphism `GF(p^k) -> GF(p^l)` that commutes
/// with the two involutions.
///
/// The map is determined by a root `t` of the source modulus inside the
/// target: a code with base-`p` digits `c_0..c_{k-1}` is sent to
/// `sum c_i * t^i` evaluated in the target field. Addition of codes is
/// digit-wise, so any such evaluation is additive; it is multiplicative
/// exactly when `t` is a root of the source modulus. Among the roots that
/// also intertwine the involutions, the one with the least code is chosen,
/// which makes the embedding deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEmbedding {
    source: InvolutiveField,
    target: InvolutiveField,
    map: Vec<Fel>,
}

impl FieldEmbedding {
    pub fn new(source: &InvolutiveField, target: &InvolutiveField) -> Result<Self> {
        if source.p() != target.p() {
            return Err(Error::NoCompatibleEmbedding(format!(
                "characteristic {} does not match {}",
                source.p(),
                target.p()
            )));
        }
        if !target.k().is_multiple_of(source.k()) {
            return Err(Error::NoCompatibleEmbedding(format!(
                "GF({}^{}) is not a subfield of GF({}^{})",
                source.p(),
                source.k(),
                target.p(),
                target.k()
            )));
        }
        let p = target.p() as u32;
        'roots: for t in 0..target.order() as Fel {
            // t must be a root of the source modulus, evaluated in the target.
            let mut val = target.zero();
            let mut power = target.one();
            for &c in source.modulus() {
                val = target.add(val, target.mul(target.from_prime(c as u64), power));
                power = target.mul(power, t);
            }
            if val != target.zero() {
                continue;
            }
            let mut map = Vec::with_capacity(source.order() as usize);
            for a in source.elements() {
                let mut img = target.zero();
                let mut power = target.one();
                let mut digits = a as u32;
                while digits > 0 {
                    let d = (digits % p) as u64;
                    img = target.add(img, target.mul(target.from_prime(d), power));
                    power = target.mul(power, t);
                    digits /= p;
                }
                map.push(img);
            }
            for a in source.elements() {
                if map[source.star(a) as usize] != target.star(map[a as usize]) {
                    continue 'roots;
                }
            }
            debug_assert_eq!(map[source.one() as usize], target.one());
            return Ok(Self {
                source: source.clone(),
                target: target.clone(),
                map,
            });
        }
        Err(Error::NoCompatibleEmbedding(format!(
            "no embedding of GF({}^{}) into GF({}^{}) commutes with the involutions",
            source.p(),
            source.k(),
            target.p(),
            target.k()
        )))
    }

    pub fn source(&self) -> &InvolutiveField {
        &self.source
    }
    pub fn target(&self) -> &InvolutiveField {
        &self.target
    }

    pub fn apply(&self, a: Fel) -> Fel {
        self.map[a as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.map.iter().enumerate().all(|(i, &v)| i as Fel == v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64, k: u32, inv: Involution) -> InvolutiveField {
        InvolutiveField::new(p, k, None, inv).unwrap()
    }

    #[test]
    fn gf4_arithmetic_and_frobenius() {
        let f = gf(2, 2, Involution::FrobeniusHalf);
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let w = 2; // class of x
        assert_eq!(f.mul(w, w), 3, "x^2 = x + 1 mod x^2+x+1");
        assert_eq!(f.star(w), 3, "x* = x^2 = x + 1");
        assert_eq!(f.star(3), w);
        assert_eq!(f.inv(w).unwrap(), 3);
    }

    #[test]
    fn gf3_identity_involution() {
        let f = gf(3, 1, Involution::Identity);
        assert_eq!(f.inv(2).unwrap(), 2);
        assert_eq!(f.star(2), 2);
        assert_eq!(f.neg(1), 2);
    }

    #[test]
    fn gf9_conjugation_negates_i() {
        let f = gf(3, 2, Involution::FrobeniusHalf);
        assert_eq!(f.modulus(), &[1, 0, 1]);
        let i = 3; // class of x, a square root of -1
        assert_eq!(f.mul(i, i), f.neg(f.one()));
        assert_eq!(f.star(i), f.neg(i), "i* = i^3 = -i");
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            InvolutiveField::new(4, 1, None, Involution::Identity),
            Err(Error::NonPrime(4))
        );
        assert_eq!(
            InvolutiveField::new(2, 3, None, Involution::FrobeniusHalf),
            Err(Error::OddDegreeFrobenius(3))
        );
        assert!(matches!(
            InvolutiveField::new(2, 17, None, Involution::Identity),
            Err(Error::FieldTooLarge(_))
        ));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert_eq!(
            InvolutiveField::new(2, 2, Some(vec![1, 0, 1]), Involution::Identity),
            Err(Error::ReducibleModulus { p: 2 })
        );
        assert!(matches!(
            InvolutiveField::new(2, 2, Some(vec![1, 1]), Involution::Identity),
            Err(Error::InvalidInput(_))
        ));
    }

    /// Every default modulus is also the lexicographically least monic
    /// irreducible of its degree, so omitted moduli are reproducible.
    #[test]
    fn default_table_is_lex_least() {
        for &(p, k, want) in DEFAULT_MODULI {
            let count = (p as u64).pow(k);
            let mut found = None;
            for c in 0..count {
                let mut m = Vec::new();
                let mut c = c;
                for _ in 0..k {
                    m.push((c % p as u64) as u16);
                    c /= p as u64;
                }
                m.push(1);
                if poly_is_irreducible(&m, p) {
                    found = Some(m);
                    break;
                }
            }
            assert_eq!(found.as_deref(), Some(want), "GF({p}^{k})");
        }
    }

    fn law_fields() -> Vec<InvolutiveField> {
        vec![
            gf(2, 1, Involution::Identity),
            gf(3, 1, Involution::Identity),
            gf(2, 2, Involution::FrobeniusHalf),
            gf(2, 2, Involution::Identity),
            gf(2, 3, Involution::Identity),
            gf(3, 2, Involution::FrobeniusHalf),
            gf(2, 4, Involution::FrobeniusHalf),
            gf(5, 2, Involution::FrobeniusHalf),
            gf(3, 3, Involution::Identity),
            gf(7, 2, Involution::FrobeniusHalf),
        ]
    }

    /// Field and involution laws, exhaustive over every element pair.
    #[test]
    fn involution_laws_exhaustive() {
        for f in law_fields() {
            for a in f.elements() {
                assert_eq!(f.star(f.star(a)), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.star(f.add(a, b)), f.add(f.star(a), f.star(b)));
                    assert_eq!(f.star(f.mul(a, b)), f.mul(f.star(a), f.star(b)));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn mul_is_associative_and_distributive_small() {
        for f in [gf(2, 2, Involution::FrobeniusHalf), gf(3, 2, Involution::FrobeniusHalf)] {
            for a in f.elements() {
                for b in f.elements() {
                    for c in f.elements() {
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    /// The half Frobenius fixes exactly the subfield of order p^(k/2).
    #[test]
    fn frobenius_fixed_field_size() {
        for (p, k) in [(2u64, 2u32), (3, 2), (2, 4), (5, 2), (7, 2)] {
            let f = gf(p, k, Involution::FrobeniusHalf);
            let fixed = f.elements().filter(|&a| f.star(a) == a).count() as u64;
            assert_eq!(fixed, p.pow(k / 2), "GF({p}^{k})");
        }
    }

    #[test]
    fn json_round_trip() {
        let f = gf(2, 2, Involution::FrobeniusHalf);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"p":2,"k":2,"modulus":[1,1,1],"involution":"frobenius_half"}"#
        );
        let g: InvolutiveField = serde_json::from_str(&s).unwrap();
        assert_eq!(f, g);
        // malformed spec is rejected on deserialize
        let bad = r#"{"p":4,"k":1,"involution":"identity"}"#;
        assert!(serde_json::from_str::<InvolutiveField>(bad).is_err());
    }

    fn assert_embedding_laws(e: &FieldEmbedding) {
        let (f, k) = (e.source(), e.target());
        assert_eq!(e.apply(f.one()), k.one());
        for a in f.elements() {
            assert_eq!(e.apply(f.star(a)), k.star(e.apply(a)));
            for b in f.elements() {
                assert_eq!(e.apply(f.add(a, b)), k.add(e.apply(a), e.apply(b)));
                assert_eq!(e.apply(f.mul(a, b)), k.mul(e.apply(a), e.apply(b)));
            }
        }
        // injective
        let images: std::collections::BTreeSet<Fel> = f.elements().map(|a| e.apply(a)).collect();
        assert_eq!(images.len() as u64, f.order());
    }

    #[test]
    fn prime_field_embeds_into_extension() {
        // GF(2) -> GF(4): prime subfield keeps its codes.
        let e = FieldEmbedding::new(
            &gf(2, 1, Involution::Identity),
            &gf(2, 2, Involution::FrobeniusHalf),
        )
        .unwrap();
        assert_eq!(e.apply(0), 0);
        assert_eq!(e.apply(1), 1);
        assert_embedding_laws(&e);

        // GF(3) -> GF(9): likewise, and the half Frobenius x -> x^3 fixes it.
        let e = FieldEmbedding::new(
            &gf(3, 1, Involution::Identity),
            &gf(3, 2, Involution::FrobeniusHalf),
        )
        .unwrap();
        for a in 0..3 {
            assert_eq!(e.apply(a), a);
        }
        assert_embedding_laws(&e);
    }

    #[test]
    fn quadratic_tower_embedding() {
        // GF(16)'s half Frobenius x -> x^4 fixes the embedded GF(4)
        // pointwise, so GF(4) with the *identity* involution embeds.
        let e = FieldEmbedding::new(
            &gf(2, 2, Involution::Identity),
            &gf(2, 4, Involution::FrobeniusHalf),
        )
        .unwrap();
        assert_embedding_laws(&e);
        let k = e.target();
        let t = e.apply(2); // image of the GF(4) generator: a root of x^2+x+1
        assert_eq!(k.add(k.add(k.mul(t, t), t), k.one()), k.zero());
        assert!(!e.is_identity());

        // GF(64)'s half Frobenius x -> x^8 restricts to x -> x^2 on GF(4)
        // (degree ratio 3 is odd), so the Frobenius pair is compatible there.
        let e = FieldEmbedding::new(
            &gf(2, 2, Involution::FrobeniusHalf),
            &gf(2, 6, Involution::FrobeniusHalf),
        )
        .unwrap();
        assert_embedding_laws(&e);
    }

    #[test]
    fn identity_embedding_is_identity_map() {
        let f = gf(2, 2, Involution::FrobeniusHalf);
        let e = FieldEmbedding::new(&f, &f).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn incompatible_embeddings_rejected() {
        // different characteristic
        assert!(matches!(
            FieldEmbedding::new(
                &gf(2, 1, Involution::Identity),
                &gf(3, 2, Involution::FrobeniusHalf)
            ),
            Err(Error::NoCompatibleEmbedding(_))
        ));
        // degree does not divide
        assert!(matches!(
            FieldEmbedding::new(
                &gf(2, 2, Involution::FrobeniusHalf),
                &gf(2, 3, Involution::Identity)
            ),
            Err(Error::NoCompatibleEmbedding(_))
        ));
        // involutions cannot be intertwined: GF(4) with Frobenius into GF(4)
        // with the identity has no equivariant field map.
        assert!(matches!(
            FieldEmbedding::new(
                &gf(2, 2, Involution::FrobeniusHalf),
                &gf(2, 2, Involution::Identity)
            ),
            Err(Error::NoCompatibleEmbedding(_))
        ));
        // GF(16)'s half Frobenius x -> x^4 is the identity on GF(4), never
        // GF(4)'s half Frobenius: even degree ratios are incompatible.
        assert!(matches!(
            FieldEmbedding::new(
                &gf(2, 2, Involution::FrobeniusHalf),
                &gf(2, 4, Involution::FrobeniusHalf)
            ),
            Err(Error::NoCompatibleEmbedding(_))
        ));
    }
}
