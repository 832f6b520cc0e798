//! Finite bounded lattices carrying an extra unary operation `x ↦ x'`
//! ("prime"), the common shape of subspace lattices with orthogonal
//! complement and projection lattices of rings.
//!
//! The order is stored as bitset rows, joins and meets as full `m x m`
//! index tables, and prime as a plain table. Prime is *not* assumed to
//! satisfy anything at construction time: the whole point is to check
//! laws (Galois, polarity, involution, ortho) and report witnesses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cap on the number of lattice elements.
pub const LATTICE_SIZE_CAP: usize = 20_000;

const WORD: usize = 64;

fn words_for(m: usize) -> usize {
    m.div_ceil(WORD)
}

fn get_bit(row: &[u64], j: usize) -> bool {
    row[j / WORD] >> (j % WORD) & 1 == 1
}

fn set_bit(row: &mut [u64], j: usize) {
    row[j / WORD] |= 1 << (j % WORD);
}

fn first_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .position(|&w| w != 0)
        .map(|i| i * WORD + row[i].trailing_zeros() as usize)
}

fn is_subset(sub: &[u64], sup: &[u64]) -> bool {
    sub.iter().zip(sup).all(|(a, b)| a & !b == 0)
}

#[derive(Clone, PartialEq, Eq)]
pub struct GaloisLattice {
    labels: Vec<String>,
    m: usize,
    words: usize,
    /// Row `i`: bit `j` set iff `i <= j`.
    up: Vec<u64>,
    /// Row `i`: bit `j` set iff `j <= i`.
    down: Vec<u64>,
    join: Vec<u32>,
    meet: Vec<u32>,
    prime: Vec<u32>,
    zero: u32,
    one: u32,
}

impl std::fmt::Debug for GaloisLattice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GaloisLattice")
            .field("size", &self.m)
            .field("labels", &self.labels)
            .finish_non_exhaustive()
    }
}

impl GaloisLattice {
    /// Build from an order predicate and a prime table, validating that
    /// `leq` is a partial order in which every pair has a least upper and
    /// greatest lower bound.
    pub fn from_leq<F>(labels: Vec<String>, prime: Vec<u32>, leq: F) -> Result<GaloisLattice>
    where
        F: Fn(usize, usize) -> bool,
    {
        let m = labels.len();
        if m == 0 {
            return Err(Error::NotALattice("a bounded lattice is nonempty".into()));
        }
        if m > LATTICE_SIZE_CAP {
            return Err(Error::SizeCap { got: m as u64, cap: LATTICE_SIZE_CAP as u64 });
        }
        if prime.len() != m || prime.iter().any(|&p| p as usize >= m) {
            return Err(Error::InvalidInput("prime table must be total".into()));
        }
        let words = words_for(m);
        let mut up = vec![0u64; m * words];
        let mut down = vec![0u64; m * words];
        for i in 0..m {
            for j in 0..m {
                if leq(i, j) {
                    set_bit(&mut up[i * words..(i + 1) * words], j);
                    set_bit(&mut down[j * words..(j + 1) * words], i);
                }
            }
        }
        Self::from_bitrows(labels, prime, up, down)
    }

    /// Build from a cover list: `leq` is the reflexive-transitive closure.
    pub fn from_covers(
        labels: Vec<String>,
        prime: Vec<u32>,
        covers: &[(u32, u32)],
    ) -> Result<GaloisLattice> {
        let m = labels.len();
        if m == 0 {
            return Err(Error::NotALattice("a bounded lattice is nonempty".into()));
        }
        if m > LATTICE_SIZE_CAP {
            return Err(Error::SizeCap { got: m as u64, cap: LATTICE_SIZE_CAP as u64 });
        }
        let words = words_for(m);
        let mut up = vec![0u64; m * words];
        for i in 0..m {
            set_bit(&mut up[i * words..(i + 1) * words], i);
        }
        for &(lo, hi) in covers {
            let (lo, hi) = (lo as usize, hi as usize);
            if lo >= m || hi >= m {
                return Err(Error::InvalidInput("cover index out of range".into()));
            }
            set_bit(&mut up[lo * words..(lo + 1) * words], hi);
        }
        // Warshall closure over the bitset rows
        for k in 0..m {
            for i in 0..m {
                if get_bit(&up[i * words..(i + 1) * words], k) {
                    for w in 0..words {
                        let v = up[k * words + w];
                        up[i * words + w] |= v;
                    }
                }
            }
        }
        let mut down = vec![0u64; m * words];
        for i in 0..m {
            for j in 0..m {
                if get_bit(&up[i * words..(i + 1) * words], j) {
                    set_bit(&mut down[j * words..(j + 1) * words], i);
                }
            }
        }
        Self::from_bitrows(labels, prime, up, down)
    }

    fn from_bitrows(
        labels: Vec<String>,
        prime: Vec<u32>,
        up: Vec<u64>,
        down: Vec<u64>,
    ) -> Result<GaloisLattice> {
        let m = labels.len();
        let words = words_for(m);
        if prime.len() != m || prime.iter().any(|&p| p as usize >= m) {
            return Err(Error::InvalidInput("prime table must be total".into()));
        }
        let row = |rows: &[u64], i: usize| rows[i * words..(i + 1) * words].to_vec();
        // order axioms
        for i in 0..m {
            if !get_bit(&up[i * words..], i) {
                return Err(Error::NotALattice(format!("leq not reflexive at {i}")));
            }
            for j in 0..m {
                if i != j && get_bit(&up[i * words..], j) && get_bit(&up[j * words..], i) {
                    return Err(Error::NotALattice(format!("leq not antisymmetric at {i},{j}")));
                }
            }
        }
        for i in 0..m {
            let ui = row(&up, i);
            for j in 0..m {
                if get_bit(&ui, j) && !is_subset(&up[j * words..(j + 1) * words], &ui) {
                    return Err(Error::NotALattice(format!("leq not transitive through {i},{j}")));
                }
            }
        }
        let full_popcount =
            |r: &[u64]| r.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        let zero = (0..m)
            .find(|&i| full_popcount(&up[i * words..(i + 1) * words]) == m)
            .ok_or_else(|| Error::NotALattice("no least element".into()))?;
        let one = (0..m)
            .find(|&i| full_popcount(&down[i * words..(i + 1) * words]) == m)
            .ok_or_else(|| Error::NotALattice("no greatest element".into()))?;

        // a linear extension: sort by size of down-set (strictly monotone
        // along <), so the least element of any up-set closed family is the
        // first one in this order
        let mut topo: Vec<usize> = (0..m).collect();
        let down_size: Vec<usize> =
            (0..m).map(|i| full_popcount(&down[i * words..(i + 1) * words])).collect();
        topo.sort_by_key(|&i| (down_size[i], i));
        let mut pos = vec![0usize; m];
        for (t, &i) in topo.iter().enumerate() {
            pos[i] = t;
        }
        // bitsets re-indexed into topo space
        let mut up_t = vec![0u64; m * words];
        let mut down_t = vec![0u64; m * words];
        for i in 0..m {
            for j in 0..m {
                if get_bit(&up[i * words..], j) {
                    set_bit(&mut up_t[i * words..(i + 1) * words], pos[j]);
                    set_bit(&mut down_t[j * words..(j + 1) * words], m - 1 - pos[i]);
                }
            }
        }
        let mut join = vec![0u32; m * m];
        let mut meet = vec![0u32; m * m];
        let mut ubuf = vec![0u64; words];
        for i in 0..m {
            for j in i..m {
                for w in 0..words {
                    ubuf[w] = up_t[i * words + w] & up_t[j * words + w];
                }
                let t = first_bit(&ubuf)
                    .ok_or_else(|| Error::NotALattice(format!("{i},{j} have no upper bound")))?;
                let cand = topo[t];
                if !is_subset(&ubuf, &up_t[cand * words..(cand + 1) * words]) {
                    return Err(Error::NotALattice(format!("{i},{j} have no least upper bound")));
                }
                join[i * m + j] = cand as u32;
                join[j * m + i] = cand as u32;

                for w in 0..words {
                    ubuf[w] = down_t[i * words + w] & down_t[j * words + w];
                }
                let t = first_bit(&ubuf)
                    .ok_or_else(|| Error::NotALattice(format!("{i},{j} have no lower bound")))?;
                let cand = topo[m - 1 - t];
                if !is_subset(&ubuf, &down_t[cand * words..(cand + 1) * words]) {
                    return Err(Error::NotALattice(format!(
                        "{i},{j} have no greatest lower bound"
                    )));
                }
                meet[i * m + j] = cand as u32;
                meet[j * m + i] = cand as u32;
            }
        }
        Ok(GaloisLattice {
            labels,
            m,
            words,
            up,
            down,
            join,
            meet,
            prime,
            zero: zero as u32,
            one: one as u32,
        })
    }

    pub fn size(&self) -> usize {
        self.m
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, x: u32) -> &str {
        &self.labels[x as usize]
    }
    pub fn find_label(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }
    pub fn zero(&self) -> u32 {
        self.zero
    }
    pub fn one(&self) -> u32 {
        self.one
    }
    pub fn leq(&self, x: u32, y: u32) -> bool {
        get_bit(&self.up[x as usize * self.words..], y as usize)
    }
    pub fn join(&self, x: u32, y: u32) -> u32 {
        self.join[x as usize * self.m + y as usize]
    }
    pub fn meet(&self, x: u32, y: u32) -> u32 {
        self.meet[x as usize * self.m + y as usize]
    }
    pub fn prime(&self, x: u32) -> u32 {
        self.prime[x as usize]
    }
    pub fn prime_table(&self) -> &[u32] {
        &self.prime
    }

    fn down_count(&self, x: u32) -> usize {
        self.down[x as usize * self.words..(x as usize + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    fn up_count(&self, x: u32) -> usize {
        self.up[x as usize * self.words..(x as usize + 1) * self.words]
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    /// Elements covering `zero`.
    pub fn atoms(&self) -> Vec<u32> {
        (0..self.m as u32).filter(|&x| self.down_count(x) == 2).collect()
    }

    /// Elements covered by `one`.
    pub fn coatoms(&self) -> Vec<u32> {
        (0..self.m as u32).filter(|&x| self.up_count(x) == 2).collect()
    }

    /// Every nonzero element has an atom below it.
    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.m as u32)
            .filter(|&x| x != self.zero)
            .all(|x| atoms.iter().any(|&a| self.leq(a, x)))
    }

    /// Cover pairs `(lo, hi)` with `lo` covered by `hi`, ascending.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for lo in 0..self.m {
            for hi in 0..self.m {
                if lo == hi || !get_bit(&self.up[lo * self.words..], hi) {
                    continue;
                }
                // interval [lo, hi] must be exactly {lo, hi}
                let between = (0..self.words)
                    .map(|w| {
                        (self.up[lo * self.words + w] & self.down[hi * self.words + w])
                            .count_ones() as usize
                    })
                    .sum::<usize>();
                if between == 2 {
                    out.push((lo as u32, hi as u32));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Longest chain length from `zero` to `x` (the lattice-theoretic
    /// dimension of `x` when the lattice is modular).
    pub fn height_of(&self, x: u32) -> usize {
        let mut order: Vec<u32> = (0..self.m as u32).collect();
        order.sort_by_key(|&i| self.down_count(i));
        let mut h = vec![0usize; self.m];
        for &i in &order {
            for &j in &order {
                if j != i && self.leq(j, i) {
                    h[i as usize] = h[i as usize].max(h[j as usize] + 1);
                }
            }
        }
        h[x as usize]
    }

    /// Height of the top element: the length of a maximal chain.
    pub fn height(&self) -> usize {
        self.height_of(self.one)
    }

    /// Induced lattice on a subset of elements that is closed under join,
    /// meet, and prime. Returns the sublattice together with the sorted
    /// parent indices (`result element i` = `parent element indices[i]`).
    pub fn sublattice(&self, subset: &[u32]) -> Result<(GaloisLattice, Vec<u32>)> {
        let mut indices: Vec<u32> = subset.to_vec();
        indices.sort_unstable();
        indices.dedup();
        let lookup = |x: u32| indices.binary_search(&x).ok();
        for &a in &indices {
            for &b in &indices {
                if lookup(self.join(a, b)).is_none() || lookup(self.meet(a, b)).is_none() {
                    return Err(Error::InvalidInput(
                        "subset not closed under join/meet".into(),
                    ));
                }
            }
            if lookup(self.prime(a)).is_none() {
                return Err(Error::InvalidInput("subset not closed under prime".into()));
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i as usize].clone()).collect();
        let prime = indices.iter().map(|&i| lookup(self.prime(i)).unwrap() as u32).collect();
        let sub = GaloisLattice::from_leq(labels, prime, |i, j| {
            self.leq(indices[i], indices[j])
        })?;
        Ok((sub, indices))
    }

    /// Least subset containing `generators` and `zero`, closed under join,
    /// meet, and prime, returned as a sublattice.
    pub fn galois_closure(&self, generators: &[u32]) -> Result<(GaloisLattice, Vec<u32>)> {
        for &g in generators {
            if g as usize >= self.m {
                return Err(Error::InvalidInput("generator index out of range".into()));
            }
        }
        let mut in_set = vec![false; self.m];
        let mut stack: Vec<u32> = Vec::new();
        let push = |x: u32, in_set: &mut Vec<bool>, stack: &mut Vec<u32>| {
            if !in_set[x as usize] {
                in_set[x as usize] = true;
                stack.push(x);
            }
        };
        push(self.zero, &mut in_set, &mut stack);
        for &g in generators {
            push(g, &mut in_set, &mut stack);
        }
        while let Some(x) = stack.pop() {
            push(self.prime(x), &mut in_set, &mut stack);
            let members: Vec<u32> =
                (0..self.m as u32).filter(|&y| in_set[y as usize]).collect();
            for y in members {
                push(self.join(x, y), &mut in_set, &mut stack);
                push(self.meet(x, y), &mut in_set, &mut stack);
            }
        }
        let subset: Vec<u32> = (0..self.m as u32).filter(|&x| in_set[x as usize]).collect();
        self.sublattice(&subset)
    }

    /// Componentwise product lattice; element `(x_0, .., x_r)` is encoded
    /// mixed-radix with the first factor varying fastest.
    pub fn product(factors: &[&GaloisLattice]) -> Result<GaloisLattice> {
        if factors.is_empty() {
            return Err(Error::InvalidInput("product needs at least one factor".into()));
        }
        let mut total: u64 = 1;
        for l in factors {
            total = total.saturating_mul(l.m as u64);
            if total > LATTICE_SIZE_CAP as u64 {
                return Err(Error::SizeCap { got: total, cap: LATTICE_SIZE_CAP as u64 });
            }
        }
        let m = total as usize;
        let decode = |mut idx: usize| -> Vec<u32> {
            factors
                .iter()
                .map(|l| {
                    let c = (idx % l.m) as u32;
                    idx /= l.m;
                    c
                })
                .collect()
        };
        let encode = |parts: &[u32]| -> u32 {
            let mut idx = 0usize;
            for (l, &c) in factors.iter().zip(parts).rev() {
                idx = idx * l.m + c as usize;
            }
            idx as u32
        };
        let mut labels = Vec::with_capacity(m);
        let mut prime = Vec::with_capacity(m);
        for idx in 0..m {
            let parts = decode(idx);
            let lab: Vec<&str> = parts
                .iter()
                .zip(factors)
                .map(|(&c, l)| l.label(c))
                .collect();
            labels.push(format!("({})", lab.join(",")));
            let p: Vec<u32> =
                parts.iter().zip(factors).map(|(&c, l)| l.prime(c)).collect();
            prime.push(encode(&p));
        }
        GaloisLattice::from_leq(labels, prime, |i, j| {
            decode(i)
                .iter()
                .zip(decode(j).iter())
                .zip(factors)
                .all(|((&a, &b), l)| l.leq(a, b))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    Modular,
    Arguesian,
    Galois,
    Polarity,
    Involution,
    Ortho,
    Complemented,
}

impl Law {
    pub const ALL: [Law; 7] = [
        Law::Modular,
        Law::Arguesian,
        Law::Galois,
        Law::Polarity,
        Law::Involution,
        Law::Ortho,
        Law::Complemented,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::Modular => "modular",
            Law::Arguesian => "arguesian",
            Law::Galois => "galois",
            Law::Polarity => "polarity",
            Law::Involution => "involution",
            Law::Ortho => "ortho",
            Law::Complemented => "complemented",
        }
    }

    pub fn from_name(name: &str) -> Option<Law> {
        Law::ALL.iter().copied().find(|l| l.name() == name)
    }
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Exhaustive,
    Sampled { seed: u64, count: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: Law,
    pub pass: bool,
    /// Element tuple violating the law, when one was found.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<u32>>,
    pub method: CheckMethod,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct LawCheckConfig {
    /// Arguesian is exhausted over all `m^6` tuples up to this budget.
    pub arguesian_tuple_cap: u64,
    /// Sample count used beyond the exhaustive budget.
    pub sample_count: u64,
    pub seed: u64,
}

impl Default for LawCheckConfig {
    fn default() -> Self {
        LawCheckConfig { arguesian_tuple_cap: 1_000_000_000, sample_count: 1_000_000, seed: 1729 }
    }
}

impl GaloisLattice {
    pub fn check_law(&self, law: Law, config: &LawCheckConfig) -> LawReport {
        let (pass, witness, method) = match law {
            Law::Modular => self.check_modular(),
            Law::Arguesian => self.check_arguesian(config),
            Law::Galois => self.check_galois(),
            Law::Polarity => self.check_polarity(),
            Law::Involution => {
                self.simple_scan(|l, x| l.prime(l.prime(x)) == x)
            }
            Law::Ortho => self.simple_scan(|l, x| l.meet(x, l.prime(x)) == l.zero),
            Law::Complemented => self.simple_scan(|l, a| {
                (0..l.m as u32).any(|b| l.join(a, b) == l.one && l.meet(a, b) == l.zero)
            }),
        };
        LawReport { law, pass, witness, method }
    }

    pub fn check_laws(&self, laws: &[Law], config: &LawCheckConfig) -> Vec<LawReport> {
        laws.iter().map(|&law| self.check_law(law, config)).collect()
    }

    fn simple_scan<F>(&self, ok: F) -> (bool, Option<Vec<u32>>, CheckMethod)
    where
        F: Fn(&GaloisLattice, u32) -> bool,
    {
        for x in 0..self.m as u32 {
            if !ok(self, x) {
                return (false, Some(vec![x]), CheckMethod::Exhaustive);
            }
        }
        (true, None, CheckMethod::Exhaustive)
    }

    /// `a >= c` implies `a(b+c) = ab + c`, all triples.
    fn check_modular(&self) -> (bool, Option<Vec<u32>>, CheckMethod) {
        for a in 0..self.m as u32 {
            for c in 0..self.m as u32 {
                if !self.leq(c, a) {
                    continue;
                }
                for b in 0..self.m as u32 {
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), c) {
                        return (false, Some(vec![a, b, c]), CheckMethod::Exhaustive);
                    }
                }
            }
        }
        (true, None, CheckMethod::Exhaustive)
    }

    /// Six-variable Arguesian inequality
    /// `(a0+b0)(a1+b1)(a2+b2) <= a0(a1+c) + b0(b1+c)` where
    /// `c = c2(c0+c1)` and `ci = (aj+ak)(bj+bk)` for `{i,j,k} = {0,1,2}`.
    fn arguesian_tuple(&self, t: [u32; 6]) -> bool {
        let [a0, a1, a2, b0, b1, b2] = t;
        let lhs = self.meet(
            self.meet(self.join(a0, b0), self.join(a1, b1)),
            self.join(a2, b2),
        );
        let c0 = self.meet(self.join(a1, a2), self.join(b1, b2));
        let c1 = self.meet(self.join(a0, a2), self.join(b0, b2));
        let c2 = self.meet(self.join(a0, a1), self.join(b0, b1));
        let c = self.meet(c2, self.join(c0, c1));
        let rhs = self.join(self.meet(a0, self.join(a1, c)), self.meet(b0, self.join(b1, c)));
        self.leq(lhs, rhs)
    }

    fn check_arguesian(&self, config: &LawCheckConfig) -> (bool, Option<Vec<u32>>, CheckMethod) {
        let m = self.m as u64;
        let tuples = m.saturating_pow(6);
        if tuples <= config.arguesian_tuple_cap {
            let mut t = [0u32; 6];
            loop {
                if !self.arguesian_tuple(t) {
                    return (false, Some(t.to_vec()), CheckMethod::Exhaustive);
                }
                // odometer increment
                let mut k = 0;
                loop {
                    if k == 6 {
                        return (true, None, CheckMethod::Exhaustive);
                    }
                    t[k] += 1;
                    if (t[k] as u64) < m {
                        break;
                    }
                    t[k] = 0;
                    k += 1;
                }
            }
        }
        use rand::Rng;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(config.seed);
        let method = CheckMethod::Sampled { seed: config.seed, count: config.sample_count };
        for _ in 0..config.sample_count {
            let t = [(); 6].map(|_| rng.gen_range(0..self.m) as u32);
            if !self.arguesian_tuple(t) {
                return (false, Some(t.to_vec()), method);
            }
        }
        (true, None, method)
    }

    /// `x <= y'` implies `y <= x'`, and `1' = 0`.
    fn check_galois(&self) -> (bool, Option<Vec<u32>>, CheckMethod) {
        if self.prime(self.one) != self.zero {
            return (false, Some(vec![self.one]), CheckMethod::Exhaustive);
        }
        for x in 0..self.m as u32 {
            for y in 0..self.m as u32 {
                if self.leq(x, self.prime(y)) && !self.leq(y, self.prime(x)) {
                    return (false, Some(vec![x, y]), CheckMethod::Exhaustive);
                }
            }
        }
        (true, None, CheckMethod::Exhaustive)
    }

    /// `p'` is a coatom for every atom `p`.
    fn check_polarity(&self) -> (bool, Option<Vec<u32>>, CheckMethod) {
        let coatoms = self.coatoms();
        for p in self.atoms() {
            if !coatoms.contains(&self.prime(p)) {
                return (false, Some(vec![p]), CheckMethod::Exhaustive);
            }
        }
        (true, None, CheckMethod::Exhaustive)
    }

    /// Finite-height filter closed under prime. Every element of a finite
    /// lattice has finite height, so this returns the whole lattice; the
    /// precondition (modular complemented Galois polarity lattice) is what
    /// makes the operation meaningful and is enforced.
    pub fn finite_part(&self) -> Result<GaloisLattice> {
        let config = LawCheckConfig::default();
        for law in [Law::Modular, Law::Complemented, Law::Galois, Law::Polarity] {
            let report = self.check_law(law, &config);
            if !report.pass {
                return Err(Error::NotPolarityCML(format!(
                    "law {} fails with witness {:?}",
                    law,
                    report.witness.unwrap_or_default()
                )));
            }
        }
        let finite: Vec<u32> = (0..self.m as u32).collect();
        let with_primes: Vec<u32> =
            finite.iter().copied().chain(finite.iter().map(|&u| self.prime(u))).collect();
        let (sub, _) = self.sublattice(&with_primes)?;
        Ok(sub)
    }
}

/// Wire format for lattices: labels, cover pairs, prime table, bounds.
#[derive(Serialize, Deserialize)]
struct LatticeSpec {
    elements: Vec<String>,
    covers: Vec<(u32, u32)>,
    prime: Vec<u32>,
    zero: u32,
    one: u32,
}

impl Serialize for GaloisLattice {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LatticeSpec {
            elements: self.labels.clone(),
            covers: self.covers(),
            prime: self.prime.clone(),
            zero: self.zero,
            one: self.one,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaloisLattice {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let spec = LatticeSpec::deserialize(d)?;
        let lat = GaloisLattice::from_covers(spec.elements, spec.prime, &spec.covers)
            .map_err(|e| D::Error::custom(e.to_string()))?;
        if lat.zero() != spec.zero || lat.one() != spec.one {
            return Err(D::Error::custom("zero/one indices disagree with the order"));
        }
        Ok(lat)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("e{i}")).collect()
    }

    /// Diamond M3 with prime fixing each atom and swapping the bounds
    /// (the unary operation the symplectic GF(2)-plane induces).
    pub(crate) fn m3() -> GaloisLattice {
        let leq = |i: usize, j: usize| i == j || i == 0 || j == 4;
        GaloisLattice::from_leq(labels(5), vec![4, 1, 2, 3, 0], leq).unwrap()
    }

    /// Pentagon N5: 0 < a < c < 1 and 0 < b < 1.
    pub(crate) fn n5() -> GaloisLattice {
        // indices: 0=0, 1=a, 2=c, 3=b, 4=1
        let covers = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)];
        GaloisLattice::from_covers(labels(5), vec![4, 3, 3, 2, 0], &covers).unwrap()
    }

    /// Four-element modular complemented lattice 0 < p,q < 1 with
    /// x' = 0 for x != 0 and 0' = 1: Galois holds, polarity fails.
    pub(crate) fn galois_not_polarity() -> GaloisLattice {
        let leq = |i: usize, j: usize| i == j || i == 0 || j == 3;
        GaloisLattice::from_leq(labels(4), vec![3, 0, 0, 0], leq).unwrap()
    }

    pub(crate) fn chain(n: usize) -> GaloisLattice {
        let prime = (0..n as u32).rev().collect();
        GaloisLattice::from_leq(labels(n), prime, |i, j| i <= j).unwrap()
    }

    #[test]
    fn tables_of_m3() {
        let l = m3();
        assert_eq!(l.zero(), 0);
        assert_eq!(l.one(), 4);
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 2), 0);
        assert_eq!(l.join(1, 1), 1);
        assert_eq!(l.atoms(), vec![1, 2, 3]);
        assert_eq!(l.coatoms(), vec![1, 2, 3]);
        assert_eq!(l.height(), 2);
        assert!(l.is_atomic());
        assert_eq!(
            l.covers(),
            vec![(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
        );
    }

    #[test]
    fn m3_passes_modular_arguesian_laws() {
        let l = m3();
        let config = LawCheckConfig::default();
        for law in [Law::Modular, Law::Arguesian, Law::Involution, Law::Complemented] {
            let r = l.check_law(law, &config);
            assert!(r.pass, "{law} failed with witness {:?}", r.witness);
            assert_eq!(r.method, CheckMethod::Exhaustive);
        }
    }

    #[test]
    fn n5_fails_modular_with_witness() {
        let l = n5();
        let r = l.check_law(Law::Modular, &LawCheckConfig::default());
        assert!(!r.pass);
        let w = r.witness.unwrap();
        let (a, b, c) = (w[0], w[1], w[2]);
        assert!(l.leq(c, a));
        assert_ne!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), c));
        // arguesian must also fail (it implies modular)
        assert!(!l.check_law(Law::Arguesian, &LawCheckConfig::default()).pass);
    }

    #[test]
    fn galois_without_polarity_example() {
        let l = galois_not_polarity();
        let config = LawCheckConfig::default();
        assert!(l.check_law(Law::Modular, &config).pass);
        assert!(l.check_law(Law::Complemented, &config).pass);
        assert!(l.check_law(Law::Galois, &config).pass);
        let pol = l.check_law(Law::Polarity, &config);
        assert!(!pol.pass, "atom' = 0 is not a coatom");
        assert!(matches!(l.finite_part(), Err(Error::NotPolarityCML(_))));
    }

    #[test]
    fn galois_law_requires_top_mapping_to_bottom() {
        // identity prime on a 2-chain: 1' = 1 != 0
        let l = GaloisLattice::from_leq(labels(2), vec![0, 1], |i, j| i <= j).unwrap();
        let r = l.check_law(Law::Galois, &LawCheckConfig::default());
        assert!(!r.pass);
        assert_eq!(r.witness, Some(vec![1]));
    }

    #[test]
    fn ortho_law_on_boolean_square() {
        // 2x2 Boolean lattice via product of 2-chains
        let two = chain(2);
        let l = GaloisLattice::product(&[&two, &two]).unwrap();
        assert_eq!(l.size(), 4);
        let config = LawCheckConfig::default();
        for law in Law::ALL {
            assert!(l.check_law(law, &config).pass, "{law} should pass on 2^2");
        }
    }

    #[test]
    fn sampled_arguesian_records_seed() {
        let l = m3();
        let config = LawCheckConfig { arguesian_tuple_cap: 10, sample_count: 500, seed: 42 };
        let r = l.check_law(Law::Arguesian, &config);
        assert!(r.pass);
        assert_eq!(r.method, CheckMethod::Sampled { seed: 42, count: 500 });
    }

    #[test]
    fn from_covers_matches_from_leq() {
        let via_covers = n5();
        let leq_pairs: Vec<(usize, usize)> =
            vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 4), (2, 4), (3, 4)];
        let via_leq = GaloisLattice::from_leq(labels(5), vec![4, 3, 3, 2, 0], |i, j| {
            i == j || leq_pairs.contains(&(i, j))
        })
        .unwrap();
        assert_eq!(via_covers, via_leq);
    }

    #[test]
    fn rejects_non_lattices() {
        // two maximal elements: no join of the two atoms
        let err = GaloisLattice::from_leq(labels(3), vec![0, 1, 2], |i, j| {
            i == j || (i == 0 && j > 0)
        })
        .unwrap_err();
        assert!(matches!(err, Error::NotALattice(_)));
        // cyclic covers
        let err =
            GaloisLattice::from_covers(labels(2), vec![0, 1], &[(0, 1), (1, 0)]).unwrap_err();
        assert!(matches!(err, Error::NotALattice(_)));
        // 6-element "bowtie": pairs with two minimal upper bounds
        let err = GaloisLattice::from_leq(labels(6), vec![0; 6], |i, j| {
            i == j
                || (i == 0 && j != 0)
                || (j == 5 && i != 5)
                || ((i == 1 || i == 2) && (j == 3 || j == 4))
        })
        .unwrap_err();
        assert!(matches!(err, Error::NotALattice(_)));
    }

    #[test]
    fn product_and_projection_structure() {
        let l = GaloisLattice::product(&[&m3(), &chain(2)]).unwrap();
        assert_eq!(l.size(), 10);
        assert_eq!(l.zero(), 0);
        assert_eq!(l.one(), 9);
        // componentwise join: (a,0) + (b,1) = (1, 1)
        let a0 = 1; // (a, 0)
        let b1 = 5 + 2; // (b, 1)
        assert_eq!(l.join(a0, b1), 5 + 4);
        assert!(l.check_law(Law::Modular, &LawCheckConfig::default()).pass);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let l = m3();
        let (c1, idx1) = l.galois_closure(&[1]).unwrap();
        // atom 1, its prime 1, zero, and 1+1=1 ... closure = {0, 1, 1'=1, 1}up
        assert!(idx1.contains(&0) && idx1.contains(&1));
        let (c2, idx2) = l.galois_closure(&idx1).unwrap();
        assert_eq!(idx1, idx2, "closure is idempotent");
        assert_eq!(c1, c2);
        let (_, idx3) = l.galois_closure(&[1, 2]).unwrap();
        assert!(idx1.iter().all(|i| idx3.contains(i)), "closure is monotone");
    }

    #[test]
    fn sublattice_requires_closure() {
        let l = m3();
        let err = l.sublattice(&[1, 2]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
        let (sub, idx) = l.sublattice(&[0, 1, 4]).unwrap();
        assert_eq!(sub.size(), 3);
        assert_eq!(idx, vec![0, 1, 4]);
    }

    #[test]
    fn finite_part_of_boolean_square_is_itself() {
        let two = chain(2);
        let l = GaloisLattice::product(&[&two, &two]).unwrap();
        let f = l.finite_part().unwrap();
        assert_eq!(f.size(), l.size());
        assert_eq!(f, l);
    }

    #[test]
    fn lattice_json_round_trip() {
        let l = m3();
        let txt = serde_json::to_string(&l).unwrap();
        let back: GaloisLattice = serde_json::from_str(&txt).unwrap();
        assert_eq!(back, l);
        assert!(txt.contains("\"covers\""));
    }

    #[test]
    fn one_element_lattice() {
        let l = GaloisLattice::from_leq(vec!["*".into()], vec![0], |_, _| true).unwrap();
        assert_eq!(l.zero(), l.one());
        assert_eq!(l.height(), 0);
        let config = LawCheckConfig::default();
        for law in Law::ALL {
            assert!(l.check_law(law, &config).pass);
        }
    }
}
