//! Finite commutative rings `Z/n` and finite products of them.
//!
//! Elements are canonical indices `0..size`. For a product `Z/n1 x Z/n2 x ...`
//! the index of a tuple `(x1, x2, ...)` is its mixed-radix value with the first
//! component most significant, so `Z/n` alone indexes residues directly.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Index of a ring element.
pub type Elem = u32;

/// Default upper bound on the number of ring elements accepted by [`make_ring`].
pub const DEFAULT_SIZE_BOUND: u64 = 4096;

// Operation tables are materialised up to this size; larger product rings use
// componentwise arithmetic.
const TABLE_LIMIT: u32 = 256;

/// A finite commutative ring. Cheap to clone; immutable after construction.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

struct RingData {
    spec: String,
    moduli: Vec<u32>,
    size: u32,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    inv: Vec<Option<Elem>>,
    decomposition: Option<LocalDecomposition>,
}

/// Decomposition of a ring into local factors `R = R_1 x ... x R_q`.
#[derive(Clone)]
pub struct LocalDecomposition {
    factors: Vec<FiniteRing>,
    idempotents: Vec<Elem>,
    // project[x * q + j] is the j-th component of x.
    project: Vec<Elem>,
    // Indexed by the mixed-radix value of the component tuple.
    lift: Vec<Elem>,
}

/// Parses a ring spec with the default size bound.
pub fn make_ring(spec: &str) -> Result<FiniteRing> {
    make_ring_bounded(spec, DEFAULT_SIZE_BOUND)
}

/// Parses `Z/n` or `Z/n1 x Z/n2 x ...`, rejecting rings with more than `bound` elements.
pub fn make_ring_bounded(spec: &str, bound: u64) -> Result<FiniteRing> {
    let moduli = parse_spec(spec)?;
    let mut size: u64 = 1;
    for &n in &moduli {
        size = size.saturating_mul(n);
    }
    if size > bound {
        return Err(Error::RingTooLarge { size, bound });
    }
    let moduli: Vec<u32> = moduli.into_iter().map(|n| n as u32).collect();
    Ok(FiniteRing::from_moduli(moduli))
}

fn parse_spec(spec: &str) -> Result<Vec<u64>> {
    let bad = || Error::RingSpec(spec.to_string());
    let mut moduli = Vec::new();
    for part in spec.split('x') {
        let part = part.trim();
        let digits = part.strip_prefix("Z/").ok_or_else(bad)?.trim();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u64 = digits.parse().map_err(|_| bad())?;
        if n < 2 {
            return Err(Error::ModulusTooSmall(n));
        }
        moduli.push(n);
    }
    if moduli.is_empty() {
        return Err(bad());
    }
    Ok(moduli)
}

fn spec_of(moduli: &[u32]) -> String {
    moduli
        .iter()
        .map(|n| format!("Z/{n}"))
        .collect::<Vec<_>>()
        .join(" x ")
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inverse(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i64, n as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(n as i64) as u64)
}

fn is_prime_power(n: u32) -> bool {
    let mut p = 2;
    let mut m = n;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            return m == 1;
        }
        p += 1;
    }
    true
}

impl FiniteRing {
    fn from_moduli(moduli: Vec<u32>) -> FiniteRing {
        let size: u32 = moduli.iter().product();
        let spec = spec_of(&moduli);
        let mut data = RingData {
            spec,
            moduli,
            size,
            add: Vec::new(),
            mul: Vec::new(),
            neg: Vec::new(),
            inv: Vec::new(),
            decomposition: None,
        };
        data.neg = (0..size).map(|x| data.neg_slow(x)).collect();
        data.inv = (0..size).map(|x| data.inv_slow(x)).collect();
        if data.moduli.len() > 1 && size <= TABLE_LIMIT {
            let mut add = Vec::with_capacity((size * size) as usize);
            let mut mul = Vec::with_capacity((size * size) as usize);
            for a in 0..size {
                for b in 0..size {
                    add.push(data.add_slow(a, b));
                    mul.push(data.mul_slow(a, b));
                }
            }
            data.add = add;
            data.mul = mul;
        }
        let ring = FiniteRing(Arc::new(data));
        if ring.is_local() {
            return ring;
        }
        let decomposition = LocalDecomposition::by_idempotents(&ring);
        let mut data = Arc::try_unwrap(ring.0).ok().expect("fresh ring is uniquely owned");
        data.decomposition = Some(decomposition);
        FiniteRing(Arc::new(data))
    }

    /// Textual descriptor, e.g. `Z/2 x Z/3`. Also the serialised form.
    pub fn spec(&self) -> &str {
        &self.0.spec
    }

    pub fn moduli(&self) -> &[u32] {
        &self.0.moduli
    }

    pub fn size(&self) -> u32 {
        self.0.size
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.0.encode(&vec![1; self.0.moduli.len()])
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.0.size
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if x < self.0.size {
            Ok(x)
        } else {
            Err(Error::InvalidElement {
                elem: x as u64,
                size: self.0.size as u64,
            })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &self.0;
        if d.moduli.len() == 1 {
            let s = a + b;
            if s >= d.size {
                s - d.size
            } else {
                s
            }
        } else if !d.add.is_empty() {
            d.add[(a * d.size + b) as usize]
        } else {
            d.add_slow(a, b)
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let d = &self.0;
        if d.moduli.len() == 1 {
            ((a as u64 * b as u64) % d.size as u64) as Elem
        } else if !d.mul.is_empty() {
            d.mul[(a * d.size + b) as usize]
        } else {
            d.mul_slow(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// The inverse of `x` when `x` is a unit.
    #[inline]
    pub fn inv(&self, x: Elem) -> Option<Elem> {
        self.0.inv[x as usize]
    }

    #[inline]
    pub fn is_unit(&self, x: Elem) -> bool {
        self.0.inv[x as usize].is_some()
    }

    /// Checked unit test: the unique `y` with `x*y = 1`, if any.
    pub fn unit_test(&self, x: Elem) -> Result<Option<Elem>> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    pub fn units(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    /// The image of the integer `k` under `Z -> R`.
    pub fn from_int(&self, k: i64) -> Elem {
        let comps: Vec<u32> = self
            .0
            .moduli
            .iter()
            .map(|&n| k.rem_euclid(n as i64) as u32)
            .collect();
        self.0.encode(&comps)
    }

    /// Builds an element from its component residues.
    pub fn from_components(&self, comps: &[i64]) -> Result<Elem> {
        if comps.len() != self.0.moduli.len() {
            return Err(Error::Parse(format!(
                "expected {} components for `{}`, got {}",
                self.0.moduli.len(),
                self.spec(),
                comps.len()
            )));
        }
        let reduced: Vec<u32> = comps
            .iter()
            .zip(&self.0.moduli)
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u32)
            .collect();
        Ok(self.0.encode(&reduced))
    }

    /// Component residues of `x` (one entry for `Z/n`).
    pub fn components(&self, x: Elem) -> Vec<u32> {
        self.0.decode(x)
    }

    /// JSON form of an element: an integer for `Z/n`, an array of residues otherwise.
    pub fn elem_to_json(&self, x: Elem) -> serde_json::Value {
        if self.0.moduli.len() == 1 {
            serde_json::Value::from(x)
        } else {
            serde_json::Value::from(self.components(x))
        }
    }

    pub fn elem_from_json(&self, v: &serde_json::Value) -> Result<Elem> {
        match v {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(|k| self.from_int(k))
                .ok_or_else(|| Error::Parse(format!("not an integer: {n}"))),
            serde_json::Value::Array(items) => {
                let comps = items
                    .iter()
                    .map(|c| c.as_i64().ok_or_else(|| Error::Parse(format!("not an integer: {c}"))))
                    .collect::<Result<Vec<_>>>()?;
                self.from_components(&comps)
            }
            other => Err(Error::Parse(format!("not a ring element: {other}"))),
        }
    }

    /// True when the non-units form an ideal.
    pub fn is_local(&self) -> bool {
        self.0.moduli.len() == 1 && is_prime_power(self.0.moduli[0])
    }

    /// Number of local factors.
    pub fn factor_count(&self) -> usize {
        match &self.0.decomposition {
            Some(d) => d.factors.len(),
            None => 1,
        }
    }

    /// The `j`-th local factor.
    pub fn factor(&self, j: usize) -> FiniteRing {
        match &self.0.decomposition {
            Some(d) => d.factors[j].clone(),
            None => {
                assert_eq!(j, 0, "local ring has a single factor");
                self.clone()
            }
        }
    }

    /// The `j`-th local component of `x`.
    #[inline]
    pub fn project(&self, x: Elem, j: usize) -> Elem {
        match &self.0.decomposition {
            Some(d) => d.project[x as usize * d.factors.len() + j],
            None => x,
        }
    }

    /// Recombines local components into an element.
    pub fn lift(&self, comps: &[Elem]) -> Elem {
        match &self.0.decomposition {
            Some(d) => d.lift(comps),
            None => comps[0],
        }
    }

    /// Decomposition into local factors; a local ring returns itself.
    pub fn local_factors(&self) -> LocalDecomposition {
        match &self.0.decomposition {
            Some(d) => d.clone(),
            None => LocalDecomposition {
                factors: vec![self.clone()],
                idempotents: vec![self.one()],
                project: self.elements().collect(),
                lift: self.elements().collect(),
            },
        }
    }

    /// Residue characteristic `p` of a local ring `Z/p^k`.
    pub fn residue_prime(&self) -> Option<u32> {
        if !self.is_local() {
            return None;
        }
        let n = self.0.moduli[0];
        (2..=n).find(|d| n.is_multiple_of(*d))
    }

    /// Reduction of `x` into the residue field of a local ring.
    pub fn residue(&self, x: Elem) -> u32 {
        x % self.residue_prime().expect("residue of a non-local ring")
    }

    /// Same underlying ring (by spec).
    pub fn same(&self, other: &FiniteRing) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.moduli == other.0.moduli
    }
}

impl RingData {
    fn decode(&self, mut x: Elem) -> Vec<u32> {
        let mut comps = vec![0; self.moduli.len()];
        for (slot, &n) in comps.iter_mut().zip(&self.moduli).rev() {
            *slot = x % n;
            x /= n;
        }
        comps
    }

    fn encode(&self, comps: &[u32]) -> Elem {
        comps
            .iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&c, &n)| acc * n + c)
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let comps: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .zip(&self.moduli)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        self.encode(&comps)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let comps: Vec<u32> = ca
            .iter()
            .zip(&cb)
            .zip(&self.moduli)
            .map(|((&x, &y), &n)| ((x as u64 * y as u64) % n as u64) as u32)
            .collect();
        self.encode(&comps)
    }

    fn neg_slow(&self, a: Elem) -> Elem {
        let comps: Vec<u32> = self
            .decode(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.encode(&comps)
    }

    fn inv_slow(&self, a: Elem) -> Option<Elem> {
        let comps = self
            .decode(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &n)| {
                if gcd(x as u64, n as u64) == 1 {
                    mod_inverse(x as u64, n as u64).map(|y| y as u32)
                } else {
                    None
                }
            })
            .collect::<Option<Vec<u32>>>()?;
        Some(self.encode(&comps))
    }
}

impl LocalDecomposition {
    // Complete system of primitive orthogonal idempotents by exhaustive search;
    // each factor e*R is cyclic of order ord(e) for rings in the spec grammar.
    fn by_idempotents(ring: &FiniteRing) -> LocalDecomposition {
        let idem: Vec<Elem> = ring
            .elements()
            .filter(|&e| ring.mul(e, e) == e)
            .collect();
        let primitive: Vec<Elem> = idem
            .iter()
            .copied()
            .filter(|&e| e != 0)
            .filter(|&e| {
                idem.iter().all(|&f| {
                    let p = ring.mul(e, f);
                    p == 0 || p == e
                })
            })
            .collect();

        let mut parts: Vec<(Elem, FiniteRing, Vec<Option<u32>>)> = primitive
            .into_iter()
            .map(|e| {
                // additive order of e
                let mut order = 1u32;
                let mut acc = e;
                while acc != 0 {
                    acc = ring.add(acc, e);
                    order += 1;
                }
                let ideal_size = ring
                    .elements()
                    .map(|x| ring.mul(e, x))
                    .collect::<std::collections::BTreeSet<_>>()
                    .len() as u32;
                assert_eq!(ideal_size, order, "factor e*R is not cyclic");
                let mut which = vec![None; ring.size() as usize];
                let mut acc = 0;
                for k in 0..order {
                    which[acc as usize] = Some(k);
                    acc = ring.add(acc, e);
                }
                (e, FiniteRing::from_moduli(vec![order]), which)
            })
            .collect();
        parts.sort_by(|a, b| {
            (a.1.size(), a.1.spec())
                .cmp(&(b.1.size(), b.1.spec()))
                .then(a.0.cmp(&b.0))
        });

        let q = parts.len();
        let mut project = vec![0; ring.size() as usize * q];
        for x in ring.elements() {
            for (j, (e, _, which)) in parts.iter().enumerate() {
                let ex = ring.mul(*e, x);
                project[x as usize * q + j] = which[ex as usize].expect("e*x lies in e*R");
            }
        }
        let mut lift = vec![0; ring.size() as usize];
        for x in ring.elements() {
            let key = parts
                .iter()
                .enumerate()
                .fold(0usize, |acc, (j, (_, f, _))| {
                    acc * f.size() as usize + project[x as usize * q + j] as usize
                });
            lift[key] = x;
        }
        LocalDecomposition {
            idempotents: parts.iter().map(|p| p.0).collect(),
            factors: parts.into_iter().map(|p| p.1).collect(),
            project,
            lift,
        }
    }

    pub fn factors(&self) -> &[FiniteRing] {
        &self.factors
    }

    /// The primitive idempotent cutting out each factor.
    pub fn idempotents(&self) -> &[Elem] {
        &self.idempotents
    }

    pub fn project(&self, x: Elem) -> Vec<Elem> {
        let q = self.factors.len();
        self.project[x as usize * q..(x as usize + 1) * q].to_vec()
    }

    pub fn lift(&self, comps: &[Elem]) -> Elem {
        let key = comps
            .iter()
            .zip(&self.factors)
            .fold(0usize, |acc, (&c, f)| acc * f.size() as usize + c as usize);
        self.lift[key]
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.spec())
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.spec())
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for FiniteRing {}

impl std::hash::Hash for FiniteRing {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.0.moduli.hash(h);
    }
}

impl fmt::Debug for LocalDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalDecomposition")
            .field("factors", &self.factors)
            .field("idempotents", &self.idempotents)
            .finish()
    }
}

impl Serialize for FiniteRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.spec())
    }
}

impl<'de> Deserialize<'de> for FiniteRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let spec = String::deserialize(d)?;
        make_ring(&spec).map_err(serde::de::Error::custom)
    }
}
