//! Categories with a generator `X`, objects indexed by rank, and the
//! complemented structure (monoidal sum, complements, symmetry).

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;
use std::sync::{Arc, Mutex};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default cap on the size of a materialised hom set.
pub const DEFAULT_BUDGET: u64 = 2_000_000;

/// Enumeration budget, overridable through `FICAT_BUDGET`.
pub fn default_budget() -> u64 {
    std::env::var("FICAT_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

type HomEntry<M> = (Arc<Vec<M>>, Arc<HashMap<M, usize>>);

/// Thread-safe memo of sorted hom sets and their index maps.
pub struct HomCache<M> {
    map: Mutex<HashMap<(usize, usize), HomEntry<M>>>,
}

impl<M> Default for HomCache<M> {
    fn default() -> Self {
        HomCache {
            map: Mutex::new(HashMap::new()),
        }
    }
}

impl<M> Debug for HomCache<M> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("HomCache")
    }
}

pub trait Category: Send + Sync {
    type Mor: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn name(&self) -> String;
    fn source(&self, f: &Self::Mor) -> usize;
    fn target(&self, f: &Self::Mor) -> usize;
    fn identity(&self, n: usize) -> Self::Mor;
    /// `g ∘ f`; callers guarantee `target(f) == source(g)`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Self::Mor;
    /// Membership predicate for payloads.
    fn is_member(&self, f: &Self::Mor) -> bool;
    /// Visits every morphism `X^m -> X^n` once, in unspecified order.
    fn for_each_hom(&self, m: usize, n: usize, visit: &mut dyn FnMut(&Self::Mor));
    fn payload_json(&self, f: &Self::Mor) -> Value;
    fn budget(&self) -> u64;
    fn cache(&self) -> &HomCache<Self::Mor>;

    /// Two-sided inverse when `f` is an isomorphism.
    fn inverse(&self, f: &Self::Mor) -> Option<Self::Mor>;

    /// Streaming count of `hom(m, n)`.
    fn hom_count(&self, m: usize, n: usize) -> u64 {
        let mut count = 0u64;
        self.for_each_hom(m, n, &mut |_| count += 1);
        count
    }

    fn try_compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if self.target(f) != self.source(g) {
            return Err(Error::Dimension(format!(
                "cannot compose {} -> {} after {} -> {}",
                self.source(g),
                self.target(g),
                self.source(f),
                self.target(f)
            )));
        }
        let h = self.compose(g, f);
        if !self.is_member(&h) {
            return Err(Error::Invariant(format!(
                "{}: composite fails the membership predicate",
                self.name()
            )));
        }
        Ok(h)
    }

    /// Sorted hom set, memoised; fails when it exceeds the budget.
    fn hom(&self, m: usize, n: usize) -> Result<Arc<Vec<Self::Mor>>> {
        Ok(self.hom_entry(m, n)?.0)
    }

    /// Position of each morphism in [`Category::hom`].
    fn hom_index(&self, m: usize, n: usize) -> Result<Arc<HashMap<Self::Mor, usize>>> {
        Ok(self.hom_entry(m, n)?.1)
    }

    #[doc(hidden)]
    fn hom_entry(&self, m: usize, n: usize) -> Result<HomEntry<Self::Mor>> {
        if let Some(e) = self.cache().map.lock().unwrap().get(&(m, n)) {
            return Ok(e.clone());
        }
        let budget = self.budget();
        let required = self.hom_count(m, n);
        if required > budget {
            return Err(Error::Budget { required, budget });
        }
        let mut all = Vec::with_capacity(required as usize);
        self.for_each_hom(m, n, &mut |f| all.push(f.clone()));
        all.sort();
        let index: HashMap<Self::Mor, usize> =
            all.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        if index.len() != all.len() {
            return Err(Error::Invariant(format!(
                "{}: duplicate morphisms in hom({m}, {n})",
                self.name()
            )));
        }
        let entry = (Arc::new(all), Arc::new(index));
        self.cache()
            .map
            .lock()
            .unwrap()
            .insert((m, n), entry.clone());
        Ok(entry)
    }

    /// Morphism JSON envelope.
    fn mor_json(&self, f: &Self::Mor) -> Value {
        json!({
            "cat": self.name(),
            "src": self.source(f),
            "dst": self.target(f),
            "payload": self.payload_json(f),
        })
    }
}

pub trait Complemented: Category {
    /// Whether the instance carries a symmetric monoidal structure.
    fn symmetric(&self) -> bool;
    /// Monoidal sum `f ⊛ g`.
    fn sum(&self, f: &Self::Mor, g: &Self::Mor) -> Self::Mor;
    /// Standard embedding of `X^k` into `X^n` sending the `j`-th factor to
    /// factor `positions[j]`. `None` when that map is not a morphism.
    fn block_embedding(&self, n: usize, positions: &[usize]) -> Option<Self::Mor>;
    /// The unique `F: X^{p+q} -> X^n` with `F ∘ ι_1 = a` and `F ∘ ι_2 = b`.
    fn glue(&self, a: &Self::Mor, b: &Self::Mor) -> Option<Self::Mor>;
    /// Inclusion of the complement of the image of `f`.
    fn complement_of(&self, f: &Self::Mor) -> Self::Mor;
    /// The `c` with `b = a ∘ c`, when it exists.
    fn left_divide(&self, a: &Self::Mor, b: &Self::Mor) -> Option<Self::Mor>;

    /// `X^m -> X^m ⊛ X^{n-m}` onto the first factors.
    fn canonical(&self, m: usize, n: usize) -> Self::Mor {
        let pos: Vec<usize> = (0..m).collect();
        self.block_embedding(n, &pos).expect("canonical map exists")
    }

    /// Inclusion of the second summand `X^q -> X^p ⊛ X^q`.
    fn second_inclusion(&self, p: usize, q: usize) -> Self::Mor {
        let pos: Vec<usize> = (p..p + q).collect();
        self.block_embedding(p + q, &pos).expect("summand inclusion exists")
    }

    /// The unique morphism out of the unit.
    fn initial(&self, n: usize) -> Self::Mor {
        self.block_embedding(n, &[]).expect("initial map exists")
    }

    /// Symmetry `X^a ⊛ X^b -> X^b ⊛ X^a`.
    fn symmetry(&self, a: usize, b: usize) -> Option<Self::Mor> {
        let pos: Vec<usize> = (b..b + a).chain(0..b).collect();
        self.block_embedding(a + b, &pos)
    }

    /// The face inclusion `s_i: X^{p-1} -> X^p` omitting factor `i` (1-based).
    fn face(&self, p: usize, i: usize) -> Self::Mor {
        let pos: Vec<usize> = (0..p).filter(|&k| k + 1 != i).collect();
        self.block_embedding(p, &pos).expect("face inclusion exists")
    }

    fn aut(&self, n: usize) -> Result<Arc<Vec<Self::Mor>>> {
        self.hom(n, n)
    }
}

/// Finite sets and injections; a morphism `[m] -> [n]` stores its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FiMor {
    pub n: usize,
    pub img: Vec<usize>,
}

#[derive(Debug)]
pub struct FiCategory {
    budget: u64,
    cache: HomCache<FiMor>,
}

pub fn fi_category() -> FiCategory {
    FiCategory {
        budget: default_budget(),
        cache: HomCache::default(),
    }
}

impl FiCategory {
    pub fn with_budget(budget: u64) -> FiCategory {
        FiCategory {
            budget,
            cache: HomCache::default(),
        }
    }
}

impl Category for FiCategory {
    type Mor = FiMor;

    fn name(&self) -> String {
        "FI".into()
    }

    fn source(&self, f: &FiMor) -> usize {
        f.img.len()
    }

    fn target(&self, f: &FiMor) -> usize {
        f.n
    }

    fn identity(&self, n: usize) -> FiMor {
        FiMor {
            n,
            img: (0..n).collect(),
        }
    }

    fn compose(&self, g: &FiMor, f: &FiMor) -> FiMor {
        FiMor {
            n: g.n,
            img: f.img.iter().map(|&i| g.img[i]).collect(),
        }
    }

    fn is_member(&self, f: &FiMor) -> bool {
        let mut seen = vec![false; f.n];
        f.img.iter().all(|&i| i < f.n && !std::mem::replace(&mut seen[i], true))
    }

    fn for_each_hom(&self, m: usize, n: usize, visit: &mut dyn FnMut(&FiMor)) {
        fn rec(n: usize, m: usize, cur: &mut FiMor, used: &mut [bool], visit: &mut dyn FnMut(&FiMor)) {
            if cur.img.len() == m {
                visit(cur);
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.img.push(i);
                    rec(n, m, cur, used, visit);
                    cur.img.pop();
                    used[i] = false;
                }
            }
        }
        if m > n {
            return;
        }
        let mut cur = FiMor {
            n,
            img: Vec::with_capacity(m),
        };
        rec(n, m, &mut cur, &mut vec![false; n], visit);
    }

    fn hom_count(&self, m: usize, n: usize) -> u64 {
        if m > n {
            0
        } else {
            (n - m + 1..=n).map(|k| k as u64).product()
        }
    }

    fn payload_json(&self, f: &FiMor) -> Value {
        // 1-based images
        json!(f.img.iter().map(|i| i + 1).collect::<Vec<_>>())
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn cache(&self) -> &HomCache<FiMor> {
        &self.cache
    }

    fn inverse(&self, f: &FiMor) -> Option<FiMor> {
        if f.img.len() != f.n {
            return None;
        }
        let mut img = vec![0; f.n];
        for (i, &j) in f.img.iter().enumerate() {
            img[j] = i;
        }
        Some(FiMor { n: f.n, img })
    }
}

impl Complemented for FiCategory {
    fn symmetric(&self) -> bool {
        true
    }

    fn sum(&self, f: &FiMor, g: &FiMor) -> FiMor {
        let mut img = f.img.clone();
        img.extend(g.img.iter().map(|&i| i + f.n));
        FiMor { n: f.n + g.n, img }
    }

    fn block_embedding(&self, n: usize, positions: &[usize]) -> Option<FiMor> {
        let f = FiMor {
            n,
            img: positions.to_vec(),
        };
        self.is_member(&f).then_some(f)
    }

    fn glue(&self, a: &FiMor, b: &FiMor) -> Option<FiMor> {
        if a.n != b.n {
            return None;
        }
        let f = FiMor {
            n: a.n,
            img: a.img.iter().chain(&b.img).copied().collect(),
        };
        self.is_member(&f).then_some(f)
    }

    fn complement_of(&self, f: &FiMor) -> FiMor {
        let img = (0..f.n).filter(|i| !f.img.contains(i)).collect();
        FiMor { n: f.n, img }
    }

    fn left_divide(&self, a: &FiMor, b: &FiMor) -> Option<FiMor> {
        if a.n != b.n {
            return None;
        }
        let img = b
            .img
            .iter()
            .map(|j| a.img.iter().position(|i| i == j))
            .collect::<Option<Vec<_>>>()?;
        Some(FiMor {
            n: a.img.len(),
            img,
        })
    }
}

/// Block permutation of `X^p` sending factor `j` to factor `perm[j]`.
pub fn block_permutation<C: Complemented>(cat: &C, perm: &[usize]) -> Option<C::Mor> {
    cat.block_embedding(perm.len(), perm)
}

/// Parity of a permutation: `true` when even.
pub fn is_even(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        if len > 0 {
            transpositions += len - 1;
        }
    }
    transpositions % 2 == 0
}

/// All permutations of `0..p` in lexicographic order.
pub fn permutations(p: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..p.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..p).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: String,
    pub passed: bool,
    pub method: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub cat: String,
    pub max_rank: usize,
    pub items: Vec<CheckItem>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    fn push(&mut self, name: &str, passed: bool, method: &str, detail: String) {
        self.items.push(CheckItem {
            name: name.into(),
            passed,
            method: method.into(),
            detail,
        });
    }
}

// Work cap for checks that are otherwise quadratic in hom-set sizes.
const EXHAUSTIVE_LIMIT: u64 = 4_000_000;

/// Verifies the complemented-category axioms on all ranks up to `max_rank`.
pub fn check_axioms<C: Complemented>(cat: &C, max_rank: usize) -> Result<AxiomReport> {
    let mut rep = AxiomReport {
        cat: cat.name(),
        max_rank,
        items: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // membership and enumeration
    let mut bad = Vec::new();
    for n in 0..=max_rank {
        for m in 0..=max_rank {
            let homs = cat.hom(m, n)?;
            if m > n && !homs.is_empty() {
                bad.push(format!("hom({m},{n}) nonempty"));
            }
            if homs.iter().any(|f| {
                !cat.is_member(f) || cat.source(f) != m || cat.target(f) != n
            }) {
                bad.push(format!("hom({m},{n}) has an invalid member"));
            }
        }
    }
    rep.push("membership", bad.is_empty(), "exhaustive", bad.join("; "));

    // unit is initial
    let counts: Vec<usize> = (0..=max_rank)
        .map(|n| cat.hom(0, n).map(|h| h.len()))
        .collect::<Result<_>>()?;
    rep.push(
        "initial_object",
        counts.iter().all(|&c| c == 1),
        "exhaustive",
        format!("|hom(0,n)| = {counts:?}"),
    );

    // unit laws
    let mut ok = true;
    for n in 0..=max_rank {
        for m in 0..=n {
            for f in cat.hom(m, n)?.iter() {
                ok &= cat.compose(&cat.identity(n), f) == *f && cat.compose(f, &cat.identity(m)) == *f;
            }
        }
    }
    rep.push("unit_laws", ok, "exhaustive", String::new());

    // associativity
    let mut ok = true;
    let mut sampled = false;
    for a in 0..=max_rank {
        for b in a..=max_rank {
            for c in b..=max_rank {
                for d in c..=max_rank {
                    let (fs, gs, hs) = (cat.hom(a, b)?, cat.hom(b, c)?, cat.hom(c, d)?);
                    let work = fs.len() as u64 * gs.len() as u64 * hs.len() as u64;
                    let pick = |v: &Arc<Vec<C::Mor>>, rng: &mut ChaCha8Rng, k: usize| -> Vec<C::Mor> {
                        if work <= EXHAUSTIVE_LIMIT {
                            v.to_vec()
                        } else {
                            v.choose_multiple(rng, k.min(v.len())).cloned().collect()
                        }
                    };
                    sampled |= work > EXHAUSTIVE_LIMIT;
                    let (fs, gs, hs) = (pick(&fs, &mut rng, 40), pick(&gs, &mut rng, 40), pick(&hs, &mut rng, 40));
                    for f in &fs {
                        for g in &gs {
                            let gf = cat.compose(g, f);
                            for h in &hs {
                                ok &= cat.compose(h, &gf) == cat.compose(&cat.compose(h, g), f);
                            }
                        }
                    }
                }
            }
        }
    }
    rep.push(
        "associativity",
        ok,
        if sampled { "exhaustive where feasible, sampled otherwise" } else { "exhaustive" },
        String::new(),
    );

    // transitivity of Aut(X^n) on hom(X^m, X^n)
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 0..=max_rank {
        let auts = cat.aut(n)?;
        for m in 0..=n {
            let can = cat.canonical(m, n);
            let orbit: HashSet<C::Mor> = auts.iter().map(|a| cat.compose(a, &can)).collect();
            let homs = cat.hom(m, n)?;
            let same = orbit.len() == homs.len() && homs.iter().all(|f| orbit.contains(f));
            if !same {
                detail.push(format!("orbit of canonical({m},{n}) is not hom({m},{n})"));
            }
            ok &= same;
        }
    }
    rep.push("transitivity", ok, "exhaustive", detail.join("; "));

    // automorphisms are invertible
    let mut ok = true;
    for n in 0..=max_rank {
        let index = cat.hom_index(n, n)?;
        for a in cat.aut(n)?.iter() {
            ok &= match cat.inverse(a) {
                Some(b) => {
                    index.contains_key(&b)
                        && cat.compose(a, &b) == cat.identity(n)
                        && cat.compose(&b, a) == cat.identity(n)
                }
                None => false,
            };
        }
    }
    rep.push("automorphisms_invertible", ok, "exhaustive", String::new());

    // monomorphisms: canonical maps are left-cancellable, and every morphism is
    // an automorphism after a canonical map (checked above)
    let mut ok = true;
    let mut naive = true;
    for b in 0..=max_rank {
        for c in b..=max_rank {
            let can = cat.canonical(b, c);
            for a in 0..=b {
                let fs = cat.hom(a, b)?;
                let images: HashSet<C::Mor> = fs.iter().map(|f| cat.compose(&can, f)).collect();
                ok &= images.len() == fs.len();
                let gs = cat.hom(b, c)?;
                if fs.len() as u64 * gs.len() as u64 <= EXHAUSTIVE_LIMIT {
                    for g in gs.iter() {
                        let images: HashSet<C::Mor> = fs.iter().map(|f| cat.compose(g, f)).collect();
                        ok &= images.len() == fs.len();
                    }
                } else {
                    naive = false;
                }
            }
        }
    }
    rep.push(
        "monomorphisms",
        ok,
        if naive { "exhaustive" } else { "canonical maps exhaustively, others via transitivity" },
        String::new(),
    );

    // restriction to summands is injective and glue inverts it
    let mut ok = true;
    for n in 0..=max_rank {
        for k in 0..=n {
            for p in 0..=k {
                let q = k - p;
                let (i1, i2) = (cat.canonical(p, k), cat.second_inclusion(p, q));
                let homs = cat.hom(k, n)?;
                let mut seen = HashSet::with_capacity(homs.len());
                for f in homs.iter() {
                    let (a, b) = (cat.compose(f, &i1), cat.compose(f, &i2));
                    ok &= cat.glue(&a, &b).as_ref() == Some(f);
                    ok &= seen.insert((a, b));
                }
            }
        }
    }
    rep.push("sum_injectivity", ok, "exhaustive", String::new());

    // complements: existence for every morphism, uniqueness up to Aut
    let mut ok = true;
    let mut all_exhaustive = true;
    let mut detail = Vec::new();
    for n in 0..=max_rank {
        let aut_index = cat.hom_index(n, n)?;
        for m in 0..=n {
            let homs = cat.hom(m, n)?;
            let rest = cat.hom(n - m, n)?;
            let exhaustive = homs.len() as u64 * rest.len() as u64 <= EXHAUSTIVE_LIMIT;
            all_exhaustive &= exhaustive;
            let can = cat.canonical(m, n);
            let candidates: Vec<C::Mor> = if exhaustive { homs.to_vec() } else { vec![can] };
            for f in homs.iter() {
                let c = cat.complement_of(f);
                let split = cat.glue(f, &c);
                if !split.is_some_and(|s| aut_index.contains_key(&s)) {
                    ok = false;
                    detail.push(format!("no complement for a morphism in hom({m},{n})"));
                }
            }
            for f in &candidates {
                let c = cat.complement_of(f);
                for c2 in rest.iter() {
                    let splits = cat.glue(f, c2).is_some_and(|s| aut_index.contains_key(&s));
                    if splits {
                        let alpha = cat.left_divide(&c, c2);
                        let unique = alpha.is_some_and(|a| {
                            cat.is_member(&a) && cat.source(&a) == n - m && cat.target(&a) == n - m
                        });
                        if !unique {
                            ok = false;
                            detail.push(format!("second complement in hom({m},{n})"));
                        }
                    }
                }
            }
        }
    }
    rep.push(
        "complements",
        ok,
        if all_exhaustive { "exhaustive" } else { "existence exhaustive; uniqueness exhaustive where feasible, via transitivity otherwise" },
        detail.join("; "),
    );

    if cat.symmetric() {
        let mut ok = true;
        for a in 0..=max_rank {
            for b in 0..=max_rank - a {
                let (Some(s), Some(t)) = (cat.symmetry(a, b), cat.symmetry(b, a)) else {
                    ok = false;
                    continue;
                };
                ok &= cat.compose(&t, &s) == cat.identity(a + b);
                // naturality on small hom sets
                for c in a..=max_rank {
                    for d in b..=max_rank - c {
                        let fs = cat.hom(a, c)?;
                        let gs = cat.hom(b, d)?;
                        let (Some(s_src), Some(s_dst)) = (cat.symmetry(a, b), cat.symmetry(c, d)) else {
                            ok = false;
                            continue;
                        };
                        let fs: Vec<_> = fs.choose_multiple(&mut rng, 12.min(fs.len())).cloned().collect();
                        let gs: Vec<_> = gs.choose_multiple(&mut rng, 12.min(gs.len())).cloned().collect();
                        for f in &fs {
                            for g in &gs {
                                let lhs = cat.compose(&s_dst, &cat.sum(f, g));
                                let rhs = cat.compose(&cat.sum(g, f), &s_src);
                                ok &= lhs == rhs;
                            }
                        }
                    }
                }
            }
        }
        rep.push("symmetry", ok, "involution exhaustive; naturality sampled", String::new());
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub cat: String,
    pub r: usize,
    pub n: usize,
    pub hom_count: u64,
    pub aut_n: u64,
    pub aut_complement: u64,
    pub transitive: bool,
    pub orbit_size: u64,
    pub stabilizer_size: u64,
    pub stabilizer_is_complement_aut: bool,
    pub identity_holds: bool,
}

/// Transitivity, stabilizer and counting identity for `Aut(X^n)` acting on `hom(X^r, X^n)`.
pub fn group_structure_report<C: Complemented>(cat: &C, r: usize, n: usize) -> Result<GroupReport> {
    if r > n {
        return Err(Error::Precondition(format!("rank {r} exceeds {n}")));
    }
    let auts = cat.aut(n)?;
    let homs = cat.hom(r, n)?;
    let inner = cat.aut(n - r)?;
    let can = cat.canonical(r, n);
    let mut orbit = HashSet::new();
    let mut stabilizer = HashSet::new();
    for a in auts.iter() {
        let img = cat.compose(a, &can);
        if img == can {
            stabilizer.insert(a.clone());
        }
        orbit.insert(img);
    }
    let transitive = orbit.len() == homs.len() && homs.iter().all(|f| orbit.contains(f));
    let expected: HashSet<C::Mor> = inner
        .iter()
        .map(|b| cat.sum(&cat.identity(r), b))
        .collect();
    let hom_count = homs.len() as u64;
    let (aut_n, aut_complement) = (auts.len() as u64, inner.len() as u64);
    Ok(GroupReport {
        cat: cat.name(),
        r,
        n,
        hom_count,
        aut_n,
        aut_complement,
        transitive,
        orbit_size: orbit.len() as u64,
        stabilizer_size: stabilizer.len() as u64,
        stabilizer_is_complement_aut: stabilizer == expected,
        identity_holds: hom_count * aut_complement == aut_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fi_hom_examples() {
        let fi = fi_category();
        assert_eq!(fi.hom(1, 3).unwrap().len(), 3);
        assert_eq!(fi.hom(2, 2).unwrap().len(), 2);
        assert!(fi.hom(3, 2).unwrap().is_empty());
        assert_eq!(fi.hom(0, 4).unwrap().len(), 1);
        let f = FiMor { n: 3, img: vec![0, 2] };
        let c = fi.complement_of(&f);
        assert_eq!(c, FiMor { n: 3, img: vec![1] });
        assert_eq!(fi.payload_json(&c), json!([2]));
    }

    #[test]
    fn hom_is_sorted_and_counted() {
        let fi = fi_category();
        for n in 0..5 {
            for m in 0..=n {
                let h = fi.hom(m, n).unwrap();
                assert!(h.windows(2).all(|w| w[0] < w[1]));
                let mut streamed = 0;
                fi.for_each_hom(m, n, &mut |_| streamed += 1);
                assert_eq!(h.len() as u64, fi.hom_count(m, n));
                assert_eq!(streamed, h.len());
            }
        }
    }

    #[test]
    fn budget_reports_required_size() {
        let fi = FiCategory::with_budget(10);
        assert_eq!(
            fi.hom(3, 4).unwrap_err(),
            Error::Budget { required: 24, budget: 10 }
        );
        assert!(fi.hom(1, 4).is_ok());
    }

    #[test]
    fn fi_axioms() {
        let rep = check_axioms(&fi_category(), 4).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        assert!(rep.items.iter().any(|i| i.name == "symmetry"));
    }

    #[test]
    fn fi_group_structure() {
        let rep = group_structure_report(&fi_category(), 1, 3).unwrap();
        assert_eq!((rep.orbit_size, rep.stabilizer_size, rep.aut_n), (3, 2, 6));
        assert!(rep.transitive && rep.stabilizer_is_complement_aut && rep.identity_holds);
    }

    #[test]
    fn faces_and_symmetry() {
        let fi = fi_category();
        assert_eq!(fi.face(3, 2), FiMor { n: 3, img: vec![0, 2] });
        assert_eq!(fi.symmetry(1, 2).unwrap(), FiMor { n: 3, img: vec![2, 0, 1] });
        assert_eq!(fi.second_inclusion(2, 1), FiMor { n: 3, img: vec![2] });
    }

    #[test]
    fn permutation_parity() {
        let perms = permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().filter(|p| is_even(p)).count(), 3);
        assert!(!is_even(&[1, 0]));
        assert!(is_even(&[1, 2, 0]));
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
    }
}
