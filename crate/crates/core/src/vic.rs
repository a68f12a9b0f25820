//! The categories VIC(R, U) and OVIC(R), plus VI/V hom counts.
//!
//! A morphism `R^m -> R^n` is a pair `(f, fp)` with `f` an `n x m` matrix,
//! `fp` an `m x n` matrix and `fp * f = 1`.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use serde_json::{json, Value};

use crate::catcore::{default_budget, Category, Complemented, HomCache};
use crate::error::{Error, Result};
use crate::matrix::{all_matrices, combinations, summand_basis, Mat};
use crate::ring::{Elem, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VicMor {
    pub f: Mat,
    pub fp: Mat,
}

impl VicMor {
    pub fn new(f: Mat, fp: Mat) -> Result<VicMor> {
        if f.rows() != fp.cols() || f.cols() != fp.rows() {
            return Err(Error::Dimension(format!(
                "f is {}x{} but fp is {}x{}",
                f.rows(),
                f.cols(),
                fp.rows(),
                fp.cols()
            )));
        }
        if !fp.mul(&f).is_identity() {
            return Err(Error::Precondition("fp * f is not the identity".into()));
        }
        Ok(VicMor { f, fp })
    }

    pub fn src(&self) -> usize {
        self.f.cols()
    }

    pub fn dst(&self) -> usize {
        self.f.rows()
    }

    pub fn ring(&self) -> &FiniteRing {
        self.f.ring()
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &VicMor) -> VicMor {
        VicMor {
            f: self.f.mul(&other.f),
            fp: other.fp.mul(&self.fp),
        }
    }

    pub fn project(&self, j: usize) -> VicMor {
        VicMor {
            f: self.f.project(j),
            fp: self.fp.project(j),
        }
    }

    pub fn lift(ring: &FiniteRing, parts: &[VicMor]) -> VicMor {
        let fs: Vec<Mat> = parts.iter().map(|p| p.f.clone()).collect();
        let fps: Vec<Mat> = parts.iter().map(|p| p.fp.clone()).collect();
        VicMor {
            f: Mat::lift(ring, &fs),
            fp: Mat::lift(ring, &fps),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"f": self.f.to_json(), "fp": self.fp.to_json()})
    }

    pub fn from_json(ring: Option<&FiniteRing>, v: &Value) -> Result<VicMor> {
        let f = Mat::from_json(ring, v.get("f").ok_or_else(|| Error::Parse("missing f".into()))?)?;
        let fp = Mat::from_json(
            Some(f.ring()),
            v.get("fp").ok_or_else(|| Error::Parse("missing fp".into()))?,
        )?;
        VicMor::new(f, fp)
    }
}

/// A subgroup `U` of the unit group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitSubgroup {
    ring: FiniteRing,
    members: BTreeSet<Elem>,
}

impl UnitSubgroup {
    pub fn new(ring: &FiniteRing, members: impl IntoIterator<Item = Elem>) -> Result<UnitSubgroup> {
        let members: BTreeSet<Elem> = members.into_iter().collect();
        for &x in &members {
            ring.check(x)?;
            if !ring.is_unit(x) {
                return Err(Error::Precondition(format!("{x} is not a unit")));
            }
        }
        if !members.contains(&ring.one()) {
            return Err(Error::Precondition("subgroup must contain 1".into()));
        }
        for &a in &members {
            if !members.contains(&ring.inv(a).unwrap()) {
                return Err(Error::Precondition(format!("not closed under inverse at {a}")));
            }
            for &b in &members {
                if !members.contains(&ring.mul(a, b)) {
                    return Err(Error::Precondition(format!("not closed under product at {a}*{b}")));
                }
            }
        }
        Ok(UnitSubgroup {
            ring: ring.clone(),
            members,
        })
    }

    /// The full unit group.
    pub fn all(ring: &FiniteRing) -> UnitSubgroup {
        UnitSubgroup {
            ring: ring.clone(),
            members: ring.units().into_iter().collect(),
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(&x)
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.ring.units().len()
    }

    pub fn members(&self) -> Vec<Elem> {
        self.members.iter().copied().collect()
    }

    pub fn to_json(&self) -> Value {
        json!({"ring": self.ring.spec(), "members": self.members()})
    }
}

/// Calls `visit` with every choice vector, slot `i` drawn from `choices[i]`.
fn for_each_tuple(choices: &[Vec<Elem>], visit: &mut dyn FnMut(&[Elem])) {
    if choices.iter().any(|c| c.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; choices.len()];
    let mut cur: Vec<Elem> = choices.iter().map(|c| c[0]).collect();
    loop {
        visit(&cur);
        let mut k = choices.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                cur[k] = choices[k][idx[k]];
                break;
            }
            idx[k] = 0;
            cur[k] = choices[k][0];
        }
    }
}

fn maximal_ideal(r: &FiniteRing) -> Vec<Elem> {
    r.elements().filter(|&x| !r.is_unit(x)).collect()
}

/// `GL_m` of a local ring with inverses: residue representatives of invertible
/// matrices plus every matrix with entries in the maximal ideal.
pub fn local_gl(r: &FiniteRing, m: usize) -> Vec<(Mat, Mat)> {
    let p = r.residue_prime().expect("local ring");
    let reps: Vec<Elem> = (0..p).collect();
    let ideal = maximal_ideal(r);
    let mut base = Vec::new();
    for_each_tuple(&vec![reps; m * m], &mut |t| {
        let a = Mat::from_raw(r, m, m, t.to_vec());
        if r.is_unit(a.det_unchecked()) {
            base.push(a);
        }
    });
    let mut out = Vec::with_capacity(base.len() * ideal.len().pow((m * m) as u32));
    for a in &base {
        for_each_tuple(&vec![ideal.clone(); m * m], &mut |t| {
            let data = a.entries().iter().zip(t).map(|(&x, &y)| r.add(x, y)).collect();
            let g = Mat::from_raw(r, m, m, data);
            let inv = g.inverse().unwrap().expect("unit determinant");
            out.push((g, inv));
        });
    }
    out
}

/// Number of elements of `local_gl(r, m)`.
pub fn local_gl_count(r: &FiniteRing, m: usize) -> u64 {
    let p = r.residue_prime().expect("local ring");
    let reps: Vec<Elem> = (0..p).collect();
    let mut base = 0u64;
    for_each_tuple(&vec![reps; m * m], &mut |t| {
        if r.is_unit(Mat::from_raw(r, m, m, t.to_vec()).det_unchecked()) {
            base += 1;
        }
    });
    base * (maximal_ideal(r).len() as u64).pow((m * m) as u32)
}

/// Every OVIC morphism `R^m -> R^n` over a local ring (`m <= n`).
pub fn local_ovic(r: &FiniteRing, m: usize, n: usize, visit: &mut dyn FnMut(VicMor)) {
    let ideal = maximal_ideal(r);
    let all: Vec<Elem> = r.elements().collect();
    for s in combinations(n, m) {
        let free: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
        // entries of fp in the free columns, column-major: slot (t, i) is fp[i][free[t]]
        let coeff_choices: Vec<Vec<Elem>> = free
            .iter()
            .flat_map(|&j| {
                let ideal = &ideal;
                let all = &all;
                s.iter().map(move |&si| if j < si { ideal.clone() } else { all.clone() })
            })
            .collect();
        let row_choices = vec![all.clone(); free.len() * m];
        for_each_tuple(&coeff_choices, &mut |c| {
            let mut fp = Mat::zeros(r, m, n);
            for (i, &si) in s.iter().enumerate() {
                fp.set(i, si, r.one());
            }
            for (t, &j) in free.iter().enumerate() {
                for i in 0..m {
                    fp.set(i, j, c[t * m + i]);
                }
            }
            for_each_tuple(&row_choices, &mut |rows| {
                let mut f = Mat::zeros(r, n, m);
                for (t, &j) in free.iter().enumerate() {
                    for k in 0..m {
                        f.set(j, k, rows[t * m + k]);
                    }
                }
                // row s_i of f is e_i - sum_j fp[i][j] * row_j
                for (i, &si) in s.iter().enumerate() {
                    for k in 0..m {
                        let mut acc = if i == k { r.one() } else { 0 };
                        for t in 0..free.len() {
                            acc = r.sub(acc, r.mul(c[t * m + i], rows[t * m + k]));
                        }
                        f.set(si, k, acc);
                    }
                }
                visit(VicMor {
                    f,
                    fp: fp.clone(),
                });
            });
        });
    }
}

fn local_ovic_count(r: &FiniteRing, m: usize, n: usize) -> u64 {
    let size = r.size() as u64;
    let ideal = maximal_ideal(r).len() as u64;
    combinations(n, m)
        .iter()
        .map(|s| {
            let free: Vec<usize> = (0..n).filter(|j| !s.contains(j)).collect();
            let coeffs: u64 = free
                .iter()
                .flat_map(|&j| s.iter().map(move |&si| if j < si { ideal } else { size }))
                .product();
            coeffs * size.pow((free.len() * m) as u32)
        })
        .sum()
}

/// Streams the cartesian product of per-factor lists, lifted by CRT.
fn for_each_lifted(ring: &FiniteRing, parts: &[Arc<Vec<VicMor>>], visit: &mut dyn FnMut(&VicMor)) {
    if parts.len() == 1 {
        for g in parts[0].iter() {
            visit(g);
        }
        return;
    }
    if parts.iter().any(|p| p.is_empty()) {
        return;
    }
    let mut idx = vec![0usize; parts.len()];
    loop {
        let pieces: Vec<VicMor> = idx.iter().zip(parts).map(|(&i, p)| p[i].clone()).collect();
        visit(&VicMor::lift(ring, &pieces));
        let mut k = parts.len();
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < parts[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

type LocalLists = Mutex<HashMap<(usize, usize, usize), Arc<Vec<VicMor>>>>;

/// VIC(R, U): determinant in `U` is imposed only between equal ranks.
#[derive(Debug)]
pub struct VicCategory {
    ring: FiniteRing,
    units: UnitSubgroup,
    budget: u64,
    cache: HomCache<VicMor>,
    local: LocalLists,
    gl: Mutex<HashMap<(usize, usize), Arc<Vec<(Mat, Mat)>>>>,
}

pub fn make_vic_category(ring: &FiniteRing, units: &UnitSubgroup) -> Result<VicCategory> {
    if !units.ring.same(ring) {
        return Err(Error::RingMismatch(ring.spec().into(), units.ring.spec().into()));
    }
    Ok(VicCategory {
        ring: ring.clone(),
        units: units.clone(),
        budget: default_budget(),
        cache: HomCache::default(),
        local: Mutex::default(),
        gl: Mutex::default(),
    })
}

impl VicCategory {
    /// VIC(R) with the full unit group.
    pub fn full(ring: &FiniteRing) -> VicCategory {
        make_vic_category(ring, &UnitSubgroup::all(ring)).unwrap()
    }

    pub fn with_budget(mut self, budget: u64) -> VicCategory {
        self.budget = budget;
        self
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn units(&self) -> &UnitSubgroup {
        &self.units
    }

    fn gl_of_factor(&self, j: usize, m: usize) -> Arc<Vec<(Mat, Mat)>> {
        if let Some(v) = self.gl.lock().unwrap().get(&(j, m)) {
            return v.clone();
        }
        let v = Arc::new(local_gl(&self.ring.factor(j), m));
        self.gl.lock().unwrap().insert((j, m), v.clone());
        v
    }

    // All VIC(R_j) morphisms m -> n of the j-th local factor.
    fn local_homs(&self, j: usize, m: usize, n: usize) -> Arc<Vec<VicMor>> {
        if let Some(v) = self.local.lock().unwrap().get(&(j, m, n)) {
            return v.clone();
        }
        let mut out = Vec::new();
        self.for_each_local(j, m, n, &mut |g| out.push(g.clone()));
        let v = Arc::new(out);
        self.local.lock().unwrap().insert((j, m, n), v.clone());
        v
    }

    fn for_each_local(&self, j: usize, m: usize, n: usize, visit: &mut dyn FnMut(&VicMor)) {
        let fr = self.ring.factor(j);
        let gl = self.gl_of_factor(j, m);
        if m == n {
            for (g, ginv) in gl.iter() {
                visit(&VicMor {
                    f: g.clone(),
                    fp: ginv.clone(),
                });
            }
            return;
        }
        local_ovic(&fr, m, n, &mut |o| {
            for (g, ginv) in gl.iter() {
                visit(&VicMor {
                    f: o.f.mul(g),
                    fp: ginv.mul(&o.fp),
                });
            }
        });
    }

    fn det_ok(&self, f: &VicMor) -> bool {
        f.src() != f.dst() || self.units.contains(f.f.det_unchecked())
    }
}

impl Category for VicCategory {
    type Mor = VicMor;

    fn name(&self) -> String {
        if self.units.is_full() {
            format!("VIC({})", self.ring.spec())
        } else {
            let members: Vec<String> = self.units.members().iter().map(|x| x.to_string()).collect();
            format!("VIC({},{{{}}})", self.ring.spec(), members.join(","))
        }
    }

    fn source(&self, f: &VicMor) -> usize {
        f.src()
    }

    fn target(&self, f: &VicMor) -> usize {
        f.dst()
    }

    fn identity(&self, n: usize) -> VicMor {
        let id = Mat::identity(&self.ring, n);
        VicMor {
            f: id.clone(),
            fp: id,
        }
    }

    fn compose(&self, g: &VicMor, f: &VicMor) -> VicMor {
        g.then_after(f)
    }

    fn is_member(&self, f: &VicMor) -> bool {
        f.f.ring().same(&self.ring)
            && f.fp.rows() == f.src()
            && f.fp.cols() == f.dst()
            && f.fp.mul(&f.f).is_identity()
            && self.det_ok(f)
    }

    fn for_each_hom(&self, m: usize, n: usize, visit: &mut dyn FnMut(&VicMor)) {
        if m > n {
            return;
        }
        let q = self.ring.factor_count();
        let restrict = m == n && !self.units.is_full();
        if q == 1 && !restrict {
            self.for_each_local(0, m, n, visit);
            return;
        }
        let parts: Vec<Arc<Vec<VicMor>>> = (0..q).map(|j| self.local_homs(j, m, n)).collect();
        for_each_lifted(&self.ring, &parts, &mut |g| {
            if !restrict || self.det_ok(g) {
                visit(g);
            }
        });
    }

    fn hom_count(&self, m: usize, n: usize) -> u64 {
        if m > n {
            return 0;
        }
        if m == n && !self.units.is_full() {
            let mut count = 0;
            self.for_each_hom(m, n, &mut |_| count += 1);
            return count;
        }
        (0..self.ring.factor_count())
            .map(|j| {
                let fr = self.ring.factor(j);
                let gl = local_gl_count(&fr, m);
                if m == n {
                    gl
                } else {
                    local_ovic_count(&fr, m, n) * gl
                }
            })
            .product()
    }

    fn payload_json(&self, f: &VicMor) -> Value {
        json!({"f": f.f.entries_json(), "fp": f.fp.entries_json()})
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn cache(&self) -> &HomCache<VicMor> {
        &self.cache
    }

    fn inverse(&self, f: &VicMor) -> Option<VicMor> {
        let g = VicMor {
            f: f.fp.clone(),
            fp: f.f.clone(),
        };
        (f.src() == f.dst() && self.is_member(&g)).then_some(g)
    }
}

impl Complemented for VicCategory {
    fn symmetric(&self) -> bool {
        self.units.contains(self.ring.neg(self.ring.one()))
    }

    fn sum(&self, f: &VicMor, g: &VicMor) -> VicMor {
        VicMor {
            f: f.f.block_diag(&g.f),
            fp: f.fp.block_diag(&g.fp),
        }
    }

    fn block_embedding(&self, n: usize, positions: &[usize]) -> Option<VicMor> {
        let k = positions.len();
        let mut f = Mat::zeros(&self.ring, n, k);
        for (j, &p) in positions.iter().enumerate() {
            if p >= n || (0..j).any(|i| positions[i] == p) {
                return None;
            }
            f.set(p, j, self.ring.one());
        }
        let g = VicMor {
            fp: f.transpose(),
            f,
        };
        self.det_ok(&g).then_some(g)
    }

    fn glue(&self, a: &VicMor, b: &VicMor) -> Option<VicMor> {
        if a.dst() != b.dst() || !a.fp.mul(&b.f).is_zero() || !b.fp.mul(&a.f).is_zero() {
            return None;
        }
        let g = VicMor {
            f: a.f.hstack(&b.f),
            fp: a.fp.vstack(&b.fp),
        };
        self.det_ok(&g).then_some(g)
    }

    fn complement_of(&self, f: &VicMor) -> VicMor {
        let (m, n) = (f.src(), f.dst());
        if m == n {
            return self.initial(n);
        }
        let proj = Mat::identity(&self.ring, n).sub(&f.f.mul(&f.fp));
        let mut basis = summand_basis(&proj).expect("kernel of a split surjection is a free summand");
        let whole = f.f.hstack(&basis);
        let d = whole.det_unchecked();
        if !self.units.contains(d) {
            let u = self.ring.inv(d).expect("complement spans");
            for i in 0..n {
                basis.set(i, 0, self.ring.mul(u, basis.get(i, 0)));
            }
        }
        let inv = f.f.hstack(&basis).inverse().unwrap().expect("complement spans");
        let rows: Vec<usize> = (m..n).collect();
        VicMor {
            f: basis,
            fp: inv.select_rows(&rows),
        }
    }

    fn left_divide(&self, a: &VicMor, b: &VicMor) -> Option<VicMor> {
        if a.dst() != b.dst() {
            return None;
        }
        let c = VicMor {
            f: a.fp.mul(&b.f),
            fp: b.fp.mul(&a.f),
        };
        (self.is_member(&c) && a.then_after(&c) == *b).then_some(c)
    }
}

/// OVIC(R): VIC morphisms whose second component is column-adapted.
#[derive(Debug)]
pub struct OvicCategory {
    ring: FiniteRing,
    budget: u64,
    cache: HomCache<VicMor>,
    local: LocalLists,
}

pub fn make_ovic_category(ring: &FiniteRing) -> OvicCategory {
    OvicCategory {
        ring: ring.clone(),
        budget: default_budget(),
        cache: HomCache::default(),
        local: Mutex::default(),
    }
}

impl OvicCategory {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    fn local_homs(&self, j: usize, m: usize, n: usize) -> Arc<Vec<VicMor>> {
        if let Some(v) = self.local.lock().unwrap().get(&(j, m, n)) {
            return v.clone();
        }
        let mut out = Vec::new();
        local_ovic(&self.ring.factor(j), m, n, &mut |g| out.push(g));
        let v = Arc::new(out);
        self.local.lock().unwrap().insert((j, m, n), v.clone());
        v
    }
}

/// Sorted OVIC morphisms `R^m -> R^n`.
pub fn ovic_hom_enumerate(ring: &FiniteRing, m: usize, n: usize) -> Result<Arc<Vec<VicMor>>> {
    make_ovic_category(ring).hom(m, n)
}

impl Category for OvicCategory {
    type Mor = VicMor;

    fn name(&self) -> String {
        format!("OVIC({})", self.ring.spec())
    }

    fn source(&self, f: &VicMor) -> usize {
        f.src()
    }

    fn target(&self, f: &VicMor) -> usize {
        f.dst()
    }

    fn identity(&self, n: usize) -> VicMor {
        let id = Mat::identity(&self.ring, n);
        VicMor {
            f: id.clone(),
            fp: id,
        }
    }

    fn compose(&self, g: &VicMor, f: &VicMor) -> VicMor {
        g.then_after(f)
    }

    fn is_member(&self, f: &VicMor) -> bool {
        f.f.ring().same(&self.ring)
            && f.fp.rows() == f.src()
            && f.fp.cols() == f.dst()
            && f.fp.mul(&f.f).is_identity()
            && f.fp.column_adapted().is_some()
    }

    fn for_each_hom(&self, m: usize, n: usize, visit: &mut dyn FnMut(&VicMor)) {
        if m > n {
            return;
        }
        if self.ring.factor_count() == 1 {
            local_ovic(&self.ring, m, n, &mut |g| visit(&g));
            return;
        }
        let parts: Vec<_> = (0..self.ring.factor_count())
            .map(|j| self.local_homs(j, m, n))
            .collect();
        for_each_lifted(&self.ring, &parts, visit);
    }

    fn hom_count(&self, m: usize, n: usize) -> u64 {
        if m > n {
            return 0;
        }
        (0..self.ring.factor_count())
            .map(|j| local_ovic_count(&self.ring.factor(j), m, n))
            .product()
    }

    fn payload_json(&self, f: &VicMor) -> Value {
        json!({"f": f.f.entries_json(), "fp": f.fp.entries_json()})
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn cache(&self) -> &HomCache<VicMor> {
        &self.cache
    }

    fn inverse(&self, f: &VicMor) -> Option<VicMor> {
        (f.src() == f.dst() && f.f.is_identity() && f.fp.is_identity()).then(|| f.clone())
    }
}

/// Writes `mor = ovic ∘ aut` with `ovic` in OVIC and `aut` an automorphism of `R^m`.
pub fn vic_factor(mor: &VicMor) -> Result<(VicMor, VicMor)> {
    if !mor.fp.mul(&mor.f).is_identity() {
        return Err(Error::Invariant("fp * f is not the identity".into()));
    }
    let (f1p, f2) = mor.fp.factor_surjection()?;
    let f2inv = f2.inverse()?.expect("factor is invertible");
    let ovic = VicMor {
        f: mor.f.mul(&f2),
        fp: f1p,
    };
    let aut = VicMor { f: f2inv, fp: f2 };
    if ovic.then_after(&aut) != *mor || !ovic.fp.mul(&ovic.f).is_identity() {
        return Err(Error::Invariant("factorization does not recompose".into()));
    }
    Ok((ovic, aut))
}

/// Whether an `n x m` matrix admits a left inverse (unit maximal minor per local factor).
pub fn has_left_inverse(f: &Mat) -> bool {
    f.transpose().is_surjective()
}

/// `(|Hom_VI(R^m, R^n)|, |Hom_V(R^m, R^n)|)`.
///
/// VI counts split injections. V counts maps with free cokernel, each of which
/// factors as a surjection onto `R^k` followed by a split injection, uniquely up to `GL_k`.
pub fn vi_v_hom_counts(ring: &FiniteRing, m: usize, n: usize) -> Result<(u64, u64)> {
    let budget = default_budget();
    let vi = |a: usize, b: usize| -> Result<u64> {
        let space = (ring.size() as u64).checked_pow((a * b) as u32).unwrap_or(u64::MAX);
        if space > budget {
            return Err(Error::Budget {
                required: space,
                budget,
            });
        }
        Ok(all_matrices(ring, b, a).filter(has_left_inverse).count() as u64)
    };
    let vi_count = vi(m, n)?;
    let mut v_count = 0;
    for k in 0..=m.min(n) {
        let gl: u64 = (0..ring.factor_count())
            .map(|j| local_gl_count(&ring.factor(j), k))
            .product();
        v_count += vi(k, m)? * vi(k, n)? / gl;
    }
    Ok((vi_count, v_count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{check_axioms, group_structure_report};
    use crate::ring::make_ring;

    fn m(r: &FiniteRing, rows: &[&[i64]]) -> Mat {
        Mat::from_ints(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    // Oracle: every pair of matrices with fp * f = 1 (and the determinant rule).
    fn brute_vic(cat: &VicCategory, a: usize, b: usize) -> Vec<VicMor> {
        let r = cat.ring().clone();
        let fps: Vec<Mat> = all_matrices(&r, a, b).collect();
        let mut out = Vec::new();
        for f in all_matrices(&r, b, a) {
            for fp in &fps {
                let g = VicMor {
                    f: f.clone(),
                    fp: fp.clone(),
                };
                if cat.is_member(&g) {
                    out.push(g);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn hom_matches_brute_force() {
        for spec in ["Z/2", "Z/3", "Z/4", "Z/6"] {
            let r = make_ring(spec).unwrap();
            let cat = VicCategory::full(&r);
            for (a, b) in [(0, 1), (1, 1), (1, 2), (2, 2), (0, 2)] {
                assert_eq!(*cat.hom(a, b).unwrap(), brute_vic(&cat, a, b), "{spec} ({a},{b})");
            }
        }
        let r = make_ring("Z/2").unwrap();
        let cat = VicCategory::full(&r);
        assert_eq!(*cat.hom(1, 3).unwrap(), brute_vic(&cat, 1, 3));
    }

    #[test]
    fn restricted_units() {
        let z4 = make_ring("Z/4").unwrap();
        let u = UnitSubgroup::new(&z4, [1, 3]).unwrap();
        assert_eq!(make_vic_category(&z4, &u).unwrap().aut(1).unwrap().len(), 2);
        let trivial = UnitSubgroup::new(&z4, [1]).unwrap();
        let cat = make_vic_category(&z4, &trivial).unwrap();
        assert_eq!(cat.hom(1, 1).unwrap().len(), 1);
        assert_eq!(cat.hom(2, 2).unwrap().len(), 48);
        assert_eq!(cat.hom_count(2, 2), 48);
        assert_eq!(*cat.hom(1, 2).unwrap(), brute_vic(&cat, 1, 2));
        assert!(!cat.symmetric());
        assert_eq!(cat.name(), "VIC(Z/4,{1})");
        assert!(UnitSubgroup::new(&z4, [3]).is_err());
        assert!(UnitSubgroup::new(&z4, [1, 2]).is_err());
        let z5 = make_ring("Z/5").unwrap();
        assert!(UnitSubgroup::new(&z5, [1, 2]).is_err());
        assert!(UnitSubgroup::new(&z5, [1, 4]).is_ok());
    }

    #[test]
    fn spec_counts() {
        let z2 = make_ring("Z/2").unwrap();
        let cat = VicCategory::full(&z2);
        assert_eq!(cat.aut(2).unwrap().len(), 6);
        assert_eq!(cat.hom(1, 2).unwrap().len(), 6);
        assert_eq!(cat.hom(1, 3).unwrap().len(), 28);
        let z4 = make_ring("Z/4").unwrap();
        let cat = VicCategory::full(&z4);
        assert_eq!(cat.hom(1, 2).unwrap().len(), 48);
        assert_eq!(cat.aut(2).unwrap().len(), 96);
        assert_eq!(cat.hom_count(1, 3), 896);
        assert_eq!(cat.hom_count(3, 3), 86016);
        let z6 = make_ring("Z/6").unwrap();
        assert_eq!(VicCategory::full(&z6).hom_count(3, 3), 168 * 11232);
    }

    #[test]
    fn streamed_count_matches_formula_count() {
        for spec in ["Z/6", "Z/2 x Z/2", "Z/4"] {
            let r = make_ring(spec).unwrap();
            let cat = VicCategory::full(&r);
            for (a, b) in [(1, 2), (2, 2), (1, 3), (0, 3)] {
                let mut streamed = 0;
                cat.for_each_hom(a, b, &mut |_| streamed += 1);
                assert_eq!(streamed, cat.hom_count(a, b), "{spec} ({a},{b})");
            }
        }
    }

    #[test]
    fn ovic_examples() {
        let z4 = make_ring("Z/4").unwrap();
        assert_eq!(ovic_hom_enumerate(&z4, 1, 2).unwrap().len(), 24);
        let z2 = make_ring("Z/2").unwrap();
        assert_eq!(ovic_hom_enumerate(&z2, 1, 1).unwrap().len(), 1);
        assert_eq!(ovic_hom_enumerate(&z2, 1, 2).unwrap().len(), 6);
        assert_eq!(ovic_hom_enumerate(&z4, 1, 3).unwrap().len(), 448);
        assert_eq!(ovic_hom_enumerate(&z2, 2, 3).unwrap().len(), 28);
    }

    #[test]
    fn ovic_is_the_adapted_part_of_vic() {
        for spec in ["Z/2", "Z/4", "Z/6", "Z/3"] {
            let r = make_ring(spec).unwrap();
            let vic = VicCategory::full(&r);
            let ovic = make_ovic_category(&r);
            for (a, b) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
                if spec == "Z/6" && b == 3 {
                    continue;
                }
                let filtered: Vec<VicMor> = vic
                    .hom(a, b)
                    .unwrap()
                    .iter()
                    .filter(|g| g.fp.column_adapted().is_some())
                    .cloned()
                    .collect();
                let o = ovic.hom(a, b).unwrap();
                assert_eq!(*o, filtered, "{spec} ({a},{b})");
                let gl = vic.aut(a).unwrap().len();
                assert_eq!(vic.hom(a, b).unwrap().len(), o.len() * gl);
            }
        }
    }

    #[test]
    fn vic_factor_examples() {
        let z4 = make_ring("Z/4").unwrap();
        let mor = VicMor::new(m(&z4, &[&[3], &[0]]), m(&z4, &[&[3, 0]])).unwrap();
        let (o, a) = vic_factor(&mor).unwrap();
        assert_eq!(o, VicMor::new(m(&z4, &[&[1], &[0]]), m(&z4, &[&[1, 0]])).unwrap());
        assert_eq!(a, VicMor::new(m(&z4, &[&[3]]), m(&z4, &[&[3]])).unwrap());
        for g in ovic_hom_enumerate(&z4, 1, 2).unwrap().iter() {
            let (o, a) = vic_factor(g).unwrap();
            assert_eq!(&o, g);
            assert!(a.f.is_identity());
        }
    }

    #[test]
    fn vic_factor_is_unique() {
        for spec in ["Z/6", "Z/4"] {
            let r = make_ring(spec).unwrap();
            let vic = VicCategory::full(&r);
            let ovic = make_ovic_category(&r);
            let auts = vic.aut(1).unwrap();
            for g in vic.hom(1, 2).unwrap().iter() {
                let (o, a) = vic_factor(g).unwrap();
                assert_eq!(&o.then_after(&a), g);
                let n = auts
                    .iter()
                    .filter(|b| {
                        let inv = vic.inverse(b).unwrap();
                        ovic.is_member(&g.then_after(&inv))
                    })
                    .count();
                assert_eq!(n, 1);
            }
        }
    }

    #[test]
    fn vi_v_examples() {
        let z2 = make_ring("Z/2").unwrap();
        assert_eq!(vi_v_hom_counts(&z2, 1, 2).unwrap().0, 3);
        assert_eq!(vi_v_hom_counts(&z2, 2, 1).unwrap().1, 4);
        let z4 = make_ring("Z/4").unwrap();
        assert_eq!(vi_v_hom_counts(&z4, 1, 1).unwrap().0, 2);
    }

    fn rank_local(f: &Mat) -> usize {
        (0..=f.rows().min(f.cols()))
            .rev()
            .find(|&k| {
                combinations(f.rows(), k).iter().any(|rows| {
                    combinations(f.cols(), k)
                        .iter()
                        .any(|cols| f.ring().is_unit(f.submatrix(rows, cols).det_unchecked()))
                })
            })
            .unwrap()
    }

    #[test]
    fn vi_v_match_brute_force() {
        for spec in ["Z/2", "Z/4", "Z/6", "Z/3"] {
            let r = make_ring(spec).unwrap();
            for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
                let gs: Vec<Mat> = all_matrices(&r, a, b).collect();
                let (vi, v) = vi_v_hom_counts(&r, a, b).unwrap();
                let mut vi_brute = 0;
                let mut v_brute = 0;
                for f in all_matrices(&r, b, a) {
                    if gs.iter().any(|g| g.mul(&f).is_identity()) {
                        vi_brute += 1;
                    }
                    let regular = gs.iter().any(|g| f.mul(g).mul(&f) == f);
                    let ranks: Vec<usize> = f.local_parts().iter().map(rank_local).collect();
                    if regular && ranks.iter().all(|&k| k == ranks[0]) {
                        v_brute += 1;
                    }
                }
                assert_eq!((vi, v), (vi_brute, v_brute), "{spec} ({a},{b})");
            }
        }
    }

    #[test]
    fn forgetful_fibers_are_constant() {
        let r = make_ring("Z/4").unwrap();
        let vic = VicCategory::full(&r);
        let mut fibers: HashMap<Mat, usize> = HashMap::new();
        for g in vic.hom(1, 2).unwrap().iter() {
            *fibers.entry(g.f.clone()).or_default() += 1;
        }
        assert_eq!(fibers.len() as u64, vi_v_hom_counts(&r, 1, 2).unwrap().0);
        let sizes: BTreeSet<usize> = fibers.values().copied().collect();
        assert_eq!(sizes.len(), 1);
    }

    #[test]
    fn axioms() {
        let z2 = make_ring("Z/2").unwrap();
        let rep = check_axioms(&VicCategory::full(&z2), 3).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        let z4 = make_ring("Z/4").unwrap();
        let trivial = UnitSubgroup::new(&z4, [1]).unwrap();
        let rep = check_axioms(&make_vic_category(&z4, &trivial).unwrap(), 2).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        let z6 = make_ring("Z/6").unwrap();
        let rep = check_axioms(&VicCategory::full(&z6), 2).unwrap();
        assert!(rep.passed(), "{rep:#?}");
    }

    #[test]
    fn group_structure_examples() {
        let z2 = make_ring("Z/2").unwrap();
        let rep = group_structure_report(&VicCategory::full(&z2), 1, 2).unwrap();
        assert_eq!((rep.hom_count, rep.aut_complement, rep.aut_n), (6, 1, 6));
        let z4 = make_ring("Z/4").unwrap();
        let rep = group_structure_report(&VicCategory::full(&z4), 1, 2).unwrap();
        assert_eq!((rep.hom_count, rep.aut_complement, rep.aut_n), (48, 2, 96));
        assert!(rep.transitive && rep.stabilizer_is_complement_aut && rep.identity_holds);
    }

    #[test]
    fn complement_is_kernel_of_fp() {
        let z4 = make_ring("Z/4").unwrap();
        let cat = VicCategory::full(&z4);
        for g in cat.hom(1, 3).unwrap().iter() {
            let c = cat.complement_of(g);
            assert!(g.fp.mul(&c.f).is_zero());
            assert!(cat.is_member(&c));
            // the complement of the complement recovers the image of g
            let cc = cat.complement_of(&c);
            assert!(cat.left_divide(&cc, g).is_some());
        }
    }

    #[test]
    fn json_round_trip() {
        let r = make_ring("Z/2 x Z/3").unwrap();
        let cat = VicCategory::full(&r);
        for g in cat.hom(1, 2).unwrap().iter().step_by(7) {
            assert_eq!(&VicMor::from_json(None, &g.to_json()).unwrap(), g);
        }
    }
}
