//! Symplectic forms and the categories SI(R) and OSI(R).
//!
//! Objects are `n` hyperbolic pairs: `R^{2n}` with the standard form in the
//! interleaved basis `a_1, b_1, a_2, b_2, ...`.

use serde_json::{json, Value};

use crate::catcore::{default_budget, Category, Complemented, HomCache};
use crate::error::{Error, Result};
use crate::matrix::{all_matrices, summand_basis, Mat};
use crate::ring::{Elem, FiniteRing};

/// A nondegenerate alternating form given by its Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymplecticForm {
    gram: Mat,
}

impl SymplecticForm {
    pub fn new(gram: Mat) -> Result<SymplecticForm> {
        if !gram.is_square() || !gram.rows().is_multiple_of(2) {
            return Err(Error::Dimension(format!(
                "gram matrix must be square of even size, got {}x{}",
                gram.rows(),
                gram.cols()
            )));
        }
        let n = gram.rows();
        if (0..n).any(|i| gram.get(i, i) != 0) || gram.transpose() != gram.neg() {
            return Err(Error::Precondition("form is not alternating".into()));
        }
        if !gram.ring().is_unit(gram.det()?) {
            return Err(Error::Precondition("form is degenerate".into()));
        }
        Ok(SymplecticForm { gram })
    }

    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn ring(&self) -> &FiniteRing {
        self.gram.ring()
    }

    /// `ω(x, y)` for column vectors given as slices.
    pub fn eval(&self, x: &[Elem], y: &[Elem]) -> Elem {
        let r = self.ring();
        let n = self.dim();
        let mut acc = 0;
        for i in 0..n {
            if x[i] == 0 {
                continue;
            }
            for j in 0..n {
                let g = self.gram.get(i, j);
                if g != 0 && y[j] != 0 {
                    acc = r.add(acc, r.mul(x[i], r.mul(g, y[j])));
                }
            }
        }
        acc
    }

    pub fn to_json(&self) -> Value {
        json!({"ring": self.ring().spec(), "gram": self.gram.to_json()})
    }
}

/// The standard form on `R^{2n}` with blocks `[[0,1],[-1,0]]`.
pub fn standard_form(ring: &FiniteRing, n: usize) -> SymplecticForm {
    SymplecticForm {
        gram: std_gram(ring, n),
    }
}

fn std_gram(ring: &FiniteRing, n: usize) -> Mat {
    let mut g = Mat::zeros(ring, 2 * n, 2 * n);
    for i in 0..n {
        g.set(2 * i, 2 * i + 1, ring.one());
        g.set(2 * i + 1, 2 * i, ring.neg(ring.one()));
    }
    g
}

/// `ω(x, y)` for the standard form, without building the Gram matrix.
fn std_omega(r: &FiniteRing, x: &[Elem], y: &[Elem]) -> Elem {
    let mut acc = 0;
    for i in (0..x.len()).step_by(2) {
        acc = r.add(acc, r.sub(r.mul(x[i], y[i + 1]), r.mul(x[i + 1], y[i])));
    }
    acc
}

/// Whether `f^T * dst * f = src`.
pub fn symplectic_check(f: &Mat, src: &SymplecticForm, dst: &SymplecticForm) -> Result<bool> {
    if f.rows() != dst.dim() || f.cols() != src.dim() {
        return Err(Error::Dimension(format!(
            "map is {}x{} between forms of size {} and {}",
            f.rows(),
            f.cols(),
            src.dim(),
            dst.dim()
        )));
    }
    Ok(f.transpose().mul(dst.gram()).mul(f) == *src.gram())
}

/// Whether the columns `a_1, b_1, ...` of `basis` form a symplectic basis.
pub fn symplectic_basis_check(form: &SymplecticForm, basis: &Mat) -> Result<bool> {
    if !basis.is_square() || basis.rows() != form.dim() {
        return Err(Error::Dimension("a basis must be a square matrix".into()));
    }
    let std = standard_form(form.ring(), form.dim() / 2);
    symplectic_check(basis, &std, form)
}

/// A basis of `W^⊥` for the symplectic submodule spanned by the columns of `w`.
pub fn perp(form: &SymplecticForm, w: &Mat) -> Result<Mat> {
    if w.rows() != form.dim() {
        return Err(Error::Dimension("submodule lives in a different module".into()));
    }
    let r = form.ring();
    let restricted = w.transpose().mul(form.gram()).mul(w);
    let inv = if restricted.rows() == 0 {
        Some(restricted.clone())
    } else {
        restricted.inverse()?
    };
    let inv = inv.ok_or_else(|| Error::Precondition("submodule is degenerate".into()))?;
    let proj = w.mul(&inv).mul(&w.transpose()).mul(form.gram());
    let comp = Mat::identity(r, form.dim()).sub(&proj);
    let basis = summand_basis(&comp)?;
    if basis.cols() + w.cols() != form.dim() || !r.is_unit(w.hstack(&basis).det()?) {
        return Err(Error::Invariant("W and its perp do not split the module".into()));
    }
    Ok(basis)
}

/// Reorders a basis of a nondegenerate subspace into a symplectic basis.
pub fn symplectic_gram_schmidt(form: &SymplecticForm, basis: &Mat) -> Result<Mat> {
    let ring = form.ring().clone();
    let mut parts = Vec::new();
    for j in 0..ring.factor_count() {
        let fr = ring.factor(j);
        let local_form = SymplecticForm {
            gram: form.gram().project(j),
        };
        let mut vecs: Vec<Vec<Elem>> = (0..basis.cols())
            .map(|c| basis.column(c).iter().map(|&x| ring.project(x, j)).collect())
            .collect();
        let mut out: Vec<Vec<Elem>> = Vec::new();
        while !vecs.is_empty() {
            let a = vecs.remove(0);
            let k = vecs
                .iter()
                .position(|v| fr.is_unit(local_form.eval(&a, v)))
                .ok_or_else(|| Error::Precondition("subspace is degenerate".into()))?;
            let v = vecs.remove(k);
            let s = fr.inv(local_form.eval(&a, &v)).unwrap();
            let b: Vec<Elem> = v.iter().map(|&x| fr.mul(s, x)).collect();
            for y in vecs.iter_mut() {
                let (yb, ya) = (local_form.eval(y, &b), local_form.eval(y, &a));
                for i in 0..y.len() {
                    y[i] = fr.add(fr.sub(y[i], fr.mul(yb, a[i])), fr.mul(ya, b[i]));
                }
            }
            out.push(a);
            out.push(b);
        }
        let rows = basis.rows();
        let mut m = Mat::zeros(&fr, rows, out.len());
        for (c, v) in out.iter().enumerate() {
            for i in 0..rows {
                m.set(i, c, v[i]);
            }
        }
        parts.push(m);
    }
    Ok(Mat::lift(&ring, &parts))
}

/// A symplectic map `R^{2m} -> R^{2n}` between standard forms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SiMor {
    pub f: Mat,
}

impl SiMor {
    pub fn src(&self) -> usize {
        self.f.cols() / 2
    }

    pub fn dst(&self) -> usize {
        self.f.rows() / 2
    }
}

/// Every `f` with `f^T * dst * f = src`, found column by column.
pub fn symplectic_maps(src: &Mat, dst: &SymplecticForm, visit: &mut dyn FnMut(&Mat)) {
    let r = dst.ring().clone();
    let (k, n) = (src.rows(), dst.dim());
    let vectors: Vec<Vec<Elem>> = all_matrices(&r, n, 1).map(|v| v.entries().to_vec()).collect();
    let is_std = *dst.gram() == std_gram(&r, n / 2);
    let omega = |x: &[Elem], y: &[Elem]| {
        if is_std {
            std_omega(&r, x, y)
        } else {
            dst.eval(x, y)
        }
    };
    let mut cols: Vec<&Vec<Elem>> = Vec::with_capacity(k);
    fn rec<'a>(
        vectors: &'a [Vec<Elem>],
        src: &Mat,
        cols: &mut Vec<&'a Vec<Elem>>,
        omega: &dyn Fn(&[Elem], &[Elem]) -> Elem,
        visit: &mut dyn FnMut(&Mat),
        r: &FiniteRing,
        n: usize,
    ) {
        let c = cols.len();
        if c == src.rows() {
            let mut m = Mat::zeros(r, n, c);
            for (j, v) in cols.iter().enumerate() {
                for i in 0..n {
                    m.set(i, j, v[i]);
                }
            }
            visit(&m);
            return;
        }
        for v in vectors {
            if cols
                .iter()
                .enumerate()
                .all(|(j, u)| omega(u, v) == src.get(j, c))
                && omega(v, v) == src.get(c, c)
            {
                cols.push(v);
                rec(vectors, src, cols, omega, visit, r, n);
                cols.pop();
            }
        }
    }
    rec(&vectors, src, &mut cols, &omega, visit, &r, n);
}

#[derive(Debug)]
pub struct SiCategory {
    ring: FiniteRing,
    budget: u64,
    cache: HomCache<SiMor>,
}

pub fn make_si_category(ring: &FiniteRing) -> SiCategory {
    SiCategory {
        ring: ring.clone(),
        budget: default_budget(),
        cache: HomCache::default(),
    }
}

impl SiCategory {
    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn form(&self, n: usize) -> SymplecticForm {
        standard_form(&self.ring, n)
    }
}

impl Category for SiCategory {
    type Mor = SiMor;

    fn name(&self) -> String {
        format!("SI({})", self.ring.spec())
    }

    fn source(&self, f: &SiMor) -> usize {
        f.src()
    }

    fn target(&self, f: &SiMor) -> usize {
        f.dst()
    }

    fn identity(&self, n: usize) -> SiMor {
        SiMor {
            f: Mat::identity(&self.ring, 2 * n),
        }
    }

    fn compose(&self, g: &SiMor, f: &SiMor) -> SiMor {
        SiMor { f: g.f.mul(&f.f) }
    }

    fn is_member(&self, f: &SiMor) -> bool {
        f.f.ring().same(&self.ring)
            && f.f.rows().is_multiple_of(2)
            && f.f.cols().is_multiple_of(2)
            && symplectic_check(&f.f, &self.form(f.src()), &self.form(f.dst())).unwrap_or(false)
    }

    fn for_each_hom(&self, m: usize, n: usize, visit: &mut dyn FnMut(&SiMor)) {
        if m > n {
            return;
        }
        let src = std_gram(&self.ring, m);
        symplectic_maps(&src, &self.form(n), &mut |f| visit(&SiMor { f: f.clone() }));
    }

    fn payload_json(&self, f: &SiMor) -> Value {
        f.f.entries_json()
    }

    fn budget(&self) -> u64 {
        self.budget
    }

    fn cache(&self) -> &HomCache<SiMor> {
        &self.cache
    }

    fn inverse(&self, f: &SiMor) -> Option<SiMor> {
        if f.src() != f.dst() {
            return None;
        }
        let n = f.src();
        let om = std_gram(&self.ring, n);
        // Ω^{-1} = -Ω
        let g = SiMor {
            f: om.neg().mul(&f.f.transpose()).mul(&om),
        };
        (g.f.mul(&f.f).is_identity() && f.f.mul(&g.f).is_identity()).then_some(g)
    }
}

impl Complemented for SiCategory {
    fn symmetric(&self) -> bool {
        true
    }

    fn sum(&self, f: &SiMor, g: &SiMor) -> SiMor {
        SiMor {
            f: f.f.block_diag(&g.f),
        }
    }

    fn block_embedding(&self, n: usize, positions: &[usize]) -> Option<SiMor> {
        let mut f = Mat::zeros(&self.ring, 2 * n, 2 * positions.len());
        for (j, &p) in positions.iter().enumerate() {
            if p >= n || (0..j).any(|i| positions[i] == p) {
                return None;
            }
            f.set(2 * p, 2 * j, self.ring.one());
            f.set(2 * p + 1, 2 * j + 1, self.ring.one());
        }
        Some(SiMor { f })
    }

    fn glue(&self, a: &SiMor, b: &SiMor) -> Option<SiMor> {
        if a.dst() != b.dst() {
            return None;
        }
        let om = std_gram(&self.ring, a.dst());
        if !a.f.transpose().mul(&om).mul(&b.f).is_zero() {
            return None;
        }
        let g = SiMor { f: a.f.hstack(&b.f) };
        self.is_member(&g).then_some(g)
    }

    fn complement_of(&self, f: &SiMor) -> SiMor {
        let n = f.dst();
        if f.src() == n {
            return self.initial(n);
        }
        let form = self.form(n);
        let basis = perp(&form, &f.f).expect("image of a symplectic map is nondegenerate");
        SiMor {
            f: symplectic_gram_schmidt(&form, &basis).expect("perp is nondegenerate"),
        }
    }

    fn left_divide(&self, a: &SiMor, b: &SiMor) -> Option<SiMor> {
        if a.dst() != b.dst() {
            return None;
        }
        let (k, n) = (a.src(), a.dst());
        let phi = std_gram(&self.ring, k)
            .neg()
            .mul(&a.f.transpose())
            .mul(&std_gram(&self.ring, n))
            .mul(&b.f);
        let c = SiMor { f: phi };
        (self.is_member(&c) && a.f.mul(&c.f) == b.f).then_some(c)
    }
}

/// `f = f1 * f2` with `f1` row-adapted and symplectic from `(R^{2d}, λ)`, and
/// `f2: (R^{2d}, std) -> (R^{2d}, λ)` an isomorphism.
pub fn osi_factor(f: &SiMor) -> Result<(Mat, Mat, SymplecticForm)> {
    let r = f.f.ring();
    let d = f.src();
    let std_d = standard_form(r, d);
    if !symplectic_check(&f.f, &std_d, &standard_form(r, f.dst()))? {
        return Err(Error::Invariant("map is not symplectic".into()));
    }
    let (g1, g2) = f.f.transpose().factor_surjection()?;
    let (f1, f2) = (g1.transpose(), g2.transpose());
    let f2inv = f2.inverse()?.expect("factor is invertible");
    let lambda = SymplecticForm::new(f2inv.transpose().mul(std_d.gram()).mul(&f2inv))?;
    if f1.mul(&f2) != f.f || !symplectic_check(&f1, &lambda, &standard_form(r, f.dst()))? {
        return Err(Error::Invariant("symplectic factorization does not recompose".into()));
    }
    Ok((f1, f2, lambda))
}

/// OSI(R): symplectic maps out of standard forms whose matrix is row-adapted.
#[derive(Debug)]
pub struct OsiCategory {
    si: SiCategory,
    cache: HomCache<SiMor>,
}

pub fn make_osi_category(ring: &FiniteRing) -> OsiCategory {
    OsiCategory {
        si: make_si_category(ring),
        cache: HomCache::default(),
    }
}

impl OsiCategory {
    pub fn ring(&self) -> &FiniteRing {
        self.si.ring()
    }
}

impl Category for OsiCategory {
    type Mor = SiMor;

    fn name(&self) -> String {
        format!("OSI({})", self.ring().spec())
    }

    fn source(&self, f: &SiMor) -> usize {
        f.src()
    }

    fn target(&self, f: &SiMor) -> usize {
        f.dst()
    }

    fn identity(&self, n: usize) -> SiMor {
        self.si.identity(n)
    }

    fn compose(&self, g: &SiMor, f: &SiMor) -> SiMor {
        self.si.compose(g, f)
    }

    fn is_member(&self, f: &SiMor) -> bool {
        self.si.is_member(f) && f.f.row_adapted().is_some()
    }

    fn for_each_hom(&self, m: usize, n: usize, visit: &mut dyn FnMut(&SiMor)) {
        self.si.for_each_hom(m, n, &mut |f| {
            if f.f.row_adapted().is_some() {
                visit(f);
            }
        });
    }

    fn payload_json(&self, f: &SiMor) -> Value {
        f.f.entries_json()
    }

    fn budget(&self) -> u64 {
        self.si.budget()
    }

    fn cache(&self) -> &HomCache<SiMor> {
        &self.cache
    }

    fn inverse(&self, f: &SiMor) -> Option<SiMor> {
        f.f.is_identity().then(|| f.clone())
    }
}

/// Row-adapted symplectic maps `(R^{2d}, λ) -> (R^{2n}, std)`.
pub fn osi_prime_hom(lambda: &SymplecticForm, n: usize) -> Vec<Mat> {
    let mut out = Vec::new();
    symplectic_maps(lambda.gram(), &standard_form(lambda.ring(), n), &mut |f| {
        if f.row_adapted().is_some() {
            out.push(f.clone());
        }
    });
    out.sort();
    out
}

/// Every symplectic form on `R^{2d}`.
pub fn all_forms(ring: &FiniteRing, d: usize) -> Vec<SymplecticForm> {
    let n = 2 * d;
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    all_matrices(ring, 1, pairs.len())
        .filter_map(|v| {
            let mut g = Mat::zeros(ring, n, n);
            for (&(i, j), &x) in pairs.iter().zip(v.entries()) {
                g.set(i, j, x);
                g.set(j, i, ring.neg(x));
            }
            SymplecticForm::new(g).ok()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catcore::{check_axioms, group_structure_report};
    use crate::ring::make_ring;

    fn m(r: &FiniteRing, rows: &[&[i64]]) -> Mat {
        Mat::from_ints(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn standard_forms() {
        let z2 = make_ring("Z/2").unwrap();
        assert_eq!(*standard_form(&z2, 1).gram(), m(&z2, &[&[0, 1], &[1, 0]]));
        let z4 = make_ring("Z/4").unwrap();
        assert_eq!(*standard_form(&z4, 1).gram(), m(&z4, &[&[0, 1], &[3, 0]]));
        assert_eq!(standard_form(&z4, 0).dim(), 0);
        assert!(SymplecticForm::new(m(&z4, &[&[0, 2], &[2, 0]])).is_err());
        assert!(SymplecticForm::new(m(&z4, &[&[1, 1], &[3, 0]])).is_err());
    }

    #[test]
    fn basis_checks() {
        let z4 = make_ring("Z/4").unwrap();
        let form = standard_form(&z4, 2);
        assert!(symplectic_basis_check(&form, &Mat::identity(&z4, 4)).unwrap());
        let swap = m(&z4, &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        assert!(!symplectic_basis_check(&form, &swap).unwrap());
    }

    #[test]
    fn perp_examples() {
        let z2 = make_ring("Z/2").unwrap();
        let form = standard_form(&z2, 2);
        let w = m(&z2, &[&[1, 0], &[0, 1], &[0, 0], &[0, 0]]);
        let p = perp(&form, &w).unwrap();
        assert_eq!(p, m(&z2, &[&[0, 0], &[0, 0], &[1, 0], &[0, 1]]));
        // brute-force annihilator
        let annihilator: Vec<Mat> = all_matrices(&z2, 4, 1)
            .filter(|v| w.transpose().mul(form.gram()).mul(v).is_zero())
            .collect();
        assert_eq!(annihilator.len(), 4);
        for v in &annihilator {
            assert!(v.get(0, 0) == 0 && v.get(1, 0) == 0);
        }
        assert!(perp(&form, &m(&z2, &[&[1], &[0], &[0], &[0]])).is_err());
    }

    #[test]
    fn perp_is_an_involution() {
        let z4 = make_ring("Z/4").unwrap();
        let cat = make_si_category(&z4);
        let form = standard_form(&z4, 2);
        for f in cat.hom(1, 2).unwrap().iter().step_by(37) {
            let p = perp(&form, &f.f).unwrap();
            let pp = perp(&form, &p).unwrap();
            // same span as the image of f
            assert_eq!(summand_basis(&pp).unwrap(), summand_basis(&f.f).unwrap());
        }
    }

    #[test]
    fn hom_counts() {
        let z2 = make_ring("Z/2").unwrap();
        let cat = make_si_category(&z2);
        assert_eq!(cat.aut(1).unwrap().len(), 6);
        assert_eq!(cat.hom(1, 2).unwrap().len(), 120);
        assert_eq!(cat.aut(2).unwrap().len(), 720);
        assert_eq!(cat.hom(1, 3).unwrap().len(), 2016);
        assert!(cat.hom(2, 1).unwrap().is_empty());
        let osi = make_osi_category(&z2);
        assert_eq!(osi.hom(1, 2).unwrap().len(), 20);
        assert_eq!(osi.hom(1, 3).unwrap().len(), 336);
    }

    #[test]
    fn hom_matches_brute_force() {
        let z2 = make_ring("Z/2").unwrap();
        let cat = make_si_category(&z2);
        let brute: Vec<SiMor> = all_matrices(&z2, 4, 2)
            .map(|f| SiMor { f })
            .filter(|f| cat.is_member(f))
            .collect();
        assert_eq!(*cat.hom(1, 2).unwrap(), brute);
        // every symplectic map is injective
        for f in &brute {
            let kernel = all_matrices(&z2, 2, 1).filter(|v| f.f.mul(v).is_zero()).count();
            assert_eq!(kernel, 1);
        }
    }

    #[test]
    fn osi_factor_examples() {
        let z2 = make_ring("Z/2").unwrap();
        let swap = SiMor {
            f: m(&z2, &[&[0, 1], &[1, 0]]),
        };
        let (f1, f2, lambda) = osi_factor(&swap).unwrap();
        assert!(f1.is_identity());
        assert_eq!(f2, swap.f);
        assert_eq!(lambda, standard_form(&z2, 1));
        let cat = make_si_category(&z2);
        let can = cat.canonical(1, 2);
        let (f1, f2, lambda) = osi_factor(&can).unwrap();
        assert_eq!((f1, f2.is_identity(), lambda), (can.f.clone(), true, standard_form(&z2, 1)));
    }

    #[test]
    fn osi_factor_is_unique() {
        for spec in ["Z/2", "Z/3"] {
            let r = make_ring(spec).unwrap();
            let cat = make_si_category(&r);
            let autos: Vec<Mat> = all_matrices(&r, 2, 2)
                .filter(|a| r.is_unit(a.det().unwrap()))
                .collect();
            for f in cat.hom(1, 2).unwrap().iter() {
                let (f1, f2, _) = osi_factor(f).unwrap();
                assert!(f1.row_adapted().is_some());
                let candidates: Vec<&Mat> = autos
                    .iter()
                    .filter(|a| {
                        let a_inv = a.inverse().unwrap().unwrap();
                        f.f.mul(&a_inv).row_adapted().is_some()
                    })
                    .collect();
                assert_eq!(candidates, vec![&f2]);
            }
        }
    }

    #[test]
    fn osi_prime_counting_identity() {
        for spec in ["Z/2", "Z/3", "Z/4"] {
            let r = make_ring(spec).unwrap();
            let cat = make_si_category(&r);
            for n in 1..=2 {
                if spec == "Z/4" && n == 2 {
                    continue;
                }
                let total = cat.hom_count(1, n);
                let mut sum = 0;
                for lambda in all_forms(&r, 1) {
                    let mut iso = 0u64;
                    symplectic_maps(standard_form(&r, 1).gram(), &lambda, &mut |_| iso += 1);
                    sum += iso * osi_prime_hom(&lambda, n).len() as u64;
                }
                assert_eq!(sum, total, "{spec} n={n}");
            }
        }
    }

    #[test]
    fn axioms() {
        let z2 = make_ring("Z/2").unwrap();
        let rep = check_axioms(&make_si_category(&z2), 2).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        let z3 = make_ring("Z/3").unwrap();
        let rep = check_axioms(&make_si_category(&z3), 1).unwrap();
        assert!(rep.passed(), "{rep:#?}");
    }

    #[test]
    fn group_structure() {
        let z2 = make_ring("Z/2").unwrap();
        let rep = group_structure_report(&make_si_category(&z2), 1, 2).unwrap();
        assert_eq!((rep.hom_count, rep.aut_complement, rep.aut_n), (120, 6, 720));
        assert!(rep.transitive && rep.stabilizer_is_complement_aut);
    }

    #[test]
    fn complements_are_symplectic_bases_of_perp() {
        let z6 = make_ring("Z/6").unwrap();
        let cat = make_si_category(&z6);
        let form = standard_form(&z6, 2);
        for f in cat.hom(1, 2).unwrap().iter().step_by(101) {
            let c = cat.complement_of(f);
            assert!(cat.is_member(&c));
            assert!(f.f.transpose().mul(form.gram()).mul(&c.f).is_zero());
            assert!(cat.glue(f, &c).is_some());
        }
    }
}
