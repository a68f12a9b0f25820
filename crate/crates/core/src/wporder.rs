//! Word posets and the orders on OVIC and OSI morphisms out of a fixed source.
//!
//! Ring elements, and vectors of them, are compared numerically by index.
//! For product rings every key is a tuple of local keys: `≼` holds componentwise
//! and `≤` compares the local keys lexicographically.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::ring::{Elem, FiniteRing};
use crate::si::{standard_form, symplectic_check};
use crate::vic::VicMor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WordOrder {
    /// Subsequence embedding.
    Higman,
    /// Subsequence embedding in which every letter of the longer word also
    /// occurs at or before its position among the embedded letters.
    Tilde,
}

/// Leftmost increasing embedding of `w1` into `w2` with equal letters.
pub fn greedy_embedding<T: PartialEq>(w1: &[T], w2: &[T]) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(w1.len());
    let mut j = 0;
    for a in w1 {
        while j < w2.len() && w2[j] != *a {
            j += 1;
        }
        if j == w2.len() {
            return None;
        }
        out.push(j);
        j += 1;
    }
    Some(out)
}

fn tilde_covered<T: PartialEq>(w1: &[T], w2: &[T], emb: &[usize]) -> bool {
    (0..w2.len()).all(|j| (0..w1.len()).any(|i| emb[i] <= j && w1[i] == w2[j]))
}

/// Decides `w1 ≤ w2`.
///
/// The leftmost embedding is pointwise minimal, so it satisfies the covering
/// condition of the tilde order whenever any embedding does.
pub fn word_leq<T: PartialEq>(order: WordOrder, w1: &[T], w2: &[T]) -> bool {
    match greedy_embedding(w1, w2) {
        None => false,
        Some(emb) => order == WordOrder::Higman || tilde_covered(w1, w2, &emb),
    }
}

/// A letter: a pair of optional vectors, `None` standing for the marker ♠.
pub type Letter = (Option<Vec<Elem>>, Option<Vec<Elem>>);

fn require_local_or_split<'a>(ring: &'a FiniteRing) -> impl Iterator<Item = usize> + 'a {
    0..ring.factor_count()
}

/// Encoding of a local OVIC morphism: position `i` is `(♠,♠)` on a pivot column,
/// otherwise `(row i of f, column i of fp)`.
pub fn ovic_word_local(f: &VicMor) -> Result<Vec<Letter>> {
    let s = f
        .fp
        .column_adapted_local()
        .ok_or_else(|| Error::Precondition("second component is not column-adapted".into()))?;
    Ok((0..f.dst())
        .map(|i| {
            if s.contains(&i) {
                (None, None)
            } else {
                (Some(f.f.row(i).to_vec()), Some(f.fp.column(i)))
            }
        })
        .collect())
}

/// Order key of an OVIC morphism: one word per local factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OvicOrderKey {
    pub n: usize,
    pub words: Vec<Vec<Letter>>,
}

pub fn ovic_key(f: &VicMor) -> Result<OvicOrderKey> {
    let words = require_local_or_split(f.ring())
        .map(|j| ovic_word_local(&f.project(j)))
        .collect::<Result<_>>()?;
    Ok(OvicOrderKey { n: f.dst(), words })
}

fn same_source(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Dimension(format!("source ranks differ: {a} vs {b}")))
    }
}

/// `f ≼ g`: `g` is reachable from `f` by insertion steps.
pub fn ovic_preceq(f: &VicMor, g: &VicMor) -> Result<bool> {
    same_source(f.src(), g.src())?;
    let (kf, kg) = (ovic_key(f)?, ovic_key(g)?);
    Ok(kf
        .words
        .iter()
        .zip(&kg.words)
        .all(|(a, b)| word_leq(WordOrder::Tilde, a, b)))
}

// Pivot set, columns of fp, then free rows of f.
type LocalOvicKey = (Vec<usize>, Vec<Vec<Elem>>, Vec<Vec<Elem>>);

fn local_ovic_total_key(f: &VicMor) -> Result<LocalOvicKey> {
    let s = f
        .fp
        .column_adapted_local()
        .ok_or_else(|| Error::Precondition("second component is not column-adapted".into()))?;
    let cols = (0..f.dst()).map(|j| f.fp.column(j)).collect();
    let rows = (0..f.dst())
        .filter(|i| !s.contains(i))
        .map(|i| f.f.row(i).to_vec())
        .collect();
    Ok((s, cols, rows))
}

/// The total order `≤`: target rank, pivots, columns of `fp`, free rows of `f`.
pub fn ovic_total_cmp(f: &VicMor, g: &VicMor) -> Result<Ordering> {
    same_source(f.src(), g.src())?;
    let by_rank = f.dst().cmp(&g.dst());
    if by_rank != Ordering::Equal {
        // still validate both arguments
        ovic_key(f)?;
        ovic_key(g)?;
        return Ok(by_rank);
    }
    for j in require_local_or_split(f.ring()) {
        let a = local_ovic_total_key(&f.project(j))?;
        let b = local_ovic_total_key(&g.project(j))?;
        let c = a.cmp(&b);
        if c != Ordering::Equal {
            return Ok(c);
        }
    }
    Ok(Ordering::Equal)
}

/// The insertion morphism `R^n -> R^{n+1}` over a local ring.
///
/// `fp` is the `n x n` identity with `v̂` inserted as column `ell`, where `v̂`
/// carries `v_i` at position `s_i`; `phi` has its free row `ell` equal to `e_k`.
/// Indices are 1-based and `ell` may be `n + 1` (append).
pub fn ovic_insertion(
    ring: &FiniteRing,
    n: usize,
    k: usize,
    ell: usize,
    s: &[usize],
    v: &[Elem],
) -> Result<VicMor> {
    if !ring.is_local() {
        return Err(Error::Precondition("insertion maps are built over local rings".into()));
    }
    if !(1 <= k && k <= ell && ell <= n + 1 && k <= n) {
        return Err(Error::Precondition(format!(
            "need 1 <= k <= ell <= n + 1 and k <= n, got k={k}, ell={ell}, n={n}"
        )));
    }
    if s.len() != v.len() || s.windows(2).any(|w| w[0] >= w[1]) || s.iter().any(|&x| x < 1 || x > n) {
        return Err(Error::Precondition("S must be increasing in 1..=n and match v".into()));
    }
    let ell_hat = s.iter().filter(|&&x| x < ell).count();
    for (i, &vi) in v.iter().enumerate() {
        ring.check(vi)?;
        if i >= ell_hat && ring.is_unit(vi) {
            return Err(Error::Precondition(format!(
                "v_{} must be a non-unit since s_{} >= ell",
                i + 1,
                i + 1
            )));
        }
    }
    let mut vhat = vec![0; n];
    for (&si, &vi) in s.iter().zip(v) {
        vhat[si - 1] = vi;
    }
    let (l0, k0) = (ell - 1, k - 1);
    // new column index of original column c
    let new_pos = |c: usize| if c < l0 { c } else { c + 1 };
    let mut fp = Mat::zeros(ring, n, n + 1);
    let mut phi = Mat::zeros(ring, n + 1, n);
    for c in 0..n {
        fp.set(c, new_pos(c), ring.one());
        fp.set(c, l0, vhat[c]);
        phi.set(new_pos(c), c, ring.one());
        phi.set(new_pos(c), k0, ring.sub(phi.get(new_pos(c), k0), vhat[c]));
    }
    phi.set(l0, k0, ring.one());
    let out = VicMor { f: phi, fp };
    if !out.fp.mul(&out.f).is_identity() || out.fp.column_adapted_local().is_none() {
        return Err(Error::Invariant("insertion map is not an OVIC morphism".into()));
    }
    Ok(out)
}

/// A morphism `phi` with `g = phi ∘ f`, assembled from insertion steps.
pub fn ovic_phi_for(f: &VicMor, g: &VicMor) -> Result<VicMor> {
    if !ovic_preceq(f, g)? {
        return Err(Error::Precondition("f is not below g".into()));
    }
    let ring = f.ring().clone();
    let parts = (0..ring.factor_count())
        .map(|j| local_phi_for(&f.project(j), &g.project(j)))
        .collect::<Result<Vec<_>>>()?;
    let phi = VicMor::lift(&ring, &parts);
    if phi.then_after(f) != *g {
        return Err(Error::Invariant("phi does not carry f to g".into()));
    }
    Ok(phi)
}

fn local_phi_for(f: &VicMor, g: &VicMor) -> Result<VicMor> {
    let ring = f.ring().clone();
    let (wf, wg) = (ovic_word_local(f)?, ovic_word_local(g)?);
    let emb = greedy_embedding(&wf, &wg).ok_or_else(|| Error::Invariant("no embedding".into()))?;
    let mut cur = f.clone();
    let mut phi = VicMor {
        f: Mat::identity(&ring, f.dst()),
        fp: Mat::identity(&ring, f.dst()),
    };
    for j in 0..wg.len() {
        if emb.contains(&j) {
            continue;
        }
        // positions before j are already in place, so copy the earliest equal letter
        let k = (0..j)
            .find(|&p| wg[p] == wg[j])
            .ok_or_else(|| Error::Invariant("insertion has no witness".into()))?;
        let s: Vec<usize> = cur
            .fp
            .column_adapted_local()
            .expect("intermediate morphisms stay adapted")
            .iter()
            .map(|x| x + 1)
            .collect();
        let v = cur.fp.column(k);
        let step = ovic_insertion(&ring, cur.dst(), k + 1, j + 1, &s, &v)?;
        cur = step.then_after(&cur);
        phi = step.then_after(&phi);
    }
    Ok(phi)
}

/// Encoding of a local row-adapted map: pair `i` is `(r_{2i-1}, r_{2i})` with
/// pivot rows replaced by ♠.
pub fn osi_word_local(f: &Mat) -> Result<Vec<Letter>> {
    let s = f
        .transpose()
        .column_adapted_local()
        .ok_or_else(|| Error::Precondition("map is not row-adapted".into()))?;
    let row = |i: usize| (!s.contains(&i)).then(|| f.row(i).to_vec());
    Ok((0..f.rows() / 2).map(|i| (row(2 * i), row(2 * i + 1))).collect())
}

fn check_osi_pair(f: &Mat, g: &Mat) -> Result<()> {
    same_source(f.cols(), g.cols())?;
    if !f.rows().is_multiple_of(2) || !g.rows().is_multiple_of(2) {
        return Err(Error::Dimension("targets must have even dimension".into()));
    }
    Ok(())
}

/// `f ≼ g`: `f` is `g` with some row pairs deleted, none containing a pivot row of `g`.
pub fn osi_preceq(f: &Mat, g: &Mat) -> Result<bool> {
    check_osi_pair(f, g)?;
    for j in 0..f.ring().factor_count() {
        let (a, b) = (osi_word_local(&f.project(j))?, osi_word_local(&g.project(j))?);
        if !word_leq(WordOrder::Higman, &a, &b) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The total order: target rank, pivot rows, then all rows.
pub fn osi_total_cmp(f: &Mat, g: &Mat) -> Result<Ordering> {
    check_osi_pair(f, g)?;
    let key = |m: &Mat| -> Result<(Vec<usize>, Vec<Vec<Elem>>)> {
        let s = m
            .transpose()
            .column_adapted_local()
            .ok_or_else(|| Error::Precondition("map is not row-adapted".into()))?;
        Ok((s, m.to_rows()))
    };
    let mut parts = Vec::new();
    for j in 0..f.ring().factor_count() {
        parts.push((key(&f.project(j))?, key(&g.project(j))?));
    }
    let by_rank = f.rows().cmp(&g.rows());
    if by_rank != Ordering::Equal {
        return Ok(by_rank);
    }
    Ok(parts
        .iter()
        .map(|(a, b)| a.cmp(b))
        .find(|c| *c != Ordering::Equal)
        .unwrap_or(Ordering::Equal))
}

/// The symplectic `phi` with `g = phi * f` for `f ≼ g`.
pub fn osi_insertion_phi(f: &Mat, g: &Mat) -> Result<Mat> {
    if !osi_preceq(f, g)? {
        return Err(Error::Precondition("f is not below g".into()));
    }
    let ring = f.ring().clone();
    let parts = (0..ring.factor_count())
        .map(|j| local_osi_phi(&f.project(j), &g.project(j)))
        .collect::<Result<Vec<_>>>()?;
    let phi = Mat::lift(&ring, &parts);
    let (n, np) = (f.rows() / 2, g.rows() / 2);
    if phi.mul(f) != *g
        || !symplectic_check(&phi, &standard_form(&ring, n), &standard_form(&ring, np))?
    {
        return Err(Error::Invariant("insertion map is not a symplectic lift".into()));
    }
    Ok(phi)
}

fn local_osi_phi(f: &Mat, g: &Mat) -> Result<Mat> {
    let ring = f.ring().clone();
    let (wf, wg) = (osi_word_local(f)?, osi_word_local(g)?);
    let emb = greedy_embedding(&wf, &wg).ok_or_else(|| Error::Invariant("no embedding".into()))?;
    let s = f.transpose().column_adapted_local().expect("row-adapted");
    let (rows_f, rows_g) = (f.rows(), g.rows());
    let kept: Vec<usize> = emb.iter().flat_map(|&p| [2 * p, 2 * p + 1]).collect();
    let mut phi = Mat::zeros(&ring, rows_g, rows_f);
    for (k, &jk) in kept.iter().enumerate() {
        phi.set(jk, k, ring.one());
    }
    for j in (0..rows_g).filter(|j| !kept.contains(j)) {
        // r̂_j carries row j of g at the pivot positions of f
        for (t, &st) in s.iter().enumerate() {
            phi.set(j, st, g.get(j, t));
        }
    }
    Ok(phi)
}

/// Brute-force references for the decision procedures above.
pub mod oracle {
    use std::collections::HashSet;

    use super::*;
    use crate::matrix::combinations;

    /// Tilde/Higman order by trying every increasing map.
    pub fn word_leq_exhaustive<T: PartialEq>(order: WordOrder, w1: &[T], w2: &[T]) -> bool {
        combinations(w2.len(), w1.len()).into_iter().any(|emb| {
            w1.iter().zip(&emb).all(|(a, &j)| w2[j] == *a)
                && (order == WordOrder::Higman || tilde_covered(w1, w2, &emb))
        })
    }

    /// One insertion step on a local OVIC morphism, straight from the definition:
    /// copy free column `k` of `fp` and row `k` of `f` to position `ell`, then
    /// recompute the dependent rows. Indices are 0-based; `ell` may equal `n`.
    pub fn insertion_step(f: &VicMor, k: usize, ell: usize) -> VicMor {
        let r = f.ring().clone();
        let (m, n) = (f.src(), f.dst());
        let at = |c: usize| if c < ell { c } else { c + 1 };
        let mut fp = Mat::zeros(&r, m, n + 1);
        let mut ff = Mat::zeros(&r, n + 1, m);
        for c in 0..n {
            for i in 0..m {
                fp.set(i, at(c), f.fp.get(i, c));
                ff.set(at(c), i, f.f.get(c, i));
            }
        }
        for i in 0..m {
            fp.set(i, ell, f.fp.get(i, k));
            ff.set(ell, i, f.f.get(k, i));
        }
        let s = fp.column_adapted_local().expect("insertion keeps fp adapted");
        let free: Vec<usize> = (0..=n).filter(|c| !s.contains(c)).collect();
        for (i, &si) in s.iter().enumerate() {
            for col in 0..m {
                let mut acc = if i == col { r.one() } else { 0 };
                for &j in &free {
                    acc = r.sub(acc, r.mul(fp.get(i, j), ff.get(j, col)));
                }
                ff.set(si, col, acc);
            }
        }
        VicMor { f: ff, fp }
    }

    /// Morphisms of rank `n + 1` one insertion step above `f` (local ring).
    pub fn successors(f: &VicMor) -> Vec<VicMor> {
        let n = f.dst();
        let s = f.fp.column_adapted_local().expect("adapted");
        let mut out = Vec::new();
        for k in (0..n).filter(|k| !s.contains(k)) {
            for ell in k..=n {
                out.push(insertion_step(f, k, ell));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every morphism reachable from `f` by insertion steps, up to target rank `max_n`.
    pub fn reachable(f: &VicMor, max_n: usize) -> HashSet<VicMor> {
        let mut seen: HashSet<VicMor> = HashSet::from([f.clone()]);
        let mut frontier = vec![f.clone()];
        while let Some(h) = frontier.pop() {
            if h.dst() >= max_n {
                continue;
            }
            for s in successors(&h) {
                if seen.insert(s.clone()) {
                    frontier.push(s);
                }
            }
        }
        seen
    }

    /// `f ≼ g` for OSI by trying every set of deletable row pairs of `g`.
    pub fn osi_preceq_by_deletion(f: &Mat, g: &Mat) -> bool {
        if f.cols() != g.cols() || f.rows() > g.rows() {
            return false;
        }
        (0..f.ring().factor_count()).all(|j| {
            let (f, g) = (f.project(j), g.project(j));
            let Some(sg) = g.transpose().column_adapted_local() else {
                return false;
            };
            let (n, np) = (f.rows() / 2, g.rows() / 2);
            let deletable: Vec<usize> = (0..np)
                .filter(|&i| !sg.contains(&(2 * i)) && !sg.contains(&(2 * i + 1)))
                .collect();
            combinations(deletable.len(), np - n).into_iter().any(|pick| {
                let gone: Vec<usize> = pick.iter().map(|&t| deletable[t]).collect();
                let keep: Vec<usize> = (0..g.rows()).filter(|r| !gone.contains(&(r / 2))).collect();
                g.select_rows(&keep) == f
            })
        })
    }
}
