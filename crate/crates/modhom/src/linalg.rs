//! Sparse vectors and Gaussian elimination over a [`Field`].

use std::collections::BTreeMap;

use crate::field::Field;

/// Sorted `(index, value)` pairs with no zero values.
pub type SVec<E> = Vec<(usize, E)>;

pub fn unit<F: Field>(k: &F, i: usize) -> SVec<F::E> {
    vec![(i, k.one())]
}

pub fn scaled<F: Field>(k: &F, c: &F::E, v: &[(usize, F::E)]) -> SVec<F::E> {
    if k.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, k.mul(c, x))).collect()
}

/// `a + c * b`.
pub fn axpy<F: Field>(k: &F, a: &[(usize, F::E)], c: &F::E, b: &[(usize, F::E)]) -> SVec<F::E> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            let x = k.mul(c, &b[j].1);
            if !k.is_zero(&x) {
                out.push((b[j].0, x));
            }
            j += 1;
        } else {
            let x = k.add(&a[i].1, &k.mul(c, &b[j].1));
            if !k.is_zero(&x) {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Collects unsorted terms, summing repeated indices.
pub fn collect<F: Field>(k: &F, terms: impl IntoIterator<Item = (usize, F::E)>) -> SVec<F::E> {
    let mut acc: BTreeMap<usize, F::E> = BTreeMap::new();
    for (i, x) in terms {
        let e = acc.entry(i).or_insert_with(|| k.zero());
        *e = k.add(e, &x);
    }
    acc.into_iter().filter(|(_, x)| !k.is_zero(x)).collect()
}

/// Applies a matrix given by its columns to a sparse vector.
pub fn apply<F: Field>(k: &F, cols: &[SVec<F::E>], v: &[(usize, F::E)]) -> SVec<F::E> {
    collect(
        k,
        v.iter()
            .flat_map(|(j, c)| cols[*j].iter().map(move |(i, x)| (*i, k.mul(c, x)))),
    )
}

/// `a * b` for matrices given by columns.
pub fn compose<F: Field>(k: &F, a: &[SVec<F::E>], b: &[SVec<F::E>]) -> Vec<SVec<F::E>> {
    b.iter().map(|col| apply(k, a, col)).collect()
}

/// Row echelon form built one vector at a time; each stored row has leading
/// coefficient one at its key.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    k: F,
    rows: BTreeMap<usize, SVec<F::E>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(k: &F) -> Echelon<F> {
        Echelon {
            k: k.clone(),
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    /// Residue of `v` after clearing every pivot position it meets.
    pub fn reduce(&self, v: &[(usize, F::E)]) -> SVec<F::E> {
        let k = &self.k;
        let mut w: SVec<F::E> = v.to_vec();
        let mut pos = 0;
        while pos < w.len() {
            let (i, c) = w[pos].clone();
            match self.rows.get(&i) {
                Some(row) => {
                    w = axpy(k, &w, &k.neg(&c), row);
                }
                None => pos += 1,
            }
        }
        w
    }

    pub fn contains(&self, v: &[(usize, F::E)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, F::E)]) -> bool {
        let w = self.reduce(v);
        match w.first() {
            None => false,
            Some((i, c)) => {
                let inv = self.k.inv(c);
                let i = *i;
                self.rows.insert(i, scaled(&self.k, &inv, &w));
                true
            }
        }
    }

    /// Fully reduced basis, pivots ascending.
    pub fn rref(&self) -> Rref<F> {
        let k = &self.k;
        let mut done: BTreeMap<usize, SVec<F::E>> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            for (&q, other) in &done {
                if let Some(c) = r.iter().find(|(i, _)| *i == q).map(|(_, c)| c.clone()) {
                    r = axpy(k, &r, &k.neg(&c), other);
                }
            }
            done.insert(p, r);
        }
        Rref {
            k: k.clone(),
            pivots: done.keys().copied().collect(),
            rows: done.into_values().collect(),
        }
    }
}

/// Reduced row echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Rref<F: Field> {
    k: F,
    pub pivots: Vec<usize>,
    pub rows: Vec<SVec<F::E>>,
}

impl<F: Field> Rref<F> {
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Coordinates of a vector known to lie in the span.
    pub fn coordinates(&self, v: &[(usize, F::E)]) -> SVec<F::E> {
        let mut out = Vec::new();
        let mut j = 0;
        for (t, &p) in self.pivots.iter().enumerate() {
            while j < v.len() && v[j].0 < p {
                j += 1;
            }
            if j < v.len() && v[j].0 == p {
                out.push((t, v[j].1.clone()));
            }
        }
        out
    }

    /// Rebuilds a vector from coordinates.
    pub fn combine(&self, coords: &[(usize, F::E)]) -> SVec<F::E> {
        let mut out = Vec::new();
        for (t, c) in coords {
            out = axpy(&self.k, &out, c, &self.rows[*t]);
        }
        out
    }
}

pub fn rank<F: Field>(k: &F, cols: &[SVec<F::E>]) -> usize {
    let mut e = Echelon::new(k);
    for c in cols {
        e.insert(c);
    }
    e.rank()
}

/// Basis of the kernel of the matrix with the given columns.
pub fn kernel<F: Field>(k: &F, cols: &[SVec<F::E>]) -> Vec<SVec<F::E>> {
    // pivot row -> (reduced column, combination of original columns)
    let mut rows: BTreeMap<usize, (SVec<F::E>, SVec<F::E>)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        let mut w = col.clone();
        let mut tag = unit(k, j);
        let mut pos = 0;
        while pos < w.len() {
            let (i, c) = w[pos].clone();
            match rows.get(&i) {
                Some((row, rt)) => {
                    let m = k.neg(&c);
                    w = axpy(k, &w, &m, row);
                    tag = axpy(k, &tag, &m, rt);
                }
                None => pos += 1,
            }
        }
        match w.first() {
            None => out.push(tag),
            Some((i, c)) => {
                let inv = k.inv(c);
                let i = *i;
                rows.insert(i, (scaled(k, &inv, &w), scaled(k, &inv, &tag)));
            }
        }
    }
    out
}
