//! Dense matrices over a [`FiniteRing`].
//!
//! A morphism `R^m -> R^n` is an `n x m` matrix acting on column vectors.

use std::cmp::Ordering;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{make_ring, Elem, FiniteRing};

/// Largest size accepted by [`Mat::det`].
pub const MAX_DET_SIZE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    ring: FiniteRing,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// The pivot columns `S_c` of a column-adapted matrix (0-based), per local factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColumnProfile {
    /// Common pivot set; `None` when the local factors disagree.
    pub s: Option<Vec<usize>>,
    pub factors: Vec<Vec<usize>>,
}

impl ColumnProfile {
    /// Pivots rendered 1-based, one list per local factor.
    pub fn one_based(&self) -> Vec<Vec<usize>> {
        self.factors
            .iter()
            .map(|s| s.iter().map(|i| i + 1).collect())
            .collect()
    }
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl Mat {
    pub fn new(ring: &FiniteRing, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &x in &data {
            ring.check(x)?;
        }
        Ok(Mat::from_raw(ring, rows, cols, data))
    }

    /// Unchecked constructor for entries already known to be valid.
    pub(crate) fn from_raw(ring: &FiniteRing, rows: usize, cols: usize, data: Vec<Elem>) -> Mat {
        debug_assert_eq!(data.len(), rows * cols);
        Mat {
            ring: ring.clone(),
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from integer rows, reducing every entry into the ring.
    pub fn from_ints(ring: &FiniteRing, rows: &[Vec<i64>]) -> Result<Mat> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&k| ring.from_int(k)).collect();
        Ok(Mat::from_raw(ring, rows.len(), cols, data))
    }

    pub fn zeros(ring: &FiniteRing, rows: usize, cols: usize) -> Mat {
        Mat::from_raw(ring, rows, cols, vec![0; rows * cols])
    }

    pub fn identity(ring: &FiniteRing, n: usize) -> Mat {
        let mut m = Mat::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    /// The `i`-th standard basis column of `R^n`.
    pub fn basis_vector(ring: &FiniteRing, n: usize, i: usize) -> Mat {
        let mut m = Mat::zeros(ring, n, 1);
        m.data[i] = ring.one();
        m
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn same_ring(&self, other: &Mat) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch(
                self.ring.spec().into(),
                other.ring.spec().into(),
            ))
        }
    }

    /// Checked product `self * other`.
    pub fn mat_mul(&self, other: &Mat) -> Result<Mat> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul(other))
    }

    /// Product without checks; panics on a dimension mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let r = &self.ring;
        let mut data = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let slot = &mut data[i * other.cols + j];
                    *slot = r.add(*slot, r.mul(a, other.get(k, j)));
                }
            }
        }
        Mat::from_raw(r, self.rows, other.cols, data)
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = &self.ring;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| r.add(a, b))
            .collect();
        Mat::from_raw(r, self.rows, self.cols, data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let r = &self.ring;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| r.sub(a, b))
            .collect();
        Mat::from_raw(r, self.rows, self.cols, data)
    }

    pub fn neg(&self) -> Mat {
        self.map(|r, x| r.neg(x))
    }

    pub fn scale(&self, c: Elem) -> Mat {
        self.map(|r, x| r.mul(c, x))
    }

    fn map(&self, f: impl Fn(&FiniteRing, Elem) -> Elem) -> Mat {
        let data = self.data.iter().map(|&x| f(&self.ring, x)).collect();
        Mat::from_raw(&self.ring, self.rows, self.cols, data)
    }

    pub fn transpose(&self) -> Mat {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Mat::from_raw(&self.ring, self.cols, self.rows, data)
    }

    /// Submatrix on the given row and column indices (in the given order).
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j));
            }
        }
        Mat::from_raw(&self.ring, rows.len(), cols.len(), data)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Mat::from_raw(&self.ring, self.rows, cols, data)
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat::from_raw(&self.ring, self.rows + other.rows, self.cols, data)
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(&self.ring, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { self.ring.one() } else { 0 })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Determinant by cofactor expansion along rows, memoised over column subsets.
    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        if self.rows > MAX_DET_SIZE {
            return Err(Error::TooLarge(self.rows));
        }
        Ok(self.det_unchecked())
    }

    pub(crate) fn det_unchecked(&self) -> Elem {
        let n = self.rows;
        let r = &self.ring;
        // minor[mask] = det of rows n-|mask|.. on columns in mask
        let mut minor = vec![0 as Elem; 1 << n];
        minor[0] = r.one();
        for mask in 1usize..(1 << n) {
            let k = mask.count_ones() as usize;
            let row = n - k;
            let mut acc = 0;
            let mut sign_pos = true;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let a = self.get(row, j);
                if a != 0 {
                    let t = r.mul(a, minor[mask & !(1 << j)]);
                    acc = if sign_pos { r.add(acc, t) } else { r.sub(acc, t) };
                }
                sign_pos = !sign_pos;
            }
            minor[mask] = acc;
        }
        minor[(1 << n) - 1]
    }

    /// Inverse via the adjugate, when the determinant is a unit.
    pub fn inverse(&self) -> Result<Option<Mat>> {
        let d = self.det()?;
        let Some(dinv) = self.ring.inv(d) else {
            return Ok(None);
        };
        let n = self.rows;
        let r = &self.ring;
        let mut inv = Mat::zeros(r, n, n);
        let all: Vec<usize> = (0..n).collect();
        for i in 0..n {
            for j in 0..n {
                // (i, j) entry of the adjugate is the (j, i) cofactor
                let rows: Vec<usize> = all.iter().copied().filter(|&x| x != j).collect();
                let cols: Vec<usize> = all.iter().copied().filter(|&x| x != i).collect();
                let c = self.submatrix(&rows, &cols).det_unchecked();
                let c = if (i + j) % 2 == 0 { c } else { r.neg(c) };
                inv.set(i, j, r.mul(dinv, c));
            }
        }
        Ok(Some(inv))
    }

    /// Component of the matrix in the `j`-th local factor.
    pub fn project(&self, j: usize) -> Mat {
        let f = self.ring.factor(j);
        let data = self.data.iter().map(|&x| self.ring.project(x, j)).collect();
        Mat::from_raw(&f, self.rows, self.cols, data)
    }

    /// Recombines local components into a matrix over `ring`.
    pub fn lift(ring: &FiniteRing, parts: &[Mat]) -> Mat {
        let (rows, cols) = (parts[0].rows, parts[0].cols);
        let mut comps = vec![0; parts.len()];
        let data = (0..rows * cols)
            .map(|idx| {
                for (c, p) in comps.iter_mut().zip(parts) {
                    *c = p.data[idx];
                }
                ring.lift(&comps)
            })
            .collect();
        Mat::from_raw(ring, rows, cols, data)
    }

    /// Local components, one per factor.
    pub fn local_parts(&self) -> Vec<Mat> {
        (0..self.ring.factor_count()).map(|j| self.project(j)).collect()
    }

    /// Pivot columns for a matrix over a local ring, if column-adapted.
    pub fn column_adapted_local(&self) -> Option<Vec<usize>> {
        let r = &self.ring;
        let mut s = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let si = (0..self.cols).find(|&j| r.is_unit(self.get(i, j)))?;
            if s.last().is_some_and(|&prev| prev >= si) {
                return None;
            }
            if (0..self.rows).any(|k| self.get(k, si) != if k == i { r.one() } else { 0 }) {
                return None;
            }
            s.push(si);
        }
        Some(s)
    }

    pub fn column_adapted(&self) -> Option<ColumnProfile> {
        let factors = if self.ring.is_local() {
            vec![self.column_adapted_local()?]
        } else {
            self.local_parts()
                .iter()
                .map(Mat::column_adapted_local)
                .collect::<Option<Vec<_>>>()?
        };
        let s = factors
            .iter()
            .all(|f| f == &factors[0])
            .then(|| factors[0].clone());
        Some(ColumnProfile { s, factors })
    }

    /// Column-adapted profile of the transpose.
    pub fn row_adapted(&self) -> Option<ColumnProfile> {
        self.transpose().column_adapted()
    }

    /// Lexicographically least column subset whose maximal minor is a unit (local ring).
    fn unit_minor_columns(&self) -> Option<Vec<usize>> {
        combinations(self.cols, self.rows)
            .into_iter()
            .find(|cols| self.ring.is_unit(self.select_columns(cols).det_unchecked()))
    }

    /// Surjectivity: some maximal minor is a unit in every local factor.
    pub fn is_surjective(&self) -> bool {
        self.rows <= MAX_DET_SIZE
            && self
                .local_parts()
                .iter()
                .all(|p| p.unit_minor_columns().is_some())
    }

    /// Splits a surjection as `f = f2 * f1` with `f1` column-adapted and `f2` invertible.
    pub fn factor_surjection(&self) -> Result<(Mat, Mat)> {
        if self.rows > MAX_DET_SIZE {
            return Err(Error::TooLarge(self.rows));
        }
        let mut f1s = Vec::new();
        let mut f2s = Vec::new();
        for (j, part) in self.local_parts().into_iter().enumerate() {
            let cols = part.unit_minor_columns().ok_or_else(|| {
                Error::NotSurjective(format!(
                    "no unit {}x{} minor in local factor {j}",
                    self.rows, self.rows
                ))
            })?;
            let f2 = part.select_columns(&cols);
            let h = f2.inverse()?.expect("unit minor is invertible");
            f1s.push(h.mul(&part));
            f2s.push(f2);
        }
        Ok((Mat::lift(&self.ring, &f1s), Mat::lift(&self.ring, &f2s)))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.rows)
            .map(|i| Value::from(self.row(i).iter().map(|&x| self.ring.elem_to_json(x)).collect::<Vec<_>>()))
            .collect();
        json!({"ring": self.ring.spec(), "rows": self.rows, "cols": self.cols, "entries": rows})
    }

    /// Entry rows only, e.g. `[[2,1]]`.
    pub fn entries_json(&self) -> Value {
        self.to_json()["entries"].clone()
    }

    /// Parses either the full matrix object or a bare array of rows over `ring`.
    pub fn from_json(ring: Option<&FiniteRing>, v: &Value) -> Result<Mat> {
        let (ring, rows_v, shape) = match v {
            Value::Object(obj) => {
                let ring = match obj.get("ring").and_then(Value::as_str) {
                    Some(spec) => make_ring(spec)?,
                    None => ring
                        .cloned()
                        .ok_or_else(|| Error::Parse("matrix without a ring".into()))?,
                };
                let entries = obj
                    .get("entries")
                    .ok_or_else(|| Error::Parse("matrix without entries".into()))?;
                let shape = match (obj.get("rows"), obj.get("cols")) {
                    (Some(r), Some(c)) => Some((
                        r.as_u64().ok_or_else(|| Error::Parse("bad rows".into()))? as usize,
                        c.as_u64().ok_or_else(|| Error::Parse("bad cols".into()))? as usize,
                    )),
                    _ => None,
                };
                (ring, entries, shape)
            }
            Value::Array(_) => (
                ring.cloned()
                    .ok_or_else(|| Error::Parse("matrix without a ring".into()))?,
                v,
                None,
            ),
            other => return Err(Error::Parse(format!("not a matrix: {other}"))),
        };
        let rows = rows_v
            .as_array()
            .ok_or_else(|| Error::Parse("entries must be an array of rows".into()))?;
        let mut data = Vec::new();
        let mut cols = None;
        for row in rows {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse("matrix row must be an array".into()))?;
            if *cols.get_or_insert(row.len()) != row.len() {
                return Err(Error::Dimension("ragged rows".into()));
            }
            for x in row {
                data.push(ring.elem_from_json(x)?);
            }
        }
        let (nr, nc) = (rows.len(), cols.unwrap_or(0));
        let (nr, nc) = match shape {
            Some((r, c)) if r * c == 0 && data.is_empty() => (r, c),
            Some((r, c)) if (r, c) != (nr, nc) => {
                return Err(Error::Dimension(format!(
                    "declared {r}x{c} but entries are {nr}x{nc}"
                )))
            }
            _ => (nr, nc),
        };
        Mat::new(&ring, nr, nc, data)
    }
}

impl PartialOrd for Mat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shape first, then entries row-major.
impl Ord for Mat {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rows, self.cols, &self.data).cmp(&(other.rows, other.cols, &other.data))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat[{}]{:?}", self.ring.spec(), self.to_rows())
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&x| self.ring.elem_to_json(x).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Every matrix of the given shape, in lexicographic order of entries.
pub fn all_matrices(ring: &FiniteRing, rows: usize, cols: usize) -> impl Iterator<Item = Mat> + '_ {
    let len = rows * cols;
    let q = ring.size();
    let total = (q as u64).checked_pow(len as u32).expect("matrix space too large");
    (0..total).map(move |mut code| {
        let mut data = vec![0; len];
        for slot in data.iter_mut().rev() {
            *slot = (code % q as u64) as Elem;
            code /= q as u64;
        }
        Mat::from_raw(ring, rows, cols, data)
    })
}

/// Canonical basis of a free direct summand given by the column span of `gens`.
///
/// Per local factor: generators independent modulo the maximal ideal are chosen
/// greedily, then normalised so that the lexicographically least rows with a unit
/// minor form the identity. The result depends only on the span.
pub fn summand_basis(gens: &Mat) -> Result<Mat> {
    let ring = gens.ring().clone();
    let mut parts = Vec::new();
    for part in gens.local_parts() {
        parts.push(local_summand_basis(&part)?);
    }
    let rank = parts[0].cols;
    if parts.iter().any(|p| p.cols != rank) {
        return Err(Error::Precondition(
            "span has different ranks in different local factors".into(),
        ));
    }
    Ok(Mat::lift(&ring, &parts))
}

fn local_summand_basis(gens: &Mat) -> Result<Mat> {
    let r = gens.ring();
    let p = r.residue_prime().expect("local factor");
    let n = gens.rows();
    let mut chosen = Vec::new();
    let mut reduced: Vec<Vec<u32>> = Vec::new(); // residue echelon rows, with pivot
    let mut pivots: Vec<usize> = Vec::new();
    for j in 0..gens.cols() {
        let mut v: Vec<u32> = gens.column(j).iter().map(|&x| x % p).collect();
        for (row, &piv) in reduced.iter().zip(&pivots) {
            let c = v[piv];
            if c != 0 {
                for (a, &b) in v.iter_mut().zip(row) {
                    *a = (*a + p - (c * b) % p) % p;
                }
            }
        }
        if let Some(piv) = v.iter().position(|&x| x != 0) {
            let inv = mod_inv_small(v[piv], p);
            for a in v.iter_mut() {
                *a = (*a * inv) % p;
            }
            reduced.push(v);
            pivots.push(piv);
            chosen.push(j);
        }
    }
    let basis = gens.select_columns(&chosen);
    let k = chosen.len();
    // the chosen columns must span a summand of rank k
    let rows = combinations(n, k)
        .into_iter()
        .find(|rows| r.is_unit(basis.select_rows(rows).det_unchecked()))
        .ok_or_else(|| Error::Precondition("column span is not a free summand".into()))?;
    let pivot_block = basis.select_rows(&rows).inverse()?.expect("unit minor");
    let normal = basis.mul(&pivot_block);
    // every generator must lie in the span of the basis
    for j in 0..gens.cols() {
        let col = gens.select_columns(&[j]);
        let coeffs = col.select_rows(&rows);
        if normal.mul(&coeffs) != col {
            return Err(Error::Precondition("column span is not a free summand".into()));
        }
    }
    Ok(normal)
}

fn mod_inv_small(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| (a * b) % p == 1).expect("nonzero residue mod a prime")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    fn m(ring: &FiniteRing, rows: &[&[i64]]) -> Mat {
        Mat::from_ints(ring, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn products() {
        let z16 = make_ring("Z/16").unwrap();
        let a = m(&z16, &[&[2, 1]]);
        let g = m(&z16, &[&[2, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.mat_mul(&g).unwrap(), m(&z16, &[&[4, 2, 1]]));

        let z4 = make_ring("Z/4").unwrap();
        let x = m(&z4, &[&[1, 2], &[3, 0]]);
        assert_eq!(Mat::identity(&z4, 2).mat_mul(&x).unwrap(), x);
        assert_eq!(m(&z4, &[&[2, 1]]).scale(3), m(&z4, &[&[2, 3]]));
        assert!(matches!(x.mat_mul(&a), Err(Error::RingMismatch(..))));
        assert!(matches!(a.mat_mul(&a), Err(Error::Dimension(_))));
    }

    #[test]
    fn determinants() {
        let z4 = make_ring("Z/4").unwrap();
        assert_eq!(Mat::identity(&z4, 5).det().unwrap(), 1);
        assert_eq!(m(&z4, &[&[1, 2], &[0, 3]]).det().unwrap(), 3);
        assert_eq!(m(&z4, &[&[0, 1], &[1, 0]]).det().unwrap(), 3);
        assert_eq!(Mat::zeros(&z4, 0, 0).det().unwrap(), 1);
        assert!(matches!(m(&z4, &[&[1, 2]]).det(), Err(Error::NotSquare(1, 2))));
        assert!(matches!(Mat::identity(&z4, 9).det(), Err(Error::TooLarge(9))));
    }

    fn leibniz(a: &Mat) -> Elem {
        // permutation-sum oracle
        let r = a.ring();
        let n = a.rows();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0;
        fn rec(a: &Mat, r: &FiniteRing, k: usize, perm: &mut Vec<usize>, sign: bool, total: &mut Elem) {
            let n = perm.len();
            if k == n {
                let prod = (0..n).fold(r.one(), |acc, i| r.mul(acc, a.get(i, perm[i])));
                *total = if sign { r.add(*total, prod) } else { r.sub(*total, prod) };
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(a, r, k + 1, perm, if i == k { sign } else { !sign }, total);
                perm.swap(k, i);
            }
        }
        rec(a, r, 0, &mut perm, true, &mut total);
        total
    }

    #[test]
    fn det_matches_leibniz_and_is_multiplicative() {
        let z4 = make_ring("Z/4").unwrap();
        let all: Vec<Mat> = all_matrices(&z4, 2, 2).collect();
        for a in &all {
            assert_eq!(a.det().unwrap(), leibniz(a));
        }
        for a in &all {
            for b in &all {
                let lhs = a.mul(b).det().unwrap();
                assert_eq!(lhs, z4.mul(a.det().unwrap(), b.det().unwrap()));
            }
        }
        let z6 = make_ring("Z/2 x Z/3").unwrap();
        for a in all_matrices(&z6, 3, 3).step_by(997) {
            assert_eq!(a.det().unwrap(), leibniz(&a));
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        for spec in ["Z/4", "Z/6", "Z/2 x Z/2"] {
            let r = make_ring(spec).unwrap();
            for a in all_matrices(&r, 2, 2) {
                match a.inverse().unwrap() {
                    Some(b) => {
                        assert!(a.mul(&b).is_identity());
                        assert!(b.mul(&a).is_identity());
                    }
                    None => assert!(!r.is_unit(a.det().unwrap())),
                }
            }
        }
    }

    #[test]
    fn column_adapted_examples() {
        let z16 = make_ring("Z/16").unwrap();
        let p = m(&z16, &[&[2, 1]]).column_adapted().unwrap();
        assert_eq!(p.s, Some(vec![1]));
        assert_eq!(p.one_based(), vec![vec![2]]);
        assert!(m(&z16, &[&[3, 1]]).column_adapted().is_none());
        let id = Mat::identity(&z16, 3).column_adapted().unwrap();
        assert_eq!(id.s, Some(vec![0, 1, 2]));
        // product ring: components may differ
        let z6 = make_ring("Z/6").unwrap();
        let p = m(&z6, &[&[3, 1]]).column_adapted().unwrap();
        assert_eq!(p.factors, vec![vec![0], vec![1]]);
        assert_eq!(p.s, None);
        assert!(m(&z6, &[&[2, 3]]).column_adapted().is_none());
    }

    // Definition-level oracle: try every increasing subset.
    fn adapted_oracle(a: &Mat) -> Option<Vec<usize>> {
        let r = a.ring();
        combinations(a.cols(), a.rows()).into_iter().find(|s| {
            s.iter().enumerate().all(|(i, &si)| {
                (0..a.rows()).all(|k| a.get(k, si) == if k == i { r.one() } else { 0 })
                    && (0..si).all(|j| !r.is_unit(a.get(i, j)))
            })
        })
    }

    #[test]
    fn column_adapted_matches_definition() {
        for spec in ["Z/2", "Z/4", "Z/3"] {
            let r = make_ring(spec).unwrap();
            for (rows, cols) in [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3)] {
                for a in all_matrices(&r, rows, cols) {
                    assert_eq!(a.column_adapted_local(), adapted_oracle(&a), "{a:?}");
                }
            }
        }
    }

    #[test]
    fn adapted_maps_compose() {
        for spec in ["Z/2", "Z/4", "Z/6"] {
            let r = make_ring(spec).unwrap();
            let adapted = |rows, cols| -> Vec<Mat> {
                all_matrices(&r, rows, cols)
                    .filter(|a| a.column_adapted().is_some())
                    .collect()
            };
            for (a, b, c) in [(1, 2, 3), (1, 1, 2), (2, 2, 3), (1, 2, 2), (2, 3, 3)] {
                let fs = adapted(a, b);
                let gs = adapted(b, c);
                for f in &fs {
                    let pf = f.column_adapted().unwrap();
                    for g in &gs {
                        let pg = g.column_adapted().unwrap();
                        let h = f.mul(g);
                        let ph = h.column_adapted().expect("composite is adapted");
                        // S_c(fg) = S_c(g) indexed by S_c(f)
                        for ((sh, sf), sg) in ph.factors.iter().zip(&pf.factors).zip(&pg.factors) {
                            let expect: Vec<usize> = sf.iter().map(|&t| sg[t]).collect();
                            assert_eq!(sh, &expect);
                        }
                    }
                }
            }
        }
    }

    fn gl(r: &FiniteRing, n: usize) -> Vec<Mat> {
        all_matrices(r, n, n)
            .filter(|a| r.is_unit(a.det().unwrap()))
            .collect()
    }

    #[test]
    fn factor_surjection_examples() {
        let z4 = make_ring("Z/4").unwrap();
        let (f1, f2) = m(&z4, &[&[2, 3]]).factor_surjection().unwrap();
        assert_eq!((f1, f2), (m(&z4, &[&[2, 1]]), m(&z4, &[&[3]])));
        let z6 = make_ring("Z/6").unwrap();
        let (f1, f2) = m(&z6, &[&[3, 5]]).factor_surjection().unwrap();
        assert_eq!((f1, f2), (m(&z6, &[&[3, 1]]), m(&z6, &[&[5]])));
        let id = Mat::identity(&z6, 3);
        assert_eq!(id.factor_surjection().unwrap(), (id.clone(), id));
        assert!(matches!(
            m(&z4, &[&[2, 0]]).factor_surjection(),
            Err(Error::NotSurjective(_))
        ));
    }

    #[test]
    fn factorization_is_unique_by_brute_force() {
        for spec in ["Z/4", "Z/6"] {
            let r = make_ring(spec).unwrap();
            for n in 1..=2 {
                let group = gl(&r, n);
                for np in n..=3 {
                    for f in all_matrices(&r, n, np).filter(Mat::is_surjective) {
                        let (f1, f2) = f.factor_surjection().unwrap();
                        assert!(f1.column_adapted().is_some());
                        assert!(r.is_unit(f2.det().unwrap()));
                        assert_eq!(f2.mul(&f1), f);
                        let matches: Vec<_> = group
                            .iter()
                            .filter(|g| {
                                let h = g.inverse().unwrap().unwrap().mul(&f);
                                h.column_adapted().is_some()
                            })
                            .collect();
                        assert_eq!(matches, vec![&f2]);
                    }
                }
            }
        }
    }

    #[test]
    fn surjectivity_matches_brute_force() {
        // f surjective iff it has a right inverse
        let z4 = make_ring("Z/4").unwrap();
        let rights: Vec<Mat> = all_matrices(&z4, 2, 1).collect();
        for f in all_matrices(&z4, 1, 2) {
            let brute = rights.iter().any(|g| f.mul(g).is_identity());
            assert_eq!(f.is_surjective(), brute);
        }
    }

    #[test]
    fn summand_basis_is_canonical() {
        let z4 = make_ring("Z/4").unwrap();
        let gens = m(&z4, &[&[0, 2], &[2, 1], &[0, 0]]);
        let b = summand_basis(&gens).unwrap();
        assert_eq!(b, m(&z4, &[&[2], &[1], &[0]]));
        // a different generating set of the same span
        let b2 = summand_basis(&m(&z4, &[&[2], &[1], &[0]]).scale(3)).unwrap();
        assert_eq!(b, b2);
        assert!(summand_basis(&m(&z4, &[&[2], &[0]])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = make_ring("Z/2 x Z/3").unwrap();
        let a = m(&r, &[&[1, 2, 5], &[0, 3, 4]]);
        assert_eq!(Mat::from_json(None, &a.to_json()).unwrap(), a);
        let bare = serde_json::json!([[1, 2, 5], [0, 3, 4]]);
        assert_eq!(Mat::from_json(Some(&r), &bare).unwrap(), a);
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(
            combinations(4, 2),
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(combinations(2, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(1, 2).is_empty());
    }
}
