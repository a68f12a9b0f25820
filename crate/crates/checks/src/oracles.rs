//! Independent brute-force references used by the criteria.

use ficat::catcore::Category;
use ficat::vic::VicCategory;
use ficat::{FiniteRing, Mat, Result};

/// Exact rank of a small integer matrix by fraction-free elimination.
pub fn bareiss_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev: i128 = 1;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for j in c + 1..cols {
                m[r][j] = (m[rank][c] * m[r][j] - m[r][c] * m[rank][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

/// Words on `0..n` of every length: injective ones, optionally increasing only.
pub fn words(n: usize, increasing: bool) -> Vec<Vec<Vec<usize>>> {
    let mut cells = vec![vec![vec![]]];
    for p in 1..=n {
        let mut next = Vec::new();
        for w in &cells[p - 1] {
            for a in 0..n {
                if w.contains(&a) || (increasing && w.last().is_some_and(|&l| l >= a)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        cells.push(next);
    }
    cells
}

/// Homology of the augmented complex of words, deleting letters with alternating sign.
pub fn word_complex_homology(cells: &[Vec<Vec<usize>>]) -> Vec<usize> {
    let boundary_rank = |p: usize| -> usize {
        if p == 0 || p >= cells.len() {
            return 0;
        }
        let pos: std::collections::HashMap<&Vec<usize>, usize> =
            cells[p - 1].iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut m = vec![vec![0i64; cells[p].len()]; cells[p - 1].len()];
        for (j, w) in cells[p].iter().enumerate() {
            for i in 0..w.len() {
                let mut v = w.clone();
                v.remove(i);
                m[pos[&v]][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        bareiss_rank(&m)
    };
    (0..cells.len())
        .map(|p| cells[p].len() - boundary_rank(p) - boundary_rank(p + 1))
        .collect()
}

pub fn derangements(n: usize) -> usize {
    let mut d = vec![1usize, 0];
    for i in 2..=n {
        d.push((i - 1) * (d[i - 1] + d[i - 2]));
    }
    d[n]
}

/// Number of `g` in `GL_n(R)` with `g^{-1} f` column-adapted.
pub fn adapted_factorizations(ring: &FiniteRing, f: &Mat) -> Result<usize> {
    let gl = VicCategory::full(ring).hom(f.rows(), f.rows())?;
    Ok(gl
        .iter()
        .filter(|g| g.fp.mul(f).column_adapted().is_some())
        .count())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bareiss_small() {
        assert_eq!(bareiss_rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(bareiss_rank(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]), 3);
        assert_eq!(bareiss_rank(&[]), 0);
    }

    #[test]
    fn simplex_is_acyclic() {
        for n in 1..=4 {
            assert!(word_complex_homology(&words(n, true)).iter().all(|&h| h == 0));
        }
    }

    #[test]
    fn derangement_numbers() {
        assert_eq!((0..6).map(derangements).collect::<Vec<_>>(), [1, 0, 1, 2, 9, 44]);
    }
}
