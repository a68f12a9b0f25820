//! Initial terms with respect to the total orders on OVIC and OSI morphisms.

use std::cmp::Ordering;

use ficat::catcore::Category;
use ficat::si::{OsiCategory, SiMor};
use ficat::vic::{OvicCategory, VicMor};
use ficat::wporder::{osi_total_cmp, ovic_total_cmp};
use ficat::{Error, Result};
use serde::Serialize;

use crate::field::Field;
use crate::linalg::{Echelon, SVec};
use crate::module::{Module, Representable, Submodule};

/// Categories whose hom sets out of a fixed source carry the module order `≤`.
pub trait Ordered: Category {
    fn total_cmp(&self, a: &Self::Mor, b: &Self::Mor) -> Ordering;
}

impl Ordered for OvicCategory {
    fn total_cmp(&self, a: &VicMor, b: &VicMor) -> Ordering {
        ovic_total_cmp(a, b).expect("OVIC morphisms with a common source")
    }
}

impl Ordered for OsiCategory {
    fn total_cmp(&self, a: &SiMor, b: &SiMor) -> Ordering {
        osi_total_cmp(&a.f, &b.f).expect("OSI morphisms with a common source")
    }
}

/// Basis indices at rank `n` from the `≤`-largest down.
pub fn descending_basis<C: Ordered, F: Field>(rep: &Representable<'_, C, F>, n: usize) -> Result<Vec<usize>> {
    let basis = rep.basis(n)?;
    let cat = rep.category();
    let mut idx: Vec<usize> = (0..basis.len()).collect();
    idx.sort_by(|&a, &b| cat.total_cmp(&basis[b], &basis[a]));
    Ok(idx)
}

/// Leading basis index and coefficient of `x`; `None` for `x = 0`.
pub fn init_of<C: Ordered, F: Field>(
    rep: &Representable<'_, C, F>,
    n: usize,
    x: &[(usize, F::E)],
) -> Result<Option<(usize, F::E)>> {
    let basis = rep.basis(n)?;
    let cat = rep.category();
    if x.iter().any(|(i, _)| *i >= basis.len()) {
        return Err(Error::Dimension(format!("index out of range at rank {n}")));
    }
    Ok(x
        .iter()
        .max_by(|(a, _), (b, _)| cat.total_cmp(&basis[*a], &basis[*b]))
        .cloned())
}

/// Per rank, the basis indices spanning `init(N)`, ascending.
pub fn init_module<C: Ordered, F: Field>(sub: &Submodule<'_, '_, C, F>) -> Result<Vec<Vec<usize>>> {
    let rep = sub.parent();
    let k = rep.field();
    (0..=sub.truncation())
        .map(|n| {
            // relabel so that echelon pivots are the largest terms
            let order = descending_basis(rep, n)?;
            let mut pos = vec![0; order.len()];
            for (p, &i) in order.iter().enumerate() {
                pos[i] = p;
            }
            let mut e = Echelon::new(k);
            for row in &sub.span(n).rows {
                let mut v: SVec<F::E> = row.iter().map(|(i, x)| (pos[*i], x.clone())).collect();
                v.sort_by_key(|(i, _)| *i);
                e.insert(&v);
            }
            let mut out: Vec<usize> = e.pivots().into_iter().map(|p| order[p]).collect();
            out.sort_unstable();
            Ok(out)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct RankGap {
    pub rank: usize,
    pub init_dims: (usize, usize),
    pub init_equal: bool,
    pub submodule_equal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct InitGapReport {
    pub ranks: Vec<RankGap>,
    pub truncation: usize,
    /// Equal initial modules imply equal submodules at every rank.
    pub implication_holds: bool,
    /// Some rank has a strictly smaller initial span for the smaller submodule.
    pub strict_witness: Option<usize>,
}

/// Compares `N ⊆ M` rank by rank through their initial modules.
pub fn init_gap_check<C: Ordered, F: Field>(
    n_sub: &Submodule<'_, '_, C, F>,
    m_sub: &Submodule<'_, '_, C, F>,
) -> Result<InitGapReport> {
    if n_sub.truncation() != m_sub.truncation() {
        return Err(Error::Precondition("truncations differ".into()));
    }
    if !n_sub.is_contained_in(m_sub) {
        return Err(Error::Precondition("containment violation: N is not inside M".into()));
    }
    let (in_n, in_m) = (init_module(n_sub)?, init_module(m_sub)?);
    let ranks: Vec<RankGap> = (0..=n_sub.truncation())
        .map(|r| RankGap {
            rank: r,
            init_dims: (in_n[r].len(), in_m[r].len()),
            init_equal: in_n[r] == in_m[r],
            submodule_equal: n_sub.span(r).dim() == m_sub.span(r).dim(),
        })
        .collect();
    let all_init = ranks.iter().all(|g| g.init_equal);
    let all_sub = ranks.iter().all(|g| g.submodule_equal);
    Ok(InitGapReport {
        implication_holds: !all_init || all_sub,
        strict_witness: ranks.iter().find(|g| g.init_dims.0 < g.init_dims.1).map(|g| g.rank),
        truncation: n_sub.truncation(),
        ranks,
    })
}
