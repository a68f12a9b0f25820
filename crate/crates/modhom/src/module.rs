//! Modules truncated at a maximal rank, representables and their submodules.

use ficat::catcore::Category;
use ficat::{Error, Result};

use crate::field::Field;
use crate::linalg::{apply, unit, Echelon, Rref, SVec};

/// A functor from the category to vector spaces, known up to rank `truncation`.
pub trait Module: Sync {
    type C: Category;
    type F: Field;

    fn category(&self) -> &Self::C;
    fn field(&self) -> &Self::F;
    fn truncation(&self) -> usize;
    fn dim(&self, n: usize) -> Result<usize>;
    /// Matrix of `M_f` by columns.
    fn act(&self, f: &<Self::C as Category>::Mor) -> Result<Vec<SVec<<Self::F as Field>::E>>>;
    /// Short label for reports.
    fn label(&self) -> String;
}

fn check_rank(n: usize, max: usize) -> Result<()> {
    if n > max {
        return Err(Error::Precondition(format!("rank {n} exceeds truncation {max}")));
    }
    Ok(())
}

/// The free module `P_d` with `(P_d)_n` spanned by `hom(d, n)`.
#[derive(Debug)]
pub struct Representable<'a, C: Category, F: Field> {
    cat: &'a C,
    k: F,
    d: usize,
    max_rank: usize,
}

pub fn representable<'a, C: Category, F: Field>(
    cat: &'a C,
    d: usize,
    max_rank: usize,
    k: &F,
) -> Result<Representable<'a, C, F>> {
    for n in d..=max_rank {
        cat.hom(d, n)?;
    }
    Ok(Representable {
        cat,
        k: k.clone(),
        d,
        max_rank,
    })
}

impl<'a, C: Category, F: Field> Representable<'a, C, F> {
    pub fn degree(&self) -> usize {
        self.d
    }

    /// Basis morphisms at rank `n`, in index order.
    pub fn basis(&self, n: usize) -> Result<std::sync::Arc<Vec<C::Mor>>> {
        check_rank(n, self.max_rank)?;
        self.cat.hom(self.d, n)
    }

    pub fn index_of(&self, f: &C::Mor) -> Result<usize> {
        let idx = self.cat.hom_index(self.d, self.cat.target(f))?;
        idx.get(f)
            .copied()
            .ok_or_else(|| Error::Invariant("morphism missing from its hom set".into()))
    }

    /// Image of the basis element `F` under `f`, as a basis index.
    pub fn push(&self, f: &C::Mor, basis: &C::Mor) -> Result<usize> {
        self.index_of(&self.cat.compose(f, basis))
    }
}

impl<'a, C: Category, F: Field> Module for Representable<'a, C, F> {
    type C = C;
    type F = F;

    fn category(&self) -> &C {
        self.cat
    }
    fn field(&self) -> &F {
        &self.k
    }
    fn truncation(&self) -> usize {
        self.max_rank
    }
    fn dim(&self, n: usize) -> Result<usize> {
        check_rank(n, self.max_rank)?;
        Ok(self.cat.hom_count(self.d, n) as usize)
    }
    fn act(&self, f: &C::Mor) -> Result<Vec<SVec<F::E>>> {
        check_rank(self.cat.target(f), self.max_rank)?;
        self.basis(self.cat.source(f))?
            .iter()
            .map(|b| Ok(unit(&self.k, self.push(f, b)?)))
            .collect()
    }
    fn label(&self) -> String {
        format!("P{}", self.d)
    }
}

/// How a submodule is saturated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closure {
    /// Every morphism from every lower rank.
    AllMorphisms,
    /// Canonical maps from the previous rank followed by automorphisms; valid when
    /// automorphisms act transitively on each hom set.
    Transitive,
}

/// A submodule of a representable, one reduced basis per rank.
#[derive(Debug)]
pub struct Submodule<'p, 'a, C: Category, F: Field> {
    parent: &'p Representable<'a, C, F>,
    spans: Vec<Rref<F>>,
}

/// A generator: rank and coordinates in the representable basis.
pub type Generator<E> = (usize, SVec<E>);

/// Smallest submodule containing the generators, truncated at the parent's rank.
pub fn submodule_closure<'p, 'a, C: Category, F: Field>(
    parent: &'p Representable<'a, C, F>,
    generators: &[Generator<F::E>],
    strategy: Closure,
    canonical: Option<&dyn Fn(usize, usize) -> C::Mor>,
) -> Result<Submodule<'p, 'a, C, F>> {
    let k = parent.field();
    let cat = parent.category();
    let top = parent.truncation();
    for (n, v) in generators {
        check_rank(*n, top)?;
        let dim = parent.dim(*n)?;
        if v.iter().any(|(i, _)| *i >= dim) {
            return Err(Error::Dimension(format!("generator index out of range at rank {n}")));
        }
    }
    let mut spans: Vec<Rref<F>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut e = Echelon::new(k);
        let mut seeds: Vec<SVec<F::E>> = Vec::new();
        for (_, v) in generators.iter().filter(|(r, _)| *r == n) {
            seeds.push(v.clone());
        }
        match strategy {
            Closure::AllMorphisms => {
                for (m, span) in spans.iter().enumerate() {
                    if span.dim() == 0 {
                        continue;
                    }
                    for f in cat.hom(m, n)?.iter() {
                        let a = parent.act(f)?;
                        seeds.extend(span.rows.iter().map(|r| apply(k, &a, r)));
                    }
                }
            }
            Closure::Transitive => {
                let canonical = canonical.ok_or_else(|| {
                    Error::Precondition("transitive closure needs canonical maps".into())
                })?;
                if n > 0 && spans[n - 1].dim() > 0 {
                    let a = parent.act(&canonical(n - 1, n))?;
                    seeds.extend(spans[n - 1].rows.iter().map(|r| apply(k, &a, r)));
                }
            }
        }
        // hom(n, n) is a group, so one pass closes the seeds under it
        let mut base = Echelon::new(k);
        for s in &seeds {
            base.insert(s);
        }
        let base = base.rref();
        if base.dim() > 0 {
            for g in cat.hom(n, n)?.iter() {
                let a = parent.act(g)?;
                for r in &base.rows {
                    e.insert(&apply(k, &a, r));
                }
            }
        }
        spans.push(e.rref());
    }
    Ok(Submodule { parent, spans })
}

impl<'p, 'a, C: Category, F: Field> Submodule<'p, 'a, C, F> {
    pub fn parent(&self) -> &Representable<'a, C, F> {
        self.parent
    }

    pub fn span(&self, n: usize) -> &Rref<F> {
        &self.spans[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spans.iter().map(|s| s.dim()).collect()
    }

    pub fn contains(&self, n: usize, v: &[(usize, F::E)]) -> bool {
        let span = &self.spans[n];
        span.combine(&span.coordinates(v)) == v
    }

    /// Whether every span is carried into the span at the target by every morphism.
    pub fn is_closed(&self) -> Result<bool> {
        let k = self.parent.field();
        let cat = self.parent.category();
        let top = self.spans.len() - 1;
        for m in 0..=top {
            if self.spans[m].dim() == 0 {
                continue;
            }
            for n in m..=top {
                for f in cat.hom(m, n)?.iter() {
                    let a = self.parent.act(f)?;
                    if self.spans[m].rows.iter().any(|r| !self.contains(n, &apply(k, &a, r))) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// `self ⊆ other` rank by rank.
    pub fn is_contained_in(&self, other: &Submodule<'_, 'a, C, F>) -> bool {
        self.spans.len() == other.spans.len()
            && (0..self.spans.len()).all(|n| self.spans[n].rows.iter().all(|r| other.contains(n, r)))
    }
}

impl<'p, 'a, C: Category, F: Field> Module for Submodule<'p, 'a, C, F> {
    type C = C;
    type F = F;

    fn category(&self) -> &C {
        self.parent.category()
    }
    fn field(&self) -> &F {
        self.parent.field()
    }
    fn truncation(&self) -> usize {
        self.spans.len() - 1
    }
    fn dim(&self, n: usize) -> Result<usize> {
        check_rank(n, self.truncation())?;
        Ok(self.spans[n].dim())
    }
    fn act(&self, f: &C::Mor) -> Result<Vec<SVec<F::E>>> {
        let cat = self.category();
        let (m, n) = (cat.source(f), cat.target(f));
        check_rank(n, self.truncation())?;
        let a = self.parent.act(f)?;
        let k = self.field();
        self.spans[m]
            .rows
            .iter()
            .map(|r| {
                let img = apply(k, &a, r);
                if !self.contains(n, &img) {
                    return Err(Error::Invariant("submodule is not closed".into()));
                }
                Ok(self.spans[n].coordinates(&img))
            })
            .collect()
    }
    fn label(&self) -> String {
        format!("sub({})", self.parent.label())
    }
}

/// Checks `act(g ∘ f) = act(g) act(f)` and `act(id) = id` over every composable
/// pair up to rank `max_rank`.
pub fn functoriality_check<M: Module>(module: &M, max_rank: usize) -> Result<bool> {
    let cat = module.category();
    let k = module.field();
    for a in 0..=max_rank {
        let dim = module.dim(a)?;
        let id = module.act(&cat.identity(a))?;
        if id != (0..dim).map(|i| unit(k, i)).collect::<Vec<_>>() {
            return Ok(false);
        }
        for b in a..=max_rank {
            for c in b..=max_rank {
                let fs = cat.hom(a, b)?;
                let gs = cat.hom(b, c)?;
                for f in fs.iter() {
                    let af = module.act(f)?;
                    for g in gs.iter() {
                        let lhs = module.act(&cat.compose(g, f))?;
                        let ag = module.act(g)?;
                        if lhs != crate::linalg::compose(k, &ag, &af) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}
