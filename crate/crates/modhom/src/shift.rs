//! The shift complexes `Σ_* M` and their three quotients, homology, the
//! stabilization homotopy and the generation test.
//!
//! Two constructions are provided. For a representable `P_d` the chain space
//! `(Σ_p P_d)_n` has basis `hom(p + d, n)` and `d_i` precomposes with
//! `s_i ⊛ id`. For an arbitrary module the chain space is assembled slot by
//! slot from the chosen complements of each `h: X^p -> X^n`.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;
use std::sync::Arc;

use ficat::catcore::{block_permutation, is_even, permutations, Category, Complemented};
use ficat::{Error, Result};
use serde::Serialize;

use crate::field::Field;
use crate::linalg::{apply, axpy, collect, kernel, rank, unit, Echelon, SVec};
use crate::module::{Module, Representable};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Sum over all of `hom(X^p, V)`.
    Plain,
    /// Orbits of `Aut(X)^p`.
    Prime,
    /// Orbits of the symmetric group, with sign.
    Double,
    /// Orbits of the wreath product, with sign.
    Triple,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::Plain, Variant::Prime, Variant::Double, Variant::Triple];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Prime => "prime",
            Variant::Double => "double",
            Variant::Triple => "triple",
        }
    }

    fn permutes(&self) -> bool {
        matches!(self, Variant::Double | Variant::Triple)
    }

    fn scales(&self) -> bool {
        matches!(self, Variant::Prime | Variant::Triple)
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        Ok(match s {
            "plain" | "ordered" => Variant::Plain,
            "prime" => Variant::Prime,
            "double" => Variant::Double,
            "triple" => Variant::Triple,
            _ => return Err(Error::Parse(format!("unknown variant '{s}'"))),
        })
    }
}

/// Automorphisms of `X^p` identified by the variant, with their signs.
pub fn variant_group<C: Complemented>(cat: &C, p: usize, variant: Variant) -> Result<Vec<(C::Mor, i64)>> {
    if variant.permutes() && !cat.symmetric() {
        return Err(Error::Precondition(format!(
            "{} requires a symmetric structure, which {} lacks",
            variant.name(),
            cat.name()
        )));
    }
    let mut scalings = vec![cat.identity(0)];
    if variant.scales() {
        let auts = cat.aut(1)?;
        for _ in 0..p {
            scalings = scalings
                .iter()
                .flat_map(|s| auts.iter().map(move |a| cat.sum(s, a)))
                .collect();
        }
    } else {
        scalings = vec![cat.identity(p)];
    }
    let perms: Vec<(C::Mor, i64)> = if variant.permutes() {
        permutations(p)
            .into_iter()
            .map(|perm| {
                let g = block_permutation(cat, &perm)
                    .ok_or_else(|| Error::Precondition("block permutation is not a morphism".into()))?;
                Ok((g, if is_even(&perm) { 1 } else { -1 }))
            })
            .collect::<Result<_>>()?
    } else {
        vec![(cat.identity(p), 1)]
    };
    Ok(perms
        .iter()
        .flat_map(|(g, sign)| scalings.iter().map(move |s| (cat.compose(g, s), *sign)))
        .collect())
}

/// Orbit number and sign of each element, plus one representative per orbit
/// (the first in index order).
#[derive(Clone, Debug)]
struct Orbits {
    of: Vec<(usize, i64)>,
    reps: Vec<usize>,
}

fn orbits<C: Category>(
    cat: &C,
    homs: &[C::Mor],
    index: &HashMap<C::Mor, usize>,
    group: &[(C::Mor, i64)],
) -> Result<Orbits> {
    let mut of: Vec<Option<(usize, i64)>> = vec![None; homs.len()];
    let mut reps = Vec::new();
    for i in 0..homs.len() {
        if of[i].is_some() {
            continue;
        }
        let o = reps.len();
        reps.push(i);
        for (g, sign) in group {
            let j = *index
                .get(&cat.compose(&homs[i], g))
                .ok_or_else(|| Error::Invariant("group action leaves the hom set".into()))?;
            if of[j].is_some() {
                return Err(Error::Invariant("group action is not free".into()));
            }
            of[j] = Some((o, *sign));
        }
    }
    Ok(Orbits {
        of: of.into_iter().map(|x| x.expect("every element lies in an orbit")).collect(),
        reps,
    })
}

/// A finite chain complex `C_top -> ... -> C_1 -> C_0`.
#[derive(Clone, Debug)]
pub struct ChainComplex<F: Field> {
    k: F,
    pub dims: Vec<usize>,
    /// `diffs[p]` is `d: C_p -> C_{p-1}` by columns; `diffs[0]` is zero.
    pub diffs: Vec<Vec<SVec<F::E>>>,
}

impl<F: Field> ChainComplex<F> {
    pub fn d_squared_zero(&self) -> bool {
        (2..self.dims.len()).all(|p| {
            self.diffs[p]
                .iter()
                .all(|c| apply(&self.k, &self.diffs[p - 1], c).is_empty())
        })
    }

    pub fn rank_of(&self, p: usize) -> usize {
        if p == 0 || p >= self.dims.len() {
            0
        } else {
            rank(&self.k, &self.diffs[p])
        }
    }

    /// `H_0 .. H_q`; degrees beyond the top are zero.
    pub fn homology(&self, q: usize) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=q + 1).map(|p| self.rank_of(p)).collect();
        (0..=q)
            .map(|p| {
                let dim = self.dims.get(p).copied().unwrap_or(0);
                dim - ranks[p] - ranks[p + 1]
            })
            .collect()
    }

    /// Cycles in degree `p`.
    pub fn cycles(&self, p: usize) -> Vec<SVec<F::E>> {
        if p == 0 {
            return (0..self.dims[0]).map(|i| unit(&self.k, i)).collect();
        }
        kernel(&self.k, &self.diffs[p])
    }

    pub fn degrees(&self) -> usize {
        self.dims.len()
    }
}

fn zero_complex<F: Field>(k: &F, dim0: usize) -> ChainComplex<F> {
    ChainComplex {
        k: k.clone(),
        dims: vec![dim0],
        diffs: vec![vec![Vec::new(); dim0]],
    }
}

struct RepLevel<M> {
    homs: Arc<Vec<M>>,
    index: Arc<HashMap<M, usize>>,
    orbits: Orbits,
}

/// Shift complexes of a representable through the identification with `hom(p + d, n)`.
pub struct RepShift<'r, 'a, C: Complemented, F: Field> {
    rep: &'r Representable<'a, C, F>,
    variant: Variant,
}

pub fn rep_shift<'r, 'a, C: Complemented, F: Field>(
    rep: &'r Representable<'a, C, F>,
    variant: Variant,
) -> RepShift<'r, 'a, C, F> {
    RepShift { rep, variant }
}

impl<'r, 'a, C: Complemented, F: Field> RepShift<'r, 'a, C, F> {
    fn cat(&self) -> &C {
        self.rep.category()
    }

    fn k(&self) -> &F {
        self.rep.field()
    }

    fn level(&self, n: usize, p: usize) -> Result<RepLevel<C::Mor>> {
        let cat = self.cat();
        let d = self.rep.degree();
        let homs = cat.hom(p + d, n)?;
        let index = cat.hom_index(p + d, n)?;
        let group: Vec<(C::Mor, i64)> = variant_group(cat, p, self.variant)?
            .into_iter()
            .map(|(g, s)| (cat.sum(&g, &cat.identity(d)), s))
            .collect();
        let orbits = orbits(cat, &homs, &index, &group)?;
        Ok(RepLevel { homs, index, orbits })
    }

    fn levels(&self, n: usize) -> Result<Vec<RepLevel<C::Mor>>> {
        let top = n.saturating_sub(self.rep.degree());
        (0..=top).map(|p| self.level(n, p)).collect()
    }

    fn quotient(&self, lvl: &RepLevel<C::Mor>, f: &C::Mor, coef: i64) -> Result<(usize, F::E)> {
        let i = *lvl
            .index
            .get(f)
            .ok_or_else(|| Error::Invariant("morphism missing from its hom set".into()))?;
        let (o, s) = lvl.orbits.of[i];
        Ok((o, self.k().from_i64(coef * s)))
    }

    fn differential(&self, upper: &RepLevel<C::Mor>, lower: &RepLevel<C::Mor>, p: usize) -> Result<Vec<SVec<F::E>>> {
        let cat = self.cat();
        let d = self.rep.degree();
        let faces: Vec<C::Mor> = (1..=p).map(|i| cat.face(p + d, i)).collect();
        upper
            .orbits
            .reps
            .iter()
            .map(|&r| {
                let terms = faces
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        self.quotient(lower, &cat.compose(&upper.homs[r], s), sign)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(collect(self.k(), terms))
            })
            .collect()
    }

    fn assemble(&self, levels: &[RepLevel<C::Mor>]) -> Result<ChainComplex<F>> {
        let mut diffs = vec![vec![Vec::new(); levels[0].orbits.reps.len()]];
        for p in 1..levels.len() {
            diffs.push(self.differential(&levels[p], &levels[p - 1], p)?);
        }
        Ok(ChainComplex {
            k: self.k().clone(),
            dims: levels.iter().map(|l| l.orbits.reps.len()).collect(),
            diffs,
        })
    }

    /// The complex `... -> (Σ_1 P_d)_n -> (P_d)_n`, verified to square to zero.
    pub fn complex(&self, n: usize) -> Result<ChainComplex<F>> {
        if n > self.rep.truncation() {
            return Err(Error::Precondition(format!(
                "rank {n} exceeds truncation {}",
                self.rep.truncation()
            )));
        }
        let c = self.assemble(&self.levels(n)?)?;
        if !c.d_squared_zero() {
            return Err(Error::Invariant("d ∘ d is not zero".into()));
        }
        Ok(c)
    }

    /// Chain dimensions `|hom(p + d, n)| / |group|` straight from the counts.
    pub fn expected_dims(&self, n: usize) -> Result<Vec<usize>> {
        let cat = self.cat();
        let d = self.rep.degree();
        (0..=n.saturating_sub(d))
            .map(|p| {
                let g = variant_group(cat, p, self.variant)?.len() as u64;
                Ok((cat.hom_count(p + d, n) / g) as usize)
            })
            .collect()
    }

    fn stabilization(&self, n: usize) -> Result<Stabilization<F>> {
        let cat = self.cat();
        let d = self.rep.degree();
        let lo = self.levels(n)?;
        let hi = self.levels(n + 1)?;
        let iota = cat.canonical(n, n + 1);
        let id1 = cat.identity(1);
        let mut i_maps = Vec::new();
        let mut g_maps = Vec::new();
        for (p, lvl) in lo.iter().enumerate() {
            let positions: Vec<usize> = std::iter::once(p + d).chain(0..p + d).collect();
            let tau = cat
                .block_embedding(p + d + 1, &positions)
                .ok_or_else(|| Error::Precondition("the factor flip is not a morphism".into()))?;
            let mut icol = Vec::new();
            let mut gcol = Vec::new();
            for &r in &lvl.orbits.reps {
                let f = &lvl.homs[r];
                let (o, c) = self.quotient(&hi[p], &cat.compose(&iota, f), 1)?;
                icol.push(vec![(o, c)]);
                let bar = cat.compose(&cat.sum(f, &id1), &tau);
                let (o, c) = self.quotient(&hi[p + 1], &bar, 1)?;
                gcol.push(vec![(o, c)]);
            }
            i_maps.push(icol);
            g_maps.push(gcol);
        }
        Ok(Stabilization {
            low: self.assemble(&lo)?,
            high: self.assemble(&hi)?,
            i_maps,
            g_maps,
        })
    }

    /// Verifies `dG + Gd = I` and that `I` kills homology, from rank `n` to `n + 1`.
    pub fn homotopy_check(&self, n: usize) -> Result<HomotopyReport> {
        if n + 1 > self.rep.truncation() {
            return Err(Error::Precondition(format!(
                "rank {} exceeds truncation {}",
                n + 1,
                self.rep.truncation()
            )));
        }
        if !self.cat().symmetric() {
            return Err(Error::Precondition(format!("{} is not symmetric", self.cat().name())));
        }
        let s = self.stabilization(n)?;
        let k = self.k();
        let mut identity_holds = true;
        let mut base_identity = true;
        let mut induced_zero = Vec::new();
        for p in 0..s.low.degrees() {
            for (j, icol) in s.i_maps[p].iter().enumerate() {
                // d G + G d applied to basis vector j
                let e = unit(k, j);
                let g = apply(k, &s.g_maps[p], &e);
                let dg = apply(k, &s.high.diffs[p + 1], &g);
                let gd = if p == 0 {
                    Vec::new()
                } else {
                    apply(k, &s.g_maps[p - 1], &apply(k, &s.low.diffs[p], &e))
                };
                let lhs = axpy(k, &dg, &k.one(), &gd);
                if lhs != *icol {
                    identity_holds = false;
                }
                if p == 0 && dg != *icol {
                    base_identity = false;
                }
            }
            let mut boundaries = Echelon::new(k);
            if p + 1 < s.high.degrees() {
                for c in &s.high.diffs[p + 1] {
                    boundaries.insert(c);
                }
            }
            induced_zero.push(
                s.low
                    .cycles(p)
                    .iter()
                    .all(|z| boundaries.contains(&apply(k, &s.i_maps[p], z))),
            );
        }
        Ok(HomotopyReport {
            cat: self.cat().name(),
            module: self.rep.label(),
            variant: self.variant,
            rank: n,
            d_squared_zero: s.low.d_squared_zero() && s.high.d_squared_zero(),
            homotopy_identity: identity_holds,
            base_identity,
            induced_zero,
        })
    }
}

struct Stabilization<F: Field> {
    low: ChainComplex<F>,
    high: ChainComplex<F>,
    i_maps: Vec<Vec<SVec<F::E>>>,
    g_maps: Vec<Vec<SVec<F::E>>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyReport {
    pub cat: String,
    pub module: String,
    pub variant: Variant,
    pub rank: usize,
    pub d_squared_zero: bool,
    /// `dG + Gd = I` in every degree.
    pub homotopy_identity: bool,
    /// `d_1 G = I` in degree zero.
    pub base_identity: bool,
    /// Per degree: the stabilization map is zero on homology.
    pub induced_zero: Vec<bool>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.d_squared_zero && self.homotopy_identity && self.base_identity && self.induced_zero.iter().all(|&b| b)
    }
}

/// Slot data for the complement-based construction at one rank and degree.
struct GenLevel<F: Field> {
    slot_dim: usize,
    orbits: Orbits,
    /// Per slot: the matrix carrying its coordinates to those of its representative.
    to_rep: Vec<Vec<SVec<F::E>>>,
}

/// Complement-based shift complexes of an arbitrary module.
pub struct GeneralShift<'m, M: Module>
where
    M::C: Complemented,
{
    module: &'m M,
    variant: Variant,
}

pub fn general_shift<M: Module>(module: &M, variant: Variant) -> GeneralShift<'_, M>
where
    M::C: Complemented,
{
    GeneralShift { module, variant }
}

impl<'m, M: Module> GeneralShift<'m, M>
where
    M::C: Complemented,
{
    fn level(&self, n: usize, p: usize) -> Result<GenLevel<M::F>> {
        let cat = self.module.category();
        let homs = cat.hom(p, n)?;
        let index = cat.hom_index(p, n)?;
        let group = variant_group(cat, p, self.variant)?;
        let orbits = orbits(cat, &homs, &index, &group)?;
        let slot_dim = if p <= n { self.module.dim(n - p)? } else { 0 };
        let comps: Vec<_> = homs.iter().map(|h| cat.complement_of(h)).collect();
        let mut to_rep = Vec::with_capacity(homs.len());
        for (i, c) in comps.iter().enumerate() {
            let (o, _) = orbits.of[i];
            let rep = &comps[orbits.reps[o]];
            let a = cat
                .left_divide(rep, c)
                .ok_or_else(|| Error::Invariant("complements of one orbit differ".into()))?;
            to_rep.push(self.module.act(&a)?);
        }
        Ok(GenLevel {
            slot_dim,
            orbits,
            to_rep,
        })
    }

    fn differential(&self, n: usize, p: usize, upper: &GenLevel<M::F>, lower: &GenLevel<M::F>) -> Result<Vec<SVec<<M::F as Field>::E>>> {
        let cat = self.module.category();
        let k = self.module.field();
        let homs = cat.hom(p, n)?;
        let lower_homs = cat.hom_index(p - 1, n)?;
        let faces: Vec<_> = (1..=p).map(|i| cat.face(p, i)).collect();
        let mut cols = Vec::with_capacity(upper.orbits.reps.len() * upper.slot_dim);
        for &r in &upper.orbits.reps {
            let h = &homs[r];
            let c_h = cat.complement_of(h);
            let mut blocks = Vec::new();
            for (i, s) in faces.iter().enumerate() {
                let hs = cat.compose(h, s);
                let slot = lower_homs[&hs];
                let u = cat
                    .left_divide(&cat.complement_of(&hs), &c_h)
                    .ok_or_else(|| Error::Invariant("complement does not include".into()))?;
                let (o, sign) = lower.orbits.of[slot];
                let a = crate::linalg::compose(k, &lower.to_rep[slot], &self.module.act(&u)?);
                let coef = k.from_i64(if i % 2 == 0 { sign } else { -sign });
                blocks.push((o, coef, a));
            }
            for j in 0..upper.slot_dim {
                let mut col = Vec::new();
                for (o, coef, a) in &blocks {
                    let shifted: SVec<_> = a[j].iter().map(|(t, x)| (o * lower.slot_dim + t, x.clone())).collect();
                    col = axpy(k, &col, coef, &shifted);
                }
                cols.push(col);
            }
        }
        Ok(cols)
    }

    /// The complex at rank `n`.
    pub fn complex(&self, n: usize) -> Result<ChainComplex<M::F>> {
        let k = self.module.field();
        if n > self.module.truncation() {
            return Err(Error::Precondition(format!(
                "rank {n} exceeds truncation {}",
                self.module.truncation()
            )));
        }
        let levels: Vec<GenLevel<M::F>> = (0..=n).map(|p| self.level(n, p)).collect::<Result<_>>()?;
        let dims: Vec<usize> = levels.iter().map(|l| l.orbits.reps.len() * l.slot_dim).collect();
        let mut c = zero_complex(k, dims[0]);
        for p in 1..=n {
            c.diffs.push(self.differential(n, p, &levels[p], &levels[p - 1])?);
        }
        c.dims = dims;
        if !c.d_squared_zero() {
            return Err(Error::Invariant("d ∘ d is not zero".into()));
        }
        Ok(c)
    }

    /// Whether `(Σ_1 M)_n -> M_n` is onto.
    pub fn augmentation_onto(&self, n: usize) -> Result<bool> {
        let target = self.module.dim(n)?;
        if target == 0 {
            return Ok(true);
        }
        if n == 0 {
            return Ok(false);
        }
        let lower = self.level(n, 0)?;
        let upper = self.level(n, 1)?;
        Ok(rank(self.module.field(), &self.differential(n, 1, &upper, &lower)?) == target)
    }
}

/// Homology record in the external report format.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyReport {
    pub cat: String,
    pub module: String,
    pub variant: Variant,
    pub rank: usize,
    pub dims: BTreeMap<String, usize>,
    pub truncation: usize,
}

pub fn homology_report<M: Module>(
    module: &M,
    complex: &ChainComplex<M::F>,
    variant: Variant,
    n: usize,
    up_to: usize,
) -> HomologyReport {
    HomologyReport {
        cat: module.category().name(),
        module: module.label(),
        variant,
        rank: n,
        dims: complex
            .homology(up_to)
            .into_iter()
            .enumerate()
            .map(|(i, h)| (format!("H{i}"), h))
            .collect(),
        truncation: module.truncation(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeThreshold {
    pub degree: usize,
    /// Least tested rank from which `H_degree` vanishes through the truncation.
    pub vanishing_from: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub variant: Variant,
    /// `table[n][i] = dim H_i` at rank `n`.
    pub table: Vec<Vec<usize>>,
    pub degrees: Vec<DegreeThreshold>,
    /// Least rank from which `H_0 .. H_q` all vanish through the truncation.
    pub exact_from: Option<usize>,
    /// Ranks with nonzero homology above a rank where everything vanished.
    pub anomalies: Vec<usize>,
    pub truncation: usize,
}

/// Homology table of a representable across ranks, with vanishing thresholds.
pub fn exactness_thresholds<C: Complemented, F: Field>(
    rep: &Representable<'_, C, F>,
    variant: Variant,
    q: usize,
) -> Result<ThresholdReport> {
    let shift = rep_shift(rep, variant);
    let top = rep.truncation();
    let table: Vec<Vec<usize>> = (0..=top)
        .map(|n| Ok(shift.complex(n)?.homology(q)))
        .collect::<Result<_>>()?;
    let trailing = |zero: &dyn Fn(usize) -> bool| (0..=top).rev().take_while(|&n| zero(n)).last();
    let degrees = (0..=q)
        .map(|i| DegreeThreshold {
            degree: i,
            vanishing_from: trailing(&|n| table[n][i] == 0),
        })
        .collect();
    let exact = |n: usize| table[n].iter().all(|&h| h == 0);
    let anomalies = match (0..=top).find(|&n| exact(n)) {
        Some(z) => (z..=top).filter(|&n| !exact(n)).collect(),
        None => Vec::new(),
    };
    Ok(ThresholdReport {
        variant,
        degrees,
        exact_from: trailing(&exact),
        anomalies,
        table,
        truncation: top,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenerationReport {
    pub module: String,
    /// Per rank: `(Σ_1 M)_n -> M_n` is onto.
    pub onto: Vec<bool>,
    /// Least rank from which the map stays onto through the truncation.
    pub stable_from: Option<usize>,
    pub truncation: usize,
}

pub fn generation_degree<M: Module>(module: &M) -> Result<GenerationReport>
where
    M::C: Complemented,
{
    let shift = general_shift(module, Variant::Plain);
    let top = module.truncation();
    let onto: Vec<bool> = (0..=top).map(|n| shift.augmentation_onto(n)).collect::<Result<_>>()?;
    let stable_from = (0..=top).rev().take_while(|&n| onto[n]).last();
    Ok(GenerationReport {
        module: module.label(),
        onto,
        stable_from,
        truncation: top,
    })
}
