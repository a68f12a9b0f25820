//! The ten acceptance criteria.

use std::cmp::Ordering;
use std::collections::HashSet;

use ficat::catcore::{check_axioms, fi_category, Category, Complemented};
use ficat::si::{make_osi_category, make_si_category, osi_factor, standard_form, symplectic_check};
use ficat::vic::{
    make_ovic_category, make_vic_category, ovic_hom_enumerate, UnitSubgroup, VicCategory, VicMor,
};
use ficat::wporder::oracle::{osi_preceq_by_deletion, reachable};
use ficat::wporder::{
    osi_insertion_phi, osi_preceq, osi_total_cmp, ovic_phi_for, ovic_preceq, ovic_total_cmp,
};
use ficat::{make_ring, Error, FiniteRing, Mat, Result};
use ficat_modhom::initial::init_gap_check;
use ficat_modhom::linalg::{axpy, SVec};
use ficat_modhom::shift::generation_degree;
use ficat_modhom::{
    rep_shift, representable, submodule_closure, Closure, Module, PrimeField, Rationals, Variant,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::oracles::{adapted_factorizations, derangements, word_complex_homology, words};
use crate::Profile;

pub type Outcome = Result<(bool, String)>;

fn ring(spec: &str) -> FiniteRing {
    make_ring(spec).expect("valid ring spec")
}

fn ints(r: &FiniteRing, rows: &[&[i64]]) -> Mat {
    Mat::from_ints(r, &rows.iter().map(|x| x.to_vec()).collect::<Vec<_>>()).expect("valid matrix")
}

pub fn z16_regression() -> Outcome {
    let r = ring("Z/16");
    let vm = |f: &[&[i64]], fp: &[&[i64]]| VicMor::new(ints(&r, f), ints(&r, fp));
    let f1 = vm(&[&[0], &[1]], &[&[2, 1]])?;
    let f2 = vm(&[&[0], &[1]], &[&[6, 1]])?;
    let g1 = vm(&[&[0, 0], &[1, 0], &[0, 1]], &[&[2, 1, 0], &[0, 0, 1]])?;
    let g2 = vm(&[&[0, 0], &[1, 0], &[0, 1]], &[&[6, 1, 0], &[0, 0, 1]])?;
    let products: Vec<Vec<i64>> = [(&g1, &f1), (&g1, &f2), (&g2, &f1), (&g2, &f2)]
        .iter()
        .map(|(g, f)| g.then_after(f).fp.entries().iter().map(|&x| x as i64).collect())
        .collect();
    let expect = vec![vec![4, 2, 1], vec![12, 6, 1], vec![12, 2, 1], vec![4, 6, 1]];
    let before = ovic_total_cmp(&f1, &f2)?;
    let after1 = ovic_total_cmp(&g1.then_after(&f1), &g1.then_after(&f2))?;
    let after2 = ovic_total_cmp(&g2.then_after(&f1), &g2.then_after(&f2))?;
    let ok = products == expect
        && before == Ordering::Less
        && after1 == Ordering::Less
        && after2 == Ordering::Greater;
    Ok((ok, format!("products {products:?}; cmp {before:?} -> {after1:?} / {after2:?}")))
}

fn counting<C: Category>(cat: &C, max_n: usize, enumerate_below: u64) -> Result<(bool, usize)> {
    let mut checked = 0;
    for n in 0..=max_n {
        let aut_n = cat.hom_count(n, n);
        for r in 0..=n {
            let hom = cat.hom_count(r, n);
            if hom * cat.hom_count(n - r, n - r) != aut_n {
                return Ok((false, checked));
            }
            if hom <= enumerate_below && cat.hom(r, n)?.len() as u64 != hom {
                return Ok((false, checked));
            }
            checked += 1;
        }
    }
    Ok((true, checked))
}

pub fn counting_identity(profile: Profile) -> Outcome {
    let limit = match profile {
        Profile::Quick => 50_000,
        Profile::Full => 400_000,
    };
    let mut ok = true;
    let mut parts = Vec::new();
    let (a, k) = counting(&fi_category(), 3, limit)?;
    ok &= a;
    parts.push(format!("FI {k}"));
    for spec in ["Z/2", "Z/3", "Z/4", "Z/6"] {
        let cat = VicCategory::full(&ring(spec));
        let (a, k) = counting(&cat, 3, limit)?;
        ok &= a;
        parts.push(format!("VIC({spec}) {k}"));
    }
    let si = make_si_category(&ring("Z/2"));
    let (a, k) = counting(&si, 2, limit)?;
    ok &= a;
    parts.push(format!("SI(Z/2) {k}"));
    let v2 = VicCategory::full(&ring("Z/2"));
    let v4 = VicCategory::full(&ring("Z/4"));
    let anchors = v2.hom_count(2, 2) == 6
        && v4.hom_count(1, 2) == 48
        && v4.hom_count(1, 1) == 2
        && v4.hom_count(2, 2) == 96
        && si.hom_count(1, 2) == 120
        && si.hom_count(1, 1) == 6
        && si.hom_count(2, 2) == 720;
    let aut6 = VicCategory::full(&ring("Z/6")).hom_count(3, 3);
    Ok((
        ok && anchors && aut6 == 1_886_976,
        format!("pairs checked: {}; anchors {anchors}; |GL_3(Z/6)| = {aut6}", parts.join(", ")),
    ))
}

pub fn unique_factorization(profile: Profile) -> Outcome {
    let max_cols = match profile {
        Profile::Quick => 2,
        Profile::Full => 3,
    };
    let mut surjections = 0u64;
    let mut bad = Vec::new();
    for spec in ["Z/4", "Z/6"] {
        let r = ring(spec);
        for n in 1..=2 {
            for np in n..=max_cols {
                for f in ficat::matrix::all_matrices(&r, n, np) {
                    if !f.is_surjective() {
                        continue;
                    }
                    surjections += 1;
                    let (f1, f2) = f.factor_surjection()?;
                    let ok = f2.mul(&f1) == f
                        && f1.column_adapted().is_some()
                        && adapted_factorizations(&r, &f)? == 1;
                    if !ok && bad.len() < 3 {
                        bad.push(format!("{spec}: {f}"));
                    }
                }
            }
        }
        let vic = VicCategory::full(&r);
        let ovic = make_ovic_category(&r);
        for m in 0..=2 {
            for n in m..=3 {
                let lhs = vic.hom_count(m, n);
                let rhs = ovic.hom(m, n)?.len() as u64 * vic.hom(m, m)?.len() as u64;
                if lhs != rhs {
                    bad.push(format!("{spec}: |VIC({m},{n})| = {lhs} != {rhs}"));
                }
            }
        }
    }
    // symplectic analogue: f = f1 f2 with f1 row-adapted, f2 invertible
    let z2 = ring("Z/2");
    let si = make_si_category(&z2);
    let gl2 = VicCategory::full(&z2).hom(2, 2)?;
    let mut si_count = 0;
    for f in si.hom(1, 2)?.iter() {
        let (f1, f2, _) = osi_factor(f)?;
        let brute = gl2.iter().filter(|g| f.f.mul(&g.fp).row_adapted().is_some()).count();
        si_count += 1;
        if f1.mul(&f2) != f.f || brute != 1 {
            bad.push(format!("SI(Z/2): {}", f.f));
        }
    }
    Ok((
        bad.is_empty(),
        format!("{surjections} surjections, {si_count} symplectic maps; failures: {bad:?}"),
    ))
}

struct OrderStats {
    elements: usize,
    comparable: usize,
    failures: Vec<String>,
}

/// Partial-order laws for `rel`, and that the total order `cmp` extends it.
fn order_laws<T: Clone>(
    items: &[T],
    preceq: &dyn Fn(&T, &T) -> bool,
    cmp: &dyn Fn(&T, &T) -> Ordering,
    oracle: &dyn Fn(usize, usize) -> bool,
) -> OrderStats {
    let n = items.len();
    let mut rel = vec![vec![false; n]; n];
    let mut failures = Vec::new();
    let mut comparable = 0;
    for a in 0..n {
        for b in 0..n {
            rel[a][b] = preceq(&items[a], &items[b]);
            comparable += rel[a][b] as usize;
            if rel[a][b] != oracle(a, b) && failures.len() < 3 {
                failures.push(format!("oracle disagrees on ({a},{b})"));
            }
        }
    }
    for a in 0..n {
        if !rel[a][a] {
            failures.push(format!("not reflexive at {a}"));
        }
        for b in 0..n {
            if a != b && rel[a][b] && rel[b][a] {
                failures.push(format!("not antisymmetric at ({a},{b})"));
            }
            if rel[a][b] && (0..n).any(|c| rel[b][c] && !rel[a][c]) {
                failures.push(format!("not transitive from ({a},{b})"));
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp(&items[a], &items[b]));
    let mut pos = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        pos[i] = p;
    }
    for a in 0..n {
        for b in 0..n {
            let c = cmp(&items[a], &items[b]);
            if c != pos[a].cmp(&pos[b]) {
                failures.push(format!("total order inconsistent at ({a},{b})"));
            }
            if rel[a][b] && c == Ordering::Greater {
                failures.push(format!("total order does not extend the partial order at ({a},{b})"));
            }
        }
        if failures.len() > 5 {
            break;
        }
    }
    OrderStats {
        elements: n,
        comparable,
        failures,
    }
}

fn ovic_poset(spec: &str, max_n: usize) -> Result<Vec<VicMor>> {
    let r = ring(spec);
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(ovic_hom_enumerate(&r, 1, n)?.iter().cloned());
    }
    Ok(out)
}

fn osi_poset(max_pairs: usize) -> Result<Vec<Mat>> {
    let osi = make_osi_category(&ring("Z/2"));
    let mut out = Vec::new();
    for n in 1..=max_pairs {
        out.extend(osi.hom(1, n)?.iter().map(|h| h.f.clone()));
    }
    Ok(out)
}

fn order_sizes(profile: Profile) -> [(&'static str, usize); 2] {
    match profile {
        Profile::Quick => [("Z/2", 3), ("Z/4", 2)],
        Profile::Full => [("Z/2", 3), ("Z/4", 3)],
    }
}

fn osi_pairs(profile: Profile) -> usize {
    match profile {
        Profile::Quick => 2,
        Profile::Full => 3,
    }
}

pub fn order_laws_criterion(profile: Profile) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (spec, max_n) in order_sizes(profile) {
        let items = ovic_poset(spec, max_n)?;
        let reach: Vec<HashSet<VicMor>> = items.iter().map(|f| reachable(f, max_n)).collect();
        let s = order_laws(
            &items,
            &|a, b| ovic_preceq(a, b).expect("common source"),
            &|a, b| ovic_total_cmp(a, b).expect("common source"),
            &|a, b| reach[a].contains(&items[b]),
        );
        ok &= s.failures.is_empty();
        details.push(format!(
            "OVIC({spec}) n<={max_n}: {} elements, {} related pairs {:?}",
            s.elements, s.comparable, s.failures
        ));
    }
    let pairs = osi_pairs(profile);
    let items = osi_poset(pairs)?;
    let s = order_laws(
        &items,
        &|a, b| osi_preceq(a, b).expect("common source"),
        &|a, b| osi_total_cmp(a, b).expect("common source"),
        &|a, b| osi_preceq_by_deletion(&items[a], &items[b]),
    );
    ok &= s.failures.is_empty();
    details.push(format!(
        "OSI(Z/2) <= {pairs} pairs: {} elements, {} related pairs {:?}",
        s.elements, s.comparable, s.failures
    ));
    Ok((ok, details.join("; ")))
}

pub fn insertion_property(profile: Profile) -> Outcome {
    let mut details = Vec::new();
    let mut ok = true;
    for (spec, max_n) in order_sizes(profile) {
        let items = ovic_poset(spec, max_n)?;
        let (mut pairs, mut checks, mut failures) = (0, 0u64, 0);
        for f in &items {
            let below: Vec<&VicMor> = items
                .iter()
                .filter(|h| h.dst() == f.dst() && ovic_total_cmp(h, f).expect("common source") == Ordering::Less)
                .collect();
            for g in items.iter().filter(|g| ovic_preceq(f, g).expect("common source")) {
                pairs += 1;
                let phi = ovic_phi_for(f, g)?;
                if phi.then_after(f) != *g {
                    failures += 1;
                }
                for h in &below {
                    checks += 1;
                    if ovic_total_cmp(&phi.then_after(h), g)? != Ordering::Less {
                        failures += 1;
                    }
                }
            }
        }
        ok &= failures == 0;
        details.push(format!("OVIC({spec}): {pairs} pairs, {checks} order checks, {failures} failures"));
    }
    let z2 = ring("Z/2");
    let items = osi_poset(osi_pairs(profile))?;
    let (mut pairs, mut failures) = (0, 0);
    for f in &items {
        for g in items.iter().filter(|g| osi_preceq(f, g).expect("common source")) {
            pairs += 1;
            let phi = osi_insertion_phi(f, g)?;
            let (n, np) = (f.rows() / 2, g.rows() / 2);
            let gram_ok = symplectic_check(&phi, &standard_form(&z2, n), &standard_form(&z2, np))?;
            let below_ok = items
                .iter()
                .filter(|h| h.rows() == f.rows() && osi_total_cmp(h, f).expect("common source") == Ordering::Less)
                .all(|h| osi_total_cmp(&phi.mul(h), g).expect("common source") == Ordering::Less);
            if phi.mul(f) != *g || !gram_ok || !below_ok {
                failures += 1;
            }
        }
    }
    ok &= failures == 0;
    details.push(format!("OSI(Z/2): {pairs} pairs, {failures} failures"));
    Ok((ok, details.join("; ")))
}

fn chain_checks<C: Complemented>(cat: &C, max_rank: usize, notes: &mut Vec<String>) -> Result<bool> {
    let mut ok = true;
    let mut complexes = 0;
    let mut homotopies = 0;
    for d in 0..=1 {
        let p = representable(cat, d, max_rank, &Rationals)?;
        for v in Variant::ALL {
            let shift = rep_shift(&p, v);
            for n in 0..=max_rank {
                ok &= shift.complex(n)?.d_squared_zero();
                complexes += 1;
                if n < max_rank {
                    let r = shift.homotopy_check(n)?;
                    if !r.passed() {
                        notes.push(format!("{} P{d} {} n={n}: {r:?}", cat.name(), v.name()));
                        ok = false;
                    }
                    homotopies += 1;
                }
            }
        }
    }
    notes.push(format!("{}: {complexes} complexes, {homotopies} homotopies", cat.name()));
    Ok(ok)
}

pub fn chain_identities(profile: Profile) -> Outcome {
    let (fi_n, vic_n, si_n) = match profile {
        Profile::Quick => (3, 2, 1),
        Profile::Full => (4, 3, 2),
    };
    let mut notes = Vec::new();
    let mut ok = chain_checks(&fi_category(), fi_n, &mut notes)?;
    ok &= chain_checks(&VicCategory::full(&ring("Z/2")), vic_n, &mut notes)?;
    ok &= chain_checks(&make_si_category(&ring("Z/2")), si_n, &mut notes)?;
    Ok((ok, notes.join("; ")))
}

pub fn resolution_exactness(profile: Profile) -> Outcome {
    let top = match profile {
        Profile::Quick => 4,
        Profile::Full => 5,
    };
    let fi = fi_category();
    let p0 = representable(&fi, 0, top, &Rationals)?;
    let mut ok = true;
    let mut table = Vec::new();
    for n in 1..=top {
        let h = rep_shift(&p0, Variant::Triple).complex(n)?.homology(3);
        let oracle = word_complex_homology(&words(n, true));
        ok &= h.iter().all(|&x| x == 0) && oracle.iter().take(4).all(|&x| x == 0);
        table.push(h);
    }
    let p0_small = representable(&fi, 0, 4, &Rationals)?;
    let report = ficat_modhom::shift::exactness_thresholds(&p0_small, Variant::Plain, 3)?;
    let mut consistent = true;
    for n in 0..=4 {
        let direct = word_complex_homology(&words(n, false));
        let ours = &report.table[n];
        for i in 0..=3 {
            let expect_formula = if i == n { derangements(n) } else { 0 };
            let d = direct.get(i).copied().unwrap_or(0);
            consistent &= ours[i] == d && d == expect_formula;
        }
    }
    let thresholds: Vec<Option<usize>> = report.degrees.iter().map(|d| d.vanishing_from).collect();
    Ok((
        ok && consistent,
        format!(
            "triple H_0..H_3 at ranks 1..{top}: {table:?}; plain thresholds H_0..H_3 from ranks {thresholds:?} (truncation 4), anomalies {:?}, matches injective words: {consistent}",
            report.anomalies
        ),
    ))
}

pub fn finite_generation(profile: Profile) -> Outcome {
    let top = match profile {
        Profile::Quick => 3,
        Profile::Full => 4,
    };
    let mut ok = true;
    let mut notes = Vec::new();
    fn one<C: Complemented>(cat: &C, top: usize, ok: &mut bool, notes: &mut Vec<String>) -> Result<()> {
        for d in 0..=1 {
            let p = representable(cat, d, top, &Rationals)?;
            let g = generation_degree(&p)?;
            for n in 0..=top {
                *ok &= g.onto[n] == (n > d || p.dim(n)? == 0);
            }
            *ok &= g.stable_from == Some(d + 1);
            notes.push(format!("{} P{d}: onto {:?}", cat.name(), g.onto));
        }
        Ok(())
    }
    one(&fi_category(), top, &mut ok, &mut notes)?;
    one(&VicCategory::full(&ring("Z/2")), top, &mut ok, &mut notes)?;
    Ok((ok, format!("truncation {top}; {}", notes.join("; "))))
}

pub fn initial_terms(profile: Profile, seed: u64) -> Outcome {
    let samples = match profile {
        Profile::Quick => 50,
        Profile::Full => 200,
    };
    let k = PrimeField::new(2)?;
    let ovic = make_ovic_category(&ring("Z/2"));
    let p1 = representable(&ovic, 1, 3, &k)?;
    let dims: Vec<usize> = (0..=3).map(|n| p1.dim(n)).collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random_vec = |rng: &mut ChaCha8Rng, n: usize| -> SVec<u64> {
        loop {
            let v: SVec<u64> = (0..dims[n]).filter(|_| rng.gen_bool(0.3)).map(|i| (i, 1)).collect();
            if !v.is_empty() {
                return v;
            }
        }
    };
    let (mut violations, mut strict, mut equal) = (0, 0, 0);
    for _ in 0..samples {
        let count = rng.gen_range(1..=3);
        let gens: Vec<(usize, SVec<u64>)> = (0..count)
            .map(|_| {
                let n = rng.gen_range(1..=3);
                (n, random_vec(&mut rng, n))
            })
            .collect();
        let m = submodule_closure(&p1, &gens, Closure::AllMorphisms, None)?;
        // N: a subset of the generators plus a random element of M
        let mut ngens: Vec<(usize, SVec<u64>)> = gens.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let n_rank = rng.gen_range(1..=3);
        let span = m.span(n_rank);
        let mut x: SVec<u64> = Vec::new();
        for row in &span.rows {
            if rng.gen_bool(0.5) {
                x = axpy(&k, &x, &1, row);
            }
        }
        if !x.is_empty() {
            ngens.push((n_rank, x));
        }
        let n = submodule_closure(&p1, &ngens, Closure::AllMorphisms, None)?;
        let report = init_gap_check(&n, &m)?;
        violations += (!report.implication_holds) as usize;
        strict += report.strict_witness.is_some() as usize;
        equal += report.ranks.iter().all(|g| g.submodule_equal) as usize;
    }
    // a constructed strict pair
    let full = submodule_closure(&p1, &[(1, vec![(0, 1)])], Closure::AllMorphisms, None)?;
    let smaller = submodule_closure(&p1, &[(2, vec![(0, 1)])], Closure::AllMorphisms, None)?;
    let constructed = init_gap_check(&smaller, &full)?;
    let ok = violations == 0 && constructed.strict_witness.is_some() && constructed.implication_holds;
    Ok((
        ok,
        format!(
            "seed {seed}: {samples} samples, {equal} equal pairs, {strict} strict with smaller init, {violations} violations; constructed witness at rank {:?}",
            constructed.strict_witness
        ),
    ))
}

pub fn axiom_suite(profile: Profile) -> Outcome {
    let (fi_n, vic_n, si_n) = match profile {
        Profile::Quick => (3, 2, 1),
        Profile::Full => (4, 3, 2),
    };
    let z4 = ring("Z/4");
    let reports = [
        check_axioms(&fi_category(), fi_n)?,
        check_axioms(&VicCategory::full(&ring("Z/2")), vic_n)?,
        check_axioms(&make_vic_category(&z4, &UnitSubgroup::new(&z4, [1, 3])?)?, vic_n)?,
        check_axioms(&make_si_category(&ring("Z/2")), si_n)?,
    ];
    let failed: Vec<String> = reports
        .iter()
        .flat_map(|r| r.items.iter().filter(|i| !i.passed).map(move |i| format!("{}: {}", r.cat, i.name)))
        .collect();
    let summary: Vec<String> = reports
        .iter()
        .map(|r| format!("{} rank<={} {}/{}", r.cat, r.max_rank, r.items.iter().filter(|i| i.passed).count(), r.items.len()))
        .collect();
    Ok((failed.is_empty(), format!("{}; failed: {failed:?}", summary.join(", "))))
}

pub fn unknown(id: u8) -> Outcome {
    Err(Error::Precondition(format!("no criterion {id}")))
}
