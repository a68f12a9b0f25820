use ficat::catcore::{fi_category, Category, Complemented};
use ficat::make_ring;
use ficat::si::make_si_category;
use ficat::vic::{make_ovic_category, make_vic_category, UnitSubgroup, VicCategory, VicMor};
use ficat::Mat;
use ficat_modhom::initial::{init_gap_check, init_module, init_of};
use ficat_modhom::linalg::{apply, SVec};
use ficat_modhom::module::functoriality_check;
use ficat_modhom::{representable, submodule_closure, Closure, Module, PrimeField, Rationals};

fn f2() -> PrimeField {
    PrimeField::new(2).unwrap()
}

#[test]
fn representable_dims() {
    let fi = fi_category();
    let p = representable(&fi, 1, 5, &Rationals).unwrap();
    assert_eq!((0..=5).map(|n| p.dim(n).unwrap()).collect::<Vec<_>>(), [0, 1, 2, 3, 4, 5]);

    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    let p = representable(&vic, 1, 3, &Rationals).unwrap();
    let dims: Vec<usize> = (0..=3).map(|n| p.dim(n).unwrap()).collect();
    assert_eq!(dims, [0, 1, 6, 28]);
    assert_eq!(28, 168 / 6);

    let si = make_si_category(&make_ring("Z/2").unwrap());
    let p = representable(&si, 1, 2, &Rationals).unwrap();
    assert_eq!((0..=2).map(|n| p.dim(n).unwrap()).collect::<Vec<_>>(), [0, 6, 120]);
}

#[test]
fn representables_are_functors() {
    let fi = fi_category();
    assert!(functoriality_check(&representable(&fi, 1, 3, &Rationals).unwrap(), 3).unwrap());
    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    assert!(functoriality_check(&representable(&vic, 1, 2, &f2()).unwrap(), 2).unwrap());
}

#[test]
fn closure_examples() {
    let k = f2();
    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    let p1 = representable(&vic, 1, 3, &k).unwrap();
    let canonical = |m: usize, n: usize| vic.canonical(m, n);
    let full = submodule_closure(&p1, &[(1, vec![(0, 1)])], Closure::Transitive, Some(&canonical)).unwrap();
    assert_eq!(full.dims(), [0, 1, 6, 28]);

    let zero = submodule_closure(&p1, &[], Closure::AllMorphisms, None).unwrap();
    assert_eq!(zero.dims(), [0, 0, 0, 0]);

    let gens = vec![(2, vec![(0, 1), (1, 1)])];
    let a = submodule_closure(&p1, &gens, Closure::AllMorphisms, None).unwrap();
    let b = submodule_closure(&p1, &gens, Closure::Transitive, Some(&canonical)).unwrap();
    assert_eq!(a.dims(), b.dims());
    assert!(a.dims()[2] < 6 && a.dims()[2] > 0);
    assert!(a.is_closed().unwrap() && b.is_closed().unwrap());
    assert!(a.is_contained_in(&b) && b.is_contained_in(&a));
    assert!(functoriality_check(&a, 3).unwrap());
}

#[test]
fn transitive_closure_agrees_on_fi_and_si() {
    let k = Rationals;
    let fi = fi_category();
    let p0 = representable(&fi, 1, 4, &k).unwrap();
    let canonical = |m: usize, n: usize| fi.canonical(m, n);
    let gens = vec![(2, vec![(0, k.one()), (1, k.from_i64(-1))])];
    let a = submodule_closure(&p0, &gens, Closure::AllMorphisms, None).unwrap();
    let b = submodule_closure(&p0, &gens, Closure::Transitive, Some(&canonical)).unwrap();
    assert_eq!(a.dims(), b.dims());
    assert!(a.is_closed().unwrap());

    let kk = f2();
    let si = make_si_category(&make_ring("Z/2").unwrap());
    let p = representable(&si, 1, 2, &kk).unwrap();
    let canonical = |m: usize, n: usize| si.canonical(m, n);
    let gens = vec![(2, vec![(0, 1), (5, 1)])];
    let a = submodule_closure(&p, &gens, Closure::AllMorphisms, None).unwrap();
    let b = submodule_closure(&p, &gens, Closure::Transitive, Some(&canonical)).unwrap();
    assert_eq!(a.dims(), b.dims());
}

use ficat_modhom::Field;

fn ovic_basis_index(p: &ficat_modhom::Representable<'_, ficat::vic::OvicCategory, PrimeField>, f: &[i64], fp: &[i64]) -> usize {
    let r = make_ring("Z/2").unwrap();
    let col: Vec<Vec<i64>> = f.iter().map(|x| vec![*x]).collect();
    let m = VicMor::new(Mat::from_ints(&r, &col).unwrap(), Mat::from_ints(&r, &[fp.to_vec()]).unwrap()).unwrap();
    p.index_of(&m).unwrap()
}

#[test]
fn initial_terms() {
    let k = f2();
    let ovic = make_ovic_category(&make_ring("Z/2").unwrap());
    let p = representable(&ovic, 1, 3, &k).unwrap();
    assert_eq!(init_of(&p, 2, &[]).unwrap(), None);
    for i in 0..p.dim(2).unwrap() {
        assert_eq!(init_of(&p, 2, &[(i, 1)]).unwrap(), Some((i, 1)));
    }
    let a = ovic_basis_index(&p, &[1, 0], &[1, 0]);
    let b = ovic_basis_index(&p, &[0, 1], &[0, 1]);
    let mut x = vec![(a, 1), (b, 1)];
    x.sort();
    assert_eq!(init_of(&p, 2, &x).unwrap(), Some((b, 1)));
}

// Brute force: every nonzero vector of the span contributes its initial term.
fn init_span_oracle(
    p: &ficat_modhom::Representable<'_, ficat::vic::OvicCategory, PrimeField>,
    rows: &[SVec<u64>],
    n: usize,
) -> Vec<usize> {
    let k = f2();
    let mut inits = std::collections::BTreeSet::new();
    for mask in 1..1u32 << rows.len() {
        let mut v: SVec<u64> = Vec::new();
        for (t, r) in rows.iter().enumerate() {
            if mask >> t & 1 == 1 {
                v = ficat_modhom::linalg::axpy(&k, &v, &1, r);
            }
        }
        if let Some((i, _)) = init_of(p, n, &v).unwrap() {
            inits.insert(i);
        }
    }
    inits.into_iter().collect()
}

#[test]
fn init_module_matches_enumeration() {
    let k = f2();
    let ovic = make_ovic_category(&make_ring("Z/2").unwrap());
    let p = representable(&ovic, 1, 3, &k).unwrap();
    let gen_sets = [
        vec![(2, vec![(0, 1), (1, 1)])],
        vec![(2, vec![(1, 1), (2, 1)]), (3, vec![(0, 1), (4, 1), (7, 1)])],
        vec![(1, vec![(0, 1)])],
    ];
    for gens in &gen_sets {
        let sub = submodule_closure(&p, gens, Closure::AllMorphisms, None).unwrap();
        let init = init_module(&sub).unwrap();
        for n in 0..=3 {
            assert_eq!(init[n].len(), sub.span(n).dim());
            if sub.span(n).dim() <= 12 {
                assert_eq!(init[n], init_span_oracle(&p, &sub.span(n).rows, n));
            }
        }
    }
}

#[test]
fn init_gap_examples() {
    let k = f2();
    let ovic = make_ovic_category(&make_ring("Z/2").unwrap());
    let p = representable(&ovic, 1, 3, &k).unwrap();
    let m = submodule_closure(&p, &[(1, vec![(0, 1)])], Closure::AllMorphisms, None).unwrap();
    let same = init_gap_check(&m, &m).unwrap();
    assert!(same.implication_holds && same.ranks.iter().all(|g| g.init_equal && g.submodule_equal));
    assert_eq!(same.strict_witness, None);

    let n = submodule_closure(&p, &[(2, vec![(0, 1)])], Closure::AllMorphisms, None).unwrap();
    let gap = init_gap_check(&n, &m).unwrap();
    assert!(gap.implication_holds);
    assert_eq!(gap.strict_witness, Some(1));
    assert!(init_gap_check(&m, &n).is_err());
}

#[test]
fn ovic_submodules_are_closed_under_action() {
    let k = f2();
    let ovic = make_ovic_category(&make_ring("Z/2").unwrap());
    let p = representable(&ovic, 1, 3, &k).unwrap();
    let sub = submodule_closure(&p, &[(2, vec![(1, 1), (3, 1)])], Closure::AllMorphisms, None).unwrap();
    assert!(sub.is_closed().unwrap());
    // one more pass changes nothing
    let gens: Vec<(usize, SVec<u64>)> = (0..=3)
        .flat_map(|n| sub.span(n).rows.iter().map(move |r| (n, r.clone())))
        .collect();
    let again = submodule_closure(&p, &gens, Closure::AllMorphisms, None).unwrap();
    assert_eq!(again.dims(), sub.dims());
    let f = &ovic.hom(2, 3).unwrap()[0];
    let a = p.act(f).unwrap();
    for r in &sub.span(2).rows {
        assert!(sub.contains(3, &apply(&k, &a, r)));
    }
}

#[test]
fn restricted_vic_representable() {
    let r = make_ring("Z/4").unwrap();
    let vic = make_vic_category(&r, &UnitSubgroup::new(&r, [1]).unwrap()).unwrap();
    let p = representable(&vic, 0, 2, &Rationals).unwrap();
    assert_eq!(p.dim(0).unwrap(), 1);
    assert_eq!(p.dim(2).unwrap() as u64, vic.hom_count(0, 2));
}
