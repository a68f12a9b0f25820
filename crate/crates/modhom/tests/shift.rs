use ficat::catcore::{fi_category, Complemented};
use ficat::make_ring;
use ficat::si::make_si_category;
use ficat::vic::{make_vic_category, UnitSubgroup, VicCategory};
use ficat_modhom::shift::{exactness_thresholds, generation_degree, homology_report};
use ficat_modhom::{
    general_shift, rep_shift, representable, submodule_closure, Closure, Module, PrimeField, Rationals,
    Variant,
};

// Dense rank modulo a large prime, independent of the sparse elimination.
fn dense_rank(mut m: Vec<Vec<i64>>) -> usize {
    const P: i64 = 1_000_003;
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(P) != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = {
            let (mut b, mut e, mut acc) = (m[rank][c].rem_euclid(P), P - 2, 1i64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % P;
                }
                b = b * b % P;
                e >>= 1;
            }
            acc
        };
        for r in 0..m.len() {
            if r != rank && m[r][c].rem_euclid(P) != 0 {
                let f = m[r][c].rem_euclid(P) * inv % P;
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

// Homology of an augmented complex whose p-chains are the words `cells[p]`
// and whose boundary deletes one letter at a time with alternating sign.
fn word_complex_homology(cells: &[Vec<Vec<usize>>]) -> Vec<usize> {
    let boundary = |p: usize| -> usize {
        if p == 0 || p >= cells.len() {
            return 0;
        }
        let mut m = vec![vec![0i64; cells[p].len()]; cells[p - 1].len()];
        for (j, w) in cells[p].iter().enumerate() {
            for i in 0..w.len() {
                let mut v = w.clone();
                v.remove(i);
                let row = cells[p - 1].iter().position(|x| *x == v).unwrap();
                m[row][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        dense_rank(m)
    };
    (0..cells.len())
        .map(|p| cells[p].len() - boundary(p) - boundary(p + 1))
        .collect()
}

fn words(n: usize, injective_only: bool, increasing: bool) -> Vec<Vec<Vec<usize>>> {
    let mut cells = vec![vec![vec![]]];
    for p in 1..=n {
        let mut next = Vec::new();
        for w in &cells[p - 1] {
            for a in 0..n {
                if (injective_only && w.contains(&a)) || (increasing && w.last().is_some_and(|&l| l >= a)) {
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

fn derangements(n: usize) -> usize {
    let mut d = vec![1usize, 0];
    for i in 2..=n {
        d.push((i - 1) * (d[i - 1] + d[i - 2]));
    }
    d[n]
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn fi_chain_dims() {
    let fi = fi_category();
    let p0 = representable(&fi, 0, 5, &Rationals).unwrap();
    for n in 0..=5 {
        let triple = rep_shift(&p0, Variant::Triple).complex(n).unwrap();
        assert_eq!(triple.dims, (0..=n).map(|p| binom(n, p)).collect::<Vec<_>>());
        let plain = rep_shift(&p0, Variant::Plain).complex(n).unwrap();
        let fact = |k: usize| (1..=k).product::<usize>();
        assert_eq!(plain.dims, (0..=n).map(|p| fact(n) / fact(n - p)).collect::<Vec<_>>());
    }
}

#[test]
fn simplex_and_injective_words_oracles() {
    let fi = fi_category();
    let p0 = representable(&fi, 0, 5, &Rationals).unwrap();
    for n in 1..=5 {
        let ours = rep_shift(&p0, Variant::Triple).complex(n).unwrap().homology(n);
        assert_eq!(ours, word_complex_homology(&words(n, true, true)));
        assert!(ours.iter().all(|&h| h == 0));
    }
    for n in 0..=4 {
        let ours = rep_shift(&p0, Variant::Plain).complex(n).unwrap().homology(n);
        assert_eq!(ours, word_complex_homology(&words(n, true, false)));
        let mut expect = vec![0; n + 1];
        expect[n] = derangements(n);
        assert_eq!(ours, expect);
    }
}

#[test]
fn homology_examples() {
    let fi = fi_category();
    let p0 = representable(&fi, 0, 3, &Rationals).unwrap();
    let c = rep_shift(&p0, Variant::Triple).complex(3).unwrap();
    let rep = homology_report(&p0, &c, Variant::Triple, 3, 2);
    assert_eq!(serde_json::to_value(&rep.dims).unwrap(), serde_json::json!({"H0": 0, "H1": 0, "H2": 0}));
    assert_eq!(rep.truncation, 3);
    let c0 = rep_shift(&p0, Variant::Plain).complex(0).unwrap();
    assert_eq!(c0.homology(0), [1]);

    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    let v0 = representable(&vic, 0, 3, &Rationals).unwrap();
    for n in 1..=3 {
        assert_eq!(rep_shift(&v0, Variant::Plain).complex(n).unwrap().homology(0), [0]);
    }
}

#[test]
fn chain_dims_match_counts() {
    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    let si = make_si_category(&make_ring("Z/2").unwrap());
    let fi = fi_category();
    fn check<C: Complemented>(cat: &C, top: usize) {
        for d in 0..=1 {
            let p = representable(cat, d, top, &Rationals).unwrap();
            for n in 0..=top {
                for v in Variant::ALL {
                    let s = rep_shift(&p, v);
                    assert_eq!(s.complex(n).unwrap().dims, s.expected_dims(n).unwrap());
                }
                for q in 0..=n.saturating_sub(d) {
                    assert_eq!(
                        cat.hom_count(q + d, n),
                        cat.hom_count(q, n) * cat.hom_count(d, n - q),
                        "{} p={q} d={d} n={n}",
                        cat.name()
                    );
                }
            }
        }
    }
    check(&fi, 4);
    check(&vic, 3);
    check(&si, 2);
}

#[test]
fn complement_route_agrees_with_representable_route() {
    fn check<C: Complemented>(cat: &C, top: usize) {
        for d in 0..=1 {
            let p = representable(cat, d, top, &Rationals).unwrap();
            for n in 0..=top {
                for v in Variant::ALL {
                    let a = rep_shift(&p, v).complex(n).unwrap();
                    let b = general_shift(&p, v).complex(n).unwrap();
                    assert_eq!(a.dims[..], b.dims[..a.dims.len()], "{} {v:?} n={n}", cat.name());
                    assert_eq!(a.homology(n), b.homology(n), "{} {v:?} n={n}", cat.name());
                }
            }
        }
    }
    check(&fi_category(), 3);
    check(&VicCategory::full(&make_ring("Z/2").unwrap()), 2);
    check(&VicCategory::full(&make_ring("Z/3").unwrap()), 2);
    check(&make_si_category(&make_ring("Z/2").unwrap()), 1);
}

#[test]
fn submodule_complexes() {
    let k = PrimeField::new(2).unwrap();
    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    let p1 = representable(&vic, 1, 3, &k).unwrap();
    let sub = submodule_closure(&p1, &[(2, vec![(0, 1), (1, 1)])], Closure::AllMorphisms, None).unwrap();
    for v in Variant::ALL {
        for n in 0..=3 {
            assert!(general_shift(&sub, v).complex(n).unwrap().d_squared_zero());
        }
    }
}

#[test]
fn homotopy_identities() {
    let fi = fi_category();
    let p0 = representable(&fi, 0, 4, &Rationals).unwrap();
    let p1 = representable(&fi, 1, 4, &Rationals).unwrap();
    for v in Variant::ALL {
        for n in 0..=3 {
            for p in [&p0, &p1] {
                let r = rep_shift(p, v).homotopy_check(n).unwrap();
                assert!(r.passed(), "{r:?}");
            }
        }
    }
    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    let q1 = representable(&vic, 1, 3, &Rationals).unwrap();
    for v in Variant::ALL {
        let r = rep_shift(&q1, v).homotopy_check(2).unwrap();
        assert!(r.passed(), "{r:?}");
    }
    let si = make_si_category(&make_ring("Z/2").unwrap());
    let s0 = representable(&si, 0, 2, &Rationals).unwrap();
    assert!(rep_shift(&s0, Variant::Triple).homotopy_check(1).unwrap().passed());
}

#[test]
fn asymmetric_instance_rejects_signed_variants() {
    let r = make_ring("Z/4").unwrap();
    let vic = make_vic_category(&r, &UnitSubgroup::new(&r, [1]).unwrap()).unwrap();
    let p0 = representable(&vic, 0, 2, &Rationals).unwrap();
    assert!(rep_shift(&p0, Variant::Double).complex(2).is_err());
    assert!(rep_shift(&p0, Variant::Plain).homotopy_check(1).is_err());
    assert!(rep_shift(&p0, Variant::Plain).complex(2).unwrap().d_squared_zero());
}

#[test]
fn generation_degrees() {
    let fi = fi_category();
    let vic = VicCategory::full(&make_ring("Z/2").unwrap());
    for d in 0..=1 {
        let p = representable(&fi, d, 4, &Rationals).unwrap();
        let g = generation_degree(&p).unwrap();
        for n in 0..=4 {
            assert_eq!(g.onto[n], n > d || p.dim(n).unwrap() == 0);
        }
        assert_eq!(g.stable_from, Some(d + 1));
        let q = representable(&vic, d, 3, &Rationals).unwrap();
        assert_eq!(generation_degree(&q).unwrap().stable_from, Some(d + 1));
    }
    let k = Rationals;
    let p1 = representable(&fi, 1, 3, &k).unwrap();
    let zero = submodule_closure(&p1, &[], Closure::AllMorphisms, None).unwrap();
    let g = generation_degree(&zero).unwrap();
    assert!(g.onto.iter().all(|&b| b));
    assert_eq!(g.stable_from, Some(0));
}

#[test]
fn thresholds() {
    let fi = fi_category();
    let p0 = representable(&fi, 0, 4, &Rationals).unwrap();
    let t = exactness_thresholds(&p0, Variant::Plain, 2).unwrap();
    assert_eq!(t.degrees[0].vanishing_from, Some(1));
    assert_eq!(t.degrees[1].vanishing_from, Some(0));
    assert_eq!(t.degrees[2].vanishing_from, Some(3));
    assert_eq!(t.exact_from, Some(3));
    // D_1 = 0 makes rank 1 exact before H_2 appears at rank 2
    assert_eq!(t.anomalies, [2]);
}
