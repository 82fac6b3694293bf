use preproj::multiseg::{msm_max_tilde, psi, Multisegment, TildeDim};
use preproj::roots::*;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn lat() -> &'static Lattice {
    Lattice::delta()
}

fn small_vec() -> impl Strategy<Value = RootVec> {
    prop::array::uniform10(-5i64..6)
}

proptest! {
    #[test]
    fn coxeter_preserves_form(d in small_vec(), e in small_vec()) {
        let l = lat();
        let (pd, pe) = (l.apply_phi(&d), l.apply_phi(&e));
        prop_assert_eq!(l.form(&d, &e), l.form(&pd, &pe));
        prop_assert_eq!(l.form(&d, &e), -l.form(&e, &pd));
    }

    #[test]
    fn xi_is_additive(a in prop::collection::btree_map((1usize..6, -3i64..4), 0usize..3, 0..8),
                      b in prop::collection::btree_map((1usize..6, -3i64..4), 0usize..3, 0..8)) {
        let to_td = |m: &std::collections::BTreeMap<(usize, i64), usize>| {
            let t: Vec<_> = m.iter().map(|(&(i, j), &c)| (i, j, c)).collect();
            TildeDim::from_triples(&t)
        };
        let (x, y) = (to_td(&a), to_td(&b));
        let mut sum = x.clone();
        for (i, j, c) in y.iter() {
            sum.add(i, j, c);
        }
        prop_assert_eq!(xi_map(&sum), add(&xi_map(&x), &xi_map(&y)));
    }
}

#[test]
fn base_roots_match_table() {
    let b = base_roots();
    assert!(!b.from_fixture);
    assert!(b.matches_fixture);
    let all = b.all();
    assert_eq!(all.len(), 240);
    assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 240);
    let per_rank = |i: usize| b.classes.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v.len()).sum::<usize>();
    assert_eq!((per_rank(2), per_rank(3), per_rank(6)), (6, 24, 210));
    let l = lat();
    for r in &all {
        assert_eq!(l.q(r), 1);
        let (a, bb) = l.pairings(r);
        assert!((0..=5).contains(&a) && (0..=5).contains(&bb));
        let c = l.classify(r).unwrap();
        assert!([2, 3, 6].contains(&c.rank) && c.ql < c.rank);
        assert!(l.is_schur(r).unwrap());
    }
    // The two tabulated vectors of R_[1,0](2).
    let r10: BTreeSet<RootVec> = b.get(2, 1, 0).iter().copied().collect();
    let table: BTreeSet<RootVec> = [[0, 0, 0, 1, 1, 1, 2, 0, 1, 1], [0, 0, 1, 1, 0, 2, 1, 1, 1, 0]].into_iter().collect();
    assert_eq!(r10, table);
    let c = l.classify(&b.get(2, 1, 0)[0]).unwrap();
    assert_eq!((c.slope, c.rank, c.ql), (Slope::Finite(0.into()), 2, 1));
}

#[test]
fn construct_class_is_one_orbit() {
    let l = lat();
    for slope in ["0", "inf", "1", "1/2", "-1", "2/3", "-3/2"] {
        let s: Slope = slope.parse().unwrap();
        for rank in [2usize, 3, 6] {
            for ql in (1..=13).filter(|ql| ql % rank != 0) {
                let class = construct_class(s, ql, rank).unwrap();
                assert_eq!(class.len(), rank, "{slope} {ql} {rank}");
                let orbit: BTreeSet<RootVec> = (0..rank).map(|k| l.phi_pow(&class[0], k)).collect();
                assert_eq!(orbit, class.iter().copied().collect());
                for d in &class {
                    assert_eq!(l.classify(d).unwrap(), RootClass { slope: s, rank, ql });
                }
            }
        }
    }
    let c = construct_class(Slope::Finite(1.into()), 7, 6).unwrap();
    let shifted: BTreeSet<RootVec> = base_roots().get(6, 1, 1).iter().map(|r| add(r, &lat().h(1, 1))).collect();
    assert_eq!(c.into_iter().collect::<BTreeSet<_>>(), shifted);
}

/// Independent count: a real Schur root of slope b₀/a₀ has pairings g·(a₀,b₀)
/// with 1 ≤ g ≤ 5, and is a base root shifted by a radical vector, so it is
/// determined by a base root whose pairings are congruent to g·(a₀,b₀) mod 6.
fn census_oracle(slope: Slope) -> usize {
    let (a0, b0) = slope.primitive();
    let l = lat();
    let base = base_roots().all();
    let real: usize = (1..=5)
        .map(|g| {
            base.iter()
                .filter(|r| {
                    let (a, b) = l.pairings(r);
                    a == (g * a0).rem_euclid(6) && b == (g * b0).rem_euclid(6)
                })
                .count()
        })
        .sum();
    real + 1
}

#[test]
fn schur_census() {
    let l = lat();
    for slope in ["0", "inf", "1", "1/2", "-1", "5/7"] {
        let s: Slope = slope.parse().unwrap();
        let roots = schur_roots_of_slope(s).unwrap();
        assert_eq!(roots.len(), 39, "{slope}");
        assert_eq!(census_oracle(s), 39, "{slope}");
        assert_eq!(roots.iter().collect::<BTreeSet<_>>().len(), 39);
        for r in &roots {
            assert!(l.is_schur(r).unwrap());
            assert_eq!(l.classify(r).unwrap().slope, s);
        }
    }
}

#[test]
fn delta_examples() {
    // A root in R^{++} with a known multisegment.
    let d: RootVec = [1, 0, 2, 3, 1, 3, 3, 1, 2, 1];
    assert!(lat().is_positive_root(&d));
    let td = delta_map(&d).unwrap();
    assert_eq!(xi_map(&td), d);
    let expect: Multisegment = "[1,1]+[1,2]+[1,3]+2[2,3]+[3,4]+[3,5]+[4,4]+[5,5]".parse().unwrap();
    assert_eq!(psi(&td), expect);
    // A slope-0 root with a negative entry at 2_2.
    let mut d = [0i64; DIM];
    d[0] = -1;
    d[5] = 1;
    let expect: Multisegment = "[1,1]+[2,2]+[2,3]+[3,4]+[4,5]".parse().unwrap();
    assert_eq!(psi(&delta_map(&d).unwrap()), expect);
    // Fibre of ξ over m·h₀ contains m·h₀ + p₂.
    let h0 = lat().h(2, 0);
    let mut cv: CoverVec = VERTICES.iter().zip(h0).map(|(&v, c)| (v, c)).collect();
    for (k, c) in &p_vectors()[1] {
        *cv.entry(*k).or_default() += c;
    }
    assert_eq!(xi_signed(&cv), h0);
}

#[test]
fn xi_delta_identity_and_injectivity() {
    let roots: BTreeSet<RootVec> = random_roots(500, 7).into_iter().collect();
    let mut images = BTreeSet::new();
    for r in &roots {
        let td = delta_map(r).unwrap();
        assert_eq!(xi_map(&td), *r);
        images.insert(td.canonical().to_json());
    }
    // Different roots may lift to shifts of one another only if they agree.
    assert_eq!(images.len(), roots.len());
    assert_eq!(delta_map(&[0; DIM]).unwrap_err(), preproj::Error::NotPositiveRoot);
}

#[test]
fn delta_preserves_total_degree() {
    // ψ(δ(d)) has the same Λ₅ degree as the folded lift.
    for r in random_roots(100, 3) {
        let td = delta_map(&r).unwrap();
        let m = msm_max_tilde(&td);
        let deg = preproj::multiseg::degree(&m, 5);
        let mut per_vertex = [0usize; 5];
        for (i, _, c) in td.iter() {
            per_vertex[i - 1] += c;
        }
        assert_eq!(deg, per_vertex.to_vec());
    }
}

#[test]
fn e8_quotient() {
    let l = lat();
    let base = base_roots().all();
    for r in &base {
        assert_eq!(l.q(r), 1);
    }
    // Distinct modulo the radical: no difference is a·h₀ + b·h_∞.
    for (k, x) in base.iter().enumerate() {
        for y in &base[k + 1..] {
            let diff = sub(x, y);
            assert_ne!(l.h(diff[7], diff[0]), diff);
        }
    }
}

#[test]
fn critical_pairs_in_r0_4() {
    let class = construct_class(Slope::Finite(0.into()), 4, 6).unwrap();
    let mut found = Vec::new();
    for d in &class {
        for e in &class {
            if critical(d, e, CriticalReading::Literal).unwrap() {
                found.push((*d, *e));
            }
        }
    }
    // Some rank-6 tube pairs of quasi-length 4 are orthogonal both ways.
    assert!(!found.is_empty());
    for (d, e) in &found {
        assert_eq!(lat().form(d, e), 0);
        assert!(critical(e, d, CriticalReading::Literal).unwrap());
    }
}

#[test]
fn edge_properties() {
    let l = lat();
    let base = base_roots().all();
    assert!(base.iter().all(|d| !critical(d, d, CriticalReading::Literal).unwrap()));
    assert!(!critical(&l.h(1, 1), &l.h(1, 1), CriticalReading::Relaxed).unwrap());
    let mut pool: Vec<RootVec> = Vec::new();
    for s in ["0", "1", "inf", "-1"] {
        pool.extend(schur_roots_of_slope(s.parse().unwrap()).unwrap());
    }
    let mut checked = 0;
    for (k, d) in pool.iter().enumerate().step_by(3) {
        for e in pool.iter().skip(k % 7).step_by(11) {
            for reading in [CriticalReading::Literal, CriticalReading::Relaxed] {
                let x = edge(d, e, reading).unwrap();
                assert_eq!(x, edge(&l.apply_phi(d), &l.apply_phi(e), reading).unwrap());
            }
            checked += 1;
        }
    }
    assert!(checked >= 200);
}
