use std::sync::Arc;

use meadow_core::construct::{build_m, lift_surjective_hom, meadow_product};
use meadow_core::{
    build_group_algebra_meadow, decompose_local, decompose_local_ordered, find_ring_isomorphism, maximal_ideals,
    meadows_isomorphic, DirectedLattice, Error, FiniteLattice, FiniteRing, IsoStatus, Limits, Meadow, Origin, RingHom,
    RingSpec,
};
use proptest::prelude::*;

const BUDGET: u64 = 1_000_000;

const CORPUS: &[&str] = &[
    "zn:2",
    "zn:4",
    "zn:6",
    "zn:8",
    "zn:9",
    "zn:12",
    "zn:30",
    "poly:p=2,mod=[1,1,1]",
    "poly:p=2,mod=[0,0,1]",
    "poly:p=2,mod=[0,0,0,1]",
    "poly:p=3,mod=[1,0,1]",
    "prod:(zn:2,zn:2)",
    "prod:(zn:2,zn:4)",
    "prod:(zn:3,zn:4)",
    "ga:base=zn:2,group=[2]",
    "ga:base=zn:3,group=[2]",
    "quot:zn:24/gens=[12]",
];

fn ring(s: &str) -> Arc<FiniteRing> {
    RingSpec::parse(s).unwrap().build().unwrap()
}

fn m(s: &str) -> Meadow {
    build_m(&ring(s)).unwrap()
}

fn diamond() -> Meadow {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/examples/pi1pi1.json")).unwrap();
    Meadow::from_directed_lattice(DirectedLattice::from_json(&text).unwrap())
}

#[test]
fn corpus_meadows_satisfy_every_law() {
    for s in CORPUS {
        let mm = m(s);
        assert!(mm.is_common(), "{s}");
        for report in mm.check_all(&Limits::default()) {
            assert!(report.passed(), "{s}\n{report}");
        }
    }
}

#[test]
fn atoms_are_maximal_ideals() {
    for s in CORPUS {
        let r = ring(s);
        let mm = build_m(&r).unwrap();
        let maximal = maximal_ideals(&r).unwrap();
        // a finite ring is a product of as many local rings as it has primitive idempotents
        assert_eq!(maximal.len(), r.primitive_idempotents().len(), "{s}");
        assert_eq!(mm.meadow_atoms().len(), maximal.len(), "{s}");
        let Origin::Ring { ideals, .. } = mm.origin() else {
            unreachable!()
        };
        let mut atom_ideals: Vec<_> = mm.meadow_atoms().iter().map(|&v| ideals[v].clone()).collect();
        let mut expected = maximal.clone();
        atom_ideals.sort_by_key(|i| i.members().to_vec());
        expected.sort_by_key(|i| i.members().to_vec());
        assert_eq!(atom_ideals, expected);
        assert_eq!(mm.is_local().unwrap(), maximal.len() == 1, "{s}");
    }
}

#[test]
fn product_is_common_iff_both_factors_are() {
    let corpus = [m("zn:4"), m("poly:p=2,mod=[1,1,1]"), m("zn:6"), diamond()];
    for p in &corpus {
        for q in &corpus {
            let pq = meadow_product(p, q).unwrap();
            assert_eq!(pq.is_common(), p.is_common() && q.is_common());
            assert_eq!(pq.size(), {
                let fibers = |x: &Meadow| (0..x.vertex_count()).map(|v| x.ring_at(v).order()).collect::<Vec<_>>();
                let (fp, fq) = (fibers(p), fibers(q));
                fp.iter().flat_map(|a| fq.iter().map(move |b| a * b)).sum::<usize>()
            });
            assert!(pq.check_pre_meadow(&Limits::default()).passed());
        }
    }
}

#[test]
fn product_pairs_round_trip() {
    let (p, q) = (m("zn:4"), m("zn:3"));
    let pq = meadow_product(&p, &q).unwrap();
    for x in p.elements() {
        for y in q.elements() {
            let z = pq.pair(x, y).unwrap();
            assert_eq!(pq.split(z), Some((x, y)));
        }
    }
}

#[test]
fn decomposition_over_corpus() {
    for s in CORPUS {
        let r = ring(s);
        let d = decompose_local(&build_m(&r).unwrap()).unwrap();
        d.iso.verify().unwrap();
        assert_eq!(d.factors.len(), r.primitive_idempotents().len(), "{s}");
        assert_eq!(
            d.factor_rings.iter().map(|c| c.order()).product::<usize>(),
            r.order(),
            "{s}"
        );
        for f in &d.factors {
            assert!(f.is_local().unwrap());
        }
        let report = d.report();
        assert!(report.iso.verified && report.iso.bijective);
    }
}

#[test]
fn decomposition_does_not_depend_on_idempotent_order() {
    let mm = m("prod:(zn:2,zn:3,zn:4)");
    let canonical = decompose_local(&mm).unwrap();
    let reference: Vec<Meadow> = ["zn:2", "zn:3", "zn:4"].iter().map(|s| m(s)).collect();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let d = decompose_local_ordered(&mm, &perm).unwrap();
        d.iso.verify().unwrap();
        let mut orders: Vec<usize> = d.factor_rings.iter().map(|c| c.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, [2, 3, 4]);
        // each factor matches exactly one of M(Z_2), M(Z_3), M(Z_4)
        for f in &d.factors {
            let hits = reference
                .iter()
                .filter(|r| meadows_isomorphic(f, r, BUDGET).is_isomorphic())
                .count();
            assert_eq!(hits, 1);
        }
    }
    assert_eq!(canonical.factors.len(), 3);
    assert!(decompose_local_ordered(&mm, &[0, 0, 1]).is_err());
}

#[test]
fn decomposition_needs_a_ring_origin() {
    assert!(matches!(decompose_local(&diamond()), Err(Error::Unsupported(_))));
}

#[test]
fn isomorphisms() {
    let iso = meadows_isomorphic(&m("zn:6"), &m("prod:(zn:2,zn:3)"), BUDGET)
        .witness()
        .unwrap();
    iso.verify().unwrap();
    let back = iso.inverse().unwrap();
    for x in iso.source().elements() {
        assert_eq!(back.apply(iso.apply(x)), x);
    }

    match meadows_isomorphic(&m("zn:4"), &m("prod:(zn:2,zn:2)"), BUDGET) {
        IsoStatus::NotIsomorphic(why) => assert!(why.starts_with("lattice shapes differ"), "{why}"),
        other => panic!("{}", other.label()),
    }
    // same lattice, non-isomorphic top rings
    match meadows_isomorphic(&m("poly:p=2,mod=[0,0,1]"), &m("zn:4"), BUDGET) {
        IsoStatus::NotIsomorphic(why) => assert!(why.contains("base rings"), "{why}"),
        other => panic!("{}", other.label()),
    }
    // no base ring on one side: general search
    let ga = build_group_algebra_meadow(&FiniteRing::zn(2).unwrap(), &[2]).unwrap();
    let dual = m("poly:p=2,mod=[0,0,1]");
    meadows_isomorphic(&ga, &dual, BUDGET)
        .witness()
        .unwrap()
        .verify()
        .unwrap();
    assert!(!meadows_isomorphic(&ga, &m("zn:4"), BUDGET).is_isomorphic());
    assert!(matches!(meadows_isomorphic(&ga, &dual, 0), IsoStatus::Unknown));
}

#[test]
fn surjections_lift() {
    let (z12, z4) = (FiniteRing::zn(12).unwrap(), FiniteRing::zn(4).unwrap());
    let f = RingHom::new(z12.clone(), z4.clone(), (0..12).map(|x| x % 4).collect()).unwrap();
    let lifted = lift_surjective_hom(&f).unwrap();
    lifted.verify().unwrap();
    let (src, tgt) = (lifted.source(), lifted.target());
    assert_eq!(lifted.apply(src.one()), tgt.one());
    assert_eq!(lifted.apply(src.a()), tgt.a());

    let f2 = FiniteRing::zn(2).unwrap();
    let v = ring("prod:(zn:2,zn:2)");
    let diag = RingHom::new(f2, v, vec![0, 3]).unwrap();
    assert!(matches!(lift_surjective_hom(&diag), Err(Error::Unsupported(_))));
}

#[test]
fn group_algebra_meadows() {
    let f2 = FiniteRing::zn(2).unwrap();
    let g = build_group_algebra_meadow(&f2, &[2]).unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert!(g.is_totally_ordered());
    assert!(g.is_common());

    let g = build_group_algebra_meadow(&f2, &[2, 2]).unwrap();
    assert_eq!(g.vertex_count(), 6);
    assert!(g.is_common());
    assert!(g.is_local().unwrap());

    let g = build_group_algebra_meadow(&FiniteRing::zn(5).unwrap(), &[2]).unwrap();
    assert_eq!(g.size(), 25 + 5 + 1);
    assert!(g.is_common());
    for r in g.check_all(&Limits::default()) {
        assert!(r.passed(), "{r}");
    }
}

/// Units of `F_3[Z_2 x Z_2]/(h-1 : h in H)` read off the four characters
/// trivial on `H`: the algebra is semisimple, so `x` is a unit there iff no
/// such character kills it.
fn unit_by_characters(coeffs: &[usize; 4], subgroup: &[usize]) -> bool {
    let signs = |g: usize, a: i64, b: i64| if g & 1 == 1 { a } else { 1 } * if g & 2 == 2 { b } else { 1 };
    [(1, 1), (1, -1), (-1, 1), (-1, -1)]
        .into_iter()
        .filter(|&(a, b)| subgroup.iter().all(|&h| signs(h, a, b) == 1))
        .all(|(a, b)| {
            (0..4)
                .map(|g| coeffs[g] as i64 * signs(g, a, b))
                .sum::<i64>()
                .rem_euclid(3)
                != 0
        })
}

#[test]
fn klein_four_over_f3_is_not_common() {
    let g = build_group_algebra_meadow(&FiniteRing::zn(3).unwrap(), &[2, 2]).unwrap();
    let Origin::GroupAlgebra { subgroups, .. } = g.origin() else {
        unreachable!()
    };
    assert_eq!(subgroups.len(), 5);
    assert!(g.check_pre_meadow(&Limits::default()).passed());

    let top = g.ring_at(g.top());
    let x = (0..top.order()).find(|&i| top.fmt_element(i) == "2+g0+g1").unwrap();
    let coeffs = [2, 1, 1, 0];
    let e = g.element(g.top(), x).unwrap();
    let set = g.invertibility_set(e);
    for (v, h) in subgroups.iter().enumerate() {
        assert_eq!(
            set.contains(&v),
            unit_by_characters(&coeffs, h),
            "{}",
            g.vertex_label(v)
        );
    }
    let maximal: Vec<&str> = g.maximal_invertibility(e).iter().map(|&v| g.vertex_label(v)).collect();
    assert_eq!(maximal, ["<g0>", "<g1>"]);
    assert!(!g.is_common());
    assert!(matches!(g.minv(e), Err(Error::NotCommon { .. })));
}

#[test]
fn sampled_checks_are_reproducible() {
    let mm = m("zn:12");
    // fewer samples than the 28^3 triples, so sampling actually kicks in
    let limits = Limits {
        samples: 2000,
        ..Limits::default()
    }
    .sampled(true)
    .with_seed(7);
    let a = mm.check_pre_meadow(&limits);
    let b = mm.check_pre_meadow(&limits);
    assert_eq!(a, b);
    assert!(a.passed() && a.is_sampled());
    assert!(mm.check_pre_meadow(&limits.with_seed(8)).passed());
}

#[test]
fn size_cap_is_enforced() {
    let r = ring("zn:64");
    assert!(matches!(
        meadow_core::construct::build_m_with(&r, &Limits::default().with_size_cap(32)),
        Err(Error::CapExceeded { .. })
    ));
}

/// A chain `{a} < Z_{n_1} < ... < Z_{n_k}` with each `n_i` dividing `n_{i+1}`.
fn divisor_chain(ns: &[usize]) -> Meadow {
    let k = ns.len();
    let lattice = FiniteLattice::chain(k + 1).unwrap();
    let mut rings = vec![FiniteRing::zn(1).unwrap()];
    rings.extend(ns.iter().map(|&n| FiniteRing::zn(n).unwrap()));
    let edges = (1..k)
        .map(|i| {
            let (lo, hi) = (ns[i - 1], ns[i]);
            let h = RingHom::new(
                rings[i + 1].clone(),
                rings[i].clone(),
                (0..hi).map(|x| x % lo).collect(),
            )
            .unwrap();
            ((i + 1, i), h)
        })
        .collect();
    Meadow::from_directed_lattice(DirectedLattice::new(lattice, rings, edges).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chains_are_common(first in 2usize..6, steps in proptest::collection::vec(1usize..4, 0..3)) {
        let mut ns = vec![first];
        for s in steps {
            let next = ns.last().unwrap() * s;
            ns.push(next);
        }
        let mm = divisor_chain(&ns);
        prop_assert!(mm.is_totally_ordered());
        prop_assert!(mm.is_common());
        prop_assert!(mm.is_local().unwrap());
        prop_assert!(mm.check_common(&Limits::default()).passed());
        prop_assert!(mm.check_pre_meadow(&Limits::default()).passed());
    }

    #[test]
    fn m_of_zn_is_common(n in 2usize..40) {
        let mm = m(&format!("zn:{n}"));
        prop_assert!(mm.is_common());
        prop_assert_eq!(mm.meadow_atoms().len(), maximal_ideals(&FiniteRing::zn(n).unwrap()).unwrap().len());
        prop_assert!(find_ring_isomorphism(mm.ring_at(mm.top()), &FiniteRing::zn(n).unwrap(), BUDGET).is_isomorphic());
    }
}

#[test]
fn field_inclusion_chain_is_common() {
    // F_2 on top, F_4 below it through the inclusion
    let f2 = FiniteRing::zn(2).unwrap();
    let f4 = ring("poly:p=2,mod=[1,1,1]");
    let inc = RingHom::new(f2.clone(), f4.clone(), vec![0, 1]).unwrap();
    let lattice = FiniteLattice::chain(3).unwrap();
    let dl = DirectedLattice::new(lattice, vec![FiniteRing::zn(1).unwrap(), f4, f2], vec![((2, 1), inc)]).unwrap();
    let mm = Meadow::from_directed_lattice(dl);
    assert!(mm.is_common());
    for r in mm.check_all(&Limits::default()) {
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn incoherent_lattices_are_rejected() {
    let v = ring("prod:(zn:2,zn:2)");
    let f2 = FiniteRing::zn(2).unwrap();
    let lattice = FiniteLattice::from_covers(
        5,
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        ["top", "l", "r", "low", "bot"].map(String::from).to_vec(),
    )
    .unwrap();
    let pi1 = RingHom::new(v.clone(), f2.clone(), vec![0, 1, 0, 1]).unwrap();
    let pi2 = RingHom::new(v.clone(), f2.clone(), vec![0, 0, 1, 1]).unwrap();
    let id = || RingHom::identity(&f2);
    let rings = vec![v, f2.clone(), f2.clone(), f2.clone(), FiniteRing::zn(1).unwrap()];
    let edges = vec![((0, 1), pi1), ((0, 2), pi2), ((1, 3), id()), ((2, 3), id())];
    assert!(matches!(
        DirectedLattice::new(lattice, rings, edges),
        Err(Error::Coherence { .. })
    ));
}
