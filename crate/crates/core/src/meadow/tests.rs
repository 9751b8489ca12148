use super::*;
use crate::construct::build_m;
use crate::finite_ring::RingSpec;
use crate::lattice::FiniteLattice;
use crate::limits::Limits;

fn m_of(s: &str) -> Meadow {
    build_m(&RingSpec::parse(s).unwrap().build().unwrap()).unwrap()
}

/// An element of `M(R)` as a pair (ideal members, coset members).
type Coset = (Vec<usize>, Vec<usize>);

fn as_coset(m: &Meadow, x: Element) -> Coset {
    let Origin::Ring { ring, ideals, .. } = m.origin() else {
        panic!()
    };
    let ideal = &ideals[x.vertex()];
    let rep = m.ring_at(x.vertex()).coset_representative(x.index()).unwrap();
    let mut coset: Vec<usize> = ideal.members().iter().map(|&i| ring.add(rep, i)).collect();
    coset.sort_unstable();
    (ideal.members().to_vec(), coset)
}

fn from_coset(m: &Meadow, c: &Coset) -> Element {
    m.elements()
        .find(|&e| as_coset(m, e) == *c)
        .expect("coset is an element")
}

fn set_sum(r: &FiniteRing, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut s: Vec<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| r.add(x, y))).collect();
    s.sort_unstable();
    s.dedup();
    s
}

/// Sum and product of cosets computed from the ring alone.
fn oracle_ops(m: &Meadow, x: &Coset, y: &Coset) -> (Coset, Coset) {
    let r = m.base_ring().unwrap();
    let ij = set_sum(r, &x.0, &y.0);
    let sum = set_sum(r, &x.1, &y.1);
    let p = r.mul(x.1[0], y.1[0]);
    let prod = set_sum(r, &[p], &ij);
    ((ij.clone(), sum), (ij, prod))
}

/// Total inverse from the ring alone: the least ideal `J ⊇ I` modulo which
/// `x` is a unit, and an inverse modulo `J`.
fn oracle_inverse(m: &Meadow, x: &Coset) -> Coset {
    let r = m.base_ring().unwrap();
    let Origin::Ring { ideals, .. } = m.origin() else {
        panic!()
    };
    let rep = x.1[0];
    let unit_mod = |j: &[usize]| r.elements().find(|&y| j.contains(&r.sub(r.mul(rep, y), r.one())));
    let candidates: Vec<&Ideal> = ideals
        .iter()
        .filter(|j| x.0.iter().all(|i| j.contains(*i)) && unit_mod(j.members()).is_some())
        .collect();
    let least = candidates
        .iter()
        .find(|j| candidates.iter().all(|k| j.is_subset_of(k)))
        .expect("M(R) is common");
    let y = unit_mod(least.members()).unwrap();
    let members = least.members().to_vec();
    (members.clone(), set_sum(r, &[y], &members))
}

#[test]
fn operations_agree_with_coset_arithmetic() {
    for s in ["zn:6", "zn:8", "zn:12", "prod:(zn:2,zn:4)", "poly:p=2,mod=[0,0,1]"] {
        let m = m_of(s);
        for x in m.elements() {
            let cx = as_coset(&m, x);
            for y in m.elements() {
                let (sum, prod) = oracle_ops(&m, &cx, &as_coset(&m, y));
                assert_eq!(m.madd(x, y), from_coset(&m, &sum), "{s}: {x:?} + {y:?}");
                assert_eq!(m.mmul(x, y), from_coset(&m, &prod), "{s}: {x:?} * {y:?}");
            }
            assert_eq!(
                m.minv(x).unwrap(),
                from_coset(&m, &oracle_inverse(&m, &cx)),
                "{s}: inv {x:?}"
            );
        }
    }
}

#[test]
fn m_z6_structure() {
    let m = m_of("zn:6");
    let labels: Vec<&str> = (0..m.vertex_count()).map(|v| m.vertex_label(v)).collect();
    assert_eq!(labels, ["(0)", "(3)", "(2)", "(1)"]);
    assert_eq!(m.size(), 12);
    assert_eq!(m.top(), 0);
    assert_eq!(m.bottom(), 3);
    assert_eq!(m.vertex_ring_label(3), "{a}");
    assert!(m.is_common());

    let two = m.element(0, 2).unwrap();
    let three = m.element(0, 3).unwrap();
    assert_eq!(m.mmul(two, three), m.element(0, 0).unwrap());
    let z3 = m.element(1, 0).unwrap();
    let z2 = m.element(2, 0).unwrap();
    // 0@(3) + 0@(2) lands at (3)+(2) = (1)
    assert_eq!(m.madd(z3, z2), m.a());
    assert_eq!(m.zero_of(two), m.zero());
    assert!(m.order_leq(z3, m.zero()).unwrap());
    assert!(!m.order_leq(m.zero(), z3).unwrap());
    assert!(matches!(m.order_leq(two, m.zero()), Err(Error::NotAFiberZero(_))));

    assert_eq!(m.invertibility_set(two), [1, 3]);
    assert_eq!(m.greatest_invertibility(two), Some(1));
    let inv = m.minv(two).unwrap();
    assert_eq!(m.describe(inv), "2@(3)");
    assert_eq!(m.minv(m.zero()).unwrap(), m.a());
    assert_eq!(m.render(m.a()), "a");
}

#[test]
fn locality() {
    assert!(!m_of("zn:6").is_local().unwrap());
    assert_eq!(m_of("zn:6").meadow_atoms().len(), 2);
    assert!(m_of("zn:4").is_local().unwrap());
    assert!(m_of("zn:9").is_local().unwrap());
    assert!(m_of("zn:8").is_totally_ordered());
    assert!(!m_of("zn:12").is_local().unwrap());
}

#[test]
fn laws_hold_on_m_of_r() {
    for s in ["zn:6", "zn:12", "prod:(zn:2,zn:2)"] {
        for report in m_of(s).check_all(&Limits::default()) {
            assert!(report.passed(), "{report}");
            assert!(!report.is_sampled());
        }
    }
}

#[test]
fn two_chain_over_a_field() {
    let f3 = FiniteRing::zn(3).unwrap();
    let dl = DirectedLattice::new(
        FiniteLattice::chain(2).unwrap(),
        vec![FiniteRing::zn(1).unwrap(), f3],
        vec![],
    )
    .unwrap();
    let m = Meadow::from_directed_lattice(dl);
    assert_eq!(m.size(), 4);
    assert!(m.is_common());
    assert!(m.is_local().unwrap());
    let two = m.element(1, 2).unwrap();
    assert_eq!(m.minv(two).unwrap(), two);
    assert_eq!(m.minv(m.zero()).unwrap(), m.a());
    for r in m.check_all(&Limits::default()) {
        assert!(r.passed(), "{r}");
    }
}

/// `Z_2 x Z_2` over two copies of `Z_2` (both by the first projection),
/// which meet in a further `Z_2` by identities, above `{a}`.
fn diamond() -> Meadow {
    let v = FiniteRing::product(&[FiniteRing::zn(2).unwrap(), FiniteRing::zn(2).unwrap()]).unwrap();
    let f2 = FiniteRing::zn(2).unwrap();
    let lattice = FiniteLattice::from_covers(
        5,
        &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
        ["top", "l", "r", "low", "bot"].map(String::from).to_vec(),
    )
    .unwrap();
    let pi1 = || RingHom::new(v.clone(), f2.clone(), vec![0, 1, 0, 1]).unwrap();
    let id = || RingHom::identity(&f2);
    let rings = vec![
        v.clone(),
        f2.clone(),
        f2.clone(),
        f2.clone(),
        FiniteRing::zn(1).unwrap(),
    ];
    let edges = vec![((0, 1), pi1()), ((0, 2), pi1()), ((1, 3), id()), ((2, 3), id())];
    Meadow::from_directed_lattice(DirectedLattice::new(lattice, rings, edges).unwrap())
}

#[test]
fn diamond_of_projections_is_not_common() {
    let m = diamond();
    let pre = m.check_pre_meadow(&Limits::default());
    assert!(pre.passed(), "{pre}");
    assert!(!m.is_common());
    let w = m.common_witness().unwrap();
    assert_eq!(w.rendered, "(1,0)");
    assert_eq!(w.maximal, [1, 2]);
    assert!(m.is_local().unwrap());
    assert_eq!(m.meadow_atoms(), [3]);
    assert!(matches!(
        m.minv(w.element),
        Err(Error::NotCommon { maximal_count: 2, .. })
    ));
    let common = m.check_common(&Limits::default());
    assert!(!common.passed());
    assert!(common
        .law("C")
        .unwrap()
        .counterexample
        .as_ref()
        .unwrap()
        .contains("(1,0)"));
}

#[test]
fn corrupted_transition_is_caught() {
    let m = m_of("zn:6");
    let dl = m.directed_lattice();
    let n = dl.size();
    let mut trans: Vec<Option<RingHom>> = Vec::new();
    for lower in 0..n {
        for upper in 0..n {
            trans.push(dl.transition(lower, upper).cloned());
        }
    }
    // f((2), (0)): Z_6 -> Z_2 replaced by the zero map
    trans[2 * n] = Some(RingHom::new_unchecked(
        dl.ring(0).clone(),
        dl.ring(2).clone(),
        vec![0; 6],
    ));
    let broken = DirectedLattice::from_parts_unchecked(dl.lattice().clone(), dl.rings().to_vec(), trans);
    let bad = Meadow::from_directed_lattice(broken);
    let t = bad.check_transition_maps(&Limits::default());
    assert!(!t.passed());
    assert!(t.law("T1").is_some_and(|l| !l.passed));
    let p = bad.check_pre_meadow(&Limits::default());
    assert!(!p.passed(), "{p}");
}

#[test]
fn foreign_elements_are_rejected() {
    let (m, n) = (m_of("zn:6"), m_of("zn:6"));
    assert!(!m.owns(n.one()));
    assert!(m.minv(n.one()).is_err());
    assert!(m.element(0, 6).is_err());
    assert!(m.element(9, 0).is_err());
}

#[test]
fn dump_and_dot() {
    let m = m_of("zn:6");
    let d = m.dump();
    assert_eq!(d.schema, 1);
    assert_eq!(d.kind, "ring");
    assert_eq!(d.carrier_size, 12);
    assert_eq!((d.top.as_str(), d.bottom.as_str()), ("(0)", "(1)"));
    let dot = m.to_dot();
    assert!(dot.starts_with("digraph lattice {"));
    assert!(dot.contains("{a}"));
    // re-read as a custom lattice
    let json = serde_json::to_string(&m.directed_lattice().to_document()).unwrap();
    let again = Meadow::from_directed_lattice(DirectedLattice::from_json(&json).unwrap());
    assert_eq!(again.size(), 12);
    assert!(again.is_common());
}

#[test]
fn homomorphisms() {
    let m = m_of("zn:6");
    let id = MeadowHom::identity(&m);
    id.verify().unwrap();
    assert!(id.is_bijective());
    // collapsing everything onto a is not unital
    assert!(MeadowHom::from_fn(&m, &m, |_| m.a()).is_err());
}
