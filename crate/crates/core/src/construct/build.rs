use std::collections::HashMap;
use std::sync::Arc;

use super::group::CyclicProduct;
use crate::directed_lattice::DirectedLattice;
use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, RingHom};
use crate::ideals::{enumerate_ideals_with, Ideal};
use crate::lattice::FiniteLattice;
use crate::limits::Limits;
use crate::meadow::{Meadow, MeadowHom, Origin};

/// `M(R)`: one vertex per ideal `I` carrying `R/I`, ordered by reverse
/// inclusion, with the canonical projections as transitions.
pub fn build_m(r: &Arc<FiniteRing>) -> Result<Meadow> {
    build_m_with(r, &Limits::default())
}

pub fn build_m_with(r: &Arc<FiniteRing>, limits: &Limits) -> Result<Meadow> {
    if r.is_zero_ring() {
        return Err(Error::InvalidArgument("M(R) needs a nonzero ring".into()));
    }
    let ideals = enumerate_ideals_with(r, limits)?;
    let lattice = FiniteLattice::from_ideals(&ideals)?;
    let mut rings = Vec::with_capacity(ideals.len());
    let mut projections = Vec::with_capacity(ideals.len());
    for ideal in &ideals {
        let (q, proj) = r.quotient(ideal)?;
        rings.push(q);
        projections.push(proj);
    }
    let dl = DirectedLattice::from_all_transitions(lattice, rings.clone(), |lower, upper| {
        (0..rings[upper].order())
            .map(|x| projections[lower].raw()[rings[upper].coset_representative(x).unwrap()])
            .collect()
    })?;
    Ok(Meadow::with_origin(
        dl,
        Origin::Ring {
            ring: r.clone(),
            ideals,
            projections,
        },
    ))
}

/// The group-algebra meadow of `base[A]`: a vertex for each subgroup `H`
/// carrying `base[A]/(h-1 : h in H)`, which is `base[A/H]`, ordered by
/// reverse inclusion, plus an adjoined bottom `{a}`.
pub fn build_group_algebra_meadow(base: &Arc<FiniteRing>, cyclic_orders: &[usize]) -> Result<Meadow> {
    build_group_algebra_meadow_with(base, cyclic_orders, &Limits::default())
}

pub fn build_group_algebra_meadow_with(
    base: &Arc<FiniteRing>,
    cyclic_orders: &[usize],
    limits: &Limits,
) -> Result<Meadow> {
    let ga = FiniteRing::group_algebra_with(base, cyclic_orders, limits)?;
    let group = CyclicProduct::new(cyclic_orders);
    let subgroups = group.subgroups();
    // group element h as a ring element: coefficient 1 at h, 0 elsewhere
    let basis = |h: usize| {
        (0..group.size()).rev().fold(0, |acc, g| {
            acc * base.order() + if g == h { base.one() } else { base.zero() }
        })
    };
    let mut rings = Vec::new();
    let mut projections: Vec<RingHom> = Vec::new();
    for h in &subgroups {
        let gens: Vec<usize> = h
            .iter()
            .filter(|&&x| x != 0)
            .map(|&x| ga.sub(basis(x), ga.one()))
            .collect();
        let ideal = Ideal::generated_by(&ga, &gens)?;
        let (q, proj) = ga.quotient(&ideal)?;
        rings.push(q);
        projections.push(proj);
    }
    let k = subgroups.len();
    rings.push(FiniteRing::zn(1)?);
    let labels = subgroups.iter().map(|h| group.subgroup_label(h)).collect();
    let is_sub = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let lattice = FiniteLattice::from_leq(k, |i, j| is_sub(&subgroups[j], &subgroups[i]), labels)?
        .with_new_bottom("{a}".to_string());
    let dl = DirectedLattice::from_all_transitions(lattice, rings.clone(), |lower, upper| {
        if lower == k {
            return vec![0; rings[upper].order()];
        }
        (0..rings[upper].order())
            .map(|x| projections[lower].raw()[rings[upper].coset_representative(x).unwrap()])
            .collect()
    })?;
    Ok(Meadow::with_origin(
        dl,
        Origin::GroupAlgebra {
            base: base.clone(),
            group: cyclic_orders.to_vec(),
            subgroups,
        },
    ))
}

/// Vertex of an `M(R)` meadow holding the ideal with these members.
pub(crate) fn ideal_index(m: &Meadow) -> Result<HashMap<Vec<usize>, usize>> {
    match m.origin() {
        Origin::Ring { ideals, .. } => Ok(ideals
            .iter()
            .enumerate()
            .map(|(v, i)| (i.members().to_vec(), v))
            .collect()),
        _ => Err(Error::Unsupported("meadow was not built as M(R)".into())),
    }
}

/// The meadow map `x+I ↦ f(x)+f(I)` induced by a surjective ring
/// homomorphism `f: R -> S`, between freshly built `M(R)` and `M(S)`.
pub fn lift_surjective_hom(f: &RingHom) -> Result<MeadowHom> {
    if !f.is_surjective() {
        return Err(not_surjective());
    }
    let m = build_m(f.source())?;
    let n = build_m(f.target())?;
    lift_surjective_hom_between(f, &m, &n)
}

fn not_surjective() -> Error {
    Error::Unsupported(
        "only surjective homomorphisms lift: the image of an ideal under a non-surjective map need not be an ideal"
            .into(),
    )
}

/// As [`lift_surjective_hom`], between given `M(R)` and `M(S)`.
pub fn lift_surjective_hom_between(f: &RingHom, m: &Meadow, n: &Meadow) -> Result<MeadowHom> {
    if !f.is_surjective() {
        return Err(not_surjective());
    }
    let (Some(r), Some(s)) = (m.base_ring(), n.base_ring()) else {
        return Err(Error::Unsupported("both meadows must be built as M(R)".into()));
    };
    if !r.same_as(f.source()) || !s.same_as(f.target()) {
        return Err(Error::RingMismatch);
    }
    let Origin::Ring { ideals, .. } = m.origin() else {
        unreachable!()
    };
    let Origin::Ring {
        projections: proj_n, ..
    } = n.origin()
    else {
        unreachable!()
    };
    let index = ideal_index(n)?;
    let mut map = vec![0usize; m.size()];
    for (v, ideal) in ideals.iter().enumerate() {
        let mut image: Vec<usize> = ideal.members().iter().map(|&x| f.apply(x)).collect();
        image.sort_unstable();
        image.dedup();
        let w = *index
            .get(&image)
            .ok_or_else(|| Error::Internal("image of an ideal under a surjection is not an ideal".into()))?;
        let q = m.ring_at(v);
        for x in 0..q.order() {
            let rep = q.coset_representative(x).unwrap();
            let y = proj_n[w].apply(f.apply(rep));
            map[m.fiber_range(v).start + x] = n.fiber_range(w).start + y;
        }
    }
    MeadowHom::new(m, n, map)
}

/// `P x Q`: the product lattice with the product ring of the two fibers at
/// each vertex and componentwise transitions.
pub fn meadow_product(p: &Meadow, q: &Meadow) -> Result<Meadow> {
    meadow_product_with(p, q, &Limits::default())
}

pub fn meadow_product_with(p: &Meadow, q: &Meadow, limits: &Limits) -> Result<Meadow> {
    let lattice = FiniteLattice::product(p.lattice(), q.lattice());
    let nq = q.vertex_count();
    let rings = (0..lattice.size())
        .map(|v| FiniteRing::product_with(&[p.ring_at(v / nq).clone(), q.ring_at(v % nq).clone()], limits))
        .collect::<Result<Vec<_>>>()?;
    let (dp, dq) = (p.directed_lattice(), q.directed_lattice());
    let dl = DirectedLattice::from_all_transitions(lattice, rings.clone(), |lower, upper| {
        let (zl, wl) = (lower / nq, lower % nq);
        let (zu, wu) = (upper / nq, upper % nq);
        let (fp, fq) = (dp.transition(zl, zu).unwrap(), dq.transition(wl, wu).unwrap());
        (0..rings[upper].order())
            .map(|x| {
                let c = rings[upper].components(x).unwrap();
                rings[lower].from_components(&[fp.apply(c[0]), fq.apply(c[1])]).unwrap() as u32
            })
            .collect()
    })?;
    Ok(Meadow::with_origin(dl, Origin::Product(p.clone(), q.clone())))
}
