//! Splitting `M(R)` into a product of local meadows along the primitive
//! idempotents of `R`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::build::{build_m, ideal_index, meadow_product};
use super::iso::MeadowIso;
use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, RingSpec};
use crate::ideals::is_local_ring;
use crate::meadow::{Element, Meadow, Origin};

/// `M(R) ≅ M(e_1 R) x ... x M(e_t R)` with the isomorphism built explicitly.
#[derive(Clone)]
pub struct Decomposition {
    pub meadow: Meadow,
    /// Primitive idempotents of the base ring, in factor order.
    pub idempotents: Vec<usize>,
    /// The local corner rings `e_i R`.
    pub factor_rings: Vec<Arc<FiniteRing>>,
    pub factors: Vec<Meadow>,
    /// Left-nested product of the factors.
    pub product: Meadow,
    /// From `product` to `meadow`.
    pub iso: MeadowIso,
}

/// Decomposes with factors in canonical order: by (ring order, descriptor).
pub fn decompose_local(m: &Meadow) -> Result<Decomposition> {
    let r = base_of(m)?;
    let mut es = r.primitive_idempotents();
    let key = |e: &usize| -> Result<(usize, RingSpec)> {
        let (c, _) = r.corner(*e)?;
        Ok((c.order(), c.spec().clone()))
    };
    let mut keyed = es.iter().map(|e| Ok((key(e)?, *e))).collect::<Result<Vec<_>>>()?;
    keyed.sort();
    es = keyed.into_iter().map(|(_, e)| e).collect();
    decompose_in_order(m, &es)
}

/// Decomposes along the primitive idempotents taken in the given order, as
/// a permutation of [`FiniteRing::primitive_idempotents`].
pub fn decompose_local_ordered(m: &Meadow, order: &[usize]) -> Result<Decomposition> {
    let r = base_of(m)?;
    let es = r.primitive_idempotents();
    let mut sorted = order.to_vec();
    sorted.sort_unstable();
    if sorted != (0..es.len()).collect::<Vec<_>>() {
        return Err(Error::InvalidArgument(format!(
            "order must be a permutation of 0..{}",
            es.len()
        )));
    }
    let chosen: Vec<usize> = order.iter().map(|&i| es[i]).collect();
    decompose_in_order(m, &chosen)
}

fn base_of(m: &Meadow) -> Result<&Arc<FiniteRing>> {
    m.base_ring().ok_or_else(|| {
        Error::Unsupported("only meadows built as M(R) are decomposed; general meadows may be indecomposable".into())
    })
}

fn decompose_in_order(m: &Meadow, es: &[usize]) -> Result<Decomposition> {
    let r = base_of(m)?;
    let Origin::Ring { projections, .. } = m.origin() else {
        unreachable!()
    };
    let mut factor_rings = Vec::new();
    let mut embeddings = Vec::new();
    let mut factors = Vec::new();
    for &e in es {
        let (c, emb) = r.corner(e)?;
        if !is_local_ring(&c)? {
            return Err(Error::Internal(format!("corner ring {} is not local", c.name())));
        }
        let fm = build_m(&c)?;
        if !fm.is_local()? {
            return Err(Error::Internal(format!("M({}) is not local", c.name())));
        }
        factor_rings.push(c);
        embeddings.push(emb);
        factors.push(fm);
    }
    let mut product = factors[0].clone();
    for f in &factors[1..] {
        product = meadow_product(&product, f)?;
    }
    let target_index = ideal_index(m)?;
    // product vertex -> vertex of M(R) holding the direct sum of the factor ideals
    let mut vertex_cache: HashMap<usize, usize> = HashMap::new();
    let mut map = vec![0usize; product.size()];
    for x in product.elements() {
        let parts = unpack(&product, x, factors.len());
        let v = *match vertex_cache.entry(x.vertex()) {
            std::collections::hash_map::Entry::Occupied(o) => o.into_mut(),
            std::collections::hash_map::Entry::Vacant(slot) => {
                let mut members = vec![r.zero()];
                for (i, p) in parts.iter().enumerate() {
                    let Origin::Ring { ideals, .. } = factors[i].origin() else {
                        unreachable!()
                    };
                    let ideal = &ideals[p.vertex()];
                    let mut next: Vec<usize> = members
                        .iter()
                        .flat_map(|&a| ideal.members().iter().map(move |&b| (a, b)))
                        .map(|(a, b)| r.add(a, embeddings[i][b]))
                        .collect();
                    next.sort_unstable();
                    next.dedup();
                    members = next;
                }
                let v = *target_index
                    .get(&members)
                    .ok_or_else(|| Error::Internal("sum of factor ideals is not an ideal of the base ring".into()))?;
                slot.insert(v)
            }
        };
        let mut s = r.zero();
        for (i, p) in parts.iter().enumerate() {
            let rep = factors[i].ring_at(p.vertex()).coset_representative(p.index()).unwrap();
            s = r.add(s, embeddings[i][rep]);
        }
        map[product.flat(x)] = m.fiber_range(v).start + projections[v].apply(s);
    }
    let iso = MeadowIso::from_table(&product, m, map)?;
    Ok(Decomposition {
        meadow: m.clone(),
        idempotents: es.to_vec(),
        factor_rings,
        factors,
        product,
        iso,
    })
}

/// Splits an element of a left-nested product of `count` meadows.
fn unpack(m: &Meadow, x: Element, count: usize) -> Vec<Element> {
    if count == 1 {
        return vec![x];
    }
    let (left, right) = m.split(x).expect("product meadow");
    let Origin::Product(inner, _) = m.origin() else {
        unreachable!()
    };
    let mut parts = unpack(inner, left, count - 1);
    parts.push(right);
    parts
}

#[derive(Debug, Clone, Serialize)]
pub struct FactorReport {
    pub idempotent: usize,
    pub idempotent_rendered: String,
    pub ring: String,
    pub name: String,
    pub order: usize,
    pub local: bool,
    pub meadow_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct IsoSummary {
    pub verified: bool,
    pub bijective: bool,
    pub source_size: usize,
    pub target_size: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub schema: u32,
    pub ring: String,
    pub primitive_idempotents: Vec<usize>,
    pub factors: Vec<FactorReport>,
    pub iso: IsoSummary,
}

impl Decomposition {
    pub fn report(&self) -> DecompositionReport {
        let r = self.meadow.base_ring().expect("decomposed meadows are M(R)");
        let factors = self
            .factor_rings
            .iter()
            .zip(&self.factors)
            .zip(&self.idempotents)
            .map(|((c, fm), &e)| FactorReport {
                idempotent: e,
                idempotent_rendered: r.fmt_element(e),
                ring: c.descriptor(),
                name: c.name(),
                order: c.order(),
                local: fm.is_local().unwrap_or(false),
                meadow_size: fm.size(),
            })
            .collect();
        DecompositionReport {
            schema: 1,
            ring: r.descriptor(),
            primitive_idempotents: self.idempotents.clone(),
            factors,
            iso: IsoSummary {
                verified: self.iso.verify().is_ok(),
                bijective: self.iso.hom().is_bijective(),
                source_size: self.product.size(),
                target_size: self.meadow.size(),
            },
        }
    }
}
