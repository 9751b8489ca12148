//! Budgeted isomorphism search between finite rings.
//!
//! The additive group is generated greedily starting from `1`. A candidate
//! isomorphism is fixed by the images of those generators, so the search
//! backtracks over generator images with matching additive order and
//! unit/idempotent/nilpotent status, extending additively and checking
//! multiplicativity on every product that is already mapped.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use serde::Serialize;

use super::{FiniteRing, RingHom, NONE};

pub const DEFAULT_ISO_BUDGET: u64 = 1_000_000;

/// Three-valued answer of a bounded search.
#[derive(Debug, Clone)]
pub enum IsoStatus<T> {
    Isomorphic(T),
    /// Not isomorphic, with the obstruction that decided it.
    NotIsomorphic(String),
    /// Budget exhausted before the search finished.
    Unknown,
}

impl<T> IsoStatus<T> {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoStatus::Isomorphic(_))
    }

    pub fn is_not_isomorphic(&self) -> bool {
        matches!(self, IsoStatus::NotIsomorphic(_))
    }

    pub fn witness(self) -> Option<T> {
        match self {
            IsoStatus::Isomorphic(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            IsoStatus::Isomorphic(_) => "yes",
            IsoStatus::NotIsomorphic(_) => "no",
            IsoStatus::Unknown => "unknown",
        }
    }
}

/// Isomorphism invariants compared before any search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingInvariants {
    pub order: usize,
    pub characteristic: usize,
    /// additive order -> number of elements of that order
    pub additive_orders: BTreeMap<usize, usize>,
    pub units: usize,
    pub idempotents: usize,
    pub nilpotents: usize,
}

impl RingInvariants {
    pub fn of(r: &FiniteRing) -> RingInvariants {
        let mut additive_orders = BTreeMap::new();
        for x in r.elements() {
            *additive_orders.entry(r.additive_order(x)).or_insert(0) += 1;
        }
        RingInvariants {
            order: r.order(),
            characteristic: r.characteristic(),
            additive_orders,
            units: r.units().len(),
            idempotents: r.idempotents().len(),
            nilpotents: r.elements().filter(|&x| r.is_nilpotent(x)).count(),
        }
    }

    /// Describes the first invariant that differs.
    pub fn obstruction(&self, other: &RingInvariants) -> Option<String> {
        if self.order != other.order {
            return Some(format!("orders differ ({} vs {})", self.order, other.order));
        }
        if self.characteristic != other.characteristic {
            return Some(format!(
                "characteristics differ ({} vs {})",
                self.characteristic, other.characteristic
            ));
        }
        if self.additive_orders != other.additive_orders {
            let only = self
                .additive_orders
                .keys()
                .find(|k| !other.additive_orders.contains_key(k))
                .or_else(|| {
                    other
                        .additive_orders
                        .keys()
                        .find(|k| !self.additive_orders.contains_key(k))
                });
            return Some(match only {
                Some(k) => format!("an element of additive order {k} exists in only one ring"),
                None => "additive order distributions differ".to_string(),
            });
        }
        if self.units != other.units {
            return Some(format!("unit counts differ ({} vs {})", self.units, other.units));
        }
        if self.idempotents != other.idempotents {
            return Some(format!(
                "idempotent counts differ ({} vs {})",
                self.idempotents, other.idempotents
            ));
        }
        if self.nilpotents != other.nilpotents {
            return Some(format!(
                "nilpotent counts differ ({} vs {})",
                self.nilpotents, other.nilpotents
            ));
        }
        None
    }
}

/// How an enumeration ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchEnd {
    Complete,
    Stopped,
    BudgetExhausted,
}

struct Layer {
    generator: usize,
    /// smallest m >= 1 with m·g in the previous span
    rel_order: usize,
    /// m·g, an element of the previous span
    wrap: usize,
    /// span before this layer
    span: Vec<usize>,
}

struct Search<'a, F> {
    r: &'a FiniteRing,
    s: &'a FiniteRing,
    layers: Vec<Layer>,
    phi: Vec<u32>,
    used: Vec<bool>,
    domain: Vec<usize>,
    budget: u64,
    r_arc: Arc<FiniteRing>,
    s_arc: Arc<FiniteRing>,
    visit: F,
}

fn status(r: &FiniteRing, x: usize) -> (usize, bool, bool, bool) {
    (r.additive_order(x), r.is_unit(x), r.is_idempotent(x), r.is_nilpotent(x))
}

fn layers_for(r: &FiniteRing) -> Vec<Layer> {
    let mut in_span = vec![false; r.order()];
    in_span[r.zero()] = true;
    let mut span = vec![r.zero()];
    let mut layers = Vec::new();
    let next = |g: usize, span: &mut Vec<usize>, in_span: &mut Vec<bool>| {
        let mut m = 1;
        let mut mg = g;
        while !in_span[mg] {
            mg = r.add(mg, g);
            m += 1;
        }
        let before = span.clone();
        let mut kg = r.zero();
        for _ in 1..m {
            kg = r.add(kg, g);
            for &s in &before {
                let x = r.add(s, kg);
                in_span[x] = true;
                span.push(x);
            }
        }
        Layer {
            generator: g,
            rel_order: m,
            wrap: mg,
            span: before,
        }
    };
    layers.push(next(r.one(), &mut span, &mut in_span));
    for x in r.elements() {
        if !in_span[x] {
            layers.push(next(x, &mut span, &mut in_span));
        }
    }
    layers
}

impl<F: FnMut(&RingHom) -> ControlFlow<()>> Search<'_, F> {
    fn run(&mut self, depth: usize) -> ControlFlow<SearchEnd> {
        if depth == self.layers.len() {
            let hom = RingHom::new_unchecked(self.r_arc.clone(), self.s_arc.clone(), self.phi.clone());
            if hom.verify().is_err() {
                return ControlFlow::Continue(());
            }
            return match (self.visit)(&hom) {
                ControlFlow::Continue(()) => ControlFlow::Continue(()),
                ControlFlow::Break(()) => ControlFlow::Break(SearchEnd::Stopped),
            };
        }
        let g = self.layers[depth].generator;
        let candidates: Vec<usize> = if depth == 0 {
            vec![self.s.one()]
        } else {
            let want = status(self.r, g);
            self.s
                .elements()
                .filter(|&h| !self.used[h] && status(self.s, h) == want)
                .collect()
        };
        for h in candidates {
            if self.budget == 0 {
                return ControlFlow::Break(SearchEnd::BudgetExhausted);
            }
            self.budget -= 1;
            let mark = self.domain.len();
            if self.extend(depth, h) {
                self.run(depth + 1)?;
            }
            for x in self.domain.drain(mark..) {
                self.used[self.phi[x] as usize] = false;
                self.phi[x] = NONE;
            }
        }
        ControlFlow::Continue(())
    }

    /// Extends `phi` across the layer; false if the extension is not injective
    /// or breaks multiplicativity on already-mapped products.
    fn extend(&mut self, depth: usize, h: usize) -> bool {
        let (r, s) = (self.r, self.s);
        let layer = &self.layers[depth];
        if s.scale(layer.rel_order, h) != self.phi[layer.wrap] as usize {
            return false;
        }
        let start = self.domain.len();
        let (mut kg, mut kh) = (r.zero(), s.zero());
        for _ in 1..layer.rel_order {
            kg = r.add(kg, layer.generator);
            kh = s.add(kh, h);
            for &x in &layer.span {
                let (a, b) = (r.add(x, kg), s.add(self.phi[x] as usize, kh));
                if self.used[b] {
                    return false;
                }
                self.used[b] = true;
                self.phi[a] = b as u32;
                self.domain.push(a);
            }
        }
        for i in start..self.domain.len() {
            let x = self.domain[i];
            for &y in &self.domain {
                let xy = r.mul(x, y);
                if self.phi[xy] != NONE && self.phi[xy] as usize != s.mul(self.phi[x] as usize, self.phi[y] as usize) {
                    return false;
                }
            }
        }
        true
    }
}

/// Calls `visit` on every ring isomorphism `r -> s` until it breaks or the
/// budget (counted in candidate generator images) runs out.
pub fn for_each_ring_isomorphism<F>(r: &Arc<FiniteRing>, s: &Arc<FiniteRing>, budget: u64, visit: F) -> SearchEnd
where
    F: FnMut(&RingHom) -> ControlFlow<()>,
{
    if r.order() != s.order() || r.characteristic() != s.characteristic() {
        return SearchEnd::Complete;
    }
    let mut phi = vec![NONE; r.order()];
    let mut used = vec![false; s.order()];
    phi[r.zero()] = s.zero() as u32;
    used[s.zero()] = true;
    let mut search = Search {
        r,
        s,
        layers: layers_for(r),
        phi,
        used,
        domain: vec![r.zero()],
        budget,
        r_arc: r.clone(),
        s_arc: s.clone(),
        visit,
    };
    match search.run(0) {
        ControlFlow::Continue(()) => SearchEnd::Complete,
        ControlFlow::Break(end) => end,
    }
}

/// Finds a ring isomorphism `r -> s`, or explains why none exists.
pub fn find_ring_isomorphism(r: &Arc<FiniteRing>, s: &Arc<FiniteRing>, budget: u64) -> IsoStatus<RingHom> {
    if r.same_as(s) {
        let map = (0..r.order() as u32).collect();
        return IsoStatus::Isomorphic(RingHom::new_unchecked(r.clone(), s.clone(), map));
    }
    if let Some(why) = RingInvariants::of(r).obstruction(&RingInvariants::of(s)) {
        return IsoStatus::NotIsomorphic(why);
    }
    let mut found = None;
    let end = for_each_ring_isomorphism(r, s, budget, |h| {
        found = Some(h.clone());
        ControlFlow::Break(())
    });
    match (found, end) {
        (Some(h), _) => IsoStatus::Isomorphic(h),
        (None, SearchEnd::BudgetExhausted) => IsoStatus::Unknown,
        (None, _) => IsoStatus::NotIsomorphic("exhaustive search found no isomorphism".into()),
    }
}
