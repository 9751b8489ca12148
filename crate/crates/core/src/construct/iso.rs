//! Meadow isomorphisms: verification and bounded search.

use std::ops::ControlFlow;

use super::build::ideal_index;
use crate::error::{Error, Result};
use crate::finite_ring::{find_ring_isomorphism, for_each_ring_isomorphism, IsoStatus, RingHom, SearchEnd};
use crate::meadow::{Element, Meadow, MeadowHom, Origin};

/// A verified bijective meadow homomorphism.
#[derive(Clone, Debug)]
pub struct MeadowIso {
    hom: MeadowHom,
}

impl MeadowIso {
    /// Checks bijectivity and preservation of `+`, `·` and `1`.
    pub fn new(hom: MeadowHom) -> Result<MeadowIso> {
        if !hom.is_bijective() {
            return Err(Error::NotAHomomorphism("map is not a bijection".into()));
        }
        hom.verify()?;
        Ok(MeadowIso { hom })
    }

    pub fn from_table(source: &Meadow, target: &Meadow, map: Vec<usize>) -> Result<MeadowIso> {
        MeadowIso::new(MeadowHom::new(source, target, map)?)
    }

    pub fn identity(m: &Meadow) -> MeadowIso {
        MeadowIso {
            hom: MeadowHom::identity(m),
        }
    }

    /// Re-runs the full check.
    pub fn verify(&self) -> Result<()> {
        if !self.hom.is_bijective() {
            return Err(Error::NotAHomomorphism("map is not a bijection".into()));
        }
        self.hom.verify()
    }

    pub fn hom(&self) -> &MeadowHom {
        &self.hom
    }

    pub fn source(&self) -> &Meadow {
        self.hom.source()
    }

    pub fn target(&self) -> &Meadow {
        self.hom.target()
    }

    pub fn apply(&self, x: Element) -> Element {
        self.hom.apply(x)
    }

    pub fn inverse(&self) -> Result<MeadowIso> {
        Ok(MeadowIso {
            hom: self.hom.inverse()?,
        })
    }
}

/// Checks a candidate element map (on flat indices) as a meadow isomorphism.
pub fn verify_meadow_iso(source: &Meadow, target: &Meadow, map: Vec<usize>) -> Result<MeadowIso> {
    MeadowIso::from_table(source, target, map)
}

/// Per vertex: elements above, elements below, fiber order; sorted.
fn shape_with_fibers(m: &Meadow) -> Vec<(usize, usize, usize)> {
    let l = m.lattice();
    let n = m.vertex_count();
    let mut s: Vec<(usize, usize, usize)> = (0..n)
        .map(|v| {
            (
                l.up_set_size(v),
                (0..n).filter(|&k| l.leq(k, v)).count(),
                m.ring_at(v).order(),
            )
        })
        .collect();
    s.sort_unstable();
    s
}

fn obstruction(m: &Meadow, n: &Meadow) -> Option<String> {
    if m.vertex_count() != n.vertex_count() || m.lattice().hasse_edges().len() != n.lattice().hasse_edges().len() {
        return Some(format!(
            "lattice shapes differ: {} vertices and {} covers vs {} vertices and {} covers",
            m.vertex_count(),
            m.lattice().hasse_edges().len(),
            n.vertex_count(),
            n.lattice().hasse_edges().len()
        ));
    }
    if m.lattice().shape() != n.lattice().shape() {
        return Some("lattice shapes differ".to_string());
    }
    if m.size() != n.size() {
        return Some(format!("carrier sizes differ ({} vs {})", m.size(), n.size()));
    }
    if shape_with_fibers(m) != shape_with_fibers(n) {
        return Some("fiber orders differ at corresponding lattice positions".to_string());
    }
    if m.is_common() != n.is_common() {
        return Some("only one meadow is common".to_string());
    }
    None
}

/// Decides `m ≅ n` within `budget` search steps. Meadows built as `M(R)`
/// reduce to an isomorphism of their base rings, lifted by
/// `x+I ↦ ψ(x)+ψ(I)`; others go through a search over lattice
/// isomorphisms and compatible fiber isomorphisms.
pub fn meadows_isomorphic(m: &Meadow, n: &Meadow, budget: u64) -> IsoStatus<MeadowIso> {
    if m.same_meadow(n) {
        return IsoStatus::Isomorphic(MeadowIso::identity(m));
    }
    if let Some(why) = obstruction(m, n) {
        return IsoStatus::NotIsomorphic(why);
    }
    if let (Some(r), Some(s)) = (m.base_ring(), n.base_ring()) {
        return match find_ring_isomorphism(r, s, budget) {
            IsoStatus::Isomorphic(psi) => match lift_ring_iso(&psi, m, n) {
                Ok(iso) => IsoStatus::Isomorphic(iso),
                Err(e) => IsoStatus::NotIsomorphic(format!("lifted ring isomorphism failed verification: {e}")),
            },
            IsoStatus::NotIsomorphic(why) => IsoStatus::NotIsomorphic(format!("base rings are not isomorphic: {why}")),
            IsoStatus::Unknown => IsoStatus::Unknown,
        };
    }
    general_search(m, n, budget)
}

fn lift_ring_iso(psi: &RingHom, m: &Meadow, n: &Meadow) -> Result<MeadowIso> {
    let Origin::Ring { ideals, .. } = m.origin() else {
        unreachable!()
    };
    let Origin::Ring { projections, .. } = n.origin() else {
        unreachable!()
    };
    let index = ideal_index(n)?;
    let mut map = vec![0usize; m.size()];
    for (v, ideal) in ideals.iter().enumerate() {
        let mut image: Vec<usize> = ideal.members().iter().map(|&x| psi.apply(x)).collect();
        image.sort_unstable();
        let w = *index
            .get(&image)
            .ok_or_else(|| Error::Internal("image of an ideal is not an ideal".into()))?;
        let q = m.ring_at(v);
        for x in 0..q.order() {
            let y = projections[w].apply(psi.apply(q.coset_representative(x).unwrap()));
            map[m.fiber_range(v).start + x] = n.fiber_range(w).start + y;
        }
    }
    MeadowIso::from_table(m, n, map)
}

struct Search<'a> {
    m: &'a Meadow,
    n: &'a Meadow,
    order: Vec<usize>,
    sigma: Vec<usize>,
    used: Vec<bool>,
    budget: u64,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn lattice_iso(&mut self, depth: usize) -> ControlFlow<Option<MeadowIso>> {
        if depth == self.order.len() {
            let mut psis: Vec<Option<RingHom>> = vec![None; self.order.len()];
            return self.fiber_isos(0, &mut psis);
        }
        let v = self.order[depth];
        let (lm, ln) = (self.m.lattice(), self.n.lattice());
        for w in 0..self.n.vertex_count() {
            if self.used[w]
                || self.m.ring_at(v).order() != self.n.ring_at(w).order()
                || lm.up_set_size(v) != ln.up_set_size(w)
            {
                continue;
            }
            let consistent = self.order[..depth].iter().all(|&u| {
                let su = self.sigma[u];
                lm.leq(u, v) == ln.leq(su, w) && lm.leq(v, u) == ln.leq(w, su)
            });
            if !consistent {
                continue;
            }
            if self.budget == 0 {
                return ControlFlow::Break(None);
            }
            self.budget -= 1;
            self.sigma[v] = w;
            self.used[w] = true;
            self.lattice_iso(depth + 1)?;
            self.used[w] = false;
            self.sigma[v] = UNSET;
        }
        ControlFlow::Continue(())
    }

    fn fiber_isos(&mut self, depth: usize, psis: &mut Vec<Option<RingHom>>) -> ControlFlow<Option<MeadowIso>> {
        if depth == self.order.len() {
            return match self.assemble(psis) {
                Some(iso) => ControlFlow::Break(Some(iso)),
                None => ControlFlow::Continue(()),
            };
        }
        let v = self.order[depth];
        let w = self.sigma[v];
        let (dm, dn) = (self.m.directed_lattice(), self.n.directed_lattice());
        let uppers: Vec<usize> = self
            .m
            .lattice()
            .hasse_edges()
            .into_iter()
            .filter(|&(_, l)| l == v)
            .map(|(u, _)| u)
            .collect();
        let mut candidates = Vec::new();
        let end = for_each_ring_isomorphism(self.m.ring_at(v), self.n.ring_at(w), self.budget, |h| {
            candidates.push(h.clone());
            ControlFlow::Continue(())
        });
        if end == SearchEnd::BudgetExhausted {
            return ControlFlow::Break(None);
        }
        for psi in candidates {
            if self.budget == 0 {
                return ControlFlow::Break(None);
            }
            self.budget -= 1;
            let compatible = uppers.iter().all(|&u| {
                let psi_u = psis[u].as_ref().expect("upper vertices are assigned first");
                let (f, g) = (dm.transition(v, u).unwrap(), dn.transition(w, self.sigma[u]).unwrap());
                (0..self.m.ring_at(u).order()).all(|x| psi.apply(f.apply(x)) == g.apply(psi_u.apply(x)))
            });
            if !compatible {
                continue;
            }
            psis[v] = Some(psi);
            self.fiber_isos(depth + 1, psis)?;
            psis[v] = None;
        }
        ControlFlow::Continue(())
    }

    fn assemble(&self, psis: &[Option<RingHom>]) -> Option<MeadowIso> {
        let mut map = vec![0usize; self.m.size()];
        for v in 0..self.m.vertex_count() {
            let psi = psis[v].as_ref()?;
            let w = self.sigma[v];
            for x in 0..self.m.ring_at(v).order() {
                map[self.m.fiber_range(v).start + x] = self.n.fiber_range(w).start + psi.apply(x);
            }
        }
        MeadowIso::from_table(self.m, self.n, map).ok()
    }
}

fn general_search(m: &Meadow, n: &Meadow, budget: u64) -> IsoStatus<MeadowIso> {
    let mut s = Search {
        m,
        n,
        order: m.lattice().top_down_order(),
        sigma: vec![UNSET; m.vertex_count()],
        used: vec![false; n.vertex_count()],
        budget,
    };
    match s.lattice_iso(0) {
        ControlFlow::Break(Some(iso)) => IsoStatus::Isomorphic(iso),
        ControlFlow::Break(None) => IsoStatus::Unknown,
        ControlFlow::Continue(()) => {
            IsoStatus::NotIsomorphic("no lattice isomorphism carries compatible fiber isomorphisms".into())
        }
    }
}
