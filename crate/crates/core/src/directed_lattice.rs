//! Lattices of rings with coherent transition homomorphisms.
//!
//! Transitions run downward: for `i <= j` the map `f(i, j)` goes from the
//! ring at `j` to the ring at `i`. All comparable pairs are composed and
//! stored when the structure is built, which doubles as the coherence check.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, RingHom, RingSpec};
use crate::lattice::FiniteLattice;
use crate::limits::Limits;

#[derive(Clone)]
pub struct DirectedLattice {
    lattice: FiniteLattice,
    rings: Vec<Arc<FiniteRing>>,
    /// `trans[lower * n + upper]`, present iff `lower <= upper`
    trans: Vec<Option<RingHom>>,
}

/// A vertex of the custom-lattice JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub name: String,
    pub ring: String,
}

/// A Hasse edge of the custom-lattice JSON format, from the upper vertex to
/// the lower one. The map may be omitted when the target is the zero ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub schema: u32,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl DirectedLattice {
    /// Builds from one homomorphism per Hasse edge `(upper, lower)`. Edges into
    /// the zero ring may be left out. Fails unless every pair of paths between
    /// the same endpoints composes to the same map.
    pub fn new(
        lattice: FiniteLattice,
        rings: Vec<Arc<FiniteRing>>,
        edge_homs: Vec<((usize, usize), RingHom)>,
    ) -> Result<DirectedLattice> {
        check_rings(&lattice, &rings)?;
        let n = lattice.size();
        let hasse = lattice.hasse_edges();
        let mut edge_map: HashMap<(usize, usize), RingHom> = HashMap::new();
        for ((u, l), h) in edge_homs {
            if !hasse.contains(&(u, l)) {
                return Err(Error::DirectedLattice(format!(
                    "{} -> {} is not a Hasse edge",
                    lattice.label(u),
                    lattice.label(l)
                )));
            }
            check_endpoints(&lattice, &rings, u, l, &h)?;
            h.verify()?;
            if edge_map.insert((u, l), h).is_some() {
                return Err(Error::DirectedLattice(format!(
                    "duplicate map for edge {} -> {}",
                    lattice.label(u),
                    lattice.label(l)
                )));
            }
        }
        for &(u, l) in &hasse {
            if edge_map.contains_key(&(u, l)) {
                continue;
            }
            if rings[l].is_zero_ring() {
                edge_map.insert((u, l), RingHom::to_zero_ring(&rings[u], &rings[l])?);
            } else {
                return Err(Error::DirectedLattice(format!(
                    "no map given for edge {} -> {}",
                    lattice.label(u),
                    lattice.label(l)
                )));
            }
        }
        let mut lower_covers: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, l) in &hasse {
            lower_covers[u].push(l);
        }
        let order = lattice.top_down_order();
        let mut trans: Vec<Option<RingHom>> = vec![None; n * n];
        for k in 0..n {
            trans[k * n + k] = Some(RingHom::identity(&rings[k]));
            for &j in &order {
                let Some(f_jk) = trans[j * n + k].clone() else { continue };
                for &i in &lower_covers[j] {
                    let cand = edge_map[&(j, i)].compose(&f_jk)?;
                    match &trans[i * n + k] {
                        Some(existing) if existing.raw() != cand.raw() => {
                            let x = (0..rings[k].order())
                                .find(|&x| existing.apply(x) != cand.apply(x))
                                .unwrap();
                            return Err(Error::Coherence {
                                lower: lattice.label(i).to_string(),
                                upper: lattice.label(k).to_string(),
                                detail: format!(
                                    "two paths send {} to {} and {}",
                                    rings[k].fmt_element(x),
                                    rings[i].fmt_element(existing.apply(x)),
                                    rings[i].fmt_element(cand.apply(x))
                                ),
                            });
                        }
                        Some(_) => {}
                        None => trans[i * n + k] = Some(cand),
                    }
                }
            }
        }
        Ok(DirectedLattice { lattice, rings, trans })
    }

    /// Builds from a closed-form transition for every comparable pair, then
    /// checks homomorphism laws on covers and coherence through every cover.
    pub(crate) fn from_all_transitions(
        lattice: FiniteLattice,
        rings: Vec<Arc<FiniteRing>>,
        mut transition: impl FnMut(usize, usize) -> Vec<u32>,
    ) -> Result<DirectedLattice> {
        check_rings(&lattice, &rings)?;
        let n = lattice.size();
        let mut trans: Vec<Option<RingHom>> = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                if lattice.leq(i, j) {
                    let map = transition(i, j);
                    trans[i * n + j] = Some(RingHom::new_unchecked(rings[j].clone(), rings[i].clone(), map));
                }
            }
        }
        let dl = DirectedLattice::from_parts_unchecked(lattice, rings, trans);
        for (u, l) in dl.lattice.hasse_edges() {
            dl.transition(l, u).unwrap().verify()?;
        }
        dl.check_cover_coherence()?;
        Ok(dl)
    }

    /// No validation at all; used to feed deliberately broken data to the checkers.
    pub(crate) fn from_parts_unchecked(
        lattice: FiniteLattice,
        rings: Vec<Arc<FiniteRing>>,
        trans: Vec<Option<RingHom>>,
    ) -> DirectedLattice {
        DirectedLattice { lattice, rings, trans }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn size(&self) -> usize {
        self.lattice.size()
    }

    pub fn ring(&self, v: usize) -> &Arc<FiniteRing> {
        &self.rings[v]
    }

    pub fn rings(&self) -> &[Arc<FiniteRing>] {
        &self.rings
    }

    pub fn label(&self, v: usize) -> &str {
        self.lattice.label(v)
    }

    /// `f(lower, upper)`, from the ring at `upper` to the ring at `lower`.
    pub fn transition(&self, lower: usize, upper: usize) -> Option<&RingHom> {
        self.trans[lower * self.size() + upper].as_ref()
    }

    #[inline]
    pub(crate) fn push(&self, lower: usize, upper: usize, x: usize) -> usize {
        self.trans[lower * self.size() + upper]
            .as_ref()
            .expect("push along a non-comparable pair")
            .apply(x)
    }

    fn check_cover_coherence(&self) -> Result<()> {
        let n = self.size();
        for k in 0..n {
            if !self
                .transition(k, k)
                .unwrap()
                .same_map(&RingHom::identity(&self.rings[k]))
            {
                return Err(Error::Coherence {
                    lower: self.label(k).to_string(),
                    upper: self.label(k).to_string(),
                    detail: "f(i,i) is not the identity".into(),
                });
            }
        }
        for (k, j) in self.lattice.hasse_edges() {
            let f_jk = self.transition(j, k).unwrap();
            for i in (0..n).filter(|&i| self.lattice.leq(i, j)) {
                let f_ij = self.transition(i, j).unwrap();
                let f_ik = self.transition(i, k).unwrap();
                if let Some(x) = (0..self.rings[k].order()).find(|&x| f_ij.apply(f_jk.apply(x)) != f_ik.apply(x)) {
                    return Err(self.coherence_error(i, j, k, x));
                }
            }
        }
        Ok(())
    }

    fn coherence_error(&self, i: usize, j: usize, k: usize, x: usize) -> Error {
        Error::Coherence {
            lower: self.label(i).to_string(),
            upper: self.label(k).to_string(),
            detail: format!(
                "f(i,j)∘f(j,k) differs from f(i,k) at {} via {}",
                self.rings[k].fmt_element(x),
                self.label(j)
            ),
        }
    }

    /// Pointwise check of `f(i,j)∘f(j,k) = f(i,k)` over every comparable triple.
    pub fn check_coherence(&self) -> Result<()> {
        let n = self.size();
        let l = &self.lattice;
        for k in 0..n {
            for j in (0..n).filter(|&j| l.leq(j, k)) {
                for i in (0..n).filter(|&i| l.leq(i, j)) {
                    let (f_ij, f_jk, f_ik) = (
                        self.transition(i, j).unwrap(),
                        self.transition(j, k).unwrap(),
                        self.transition(i, k).unwrap(),
                    );
                    if let Some(x) = (0..self.rings[k].order()).find(|&x| f_ij.apply(f_jk.apply(x)) != f_ik.apply(x)) {
                        return Err(self.coherence_error(i, j, k, x));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<DirectedLattice> {
        Self::from_json_with(text, &Limits::default())
    }

    pub fn from_json_with(text: &str, limits: &Limits) -> Result<DirectedLattice> {
        let doc: LatticeDocument = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        Self::from_document(&doc, limits)
    }

    pub fn from_document(doc: &LatticeDocument, limits: &Limits) -> Result<DirectedLattice> {
        if doc.schema != 1 {
            return Err(Error::Document(format!("unsupported schema {}", doc.schema)));
        }
        let mut index = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if index.insert(v.name.as_str(), i).is_some() {
                return Err(Error::Document(format!("duplicate vertex name {:?}", v.name)));
            }
        }
        let lookup = |name: &str| {
            index
                .get(name)
                .copied()
                .ok_or_else(|| Error::Document(format!("edge names unknown vertex {name:?}")))
        };
        let rings = doc
            .vertices
            .iter()
            .map(|v| RingSpec::parse(&v.ring)?.build_with(limits))
            .collect::<Result<Vec<_>>>()?;
        let mut covers = Vec::new();
        for e in &doc.edges {
            covers.push((lookup(&e.from)?, lookup(&e.to)?));
        }
        let labels = doc.vertices.iter().map(|v| v.name.clone()).collect();
        let lattice = FiniteLattice::from_covers(doc.vertices.len(), &covers, labels)?;
        let mut homs = Vec::new();
        for (e, &(u, l)) in doc.edges.iter().zip(&covers) {
            if let Some(map) = &e.map {
                let h = RingHom::new(rings[u].clone(), rings[l].clone(), map.clone())
                    .map_err(|err| Error::DirectedLattice(format!("edge {} -> {}: {err}", e.from, e.to)))?;
                homs.push(((u, l), h));
            }
        }
        DirectedLattice::new(lattice, rings, homs)
    }

    /// The custom-lattice document describing this structure, with every
    /// Hasse edge and its map.
    pub fn to_document(&self) -> LatticeDocument {
        let vertices = (0..self.size())
            .map(|v| VertexDoc {
                name: self.label(v).to_string(),
                ring: self.rings[v].descriptor(),
            })
            .collect();
        let edges = self
            .lattice
            .hasse_edges()
            .into_iter()
            .map(|(u, l)| EdgeDoc {
                from: self.label(u).to_string(),
                to: self.label(l).to_string(),
                map: Some(self.transition(l, u).unwrap().table()),
            })
            .collect();
        LatticeDocument {
            schema: 1,
            vertices,
            edges,
        }
    }
}

fn check_rings(lattice: &FiniteLattice, rings: &[Arc<FiniteRing>]) -> Result<()> {
    if rings.len() != lattice.size() {
        return Err(Error::DirectedLattice(format!(
            "{} rings for {} vertices",
            rings.len(),
            lattice.size()
        )));
    }
    if lattice.size() < 2 {
        return Err(Error::DirectedLattice(
            "need a unital ring on top and the zero ring at the bottom".into(),
        ));
    }
    for (v, r) in rings.iter().enumerate() {
        if v == lattice.bottom() && !r.is_zero_ring() {
            return Err(Error::DirectedLattice(format!(
                "bottom vertex {} must carry the zero ring, found {}",
                lattice.label(v),
                r.name()
            )));
        }
        if v != lattice.bottom() && r.is_zero_ring() {
            return Err(Error::DirectedLattice(format!(
                "only the bottom may carry the zero ring, found it at {}",
                lattice.label(v)
            )));
        }
    }
    Ok(())
}

fn check_endpoints(lattice: &FiniteLattice, rings: &[Arc<FiniteRing>], u: usize, l: usize, h: &RingHom) -> Result<()> {
    if !h.source().same_as(&rings[u]) || !h.target().same_as(&rings[l]) {
        return Err(Error::DirectedLattice(format!(
            "map on edge {} -> {} must go from {} to {}",
            lattice.label(u),
            lattice.label(l),
            rings[u].name(),
            rings[l].name()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteRing> {
        FiniteRing::zn(n).unwrap()
    }

    fn doc(json: &str) -> Result<DirectedLattice> {
        DirectedLattice::from_json(json)
    }

    const SQUARE: &str = r#"{"schema":1,
        "vertices":[{"name":"top","ring":"zn:6"},{"name":"two","ring":"zn:2"},
                    {"name":"three","ring":"zn:3"},{"name":"a","ring":"zn:1"}],
        "edges":[{"from":"top","to":"two","map":[0,1,0,1,0,1]},
                 {"from":"top","to":"three","map":[0,1,2,0,1,2]},
                 {"from":"two","to":"a"},{"from":"three","to":"a"}]}"#;

    #[test]
    fn square_with_projections_is_valid() {
        let dl = doc(SQUARE).unwrap();
        assert_eq!(dl.size(), 4);
        let (top, a) = (dl.lattice().top(), dl.lattice().bottom());
        assert_eq!(dl.transition(a, top).unwrap().table(), vec![0; 6]);
        assert!(dl.check_coherence().is_ok());
        assert!(dl.transition(1, 2).is_none());
    }

    #[test]
    fn two_chain_has_one_forced_transition() {
        let l = FiniteLattice::chain(2).unwrap();
        let dl = DirectedLattice::new(l, vec![zn(1), zn(5)], vec![]).unwrap();
        assert_eq!(dl.transition(0, 1).unwrap().table(), vec![0; 5]);
    }

    #[test]
    fn diamond_with_equal_projections_is_valid() {
        let json = r#"{"schema":1,
            "vertices":[{"name":"top","ring":"prod:(zn:2,zn:2)"},{"name":"l","ring":"zn:2"},
                        {"name":"r","ring":"zn:2"},{"name":"a","ring":"zn:1"}],
            "edges":[{"from":"top","to":"l","map":[0,1,0,1]},{"from":"top","to":"r","map":[0,1,0,1]},
                     {"from":"l","to":"a"},{"from":"r","to":"a"}]}"#;
        assert!(doc(json).is_ok());
    }

    #[test]
    fn path_dependent_compositions_are_rejected() {
        // Z_2 x Z_2 on top, then both projections into the same lower Z_2
        // through two different middle vertices.
        let json = r#"{"schema":1,
            "vertices":[{"name":"top","ring":"prod:(zn:2,zn:2)"},{"name":"l","ring":"zn:2"},
                        {"name":"r","ring":"zn:2"},{"name":"low","ring":"zn:2"},{"name":"a","ring":"zn:1"}],
            "edges":[{"from":"top","to":"l","map":[0,1,0,1]},{"from":"top","to":"r","map":[0,0,1,1]},
                     {"from":"l","to":"low","map":[0,1]},{"from":"r","to":"low","map":[0,1]},
                     {"from":"low","to":"a"}]}"#;
        match doc(json) {
            Err(Error::Coherence { lower, upper, .. }) => {
                assert_eq!(lower, "low");
                assert_eq!(upper, "top");
            }
            other => panic!("expected a coherence error, got {:?}", other.err()),
        }
    }

    #[test]
    fn structural_errors() {
        // zero ring above the bottom
        let bad = SQUARE.replace(r#""ring":"zn:2""#, r#""ring":"zn:1""#);
        assert!(matches!(doc(&bad), Err(Error::DirectedLattice(_))));
        // missing map into a nonzero ring
        let bad = SQUARE.replace(r#","map":[0,1,0,1,0,1]"#, "");
        assert!(matches!(doc(&bad), Err(Error::DirectedLattice(_))));
        // not a homomorphism
        let bad = SQUARE.replace("[0,1,0,1,0,1]", "[0,1,1,1,0,1]");
        assert!(matches!(doc(&bad), Err(Error::DirectedLattice(_))));
        assert!(matches!(doc("{"), Err(Error::Document(_))));
        let bad = SQUARE.replace(r#""schema":1"#, r#""schema":2"#);
        assert!(matches!(doc(&bad), Err(Error::Document(_))));
    }

    #[test]
    fn document_round_trip() {
        let dl = doc(SQUARE).unwrap();
        let text = serde_json::to_string(&dl.to_document()).unwrap();
        let again = doc(&text).unwrap();
        assert_eq!(again.to_document(), dl.to_document());
    }
}
