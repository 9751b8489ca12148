//! Meadows as disjoint unions of the rings of a directed lattice.
//!
//! Elements are flattened: vertex `v` owns the index range
//! `offsets[v]..offsets[v+1]`. Sums and products push both operands down to
//! the meet of their vertices and operate there.

mod checks;
mod hom;

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::directed_lattice::{DirectedLattice, EdgeDoc};
use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, RingHom};
use crate::ideals::Ideal;
use crate::lattice::FiniteLattice;
use crate::limits::TABLE_LIMIT;

pub use hom::MeadowHom;

const NONE: u32 = u32::MAX;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Where a meadow came from; constructions that need more than the
/// directed lattice (decomposition, isomorphism reduction) read it.
#[derive(Clone)]
pub enum Origin {
    /// `M(R)`: vertex `v` is `R / ideals[v]`, reached by `projections[v]`.
    Ring {
        ring: Arc<FiniteRing>,
        ideals: Vec<Ideal>,
        projections: Vec<RingHom>,
    },
    /// Subgroup vertices of `base[A]`, plus an adjoined bottom.
    GroupAlgebra {
        base: Arc<FiniteRing>,
        group: Vec<usize>,
        subgroups: Vec<Vec<usize>>,
    },
    Product(Meadow, Meadow),
    Custom,
}

/// A meadow element: a vertex and an index into that vertex's ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    owner: u64,
    vertex: u32,
    index: u32,
}

impl Element {
    pub fn vertex(&self) -> usize {
        self.vertex as usize
    }

    pub fn index(&self) -> usize {
        self.index as usize
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element(v{}, {})", self.vertex, self.index)
    }
}

/// An element whose invertibility set lacks a greatest vertex.
#[derive(Debug, Clone)]
pub struct NonCommonWitness {
    pub element: Element,
    /// The element in its ring's notation, e.g. `(1,0)`.
    pub rendered: String,
    /// Maximal vertices of the invertibility set.
    pub maximal: Vec<usize>,
}

#[derive(Clone)]
pub struct Meadow {
    inner: Arc<Inner>,
}

struct Inner {
    id: u64,
    dl: DirectedLattice,
    offsets: Vec<usize>,
    vertex_of: Vec<u32>,
    tables: Option<(Vec<u32>, Vec<u32>)>,
    origin: Origin,
    greatest: OnceLock<Vec<u32>>,
}

impl Meadow {
    /// The meadow of a validated directed lattice.
    pub fn from_directed_lattice(dl: DirectedLattice) -> Meadow {
        Meadow::with_origin(dl, Origin::Custom)
    }

    pub(crate) fn with_origin(dl: DirectedLattice, origin: Origin) -> Meadow {
        let n = dl.size();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut vertex_of = Vec::new();
        offsets.push(0);
        for v in 0..n {
            let order = dl.ring(v).order();
            vertex_of.extend(std::iter::repeat_n(v as u32, order));
            offsets.push(offsets[v] + order);
        }
        let mut inner = Inner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            dl,
            offsets,
            vertex_of,
            tables: None,
            origin,
            greatest: OnceLock::new(),
        };
        let size = inner.vertex_of.len();
        if size <= TABLE_LIMIT {
            let mut add = vec![0u32; size * size];
            let mut mul = vec![0u32; size * size];
            add.par_chunks_mut(size)
                .zip(mul.par_chunks_mut(size))
                .enumerate()
                .for_each(|(a, (ra, rm))| {
                    for b in 0..size {
                        ra[b] = inner.raw_op(a, b, false) as u32;
                        rm[b] = inner.raw_op(a, b, true) as u32;
                    }
                });
            inner.tables = Some((add, mul));
        }
        Meadow { inner: Arc::new(inner) }
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }

    pub fn same_meadow(&self, other: &Meadow) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    pub fn directed_lattice(&self) -> &DirectedLattice {
        &self.inner.dl
    }

    pub fn lattice(&self) -> &FiniteLattice {
        self.inner.dl.lattice()
    }

    pub fn origin(&self) -> &Origin {
        &self.inner.origin
    }

    /// Base ring when the meadow was built as `M(R)`.
    pub fn base_ring(&self) -> Option<&Arc<FiniteRing>> {
        match &self.inner.origin {
            Origin::Ring { ring, .. } => Some(ring),
            _ => None,
        }
    }

    /// Carrier size, the sum of all vertex ring orders.
    pub fn size(&self) -> usize {
        self.inner.vertex_of.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.inner.dl.size()
    }

    pub fn ring_at(&self, v: usize) -> &Arc<FiniteRing> {
        self.inner.dl.ring(v)
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        self.inner.dl.label(v)
    }

    /// Name of the vertex ring, or `{a}` at the bottom.
    pub fn vertex_ring_label(&self, v: usize) -> String {
        if v == self.lattice().bottom() {
            "{a}".to_string()
        } else {
            self.ring_at(v).name()
        }
    }

    pub fn fiber_range(&self, v: usize) -> std::ops::Range<usize> {
        self.inner.offsets[v]..self.inner.offsets[v + 1]
    }

    pub fn element(&self, vertex: usize, index: usize) -> Result<Element> {
        if vertex >= self.vertex_count() {
            return Err(Error::InvalidArgument(format!("vertex {vertex} out of range")));
        }
        if index >= self.ring_at(vertex).order() {
            return Err(Error::InvalidArgument(format!(
                "index {index} out of range at vertex {}",
                self.vertex_label(vertex)
            )));
        }
        Ok(self.at(self.inner.offsets[vertex] + index))
    }

    /// The element with flat index `f`.
    pub fn at(&self, f: usize) -> Element {
        let v = self.inner.vertex_of[f];
        Element {
            owner: self.inner.id,
            vertex: v,
            index: (f - self.inner.offsets[v as usize]) as u32,
        }
    }

    pub fn flat(&self, e: Element) -> usize {
        self.assert_owned(e);
        self.inner.offsets[e.vertex as usize] + e.index as usize
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size()).map(|f| self.at(f))
    }

    pub fn owns(&self, e: Element) -> bool {
        e.owner == self.inner.id
    }

    fn assert_owned(&self, e: Element) {
        assert!(self.owns(e), "element belongs to a different meadow");
    }

    pub(crate) fn check_owned(&self, e: Element) -> Result<()> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(Error::InvalidArgument("element belongs to a different meadow".into()))
        }
    }

    pub fn top(&self) -> usize {
        self.lattice().top()
    }

    pub fn bottom(&self) -> usize {
        self.lattice().bottom()
    }

    pub fn zero(&self) -> Element {
        let t = self.top();
        self.at(self.inner.offsets[t] + self.ring_at(t).zero())
    }

    pub fn one(&self) -> Element {
        let t = self.top();
        self.at(self.inner.offsets[t] + self.ring_at(t).one())
    }

    /// The absorbent element, sole member of the bottom fiber.
    pub fn a(&self) -> Element {
        self.at(self.inner.offsets[self.bottom()])
    }

    #[inline]
    pub(crate) fn fvertex(&self, f: usize) -> usize {
        self.inner.vertex_of[f] as usize
    }

    #[inline]
    pub(crate) fn fadd(&self, a: usize, b: usize) -> usize {
        match &self.inner.tables {
            Some((add, _)) => add[a * self.size() + b] as usize,
            None => self.inner.raw_op(a, b, false),
        }
    }

    #[inline]
    pub(crate) fn fmul(&self, a: usize, b: usize) -> usize {
        match &self.inner.tables {
            Some((_, mul)) => mul[a * self.size() + b] as usize,
            None => self.inner.raw_op(a, b, true),
        }
    }

    #[inline]
    pub(crate) fn fneg(&self, a: usize) -> usize {
        let v = self.fvertex(a);
        let off = self.inner.offsets[v];
        off + self.ring_at(v).neg(a - off)
    }

    pub(crate) fn fzero_of(&self, a: usize) -> usize {
        let v = self.fvertex(a);
        self.inner.offsets[v] + self.ring_at(v).zero()
    }

    pub fn madd(&self, x: Element, y: Element) -> Element {
        self.at(self.fadd(self.flat(x), self.flat(y)))
    }

    pub fn mmul(&self, x: Element, y: Element) -> Element {
        self.at(self.fmul(self.flat(x), self.flat(y)))
    }

    pub fn mneg(&self, x: Element) -> Element {
        self.at(self.fneg(self.flat(x)))
    }

    /// `0 · x`, the zero of the fiber containing `x`.
    pub fn zero_of(&self, x: Element) -> Element {
        self.at(self.fzero_of(self.flat(x)))
    }

    /// `z <= z'` on `0·P`, decided by `z · z' = z`.
    pub fn order_leq(&self, z: Element, w: Element) -> Result<bool> {
        for e in [z, w] {
            self.check_owned(e)?;
            if self.zero_of(e) != e {
                return Err(Error::NotAFiberZero(self.describe(e)));
            }
        }
        Ok(self.mmul(z, w) == z)
    }

    /// `x` in its ring's notation; the absorbent element prints as `a`.
    pub fn render(&self, x: Element) -> String {
        self.assert_owned(x);
        if x.vertex() == self.bottom() {
            "a".to_string()
        } else {
            self.ring_at(x.vertex()).fmt_element(x.index())
        }
    }

    /// `x@vertex`.
    pub fn describe(&self, x: Element) -> String {
        if x.vertex() == self.bottom() {
            "a".to_string()
        } else {
            format!("{}@{}", self.render(x), self.vertex_label(x.vertex()))
        }
    }

    pub(crate) fn fdescribe(&self, f: usize) -> String {
        self.describe(self.at(f))
    }

    /// The vertices `j <= vertex(x)` where the image of `x` is a unit, ascending.
    pub fn invertibility_set(&self, x: Element) -> Vec<usize> {
        self.finvertibility_set(self.flat(x))
    }

    pub(crate) fn finvertibility_set(&self, f: usize) -> Vec<usize> {
        let v = self.fvertex(f);
        let x = f - self.inner.offsets[v];
        let l = self.lattice();
        (0..self.vertex_count())
            .filter(|&j| l.leq(j, v) && self.ring_at(j).is_unit(self.inner.dl.push(j, v, x)))
            .collect()
    }

    /// Maximal vertices of the invertibility set.
    pub fn maximal_invertibility(&self, x: Element) -> Vec<usize> {
        let set = self.invertibility_set(x);
        let l = self.lattice();
        set.iter()
            .copied()
            .filter(|&j| !set.iter().any(|&k| l.lt(j, k)))
            .collect()
    }

    fn greatest_table(&self) -> &[u32] {
        self.inner.greatest.get_or_init(|| {
            let l = self.lattice();
            (0..self.size())
                .into_par_iter()
                .map(|f| {
                    let set = self.finvertibility_set(f);
                    set.iter()
                        .copied()
                        .find(|&g| set.iter().all(|&j| l.leq(j, g)))
                        .map_or(NONE, |g| g as u32)
                })
                .collect()
        })
    }

    /// The greatest vertex of the invertibility set, if there is one.
    pub fn greatest_invertibility(&self, x: Element) -> Option<usize> {
        match self.greatest_table()[self.flat(x)] {
            NONE => None,
            g => Some(g as usize),
        }
    }

    /// True iff every invertibility set has a greatest element.
    pub fn is_common(&self) -> bool {
        self.common_witness().is_none()
    }

    /// The first element (in flat order) whose invertibility set has no
    /// greatest element.
    pub fn common_witness(&self) -> Option<NonCommonWitness> {
        let f = self.greatest_table().iter().position(|&g| g == NONE)?;
        let element = self.at(f);
        Some(NonCommonWitness {
            element,
            rendered: self.render(element),
            maximal: self.maximal_invertibility(element),
        })
    }

    fn not_common_error(&self) -> Error {
        let w = self.common_witness().expect("meadow is not common");
        Error::NotCommon {
            witness: self.describe(w.element),
            maximal_count: w.maximal.len(),
        }
    }

    /// The total inverse: the ring inverse of `x` pushed to the greatest
    /// vertex of its invertibility set. Refused on non-common meadows.
    pub fn minv(&self, x: Element) -> Result<Element> {
        self.check_owned(x)?;
        if !self.is_common() {
            return Err(self.not_common_error());
        }
        Ok(self.at(self.fminv(self.flat(x))))
    }

    /// Inverse on flat indices; the meadow must be common.
    pub(crate) fn fminv(&self, f: usize) -> usize {
        let g = self.greatest_table()[f] as usize;
        let v = self.fvertex(f);
        let image = self.inner.dl.push(g, v, f - self.inner.offsets[v]);
        let inv = self
            .ring_at(g)
            .unit_inverse(image)
            .expect("image is a unit at the greatest vertex");
        self.inner.offsets[g] + inv
    }

    /// Vertices covering the bottom: the atoms of `0·M`.
    pub fn meadow_atoms(&self) -> Vec<usize> {
        self.lattice().atoms()
    }

    /// Whether `x + y = a` forces `x = a` or `y = a`. The definition is
    /// checked over all pairs and cross-checked against the atom count.
    pub fn is_local(&self) -> Result<bool> {
        let n = self.size();
        let a = self.inner.offsets[self.bottom()];
        let pairs: Vec<usize> = if (n as u128) * (n as u128) <= 16_000_000 {
            (0..n).collect()
        } else {
            // x + y lands on the meet of the two vertices, so fiber zeros
            // represent every pair.
            (0..self.vertex_count()).map(|v| self.inner.offsets[v]).collect()
        };
        let by_definition = !pairs
            .par_iter()
            .any(|&x| x != a && pairs.iter().any(|&y| y != a && self.fadd(x, y) == a));
        let by_atoms = self.meadow_atoms().len() == 1;
        if by_definition != by_atoms {
            return Err(Error::Internal(format!(
                "locality by definition ({by_definition}) disagrees with the atom count ({})",
                self.meadow_atoms().len()
            )));
        }
        Ok(by_definition)
    }

    /// True when `0·M` is a chain.
    pub fn is_totally_ordered(&self) -> bool {
        let l = self.lattice();
        let n = self.vertex_count();
        (0..n).all(|i| (0..n).all(|j| l.leq(i, j) || l.leq(j, i)))
    }

    /// Graphviz source of the labeled lattice, top-down, bottom shown as `{a}`.
    pub fn to_dot(&self) -> String {
        let labels: Vec<String> = (0..self.vertex_count()).map(|v| self.vertex_ring_label(v)).collect();
        self.lattice().to_dot(&labels)
    }

    /// Serializable description; re-readable as a custom-lattice document.
    pub fn dump(&self) -> MeadowDump {
        let doc = self.inner.dl.to_document();
        let kind = match &self.inner.origin {
            Origin::Ring { .. } => "ring",
            Origin::GroupAlgebra { .. } => "group-algebra",
            Origin::Product(..) => "product",
            Origin::Custom => "custom",
        };
        MeadowDump {
            schema: 1,
            kind,
            base: self.base_ring().map(|r| r.descriptor()),
            carrier_size: self.size(),
            top: self.vertex_label(self.top()).to_string(),
            bottom: self.vertex_label(self.bottom()).to_string(),
            vertices: doc
                .vertices
                .into_iter()
                .enumerate()
                .map(|(v, d)| VertexDump {
                    name: d.name,
                    ring: d.ring,
                    order: self.ring_at(v).order(),
                })
                .collect(),
            edges: doc.edges,
        }
    }

    /// For a product meadow, the pair of factor elements.
    pub fn split(&self, x: Element) -> Option<(Element, Element)> {
        let Origin::Product(p, q) = &self.inner.origin else {
            return None;
        };
        self.assert_owned(x);
        let (vp, vq) = (x.vertex() / q.vertex_count(), x.vertex() % q.vertex_count());
        let parts = self.ring_at(x.vertex()).components(x.index())?;
        Some((p.element(vp, parts[0]).ok()?, q.element(vq, parts[1]).ok()?))
    }

    /// For a product meadow, the element with the given factor components.
    pub fn pair(&self, x: Element, y: Element) -> Option<Element> {
        let Origin::Product(p, q) = &self.inner.origin else {
            return None;
        };
        if !p.owns(x) || !q.owns(y) {
            return None;
        }
        let v = x.vertex() * q.vertex_count() + y.vertex();
        let index = self.ring_at(v).from_components(&[x.index(), y.index()])?;
        self.element(v, index).ok()
    }
}

impl Inner {
    fn raw_op(&self, a: usize, b: usize, mul: bool) -> usize {
        let (va, vb) = (self.vertex_of[a] as usize, self.vertex_of[b] as usize);
        let v = self.dl.lattice().meet(va, vb);
        let x = self.dl.push(v, va, a - self.offsets[va]);
        let y = self.dl.push(v, vb, b - self.offsets[vb]);
        let r = self.dl.ring(v);
        self.offsets[v] + if mul { r.mul(x, y) } else { r.add(x, y) }
    }
}

impl fmt::Debug for Meadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Meadow")
            .field("vertices", &self.vertex_count())
            .field("size", &self.size())
            .finish()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexDump {
    pub name: String,
    pub ring: String,
    pub order: usize,
}

/// JSON dump of a meadow. Its `vertices` and `edges` follow the
/// custom-lattice format, so a dump can be read back as a directed lattice.
#[derive(Debug, Clone, Serialize)]
pub struct MeadowDump {
    pub schema: u32,
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    pub carrier_size: usize,
    pub top: String,
    pub bottom: String,
    pub vertices: Vec<VertexDump>,
    pub edges: Vec<EdgeDoc>,
}

#[cfg(test)]
mod tests;
