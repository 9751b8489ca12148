//! Finite bounded lattices with materialized order, meet and join.

use std::fmt::Write as _;

use crate::check::{run_law, CheckReport};
use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::limits::Limits;

/// Dense square bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> BitMatrix {
        let words = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let w = &mut self.bits[i * self.words + j / 64];
        if v {
            *w |= 1 << (j % 64);
        } else {
            *w &= !(1 << (j % 64));
        }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        for k in 0..self.words {
            let v = self.bits[src * self.words + k];
            self.bits[dst * self.words + k] |= v;
        }
    }

    fn count_row(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Debug, Clone)]
pub struct FiniteLattice {
    n: usize,
    /// `leq[i][j]` iff `i <= j`
    leq: BitMatrix,
    meet: Vec<u32>,
    join: Vec<u32>,
    top: usize,
    bottom: usize,
    labels: Vec<String>,
}

impl FiniteLattice {
    /// Builds a lattice from an order predicate; meets and joins are derived.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool, labels: Vec<String>) -> Result<FiniteLattice> {
        if n == 0 {
            return Err(Error::NotALattice("a lattice needs at least one vertex".into()));
        }
        if labels.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {n} vertices",
                labels.len()
            )));
        }
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, leq(i, j));
            }
        }
        Self::from_matrix(m, labels)
    }

    /// Builds a lattice from cover edges `(upper, lower)` by reflexive-transitive closure.
    pub fn from_covers(n: usize, covers: &[(usize, usize)], labels: Vec<String>) -> Result<FiniteLattice> {
        if labels.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {n} vertices",
                labels.len()
            )));
        }
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i, true);
        }
        for &(u, l) in covers {
            if u >= n || l >= n {
                return Err(Error::NotALattice(format!("edge ({u},{l}) names a missing vertex")));
            }
            m.set(l, u, true);
        }
        // Warshall on rows: if i <= k then everything above k is above i.
        for k in 0..n {
            for i in 0..n {
                if i != k && m.get(i, k) {
                    m.or_row_into(k, i);
                }
            }
        }
        let lattice = Self::from_matrix(m, labels)?;
        let hasse = lattice.hasse_edges();
        for &(u, l) in covers {
            if !hasse.contains(&(u, l)) {
                return Err(Error::NotALattice(format!(
                    "edge {} -> {} is not a cover",
                    lattice.labels[u], lattice.labels[l]
                )));
            }
        }
        Ok(lattice)
    }

    fn from_matrix(leq: BitMatrix, labels: Vec<String>) -> Result<FiniteLattice> {
        let n = leq.size();
        for i in 0..n {
            if !leq.get(i, i) {
                return Err(Error::NotALattice(format!("order is not reflexive at {}", labels[i])));
            }
            for j in 0..n {
                if i != j && leq.get(i, j) && leq.get(j, i) {
                    return Err(Error::NotALattice(format!(
                        "order is not antisymmetric: {} and {}",
                        labels[i], labels[j]
                    )));
                }
                if leq.get(i, j) {
                    for k in 0..n {
                        if leq.get(j, k) && !leq.get(i, k) {
                            return Err(Error::NotALattice(format!(
                                "order is not transitive through {}",
                                labels[j]
                            )));
                        }
                    }
                }
            }
        }
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            for j in i..n {
                let lower: Vec<usize> = (0..n).filter(|&k| leq.get(k, i) && leq.get(k, j)).collect();
                let glb = lower.iter().copied().find(|&k| lower.iter().all(|&l| leq.get(l, k)));
                let upper: Vec<usize> = (0..n).filter(|&k| leq.get(i, k) && leq.get(j, k)).collect();
                let lub = upper.iter().copied().find(|&k| upper.iter().all(|&l| leq.get(k, l)));
                let (Some(glb), Some(lub)) = (glb, lub) else {
                    return Err(Error::NotALattice(format!(
                        "{} and {} have no {}",
                        labels[i],
                        labels[j],
                        if glb.is_none() {
                            "greatest lower bound"
                        } else {
                            "least upper bound"
                        }
                    )));
                };
                meet[i * n + j] = glb as u32;
                meet[j * n + i] = glb as u32;
                join[i * n + j] = lub as u32;
                join[j * n + i] = lub as u32;
            }
        }
        let top = (0..n).find(|&t| (0..n).all(|k| leq.get(k, t))).unwrap();
        let bottom = (0..n).find(|&b| (0..n).all(|k| leq.get(b, k))).unwrap();
        Ok(FiniteLattice {
            n,
            leq,
            meet,
            join,
            top,
            bottom,
            labels,
        })
    }

    /// The ideal lattice under reverse inclusion: meet is the ideal sum,
    /// join the intersection, top the zero ideal.
    pub fn from_ideals(ideals: &[Ideal]) -> Result<FiniteLattice> {
        let labels = ideals.iter().map(|i| i.label()).collect();
        let lattice = Self::from_leq(ideals.len(), |i, j| ideals[j].is_subset_of(&ideals[i]), labels)?;
        let find = |x: &Ideal| ideals.iter().position(|y| y == x);
        for i in 0..ideals.len() {
            for j in i + 1..ideals.len() {
                let s = ideals[i].sum(&ideals[j])?;
                let t = ideals[i].intersection(&ideals[j])?;
                match (find(&s), find(&t)) {
                    (Some(a), Some(b)) if a == lattice.meet(i, j) && b == lattice.join(i, j) => {}
                    (None, _) | (_, None) => {
                        return Err(Error::NotALattice(format!(
                            "ideal list is not closed under sum and intersection at {} and {}",
                            ideals[i], ideals[j]
                        )))
                    }
                    _ => {
                        return Err(Error::Internal(format!(
                            "meet/join of {} and {} disagree with sum/intersection",
                            ideals[i], ideals[j]
                        )))
                    }
                }
            }
        }
        Ok(lattice)
    }

    /// The chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Result<FiniteLattice> {
        Self::from_leq(k, |i, j| i <= j, (0..k).map(|i| i.to_string()).collect())
    }

    /// Componentwise order; vertex `(a, b)` has id `a * l2.size() + b`.
    pub fn product(l1: &FiniteLattice, l2: &FiniteLattice) -> FiniteLattice {
        let (n1, n2) = (l1.n, l2.n);
        let n = n1 * n2;
        let mut leq = BitMatrix::new(n);
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for i in 0..n {
            let (a, b) = (i / n2, i % n2);
            for j in 0..n {
                let (c, d) = (j / n2, j % n2);
                leq.set(i, j, l1.leq(a, c) && l2.leq(b, d));
                meet[i * n + j] = (l1.meet(a, c) * n2 + l2.meet(b, d)) as u32;
                join[i * n + j] = (l1.join(a, c) * n2 + l2.join(b, d)) as u32;
            }
        }
        let labels = (0..n)
            .map(|i| format!("({},{})", l1.labels[i / n2], l2.labels[i % n2]))
            .collect();
        FiniteLattice {
            n,
            leq,
            meet,
            join,
            top: l1.top * n2 + l2.top,
            bottom: l1.bottom * n2 + l2.bottom,
            labels,
        }
    }

    /// The same lattice with a new vertex adjoined below the old bottom.
    pub fn with_new_bottom(&self, label: String) -> FiniteLattice {
        let n = self.n;
        let mut labels = self.labels.clone();
        labels.push(label);
        Self::from_leq(n + 1, |i, j| i == n || (j < n && self.leq(i, j)), labels)
            .expect("adjoining a bottom preserves the lattice property")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq.get(i, j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.n + j] as usize
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.n + j] as usize
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn order_matrix(&self) -> &BitMatrix {
        &self.leq
    }

    /// Vertices covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| a != self.bottom && (0..self.n).all(|k| !(self.lt(self.bottom, k) && self.lt(k, a))))
            .collect()
    }

    /// Every vertex other than the bottom lies above some atom.
    pub fn is_atomic(&self) -> bool {
        let atoms = self.atoms();
        (0..self.n).all(|v| v == self.bottom || atoms.iter().any(|&a| self.leq(a, v)))
    }

    /// Covering pairs `(upper, lower)`, sorted.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for l in 0..self.n {
                if self.lt(l, u) && (0..self.n).all(|k| !(self.lt(l, k) && self.lt(k, u))) {
                    edges.push((u, l));
                }
            }
        }
        edges
    }

    /// Number of vertices `>= v`.
    pub fn up_set_size(&self, v: usize) -> usize {
        self.leq.count_row(v)
    }

    /// Vertices ordered so that larger vertices come first.
    pub fn top_down_order(&self) -> Vec<usize> {
        let mut vs: Vec<usize> = (0..self.n).collect();
        vs.sort_by_key(|&v| (self.up_set_size(v), v));
        vs
    }

    /// Checks every bounded-lattice law on the stored tables.
    pub fn validate(&self) -> CheckReport {
        let limits = Limits::default();
        let mut r = CheckReport::new(format!("lattice with {} vertices", self.n));
        let n = self.n;
        let show = |v: usize| self.labels[v].clone();
        run_law(&mut r, "L1", "x <= x", n, 1, &limits, |t| self.leq(t[0], t[0]), show);
        run_law(
            &mut r,
            "L2",
            "x <= y and y <= x imply x = y",
            n,
            2,
            &limits,
            |t| !(self.leq(t[0], t[1]) && self.leq(t[1], t[0])) || t[0] == t[1],
            show,
        );
        run_law(
            &mut r,
            "L3",
            "x <= y <= z implies x <= z",
            n,
            3,
            &limits,
            |t| !(self.leq(t[0], t[1]) && self.leq(t[1], t[2])) || self.leq(t[0], t[2]),
            show,
        );
        run_law(
            &mut r,
            "L4",
            "x meet y is the greatest lower bound",
            n,
            3,
            &limits,
            |t| {
                let m = self.meet(t[0], t[1]);
                self.leq(m, t[0])
                    && self.leq(m, t[1])
                    && (!(self.leq(t[2], t[0]) && self.leq(t[2], t[1])) || self.leq(t[2], m))
            },
            show,
        );
        run_law(
            &mut r,
            "L5",
            "x join y is the least upper bound",
            n,
            3,
            &limits,
            |t| {
                let j = self.join(t[0], t[1]);
                self.leq(t[0], j)
                    && self.leq(t[1], j)
                    && (!(self.leq(t[0], t[2]) && self.leq(t[1], t[2])) || self.leq(j, t[2]))
            },
            show,
        );
        run_law(
            &mut r,
            "L6",
            "bottom <= x <= top",
            n,
            1,
            &limits,
            |t| self.leq(self.bottom, t[0]) && self.leq(t[0], self.top),
            show,
        );
        run_law(
            &mut r,
            "L7",
            "meet and join are associative",
            n,
            3,
            &limits,
            |t| {
                self.meet(self.meet(t[0], t[1]), t[2]) == self.meet(t[0], self.meet(t[1], t[2]))
                    && self.join(self.join(t[0], t[1]), t[2]) == self.join(t[0], self.join(t[1], t[2]))
            },
            show,
        );
        run_law(
            &mut r,
            "L8",
            "meet and join are commutative and idempotent",
            n,
            2,
            &limits,
            |t| {
                self.meet(t[0], t[1]) == self.meet(t[1], t[0])
                    && self.join(t[0], t[1]) == self.join(t[1], t[0])
                    && self.meet(t[0], t[0]) == t[0]
                    && self.join(t[0], t[0]) == t[0]
            },
            show,
        );
        run_law(
            &mut r,
            "L9",
            "x meet (x join y) = x = x join (x meet y)",
            n,
            2,
            &limits,
            |t| self.meet(t[0], self.join(t[0], t[1])) == t[0] && self.join(t[0], self.meet(t[0], t[1])) == t[0],
            show,
        );
        r
    }

    /// Graphviz source, drawn top-down with one edge per cover.
    pub fn to_dot(&self, labels: &[String]) -> String {
        let mut out = String::from("digraph lattice {\n  rankdir=TB;\n  node [shape=plaintext];\n");
        for v in self.top_down_order() {
            let label = labels[v].replace('\\', "\\\\").replace('"', "\\\"");
            writeln!(out, "  v{v} [label=\"{label}\"];").unwrap();
        }
        for (u, l) in self.hasse_edges() {
            writeln!(out, "  v{u} -> v{l};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    /// Shape summary used as an isomorphism invariant: per vertex, the number
    /// of vertices above and below, sorted.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut s: Vec<(usize, usize)> = (0..self.n)
            .map(|v| (self.up_set_size(v), (0..self.n).filter(|&k| self.leq(k, v)).count()))
            .collect();
        s.sort_unstable();
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_ring::FiniteRing;
    use crate::ideals::enumerate_ideals;

    fn ideal_lattice(n: usize) -> FiniteLattice {
        FiniteLattice::from_ideals(&enumerate_ideals(&FiniteRing::zn(n).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn z6_ideals_form_a_diamond() {
        let l = ideal_lattice(6);
        assert_eq!(l.label(l.top()), "(0)");
        assert_eq!(l.label(l.bottom()), "(1)");
        let mut atoms: Vec<&str> = l.atoms().iter().map(|&a| l.label(a)).collect();
        atoms.sort_unstable();
        assert_eq!(atoms, ["(2)", "(3)"]);
        assert_eq!(l.hasse_edges().len(), 4);
        assert!(l.validate().passed());
    }

    #[test]
    fn z4_ideals_form_a_chain() {
        let l = ideal_lattice(4);
        assert_eq!(l.size(), 3);
        assert_eq!(l.atoms().len(), 1);
        assert_eq!(l.hasse_edges().len(), 2);
    }

    #[test]
    fn chains() {
        let two = FiniteLattice::chain(2).unwrap();
        assert_eq!(two.atoms(), [1]);
        let three = FiniteLattice::chain(3).unwrap();
        assert_eq!(three.atoms(), [1]);
        assert_eq!(three.hasse_edges(), [(1, 0), (2, 1)]);
        assert!(three.is_atomic());
    }

    #[test]
    fn product_of_two_chains_is_a_diamond() {
        let two = FiniteLattice::chain(2).unwrap();
        let d = FiniteLattice::product(&two, &two);
        assert_eq!(d.size(), 4);
        assert_eq!(d.bottom(), 0);
        assert_eq!(d.top(), 3);
        assert_eq!(d.atoms(), [1, 2]);
        assert!(d.validate().passed());
    }

    #[test]
    fn product_atoms_pair_atoms_with_bottoms() {
        let l1 = ideal_lattice(6);
        let l2 = ideal_lattice(4);
        let p = FiniteLattice::product(&l1, &l2);
        let n2 = l2.size();
        let mut expected: Vec<usize> = l1.atoms().iter().map(|&a| a * n2 + l2.bottom()).collect();
        expected.extend(l2.atoms().iter().map(|&b| l1.bottom() * n2 + b));
        expected.sort_unstable();
        assert_eq!(p.atoms(), expected);
    }

    #[test]
    fn rejects_non_lattices() {
        // two incomparable maximal elements
        let err = FiniteLattice::from_leq(3, |i, j| i == j || i == 0, vec!["b".into(), "x".into(), "y".into()]);
        assert!(matches!(err, Err(Error::NotALattice(_))));
        let cyc = FiniteLattice::from_covers(2, &[(0, 1), (1, 0)], vec!["p".into(), "q".into()]);
        assert!(matches!(cyc, Err(Error::NotALattice(_))));
    }

    #[test]
    fn from_covers_rejects_non_cover_edges() {
        let labels = vec!["t".into(), "m".into(), "b".into()];
        let ok = FiniteLattice::from_covers(3, &[(0, 1), (1, 2)], labels.clone()).unwrap();
        assert_eq!(ok.top(), 0);
        assert!(FiniteLattice::from_covers(3, &[(0, 1), (1, 2), (0, 2)], labels).is_err());
    }

    #[test]
    fn dot_is_top_down() {
        let l = ideal_lattice(6);
        let dot = l.to_dot(l.labels());
        assert!(dot.starts_with("digraph lattice {"));
        assert_eq!(dot.matches("->").count(), 4);
        let top = dot.find("label=\"(0)\"").unwrap();
        let bottom = dot.find("label=\"(1)\"").unwrap();
        assert!(top < bottom);
    }
}
