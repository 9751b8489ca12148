//! Finite abelian groups `Z_{n1} x ... x Z_{nk}` and their subgroups.

use std::collections::HashSet;

/// Elements are mixed-radix indices, first coordinate least significant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicProduct {
    orders: Vec<usize>,
    strides: Vec<usize>,
    size: usize,
}

impl CyclicProduct {
    /// `orders` must be positive; the empty list is the trivial group.
    pub fn new(orders: &[usize]) -> CyclicProduct {
        let mut strides = Vec::with_capacity(orders.len());
        let mut size = 1;
        for &n in orders {
            assert!(n > 0, "cyclic orders must be positive");
            strides.push(size);
            size *= n;
        }
        CyclicProduct {
            orders: orders.to_vec(),
            strides,
            size,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn coordinates(&self, g: usize) -> Vec<usize> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| (g / s) % n)
            .collect()
    }

    pub fn from_coordinates(&self, c: &[usize]) -> usize {
        c.iter()
            .zip(&self.orders)
            .zip(&self.strides)
            .map(|((&x, &n), &s)| (x % n) * s)
            .sum()
    }

    pub fn add(&self, g: usize, h: usize) -> usize {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((g / s % n + h / s % n) % n) * s)
            .sum()
    }

    pub fn neg(&self, g: usize) -> usize {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((n - g / s % n) % n) * s)
            .sum()
    }

    /// The subgroup generated by `gens`, sorted.
    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size];
        seen[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        members
    }

    /// All subgroups, sorted by (order, members). Every subgroup is the join
    /// of the cyclic subgroups of its elements, so closing the cyclic
    /// subgroups under joins finds them all.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut found = Vec::new();
        for g in 0..self.size {
            let h = self.subgroup_generated(&[g]);
            if seen.insert(h.clone()) {
                found.push(h);
            }
        }
        let mut j = 0;
        while j < found.len() {
            for i in 0..j {
                let mut gens = found[i].clone();
                gens.extend_from_slice(&found[j]);
                let h = self.subgroup_generated(&gens);
                if seen.insert(h.clone()) {
                    found.push(h);
                }
            }
            j += 1;
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
    }

    /// Greedy generating set of a subgroup, ascending.
    pub fn generators_of(&self, subgroup: &[usize]) -> Vec<usize> {
        let mut current = vec![0];
        let mut gens = Vec::new();
        for &h in subgroup {
            if current.binary_search(&h).is_err() {
                gens.push(h);
                current = self.subgroup_generated(&gens);
            }
        }
        gens
    }

    /// `g` as an exponent vector, e.g. `g^2` or `g0*g1`.
    pub fn fmt_element(&self, g: usize) -> String {
        if g == 0 {
            return "1".to_string();
        }
        let single = self.orders.len() == 1;
        self.coordinates(g)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| {
                let var = if single { "g".to_string() } else { format!("g{k}") };
                if e == 1 {
                    var
                } else {
                    format!("{var}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }

    /// `<gens>` label of a subgroup.
    pub fn subgroup_label(&self, subgroup: &[usize]) -> String {
        let gens: Vec<String> = self
            .generators_of(subgroup)
            .iter()
            .map(|&g| self.fmt_element(g))
            .collect();
        if gens.is_empty() {
            "<1>".to_string()
        } else {
            format!("<{}>", gens.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let g = CyclicProduct::new(&[2, 3]);
        assert_eq!(g.size(), 6);
        assert_eq!(g.coordinates(5), [1, 2]);
        assert_eq!(g.from_coordinates(&[1, 2]), 5);
        assert_eq!(g.add(5, 5), g.from_coordinates(&[0, 1]));
        for x in 0..6 {
            assert_eq!(g.add(x, g.neg(x)), 0);
        }
    }

    fn brute_force_subgroup_count(g: &CyclicProduct) -> usize {
        // every subset containing 0 and closed under addition
        let n = g.size();
        (0u64..1 << n)
            .filter(|mask| mask & 1 == 1)
            .filter(|mask| {
                (0..n).all(|x| mask >> x & 1 == 0 || (0..n).all(|y| mask >> y & 1 == 0 || mask >> g.add(x, y) & 1 == 1))
            })
            .count()
    }

    #[test]
    fn subgroup_counts_match_subset_enumeration() {
        for orders in [vec![1], vec![2], vec![12], vec![2, 2], vec![2, 4], vec![3, 3]] {
            let g = CyclicProduct::new(&orders);
            assert_eq!(g.subgroups().len(), brute_force_subgroup_count(&g), "{orders:?}");
        }
    }

    #[test]
    fn klein_group_has_five_subgroups() {
        let g = CyclicProduct::new(&[2, 2]);
        let subs = g.subgroups();
        assert_eq!(subs.iter().map(|s| s.len()).collect::<Vec<_>>(), [1, 2, 2, 2, 4]);
        assert_eq!(g.subgroup_label(&subs[0]), "<1>");
        assert_eq!(g.subgroup_label(&subs[4]), "<g0,g1>");
    }
}
