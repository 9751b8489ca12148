//! Ideals of finite rings, stored extensionally.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_ring::{FiniteRing, RingSpec};
use crate::limits::Limits;

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<FiniteRing>,
    members: Vec<usize>,
    generators: Vec<usize>,
}

/// Serialized form of an ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealJson {
    pub ring: RingSpec,
    pub members: Vec<usize>,
    pub generators: Vec<usize>,
}

fn principal_members(r: &FiniteRing, x: usize) -> Vec<usize> {
    let mut m: Vec<usize> = r.elements().map(|y| r.mul(x, y)).collect();
    m.sort_unstable();
    m.dedup();
    m
}

fn sum_members(r: &FiniteRing, a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut hit = vec![false; r.order()];
    for &x in a {
        for &y in b {
            hit[r.add(x, y)] = true;
        }
    }
    r.elements().filter(|&x| hit[x]).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.len() <= b.len() && a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Greedy generating set: scan members ascending, keep any not yet generated.
fn canonical_generators(r: &FiniteRing, members: &[usize]) -> Vec<usize> {
    let mut current = vec![r.zero()];
    let mut gens = Vec::new();
    for &m in members {
        if current.binary_search(&m).is_err() {
            gens.push(m);
            current = sum_members(r, &current, &principal_members(r, m));
        }
    }
    if gens.is_empty() {
        gens.push(r.zero());
    }
    gens
}

impl Ideal {
    fn from_trusted(ring: &Arc<FiniteRing>, members: Vec<usize>) -> Ideal {
        let generators = canonical_generators(ring, &members);
        Ideal {
            ring: ring.clone(),
            members,
            generators,
        }
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members: vec![ring.zero()],
            generators: vec![ring.zero()],
        }
    }

    pub fn unit(ring: &Arc<FiniteRing>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            members: ring.elements().collect(),
            generators: vec![ring.one()],
        }
    }

    /// The smallest ideal containing `x`, that is `x·R`.
    pub fn principal(ring: &Arc<FiniteRing>, x: usize) -> Result<Ideal> {
        if x >= ring.order() {
            return Err(Error::InvalidArgument(format!("index {x} out of range")));
        }
        Ok(Ideal {
            ring: ring.clone(),
            members: principal_members(ring, x),
            generators: vec![x],
        })
    }

    /// The ideal generated by `gens`; the empty list gives the zero ideal.
    pub fn generated_by(ring: &Arc<FiniteRing>, gens: &[usize]) -> Result<Ideal> {
        let mut members = vec![ring.zero()];
        for &g in gens {
            if g >= ring.order() {
                return Err(Error::InvalidArgument(format!("generator {g} out of range")));
            }
            members = sum_members(ring, &members, &principal_members(ring, g));
        }
        let generators = if gens.is_empty() {
            vec![ring.zero()]
        } else {
            gens.to_vec()
        };
        Ok(Ideal {
            ring: ring.clone(),
            members,
            generators,
        })
    }

    /// Validates an explicit member set.
    pub fn from_members(ring: &Arc<FiniteRing>, members: &[usize]) -> Result<Ideal> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if let Some(&bad) = m.iter().find(|&&x| x >= ring.order()) {
            return Err(Error::NotAnIdeal(format!("index {bad} out of range")));
        }
        let ideal = Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            members: m,
        };
        ideal.verify()?;
        Ok(Ideal::from_trusted(ring, ideal.members))
    }

    /// Re-checks the ideal laws on the member set.
    pub fn verify(&self) -> Result<()> {
        let r = &*self.ring;
        let has = |x: usize| self.members.binary_search(&x).is_ok();
        if !has(r.zero()) {
            return Err(Error::NotAnIdeal("does not contain 0".into()));
        }
        for &a in &self.members {
            if !has(r.neg(a)) {
                return Err(Error::NotAnIdeal(format!(
                    "not closed under negation at {}",
                    r.fmt_element(a)
                )));
            }
            for &b in &self.members {
                if !has(r.add(a, b)) {
                    return Err(Error::NotAnIdeal(format!(
                        "not closed under addition: {} + {}",
                        r.fmt_element(a),
                        r.fmt_element(b)
                    )));
                }
            }
            for x in r.elements() {
                if !has(r.mul(x, a)) {
                    return Err(Error::NotAnIdeal(format!(
                        "does not absorb {} * {}",
                        r.fmt_element(x),
                        r.fmt_element(a)
                    )));
                }
            }
        }
        if !self.generators.is_empty() {
            let closure = Ideal::generated_by(&self.ring, &self.generators)?;
            if closure.members != self.members {
                return Err(Error::NotAnIdeal(
                    "members are not the closure of the generators".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_proper(&self) -> bool {
        self.members.len() < self.ring.order()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        is_subset(&self.members, &other.members)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_subset_of(other) {
            return Ok(other.clone());
        }
        if other.is_subset_of(self) {
            return Ok(self.clone());
        }
        let members = sum_members(&self.ring, &self.members, &other.members);
        Ok(Ideal::from_trusted(&self.ring, members))
    }

    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let members: Vec<usize> = self.members.iter().copied().filter(|x| other.contains(*x)).collect();
        Ok(Ideal::from_trusted(&self.ring, members))
    }

    /// `(g1,g2,...)` in the ring's element notation.
    pub fn label(&self) -> String {
        let g: Vec<String> = self.generators.iter().map(|&x| self.ring.fmt_element(x)).collect();
        format!("({})", g.join(","))
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            ring: self.ring.spec().clone(),
            members: self.members.clone(),
            generators: self.generators.clone(),
        }
    }
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.members == other.members
    }
}

impl Eq for Ideal {}

impl Hash for Ideal {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.members.hash(state);
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{}{:?}", self.label(), self.members)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn principal_ideal(r: &Arc<FiniteRing>, x: usize) -> Result<Ideal> {
    Ideal::principal(r, x)
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.sum(j)
}

pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersection(j)
}

/// Every ideal of `r`, sorted by (cardinality, members).
pub fn enumerate_ideals(r: &Arc<FiniteRing>) -> Result<Vec<Ideal>> {
    enumerate_ideals_with(r, &Limits::default())
}

pub fn enumerate_ideals_with(r: &Arc<FiniteRing>, limits: &Limits) -> Result<Vec<Ideal>> {
    limits.check_size(|| format!("ideal enumeration of {}", r.name()), r.order() as u128)?;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut found: Vec<Vec<usize>> = Vec::new();
    for x in r.elements() {
        let m = principal_members(r, x);
        if seen.insert(m.clone()) {
            found.push(m);
        }
    }
    // Every ideal of a finite ring is a finite sum of principal ideals, so
    // closing under pairwise sums reaches all of them.
    let mut j = 0;
    while j < found.len() {
        for i in 0..j {
            let (a, b) = (&found[i], &found[j]);
            if is_subset(a, b) || is_subset(b, a) {
                continue;
            }
            let s = sum_members(r, a, b);
            if seen.insert(s.clone()) {
                found.push(s);
            }
        }
        j += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(found.into_iter().map(|m| Ideal::from_trusted(r, m)).collect())
}

/// Proper ideals maximal under inclusion.
pub fn maximal_ideals(r: &Arc<FiniteRing>) -> Result<Vec<Ideal>> {
    let proper: Vec<Ideal> = enumerate_ideals(r)?.into_iter().filter(|i| i.is_proper()).collect();
    Ok(proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.is_subset_of(j)))
        .cloned()
        .collect())
}

/// A ring is local when it has exactly one maximal ideal.
pub fn is_local_ring(r: &Arc<FiniteRing>) -> Result<bool> {
    Ok(maximal_ideals(r)?.len() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Arc<FiniteRing> {
        FiniteRing::zn(n).unwrap()
    }

    #[test]
    fn principal_ideals_of_z6() {
        let r = zn(6);
        assert_eq!(Ideal::principal(&r, 2).unwrap().members(), &[0, 2, 4]);
        assert_eq!(Ideal::principal(&r, 0).unwrap().members(), &[0]);
        assert_eq!(Ideal::principal(&r, 1).unwrap().members(), &[0, 1, 2, 3, 4, 5]);
        assert!(Ideal::principal(&r, 6).is_err());
    }

    #[test]
    fn sum_and_intersection_in_z6() {
        let r = zn(6);
        let two = Ideal::principal(&r, 2).unwrap();
        let three = Ideal::principal(&r, 3).unwrap();
        assert_eq!(two.sum(&three).unwrap(), Ideal::unit(&r));
        assert_eq!(two.intersection(&three).unwrap(), Ideal::zero(&r));
        assert_eq!(two.sum(&Ideal::zero(&r)).unwrap(), two);
    }

    #[test]
    fn mismatched_rings_are_rejected() {
        let a = Ideal::zero(&zn(6));
        let b = Ideal::zero(&zn(4));
        assert_eq!(a.sum(&b).unwrap_err(), Error::RingMismatch);
        assert_eq!(a.intersection(&b).unwrap_err(), Error::RingMismatch);
    }

    #[test]
    fn z6_has_four_ideals_in_canonical_order() {
        let ideals = enumerate_ideals(&zn(6)).unwrap();
        let labels: Vec<String> = ideals.iter().map(|i| i.label()).collect();
        assert_eq!(labels, ["(0)", "(3)", "(2)", "(1)"]);
    }

    #[test]
    fn z12_ideals_match_divisors() {
        let ideals = enumerate_ideals(&zn(12)).unwrap();
        let mut gens: Vec<usize> = ideals.iter().map(|i| i.generators()[0]).collect();
        gens.sort_unstable();
        assert_eq!(gens, [0, 1, 2, 3, 4, 6]);
    }

    #[test]
    fn field_has_two_ideals() {
        let f4 = FiniteRing::poly_quotient(2, &[1, 1, 1]).unwrap();
        let ideals = enumerate_ideals(&f4).unwrap();
        assert_eq!(ideals.len(), 2);
        assert!(ideals[0].is_zero());
        assert!(!ideals[1].is_proper());
    }

    #[test]
    fn maximal_ideals_examples() {
        let labels =
            |r: Arc<FiniteRing>| -> Vec<String> { maximal_ideals(&r).unwrap().iter().map(|i| i.label()).collect() };
        assert_eq!(labels(zn(6)), ["(3)", "(2)"]);
        assert_eq!(labels(zn(4)), ["(2)"]);
        assert_eq!(labels(FiniteRing::poly_quotient(2, &[0, 0, 1]).unwrap()), ["(x)"]);
        assert!(labels(zn(1)).is_empty());
    }

    #[test]
    fn from_members_validates() {
        let r = zn(6);
        assert!(Ideal::from_members(&r, &[0, 3]).is_ok());
        assert!(matches!(Ideal::from_members(&r, &[0, 2]), Err(Error::NotAnIdeal(_))));
        assert!(matches!(Ideal::from_members(&r, &[1, 2]), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn cap_is_enforced() {
        let r = zn(50);
        let limits = Limits::default().with_size_cap(10);
        assert!(matches!(
            enumerate_ideals_with(&r, &limits),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn json_shape() {
        let r = zn(6);
        let v = serde_json::to_value(Ideal::principal(&r, 2).unwrap().to_json()).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"ring": "zn:6", "members": [0, 2, 4], "generators": [2]})
        );
    }
}
