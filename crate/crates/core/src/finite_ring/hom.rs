use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use super::FiniteRing;
use crate::error::{Error, Result};

/// A unital ring homomorphism given by its table on carrier indices.
#[derive(Clone)]
pub struct RingHom {
    source: Arc<FiniteRing>,
    target: Arc<FiniteRing>,
    map: Vec<u32>,
}

impl RingHom {
    /// Builds a homomorphism after checking every law on every pair.
    pub fn new(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<usize>) -> Result<RingHom> {
        if map.len() != source.order() {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries, source has {} elements",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.order()) {
            return Err(Error::NotAHomomorphism(format!("image index {bad} out of range")));
        }
        let hom = RingHom {
            source,
            target,
            map: map.into_iter().map(|y| y as u32).collect(),
        };
        hom.verify()?;
        Ok(hom)
    }

    pub(crate) fn new_unchecked(source: Arc<FiniteRing>, target: Arc<FiniteRing>, map: Vec<u32>) -> RingHom {
        debug_assert_eq!(map.len(), source.order());
        RingHom { source, target, map }
    }

    pub fn identity(ring: &Arc<FiniteRing>) -> RingHom {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            map: (0..ring.order() as u32).collect(),
        }
    }

    /// The unique map into a zero ring.
    pub fn to_zero_ring(source: &Arc<FiniteRing>, target: &Arc<FiniteRing>) -> Result<RingHom> {
        if !target.is_zero_ring() {
            return Err(Error::InvalidArgument("target is not the zero ring".into()));
        }
        Ok(RingHom::new_unchecked(
            source.clone(),
            target.clone(),
            vec![0; source.order()],
        ))
    }

    /// Checks `f(1) = 1`, `f(x+y) = f(x)+f(y)` and `f(xy) = f(x)f(y)`.
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        if self.apply(s.one()) != t.one() {
            return Err(Error::NotAHomomorphism(format!(
                "f(1) = {} is not 1",
                t.fmt_element(self.apply(s.one()))
            )));
        }
        let bad = (0..s.order()).into_par_iter().find_map_first(|x| {
            (0..s.order()).find_map(|y| {
                if self.apply(s.add(x, y)) != t.add(self.apply(x), self.apply(y)) {
                    Some(format!(
                        "f({0}+{1}) != f({0})+f({1})",
                        s.fmt_element(x),
                        s.fmt_element(y)
                    ))
                } else if self.apply(s.mul(x, y)) != t.mul(self.apply(x), self.apply(y)) {
                    Some(format!(
                        "f({0}*{1}) != f({0})*f({1})",
                        s.fmt_element(x),
                        s.fmt_element(y)
                    ))
                } else {
                    None
                }
            })
        });
        match bad {
            Some(msg) => Err(Error::NotAHomomorphism(msg)),
            None => Ok(()),
        }
    }

    pub fn source(&self) -> &Arc<FiniteRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteRing> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn table(&self) -> Vec<usize> {
        self.map.iter().map(|&y| y as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.map
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RingHom) -> Result<RingHom> {
        if !inner.target.same_as(&self.source) {
            return Err(Error::RingMismatch);
        }
        Ok(RingHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: inner.map.iter().map(|&y| self.map[y as usize]).collect(),
        })
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        for &y in &self.map {
            hit[y as usize] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.order()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y as usize], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.source.order() == self.target.order() && self.is_injective()
    }

    pub fn kernel(&self) -> Vec<usize> {
        let z = self.target.zero() as u32;
        (0..self.map.len()).filter(|&x| self.map[x] == z).collect()
    }

    /// Same source, target and table.
    pub fn same_map(&self, other: &RingHom) -> bool {
        self.source.same_as(&other.source) && self.target.same_as(&other.target) && self.map == other.map
    }
}

impl fmt::Debug for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "RingHom({} -> {}, {:?})",
            self.source.spec(),
            self.target.spec(),
            self.map
        )
    }
}
