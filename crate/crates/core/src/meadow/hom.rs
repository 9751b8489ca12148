use std::fmt;

use rayon::prelude::*;

use super::{Element, Meadow};
use crate::error::{Error, Result};

/// A map between meadow carriers preserving `+`, `·` and `1`.
#[derive(Clone)]
pub struct MeadowHom {
    source: Meadow,
    target: Meadow,
    /// flat source index -> flat target index
    map: Vec<u32>,
}

impl MeadowHom {
    /// Builds and verifies a homomorphism from a table on flat indices.
    pub fn new(source: &Meadow, target: &Meadow, map: Vec<usize>) -> Result<MeadowHom> {
        if map.len() != source.size() {
            return Err(Error::NotAHomomorphism(format!(
                "map has {} entries, source meadow has {} elements",
                map.len(),
                source.size()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&y| y >= target.size()) {
            return Err(Error::NotAHomomorphism(format!("image index {bad} out of range")));
        }
        let hom = MeadowHom {
            source: source.clone(),
            target: target.clone(),
            map: map.into_iter().map(|y| y as u32).collect(),
        };
        hom.verify()?;
        Ok(hom)
    }

    /// Builds from a function on elements and verifies the result.
    pub fn from_fn(source: &Meadow, target: &Meadow, f: impl Fn(Element) -> Element) -> Result<MeadowHom> {
        let map = source
            .elements()
            .map(|x| {
                let y = f(x);
                target.check_owned(y).map(|_| target.flat(y))
            })
            .collect::<Result<Vec<_>>>()?;
        MeadowHom::new(source, target, map)
    }

    pub fn identity(m: &Meadow) -> MeadowHom {
        MeadowHom {
            source: m.clone(),
            target: m.clone(),
            map: (0..m.size() as u32).collect(),
        }
    }

    /// Checks `f(1) = 1`, `f(x+y) = f(x)+f(y)` and `f(xy) = f(x)f(y)` on all pairs.
    pub fn verify(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        let f = |x: usize| self.map[x] as usize;
        let one = s.flat(s.one());
        if f(one) != t.flat(t.one()) {
            return Err(Error::NotAHomomorphism(format!(
                "f(1) = {} is not 1",
                t.fdescribe(f(one))
            )));
        }
        let bad = (0..s.size()).into_par_iter().find_map_first(|x| {
            (0..s.size()).find_map(|y| {
                if f(s.fadd(x, y)) != t.fadd(f(x), f(y)) {
                    Some(format!("f({0}+{1}) != f({0})+f({1})", s.fdescribe(x), s.fdescribe(y)))
                } else if f(s.fmul(x, y)) != t.fmul(f(x), f(y)) {
                    Some(format!("f({0}·{1}) != f({0})·f({1})", s.fdescribe(x), s.fdescribe(y)))
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

    pub fn source(&self) -> &Meadow {
        &self.source
    }

    pub fn target(&self) -> &Meadow {
        &self.target
    }

    pub fn apply(&self, x: Element) -> Element {
        self.target.at(self.map[self.source.flat(x)] as usize)
    }

    /// The table on flat indices.
    pub fn table(&self) -> Vec<usize> {
        self.map.iter().map(|&y| y as usize).collect()
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut hit = vec![false; self.target.size()];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y as usize], true))
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MeadowHom) -> Result<MeadowHom> {
        if !inner.target.same_meadow(&self.source) {
            return Err(Error::InvalidArgument("homomorphisms do not compose".into()));
        }
        Ok(MeadowHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            map: inner.map.iter().map(|&y| self.map[y as usize]).collect(),
        })
    }

    /// The inverse map of a bijective homomorphism, verified.
    pub fn inverse(&self) -> Result<MeadowHom> {
        if !self.is_bijective() {
            return Err(Error::NotAHomomorphism("map is not bijective".into()));
        }
        let mut inv = vec![0usize; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x;
        }
        MeadowHom::new(&self.target, &self.source, inv)
    }
}

impl fmt::Debug for MeadowHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MeadowHom({} -> {} elements)",
            self.source.size(),
            self.target.size()
        )
    }
}
