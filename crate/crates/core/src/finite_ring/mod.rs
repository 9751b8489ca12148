//! Finite commutative unital rings with canonical carrier indexing.
//!
//! Every ring has carrier `0..order`. Operations are evaluated from the
//! construction recipe and, for small rings, cached in dense tables.

mod hom;
mod iso;
pub mod spec;

use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::check::{run_law, CheckReport};
use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::limits::{Limits, TABLE_LIMIT};

pub use hom::RingHom;
pub use iso::{
    find_ring_isomorphism, for_each_ring_isomorphism, IsoStatus, RingInvariants, SearchEnd, DEFAULT_ISO_BUDGET,
};
pub use spec::RingSpec;

const NONE: u32 = u32::MAX;

pub struct FiniteRing {
    order: usize,
    zero: usize,
    one: usize,
    kind: Kind,
    spec: RingSpec,
    tables: Option<Tables>,
    inverses: OnceLock<Vec<u32>>,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

enum Kind {
    Zn(usize),
    Poly {
        p: usize,
        modulus: Vec<usize>,
    },
    Product {
        factors: Vec<Arc<FiniteRing>>,
        strides: Vec<usize>,
    },
    GroupAlgebra {
        base: Arc<FiniteRing>,
        group: Vec<usize>,
        /// Group law on mixed-radix group element indices, `|A|²` entries.
        group_add: Vec<u32>,
        gsize: usize,
    },
    Quotient {
        parent: Arc<FiniteRing>,
        reps: Vec<usize>,
        class_of: Vec<u32>,
    },
    Corner {
        parent: Arc<FiniteRing>,
        members: Vec<usize>,
        index_of: Vec<u32>,
    },
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn digits(mut x: usize, base: usize, len: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % base);
        x /= base;
    }
    out
}

fn undigits(ds: &[usize], base: usize) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * base + d)
}

impl FiniteRing {
    /// `Z_n`; `n = 1` gives the zero ring.
    pub fn zn(n: usize) -> Result<Arc<FiniteRing>> {
        Self::zn_with(n, &Limits::default())
    }

    pub fn zn_with(n: usize, limits: &Limits) -> Result<Arc<FiniteRing>> {
        if n == 0 {
            return Err(Error::InvalidArgument("zn: modulus must be at least 1".into()));
        }
        limits.check_size(|| format!("Z_{n}"), n as u128)?;
        Ok(Self::finish(n, 0, 1 % n, Kind::Zn(n), RingSpec::Zn(n)))
    }

    /// `F_p[x]/(modulus)` with little-endian, monic `modulus`.
    pub fn poly_quotient(p: usize, modulus: &[usize]) -> Result<Arc<FiniteRing>> {
        Self::poly_quotient_with(p, modulus, &Limits::default())
    }

    pub fn poly_quotient_with(p: usize, modulus: &[usize], limits: &Limits) -> Result<Arc<FiniteRing>> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("poly: {p} is not prime")));
        }
        if modulus.len() < 2 {
            return Err(Error::InvalidArgument(
                "poly: modulus must have degree at least 1".into(),
            ));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument(format!("poly: coefficients must lie in 0..{p}")));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidArgument("poly: modulus must be monic".into()));
        }
        let degree = modulus.len() - 1;
        let order = (p as u128).checked_pow(degree as u32).unwrap_or(u128::MAX);
        limits.check_size(|| format!("F_{p}[x]/(degree {degree})"), order)?;
        let spec = RingSpec::Poly {
            p,
            modulus: modulus.to_vec(),
        };
        let kind = Kind::Poly {
            p,
            modulus: modulus.to_vec(),
        };
        Ok(Self::finish(order as usize, 0, 1, kind, spec))
    }

    /// Direct product with componentwise operations; the first factor is the
    /// least significant digit of the index.
    pub fn product(factors: &[Arc<FiniteRing>]) -> Result<Arc<FiniteRing>> {
        Self::product_with(factors, &Limits::default())
    }

    pub fn product_with(factors: &[Arc<FiniteRing>], limits: &Limits) -> Result<Arc<FiniteRing>> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product: at least one factor required".into()));
        }
        let order = factors
            .iter()
            .try_fold(1u128, |acc, f| acc.checked_mul(f.order as u128))
            .unwrap_or(u128::MAX);
        limits.check_size(|| "product ring".to_string(), order)?;
        let mut strides = Vec::with_capacity(factors.len());
        let mut s = 1;
        for f in factors {
            strides.push(s);
            s *= f.order;
        }
        let zero = factors.iter().zip(&strides).map(|(f, s)| f.zero * s).sum();
        let one = factors.iter().zip(&strides).map(|(f, s)| f.one * s).sum();
        let spec = RingSpec::Product(factors.iter().map(|f| f.spec.clone()).collect());
        let kind = Kind::Product {
            factors: factors.to_vec(),
            strides,
        };
        Ok(Self::finish(order as usize, zero, one, kind, spec))
    }

    /// The group algebra `base[A]` for `A = Z_{n1} x ... x Z_{nk}`.
    pub fn group_algebra(base: &Arc<FiniteRing>, cyclic_orders: &[usize]) -> Result<Arc<FiniteRing>> {
        Self::group_algebra_with(base, cyclic_orders, &Limits::default())
    }

    pub fn group_algebra_with(
        base: &Arc<FiniteRing>,
        cyclic_orders: &[usize],
        limits: &Limits,
    ) -> Result<Arc<FiniteRing>> {
        if cyclic_orders.contains(&0) {
            return Err(Error::InvalidArgument("ga: cyclic orders must be positive".into()));
        }
        if base.order < 2 {
            return Err(Error::InvalidArgument("ga: base ring must be nonzero".into()));
        }
        let gsize: usize = cyclic_orders.iter().product();
        let order = (base.order as u128).checked_pow(gsize as u32).unwrap_or(u128::MAX);
        limits.check_size(|| format!("group algebra of a group of order {gsize}"), order)?;
        let group = crate::construct::CyclicProduct::new(cyclic_orders);
        let mut group_add = vec![0u32; gsize * gsize];
        for g in 0..gsize {
            for h in 0..gsize {
                group_add[g * gsize + h] = group.add(g, h) as u32;
            }
        }
        let b = base.order;
        let zero = (0..gsize).rev().fold(0, |acc, _| acc * b + base.zero);
        let one = (0..gsize)
            .rev()
            .fold(0, |acc, g| acc * b + if g == 0 { base.one } else { base.zero });
        let spec = RingSpec::GroupAlgebra {
            base: Box::new(base.spec.clone()),
            group: cyclic_orders.to_vec(),
        };
        let kind = Kind::GroupAlgebra {
            base: base.clone(),
            group: cyclic_orders.to_vec(),
            group_add,
            gsize,
        };
        Ok(Self::finish(order as usize, zero, one, kind, spec))
    }

    fn finish(order: usize, zero: usize, one: usize, kind: Kind, spec: RingSpec) -> Arc<FiniteRing> {
        let mut ring = FiniteRing {
            order,
            zero,
            one,
            kind,
            spec,
            tables: None,
            inverses: OnceLock::new(),
        };
        if order <= TABLE_LIMIT {
            let n = order;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            add.par_chunks_mut(n)
                .zip(mul.par_chunks_mut(n))
                .enumerate()
                .for_each(|(a, (ra, rm))| {
                    for b in 0..n {
                        ra[b] = ring.raw_add(a, b) as u32;
                        rm[b] = ring.raw_mul(a, b) as u32;
                    }
                });
            let neg = (0..n).map(|a| ring.raw_neg(a) as u32).collect();
            ring.tables = Some(Tables { add, mul, neg });
        }
        Arc::new(ring)
    }

    fn raw_add(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zn(n) => (a + b) % n,
            Kind::Poly { p, modulus } => {
                let d = modulus.len() - 1;
                let (x, y) = (digits(a, *p, d), digits(b, *p, d));
                let s: Vec<usize> = x.iter().zip(&y).map(|(u, v)| (u + v) % p).collect();
                undigits(&s, *p)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.add((a / s) % f.order, (b / s) % f.order) * s)
                .sum(),
            Kind::GroupAlgebra { base, gsize, .. } => {
                let g = *gsize;
                let (x, y) = (digits(a, base.order, g), digits(b, base.order, g));
                let s: Vec<usize> = x.iter().zip(&y).map(|(&u, &v)| base.add(u, v)).collect();
                undigits(&s, base.order)
            }
            Kind::Quotient { parent, reps, class_of } => class_of[parent.add(reps[a], reps[b])] as usize,
            Kind::Corner {
                parent,
                members,
                index_of,
            } => index_of[parent.add(members[a], members[b])] as usize,
        }
    }

    fn raw_mul(&self, a: usize, b: usize) -> usize {
        match &self.kind {
            Kind::Zn(n) => (a * b) % n,
            Kind::Poly { p, modulus } => {
                let p = *p;
                let d = modulus.len() - 1;
                let (x, y) = (digits(a, p, d), digits(b, p, d));
                let mut prod = vec![0usize; 2 * d - 1];
                for (i, &u) in x.iter().enumerate() {
                    if u == 0 {
                        continue;
                    }
                    for (j, &v) in y.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + u * v) % p;
                    }
                }
                // x^d = -(m_0 + m_1 x + ... + m_{d-1} x^{d-1})
                for k in (d..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for t in 0..d {
                        prod[k - d + t] = (prod[k - d + t] + (p - c) * modulus[t]) % p;
                    }
                }
                undigits(&prod[..d], p)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.mul((a / s) % f.order, (b / s) % f.order) * s)
                .sum(),
            Kind::GroupAlgebra {
                base, group_add, gsize, ..
            } => {
                let g = *gsize;
                let (x, y) = (digits(a, base.order, g), digits(b, base.order, g));
                let mut c = vec![base.zero; g];
                for (i, &u) in x.iter().enumerate() {
                    if u == base.zero {
                        continue;
                    }
                    for (j, &v) in y.iter().enumerate() {
                        let k = group_add[i * g + j] as usize;
                        c[k] = base.add(c[k], base.mul(u, v));
                    }
                }
                undigits(&c, base.order)
            }
            Kind::Quotient { parent, reps, class_of } => class_of[parent.mul(reps[a], reps[b])] as usize,
            Kind::Corner {
                parent,
                members,
                index_of,
            } => index_of[parent.mul(members[a], members[b])] as usize,
        }
    }

    fn raw_neg(&self, a: usize) -> usize {
        match &self.kind {
            Kind::Zn(n) => (n - a) % n,
            Kind::Poly { p, modulus } => {
                let d = modulus.len() - 1;
                let s: Vec<usize> = digits(a, *p, d).iter().map(|u| (p - u) % p).collect();
                undigits(&s, *p)
            }
            Kind::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, &s)| f.neg((a / s) % f.order) * s)
                .sum(),
            Kind::GroupAlgebra { base, gsize, .. } => {
                let g = *gsize;
                let s: Vec<usize> = digits(a, base.order, g).iter().map(|&u| base.neg(u)).collect();
                undigits(&s, base.order)
            }
            Kind::Quotient { parent, reps, class_of } => class_of[parent.neg(reps[a])] as usize,
            Kind::Corner {
                parent,
                members,
                index_of,
            } => index_of[parent.neg(members[a])] as usize,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.order == 1
    }

    /// The construction recipe, printable as a ring spec.
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn descriptor(&self) -> String {
        self.spec.to_string()
    }

    /// Same ring object, or two objects built from the same recipe.
    pub fn same_as(&self, other: &FiniteRing) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.spec == other.spec)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element(&self, index: usize) -> RingElement<'_> {
        assert!(
            index < self.order,
            "index {index} out of range for ring of order {}",
            self.order
        );
        RingElement { ring: self, index }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.add[a * self.order + b] as usize,
            None => self.raw_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.tables {
            Some(t) => t.mul[a * self.order + b] as usize,
            None => self.raw_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        match &self.tables {
            Some(t) => t.neg[a] as usize,
            None => self.raw_neg(a),
        }
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k · x` as an iterated sum.
    pub fn scale(&self, k: usize, x: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, x))
    }

    pub fn pow(&self, x: usize, k: u32) -> usize {
        (0..k).fold(self.one, |acc, _| self.mul(acc, x))
    }

    pub fn additive_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut acc = x;
        while acc != self.zero {
            acc = self.add(acc, x);
            k += 1;
        }
        k
    }

    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    fn inverse_table(&self) -> &[u32] {
        self.inverses.get_or_init(|| {
            (0..self.order)
                .into_par_iter()
                .map(|x| {
                    (0..self.order)
                        .find(|&y| self.mul(x, y) == self.one)
                        .map_or(NONE, |y| y as u32)
                })
                .collect()
        })
    }

    pub fn is_unit(&self, x: usize) -> bool {
        self.inverse_table()[x] != NONE
    }

    pub fn units(&self) -> Vec<usize> {
        self.elements().filter(|&x| self.is_unit(x)).collect()
    }

    pub fn unit_inverse(&self, x: usize) -> Result<usize> {
        match self.inverse_table()[x] {
            NONE => Err(Error::NotAUnit(x)),
            y => Ok(y as usize),
        }
    }

    pub fn is_idempotent(&self, e: usize) -> bool {
        self.mul(e, e) == e
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&e| self.is_idempotent(e)).collect()
    }

    /// Nonzero idempotents minimal under `e <= f  iff  e·f = e`, ascending.
    pub fn primitive_idempotents(&self) -> Vec<usize> {
        let nonzero: Vec<usize> = self.idempotents().into_iter().filter(|&e| e != self.zero).collect();
        nonzero
            .iter()
            .copied()
            .filter(|&e| !nonzero.iter().any(|&f| f != e && self.mul(f, e) == f))
            .collect()
    }

    pub fn is_nilpotent(&self, x: usize) -> bool {
        let mut acc = x;
        for _ in 0..=self.order {
            if acc == self.zero {
                return true;
            }
            acc = self.mul(acc, x);
        }
        false
    }

    /// The corner ring `e·R` with identity `e`, and its embedding into `R`.
    pub fn corner(self: &Arc<Self>, e: usize) -> Result<(Arc<FiniteRing>, Vec<usize>)> {
        if e >= self.order {
            return Err(Error::InvalidArgument(format!("corner: index {e} out of range")));
        }
        if !self.is_idempotent(e) {
            return Err(Error::InvalidArgument(format!(
                "corner: {} is not idempotent",
                self.element(e)
            )));
        }
        if e == self.zero {
            return Err(Error::InvalidArgument("corner: idempotent must be nonzero".into()));
        }
        let mut members: Vec<usize> = self.elements().map(|x| self.mul(e, x)).collect();
        members.sort_unstable();
        members.dedup();
        let mut index_of = vec![NONE; self.order];
        for (i, &m) in members.iter().enumerate() {
            index_of[m] = i as u32;
        }
        let zero = index_of[self.zero] as usize;
        let one = index_of[e] as usize;
        let spec = RingSpec::Corner {
            ring: Box::new(self.spec.clone()),
            idempotent: e,
        };
        let kind = Kind::Corner {
            parent: self.clone(),
            members: members.clone(),
            index_of,
        };
        Ok((Self::finish(members.len(), zero, one, kind, spec), members))
    }

    /// `R/I` with minimum-index coset representatives, plus the projection.
    pub fn quotient(self: &Arc<Self>, ideal: &Ideal) -> Result<(Arc<FiniteRing>, RingHom)> {
        if !ideal.ring().same_as(self) {
            return Err(Error::RingMismatch);
        }
        let mut class_of = vec![NONE; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if class_of[x] != NONE {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &i in ideal.members() {
                class_of[self.add(x, i)] = c;
            }
        }
        let zero = class_of[self.zero] as usize;
        let one = class_of[self.one] as usize;
        let spec = RingSpec::Quotient {
            ring: Box::new(self.spec.clone()),
            gens: ideal.generators().to_vec(),
        };
        let order = reps.len();
        let kind = Kind::Quotient {
            parent: self.clone(),
            reps,
            class_of: class_of.clone(),
        };
        let q = Self::finish(order, zero, one, kind, spec);
        let proj = RingHom::new_unchecked(self.clone(), q.clone(), class_of);
        Ok((q, proj))
    }

    /// For a quotient ring, the parent element representing coset `i`.
    pub fn coset_representative(&self, i: usize) -> Option<usize> {
        match &self.kind {
            Kind::Quotient { reps, .. } => reps.get(i).copied(),
            _ => None,
        }
    }

    /// The parent ring of a quotient or corner ring.
    pub fn parent(&self) -> Option<&Arc<FiniteRing>> {
        match &self.kind {
            Kind::Quotient { parent, .. } | Kind::Corner { parent, .. } => Some(parent),
            _ => None,
        }
    }

    /// Factors of a product ring.
    pub fn factors(&self) -> Option<&[Arc<FiniteRing>]> {
        match &self.kind {
            Kind::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Splits a product-ring index into factor indices.
    pub fn components(&self, x: usize) -> Option<Vec<usize>> {
        match &self.kind {
            Kind::Product { factors, strides } => {
                Some(factors.iter().zip(strides).map(|(f, &s)| (x / s) % f.order).collect())
            }
            _ => None,
        }
    }

    /// Inverse of [`components`](Self::components).
    pub fn from_components(&self, parts: &[usize]) -> Option<usize> {
        match &self.kind {
            Kind::Product { factors, strides } if parts.len() == factors.len() => {
                Some(parts.iter().zip(strides).map(|(x, s)| x * s).sum())
            }
            _ => None,
        }
    }

    /// Human-readable name, e.g. `Z_6/(2)` or `F_2[x]/(x^2)`.
    pub fn name(&self) -> String {
        fn wrap(s: String) -> String {
            if s.contains(' ') || s.contains('/') {
                format!("({s})")
            } else {
                s
            }
        }
        match &self.kind {
            Kind::Zn(1) => "0".to_string(),
            Kind::Zn(n) => format!("Z_{n}"),
            Kind::Poly { p, modulus } => format!("F_{p}[x]/({})", fmt_poly(modulus, *p)),
            Kind::Product { factors, .. } => factors.iter().map(|f| wrap(f.name())).collect::<Vec<_>>().join(" x "),
            Kind::GroupAlgebra { base, group, .. } => {
                let g: Vec<String> = group.iter().map(|n| format!("Z_{n}")).collect();
                format!("{}[{}]", wrap(base.name()), g.join(" x "))
            }
            Kind::Quotient { parent, .. } => {
                let gens = match &self.spec {
                    RingSpec::Quotient { gens, .. } => gens.clone(),
                    _ => unreachable!(),
                };
                let g: Vec<String> = gens.iter().map(|&x| parent.fmt_element(x)).collect();
                let name = parent.name();
                let name = if name.contains(' ') { format!("({name})") } else { name };
                format!("{}/({})", name, g.join(","))
            }
            Kind::Corner { parent, members, .. } => {
                format!("{}·{}", parent.fmt_element(members[self.one]), wrap(parent.name()))
            }
        }
    }

    /// Renders an element in the ring's natural notation.
    pub fn fmt_element(&self, x: usize) -> String {
        match &self.kind {
            Kind::Zn(_) => x.to_string(),
            Kind::Poly { p, modulus } => {
                let d = modulus.len() - 1;
                fmt_poly(&digits(x, *p, d), *p)
            }
            Kind::Product { factors, strides } => {
                let parts: Vec<String> = factors
                    .iter()
                    .zip(strides)
                    .map(|(f, &s)| f.fmt_element((x / s) % f.order))
                    .collect();
                format!("({})", parts.join(","))
            }
            Kind::GroupAlgebra { base, group, gsize, .. } => {
                let g = *gsize;
                let coeffs = digits(x, base.order, g);
                let cyc = crate::construct::CyclicProduct::new(group);
                let mut terms = Vec::new();
                for (h, &c) in coeffs.iter().enumerate() {
                    if c == base.zero {
                        continue;
                    }
                    let exps = cyc.coordinates(h);
                    let mono: Vec<String> = exps
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e != 0)
                        .map(|(k, &e)| {
                            let var = if group.len() == 1 {
                                "g".to_string()
                            } else {
                                format!("g{k}")
                            };
                            if e == 1 {
                                var
                            } else {
                                format!("{var}^{e}")
                            }
                        })
                        .collect();
                    let coeff = base.fmt_element(c);
                    let coeff = if coeff.contains('+') {
                        format!("({coeff})")
                    } else {
                        coeff
                    };
                    terms.push(match (mono.is_empty(), c == base.one) {
                        (true, _) => coeff,
                        (false, true) => mono.join("*"),
                        (false, false) => format!("{coeff}*{}", mono.join("*")),
                    });
                }
                if terms.is_empty() {
                    base.fmt_element(base.zero)
                } else {
                    terms.join("+")
                }
            }
            Kind::Quotient { parent, reps, .. } => parent.fmt_element(reps[x]),
            Kind::Corner { parent, members, .. } => parent.fmt_element(members[x]),
        }
    }

    /// Exhaustive (or, above the cap, sampled) check of the commutative ring laws.
    pub fn check_axioms(&self, limits: &Limits) -> CheckReport {
        let mut report = CheckReport::new(format!("ring {} [{}]", self.name(), self.spec));
        let n = self.order;
        let show = |i: usize| self.fmt_element(i);
        let (z, o) = (self.zero, self.one);
        run_law(
            &mut report,
            "R1",
            "(x+y)+z = x+(y+z)",
            n,
            3,
            limits,
            |t| self.add(self.add(t[0], t[1]), t[2]) == self.add(t[0], self.add(t[1], t[2])),
            show,
        );
        run_law(
            &mut report,
            "R2",
            "x+y = y+x",
            n,
            2,
            limits,
            |t| self.add(t[0], t[1]) == self.add(t[1], t[0]),
            show,
        );
        run_law(
            &mut report,
            "R3",
            "x+0 = x",
            n,
            1,
            limits,
            |t| self.add(t[0], z) == t[0],
            show,
        );
        run_law(
            &mut report,
            "R4",
            "x+(-x) = 0",
            n,
            1,
            limits,
            |t| self.add(t[0], self.neg(t[0])) == z,
            show,
        );
        run_law(
            &mut report,
            "R5",
            "(xy)z = x(yz)",
            n,
            3,
            limits,
            |t| self.mul(self.mul(t[0], t[1]), t[2]) == self.mul(t[0], self.mul(t[1], t[2])),
            show,
        );
        run_law(
            &mut report,
            "R6",
            "xy = yx",
            n,
            2,
            limits,
            |t| self.mul(t[0], t[1]) == self.mul(t[1], t[0]),
            show,
        );
        run_law(
            &mut report,
            "R7",
            "1x = x",
            n,
            1,
            limits,
            |t| self.mul(o, t[0]) == t[0],
            show,
        );
        run_law(
            &mut report,
            "R8",
            "x(y+z) = xy+xz",
            n,
            3,
            limits,
            |t| self.mul(t[0], self.add(t[1], t[2])) == self.add(self.mul(t[0], t[1]), self.mul(t[0], t[2])),
            show,
        );
        report
    }
}

fn fmt_poly(coeffs: &[usize], _p: usize) -> String {
    let mut terms = Vec::new();
    for (k, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let var = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        terms.push(match (k, c) {
            (0, _) => c.to_string(),
            (_, 1) => var,
            _ => format!("{c}{var}"),
        });
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("spec", &self.spec.to_string())
            .field("order", &self.order)
            .finish()
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// An element of a specific ring.
#[derive(Clone, Copy)]
pub struct RingElement<'a> {
    ring: &'a FiniteRing,
    index: usize,
}

impl<'a> RingElement<'a> {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn ring(&self) -> &'a FiniteRing {
        self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.index)
    }

    fn same(&self, other: &RingElement<'_>) {
        assert!(self.ring.same_as(other.ring), "elements of different rings");
    }
}

impl PartialEq for RingElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(other.ring) && self.index == other.index
    }
}

impl Eq for RingElement<'_> {}

impl<'a> std::ops::Add for RingElement<'a> {
    type Output = RingElement<'a>;

    fn add(self, rhs: Self) -> Self::Output {
        self.same(&rhs);
        self.ring.element(self.ring.add(self.index, rhs.index))
    }
}

impl<'a> std::ops::Mul for RingElement<'a> {
    type Output = RingElement<'a>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.same(&rhs);
        self.ring.element(self.ring.mul(self.index, rhs.index))
    }
}

impl<'a> std::ops::Neg for RingElement<'a> {
    type Output = RingElement<'a>;

    fn neg(self) -> Self::Output {
        self.ring.element(self.ring.neg(self.index))
    }
}

impl fmt::Display for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.fmt_element(self.index))
    }
}

impl fmt::Debug for RingElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.ring.fmt_element(self.index), self.index)
    }
}
