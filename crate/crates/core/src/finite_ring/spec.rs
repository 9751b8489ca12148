//! The ring-spec mini language.
//!
//! ```text
//! zn:<n>
//! poly:p=<prime>,mod=[c0,c1,...,cd]      little-endian, monic
//! prod:(<spec>,<spec>,...)
//! ga:base=<spec>,group=[n1,n2,...]
//! quot:<spec>/gens=[e1,...]               quotient by the ideal the indices generate
//! corner:<spec>/e=<idempotent>            the corner ring e·R
//! ```
//!
//! Every construction records its recipe as a [`RingSpec`], so descriptors
//! print back into strings this parser accepts.

use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::FiniteRing;
use crate::error::{Error, Result};
use crate::ideals::Ideal;
use crate::limits::Limits;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingSpec {
    Zn(usize),
    Poly { p: usize, modulus: Vec<usize> },
    Product(Vec<RingSpec>),
    GroupAlgebra { base: Box<RingSpec>, group: Vec<usize> },
    Quotient { ring: Box<RingSpec>, gens: Vec<usize> },
    Corner { ring: Box<RingSpec>, idempotent: usize },
}

impl RingSpec {
    pub fn parse(input: &str) -> Result<RingSpec> {
        let mut p = Parser {
            src: input.as_bytes(),
            pos: 0,
        };
        let spec = p.spec()?;
        p.ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(spec)
    }

    /// Builds the ring under the default [`Limits`].
    pub fn build(&self) -> Result<Arc<FiniteRing>> {
        self.build_with(&Limits::default())
    }

    pub fn build_with(&self, limits: &Limits) -> Result<Arc<FiniteRing>> {
        match self {
            RingSpec::Zn(n) => FiniteRing::zn_with(*n, limits),
            RingSpec::Poly { p, modulus } => FiniteRing::poly_quotient_with(*p, modulus, limits),
            RingSpec::Product(parts) => {
                let rings = parts.iter().map(|s| s.build_with(limits)).collect::<Result<Vec<_>>>()?;
                FiniteRing::product_with(&rings, limits)
            }
            RingSpec::GroupAlgebra { base, group } => {
                let base = base.build_with(limits)?;
                FiniteRing::group_algebra_with(&base, group, limits)
            }
            RingSpec::Quotient { ring, gens } => {
                let ring = ring.build_with(limits)?;
                let ideal = Ideal::generated_by(&ring, gens)?;
                Ok(ring.quotient(&ideal)?.0)
            }
            RingSpec::Corner { ring, idempotent } => {
                let ring = ring.build_with(limits)?;
                Ok(ring.corner(*idempotent)?.0)
            }
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingSpec::parse(s)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn(n) => write!(f, "zn:{n}"),
            RingSpec::Poly { p, modulus } => {
                write!(f, "poly:p={p},mod=")?;
                write_list(f, modulus)
            }
            RingSpec::Product(parts) => {
                f.write_str("prod:(")?;
                for (i, s) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{s}")?;
                }
                f.write_str(")")
            }
            RingSpec::GroupAlgebra { base, group } => {
                write!(f, "ga:base={base},group=")?;
                write_list(f, group)
            }
            RingSpec::Quotient { ring, gens } => {
                write!(f, "quot:{ring}/gens=")?;
                write_list(f, gens)
            }
            RingSpec::Corner { ring, idempotent } => write!(f, "corner:{ring}/e={idempotent}"),
        }
    }
}

impl Serialize for RingSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{token}`")))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a non-negative integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Parse {
                pos: start,
                msg: "integer out of range".into(),
            })
    }

    fn int_list(&mut self) -> Result<Vec<usize>> {
        self.expect("[")?;
        let mut out = Vec::new();
        if self.eat("]") {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat("]") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn spec(&mut self) -> Result<RingSpec> {
        if self.eat("zn:") {
            Ok(RingSpec::Zn(self.int()?))
        } else if self.eat("poly:") {
            self.expect("p=")?;
            let p = self.int()?;
            self.expect(",")?;
            self.expect("mod=")?;
            let modulus = self.int_list()?;
            Ok(RingSpec::Poly { p, modulus })
        } else if self.eat("prod:") {
            self.expect("(")?;
            let mut parts = vec![self.spec()?];
            while self.eat(",") {
                parts.push(self.spec()?);
            }
            self.expect(")")?;
            Ok(RingSpec::Product(parts))
        } else if self.eat("ga:") {
            self.expect("base=")?;
            let base = Box::new(self.spec()?);
            self.expect(",")?;
            self.expect("group=")?;
            let group = self.int_list()?;
            Ok(RingSpec::GroupAlgebra { base, group })
        } else if self.eat("quot:") {
            let ring = Box::new(self.spec()?);
            self.expect("/")?;
            self.expect("gens=")?;
            let gens = self.int_list()?;
            Ok(RingSpec::Quotient { ring, gens })
        } else if self.eat("corner:") {
            let ring = Box::new(self.spec()?);
            self.expect("/")?;
            self.expect("e=")?;
            let idempotent = self.int()?;
            Ok(RingSpec::Corner { ring, idempotent })
        } else {
            Err(self.err("expected one of zn:, poly:, prod:, ga:, quot:, corner:"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_every_form() {
        assert_eq!(RingSpec::parse("zn:6").unwrap(), RingSpec::Zn(6));
        assert_eq!(
            RingSpec::parse("poly:p=2,mod=[0,0,1]").unwrap(),
            RingSpec::Poly {
                p: 2,
                modulus: vec![0, 0, 1]
            }
        );
        let nested = RingSpec::parse("quot:quot:zn:12/gens=[6]/gens=[3]").unwrap();
        assert_eq!(nested.to_string(), "quot:quot:zn:12/gens=[6]/gens=[3]");
        let ga = RingSpec::parse("ga:base=poly:p=2,mod=[1,1,1],group=[2,3]").unwrap();
        match &ga {
            RingSpec::GroupAlgebra { base, group } => {
                assert_eq!(
                    **base,
                    RingSpec::Poly {
                        p: 2,
                        modulus: vec![1, 1, 1]
                    }
                );
                assert_eq!(group, &vec![2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let p = RingSpec::parse("prod:( zn:2, prod:(zn:3,zn:4) )").unwrap();
        assert_eq!(p.to_string(), "prod:(zn:2,prod:(zn:3,zn:4))");
        assert_eq!(
            RingSpec::parse("corner:zn:12/e=4").unwrap().to_string(),
            "corner:zn:12/e=4"
        );
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "zn:", "zn:6x", "prod:()", "poly:p=2,mod=[1,", "ring:4", "quot:zn:6"] {
            assert!(matches!(RingSpec::parse(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn build_reports_domain_errors() {
        assert!(RingSpec::parse("zn:0").unwrap().build().is_err());
        assert!(RingSpec::parse("poly:p=4,mod=[1,1]").unwrap().build().is_err());
        assert!(RingSpec::parse("quot:zn:6/gens=[9]").unwrap().build().is_err());
    }

    fn arb_spec() -> impl Strategy<Value = RingSpec> {
        let leaf = prop_oneof![
            (1usize..50).prop_map(RingSpec::Zn),
            (
                prop::sample::select(vec![2usize, 3, 5]),
                prop::collection::vec(0usize..5, 1..4)
            )
                .prop_map(|(p, mut m)| {
                    m.push(1);
                    RingSpec::Poly { p, modulus: m }
                }),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                prop::collection::vec(inner.clone(), 1..3).prop_map(RingSpec::Product),
                (inner.clone(), prop::collection::vec(1usize..4, 1..3)).prop_map(|(b, g)| {
                    RingSpec::GroupAlgebra {
                        base: Box::new(b),
                        group: g,
                    }
                }),
                (inner.clone(), prop::collection::vec(0usize..9, 0..3)).prop_map(|(r, gens)| RingSpec::Quotient {
                    ring: Box::new(r),
                    gens
                }),
                (inner, 0usize..9).prop_map(|(r, e)| RingSpec::Corner {
                    ring: Box::new(r),
                    idempotent: e
                }),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parses_back(spec in arb_spec()) {
            let text = spec.to_string();
            prop_assert_eq!(RingSpec::parse(&text).unwrap(), spec);
        }
    }
}
