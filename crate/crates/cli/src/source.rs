//! Meadow sources on the command line.

use meadow_core::construct::{build_group_algebra_meadow_with, build_m_with};
use meadow_core::{DirectedLattice, Error, Limits, Meadow, Result, RingSpec};

pub const CUSTOM: &str = "custom-lattice";
const GROUP_ALGEBRA_MEADOW: &str = "gam:";

/// Splits tokens into sources; `custom-lattice` takes the following path.
pub fn split(tokens: &[String]) -> Result<Vec<Vec<String>>> {
    let mut out = Vec::new();
    let mut it = tokens.iter();
    while let Some(t) = it.next() {
        if t == CUSTOM {
            let path = it
                .next()
                .ok_or_else(|| Error::InvalidArgument("custom-lattice needs a path".into()))?;
            out.push(vec![t.clone(), path.clone()]);
        } else {
            out.push(vec![t.clone()]);
        }
    }
    Ok(out)
}

pub fn single(tokens: &[String], limits: &Limits) -> Result<Meadow> {
    let mut sources = split(tokens)?;
    if sources.len() != 1 {
        return Err(Error::InvalidArgument(format!(
            "expected one source, got {}",
            sources.len()
        )));
    }
    load(&sources.remove(0), limits)
}

pub fn load(source: &[String], limits: &Limits) -> Result<Meadow> {
    match source {
        [kw, path] if kw == CUSTOM => custom(path, limits),
        [s] => {
            if let Some(rest) = s.strip_prefix(GROUP_ALGEBRA_MEADOW) {
                let RingSpec::GroupAlgebra { base, group } = RingSpec::parse(&format!("ga:{rest}"))? else {
                    unreachable!("ga: always parses to a group algebra")
                };
                build_group_algebra_meadow_with(&base.build_with(limits)?, &group, limits)
            } else {
                build_m_with(&RingSpec::parse(s)?.build_with(limits)?, limits)
            }
        }
        _ => Err(Error::InvalidArgument(format!("bad source: {}", source.join(" ")))),
    }
}

pub fn custom(path: &str, limits: &Limits) -> Result<Meadow> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{path}: {e}")))?;
    Ok(Meadow::from_directed_lattice(DirectedLattice::from_json_with(
        &text, limits,
    )?))
}
