use std::fmt::Write;
use std::sync::Arc;

use serde::Serialize;

use meadow_core::construct::meadow_product_with;
use meadow_core::ideals::enumerate_ideals_with;
use meadow_core::{
    decompose_local, maximal_ideals, CheckReport, Error, FiniteRing, Limits, Meadow, Origin, Result, RingSpec,
};

use crate::args::{Cli, Flags, Verb};
use crate::source;
use crate::Outcome;

pub fn run(cli: &Cli) -> Result<Outcome> {
    let f = &cli.flags;
    let limits = f.limits();
    match &cli.verb {
        Verb::RingInfo { spec } => ring_info(&ring(spec, &limits)?, f, &limits),
        Verb::Ideals { spec } => ideals(&ring(spec, &limits)?, f, &limits),
        Verb::MeadowBuild { source } => describe(&source::single(source, &limits)?, f),
        Verb::MeadowCheck { source } => check(&source::single(source, &limits)?, f, &limits),
        Verb::MeadowAtoms { source } => atoms(&source::single(source, &limits)?, f),
        Verb::MeadowDecompose { spec } => decompose(&ring(spec, &limits)?, &limits),
        Verb::MeadowProduct { sources } => {
            let parts = source::split(sources)?;
            if parts.len() != 2 {
                return Err(Error::InvalidArgument(format!(
                    "expected two sources, got {}",
                    parts.len()
                )));
            }
            let p = source::load(&parts[0], &limits)?;
            let q = source::load(&parts[1], &limits)?;
            describe(&meadow_product_with(&p, &q, &limits)?, f)
        }
        Verb::LatticeDot { source } => lattice_dot(&source::single(source, &limits)?),
        Verb::CustomLattice { path } => describe(&source::custom(path, &limits)?, f),
    }
}

fn ring(spec: &str, limits: &Limits) -> Result<Arc<FiniteRing>> {
    RingSpec::parse(spec)?.build_with(limits)
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome {
        text,
        verification_failed: false,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn rendered(r: &FiniteRing, xs: &[usize]) -> Vec<String> {
    xs.iter().map(|&x| r.fmt_element(x)).collect()
}

#[derive(Serialize)]
struct RingInfo {
    schema: u32,
    ring: String,
    name: String,
    order: usize,
    characteristic: usize,
    units: Vec<String>,
    idempotents: Vec<String>,
    primitive_idempotents: Vec<String>,
    maximal_ideals: Vec<String>,
    local: bool,
    axioms: CheckReport,
}

fn ring_info(r: &Arc<FiniteRing>, f: &Flags, limits: &Limits) -> Result<Outcome> {
    let maximal = maximal_ideals(r)?;
    let info = RingInfo {
        schema: 1,
        ring: r.descriptor(),
        name: r.name(),
        order: r.order(),
        characteristic: r.characteristic(),
        units: rendered(r, &r.units()),
        idempotents: rendered(r, &r.idempotents()),
        primitive_idempotents: rendered(r, &r.primitive_idempotents()),
        maximal_ideals: maximal.iter().map(|i| i.label()).collect(),
        local: maximal.len() == 1,
        axioms: r.check_axioms(limits),
    };
    let failed = !info.axioms.passed();
    let text = if f.json {
        json(&info)
    } else {
        let mut s = String::new();
        let rows = [
            ("ring", info.name.clone()),
            ("spec", info.ring.clone()),
            ("order", info.order.to_string()),
            ("characteristic", info.characteristic.to_string()),
            ("units", info.units.join(", ")),
            ("idempotents", info.idempotents.join(", ")),
            ("primitive idempotents", info.primitive_idempotents.join(", ")),
            ("maximal ideals", info.maximal_ideals.join(", ")),
            ("local", yes_no(info.local).to_string()),
        ];
        for (k, v) in rows {
            writeln!(s, "{k:<22}{v}").unwrap();
        }
        write!(s, "{}", info.axioms).unwrap();
        s
    };
    Ok(Outcome {
        text,
        verification_failed: failed,
    })
}

#[derive(Serialize)]
struct IdealRow {
    label: String,
    size: usize,
    members: Vec<String>,
    maximal: bool,
}

#[derive(Serialize)]
struct IdealList {
    schema: u32,
    ring: String,
    ideals: Vec<IdealRow>,
}

fn ideals(r: &Arc<FiniteRing>, f: &Flags, limits: &Limits) -> Result<Outcome> {
    let maximal = maximal_ideals(r)?;
    let list = IdealList {
        schema: 1,
        ring: r.descriptor(),
        ideals: enumerate_ideals_with(r, limits)?
            .iter()
            .map(|i| IdealRow {
                label: i.label(),
                size: i.len(),
                members: rendered(r, i.members()),
                maximal: maximal.contains(i),
            })
            .collect(),
    };
    if f.json {
        return ok(json(&list));
    }
    let mut s = format!("{} ideals of {}\n", list.ideals.len(), r.name());
    for row in &list.ideals {
        let mark = if row.maximal { "  maximal" } else { "" };
        writeln!(s, "  {:<16} {:>5}{mark}", row.label, row.size).unwrap();
    }
    ok(s)
}

fn title(m: &Meadow) -> String {
    match m.origin() {
        Origin::Ring { ring, .. } => format!("M({})", ring.name()),
        Origin::GroupAlgebra { base, group, .. } => {
            let g: Vec<String> = group.iter().map(|n| format!("Z_{n}")).collect();
            format!("{}[{}] subgroup meadow", base.name(), g.join("x"))
        }
        Origin::Product(..) => "product meadow".to_string(),
        Origin::Custom => "custom lattice".to_string(),
    }
}

fn describe(m: &Meadow, f: &Flags) -> Result<Outcome> {
    if f.dot {
        return ok(m.to_dot());
    }
    if f.json {
        return ok(json(&m.dump()));
    }
    let mut s = String::new();
    writeln!(s, "{}", title(m)).unwrap();
    writeln!(s, "carrier   {} elements on {} vertices", m.size(), m.vertex_count()).unwrap();
    writeln!(s, "common    {}", yes_no(m.is_common())).unwrap();
    writeln!(s, "local     {}", yes_no(m.is_local()?)).unwrap();
    let width = (0..m.vertex_count())
        .map(|v| m.vertex_label(v).len())
        .max()
        .unwrap_or(0)
        .max(6);
    writeln!(s, "{:<width$}  {:>5}  ring", "vertex", "order").unwrap();
    for v in m.lattice().top_down_order() {
        writeln!(
            s,
            "{:<width$}  {:>5}  {}",
            m.vertex_label(v),
            m.ring_at(v).order(),
            m.vertex_ring_label(v)
        )
        .unwrap();
    }
    ok(s)
}

#[derive(Serialize)]
struct CheckOutput<'a> {
    schema: u32,
    meadow: String,
    passed: bool,
    reports: &'a [CheckReport],
}

fn check(m: &Meadow, f: &Flags, limits: &Limits) -> Result<Outcome> {
    let reports = m.check_all(limits);
    let passed = reports.iter().all(CheckReport::passed);
    let text = if f.json {
        json(&CheckOutput {
            schema: 1,
            meadow: title(m),
            passed,
            reports: &reports,
        })
    } else {
        let mut s = String::new();
        for r in &reports {
            write!(s, "{r}").unwrap();
        }
        for law in reports.iter().flat_map(CheckReport::failures) {
            if let Some(cx) = &law.counterexample {
                writeln!(s, "counterexample {}: {cx}", law.name).unwrap();
            }
        }
        writeln!(s, "{}", if passed { "all laws hold" } else { "verification failed" }).unwrap();
        s
    };
    Ok(Outcome {
        text,
        verification_failed: !passed,
    })
}

#[derive(Serialize)]
struct AtomReport {
    schema: u32,
    meadow: String,
    atoms: Vec<String>,
    local: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    maximal_ideals: Option<Vec<String>>,
}

fn atoms(m: &Meadow, f: &Flags) -> Result<Outcome> {
    let report = AtomReport {
        schema: 1,
        meadow: title(m),
        atoms: m
            .meadow_atoms()
            .iter()
            .map(|&v| m.vertex_label(v).to_string())
            .collect(),
        local: m.is_local()?,
        maximal_ideals: match m.base_ring() {
            Some(r) => Some(maximal_ideals(r)?.iter().map(|i| i.label()).collect()),
            None => None,
        },
    };
    if f.json {
        return ok(json(&report));
    }
    let mut s = format!("{}\natoms     {}\n", report.meadow, report.atoms.join(", "));
    if let Some(mi) = &report.maximal_ideals {
        writeln!(s, "maximal   {}", mi.join(", ")).unwrap();
    }
    writeln!(s, "local     {}", yes_no(report.local)).unwrap();
    ok(s)
}

fn decompose(r: &Arc<FiniteRing>, limits: &Limits) -> Result<Outcome> {
    let m = meadow_core::construct::build_m_with(r, limits)?;
    let d = decompose_local(&m)?;
    let report = d.report();
    let failed = !report.iso.verified;
    Ok(Outcome {
        text: json(&report),
        verification_failed: failed,
    })
}

fn lattice_dot(m: &Meadow) -> Result<Outcome> {
    let labels: Vec<String> = (0..m.vertex_count())
        .map(|v| {
            if v == m.bottom() {
                "{a}".to_string()
            } else {
                m.vertex_label(v).to_string()
            }
        })
        .collect();
    ok(m.lattice().to_dot(&labels))
}
