//! Fixture files: a ring header followed by labelled sections of vectors in
//! the text grammar.
//!
//! ```text
//! # comments
//! ring x,y,z; rank 2; field QQ; param t;
//! gens:        one vector per line
//! targets:     optional; presents the module as ker(R^s -> R^rank/<gens>)
//! level:       repeatable; a chain of ideals, outermost first
//! point: 1,1,1 optional rational point for the disjoint-point construction
//! ```
//!
//! Every named reproduction case ships as one embedded fixture; `load` also
//! accepts a filesystem path.

use anyhow::{anyhow, bail, Context};
use quotca_core::parse::{parse_ring_header, parse_vector};
use quotca_core::ring::RingContext;
use quotca_core::scalar::Scalar;
use quotca_core::vector::ModuleVector;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub ctx: RingContext,
    pub gens: Vec<ModuleVector>,
    pub targets: Vec<ModuleVector>,
    pub levels: Vec<Vec<ModuleVector>>,
    pub point: Option<Vec<Scalar>>,
}

pub const NAMED: &[(&str, &str)] = &[
    ("thm-main-quot28", include_str!("../../../fixtures/thm-main-quot28.qca")),
    ("kernel-xy-quot28", include_str!("../../../fixtures/kernel-xy-quot28.qca")),
    ("binomial-hilb12", include_str!("../../../fixtures/binomial-hilb12.qca")),
    ("m1-quot3-10", include_str!("../../../fixtures/m1-quot3-10.qca")),
    ("m2-quot3-11", include_str!("../../../fixtures/m2-quot3-11.qca")),
    ("beh-quot3-13", include_str!("../../../fixtures/beh-quot3-13.qca")),
    ("nested-18-a4", include_str!("../../../fixtures/nested-18-a4.qca")),
    ("family-n2", include_str!("../../../fixtures/family-n2.qca")),
    ("family-n3", include_str!("../../../fixtures/family-n3.qca")),
    ("jjks-family", include_str!("../../../fixtures/jjks-family.qca")),
    ("increase-rank-quot28", include_str!("../../../fixtures/increase-rank-quot28.qca")),
    ("add-point-quot28", include_str!("../../../fixtures/add-point-quot28.qca")),
];

pub fn named(name: &str) -> Option<&'static str> {
    NAMED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

pub fn parse_fixture(text: &str) -> anyhow::Result<Fixture> {
    enum Section {
        Gens,
        Targets,
        Level,
    }
    let mut ctx: Option<RingContext> = None;
    let mut gens: Vec<ModuleVector> = Vec::new();
    let mut targets: Vec<ModuleVector> = Vec::new();
    let mut levels: Vec<Vec<ModuleVector>> = Vec::new();
    let mut point: Option<Vec<Scalar>> = None;
    let mut section = Section::Gens;

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |msg: &str| anyhow!("fixture line {}: {msg}", lineno + 1);
        if ctx.is_none() {
            if !line.starts_with("ring ") {
                return Err(at("expected a ring header first"));
            }
            ctx = Some(parse_ring_header(line).map_err(|e| at(&e.to_string()))?);
            continue;
        }
        let c = ctx.as_ref().unwrap();
        match line {
            "gens:" => section = Section::Gens,
            "targets:" => section = Section::Targets,
            "level:" => {
                levels.push(Vec::new());
                section = Section::Level;
            }
            _ if line.starts_with("point:") => {
                let coords: Result<Vec<Scalar>, _> = line["point:".len()..]
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<i64>()
                            .map(|v| c.field.integer(v))
                            .map_err(|_| at(&format!("bad coordinate `{}`", s.trim())))
                    })
                    .collect();
                let coords = coords?;
                // the point lives in the base ring, without any parameter
                if coords.len() != c.base_vars().len() {
                    return Err(at("point arity does not match the ring"));
                }
                point = Some(coords);
            }
            _ => {
                let v = parse_vector(line, c).map_err(|e| at(&e.to_string()))?;
                match section {
                    Section::Gens => gens.push(v),
                    Section::Targets => {
                        if v.rank() != c.rank {
                            return Err(at("targets must live in the declared ambient"));
                        }
                        targets.push(v);
                    }
                    Section::Level => levels.last_mut().unwrap().push(v),
                }
            }
        }
    }
    let ctx = ctx.ok_or_else(|| anyhow!("fixture has no ring header"))?;
    if gens.is_empty() && levels.is_empty() {
        bail!("fixture declares no generators");
    }
    Ok(Fixture { ctx, gens, targets, levels, point })
}

/// Load by embedded name first, then as a filesystem path.
pub fn load(name_or_path: &str) -> anyhow::Result<Fixture> {
    if let Some(text) = named(name_or_path) {
        return parse_fixture(text);
    }
    let text = std::fs::read_to_string(name_or_path)
        .with_context(|| format!("cannot read fixture `{name_or_path}`"))?;
    parse_fixture(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_embedded_fixture_parses() {
        for (name, text) in NAMED {
            let f = parse_fixture(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert!(!f.gens.is_empty() || !f.levels.is_empty(), "{name}");
        }
    }

    #[test]
    fn sections_are_recognised() {
        let f = load("add-point-quot28").unwrap();
        assert_eq!(f.gens.len(), 8);
        assert!(f.point.is_some());
        assert_eq!(f.ctx.rank, 2);
        assert!(f.ctx.param.is_some());

        let chain = load("nested-18-a4").unwrap();
        assert_eq!(chain.levels.len(), 2);
        assert_eq!(chain.levels[0].len(), 4);
        assert_eq!(chain.levels[1].len(), 7);

        let kernel = load("kernel-xy-quot28").unwrap();
        assert_eq!(kernel.targets.len(), 2);
    }
}
