//! The reproduction registry: one named case per shipped fixture, each
//! running the computation and comparing exact integers.

use crate::fixtures::{load, Fixture};
use anyhow::{anyhow, Result};
use quotca_core::deform::{add_disjoint_point, flatness_probe, increase_rank, specialize, ParametricFamily};

use quotca_core::groebner::GroebnerBasis;
use quotca_core::modops::module_kernel;
use quotca_core::nested::{nested_tangent_dimension, NestedChain};
use quotca_core::quotient::{multiplication_table, quotient_structure};
use quotca_core::scalar::{FieldSpec, Scalar};
use quotca_core::support::support_decomposition;
use quotca_core::syzygy::{minimalize, syzygies};
use quotca_core::tangent::{graded_tangent, tangent_dimension, tnt_check, TangentReport};
use serde::Serialize;
use std::fmt::Display;
use std::time::{Duration, Instant};

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub check: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub pass: bool,
    pub checks: Vec<CheckLine>,
    pub runtime_ms: u128,
}

struct Checks(Vec<CheckLine>);

impl Checks {
    fn new() -> Self {
        Checks(Vec::new())
    }

    fn eq<T: PartialEq + Display>(&mut self, check: &str, expected: T, got: T) {
        self.0.push(CheckLine {
            check: check.to_string(),
            expected: expected.to_string(),
            got: got.to_string(),
            pass: expected == got,
        });
    }
}

pub const CASE_NAMES: &[&str] = &[
    "thm-main-quot28",
    "kernel-xy-quot28",
    "binomial-hilb12",
    "m1-quot3-10",
    "m2-quot3-11",
    "beh-quot3-13",
    "nested-18-a4",
    "family-n2",
    "family-n3",
    "jjks-family",
    "increase-rank-quot28",
    "add-point-quot28",
];

fn family_of(f: &Fixture, declared: usize) -> ParametricFamily {
    ParametricFamily::new(f.ctx.clone(), f.gens.clone(), declared)
}

fn q_samples(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| FieldSpec::Q.integer(v)).collect()
}

fn kernel_report(f: &Fixture) -> Result<(GroebnerBasis, TangentReport)> {
    let k = module_kernel(&f.targets, &f.gens, f.ctx.rank, &f.ctx);
    let rep = tangent_dimension(&k)?;
    Ok((k, rep))
}

/// Run one named case. Unknown names are an error.
pub fn run_case(name: &str) -> Result<CaseOutcome> {
    let t0 = Instant::now();
    let mut checks = Checks::new();
    match name {
        "thm-main-quot28" => {
            let f = load(name)?;
            let fam = family_of(&f, 8);
            checks.eq("flat over {0,1,2,5}", true, flatness_probe(&fam, &q_samples(&[0, 1, 2, 5])));
            let fiber = specialize(&fam, &FieldSpec::Q.integer(1));
            let rep = tangent_dimension(&fiber)?;
            checks.eq("colength", 8, rep.colength);
            checks.eq("tangent_dim", 37, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
            let confirm = tangent_dimension(&specialize(&fam, &FieldSpec::Q.integer(2)))?;
            checks.eq("tangent_dim at t=2", 37, confirm.tangent_dim);
        }
        "kernel-xy-quot28" => {
            let f = load(name)?;
            let (_, rep) = kernel_report(&f)?;
            checks.eq("rank", 2, rep.rank);
            checks.eq("colength", 8, rep.colength);
            checks.eq("tangent_dim", 39, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
        }
        "binomial-hilb12" => {
            let f = load(name)?;
            let gb = GroebnerBasis::of(&f.gens, &f.ctx);
            let rep = tangent_dimension(&gb)?;
            checks.eq("colength", 12, rep.colength);
            checks.eq("tangent_dim", 45, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
        }
        "m1-quot3-10" => {
            let f = load(name)?;
            let (_, rep) = kernel_report(&f)?;
            checks.eq("rank", 3, rep.rank);
            checks.eq("colength", 10, rep.colength);
            checks.eq("tangent_dim", 69, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
        }
        "m2-quot3-11" => {
            let f = load(name)?;
            let (_, rep) = kernel_report(&f)?;
            checks.eq("rank", 3, rep.rank);
            checks.eq("colength", 11, rep.colength);
            checks.eq("tangent_dim", 70, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
        }
        "beh-quot3-13" => {
            let f = load(name)?;
            let (_, rep) = kernel_report(&f)?;
            checks.eq("rank", 3, rep.rank);
            checks.eq("colength", 13, rep.colength);
            checks.eq("tangent_dim", 86, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
        }
        "nested-18-a4" => {
            let f = load(name)?;
            let levels: Vec<GroebnerBasis> =
                f.levels.iter().map(|g| GroebnerBasis::of(g, &f.ctx)).collect();
            let inner = levels.last().unwrap().clone();
            let rep = tangent_dimension(&inner)?;
            checks.eq("inner colength", 8, rep.colength);
            checks.eq("inner tangent_dim", 25, rep.tangent_dim);
            checks.eq("inner has_tnt", true, tnt_check(&inner)?.has_tnt);
            let chain = NestedChain::new(levels)?;
            checks.eq("nested tangent_dim", 29, nested_tangent_dimension(&chain)?);
        }
        "family-n2" => {
            let f = load(name)?;
            let gb = GroebnerBasis::of(&f.gens, &f.ctx);
            checks.eq("colength", 8, gb.colength().unwrap_or(0));
            let graded = graded_tangent(&gb)?;
            checks.eq("dim at weight -1", 4, *graded.weights.get(&-1).unwrap_or(&0));
            let deep: usize = graded.weights.iter().filter(|(&k, _)| k <= -2).map(|(_, &v)| v).sum();
            checks.eq("dim below weight -1", 0, deep);
            checks.eq("has_tnt", true, tnt_check(&gb)?.has_tnt);
            let sz = syzygies(&f.gens, f.ctx.nvars(), 1, f.ctx.field, &f.ctx.order);
            let min = minimalize(&sz, f.ctx.nvars(), f.ctx.field, &f.ctx.order);
            checks.eq("minimal syzygies (8 linear + 5 quadratic)", 13, min.syzygies.len());
            let linear = min.syzygies.iter().filter(|s| s.degree() == 1).count();
            checks.eq("linear-coefficient syzygies", 8, linear);
        }
        "family-n3" => {
            let f = load(name)?;
            let gb = GroebnerBasis::of(&f.gens, &f.ctx);
            checks.eq("colength", 26, gb.colength().unwrap_or(0));
            let tnt = tnt_check(&gb)?;
            checks.eq("dim at weight -1", 6, tnt.weight_minus_one_dim);
            let deep: usize = tnt.negative.iter().filter(|(&k, _)| k <= -2).map(|(_, &v)| v).sum();
            checks.eq("dim below weight -1", 0, deep);
            checks.eq("has_tnt", true, tnt.has_tnt);
        }
        "jjks-family" => {
            let f = load(name)?;
            let fam = family_of(&f, 24);
            checks.eq("flat over {0,1,2,5}", true, flatness_probe(&fam, &q_samples(&[0, 1, 2, 5])));
            let fiber = specialize(&fam, &FieldSpec::Q.integer(1));
            checks.eq("fiber colength", 24, fiber.colength().unwrap_or(0));
            let q = quotient_structure(&fiber)?;
            let table = multiplication_table(&q, &fiber);
            let pts = support_decomposition(&q, &table, &fiber)?;
            checks.eq("support points", 3, pts.len());
            let mut lengths: Vec<usize> = pts.iter().map(|p| p.length).collect();
            lengths.sort_unstable();
            checks.eq("local lengths", "6,8,10".to_string(), format_lengths(&lengths));
        }
        "increase-rank-quot28" => {
            let f = load(name)?;
            let fam = family_of(&f, 8);
            let fiber = specialize(&fam, &FieldSpec::Q.integer(1));
            let base = tangent_dimension(&fiber)?;
            checks.eq("base tangent_dim", 37, base.tangent_dim);
            let up = increase_rank(&fiber);
            let rep = tangent_dimension(&up)?;
            checks.eq("rank", 3, rep.rank);
            checks.eq("colength", 8, rep.colength);
            checks.eq("tangent_dim", 45, rep.tangent_dim);
        }
        "add-point-quot28" => {
            let f = load(name)?;
            let fam = family_of(&f, 8);
            let fiber = specialize(&fam, &FieldSpec::Q.integer(1));
            let base_ctx = f.ctx.strip_param();
            let point = f.point.clone().ok_or_else(|| anyhow!("fixture lacks a point"))?;
            let k = add_disjoint_point(&fiber, &point, &base_ctx)?;
            let rep = tangent_dimension(&k)?;
            checks.eq("colength", 9, rep.colength);
            checks.eq("tangent_dim", 41, rep.tangent_dim);
            checks.eq("parity_ok", false, rep.parity_ok);
        }
        other => {
            return Err(anyhow!(quotca_core::Error::UnknownCase(other.to_string())));
        }
    }
    let pass = checks.0.iter().all(|c| c.pass);
    Ok(CaseOutcome {
        name: name.to_string(),
        pass,
        checks: checks.0,
        runtime_ms: duration_ms(t0.elapsed()),
    })
}

fn format_lengths(lengths: &[usize]) -> String {
    lengths.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
}

fn duration_ms(d: Duration) -> u128 {
    d.as_millis()
}

pub fn run_all() -> Result<Vec<CaseOutcome>> {
    CASE_NAMES.iter().map(|n| run_case(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_case_reports_cleanly() {
        assert!(run_case("no-such-case").is_err());
    }

    #[test]
    fn quick_cases_pass() {
        for name in ["kernel-xy-quot28", "family-n2"] {
            let outcome = run_case(name).unwrap();
            assert!(outcome.pass, "{name}: {:?}", outcome.checks);
        }
    }
}
