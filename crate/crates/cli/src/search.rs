//! The counterexample search: enumerate monomial submodule charts, deform
//! along admissible socle data with random coefficients, specialise, and
//! test the parity of the tangent dimension.
//!
//! Output is deterministic for a fixed seed and configuration regardless of
//! the worker count: charts are processed in enumeration order, candidates in
//! stream order, and every random draw is seeded by (master seed, chart,
//! candidate, draw index).

use anyhow::{bail, Result};
use quotca_core::deform::{
    admissible_pairs, build_family, specialize, DeformationCandidate,
};
use quotca_core::enumerate::{for_each_submodule, Staircase};
use quotca_core::groebner::GroebnerBasis;
use quotca_core::monomial::MonomialTerm;
use quotca_core::parse::{term_to_string, vector_to_string};
use quotca_core::quotient::{quotient_structure, QuotientStructure};
use quotca_core::ring::RingContext;
use quotca_core::scalar::{FieldSpec, Scalar};
use quotca_core::tangent::{tangent_dimension, tangent_dimension_of_gens};
use quotca_core::vector::ModuleVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use std::io::Write;

/// Shipped default seed for reproducible runs.
pub const DEFAULT_SEED: u64 = 20250810;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub rank: usize,
    pub colength: usize,
    pub field: FieldSpec,
    pub seed: u64,
    pub max_b: usize,
    pub max_s: usize,
    pub max_candidates: usize,
    pub strongly_stable: bool,
    pub workers: usize,
    /// Stop after this many counterexamples; 0 runs every chart.
    pub max_counterexamples: usize,
    pub confirm_qq: bool,
}

impl SearchConfig {
    pub fn new(rank: usize, colength: usize) -> Self {
        SearchConfig {
            rank,
            colength,
            field: FieldSpec::Q,
            seed: DEFAULT_SEED,
            max_b: 4,
            max_s: 3,
            max_candidates: 200,
            strongly_stable: false,
            workers: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            max_counterexamples: 0,
            confirm_qq: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank == 0 || self.colength == 0 {
            bail!("rank and colength must be positive");
        }
        if self.max_b == 0 || self.max_s == 0 {
            bail!("candidate caps must be positive");
        }
        if matches!(self.field, FieldSpec::Fp(_)) && !self.confirm_qq {
            bail!("prime-field searches must confirm counterexamples over QQ (--confirm-qq)");
        }
        Ok(())
    }
}

/// One evaluated candidate. Gamma entries are the raw integer draws, row per
/// chosen generator, column per chosen socle element.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CandidateRecord {
    pub chart: usize,
    pub candidate: usize,
    pub seed: u64,
    pub rank: usize,
    pub declared_colength: usize,
    pub composition: Vec<usize>,
    pub b: Vec<String>,
    pub s: Vec<String>,
    pub gamma: Vec<Vec<i64>>,
    pub generators: Vec<String>,
    pub colength_t1: usize,
    pub colength_t2: usize,
    pub tangent_dim_t1: usize,
    pub tangent_dim_t2: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_draw_dim: Option<usize>,
    pub parity_expected: u8,
    pub parity_ok: bool,
    pub counterexample: bool,
    pub non_generic: bool,
}

pub struct SearchOutcome {
    pub records: Vec<CandidateRecord>,
    pub total_charts: usize,
    pub charts_processed: usize,
    pub counterexamples: usize,
}

fn chart_context(rank: usize, field: FieldSpec) -> RingContext {
    let mut ctx = RingContext::new(&["x", "y", "z"], rank, field);
    ctx.rank = rank;
    ctx
}

fn chart_generators(tuple: &[Staircase], ctx: &RingContext) -> Vec<ModuleVector> {
    let mut gens = Vec::new();
    for (comp, s) in tuple.iter().enumerate() {
        for m in s.generators() {
            gens.push(ModuleVector::monomial_term(
                ctx.field.one(),
                MonomialTerm::new(m, comp),
                ctx.rank,
            ));
        }
    }
    gens
}

fn draw_gamma(seed: u64, chart: usize, cand: usize, draw: u64, nb: usize, ns: usize) -> Vec<Vec<i64>> {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&(chart as u64).to_le_bytes());
    bytes[16..24].copy_from_slice(&(cand as u64).to_le_bytes());
    bytes[24..].copy_from_slice(&draw.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(bytes);
    const POOL: [i64; 6] = [-3, -2, -1, 1, 2, 3];
    (0..nb)
        .map(|_| (0..ns).map(|_| POOL[rng.gen_range(0..POOL.len())]).collect())
        .collect()
}

struct Evaluation {
    colength_t1: usize,
    colength_t2: usize,
    dim_t1: usize,
    dim_t2: usize,
    generators: Vec<String>,
    parity_violated: bool,
}

fn evaluate_draw(
    base: &GroebnerBasis,
    q: &QuotientStructure,
    b_terms: &[MonomialTerm],
    s_terms: &[MonomialTerm],
    gamma: &[Vec<i64>],
    ctx: &RingContext,
) -> Result<Evaluation> {
    let field = ctx.field;
    let gamma_scalars: Vec<Vec<Scalar>> = gamma
        .iter()
        .map(|row| row.iter().map(|&v| field.integer(v)).collect())
        .collect();
    let cand = DeformationCandidate::new(
        base.clone(),
        b_terms.to_vec(),
        s_terms.to_vec(),
        gamma_scalars,
        &q.socle,
    )?;
    let fam = build_family(&cand, ctx)?;
    let generators: Vec<String> =
        fam.generators.iter().map(|g| vector_to_string(g, &fam.ctx)).collect();
    let base_ctx = fam.ctx.strip_param();
    let fiber_gens = |v: i64| -> Vec<ModuleVector> {
        fam.generators
            .iter()
            .map(|g| g.substitute_last_var(&field.integer(v), &base_ctx.order))
            .collect()
    };
    let gens1 = fiber_gens(1);
    let gens2 = fiber_gens(2);
    // unknowns stay pinned to the family generator list; the dimension is
    // independent of that choice
    let rep1 = tangent_dimension_of_gens(&gens1, &base_ctx)?;
    let rep2 = tangent_dimension_of_gens(&gens2, &base_ctx)?;
    let (colength_t1, colength_t2) = (rep1.colength, rep2.colength);
    let d = fam.declared_colength;
    assert_eq!(colength_t1, d, "socle-supported families are flat");
    assert_eq!(colength_t2, d, "socle-supported families are flat");
    Ok(Evaluation {
        colength_t1,
        colength_t2,
        dim_t1: rep1.tangent_dim,
        dim_t2: rep2.tangent_dim,
        generators,
        parity_violated: !rep1.parity_ok,
    })
}

/// Re-evaluate a candidate over the rationals (for prime-field runs).
fn qq_dimension(
    tuple: &[Staircase],
    b_idx: &[usize],
    s_idx: &[usize],
    gamma: &[Vec<i64>],
    rank: usize,
) -> Result<usize> {
    let ctx = chart_context(rank, FieldSpec::Q);
    let gens = chart_generators(tuple, &ctx);
    let base = GroebnerBasis::of(&gens, &ctx);
    let q = quotient_structure(&base)?;
    let lead_terms: Vec<MonomialTerm> =
        base.elems.iter().map(|g| g.lead().unwrap().1.clone()).collect();
    let b_terms: Vec<MonomialTerm> = b_idx.iter().map(|&i| lead_terms[i].clone()).collect();
    let s_terms: Vec<MonomialTerm> = s_idx.iter().map(|&i| q.socle[i].clone()).collect();
    let ev = evaluate_draw(&base, &q, &b_terms, &s_terms, gamma, &ctx)?;
    Ok(ev.dim_t1)
}

fn process_chart(
    config: &SearchConfig,
    chart_idx: usize,
    tuple: &[Staircase],
) -> Result<Vec<CandidateRecord>> {
    let ctx = chart_context(config.rank, config.field);
    let gens = chart_generators(tuple, &ctx);
    let base = GroebnerBasis::of(&gens, &ctx);
    let q = quotient_structure(&base)?;
    let lead_terms: Vec<MonomialTerm> =
        base.elems.iter().map(|g| g.lead().unwrap().1.clone()).collect();
    let composition: Vec<usize> = tuple.iter().map(|s| s.colength()).collect();
    let d = config.colength;
    let parity_expected = ((config.rank * d) % 2) as u8;

    // collect admissible pairs up to the per-chart cap
    let mut pairs: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
    admissible_pairs(&base, &q, config.max_b, config.max_s, &mut |b, s| {
        pairs.push((b.to_vec(), s.to_vec()));
        pairs.len() < config.max_candidates
    });

    let mut records = Vec::with_capacity(pairs.len());
    for (cand_idx, (b_idx, s_idx)) in pairs.iter().enumerate() {
        let b_terms: Vec<MonomialTerm> = b_idx.iter().map(|&i| lead_terms[i].clone()).collect();
        let s_terms: Vec<MonomialTerm> = s_idx.iter().map(|&i| q.socle[i].clone()).collect();
        let gamma = draw_gamma(config.seed, chart_idx, cand_idx, 0, b_terms.len(), s_terms.len());
        let ev = evaluate_draw(&base, &q, &b_terms, &s_terms, &gamma, &ctx)?;

        let mut counterexample = false;
        let mut non_generic = false;
        let mut second_draw_dim = None;

        if ev.dim_t1 != ev.dim_t2 {
            non_generic = true;
        } else if ev.parity_violated {
            // confirm on an independent draw before reporting
            let gamma2 =
                draw_gamma(config.seed, chart_idx, cand_idx, 1, b_terms.len(), s_terms.len());
            let ev2 = evaluate_draw(&base, &q, &b_terms, &s_terms, &gamma2, &ctx)?;
            second_draw_dim = Some(ev2.dim_t1);
            if ev2.parity_violated && ev2.dim_t1 == ev.dim_t1 && ev2.dim_t2 == ev2.dim_t1 {
                counterexample = true;
            } else {
                non_generic = true;
            }
        }

        if counterexample && matches!(config.field, FieldSpec::Fp(_)) && config.confirm_qq {
            let qq_dim = qq_dimension(tuple, b_idx, s_idx, &gamma, config.rank)?;
            if qq_dim != ev.dim_t1 {
                counterexample = false;
                non_generic = true;
            }
        }

        records.push(CandidateRecord {
            chart: chart_idx,
            candidate: cand_idx,
            seed: config.seed,
            rank: config.rank,
            declared_colength: d,
            composition: composition.clone(),
            b: b_terms.iter().map(|t| term_to_string(t, &ctx)).collect(),
            s: s_terms.iter().map(|t| term_to_string(t, &ctx)).collect(),
            gamma,
            generators: ev.generators,
            colength_t1: ev.colength_t1,
            colength_t2: ev.colength_t2,
            tangent_dim_t1: ev.dim_t1,
            tangent_dim_t2: ev.dim_t2,
            second_draw_dim,
            parity_expected,
            parity_ok: !ev.parity_violated,
            counterexample,
            non_generic,
        });
    }
    Ok(records)
}

/// Run the search. Records come back sorted by (chart, candidate); with a
/// counterexample quota the run stops at the end of the first chart filling
/// it, independently of the worker count.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let mut charts: Vec<Vec<Staircase>> = Vec::new();
    for_each_submodule(3, config.rank, config.colength, &mut |tuple| {
        if !config.strongly_stable || tuple.iter().all(|s| s.is_strongly_stable()) {
            charts.push(tuple.to_vec());
        }
        true
    });
    let total_charts = charts.len();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .expect("worker pool");

    let mut records: Vec<CandidateRecord> = Vec::new();
    let mut counterexamples = 0usize;
    let mut charts_processed = 0usize;
    let chunk_size = (config.workers.max(1) * 4).max(8);
    'outer: for chunk in charts.chunks(chunk_size) {
        let base_idx = charts_processed;
        let outs: Vec<Result<Vec<CandidateRecord>>> = pool.install(|| {
            chunk
                .par_iter()
                .enumerate()
                .map(|(off, tuple)| process_chart(config, base_idx + off, tuple))
                .collect()
        });
        for out in outs {
            let out = out?;
            charts_processed += 1;
            counterexamples += out.iter().filter(|r| r.counterexample).count();
            records.extend(out);
            if config.max_counterexamples > 0 && counterexamples >= config.max_counterexamples {
                break 'outer;
            }
        }
    }
    Ok(SearchOutcome { records, total_charts, charts_processed, counterexamples })
}

/// One JSON object per record.
pub fn write_jsonl(records: &[CandidateRecord], mut out: impl Write) -> Result<()> {
    for r in records {
        serde_json::to_writer(&mut out, r)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// Compact per-candidate summary.
pub fn write_csv_summary(records: &[CandidateRecord], out: impl Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "chart",
        "candidate",
        "composition",
        "b_size",
        "s_size",
        "colength",
        "tangent_dim",
        "parity_ok",
        "counterexample",
        "non_generic",
    ])?;
    for r in records {
        w.write_record([
            r.chart.to_string(),
            r.candidate.to_string(),
            r.composition.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("+"),
            r.b.len().to_string(),
            r.s.len().to_string(),
            r.colength_t1.to_string(),
            r.tangent_dim_t1.to_string(),
            r.parity_ok.to_string(),
            r.counterexample.to_string(),
            r.non_generic.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Re-verify a record from its own serialised generator list: parse, build
/// the family, specialise at t = 1 and recompute the tangent dimension.
pub fn reverify_record(record: &CandidateRecord) -> Result<bool> {
    let base = chart_context(record.rank, FieldSpec::Q);
    let ctx = base.with_param("t");
    let gens: Result<Vec<ModuleVector>, _> = record
        .generators
        .iter()
        .map(|s| quotca_core::parse::parse_vector(s, &ctx))
        .collect();
    let fam = quotca_core::deform::ParametricFamily::new(
        ctx,
        gens?,
        record.declared_colength,
    );
    let fiber = specialize(&fam, &FieldSpec::Q.integer(1));
    let rep = tangent_dimension(&fiber)?;
    Ok(rep.colength == record.colength_t1 && rep.tangent_dim == record.tangent_dim_t1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_across_worker_counts() {
        let mut cfg = SearchConfig::new(1, 4);
        cfg.max_candidates = 3;
        cfg.max_b = 2;
        cfg.max_s = 2;
        cfg.workers = 1;
        let one = run_search(&cfg).unwrap();
        cfg.workers = 2;
        let two = run_search(&cfg).unwrap();
        assert_eq!(one.records, two.records);
        assert_eq!(one.total_charts, 13);
    }

    #[test]
    fn prime_field_requires_confirmation() {
        let mut cfg = SearchConfig::new(1, 3);
        cfg.field = FieldSpec::Fp(1_000_003);
        assert!(cfg.validate().is_err());
        cfg.confirm_qq = true;
        assert!(cfg.validate().is_ok());
    }

    #[test]
    fn small_exhaustive_run_finds_no_counterexample() {
        // parity holds for every point at these sizes
        let mut cfg = SearchConfig::new(1, 4);
        cfg.max_candidates = 10;
        let out = run_search(&cfg).unwrap();
        assert_eq!(out.counterexamples, 0);
        assert!(out.records.iter().all(|r| !r.counterexample));
        assert!(!out.records.is_empty());
        for r in &out.records {
            assert_eq!(r.colength_t1, 4);
            assert_eq!(r.colength_t2, 4);
        }
    }

    #[test]
    fn records_reverify_from_their_generators() {
        let mut cfg = SearchConfig::new(1, 4);
        cfg.max_candidates = 2;
        let out = run_search(&cfg).unwrap();
        for r in out.records.iter().take(5) {
            assert!(reverify_record(r).unwrap());
        }
    }
}
