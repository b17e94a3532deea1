//! Command-line interface: tangent computations, enumeration, family and
//! support inspection, the deformation search, and the reproduction table.
//!
//! Exit codes: 0 on success, 1 on an assertion or reproduction failure,
//! 2 on usage errors (including unreadable or malformed fixtures).

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand};
use quotca::fixtures::{load, Fixture};
use quotca::repro;
use quotca::search::{self, SearchConfig};
use quotca_core::deform::{specialize, ParametricFamily};
use quotca_core::enumerate::{for_each_staircase, for_each_submodule};
use quotca_core::groebner::GroebnerBasis;
use quotca_core::modops::module_kernel;
use quotca_core::monomial::MonomialTerm;
use quotca_core::nested::{nested_tangent_dimension, NestedChain};
use quotca_core::parse::{term_to_string, vector_to_string};
use quotca_core::quotient::{multiplication_table, quotient_structure};
use quotca_core::ring::RingContext;
use quotca_core::scalar::FieldSpec;
use quotca_core::support::support_decomposition;
use quotca_core::tangent::{graded_tangent, tangent_dimension, tnt_check};
use quotca_core::vector::ModuleVector;
use serde_json::json;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "quotca", version, about = "Exact tangent-space computations on Quot schemes and nested Hilbert schemes of points")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tangent dimension and parity at the module of a fixture.
    Tangent(FixtureArgs),
    /// Weight-graded tangent decomposition at a homogeneous point.
    Graded(FixtureArgs),
    /// Trivial-negative-tangents verdict at a homogeneous fat point.
    Tnt(FixtureArgs),
    /// Tangent dimension of a chain fixture (level: sections).
    NestedTangent(FixtureArgs),
    /// Enumerate staircases or monomial submodules of a given colength.
    Enumerate(EnumerateArgs),
    /// Socle deformation search for parity counterexamples.
    Search(SearchArgs),
    /// Specialise a parametric family and probe fiber colengths.
    Family(FamilyArgs),
    /// Support decomposition of a finite quotient.
    Support(SupportArgs),
    /// Run named reproduction cases and print a pass/fail table.
    Repro(ReproArgs),
}

#[derive(Args)]
struct FixtureArgs {
    /// Embedded fixture name or path to a fixture file.
    fixture: String,
    /// Specialise a parametric fixture at this value first.
    #[arg(long)]
    at: Option<i64>,
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long, default_value_t = 3)]
    nvars: usize,
    #[arg(long)]
    colength: usize,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// Keep only componentwise strongly stable tuples.
    #[arg(long)]
    strongly_stable: bool,
    /// Print only the total count.
    #[arg(long)]
    count_only: bool,
    /// Emit each item as a JSON array of generator strings.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    rank: usize,
    #[arg(long)]
    colength: usize,
    #[arg(long, default_value_t = search::DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_b: usize,
    #[arg(long, default_value_t = 3)]
    max_s: usize,
    #[arg(long, default_value_t = 200)]
    max_candidates: usize,
    #[arg(long)]
    strongly_stable: bool,
    /// Worker count; defaults to QUOTCA_WORKERS or the available parallelism.
    #[arg(long)]
    workers: Option<usize>,
    /// Coefficient field: QQ or fp:<prime>.
    #[arg(long, default_value = "QQ")]
    field: String,
    /// Re-verify prime-field counterexamples over the rationals.
    #[arg(long)]
    confirm_qq: bool,
    /// Stop after this many counterexamples (0 = run every chart).
    #[arg(long, default_value_t = 0)]
    max_counterexamples: usize,
    /// Write one JSON record per candidate to this path.
    #[arg(long)]
    jsonl: Option<std::path::PathBuf>,
    /// Write the CSV summary to this path.
    #[arg(long)]
    csv: Option<std::path::PathBuf>,
}

#[derive(Args)]
struct FamilyArgs {
    fixture: String,
    /// Parameter samples for the flatness probe.
    #[arg(long, default_value = "0,1,2,5")]
    samples: String,
    /// Print the fiber at this parameter value instead of probing.
    #[arg(long)]
    at: Option<i64>,
    /// Declared fiber colength; defaults to the colength at zero.
    #[arg(long)]
    declared: Option<usize>,
}

#[derive(Args)]
struct SupportArgs {
    fixture: String,
    /// Specialise a parametric fixture at this value first.
    #[arg(long)]
    at: Option<i64>,
}

#[derive(Args)]
struct ReproArgs {
    /// Case name; use --all for the whole registry.
    case: Option<String>,
    #[arg(long)]
    all: bool,
    /// Emit machine-readable JSON instead of the table.
    #[arg(long)]
    json: bool,
}

fn module_of(fixture: &Fixture, at: Option<i64>) -> Result<GroebnerBasis> {
    if !fixture.levels.is_empty() {
        return Err(anyhow!("chain fixture: use nested-tangent"));
    }
    if fixture.ctx.param.is_some() {
        let fam = family_from(fixture, None)?;
        let c = at.ok_or_else(|| anyhow!("parametric fixture: pass --at <value>"))?;
        return Ok(specialize(&fam, &fam.ctx.field.integer(c)));
    }
    if fixture.targets.is_empty() {
        Ok(GroebnerBasis::of(&fixture.gens, &fixture.ctx))
    } else {
        Ok(module_kernel(&fixture.targets, &fixture.gens, fixture.ctx.rank, &fixture.ctx))
    }
}

fn cmd_tangent(args: &FixtureArgs, graded: bool) -> Result<()> {
    let fixture = load(&args.fixture)?;
    let gb = module_of(&fixture, args.at)?;
    let mut rep = tangent_dimension(&gb)?;
    if graded {
        let g = graded_tangent(&gb)?;
        rep.graded = Some(g.weights);
    }
    println!("{}", serde_json::to_string(&rep)?);
    Ok(())
}

fn cmd_tnt(args: &FixtureArgs) -> Result<()> {
    let fixture = load(&args.fixture)?;
    let gb = module_of(&fixture, args.at)?;
    let rep = tnt_check(&gb)?;
    println!("{}", serde_json::to_string(&rep)?);
    Ok(())
}

fn cmd_nested(args: &FixtureArgs) -> Result<()> {
    let fixture = load(&args.fixture)?;
    if fixture.levels.is_empty() {
        return Err(anyhow!("fixture has no level: sections"));
    }
    let levels: Vec<GroebnerBasis> =
        fixture.levels.iter().map(|g| GroebnerBasis::of(g, &fixture.ctx)).collect();
    let colengths: Vec<usize> =
        levels.iter().map(|l| l.colength().unwrap_or(usize::MAX)).collect();
    let chain = NestedChain::new(levels)?;
    let dim = nested_tangent_dimension(&chain)?;
    println!(
        "{}",
        json!({ "levels": colengths, "nested_tangent_dim": dim })
    );
    Ok(())
}

fn cmd_enumerate(args: &EnumerateArgs) -> Result<()> {
    let names: Vec<String> = match args.nvars {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        n => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ctx = RingContext::new(&refs, args.rank, FieldSpec::Q);
    let mut count = 0usize;
    let mut emit = |gens: Vec<String>| {
        count += 1;
        if !args.count_only {
            if args.json {
                println!("{}", serde_json::to_string(&gens).unwrap());
            } else {
                println!("{}", gens.join(", "));
            }
        }
    };
    if args.rank == 1 {
        for_each_staircase(args.nvars, args.colength, &mut |s| {
            if !args.strongly_stable || s.is_strongly_stable() {
                let gens = s
                    .generators()
                    .into_iter()
                    .map(|m| term_to_string(&MonomialTerm::new(m, 0), &ctx))
                    .collect();
                emit(gens);
            }
            true
        });
    } else {
        for_each_submodule(args.nvars, args.rank, args.colength, &mut |tuple| {
            if !args.strongly_stable || tuple.iter().all(|s| s.is_strongly_stable()) {
                let mut gens = Vec::new();
                for (comp, s) in tuple.iter().enumerate() {
                    for m in s.generators() {
                        gens.push(term_to_string(&MonomialTerm::new(m, comp), &ctx));
                    }
                }
                emit(gens);
            }
            true
        });
    }
    if args.count_only {
        println!("{count}");
    }
    Ok(())
}

fn parse_field(text: &str) -> Result<FieldSpec> {
    if text == "QQ" {
        Ok(FieldSpec::Q)
    } else if let Some(p) = text.strip_prefix("fp:") {
        Ok(FieldSpec::Fp(p.parse()?))
    } else {
        Err(anyhow!("unknown field `{text}` (use QQ or fp:<prime>)"))
    }
}

fn cmd_search(args: &SearchArgs) -> Result<()> {
    let mut config = SearchConfig::new(args.rank, args.colength);
    config.seed = args.seed;
    config.max_b = args.max_b;
    config.max_s = args.max_s;
    config.max_candidates = args.max_candidates;
    config.strongly_stable = args.strongly_stable;
    config.field = parse_field(&args.field)?;
    config.confirm_qq = args.confirm_qq;
    config.max_counterexamples = args.max_counterexamples;
    if let Some(w) = args.workers {
        config.workers = w;
    } else if let Ok(w) = std::env::var("QUOTCA_WORKERS") {
        config.workers = w.parse()?;
    }
    let outcome = search::run_search(&config)?;
    if let Some(path) = &args.jsonl {
        search::write_jsonl(&outcome.records, std::fs::File::create(path)?)?;
    }
    if let Some(path) = &args.csv {
        search::write_csv_summary(&outcome.records, std::fs::File::create(path)?)?;
    }
    for r in outcome.records.iter().filter(|r| r.counterexample) {
        println!(
            "COUNTEREXAMPLE chart {} candidate {}: rank {} colength {} tangent_dim {}",
            r.chart, r.candidate, r.rank, r.colength_t1, r.tangent_dim_t1
        );
    }
    eprintln!(
        "processed {}/{} charts, {} candidates, {} counterexamples",
        outcome.charts_processed,
        outcome.total_charts,
        outcome.records.len(),
        outcome.counterexamples
    );
    Ok(())
}

fn family_from(fixture: &Fixture, declared: Option<usize>) -> Result<ParametricFamily> {
    if fixture.ctx.param.is_none() {
        return Err(anyhow!("fixture declares no parameter"));
    }
    let declared = match declared {
        Some(d) => d,
        None => {
            let zero_ctx = fixture.ctx.strip_param();
            let gens: Vec<ModuleVector> = fixture
                .gens
                .iter()
                .map(|g| g.substitute_last_var(&fixture.ctx.field.zero(), &zero_ctx.order))
                .collect();
            GroebnerBasis::of(&gens, &zero_ctx)
                .colength()
                .ok_or_else(|| anyhow!("fiber at zero has infinite colength"))?
        }
    };
    Ok(ParametricFamily::new(fixture.ctx.clone(), fixture.gens.clone(), declared))
}

fn cmd_family(args: &FamilyArgs) -> Result<()> {
    let fixture = load(&args.fixture)?;
    let fam = family_from(&fixture, args.declared)?;
    let base_ctx = fam.ctx.strip_param();
    if let Some(c) = args.at {
        let fiber = specialize(&fam, &fam.ctx.field.integer(c));
        for g in &fiber.elems {
            println!("{}", vector_to_string(g, &base_ctx));
        }
        return Ok(());
    }
    let samples: Vec<i64> = args
        .samples
        .split(',')
        .map(|s| s.trim().parse::<i64>())
        .collect::<Result<_, _>>()?;
    let mut fibers = Vec::new();
    let mut flat = true;
    for &c in &samples {
        let fiber = specialize(&fam, &fam.ctx.field.integer(c));
        let d = fiber.colength();
        flat &= d == Some(fam.declared_colength);
        fibers.push(json!({ "t": c, "colength": d }));
    }
    println!(
        "{}",
        json!({ "declared_colength": fam.declared_colength, "fibers": fibers, "flat": flat })
    );
    Ok(())
}

fn cmd_support(args: &SupportArgs) -> Result<()> {
    let fixture = load(&args.fixture)?;
    let gb = if fixture.ctx.param.is_some() {
        let fam = family_from(&fixture, None)?;
        let c = args.at.ok_or_else(|| anyhow!("parametric fixture: pass --at"))?;
        specialize(&fam, &fam.ctx.field.integer(c))
    } else {
        module_of(&fixture, args.at)?
    };
    let q = quotient_structure(&gb)?;
    let table = multiplication_table(&q, &gb);
    let pts = support_decomposition(&q, &table, &gb)?;
    let items: Vec<serde_json::Value> = pts
        .iter()
        .map(|p| {
            json!({
                "point": p.point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "length": p.length,
            })
        })
        .collect();
    println!("{}", serde_json::to_string(&items)?);
    Ok(())
}

fn cmd_repro(args: &ReproArgs) -> Result<bool> {
    let outcomes = if args.all {
        repro::run_all()?
    } else {
        let name = args
            .case
            .as_deref()
            .ok_or_else(|| anyhow!("pass a case name or --all"))?;
        vec![repro::run_case(name)?]
    };
    if args.json {
        println!("{}", serde_json::to_string(&outcomes)?);
    } else {
        for o in &outcomes {
            let verdict = if o.pass { "PASS" } else { "FAIL" };
            println!("{:<24} {} ({} ms)", o.name, verdict, o.runtime_ms);
            for c in &o.checks {
                if !c.pass {
                    println!("    {}: expected {}, got {}", c.check, c.expected, c.got);
                }
            }
        }
    }
    Ok(outcomes.iter().all(|o| o.pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result: Result<bool> = match &cli.command {
        Command::Tangent(a) => cmd_tangent(a, false).map(|_| true),
        Command::Graded(a) => cmd_tangent(a, true).map(|_| true),
        Command::Tnt(a) => cmd_tnt(a).map(|_| true),
        Command::NestedTangent(a) => cmd_nested(a).map(|_| true),
        Command::Enumerate(a) => cmd_enumerate(a).map(|_| true),
        Command::Search(a) => cmd_search(a).map(|_| true),
        Command::Family(a) => cmd_family(a).map(|_| true),
        Command::Support(a) => cmd_support(a).map(|_| true),
        Command::Repro(a) => cmd_repro(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            let usage = e.to_string().contains("fixture")
                || e.to_string().contains("unknown field")
                || e.to_string().contains("pass a case name");
            ExitCode::from(if usage { 2 } else { 1 })
        }
    }
}
