//! Tangent spaces of Quot-scheme points: `Hom_R(U, R^r/U)` by exact linear
//! algebra, weight-graded decompositions for homogeneous points, and the
//! trivial-negative-tangents test.
//!
//! A homomorphism is determined by its values on a generating list
//! `g_1, ..., g_m`, one unknown coordinate vector of length `d` per
//! generator. Every generating syzygy `(p_1, ..., p_m)` imposes the block row
//! `sum_i p_i phi(g_i) = 0` with `p_i` acting through the multiplication
//! table, and the dimension is `m d - rank`. The computed value does not
//! depend on the choice of generating list.

use crate::error::Error;
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::quotient::{multiplication_table, quotient_structure, MultiplicationTable, QuotientStructure};
use crate::scalar::Scalar;
use crate::syzygy::{syzygies, SyzygyModule};
use crate::vector::ModuleVector;
use crate::Result;
use serde::Serialize;
use std::collections::BTreeMap;

/// Everything the tangent computation reports about one point.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TangentReport {
    pub rank: usize,
    pub colength: usize,
    pub generators: usize,
    /// Number of generating syzygy relations used in the constraint system.
    pub syzygies: usize,
    pub tangent_dim: usize,
    /// `r d mod 2`.
    pub parity_expected: u8,
    /// Whether the tangent dimension matches the expected parity.
    pub parity_ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded: Option<BTreeMap<i64, usize>>,
}

/// Weight decomposition of the tangent space at a homogeneous point.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct GradedTangentReport {
    pub weights: BTreeMap<i64, usize>,
    pub total: usize,
}

/// Negative-weight data and the translation span at a homogeneous fat point.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TntReport {
    /// Dimensions of the weight-k tangent pieces for k < 0.
    pub negative: BTreeMap<i64, usize>,
    pub weight_minus_one_dim: usize,
    /// Dimension of the span of the derivation-induced tangent vectors.
    pub theta_span_dim: usize,
    pub has_tnt: bool,
}

struct TangentSystem {
    gens: Vec<ModuleVector>,
    syz: SyzygyModule,
    q: QuotientStructure,
    table: MultiplicationTable,
}

fn build_system(gb: &GroebnerBasis, gens: Vec<ModuleVector>) -> Result<TangentSystem> {
    let q = quotient_structure(gb)?;
    let table = multiplication_table(&q, gb);
    let syz = syzygies(&gens, gb.nvars, gb.rank, gb.field, &gb.order);
    Ok(TangentSystem { gens, syz, q, table })
}

/// One block row per syzygy; the `(sigma, i)` block is the matrix of the
/// action of `p_i` on the quotient, assembled column by column.
fn constraint_matrix(sys: &TangentSystem, field: crate::scalar::FieldSpec) -> Matrix {
    let d = sys.q.colength;
    let m = sys.gens.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(sys.syz.syzygies.len() * d);
    for sigma in &sys.syz.syzygies {
        let mut block = vec![vec![field.zero(); m * d]; d];
        for i in 0..m {
            let p = sigma.component_poly(i);
            if p.is_zero() {
                continue;
            }
            for c in 0..d {
                let mut unit = vec![field.zero(); d];
                unit[c] = field.one();
                let col = sys.table.apply_poly(&p, &unit);
                for (u, val) in col.into_iter().enumerate() {
                    if !val.is_zero() {
                        block[u][i * d + c] = val;
                    }
                }
            }
        }
        rows.extend(block);
    }
    Matrix::from_rows(rows, field)
}

fn report_from(sys: &TangentSystem, gb: &GroebnerBasis) -> TangentReport {
    let d = sys.q.colength;
    let m = sys.gens.len();
    let rank = if sys.syz.syzygies.is_empty() {
        0
    } else {
        constraint_matrix(sys, gb.field).rank()
    };
    let dim = m * d - rank;
    let parity_expected = ((gb.rank * d) % 2) as u8;
    TangentReport {
        rank: gb.rank,
        colength: d,
        generators: m,
        syzygies: sys.syz.syzygies.len(),
        tangent_dim: dim,
        parity_expected,
        parity_ok: (dim % 2) as u8 == parity_expected,
        graded: None,
    }
}

/// Tangent dimension at the submodule with the given basis, using its minimal
/// generators as unknowns.
pub fn tangent_dimension(gb: &GroebnerBasis) -> Result<TangentReport> {
    let gens = gb.minimal_generators();
    let sys = build_system(gb, gens)?;
    Ok(report_from(&sys, gb))
}

/// Tangent dimension computed from an explicit generating list (not
/// necessarily minimal; the dimension is unaffected, the unknown count is).
pub fn tangent_dimension_of_gens(
    gens: &[ModuleVector],
    ctx: &crate::ring::RingContext,
) -> Result<TangentReport> {
    let gb = GroebnerBasis::of(gens, ctx);
    let sys = build_system(&gb, gens.to_vec())?;
    Ok(report_from(&sys, &gb))
}

/// The parity verdict of a report: true when the dimension is congruent to
/// `r d` mod 2.
pub fn parity_check(report: &TangentReport) -> bool {
    (report.tangent_dim % 2) as u8 == report.parity_expected
}

/// Degrees of homogeneous generators; errors on non-homogeneous input.
fn homogeneous_degrees(gens: &[ModuleVector]) -> Result<Vec<i64>> {
    gens.iter()
        .map(|g| {
            if !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(format!(
                    "generator with mixed degrees (top degree {})",
                    g.degree()
                )));
            }
            Ok(g.degree() as i64)
        })
        .collect()
}

/// The restricted weight-k system: unknown columns `(i, c)` with
/// `deg basis[c] = deg g_i + k`, one row per (syzygy, basis element of
/// matching degree). Returns the matrix and the number of unknowns.
fn graded_system(
    sys: &TangentSystem,
    gen_degrees: &[i64],
    k: i64,
    field: crate::scalar::FieldSpec,
) -> (Matrix, usize) {
    let d = sys.q.colength;
    let basis_degrees: Vec<i64> = sys.q.degrees().iter().map(|&x| x as i64).collect();
    // columns in weight k
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for (i, &gd) in gen_degrees.iter().enumerate() {
        for c in 0..d {
            if basis_degrees[c] == gd + k {
                cols.push((i, c));
            }
        }
    }
    if cols.is_empty() {
        return (Matrix::zeros(0, 0, field), 0);
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for sigma in &sys.syz.syzygies {
        // the syzygy degree: deg p_i + deg g_i, constant over i
        let mut sdeg: Option<i64> = None;
        for i in 0..sys.gens.len() {
            let p = sigma.component_poly(i);
            if p.is_zero() {
                continue;
            }
            assert!(p.is_homogeneous(), "syzygy of homogeneous input must be homogeneous");
            let this = p.degree() as i64 + gen_degrees[i];
            assert!(sdeg.is_none_or(|s| s == this));
            sdeg = Some(this);
        }
        let Some(sdeg) = sdeg else { continue };
        // rows: basis elements u with deg u = sdeg + k
        let row_targets: Vec<usize> =
            (0..d).filter(|&u| basis_degrees[u] == sdeg + k).collect();
        if row_targets.is_empty() {
            continue;
        }
        let mut block = vec![vec![field.zero(); cols.len()]; row_targets.len()];
        for (cidx, &(i, c)) in cols.iter().enumerate() {
            let p = sigma.component_poly(i);
            if p.is_zero() {
                continue;
            }
            let mut unit = vec![field.zero(); d];
            unit[c] = field.one();
            let col = sys.table.apply_poly(&p, &unit);
            for (ridx, &u) in row_targets.iter().enumerate() {
                if !col[u].is_zero() {
                    block[ridx][cidx] = col[u].clone();
                }
            }
        }
        rows.extend(block);
    }
    (Matrix::from_rows(rows, field), cols.len())
}

fn graded_dim(sys: &TangentSystem, gen_degrees: &[i64], k: i64, field: crate::scalar::FieldSpec) -> usize {
    let (mat, ncols) = graded_system(sys, gen_degrees, k, field);
    if ncols == 0 {
        return 0;
    }
    let rank = if mat.nrows == 0 { 0 } else { mat.rank() };
    ncols - rank
}

/// Weight decomposition of the tangent space at a homogeneous point. The
/// dimensions sum to the total tangent dimension.
pub fn graded_tangent(gb: &GroebnerBasis) -> Result<GradedTangentReport> {
    if !gb.is_homogeneous() {
        return Err(Error::NonHomogeneous("graded tangent needs a homogeneous point".into()));
    }
    let gens = gb.minimal_generators();
    let gen_degrees = homogeneous_degrees(&gens)?;
    let sys = build_system(gb, gens)?;
    let basis_degrees: Vec<i64> = sys.q.degrees().iter().map(|&x| x as i64).collect();
    let max_basis = basis_degrees.iter().max().copied().unwrap_or(0);
    let min_gen = gen_degrees.iter().min().copied().unwrap_or(0);
    let max_gen = gen_degrees.iter().max().copied().unwrap_or(0);
    let mut weights = BTreeMap::new();
    let mut total = 0;
    for k in -max_gen..=(max_basis - min_gen) {
        let dim = graded_dim(&sys, &gen_degrees, k, gb.field);
        if dim > 0 {
            weights.insert(k, dim);
            total += dim;
        }
    }
    Ok(GradedTangentReport { weights, total })
}

/// Trivial-negative-tangents test at a homogeneous point supported at the
/// origin: all weights below -1 vanish and the weight -1 part is spanned by
/// the derivation-induced vectors `g -> NF(dg/dx_l)`.
pub fn tnt_check(gb: &GroebnerBasis) -> Result<TntReport> {
    if !gb.is_homogeneous() {
        return Err(Error::NonHomogeneous("TNT needs a homogeneous point".into()));
    }
    let gens = gb.minimal_generators();
    let gen_degrees = homogeneous_degrees(&gens)?;
    let sys = build_system(gb, gens)?;
    if !sys.table.nilpotent() {
        return Err(Error::SupportNotOrigin);
    }
    let field = gb.field;
    let basis_degrees: Vec<i64> = sys.q.degrees().iter().map(|&x| x as i64).collect();
    let max_gen = gen_degrees.iter().max().copied().unwrap_or(0);

    let mut negative = BTreeMap::new();
    for k in -max_gen..=-1 {
        let dim = graded_dim(&sys, &gen_degrees, k, field);
        if dim > 0 || k == -1 {
            negative.insert(k, dim);
        }
    }
    let weight_minus_one_dim = *negative.get(&-1).unwrap_or(&0);

    // derivation vectors in the weight -1 coordinate space
    let d = sys.q.colength;
    let mut cols: Vec<(usize, usize)> = Vec::new();
    for (i, &gd) in gen_degrees.iter().enumerate() {
        for c in 0..d {
            if basis_degrees[c] == gd - 1 {
                cols.push((i, c));
            }
        }
    }
    let col_index: std::collections::HashMap<(usize, usize), usize> =
        cols.iter().enumerate().map(|(a, b)| (*b, a)).collect();
    let mut theta_rows: Vec<Vec<Scalar>> = Vec::new();
    let (mat_minus_one, ncols) = graded_system(&sys, &gen_degrees, -1, field);
    debug_assert_eq!(ncols, cols.len());
    for l in 0..gb.nvars {
        let mut row = vec![field.zero(); cols.len()];
        for (i, g) in sys.gens.iter().enumerate() {
            let dg = g.derivative(l, &gb.order);
            let nf = gb.normal_form(&dg);
            for (cf, t) in nf.terms() {
                let c = sys.q.index_of(t).expect("normal form left the staircase");
                let key = (i, c);
                let idx = col_index
                    .get(&key)
                    .expect("derivation vector must live in weight -1");
                row[*idx] = cf.clone();
            }
        }
        // a derivation always satisfies the syzygy constraints
        if mat_minus_one.nrows > 0 {
            let image = mat_minus_one.mat_vec(&row);
            assert!(
                image.iter().all(|s| s.is_zero()),
                "derivation vector violates a syzygy constraint"
            );
        }
        theta_rows.push(row);
    }
    let theta_span_dim = if cols.is_empty() {
        0
    } else {
        Matrix::from_rows(theta_rows, field).rank()
    };

    let deep_zero = negative.iter().all(|(&k, &dim)| k == -1 || dim == 0);
    let has_tnt = deep_zero && weight_minus_one_dim == theta_span_dim;
    Ok(TntReport { negative, weight_minus_one_dim, theta_span_dim, has_tnt })
}
