//! Support decomposition of a finite quotient: joint rational eigenvalues of
//! the commuting multiplication matrices and the local lengths at each point.
//!
//! Candidate coordinates come from rational-root extraction on the squarefree
//! part of each variable's minimal polynomial; any irrational factor aborts
//! rather than approximating. The local length at a point `p` is the
//! dimension of the joint generalised eigenspace, computed with the colength
//! as a universal nilpotency exponent.

use crate::error::Error;
use crate::groebner::GroebnerBasis;
use crate::linalg::{minimal_polynomial, rational_roots_complete, squarefree_part, Matrix};
use crate::quotient::{MultiplicationTable, QuotientStructure};
use crate::scalar::{FieldSpec, Scalar};
use crate::Result;
use num::rational::BigRational;

/// One support point with its local length.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportPoint {
    pub point: Vec<BigRational>,
    pub length: usize,
}

/// Decompose the support of `R^r/U`. Requires rational coefficients.
pub fn support_decomposition(
    q: &QuotientStructure,
    table: &MultiplicationTable,
    gb: &GroebnerBasis,
) -> Result<Vec<SupportPoint>> {
    if gb.field != FieldSpec::Q {
        return Err(Error::FieldMismatch(
            "support decomposition works over the rationals".into(),
        ));
    }
    let d = q.colength;
    let nvars = gb.nvars;
    let mut roots_per_var: Vec<Vec<BigRational>> = Vec::with_capacity(nvars);
    for l in 0..nvars {
        let mu = minimal_polynomial(&table.mats[l]);
        let sf = squarefree_part(&mu, gb.field);
        roots_per_var.push(rational_roots_complete(&sf)?);
    }

    let mut out = Vec::new();
    let mut idx = vec![0usize; nvars];
    'points: loop {
        let point: Vec<BigRational> =
            (0..nvars).map(|l| roots_per_var[l][idx[l]].clone()).collect();
        // joint generalised eigenspace: kernel of the stacked (M_l - p_l)^d
        let powers: Vec<Matrix> = (0..nvars)
            .map(|l| {
                table.mats[l]
                    .sub_scalar_identity(&Scalar::Q(point[l].clone()))
                    .pow(d)
            })
            .collect();
        let stacked = Matrix::vstack(&powers.iter().collect::<Vec<_>>());
        let length = d - stacked.rank();
        if length > 0 {
            out.push(SupportPoint { point, length });
        }
        // advance the mixed-radix counter over candidate tuples
        for l in 0..nvars {
            idx[l] += 1;
            if idx[l] < roots_per_var[l].len() {
                continue 'points;
            }
            idx[l] = 0;
        }
        break;
    }
    let total: usize = out.iter().map(|p| p.length).sum();
    assert_eq!(total, d, "local lengths must sum to the colength");
    out.sort_by(|a, b| a.point.cmp(&b.point));
    Ok(out)
}

/// True when the point lies in the support as certified by generator
/// evaluation: the evaluation matrix of the generators at the point has rank
/// less than the ambient rank (for ideals: all generators vanish).
pub fn point_in_support_by_evaluation(gb: &GroebnerBasis, point: &[BigRational]) -> bool {
    let scalars: Vec<Scalar> = point.iter().map(|c| Scalar::Q(c.clone())).collect();
    let zero = gb.field.zero();
    let rows: Vec<Vec<Scalar>> =
        gb.elems.iter().map(|g| g.evaluate(&scalars, &zero)).collect();
    if gb.rank == 1 {
        return rows.iter().all(|r| r[0].is_zero());
    }
    Matrix::from_rows(rows, gb.field).rank() < gb.rank
}
