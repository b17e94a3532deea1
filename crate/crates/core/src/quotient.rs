//! Finite quotients `R^r/U`: the standard monomial basis, the socle, and the
//! exact multiplication matrices realising the module structure.

use crate::error::Error;
use crate::groebner::GroebnerBasis;
use crate::linalg::Matrix;
use crate::monomial::{Monomial, MonomialTerm};
use crate::scalar::Scalar;
use crate::vector::ModuleVector;
use crate::Result;
use std::collections::HashMap;

/// The standard monomial basis `N_U` of a finite quotient, its socle, and an
/// index for coordinate extraction. Basis elements are ordered by component,
/// then ascending term order.
#[derive(Clone, Debug)]
pub struct QuotientStructure {
    pub basis: Vec<MonomialTerm>,
    pub socle: Vec<MonomialTerm>,
    pub colength: usize,
    index: HashMap<MonomialTerm, usize>,
}

/// Compute the quotient structure of a finite-colength basis. The socle is
/// found by the membership test `x_l * s in U` for every variable.
pub fn quotient_structure(gb: &GroebnerBasis) -> Result<QuotientStructure> {
    let basis = gb.staircase().ok_or(Error::InfiniteColength)?;
    let index: HashMap<MonomialTerm, usize> =
        basis.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let one = gb.field.one();
    let mut socle = Vec::new();
    for s in &basis {
        let mut in_socle = true;
        for l in 0..gb.nvars {
            let xs = MonomialTerm::new(s.mono.mul_var(l), s.component);
            let v = ModuleVector::monomial_term(one.clone(), xs, gb.rank);
            if !gb.normal_form(&v).is_zero() {
                in_socle = false;
                break;
            }
        }
        if in_socle {
            socle.push(s.clone());
        }
    }
    Ok(QuotientStructure { colength: basis.len(), basis, socle, index })
}

impl QuotientStructure {
    pub fn index_of(&self, t: &MonomialTerm) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Coordinates of a vector already in normal form (all terms standard).
    pub fn coords(&self, v: &ModuleVector, zero: &Scalar) -> Vec<Scalar> {
        let mut out = vec![zero.clone(); self.colength];
        for (c, t) in v.terms() {
            let i = self.index.get(t).expect("vector is not in normal form");
            out[*i] = c.clone();
        }
        out
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.basis.iter().map(|t| t.degree()).collect()
    }
}

/// For each variable, the matrix of multiplication on the ordered basis of
/// the quotient: column `j` holds the coordinates of `NF(x_l * basis[j])`.
#[derive(Clone, Debug)]
pub struct MultiplicationTable {
    pub mats: Vec<Matrix>,
    pub dim: usize,
}

pub fn multiplication_table(q: &QuotientStructure, gb: &GroebnerBasis) -> MultiplicationTable {
    let d = q.colength;
    let one = gb.field.one();
    let mut mats = Vec::with_capacity(gb.nvars);
    for l in 0..gb.nvars {
        let mut m = Matrix::zeros(d, d, gb.field);
        for (j, b) in q.basis.iter().enumerate() {
            let xb = MonomialTerm::new(b.mono.mul_var(l), b.component);
            let v = ModuleVector::monomial_term(one.clone(), xb, gb.rank);
            let nf = gb.normal_form(&v);
            for (c, t) in nf.terms() {
                let i = q.index_of(t).expect("normal form left the staircase");
                m.set(i, j, c.clone());
            }
        }
        mats.push(m);
    }
    MultiplicationTable { mats, dim: d }
}

impl MultiplicationTable {
    /// Apply a monomial's worth of variable matrices to a coordinate vector.
    pub fn apply_mono(&self, m: &Monomial, coords: &[Scalar]) -> Vec<Scalar> {
        let mut v = coords.to_vec();
        for (l, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                v = self.mats[l].mat_vec(&v);
            }
        }
        v
    }

    /// Apply a scalar polynomial (rank-1 vector) to a coordinate vector.
    pub fn apply_poly(&self, p: &ModuleVector, coords: &[Scalar]) -> Vec<Scalar> {
        let field = self.mats[0].field;
        let mut acc = vec![field.zero(); self.dim];
        for (c, t) in p.terms() {
            let moved = self.apply_mono(&t.mono, coords);
            for (a, b) in acc.iter_mut().zip(&moved) {
                *a = a.add(&c.mul(b));
            }
        }
        acc
    }

    /// All pairs of variable matrices commute.
    pub fn commute(&self) -> bool {
        for a in 0..self.mats.len() {
            for b in a + 1..self.mats.len() {
                let ab = self.mats[a].mat_mul(&self.mats[b]);
                let ba = self.mats[b].mat_mul(&self.mats[a]);
                if ab != ba {
                    return false;
                }
            }
        }
        true
    }

    /// Every variable acts nilpotently (support concentrated at the origin).
    pub fn nilpotent(&self) -> bool {
        self.mats.iter().all(|m| m.pow(self.dim).is_zero())
    }

    /// Evaluate a module element through the matrices: each term `c x^a e_i`
    /// contributes `c M^a nf(e_i)`. Zero certifies that the table annihilates
    /// the element, as it must for every generator of `U`.
    pub fn annihilates(&self, v: &ModuleVector, q: &QuotientStructure, gb: &GroebnerBasis) -> bool {
        let field = gb.field;
        let mut acc = vec![field.zero(); self.dim];
        for (c, t) in v.terms() {
            let unit = ModuleVector::monomial_term(
                field.one(),
                MonomialTerm::new(Monomial::one(gb.nvars), t.component),
                gb.rank,
            );
            let e_coords = q.coords(&gb.normal_form(&unit), &field.zero());
            let moved = self.apply_mono(&t.mono, &e_coords);
            for (a, b) in acc.iter_mut().zip(&moved) {
                *a = a.add(&c.mul(b));
            }
        }
        acc.iter().all(|s| s.is_zero())
    }
}
