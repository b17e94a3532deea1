//! Tangent spaces of nested Hilbert-scheme points.
//!
//! A chain `I_1 ⊇ I_2 ⊇ ... ⊇ I_r` of finite-colength ideals corresponds to a
//! nesting `Z_1 ⊆ ... ⊆ Z_r`. A tangent vector is a tuple of per-level
//! tangent vectors `phi_j : I_j -> R/I_j` such that for each adjacent pair
//! and every generator `h` of `I_{j+1}`, the projection of `phi_{j+1}(h)` to
//! `R/I_j` agrees with `phi_j(h)`.
//!
//! `phi_j(h)` is evaluated through one fixed division expression of `h` over
//! the minimal generators of `I_j`; on the solution set of the per-level
//! syzygy constraints the value is expression-independent, so the joint
//! system is well defined.

use crate::error::Error;
use crate::groebner::{buchberger_tracked, GroebnerBasis};
use crate::linalg::Matrix;
use crate::quotient::{multiplication_table, quotient_structure, MultiplicationTable, QuotientStructure};
use crate::scalar::Scalar;
use crate::syzygy::syzygies;
use crate::vector::ModuleVector;
use crate::Result;

/// A verified chain of ideals `I_1 ⊇ I_2 ⊇ ... ⊇ I_r` in one ring.
#[derive(Clone, Debug)]
pub struct NestedChain {
    pub levels: Vec<GroebnerBasis>,
}

impl NestedChain {
    /// Verify rank-1 ambient, containment of each level in the previous one,
    /// and non-decreasing finite colengths.
    pub fn new(levels: Vec<GroebnerBasis>) -> Result<Self> {
        assert!(!levels.is_empty(), "empty chain");
        for gb in &levels {
            if gb.rank != 1 {
                return Err(Error::AmbientMismatch("nested chains live in rank one".into()));
            }
            gb.colength_or_err()?;
        }
        for j in 0..levels.len() - 1 {
            for g in &levels[j + 1].elems {
                if !levels[j].contains(g) {
                    return Err(Error::ChainContainment { outer: j + 1, inner: j + 2 });
                }
            }
            let (a, b) = (levels[j].colength().unwrap(), levels[j + 1].colength().unwrap());
            if a > b {
                return Err(Error::ChainContainment { outer: j + 1, inner: j + 2 });
            }
        }
        Ok(NestedChain { levels })
    }
}

struct Level {
    gens: Vec<ModuleVector>,
    exprs: Vec<ModuleVector>,
    gb: GroebnerBasis,
    q: QuotientStructure,
    table: MultiplicationTable,
    syz: Vec<ModuleVector>,
    offset: usize,
}

impl Level {
    /// Coefficients expressing `h` over this level's generators.
    fn express(&self, h: &ModuleVector) -> Vec<ModuleVector> {
        let (qs, rem) = self.gb.divide(h);
        assert!(rem.is_zero(), "chain containment was verified");
        let m = self.gens.len();
        let order = &self.gb.order;
        let mut coeffs = vec![ModuleVector::zero(1); m];
        for (l, ql) in qs.iter().enumerate() {
            if ql.is_zero() {
                continue;
            }
            for (i, c) in coeffs.iter_mut().enumerate() {
                let part = self.exprs[l].component_poly(i);
                if !part.is_zero() {
                    *c = c.add(&part.mul_poly(ql, order), order);
                }
            }
        }
        coeffs
    }
}

/// Dimension of the tangent space to the nested Hilbert scheme at the chain.
pub fn nested_tangent_dimension(chain: &NestedChain) -> Result<usize> {
    let field = chain.levels[0].field;
    let mut levels: Vec<Level> = Vec::with_capacity(chain.levels.len());
    let mut offset = 0;
    for gb in &chain.levels {
        let gens = gb.minimal_generators();
        let (g, exprs) = buchberger_tracked(&gens, gb.nvars, gb.rank, gb.field, &gb.order, true);
        debug_assert_eq!(g.elems, gb.elems);
        let q = quotient_structure(&g)?;
        let table = multiplication_table(&q, &g);
        let syz = syzygies(&gens, gb.nvars, gb.rank, gb.field, &gb.order).syzygies;
        let width = gens.len() * q.colength;
        levels.push(Level { gens, exprs: exprs.unwrap(), gb: g, q, table, syz, offset });
        offset += width;
    }
    let total_unknowns = offset;

    let mut rows: Vec<Vec<Scalar>> = Vec::new();

    // per-level syzygy constraints
    for lv in &levels {
        let d = lv.q.colength;
        let m = lv.gens.len();
        for sigma in &lv.syz {
            let mut block = vec![vec![field.zero(); total_unknowns]; d];
            for i in 0..m {
                let p = sigma.component_poly(i);
                if p.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let mut unit = vec![field.zero(); d];
                    unit[c] = field.one();
                    let col = lv.table.apply_poly(&p, &unit);
                    for (u, val) in col.into_iter().enumerate() {
                        if !val.is_zero() {
                            block[u][lv.offset + i * d + c] = val;
                        }
                    }
                }
            }
            rows.extend(block);
        }
    }

    // inter-level compatibility
    for j in 0..levels.len() - 1 {
        let (outer, inner) = (&levels[j], &levels[j + 1]);
        let d_out = outer.q.colength;
        let d_in = inner.q.colength;
        // projection R/I_{j+1} -> R/I_j on the standard bases
        let mut proj = Matrix::zeros(d_out, d_in, field);
        for (c, b) in inner.q.basis.iter().enumerate() {
            let v = ModuleVector::monomial_term(field.one(), b.clone(), 1);
            let nf = outer.gb.normal_form(&v);
            for (cf, t) in nf.terms() {
                let u = outer.q.index_of(t).unwrap();
                proj.set(u, c, cf.clone());
            }
        }
        for (h_idx, h) in inner.gens.iter().enumerate() {
            let coeffs = outer.express(h);
            let mut block = vec![vec![field.zero(); total_unknowns]; d_out];
            // + proj * phi_{j+1}(h)
            for c in 0..d_in {
                for u in 0..d_out {
                    let val = proj.get(u, c);
                    if !val.is_zero() {
                        block[u][inner.offset + h_idx * d_in + c] = val.clone();
                    }
                }
            }
            // - sum_i coeffs_i * phi_j(g_i)
            for (i, p) in coeffs.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                for c in 0..d_out {
                    let mut unit = vec![field.zero(); d_out];
                    unit[c] = field.one();
                    let col = outer.table.apply_poly(p, &unit);
                    for (u, val) in col.into_iter().enumerate() {
                        if !val.is_zero() {
                            let slot = &mut block[u][outer.offset + i * d_out + c];
                            *slot = slot.sub(&val);
                        }
                    }
                }
            }
            rows.extend(block);
        }
    }

    let rank = if rows.is_empty() {
        0
    } else {
        Matrix::from_rows(rows, field).rank()
    };
    Ok(total_unknowns - rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_vector;
    use crate::ring::RingContext;
    use crate::tangent::tangent_dimension;

    fn gb_of(ctx: &RingContext, gens: &[&str]) -> GroebnerBasis {
        let vs: Vec<ModuleVector> =
            gens.iter().map(|s| parse_vector(s, ctx).unwrap()).collect();
        GroebnerBasis::of(&vs, ctx)
    }

    #[test]
    fn single_level_degenerates_to_the_plain_tangent() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &["x", "y^2", "y*z", "z^2"]);
        let plain = tangent_dimension(&gb).unwrap().tangent_dim;
        let chain = NestedChain::new(vec![gb]).unwrap();
        assert_eq!(nested_tangent_dimension(&chain).unwrap(), plain);
    }

    #[test]
    fn equal_ideal_chain_collapses() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &["x", "y", "z"]);
        let chain = NestedChain::new(vec![gb.clone(), gb.clone()]).unwrap();
        assert_eq!(nested_tangent_dimension(&chain).unwrap(), 3);
        let deeper = gb_of(&ctx, &["x", "y^2", "y*z", "z^2"]);
        let chain2 = NestedChain::new(vec![deeper.clone(), deeper.clone()]).unwrap();
        assert_eq!(
            nested_tangent_dimension(&chain2).unwrap(),
            tangent_dimension(&deeper).unwrap().tangent_dim
        );
    }

    #[test]
    fn containment_is_verified() {
        let ctx = RingContext::xyz(1);
        let small = gb_of(&ctx, &["x", "y", "z^2"]);
        let point = gb_of(&ctx, &["x", "y", "z"]);
        // point ⊉ small: z^2-level scheme does not contain the fat direction
        assert!(matches!(
            NestedChain::new(vec![small, point]),
            Err(Error::ChainContainment { .. })
        ));
    }

    #[test]
    fn point_inside_double_point() {
        // chain m0 ⊇ (x, y, z^2): nesting of a reduced point in a length-2 scheme
        let ctx = RingContext::xyz(1);
        let m0 = gb_of(&ctx, &["x", "y", "z"]);
        let double = gb_of(&ctx, &["x", "y", "z^2"]);
        let chain = NestedChain::new(vec![m0, double]).unwrap();
        let dim = nested_tangent_dimension(&chain).unwrap();
        // the pair space of (point, length-2 scheme) is the blowup of the
        // diagonal in A^3 x A^3: smooth of dimension 6; by hand the three
        // compatibility rows cut 3 + 6 unknowns down to 6
        assert_eq!(dim, 6);
    }
}
