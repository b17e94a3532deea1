//! Generating sets for first syzygy modules of explicit generator lists.
//!
//! Given generators `g_1, ..., g_m` of a submodule of `R^r`, a syzygy is a
//! vector `(p_1, ..., p_m)` in `R^m` with `sum p_i g_i = 0`. The generating
//! set is obtained by Schreyer's construction: complete the generators to a
//! reduced basis `H` while tracking expressions over the input, lift the
//! S-pair reductions of `H` to relations, map them back through the tracked
//! expressions, and add the rows of `I - B A` where `A` expresses `H` over
//! the generators and `B` the generators over `H`.

use crate::groebner::{buchberger, buchberger_tracked, GroebnerBasis};
use crate::monomial::{Monomial, MonomialTerm, TermOrder};
use crate::scalar::FieldSpec;
use crate::vector::ModuleVector;

/// A generating list of syzygies among a fixed generator list. Each syzygy is
/// a vector in `R^m`, component `i` carrying the coefficient of `gens[i]`.
#[derive(Clone, Debug)]
pub struct SyzygyModule {
    pub syzygies: Vec<ModuleVector>,
    pub ngens: usize,
}

/// Combine expression rows: `sum_l coeff_l(v) * rows[l]` where `coeff_l(v)`
/// is the component-`l` polynomial of `v`.
fn contract(
    v: &ModuleVector,
    rows: &[ModuleVector],
    out_rank: usize,
    order: &TermOrder,
) -> ModuleVector {
    let mut acc = ModuleVector::zero(out_rank);
    for (l, row) in rows.iter().enumerate() {
        let p = v.component_poly(l);
        if !p.is_zero() {
            acc = acc.add(&row.mul_poly(&p, order), order);
        }
    }
    acc
}

/// Compute a generating set of the first syzygy module of `gens`.
///
/// The result is not minimalised; see [`minimalize`]. Every returned vector
/// contracts exactly to zero against `gens`.
pub fn syzygies(
    gens: &[ModuleVector],
    nvars: usize,
    rank: usize,
    field: FieldSpec,
    order: &TermOrder,
) -> SyzygyModule {
    let m = gens.len();
    let (gb, exprs) = buchberger_tracked(gens, nvars, rank, field, order, true);
    let a_rows = exprs.unwrap();
    let k = gb.elems.len();
    let mut out: Vec<ModuleVector> = Vec::new();

    // Schreyer relations from S-pair reductions of the finished basis
    for u in 0..k {
        for v in u + 1..k {
            let lu = gb.elems[u].lead().unwrap().1;
            let lv = gb.elems[v].lead().unwrap().1;
            if lu.component != lv.component {
                continue;
            }
            let lcm = lu.mono.lcm(&lv.mono);
            let mu = lu.mono.div_into(&lcm).unwrap();
            let mv = lv.mono.div_into(&lcm).unwrap();
            let s = gb.elems[u].mul_mono(&mu).sub(&gb.elems[v].mul_mono(&mv), order);
            let (q, rem) = gb.divide(&s);
            debug_assert!(rem.is_zero(), "S-pair of a finished basis must reduce to zero");
            // sigma = mu e_u - mv e_v - q, as a vector over the basis H
            let mut sigma =
                ModuleVector::monomial_term(field.one(), MonomialTerm::new(mu, u), k);
            sigma = sigma.sub(
                &ModuleVector::monomial_term(field.one(), MonomialTerm::new(mv, v), k),
                order,
            );
            for (l, ql) in q.iter().enumerate() {
                if !ql.is_zero() {
                    let unit = ModuleVector::monomial_term(
                        field.one(),
                        MonomialTerm::new(Monomial::one(nvars), l),
                        k,
                    );
                    sigma = sigma.sub(&unit.mul_poly(ql, order), order);
                }
            }
            let mapped = contract(&sigma, &a_rows, m, order);
            if !mapped.is_zero() {
                out.push(mapped);
            }
        }
    }

    // rows of I - B A
    for (i, g) in gens.iter().enumerate() {
        let (b, rem) = gb.divide(g);
        debug_assert!(rem.is_zero(), "generator must reduce to zero against its own basis");
        let mut row = ModuleVector::monomial_term(
            field.one(),
            MonomialTerm::new(Monomial::one(nvars), i),
            m,
        );
        for (l, bl) in b.iter().enumerate() {
            if !bl.is_zero() {
                row = row.sub(&a_rows[l].mul_poly(bl, order), order);
            }
        }
        if !row.is_zero() {
            out.push(row);
        }
    }

    out.sort_by(|x, y| order.cmp_term(x.lead().unwrap().1, y.lead().unwrap().1));
    out.dedup();

    debug_assert!(out.iter().all(|s| contract(s, gens, rank, order).is_zero()));

    SyzygyModule { syzygies: out, ngens: m }
}

/// Evaluate a syzygy against the generator list; exact zero certifies it.
pub fn apply_syzygy(
    s: &ModuleVector,
    gens: &[ModuleVector],
    rank: usize,
    order: &TermOrder,
) -> ModuleVector {
    contract(s, gens, rank, order)
}

/// Greedy removal of redundant syzygies, in ascending lead-term order, with
/// membership tested against a basis of the remaining set.
pub fn minimalize(
    sz: &SyzygyModule,
    nvars: usize,
    field: FieldSpec,
    order: &TermOrder,
) -> SyzygyModule {
    let mut current = sz.syzygies.clone();
    let mut i = 0;
    while i < current.len() {
        let mut rest = current.clone();
        let candidate = rest.remove(i);
        let gb = buchberger(&rest, nvars, sz.ngens, field, order);
        if gb.contains(&candidate) {
            current = rest;
        } else {
            i += 1;
        }
    }
    SyzygyModule { syzygies: current, ngens: sz.ngens }
}

/// Convenience: minimal syzygies of the minimal generators of a basis.
pub fn minimal_syzygies_of(gb: &GroebnerBasis) -> SyzygyModule {
    let gens = gb.minimal_generators();
    let sz = syzygies(&gens, gb.nvars, gb.rank, gb.field, &gb.order);
    minimalize(&sz, gb.nvars, gb.field, &gb.order)
}
