//! Groebner bases for submodules of `R^r`: the division algorithm, Buchberger
//! completion with expression tracking, reduced bases, colengths, staircases
//! and minimal generators.
//!
//! S-pairs are formed only between elements whose lead terms live in the same
//! component. The product criterion is applied only when both elements are
//! supported entirely in that one component (the embedded ideal case; the
//! criterion is not valid for general module elements), the chain criterion in
//! general.

use crate::error::Error;
use crate::monomial::{Monomial, MonomialTerm, TermOrder};
use crate::scalar::FieldSpec;
use crate::vector::ModuleVector;
use crate::Result;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// A reduced Groebner basis: elements are monic, pairwise lead-irreducible,
/// fully tail-reduced, and sorted ascending by lead term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub elems: Vec<ModuleVector>,
    pub order: TermOrder,
    pub nvars: usize,
    pub rank: usize,
    pub field: FieldSpec,
    pub is_monomial: bool,
}

/// Divide `f` by `basis`, returning the remainder and, when requested, the
/// quotient polynomials (rank-1 vectors, one per basis element) with
/// `f = sum q_i b_i + remainder`. No remainder term is divisible by any basis
/// lead term. Basis elements must be monic.
fn divide(
    f: &ModuleVector,
    basis: &[ModuleVector],
    order: &TermOrder,
    want_quotients: bool,
) -> (ModuleVector, Option<Vec<ModuleVector>>) {
    let rank = f.rank();
    let mut quotients = if want_quotients {
        Some(vec![ModuleVector::zero(1); basis.len()])
    } else {
        None
    };
    let mut work = f.clone();
    let mut rem: Vec<_> = Vec::new();
    'outer: while let Some((c, t)) = work.lead() {
        for (j, g) in basis.iter().enumerate() {
            let (gc, gt) = match g.lead() {
                Some(l) => l,
                None => continue,
            };
            if gt.divides(t) {
                debug_assert!(gc.is_one(), "division against a non-monic basis");
                let m = gt.mono.div_into(&t.mono).unwrap();
                let coeff = c.clone();
                if let Some(qs) = quotients.as_mut() {
                    let qterm = ModuleVector::monomial_term(
                        coeff.clone(),
                        MonomialTerm::new(m.clone(), 0),
                        1,
                    );
                    qs[j] = qs[j].add(&qterm, order);
                }
                work = work.sub(&g.mul_mono(&m).scale(&coeff), order);
                continue 'outer;
            }
        }
        // lead is irreducible: move it to the remainder
        rem.push((c.clone(), t.clone()));
        work = work.tail();
    }
    (ModuleVector::from_sorted(rem, rank), quotients)
}

/// Normal form of `f` against a monic basis.
pub fn normal_form(f: &ModuleVector, basis: &[ModuleVector], order: &TermOrder) -> ModuleVector {
    divide(f, basis, order, false).0
}

struct Pair {
    deg: u32,
    i: usize,
    j: usize,
    lcm: Monomial,
}

impl PartialEq for Pair {
    fn eq(&self, other: &Self) -> bool {
        self.deg == other.deg && self.i == other.i && self.j == other.j
    }
}
impl Eq for Pair {}
impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Pair {
    // BinaryHeap is a max-heap; reverse so the minimal lcm degree pops first.
    fn cmp(&self, other: &Self) -> Ordering {
        (other.deg, other.i, other.j).cmp(&(self.deg, self.i, self.j))
    }
}

/// One element of the working state during completion: the vector and its
/// expression over the input generators (a rank-m vector), kept in sync.
struct Tracked {
    v: ModuleVector,
    expr: Option<ModuleVector>,
}

fn single_component(v: &ModuleVector) -> Option<usize> {
    let mut comps = v.terms().iter().map(|(_, t)| t.component);
    let first = comps.next()?;
    comps.all(|c| c == first).then_some(first)
}

struct Completion {
    basis: Vec<Tracked>,
    order: TermOrder,
    track: bool,
    ngens: usize,
    pairs: BinaryHeap<Pair>,
    done_pairs: std::collections::HashSet<(usize, usize)>,
}

impl Completion {
    fn lead_term(&self, i: usize) -> &MonomialTerm {
        self.basis[i].v.lead().unwrap().1
    }

    /// Reduce `v` (with expression `expr`) fully against the current basis.
    fn reduce(&self, v: &ModuleVector, expr: Option<&ModuleVector>) -> Tracked {
        let vecs: Vec<ModuleVector> = self.basis.iter().map(|t| t.v.clone()).collect();
        let (rem, quotients) = divide(v, &vecs, &self.order, self.track);
        let expr = if self.track {
            let mut e = expr.cloned().unwrap_or_else(|| ModuleVector::zero(self.ngens));
            for (q, b) in quotients.unwrap().iter().zip(&self.basis) {
                if !q.is_zero() {
                    e = e.sub(&b.expr.as_ref().unwrap().mul_poly(q, &self.order), &self.order);
                }
            }
            Some(e)
        } else {
            None
        };
        Tracked { v: rem, expr }
    }

    fn insert(&mut self, t: Tracked) {
        let (c, lead) = {
            let (c, l) = t.v.lead().expect("inserting zero");
            (c.clone(), l.clone())
        };
        // keep basis elements monic; rescale the expression to match
        let inv = c.inv();
        let v = t.v.scale(&inv);
        let expr = t.expr.map(|e| e.scale(&inv));
        let idx = self.basis.len();
        for j in 0..idx {
            if self.lead_term(j).component == lead.component {
                let lcm = self.lead_term(j).mono.lcm(&lead.mono);
                self.pairs.push(Pair { deg: lcm.degree(), i: j, j: idx, lcm });
            }
        }
        self.basis.push(Tracked { v, expr });
    }

    fn chain_criterion(&self, p: &Pair) -> bool {
        // skip (i, j) when some k with lt(k) | lcm(i, j) has both pairs
        // (i, k) and (j, k) already handled
        for k in 0..self.basis.len() {
            if k == p.i || k == p.j {
                continue;
            }
            let ltk = self.lead_term(k);
            if ltk.component != self.lead_term(p.i).component || !ltk.mono.divides(&p.lcm) {
                continue;
            }
            let a = (p.i.min(k), p.i.max(k));
            let b = (p.j.min(k), p.j.max(k));
            if self.done_pairs.contains(&a) && self.done_pairs.contains(&b) {
                return true;
            }
        }
        false
    }

    fn product_criterion(&self, p: &Pair) -> bool {
        let (fi, fj) = (&self.basis[p.i].v, &self.basis[p.j].v);
        let (li, lj) = (self.lead_term(p.i), self.lead_term(p.j));
        li.mono.gcd_is_one(&lj.mono)
            && single_component(fi) == Some(li.component)
            && single_component(fj) == Some(li.component)
    }

    fn run(&mut self) {
        while let Some(p) = self.pairs.pop() {
            self.done_pairs.insert((p.i, p.j));
            if self.product_criterion(&p) || self.chain_criterion(&p) {
                continue;
            }
            let (s, s_expr) = s_pair(
                &self.basis[p.i].v,
                self.basis[p.i].expr.as_ref(),
                &self.basis[p.j].v,
                self.basis[p.j].expr.as_ref(),
                &p.lcm,
                &self.order,
            );
            let red = self.reduce(&s, s_expr.as_ref());
            if !red.v.is_zero() {
                self.insert(red);
            }
        }
    }
}

/// The S-pair of two monic elements with lead terms in the same component,
/// together with the matching combination of their expressions.
fn s_pair(
    f: &ModuleVector,
    f_expr: Option<&ModuleVector>,
    g: &ModuleVector,
    g_expr: Option<&ModuleVector>,
    lcm: &Monomial,
    order: &TermOrder,
) -> (ModuleVector, Option<ModuleVector>) {
    let lf = f.lead().unwrap().1;
    let lg = g.lead().unwrap().1;
    let mf = lf.mono.div_into(lcm).unwrap();
    let mg = lg.mono.div_into(lcm).unwrap();
    let s = f.mul_mono(&mf).sub(&g.mul_mono(&mg), order);
    let expr = match (f_expr, g_expr) {
        (Some(a), Some(b)) => Some(a.mul_mono(&mf).sub(&b.mul_mono(&mg), order)),
        _ => None,
    };
    (s, expr)
}

fn completion(
    gens: &[ModuleVector],
    rank: usize,
    nvars: usize,
    field: FieldSpec,
    order: &TermOrder,
    track: bool,
) -> Vec<Tracked> {
    let ngens = gens.len();
    let mut st = Completion {
        basis: Vec::new(),
        order: order.clone(),
        track,
        ngens,
        pairs: BinaryHeap::new(),
        done_pairs: std::collections::HashSet::new(),
    };
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        debug_assert_eq!(g.rank(), rank);
        let expr = track.then(|| {
            ModuleVector::monomial_term(
                field.one(),
                MonomialTerm::new(Monomial::one(nvars), i),
                ngens,
            )
        });
        // interreduce inputs on the way in
        let red = st.reduce(g, expr.as_ref());
        if !red.v.is_zero() {
            st.insert(red);
        }
    }
    st.run();
    st.basis
}

/// Build the reduced Groebner basis of the submodule generated by `gens`.
///
/// The empty module (no nonzero generators) yields an empty basis.
pub fn buchberger(
    gens: &[ModuleVector],
    nvars: usize,
    rank: usize,
    field: FieldSpec,
    order: &TermOrder,
) -> GroebnerBasis {
    buchberger_tracked(gens, nvars, rank, field, order, false).0
}

/// As [`buchberger`], optionally returning for each reduced basis element its
/// expression over the input generators (a rank-`gens.len()` vector).
pub fn buchberger_tracked(
    gens: &[ModuleVector],
    nvars: usize,
    rank: usize,
    field: FieldSpec,
    order: &TermOrder,
    track: bool,
) -> (GroebnerBasis, Option<Vec<ModuleVector>>) {
    let working = completion(gens, rank, nvars, field, order, track);

    // minimalise: ascending leads, drop anything an earlier lead divides
    let mut idxs: Vec<usize> = (0..working.len()).collect();
    idxs.sort_by(|&a, &b| {
        order.cmp_term(working[a].v.lead().unwrap().1, working[b].v.lead().unwrap().1)
    });
    let mut kept: Vec<usize> = Vec::new();
    for &i in &idxs {
        let lt = working[i].v.lead().unwrap().1;
        if !kept.iter().any(|&k| working[k].v.lead().unwrap().1.divides(lt)) {
            kept.push(i);
        }
    }

    // tail-reduce each kept element against the others
    let mut elems: Vec<ModuleVector> = Vec::with_capacity(kept.len());
    let mut exprs: Vec<ModuleVector> = Vec::with_capacity(kept.len());
    for (pos, &i) in kept.iter().enumerate() {
        let others: Vec<ModuleVector> = kept
            .iter()
            .enumerate()
            .filter(|(q, _)| *q != pos)
            .map(|(_, &k)| working[k].v.clone())
            .collect();
        let (rem, quotients) = divide(&working[i].v, &others, order, track);
        debug_assert!(!rem.is_zero());
        if track {
            let mut e = working[i].expr.clone().unwrap();
            let qs = quotients.unwrap();
            for (q, (_, &k)) in qs
                .iter()
                .zip(kept.iter().enumerate().filter(|(q, _)| *q != pos))
            {
                if !q.is_zero() {
                    e = e.sub(&working[k].expr.as_ref().unwrap().mul_poly(q, order), order);
                }
            }
            exprs.push(e);
        }
        elems.push(rem);
    }

    let is_monomial = elems.iter().all(|v| v.is_monomial_term());
    let gb = GroebnerBasis { elems, order: order.clone(), nvars, rank, field, is_monomial };
    (gb, track.then_some(exprs))
}

impl GroebnerBasis {
    /// Reduced basis of the submodule generated by `gens` in the context
    /// ambient.
    pub fn of(gens: &[ModuleVector], ctx: &crate::ring::RingContext) -> Self {
        buchberger(gens, ctx.nvars(), ctx.rank, ctx.field, &ctx.order)
    }

    pub fn normal_form(&self, f: &ModuleVector) -> ModuleVector {
        normal_form(f, &self.elems, &self.order)
    }

    /// Quotients and remainder of `f` against the basis elements.
    pub fn divide(&self, f: &ModuleVector) -> (Vec<ModuleVector>, ModuleVector) {
        let (rem, qs) = divide(f, &self.elems, &self.order, true);
        (qs.unwrap(), rem)
    }

    pub fn contains(&self, f: &ModuleVector) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Lead monomials of the given component, i.e. minimal monomial
    /// generators of the component's lead-term ideal.
    pub fn lead_monomials(&self, component: usize) -> Vec<Monomial> {
        self.elems
            .iter()
            .filter_map(|v| {
                let (_, t) = v.lead()?;
                (t.component == component).then(|| t.mono.clone())
            })
            .collect()
    }

    /// Standard monomial terms (the staircase), ordered by component then
    /// ascending term order, or `None` when the colength is infinite.
    pub fn staircase(&self) -> Option<Vec<MonomialTerm>> {
        let mut out = Vec::new();
        for comp in 0..self.rank {
            let gens = self.lead_monomials(comp);
            // a unit lead kills the whole component
            if gens.iter().any(|g| g.is_one()) {
                continue;
            }
            // finite iff each variable has a pure power among the lead gens
            let mut caps = vec![None; self.nvars];
            for g in &gens {
                for i in 0..self.nvars {
                    if g.exp(i) == g.degree() && g.degree() > 0 {
                        let cap: &mut Option<u32> = &mut caps[i];
                        *cap = Some(cap.map_or(g.exp(i), |c: u32| c.min(g.exp(i))));
                    }
                }
            }
            let caps: Option<Vec<u32>> = caps.into_iter().collect();
            let caps = caps?;
            let mut exps = vec![0u32; self.nvars];
            collect_staircase(&gens, &caps, &mut exps, 0, comp, &mut out);
        }
        out.sort_by(|a, b| {
            a.component
                .cmp(&b.component)
                .then_with(|| self.order.cmp_mono(&a.mono, &b.mono))
        });
        Some(out)
    }

    /// Number of standard monomials, `None` for infinite colength.
    pub fn colength(&self) -> Option<usize> {
        self.staircase().map(|s| s.len())
    }

    pub fn colength_or_err(&self) -> Result<usize> {
        self.colength().ok_or(Error::InfiniteColength)
    }

    /// A generating subset from which no element can be removed. For monomial
    /// submodules this is the unique minimal monomial generating set (the
    /// reduced basis itself); otherwise greedy removal in ascending lead-term
    /// order with membership tested against a basis of the remaining set.
    pub fn minimal_generators(&self) -> Vec<ModuleVector> {
        if self.is_monomial {
            return self.elems.clone();
        }
        let mut current = self.elems.clone();
        let mut i = 0;
        while i < current.len() {
            let mut rest = current.clone();
            let candidate = rest.remove(i);
            let gb = buchberger(&rest, self.nvars, self.rank, self.field, &self.order);
            if gb.contains(&candidate) {
                current = rest;
            } else {
                i += 1;
            }
        }
        current
    }

    /// All basis elements homogeneous under the standard grading.
    pub fn is_homogeneous(&self) -> bool {
        self.elems.iter().all(|v| v.is_homogeneous())
    }
}

fn collect_staircase(
    gens: &[Monomial],
    caps: &[u32],
    exps: &mut Vec<u32>,
    var: usize,
    component: usize,
    out: &mut Vec<MonomialTerm>,
) {
    if var == caps.len() {
        let m = Monomial::from_exps(exps.clone());
        if !gens.iter().any(|g| g.divides(&m)) {
            out.push(MonomialTerm::new(m, component));
        }
        return;
    }
    for e in 0..caps[var] {
        exps[var] = e;
        collect_staircase(gens, caps, exps, var + 1, component, out);
    }
    exps[var] = 0;
}

/// Re-check the Buchberger criterion on a finished basis: every S-pair of
/// same-component elements reduces to zero. Test support.
pub fn verify_buchberger(gb: &GroebnerBasis) -> bool {
    for i in 0..gb.elems.len() {
        for j in i + 1..gb.elems.len() {
            let li = gb.elems[i].lead().unwrap().1;
            let lj = gb.elems[j].lead().unwrap().1;
            if li.component != lj.component {
                continue;
            }
            let lcm = li.mono.lcm(&lj.mono);
            let (s, _) = s_pair(&gb.elems[i], None, &gb.elems[j], None, &lcm, &gb.order);
            if !gb.normal_form(&s).is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_vector;
    use crate::ring::RingContext;

    fn gb_of(ctx: &RingContext, gens: &[&str]) -> GroebnerBasis {
        let vs: Vec<ModuleVector> = gens.iter().map(|s| parse_vector(s, ctx).unwrap()).collect();
        GroebnerBasis::of(&vs, ctx)
    }

    /// Generators of (x, (y,z)^2)^2 + (y^3).
    const J_GENS: [&str; 8] = [
        "x^2", "x*y^2", "y^3", "x*y*z", "x*z^2", "y^2*z^2", "y*z^3", "z^4",
    ];

    #[test]
    fn monomial_input_is_its_own_basis() {
        let ctx = RingContext::new(&["x", "y"], 1, FieldSpec::Q);
        let gb = gb_of(&ctx, &["x", "y"]);
        assert_eq!(gb.elems.len(), 2);
        assert!(gb.is_monomial);
        assert!(verify_buchberger(&gb));
    }

    #[test]
    fn normal_form_membership() {
        let ctx = RingContext::new(&["x"], 1, FieldSpec::Q);
        let gb = gb_of(&ctx, &["x^2"]);
        let f = parse_vector("x^2", &ctx).unwrap().mul_mono(&Monomial::var(1, 0));
        assert!(gb.normal_form(&f).is_zero());
    }

    #[test]
    fn staircase_of_squared_ideal() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &J_GENS);
        assert_eq!(gb.colength(), Some(12));
        // yz is standard, y^3 is not
        let yz = parse_vector("y*z", &ctx).unwrap();
        assert_eq!(gb.normal_form(&yz), yz);
        let y3 = parse_vector("y^3", &ctx).unwrap();
        assert!(gb.normal_form(&y3).is_zero());
    }

    #[test]
    fn maximal_ideal_colength_one() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &["x", "y", "z"]);
        assert_eq!(gb.colength(), Some(1));
    }

    #[test]
    fn infinite_colength_detected() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &["y^2", "x*z", "y*z"]);
        assert_eq!(gb.colength(), None);
    }

    #[test]
    fn module_staircase_sums_components() {
        let ctx = RingContext::xyz(2);
        let gb = gb_of(
            &ctx,
            &[
                "x*e1", "y^2*e1", "y*z^2*e1", "z^3*e1", "x*e2", "y^2*e2", "y*z*e2", "z^2*e2",
            ],
        );
        assert_eq!(gb.colength(), Some(8)); // 5 + 3
        assert!(gb.is_monomial);
    }

    #[test]
    fn deformed_module_keeps_colength() {
        let ctx = RingContext::xyz(2);
        let gb = gb_of(
            &ctx,
            &[
                "x*e1",
                "y^2*e1",
                "y*z^2*e1",
                "z^3*e1",
                "x*e2 + (y*z + z^2)*e1",
                "y^2*e2 + (y*z - z^2)*e1",
                "y*z*e2",
                "z^2*e2 + (y*z + z^2)*e1",
            ],
        );
        assert_eq!(gb.colength(), Some(8));
        assert!(!gb.is_monomial);
        assert!(verify_buchberger(&gb));
    }

    #[test]
    fn quartic_binomial_ideal_colength() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(
            &ctx,
            &[
                "x^4", "x^2*y^2", "x^2*y*z", "x^2*z^2", "y^4", "y^3*z", "y^2*z^2", "y*z^3",
                "y^3 - x^3*z", "z^4",
            ],
        );
        assert_eq!(gb.colength(), Some(24));
        assert!(verify_buchberger(&gb));
    }

    #[test]
    fn minimal_generators_prune_divisible() {
        let ctx = RingContext::new(&["x", "y"], 1, FieldSpec::Q);
        let gb = gb_of(&ctx, &["x^2", "x^3", "y"]);
        let min = gb.minimal_generators();
        assert_eq!(min.len(), 2);
    }

    #[test]
    fn product_family_has_seven_minimal_generators() {
        // sum (x_i, y_i)^2 + (x1 x2 - y1 y2) in four variables
        let ctx = RingContext::new(&["x1", "y1", "x2", "y2"], 1, FieldSpec::Q);
        let gb = gb_of(
            &ctx,
            &[
                "x1^2",
                "x1*y1",
                "y1^2",
                "x2^2",
                "x2*y2",
                "y2^2",
                "x1*x2 - y1*y2",
            ],
        );
        assert_eq!(gb.colength(), Some(8)); // 3^2 - 1
        assert_eq!(gb.minimal_generators().len(), 7);
    }

    #[test]
    fn reduced_basis_is_input_order_independent() {
        let ctx = RingContext::xyz(1);
        let gens: Vec<ModuleVector> =
            J_GENS.iter().map(|s| parse_vector(s, &ctx).unwrap()).collect();
        let gb1 = GroebnerBasis::of(&gens, &ctx);
        let mut permuted = gens.clone();
        permuted.reverse();
        permuted.swap(0, 3);
        let gb2 = GroebnerBasis::of(&permuted, &ctx);
        assert_eq!(gb1.elems, gb2.elems);
    }

    #[test]
    fn tracked_expressions_reconstruct_basis() {
        let ctx = RingContext::xyz(1);
        let gens: Vec<ModuleVector> = ["y^3 - x*z", "x^2", "x*y^2"]
            .iter()
            .map(|s| parse_vector(s, &ctx).unwrap())
            .collect();
        let (gb, exprs) = buchberger_tracked(&gens, 3, 1, FieldSpec::Q, &ctx.order, true);
        let exprs = exprs.unwrap();
        assert_eq!(gb.elems.len(), exprs.len());
        for (h, e) in gb.elems.iter().zip(&exprs) {
            // h = sum_i e_i * gens_i
            let mut acc = ModuleVector::zero(1);
            for (c, t) in e.terms() {
                let q = ModuleVector::monomial_term(
                    c.clone(),
                    MonomialTerm::new(t.mono.clone(), 0),
                    1,
                );
                acc = acc.add(&gens[t.component].mul_poly(&q, &ctx.order), &ctx.order);
            }
            assert_eq!(&acc, h);
        }
    }
}
