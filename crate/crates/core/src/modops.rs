//! Module operations through elimination: intersections, colon modules, and
//! kernels of maps to finite quotients.
//!
//! Intersections use the auxiliary-variable trick `w A + (1 - w) B` with a
//! block order making `w` dominate; kernels of `R^r -> R^s/W` use the graph
//! module in `R^(s+r)` under position-over-term, whose second-block elements
//! are exactly the kernel.

use crate::groebner::{buchberger, GroebnerBasis};
use crate::monomial::{Monomial, MonomialTerm};
use crate::ring::RingContext;
use crate::vector::ModuleVector;

/// Reduced basis of `A ∩ B` for submodules of the context's free module.
pub fn intersect(a: &[ModuleVector], b: &[ModuleVector], ctx: &RingContext) -> GroebnerBasis {
    let n = ctx.nvars();
    let w = n; // index of the auxiliary variable
    let elim_ctx = ctx.with_elim_var("_w");
    let w_mono = Monomial::var(n + 1, w);

    let mut gens: Vec<ModuleVector> = Vec::with_capacity(a.len() + b.len());
    for v in a {
        // w * v
        gens.push(v.extend_vars(1).mul_mono(&w_mono).resorted(&elim_ctx.order));
    }
    for v in b {
        // (1 - w) * v
        let ext = v.extend_vars(1).resorted(&elim_ctx.order);
        let wv = ext.mul_mono(&w_mono);
        gens.push(ext.sub(&wv, &elim_ctx.order));
    }
    let gb = buchberger(&gens, n + 1, ctx.rank, ctx.field, &elim_ctx.order);
    let kept: Vec<ModuleVector> = gb
        .elems
        .iter()
        .filter(|v| v.free_of_var(w))
        .map(|v| v.truncate_var().resorted(&ctx.order))
        .collect();
    buchberger(&kept, n, ctx.rank, ctx.field, &ctx.order)
}

/// Exact division of a vector by a scalar polynomial (every component must be
/// divisible).
fn exact_div(v: &ModuleVector, f: &ModuleVector, ctx: &RingContext) -> ModuleVector {
    let monic_f = f.monic();
    let scale = f.lead().unwrap().0.clone().inv();
    let f_basis = buchberger(&[monic_f], ctx.nvars(), 1, ctx.field, &ctx.order);
    let mut out = ModuleVector::zero(v.rank());
    for comp in 0..v.rank() {
        let p = v.component_poly(comp);
        if p.is_zero() {
            continue;
        }
        let (q, rem) = f_basis.divide(&p);
        assert!(rem.is_zero(), "inexact vector division");
        let q0 = q.into_iter().next().unwrap().scale(&scale);
        for (c, t) in q0.terms() {
            out = out.add(
                &ModuleVector::monomial_term(
                    c.clone(),
                    MonomialTerm::new(t.mono.clone(), comp),
                    v.rank(),
                ),
                &ctx.order,
            );
        }
    }
    out
}

/// The colon module `(U : J) = { m in R^r : J m ⊆ U }`, computed per
/// generator `f` of `J` as `(U ∩ f R^r) / f` and intersected over the `f`.
pub fn colon(u: &GroebnerBasis, j_gens: &[ModuleVector], ctx: &RingContext) -> GroebnerBasis {
    let mut acc: Option<GroebnerBasis> = None;
    for f in j_gens {
        debug_assert_eq!(f.rank(), 1);
        if f.is_zero() {
            continue;
        }
        // f * R^r
        let f_module: Vec<ModuleVector> = (0..ctx.rank)
            .map(|comp| {
                let mut v = ModuleVector::zero(ctx.rank);
                for (c, t) in f.terms() {
                    v = v.add(
                        &ModuleVector::monomial_term(
                            c.clone(),
                            MonomialTerm::new(t.mono.clone(), comp),
                            ctx.rank,
                        ),
                        &ctx.order,
                    );
                }
                v
            })
            .collect();
        let inter = intersect(&u.elems, &f_module, ctx);
        let quotient: Vec<ModuleVector> =
            inter.elems.iter().map(|v| exact_div(v, f, ctx)).collect();
        let this = buchberger(&quotient, ctx.nvars(), ctx.rank, ctx.field, &ctx.order);
        acc = Some(match acc {
            None => this,
            Some(prev) => intersect(&prev.elems, &this.elems, ctx),
        });
    }
    acc.expect("colon by an ideal with no nonzero generators")
}

/// Kernel of the map `R^r -> R^s / W` sending the `i`-th basis vector to
/// `targets[i]`. `targets` live in `R^s`, `w_gens` generate `W ⊆ R^s`, and
/// the result is a reduced basis in `R^r`.
pub fn module_kernel(
    targets: &[ModuleVector],
    w_gens: &[ModuleVector],
    s: usize,
    ctx_source: &RingContext,
) -> GroebnerBasis {
    let r = targets.len();
    let n = ctx_source.nvars();
    let field = ctx_source.field;
    let big_rank = s + r;
    let big_ctx = ctx_source.with_rank(big_rank);
    let mut gens: Vec<ModuleVector> = Vec::new();
    for (i, t) in targets.iter().enumerate() {
        debug_assert_eq!(t.rank(), s);
        let graph = t.embed(big_rank, 0).add(
            &ModuleVector::monomial_term(
                field.one(),
                MonomialTerm::new(Monomial::one(n), s + i),
                big_rank,
            ),
            &big_ctx.order,
        );
        gens.push(graph);
    }
    for w in w_gens {
        debug_assert_eq!(w.rank(), s);
        gens.push(w.embed(big_rank, 0));
    }
    let gb = buchberger(&gens, n, big_rank, field, &big_ctx.order);
    let kernel: Vec<ModuleVector> = gb
        .elems
        .iter()
        .filter(|v| v.terms().iter().all(|(_, t)| t.component >= s))
        .map(|v| v.restrict_components(s, big_rank))
        .collect();
    buchberger(&kernel, n, r, field, &ctx_source.with_rank(r).order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_vector;

    fn vs(ctx: &RingContext, gens: &[&str]) -> Vec<ModuleVector> {
        gens.iter().map(|s| parse_vector(s, ctx).unwrap()).collect()
    }

    #[test]
    fn principal_ideals_intersect_in_the_product() {
        let ctx = RingContext::new(&["x", "y"], 1, crate::scalar::FieldSpec::Q);
        let gb = intersect(&vs(&ctx, &["x"]), &vs(&ctx, &["y"]), &ctx);
        assert_eq!(gb.elems.len(), 1);
        assert_eq!(gb.elems[0], parse_vector("x*y", &ctx).unwrap());
    }

    #[test]
    fn disjoint_points_intersect_with_added_colengths() {
        let ctx = RingContext::xyz(1);
        let origin = vs(&ctx, &["x", "y", "z"]);
        let point = vs(&ctx, &["x - 1", "y", "z"]);
        let gb = intersect(&origin, &point, &ctx);
        assert_eq!(gb.colength(), Some(2));
        // contained in both
        let a = crate::groebner::GroebnerBasis::of(&origin, &ctx);
        let b = crate::groebner::GroebnerBasis::of(&point, &ctx);
        for g in &gb.elems {
            assert!(a.contains(g));
            assert!(b.contains(g));
        }
    }

    #[test]
    fn colon_of_x2_by_x() {
        let ctx = RingContext::new(&["x"], 1, crate::scalar::FieldSpec::Q);
        let u = crate::groebner::GroebnerBasis::of(&vs(&ctx, &["x^2"]), &ctx);
        let c = colon(&u, &vs(&ctx, &["x"]), &ctx);
        assert_eq!(c.elems.len(), 1);
        assert_eq!(c.elems[0], parse_vector("x", &ctx).unwrap());
    }

    #[test]
    fn colon_of_maximal_ideal_by_itself_is_everything() {
        let ctx = RingContext::new(&["x", "y"], 1, crate::scalar::FieldSpec::Q);
        let gens = vs(&ctx, &["x", "y"]);
        let u = crate::groebner::GroebnerBasis::of(&gens, &ctx);
        let c = colon(&u, &gens, &ctx);
        // 1 * x and 1 * y both land in (x, y)
        assert_eq!(c.elems.len(), 1);
        assert!(c.elems[0].is_monomial_term());
        assert!(c.elems[0].lead().unwrap().1.mono.is_one());
    }

    #[test]
    fn colon_contains_socle_perturbation_terms() {
        // (J : (x,y,z)) for J = (x,(y,z)^2)^2 + (y^3) contains every term
        // available for perturbing the generator y^3
        let ctx = RingContext::xyz(1);
        let j = vs(
            &ctx,
            &["x^2", "x*y^2", "y^3", "x*y*z", "x*z^2", "y^2*z^2", "y*z^3", "z^4"],
        );
        let u = crate::groebner::GroebnerBasis::of(&j, &ctx);
        let c = colon(&u, &vs(&ctx, &["x", "y", "z"]), &ctx);
        for term in ["y^2*z", "y*z^2", "z^3", "x*y", "x*z"] {
            let v = parse_vector(term, &ctx).unwrap();
            assert!(c.contains(&v), "{term} should lie in the colon");
            assert!(!u.contains(&v), "{term} should not lie in J itself");
        }
    }

    #[test]
    fn kernel_of_map_to_a_point() {
        let ctx = RingContext::new(&["x"], 1, crate::scalar::FieldSpec::Q);
        // R -> R/(x), e1 -> 1
        let k = module_kernel(&vs(&ctx, &["1"]), &vs(&ctx, &["x"]), 1, &ctx);
        assert_eq!(k.elems.len(), 1);
        assert_eq!(k.elems[0], parse_vector("x", &ctx).unwrap());
    }

    #[test]
    fn kernel_presentation_of_the_binomial_quotient() {
        // K = ker(R^2 -> R/I), e1 -> x, e2 -> y, I = (x,(y,z)^2)^2 + (y^3 - xz)
        let ctx = RingContext::xyz(1);
        let i_gens = vs(
            &ctx,
            &[
                "x^2", "x*y^2", "x*y*z", "x*z^2", "y^4", "y^3*z", "y^2*z^2", "y*z^3", "z^4",
                "y^3 - x*z",
            ],
        );
        let k = module_kernel(&vs(&ctx, &["x", "y"]), &i_gens, 1, &ctx);
        let ctx2 = RingContext::xyz(2);
        let listed = vs(
            &ctx2,
            &[
                "x*e1",
                "y^2*e1",
                "y*z*e1",
                "z^2*e1",
                "x*e2 - y*e1",
                "y^2*e2 - z*e1",
                "y*z^2*e2",
                "z^3*e2",
            ],
        );
        let listed_gb = crate::groebner::GroebnerBasis::of(&listed, &ctx2);
        // same submodule of R^2
        assert_eq!(k.elems, listed_gb.elems);
        assert_eq!(k.colength(), Some(8));
    }
}
