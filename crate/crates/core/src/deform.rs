//! Socle-supported deformations of monomial submodules and the module
//! constructions built on them: one-parameter families, flatness probes,
//! rank and length increases, and quotient-module presentations.
//!
//! A deformation candidate picks subsets `B` of the minimal generators and
//! `S` of the socle with `x_l s ∉ B` for every variable and every `s in S`.
//! The family generated by `b - t sum_s gamma_{b,s} s` is then flat over the
//! affine line. Setting `t = 0` recovers the monomial submodule exactly.

use crate::error::Error;
use crate::groebner::{buchberger, GroebnerBasis};
use crate::modops::{intersect, module_kernel};
use crate::monomial::{Monomial, MonomialTerm};
use crate::quotient::QuotientStructure;
use crate::ring::RingContext;
use crate::scalar::Scalar;
use crate::syzygy::syzygies;
use crate::vector::ModuleVector;
use crate::Result;

/// A socle-supported first-order deformation datum.
#[derive(Clone, Debug)]
pub struct DeformationCandidate {
    pub base: GroebnerBasis,
    pub b_set: Vec<MonomialTerm>,
    pub s_set: Vec<MonomialTerm>,
    /// `gamma[b][s]` pairs off against `b_set` and `s_set`.
    pub gamma: Vec<Vec<Scalar>>,
}

/// The admissibility rule: every variable multiple of a chosen socle element
/// stays inside the submodule generated by the unchosen generators, i.e. it
/// has a divisor among `B_U \ B`. This is what the syzygy-lifting argument
/// needs; in particular no `x_l s` can itself lie in `B`.
pub fn admissible(
    b_set: &[MonomialTerm],
    s_set: &[MonomialTerm],
    all_gens: &[MonomialTerm],
    nvars: usize,
) -> bool {
    s_set.iter().all(|s| {
        (0..nvars).all(|l| {
            let moved = MonomialTerm::new(s.mono.mul_var(l), s.component);
            all_gens
                .iter()
                .any(|g| !b_set.contains(g) && g.divides(&moved))
        })
    })
}

impl DeformationCandidate {
    pub fn new(
        base: GroebnerBasis,
        b_set: Vec<MonomialTerm>,
        s_set: Vec<MonomialTerm>,
        gamma: Vec<Vec<Scalar>>,
        socle: &[MonomialTerm],
    ) -> Result<Self> {
        if !base.is_monomial {
            return Err(Error::InadmissibleCandidate("base must be a monomial submodule".into()));
        }
        let gens: Vec<&MonomialTerm> = base.elems.iter().map(|g| g.lead().unwrap().1).collect();
        if !b_set.iter().all(|b| gens.contains(&b)) {
            return Err(Error::InadmissibleCandidate("B must consist of minimal generators".into()));
        }
        if !s_set.iter().all(|s| socle.contains(s)) {
            return Err(Error::InadmissibleCandidate("S must consist of socle elements".into()));
        }
        if !admissible(&b_set, &s_set, base.nvars) {
            return Err(Error::InadmissibleCandidate(
                "a variable moves a chosen socle element onto a chosen generator".into(),
            ));
        }
        if gamma.len() != b_set.len() || gamma.iter().any(|row| row.len() != s_set.len()) {
            return Err(Error::InadmissibleCandidate("gamma table shape mismatch".into()));
        }
        Ok(DeformationCandidate { base, b_set, s_set, gamma })
    }

    /// The deformation image of a chosen generator, `sum_s gamma_{b,s} s`.
    pub fn phi(&self, b_index: usize) -> ModuleVector {
        let rank = self.base.rank;
        let terms = self
            .s_set
            .iter()
            .zip(&self.gamma[b_index])
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| (c.clone(), s.clone()))
            .collect();
        ModuleVector::normalized(terms, rank, &self.base.order)
    }
}

/// Stream all admissible pairs `(B, S)` with nonempty parts within the size
/// caps, ordered by (|B|, B-combination, |S|, S-combination). The visitor
/// receives index sets into the generator and socle lists; returning `false`
/// stops the stream.
pub fn admissible_pairs(
    base: &GroebnerBasis,
    q: &QuotientStructure,
    max_b: usize,
    max_s: usize,
    visit: &mut impl FnMut(&[usize], &[usize]) -> bool,
) -> bool {
    let gens: Vec<MonomialTerm> =
        base.elems.iter().map(|g| g.lead().unwrap().1.clone()).collect();
    let socle = &q.socle;
    let mut b_combo: Vec<usize> = Vec::new();
    let mut s_combo: Vec<usize> = Vec::new();
    for b_size in 1..=max_b.min(gens.len()) {
        if !combos(gens.len(), b_size, 0, &mut b_combo, &mut |b_idx| {
            let b_terms: Vec<MonomialTerm> = b_idx.iter().map(|&i| gens[i].clone()).collect();
            for s_size in 1..=max_s.min(socle.len()) {
                let keep = combos(socle.len(), s_size, 0, &mut s_combo, &mut |s_idx| {
                    let s_terms: Vec<MonomialTerm> =
                        s_idx.iter().map(|&i| socle[i].clone()).collect();
                    if admissible(&b_terms, &s_terms, base.nvars) {
                        visit(b_idx, s_idx)
                    } else {
                        true
                    }
                });
                if !keep {
                    return false;
                }
            }
            true
        }) {
            return false;
        }
    }
    true
}

fn combos(
    n: usize,
    k: usize,
    start: usize,
    cur: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> bool {
    if cur.len() == k {
        return visit(cur);
    }
    for i in start..n {
        cur.push(i);
        let keep = combos(n, k, i + 1, cur, visit);
        cur.pop();
        if !keep {
            return false;
        }
    }
    true
}

/// A one-parameter family of submodules, linear in the parameter.
#[derive(Clone, Debug)]
pub struct ParametricFamily {
    /// The base context extended by the parameter (last variable).
    pub ctx: RingContext,
    pub generators: Vec<ModuleVector>,
    pub declared_colength: usize,
}

impl ParametricFamily {
    pub fn new(ctx: RingContext, generators: Vec<ModuleVector>, declared_colength: usize) -> Self {
        assert!(ctx.param.is_some(), "family context needs a parameter");
        ParametricFamily { ctx, generators, declared_colength }
    }
}

/// Build the family `(B_U \ B) ∪ { b - t phi(b) }` over the parameter-extended
/// ring, listing generators in the base order.
pub fn build_family(c: &DeformationCandidate, base_ctx: &RingContext) -> Result<ParametricFamily> {
    assert!(base_ctx.param.is_none(), "base context already has a parameter");
    assert_eq!(base_ctx.nvars(), c.base.nvars);
    let ctx = base_ctx.with_param("t");
    let t = Monomial::var(ctx.nvars(), ctx.param.unwrap());
    let d = c.base.colength_or_err()?;
    let mut generators = Vec::with_capacity(c.base.elems.len());
    for g in &c.base.elems {
        let lead = g.lead().unwrap().1.clone();
        let ext = g.extend_vars(1).resorted(&ctx.order);
        let gen = match c.b_set.iter().position(|b| *b == lead) {
            None => ext,
            Some(bi) => {
                let phi = c.phi(bi).extend_vars(1).resorted(&ctx.order);
                ext.sub(&phi.mul_mono(&t), &ctx.order)
            }
        };
        generators.push(gen);
    }
    Ok(ParametricFamily { ctx, generators, declared_colength: d })
}

/// The fiber at `t = value`, as a reduced basis over the base ring.
pub fn specialize(f: &ParametricFamily, value: &Scalar) -> GroebnerBasis {
    let base_ctx = f.ctx.strip_param();
    let gens: Vec<ModuleVector> = f
        .generators
        .iter()
        .map(|g| g.substitute_last_var(value, &base_ctx.order))
        .collect();
    buchberger(&gens, base_ctx.nvars(), base_ctx.rank, base_ctx.field, &base_ctx.order)
}

/// Constant-fiber-length probe: every sample fiber has the declared colength.
/// Samples must be nonempty and include zero.
pub fn flatness_probe(f: &ParametricFamily, samples: &[Scalar]) -> bool {
    assert!(samples.iter().any(|s| s.is_zero()), "samples must include zero");
    samples
        .iter()
        .all(|c| specialize(f, c).colength() == Some(f.declared_colength))
}

/// The first-order condition: for every generating syzygy `P` of the base
/// generators, `sum_b P_b phi(b)` lies in the base submodule. Socle support
/// makes this hold for any coefficient table.
pub fn first_order_lift_holds(c: &DeformationCandidate) -> bool {
    let base = &c.base;
    let gens = &base.elems;
    let sz = syzygies(gens, base.nvars, base.rank, base.field, &base.order);
    for sigma in &sz.syzygies {
        let mut acc = ModuleVector::zero(base.rank);
        for (i, g) in gens.iter().enumerate() {
            let p = sigma.component_poly(i);
            if p.is_zero() {
                continue;
            }
            let lead = g.lead().unwrap().1;
            if let Some(bi) = c.b_set.iter().position(|b| b == lead) {
                acc = acc.add(&c.phi(bi).mul_poly(&p, &base.order), &base.order);
            }
        }
        if !base.normal_form(&acc).is_zero() {
            return false;
        }
    }
    true
}

/// `M ⊕ R ⊂ R^(r+1)`: colength is preserved and the tangent dimension grows
/// by exactly the colength.
pub fn increase_rank(gb: &GroebnerBasis) -> GroebnerBasis {
    let rank = gb.rank + 1;
    let order = gb.order.clone();
    let mut gens: Vec<ModuleVector> = gb.elems.iter().map(|g| g.embed(rank, 0)).collect();
    gens.push(ModuleVector::monomial_term(
        gb.field.one(),
        MonomialTerm::new(Monomial::one(gb.nvars), rank - 1),
        rank,
    ));
    buchberger(&gens, gb.nvars, rank, gb.field, &order)
}

/// Intersect with `m_p ⊕ R^(r-1)` for a point `p` outside the support,
/// adding one disjoint reduced point. The disjointness precondition is
/// enforced by the colength test.
pub fn add_disjoint_point(
    gb: &GroebnerBasis,
    point: &[Scalar],
    ctx: &RingContext,
) -> Result<GroebnerBasis> {
    assert_eq!(point.len(), ctx.nvars());
    assert_eq!(ctx.rank, gb.rank);
    let d = gb.colength_or_err()?;
    let mut n_gens: Vec<ModuleVector> = Vec::new();
    for (i, p_i) in point.iter().enumerate() {
        // (x_i - p_i) e_1
        let var = ModuleVector::monomial_term(
            ctx.field.one(),
            MonomialTerm::new(Monomial::var(ctx.nvars(), i), 0),
            ctx.rank,
        );
        let shift = ModuleVector::monomial_term(
            p_i.clone(),
            MonomialTerm::new(Monomial::one(ctx.nvars()), 0),
            ctx.rank,
        );
        n_gens.push(var.sub(&shift, &ctx.order));
    }
    for j in 1..ctx.rank {
        n_gens.push(ModuleVector::monomial_term(
            ctx.field.one(),
            MonomialTerm::new(Monomial::one(ctx.nvars()), j),
            ctx.rank,
        ));
    }
    let k = intersect(&gb.elems, &n_gens, ctx);
    let new_d = k.colength_or_err()?;
    if new_d != d + 1 {
        return Err(Error::SupportCollision { delta: new_d as i64 - d as i64 });
    }
    Ok(k)
}

/// Present `(J + I)/I` as `R^s / K` with `K` the kernel of `e_i -> g_i` for
/// chosen generators of `J`: the minimal monomial generators when `J` is
/// monomial, the given list verbatim otherwise. Returns `K` and the colength
/// of `R^s/K`.
pub fn ideal_quotient_module(
    j_gens: &[ModuleVector],
    i_gens: &[ModuleVector],
    ctx: &RingContext,
) -> Result<(GroebnerBasis, usize)> {
    assert_eq!(ctx.rank, 1);
    let j_gb = GroebnerBasis::of(j_gens, ctx);
    let targets: Vec<ModuleVector> =
        if j_gb.is_monomial { j_gb.minimal_generators() } else { j_gens.to_vec() };
    let k = module_kernel(&targets, i_gens, 1, ctx);
    let colength = k.colength_or_err()?;
    Ok((k, colength))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_vector;
    use crate::quotient::quotient_structure;
    use crate::scalar::FieldSpec;
    use crate::tangent::tangent_dimension;

    fn gb_of(ctx: &RingContext, gens: &[&str]) -> GroebnerBasis {
        let vs: Vec<ModuleVector> =
            gens.iter().map(|s| parse_vector(s, ctx).unwrap()).collect();
        GroebnerBasis::of(&vs, ctx)
    }

    fn rank2_base() -> (RingContext, GroebnerBasis) {
        let ctx = RingContext::xyz(2);
        let gb = gb_of(
            &ctx,
            &["x*e1", "y^2*e1", "y*z^2*e1", "z^3*e1", "x*e2", "y^2*e2", "y*z*e2", "z^2*e2"],
        );
        (ctx, gb)
    }

    fn term(ctx: &RingContext, text: &str) -> MonomialTerm {
        parse_vector(text, ctx).unwrap().lead().unwrap().1.clone()
    }

    #[test]
    fn admissibility_examples() {
        let (ctx, gb) = rank2_base();
        let b = vec![term(&ctx, "x*e2"), term(&ctx, "y^2*e2"), term(&ctx, "z^2*e2")];
        let s = vec![term(&ctx, "y*z*e1"), term(&ctx, "z^2*e1")];
        assert!(admissible(&b, &s, 3));
        let _ = gb;

        // cross-component pairs can never collide
        let b2 = vec![term(&ctx, "x*e2")];
        let s2 = vec![term(&ctx, "y*z*e1")];
        assert!(admissible(&b2, &s2, 3));

        // one variable: S = {x}, B = {x^2} violates the rule
        let ctx1 = RingContext::new(&["x"], 1, FieldSpec::Q);
        let b3 = vec![term(&ctx1, "x^2")];
        let s3 = vec![term(&ctx1, "x")];
        assert!(!admissible(&b3, &s3, 1));
    }

    #[test]
    fn admissible_pair_stream_contains_the_counterexample_datum() {
        let (ctx, gb) = rank2_base();
        let q = quotient_structure(&gb).unwrap();
        let want_b: Vec<MonomialTerm> =
            vec![term(&ctx, "x*e2"), term(&ctx, "y^2*e2"), term(&ctx, "z^2*e2")];
        let want_s: Vec<MonomialTerm> = vec![term(&ctx, "z^2*e1"), term(&ctx, "y*z*e1")];
        let gens: Vec<MonomialTerm> =
            gb.elems.iter().map(|g| g.lead().unwrap().1.clone()).collect();
        let mut found = false;
        admissible_pairs(&gb, &q, 4, 3, &mut |b_idx, s_idx| {
            let b: Vec<MonomialTerm> = b_idx.iter().map(|&i| gens[i].clone()).collect();
            let s: Vec<MonomialTerm> = s_idx.iter().map(|&i| q.socle[i].clone()).collect();
            let b_match = want_b.iter().all(|t| b.contains(t)) && b.len() == 3;
            let s_match = want_s.iter().all(|t| s.contains(t)) && s.len() == 2;
            if b_match && s_match {
                found = true;
                return false;
            }
            true
        });
        assert!(found);
    }

    fn paper_candidate(ctx: &RingContext, gb: &GroebnerBasis) -> DeformationCandidate {
        let q = quotient_structure(gb).unwrap();
        let b = vec![term(ctx, "x*e2"), term(ctx, "y^2*e2"), term(ctx, "z^2*e2")];
        let s = vec![term(ctx, "y*z*e1"), term(ctx, "z^2*e1")];
        let m1 = FieldSpec::Q.integer(-1);
        let p1 = FieldSpec::Q.integer(1);
        // phi(x e2) = phi(z^2 e2) = -(yz + z^2) e1, phi(y^2 e2) = -(yz - z^2) e1,
        // so the family generators carry plus signs at t
        let gamma = vec![vec![m1.clone(), m1.clone()], vec![m1.clone(), p1], vec![m1.clone(), m1]];
        DeformationCandidate::new(gb.clone(), b, s, gamma, &q.socle).unwrap()
    }

    #[test]
    fn family_of_the_rank_two_counterexample() {
        let (ctx, gb) = rank2_base();
        let cand = paper_candidate(&ctx, &gb);
        assert!(first_order_lift_holds(&cand));
        let fam = build_family(&cand, &ctx).unwrap();
        // generator list carries the displayed deformation, one per base
        // generator (order follows the canonical basis order)
        let expect: std::collections::HashSet<ModuleVector> = [
            "[x, 0]",
            "[y^2, 0]",
            "[y*z^2, 0]",
            "[z^3, 0]",
            "[t*(y*z + z^2), x]",
            "[t*(y*z - z^2), y^2]",
            "[0, y*z]",
            "[t*(y*z + z^2), z^2]",
        ]
        .iter()
        .map(|s| parse_vector(s, &fam.ctx).unwrap())
        .collect();
        let got: std::collections::HashSet<ModuleVector> =
            fam.generators.iter().cloned().collect();
        assert_eq!(got, expect);

        // t = 0 recovers the monomial submodule
        let fiber0 = specialize(&fam, &FieldSpec::Q.zero());
        assert_eq!(fiber0.elems, gb.elems);

        // flat with colength 8 over the sampled line
        let samples: Vec<Scalar> = [0, 1, 2, 5].iter().map(|&v| FieldSpec::Q.integer(v)).collect();
        assert!(flatness_probe(&fam, &samples));

        // the generic fiber violates parity
        let fiber1 = specialize(&fam, &FieldSpec::Q.integer(1));
        let rep = tangent_dimension(&fiber1).unwrap();
        assert_eq!(rep.colength, 8);
        assert_eq!(rep.tangent_dim, 37);
        assert!(!rep.parity_ok);
    }

    #[test]
    fn zero_gamma_family_is_constant() {
        let (ctx, gb) = rank2_base();
        let q = quotient_structure(&gb).unwrap();
        let b = vec![term(&ctx, "x*e2")];
        let s = vec![term(&ctx, "y*z*e1")];
        let cand =
            DeformationCandidate::new(gb.clone(), b, s, vec![vec![FieldSpec::Q.zero()]], &q.socle)
                .unwrap();
        let fam = build_family(&cand, &ctx).unwrap();
        for v in [0, 1, 3] {
            let fiber = specialize(&fam, &FieldSpec::Q.integer(v));
            assert_eq!(fiber.elems, gb.elems);
        }
    }

    #[test]
    fn non_flat_raw_family_fails_the_probe() {
        // (x + t, x) in one variable: unit ideal away from t = 0
        let base = RingContext::new(&["x"], 1, FieldSpec::Q);
        let ctx = base.with_param("t");
        let gens =
            vec![parse_vector("x + t", &ctx).unwrap(), parse_vector("x", &ctx).unwrap()];
        let fam = ParametricFamily::new(ctx, gens, 1);
        let samples: Vec<Scalar> = [0, 1].iter().map(|&v| FieldSpec::Q.integer(v)).collect();
        assert!(!flatness_probe(&fam, &samples));
    }

    #[test]
    fn random_socle_deformations_stay_flat() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20240811);
        let (ctx, gb) = rank2_base();
        let q = quotient_structure(&gb).unwrap();
        let gens: Vec<MonomialTerm> =
            gb.elems.iter().map(|g| g.lead().unwrap().1.clone()).collect();
        let samples: Vec<Scalar> =
            [0, 1, 2, 5].iter().map(|&v| FieldSpec::Q.integer(v)).collect();
        let mut tried = 0;
        admissible_pairs(&gb, &q, 3, 2, &mut |b_idx, s_idx| {
            tried += 1;
            let b: Vec<MonomialTerm> = b_idx.iter().map(|&i| gens[i].clone()).collect();
            let s: Vec<MonomialTerm> = s_idx.iter().map(|&i| q.socle[i].clone()).collect();
            let gamma: Vec<Vec<Scalar>> = b
                .iter()
                .map(|_| {
                    s.iter()
                        .map(|_| {
                            let v: i64 = *[-3, -2, -1, 1, 2, 3]
                                .iter()
                                .nth(rng.gen_range(0..6))
                                .unwrap();
                            FieldSpec::Q.integer(v)
                        })
                        .collect()
                })
                .collect();
            let cand = DeformationCandidate::new(gb.clone(), b, s, gamma, &q.socle).unwrap();
            assert!(first_order_lift_holds(&cand));
            let fam = build_family(&cand, &ctx).unwrap();
            assert!(flatness_probe(&fam, &samples));
            tried < 12
        });
        assert!(tried >= 12);
    }

    #[test]
    fn rank_increase_adds_colength_to_the_dimension() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &["x", "y", "z"]);
        let rep1 = tangent_dimension(&gb).unwrap();
        let up = increase_rank(&gb);
        assert_eq!(up.rank, 2);
        assert_eq!(up.colength(), Some(1));
        let rep2 = tangent_dimension(&up).unwrap();
        assert_eq!(rep2.tangent_dim, rep1.tangent_dim + 1);
        let up2 = increase_rank(&up);
        let rep3 = tangent_dimension(&up2).unwrap();
        assert_eq!(rep3.tangent_dim, rep1.tangent_dim + 2);
    }

    #[test]
    fn disjoint_point_adds_rank_plus_two() {
        let ctx = RingContext::xyz(1);
        let gb = gb_of(&ctx, &["x", "y", "z"]);
        let p: Vec<Scalar> = [1, 1, 1].iter().map(|&v| FieldSpec::Q.integer(v)).collect();
        let k = add_disjoint_point(&gb, &p, &ctx).unwrap();
        assert_eq!(k.colength(), Some(2));
        let rep = tangent_dimension(&k).unwrap();
        assert_eq!(rep.tangent_dim, 6); // 3 + (1 + 2)

        // a colliding point is rejected
        let origin: Vec<Scalar> = vec![FieldSpec::Q.zero(); 3];
        assert!(matches!(
            add_disjoint_point(&gb, &origin, &ctx),
            Err(Error::SupportCollision { .. })
        ));
    }

    #[test]
    fn unit_ideal_quotient_recovers_the_hilbert_point() {
        let ctx = RingContext::xyz(1);
        let i_gens: Vec<ModuleVector> = ["x", "y^2", "y*z", "z^2"]
            .iter()
            .map(|s| parse_vector(s, &ctx).unwrap())
            .collect();
        let one = vec![parse_vector("1", &ctx).unwrap()];
        let (k, d) = ideal_quotient_module(&one, &i_gens, &ctx).unwrap();
        let gb_i = GroebnerBasis::of(&i_gens, &ctx);
        assert_eq!(d, gb_i.colength().unwrap());
        assert_eq!(
            tangent_dimension(&k).unwrap().tangent_dim,
            tangent_dimension(&gb_i).unwrap().tangent_dim
        );
    }
}
