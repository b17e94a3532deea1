use quotca_core::deform::{admissible_pairs, build_family, DeformationCandidate, specialize};
use quotca_core::enumerate::for_each_submodule;
use quotca_core::groebner::GroebnerBasis;
use quotca_core::monomial::MonomialTerm;
use quotca_core::parse::{term_to_string, vector_to_string};
use quotca_core::quotient::quotient_structure;
use quotca_core::ring::RingContext;
use quotca_core::scalar::FieldSpec;
use quotca_core::vector::ModuleVector;

fn main() {
    let field = FieldSpec::Q;
    let mut chart_idx = 0usize;
    let mut stop = false;
    for_each_submodule(3, 2, 8, &mut |tuple| {
        let ctx = RingContext::new(&["x", "y", "z"], 2, field);
        let mut gens: Vec<ModuleVector> = Vec::new();
        for (comp, s) in tuple.iter().enumerate() {
            for m in s.generators() {
                gens.push(ModuleVector::monomial_term(field.one(), MonomialTerm::new(m, comp), 2));
            }
        }
        let base = GroebnerBasis::of(&gens, &ctx);
        let q = quotient_structure(&base).unwrap();
        let leads: Vec<MonomialTerm> = base.elems.iter().map(|g| g.lead().unwrap().1.clone()).collect();
        let mut cand_idx = 0usize;
        admissible_pairs(&base, &q, 4, 3, &mut |b_idx, s_idx| {
            let b: Vec<MonomialTerm> = b_idx.iter().map(|&i| leads[i].clone()).collect();
            let s: Vec<MonomialTerm> = s_idx.iter().map(|&i| q.socle[i].clone()).collect();
            // gamma all ones for the probe
            let gamma = vec![vec![field.integer(1); s.len()]; b.len()];
            let cand = DeformationCandidate::new(base.clone(), b.clone(), s.clone(), gamma, &q.socle).unwrap();
            let fam = build_family(&cand, &ctx).unwrap();
            let fiber = specialize(&fam, &field.integer(1));
            let d = fiber.colength();
            if d != Some(8) {
                println!("chart {chart_idx} candidate {cand_idx}: colength {:?}", d);
                println!("base gens:");
                for g in &base.elems { println!("  {}", vector_to_string(g, &ctx)); }
                println!("B: {:?}", b.iter().map(|t| term_to_string(t, &ctx)).collect::<Vec<_>>());
                println!("S: {:?}", s.iter().map(|t| term_to_string(t, &ctx)).collect::<Vec<_>>());
                println!("family:");
                for g in &fam.generators { println!("  {}", vector_to_string(g, &fam.ctx)); }
                println!("fiber GB:");
                for g in &fiber.elems { println!("  {}", vector_to_string(g, &ctx)); }
                stop = true;
                return false;
            }
            cand_idx += 1;
            cand_idx < 200
        });
        chart_idx += 1;
        !stop
    });
    if !stop { println!("all flat"); }
}
