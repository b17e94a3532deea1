//! Sparse elements of the free module `R^r`: sorted term lists with exact
//! coefficients.
//!
//! A vector's term list is sorted strictly descending under the order it was
//! built with, carries no zero coefficients and no duplicate monomial terms.
//! All operations preserve this normal form; binary operations require both
//! operands to be normalised under the same order.

use crate::monomial::{Monomial, MonomialTerm, TermOrder};
use crate::scalar::Scalar;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    terms: Vec<(Scalar, MonomialTerm)>,
    rank: usize,
}

impl ModuleVector {
    pub fn zero(rank: usize) -> Self {
        ModuleVector { terms: Vec::new(), rank }
    }

    /// Build from an arbitrary term list: sorts, merges duplicates and drops
    /// zeros. Idempotent on already-normalised input.
    pub fn normalized(
        mut terms: Vec<(Scalar, MonomialTerm)>,
        rank: usize,
        order: &TermOrder,
    ) -> Self {
        terms.sort_by(|a, b| order.cmp_term(&b.1, &a.1));
        let mut out: Vec<(Scalar, MonomialTerm)> = Vec::with_capacity(terms.len());
        for (c, t) in terms {
            debug_assert!(t.component < rank, "component out of rank");
            if let Some(last) = out.last_mut() {
                if last.1 == t {
                    last.0 = last.0.add(&c);
                    continue;
                }
            }
            out.push((c, t));
        }
        out.retain(|(c, _)| !c.is_zero());
        ModuleVector { terms: out, rank }
    }

    pub fn monomial_term(c: Scalar, t: MonomialTerm, rank: usize) -> Self {
        if c.is_zero() {
            return ModuleVector::zero(rank);
        }
        debug_assert!(t.component < rank);
        ModuleVector { terms: vec![(c, t)], rank }
    }

    /// Wrap a term list already in strictly descending order with no zeros.
    pub fn from_sorted(terms: Vec<(Scalar, MonomialTerm)>, rank: usize) -> Self {
        debug_assert!(terms.iter().all(|(c, _)| !c.is_zero()));
        ModuleVector { terms, rank }
    }

    /// Everything after the lead term.
    pub fn tail(&self) -> ModuleVector {
        ModuleVector { terms: self.terms[1..].to_vec(), rank: self.rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[(Scalar, MonomialTerm)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&Scalar, &MonomialTerm)> {
        self.terms.first().map(|(c, t)| (c, t))
    }

    /// Number of variables, when the vector is nonzero.
    pub fn nvars(&self) -> Option<usize> {
        self.terms.first().map(|(_, t)| t.mono.nvars())
    }

    /// Maximum total degree among terms; zero vector reports 0.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(_, t)| t.degree()).max().unwrap_or(0)
    }

    /// True when every term has the same total degree (the zero vector is
    /// homogeneous).
    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((_, t0)) => {
                let d = t0.degree();
                self.terms.iter().all(|(_, t)| t.degree() == d)
            }
        }
    }

    /// True when the vector is a single term with coefficient one.
    pub fn is_monomial_term(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &ModuleVector, order: &TermOrder) -> ModuleVector {
        debug_assert_eq!(self.rank, other.rank);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match order.cmp_term(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = self.terms[i].0.add(&other.terms[j].0);
                    if !c.is_zero() {
                        out.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        ModuleVector { terms: out, rank: self.rank }
    }

    pub fn neg(&self) -> ModuleVector {
        ModuleVector {
            terms: self.terms.iter().map(|(c, t)| (c.neg(), t.clone())).collect(),
            rank: self.rank,
        }
    }

    pub fn sub(&self, other: &ModuleVector, order: &TermOrder) -> ModuleVector {
        self.add(&other.neg(), order)
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero(self.rank);
        }
        ModuleVector {
            terms: self.terms.iter().map(|(a, t)| (a.mul(c), t.clone())).collect(),
            rank: self.rank,
        }
    }

    /// Multiply by a monomial. Multiplicativity of the order keeps the term
    /// list sorted, so no renormalisation happens.
    pub fn mul_mono(&self, m: &Monomial) -> ModuleVector {
        if m.is_one() {
            return self.clone();
        }
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(c, t)| (c.clone(), MonomialTerm::new(m.mul(&t.mono), t.component)))
                .collect(),
            rank: self.rank,
        }
    }

    /// Multiply by a scalar polynomial given as a rank-1 vector.
    pub fn mul_poly(&self, p: &ModuleVector, order: &TermOrder) -> ModuleVector {
        debug_assert_eq!(p.rank, 1);
        let mut terms = Vec::with_capacity(self.terms.len() * p.terms.len());
        for (pc, pt) in &p.terms {
            for (c, t) in &self.terms {
                terms.push((pc.mul(c), MonomialTerm::new(pt.mono.mul(&t.mono), t.component)));
            }
        }
        ModuleVector::normalized(terms, self.rank, order)
    }

    /// Make the lead coefficient one.
    pub fn monic(&self) -> ModuleVector {
        match self.lead() {
            None => self.clone(),
            Some((c, _)) => {
                if c.is_one() {
                    self.clone()
                } else {
                    self.scale(&c.clone().inv())
                }
            }
        }
    }

    /// The scalar polynomial appearing in one component, as a rank-1 vector.
    pub fn component_poly(&self, component: usize) -> ModuleVector {
        let terms = self
            .terms
            .iter()
            .filter(|(_, t)| t.component == component)
            .map(|(c, t)| (c.clone(), MonomialTerm::new(t.mono.clone(), 0)))
            .collect();
        ModuleVector { terms, rank: 1 }
    }

    /// Reinterpret with a larger rank, shifting components by `offset`.
    pub fn embed(&self, rank: usize, offset: usize) -> ModuleVector {
        debug_assert!(self.rank + offset <= rank);
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(c, t)| (c.clone(), MonomialTerm::new(t.mono.clone(), t.component + offset)))
                .collect(),
            rank,
        }
    }

    /// Keep only terms with component in `[lo, hi)` and shift them down to a
    /// rank `hi - lo` ambient.
    pub fn restrict_components(&self, lo: usize, hi: usize) -> ModuleVector {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .filter(|(_, t)| (lo..hi).contains(&t.component))
                .map(|(c, t)| (c.clone(), MonomialTerm::new(t.mono.clone(), t.component - lo)))
                .collect(),
            rank: hi - lo,
        }
    }

    /// Append `extra` fresh variables with exponent zero to every term.
    pub fn extend_vars(&self, extra: usize) -> ModuleVector {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(c, t)| {
                    (c.clone(), MonomialTerm::new(t.mono.extend_vars(extra), t.component))
                })
                .collect(),
            rank: self.rank,
        }
    }

    /// Drop the last variable, which must be absent from every term.
    pub fn truncate_var(&self) -> ModuleVector {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(c, t)| (c.clone(), MonomialTerm::new(t.mono.truncate_var(), t.component)))
                .collect(),
            rank: self.rank,
        }
    }

    /// True when no term involves the variable `i`.
    pub fn free_of_var(&self, i: usize) -> bool {
        self.terms.iter().all(|(_, t)| t.mono.exp(i) == 0)
    }

    /// Substitute a scalar value for variable `i` and drop it from the
    /// exponent vectors (the variable must be the last one).
    pub fn substitute_last_var(&self, value: &Scalar, order: &TermOrder) -> ModuleVector {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, t) in &self.terms {
            let last = t.mono.nvars() - 1;
            let k = t.mono.exp(last);
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff = coeff.mul(value);
            }
            if coeff.is_zero() {
                continue;
            }
            let mut exps = t.mono.exps().to_vec();
            exps.pop();
            terms.push((coeff, MonomialTerm::new(Monomial::from_exps(exps), t.component)));
        }
        ModuleVector::normalized(terms, self.rank, order)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize, order: &TermOrder) -> ModuleVector {
        let mut terms = Vec::new();
        for (c, t) in &self.terms {
            let e = t.mono.exp(i);
            if e == 0 {
                continue;
            }
            let mut exps = t.mono.exps().to_vec();
            exps[i] -= 1;
            let factor = match c {
                Scalar::Q(_) => crate::scalar::FieldSpec::Q.integer(e as i64),
                Scalar::Fp { p, .. } => crate::scalar::FieldSpec::Fp(*p).integer(e as i64),
            };
            terms.push((c.mul(&factor), MonomialTerm::new(Monomial::from_exps(exps), t.component)));
        }
        ModuleVector::normalized(terms, self.rank, order)
    }

    /// Evaluate at a rational point: each variable `i` takes `point[i]`.
    /// Returns one scalar per component.
    pub fn evaluate(&self, point: &[Scalar], zero: &Scalar) -> Vec<Scalar> {
        let mut out = vec![zero.clone(); self.rank];
        for (c, t) in &self.terms {
            let mut val = c.clone();
            for (i, &e) in t.mono.exps().iter().enumerate() {
                for _ in 0..e {
                    val = val.mul(&point[i]);
                }
            }
            out[t.component] = out[t.component].add(&val);
        }
        out
    }

    /// Re-sort the term list under a different order (ambient unchanged).
    pub fn resorted(&self, order: &TermOrder) -> ModuleVector {
        ModuleVector::normalized(self.terms.clone(), self.rank, order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn term(c: i64, exps: &[u32], comp: usize) -> (Scalar, MonomialTerm) {
        (FieldSpec::Q.integer(c), MonomialTerm::new(Monomial::from_exps(exps.to_vec()), comp))
    }

    #[test]
    fn normalization_merges_and_drops() {
        let ord = TermOrder::degrevlex_pot(2);
        let v = ModuleVector::normalized(
            vec![term(1, &[1, 0], 0), term(2, &[1, 0], 0), term(-3, &[0, 1], 0), term(3, &[0, 1], 0)],
            1,
            &ord,
        );
        assert_eq!(v.terms().len(), 1);
        assert_eq!(v.terms()[0].0, FieldSpec::Q.integer(3));
    }

    #[test]
    fn normalization_is_idempotent() {
        let ord = TermOrder::degrevlex_pot(2);
        let v = ModuleVector::normalized(
            vec![term(1, &[1, 1], 0), term(4, &[2, 0], 1), term(-1, &[0, 0], 0)],
            2,
            &ord,
        );
        let w = ModuleVector::normalized(v.terms().to_vec(), 2, &ord);
        assert_eq!(v, w);
    }

    #[test]
    fn add_cancels() {
        let ord = TermOrder::degrevlex_pot(2);
        let v = ModuleVector::normalized(vec![term(2, &[1, 0], 0), term(1, &[0, 1], 0)], 1, &ord);
        let w = v.neg();
        assert!(v.add(&w, &ord).is_zero());
    }

    #[test]
    fn poly_multiplication() {
        let ord = TermOrder::degrevlex_pot(2);
        // (x + y) * (x - y) = x^2 - y^2
        let p = ModuleVector::normalized(vec![term(1, &[1, 0], 0), term(1, &[0, 1], 0)], 1, &ord);
        let q = ModuleVector::normalized(vec![term(1, &[1, 0], 0), term(-1, &[0, 1], 0)], 1, &ord);
        let r = p.mul_poly(&q, &ord);
        let expect =
            ModuleVector::normalized(vec![term(1, &[2, 0], 0), term(-1, &[0, 2], 0)], 1, &ord);
        assert_eq!(r, expect);
    }

    #[test]
    fn substitute_last_var_specialises() {
        let ord3 = TermOrder::degrevlex_pot(3);
        let ord2 = TermOrder::degrevlex_pot(2);
        // x + 2 t^2 at t = 3 -> x + 18
        let v = ModuleVector::normalized(
            vec![term(1, &[1, 0, 0], 0), term(2, &[0, 0, 2], 0)],
            1,
            &ord3,
        );
        let s = v.substitute_last_var(&FieldSpec::Q.integer(3), &ord2);
        let expect = ModuleVector::normalized(
            vec![(FieldSpec::Q.integer(1), MonomialTerm::new(Monomial::from_exps(vec![1, 0]), 0)),
                 (FieldSpec::Q.integer(18), MonomialTerm::new(Monomial::from_exps(vec![0, 0]), 0))],
            1,
            &ord2,
        );
        assert_eq!(s, expect);
    }
}
