//! Monomials, monomial terms and global term orders on free modules.
//!
//! Components are 0-based internally; the text grammar and all displays use
//! the 1-based tags `e1, e2, ...`.

use std::cmp::Ordering;

/// A monomial in a fixed number of variables, with cached total degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), other.exps.len(), "variable count mismatch");
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut m = self.clone();
        m.exps[i] += 1;
        m.deg += 1;
        m
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len()
            && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, when divisible.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps = other
            .exps
            .iter()
            .zip(&self.exps)
            .map(|(b, a)| b - a)
            .collect();
        Some(Monomial { exps, deg: other.deg - self.deg })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: Vec<u32> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        Monomial::from_exps(exps)
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Total degree restricted to a subset of variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i]).sum()
    }

    /// Append extra variables with exponent zero (ambient extension).
    pub fn extend_vars(&self, extra: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.extend(std::iter::repeat(0).take(extra));
        Monomial { exps, deg: self.deg }
    }

    /// Drop the trailing variable, which must have exponent zero.
    pub fn truncate_var(&self) -> Monomial {
        assert_eq!(*self.exps.last().unwrap(), 0, "truncating a live variable");
        let mut exps = self.exps.clone();
        exps.pop();
        Monomial { exps, deg: self.deg }
    }
}

/// A monomial times a basis vector of the free module `R^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialTerm {
    pub mono: Monomial,
    pub component: usize,
}

impl MonomialTerm {
    pub fn new(mono: Monomial, component: usize) -> Self {
        MonomialTerm { mono, component }
    }

    pub fn divides(&self, other: &MonomialTerm) -> bool {
        self.component == other.component && self.mono.divides(&other.mono)
    }

    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }
}

/// Comparison rule for monomials with the same component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonoCmp {
    /// Graded reverse lexicographic.
    DegRevLex,
    /// Graded lexicographic.
    GrLex,
}

/// How components interact with the monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentPrec {
    /// Position over term, with `e_1 > e_2 > ...`.
    PositionOverTerm,
    /// Term over position; ties broken by `e_1 > e_2 > ...`.
    TermOverPosition,
}

/// A global term order on monomial terms: a monomial comparison, a module
/// extension rule, a variable priority permutation, and an optional leading
/// elimination block (the first `elim` permuted variables dominate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub mono: MonoCmp,
    pub module: ComponentPrec,
    /// `perm[j]` is the variable compared at priority `j`.
    pub perm: Vec<usize>,
    /// Number of leading permuted variables forming a dominating block.
    pub elim: usize,
}

impl TermOrder {
    /// The default order: degrevlex, position over term.
    pub fn degrevlex_pot(nvars: usize) -> Self {
        TermOrder {
            mono: MonoCmp::DegRevLex,
            module: ComponentPrec::PositionOverTerm,
            perm: (0..nvars).collect(),
            elim: 0,
        }
    }

    pub fn grlex_pot(nvars: usize) -> Self {
        TermOrder {
            mono: MonoCmp::GrLex,
            module: ComponentPrec::PositionOverTerm,
            perm: (0..nvars).collect(),
            elim: 0,
        }
    }

    pub fn degrevlex_top(nvars: usize) -> Self {
        TermOrder {
            mono: MonoCmp::DegRevLex,
            module: ComponentPrec::TermOverPosition,
            perm: (0..nvars).collect(),
            elim: 0,
        }
    }

    /// Block order eliminating the last variable: that variable dominates,
    /// ties broken degrevlex on the remaining ones in declaration order.
    pub fn eliminate_last_var(nvars: usize) -> Self {
        let mut perm = vec![nvars - 1];
        perm.extend(0..nvars - 1);
        TermOrder {
            mono: MonoCmp::DegRevLex,
            module: ComponentPrec::PositionOverTerm,
            perm,
            elim: 1,
        }
    }

    fn cmp_block(&self, a: &Monomial, b: &Monomial, block: &[usize]) -> Ordering {
        let da = a.degree_in(block);
        let db = b.degree_in(block);
        if da != db {
            return da.cmp(&db);
        }
        match self.mono {
            MonoCmp::DegRevLex => {
                // last differing variable: smaller exponent wins
                for &i in block.iter().rev() {
                    let (ea, eb) = (a.exp(i), b.exp(i));
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                }
                Ordering::Equal
            }
            MonoCmp::GrLex => {
                for &i in block {
                    let (ea, eb) = (a.exp(i), b.exp(i));
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Compare two monomials. `Greater` means the first is larger.
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), self.perm.len());
        debug_assert_eq!(b.nvars(), self.perm.len());
        if self.elim > 0 {
            let c = self.cmp_block(a, b, &self.perm[..self.elim]);
            if c != Ordering::Equal {
                return c;
            }
            self.cmp_block(a, b, &self.perm[self.elim..])
        } else {
            self.cmp_block(a, b, &self.perm)
        }
    }

    /// Compare two monomial terms. Total and multiplicative; `Equal` only for
    /// identical terms.
    pub fn cmp_term(&self, a: &MonomialTerm, b: &MonomialTerm) -> Ordering {
        match self.module {
            ComponentPrec::PositionOverTerm => {
                if a.component != b.component {
                    // e_1 > e_2 > ...: smaller index is greater
                    return b.component.cmp(&a.component);
                }
                self.cmp_mono(&a.mono, &b.mono)
            }
            ComponentPrec::TermOverPosition => {
                let c = self.cmp_mono(&a.mono, &b.mono);
                if c != Ordering::Equal {
                    return c;
                }
                b.component.cmp(&a.component)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn monomial_products() {
        // x*y = xy; 1*z^4 = z^4; y^2 z * y z^2 = y^3 z^3
        assert_eq!(m(&[1, 0, 0]).mul(&m(&[0, 1, 0])), m(&[1, 1, 0]));
        assert_eq!(m(&[0, 0, 0]).mul(&m(&[0, 0, 4])), m(&[0, 0, 4]));
        assert_eq!(m(&[0, 2, 1]).mul(&m(&[0, 1, 2])), m(&[0, 3, 3]));
    }

    #[test]
    fn term_divisibility() {
        let x_e1 = MonomialTerm::new(m(&[1, 0, 0]), 0);
        let x2y_e1 = MonomialTerm::new(m(&[2, 1, 0]), 0);
        let x2y_e2 = MonomialTerm::new(m(&[2, 1, 0]), 1);
        assert!(x_e1.divides(&x2y_e1));
        assert!(!x_e1.divides(&x2y_e2));
        let y2_e2 = MonomialTerm::new(m(&[0, 2, 0]), 1);
        let y_e2 = MonomialTerm::new(m(&[0, 1, 0]), 1);
        assert!(!y2_e2.divides(&y_e2));
    }

    #[test]
    fn degrevlex_pot_examples() {
        let ord = TermOrder::degrevlex_pot(3);
        // component dominates under POT
        let x_e1 = MonomialTerm::new(m(&[1, 0, 0]), 0);
        let y_e2 = MonomialTerm::new(m(&[0, 1, 0]), 1);
        assert_eq!(ord.cmp_term(&x_e1, &y_e2), Ordering::Greater);
        // x^2 > xy in degrevlex
        assert_eq!(ord.cmp_mono(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
        // equal terms compare equal
        assert_eq!(ord.cmp_term(&x_e1, &x_e1), Ordering::Equal);
        // standard degrevlex fact: x y z > z^3? deg equal; last var z: exps 1 vs 3 -> xyz greater
        assert_eq!(ord.cmp_mono(&m(&[1, 1, 1]), &m(&[0, 0, 3])), Ordering::Greater);
    }

    #[test]
    fn elimination_block_dominates() {
        // variables x, y, w with w eliminated
        let ord = TermOrder::eliminate_last_var(3);
        // w > x^5 y^5
        assert_eq!(ord.cmp_mono(&m(&[0, 0, 1]), &m(&[5, 5, 0])), Ordering::Greater);
        // within w-free monomials: degrevlex on x, y
        assert_eq!(ord.cmp_mono(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(Monomial::from_exps)
    }

    fn arb_term() -> impl Strategy<Value = MonomialTerm> {
        (arb_mono(), 0usize..3).prop_map(|(m, c)| MonomialTerm::new(m, c))
    }

    proptest! {
        #[test]
        fn order_is_total_and_multiplicative(a in arb_term(), b in arb_term(), c in arb_term(), f in arb_mono()) {
            for ord in [TermOrder::degrevlex_pot(3), TermOrder::grlex_pot(3), TermOrder::degrevlex_top(3), TermOrder::eliminate_last_var(3)] {
                // antisymmetry
                prop_assert_eq!(ord.cmp_term(&a, &b), ord.cmp_term(&b, &a).reverse());
                // EQ iff identical
                prop_assert_eq!(ord.cmp_term(&a, &b) == Ordering::Equal, a == b);
                // transitivity
                if ord.cmp_term(&a, &b) == Ordering::Less && ord.cmp_term(&b, &c) == Ordering::Less {
                    prop_assert_eq!(ord.cmp_term(&a, &c), Ordering::Less);
                }
                // multiplicative
                let fa = MonomialTerm::new(f.mul(&a.mono), a.component);
                let fb = MonomialTerm::new(f.mul(&b.mono), b.component);
                prop_assert_eq!(ord.cmp_term(&fa, &fb), ord.cmp_term(&a, &b));
                // global: 1 is minimal within each component
                let one = MonomialTerm::new(Monomial::one(3), a.component);
                let am = MonomialTerm::new(a.mono.clone(), a.component);
                if am != one {
                    prop_assert_eq!(ord.cmp_term(&one, &am), Ordering::Less);
                }
            }
        }
    }
}
