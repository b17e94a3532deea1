//! Ring contexts: variables, module rank, coefficient field, optional
//! deformation parameter, and the active term order.

use crate::monomial::TermOrder;
use crate::scalar::FieldSpec;

/// Everything needed to interpret a [`crate::vector::ModuleVector`]: the
/// ambient polynomial ring, the free-module rank, and the term order.
///
/// When a deformation parameter is declared it is an ordinary commuting
/// variable placed last in declaration order (hence lowest under the default
/// degrevlex order); families are linear in it and all Groebner computations
/// happen after specialising it to an actual field value.
#[derive(Clone, Debug)]
pub struct RingContext {
    pub vars: Vec<String>,
    pub rank: usize,
    pub field: FieldSpec,
    /// Index of the parameter variable, when one is declared.
    pub param: Option<usize>,
    pub order: TermOrder,
}

impl RingContext {
    pub fn new(vars: &[&str], rank: usize, field: FieldSpec) -> Self {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let order = TermOrder::degrevlex_pot(vars.len());
        RingContext { vars, rank, field, param: None, order }
    }

    /// Standard three-variable context `x, y, z` over Q.
    pub fn xyz(rank: usize) -> Self {
        RingContext::new(&["x", "y", "z"], rank, FieldSpec::Q)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Append a parameter variable (conventionally `t`).
    pub fn with_param(&self, name: &str) -> Self {
        assert!(self.param.is_none(), "parameter already declared");
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let order = TermOrder {
            perm: (0..vars.len()).collect(),
            ..self.order.clone()
        };
        RingContext {
            vars,
            rank: self.rank,
            field: self.field,
            param: Some(self.vars.len()),
            order,
        }
    }

    /// Drop a declared parameter variable (after specialisation).
    pub fn strip_param(&self) -> Self {
        assert!(self.param == Some(self.vars.len() - 1), "parameter must be last");
        let vars = self.vars[..self.vars.len() - 1].to_vec();
        let order = TermOrder {
            perm: (0..vars.len()).collect(),
            ..self.order.clone()
        };
        RingContext { vars, rank: self.rank, field: self.field, param: None, order }
    }

    /// The base-ring variable indices, i.e. everything except the parameter.
    pub fn base_vars(&self) -> Vec<usize> {
        (0..self.nvars()).filter(|i| Some(*i) != self.param).collect()
    }

    pub fn with_rank(&self, rank: usize) -> Self {
        RingContext { rank, ..self.clone() }
    }

    /// Context with one auxiliary elimination variable appended and a block
    /// order making it dominate.
    pub fn with_elim_var(&self, name: &str) -> Self {
        let mut vars = self.vars.clone();
        vars.push(name.to_string());
        let order = TermOrder::eliminate_last_var(vars.len());
        RingContext { vars, rank: self.rank, field: self.field, param: self.param, order }
    }
}
