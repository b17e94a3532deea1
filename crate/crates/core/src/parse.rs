//! The text grammar for ring headers and module vectors.
//!
//! Vectors are UTF-8 text built from integer literals, variable identifiers,
//! the operators `+ - * ^`, parentheses, and either explicit basis tags
//! `e1, e2, ...` or the bracketed form `[p1, ..., pr]` with one component per
//! slot. `#` starts a comment running to the end of the line; whitespace is
//! insignificant. A ring header line declares the ambient:
//!
//! ```text
//! ring x,y,z; rank 2; field QQ; param t;
//! ```
//!
//! The printer emits integer coefficients only: a vector with fractional
//! coefficients is scaled by the least common multiple of its denominators
//! (the same submodule element up to a unit) before printing.

use crate::error::Error;
use crate::monomial::{Monomial, MonomialTerm};
use crate::ring::RingContext;
use crate::scalar::{FieldSpec, Scalar};
use crate::vector::ModuleVector;
use crate::Result;
use num::bigint::BigInt;
use num::{Integer, One};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        loop {
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
            if self.pos < self.src.len() && self.src[self.pos] == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                return;
            }
        }
    }

    /// Next token with its starting byte offset; `None` at end of input.
    fn next(&mut self) -> Result<Option<(usize, Tok)>> {
        self.skip_ws();
        if self.pos >= self.src.len() {
            return Ok(None);
        }
        let start = self.pos;
        let b = self.src[self.pos];
        let tok = match b {
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                let mut end = self.pos;
                while end < self.src.len() && self.src[end].is_ascii_digit() {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                self.pos = end;
                return Ok(Some((start, Tok::Int(text.parse::<BigInt>().unwrap()))));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let mut end = self.pos;
                while end < self.src.len()
                    && (self.src[end].is_ascii_alphanumeric() || self.src[end] == b'_')
                {
                    end += 1;
                }
                let text = std::str::from_utf8(&self.src[self.pos..end]).unwrap().to_string();
                self.pos = end;
                return Ok(Some((start, Tok::Ident(text))));
            }
            _ => {
                return Err(Error::Parse {
                    offset: start,
                    message: format!("unexpected character `{}`", b as char),
                })
            }
        };
        self.pos += 1;
        Ok(Some((start, tok)))
    }
}

/// An intermediate value: a tag-free polynomial or a full module element.
enum Val {
    Poly(ModuleVector),
    Vector(ModuleVector),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    idx: usize,
    ctx: &'a RingContext,
    end: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &str, ctx: &'a RingContext) -> Result<Parser<'a>> {
        let mut lexer = Lexer::new(src);
        let mut toks = Vec::new();
        while let Some(t) = lexer.next()? {
            toks.push(t);
        }
        Ok(Parser { toks, idx: 0, ctx, end: src.len() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.idx).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.idx).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.idx).map(|(_, t)| t.clone());
        self.idx += 1;
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        let off = self.offset();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            other => Err(Error::Parse {
                offset: off,
                message: format!("expected {:?}, found {:?}", tok, other),
            }),
        }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.to_string() })
    }

    fn one_poly(&self) -> ModuleVector {
        ModuleVector::monomial_term(
            self.ctx.field.one(),
            MonomialTerm::new(Monomial::one(self.ctx.nvars()), 0),
            1,
        )
    }

    /// vector := '[' poly (',' poly)* ']' | poly
    fn vector(&mut self) -> Result<ModuleVector> {
        let v = if self.peek() == Some(&Tok::LBracket) {
            self.bump();
            let mut items = Vec::new();
            loop {
                items.push((self.offset(), self.poly()?));
                match self.bump() {
                    Some(Tok::Comma) => continue,
                    Some(Tok::RBracket) => break,
                    _ => return self.err("expected `,` or `]`"),
                }
            }
            self.bracket_items(items)?
        } else {
            let off = self.offset();
            match self.poly()? {
                Val::Vector(v) => v,
                Val::Poly(p) => self.coerce_rank1(p, off)?,
            }
        };
        if self.idx != self.toks.len() {
            return self.err("trailing input after vector");
        }
        Ok(v)
    }

    fn coerce_rank1(&self, p: ModuleVector, offset: usize) -> Result<ModuleVector> {
        if self.ctx.rank != 1 {
            return Err(Error::Parse {
                offset,
                message: format!(
                    "tag-free polynomial is ambiguous at rank {}; use basis tags or brackets",
                    self.ctx.rank
                ),
            });
        }
        Ok(p)
    }

    fn bracket_items(&self, items: Vec<(usize, Val)>) -> Result<ModuleVector> {
        let r = self.ctx.rank;
        if items.len() == 1 {
            let (off, v) = items.into_iter().next().unwrap();
            return match v {
                Val::Vector(v) => Ok(v),
                Val::Poly(p) => self.coerce_rank1(p, off),
            };
        }
        if items.len() != r {
            return Err(Error::Parse {
                offset: items[0].0,
                message: format!("expected {} components, found {}", r, items.len()),
            });
        }
        let mut terms = Vec::new();
        for (i, (off, v)) in items.into_iter().enumerate() {
            match v {
                Val::Poly(p) => {
                    for (c, t) in p.terms() {
                        terms.push((c.clone(), MonomialTerm::new(t.mono.clone(), i)));
                    }
                }
                Val::Vector(_) => {
                    return Err(Error::Parse {
                        offset: off,
                        message: "bracketed components must be tag-free polynomials".into(),
                    })
                }
            }
        }
        Ok(ModuleVector::normalized(terms, r, &self.ctx.order))
    }

    /// poly := ('+'|'-')? term (('+'|'-') term)*
    fn poly(&mut self) -> Result<Val> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => {
                self.bump();
            }
            Some(Tok::Minus) => {
                self.bump();
                negate = true;
            }
            _ => {}
        }
        let mut acc = self.term(negate)?;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
            let off = self.offset();
            let rhs = self.term(negate)?;
            acc = self.add_vals(acc, rhs, off)?;
        }
        Ok(acc)
    }

    fn add_vals(&self, a: Val, b: Val, offset: usize) -> Result<Val> {
        let ord = &self.ctx.order;
        match (a, b) {
            (Val::Poly(x), Val::Poly(y)) => Ok(Val::Poly(x.add(&y, ord))),
            (Val::Vector(x), Val::Vector(y)) => Ok(Val::Vector(x.add(&y, ord))),
            (Val::Vector(x), Val::Poly(y)) | (Val::Poly(y), Val::Vector(x)) => {
                if y.is_zero() {
                    Ok(Val::Vector(x))
                } else if self.ctx.rank == 1 {
                    Ok(Val::Vector(x.add(&y, ord)))
                } else {
                    Err(Error::Parse {
                        offset,
                        message: "cannot add a tag-free polynomial to a module element".into(),
                    })
                }
            }
        }
    }

    /// term := factor ('*' factor)*
    fn term(&mut self, negate: bool) -> Result<Val> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let off = self.offset();
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Val::Poly(a), Val::Poly(b)) => Val::Poly(a.mul_poly(&b, &self.ctx.order)),
                (Val::Poly(p), Val::Vector(v)) | (Val::Vector(v), Val::Poly(p)) => {
                    Val::Vector(v.mul_poly(&p, &self.ctx.order))
                }
                (Val::Vector(_), Val::Vector(_)) => {
                    return Err(Error::Parse {
                        offset: off,
                        message: "product of two module elements".into(),
                    })
                }
            };
        }
        if negate {
            acc = match acc {
                Val::Poly(p) => Val::Poly(p.neg()),
                Val::Vector(v) => Val::Vector(v.neg()),
            };
        }
        Ok(acc)
    }

    /// factor := atom ('^' uint)?
    fn factor(&mut self) -> Result<Val> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let off = self.offset();
        let exp = match self.bump() {
            Some(Tok::Int(n)) => {
                use num::ToPrimitive;
                n.to_u32().ok_or(Error::Parse {
                    offset: off,
                    message: "exponent too large".into(),
                })?
            }
            _ => return Err(Error::Parse { offset: off, message: "expected exponent".into() }),
        };
        match base {
            Val::Vector(_) => {
                Err(Error::Parse { offset: off, message: "cannot exponentiate a module element".into() })
            }
            Val::Poly(p) => {
                let mut acc = self.one_poly();
                for _ in 0..exp {
                    acc = acc.mul_poly(&p, &self.ctx.order);
                }
                Ok(Val::Poly(acc))
            }
        }
    }

    /// atom := uint | ident | '(' poly ')'
    fn atom(&mut self) -> Result<Val> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Val::Poly(ModuleVector::monomial_term(
                self.ctx.field.from_bigint(&n),
                MonomialTerm::new(Monomial::one(self.ctx.nvars()), 0),
                1,
            ))),
            Some(Tok::Ident(name)) => self.ident(&name, off),
            Some(Tok::LParen) => {
                let inner = self.poly()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            other => Err(Error::Parse {
                offset: off,
                message: format!("expected a number, identifier or `(`, found {:?}", other),
            }),
        }
    }

    fn ident(&mut self, name: &str, offset: usize) -> Result<Val> {
        if let Some(i) = self.ctx.var_index(name) {
            return Ok(Val::Poly(ModuleVector::monomial_term(
                self.ctx.field.one(),
                MonomialTerm::new(Monomial::var(self.ctx.nvars(), i), 0),
                1,
            )));
        }
        if let Some(rest) = name.strip_prefix('e') {
            if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                let k: usize = rest.parse().map_err(|_| Error::Parse {
                    offset,
                    message: "basis index too large".into(),
                })?;
                if k == 0 || k > self.ctx.rank {
                    return Err(Error::ComponentOutOfRange { index: k, rank: self.ctx.rank });
                }
                return Ok(Val::Vector(ModuleVector::monomial_term(
                    self.ctx.field.one(),
                    MonomialTerm::new(Monomial::one(self.ctx.nvars()), k - 1),
                    self.ctx.rank,
                )));
            }
        }
        Err(Error::UnknownVariable { offset, name: name.to_string() })
    }
}

/// Parse one module vector in the given ring context.
pub fn parse_vector(text: &str, ctx: &RingContext) -> Result<ModuleVector> {
    Parser::new(text, ctx)?.vector()
}

/// Parse a ring header such as `ring x,y,z; rank 2; field QQ; param t;`.
pub fn parse_ring_header(line: &str) -> Result<RingContext> {
    let mut vars: Option<Vec<String>> = None;
    let mut rank = 1usize;
    let mut field = FieldSpec::Q;
    let mut param: Option<String> = None;
    for clause in line.split(';') {
        let clause = clause.trim();
        if clause.is_empty() {
            continue;
        }
        let (key, value) = clause.split_once(char::is_whitespace).ok_or(Error::Parse {
            offset: 0,
            message: format!("malformed header clause `{clause}`"),
        })?;
        let value = value.trim();
        match key {
            "ring" => {
                let names: Vec<String> =
                    value.split(',').map(|s| s.trim().to_string()).collect();
                if names.iter().any(|n| n.is_empty()) {
                    return Err(Error::Parse { offset: 0, message: "empty variable name".into() });
                }
                vars = Some(names);
            }
            "rank" => {
                rank = value.parse().map_err(|_| Error::Parse {
                    offset: 0,
                    message: format!("bad rank `{value}`"),
                })?;
            }
            "field" => {
                field = if value == "QQ" {
                    FieldSpec::Q
                } else if let Some(p) = value.strip_prefix("fp:") {
                    FieldSpec::Fp(p.parse().map_err(|_| Error::Parse {
                        offset: 0,
                        message: format!("bad prime `{p}`"),
                    })?)
                } else {
                    return Err(Error::Parse {
                        offset: 0,
                        message: format!("unknown field `{value}` (use QQ or fp:<prime>)"),
                    });
                };
            }
            "param" => param = Some(value.to_string()),
            _ => {
                return Err(Error::Parse {
                    offset: 0,
                    message: format!("unknown header clause `{key}`"),
                })
            }
        }
    }
    let vars = vars.ok_or(Error::Parse { offset: 0, message: "header lacks a ring clause".into() })?;
    let refs: Vec<&str> = vars.iter().map(String::as_str).collect();
    let mut ctx = RingContext::new(&refs, rank, field);
    if let Some(p) = param {
        ctx = ctx.with_param(&p);
    }
    Ok(ctx)
}

/// Scale a rational vector to integer coefficients (identity when already
/// integral, and on prime-field vectors).
pub fn integralize(v: &ModuleVector) -> ModuleVector {
    let mut lcm = BigInt::one();
    for (c, _) in v.terms() {
        if let Scalar::Q(r) = c {
            lcm = lcm.lcm(r.denom());
        }
    }
    if lcm.is_one() {
        return v.clone();
    }
    v.scale(&Scalar::Q(num::rational::BigRational::from_integer(lcm)))
}

fn mono_to_string(m: &Monomial, ctx: &RingContext) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ctx.vars[i].clone()),
            _ => parts.push(format!("{}^{}", ctx.vars[i], e)),
        }
    }
    parts.join("*")
}

/// Render one monomial term, e.g. `y*z*e1`.
pub fn term_to_string(t: &MonomialTerm, ctx: &RingContext) -> String {
    let m = mono_to_string(&t.mono, ctx);
    if ctx.rank == 1 {
        if m.is_empty() {
            "1".to_string()
        } else {
            m
        }
    } else if m.is_empty() {
        format!("e{}", t.component + 1)
    } else {
        format!("{}*e{}", m, t.component + 1)
    }
}

fn poly_to_string(p: &ModuleVector, ctx: &RingContext) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (c, t)) in p.terms().iter().enumerate() {
        let neg = crate::scalar::sign(c) < 0;
        let mag = if neg { c.neg() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let m = mono_to_string(&t.mono, ctx);
        if m.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&m);
        } else {
            out.push_str(&format!("{}*{}", mag, m));
        }
    }
    out
}

/// Render a vector in grammar text. Rank-1 vectors print as bare polynomials;
/// higher ranks use the bracketed component form. Fractional coefficients are
/// cleared first (see module docs).
pub fn vector_to_string(v: &ModuleVector, ctx: &RingContext) -> String {
    let v = integralize(v);
    if ctx.rank == 1 {
        return poly_to_string(&v, ctx);
    }
    let comps: Vec<String> = (0..ctx.rank)
        .map(|i| poly_to_string(&v.component_poly(i), ctx))
        .collect();
    format!("[{}]", comps.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialTerm;

    fn ctx2() -> RingContext {
        RingContext::xyz(2)
    }

    fn mt(ctx: &RingContext, exps: &[u32], comp: usize) -> MonomialTerm {
        let _ = ctx;
        MonomialTerm::new(Monomial::from_exps(exps.to_vec()), comp)
    }

    #[test]
    fn shorthand_and_tagged_forms_agree() {
        let ctx = ctx2();
        let a = parse_vector("[x*e1 + 0*e2]", &ctx).unwrap();
        let b = parse_vector("[x, 0]", &ctx).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.terms().len(), 1);
        assert_eq!(a.terms()[0].1, mt(&ctx, &[1, 0, 0], 0));
    }

    #[test]
    fn parameter_vector() {
        let ctx = ctx2().with_param("t");
        let v = parse_vector("[x + t*(y*z + z^2), 0]", &ctx).unwrap();
        // x e1 + t y z e1 + t z^2 e1
        assert_eq!(v.terms().len(), 3);
        let expect = ModuleVector::normalized(
            vec![
                (FieldSpec::Q.integer(1), mt(&ctx, &[1, 0, 0, 0], 0)),
                (FieldSpec::Q.integer(1), mt(&ctx, &[0, 1, 1, 1], 0)),
                (FieldSpec::Q.integer(1), mt(&ctx, &[0, 0, 2, 1], 0)),
            ],
            2,
            &ctx.order,
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn rank_one_binomial() {
        let ctx = RingContext::xyz(1);
        let v = parse_vector("[y^3 - x*z]", &ctx).unwrap();
        let expect = ModuleVector::normalized(
            vec![
                (FieldSpec::Q.integer(1), mt(&ctx, &[0, 3, 0], 0)),
                (FieldSpec::Q.integer(-1), mt(&ctx, &[1, 0, 1], 0)),
            ],
            1,
            &ctx.order,
        );
        assert_eq!(v, expect);
    }

    #[test]
    fn error_reporting() {
        let ctx = ctx2();
        match parse_vector("[x + q, 0]", &ctx) {
            Err(Error::UnknownVariable { offset, name }) => {
                assert_eq!(name, "q");
                assert_eq!(offset, 5);
            }
            other => panic!("expected unknown variable, got {:?}", other.map(|_| ())),
        }
        match parse_vector("x*e7", &ctx) {
            Err(Error::ComponentOutOfRange { index: 7, rank: 2 }) => {}
            other => panic!("expected component range error, got {:?}", other.map(|_| ())),
        }
        match parse_vector("[x + * y, 0]", &ctx) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 5),
            other => panic!("expected parse error, got {:?}", other.map(|_| ())),
        }
    }

    #[test]
    fn header_round_trip() {
        let ctx = parse_ring_header("ring x,y,z; rank 2; field QQ; param t;").unwrap();
        assert_eq!(ctx.vars, vec!["x", "y", "z", "t"]);
        assert_eq!(ctx.rank, 2);
        assert_eq!(ctx.field, FieldSpec::Q);
        assert_eq!(ctx.param, Some(3));

        let fp = parse_ring_header("ring x,y; field fp:1000003;").unwrap();
        assert_eq!(fp.field, FieldSpec::Fp(1_000_003));
        assert_eq!(fp.rank, 1);
    }

    #[test]
    fn comments_are_whitespace() {
        let ctx = RingContext::xyz(1);
        let v = parse_vector("x # trailing comment\n + y", &ctx).unwrap();
        assert_eq!(v.terms().len(), 2);
    }

    mod roundtrip {
        use super::*;
        use proptest::prelude::*;

        fn arb_vector(ctx: &RingContext) -> impl Strategy<Value = ModuleVector> + '_ {
            proptest::collection::vec(
                (
                    -9i64..10,
                    proptest::collection::vec(0u32..4, ctx.nvars()),
                    0..ctx.rank,
                ),
                0..8,
            )
            .prop_map(move |raw| {
                let terms = raw
                    .into_iter()
                    .map(|(c, exps, comp)| {
                        (
                            ctx.field.integer(c),
                            MonomialTerm::new(Monomial::from_exps(exps), comp),
                        )
                    })
                    .collect();
                ModuleVector::normalized(terms, ctx.rank, &ctx.order)
            })
        }

        proptest! {
            #[test]
            fn parse_print_identity_rank1(v in arb_vector(&RingContext::xyz(1))) {
                let ctx = RingContext::xyz(1);
                let text = vector_to_string(&v, &ctx);
                prop_assert_eq!(parse_vector(&text, &ctx).unwrap(), v);
            }

            #[test]
            fn parse_print_identity_rank3(v in arb_vector(&RingContext::xyz(3))) {
                let ctx = RingContext::xyz(3);
                let text = vector_to_string(&v, &ctx);
                prop_assert_eq!(parse_vector(&text, &ctx).unwrap(), v);
            }

            #[test]
            fn parse_print_identity_fp(v in arb_vector(&RingContext::new(&["x", "y"], 2, FieldSpec::Fp(101)))) {
                let ctx = RingContext::new(&["x", "y"], 2, FieldSpec::Fp(101));
                let text = vector_to_string(&v, &ctx);
                prop_assert_eq!(parse_vector(&text, &ctx).unwrap(), v);
            }
        }
    }
}
