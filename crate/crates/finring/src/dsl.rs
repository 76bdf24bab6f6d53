//! Construction DSL: a recursive-descent parser for ring expressions and a
//! bottom-up evaluator.
//!
//! Grammar (case-sensitive names, whitespace-insensitive):
//!
//! ```text
//! expr  := Z(n) | GF(p,k[,irr]) | Prod(expr,expr[,...]) | M(n,expr)
//!        | T(n,expr) | Sn(n,expr) | Ks(expr,s) | MnS(n,expr,s)
//!        | TrivExt(expr[,k]) | GR(expr,group) | PolyQuot(expr,n)
//!        | SkewPolyQuot(expr,n,alpha) | Tnm(n,m,expr) | Snm(n,m,expr)
//!        | Un(n,expr) | Anm(n,m,expr) | Bnm(n,m,expr)
//!        | Corner(expr,e) | Quot(expr,[gens])
//! group := C(n) | GxG(group,group)
//! alpha := frobenius | pow(j) | explicit([...])
//! irr   := [c0,c1,...]          (little-endian, monic)
//! ```
//!
//! `s`, `e` and `gens` are raw element indices into the inner ring.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::construct::{self, ConstructError};
use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Zmod(u64),
    Gf {
        p: u64,
        k: u64,
        irr: Option<Vec<u64>>,
    },
    Prod(Vec<Expr>),
    Matrix(u64, Box<Expr>),
    Triangular(u64, Box<Expr>),
    ConstDiag(u64, Box<Expr>),
    Ks(Box<Expr>, u64),
    MnS(u64, Box<Expr>, u64),
    TrivExt(Box<Expr>, u64),
    GroupRing(Box<Expr>, GroupExpr),
    PolyQuot(Box<Expr>, u64),
    SkewPolyQuot(Box<Expr>, u64, AlphaExpr),
    Tnm(u64, u64, Box<Expr>),
    Snm(u64, u64, Box<Expr>),
    Un(u64, Box<Expr>),
    Anm(u64, u64, Box<Expr>),
    Bnm(u64, u64, Box<Expr>),
    Corner(Box<Expr>, u64),
    Quot(Box<Expr>, Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(u64),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlphaExpr {
    Frobenius,
    Pow(u64),
    Explicit(Vec<u64>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Zmod(n) => write!(f, "Z({n})"),
            Expr::Gf { p, k, irr: None } => write!(f, "GF({p},{k})"),
            Expr::Gf { p, k, irr: Some(c) } => {
                write!(f, "GF({p},{k},[{}])", join(c))
            }
            Expr::Prod(xs) => {
                let parts: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "Prod({})", parts.join(","))
            }
            Expr::Matrix(n, r) => write!(f, "M({n},{r})"),
            Expr::Triangular(n, r) => write!(f, "T({n},{r})"),
            Expr::ConstDiag(n, r) => write!(f, "Sn({n},{r})"),
            Expr::Ks(r, s) => write!(f, "Ks({r},{s})"),
            Expr::MnS(n, r, s) => write!(f, "MnS({n},{r},{s})"),
            Expr::TrivExt(r, k) => write!(f, "TrivExt({r},{k})"),
            Expr::GroupRing(r, g) => write!(f, "GR({r},{g})"),
            Expr::PolyQuot(r, n) => write!(f, "PolyQuot({r},{n})"),
            Expr::SkewPolyQuot(r, n, a) => write!(f, "SkewPolyQuot({r},{n},{a})"),
            Expr::Tnm(n, m, r) => write!(f, "Tnm({n},{m},{r})"),
            Expr::Snm(n, m, r) => write!(f, "Snm({n},{m},{r})"),
            Expr::Un(n, r) => write!(f, "Un({n},{r})"),
            Expr::Anm(n, m, r) => write!(f, "Anm({n},{m},{r})"),
            Expr::Bnm(n, m, r) => write!(f, "Bnm({n},{m},{r})"),
            Expr::Corner(r, e) => write!(f, "Corner({r},{e})"),
            Expr::Quot(r, gens) => write!(f, "Quot({r},[{}])", join(gens)),
        }
    }
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C({n})"),
            GroupExpr::Product(a, b) => write!(f, "GxG({a},{b})"),
        }
    }
}

impl fmt::Display for AlphaExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaExpr::Frobenius => write!(f, "frobenius"),
            AlphaExpr::Pow(j) => write!(f, "pow({j})"),
            AlphaExpr::Explicit(v) => write!(f, "explicit([{}])", join(v)),
        }
    }
}

fn join(v: &[u64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Offsets are 1-based byte positions into the input text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: expected {expected}, found {found}")]
    Syntax {
        offset: usize,
        expected: String,
        found: String,
    },
    #[error("arity error at offset {offset}: {message}")]
    Arity { offset: usize, message: String },
    #[error("integer range error at offset {offset}: {what} must be at least {min}, got {got}")]
    Range {
        offset: usize,
        what: &'static str,
        got: u64,
        min: u64,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::Syntax { offset, .. }
            | ParseError::Arity { offset, .. }
            | ParseError::Range { offset, .. } => *offset,
        }
    }
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        Parser { text, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn found_here(&self) -> String {
        match self.text.as_bytes().get(self.pos) {
            None => "end of input".to_string(),
            Some(&b) => format!("'{}'", b as char),
        }
    }

    fn syntax(&self, expected: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            offset: self.pos + 1,
            expected: expected.into(),
            found: self.found_here(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.text.as_bytes().get(self.pos) == Some(&(c as u8)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(format!("'{c}'")))
        }
    }

    fn peek_is(&mut self, c: char) -> bool {
        self.skip_ws();
        self.text.as_bytes().get(self.pos) == Some(&(c as u8))
    }

    fn ident(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self
            .text
            .as_bytes()
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("a constructor name"));
        }
        Ok((start, &self.text[start..self.pos]))
    }

    fn integer(&mut self, what: &'static str, min: u64) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        let mut any = false;
        while let Some(&b) = self.text.as_bytes().get(self.pos) {
            if !b.is_ascii_digit() {
                break;
            }
            any = true;
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add((b - b'0') as u64))
                .ok_or(ParseError::Range {
                    offset: start + 1,
                    what,
                    got: u64::MAX,
                    min,
                })?;
            self.pos += 1;
        }
        if !any {
            return Err(self.syntax("an integer"));
        }
        if value < min {
            return Err(ParseError::Range {
                offset: start + 1,
                what,
                got: value,
                min,
            });
        }
        Ok(value)
    }

    fn int_list(&mut self, what: &'static str) -> Result<Vec<u64>, ParseError> {
        self.expect('[')?;
        let mut items = Vec::new();
        if self.peek_is(']') {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.push(self.integer(what, 0)?);
            if self.peek_is(',') {
                self.pos += 1;
                continue;
            }
            self.expect(']')?;
            return Ok(items);
        }
    }

    fn group(&mut self) -> Result<GroupExpr, ParseError> {
        let (off, name) = self.ident()?;
        match name {
            "C" => {
                self.expect('(')?;
                let n = self.integer("group order", 1)?;
                self.expect(')')?;
                Ok(GroupExpr::Cyclic(n))
            }
            "GxG" => {
                self.expect('(')?;
                let a = self.group()?;
                self.expect(',')?;
                let b = self.group()?;
                self.expect(')')?;
                Ok(GroupExpr::Product(Box::new(a), Box::new(b)))
            }
            other => Err(ParseError::Syntax {
                offset: off + 1,
                expected: "a group constructor (C, GxG)".into(),
                found: format!("'{other}'"),
            }),
        }
    }

    fn alpha(&mut self) -> Result<AlphaExpr, ParseError> {
        let (off, name) = self.ident()?;
        match name {
            "frobenius" => Ok(AlphaExpr::Frobenius),
            "pow" => {
                self.expect('(')?;
                let j = self.integer("power", 1)?;
                self.expect(')')?;
                Ok(AlphaExpr::Pow(j))
            }
            "explicit" => {
                self.expect('(')?;
                let v = self.int_list("map entry")?;
                self.expect(')')?;
                Ok(AlphaExpr::Explicit(v))
            }
            other => Err(ParseError::Syntax {
                offset: off + 1,
                expected: "an endomorphism (frobenius, pow, explicit)".into(),
                found: format!("'{other}'"),
            }),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let (off, name) = self.ident()?;
        match name {
            "Z" => {
                self.expect('(')?;
                let n = self.integer("modulus", 2)?;
                self.expect(')')?;
                Ok(Expr::Zmod(n))
            }
            "GF" => {
                self.expect('(')?;
                let p = self.integer("characteristic", 2)?;
                self.expect(',')?;
                let k = self.integer("field degree", 1)?;
                let irr = if self.peek_is(',') {
                    self.pos += 1;
                    Some(self.int_list("coefficient")?)
                } else {
                    None
                };
                self.expect(')')?;
                Ok(Expr::Gf { p, k, irr })
            }
            "Prod" => {
                self.expect('(')?;
                let mut xs = vec![self.expr()?];
                while self.peek_is(',') {
                    self.pos += 1;
                    xs.push(self.expr()?);
                }
                self.expect(')')?;
                if xs.len() < 2 {
                    return Err(ParseError::Arity {
                        offset: off + 1,
                        message: "Prod needs at least two factors".into(),
                    });
                }
                Ok(Expr::Prod(xs))
            }
            "M" => {
                self.expect('(')?;
                let n = self.integer("matrix size", 1)?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Matrix(n, Box::new(r)))
            }
            "T" => {
                self.expect('(')?;
                let n = self.integer("matrix size", 1)?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Triangular(n, Box::new(r)))
            }
            "Sn" => {
                self.expect('(')?;
                let n = self.integer("matrix size", 1)?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(')')?;
                Ok(Expr::ConstDiag(n, Box::new(r)))
            }
            "Ks" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                let s = self.integer("element index", 0)?;
                self.expect(')')?;
                Ok(Expr::Ks(Box::new(r), s))
            }
            "MnS" => {
                self.expect('(')?;
                let n = self.integer("matrix size", 2)?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(',')?;
                let s = self.integer("element index", 0)?;
                self.expect(')')?;
                Ok(Expr::MnS(n, Box::new(r), s))
            }
            "TrivExt" => {
                self.expect('(')?;
                let r = self.expr()?;
                let k = if self.peek_is(',') {
                    self.pos += 1;
                    self.integer("module rank", 1)?
                } else {
                    1
                };
                self.expect(')')?;
                Ok(Expr::TrivExt(Box::new(r), k))
            }
            "GR" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                let g = self.group()?;
                self.expect(')')?;
                Ok(Expr::GroupRing(Box::new(r), g))
            }
            "PolyQuot" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                let n = self.integer("truncation degree", 1)?;
                self.expect(')')?;
                Ok(Expr::PolyQuot(Box::new(r), n))
            }
            "SkewPolyQuot" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                let n = self.integer("truncation degree", 1)?;
                self.expect(',')?;
                let a = self.alpha()?;
                self.expect(')')?;
                Ok(Expr::SkewPolyQuot(Box::new(r), n, a))
            }
            "Tnm" | "Snm" | "Anm" | "Bnm" => {
                let min = if name == "Anm" || name == "Bnm" { 2 } else { 1 };
                self.expect('(')?;
                let n = self.integer("block index n", min)?;
                self.expect(',')?;
                let m = self.integer("block index m", min)?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(')')?;
                Ok(match name {
                    "Tnm" => Expr::Tnm(n, m, Box::new(r)),
                    "Snm" => Expr::Snm(n, m, Box::new(r)),
                    "Anm" => Expr::Anm(n, m, Box::new(r)),
                    _ => Expr::Bnm(n, m, Box::new(r)),
                })
            }
            "Un" => {
                self.expect('(')?;
                let n = self.integer("matrix size", 2)?;
                self.expect(',')?;
                let r = self.expr()?;
                self.expect(')')?;
                Ok(Expr::Un(n, Box::new(r)))
            }
            "Corner" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                let e = self.integer("element index", 0)?;
                self.expect(')')?;
                Ok(Expr::Corner(Box::new(r), e))
            }
            "Quot" => {
                self.expect('(')?;
                let r = self.expr()?;
                self.expect(',')?;
                let gens = self.int_list("generator index")?;
                self.expect(')')?;
                Ok(Expr::Quot(Box::new(r), gens))
            }
            other => Err(ParseError::Syntax {
                offset: off + 1,
                expected: "a ring constructor".into(),
                found: format!("'{other}'"),
            }),
        }
    }
}

/// Parses one ring expression; trailing garbage is a syntax error.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text);
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.syntax("end of input"));
    }
    Ok(expr)
}

#[derive(Debug, Error)]
pub enum EvalError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error("{what} index {index} out of range for ring of order {order}")]
    ElementOutOfRange {
        what: &'static str,
        index: u64,
        order: usize,
    },
}

/// Upper bound on the carrier size, computed symbolically without building
/// anything (corner and quotient orders are bounded by the inner order).
pub fn estimated_order(expr: &Expr) -> u128 {
    fn powed(base: u128, exp: u64) -> u128 {
        if exp > 64 {
            return u128::MAX;
        }
        base.checked_pow(exp as u32).unwrap_or(u128::MAX)
    }
    fn group_order(g: &GroupExpr) -> u128 {
        match g {
            GroupExpr::Cyclic(n) => *n as u128,
            GroupExpr::Product(a, b) => group_order(a).saturating_mul(group_order(b)),
        }
    }
    match expr {
        Expr::Zmod(n) => *n as u128,
        Expr::Gf { p, k, .. } => powed(*p as u128, *k),
        Expr::Prod(xs) => xs
            .iter()
            .map(estimated_order)
            .fold(1u128, |a, b| a.saturating_mul(b)),
        Expr::Matrix(n, r) | Expr::MnS(n, r, _) => {
            powed(estimated_order(r), n.saturating_mul(*n))
        }
        Expr::Triangular(n, r) => powed(estimated_order(r), n.saturating_mul(n + 1) / 2),
        Expr::ConstDiag(n, r) => powed(estimated_order(r), 1 + n.saturating_mul(n - 1) / 2),
        Expr::Ks(r, _) => powed(estimated_order(r), 4),
        Expr::TrivExt(r, k) => powed(estimated_order(r), k + 1),
        Expr::GroupRing(r, g) => {
            let go = group_order(g);
            if go > 64 {
                return u128::MAX;
            }
            powed(estimated_order(r), go as u64)
        }
        Expr::PolyQuot(r, n) | Expr::SkewPolyQuot(r, n, _) => powed(estimated_order(r), *n),
        Expr::Tnm(n, m, r) | Expr::Anm(n, m, r) => powed(estimated_order(r), n + m - 1),
        Expr::Snm(n, m, r) | Expr::Bnm(n, m, r) => powed(estimated_order(r), n.saturating_mul(*m)),
        Expr::Un(n, r) => powed(estimated_order(r), 2 * n - 2),
        Expr::Corner(r, _) | Expr::Quot(r, _) => estimated_order(r),
    }
}

/// Builds the group named by a group expression.
pub fn eval_group_expr(g: &GroupExpr) -> Result<construct::FiniteGroup, ConstructError> {
    match g {
        GroupExpr::Cyclic(n) => construct::cyclic_group(*n as usize),
        GroupExpr::Product(a, b) => Ok(construct::group_product(
            &eval_group_expr(a)?,
            &eval_group_expr(b)?,
        )),
    }
}

fn element_index(what: &'static str, index: u64, ring: &FiniteRing) -> Result<Elem, EvalError> {
    if index >= ring.order() as u64 {
        return Err(EvalError::ElementOutOfRange {
            what,
            index,
            order: ring.order(),
        });
    }
    Ok(index as Elem)
}

/// Bottom-up construction; the order cap is enforced symbolically before any
/// table is allocated.
pub fn eval_expr(expr: &Expr) -> Result<Arc<FiniteRing>, EvalError> {
    let estimate = estimated_order(expr);
    if estimate > construct::order_cap() as u128 {
        return Err(ConstructError::CapExceeded {
            label: expr.to_string(),
            order: estimate,
            cap: construct::order_cap(),
        }
        .into());
    }
    match expr {
        Expr::Zmod(n) => Ok(construct::zmod(*n as usize)?),
        Expr::Gf { p, k, irr } => Ok(construct::galois_field(*p, *k as u32, irr.clone())?),
        Expr::Prod(xs) => {
            let factors: Vec<Arc<FiniteRing>> = xs
                .iter()
                .map(eval_expr)
                .collect::<Result<_, _>>()?;
            Ok(construct::direct_product(&factors)?)
        }
        Expr::Matrix(n, r) => Ok(construct::matrix_ring(*n as usize, &eval_expr(r)?)?),
        Expr::Triangular(n, r) => Ok(construct::upper_triangular(*n as usize, &eval_expr(r)?)?),
        Expr::ConstDiag(n, r) => {
            Ok(construct::constant_diag_triangular(*n as usize, &eval_expr(r)?)?)
        }
        Expr::Ks(r, s) => {
            let inner = eval_expr(r)?;
            let s = element_index("central element", *s, &inner)?;
            Ok(construct::formal_ks(&inner, s)?)
        }
        Expr::MnS(n, r, s) => {
            let inner = eval_expr(r)?;
            let s = element_index("central element", *s, &inner)?;
            Ok(construct::formal_mns(&inner, *n as usize, s)?)
        }
        Expr::TrivExt(r, k) => Ok(construct::trivial_extension(&eval_expr(r)?, *k as usize)?),
        Expr::GroupRing(r, g) => {
            let inner = eval_expr(r)?;
            let group = eval_group_expr(g)?;
            Ok(construct::group_ring(&inner, &group)?.ring)
        }
        Expr::PolyQuot(r, n) => Ok(construct::poly_quot(&eval_expr(r)?, *n as usize)?),
        Expr::SkewPolyQuot(r, n, a) => {
            let inner = eval_expr(r)?;
            let map: Vec<Elem> = match a {
                AlphaExpr::Frobenius => construct::frobenius_map(&inner),
                AlphaExpr::Pow(j) => construct::power_map(&inner, *j as u32),
                AlphaExpr::Explicit(v) => {
                    let mut out = Vec::with_capacity(v.len());
                    for &x in v {
                        out.push(element_index("map entry", x, &inner)?);
                    }
                    out
                }
            };
            Ok(construct::skew_poly_quot(&inner, *n as usize, &map)?)
        }
        Expr::Tnm(n, m, r) => {
            Ok(construct::family_tnm(*n as usize, *m as usize, &eval_expr(r)?)?)
        }
        Expr::Snm(n, m, r) => {
            Ok(construct::family_snm(*n as usize, *m as usize, &eval_expr(r)?)?)
        }
        Expr::Un(n, r) => Ok(construct::family_un(*n as usize, &eval_expr(r)?)?),
        Expr::Anm(n, m, r) => {
            Ok(construct::family_anm(*n as usize, *m as usize, &eval_expr(r)?)?)
        }
        Expr::Bnm(n, m, r) => {
            Ok(construct::family_bnm(*n as usize, *m as usize, &eval_expr(r)?)?)
        }
        Expr::Corner(r, e) => {
            let inner = eval_expr(r)?;
            let e = element_index("idempotent", *e, &inner)?;
            Ok(construct::corner_ring(&inner, e)?.ring)
        }
        Expr::Quot(r, gens) => {
            let inner = eval_expr(r)?;
            let mut g = Vec::with_capacity(gens.len());
            for &x in gens {
                g.push(element_index("generator", x, &inner)?);
            }
            let ideal = crate::structure::ideal_closure(&inner, &g);
            Ok(construct::quotient_ring(&inner, &ideal)?.0)
        }
    }
}

/// Parse and evaluate in one step.
pub fn eval_str(text: &str) -> Result<Arc<FiniteRing>, EvalStrError> {
    let expr = parse_expr(text).map_err(EvalStrError::Parse)?;
    eval_expr(&expr).map_err(EvalStrError::Eval)
}

#[derive(Debug, Error)]
pub enum EvalStrError {
    #[error(transparent)]
    Parse(ParseError),
    #[error(transparent)]
    Eval(EvalError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_expressions() {
        assert_eq!(
            parse_expr("GR(Z(4),C(2))").unwrap(),
            Expr::GroupRing(Box::new(Expr::Zmod(4)), GroupExpr::Cyclic(2))
        );
        assert_eq!(
            parse_expr("Ks(Z(4),2)").unwrap(),
            Expr::Ks(Box::new(Expr::Zmod(4)), 2)
        );
        assert_eq!(
            parse_expr(" T( 2 , Z(2) ) ").unwrap(),
            Expr::Triangular(2, Box::new(Expr::Zmod(2)))
        );
    }

    #[test]
    fn reports_offsets() {
        let err = parse_expr("T(2,Z(2)").unwrap_err();
        match err {
            ParseError::Syntax { offset, ref expected, .. } => {
                assert_eq!(offset, 9);
                assert!(expected.contains(')'), "expected set: {expected}");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_expr("Zx(4)"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_expr("Z(1)"), Err(ParseError::Range { .. })));
        assert!(matches!(
            parse_expr("Prod(Z(2))"),
            Err(ParseError::Arity { .. })
        ));
        assert!(matches!(
            parse_expr("Z(2) trailing"),
            Err(ParseError::Syntax { .. })
        ));
    }

    #[test]
    fn eval_builds_rings() {
        assert_eq!(eval_str("M(2,Z(2))").unwrap().order(), 16);
        assert_eq!(eval_str("Quot(Z(4),[2])").unwrap().order(), 2);
        assert_eq!(eval_str("Corner(M(2,Z(2)),8)").unwrap().order(), 2);
        assert_eq!(eval_str("SkewPolyQuot(GF(2,2),2,frobenius)").unwrap().order(), 16);
    }

    #[test]
    fn eval_reports_construction_failures() {
        // the identity of M2(Z2) is central; a transvection is not
        let err = eval_str("Ks(M(2,Z(2)),3)").unwrap_err();
        assert!(matches!(
            err,
            EvalStrError::Eval(EvalError::Construct(ConstructError::NotCentral(3)))
        ));
        // cap estimated before construction: 4^9 = 262144
        assert!(matches!(
            eval_str("MnS(3,Z(4),1)"),
            Err(EvalStrError::Eval(EvalError::Construct(
                ConstructError::CapExceeded { .. }
            )))
        ));
        assert!(matches!(
            eval_str("Corner(Z(4),5)"),
            Err(EvalStrError::Eval(EvalError::ElementOutOfRange { .. }))
        ));
    }

    #[test]
    fn mns_matches_matrix_ring_via_identity_map() {
        let mns = eval_str("MnS(2,Z(2),1)").unwrap();
        let m = eval_str("M(2,Z(2))").unwrap();
        let order = mns.order() as u32;
        let h = crate::ring::RingHom::new(mns, m, (0..order).collect()).unwrap();
        assert!(h.is_isomorphism());
    }

    // AST generator for round-trip checks (kept small so evaluation stays
    // cheap when reused elsewhere).
    fn arb_group() -> impl Strategy<Value = GroupExpr> {
        let leaf = (1u64..5).prop_map(GroupExpr::Cyclic);
        leaf.prop_recursive(2, 4, 2, |inner| {
            (inner.clone(), inner)
                .prop_map(|(a, b)| GroupExpr::Product(Box::new(a), Box::new(b)))
        })
    }

    fn arb_alpha() -> impl Strategy<Value = AlphaExpr> {
        prop_oneof![
            Just(AlphaExpr::Frobenius),
            (1u64..4).prop_map(AlphaExpr::Pow),
            proptest::collection::vec(0u64..8, 0..5).prop_map(AlphaExpr::Explicit),
        ]
    }

    fn arb_expr() -> impl Strategy<Value = Expr> {
        let leaf = prop_oneof![
            (2u64..10).prop_map(Expr::Zmod),
            (2u64..4, 1u64..3).prop_map(|(p, k)| Expr::Gf { p, k, irr: None }),
            Just(Expr::Gf {
                p: 2,
                k: 2,
                irr: Some(vec![1, 1, 1])
            }),
        ];
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop_oneof![
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Expr::Prod),
                (1u64..4, inner.clone()).prop_map(|(n, r)| Expr::Matrix(n, Box::new(r))),
                (1u64..4, inner.clone()).prop_map(|(n, r)| Expr::Triangular(n, Box::new(r))),
                (1u64..4, inner.clone()).prop_map(|(n, r)| Expr::ConstDiag(n, Box::new(r))),
                (inner.clone(), 0u64..4).prop_map(|(r, s)| Expr::Ks(Box::new(r), s)),
                (2u64..4, inner.clone(), 0u64..4)
                    .prop_map(|(n, r, s)| Expr::MnS(n, Box::new(r), s)),
                (inner.clone(), 1u64..3).prop_map(|(r, k)| Expr::TrivExt(Box::new(r), k)),
                (inner.clone(), arb_group()).prop_map(|(r, g)| Expr::GroupRing(Box::new(r), g)),
                (inner.clone(), 1u64..4).prop_map(|(r, n)| Expr::PolyQuot(Box::new(r), n)),
                (inner.clone(), 1u64..3, arb_alpha())
                    .prop_map(|(r, n, a)| Expr::SkewPolyQuot(Box::new(r), n, a)),
                (1u64..3, 1u64..3, inner.clone()).prop_map(|(n, m, r)| Expr::Tnm(n, m, Box::new(r))),
                (1u64..3, 1u64..3, inner.clone()).prop_map(|(n, m, r)| Expr::Snm(n, m, Box::new(r))),
                (2u64..5, inner.clone()).prop_map(|(n, r)| Expr::Un(n, Box::new(r))),
                (2u64..4, 2u64..4, inner.clone()).prop_map(|(n, m, r)| Expr::Anm(n, m, Box::new(r))),
                (2u64..4, 2u64..4, inner.clone()).prop_map(|(n, m, r)| Expr::Bnm(n, m, Box::new(r))),
                (inner.clone(), 0u64..8).prop_map(|(r, e)| Expr::Corner(Box::new(r), e)),
                (inner, proptest::collection::vec(0u64..8, 0..3))
                    .prop_map(|(r, g)| Expr::Quot(Box::new(r), g)),
            ]
        })
    }

    proptest! {
        #[test]
        fn display_parse_roundtrip(expr in arb_expr()) {
            let text = expr.to_string();
            let back = parse_expr(&text).unwrap();
            prop_assert_eq!(back, expr);
        }
    }
}
