//! Surface syntax for scalar expressions.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary ('*' unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' INT)?
//! atom    := NUM | SYMBOL | FUNC '(' expr ')' | '(' expr ')'
//! NUM     := INT | INT '/' INT
//! SYMBOL  := k1 | k2 | f1 | f2 | sigma | c
//! FUNC    := e1 | e2 | e3 | L
//! ```
//!
//! `L` is the Laplacian of the total space. An equation is two expressions
//! joined by `=`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::{Base, Frame, Poly, Rational};
use crate::derivation::RewriteSystem;
use crate::error::{Error, Result};

pub const GRAMMAR: &str = "\
expr    := term (('+' | '-') term)*
term    := unary ('*' unary)*
unary   := '-' unary | power
power   := atom ('^' INT)?
atom    := NUM | SYMBOL | FUNC '(' expr ')' | '(' expr ')'
NUM     := INT | INT '/' INT
SYMBOL  := k1 | k2 | f1 | f2 | sigma | c
FUNC    := e1 | e2 | e3 | L        (L is the Laplacian)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    Sym(Base),
    Derive(Frame, Box<Expr>),
    Laplacian(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// Evaluates to a polynomial normalized under `rs`.
    pub fn to_poly(&self, rs: &RewriteSystem) -> Poly {
        let p = match self {
            Expr::Num(q) => Poly::constant(q.clone()),
            Expr::Sym(b) => Poly::base(*b),
            Expr::Derive(i, x) => rs.derive(&x.to_poly(rs), *i),
            Expr::Laplacian(x) => rs.laplacian(&x.to_poly(rs)),
            Expr::Neg(x) => -x.to_poly(rs),
            Expr::Add(a, b) => &a.to_poly(rs) + &b.to_poly(rs),
            Expr::Sub(a, b) => &a.to_poly(rs) - &b.to_poly(rs),
            Expr::Mul(a, b) => &a.to_poly(rs) * &b.to_poly(rs),
            Expr::Pow(a, n) => a.to_poly(rs).pow(*n),
        };
        rs.normalize(&p)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(q) if q.is_negative() => 3,
            _ => 5,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            f.write_str("(")?;
            self.write_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Sym(b) => write!(f, "{b}"),
            Expr::Derive(i, x) => {
                write!(f, "{i}(")?;
                x.write_at(f, 0)?;
                f.write_str(")")
            }
            Expr::Laplacian(x) => {
                f.write_str("L(")?;
                x.write_at(f, 0)?;
                f.write_str(")")
            }
            Expr::Neg(x) => {
                f.write_str("-")?;
                x.write_at(f, 3)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write_at(f, 2)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 2)?;
                f.write_str("*")?;
                b.write_at(f, 3)
            }
            Expr::Pow(a, n) => {
                a.write_at(f, 5)?;
                write!(f, "^{n}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `lhs = rhs`; a bare expression is read as `expr = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Option<Expr>,
}

impl Equation {
    /// `lhs - rhs` normalized under `rs`.
    pub fn to_poly(&self, rs: &RewriteSystem) -> Poly {
        match &self.rhs {
            Some(r) => rs.normalize(&(&self.lhs.to_poly(rs) - &r.to_poly(rs))),
            None => self.lhs.to_poly(rs),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rhs {
            Some(r) => write!(f, "{} = {}", self.lhs, r),
            None => write!(f, "{}", self.lhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Equals,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(q) => write!(f, "number {q}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Equals => f.write_str("'='"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
    // integer literal without a denominator, usable as an exponent
    integral: bool,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let ch = chars[i];
        let (l0, c0) = (line, col);
        if ch == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: l0, column: c0, integral: false });
            i += 1;
            col += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: String = chars[start..i].iter().collect();
            let mut value = Rational::from_integer(num.parse::<BigInt>().expect("digits"));
            let mut integral = true;
            if i < chars.len() && chars[i] == '/' {
                let dstart = i + 1;
                let mut j = dstart;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == dstart {
                    return Err(syntax(l0, c0 + (i - start) + 1, "expected a denominator after '/'"));
                }
                let den: String = chars[dstart..j].iter().collect();
                let den = den.parse::<BigInt>().expect("digits");
                if den.is_zero() {
                    return Err(syntax(l0, c0, "zero denominator"));
                }
                value = Rational::new(value.numer().clone(), den);
                integral = false;
                i = j;
            }
            col += i - start;
            out.push(Spanned { tok: Tok::Num(value), line: l0, column: c0, integral });
            continue;
        }
        if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            let name: String = chars[start..i].iter().collect();
            out.push(Spanned { tok: Tok::Ident(name), line: l0, column: c0, integral: false });
            continue;
        }
        return Err(syntax(l0, c0, format!("unexpected character '{ch}'")));
    }
    out.push(Spanned { tok: Tok::End, line, column: col, integral: false });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        let t = self.bump();
        if t.tok == tok {
            Ok(())
        } else {
            Err(syntax(t.line, t.column, format!("expected {tok}, found {}", t.tok)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match (&t.tok, t.integral) {
            (Tok::Num(q), true) => {
                let n = u32::try_from(q.numer())
                    .map_err(|_| syntax(t.line, t.column, "exponent too large"))?;
                Ok(Expr::Pow(Box::new(base), n))
            }
            _ => Err(syntax(
                t.line,
                t.column,
                format!("expected a nonnegative integer exponent, found {}", t.tok),
            )),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Num(q) => Ok(Expr::Num(q)),
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                if let Some(b) = Base::from_name(&name) {
                    return Ok(Expr::Sym(b));
                }
                let func = match name.as_str() {
                    "e1" => Some(Frame::E1),
                    "e2" => Some(Frame::E2),
                    "e3" => Some(Frame::E3),
                    "L" => None,
                    _ => {
                        return Err(Error::UnknownSymbol {
                            name,
                            line: t.line,
                            column: t.column,
                        })
                    }
                };
                self.expect(Tok::LParen)?;
                let arg = Box::new(self.expr()?);
                self.expect(Tok::RParen)?;
                Ok(match func {
                    Some(i) => Expr::Derive(i, arg),
                    None => Expr::Laplacian(arg),
                })
            }
            other => Err(syntax(t.line, t.column, format!("unexpected {other}"))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        let t = self.peek().clone();
        if t.tok == Tok::End {
            Ok(())
        } else {
            Err(syntax(t.line, t.column, format!("unexpected {}", t.tok)))
        }
    }
}

pub fn parse_expression(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_equation(src: &str) -> Result<Equation> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let lhs = p.expr()?;
    let rhs = if p.peek().tok == Tok::Equals {
        p.bump();
        Some(p.expr()?)
    } else {
        None
    };
    p.finish()?;
    Ok(Equation { lhs, rhs })
}

/// Builds an expression tree whose printed form is the canonical rendering of `p`.
pub fn expr_of_poly(p: &Poly) -> Expr {
    // re-parsing the canonical text keeps the two renderings identical
    parse_expression(&p.to_string()).expect("canonical polynomial text parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expression("-k1^2*f2 - c + 1").unwrap();
        assert_eq!(e.to_string(), "-k1^2*f2 - c + 1");
        match e {
            Expr::Add(lhs, _) => assert!(matches!(*lhs, Expr::Sub(..))),
            _ => panic!("expected a sum"),
        }
        let neg = parse_expression("-k1^2").unwrap();
        assert!(matches!(neg, Expr::Neg(ref x) if matches!(**x, Expr::Pow(..))));
    }

    #[test]
    fn minimal_parentheses() {
        for src in ["(k1 - f2)*(k1 + f2)", "k1 - (f2 - c)", "(-k1)^2", "-(k1*f2)", "(k1^2)^3"] {
            let e = parse_expression(src).unwrap();
            assert_eq!(e.to_string(), src);
        }
        assert_eq!(parse_expression("((k1))*(f2)").unwrap().to_string(), "k1*f2");
    }

    #[test]
    fn rational_literals() {
        let e = parse_expression("1/2*k1 - 3/4").unwrap();
        assert_eq!(e.to_string(), "1/2*k1 - 3/4");
        let p = e.to_poly(&RewriteSystem::generic());
        assert_eq!(p.coefficient(&crate::algebra::Monomial::one()), rat(-3, 4));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_expression("e4(k1)") {
            Err(Error::UnknownSymbol { name, line, column }) => {
                assert_eq!((name.as_str(), line, column), ("e4", 1, 1));
            }
            other => panic!("{other:?}"),
        }
        match parse_expression("k1 +\n  * f2") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
        assert!(parse_expression("k1^1/2").is_err());
        assert!(parse_expression("k1^-1").is_err());
        assert!(parse_expression("1/0").is_err());
        assert!(parse_expression("e1 k1").is_err());
    }

    #[test]
    fn omega_normal_forms() {
        let rs = RewriteSystem::omega();
        assert!(parse_expression("e1(sigma) - 2*k1*sigma").unwrap().to_poly(&rs).is_zero());
        assert!(parse_expression("e3(f2)").unwrap().to_poly(&rs).is_zero());
    }

    #[test]
    fn equations() {
        let eq = parse_equation("e1(k1) = k1^2 - k1*f2").unwrap();
        assert_eq!(eq.to_string(), "e1(k1) = k1^2 - k1*f2");
        assert!(eq.to_poly(&RewriteSystem::omega()).is_zero());
    }
}
