//! Expression input.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?          int may carry a sign or sit in parens
//! atom  := integer | z | zb | i | u | exp(expr) | log(expr) | (expr)
//! ```
//!
//! Rationals are written as quotients, `1/10*z^4` reads as `(1/10)*z^4`.
//! `i` is accepted so that the series printer's output parses back. `u`
//! only exists in profile mode.

use std::fmt;

use crinv::series::TruncatedSeries;
use crinv::GaussianRational;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variables {
    /// `z`, `zb`, `i`
    Chart,
    /// `u`
    Profile,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Z,
    ZBar,
    I,
    U,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Exp(Box<Expr>),
    Log(Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    vars: Variables,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("`{f}`"));
            self.err(self.pos, format!("expected `{c}`, found {found}"))
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest.find(|c: char| !pred(c)).unwrap_or(rest.len());
        self.pos += len;
        &self.src[start..start + len]
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let start = self.pos;
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return self.err(start, "exponent must be an integer");
        }
        let mut e: i64 = match digits.parse() {
            Ok(e) => e,
            Err(_) => return self.err(start, format!("exponent `{digits}` out of range")),
        };
        if neg {
            e = -e;
        }
        if paren {
            self.expect(')')?;
        }
        Ok(Expr::Pow(Box::new(base), e))
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let start = match self.peek() {
            None => return self.err(self.pos, "unexpected end of input"),
            Some(_) => self.pos,
        };
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        let c = self.peek().expect("peeked above");
        if c.is_ascii_digit() {
            let digits = self.take_while(|c| c.is_ascii_digit());
            return Ok(Expr::Int(digits.parse().expect("digits")));
        }
        if c.is_ascii_alphabetic() {
            let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            let atom = match (name, self.vars) {
                ("z", Variables::Chart) => Expr::Z,
                ("zb", Variables::Chart) => Expr::ZBar,
                ("i", Variables::Chart) => Expr::I,
                ("u", Variables::Profile) => Expr::U,
                ("exp" | "log", _) => {
                    self.expect('(')?;
                    let arg = Box::new(self.expr()?);
                    self.expect(')')?;
                    return Ok(if name == "exp" { Expr::Exp(arg) } else { Expr::Log(arg) });
                }
                _ => return self.err(start, format!("unknown identifier `{name}`")),
            };
            return Ok(atom);
        }
        self.err(start, format!("unexpected `{c}`"))
    }
}

pub fn parse(text: &str, vars: Variables) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text, pos: 0, vars };
    let e = p.expr()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected `{c}` after expression"));
    }
    Ok(e)
}

impl Expr {
    /// Exact expansion at `order`.
    pub fn to_series(&self, order: usize) -> crinv::Result<TruncatedSeries> {
        let rec = |e: &Expr| e.to_series(order);
        Ok(match self {
            Expr::Int(n) => TruncatedSeries::constant(GaussianRational::from(BigRational::from_integer(n.clone())), order),
            Expr::Z => TruncatedSeries::z(order),
            Expr::ZBar => TruncatedSeries::zbar(order),
            Expr::I => TruncatedSeries::constant(GaussianRational::i(), order),
            Expr::U => return Err(crinv::Error::Domain("`u` is only valid in a profile".into())),
            Expr::Neg(a) => -&rec(a)?,
            Expr::Add(a, b) => &rec(a)? + &rec(b)?,
            Expr::Sub(a, b) => &rec(a)? - &rec(b)?,
            Expr::Mul(a, b) => &rec(a)? * &rec(b)?,
            Expr::Div(a, b) => rec(a)?.checked_div(&rec(b)?)?,
            Expr::Pow(a, e) => rec(a)?.powi(*e)?,
            Expr::Exp(a) => rec(a)?.exp()?,
            Expr::Log(a) => rec(a)?.log()?,
        }
        .with_reality_check())
    }

    /// Coefficients in `u`, constant first. Only polynomial operations.
    pub fn to_polynomial(&self) -> crinv::Result<Vec<BigRational>> {
        fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
            while p.last().is_some_and(Zero::is_zero) {
                p.pop();
            }
            p
        }
        fn add(a: &[BigRational], b: &[BigRational], sign: i32) -> Vec<BigRational> {
            let n = a.len().max(b.len());
            let z = BigRational::zero();
            trim(
                (0..n)
                    .map(|k| {
                        let (x, y) = (a.get(k).unwrap_or(&z), b.get(k).unwrap_or(&z));
                        if sign > 0 {
                            x + y
                        } else {
                            x - y
                        }
                    })
                    .collect(),
            )
        }
        fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
            if a.is_empty() || b.is_empty() {
                return Vec::new();
            }
            let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    out[i + j] += x * y;
                }
            }
            trim(out)
        }
        let not_poly = |what: &str| crinv::Error::Domain(format!("profile must be a polynomial in u: {what}"));
        Ok(match self {
            Expr::Int(n) => trim(vec![BigRational::from_integer(n.clone())]),
            Expr::U => vec![BigRational::zero(), BigRational::one()],
            Expr::Z | Expr::ZBar | Expr::I => return Err(not_poly("only `u` is allowed")),
            Expr::Neg(a) => a.to_polynomial()?.into_iter().map(|c| -c).collect(),
            Expr::Add(a, b) => add(&a.to_polynomial()?, &b.to_polynomial()?, 1),
            Expr::Sub(a, b) => add(&a.to_polynomial()?, &b.to_polynomial()?, -1),
            Expr::Mul(a, b) => mul(&a.to_polynomial()?, &b.to_polynomial()?),
            Expr::Div(a, b) => {
                let d = b.to_polynomial()?;
                match d.as_slice() {
                    [] => return Err(crinv::Error::DivisionByZero),
                    [c] => a.to_polynomial()?.into_iter().map(|x| x / c).collect(),
                    _ => return Err(not_poly("division by a non-constant")),
                }
            }
            Expr::Pow(a, e) => {
                let base = a.to_polynomial()?;
                if *e < 0 {
                    match base.as_slice() {
                        [] => return Err(crinv::Error::DivisionByZero),
                        [c] => vec![num_traits::pow::Pow::pow(c, e.unsigned_abs() as u32).recip()],
                        _ => return Err(not_poly("negative power of a non-constant")),
                    }
                } else {
                    let mut acc = vec![BigRational::one()];
                    for _ in 0..*e {
                        acc = mul(&acc, &base);
                    }
                    trim(acc)
                }
            }
            Expr::Exp(_) | Expr::Log(_) => return Err(not_poly("exp/log are not polynomial")),
        })
    }
}

/// Parses and expands a chart expression in `z`, `zb`.
pub fn parse_expression(text: &str, order: usize) -> Result<TruncatedSeries, crate::CliError> {
    Ok(parse(text, Variables::Chart)?.to_series(order)?)
}

/// Parses a profile `ψ(u)`.
pub fn parse_profile(text: &str) -> Result<Vec<BigRational>, crate::CliError> {
    Ok(parse(text, Variables::Profile)?.to_polynomial()?)
}

/// Parses `p/q` or an integer, optionally signed.
pub fn parse_rational(text: &str) -> Result<BigRational, crate::CliError> {
    let t = text.trim();
    crinv::gaussian::parse_ratio(t).map_err(|m| crate::CliError::Usage(format!("bad rational `{t}`: {m}")))
}

/// `re,im` or a bare real rational.
pub fn parse_gaussian(text: &str) -> Result<GaussianRational, crate::CliError> {
    match text.split_once(',') {
        Some((re, im)) => Ok(GaussianRational::new(parse_rational(re)?, parse_rational(im)?)),
        None => Ok(GaussianRational::from_real(parse_rational(text)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::ratio(n, d)
    }

    type Term = ((usize, usize), (i64, i64));


    fn series(order: usize, terms: &[Term]) -> TruncatedSeries {
        TruncatedSeries::from_terms(order, terms.iter().map(|&(kl, (n, d))| (kl, q(n, d))))
    }

    #[test]
    fn binomial() {
        let s = parse_expression("(1+z*zb)^-2", 6).unwrap();
        assert_eq!(s, series(6, &[((0, 0), (1, 1)), ((1, 1), (-2, 1)), ((2, 2), (3, 1)), ((3, 3), (-4, 1))]));
        assert_eq!(parse_expression("(1 + z*zb)^(-2)", 6).unwrap(), s);
    }

    #[test]
    fn exponential() {
        let s = parse_expression("exp(-z*zb)", 4).unwrap();
        assert_eq!(s, series(4, &[((0, 0), (1, 1)), ((1, 1), (-1, 1)), ((2, 2), (1, 2))]));
    }

    #[test]
    fn rational_literal_precedence() {
        let s = parse_expression("z*zb + 1/10*z^4*zb^4", 10).unwrap();
        assert_eq!(s, series(10, &[((1, 1), (1, 1)), ((4, 4), (1, 10))]));
        assert_eq!(parse_expression("-z^2", 3).unwrap(), series(3, &[((2, 0), (-1, 1))]));
        assert_eq!(parse_expression("2^-1", 3).unwrap(), series(3, &[((0, 0), (1, 2))]));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse("1 + * z", Variables::Chart).unwrap_err().pos, 4);
        assert_eq!(parse("z + w", Variables::Chart).unwrap_err().pos, 4);
        assert_eq!(parse("(z", Variables::Chart).unwrap_err().pos, 2);
        assert_eq!(parse("z^x", Variables::Chart).unwrap_err().pos, 2);
        assert_eq!(parse("z z", Variables::Chart).unwrap_err().pos, 2);
        assert!(parse("u", Variables::Chart).is_err());
        assert!(parse("z", Variables::Profile).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(parse_expression("log(2+z)", 4), Err(crate::CliError::Core(crinv::Error::Domain(_)))));
        assert!(matches!(parse_expression("1/z", 4), Err(crate::CliError::Core(crinv::Error::DivisionByZero))));
        assert!(matches!(parse_expression("z^-1", 4), Err(crate::CliError::Core(_))));
        assert!(parse_expression("log(1+z*zb)", 4).is_ok());
    }

    #[test]
    fn profiles() {
        let p = parse_profile("1/10*u*(1-u)").unwrap();
        assert_eq!(p, vec![BigRational::zero(), BigRational::new(1.into(), 10.into()), BigRational::new((-1).into(), 10.into())]);
        assert_eq!(parse_profile("0").unwrap(), Vec::<BigRational>::new());
        assert_eq!(parse_profile("u^2/100").unwrap().len(), 3);
        assert!(parse_profile("exp(u)").is_err());
        assert!(parse_profile("1/u").is_err());
    }

    #[test]
    fn printer_output_parses_back() {
        let s = TruncatedSeries::from_terms(
            5,
            [((0, 0), q(1, 2)), ((2, 1), &q(-3, 4) + &(&GaussianRational::i() * &q(5, 1))), ((0, 3), &GaussianRational::i() * &q(-1, 7))],
        );
        assert_eq!(parse_expression(&s.to_string(), 5).unwrap(), s);
        let zero = TruncatedSeries::zero(3);
        assert_eq!(parse_expression(&zero.to_string(), 3).unwrap(), zero);
    }

    #[test]
    fn gaussian_pairs() {
        assert_eq!(parse_gaussian("3/2,1/2").unwrap(), &q(3, 2) + &(&GaussianRational::i() * &q(1, 2)));
        assert_eq!(parse_gaussian("-2").unwrap(), q(-2, 1));
        assert!(parse_gaussian("a,b").is_err());
    }
}
