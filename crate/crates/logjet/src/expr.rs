//! Parser for the input expression grammar
//!
//!   term ::= int | var | t | term^nat | term*term | term+term
//!          | term-term | (term)
//!
//! with the usual precedence (^ binds tightest, then *, then + and -).
//! A leading minus on a factor is accepted as sugar for 0 - term. The
//! name `t` is reserved for the series parameter: it is only legal where
//! a series is expected and is never a scheme variable.
//!
//! Parse errors carry a 0-based character offset into the input.

use crate::error::{Error, Result};
use crate::field::Char;
use crate::poly::Poly;
use crate::series::TruncSeries;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            '^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n = text.parse::<i64>().map_err(|_| Error::Parse {
                    offset: start,
                    message: format!("integer literal {text} out of range"),
                })?;
                out.push((start, Tok::Int(n)));
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push((start, Tok::Ident(chars[start..i].iter().collect())));
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

/// Recursive-descent parser producing a `Poly` over a fixed variable ring.
struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    ch: Char,
    vars: &'a [String],
    src_len: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.src_len)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = &acc + &rhs;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = &acc - &rhs;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Tok::Star)) {
            self.bump();
            let rhs = self.factor()?;
            acc = &acc * &rhs;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        if matches!(self.peek(), Some(Tok::Minus)) {
            self.bump();
            let f = self.factor()?;
            return Ok(-&f);
        }
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some(Tok::Int(n)) if n >= 0 => {
                    let e = u32::try_from(n).map_err(|_| Error::Parse {
                        offset: off,
                        message: "exponent out of range".into(),
                    })?;
                    base = base.pow(e);
                }
                _ => {
                    return Err(Error::Parse {
                        offset: off,
                        message: "exponent must be a natural number".into(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let off = self.offset();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Poly::int_constant(self.ch, self.vars, n)),
            Some(Tok::Ident(name)) => {
                match self.vars.iter().position(|v| v == &name) {
                    Some(i) => Ok(Poly::var(self.ch, self.vars, i)),
                    None => Err(Error::Parse {
                        offset: off,
                        message: format!("unknown variable {name:?}"),
                    }),
                }
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::Parse {
                        offset: off,
                        message: "unclosed parenthesis".into(),
                    }),
                }
            }
            other => Err(Error::Parse {
                offset: off,
                message: format!("expected a term, found {other:?}"),
            }),
        }
    }
}

/// Parse a polynomial over the named variables. `t` is rejected here.
pub fn parse_poly(src: &str, ch: Char, vars: &[String]) -> Result<Poly> {
    if vars.iter().any(|v| v == "t") {
        return Err(Error::Unsupported(
            "the name t is reserved for the series parameter".into(),
        ));
    }
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ch,
        vars,
        src_len: src.chars().count(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse {
            offset: p.offset(),
            message: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

/// Parse a univariate polynomial in `t`, kept exact. Arcs are stored this
/// way so the same arc can be re-materialized at any precision.
pub fn parse_t_polynomial(src: &str, ch: Char) -> Result<Poly> {
    let tvar = vec!["t".to_string()];
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        ch,
        vars: &tvar,
        src_len: src.chars().count(),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse {
            offset: p.offset(),
            message: "trailing input after expression".into(),
        });
    }
    Ok(poly)
}

/// Parse a univariate polynomial in `t` as a truncated series at the given
/// precision.
pub fn parse_series(src: &str, ch: Char, precision: usize) -> Result<TruncSeries> {
    let poly = parse_t_polynomial(src, ch)?;
    let mut s = TruncSeries::zero(ch, precision);
    for (mono, coeff) in poly.terms() {
        let k = mono.0[0] as usize;
        if k < precision {
            s = s + TruncSeries::monomial(ch, precision, coeff.clone(), k);
        }
        // Terms at or above the precision are silently unknown — but a
        // *nonzero* such term means the caller chose too small a P for
        // faithful truncation; keep them it is: truncation is the contract.
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_the_cusp_equation() {
        let v = vars(&["x", "y"]);
        let f = parse_poly("y^2 - x^3", Char::Zero, &v).unwrap();
        assert_eq!(f.to_string(), "-x^3 + y^2");
    }

    #[test]
    fn parses_parenthesized_products() {
        let v = vars(&["u", "v", "t0"]);
        let f = parse_poly("u*v - t0", Char::Zero, &v).unwrap();
        assert_eq!(f.to_string(), "u*v - t0");
        let g = parse_poly("(u + v)^2 - (u^2 + 2*u*v + v^2)", Char::Zero, &v).unwrap();
        assert!(g.is_zero());
    }

    #[test]
    fn reports_offsets_for_bad_input() {
        let v = vars(&["x"]);
        let err = parse_poly("x + qq", Char::Zero, &v).unwrap_err();
        match err {
            Error::Parse { offset, .. } => assert_eq!(offset, 4),
            other => panic!("wrong error {other:?}"),
        }
        assert!(parse_poly("x +", Char::Zero, &v).is_err());
        assert!(parse_poly("x ^ -2", Char::Zero, &v).is_err());
        assert!(parse_poly("x y", Char::Zero, &v).is_err());
    }

    #[test]
    fn series_parse_round_trips() {
        let s = parse_series("t^2 - 2*t^5", Char::Zero, 8).unwrap();
        assert_eq!(s.to_string(), "t^2 - 2*t^5 + O(t^8)");
        let zero = parse_series("0", Char::Zero, 4).unwrap();
        assert!(zero.is_zero());
    }

    #[test]
    fn t_is_reserved_in_polynomial_context() {
        let v = vars(&["x", "t"]);
        assert!(parse_poly("x", Char::Zero, &v).is_err());
    }
}
