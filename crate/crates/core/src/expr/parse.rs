//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' integer)?
//! base     := rational | coordinate | '(' expr ')' | '-' base
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant and `#` starts a line comment. A rational
//! literal and a division chain denote the same canonical value, so the
//! lexer does not distinguish them.

use super::chart::Chart;
use super::expression::{Expression, ExprError};
use super::rational::Int;

use std::str::FromStr;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: expected {expected}, found {found}")]
    Syntax { pos: usize, expected: String, found: String },
    #[error("unknown identifier `{name}` at offset {pos}")]
    UnknownIdentifier { name: String, pos: usize },
    #[error("non-integer exponent at offset {pos}")]
    NonIntegerExponent { pos: usize },
    #[error("exponent out of range at offset {pos}")]
    ExponentOverflow { pos: usize },
    #[error(transparent)]
    Algebra(#[from] ExprError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Int),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer `{v}`"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            '+' => {
                toks.push((Tok::Plus, i));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, i));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, i));
                i += 1;
            }
            '/' => {
                toks.push((Tok::Slash, i));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, i));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = Int::from_str(&text[start..i]).expect("digits");
                toks.push((Tok::Int(v), start));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((Tok::Ident(text[start..i].to_string()), start));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    expected: "a token".into(),
                    found: format!("`{other}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    chart: &'a Chart,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<(Tok, usize)> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.term()?;
        while let Some((t, _)) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expression, ParseError> {
        let mut acc = self.factor()?;
        while let Some((t, _)) = self.peek() {
            match t {
                Tok::Star => {
                    self.bump();
                    acc = acc.mul(&self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    acc = acc.div(&self.factor()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expression, ParseError> {
        let base = self.base()?;
        if let Some((Tok::Caret, _)) = self.peek() {
            self.bump();
            let (neg, pos) = match self.peek() {
                Some((Tok::Minus, p)) => {
                    let p = *p;
                    self.bump();
                    (true, p)
                }
                Some((_, p)) => (false, *p),
                None => (false, self.end),
            };
            match self.bump() {
                Some((Tok::Int(v), _)) => {
                    let k = i64::try_from(&v).map_err(|_| ParseError::ExponentOverflow { pos })?;
                    let k = if neg { -k } else { k };
                    return Ok(base.pow(k)?);
                }
                _ => return Err(ParseError::NonIntegerExponent { pos }),
            }
        }
        Ok(base)
    }

    fn base(&mut self) -> Result<Expression, ParseError> {
        match self.bump() {
            Some((Tok::Int(v), _)) => Ok(Expression::from_rat(
                self.chart,
                num::BigRational::from_integer(v),
            )),
            Some((Tok::Ident(name), pos)) => Expression::coordinate(self.chart, &name)
                .map_err(|_| ParseError::UnknownIdentifier { name, pos }),
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some((Tok::RParen, _)) => Ok(inner),
                    Some((t, p)) => Err(ParseError::Syntax {
                        pos: p,
                        expected: "`)`".into(),
                        found: t.describe(),
                    }),
                    None => Err(ParseError::Syntax {
                        pos: self.end,
                        expected: "`)`".into(),
                        found: "end of input".into(),
                    }),
                }
            }
            Some((Tok::Minus, _)) => Ok(self.base()?.neg()),
            Some((t, p)) => Err(ParseError::Syntax {
                pos: p,
                expected: "a number, coordinate, `(` or `-`".into(),
                found: t.describe(),
            }),
            None => Err(ParseError::Syntax {
                pos: self.end,
                expected: "a number, coordinate, `(` or `-`".into(),
                found: "end of input".into(),
            }),
        }
    }
}

/// Parses `text` into the canonical Expression it denotes on `chart`.
pub fn parse_expression(text: &str, chart: &Chart) -> Result<Expression, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, chart, end: text.len() };
    let e = p.expr()?;
    if let Some((t, pos)) = p.peek() {
        return Err(ParseError::Syntax {
            pos: *pos,
            expected: "end of input".into(),
            found: t.describe(),
        });
    }
    let _ = e.coefficient(); // canonical by construction
    debug_assert!(!e.denominator().is_zero());
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::rational::{rat, rat_int};

    fn chart4() -> Chart {
        Chart::new(vec!["x1", "x2", "x3", "x4"]).unwrap()
    }

    #[test]
    fn reference_style_components() {
        let c = chart4();
        let e = parse_expression("1/(4*x1)", &c).unwrap();
        let p = vec![rat_int(1); 4];
        assert_eq!(e.evaluate(&p).unwrap(), rat(1, 4));
        assert_eq!(e.to_string(), "1/(4*x1)");
    }

    #[test]
    fn zero_and_cancellation() {
        let c = chart4();
        assert!(parse_expression("0", &c).unwrap().is_zero());
        assert!(parse_expression("(x3+x4)/(x3+x4)", &c).unwrap().is_one());
    }

    #[test]
    fn comments_and_whitespace() {
        let c = chart4();
        let e = parse_expression("1 / ( 4 * x1 ) # the R component\n", &c).unwrap();
        assert_eq!(e.to_string(), "1/(4*x1)");
    }

    #[test]
    fn errors_carry_positions() {
        let c = chart4();
        match parse_expression("x1 + q3", &c) {
            Err(ParseError::UnknownIdentifier { name, pos }) => {
                assert_eq!(name, "q3");
                assert_eq!(pos, 5);
            }
            other => panic!("{other:?}"),
        }
        match parse_expression("x1 + ", &c) {
            Err(ParseError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_expression("x1 ^ x2", &c),
            Err(ParseError::NonIntegerExponent { .. })
        ));
        assert!(matches!(
            parse_expression("1/(x1-x1)", &c),
            Err(ParseError::Algebra(ExprError::DivisionByZero))
        ));
    }

    #[test]
    fn precedence() {
        let c = chart4();
        // 1/2*x1 is (1/2)*x1 either way
        let a = parse_expression("1/2*x1", &c).unwrap();
        let b = parse_expression("x1/2", &c).unwrap();
        assert_eq!(a, b);
        // in the grammar '-' is part of base, so -x1^2 is (-x1)^2
        let d = parse_expression("-x1^2", &c).unwrap();
        assert_eq!(d, parse_expression("x1^2", &c).unwrap());
        assert_eq!(
            parse_expression("-(x1^2)", &c).unwrap(),
            parse_expression("0-x1^2", &c).unwrap()
        );
    }
}
