//! Recursive-descent parser for knot expressions.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr   := term ("#" term)* ;
//! term   := "-" term | atom ;
//! atom   := "T(" INT "," INT ")" | "C(" INT "," INT ";" expr ")"
//!         | "D" | "WhD^" INT | "thin(" SIGNED_INT ")" | "V[" INT ("," INT)* "]"
//!         | "U" | "Kstar" | "(" expr ")" ;
//! ```

use crate::dcalc::VSequence;
use crate::error::{Error, ParseError, ParseErrorKind, Result};

use super::ast::KnotExpr;

/// Integers above this are rejected so that all downstream d-invariant
/// arithmetic stays comfortably inside i64.
const MAX_INT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Hash,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Caret,
    Int(u64),
    Ident(String),
    Eof,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Hash => write!(f, "'#'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::LBracket => write!(f, "'['"),
            Tok::RBracket => write!(f, "']'"),
            Tok::Comma => write!(f, "','"),
            Tok::Semi => write!(f, "';'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::Int(n) => write!(f, "integer {n}"),
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let tok = match c {
            '#' => {
                bump(&mut chars);
                Tok::Hash
            }
            '-' => {
                bump(&mut chars);
                Tok::Minus
            }
            '(' => {
                bump(&mut chars);
                Tok::LParen
            }
            ')' => {
                bump(&mut chars);
                Tok::RParen
            }
            '[' => {
                bump(&mut chars);
                Tok::LBracket
            }
            ']' => {
                bump(&mut chars);
                Tok::RBracket
            }
            ',' => {
                bump(&mut chars);
                Tok::Comma
            }
            ';' => {
                bump(&mut chars);
                Tok::Semi
            }
            '^' => {
                bump(&mut chars);
                Tok::Caret
            }
            '0'..='9' => {
                let mut value: u64 = 0;
                let mut overflow = false;
                while let Some(d) = chars.peek().and_then(|c| c.to_digit(10)) {
                    bump(&mut chars);
                    value = value.saturating_mul(10).saturating_add(d as u64);
                    overflow |= value > MAX_INT;
                }
                if overflow {
                    return Err(ParseError::new(
                        ParseErrorKind::Semantic,
                        tline,
                        tcol,
                        format!("integer literal exceeds the supported maximum {MAX_INT}"),
                    )
                    .into());
                }
                Tok::Int(value)
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() && !c.is_ascii_digit() || c == '_' {
                        ident.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                Tok::Ident(ident)
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    tline,
                    tcol,
                    format!("unexpected character '{other}'"),
                )
                .into());
            }
        };
        out.push(Spanned { tok, line: tline, col: tcol });
    }
    out.push(Spanned { tok: Tok::Eof, line, col });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.tokens[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, kind: ParseErrorKind, at: &Spanned, msg: impl Into<String>) -> Error {
        ParseError::new(kind, at.line, at.col, msg).into()
    }

    fn syntax(&self, at: &Spanned, msg: impl Into<String>) -> Error {
        self.err(ParseErrorKind::Syntax, at, msg)
    }

    fn expect(&mut self, want: Tok) -> Result<Spanned> {
        let t = self.next();
        if t.tok == want {
            Ok(t)
        } else {
            Err(self.syntax(&t, format!("expected {want}, found {}", t.tok)))
        }
    }

    fn expect_int(&mut self) -> Result<(u64, Spanned)> {
        let t = self.next();
        match t.tok {
            Tok::Int(n) => Ok((n, t)),
            ref other => Err(self.syntax(&t, format!("expected integer, found {other}"))),
        }
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let mut terms = vec![self.term()?];
        while self.peek().tok == Tok::Hash {
            self.next();
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { KnotExpr::Sum(terms) })
    }

    fn term(&mut self) -> Result<KnotExpr> {
        if self.peek().tok == Tok::Minus {
            self.next();
            Ok(self.term()?.mirror())
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<KnotExpr> {
        let t = self.next();
        match &t.tok {
            Tok::LParen => {
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => match name.as_str() {
                "T" => {
                    self.expect(Tok::LParen)?;
                    let (p, p_at) = self.expect_int()?;
                    self.expect(Tok::Comma)?;
                    let (q, q_at) = self.expect_int()?;
                    self.expect(Tok::RParen)?;
                    self.check_winding(p, &p_at, "torus knot")?;
                    self.check_odd_q(q, &q_at, "torus knot")?;
                    Ok(KnotExpr::TorusKnot { q })
                }
                "C" => {
                    self.expect(Tok::LParen)?;
                    let (p, p_at) = self.expect_int()?;
                    self.expect(Tok::Comma)?;
                    let (q, q_at) = self.expect_int()?;
                    self.expect(Tok::Semi)?;
                    let companion = self.expr()?;
                    self.expect(Tok::RParen)?;
                    self.check_winding(p, &p_at, "cable")?;
                    self.check_odd_q(q, &q_at, "cable")?;
                    Ok(KnotExpr::Cable { q, companion: Box::new(companion) })
                }
                "D" => Ok(KnotExpr::WhDoublePow(4)),
                "WhD" => {
                    self.expect(Tok::Caret)?;
                    let (n, n_at) = self.expect_int()?;
                    if n == 0 {
                        return Err(self.err(
                            ParseErrorKind::Semantic,
                            &n_at,
                            "WhD^n needs n >= 1; the empty self-sum is U",
                        ));
                    }
                    Ok(KnotExpr::WhDoublePow(n))
                }
                "thin" => {
                    self.expect(Tok::LParen)?;
                    let negative = if self.peek().tok == Tok::Minus {
                        self.next();
                        true
                    } else {
                        false
                    };
                    let (s, s_at) = self.expect_int()?;
                    self.expect(Tok::RParen)?;
                    let sigma = if negative { -(s as i64) } else { s as i64 };
                    if sigma % 2 != 0 {
                        return Err(self.err(
                            ParseErrorKind::Semantic,
                            &s_at,
                            format!("knot signature must be even, got {sigma}"),
                        ));
                    }
                    Ok(KnotExpr::ThinClass(sigma))
                }
                "V" => {
                    self.expect(Tok::LBracket)?;
                    let (first, first_at) = self.expect_int()?;
                    let mut values = vec![first];
                    while self.peek().tok == Tok::Comma {
                        self.next();
                        values.push(self.expect_int()?.0);
                    }
                    self.expect(Tok::RBracket)?;
                    match VSequence::new(&values) {
                        Ok(v) => Ok(KnotExpr::ExplicitV(v)),
                        Err(e) => Err(self.err(
                            ParseErrorKind::Semantic,
                            &first_at,
                            format!("invalid V-sequence: {e}"),
                        )),
                    }
                }
                "U" => Ok(KnotExpr::Unknot),
                "Kstar" => Ok(KnotExpr::Kstar),
                other => Err(self.syntax(&t, format!("unknown name '{other}'"))),
            },
            other => Err(self.syntax(&t, format!("expected an expression, found {other}"))),
        }
    }

    fn check_winding(&self, p: u64, at: &Spanned, what: &str) -> Result<()> {
        if p != 2 {
            Err(self.err(
                ParseErrorKind::UnsupportedFeature,
                at,
                format!("{what} winding {p} is not supported; only winding 2 has a \
                         surgery description here"),
            ))
        } else {
            Ok(())
        }
    }

    fn check_odd_q(&self, q: u64, at: &Spanned, what: &str) -> Result<()> {
        if q % 2 == 0 || q < 3 {
            Err(self.err(
                ParseErrorKind::Semantic,
                at,
                format!("{what} parameter q must be odd and at least 3, got {q}"),
            ))
        } else {
            Ok(())
        }
    }
}

/// Parses a knot expression; errors carry 1-based line/column positions.
pub fn parse(text: &str) -> Result<KnotExpr> {
    let tokens = lex(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    let e = parser.expr()?;
    let t = parser.next();
    if t.tok != Tok::Eof {
        return Err(parser.syntax(&t, format!("trailing input starting with {}", t.tok)));
    }
    Ok(e)
}
