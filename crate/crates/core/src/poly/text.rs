//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := unary (['*'] unary)*        juxtaposition multiplies
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] INT]
//! atom   := NUM ['/' NUM] | VAR | '(' expr ')'
//! ```
//!
//! Variables are `x1..xn`, or `z1..zn` for Laurent input. Whitespace is
//! ignored everywhere.

use num::{BigInt, One, Zero};

use super::{ExpVec, Poly, Rat};
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Var(char, usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eof,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str, letters: &[char]) -> std::result::Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let err = |line, column, message: String| ParseError {
        line,
        column,
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Spanned {
                tok,
                line: tl,
                column: tc,
            });
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[start..i].iter().collect::<String>().parse().unwrap();
            let mut value = Rat::from_integer(num);
            // `p/q` rational literal; whitespace is not allowed inside it.
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                let dstart = i + 1;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let den: BigInt = chars[dstart..i].iter().collect::<String>().parse().unwrap();
                if den.is_zero() {
                    return Err(err(tl, tc, "zero denominator".into()));
                }
                value /= Rat::from_integer(den);
            }
            col += i - start;
            out.push(Spanned {
                tok: Tok::Num(value),
                line: tl,
                column: tc,
            });
            continue;
        }
        if c.is_ascii_alphabetic() {
            if !letters.contains(&c) {
                return Err(err(tl, tc, format!("unexpected variable letter '{}'", c)));
            }
            let start = i + 1;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i == start {
                return Err(err(tl, tc, format!("variable '{}' needs an index", c)));
            }
            let idx: usize = chars[start..i]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| err(tl, tc, "variable index too large".into()))?;
            col += i - start + 1;
            out.push(Spanned {
                tok: Tok::Var(c, idx),
                line: tl,
                column: tc,
            });
            continue;
        }
        return Err(err(tl, tc, format!("unexpected character '{}'", c)));
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column: col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    nvars: usize,
    letter: Option<char>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let t = &self.toks[self.pos];
        Error::Parse(ParseError {
            line: t.line,
            column: t.column,
            message: message.into(),
        })
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            -self.term()?
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Num(_) | Tok::Var(..) | Tok::LParen => {
                    acc = &acc * &self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let k = match self.peek().clone() {
            Tok::Num(r) if r.is_integer() => {
                let v: u32 = r
                    .to_integer()
                    .try_into()
                    .map_err(|_| self.error("exponent too large"))?;
                self.bump();
                v
            }
            _ => return Err(self.error("expected a nonnegative integer exponent")),
        };
        if !negative {
            return Ok(base.pow(k));
        }
        if self.letter != Some('z') {
            return Err(self.error("negative exponents need Laurent variables z1..zn"));
        }
        if base.len() != 1 {
            return Err(self.error("negative exponent of a non-monomial"));
        }
        let (e, c) = base.leading_term().unwrap();
        let inv_c = Rat::one() / c;
        let ne = ExpVec(e.0.iter().map(|&a| -a * k as i32).collect());
        Ok(Poly::monomial(self.nvars, ne, num::pow::pow(inv_c, k as usize)).into_laurent())
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek().clone() {
            Tok::Num(r) => {
                self.bump();
                Ok(Poly::constant(self.nvars, r))
            }
            Tok::Var(c, idx) => {
                if let Some(prev) = self.letter {
                    if prev != c && (prev == 'z' || c == 'z') {
                        return Err(self.error("cannot mix x and z variables"));
                    }
                }
                self.letter = Some(c);
                if idx == 0 || idx > self.nvars {
                    return Err(self.error(format!(
                        "variable {}{} out of range for {} variables",
                        c, idx, self.nvars
                    )));
                }
                self.bump();
                let p = Poly::var(self.nvars, idx - 1);
                Ok(if c == 'z' { p.into_laurent() } else { p })
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("expected ')'"));
                }
                self.bump();
                Ok(inner)
            }
            Tok::Eof => Err(self.error("unexpected end of input")),
            other => Err(self.error(format!("unexpected token {:?}", other))),
        }
    }
}

pub(crate) fn parse_with_letters(text: &str, nvars: usize, letters: &[char]) -> Result<Poly> {
    let toks = lex(text, letters)?;
    let mut p = Parser {
        toks,
        pos: 0,
        nvars,
        letter: None,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error("trailing input"));
    }
    Ok(if p.letter == Some('z') {
        out.into_laurent()
    } else {
        out
    })
}

/// Parses a polynomial in `nvars` variables.
pub fn parse_poly(text: &str, nvars: usize) -> Result<Poly> {
    parse_with_letters(text, nvars, &['x', 'z'])
}
