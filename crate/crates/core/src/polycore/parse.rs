//! Text format for presentations:
//!
//! ```text
//! # comment
//! field QQ;            # or GF(p)
//! vars Y1 Z1 Z2;
//! ideal Y1*Z1 - Z2^2, Y1^2, Z1^2;
//! ```
//!
//! Whitespace is insignificant. A term is an optional coefficient (`3`, `3/2`)
//! followed by factors `ident` or `ident^k`, optionally separated by `*`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Field, Monomial, PolyRing, Polynomial, Scalar};
use crate::error::{Error, Result};

/// Parsed input: a field, variables and generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: Arc<PolyRing>,
    pub generators: Vec<Polynomial>,
}

impl Presentation {
    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field {};", self.ring.field())?;
        writeln!(f, "vars {};", self.ring.vars().join(" "))?;
        if self.generators.is_empty() {
            writeln!(f, "ideal 0;")
        } else {
            let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
            writeln!(f, "ideal {};", gens.join(", "))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut column) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let (l0, c0) = (line, column);
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
        } else if c.is_whitespace() {
            chars.next();
            column += 1;
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            out.push(Token { tok: Tok::Ident(s), line: l0, column: c0 });
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(c);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            let n: BigInt = s.parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), line: l0, column: c0 });
        } else if "+-*^/,;()".contains(c) {
            chars.next();
            column += 1;
            out.push(Token { tok: Tok::Sym(c), line: l0, column: c0 });
        } else {
            return Err(Error::Syntax {
                line: l0,
                column: c0,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Parser> {
        let toks = lex(text)?;
        let line = text.lines().count().max(1);
        let column = text.lines().last().map(|l| l.chars().count() + 1).unwrap_or(1);
        Ok(Parser { toks, pos: 0, end: (line, column) })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self.here();
        Err(Error::Syntax { line, column, message: message.into() })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{kw}`")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected an integer"),
        }
    }

    fn field(&mut self) -> Result<Field> {
        self.expect_keyword("field")?;
        let (line, column) = self.here();
        let f = match self.bump() {
            Some(Tok::Ident(s)) if s == "QQ" => Field::Rationals,
            Some(Tok::Ident(s)) if s == "GF" => {
                self.expect_sym('(')?;
                let p = self.integer()?;
                self.expect_sym(')')?;
                let p: u64 = p.try_into().map_err(|_| Error::Syntax {
                    line,
                    column,
                    message: "modulus out of range".into(),
                })?;
                Field::prime(p)?
            }
            _ => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: "expected `QQ` or `GF(p)`".into(),
                })
            }
        };
        self.expect_sym(';')?;
        Ok(f)
    }

    fn vars(&mut self) -> Result<Vec<String>> {
        self.expect_keyword("vars")?;
        let mut vars: Vec<String> = Vec::new();
        while let Some(Tok::Ident(s)) = self.peek() {
            if vars.contains(s) {
                return self.err(format!("duplicate variable `{s}`"));
            }
            vars.push(s.clone());
            self.pos += 1;
        }
        if vars.is_empty() {
            return self.err("expected at least one variable");
        }
        self.expect_sym(';')?;
        Ok(vars)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.eat_sym('^') {
            let n = self.integer()?;
            u32::try_from(n)
                .ok()
                .filter(|&e| e <= u16::MAX as u32)
                .map(Ok)
                .unwrap_or_else(|| self.err("exponent too large"))
        } else {
            Ok(1)
        }
    }

    fn term(&mut self, ring: &Arc<PolyRing>) -> Result<(Monomial, Scalar)> {
        let field = ring.field();
        let start = self.pos;
        let mut coeff = field.one();
        if let Some(Tok::Int(_)) = self.peek() {
            let num = self.integer()?;
            let den = if self.eat_sym('/') { self.integer()? } else { BigInt::from(1) };
            coeff = match field.from_ratio(&num, &den) {
                Some(c) => c,
                None => return self.err("denominator vanishes in the field"),
            };
        }
        let mut exps = vec![0u32; ring.nvars()];
        loop {
            let save = self.pos;
            let starred = self.eat_sym('*');
            match self.peek() {
                Some(Tok::Ident(name)) => {
                    let name = name.clone();
                    let (line, column) = self.here();
                    let Some(i) = ring.var_index(&name) else {
                        return Err(Error::UnknownVariable { name, line, column });
                    };
                    self.pos += 1;
                    let e = self.exponent()?;
                    exps[i] += e;
                    if exps[i] > u16::MAX as u32 {
                        return self.err("exponent too large");
                    }
                }
                _ if starred => return self.err("expected a variable after `*`"),
                _ => {
                    self.pos = save;
                    break;
                }
            }
        }
        if self.pos == start {
            return self.err("expected a term");
        }
        Ok((Monomial::from_exponents(&exps)?, coeff))
    }

    fn poly(&mut self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        let mut terms = Vec::new();
        let mut negate = self.eat_sym('-');
        if !negate {
            self.eat_sym('+');
        }
        loop {
            let (m, c) = self.term(ring)?;
            terms.push((m, if negate { -c } else { c }));
            if self.eat_sym('+') {
                negate = false;
            } else if self.eat_sym('-') {
                negate = true;
            } else {
                break;
            }
        }
        Ok(Polynomial::from_terms(ring, terms))
    }

    fn ideal(&mut self, ring: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
        self.expect_keyword("ideal")?;
        let mut gens = vec![self.poly(ring)?];
        while self.eat_sym(',') {
            gens.push(self.poly(ring)?);
        }
        self.eat_sym(';');
        Ok(gens)
    }
}

/// Parse a whole presentation file. Zero generators are dropped.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text)?;
    let field = p.field()?;
    let vars = p.vars()?;
    let ring = PolyRing::new(field, vars);
    let generators = p
        .ideal(&ring)?
        .into_iter()
        .filter(|g| !g.is_zero())
        .collect();
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(Presentation { ring, generators })
}

/// Parse a single polynomial expression in the given ring.
pub fn parse_polynomial(text: &str, ring: &Arc<PolyRing>) -> Result<Polynomial> {
    let mut p = Parser::new(text)?;
    let out = p.poly(ring)?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_generators_over_rationals() {
        let p = parse_presentation("field QQ; vars Y Z; ideal Y*Z, Y^2-Z^2").unwrap();
        assert_eq!(p.field(), Field::Rationals);
        assert_eq!(p.vars(), ["Y", "Z"]);
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.generators[1].to_string(), "Y^2 - Z^2");
    }

    #[test]
    fn stretched_example_presentation() {
        let p = parse_presentation("field QQ; vars Y1 Z1 Z2; ideal Y1*Z1-Z2^2, Y1^2, Z1^2").unwrap();
        let shown: Vec<String> = p.generators.iter().map(|g| g.to_string()).collect();
        assert_eq!(shown, ["Y1*Z1 - Z2^2", "Y1^2", "Z1^2"]);
    }

    #[test]
    fn prime_field_single_variable() {
        let p = parse_presentation("field GF(7); vars X; ideal X^3").unwrap();
        assert_eq!(p.field(), Field::Prime(7));
        assert_eq!(p.generators.len(), 1);
    }

    #[test]
    fn comments_implicit_products_and_fractions() {
        let text = "# header\nfield QQ;\nvars a b; # two\nideal 3/2 a b^2 - b, -a^2;\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.generators[0].to_string(), "3/2*a*b^2 - b");
        assert_eq!(p.generators[1].to_string(), "-a^2");
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = parse_presentation("field QQ;\nvars Y;\nideal Y^ ;").unwrap_err();
        assert_eq!(err, Error::Syntax { line: 3, column: 10, message: "expected an integer".into() });
    }

    #[test]
    fn unknown_variable() {
        let err = parse_presentation("field QQ; vars Y; ideal Y*W").unwrap_err();
        assert!(matches!(err, Error::UnknownVariable { ref name, line: 1, column: 27 } if name == "W"));
    }

    #[test]
    fn non_prime_modulus() {
        assert_eq!(
            parse_presentation("field GF(9); vars X; ideal X^2").unwrap_err(),
            Error::NonPrimeModulus(9)
        );
    }

    #[test]
    fn printing_round_trips() {
        let text = "field GF(7); vars X Y; ideal 3*X^2*Y - 1, Y^3 + 6*X";
        let p = parse_presentation(text).unwrap();
        let again = parse_presentation(&p.to_string()).unwrap();
        assert_eq!(p, again);
    }
}
