//! Parser for the reference-expression language.
//!
//! The language is deliberately small: integer literals, named atoms,
//! `+ - * / ^`, parentheses, and `#` line comments. A definitions file is a
//! sequence of `name = expression;` items evaluated in order; later items
//! may refer to earlier ones. Atom names are the raw symbol names
//! (`l1..l4`, `D1..D4`, `T123..T234`, `h112..h334`), so reference formulas
//! can be transcribed verbatim and reduced later.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{KernelError, RatFunc, Rational, Symbol};

/// Parse failure with 1-based source coordinates.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{message} at line {line}, column {col}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub col: usize,
}

impl ParseError {
    fn new(message: impl Into<String>, pos: (usize, usize)) -> ParseError {
        ParseError { message: message.into(), line: pos.0, col: pos.1 }
    }
}

/// Ordered set of named expressions from a definitions file.
#[derive(Debug, Clone, Default)]
pub struct Definitions {
    names: Vec<String>,
    values: BTreeMap<String, RatFunc>,
}

impl Definitions {
    pub fn get(&self, name: &str) -> Option<&RatFunc> {
        self.values.get(name)
    }

    /// Defined names in file order.
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Equals,
    Semi,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Equals => f.write_str("`=`"),
            Tok::Semi => f.write_str("`;`"),
        }
    }
}

type SpannedTok = (Tok, (usize, usize));

fn lex(src: &str) -> Result<Vec<SpannedTok>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = (line, col);
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(digits.parse().expect("digits")), pos));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(name), pos));
            }
            _ => {
                let tok = match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '/' => Tok::Slash,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '=' => Tok::Equals,
                    ';' => Tok::Semi,
                    other => {
                        return Err(ParseError::new(format!("unexpected character `{other}`"), pos))
                    }
                };
                chars.next();
                col += 1;
                out.push((tok, pos));
            }
        }
    }
    Ok(out)
}

/// The raw atom for a name like `l2`, `D4`, `T134`, or `h233`.
fn builtin_atom(name: &str) -> Option<RatFunc> {
    Symbol::from_name(name).map(RatFunc::from_symbol)
}

struct Parser<'a> {
    toks: Vec<(Tok, (usize, usize))>,
    pos: usize,
    env: &'a dyn Fn(&str) -> Option<RatFunc>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&(Tok, (usize, usize))> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<(Tok, (usize, usize))> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn end_pos(&self) -> (usize, usize) {
        self.toks.last().map(|(_, p)| *p).unwrap_or((1, 1))
    }

    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.next() {
            Some((t, _)) if &t == want => Ok(()),
            Some((t, p)) => Err(ParseError::new(format!("expected {want}, found {t}"), p)),
            None => Err(ParseError::new(format!("expected {want}, found end of input"), self.end_pos())),
        }
    }

    fn arithmetic(r: Result<RatFunc, KernelError>, pos: (usize, usize)) -> Result<RatFunc, ParseError> {
        r.map_err(|e| ParseError::new(e.to_string(), pos))
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        while let Some((t, _)) = self.peek() {
            match t {
                Tok::Plus => {
                    self.next();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.next();
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        while let Some((t, p)) = self.peek().cloned() {
            match t {
                Tok::Star => {
                    self.next();
                    acc = &acc * &self.unary()?;
                }
                Tok::Slash => {
                    self.next();
                    let rhs = self.unary()?;
                    acc = Self::arithmetic(acc.checked_div(&rhs), p)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        if let Some((Tok::Minus, _)) = self.peek() {
            self.next();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if let Some((Tok::Caret, p)) = self.peek().cloned() {
            self.next();
            match self.next() {
                Some((Tok::Int(n), _)) => {
                    let e: i32 = n
                        .try_into()
                        .map_err(|_| ParseError::new("exponent out of range", p))?;
                    return Self::arithmetic(base.pow(e), p);
                }
                Some((t, q)) => {
                    return Err(ParseError::new(format!("expected integer exponent, found {t}"), q))
                }
                None => return Err(ParseError::new("expected integer exponent", self.end_pos())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.next() {
            Some((Tok::Int(n), _)) => Ok(RatFunc::from_rational(Rational::from_integer(n))),
            Some((Tok::Ident(name), p)) => (self.env)(&name)
                .ok_or_else(|| ParseError::new(format!("unknown name `{name}`"), p)),
            Some((Tok::LParen, _)) => {
                let inner = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Some((t, p)) => Err(ParseError::new(format!("expected expression, found {t}"), p)),
            None => Err(ParseError::new("expected expression, found end of input", self.end_pos())),
        }
    }
}

/// Parse a single expression against the builtin atoms plus `defs`.
pub fn parse_expression(src: &str, defs: &Definitions) -> Result<RatFunc, ParseError> {
    let toks = lex(src)?;
    let env = |name: &str| defs.get(name).cloned().or_else(|| builtin_atom(name));
    let mut p = Parser { toks, pos: 0, env: &env };
    let value = p.expr()?;
    if let Some((t, pos)) = p.peek() {
        return Err(ParseError::new(format!("unexpected trailing {t}"), *pos));
    }
    Ok(value)
}

/// Parse a definitions file: `name = expression;` items in order.
pub fn parse_definitions(src: &str) -> Result<Definitions, ParseError> {
    let toks = lex(src)?;
    let mut defs = Definitions::default();
    let mut pos = 0usize;
    while pos < toks.len() {
        let (name, name_pos) = match &toks[pos] {
            (Tok::Ident(name), p) => (name.clone(), *p),
            (t, p) => return Err(ParseError::new(format!("expected definition name, found {t}"), *p)),
        };
        if builtin_atom(&name).is_some() {
            return Err(ParseError::new(format!("`{name}` shadows a builtin atom"), name_pos));
        }
        if defs.values.contains_key(&name) {
            return Err(ParseError::new(format!("`{name}` is defined twice"), name_pos));
        }
        pos += 1;
        match toks.get(pos) {
            Some((Tok::Equals, _)) => pos += 1,
            Some((t, p)) => return Err(ParseError::new(format!("expected `=`, found {t}"), *p)),
            None => return Err(ParseError::new("expected `=`", name_pos)),
        }
        // Find the terminating semicolon; parentheses cannot hide one.
        let start = pos;
        while pos < toks.len() && toks[pos].0 != Tok::Semi {
            pos += 1;
        }
        if pos == toks.len() {
            return Err(ParseError::new(format!("missing `;` after `{name}`"), name_pos));
        }
        let body = toks[start..pos].to_vec();
        pos += 1;
        let env = {
            let defs = &defs;
            move |n: &str| defs.get(n).cloned().or_else(|| builtin_atom(n))
        };
        let mut parser = Parser { toks: body, pos: 0, env: &env };
        let value = parser.expr()?;
        if let Some((t, p)) = parser.peek() {
            return Err(ParseError::new(format!("unexpected trailing {t}"), *p));
        }
        defs.names.push(name.clone());
        defs.values.insert(name, value);
    }
    Ok(defs)
}

/// Shorthand for tests and diagnostics: parse with no definitions.
pub fn parse_atom_expression(src: &str) -> Result<RatFunc, ParseError> {
    parse_expression(src, &Definitions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::poly::Assignment;
    use crate::symkernel::{rat, MultiPoly};

    fn val(src: &str) -> RatFunc {
        parse_atom_expression(src).unwrap()
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(val("1 + 2*3"), RatFunc::from_int(7));
        assert_eq!(val("(1 + 2)*3"), RatFunc::from_int(9));
        assert_eq!(val("2^3"), RatFunc::from_int(8));
        assert_eq!(val("-2^2"), RatFunc::from_int(-4));
        assert_eq!(val("6/4"), RatFunc::from_rational(rat(3, 2)));
        assert_eq!(val("1 - 2 - 3"), RatFunc::from_int(-4));
        assert_eq!(val("12/3/2"), RatFunc::from_int(2));
    }

    #[test]
    fn atoms_resolve_to_raw_symbols() {
        let f = val("(l1^2 - l2^2)/(l1 - l2)");
        assert_eq!(f, RatFunc::from_poly(
            &MultiPoly::symbol(Symbol::Lambda(1)) + &MultiPoly::symbol(Symbol::Lambda(2)),
        ));
        let g = val("h122 - T123");
        let mut pt = Assignment::new();
        pt.insert(Symbol::Diag(2, 1), rat(5, 1));
        pt.insert(Symbol::Mixed(1, 2, 3), rat(2, 1));
        assert_eq!(g.eval(&pt).unwrap(), rat(3, 1));
    }

    #[test]
    fn division_by_zero_is_reported_with_position() {
        let err = parse_atom_expression("1/(l1 - l1)").unwrap_err();
        assert!(err.message.contains("division"));
        assert_eq!((err.line, err.col), (1, 2));
    }

    #[test]
    fn unknown_name_rejected() {
        let err = parse_atom_expression("l1 + bogus").unwrap_err();
        assert!(err.message.contains("bogus"));
    }

    #[test]
    fn definitions_in_order_with_comments() {
        let src = "\n# squares\na = l1 + l2;\nb = a^2 - 2*l1*l2; # tail comment\n";
        let defs = parse_definitions(src).unwrap();
        assert_eq!(defs.names(), ["a", "b"]);
        let b = defs.get("b").unwrap();
        let expected = val("l1^2 + l2^2");
        assert_eq!(b, &expected);
    }

    #[test]
    fn definition_errors() {
        assert!(parse_definitions("l1 = 3;").unwrap_err().message.contains("shadows"));
        assert!(parse_definitions("a = 1; a = 2;").unwrap_err().message.contains("twice"));
        assert!(parse_definitions("a = 1").unwrap_err().message.contains("missing `;`"));
        assert!(parse_definitions("a = (1;").unwrap_err().message.contains("expected"));
    }

    #[test]
    fn trailing_tokens_rejected() {
        assert!(parse_atom_expression("1 2").is_err());
        assert!(parse_atom_expression("l1 l2").is_err());
    }
}
