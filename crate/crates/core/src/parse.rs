//! Parser for ground fact programs.
//!
//! ```text
//! program  := (fact | comment)*
//! fact     := pred ("(" termlist? ")")? "."
//! term     := int | string | ident ("(" termlist? ")")? | "(" termlist? ")"
//! termlist := term ("," term)*
//! pred     := "_"* [a-z] [A-Za-z0-9_']* ("-" [A-Za-z0-9_']+)*
//! ident    := [a-z] [A-Za-z0-9_']*
//! int      := "-"? [0-9]+
//! comment  := "%" to end of line | "%*" ... "*%"
//! ```
//!
//! `(t)` is `t`, `(t,)` is a one-element tuple. Variables, operators and
//! rules are rejected.

use crate::error::SyntaxError;
use crate::term::{Fact, Term};

pub fn parse_program(text: &str) -> Result<Vec<Fact>, SyntaxError> {
    let mut p = Parser::new(text);
    let mut facts = Vec::new();
    loop {
        p.skip_trivia()?;
        if p.at_end() {
            return Ok(facts);
        }
        facts.push(p.fact(true)?);
    }
}

/// Parses a single atom; the terminating period is optional.
pub fn parse_fact(text: &str) -> Result<Fact, SyntaxError> {
    let mut p = Parser::new(text);
    p.skip_trivia()?;
    let fact = p.fact(false)?;
    p.skip_trivia()?;
    p.expect_end()?;
    Ok(fact)
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    let mut p = Parser::new(text);
    p.skip_trivia()?;
    let t = p.term()?;
    p.skip_trivia()?;
    p.expect_end()?;
    Ok(t)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

type PResult<T> = Result<T, SyntaxError>;

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(self.line, self.col, message)
    }

    fn error_at(&self, (line, col): (usize, usize), message: impl Into<String>) -> SyntaxError {
        SyntaxError::new(line, col, message)
    }

    fn here(&self) -> (usize, usize) {
        (self.line, self.col)
    }

    fn describe_next(&self) -> String {
        match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        }
    }

    fn skip_trivia(&mut self) -> PResult<()> {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '%' {
                if self.peek_at(1) == Some('*') {
                    let start = self.here();
                    self.bump();
                    self.bump();
                    loop {
                        match self.bump() {
                            Some('*') if self.peek() == Some('%') => {
                                self.bump();
                                break;
                            }
                            Some(_) => {}
                            None => return Err(self.error_at(start, "unterminated block comment")),
                        }
                    }
                } else {
                    while let Some(c) = self.peek() {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
            } else {
                break;
            }
        }
        Ok(())
    }

    fn expect_end(&self) -> PResult<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected {}", self.describe_next())))
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`, found {}", self.describe_next())))
        }
    }

    fn ident_rest(&mut self, name: &mut String) {
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                name.push(c);
                self.bump();
            } else {
                break;
            }
        }
    }

    fn fact(&mut self, require_period: bool) -> PResult<Fact> {
        let start = self.here();
        let mut name = String::new();
        while self.peek() == Some('_') {
            name.push('_');
            self.bump();
        }
        match self.peek() {
            Some(c) if c.is_ascii_lowercase() => {
                self.ident_rest(&mut name);
                // Prefixed predicate names such as `viz-node`.
                while self.peek() == Some('-')
                    && self
                        .peek_at(1)
                        .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
                {
                    name.push('-');
                    self.bump();
                    self.ident_rest(&mut name);
                }
            }
            Some(c) if c.is_ascii_uppercase() || !name.is_empty() => {
                return Err(self.error_at(start, "variables are not allowed in facts"));
            }
            _ => {
                return Err(self.error_at(
                    start,
                    format!("expected a predicate name, found {}", self.describe_next()),
                ));
            }
        }
        self.skip_trivia()?;
        let args = if self.peek() == Some('(') {
            self.bump();
            self.term_list(')')?
        } else {
            Vec::new()
        };
        self.skip_trivia()?;
        if require_period || self.peek() == Some('.') {
            if self.peek() != Some('.') {
                return Err(self.error(format!(
                    "expected `.` after fact, found {}",
                    self.describe_next()
                )));
            }
            self.bump();
        }
        Ok(Fact::new(name, args))
    }

    /// Parses terms up to and including `close`. The opening bracket has
    /// already been consumed.
    fn term_list(&mut self, close: char) -> PResult<Vec<Term>> {
        let mut items = Vec::new();
        self.skip_trivia()?;
        if self.peek() == Some(close) {
            self.bump();
            return Ok(items);
        }
        loop {
            items.push(self.term()?);
            self.skip_trivia()?;
            match self.peek() {
                Some(',') => {
                    self.bump();
                    self.skip_trivia()?;
                }
                Some(c) if c == close => {
                    self.bump();
                    return Ok(items);
                }
                _ => {
                    return Err(self.error(format!(
                        "expected `,` or `{close}`, found {}",
                        self.describe_next()
                    )))
                }
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        match self.peek() {
            Some('"') => self.string(),
            Some(c) if c.is_ascii_digit() || c == '-' => self.integer(),
            Some('(') => self.tuple(),
            Some(c) if c.is_ascii_lowercase() => {
                let mut name = String::new();
                self.ident_rest(&mut name);
                self.skip_trivia()?;
                if self.peek() == Some('(') {
                    self.bump();
                    let args = self.term_list(')')?;
                    Ok(Term::function(name, args))
                } else {
                    Ok(Term::Constant(name))
                }
            }
            Some(c) if c.is_ascii_uppercase() || c == '_' => {
                Err(self.error("variables are not allowed in facts"))
            }
            _ => Err(self.error(format!("expected a term, found {}", self.describe_next()))),
        }
    }

    fn tuple(&mut self) -> PResult<Term> {
        self.expect('(')?;
        self.skip_trivia()?;
        if self.peek() == Some(')') {
            self.bump();
            return Ok(Term::Tuple(Vec::new()));
        }
        let first = self.term()?;
        self.skip_trivia()?;
        match self.peek() {
            Some(')') => {
                self.bump();
                Ok(first)
            }
            Some(',') => {
                self.bump();
                self.skip_trivia()?;
                if self.peek() == Some(')') {
                    self.bump();
                    return Ok(Term::Tuple(vec![first]));
                }
                let mut items = vec![first];
                items.extend(self.term_list(')')?);
                Ok(Term::Tuple(items))
            }
            _ => Err(self.error(format!(
                "expected `,` or `)`, found {}",
                self.describe_next()
            ))),
        }
    }

    fn integer(&mut self) -> PResult<Term> {
        let start = self.here();
        let mut digits = String::new();
        if self.peek() == Some('-') {
            digits.push('-');
            self.bump();
            self.skip_trivia()?;
            if !self.peek().is_some_and(|c| c.is_ascii_digit()) {
                return Err(self.error(format!(
                    "expected a digit after `-`, found {}",
                    self.describe_next()
                )));
            }
        }
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                digits.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        {
            return Err(self.error(format!("unexpected {} in number", self.describe_next())));
        }
        digits
            .parse::<i64>()
            .map(Term::Integer)
            .map_err(|_| self.error_at(start, "integer out of range"))
    }

    fn string(&mut self) -> PResult<Term> {
        let start = self.here();
        self.expect('"')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok(Term::String(value)),
                Some('\\') => {
                    let at = self.here();
                    match self.bump() {
                        Some('"') => value.push('"'),
                        Some('\\') => value.push('\\'),
                        Some('n') => value.push('\n'),
                        Some(c) => {
                            return Err(self.error_at(at, format!("unknown escape `\\{c}`")));
                        }
                        None => return Err(self.error_at(start, "unterminated string")),
                    }
                }
                Some(c) => value.push(c),
                None => return Err(self.error_at(start, "unterminated string")),
            }
        }
    }
}
