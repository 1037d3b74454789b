//! Text syntax for words: a whitespace-separated product of factors
//!
//! ```text
//! factor := atom ('^' integer)?
//! atom   := 'x' k | '[' word ',' word (',' word)* ']' | '(' word ')' | '1'
//! ```
//!
//! `[u, v, w]` is the left-nested commutator `[[u, v], w]`. Example:
//! `x1^2 [x1, x2]^3`.

use super::{Word, WordError};

const UNBOUNDED: usize = usize::MAX;

struct Parser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> WordError {
        WordError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '*' {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error("expected an integer"))
    }

    fn word(&mut self) -> Result<Word, WordError> {
        let mut acc = Word::identity(UNBOUNDED);
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(']') | Some(')') | Some(',') => return Ok(acc),
                _ => {
                    let f = self.factor()?;
                    acc = acc.concat(&f);
                }
            }
        }
    }

    fn factor(&mut self) -> Result<Word, WordError> {
        let base = self.atom()?;
        if self.eat('^') {
            let e = self.integer()?;
            Ok(base.power(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Word, WordError> {
        self.skip_ws();
        match self.peek() {
            Some('x') | Some('X') => {
                self.pos += 1;
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let v: usize = self.text[start..self.pos]
                    .parse()
                    .map_err(|_| self.error("expected a variable index after 'x'"))?;
                if v == 0 {
                    return Err(self.error("variables are numbered from 1"));
                }
                Word::generator(UNBOUNDED, v)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Word::identity(UNBOUNDED))
            }
            Some('(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let mut acc = self.word()?;
                let mut parts = 1;
                while self.eat(',') {
                    let next = self.word()?;
                    acc = Word::commutator(&acc, &next);
                    parts += 1;
                }
                if parts < 2 {
                    return Err(self.error("a commutator needs at least two entries"));
                }
                if !self.eat(']') {
                    return Err(self.error("expected ']'"));
                }
                Ok(acc)
            }
            Some(c) => Err(self.error(format!("unexpected character {c:?}"))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

fn parse_unbounded(text: &str) -> Result<Word, WordError> {
    let mut p = Parser { text, pos: 0 };
    let w = p.word()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input"));
    }
    Ok(w)
}

/// Parses a word; its rank is the largest variable index that occurs.
pub fn parse_word(text: &str) -> Result<Word, WordError> {
    let w = parse_unbounded(text)?;
    let d = w.max_variable();
    w.with_arity(d)
}

/// Parses a word in `F(X_1, ..., X_d)`.
pub fn parse_word_with_arity(text: &str, d: usize) -> Result<Word, WordError> {
    let w = parse_unbounded(text)?;
    let max = w.max_variable();
    if max > d {
        return Err(WordError::VariableOutOfRange { variable: max, d });
    }
    w.with_arity(d)
}
