//! Text form of groups: `Z^n x Z/m1 x Z/m2 ...`.
//!
//! Whitespace is ignored. `Z` alone means `Z^1`; several free terms add up.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at byte {position}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.text[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, want: char) -> bool {
        if self.peek() == Some(want) {
            self.pos += want.len_utf8();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl fmt::Display) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits: String = self.text[start..]
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .collect();
        if digits.is_empty() {
            return Err(self.error("expected a number"));
        }
        let value = digits
            .parse::<u64>()
            .map_err(|_| self.error("number too large"))?;
        self.pos += digits.len();
        Ok(value)
    }
}

/// Parses the text form into `(rank, torsion)` without checking that the
/// result is a valid group description, so `Z^0` yields `(0, [])`.
pub fn parse_group_text(text: &str) -> Result<(u32, Vec<u64>), ParseError> {
    let mut cur = Cursor { text, pos: 0 };
    let mut rank: u32 = 0;
    let mut torsion = Vec::new();
    loop {
        if cur.peek().is_none() {
            return Err(cur.error("expected a term `Z`, `Z^n` or `Z/m`"));
        }
        if !cur.eat('Z') {
            let found = cur.peek().unwrap_or(' ');
            return Err(cur.error(format!("unexpected `{found}`, expected `Z`")));
        }
        if cur.eat('^') {
            let at = cur.pos;
            let n = cur.number()?;
            let n = u32::try_from(n).map_err(|_| ParseError {
                position: at,
                message: "rank too large".into(),
            })?;
            rank = rank
                .checked_add(n)
                .ok_or_else(|| cur.error("rank too large"))?;
        } else if cur.eat('/') {
            torsion.push(cur.number()?);
        } else {
            rank = rank
                .checked_add(1)
                .ok_or_else(|| cur.error("rank too large"))?;
        }
        match cur.peek() {
            None => break,
            Some('x') | Some('X') | Some('×') => {
                let c = cur.peek().unwrap();
                cur.pos += c.len_utf8();
            }
            Some(c) => return Err(cur.error(format!("unexpected `{c}`, expected `x`"))),
        }
    }
    Ok((rank, torsion))
}
