//! Recursive-descent parser for the ASCII polynomial grammar:
//!
//! ```text
//! poly   := term (('+' | '-') term)*
//! term   := [scalar '*']? factor ('*' factor)*  |  scalar
//! factor := 'x' index ('^' signed-integer)?
//! scalar := integer | integer '/' integer
//! ```
//!
//! Examples: `1 - x1^4`, `2/3*x1*x2^-1 - x2`, `1 - x1*x2*x1^-1*x2^-1`.

use thiserror::Error;

use super::{GroupWord, LaurentPolynomial};
use crate::scalars::{RingDescriptor, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("polynomial is zero after collecting terms")]
    ZeroPolynomial,
}

struct Cursor<'a> {
    text: &'a [u8],
    pos: usize,
    ring: RingDescriptor,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.text[start..self.pos]).unwrap())
    }

    fn scalar(&mut self) -> Result<Scalar, ParseError> {
        let start = self.pos;
        let n = self.digits()?.to_string();
        let lit = if self.eat(b'/') {
            let d = self.digits()?;
            format!("{n}/{d}")
        } else {
            n
        };
        Scalar::parse(&lit, self.ring).map_err(|e| ParseError::Syntax {
            position: start,
            message: e.to_string(),
        })
    }

    // factor := 'x' index ('^' signed-integer)?
    fn factor(&mut self) -> Result<GroupWord, ParseError> {
        if !self.eat(b'x') {
            return self.err("expected variable `x<index>`");
        }
        let index: u32 = self
            .digits()?
            .parse()
            .map_err(|_| ParseError::Syntax {
                position: self.pos,
                message: "variable index out of range".into(),
            })?;
        if index == 0 {
            return self.err("variable indices start at 1");
        }
        let exponent = if self.eat(b'^') {
            let sign = if self.eat(b'-') { -1 } else { 1 };
            let digits = self.digits()?;
            let mag: i64 = digits.parse().map_err(|_| ParseError::Syntax {
                position: self.pos,
                message: "exponent out of range".into(),
            })?;
            sign * mag
        } else {
            1
        };
        Ok(GroupWord::power(index, exponent))
    }

    // term := [scalar '*']? factor ('*' factor)* | scalar
    fn term(&mut self) -> Result<(Scalar, GroupWord), ParseError> {
        let mut coeff = self.ring.one();
        let mut word = GroupWord::identity();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.scalar()?;
                if !self.eat(b'*') {
                    return Ok((coeff, word)); // bare scalar term
                }
            }
            Some(b'x') => {}
            _ => return self.err("expected a scalar or a variable"),
        }
        loop {
            word = word.multiply(&self.factor()?);
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((coeff, word))
    }
}

/// Parses a Laurent polynomial over `ring`. Like terms are merged and zero
/// coefficients dropped; a polynomial that collapses to zero is rejected.
pub fn parse_poly(text: &str, ring: RingDescriptor) -> Result<LaurentPolynomial, ParseError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
        ring,
    };
    let mut poly = LaurentPolynomial::zero(ring);
    // optional leading sign
    let mut negative = match cur.peek() {
        Some(b'-') => {
            cur.pos += 1;
            true
        }
        Some(b'+') => {
            cur.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        let (coeff, word) = cur.term()?;
        poly.add_term(word, if negative { coeff.neg() } else { coeff });
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) => return cur.err("expected `+`, `-`, or end of input"),
        }
    }
    if poly.is_zero() {
        return Err(ParseError::ZeroPolynomial);
    }
    Ok(poly)
}

/// Parses a single free-group word, e.g. `x1*x2^-1*x1`. The identity word
/// can be written `1`.
pub fn parse_word(text: &str) -> Result<GroupWord, ParseError> {
    let mut cur = Cursor {
        text: text.as_bytes(),
        pos: 0,
        ring: RingDescriptor::Integers,
    };
    if cur.peek() == Some(b'1') {
        cur.pos += 1;
        if cur.peek().is_some() {
            return cur.err("trailing input after identity word");
        }
        return Ok(GroupWord::identity());
    }
    let mut word = GroupWord::identity();
    loop {
        word = word.multiply(&cur.factor()?);
        if !cur.eat(b'*') {
            break;
        }
    }
    if cur.peek().is_some() {
        return cur.err("trailing input after word");
    }
    Ok(word)
}
