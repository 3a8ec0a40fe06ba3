//! Word grammar:
//!
//! ```text
//! word := atom*
//! atom := gen ('^' int)?
//! gen  := 'x' | 'x' IDX | 'v[' int (',' int)* ']' | 't'
//! ```
//!
//! `int` is an optionally signed decimal of any size; bare `x` needs `n = 1`.

use std::iter::Peekable;
use std::str::CharIndices;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Letter, Sign, Word};
use crate::error::{Error, Result};
use crate::presentation::GroupSpec;
use crate::IntVector;

/// Expanding `t^k` beyond this many letters is refused.
const MAX_T_POWER: u64 = 1 << 20;

pub fn parse_word(text: &str, spec: &GroupSpec) -> Result<Word> {
    Parser {
        text,
        chars: text.char_indices().peekable(),
        n: spec.n(),
    }
    .word()
}

struct Parser<'a> {
    text: &'a str,
    chars: Peekable<CharIndices<'a>>,
    n: usize,
}

impl Parser<'_> {
    fn column(&mut self) -> usize {
        match self.chars.peek() {
            Some(&(i, _)) => self.text[..i].chars().count() + 1,
            None => self.text.chars().count() + 1,
        }
    }

    fn error<T>(&mut self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.chars.next_if(|(_, c)| c.is_whitespace()).is_some() {}
    }

    fn eat(&mut self, want: char) -> bool {
        self.chars.next_if(|&(_, c)| c == want).is_some()
    }

    fn word(mut self) -> Result<Word> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            let Some(&(_, c)) = self.chars.peek() else {
                break;
            };
            match c {
                't' => {
                    self.chars.next();
                    let e = self.exponent()?;
                    let sign = if e.is_negative() {
                        Sign::Neg
                    } else {
                        Sign::Pos
                    };
                    let count = e.magnitude().to_u64().filter(|&k| k <= MAX_T_POWER);
                    let Some(count) = count else {
                        return self.error(format!("t exponent {e} is too large"));
                    };
                    letters.extend(std::iter::repeat_n(Letter::T(sign), count as usize));
                }
                'x' => {
                    let col = self.column();
                    self.chars.next();
                    let base = self.generator_index(col)?;
                    let e = self.exponent()?;
                    push_x(&mut letters, base.scale(&e));
                }
                'v' => {
                    self.chars.next();
                    if !self.eat('[') {
                        return self.error("expected '[' after 'v'");
                    }
                    let base = self.vector()?;
                    let e = self.exponent()?;
                    push_x(&mut letters, base.scale(&e));
                }
                other => return self.error(format!("unexpected character {other:?}")),
            }
        }
        Ok(Word(letters))
    }

    fn generator_index(&mut self, col: usize) -> Result<IntVector> {
        let mut digits = String::new();
        while let Some((_, d)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            digits.push(d);
        }
        if digits.is_empty() {
            if self.n != 1 {
                return Err(Error::Parse {
                    column: col,
                    message: format!(
                        "bare 'x' needs n = 1 (n = {}); use x1..x{} or v[...]",
                        self.n, self.n
                    ),
                });
            }
            return Ok(IntVector::unit(1, 0));
        }
        match digits.parse::<usize>() {
            Ok(i) if (1..=self.n).contains(&i) => Ok(IntVector::unit(self.n, i - 1)),
            _ => Err(Error::Parse {
                column: col,
                message: format!("generator index x{digits} out of range 1..={}", self.n),
            }),
        }
    }

    fn vector(&mut self) -> Result<IntVector> {
        let mut coords = Vec::new();
        loop {
            self.skip_ws();
            coords.push(self.int()?);
            self.skip_ws();
            if self.eat(',') {
                continue;
            }
            if self.eat(']') {
                break;
            }
            return self.error("expected ',' or ']'");
        }
        if coords.len() != self.n {
            return self.error(format!(
                "vector has {} entries, expected {}",
                coords.len(),
                self.n
            ));
        }
        Ok(IntVector::new(coords))
    }

    fn exponent(&mut self) -> Result<BigInt> {
        if self.eat('^') {
            self.int()
        } else {
            Ok(BigInt::from(1))
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        let mut s = String::new();
        if let Some((_, c)) = self.chars.next_if(|&(_, c)| c == '-' || c == '+') {
            s.push(c);
        }
        while let Some((_, d)) = self.chars.next_if(|(_, c)| c.is_ascii_digit()) {
            s.push(d);
        }
        match s.parse::<BigInt>() {
            Ok(v) => Ok(v),
            Err(_) => self.error("expected an integer"),
        }
    }
}

fn push_x(letters: &mut Vec<Letter>, z: IntVector) {
    if !z.is_zero() {
        letters.push(Letter::X(z));
    }
}
