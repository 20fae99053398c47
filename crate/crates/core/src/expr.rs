//! Factor expressions: `summand ("+" summand)*` with
//! `summand := "I(" int "," int ")" | "II(" int ")" | "III(" int ")" | "IV(" int ")"`.
//! Whitespace is ignored between tokens.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::factors::FactorDescriptor;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactorExpression {
    pub summands: Vec<FactorDescriptor>,
}

impl FactorExpression {
    pub fn new(summands: Vec<FactorDescriptor>) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Parse {
                position: 0,
                message: "empty factor expression".into(),
            });
        }
        for d in &summands {
            d.validate()?;
        }
        Ok(Self { summands })
    }
}

impl fmt::Display for FactorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.summands.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer out of range")
        })
    }

    fn summand(&mut self) -> Result<FactorDescriptor> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let kind = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii letters");
        let d = match kind {
            "I" => {
                self.expect(b'(')?;
                let rows = self.int()?;
                self.expect(b',')?;
                let cols = self.int()?;
                self.expect(b')')?;
                FactorDescriptor::Rectangular { rows, cols }
            }
            "II" | "III" | "IV" => {
                self.expect(b'(')?;
                let n = self.int()?;
                self.expect(b')')?;
                match kind {
                    "II" => FactorDescriptor::Symplectic { n },
                    "III" => FactorDescriptor::Hermitian { n },
                    _ => FactorDescriptor::Spin { dim: n },
                }
            }
            "" => {
                return self.err("expected a factor type (I, II, III or IV)");
            }
            other => {
                self.pos = start;
                return self.err(format!("unsupported factor type {other:?}"));
            }
        };
        if let Err(e) = d.validate() {
            self.pos = start;
            return self.err(e.to_string());
        }
        Ok(d)
    }
}

impl FromStr for FactorExpression {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let mut summands = vec![p.summand()?];
        loop {
            match p.peek() {
                None => break,
                Some(b'+') => {
                    p.pos += 1;
                    summands.push(p.summand()?);
                }
                Some(_) => return p.err("expected '+' or end of input"),
            }
        }
        Self::new(summands)
    }
}
