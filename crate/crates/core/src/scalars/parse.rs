//! Parser for the canonical scalar grammar used in CLI inputs and JSON
//! reports: rationals, the symbols c and h, `+ - * / ^` and parentheses.
//! Accepts everything the renderer emits, e.g. "(c + 1)/2", "456 - 15*c".

use num_bigint::BigInt;

use super::ratfunc::RatFunc;
use super::Rat;
use crate::error::{Error, Result};

pub fn parse_scalar(input: &str) -> Result<RatFunc> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
        input,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(Error::Parse(format!(
            "unexpected trailing input at byte {} in {:?}",
            p.pos, input
        )));
    }
    Ok(v)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        self.skip_ws();
        let c = self.chars.get(self.pos).copied();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.bump();
                    let f = self.factor()?;
                    acc = acc.checked_div(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let base = match self.peek() {
            Some('-') => {
                self.bump();
                let f = self.factor()?;
                return Ok(-&f);
            }
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                match self.bump() {
                    Some(')') => e,
                    _ => return Err(Error::Parse(format!("missing ')' in {:?}", self.input))),
                }
            }
            Some('c') => {
                self.bump();
                RatFunc::c()
            }
            Some('h') => {
                self.bump();
                RatFunc::h()
            }
            Some(d) if d.is_ascii_digit() => {
                self.skip_ws();
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad number {digits:?}")))?;
                RatFunc::from_rat(Rat::from_integer(n))
            }
            other => {
                return Err(Error::Parse(format!(
                    "unexpected {:?} in {:?}",
                    other, self.input
                )))
            }
        };
        if self.peek() == Some('^') {
            self.bump();
            let neg = if self.peek() == Some('-') {
                self.bump();
                true
            } else {
                false
            };
            match self.peek() {
                Some(d) if d.is_ascii_digit() => {
                    let start = self.pos;
                    while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                        self.pos += 1;
                    }
                    let digits: String = self.chars[start..self.pos].iter().collect();
                    let k: i32 = digits
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent {digits:?}")))?;
                    return base.pow(if neg { -k } else { k });
                }
                _ => return Err(Error::Parse(format!("bad exponent in {:?}", self.input))),
            }
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_renderer_output() {
        for s in [
            "0",
            "1/2",
            "h",
            "2*h",
            "-15*c + 456",
            "(c + 1)/2",
            "(-13/6 + 1/12*c)",
            "c^2 - 2*c*h + 1",
            "1/(c - 26)",
        ] {
            let v = parse_scalar(s).unwrap();
            let rendered = v.to_string_with(&["c", "h"]);
            let reparsed = parse_scalar(&rendered).unwrap();
            assert_eq!(v, reparsed, "round trip failed for {s}");
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_scalar("c +").is_err());
        assert!(parse_scalar("(c").is_err());
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("1/0").is_err());
    }
}
