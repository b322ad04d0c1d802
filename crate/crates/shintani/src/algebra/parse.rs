//! Reader for the textual rational-function grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? integer)?
//! atom   := integer | name | '(' expr ')'
//! name   := v | u | X | x<i> | y<j> | z<k>
//! ```

use super::coeff::Q;
use super::error::AlgebraError;
use super::mono::slot_of_name;
use super::ratfunc::RatFunc;

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

fn err(msg: &str, at: usize) -> AlgebraError {
    AlgebraError::Parse(format!("{} at offset {}", msg, at))
}

impl<'a> Parser<'a> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.i).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, AlgebraError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.i += 1;
                    acc = &acc + &self.term()?;
                }
                b'-' => {
                    self.i += 1;
                    acc = &acc - &self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, AlgebraError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.i += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.i += 1;
                    let d = self.unary()?;
                    acc = acc.checked_div(&d)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, AlgebraError> {
        if self.peek() == Some(b'-') {
            self.i += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn integer(&mut self) -> Result<i64, AlgebraError> {
        self.ws();
        let start = self.i;
        if self.s.get(self.i) == Some(&b'-') {
            self.i += 1;
        }
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i]).unwrap().parse().map_err(|_| err("expected integer", start))
    }

    fn power(&mut self) -> Result<RatFunc, AlgebraError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.i += 1;
            let e = self.integer()?;
            if e < 0 && base.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            return Ok(base.pow(e as i32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RatFunc, AlgebraError> {
        let c = self.peek().ok_or_else(|| err("unexpected end", self.i))?;
        let start = self.i;
        if c == b'(' {
            self.i += 1;
            let e = self.expr()?;
            if self.peek() != Some(b')') {
                return Err(err("expected ')'", self.i));
            }
            self.i += 1;
            return Ok(e);
        }
        if c.is_ascii_digit() {
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let t = std::str::from_utf8(&self.s[start..self.i]).unwrap();
            let q = Q::parse(t).ok_or_else(|| err("bad number", start))?;
            return Ok(RatFunc::constant(q));
        }
        if c.is_ascii_alphabetic() {
            self.i += 1;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let t = std::str::from_utf8(&self.s[start..self.i]).unwrap();
            let slot = slot_of_name(t).ok_or_else(|| err(&format!("unknown variable '{}'", t), start))?;
            return Ok(RatFunc::var(slot));
        }
        Err(err("unexpected character", start))
    }
}

pub fn parse_ratfunc(s: &str) -> Result<RatFunc, AlgebraError> {
    let mut p = Parser { s: s.as_bytes(), i: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(err("trailing input", p.i));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        for s in ["x1^2 - 1", "3*v^-1", "(-1)/(x1 - 1)", "(v^2*x1 + 2*u)/(y1*z2 - X)", "1/2*x1"] {
            let f = parse_ratfunc(s).unwrap();
            assert_eq!(format!("{}", f), s);
            assert_eq!(parse_ratfunc(&format!("{}", f)).unwrap(), f);
        }
    }

    #[test]
    fn errors() {
        assert!(parse_ratfunc("x1 +").is_err());
        assert!(parse_ratfunc("w").is_err());
        assert!(matches!(parse_ratfunc("1/(x1 - x1)"), Err(AlgebraError::DivisionByZero)));
    }
}
