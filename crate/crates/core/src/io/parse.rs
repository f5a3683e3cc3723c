//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr    := ['-'] term (('+' | '-') term)*
//! term    := power (('*' | '/') power)*
//! power   := primary ['^' integer]
//! primary := integer | name | '(' expr ')'
//! ```
//!
//! `i` is the imaginary unit unless it names a variable. Division is only
//! allowed by nonzero constants.

use thiserror::Error;

use crate::arith::{Field, Rational};
use crate::poly::{MultiPoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },
    #[error("`i` at offset {offset} is not available over Q")]
    GaussianLiteralInRationalField { offset: usize },
}

const MAX_EXPONENT: u64 = 4096;

struct Parser<'a, F: Field> {
    text: &'a [u8],
    pos: usize,
    vars: &'a Vars,
    _field: std::marker::PhantomData<F>,
}

pub fn parse_polynomial<F: Field>(text: &str, vars: &Vars) -> Result<MultiPoly<F>, ParseError> {
    let mut p = Parser { text: text.as_bytes(), pos: 0, vars, _field: std::marker::PhantomData };
    p.skip_ws();
    if p.at_end() {
        return Err(p.syntax("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.syntax("unexpected character"));
    }
    Ok(e)
}

impl<F: Field> Parser<'_, F> {
    fn syntax(&self, message: &str) -> ParseError {
        ParseError::Syntax { offset: self.pos, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while self.text.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
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

    fn expr(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let negate = self.eat(b'-');
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.power()?;
            } else if self.peek() == Some(b'/') {
                let at = self.pos;
                self.pos += 1;
                let d = self.power()?;
                let inv =
                    d.constant_value().filter(|c| !c.is_zero()).and_then(|c| c.inverse().ok()).ok_or(
                        ParseError::Syntax { offset: at, message: "division by a non-constant or zero".into() },
                    )?;
                acc = acc.scale(&inv);
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let base = self.primary()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let e = self.integer()?.ok_or_else(|| self.syntax("expected exponent"))?;
            let e: u64 = e
                .to_string()
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or(ParseError::Syntax { offset: at, message: "exponent too large".into() })?;
            return Ok(base.pow(e as u32));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Option<Rational>, ParseError> {
        let start = self.pos;
        while self.text.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Ok(None);
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
        let n: num_bigint::BigInt = digits.parse().expect("digits");
        Ok(Some(Rational::from_bigints(n, 1.into()).expect("nonzero denominator")))
    }

    fn primary(&mut self) -> Result<MultiPoly<F>, ParseError> {
        let Some(c) = self.peek() else {
            return Err(self.syntax("unexpected end of input"));
        };
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(self.syntax("expected `)`"));
            }
            return Ok(e);
        }
        if c.is_ascii_digit() {
            let n = self.integer()?.expect("digit present");
            return Ok(MultiPoly::constant(self.vars, F::from_rational(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.text.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
            if let Some(v) = self.vars.index_of(name) {
                return Ok(MultiPoly::var(self.vars, v));
            }
            if name == "i" {
                return F::imaginary_unit()
                    .map(|u| MultiPoly::constant(self.vars, u))
                    .ok_or(ParseError::GaussianLiteralInRationalField { offset: start });
            }
            return Err(ParseError::UnknownVariable { name: name.to_string(), offset: start });
        }
        Err(self.syntax("unexpected character"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::GaussianRational;
    use crate::poly::{affine_vars, p2_vars};

    #[test]
    fn basic() {
        let p: MultiPoly<Rational> = parse_polynomial("z1^2 - 1", &affine_vars()).unwrap();
        assert_eq!(p.to_string(), "z1^2 - 1");
        let q: MultiPoly<Rational> = parse_polynomial(" -(z2 - 3*z1 + 2) * 2/3 ", &affine_vars()).unwrap();
        assert_eq!(q.to_string(), "2*z1 - 2/3*z2 - 4/3");
    }

    #[test]
    fn gaussian_term() {
        let p: MultiPoly<GaussianRational> = parse_polynomial("(3/5 + 4/5*i)*z1*z2", &p2_vars()).unwrap();
        assert_eq!(p.to_string(), "(3/5+4/5*i)*z1*z2");
        assert_eq!(
            parse_polynomial::<Rational>("i*z1", &p2_vars()),
            Err(ParseError::GaussianLiteralInRationalField { offset: 0 })
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_polynomial::<Rational>("z1 + + 2", &affine_vars()),
            Err(ParseError::Syntax { offset: 5, .. })
        ));
        assert_eq!(
            parse_polynomial::<Rational>("z1 + w", &affine_vars()),
            Err(ParseError::UnknownVariable { name: "w".into(), offset: 5 })
        );
        for bad in ["", "(z1", "z1)", "z1/z2", "1/0", "z1^", "3 z1", "z1 ** 2", "#", "z1^2^1", "z1^99999"] {
            assert!(
                matches!(parse_polynomial::<Rational>(bad, &affine_vars()), Err(ParseError::Syntax { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn power_binds_tighter_than_product() {
        let p: MultiPoly<Rational> = parse_polynomial("2*z1^2", &affine_vars()).unwrap();
        assert_eq!(p.to_string(), "2*z1^2");
        let q: MultiPoly<Rational> = parse_polynomial("-z1^2", &affine_vars()).unwrap();
        assert_eq!(q.to_string(), "-z1^2");
    }
}
