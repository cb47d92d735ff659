//! Text input for polynomials and field elements.
//!
//! ```text
//! poly := ['-'] term (('+' | '-') term)*
//! term := [coef ['*']] VAR ['^' uint] | coef
//! coef := int | int '/' uint
//! ```
//!
//! Whitespace is ignored. Defining polynomials use `x`, elements use `a`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{PolyQ, Rational};
use crate::error::{Error, Result};
use crate::field::{NFElem, NumberField};

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    var: char,
    input: &'a str,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, var: char) -> Self {
        Parser { chars: input.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0, var, input }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in {:?}", self.pos, self.input))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn uint(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits.parse().ok()
    }

    fn coef(&mut self) -> Result<Option<Rational>> {
        let Some(n) = self.uint() else { return Ok(None) };
        if self.eat('/') {
            let d = self.uint().ok_or_else(|| self.err("expected denominator"))?;
            if d.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(Rational::new(n, d)))
        } else {
            Ok(Some(Rational::from_integer(n)))
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        if !self.eat('^') {
            return Ok(1);
        }
        let e = self.uint().ok_or_else(|| self.err("expected exponent"))?;
        e.try_into().map_err(|_| self.err("exponent too large"))
    }

    fn term(&mut self) -> Result<(Rational, usize)> {
        let c = self.coef()?;
        if c.is_some() {
            self.eat('*');
        }
        if self.eat(self.var) {
            let e = self.exponent()?;
            Ok((c.unwrap_or_else(|| Rational::from_integer(1.into())), e))
        } else if let Some(c) = c {
            Ok((c, 0))
        } else {
            Err(self.err(&format!("expected a number or '{}'", self.var)))
        }
    }

    fn poly(&mut self) -> Result<PolyQ> {
        if self.chars.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut coeffs: Vec<Rational> = Vec::new();
        let mut negate = self.eat('-');
        loop {
            let (c, e) = self.term()?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Rational::zero());
            }
            coeffs[e] += if negate { -c } else { c };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else if self.peek().is_none() {
                break;
            } else {
                return Err(self.err("unexpected character"));
            }
        }
        Ok(PolyQ::new(coeffs))
    }
}

/// Parses a polynomial in `var` with rational coefficients.
pub fn parse_poly_in(input: &str, var: char) -> Result<PolyQ> {
    Parser::new(input, var).poly()
}

/// Parses a monic integer polynomial in `x` and builds its field.
pub fn parse_field(input: &str) -> Result<NumberField> {
    NumberField::new(parse_poly_in(input, 'x')?)
}

/// Parses an element written in the generator `a`, reduced modulo `f`.
pub fn parse_element(field: &NumberField, input: &str) -> Result<NFElem> {
    Ok(field.from_poly(&parse_poly_in(input, 'a')?))
}
