//! Parser for form expressions with polynomial coefficients.
//!
//! ```text
//! expr     := ["-"] term { ("+" | "-") term } ;
//! term     := factor { "*" factor } ;
//! factor   := scalar | atom | "(" expr ")" ;
//! atom     := "x" nat | "d" [ "^" nat ] "(" "x" nat ")" ;
//! scalar   := rational [ "*" "q" [ "^" int ] ] | "q" [ "^" int ] ;
//! rational := int [ "/" nat ] ;
//! ```
//!
//! The printed form of a [`FormExpression<VarPoly>`] is accepted back unchanged.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::grassmann::FormExpression;
use crate::scalars::{CycScalar, Mode, Rational, VarPoly};

pub type Form = FormExpression<VarPoly>;

pub fn parse_form(text: &str, n: u32, dim: u32) -> Result<Form> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        n,
        dim,
    };
    p.skip_ws();
    if p.peek().is_none() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(&format!("unexpected '{c}'")));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: u32,
    dim: u32,
}

impl Parser {
    fn mode(&self) -> Mode {
        Mode::root(self.n)
    }

    fn error(&self, message: &str) -> Error {
        self.error_at(self.pos, message)
    }

    fn error_at(&self, pos: usize, message: &str) -> Error {
        let before = &self.chars[..pos.min(self.chars.len())];
        let line = before.iter().filter(|&&c| c == '\n').count() + 1;
        let column = before.iter().rev().take_while(|&&c| c != '\n').count() + 1;
        Error::Parse {
            line,
            column,
            message: message.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{c}'")))
        }
    }

    fn constant(&self, c: CycScalar) -> Form {
        FormExpression::coefficient(self.n, self.dim, VarPoly::constant(c))
    }

    fn expr(&mut self) -> Result<Form> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Form> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Form> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('q') => {
                self.pos += 1;
                let e = if self.eat('^') { self.int()? } else { 1 };
                Ok(self.constant(CycScalar::q_pow(self.mode(), e)))
            }
            Some('x') => {
                let k = self.coordinate()?;
                Ok(FormExpression::coefficient(
                    self.n,
                    self.dim,
                    VarPoly::coordinate(self.mode(), k),
                ))
            }
            Some('d') => self.differential(),
            Some(c) if c.is_ascii_digit() => {
                let r = self.rational()?;
                Ok(self.constant(CycScalar::from_rational(self.mode(), r)))
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn differential(&mut self) -> Result<Form> {
        let start = self.pos;
        self.pos += 1;
        let m = if self.eat('^') { self.nat()? } else { 1 };
        if m == 0 || m >= self.n {
            return Err(self.error_at(start, &format!("d^{m} needs 1 <= m < N = {}", self.n)));
        }
        self.expect('(')?;
        self.skip_ws();
        let k = self.coordinate()?;
        self.expect(')')?;
        FormExpression::generator(self.n, self.dim, m, k)
    }

    /// `x` followed by an index in 1..=D.
    fn coordinate(&mut self) -> Result<u32> {
        let start = self.pos;
        if self.peek() != Some('x') {
            return Err(self.error("expected a coordinate x<k>"));
        }
        self.pos += 1;
        let k = self.nat()?;
        if k == 0 || k > self.dim {
            return Err(self.error_at(start, &format!("unknown coordinate x{k} (D = {})", self.dim)));
        }
        Ok(k)
    }

    fn digits(&mut self) -> Result<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn nat(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        self.digits()?
            .parse()
            .map_err(|_| self.error_at(start, "number out of range"))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let negative = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        let v: i64 = self
            .digits()?
            .parse()
            .map_err(|_| self.error_at(start, "exponent out of range"))?;
        Ok(if negative { -v } else { v })
    }

    fn rational(&mut self) -> Result<Rational> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        let save = self.pos;
        if self.eat('/') {
            self.skip_ws();
            let start = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den == BigInt::from(0) {
                return Err(self.error_at(start, "zero denominator"));
            }
            return Ok(Rational::new(num, den));
        }
        self.pos = save;
        Ok(Rational::from_integer(num))
    }
}

/// `text` parsed and printed back in canonical form.
pub fn normalize(text: &str, n: u32, dim: u32) -> Result<String> {
    Ok(parse_form(text, n, dim)?.to_string())
}

/// True iff the expression is zero after normalization.
pub fn is_zero(text: &str, n: u32, dim: u32) -> Result<bool> {
    Ok(parse_form(text, n, dim)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(t: &str, n: u32) -> Form {
        parse_form(t, n, 3).unwrap()
    }

    #[test]
    fn monomials() {
        assert_eq!(parse("d(x1)*d(x2)", 3).to_string(), "d(x1)*d(x2)");
        assert_eq!(parse("d^2(x1)*d(x2)", 3).to_string(), "d^2(x1)*d(x2)");
        assert_eq!(parse("d(x1)*d^2(x2)", 3).to_string(), "q*d^2(x2)*d(x1)");
        assert!(parse("d(x1)*d(x1)*d(x1)", 3).is_zero());
    }

    #[test]
    fn coefficients() {
        let f = parse("(x1 + 2)*d(x1) - 1/3*q^2*x2*x2*d(x3)", 3);
        let printed = "(2 + x1)*d(x1) + ((1/3 + 1/3*q)*x2*x2)*d(x3)";
        assert_eq!(f.to_string(), printed);
        assert_eq!(parse(&f.to_string(), 3), f);
        assert_eq!(parse("q^3", 3).to_string(), "1");
        assert_eq!(parse("q^-1", 3), parse("q^2", 3));
        assert_eq!(parse("-x1 + x1", 3).to_string(), "0");
        assert_eq!(parse("3 * q", 3).to_string(), "3*q");
        assert_eq!(parse(" 2\n*\tx1 ", 3).to_string(), "2*x1");
    }

    #[test]
    fn errors() {
        let err = |t: &str| parse_form(t, 3, 2).unwrap_err();
        assert_eq!(
            err("d(x3)"),
            Error::Parse {
                line: 1,
                column: 3,
                message: "unknown coordinate x3 (D = 2)".into()
            }
        );
        assert!(matches!(err("d^3(x1)"), Error::Parse { column: 1, .. }));
        assert!(matches!(err("d^0(x1)"), Error::Parse { .. }));
        assert!(matches!(err("x1 +\n  * x2"), Error::Parse { line: 2, column: 3, .. }));
        assert!(matches!(err("x1)"), Error::Parse { column: 3, .. }));
        assert!(matches!(err(""), Error::Parse { .. }));
        assert!(matches!(err("1/0"), Error::Parse { .. }));
        assert!(matches!(err("y1"), Error::Parse { .. }));
        assert!(matches!(err("(x1"), Error::Parse { .. }));
    }
}
