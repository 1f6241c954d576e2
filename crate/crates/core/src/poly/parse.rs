use num_bigint::BigInt;

use super::monomial::Monomial;
use super::multipoly::MultiPoly;
use crate::error::{Error, Result};
use crate::exactmath::{Field, Scalar};

/// Parses a polynomial in `X1..Xn`.
///
/// Grammar: `expr := ['+'|'-'] term (('+'|'-') term)*`,
/// `term := coeff ['*' factor ('*' factor)*] | factor ('*' factor)*`,
/// `factor := 'X' int ['^' int]`, `coeff := int ['/' int]`. Whitespace is ignored.
pub fn parse_poly(text: &str, n_vars: usize, field: Field) -> Result<MultiPoly> {
    Parser { src: text.as_bytes(), pos: 0, n_vars, field }.expr()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n_vars: usize,
    field: Field,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { pos: self.pos, msg: msg.into() })
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }

    fn small_int(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.int()?;
        usize::try_from(v).or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.field, self.n_vars);
        let mut negate = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                None => return Ok(acc),
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut coeff = self.field.one();
        let mut mono = Monomial::one(self.n_vars);
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                coeff = self.coeff()?;
                if !self.eat(b'*') {
                    return Ok(MultiPoly::constant(self.field, self.n_vars, coeff));
                }
                mono = mono.mul(&self.factor()?);
            }
            Some(b'X') => mono = mono.mul(&self.factor()?),
            Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            None => return self.err("unexpected end of input"),
        }
        while self.eat(b'*') {
            mono = mono.mul(&self.factor()?);
        }
        Ok(MultiPoly::term(self.field, coeff, mono))
    }

    fn coeff(&mut self) -> Result<Scalar> {
        let num = self.int()?;
        if !self.eat(b'/') {
            return Ok(self.field.from_bigint(&num));
        }
        let at = self.pos;
        let den = self.int()?;
        self.field.from_ratio(&num, &den).map_err(|e| match e {
            Error::BadScalar(m) => Error::BadScalar(format!("{m} at position {at}")),
            other => other,
        })
    }

    fn factor(&mut self) -> Result<Monomial> {
        if !self.eat(b'X') {
            return self.err("expected a variable X<i>");
        }
        let at = self.pos;
        let idx = self.small_int()?;
        if idx == 0 || idx > self.n_vars {
            self.pos = at;
            return Err(Error::OutOfRangeVariable { index: idx, n_vars: self.n_vars });
        }
        let mut e = 1usize;
        if self.eat(b'^') {
            e = self.small_int()?;
        }
        let mut ex = vec![0u32; self.n_vars];
        ex[idx - 1] = u32::try_from(e).or_else(|_| self.err("exponent too large"))?;
        Ok(Monomial::new(ex))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let f = parse_poly("X1^2*X2 + 3*X3^2", 3, Field::Rationals).unwrap();
        assert_eq!(f.num_terms(), 2);
        let degs: Vec<usize> = f.terms().keys().map(Monomial::degree).collect();
        assert_eq!(degs, vec![2, 3]);
        assert!(parse_poly("X1 - X1", 1, Field::Rationals).unwrap().is_zero());
        let g = parse_poly("1/2*X1^4", 1, Field::Prime(3)).unwrap();
        assert_eq!(g.coefficient(&Monomial::new(vec![4])).residue(), Some(2));
    }

    #[test]
    fn reports_errors() {
        assert_eq!(
            parse_poly("X4", 3, Field::Rationals),
            Err(Error::OutOfRangeVariable { index: 4, n_vars: 3 })
        );
        assert!(matches!(parse_poly("1/0*X1", 1, Field::Rationals), Err(Error::BadScalar(_))));
        assert!(matches!(parse_poly("1/3*X1", 1, Field::Prime(3)), Err(Error::BadScalar(_))));
        assert!(matches!(parse_poly("X1 +", 1, Field::Rationals), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("X1 ** X2", 2, Field::Rationals), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_poly("Y1", 1, Field::Rationals), Err(Error::Syntax { pos: 0, .. })));
    }

    #[test]
    fn leading_minus_and_whitespace() {
        let f = parse_poly(" - 2 * X1 ^ 2 +X2", 2, Field::Rationals).unwrap();
        assert_eq!(f.to_string(), "-2*X1^2 + X2");
    }
}
