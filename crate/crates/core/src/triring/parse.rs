use num::{BigInt, One, Zero};
use thiserror::Error;

use super::degree::{Monomial, MultiDegree, Var};
use super::poly::MultiPoly;
use crate::exactmath::Rational;

/// Parse failure with a 1-based column into the input text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {message}")]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

fn err<T>(column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        column,
        message: message.into(),
    })
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    /// Column of the next non-blank character.
    fn column(&mut self) -> usize {
        self.skip_ws();
        self.pos + 1
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.s[start..self.pos]).ok()?.parse().ok()
    }

    fn identifier(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("")
    }
}

/// Parse one factor-product term, without its sign.
fn parse_term(lx: &mut Lexer<'_>) -> Result<(Monomial, Rational), ParseError> {
    let mut coeff = Rational::one();
    let mut mono = Monomial::one();
    loop {
        let col = lx.column();
        match lx.peek() {
            Some(c) if c.is_ascii_digit() => {
                let n = lx.integer().expect("digit present");
                let mut q = Rational::from_integer(n);
                if lx.peek() == Some(b'/') {
                    lx.pos += 1;
                    let dcol = lx.column();
                    let Some(d) = lx.integer() else {
                        return err(dcol, "expected denominator after '/'");
                    };
                    if d.is_zero() {
                        return err(dcol, "zero denominator");
                    }
                    q /= Rational::from_integer(d);
                }
                coeff *= q;
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = lx.identifier();
                let Some(v) = Var::from_name(name) else {
                    return err(col, format!("unknown variable '{name}'"));
                };
                let mut e = 1u32;
                if lx.peek() == Some(b'^') {
                    lx.pos += 1;
                    let ecol = lx.column();
                    match lx.integer().and_then(|n| u32::try_from(n).ok()) {
                        Some(n) if n <= 60 => e = n,
                        _ => return err(ecol, "expected a small exponent after '^'"),
                    }
                }
                let slot = &mut mono.0[v.0 as usize];
                let total = u32::from(*slot) + e;
                if total > 60 {
                    return err(col, "exponent too large");
                }
                *slot = total as u8;
            }
            Some(c) => return err(col, format!("unexpected '{}'", c as char)),
            None => return err(col, "unexpected end of input"),
        }
        match lx.peek() {
            Some(b'*') => lx.pos += 1,
            _ => return Ok((mono, coeff)),
        }
    }
}

/// Parse a sum of terms such as `-2/3*x0*y1*z1 + x1*y0*z0`.
///
/// The input must be multi-homogeneous. A bare `0` parses to the zero
/// polynomial of degree `(0,0,0;0)`; see [`parse_poly_with_degree`].
pub fn parse_poly(s: &str) -> Result<MultiPoly, ParseError> {
    parse_inner(s, None)
}

/// Like [`parse_poly`] but checks the degree, which also fixes the degree of `0`.
pub fn parse_poly_with_degree(s: &str, degree: MultiDegree) -> Result<MultiPoly, ParseError> {
    parse_inner(s, Some(degree))
}

fn parse_inner(s: &str, expected: Option<MultiDegree>) -> Result<MultiPoly, ParseError> {
    let mut lx = Lexer {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut terms: Vec<(Monomial, Rational, usize)> = Vec::new();
    let mut first = true;
    loop {
        let col = lx.column();
        let sign = match lx.peek() {
            None if first => return err(col, "empty polynomial"),
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                Rational::one()
            }
            Some(b'-') => {
                lx.pos += 1;
                -Rational::one()
            }
            Some(_) if first => Rational::one(),
            Some(c) => return err(col, format!("expected '+' or '-', found '{}'", c as char)),
        };
        first = false;
        let tcol = lx.column();
        let (m, c) = parse_term(&mut lx)?;
        terms.push((m, sign * c, tcol));
    }
    let mut degree = expected;
    for (m, c, col) in &terms {
        if c.is_zero() {
            continue;
        }
        let d = m.degree();
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return err(
                    *col,
                    format!("term of degree {d} in a polynomial of degree {e}"),
                )
            }
            _ => {}
        }
    }
    let degree = degree.unwrap_or(MultiDegree::ZERO);
    let nonzero = terms
        .into_iter()
        .filter(|(_, c, _)| !c.is_zero())
        .map(|(m, c, _)| (m, c));
    Ok(MultiPoly::from_terms(degree, nonzero).expect("degrees checked"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::ratio;

    #[test]
    fn parses_fractions_and_powers() {
        let p = parse_poly("-2/3*x0^2*y1*z1 + x1^2*y0*z0 - x0*x1*y0*z0").unwrap();
        assert_eq!(p.degree(), MultiDegree::tri(2, 1, 1));
        assert_eq!(p.num_terms(), 3);
        let q = parse_poly("3/6*t0*t1").unwrap();
        assert_eq!(q.leading_term().unwrap().1, &ratio(1, 2));
    }

    #[test]
    fn rejects_inhomogeneous_input() {
        let e = parse_poly("x0*y0 + x1").unwrap_err();
        assert_eq!(e.column, 9);
        assert!(parse_poly_with_degree("x0*y0*z0", MultiDegree::tri(1, 1, 0)).is_err());
    }

    #[test]
    fn reports_columns() {
        assert_eq!(parse_poly("x0*w1").unwrap_err().column, 4);
        assert_eq!(parse_poly("x0 x1").unwrap_err().column, 4);
        assert_eq!(parse_poly("x0*").unwrap_err().column, 4);
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1/0*x0").is_err());
    }

    #[test]
    fn zero_takes_declared_degree() {
        let z = parse_poly_with_degree("0", MultiDegree::ONES).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), MultiDegree::ONES);
        let c = parse_poly_with_degree("x0*y0*z0 - x0*y0*z0", MultiDegree::ONES).unwrap();
        assert!(c.is_zero());
    }
}
