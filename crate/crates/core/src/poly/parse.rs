//! Text format for polynomials: an ASCII expression in `x`, or a JSON array of
//! coefficients lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Poly;
use crate::error::{Error, Result};

type QPoly = Vec<BigRational>;

/// Parse a polynomial and return `(content, primitive part)`.
///
/// Accepted forms: `"x^4-4*x^3+4*x^2+6"`, `"(x-1)^2*(2x+3)/5"`, `"[6,0,4,-4,1]"`,
/// `"[\"1/2\", 3]"`.
pub fn parse_poly(s: &str) -> Result<(BigRational, Poly)> {
    let s = s.trim();
    let coeffs = if s.starts_with('[') {
        parse_json(s)?
    } else {
        let mut p = Parser { chars: s.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 };
        let v = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(Error::Parse(format!(
                "unexpected character '{}' at position {}",
                p.chars[p.pos], p.pos
            )));
        }
        v
    };
    let (c, prim) = Poly::from_rationals(&coeffs);
    if prim.is_zero() {
        return Err(Error::Parse("zero polynomial".into()));
    }
    Ok((c, prim))
}

fn parse_json(s: &str) -> Result<QPoly> {
    let v: serde_json::Value =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let arr = v.as_array().ok_or_else(|| Error::Parse("expected a JSON array".into()))?;
    arr.iter()
        .map(|item| match item {
            serde_json::Value::Number(n) => {
                let text = n.to_string();
                parse_rational(&text)
            }
            serde_json::Value::String(t) => parse_rational(t.trim()),
            other => Err(Error::Parse(format!("bad coefficient {other}"))),
        })
        .collect()
}

fn parse_rational(t: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad rational literal '{t}'"));
    if let Some((a, b)) = t.split_once('/') {
        let a: BigInt = a.parse().map_err(|_| bad())?;
        let b: BigInt = b.parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        Ok(BigRational::new(a, b))
    } else {
        Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?))
    }
}

fn trim(mut v: QPoly) -> QPoly {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qadd(a: &QPoly, b: &QPoly, sign: bool) -> QPoly {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).unwrap_or(&z);
                let y = b.get(i).unwrap_or(&z);
                if sign {
                    x + y
                } else {
                    x - y
                }
            })
            .collect(),
    )
}

fn qmul(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            if c == '+' || c == '-' {
                self.pos += 1;
                let t = self.term()?;
                acc = qadd(&acc, &t, c == '+');
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = qmul(&acc, &f);
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    if f.len() != 1 {
                        return Err(Error::Parse("division by a non-constant".into()));
                    }
                    let inv = f[0].recip();
                    acc = acc.into_iter().map(|c| c * &inv).collect();
                }
                // implicit multiplication: "4x", "2(x+1)", "(x-1)(x+1)"
                Some(c) if c == 'x' || c == '(' || c.is_ascii_digit() => {
                    let f = self.unary()?;
                    acc = qmul(&acc, &f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.into_iter().map(|c| -c).collect())
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(Error::Parse("expected a non-negative integer exponent".into()));
            }
            let e: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| Error::Parse("exponent too large".into()))?;
            let mut r = vec![BigRational::one()];
            for _ in 0..e {
                r = qmul(&r, &base);
            }
            return Ok(r);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(vec![BigRational::zero(), BigRational::one()])
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .expect("digits");
                Ok(trim(vec![BigRational::from_integer(n)]))
            }
            Some(c) => Err(Error::Parse(format!(
                "unexpected '{c}' at position {} (only the variable x is allowed)",
                self.pos
            ))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expression_forms() {
        let (c, p) = parse_poly("x^4-4*x^3+4*x^2+6").unwrap();
        assert_eq!(p, Poly::from_i64(&[6, 0, 4, -4, 1]));
        assert!(c.is_one());
        let (c, p) = parse_poly("4*(x^2+1)^2").unwrap();
        assert_eq!(p, Poly::from_i64(&[1, 0, 2, 0, 1]));
        assert_eq!(c, BigRational::from_integer(4.into()));
        let (_, p) = parse_poly("(x-2)(x-3)(x-6)").unwrap();
        assert_eq!(p, Poly::from_i64(&[-36, 36, -11, 1]));
        let (c, p) = parse_poly("x/2 - 3/4").unwrap();
        assert_eq!(p, Poly::from_i64(&[-3, 2]));
        assert_eq!(c, BigRational::new(1.into(), 4.into()));
        let (c, p) = parse_poly("-x+1").unwrap();
        assert_eq!(p, Poly::from_i64(&[-1, 1]));
        assert_eq!(c, BigRational::from_integer((-1).into()));
    }

    #[test]
    fn json_forms() {
        let (_, p) = parse_poly("[6, 0, 4, -4, 1]").unwrap();
        assert_eq!(p, Poly::from_i64(&[6, 0, 4, -4, 1]));
        let (c, p) = parse_poly("[\"1/2\", 1]").unwrap();
        assert_eq!(p, Poly::from_i64(&[1, 2]));
        assert_eq!(c, BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn rejects_other_variables_and_garbage() {
        assert!(parse_poly("y^2+1").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("x+(1").is_err());
        assert!(parse_poly("0").is_err());
        assert!(parse_poly("[1, \"a\"]").is_err());
        assert!(parse_poly("x/(x+1)").is_err());
    }
}
