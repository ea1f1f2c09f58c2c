//! Text grammar for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer ('/' integer)? | variable | '(' expr ')'
//! variable := 'x' digit+ | 'x' | 'y' | 'z' | 'w'
//! ```
//!
//! Aliases `x, y, z, w` denote variables 0, 1, 2, 3. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::Zero;

use super::sparse::SparsePoly;
use super::Rat;
use crate::error::{Error, Result};

/// Parses any polynomial expression (not necessarily homogeneous).
pub fn parse_sparse(text: &str, nvars: usize) -> Result<SparsePoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, nvars };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty input"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
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

    fn expr(&mut self) -> Result<SparsePoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<SparsePoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k: u32 = k.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<SparsePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    if !self.src.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                        self.pos = save;
                        return Err(self.err("division is only allowed between integer literals"));
                    }
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(SparsePoly::constant(self.nvars, Rat::new(n, d)));
                }
                Ok(SparsePoly::constant(self.nvars, Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                self.pos += 1;
                let idx = match c {
                    b'x' if self.src.get(self.pos).is_some_and(|d| d.is_ascii_digit()) => {
                        let n = self.integer()?;
                        n.try_into().unwrap_or(usize::MAX)
                    }
                    b'x' => 0,
                    b'y' => 1,
                    b'z' => 2,
                    b'w' => 3,
                    _ => {
                        return Err(Error::Syntax { pos: start, msg: format!("unknown variable `{}`", c as char) })
                    }
                };
                if idx >= self.nvars {
                    let name = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
                    return Err(Error::UnknownVariable(name, self.nvars));
                }
                Ok(SparsePoly::var(self.nvars, idx))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Name of variable `i` when printing polynomials in `nvars` variables.
pub fn var_name(i: usize, nvars: usize) -> String {
    if nvars <= 4 {
        ["x", "y", "z", "w"][i].to_string()
    } else {
        format!("x{i}")
    }
}

/// Canonical text: terms in decreasing lexicographic order of exponents.
pub fn render(p: &SparsePoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let n = p.nvars();
    let mut out = String::new();
    for (k, (e, c)) in p.terms().rev().enumerate() {
        let neg = c < &Rat::zero();
        let a = if neg { -c } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { var_name(i, n) } else { format!("{}^{}", var_name(i, n), k) })
            .collect();
        let one = a == Rat::from_integer(1.into());
        if mono.is_empty() {
            out.push_str(&a.to_string());
        } else if one {
            out.push_str(&mono.join("*"));
        } else {
            out.push_str(&format!("{}*{}", a, mono.join("*")));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_aliases_and_indices() {
        let a = parse_sparse("x^2*y + 3*z^3", 3).unwrap();
        let b = parse_sparse("x0^2 * x1 + 3 * x2^3", 3).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.coeff(&[2, 1, 0]), Rat::from_integer(1.into()));
        assert_eq!(a.coeff(&[0, 0, 3]), Rat::from_integer(3.into()));
    }

    #[test]
    fn rational_coefficients_and_unary_minus() {
        let a = parse_sparse("-3/4*x^2 - (y - z)", 3).unwrap();
        assert_eq!(a.coeff(&[2, 0, 0]), Rat::new((-3).into(), 4.into()));
        assert_eq!(a.coeff(&[0, 1, 0]), Rat::from_integer((-1).into()));
        assert_eq!(a.coeff(&[0, 0, 1]), Rat::from_integer(1.into()));
    }

    #[test]
    fn errors_report_position() {
        match parse_sparse("x + * y", 3) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_sparse("w", 3), Err(Error::UnknownVariable(..))));
        assert!(matches!(parse_sparse("x3", 3), Err(Error::UnknownVariable(..))));
        assert!(matches!(parse_sparse("1/0", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_sparse("x/2", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_sparse("(x+y", 3), Err(Error::Syntax { .. })));
    }

    #[test]
    fn render_is_sorted_and_reparses() {
        let a = parse_sparse("z^3 + 3/2*x^2*y - y^3", 3).unwrap();
        let s = render(&a);
        assert_eq!(s, "3/2*x^2*y - y^3 + z^3");
        assert_eq!(parse_sparse(&s, 3).unwrap(), a);
    }
}
