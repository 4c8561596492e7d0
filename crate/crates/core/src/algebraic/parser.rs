//! Recursive-descent parser for polynomials in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := uint | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Whitespace between tokens is ignored. Integer literals of any length are
//! reduced mod p. Products are expanded eagerly, with degree caps checked
//! before each multiplication so `(1+x)^100000` fails fast.

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::series::reduce_decimal;

/// Degree caps applied while expanding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeLimits {
    pub max_dx: usize,
    pub max_dy: usize,
}

impl Default for DegreeLimits {
    fn default() -> Self {
        DegreeLimits {
            max_dx: 64,
            max_dy: 64,
        }
    }
}

/// Dense bivariate polynomial, `rows[j][i]` is the coefficient of `x^i y^j`.
/// No trailing zeros anywhere; the zero polynomial has no rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Dense {
    pub rows: Vec<Vec<u32>>,
}

impl Dense {
    fn zero() -> Self {
        Dense { rows: Vec::new() }
    }

    fn constant(c: u32) -> Self {
        Dense {
            rows: vec![vec![c]],
        }
        .trimmed()
    }

    fn monomial(i: usize, j: usize) -> Self {
        let mut rows = vec![Vec::new(); j + 1];
        rows[j] = vec![0; i + 1];
        rows[j][i] = 1;
        Dense { rows }
    }

    pub fn trimmed(mut self) -> Self {
        for row in &mut self.rows {
            while row.last() == Some(&0) {
                row.pop();
            }
        }
        while self.rows.last().is_some_and(Vec::is_empty) {
            self.rows.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// (x-degree, y-degree), or `None` for zero.
    fn degrees(&self) -> Option<(usize, usize)> {
        if self.is_zero() {
            return None;
        }
        let dx = self
            .rows
            .iter()
            .map(|r| r.len().saturating_sub(1))
            .max()
            .unwrap_or(0);
        Some((dx, self.rows.len() - 1))
    }

    fn add(&self, other: &Dense, p: Prime, negate: bool) -> Dense {
        let ny = self.rows.len().max(other.rows.len());
        let mut rows = Vec::with_capacity(ny);
        for j in 0..ny {
            let a = self.rows.get(j).map_or(&[][..], Vec::as_slice);
            let b = other.rows.get(j).map_or(&[][..], Vec::as_slice);
            let row = (0..a.len().max(b.len()))
                .map(|i| {
                    let x = a.get(i).copied().unwrap_or(0);
                    let y = b.get(i).copied().unwrap_or(0);
                    if negate {
                        p.sub(x, y)
                    } else {
                        p.add(x, y)
                    }
                })
                .collect();
            rows.push(row);
        }
        Dense { rows }.trimmed()
    }

    fn mul(&self, other: &Dense, p: Prime) -> Dense {
        if self.is_zero() || other.is_zero() {
            return Dense::zero();
        }
        let mut rows = vec![Vec::new(); self.rows.len() + other.rows.len() - 1];
        for (ja, ra) in self.rows.iter().enumerate() {
            for (jb, rb) in other.rows.iter().enumerate() {
                if ra.is_empty() || rb.is_empty() {
                    continue;
                }
                let out = &mut rows[ja + jb];
                if out.len() < ra.len() + rb.len() - 1 {
                    out.resize(ra.len() + rb.len() - 1, 0);
                }
                for (ia, &x) in ra.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (ib, &y) in rb.iter().enumerate() {
                        out[ia + ib] = p.mul_add(out[ia + ib], x, y);
                    }
                }
            }
        }
        Dense { rows }.trimmed()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: Prime,
    limits: DegreeLimits,
}

pub(crate) fn parse_dense(text: &str, p: Prime, limits: DegreeLimits) -> Result<Dense> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        p,
        limits,
    };
    let poly = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(poly)
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        let found = match self.src.get(self.pos) {
            Some(&b) => format!("{message} (found {:?})", b as char),
            None => format!("{message} (found end of input)"),
        };
        Error::Syntax {
            position: self.pos,
            message: found,
        }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn check(&self, poly: &Dense) -> Result<()> {
        if let Some((dx, dy)) = poly.degrees() {
            self.check_degrees(dx, dy)?;
        }
        Ok(())
    }

    fn check_degrees(&self, dx: usize, dy: usize) -> Result<()> {
        if dx > self.limits.max_dx || dy > self.limits.max_dy {
            return Err(Error::DegreeOverflow {
                dx,
                dy,
                max_dx: self.limits.max_dx,
                max_dy: self.limits.max_dy,
            });
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Dense> {
        let mut acc = self.term()?;
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(&rhs, self.p, op == b'-');
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Dense> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            if let (Some((ax, ay)), Some((bx, by))) = (acc.degrees(), rhs.degrees()) {
                self.check_degrees(ax + bx, ay + by)?;
            }
            acc = acc.mul(&rhs, self.p);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Dense> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        if !self.peek().is_some_and(|b| b.is_ascii_digit()) {
            return Err(self.error("expected exponent"));
        }
        let digits = self.digits();
        let Ok(exp) = digits.parse::<u64>() else {
            return Err(Error::DegreeOverflow {
                dx: usize::MAX,
                dy: usize::MAX,
                max_dx: self.limits.max_dx,
                max_dy: self.limits.max_dy,
            });
        };
        self.pow(base, exp)
    }

    fn pow(&self, base: Dense, exp: u64) -> Result<Dense> {
        if exp == 0 {
            return Ok(Dense::constant(1 % self.p.get()));
        }
        let Some((dx, dy)) = base.degrees() else {
            return Ok(Dense::zero());
        };
        let scaled = |d: usize| {
            (d as u64)
                .checked_mul(exp)
                .map_or(usize::MAX, |v| v as usize)
        };
        self.check_degrees(scaled(dx), scaled(dy))?;
        let mut result = Dense::constant(1 % self.p.get());
        let mut square = base;
        let mut e = exp;
        loop {
            if e & 1 == 1 {
                result = result.mul(&square, self.p);
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            square = square.mul(&square, self.p);
        }
        Ok(result)
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits")
    }

    fn atom(&mut self) -> Result<Dense> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let m = Dense::monomial(1, 0);
                self.check(&m)?;
                Ok(m)
            }
            Some(b'y') => {
                self.pos += 1;
                let m = Dense::monomial(0, 1);
                self.check(&m)?;
                Ok(m)
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let p = self.p;
                let v = reduce_decimal(self.digits(), p);
                Ok(Dense::constant(v))
            }
            _ => Err(self.error("expected a number, 'x', 'y' or '('")),
        }
    }
}
