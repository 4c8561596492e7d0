//! Algebraic power series: the defining polynomial `Q(x, y)` and the
//! power-series branch `f` with `Q(x, f) = 0` selected by a seed.

mod branch;
mod parser;

use std::fmt;

pub use branch::{expand_branch, expand_branch_with, expand_rational, BranchSpec, ExpansionMethod};
pub use parser::DegreeLimits;

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::series::{mul_truncated, Series};

/// `Q(x, y) = Σ_j q_j(x) y^j` over F_p, genuinely involving `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BivariatePolynomial {
    p: Prime,
    /// `rows[j][i]` is the coefficient of `x^i y^j`; trailing zeros trimmed.
    rows: Vec<Vec<u32>>,
}

impl BivariatePolynomial {
    /// Parses with the default degree caps (64 in each variable).
    pub fn parse(text: &str, p: Prime) -> Result<Self> {
        Self::parse_with_limits(text, p, DegreeLimits::default())
    }

    pub fn parse_with_limits(text: &str, p: Prime, limits: DegreeLimits) -> Result<Self> {
        let dense = parser::parse_dense(text, p, limits)?;
        Self::from_residue_rows(p, dense.rows)
    }

    /// Builds from `rows[j][i]` = coefficient of `x^i y^j`, reducing mod p.
    pub fn from_rows(p: Prime, rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&c| p.reduce(c)).collect())
            .collect();
        Self::from_residue_rows(p, rows)
    }

    pub(crate) fn from_residue_rows(p: Prime, rows: Vec<Vec<u32>>) -> Result<Self> {
        let rows = parser::Dense { rows }.trimmed().rows;
        if rows.len() < 2 {
            return Err(Error::NoYTerm);
        }
        Ok(BivariatePolynomial { p, rows })
    }

    /// `denom * y - numer`, the degree-one polynomial of a rational function.
    pub fn rational(p: Prime, numer: &[i64], denom: &[i64]) -> Result<Self> {
        let neg: Vec<i64> = numer.iter().map(|&c| -c).collect();
        Self::from_rows(p, &[neg, denom.to_vec()])
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn degree_x(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }

    pub fn degree_y(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: usize, j: usize) -> Fp {
        let v = self
            .rows
            .get(j)
            .and_then(|r| r.get(i))
            .copied()
            .unwrap_or(0);
        self.p.element(v)
    }

    /// `q_j(x)`, the coefficient of `y^j`, as residues in increasing x-degree.
    pub fn y_coefficient(&self, j: usize) -> &[u32] {
        self.rows.get(j).map_or(&[], Vec::as_slice)
    }

    /// `∂Q/∂y`, as rows (may have fewer than two rows, so not a
    /// `BivariatePolynomial`).
    pub(crate) fn y_derivative_rows(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        self.rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, r)| {
                let jj = p.reduce_u64(j as u64);
                r.iter().map(|&c| p.mul(c, jj)).collect()
            })
            .collect()
    }

    /// `Q(x, f) mod x^N` where `N` is the precision of `f`.
    pub fn evaluate(&self, f: &Series) -> Result<Series> {
        if f.prime() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: f.prime().get(),
            });
        }
        Ok(Series::from_residues(
            self.p,
            horner(self.p, &self.rows, f.residues(), f.precision()),
        ))
    }

    /// True iff `Q(x, f) ≡ 0 mod x^N`, `N` the precision of `f`. Series over a
    /// different prime never satisfy this.
    pub fn annihilates(&self, f: &Series) -> bool {
        self.evaluate(f).is_ok_and(|v| v.is_zero())
    }

    /// Scales so the first nonzero coefficient in `(j, i)` lexicographic order
    /// is 1.
    pub fn normalized(&self) -> Self {
        let p = self.p;
        let lead = self
            .rows
            .iter()
            .flatten()
            .copied()
            .find(|&c| c != 0)
            .expect("nonzero polynomial");
        let inv = p.inv(lead).expect("nonzero lead");
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&c| p.mul(c, inv)).collect())
            .collect();
        BivariatePolynomial { p, rows }
    }
}

/// `Σ_j rows[j](x) f^j mod x^n`.
pub(crate) fn horner(p: Prime, rows: &[Vec<u32>], f: &[u32], n: usize) -> Vec<u32> {
    let mut acc = vec![0u32; n];
    for row in rows.iter().rev() {
        acc = mul_truncated(p, &acc, f, n);
        for (a, &c) in acc.iter_mut().zip(row) {
            *a = p.add(*a, c);
        }
    }
    acc
}

/// Free function form of [`BivariatePolynomial::annihilates`].
pub fn verify_annihilation(q: &BivariatePolynomial, f: &Series) -> bool {
    q.annihilates(f)
}

impl fmt::Display for BivariatePolynomial {
    /// Writes the polynomial in the same grammar the parser accepts, terms
    /// ordered by descending y-degree then ascending x-degree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, row) in self.rows.iter().enumerate().rev() {
            for (i, &c) in row.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                let mut factors = Vec::with_capacity(3);
                if c != 1 || (i == 0 && j == 0) {
                    factors.push(c.to_string());
                }
                match i {
                    0 => {}
                    1 => factors.push("x".into()),
                    _ => factors.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => factors.push("y".into()),
                    _ => factors.push(format!("y^{j}")),
                }
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}
