//! Truncated formal power series over F_p.
//!
//! A [`Series`] knows its first `N` coefficients and nothing beyond; `N` is
//! the precision. Every operation reports the precision it can actually
//! vouch for, never more.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};

/// First `precision()` coefficients of a power series over F_p.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Series {
    p: Prime,
    coeffs: Vec<u32>,
}

impl Series {
    /// Builds a series from arbitrary integers, reducing each mod `p`.
    pub fn new<I>(p: Prime, values: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        Series {
            p,
            coeffs: values.into_iter().map(|v| p.reduce(v)).collect(),
        }
    }

    /// Wraps residues that are already reduced mod `p`.
    pub(crate) fn from_residues(p: Prime, coeffs: Vec<u32>) -> Self {
        debug_assert!(coeffs.iter().all(|&c| c < p.get()));
        Series { p, coeffs }
    }

    pub fn from_elements(p: Prime, elems: &[Fp]) -> Result<Self> {
        let mut coeffs = Vec::with_capacity(elems.len());
        for e in elems {
            if e.modulus() != p {
                return Err(Error::ModulusMismatch {
                    left: p.get(),
                    right: e.modulus().get(),
                });
            }
            coeffs.push(e.value());
        }
        Ok(Series { p, coeffs })
    }

    pub fn zero(p: Prime, precision: usize) -> Self {
        Series {
            p,
            coeffs: vec![0; precision],
        }
    }

    /// `1 + x + x^2 + ...` to the given precision.
    pub fn ones(p: Prime, precision: usize) -> Self {
        Series {
            p,
            coeffs: vec![1 % p.get(); precision],
        }
    }

    /// Parses a comma-separated list of non-negative integers, e.g.
    /// `"0,1,1,0"`. Whitespace around entries is ignored; values are reduced
    /// mod `p`. The empty list is rejected.
    pub fn parse(text: &str, p: Prime) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return Err(Error::MalformedSeries("empty coefficient list".into()));
        }
        let mut coeffs = Vec::new();
        for (i, item) in trimmed.split(',').enumerate() {
            let item = item.trim();
            if item.is_empty() || !item.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::MalformedSeries(format!(
                    "entry {i} is not a non-negative integer: {item:?}"
                )));
            }
            coeffs.push(reduce_decimal(item, p));
        }
        Ok(Series { p, coeffs })
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Raw residues `a_0 .. a_{N-1}`.
    #[inline]
    pub fn residues(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Option<Fp> {
        self.coeffs.get(j).map(|&c| self.p.element(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn truncate(&self, precision: usize) -> Series {
        let n = precision.min(self.precision());
        Series::from_residues(self.p, self.coeffs[..n].to_vec())
    }

    fn same_prime(&self, other: &Series) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    /// `scalar * self + other` at the smaller of the two precisions.
    pub fn add_scaled(&self, scalar: Fp, other: &Series) -> Result<Series> {
        self.same_prime(other)?;
        if scalar.modulus() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: scalar.modulus().get(),
            });
        }
        let p = self.p;
        let s = scalar.value();
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| p.mul_add(b, s, a))
            .collect();
        Ok(Series::from_residues(p, coeffs))
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.add_scaled(self.p.one(), other)
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        other.add_scaled(-self.p.one(), self)
    }

    pub fn neg(&self) -> Series {
        let p = self.p;
        Series::from_residues(p, self.coeffs.iter().map(|&c| p.neg(c)).collect())
    }

    pub fn scale(&self, scalar: Fp) -> Result<Series> {
        if scalar.modulus() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: scalar.modulus().get(),
            });
        }
        Ok(self.scale_residue(scalar.value()))
    }

    pub(crate) fn scale_residue(&self, s: u32) -> Series {
        let p = self.p;
        Series::from_residues(p, self.coeffs.iter().map(|&c| p.mul(c, s)).collect())
    }

    /// Cauchy product at the smaller of the two precisions.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_prime(other)?;
        let n = self.precision().min(other.precision());
        Ok(Series::from_residues(
            self.p,
            mul_truncated(self.p, &self.coeffs[..n], &other.coeffs[..n], n),
        ))
    }

    /// `x^k * self`; precision grows by `k`.
    pub fn shift(&self, k: usize) -> Series {
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Series::from_residues(self.p, coeffs)
    }

    /// The `m`-fold formal derivative. Precision drops by `m` (floored at 0).
    pub fn derivative(&self, m: usize) -> Series {
        let p = self.p;
        let n = self.precision().saturating_sub(m);
        let coeffs = (0..n)
            .map(|j| {
                // (j+1)(j+2)...(j+m) mod p; zero as soon as m >= p or a factor is
                // divisible by p, which the loop finds on its own.
                let mut falling = 1 % p.get();
                for t in 1..=m {
                    falling = p.mul(falling, p.reduce_u64((j + t) as u64));
                    if falling == 0 {
                        break;
                    }
                }
                p.mul(self.coeffs[j + m], falling)
            })
            .collect();
        Series::from_residues(p, coeffs)
    }

    /// Termwise p-th root of a series supported on multiples of p:
    /// `g[m] = f[p*m]^(1/p)`, precision `ceil(N / p)`.
    pub fn pth_root(&self) -> Result<Series> {
        let p = self.p.as_usize();
        if let Some(index) = self
            .coeffs
            .iter()
            .enumerate()
            .position(|(j, &c)| c != 0 && j % p != 0)
        {
            return Err(Error::NotAPthPower { index });
        }
        let coeffs = self
            .coeffs
            .iter()
            .step_by(p)
            .map(|&c| self.p.element(c).pth_root().value())
            .collect();
        Ok(Series::from_residues(self.p, coeffs))
    }

    /// Substitutes `x -> x^p`. Known to precision `p * N`.
    pub fn frobenius(&self) -> Series {
        let p = self.p.as_usize();
        let mut coeffs = vec![0; self.precision() * p];
        for (m, &c) in self.coeffs.iter().enumerate() {
            coeffs[m * p] = c;
        }
        Series::from_residues(self.p, coeffs)
    }

    /// Multiplicative inverse to this series' precision.
    pub fn inverse(&self) -> Result<Series> {
        let n = self.precision();
        if n == 0 {
            return Ok(self.clone());
        }
        if self.coeffs[0] == 0 {
            return Err(Error::NonUnitDenominator);
        }
        Ok(Series::from_residues(
            self.p,
            inverse_residues(self.p, &self.coeffs, n)?,
        ))
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Reduces a string of ASCII decimal digits mod `p` without overflow.
pub(crate) fn reduce_decimal(digits: &str, p: Prime) -> u32 {
    digits.bytes().fold(0u32, |acc, b| {
        p.mul_add((b - b'0') as u32 % p.get(), acc, 10 % p.get())
    })
}

const KARATSUBA_CUTOFF: usize = 32;

/// First `n` coefficients of `a * b`.
pub(crate) fn mul_truncated(p: Prime, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    if a.is_empty() || b.is_empty() {
        return vec![0; n];
    }
    let mut out = if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        schoolbook_truncated(p, a, b, n)
    } else {
        mul_full(p, a, b)
    };
    out.resize(n, 0);
    out
}

fn schoolbook_truncated(p: Prime, a: &[u32], b: &[u32], n: usize) -> Vec<u32> {
    let len = (a.len() + b.len() - 1).min(n);
    let mut acc = vec![0u64; len];
    // Each product is < 2^32, so a u64 accumulator survives 2^32 terms.
    for (i, &x) in a.iter().enumerate() {
        if x == 0 || i >= len {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(len - i) {
            acc[i + j] += x as u64 * y as u64;
        }
    }
    let q = p.get() as u64;
    acc.into_iter().map(|v| (v % q) as u32).collect()
}

/// Full product, Karatsuba above the cutoff.
fn mul_full(p: Prime, a: &[u32], b: &[u32]) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let full = a.len() + b.len() - 1;
    if a.len().min(b.len()) <= KARATSUBA_CUTOFF {
        return schoolbook_truncated(p, a, b, full);
    }
    let half = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let low = mul_full(p, a0, b0);
    let high = mul_full(p, a1, b1);
    let sa = add_slices(p, a0, a1);
    let sb = add_slices(p, b0, b1);
    let mut mid = mul_full(p, &sa, &sb);
    for (i, &v) in low.iter().enumerate() {
        mid[i] = p.sub(mid[i], v);
    }
    for (i, &v) in high.iter().enumerate() {
        mid[i] = p.sub(mid[i], v);
    }
    let mut out = vec![0u32; full];
    for (i, &v) in low.iter().enumerate() {
        out[i] = p.add(out[i], v);
    }
    for (i, &v) in mid.iter().enumerate() {
        if v != 0 {
            out[i + half] = p.add(out[i + half], v);
        }
    }
    for (i, &v) in high.iter().enumerate() {
        out[i + 2 * half] = p.add(out[i + 2 * half], v);
    }
    out
}

fn add_slices(p: Prime, a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = p.add(x, y);
    }
    out
}

/// Newton iteration `g <- g (2 - f g)` with precision doubling.
pub(crate) fn inverse_residues(p: Prime, f: &[u32], n: usize) -> Result<Vec<u32>> {
    if n == 0 {
        return Ok(Vec::new());
    }
    let c0 = p.inv(f[0]).map_err(|_| Error::NonUnitDenominator)?;
    let mut g = vec![c0];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let fg = mul_truncated(p, f, &g, prec);
        let mut two_minus: Vec<u32> = fg.iter().map(|&c| p.neg(c)).collect();
        two_minus[0] = p.add(two_minus[0], 2 % p.get());
        g = mul_truncated(p, &g, &two_minus, prec);
    }
    g.truncate(n);
    Ok(g)
}
