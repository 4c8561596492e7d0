//! From an automatic sequence back to a polynomial relation.
//!
//! Given a prefix `f` and degree bounds `(dx, dy)`, look for coefficients
//! `c_ij` with `Σ c_ij x^i f^j ≡ 0 mod x^N`. This is linear algebra on the
//! columns `x^i f^j`; any relation found is only certified to the precision
//! of the prefix, so callers should re-verify against a longer prefix.

use crate::algebraic::BivariatePolynomial;
use crate::automaton::Dfao;
use crate::error::{Error, Result};
use crate::linalg::{rank, IncrementalBasis, Insertion};
use crate::series::{mul_truncated, Series};

/// `a_0 .. a_{n-1}` as produced by the automaton.
pub fn automatic_to_series(a: &Dfao, n: usize) -> Series {
    let p = a.prime();
    let base = p.get() as u64;
    let coeffs = (0..n as u64)
        .map(|mut k| {
            let mut s = a.start();
            while k > 0 {
                s = a.next_state(s, (k % base) as usize);
                k /= base;
            }
            a.output(s).value()
        })
        .collect();
    Series::from_residues(p, coeffs)
}

/// Fewest terms for which `guess_polynomial` accepts the degree bounds.
pub fn required_terms(dx: usize, dy: usize) -> usize {
    (dx + 1) * (dy + 1) + dx + dy
}

/// Columns `x^i f^j` in `(j, i)` lexicographic order, truncated at `N`.
fn columns(f: &Series, dx: usize, dy: usize) -> Vec<(usize, usize, Vec<u32>)> {
    let p = f.prime();
    let n = f.precision();
    let mut power = vec![0u32; n];
    if n > 0 {
        power[0] = 1;
    }
    let mut cols = Vec::with_capacity((dx + 1) * (dy + 1));
    for j in 0..=dy {
        if j > 0 {
            power = mul_truncated(p, &power, f.residues(), n);
        }
        for i in 0..=dx {
            let mut col = vec![0u32; n];
            if i < n {
                col[i..].copy_from_slice(&power[..n - i]);
            }
            cols.push((i, j, col));
        }
    }
    cols
}

/// Dimension of the space of relations with the given degree bounds, at the
/// precision of `f`.
pub fn relation_space_dimension(f: &Series, dx: usize, dy: usize) -> usize {
    let cols: Vec<Vec<u32>> = columns(f, dx, dy).into_iter().map(|(_, _, c)| c).collect();
    cols.len() - rank(f.prime(), &cols)
}

/// A nonzero `Q` with `deg_x Q <= dx`, `deg_y Q <= dy` and `Q(x, f) ≡ 0 mod
/// x^N`.
///
/// Columns are scanned in `(j, i)` order and the first one that depends on
/// its predecessors yields the relation, so the result has the smallest
/// leading monomial among all relations. It is scaled so that its first
/// nonzero coefficient in `(j, i)` order is 1.
pub fn guess_polynomial(f: &Series, dx: usize, dy: usize) -> Result<BivariatePolynomial> {
    let needed = required_terms(dx, dy);
    if f.precision() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            got: f.precision(),
        });
    }
    let p = f.prime();
    let cols = columns(f, dx, dy);
    let mut basis = IncrementalBasis::new(p, f.precision());
    // Column position of each basis element.
    let mut basis_cols: Vec<usize> = Vec::new();
    for (k, (_, _, col)) in cols.iter().enumerate() {
        match basis.insert(col) {
            Insertion::Added(_) => basis_cols.push(k),
            Insertion::Dependent(coords) => {
                let mut rows = vec![vec![0u32; dx + 1]; dy + 1];
                let (i, j, _) = cols[k];
                rows[j][i] = 1;
                for (&c, &b) in coords.iter().zip(&basis_cols) {
                    let (bi, bj, _) = cols[b];
                    rows[bj][bi] = p.neg(c);
                }
                let q = BivariatePolynomial::from_residue_rows(p, rows)?.normalized();
                debug_assert!(q.annihilates(f));
                return Ok(q);
            }
        }
    }
    Err(Error::NoRelationFound { dx, dy })
}
