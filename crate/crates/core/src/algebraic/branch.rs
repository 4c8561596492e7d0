use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::series::{inverse_residues, mul_truncated, Series};

use super::{horner, BivariatePolynomial};

/// A polynomial together with a prescribed prefix `a_0 .. a_{s-1}` that picks
/// out one power-series root of `Q(x, y) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchSpec {
    q: BivariatePolynomial,
    seed: Vec<u32>,
}

impl BranchSpec {
    pub fn new(q: BivariatePolynomial, seed: &[Fp]) -> Result<Self> {
        let p = q.prime();
        let seed = Series::from_elements(p, seed)?.residues().to_vec();
        Ok(BranchSpec { q, seed })
    }

    /// Parses a polynomial and a comma-separated seed (possibly empty).
    pub fn parse(poly: &str, seed: &str, p: Prime) -> Result<Self> {
        let q = BivariatePolynomial::parse(poly, p)?;
        let seed = if seed.trim().is_empty() {
            Vec::new()
        } else {
            Series::parse(seed, p)?.residues().to_vec()
        };
        Ok(BranchSpec { q, seed })
    }

    /// Spec for `numer / denom` via `denom * y - numer`. The seed pins `a_0`.
    pub fn rational(p: Prime, numer: &[i64], denom: &[i64]) -> Result<Self> {
        if denom.first().is_none_or(|&d| p.reduce(d) == 0) {
            return Err(Error::NonUnitDenominator);
        }
        let q = BivariatePolynomial::rational(p, numer, denom)?;
        Ok(BranchSpec {
            q,
            seed: Vec::new(),
        })
    }

    pub fn polynomial(&self) -> &BivariatePolynomial {
        &self.q
    }

    pub fn seed(&self) -> Vec<Fp> {
        self.seed
            .iter()
            .map(|&c| self.q.prime().element(c))
            .collect()
    }

    pub fn prime(&self) -> Prime {
        self.q.prime()
    }
}

/// Strategy for [`expand_branch_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionMethod {
    /// Newton iteration when `∂Q/∂y(0, a_0) ≠ 0`, candidate testing otherwise.
    #[default]
    Auto,
    /// Test every residue for every coefficient.
    CandidateTesting,
    /// Newton iteration with precision doubling; fails with
    /// [`Error::AmbiguousBranch`] at index 1 when `∂Q/∂y(0, a_0) = 0`.
    Newton,
}

/// The branch of `spec` to `n` coefficients.
pub fn expand_branch(spec: &BranchSpec, n: usize) -> Result<Series> {
    expand_branch_with(spec, n, ExpansionMethod::Auto)
}

pub fn expand_branch_with(spec: &BranchSpec, n: usize, method: ExpansionMethod) -> Result<Series> {
    let p = spec.prime();
    if n == 0 {
        return Ok(Series::zero(p, 0));
    }
    match method {
        ExpansionMethod::CandidateTesting => candidate_testing(spec, n),
        ExpansionMethod::Newton | ExpansionMethod::Auto => {
            let a0 = constant_term(spec)?;
            let dq = spec.q.y_derivative_rows();
            let slope = horner(p, &dq, &[a0], 1)[0];
            if slope != 0 {
                newton(spec, a0, &dq, n)
            } else if method == ExpansionMethod::Auto {
                candidate_testing(spec, n)
            } else {
                Err(Error::AmbiguousBranch(1))
            }
        }
    }
}

/// Residues `c` for which `Q(0, c) = 0`, restricted to the seed if present.
fn constant_term(spec: &BranchSpec) -> Result<u32> {
    let p = spec.prime();
    let candidates: Vec<u32> = match spec.seed.first() {
        Some(&c) => vec![c],
        None => (0..p.get()).collect(),
    };
    let roots: Vec<u32> = candidates
        .into_iter()
        .filter(|&c| horner(p, &spec.q.rows, &[c], 1)[0] == 0)
        .collect();
    match roots.as_slice() {
        [] => Err(Error::NoBranch(0)),
        [c] => Ok(*c),
        _ => Err(Error::AmbiguousBranch(0)),
    }
}

/// Coefficient-by-coefficient construction. At step `k` each candidate `c`
/// is kept iff `Q(x, f_k + c x^k) ≡ 0 mod x^{k+1}`, where `f_k` is the prefix
/// found so far. The powers `f^j` are maintained one coefficient at a time so
/// each step costs `O(k * dy)`.
fn candidate_testing(spec: &BranchSpec, n: usize) -> Result<Series> {
    let p = spec.prime();
    let q = &spec.q.rows;
    let dy = q.len() - 1;
    // powers[j] holds [x^0 .. x^{k-1}] of f^j.
    let mut powers: Vec<Vec<u32>> = vec![Vec::with_capacity(n); dy + 1];
    let mut f: Vec<u32> = Vec::with_capacity(n);
    let mut values = vec![0u32; dy + 1];
    let mut carried = vec![0u32; dy + 1];

    for k in 0..n {
        let candidates: Vec<u32> = match spec.seed.get(k) {
            Some(&c) => vec![c],
            None => (0..p.get()).collect(),
        };

        // Contributions independent of the new coefficient.
        let mut fixed = 0u32;
        if k > 0 {
            for j in 1..=dy {
                carried[j] = (1..k).fold(0, |acc, i| p.mul_add(acc, f[i], powers[j - 1][k - i]));
            }
            for (j, row) in q.iter().enumerate() {
                for (i, &qc) in row.iter().enumerate().take(k + 1).skip(1) {
                    let pw = if j == 0 {
                        u32::from(k == i)
                    } else {
                        powers[j][k - i]
                    };
                    fixed = p.mul_add(fixed, qc, pw);
                }
            }
        }

        let eval = |c: u32, values: &mut [u32]| -> u32 {
            values[0] = u32::from(k == 0);
            for j in 1..=dy {
                values[j] = if k == 0 {
                    p.mul(values[j - 1], c)
                } else {
                    // [x^k] f^j = a_0 [x^k] f^{j-1} + Σ_{0<i<k} a_i [x^{k-i}] f^{j-1} + c a_0^{j-1}
                    let lead = powers[j - 1][0];
                    p.mul_add(p.mul_add(carried[j], f[0], values[j - 1]), c, lead)
                };
            }
            q.iter()
                .zip(values.iter())
                .fold(fixed, |acc, (row, &v)| match row.first() {
                    Some(&q0) => p.mul_add(acc, q0, v),
                    None => acc,
                })
        };

        let mut chosen = None;
        let mut survivors = 0usize;
        for &c in &candidates {
            if eval(c, &mut values) == 0 {
                survivors += 1;
                chosen.get_or_insert(c);
            }
        }
        let c = match (survivors, chosen) {
            (0, _) | (_, None) => return Err(Error::NoBranch(k)),
            (1, Some(c)) => c,
            _ => return Err(Error::AmbiguousBranch(k)),
        };
        eval(c, &mut values);
        f.push(c);
        for j in 0..=dy {
            powers[j].push(values[j]);
        }
    }
    Ok(Series::from_residues(p, f))
}

/// `f <- f - Q(x, f) / Q_y(x, f)`, doubling the precision each round.
fn newton(spec: &BranchSpec, a0: u32, dq: &[Vec<u32>], n: usize) -> Result<Series> {
    let p = spec.prime();
    let mut f = vec![a0];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        f.resize(prec, 0);
        let value = horner(p, &spec.q.rows, &f, prec);
        let slope = horner(p, dq, &f, prec);
        let inv = inverse_residues(p, &slope, prec)?;
        let step = mul_truncated(p, &value, &inv, prec);
        for (a, &s) in f.iter_mut().zip(&step) {
            *a = p.sub(*a, s);
        }
    }
    if let Some(k) = spec.seed.iter().zip(&f).position(|(&s, &a)| s != a) {
        return Err(Error::NoBranch(k));
    }
    Ok(Series::from_residues(p, f))
}

/// Power-series expansion of `numer / denom` to `n` coefficients.
pub fn expand_rational(p: Prime, numer: &[i64], denom: &[i64], n: usize) -> Result<Series> {
    if denom.first().is_none_or(|&d| p.reduce(d) == 0) {
        return Err(Error::NonUnitDenominator);
    }
    let num = Series::new(p, numer.iter().copied().chain(std::iter::repeat(0)).take(n));
    let den: Vec<u32> = denom
        .iter()
        .map(|&d| p.reduce(d))
        .chain(std::iter::repeat(0))
        .take(n)
        .collect();
    let inv = Series::from_residues(p, inverse_residues(p, &den, n)?);
    num.mul(&inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn thue_morse_spec() -> BranchSpec {
        BranchSpec::parse("(1+x)^3*y^2 + (1+x)^2*y + x", "0", pr(2)).unwrap()
    }

    fn central_binomial_spec() -> BranchSpec {
        BranchSpec::parse("(1+2*x)*y^2 + 2", "1", pr(3)).unwrap()
    }

    fn digit_parity(n: usize) -> Vec<i64> {
        (0..n).map(|i| (i.count_ones() % 2) as i64).collect()
    }

    /// C(2n, n) mod 3 computed with u128 binomials for small n.
    fn central_binomial_mod3(n: usize) -> Vec<i64> {
        (0..n as u128)
            .map(|k| {
                let mut c: u128 = 1;
                for i in 0..k {
                    c = c * (2 * k - i) / (i + 1);
                }
                (c % 3) as i64
            })
            .collect()
    }

    #[test]
    fn thue_morse_prefix() {
        let f = expand_branch(&thue_morse_spec(), 8).unwrap();
        assert_eq!(f, Series::new(pr(2), [0, 1, 1, 0, 1, 0, 0, 1]));
        let long = expand_branch(&thue_morse_spec(), 1000).unwrap();
        assert_eq!(long, Series::new(pr(2), digit_parity(1000)));
    }

    #[test]
    fn seedless_thue_morse_is_ambiguous() {
        let spec = BranchSpec::parse("(1+x)^3*y^2 + (1+x)^2*y + x", "", pr(2)).unwrap();
        for method in [
            ExpansionMethod::Auto,
            ExpansionMethod::CandidateTesting,
            ExpansionMethod::Newton,
        ] {
            assert_eq!(
                expand_branch_with(&spec, 5, method),
                Err(Error::AmbiguousBranch(0))
            );
        }
    }

    #[test]
    fn central_binomial_prefix() {
        let f = expand_branch(&central_binomial_spec(), 6).unwrap();
        assert_eq!(f, Series::new(pr(3), [1, 2, 0, 2, 1, 0]));
        let f = expand_branch(&central_binomial_spec(), 60).unwrap();
        assert_eq!(f, Series::new(pr(3), central_binomial_mod3(60)));
    }

    #[test]
    fn inconsistent_seed_is_rejected() {
        let spec = BranchSpec::parse("(1+2*x)*y^2 + 2", "0", pr(3)).unwrap();
        assert_eq!(expand_branch(&spec, 4), Err(Error::NoBranch(0)));
        let spec = BranchSpec::parse("(1+2*x)*y^2 + 2", "1,1", pr(3)).unwrap();
        for method in [ExpansionMethod::CandidateTesting, ExpansionMethod::Newton] {
            assert_eq!(
                expand_branch_with(&spec, 4, method),
                Err(Error::NoBranch(1))
            );
        }
        // A correct long seed is accepted.
        let spec = BranchSpec::parse("(1+2*x)*y^2 + 2", "1,2,0,2", pr(3)).unwrap();
        assert_eq!(
            expand_branch(&spec, 6).unwrap().residues(),
            &[1, 2, 0, 2, 1, 0]
        );
    }

    #[test]
    fn ramified_branch_is_rejected() {
        // y^2 = x has no power-series root.
        let spec = BranchSpec::parse("y^2 + 2*x", "0", pr(3)).unwrap();
        assert_eq!(expand_branch(&spec, 4), Err(Error::NoBranch(1)));
    }

    #[test]
    fn vanishing_slope_is_ambiguous() {
        // y^2 = x^2: both y = x and y = -x, indistinguishable by the seed [0].
        let spec = BranchSpec::parse("y^2 + 2*x^2", "0", pr(3)).unwrap();
        assert_eq!(expand_branch(&spec, 4), Err(Error::AmbiguousBranch(1)));
        assert_eq!(
            expand_branch_with(&spec, 4, ExpansionMethod::Newton),
            Err(Error::AmbiguousBranch(1))
        );
    }

    #[test]
    fn rational_examples() {
        assert_eq!(
            expand_rational(pr(2), &[1], &[1, 1], 5).unwrap(),
            Series::ones(pr(2), 5)
        );
        assert_eq!(
            expand_rational(pr(3), &[1], &[1, 2], 4).unwrap(),
            Series::ones(pr(3), 4)
        );
        assert_eq!(
            expand_rational(pr(3), &[1], &[0, 1], 4),
            Err(Error::NonUnitDenominator)
        );
        let spec = BranchSpec::rational(pr(2), &[1], &[1, 1]).unwrap();
        assert_eq!(expand_branch(&spec, 7).unwrap(), Series::ones(pr(2), 7));
    }

    #[test]
    fn zero_precision() {
        assert_eq!(expand_branch(&thue_morse_spec(), 0).unwrap().precision(), 0);
    }

    #[test]
    fn newton_matches_candidate_testing_on_examples() {
        for spec in [thue_morse_spec(), central_binomial_spec()] {
            for n in [1, 2, 3, 17, 64, 255, 512] {
                let a = expand_branch_with(&spec, n, ExpansionMethod::Newton).unwrap();
                let b = expand_branch_with(&spec, n, ExpansionMethod::CandidateTesting).unwrap();
                assert_eq!(a, b, "n = {n}");
                assert!(spec.polynomial().annihilates(&a));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn expansion_annihilates(n in 0usize..256) {
            for spec in [thue_morse_spec(), central_binomial_spec()] {
                let f = expand_branch(&spec, n).unwrap();
                prop_assert!(spec.polynomial().annihilates(&f));
            }
        }

        #[test]
        fn rational_times_denominator(
            num in prop::collection::vec(0i64..5, 0..10),
            mut den in prop::collection::vec(0i64..5, 1..10),
            n in 0usize..80,
        ) {
            den[0] = den[0].max(1);
            let p = pr(5);
            let f = expand_rational(p, &num, &den, n).unwrap();
            let d = Series::new(p, den.iter().copied().chain(std::iter::repeat(0)).take(n));
            let a = Series::new(p, num.iter().copied().chain(std::iter::repeat(0)).take(n));
            prop_assert_eq!(f.mul(&d).unwrap(), a);
        }

        #[test]
        fn random_quadratics_agree(
            q0 in prop::collection::vec(0i64..5, 1..4),
            q1 in prop::collection::vec(0i64..5, 1..4),
            q2 in prop::collection::vec(0i64..5, 1..4),
            a0 in 0i64..5,
        ) {
            // Force Q(0, a0) = 0 by adjusting q0's constant term.
            let p = pr(5);
            let mut q0 = q0;
            q0[0] = -(q1[0] * a0 + q2[0] * a0 * a0);
            let Ok(q) = BivariatePolynomial::from_rows(p, &[q0, q1, q2]) else { return Ok(()) };
            let spec = BranchSpec::new(q, &[Fp::new(a0, p)]).unwrap();
            let a = expand_branch_with(&spec, 40, ExpansionMethod::CandidateTesting);
            let b = expand_branch_with(&spec, 40, ExpansionMethod::Auto);
            prop_assert_eq!(&a, &b);
            if let Ok(f) = a {
                prop_assert!(spec.polynomial().annihilates(&f));
            }
        }
    }
}
