//! Weeding and section operators.
//!
//! The section operator `Λ_r` keeps every p-th coefficient starting at `r`:
//!
//! ```text
//! Λ_r( Σ a_j x^j ) = Σ a_{p m + r} x^m
//! ```
//!
//! A weeding of degree `k` multiplies by `x^k`, takes the `(p-1)`-th
//! derivative, negates, and takes a termwise p-th root. Only indices
//! `j ≡ 0 (mod p)` survive the derivative, each scaled by `(p-1)! ≡ -1`, so
//! the weeding of degree `k` is exactly `Λ_{p-1-k}`. [`weed`] uses the direct
//! extraction; [`weed_via_derivative`] follows the four steps literally and
//! is kept as an independent cross-check.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Prime;
use crate::series::Series;

/// A residue `r` in `0..p`, used both as a section index and as an input digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SectionIndex {
    r: u32,
    p: Prime,
}

impl SectionIndex {
    pub fn new(r: usize, p: Prime) -> Result<Self> {
        if r >= p.as_usize() {
            return Err(Error::SectionOutOfRange {
                index: r,
                p: p.get(),
            });
        }
        Ok(SectionIndex { r: r as u32, p })
    }

    /// The section index extracted by a weeding of degree `k`.
    pub fn for_weeding(k: usize, p: Prime) -> Result<Self> {
        if k >= p.as_usize() {
            return Err(Error::DegreeOutOfRange {
                degree: k,
                p: p.get(),
            });
        }
        Ok(SectionIndex {
            r: p.get() - 1 - k as u32,
            p,
        })
    }

    #[inline]
    pub fn get(self) -> usize {
        self.r as usize
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.p
    }

    /// The weeding degree `p - 1 - r` that extracts this section.
    pub fn weeding_degree(self) -> usize {
        (self.p.get() - 1 - self.r) as usize
    }
}

impl fmt::Display for SectionIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.r)
    }
}

/// Precision of `Λ_r f` when `f` is known to `n` coefficients.
pub fn section_precision(n: usize, r: usize, p: Prime) -> usize {
    if n <= r {
        0
    } else {
        (n - 1 - r) / p.as_usize() + 1
    }
}

/// Smallest precision of `f` for which `Λ_r f` is known to `n` coefficients.
pub fn required_precision(n: usize, r: usize, p: Prime) -> usize {
    if n == 0 {
        0
    } else {
        p.as_usize() * (n - 1) + 1 + r
    }
}

/// `Λ_r f`: `result[m] = f[p m + r]`.
pub fn section(f: &Series, r: SectionIndex) -> Result<Series> {
    if r.p != f.prime() {
        return Err(Error::ModulusMismatch {
            left: f.prime().get(),
            right: r.p.get(),
        });
    }
    Ok(section_raw(f, r.get()))
}

pub(crate) fn section_raw(f: &Series, r: usize) -> Series {
    let p = f.prime();
    let coeffs = f
        .residues()
        .iter()
        .skip(r)
        .step_by(p.as_usize())
        .copied()
        .collect::<Vec<_>>();
    debug_assert_eq!(coeffs.len(), section_precision(f.precision(), r, p));
    Series::from_residues(p, coeffs)
}

/// Weeding of degree `k`, computed as `Λ_{p-1-k} f`.
pub fn weed(f: &Series, k: usize) -> Result<Series> {
    let r = SectionIndex::for_weeding(k, f.prime())?;
    Ok(section_raw(f, r.get()))
}

/// Weeding of degree `k`, computed literally as `(-(x^k f)^{(p-1)})^{1/p}`.
///
/// Agrees with [`weed`] coefficient for coefficient and in precision. A
/// [`Error::NotAPthPower`] from this function would mean the derivative failed
/// to annihilate an index not divisible by `p`, which cannot happen.
pub fn weed_via_derivative(f: &Series, k: usize) -> Result<Series> {
    let p = f.prime();
    if k >= p.as_usize() {
        return Err(Error::DegreeOutOfRange {
            degree: k,
            p: p.get(),
        });
    }
    let shifted = f.shift(k);
    let derived = shifted.derivative(p.as_usize() - 1);
    derived.neg().pth_root()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use proptest::prelude::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn s(p: u64, v: &[i64]) -> Series {
        Series::new(pr(p), v.iter().copied())
    }

    /// Thue–Morse prefix from the binary digit-parity rule.
    fn thue_morse(n: usize) -> Series {
        s(
            2,
            &(0..n)
                .map(|i| (i.count_ones() % 2) as i64)
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn section_examples() {
        let f = s(3, &[0, 1, 2, 0, 1, 2, 0, 1, 2]);
        let r = |r| SectionIndex::new(r, pr(3)).unwrap();
        assert_eq!(section(&f, r(1)).unwrap(), s(3, &[1, 1, 1]));
        assert_eq!(section(&f, r(0)).unwrap(), s(3, &[0, 0, 0]));
        let tm = thue_morse(8);
        assert_eq!(tm, s(2, &[0, 1, 1, 0, 1, 0, 0, 1]));
        let one = SectionIndex::new(1, pr(2)).unwrap();
        assert_eq!(section(&tm, one).unwrap(), s(2, &[1, 0, 0, 1]));
    }

    #[test]
    fn section_precision_rule() {
        let p = pr(3);
        assert_eq!(section_precision(0, 0, p), 0);
        assert_eq!(section_precision(2, 2, p), 0);
        assert_eq!(section_precision(3, 2, p), 1);
        assert_eq!(section_precision(10, 0, p), 4);
        for n in 0..40 {
            for r in 0..3 {
                let got = section_precision(n, r, p);
                if got > 0 {
                    assert!(required_precision(got, r, p) <= n);
                }
                assert!(required_precision(got + 1, r, p) > n);
            }
        }
    }

    #[test]
    fn derivative_route_examples() {
        let f = s(3, &[0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert_eq!(weed_via_derivative(&f, 1).unwrap(), s(3, &[1, 1, 1]));
        assert_eq!(weed_via_derivative(&f, 0).unwrap(), s(3, &[2, 2, 2]));
        let tm = thue_morse(8);
        assert_eq!(weed_via_derivative(&tm, 0).unwrap(), s(2, &[1, 0, 0, 1]));
    }

    #[test]
    fn weed_examples() {
        let f = s(3, &[0, 1, 2, 0, 1, 2, 0, 1, 2]);
        assert_eq!(weed(&f, 2).unwrap(), s(3, &[0, 0, 0]));
        let ones = Series::ones(pr(2), 8);
        assert_eq!(weed(&ones, 1).unwrap(), Series::ones(pr(2), 4));
        let f5 = Series::ones(pr(5), 10);
        assert_eq!(
            weed(&f5, 5),
            Err(Error::DegreeOutOfRange { degree: 5, p: 5 })
        );
        assert!(weed_via_derivative(&f5, 5).is_err());
    }

    #[test]
    fn section_index_validation() {
        assert!(SectionIndex::new(2, pr(2)).is_err());
        let r = SectionIndex::for_weeding(0, pr(5)).unwrap();
        assert_eq!(r.get(), 4);
        assert_eq!(r.weeding_degree(), 0);
        let wrong = SectionIndex::new(0, pr(3)).unwrap();
        assert!(section(&Series::ones(pr(2), 4), wrong).is_err());
    }

    fn arb_case() -> impl Strategy<Value = (u64, Vec<i64>, usize)> {
        (0usize..4).prop_flat_map(|pi| {
            let p = [2u64, 3, 5, 7][pi];
            (
                Just(p),
                prop::collection::vec(0..p as i64, 0..80),
                0..p as usize,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(512))]

        #[test]
        fn both_routes_agree((p, v, k) in arb_case()) {
            let f = s(p, &v);
            prop_assert_eq!(weed(&f, k).unwrap(), weed_via_derivative(&f, k).unwrap());
        }

        #[test]
        fn weeding_is_linear((p, v, k) in arb_case(), w in prop::collection::vec(0i64..7, 0..80), a in 0i64..7) {
            let f = s(p, &v);
            let g = s(p, &w);
            let alpha = Fp::new(a, pr(p));
            let lhs = weed(&f.add_scaled(alpha, &g).unwrap(), k).unwrap();
            let rhs = weed(&f, k).unwrap().add_scaled(alpha, &weed(&g, k).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn frobenius_semilinear((p, h, r) in arb_case(), g in prop::collection::vec(0i64..7, 1..20)) {
            let g = s(p, &g);
            let h = s(p, &h);
            let gp = g.frobenius();
            let lhs = section_raw(&gp.mul(&h).unwrap(), r);
            let rhs = g.mul(&section_raw(&h, r)).unwrap();
            let n = lhs.precision().min(rhs.precision());
            prop_assert_eq!(lhs.truncate(n), rhs.truncate(n));
        }
    }
}
