//! Closure of a series under the section operators, as a linear representation.
//!
//! Starting from `z_1 = f`, every basis element `z_i` is sent through each
//! section `Λ_d`; the result is reduced against the basis found so far and
//! either appended as a new basis element or recorded as a linear
//! combination. Row `i` of the matrix for digit `d` holds the coordinates of
//! `Λ_d z_i`. The coefficient `a_n` is then
//!
//! ```text
//! a_n = alpha0 · M[k_0] · M[k_1] · ... · M[k_i] · b0
//! ```
//!
//! for the base-p digits `k_0, k_1, ...` of `n` (least significant first),
//! where `b0` collects the constant terms of the basis series.
//!
//! Equality of series is decided on the first `n_eq` coefficients. A
//! truncated comparison can only identify series that differ further out,
//! never separate equal ones, so [`KernelRepresentation::recheck`] repeats
//! every relation at a higher precision.

use std::fmt;

use crate::algebraic::{expand_branch, BranchSpec};
use crate::automaton::to_digits_lsd;
use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::linalg::{dot, vec_mat, IncrementalBasis, Insertion};
use crate::series::Series;
use crate::weeding::{required_precision, section_raw, SectionIndex};

/// Knobs for the closure computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureConfig {
    /// Number of leading coefficients compared when testing equality.
    pub n_eq: usize,
    /// Upper bound on the number of states (basis size or automaton size).
    pub max_states: usize,
    /// Precision multiplier used by [`KernelRepresentation::recheck`].
    pub recheck_factor: usize,
}

impl Default for ClosureConfig {
    fn default() -> Self {
        ClosureConfig {
            n_eq: 64,
            max_states: 4096,
            recheck_factor: 2,
        }
    }
}

impl ClosureConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_eq < 8 {
            return Err(Error::InvalidConfig(format!(
                "comparison precision must be at least 8, got {}",
                self.n_eq
            )));
        }
        if self.max_states == 0 {
            return Err(Error::InvalidConfig("state cap must be positive".into()));
        }
        if self.recheck_factor < 2 {
            return Err(Error::InvalidConfig(format!(
                "recheck factor must be at least 2, got {}",
                self.recheck_factor
            )));
        }
        Ok(())
    }
}

/// The digits consumed (least significant first) to reach a state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DigitPath(Vec<SectionIndex>);

impl DigitPath {
    pub fn digits(&self) -> &[SectionIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub(crate) fn child(&self, d: SectionIndex) -> DigitPath {
        let mut v = self.0.clone();
        v.push(d);
        DigitPath(v)
    }

    fn raw(&self) -> Vec<usize> {
        self.0.iter().map(|d| d.get()).collect()
    }
}

impl fmt::Display for DigitPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Expansion of the root series, grown by doubling on demand so that any
/// state can be recomputed from its digit path.
pub(crate) struct RootExpansion<'a> {
    spec: &'a BranchSpec,
    series: Series,
}

impl<'a> RootExpansion<'a> {
    pub fn new(spec: &'a BranchSpec, initial: usize) -> Result<Self> {
        Ok(RootExpansion {
            spec,
            series: expand_branch(spec, initial.max(1))?,
        })
    }

    fn ensure(&mut self, need: usize) -> Result<()> {
        let mut prec = self.series.precision().max(1);
        if prec >= need {
            return Ok(());
        }
        while prec < need {
            prec *= 2;
        }
        self.series = expand_branch(self.spec, prec)?;
        Ok(())
    }

    /// The series reached along `path`, to exactly `n` coefficients.
    pub fn state(&mut self, path: &[usize], n: usize) -> Result<Series> {
        let p = self.spec.prime();
        let need = path
            .iter()
            .rev()
            .fold(n, |acc, &r| required_precision(acc, r, p));
        self.ensure(need)?;
        let mut s = self.series.truncate(need);
        for &r in path {
            s = section_raw(&s, r);
        }
        debug_assert!(s.precision() >= n);
        Ok(s.truncate(n))
    }
}

/// A basis element together with the path that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisState {
    pub path: DigitPath,
    /// First `n_eq` coefficients.
    pub series: Series,
}

/// Basis, per-digit matrices, output vector and initial vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelRepresentation {
    p: Prime,
    n_eq: usize,
    basis: Vec<BasisState>,
    /// `matrices[d][i][j]`: coefficient of `z_j` in `Λ_d z_i`.
    matrices: Vec<Vec<Vec<u32>>>,
    b0: Vec<u32>,
    alpha0: Vec<u32>,
}

/// Breadth-first closure of the branch under all sections.
pub fn orbit_closure(spec: &BranchSpec, cfg: &ClosureConfig) -> Result<KernelRepresentation> {
    cfg.validate()?;
    let p = spec.prime();
    let pu = p.as_usize();
    let n_eq = cfg.n_eq;
    let mut root = RootExpansion::new(spec, n_eq * pu)?;
    let mut lin = IncrementalBasis::new(p, n_eq);
    let mut basis: Vec<BasisState> = Vec::new();
    // coords[i][d], sized to the basis at the time they were computed.
    let mut coords: Vec<Vec<Vec<u32>>> = Vec::new();

    let f = root.state(&[], n_eq)?;
    if let Insertion::Added(_) = lin.insert(f.residues()) {
        basis.push(BasisState {
            path: DigitPath::default(),
            series: f,
        });
    }

    let mut i = 0;
    while i < basis.len() {
        let path = basis[i].path.clone();
        let parent = root.state(&path.raw(), pu * n_eq)?;
        let mut row = Vec::with_capacity(pu);
        for d in 0..pu {
            let child = section_raw(&parent, d).truncate(n_eq);
            match lin.insert(child.residues()) {
                Insertion::Dependent(c) => row.push(c),
                Insertion::Added(idx) => {
                    if basis.len() >= cfg.max_states {
                        return Err(Error::StateCapExceeded(cfg.max_states));
                    }
                    let mut e = vec![0; idx + 1];
                    e[idx] = 1;
                    row.push(e);
                    basis.push(BasisState {
                        path: path.child(SectionIndex::new(d, p)?),
                        series: child,
                    });
                }
            }
        }
        coords.push(row);
        i += 1;
    }

    let m = basis.len();
    let matrices = (0..pu)
        .map(|d| {
            coords
                .iter()
                .map(|row| {
                    let mut r = row[d].clone();
                    r.resize(m, 0);
                    r
                })
                .collect()
        })
        .collect();
    let b0 = basis.iter().map(|b| b.series.residues()[0]).collect();
    let mut alpha0 = vec![0; m];
    if m > 0 {
        alpha0[0] = 1;
    }
    Ok(KernelRepresentation {
        p,
        n_eq,
        basis,
        matrices,
        b0,
        alpha0,
    })
}

impl KernelRepresentation {
    pub fn prime(&self) -> Prime {
        self.p
    }

    /// Number of basis elements `m`.
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn comparison_precision(&self) -> usize {
        self.n_eq
    }

    pub fn basis(&self) -> &[BasisState] {
        &self.basis
    }

    pub fn max_path_len(&self) -> usize {
        self.basis.iter().map(|b| b.path.len()).max().unwrap_or(0)
    }

    /// `M[digit]` as raw residues, row `i` = coordinates of `Λ_digit z_i`.
    pub fn matrix(&self, digit: usize) -> &[Vec<u32>] {
        &self.matrices[digit]
    }

    /// Constant terms of the basis series.
    pub fn output_vector(&self) -> &[u32] {
        &self.b0
    }

    /// Coordinates of the root series in the basis.
    pub fn initial_vector(&self) -> &[u32] {
        &self.alpha0
    }

    pub fn initial_alpha(&self) -> Vec<Fp> {
        self.alpha0.iter().map(|&v| self.p.element(v)).collect()
    }

    fn raw_alpha(&self, alpha: &[Fp]) -> Result<Vec<u32>> {
        if alpha.len() != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                found: alpha.len(),
            });
        }
        alpha
            .iter()
            .map(|a| {
                if a.modulus() == self.p {
                    Ok(a.value())
                } else {
                    Err(Error::ModulusMismatch {
                        left: self.p.get(),
                        right: a.modulus().get(),
                    })
                }
            })
            .collect()
    }

    pub(crate) fn step_raw(&self, alpha: &[u32], digit: usize) -> Vec<u32> {
        if alpha.is_empty() {
            return Vec::new();
        }
        vec_mat(self.p, alpha, &self.matrices[digit])
    }

    pub(crate) fn output_raw(&self, alpha: &[u32]) -> u32 {
        dot(self.p, alpha, &self.b0)
    }

    /// Reads one digit: `alpha · M[digit]`.
    pub fn alpha_step(&self, alpha: &[Fp], digit: SectionIndex) -> Result<Vec<Fp>> {
        let raw = self.raw_alpha(alpha)?;
        if digit.prime() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: digit.prime().get(),
            });
        }
        Ok(self
            .step_raw(&raw, digit.get())
            .into_iter()
            .map(|v| self.p.element(v))
            .collect())
    }

    /// `alpha · b0`.
    pub fn alpha_output(&self, alpha: &[Fp]) -> Result<Fp> {
        let raw = self.raw_alpha(alpha)?;
        Ok(self.p.element(self.output_raw(&raw)))
    }

    /// Coefficient for a digit sequence (least significant first).
    pub fn evaluate_digits(&self, digits: &[SectionIndex]) -> Fp {
        let alpha = digits
            .iter()
            .fold(self.alpha0.clone(), |a, d| self.step_raw(&a, d.get()));
        self.p.element(self.output_raw(&alpha))
    }

    /// `a_n` for `n` given in decimal.
    pub fn query(&self, n: &str) -> Result<Fp> {
        Ok(self.evaluate_digits(&to_digits_lsd(n, self.p)?))
    }

    /// Re-derives every basis series and relation at `factor * n_eq`
    /// coefficients and reports whether all of them still hold.
    pub fn recheck(&self, spec: &BranchSpec, factor: usize) -> Result<bool> {
        if factor < 2 {
            return Err(Error::InvalidConfig(format!(
                "recheck factor must be at least 2, got {factor}"
            )));
        }
        if spec.prime() != self.p {
            return Err(Error::ModulusMismatch {
                left: self.p.get(),
                right: spec.prime().get(),
            });
        }
        let p = self.p;
        let pu = p.as_usize();
        let n = factor * self.n_eq;
        let deepest = self.max_path_len() + 1;
        let mut root = RootExpansion::new(spec, n * pu.pow(deepest as u32))?;

        let mut parents = Vec::with_capacity(self.dimension());
        for b in &self.basis {
            let parent = root.state(&b.path.raw(), pu * n)?;
            if parent.truncate(self.n_eq) != b.series {
                return Ok(false);
            }
            parents.push(parent);
        }
        let z: Vec<Series> = parents.iter().map(|s| s.truncate(n)).collect();
        let combine = |coords: &[u32]| -> Series {
            let mut acc = vec![0u32; n];
            for (&c, zj) in coords.iter().zip(&z) {
                if c == 0 {
                    continue;
                }
                for (a, &v) in acc.iter_mut().zip(zj.residues()) {
                    *a = p.mul_add(*a, c, v);
                }
            }
            Series::from_residues(p, acc)
        };

        let f = root.state(&[], n)?;
        if combine(&self.alpha0) != f {
            return Ok(false);
        }
        for (i, parent) in parents.iter().enumerate() {
            if z[i].residues()[0] != self.b0[i] {
                return Ok(false);
            }
            for d in 0..pu {
                if section_raw(parent, d) != combine(&self.matrices[d][i]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn thue_morse() -> BranchSpec {
        BranchSpec::parse("(1+x)^3*y^2 + (1+x)^2*y + x", "0", pr(2)).unwrap()
    }

    fn central_binomial() -> BranchSpec {
        BranchSpec::parse("(1+2*x)*y^2 + 2", "1", pr(3)).unwrap()
    }

    fn all_ones() -> BranchSpec {
        BranchSpec::rational(pr(2), &[1], &[1, 1]).unwrap()
    }

    #[test]
    fn thue_morse_kernel() {
        let rep = orbit_closure(&thue_morse(), &ClosureConfig::default()).unwrap();
        assert_eq!(rep.dimension(), 2);
        assert_eq!(rep.matrix(0), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(rep.matrix(1), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(rep.output_vector(), &[0, 1]);
        assert_eq!(rep.initial_vector(), &[1, 0]);
        assert_eq!(rep.basis()[1].path.to_string(), "1");
        assert_eq!(rep.basis()[0].path.to_string(), "ε");
    }

    #[test]
    fn central_binomial_kernel() {
        let rep = orbit_closure(&central_binomial(), &ClosureConfig::default()).unwrap();
        assert_eq!(rep.dimension(), 1);
        assert_eq!(rep.matrix(0), &[vec![1]]);
        assert_eq!(rep.matrix(1), &[vec![2]]);
        assert_eq!(rep.matrix(2), &[vec![0]]);
        assert_eq!(rep.output_vector(), &[1]);
    }

    #[test]
    fn all_ones_kernel() {
        let rep = orbit_closure(&all_ones(), &ClosureConfig::default()).unwrap();
        assert_eq!(rep.dimension(), 1);
        assert_eq!(rep.matrix(0), &[vec![1]]);
        assert_eq!(rep.matrix(1), &[vec![1]]);
        assert_eq!(rep.output_vector(), &[1]);
    }

    #[test]
    fn zero_series_has_empty_basis() {
        let spec = BranchSpec::parse("y", "", pr(5)).unwrap();
        let rep = orbit_closure(&spec, &ClosureConfig::default()).unwrap();
        assert_eq!(rep.dimension(), 0);
        assert_eq!(rep.query("12345").unwrap(), pr(5).zero());
        assert!(rep.recheck(&spec, 2).unwrap());
    }

    #[test]
    fn alpha_machine_examples() {
        let cb = orbit_closure(&central_binomial(), &ClosureConfig::default()).unwrap();
        let p3 = pr(3);
        let one = SectionIndex::new(1, p3).unwrap();
        assert_eq!(
            cb.alpha_step(&[p3.one()], one).unwrap(),
            vec![p3.element(2)]
        );

        let tm = orbit_closure(&thue_morse(), &ClosureConfig::default()).unwrap();
        let p2 = pr(2);
        let d1 = SectionIndex::new(1, p2).unwrap();
        let d0 = SectionIndex::new(0, p2).unwrap();
        assert_eq!(
            tm.alpha_step(&[p2.one(), p2.zero()], d1).unwrap(),
            vec![p2.zero(), p2.one()]
        );
        assert_eq!(
            tm.alpha_step(&[p2.zero(), p2.zero()], d0).unwrap(),
            vec![p2.zero(), p2.zero()]
        );
        assert_eq!(tm.alpha_output(&[p2.zero(), p2.one()]).unwrap(), p2.one());
        assert_eq!(tm.alpha_output(&[p2.one(), p2.zero()]).unwrap(), p2.zero());
        assert_eq!(tm.alpha_output(&[p2.zero(), p2.zero()]).unwrap(), p2.zero());
        assert_eq!(
            tm.alpha_output(&[p2.one()]),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            tm.alpha_step(&[p2.one()], d0),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn queries_match_expansion() {
        for spec in [thue_morse(), central_binomial(), all_ones()] {
            let rep = orbit_closure(&spec, &ClosureConfig::default()).unwrap();
            let f = expand_branch(&spec, 4096).unwrap();
            for n in 0..4096 {
                assert_eq!(
                    rep.query(&n.to_string()).unwrap(),
                    f.coeff(n).unwrap(),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn basis_is_independent() {
        for spec in [thue_morse(), central_binomial(), all_ones()] {
            let rep = orbit_closure(&spec, &ClosureConfig::default()).unwrap();
            let rows: Vec<Vec<u32>> = rep
                .basis()
                .iter()
                .map(|b| b.series.residues().to_vec())
                .collect();
            assert_eq!(rank(rep.prime(), &rows), rep.dimension());
        }
    }

    #[test]
    fn deterministic() {
        let cfg = ClosureConfig::default();
        for spec in [thue_morse(), central_binomial()] {
            assert_eq!(
                orbit_closure(&spec, &cfg).unwrap(),
                orbit_closure(&spec, &cfg).unwrap()
            );
        }
    }

    #[test]
    fn recheck_passes_and_detects_corruption() {
        let spec = thue_morse();
        let rep = orbit_closure(&spec, &ClosureConfig::default()).unwrap();
        assert!(rep.recheck(&spec, 2).unwrap());
        assert!(rep.recheck(&spec, 3).unwrap());
        assert!(matches!(
            rep.recheck(&spec, 1),
            Err(Error::InvalidConfig(_))
        ));

        let mut bad = rep.clone();
        bad.matrices[1][0][0] = 1;
        assert!(!bad.recheck(&spec, 2).unwrap());

        let mut bad = rep.clone();
        bad.b0[0] = 1;
        assert!(!bad.recheck(&spec, 2).unwrap());

        let mut bad = rep;
        bad.alpha0 = vec![0, 1];
        assert!(!bad.recheck(&spec, 2).unwrap());
    }

    #[test]
    fn state_cap() {
        let cfg = ClosureConfig {
            max_states: 1,
            ..ClosureConfig::default()
        };
        assert_eq!(
            orbit_closure(&thue_morse(), &cfg),
            Err(Error::StateCapExceeded(1))
        );
    }

    #[test]
    fn config_validation() {
        let cfg = ClosureConfig {
            n_eq: 7,
            ..ClosureConfig::default()
        };
        assert!(matches!(
            orbit_closure(&thue_morse(), &cfg),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn expansion_errors_propagate() {
        let spec = BranchSpec::parse("(1+x)^3*y^2 + (1+x)^2*y + x", "", pr(2)).unwrap();
        assert_eq!(
            orbit_closure(&spec, &ClosureConfig::default()),
            Err(Error::AmbiguousBranch(0))
        );
    }
}
