//! Deterministic finite automata with output in F_p.
//!
//! Input is the base-p expansion of `n`, least significant digit first; the
//! output of the state reached is `a_n`. Every state has an output, so the
//! empty input (`n = 0`) yields the output of the start state.

mod build;
mod digits;
mod dot;
mod json;
mod minimize;

use std::collections::VecDeque;

pub use build::{build_dfao, dfao_from_linear};
pub use digits::to_digits_lsd;

use crate::error::{Error, Result};
use crate::field::{Fp, Prime};
use crate::kernel::KernelRepresentation;
use crate::weeding::SectionIndex;

/// Anything that maps a digit string of `n` to `a_n`.
pub trait CoefficientMachine {
    fn prime(&self) -> Prime;

    /// Output after reading `digits`, least significant first.
    fn evaluate_digits(&self, digits: &[SectionIndex]) -> Fp;

    /// `a_n` for `n` written in decimal, of any length.
    fn query(&self, n: &str) -> Result<Fp> {
        Ok(self.evaluate_digits(&to_digits_lsd(n, self.prime())?))
    }
}

/// A DFAO over the digit alphabet `{0, .., p-1}`, read LSD-first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dfao {
    p: Prime,
    start: usize,
    /// `next[s][d]`.
    next: Vec<Vec<usize>>,
    output: Vec<u32>,
}

impl Dfao {
    /// Validates the transition table and outputs.
    pub fn new(p: Prime, start: usize, next: Vec<Vec<usize>>, output: Vec<u32>) -> Result<Self> {
        let n = next.len();
        if n == 0 {
            return Err(Error::Schema("automaton has no states".into()));
        }
        if output.len() != n {
            return Err(Error::Schema(format!(
                "{} outputs for {n} states",
                output.len()
            )));
        }
        if start >= n {
            return Err(Error::Schema(format!("start state {start} out of range")));
        }
        for (s, row) in next.iter().enumerate() {
            if row.len() != p.as_usize() {
                return Err(Error::Schema(format!(
                    "state {s} has {} transitions, expected {p}",
                    row.len()
                )));
            }
            if let Some(&t) = row.iter().find(|&&t| t >= n) {
                return Err(Error::Schema(format!(
                    "state {s} has transition to missing state {t}"
                )));
            }
        }
        if let Some(s) = output.iter().position(|&o| o >= p.get()) {
            return Err(Error::Schema(format!(
                "state {s} output {} is not a residue mod {p}",
                output[s]
            )));
        }
        Ok(Dfao {
            p,
            start,
            next,
            output,
        })
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.next.len()
    }

    pub fn is_empty(&self) -> bool {
        self.next.is_empty()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn next_state(&self, state: usize, digit: usize) -> usize {
        self.next[state][digit]
    }

    pub fn output(&self, state: usize) -> Fp {
        self.p.element(self.output[state])
    }

    pub fn transitions(&self, state: usize) -> &[usize] {
        &self.next[state]
    }

    /// Runs raw digits from the start state and returns the final state.
    pub fn run(&self, digits: impl IntoIterator<Item = usize>) -> usize {
        digits.into_iter().fold(self.start, |s, d| self.next[s][d])
    }

    /// True iff reading a `0` never changes the output, so high-order zero
    /// digits are harmless.
    pub fn is_trailing_zero_stable(&self) -> bool {
        (0..self.len()).all(|s| self.output[self.next[s][0]] == self.output[s])
    }

    /// States reachable from `start`, in breadth-first order with digits
    /// ascending.
    fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut order = Vec::with_capacity(self.len());
        let mut queue = VecDeque::from([self.start]);
        seen[self.start] = true;
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &t in &self.next[s] {
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Drops unreachable states and renumbers in breadth-first order from
    /// the start state. Two reachable automata are isomorphic iff their
    /// canonical forms are equal.
    pub fn canonical(&self) -> Dfao {
        let order = self.bfs_order();
        let mut id = vec![usize::MAX; self.len()];
        for (new, &old) in order.iter().enumerate() {
            id[old] = new;
        }
        Dfao {
            p: self.p,
            start: 0,
            next: order
                .iter()
                .map(|&s| self.next[s].iter().map(|&t| id[t]).collect())
                .collect(),
            output: order.iter().map(|&s| self.output[s]).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &Dfao) -> bool {
        self.canonical() == other.canonical()
    }

    /// The automaton computing the same sequence with the fewest states.
    pub fn minimize(&self) -> Dfao {
        minimize::minimize(self)
    }

    pub fn to_dot(&self) -> String {
        dot::export(self)
    }

    /// Serializes to the `dfao-v1` JSON schema.
    pub fn to_json(&self) -> String {
        json::serialize(self)
    }

    pub fn from_json(text: &str) -> Result<Dfao> {
        json::deserialize(text)
    }
}

impl CoefficientMachine for Dfao {
    fn prime(&self) -> Prime {
        self.p
    }

    fn evaluate_digits(&self, digits: &[SectionIndex]) -> Fp {
        self.output(self.run(digits.iter().map(|d| d.get())))
    }
}

impl CoefficientMachine for KernelRepresentation {
    fn prime(&self) -> Prime {
        KernelRepresentation::prime(self)
    }

    fn evaluate_digits(&self, digits: &[SectionIndex]) -> Fp {
        KernelRepresentation::evaluate_digits(self, digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    pub(crate) fn thue_morse_machine() -> Dfao {
        Dfao::new(pr(2), 0, vec![vec![0, 1], vec![1, 0]], vec![0, 1]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Dfao::new(pr(2), 0, vec![], vec![]).is_err());
        assert!(Dfao::new(pr(2), 1, vec![vec![0, 0]], vec![0]).is_err());
        assert!(Dfao::new(pr(2), 0, vec![vec![0]], vec![0]).is_err());
        assert!(Dfao::new(pr(2), 0, vec![vec![0, 1]], vec![0]).is_err());
        assert!(Dfao::new(pr(2), 0, vec![vec![0, 0]], vec![2]).is_err());
    }

    #[test]
    fn query_thue_morse() {
        let m = thue_morse_machine();
        assert_eq!(m.query("6").unwrap().value(), 0);
        assert_eq!(m.query("7").unwrap().value(), 1);
        assert_eq!(m.query("0").unwrap().value(), 0);
        assert!(matches!(m.query("-5"), Err(Error::MalformedNumber(_))));
    }

    #[test]
    fn canonical_renumbers() {
        // Start at state 2; state 1 unreachable.
        let m = Dfao::new(
            pr(2),
            2,
            vec![vec![0, 2], vec![1, 1], vec![2, 0]],
            vec![1, 0, 0],
        )
        .unwrap();
        let c = m.canonical();
        assert_eq!(c, thue_morse_machine());
        assert!(m.is_isomorphic(&thue_morse_machine()));
        assert!(m.is_trailing_zero_stable());
    }
}
