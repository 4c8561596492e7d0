//! Built-in end-to-end checks against closed-form oracles.
//!
//! The oracles here never touch the automaton code: Thue–Morse is the parity
//! of the binary digit sum, and `C(2n, n) mod 3` follows from Lucas' theorem
//! (zero if some base-3 digit of `n` is 2, else `2^(number of ones)`).

use std::fmt;

use crate::algebraic::{expand_branch, BranchSpec};
use crate::automaton::{build_dfao, dfao_from_linear, CoefficientMachine, Dfao};
use crate::catalog::{CENTRAL_BINOMIAL, THUE_MORSE};
use crate::error::Result;
use crate::field::Prime;
use crate::kernel::{orbit_closure, ClosureConfig};
use crate::series::Series;
use crate::weeding::{section_raw, weed, weed_via_derivative};

/// One named check and its outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, name: &'static str, outcome: Result<Option<String>>) {
        let (passed, detail) = match outcome {
            Ok(None) => (true, String::new()),
            Ok(Some(why)) => (false, why),
            Err(e) => (false, e.to_string()),
        };
        self.checks.push(Check {
            name,
            passed,
            detail,
        });
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            if c.detail.is_empty() {
                writeln!(f, "{tag} {}", c.name)?;
            } else {
                writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Binary digit-sum parity.
pub fn digit_parity(n: u64) -> u32 {
    n.count_ones() % 2
}

/// `C(2n, n) mod 3` from the base-3 digits of `n`.
pub fn central_binomial_mod3(mut n: u64) -> u32 {
    let mut ones = 0;
    while n > 0 {
        match n % 3 {
            2 => return 0,
            1 => ones += 1,
            _ => {}
        }
        n /= 3;
    }
    if ones % 2 == 0 {
        1
    } else {
        2
    }
}

fn machine_matches(
    spec: &BranchSpec,
    states: usize,
    limit: u64,
    oracle: fn(u64) -> u32,
) -> Result<Option<String>> {
    let cfg = ClosureConfig::default();
    let dfao = build_dfao(spec, &cfg)?.minimize();
    if dfao.len() != states {
        return Ok(Some(format!(
            "expected {states} states, got {}",
            dfao.len()
        )));
    }
    let linear = dfao_from_linear(&orbit_closure(spec, &cfg)?, cfg.max_states)?.minimize();
    if !linear.is_isomorphic(&dfao) {
        return Ok(Some("orbit and linear machines differ".into()));
    }
    for n in 0..limit {
        let got = dfao.query(&n.to_string())?.value();
        if got != oracle(n) {
            return Ok(Some(format!("a_{n} = {got}, oracle says {}", oracle(n))));
        }
    }
    Ok(None)
}

fn weeding_routes_agree() -> Result<Option<String>> {
    let mut state = 0x9e37_79b9_7f4a_7c15u64;
    for raw in [2u64, 3, 5, 7] {
        let p = Prime::new(raw)?;
        for len in 0..40 {
            let coeffs: Vec<i64> = (0..len)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    (state % raw) as i64
                })
                .collect();
            let f = Series::new(p, coeffs);
            for k in 0..raw as usize {
                let fast = weed(&f, k)?;
                if fast != weed_via_derivative(&f, k)?
                    || fast != section_raw(&f, raw as usize - 1 - k)
                {
                    return Ok(Some(format!("p={raw} k={k} f=[{f}]")));
                }
            }
        }
    }
    Ok(None)
}

fn expansion_matches(spec: &BranchSpec, oracle: fn(u64) -> u32) -> Result<Option<String>> {
    let f = expand_branch(spec, 512)?;
    for (n, &c) in f.residues().iter().enumerate() {
        if c != oracle(n as u64) {
            return Ok(Some(format!(
                "a_{n} = {c}, oracle says {}",
                oracle(n as u64)
            )));
        }
    }
    Ok(None)
}

fn json_round_trip(spec: &BranchSpec) -> Result<Option<String>> {
    let m = build_dfao(spec, &ClosureConfig::default())?.minimize();
    let back = Dfao::from_json(&m.to_json())?;
    Ok((back != m).then(|| "round trip changed the machine".to_string()))
}

fn recheck(spec: &BranchSpec) -> Result<Option<String>> {
    let rep = orbit_closure(spec, &ClosureConfig::default())?;
    Ok((!rep.recheck(spec, 2)?).then(|| "relations fail at doubled precision".to_string()))
}

/// Runs every check; never panics.
pub fn run() -> Report {
    let mut report = Report::default();
    let specs = THUE_MORSE
        .spec()
        .and_then(|tm| Ok((tm, CENTRAL_BINOMIAL.spec()?)));
    let (tm, cb) = match specs {
        Ok(s) => s,
        Err(e) => {
            report.record("parse example specs", Err(e));
            return report;
        }
    };
    report.record(
        "weeding: derivative route = section",
        weeding_routes_agree(),
    );
    report.record(
        "expansion: Thue-Morse = digit parity",
        expansion_matches(&tm, digit_parity),
    );
    report.record(
        "expansion: central binomial = Lucas",
        expansion_matches(&cb, central_binomial_mod3),
    );
    report.record(
        "automaton: Thue-Morse, 2 states, n < 2^12",
        machine_matches(&tm, 2, 1 << 12, digit_parity),
    );
    report.record(
        "automaton: central binomial, 3 states, n < 3^7",
        machine_matches(&cb, 3, 3u64.pow(7), central_binomial_mod3),
    );
    report.record("kernel: recheck Thue-Morse", recheck(&tm));
    report.record("kernel: recheck central binomial", recheck(&cb));
    report.record("json: round trip", json_round_trip(&tm));
    report
}
