//! Example series shipped with the crate.

use crate::algebraic::BranchSpec;
use crate::error::Result;
use crate::field::Prime;

/// A named branch: prime, polynomial text, seed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Example {
    pub name: &'static str,
    pub p: u64,
    pub poly: &'static str,
    pub seed: &'static str,
}

impl Example {
    pub fn spec(&self) -> Result<BranchSpec> {
        BranchSpec::parse(self.poly, self.seed, Prime::new(self.p)?)
    }
}

/// Thue–Morse: parity of the binary digit sum.
pub const THUE_MORSE: Example = Example {
    name: "thue-morse",
    p: 2,
    poly: "(1+x)^3*y^2 + (1+x)^2*y + x",
    seed: "0",
};

/// `C(2n, n) mod 3`, the branch of `(1 - 4x) y^2 = 1` through `y(0) = 1`.
pub const CENTRAL_BINOMIAL: Example = Example {
    name: "central-binomial-mod-3",
    p: 3,
    poly: "(1+2*x)*y^2 + 2",
    seed: "1",
};

/// `1 / (1 + x)` over F_2: all ones.
pub const ALL_ONES: Example = Example {
    name: "all-ones",
    p: 2,
    poly: "(1+x)*y + 1",
    seed: "",
};

/// Catalan numbers mod 2, `x y^2 - y + 1 = 0`: one exactly at `n = 2^k - 1`.
pub const CATALAN: Example = Example {
    name: "catalan-mod-2",
    p: 2,
    poly: "x*y^2 + y + 1",
    seed: "",
};

/// Fibonacci numbers mod 3, `1 / (1 - x - x^2)`.
pub const FIBONACCI: Example = Example {
    name: "fibonacci-mod-3",
    p: 3,
    poly: "(1+2*x+2*x^2)*y + 2",
    seed: "",
};

pub fn shipped() -> [Example; 5] {
    [THUE_MORSE, CENTRAL_BINOMIAL, ALL_ONES, CATALAN, FIBONACCI]
}

pub fn by_name(name: &str) -> Option<Example> {
    shipped().into_iter().find(|e| e.name == name)
}
