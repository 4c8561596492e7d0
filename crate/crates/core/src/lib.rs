//! Finite automata for algebraic power series over prime fields.
//!
//! An algebraic power series `f = Σ a_n x^n` over F_p (a root of some
//! polynomial `Q(x, y)`) has coefficients computable by a finite automaton
//! that reads the base-p digits of `n`, least significant first. This crate
//! builds that automaton:
//!
//! 1. expand the branch of `Q(x, y) = 0` selected by a seed ([`algebraic`]);
//! 2. close `f` under the section operators `Λ_0 .. Λ_{p-1}` (a weeding of
//!    degree `k` is `Λ_{p-1-k}`, see [`weeding`]), keeping a linear basis and
//!    one update matrix per digit ([`kernel`]);
//! 3. turn the result into a deterministic automaton with output, minimize,
//!    query and serialize it ([`automaton`]).
//!
//! The reverse direction, guessing an annihilating polynomial for the
//! sequence an automaton produces, lives in [`algebraize`].
//!
//! ```
//! use christol::{automaton, BranchSpec, ClosureConfig, CoefficientMachine, Prime};
//!
//! let p = Prime::new(2)?;
//! let spec = BranchSpec::parse("(1+x)^3*y^2 + (1+x)^2*y + x", "0", p)?;
//! let dfao = automaton::build_dfao(&spec, &ClosureConfig::default())?.minimize();
//! assert_eq!(dfao.len(), 2);
//! // 6 = 110 in binary: two ones, so the Thue–Morse value is 0.
//! assert_eq!(dfao.query("6")?.value(), 0);
//! # Ok::<(), christol::Error>(())
//! ```

pub mod algebraic;
pub mod algebraize;
pub mod automaton;
pub mod catalog;
mod error;
pub mod field;
pub mod kernel;
mod linalg;
pub mod selftest;
pub mod series;
pub mod weeding;

pub use algebraic::{expand_branch, verify_annihilation, BivariatePolynomial, BranchSpec};
pub use automaton::{CoefficientMachine, Dfao};
pub use error::{Error, Result};
pub use field::{FieldOp, Fp, Prime};
pub use kernel::{ClosureConfig, KernelRepresentation};
pub use series::Series;
pub use weeding::{section, weed, weed_via_derivative, SectionIndex};
