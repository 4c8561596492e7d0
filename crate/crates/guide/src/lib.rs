//! Compiles the code listings of the `book/` guide as doc-tests, one module
//! per chapter so a failure points at its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/field.md")]
pub mod field {}
#[doc = include_str!("../../../book/src/weeding.md")]
pub mod weeding {}
#[doc = include_str!("../../../book/src/algebraic.md")]
pub mod algebraic {}
#[doc = include_str!("../../../book/src/kernel.md")]
pub mod kernel {}
#[doc = include_str!("../../../book/src/automaton.md")]
pub mod automaton {}
#[doc = include_str!("../../../book/src/algebraize.md")]
pub mod algebraize {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
