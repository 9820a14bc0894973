//! The guide's chapters, included so that every listing runs as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}
#[doc = include_str!("../../../book/src/fractions.md")]
pub mod fractions {}
#[doc = include_str!("../../../book/src/permutations.md")]
pub mod permutations {}
#[doc = include_str!("../../../book/src/andre.md")]
pub mod andre {}
#[doc = include_str!("../../../book/src/bijection.md")]
pub mod bijection {}
#[doc = include_str!("../../../book/src/paths.md")]
pub mod paths {}
#[doc = include_str!("../../../book/src/formulas.md")]
pub mod formulas {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
