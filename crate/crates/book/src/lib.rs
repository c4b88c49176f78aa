//! Compiles every Rust listing in the guide under `book/src` as a doc-test.
//! mdbook cannot link workspace crates into its own test runner, so each
//! chapter is included here as the docs of an empty module.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/graphs.md")]
pub mod graphs {}
#[doc = include_str!("../../../book/src/matchings.md")]
pub mod matchings {}
#[doc = include_str!("../../../book/src/counting.md")]
pub mod counting {}
#[doc = include_str!("../../../book/src/states.md")]
pub mod states {}
#[doc = include_str!("../../../book/src/feasibility.md")]
pub mod feasibility {}
#[doc = include_str!("../../../book/src/plans.md")]
pub mod plans {}
#[doc = include_str!("../../../book/src/networks.md")]
pub mod networks {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
