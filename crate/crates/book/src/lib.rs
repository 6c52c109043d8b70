//! The book's chapters, one module each, so that `cargo test` runs every code block.
//!
//! mdbook cannot link against workspace crates when it tests snippets, rustdoc can.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/finite.md")]
pub mod finite {}

#[doc = include_str!("../../../book/src/surds.md")]
pub mod surds {}

#[doc = include_str!("../../../book/src/square-roots.md")]
pub mod square_roots {}

#[doc = include_str!("../../../book/src/period-rules.md")]
pub mod period_rules {}

#[doc = include_str!("../../../book/src/approximation.md")]
pub mod approximation {}

#[doc = include_str!("../../../book/src/scanning.md")]
pub mod scanning {}

#[doc = include_str!("../../../book/src/testing.md")]
pub mod testing {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
