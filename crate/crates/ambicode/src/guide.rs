//! The narrative guide, compiled straight from the mdbook sources under
//! `book/` so that `cargo test --doc` builds and runs every code snippet
//! in the book. One module per chapter keeps test failures traceable to
//! their chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/codes.md")]
pub mod codes {}

#[doc = include_str!("../../../book/src/ambiguity.md")]
pub mod ambiguity {}

#[doc = include_str!("../../../book/src/machines.md")]
pub mod machines {}

#[doc = include_str!("../../../book/src/symmetry.md")]
pub mod symmetry {}

#[doc = include_str!("../../../book/src/decoding.md")]
pub mod decoding {}

#[doc = include_str!("../../../book/src/landauer.md")]
pub mod landauer {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
