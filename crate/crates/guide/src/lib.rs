//! The chapters of the guide in `book/src`, one module each, so that
//! `cargo test` runs every code block in the book as a doc-test. Editing a
//! chapter and running the tests is all it takes to keep the two in sync.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/moves.md")]
pub mod moves {}

#[doc = include_str!("../../../book/src/construction.md")]
pub mod construction {}

#[doc = include_str!("../../../book/src/pmfg.md")]
pub mod pmfg {}

#[doc = include_str!("../../../book/src/chordal.md")]
pub mod chordal {}

#[doc = include_str!("../../../book/src/gaussian.md")]
pub mod gaussian {}

#[doc = include_str!("../../../book/src/synth.md")]
pub mod synth {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
