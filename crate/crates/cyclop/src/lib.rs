//! A symbolic workbench for cyclic operads.
//!
//! The library implements two presentations of the same structure and the
//! machinery to certify, at desk scale, that they agree:
//!
//! - unrooted trees of decorated corollas ([`tree`]), their special-corolla
//!   rewriting system ([`rewrite`]), and the flatten/normalize monad built on
//!   them ([`monad`]), carrying a composition algebra ([`operad`]);
//! - a small binder calculus of commands and terms ([`mu`]) together with a
//!   combinator syntax ([`comb`]), connected to the tree side by a semantic
//!   translation ([`translate`]) and tree decomposition ([`decompose`]).
//!
//! Law suites under [`laws`] check the equational theory on seeded random
//! instances; [`parse`] and [`dot`] provide the text formats and Graphviz
//! export used by the `cyclop` command-line tool ([`cli`]).
//!
//! Start with the runnable programs in `examples/` for a tour.

pub mod error;
pub mod var;
pub mod signature;
pub mod tree;
pub mod rewrite;
pub mod monad;
pub mod operad;
pub mod comb;
pub mod mu;
pub mod translate;
pub mod decompose;
pub mod oracles;
pub mod gen;
pub mod laws;
pub mod parse;
pub mod dot;
pub mod cli;

pub use error::{Error, Result};
