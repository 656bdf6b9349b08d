//! Link patterns, Gram matrices and Weingarten functions.

pub mod cache;
pub mod characters;
pub mod partition;
pub mod pattern;
pub mod projectors;
pub mod weingarten;

pub use partition::Partition;
pub use pattern::LinkPattern;
pub use weingarten::{CosetAlgebra, TauMode, WeingartenTable};
