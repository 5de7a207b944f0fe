//! Two-colored partitions, bounded categories of partitions and their
//! classification.

pub mod cache;
pub mod category;
pub mod certificate;
pub mod classifier;
pub mod cyclotomic;
pub mod delta;
pub mod engine;
pub mod named;
pub mod partition;
pub mod relation;
pub mod verify;
