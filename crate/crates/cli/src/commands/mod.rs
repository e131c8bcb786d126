pub mod analyze;
pub mod augment;
pub mod build;
pub mod control;
pub mod correlate;
pub mod stats;
