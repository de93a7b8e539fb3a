//! Path-based test set generation for prioritized directed-graph models.

pub mod cli;
pub mod criteria;
pub mod generators;
pub mod model;
pub mod report;
pub mod requirements;
pub mod selection;
