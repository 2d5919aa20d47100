//! Forward-chaining interval engine for category and topological-complexity bounds.
//!
//! Facts (user assertions and module emissions) seed intervals; monotone rules tighten
//! them to a fixpoint, and every endpoint keeps the derivation that produced it.

pub mod emit;
mod engine;
mod facts;
pub mod interval;
mod quantity;
mod report;
mod rules;

pub use engine::{Derivation, EngineConfig, Explanation, Inconsistency, Session, DEFAULT_CEILING, DEFAULT_MAX_N};
pub use facts::{facts_to_json, load_facts, Datum, Fact, FactEntry, Judgment, Predicate, Source};
pub use interval::{Ext, Interval};
pub use quantity::{Group, Quantity, Space};
pub use report::{Report, Row, ZclRow};
pub use rules::{registry, RuleId};
