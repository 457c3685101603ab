//! A toolkit for a calculus of mobile, communicating, location-aware
//! processes.
//!
//! Processes live inside named ambients `m{A}[P]` that can move with `in n` /
//! `out n` capabilities. Each ambient name carries a port set `A` restricting
//! which channels processes inside it may use for global (boundary-crossing)
//! CCS-style communication. Two query capabilities, `ploc(x)` and `sloc(x)`,
//! let a process learn the name of its ambient's parent or of a sibling
//! ambient.
//!
//! The crate provides:
//!
//! - [`syntax`]: the term language, free names, capture-avoiding substitution
//!   and alpha equality;
//! - [`parser`]: a concrete syntax (`.cmc` files) with a round-tripping
//!   pretty-printer;
//! - [`congruence`]: structural congruence decided through canonical forms;
//! - [`reduction`]: the one-step reduction relation and a trace driver;
//! - [`lts`]: the labelled-transition semantics (mobility, communication,
//!   location queries), state-space exploration and weak closures;
//! - [`equivalence`]: barbs, weak barbed / capability-barbed bisimulation
//!   checking, observation-context gadgets and the reduction-vs-transition
//!   coincidence harness;
//! - [`casestudies`]: executable hospital and shopping-mall systems plus
//!   location trees with path computation;
//! - [`gen`]: seeded random term generators used by the test suites and the
//!   CLI.

pub mod casestudies;
pub mod congruence;
pub mod equivalence;
pub mod gen;
pub mod lts;
pub mod parser;
pub mod reduction;
pub mod syntax;

pub use syntax::{
    AmbTarget, AmbientName, Capability, ConstDef, Environment, PortName, PortSet, Process,
    RelabelMap, Value, Var,
};
