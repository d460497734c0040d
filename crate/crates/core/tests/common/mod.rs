//! Shared test support: double-double arithmetic, independent oracles, and
//! flat-wave reference solvers.

#![allow(dead_code)]

pub mod dd;
pub mod flatwave;
pub mod oracle;
