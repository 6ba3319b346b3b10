//! Commensurability invariants of hyperbolic Coxeter groups, computed exactly.

pub mod algnum;
pub mod brauer;
pub mod charfields;
pub mod classify;
pub mod coxgraph;
pub mod cycles;
pub mod matrix;
pub mod report;
pub mod vform;

pub(crate) fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}
