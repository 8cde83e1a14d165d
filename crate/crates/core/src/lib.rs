//! Under-approximated minimal cut N-sets for local-state reachability in
//! networks of finite automata.
//!
//! The pipeline: parse a network and its initial context ([`an`]), build the
//! graph of local causality for a set of target local states ([`glc`]), then
//! propagate antichains of cut N-sets ([`nsets`]) to a fixed point over the
//! graph ([`solver`]). The [`oracle`] module holds exact brute-force
//! counterparts used for verification at small scale.

pub mod an;
pub mod glc;
pub mod nsets;
pub mod oracle;
pub mod solver;

#[cfg(test)]
pub(crate) mod fixtures;
