//! Signed permutation combinatorics: diagrams, essential sets, Bruhat order,
//! basic elements, and a finite-field model of Schubert cell rank conditions.
//!
//! The group `W_n` of signed permutations (the hyperoctahedral group) acts on
//! `{-n,...,-1,0,1,...,n}` with `w(-i) = -w(i)`.  This crate computes the
//! Rothe-style diagram of such an element (in types B and C), its essential
//! set of rank conditions, and verifies the order-theoretic structure behind
//! it: basic (bigrassmannian) elements, suprema, dissecting elements, and the
//! bijection with Bruhat-minimal elements not below a given one.

pub mod bruhat;
pub mod cli;
pub mod diagrams;
pub mod essential;
pub mod matrix_model;
pub mod perm_core;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("query out of range: {0}")]
    Range(String),
    #[error("enumeration budget exceeded: n = {0} > {1} (pass an override to proceed)")]
    Budget(usize, usize),
    #[error("invalid basic triple ({k},{p},{q}) for flavor {flavor}")]
    InvalidTriple { k: i64, p: i64, q: i64, flavor: &'static str },
    #[error("no supremum: minimal upper bounds are not unique")]
    NoSupremum,
    #[error("no unique maximum among elements with the given rank bound")]
    NoUniqueMax,
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("unknown format: {0}")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
