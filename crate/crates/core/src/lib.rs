//! Exact finite-group computations that check multiplicity-one statements
//! for Jacquet modules of `GL_{n+k}` over small finite fields, together with
//! the orbit, filtration and symmetric-group facts they rest on.

pub mod error;
pub mod ffalg;
pub mod groups;
pub mod chartab;
pub mod jacquet;
pub mod geometry;
pub mod symgrp;

pub use error::{Error, Result};
