//! Quantum cluster characters of acyclic ice quivers over finite fields.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod catalog;
pub mod ccmap;
pub mod error;
pub mod finrep;
pub mod harness;
pub mod intlin;
pub mod quiver;
pub mod scalar;
pub mod seed;
pub mod torus;

pub use error::{Error, Result};
