//! Radio network wake-up and broadcast, reduced to hitting games.
//!
//! This crate bundles four pieces that fit together:
//!
//! - [`model`] — a deterministic simulator of the synchronous radio network
//!   model: per-channel collision semantics, optional collision detection,
//!   keyed random tapes, and wake-up / broadcast executions.
//! - [`algorithms`] — reference contention-resolution algorithms (decay,
//!   probability schedules, collision-detector binary search, exponent
//!   search, multichannel decay) used to exercise everything else.
//! - [`hitting`] and [`families`] — the adversarial hitting game
//!   (referee hides a target set, player proposes sets, a proposal wins when
//!   it intersects the target in exactly one element), its multi-instance
//!   sequencing, and brute-force combinatorial verifiers for the set
//!   families that make the game hard.
//! - [`reductions`] — simulation strategies that turn any wake-up or
//!   broadcast algorithm into a hitting-game player, plus a consistency
//!   oracle comparing the player's simulation with the reference execution
//!   it must track.
//!
//! The `examples/` directory contains one runnable example per capability;
//! start with `basic_reduction`. The `radiohit` binary drives seeded
//! experiment batches from JSON configs; see [`harness`].

pub mod algorithms;
mod error;
pub mod families;
pub mod harness;
pub mod hitting;
pub mod model;
pub mod reductions;

pub use error::{Error, Result};
