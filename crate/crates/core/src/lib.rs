//! Exact torus-fixed-point combinatorics for Bryan–Steinberg pairs on
//! `A_{m-1} × C` and quasimaps to `Hilb(A_{m-1})` / `Hilb([C²/Γ])`.
//!
//! The crate is organised bottom-up:
//!
//! * [`charlab`] — characters, line-bundle sums on P¹, truncated series;
//! * [`partitions`] — Young diagrams, colorings, m-cores and m-quotients;
//! * [`quiver_geom`] — fixed-point quiver data and tangent characters;
//! * [`qm_components`] — degree labelings of fixed quasimap components;
//! * [`bs_pairs`] — rods, local models and the McKay side of the dictionary;
//! * [`cy_vertex`] — Calabi–Yau-limit vertex series;
//! * [`checks`] — exhaustive verification sweeps;
//! * [`json`] — the `vertexlab/1` serialization used by the CLI.

pub mod bs_pairs;
pub mod charlab;
pub mod checks;
pub mod cy_vertex;
mod error;
pub mod json;
pub mod partitions;
pub mod qm_components;
pub mod quiver_geom;

pub use error::{Error, Result};
