//! Finite-algebra workbench: finite rings and bimodules, rings of
//! translations, socles, radicals, annihilator lattices, and
//! quasi-Frobenius checks by several independent routes.
//!
//! Every object is finite and fully enumerable unless stated otherwise;
//! elements are dense integer encodings `0..order`.

pub mod bimodule;
pub mod closure;
pub mod error;
pub mod geo;
pub mod group;
pub mod harness;
pub mod qf;
pub mod ring;
pub mod span;
pub mod translations;

pub use error::{Error, Result};

use serde::{Deserialize, Serialize};

/// Size limits shared by the enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest ring or carrier order that may be constructed.
    pub size: u64,
    /// Largest order for which complete ideal / submodule lattices are built.
    pub lattice: usize,
    /// Largest number of endomorphisms an enumerated closure may reach.
    pub closure: usize,
    /// Largest number of candidate maps enumerated by the Baer test.
    pub homs: u64,
    /// Seed for every sampled check.
    pub seed: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            size: 1 << 22,
            lattice: 1024,
            closure: 100_000,
            homs: 1 << 20,
            seed: 0x5eed,
        }
    }
}

/// Which side(s) an ideal or submodule is closed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
    #[serde(alias = "bi")]
    TwoSided,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::TwoSided => Side::TwoSided,
        }
    }
}
