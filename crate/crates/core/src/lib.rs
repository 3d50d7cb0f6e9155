#![no_std]

//! Exact combinatorics of finite constellations of infinitely near points.
//!
//! From a [`Constellation`] this crate builds three independent encodings of
//! the same data:
//!
//! - the decorated Enriques diagram ([`enriques`]),
//! - the weighted dual graph of the exceptional divisor, obtained by
//!   simulating the blow-up sequence ([`blowup`]),
//! - the kite: a simplicial complex of sails and cords, each complete sail
//!   carrying an integral affine chart inside the lotus ([`kite`]).
//!
//! The kite recovers both other encodings, which makes the three
//! constructions cross-checkable on arbitrary inputs.
//!
//! The [`lotus2d`] and [`ndlotus`] modules hold the lattice toolkit the kite
//! charts live in: sheaths of rational rays, Euclidean and Hirzebruch-Jung
//! continued fractions, zero-representing sequences with their triangulated
//! polygons, and the n-dimensional sheath walk.
//!
//! Everything is integer or rational arithmetic; there is no floating point
//! anywhere in the crate. The crate is `no_std` and only needs `alloc`.

extern crate alloc;

pub mod arith;
pub mod blowup;
pub mod constellation;
pub mod enriques;
pub mod kite;
pub mod lotus2d;
pub mod ndlotus;

pub use arith::{LatticeVec, Projective, Rational};
pub use blowup::{check_weight_sum, simulate_blowups, BlowupError, DualGraph};
pub use constellation::{
    random_constellation, AstreId, AstreKind, AstreRecord, Constellation, ConstellationError,
    Violation,
};
pub use enriques::{build_enriques, decode_constellation, EdgeKind, EnriquesDiagram, EnriquesError};
pub use kite::{build_kite, dual_from_voilure, enriques_from_kite, Kite, KiteError, Point2Q};
pub use lotus2d::{
    cf_eval, cf_expand, klein_hull, represents_zero, sheath, symbols_to_cf, triangulated_polygon,
    vector_realization, CfSeq, Flavor, LotusError, Petal, SheathResult, Symbol,
};
pub use ndlotus::{contact, growth_base, nd_sheath, Arrangement, BaseN, NdError, NdSheathResult};
