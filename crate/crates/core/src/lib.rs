//! Exact arithmetic, curves and constructions for rational Diophantine
//! triples with a strong leading pair, and their extension to sextuples.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod ecq;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod poly;
pub mod roots;
pub mod search;
pub mod sextgen;

pub use ecq::{induced_curve, CurveQ, DistinguishedPoints, InducedCurve, PointQ, TorsionOrder};
pub use error::Error;
pub use exactnum::{reconstruct_rational, Rat};
pub use families::{f1, f2, f3, is_special, verify_tuple, Certificate, Family, FamilyTag, Triple};
pub use poly::{TripleVals, UVPair};
pub use search::{
    orbit_closure, quartic_rational_roots, search_c, CPoint, Component, Provenance, SearchConfig,
};
pub use sextgen::{
    check_regularity_relations, extend, extend_range, family_roundtrip, phi_w, w1_w2,
    ExtendOutcome, IsoData, PartialResult, Sextuple,
};
