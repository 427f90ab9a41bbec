#![allow(dead_code)]

use dtuple_core::{Rat, UVPair};
use proptest::prelude::*;

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

/// Rationals of height at most `h`.
pub fn rat_upto(h: i64) -> impl Strategy<Value = Rat> {
    (-h..=h, 1..=h).prop_map(|(n, d)| Rat::frac(n, d))
}

pub fn uv_upto(h: i64) -> impl Strategy<Value = UVPair> {
    (rat_upto(h), rat_upto(h)).prop_map(|(u, v)| UVPair::new(u, v))
}

pub fn seed() -> UVPair {
    UVPair::new(r("-119/128"), r("-135/169"))
}
