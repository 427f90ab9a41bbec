#![allow(dead_code)]

pub mod oracle;

use dtuple_core::{Rat, UVPair};

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

pub fn rs(xs: &[&str]) -> Vec<Rat> {
    xs.iter().map(|s| r(s)).collect()
}

pub fn seed() -> UVPair {
    UVPair::new(r("-119/128"), r("-135/169"))
}
