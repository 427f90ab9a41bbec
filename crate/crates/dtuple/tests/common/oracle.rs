//! Slow independent point search: interpolate the quartic in `v`, clear
//! denominators and try every `±p/q` with `p | constant`, `q | leading`.

use std::collections::BTreeSet;

use dtuple_core::poly::{eval_p, eval_s1};
use dtuple_core::search::Component;
use dtuple_core::{Rat, UVPair};
use num_bigint::BigInt;

#[allow(clippy::needless_range_loop)]
fn interpolate(f: fn(&UVPair) -> Rat, u: &Rat) -> Vec<Rat> {
    let n = 5;
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let x = Rat::from_int(i as i64);
            let mut row: Vec<Rat> = (0..n).map(|j| x.pow(j as u32)).collect();
            row.push(f(&UVPair::new(u.clone(), x)));
            row
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).unwrap();
        m.swap(col, piv);
        let inv = m[col][col].recip().unwrap();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let k = m[r][col].clone();
                for j in col..=n {
                    let d = &m[col][j] * &k;
                    m[r][j] = &m[r][j] - &d;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

fn gcd(a: u128, b: u128) -> u128 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn divisors(n: &BigInt) -> Vec<u128> {
    let n: u128 = n.magnitude().try_into().expect("coefficients fit in 128 bits");
    let mut out = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out
}

fn roots(coeffs: &[Rat]) -> BTreeSet<Rat> {
    let l = coeffs.iter().fold(BigInt::from(1), |acc, c| {
        let d = c.denom();
        let g = num_gcd(&acc, d);
        &acc * d / g
    });
    let mut ints: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    while ints.last().is_some_and(|c| *c == BigInt::from(0)) {
        ints.pop();
    }
    let mut out = BTreeSet::new();
    let low = ints.iter().take_while(|c| **c == BigInt::from(0)).count();
    if low > 0 && !ints.is_empty() {
        out.insert(Rat::zero());
        ints.drain(..low);
    }
    if ints.len() < 2 {
        return out;
    }
    let lead = ints.last().unwrap().clone();
    for p in divisors(&ints[0]) {
        for q in divisors(&lead) {
            if gcd(p, q) != 1 {
                continue;
            }
            for sp in [BigInt::from(p), -BigInt::from(p)] {
                let x = Rat::new(sp, BigInt::from(q)).unwrap();
                let val: Rat = coeffs.iter().enumerate().map(|(i, c)| c * x.pow(i as u32)).sum();
                if val.is_zero() {
                    out.insert(x);
                }
            }
        }
    }
    out
}

fn num_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigInt::from(0) {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Points on either component with `height(u) ≤ max_h` (excluding `u ∈
/// {0, ±1}`) and `height(v) ≤ v_cap`, ordered by `(height, u, v)`.
pub fn search(max_h: i64, v_cap: u64) -> Vec<(UVPair, Component)> {
    let cap = BigInt::from(v_cap);
    let mut pts = BTreeSet::new();
    for q in 1..=max_h {
        for p in -max_h..=max_h {
            if gcd(p.unsigned_abs() as u128, q as u128) != 1 || (q == 1 && p.abs() <= 1) {
                continue;
            }
            let u = Rat::frac(p, q);
            for (f, comp) in [(eval_p as fn(&UVPair) -> Rat, Component::C), (eval_s1, Component::Mirror)] {
                for v in roots(&interpolate(f, &u)) {
                    if v.height() <= cap {
                        let uv = UVPair::new(u.clone(), v);
                        let c = if eval_p(&uv).is_zero() { Component::C } else { comp };
                        let h = uv.u.height().max(uv.v.height());
                        pts.insert((h, uv, c));
                    }
                }
            }
        }
    }
    pts.into_iter().map(|(_, uv, c)| (uv, c)).collect()
}
