//! Evaluators for the named polynomials and rational maps on the `(u, v)`
//! parameter plane.
//!
//! Every polynomial is a hard-coded table of `(coefficient, u-degree,
//! v-degree[, c-degree])` terms evaluated by direct expansion. The tables are
//! checked against each other by the identity tests at the bottom of this
//! file and in `tests/identities.rs`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactnum::Rat;

/// A point of the `(u, v)` parameter plane.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UVPair {
    pub u: Rat,
    pub v: Rat,
}

impl UVPair {
    pub fn new(u: Rat, v: Rat) -> Self {
        UVPair { u, v }
    }
}

/// Three scalars `(a, b, c)` with no Diophantine guarantee attached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleVals {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl TripleVals {
    pub fn new(a: Rat, b: Rat, c: Rat) -> Self {
        TripleVals { a, b, c }
    }

    pub fn from_array([a, b, c]: [Rat; 3]) -> Self {
        TripleVals { a, b, c }
    }

    pub fn to_array(&self) -> [Rat; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// Distinct and nonzero.
    pub fn is_valid(&self) -> bool {
        !self.a.is_zero()
            && !self.b.is_zero()
            && !self.c.is_zero()
            && self.a != self.b
            && self.a != self.c
            && self.b != self.c
    }
}

type Term2 = (i64, u8, u8);
type Term3 = (i64, u8, u8, u8);

/// Curve C.
pub(crate) const P_TERMS: &[Term2] = &[
    (3, 4, 4), (-8, 4, 3), (6, 4, 2), (-1, 4, 0),
    (-8, 3, 4), (4, 3, 3), (-8, 3, 2), (12, 3, 1),
    (6, 2, 4), (-8, 2, 3), (4, 2, 2), (8, 2, 1), (6, 2, 0),
    (12, 1, 3), (8, 1, 2), (4, 1, 1), (8, 1, 0),
    (-1, 0, 4), (6, 0, 2), (8, 0, 1), (3, 0, 0),
];

const T_TERMS: &[Term2] = &[
    (1, 4, 4), (-2, 4, 2), (1, 4, 0),
    (4, 3, 3), (-4, 3, 1),
    (-2, 2, 4), (4, 2, 2), (-2, 2, 0),
    (-4, 1, 3), (4, 1, 1),
    (1, 0, 4), (-2, 0, 2), (1, 0, 0),
];

pub(crate) const S1_TERMS: &[Term2] = &[
    (1, 0, 0), (8, 4, 1), (-8, 3, 2), (-8, 2, 3), (4, 3, 1), (8, 1, 2), (-8, 0, 3),
    (8, 2, 1), (8, 1, 4), (12, 3, 3), (4, 1, 3), (12, 1, 1), (-4, 2, 2), (-6, 2, 4),
    (1, 4, 4), (-6, 4, 2), (-6, 2, 0), (-6, 0, 2), (-3, 0, 4), (-3, 4, 0), (-8, 3, 0),
];

const S2_TERMS: &[Term2] = &[
    (3, 0, 0), (-8, 3, 2), (8, 1, 0), (-8, 2, 3), (12, 3, 1), (8, 0, 1), (-8, 4, 3),
    (-8, 3, 4), (8, 1, 2), (8, 2, 1), (4, 3, 3), (12, 1, 3), (4, 1, 1),
    (4, 2, 2), (6, 2, 4), (3, 4, 4), (6, 4, 2), (6, 2, 0), (6, 0, 2), (-1, 0, 4), (-1, 4, 0),
];

const T2_TERMS: &[Term2] = &[
    (-3, 0, 0), (8, 1, 0), (-6, 2, 0), (1, 4, 0), (-16, 0, 1), (4, 1, 1), (16, 2, 1),
    (-4, 3, 1), (-10, 0, 2), (-48, 1, 2), (-4, 2, 2), (-2, 4, 2), (16, 0, 3), (-4, 1, 3),
    (-16, 2, 3), (4, 3, 3), (-3, 0, 4), (8, 1, 4), (-6, 2, 4), (1, 4, 4),
];

const T3_TERMS: &[Term2] = &[
    (-1, 0, 0), (6, 2, 0), (-8, 3, 0), (3, 4, 0), (-4, 1, 1), (16, 2, 1), (4, 3, 1),
    (-16, 4, 1), (2, 0, 2), (4, 2, 2), (48, 3, 2), (10, 4, 2), (4, 1, 3), (-16, 2, 3),
    (-4, 3, 3), (16, 4, 3), (-1, 0, 4), (6, 2, 4), (-8, 3, 4), (3, 4, 4),
];

const Q1_TERMS: &[Term3] = &[
    (1, 2, 2, 1), (2, 1, 2, 1), (2, 2, 1, 1), (1, 0, 2, 1), (-2, 0, 1, 1), (1, 0, 0, 1),
    (-2, 1, 0, 1), (1, 2, 0, 1), (2, 0, 0, 0), (-2, 0, 2, 0), (-2, 2, 0, 0), (2, 2, 2, 0),
];

const Q2_TERMS: &[Term3] = &[
    (1, 0, 2, 1), (-2, 1, 2, 1), (2, 0, 1, 1), (1, 2, 2, 1), (-2, 2, 1, 1), (1, 2, 0, 1),
    (2, 1, 0, 1), (1, 0, 0, 1), (-2, 0, 0, 0), (2, 0, 2, 0), (-2, 2, 2, 0), (2, 2, 0, 0),
];

const R1_TERMS: &[Term3] = &[
    (-2, 0, 0, 0), (-1, 0, 0, 1), (2, 1, 0, 1), (2, 2, 0, 0), (-1, 2, 0, 1), (-2, 0, 1, 0),
    (-4, 1, 1, 0), (-2, 2, 1, 0), (2, 0, 2, 0), (1, 0, 2, 1), (-2, 1, 2, 1), (-2, 2, 2, 0),
    (1, 2, 2, 1),
];

const R2_TERMS: &[Term3] = &[
    (2, 0, 0, 0), (-1, 0, 0, 1), (-2, 1, 0, 1), (-2, 2, 0, 0), (-1, 2, 0, 1), (-2, 0, 1, 0),
    (4, 1, 1, 0), (-2, 2, 1, 0), (-2, 0, 2, 0), (1, 0, 2, 1), (2, 1, 2, 1), (2, 2, 2, 0),
    (1, 2, 2, 1),
];

fn powers(x: &Rat, n: usize) -> Vec<Rat> {
    let mut out = vec![Rat::one()];
    for i in 1..=n {
        let next = &out[i - 1] * x;
        out.push(next);
    }
    out
}

fn eval2(terms: &[Term2], uv: &UVPair) -> Rat {
    let up = powers(&uv.u, 4);
    let vp = powers(&uv.v, 4);
    terms
        .iter()
        .map(|&(k, i, j)| &up[i as usize] * &vp[j as usize] * k)
        .sum()
}

fn eval3(terms: &[Term3], uv: &UVPair, c: &Rat) -> Rat {
    let up = powers(&uv.u, 4);
    let vp = powers(&uv.v, 4);
    terms
        .iter()
        .map(|&(k, i, j, l)| {
            let m = &up[i as usize] * &vp[j as usize] * k;
            if l == 1 {
                m * c
            } else {
                m
            }
        })
        .sum()
}

/// Coefficients `[c0, c1, c2, c3, c4]` of `v ↦ f(u, v)` for a term table.
pub(crate) fn v_coefficients(terms: &[Term2], u: &Rat) -> [Rat; 5] {
    let up = powers(u, 4);
    let mut out: [Rat; 5] = Default::default();
    for &(k, i, j) in terms {
        out[j as usize] += &(&up[i as usize] * k);
    }
    out
}

/// The quartic `p(u, v)` whose zero set is the curve C.
pub fn eval_p(uv: &UVPair) -> Rat {
    eval2(P_TERMS, uv)
}

/// Numerator times denominator of `ab + 1` for `a = 2u/(u²-1)`, `b = 2v/(v²-1)`.
pub fn eval_t(uv: &UVPair) -> Rat {
    eval2(T_TERMS, uv)
}

/// `s1` alone; its zero set is the mirror image of C under `(u, v) ↦ (-u, 1/v)`.
pub fn eval_s1(uv: &UVPair) -> Rat {
    eval2(S1_TERMS, uv)
}

/// `(uv + 1)(uv - u - v - 1)`, whose doubled square is `p + t`.
pub fn pt_root(uv: &UVPair) -> Rat {
    let w = &uv.u * &uv.v;
    (&w + 1) * (&w - &uv.u - &uv.v - 1)
}

/// The order-3 criterion for the point `S = [1, rst]` on the induced curve.
pub fn eval_s(t: &TripleVals) -> Rat {
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let ab = a * b;
    let ac = a * c;
    let bc = b * c;
    let abc = &ab * c;
    let sum = a + b + c;
    let inner = a.square() + b.square() + c.square() - (&ab + &ac + &bc) * 2 - 12;
    (&ab + &ac + &bc) * 4 + &abc * &sum * 6 - abc.square() * inner + 3
}

pub fn eval_r4(a: &Rat, b: &Rat, c: &Rat, d: &Rat) -> Rat {
    (a + b - c - d).square() - (a * b + 1) * (c * d + 1) * 4
}

pub fn eval_r5(a: &Rat, b: &Rat, c: &Rat, d: &Rat, e: &Rat) -> Rat {
    let abc = a * b * c;
    let lead = &abc * d * e + &abc * 2 + a + b + c - d - e;
    lead.square() - (a * b + 1) * (a * c + 1) * (b * c + 1) * (d * e + 1) * 4
}

/// The two factors of `r5(a, a, b, b, c)` after the strong substitution.
pub fn eval_q1q2(uv: &UVPair, c: &Rat) -> (Rat, Rat) {
    (eval3(Q1_TERMS, uv, c), eval3(Q2_TERMS, uv, c))
}

/// The root of `q2 = 0` in `c`; the third element of the first family.
pub fn c_from_q2(uv: &UVPair) -> Result<Rat, Error> {
    let (u, v) = (&uv.u, &uv.v);
    let den = (u * v - v - u - 1).square();
    let num = ((u.square() * v.square()) - u.square() - v.square() + 1) * 2;
    num.checked_div(&den)
}

/// `(s1, s2, s3)`; `s2` is a separate transcription of `p`.
pub fn eval_s123(uv: &UVPair) -> (Rat, Rat, Rat) {
    let (u, v) = (&uv.u, &uv.v);
    let w = u * v;
    let s3 = ((&w + v - u + 1) * (&w - v + u + 1)).square();
    (eval2(S1_TERMS, uv), eval2(S2_TERMS, uv), s3)
}

pub fn eval_r1r2(uv: &UVPair, c: &Rat) -> (Rat, Rat) {
    (eval3(R1_TERMS, uv, c), eval3(R2_TERMS, uv, c))
}

/// The root of `r1 = 0` in `c`, when the `c`-coefficient is nonzero.
pub fn c_from_r1(uv: &UVPair) -> Result<Rat, Error> {
    let lin = eval3(R1_TERMS, uv, &Rat::one()) - eval3(R1_TERMS, uv, &Rat::zero());
    let con = eval3(R1_TERMS, uv, &Rat::zero());
    (-con).checked_div(&lin)
}

pub fn eval_t123(uv: &UVPair) -> (Rat, Rat, Rat) {
    let (u, v) = (&uv.u, &uv.v);
    let w = u * v;
    let t1 = ((u - v + &w + 1) * (v - u + &w + 1)).square();
    (t1, eval2(T2_TERMS, uv), eval2(T3_TERMS, uv))
}

/// Isomorphism from C onto the curve `t3 = 0`:
/// `(u, v) ↦ ((-1 - uv)/(u - v), -v)`.
///
/// The same map carries the mirror curve `s1 = 0` onto `t2 = 0`.
pub fn alpha_map(uv: &UVPair) -> Result<UVPair, Error> {
    let (u, v) = (&uv.u, &uv.v);
    let x = (-(u * v) - 1).checked_div(&(u - v))?;
    Ok(UVPair::new(x, -v))
}

/// `(u, v) ↦ (1/u, -v)`, exchanging C and the curve `s1 = 0`.
pub fn sigma_map(uv: &UVPair) -> Result<UVPair, Error> {
    Ok(UVPair::new(uv.u.recip()?, -&uv.v))
}

pub fn swap_map(uv: &UVPair) -> UVPair {
    UVPair::new(uv.v.clone(), uv.u.clone())
}

/// `(u, v) ↦ (-u, 1/v)`.
pub fn invert_map(uv: &UVPair) -> Result<UVPair, Error> {
    Ok(UVPair::new(-&uv.u, uv.v.recip()?))
}

/// Closed orbit of `uv` under the group generated by [`swap_map`] and
/// [`invert_map`] (dihedral of order 8). Images whose map is undefined are
/// skipped. The input comes first.
pub fn automorphisms(uv: &UVPair) -> Vec<UVPair> {
    let mut orbit = vec![uv.clone()];
    let mut i = 0;
    while i < orbit.len() {
        let cur = orbit[i].clone();
        let mut push = |q: UVPair| {
            if !orbit.contains(&q) {
                orbit.push(q);
            }
        };
        push(swap_map(&cur));
        if let Ok(q) = invert_map(&cur) {
            push(q);
        }
        i += 1;
    }
    orbit
}
