//! Rational roots of low-degree polynomials by exact real-root isolation.
//!
//! Roots are bracketed with Sturm counts, shrunk until the bracket can hold
//! at most one rational of the allowed height, recovered with
//! [`reconstruct_rational`] and then confirmed by exact substitution.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{reconstruct_rational, Rat};

/// Dense integer polynomial, coefficients in ascending degree, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntPoly(Vec<BigInt>);

impl IntPoly {
    fn trimmed(mut c: Vec<BigInt>) -> IntPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly(c)
    }

    /// Scales rational coefficients to a primitive integer polynomial with
    /// the same roots.
    fn from_rats(coeffs: &[Rat]) -> IntPoly {
        let l = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        IntPoly::trimmed(ints).primitive()
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lead(&self) -> &BigInt {
        self.0.last().expect("nonzero polynomial")
    }

    fn primitive(self) -> IntPoly {
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() || g.is_one() {
            return self;
        }
        IntPoly(self.0.into_iter().map(|c| c / &g).collect())
    }

    fn derivative(&self) -> IntPoly {
        IntPoly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * i)
                .collect(),
        )
    }

    /// Pseudo-remainder of `self` by `g`: `lc(g)^(deg f - deg g + 1) · f mod g`.
    fn pseudo_rem(&self, g: &IntPoly) -> IntPoly {
        let mut r = self.0.clone();
        let dg = g.degree();
        let lg = g.lead();
        let steps = self.degree() + 1 - dg;
        for _ in 0..steps {
            if r.len() < g.0.len() {
                r.iter_mut().for_each(|c| *c *= lg);
                continue;
            }
            let lr = r.last().expect("nonempty").clone();
            let shift = r.len() - 1 - dg;
            r.iter_mut().for_each(|c| *c *= lg);
            for (i, gc) in g.0.iter().enumerate() {
                r[shift + i] -= &lr * gc;
            }
            r.pop();
        }
        IntPoly::trimmed(r)
    }

    /// Sign of `self(n/d)` for `d > 0`, from `Σ h_i n^i d^(k-i)`.
    fn sign_at(&self, x: &Rat) -> Sign {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.0.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        acc.sign()
    }

    fn vanishes_at(&self, x: &Rat) -> bool {
        self.sign_at(x) == Sign::NoSign
    }

    /// Sign at a dyadic point, with powers of the denominator as shifts.
    fn sign_dy(&self, x: &Dyadic) -> Sign {
        let mut acc = BigInt::zero();
        let mut shift = 0usize;
        for c in self.0.iter().rev() {
            acc = acc * &x.num + (c << shift);
            shift += x.exp as usize;
        }
        acc.sign()
    }

    /// `1 + ceil(max |h_i| / |h_n|)`; every real root lies strictly inside.
    fn cauchy_bound(&self) -> BigInt {
        let ln = self.lead().abs();
        let m = self.0[..self.0.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_default();
        let (q, r) = m.div_rem(&ln);
        q + if r.is_zero() { 1 } else { 2 }
    }
}

/// `num / 2^exp`.
#[derive(Clone, Debug)]
struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    fn int(n: BigInt) -> Dyadic {
        Dyadic { num: n, exp: 0 }
    }

    /// `lo + (hi - lo)·j / 2^k`.
    fn between(lo: &Dyadic, hi: &Dyadic, j: u32, k: u32) -> Dyadic {
        let e = lo.exp.max(hi.exp);
        let a = &lo.num << (e - lo.exp);
        let b = &hi.num << (e - hi.exp);
        let num = (&a << k) + (b - &a) * j;
        Dyadic::normalized(num, e + k)
    }

    fn mid(lo: &Dyadic, hi: &Dyadic) -> Dyadic {
        Dyadic::between(lo, hi, 1, 1)
    }

    fn normalized(mut num: BigInt, mut exp: u32) -> Dyadic {
        let tz = num.trailing_zeros().unwrap_or(0).min(u64::from(exp)) as u32;
        num >>= tz;
        exp -= tz;
        Dyadic { num, exp }
    }

    /// `(hi - lo) · cap2 < 1`.
    fn narrower_than(lo: &Dyadic, hi: &Dyadic, cap2: &BigInt) -> bool {
        let e = lo.exp.max(hi.exp);
        let w = (&hi.num << (e - hi.exp)) - (&lo.num << (e - lo.exp));
        w * cap2 < (BigInt::one() << e)
    }

    fn to_rat(&self) -> Rat {
        Rat::new(self.num.clone(), BigInt::one() << self.exp).expect("nonzero power of two")
    }
}

/// Sturm chain of a polynomial with positive constants scaled out.
struct Sturm(Vec<IntPoly>);

impl Sturm {
    fn new(f: &IntPoly) -> Sturm {
        let mut chain = vec![f.clone(), f.derivative().primitive()];
        loop {
            let n = chain.len();
            if chain[n - 1].degree() == 0 {
                break;
            }
            let g = &chain[n - 1];
            let mut r = chain[n - 2].pseudo_rem(g);
            if r.is_zero() {
                break;
            }
            // pseudo_rem multiplies by lc(g)^k; keep the sign of the true
            // remainder, then negate.
            let k = chain[n - 2].degree() + 1 - g.degree();
            let scale_negative = g.lead().is_negative() && k % 2 == 1;
            if !scale_negative {
                r.0.iter_mut().for_each(|c| *c = -&*c);
            }
            chain.push(r.primitive());
        }
        Sturm(chain)
    }

    fn variations(&self, x: &Dyadic) -> usize {
        let mut count = 0;
        let mut prev = Sign::NoSign;
        for p in &self.0 {
            let s = p.sign_dy(x);
            if s == Sign::NoSign {
                continue;
            }
            if prev != Sign::NoSign && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi)`; neither end may be a root.
    fn count(&self, lo: &Dyadic, hi: &Dyadic) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

/// Rational roots of height at most `height_cap` of the polynomial with
/// ascending coefficients `coeffs`, in increasing order.
///
/// Every returned value is checked by exact substitution. The zero
/// polynomial has no isolated roots and yields an empty list.
pub fn rational_roots(coeffs: &[Rat], height_cap: &BigInt) -> Vec<Rat> {
    let mut f = IntPoly::from_rats(coeffs);
    let mut found = BTreeSet::new();
    if f.is_zero() {
        return Vec::new();
    }
    let low = f.0.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        found.insert(Rat::zero());
        f = IntPoly(f.0.split_off(low));
    }
    if f.degree() == 0 || height_cap < &BigInt::one() {
        return found.into_iter().collect();
    }
    let sturm = Sturm::new(&f);
    let bound = f.cauchy_bound();
    // Once a bracket is narrower than 1/cap², it holds at most one rational
    // whose denominator is within the cap.
    let cap2 = height_cap * height_cap;
    let mut stack = vec![(Dyadic::int(-&bound), Dyadic::int(bound))];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if Dyadic::narrower_than(&lo, &hi, &cap2) {
            accept(&f, &lo, &hi, height_cap, &mut found);
            continue;
        }
        if n == 1 && f.sign_dy(&lo) != f.sign_dy(&hi) {
            refine_simple(&f, lo, hi, &cap2, height_cap, &mut found);
            continue;
        }
        let m = split_point(&f, &lo, &hi, height_cap, &mut found);
        stack.push((m.clone(), hi));
        stack.push((lo, m));
    }
    found.into_iter().collect()
}

/// Roots of a quartic given by ascending coefficients `[c0, c1, c2, c3, c4]`.
pub fn quartic_rational_roots(coeffs: &[Rat; 5], height_cap: &BigInt) -> Vec<Rat> {
    rational_roots(coeffs, height_cap)
}

fn accept(f: &IntPoly, lo: &Dyadic, hi: &Dyadic, cap: &BigInt, found: &mut BTreeSet<Rat>) {
    if let Some(r) = reconstruct_rational(&lo.to_rat(), &hi.to_rat(), cap) {
        if f.vanishes_at(&r) {
            found.insert(r);
        }
    }
}

fn record(x: &Dyadic, cap: &BigInt, found: &mut BTreeSet<Rat>) {
    let r = x.to_rat();
    if &r.height() <= cap {
        found.insert(r);
    }
}

/// Bisection on the sign of `f` for a bracket holding one odd-multiplicity root.
fn refine_simple(
    f: &IntPoly,
    mut lo: Dyadic,
    mut hi: Dyadic,
    cap2: &BigInt,
    cap: &BigInt,
    found: &mut BTreeSet<Rat>,
) {
    let s_lo = f.sign_dy(&lo);
    while !Dyadic::narrower_than(&lo, &hi, cap2) {
        let mid = Dyadic::mid(&lo, &hi);
        match f.sign_dy(&mid) {
            Sign::NoSign => {
                record(&mid, cap, found);
                return;
            }
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    accept(f, &lo, &hi, cap, found);
}

/// A point strictly inside `(lo, hi)` that is not a root of `f`. Roots hit
/// along the way are recorded.
fn split_point(
    f: &IntPoly,
    lo: &Dyadic,
    hi: &Dyadic,
    cap: &BigInt,
    found: &mut BTreeSet<Rat>,
) -> Dyadic {
    // f has at most deg f roots, so one of deg f + 1 candidates is clear.
    for j in [8u32, 7, 9, 6, 10, 5, 11, 4, 12, 3, 13] {
        let m = Dyadic::between(lo, hi, j, 4);
        if f.sign_dy(&m) == Sign::NoSign {
            record(&m, cap, found);
        } else {
            return m;
        }
    }
    unreachable!("polynomial of degree {} has more roots than expected", f.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn ints(c: &[i64]) -> Vec<Rat> {
        c.iter().map(|&x| Rat::from_int(x)).collect()
    }

    fn cap(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn simple_quartics() {
        assert_eq!(rational_roots(&ints(&[-1, 0, 0, 0, 1]), &cap(1)), ints(&[-1, 1]));
        assert!(rational_roots(&ints(&[-2, 0, 0, 0, 1]), &cap(1_000_000)).is_empty());
        assert!(rational_roots(&ints(&[0, 0, 0, 0, 0]), &cap(10)).is_empty());
        assert_eq!(rational_roots(&ints(&[0, 0, 1]), &cap(10)), ints(&[0]));
    }

    #[test]
    fn repeated_and_clustered_roots() {
        // (2v - 1)^2 (3v + 2)(v - 5)
        let c = ints(&[-10, 27, 15, -64, 12]);
        assert_eq!(rational_roots(&c, &cap(10)), vec![r("-2/3"), r("1/2"), r("5")]);
        // (1000v - 999)(1000v - 1001) with its roots close together
        let c = ints(&[999_999, -2_000_000, 1_000_000]);
        assert_eq!(rational_roots(&c, &cap(1001)), vec![r("999/1000"), r("1001/1000")]);
        // caps below the root heights hide them
        assert_eq!(rational_roots(&c, &cap(1000)), vec![r("999/1000")]);
        assert!(rational_roots(&c, &cap(999)).is_empty());
    }

    #[test]
    fn rational_coefficients_are_cleared() {
        // v^2 - 1/4
        let c = vec![r("-1/4"), Rat::zero(), Rat::one()];
        assert_eq!(rational_roots(&c, &cap(2)), vec![r("-1/2"), r("1/2")]);
    }

    #[test]
    fn roots_landing_on_split_points() {
        // roots exactly at 0-adjacent dyadic midpoints of the initial bracket
        let c = ints(&[0, -1, 0, 1]);
        assert_eq!(rational_roots(&c, &cap(5)), ints(&[-1, 0, 1]));
    }

    fn poly_from_roots(roots: &[(i64, i64)], extra: &[i64]) -> Vec<Rat> {
        let mut p = vec![Rat::one()];
        let mut mul = |lin: [Rat; 2]| {
            let mut out = vec![Rat::zero(); p.len() + 1];
            for (i, c) in p.iter().enumerate() {
                out[i] += &(c * &lin[0]);
                out[i + 1] += &(c * &lin[1]);
            }
            p = out;
        };
        for &(n, d) in roots {
            mul([Rat::from_int(-n), Rat::from_int(d)]);
        }
        if !extra.is_empty() {
            // multiply by an irreducible quadratic v^2 - k for nonsquare k
            let k = extra[0];
            let q = p.clone();
            let mut out = vec![Rat::zero(); q.len() + 2];
            for (i, c) in q.iter().enumerate() {
                out[i] -= &(c * k);
                out[i + 2] += c;
            }
            p = out;
        }
        p
    }

    proptest! {
        #[test]
        fn planted_roots_are_found(
            roots in prop::collection::vec((-60i64..60, 1i64..60), 1..4),
            k in prop::sample::select(vec![2i64, 3, 5, 7, 11, 13]),
            with_quad in any::<bool>(),
        ) {
            let extra: Vec<i64> = if with_quad && roots.len() <= 2 { vec![k] } else { vec![] };
            let c = poly_from_roots(&roots, &extra);
            let got = rational_roots(&c, &cap(60));
            let mut want: Vec<Rat> = roots.iter().map(|&(n, d)| Rat::frac(n, d)).collect();
            want.sort();
            want.dedup();
            prop_assert_eq!(got, want);
        }
    }
}
