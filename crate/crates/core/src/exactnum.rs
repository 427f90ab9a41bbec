//! Exact rational scalars.
//!
//! [`Rat`] is always stored in canonical form: the denominator is positive and
//! coprime to the numerator. Equality and hashing are therefore structural.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: BigInt,
    den: BigInt,
}

impl Rat {
    /// Builds `num/den` in lowest terms. Fails on a zero denominator.
    pub fn new(num: BigInt, den: BigInt) -> Result<Rat, Error> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    /// Small-integer convenience constructor. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Rat {
        assert!(den != 0, "zero denominator");
        Self::reduce(BigInt::from(num), BigInt::from(den))
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Rat {
        Rat {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Rat {
        Rat::from_int(0)
    }

    pub fn one() -> Rat {
        Rat::from_int(1)
    }

    fn reduce(mut num: BigInt, mut den: BigInt) -> Rat {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            return Rat {
                num,
                den: BigInt::one(),
            };
        }
        let g = num.gcd(&den);
        if !g.is_one() {
            num /= &g;
            den /= &g;
        }
        Rat { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn abs(&self) -> Rat {
        Rat {
            num: self.num.abs(),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<Rat, Error> {
        Rat::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Rat) -> Result<Rat, Error> {
        if rhs.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn pow(&self, exp: u32) -> Rat {
        Rat {
            num: num_traits::pow(self.num.clone(), exp as usize),
            den: num_traits::pow(self.den.clone(), exp as usize),
        }
    }

    pub fn square(&self) -> Rat {
        self * self
    }

    /// Largest integer not exceeding `self`.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    pub fn is_perfect_square(&self) -> bool {
        self.sqrt_exact().is_some()
    }

    /// The nonnegative rational square root, when one exists.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let n = isqrt_exact(&self.num)?;
        let d = isqrt_exact(&self.den)?;
        // n and d are coprime because num and den are.
        Some(Rat { num: n, den: d })
    }

    /// Naive multiplicative height `max(|num|, den)`.
    pub fn height(&self) -> BigInt {
        let a = self.num.abs();
        if a > self.den {
            a
        } else {
            self.den.clone()
        }
    }

    pub fn to_f64_lossy(&self) -> f64 {
        let n = self.num.to_f64().unwrap_or(f64::NAN);
        let d = self.den.to_f64().unwrap_or(f64::NAN);
        n / d
    }
}

/// Integer square root when `n` is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub fn is_perfect_square(r: &Rat) -> bool {
    r.is_perfect_square()
}

pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    r.sqrt_exact()
}

pub fn height(r: &Rat) -> BigInt {
    r.height()
}

/// Minimal-height rational in the closed interval `[lo, hi]`, provided its
/// height does not exceed `height_cap`.
///
/// The search is a Stern–Brocot descent run in continued-fraction strides,
/// so long runs of identical turns cost one step. The simplest rational of a
/// positive interval has numerator and denominator simultaneously minimal,
/// which makes it the unique minimiser of `max(|num|, den)` as well.
pub fn reconstruct_rational(lo: &Rat, hi: &Rat, height_cap: &BigInt) -> Option<Rat> {
    if lo > hi {
        return None;
    }
    let best = if !lo.is_positive() && !hi.is_negative() {
        Rat::zero()
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        simplest_positive(lo, hi)
    };
    if &best.height() <= height_cap {
        Some(best)
    } else {
        None
    }
}

/// Simplest rational in `[lo, hi]` for `0 < lo <= hi`.
fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    let mut terms: Vec<BigInt> = Vec::new();
    // lo = a/b, hi = c/d, kept as plain integer pairs between steps
    let (mut a, mut b) = (lo.num.clone(), lo.den.clone());
    let (mut c, mut d) = (hi.num.clone(), hi.den.clone());
    loop {
        let (fl, rem) = a.div_rem(&b);
        if rem.is_zero() {
            terms.push(fl);
            break;
        }
        let next: BigInt = &fl + 1;
        if &next * &d <= c {
            terms.push(next);
            break;
        }
        // Both ends lie in (fl, fl + 1): recurse on the reciprocals of the
        // fractional parts, which swaps the ends.
        let (na, nb) = (d.clone(), &c - &fl * &d);
        let (nc, nd) = (b, rem);
        terms.push(fl);
        a = na;
        b = nb;
        c = nc;
        d = nd;
    }
    // Fold the continued fraction [t0; t1, ..., tk] back into p/q.
    let mut it = terms.into_iter().rev();
    let last = it.next().expect("at least one term");
    let (mut p, mut q) = (last, BigInt::one());
    for t in it {
        let np = &t * &p + &q;
        q = p;
        p = np;
    }
    Rat::reduce(p, q)
}

impl Default for Rat {
    fn default() -> Self {
        Rat::zero()
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

impl PartialOrd for Rat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rat {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `"n"` or `"p/q"` with optional leading `-` on the numerator.
    /// Decimal notation is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(String::from(s));
        let parse_int = |t: &str| -> Result<BigInt, Error> {
            let digits = t.strip_prefix('-').unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(t).map_err(|_| bad())
        };
        match s.split_once('/') {
            None => Ok(Rat::from_int(parse_int(s)?)),
            Some((n, d)) => {
                if d.starts_with('-') {
                    return Err(bad());
                }
                let den = parse_int(d)?;
                Rat::new(parse_int(n)?, den).map_err(|_| bad())
            }
        }
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add<&Rat> for &Rat {
    type Output = Rat;
    fn add(self, rhs: &Rat) -> Rat {
        if self.den == rhs.den {
            return Rat::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Rat::reduce(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&Rat> for &Rat {
    type Output = Rat;
    fn sub(self, rhs: &Rat) -> Rat {
        if self.den == rhs.den {
            return Rat::reduce(&self.num - &rhs.num, self.den.clone());
        }
        Rat::reduce(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Mul<&Rat> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: &Rat) -> Rat {
        if self.is_zero() || rhs.is_zero() {
            return Rat::zero();
        }
        // Cross-cancel first to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        Rat {
            num: (&self.num / &g1) * (&rhs.num / &g2),
            den: (&self.den / &g2) * (&rhs.den / &g1),
        }
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    /// Panics on division by zero, like integer division.
    fn div(self, rhs: &Rat) -> Rat {
        self.checked_div(rhs).expect("division by zero rational")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, rhs: &Rat) -> Rat {
                (&self).$m(rhs)
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: Rat) -> Rat {
                self.$m(&rhs)
            }
        }
        impl $tr<i64> for &Rat {
            type Output = Rat;
            fn $m(self, rhs: i64) -> Rat {
                self.$m(&Rat::from_int(rhs))
            }
        }
        impl $tr<i64> for Rat {
            type Output = Rat;
            fn $m(self, rhs: i64) -> Rat {
                (&self).$m(&Rat::from_int(rhs))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Rat> for Rat {
    fn add_assign(&mut self, rhs: &Rat) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Rat> for Rat {
    fn sub_assign(&mut self, rhs: &Rat) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Rat> for Rat {
    fn mul_assign(&mut self, rhs: &Rat) {
        *self = &*self * rhs;
    }
}

impl core::iter::Sum for Rat {
    fn sum<I: Iterator<Item = Rat>>(iter: I) -> Rat {
        iter.fold(Rat::zero(), |acc, x| acc + x)
    }
}

impl<'a> core::iter::Product<&'a Rat> for Rat {
    fn product<I: Iterator<Item = &'a Rat>>(iter: I) -> Rat {
        iter.fold(Rat::one(), |acc, x| acc * x)
    }
}
