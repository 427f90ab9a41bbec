//! The three parametric families of special triples, tuple verification and
//! the "special" predicate.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::exactnum::Rat;
use crate::poly::{eval_r4, eval_r5, eval_s, TripleVals, UVPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    F1,
    F2,
    F3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::F1, Family::F2, Family::F3];

    pub fn index(self) -> u8 {
        match self {
            Family::F1 => 1,
            Family::F2 => 2,
            Family::F3 => 3,
        }
    }

    pub fn from_index(i: u8) -> Option<Family> {
        match i {
            1 => Some(Family::F1),
            2 => Some(Family::F2),
            3 => Some(Family::F3),
            _ => None,
        }
    }

    /// The two families reached from this one through `W1` and `W2`.
    pub fn transport_targets(self) -> (Family, Family) {
        match self {
            Family::F1 => (Family::F2, Family::F3),
            Family::F2 => (Family::F1, Family::F3),
            Family::F3 => (Family::F1, Family::F2),
        }
    }

    pub fn values(self, uv: &UVPair) -> Result<[Rat; 3], Error> {
        match self {
            Family::F1 => f1_values(uv),
            Family::F2 => f2_values(uv),
            Family::F3 => f3_values(uv),
        }
    }

    pub fn triple(self, uv: &UVPair) -> Result<Triple, Error> {
        let vals = self.values(uv)?;
        let mut t = Triple::new(vals)?;
        t.family_tag = Some(FamilyTag {
            family: self,
            uv: uv.clone(),
        });
        Ok(t)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.index())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyTag {
    pub family: Family,
    pub uv: UVPair,
}

/// A verified ordered Diophantine triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub elems: [Rat; 3],
    /// Positive roots of `e0·e1 + 1`, `e0·e2 + 1`, `e1·e2 + 1`.
    pub witnesses: [Rat; 3],
    /// Positive root of `e² + 1` per element, when it is a square.
    pub strong_roots: [Option<Rat>; 3],
    pub family_tag: Option<FamilyTag>,
}

impl Triple {
    pub fn new(elems: [Rat; 3]) -> Result<Triple, Error> {
        if !TripleVals::from_array(elems.clone()).is_valid() {
            return Err(Error::DegenerateTriple);
        }
        let mut witnesses: [Rat; 3] = Default::default();
        for (k, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            witnesses[k] = (&elems[i] * &elems[j] + 1)
                .sqrt_exact()
                .ok_or(Error::NotDiophantine(i, j))?;
        }
        let strong_roots = [0, 1, 2].map(|i| (elems[i].square() + 1).sqrt_exact());
        Ok(Triple {
            elems,
            witnesses,
            strong_roots,
            family_tag: None,
        })
    }

    pub fn vals(&self) -> TripleVals {
        TripleVals::from_array(self.elems.clone())
    }

    pub fn strong_flags(&self) -> [bool; 3] {
        [0, 1, 2].map(|i| self.strong_roots[i].is_some())
    }

    pub fn s_value(&self) -> Rat {
        eval_s(&self.vals())
    }

    pub fn negated(&self) -> Triple {
        Triple {
            elems: self.elems.clone().map(|x| -x),
            witnesses: self.witnesses.clone(),
            strong_roots: self.strong_roots.clone(),
            family_tag: None,
        }
    }

    /// Residues of the three regularity patterns used for triples with a
    /// strong pair in front.
    pub fn regularity_residues(&self) -> Vec<(String, Rat)> {
        let [a, b, c] = &self.elems;
        alloc::vec![
            (String::from("r4(a,a,b,c)"), eval_r4(a, a, b, c)),
            (String::from("r4(a,b,b,c)"), eval_r4(a, b, b, c)),
            (String::from("r5(a,a,b,b,c)"), eval_r5(a, a, b, b, c)),
        ]
    }

    pub fn certificate(&self) -> Certificate {
        let mut cert = verify_tuple(&self.elems).expect("triple invariants hold");
        cert.regularity_residues = self.regularity_residues();
        cert
    }
}

/// Verification record for a tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub tuple: Vec<Rat>,
    /// `(i, j, w)` with `w² = tuple[i]·tuple[j] + 1`, `w ≥ 0`, for all `i < j`.
    pub pair_witnesses: Vec<(usize, usize, Rat)>,
    pub strong_roots: Vec<Option<Rat>>,
    /// `S(a, b, c)` for triples.
    pub s_value: Option<Rat>,
    pub regularity_residues: Vec<(String, Rat)>,
}

impl Certificate {
    /// Re-checks every recorded witness from scratch.
    pub fn recheck(&self) -> bool {
        let n = self.tuple.len();
        if self.pair_witnesses.len() != n * (n - 1) / 2 {
            return false;
        }
        let pairs_ok = self.pair_witnesses.iter().all(|(i, j, w)| {
            i < j && *j < n && !w.is_negative() && w.square() == &self.tuple[*i] * &self.tuple[*j] + 1
        });
        let strong_ok = self.strong_roots.len() == n
            && self
                .strong_roots
                .iter()
                .zip(&self.tuple)
                .all(|(root, x)| match root {
                    Some(w) => !w.is_negative() && w.square() == x.square() + 1,
                    None => !(x.square() + 1).is_perfect_square(),
                });
        pairs_ok && strong_ok
    }
}

fn check_distinct_nonzero(elems: &[Rat]) -> Result<(), Error> {
    if elems.len() < 2 || elems.iter().any(Rat::is_zero) {
        return Err(Error::DegenerateInput);
    }
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if elems[i] == elems[j] {
                return Err(Error::DegenerateInput);
            }
        }
    }
    Ok(())
}

/// Checks every pairwise product plus one, stopping at the first failure.
pub fn verify_tuple(elems: &[Rat]) -> Result<Certificate, Error> {
    check_distinct_nonzero(elems)?;
    let mut pair_witnesses = Vec::new();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            let w = (&elems[i] * &elems[j] + 1)
                .sqrt_exact()
                .ok_or(Error::NotDiophantine(i, j))?;
            pair_witnesses.push((i, j, w));
        }
    }
    Ok(build_certificate(elems, pair_witnesses))
}

/// Every pair with its witness, or `None` where the product plus one is not
/// a square. Does not stop at the first failure.
pub fn verify_tuple_full(elems: &[Rat]) -> Result<Vec<(usize, usize, Option<Rat>)>, Error> {
    check_distinct_nonzero(elems)?;
    let mut out = Vec::new();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            out.push((i, j, (&elems[i] * &elems[j] + 1).sqrt_exact()));
        }
    }
    Ok(out)
}

fn build_certificate(elems: &[Rat], pair_witnesses: Vec<(usize, usize, Rat)>) -> Certificate {
    let strong_roots = elems.iter().map(|x| (x.square() + 1).sqrt_exact()).collect();
    let s_value = if elems.len() == 3 {
        Some(eval_s(&TripleVals::new(
            elems[0].clone(),
            elems[1].clone(),
            elems[2].clone(),
        )))
    } else {
        None
    };
    Certificate {
        tuple: elems.to_vec(),
        pair_witnesses,
        strong_roots,
        s_value,
        regularity_residues: Vec::new(),
    }
}

/// First two elements strong and `S(a, b, c) = 0`.
pub fn is_special(t: &Triple) -> bool {
    t.strong_roots[0].is_some() && t.strong_roots[1].is_some() && t.s_value().is_zero()
}

fn nonzero(x: Rat, family: Family, factor: &'static str) -> Result<Rat, Error> {
    if x.is_zero() {
        Err(Error::UndefinedElement { family, factor })
    } else {
        Ok(x)
    }
}

fn strong_coordinate(
    x: &Rat,
    family: Family,
    name: &'static str,
    minus: &'static str,
    plus: &'static str,
) -> Result<Rat, Error> {
    nonzero(x.clone(), family, name)?;
    let m = nonzero(x - 1, family, minus)?;
    let p = nonzero(x + 1, family, plus)?;
    Ok(x * 2 / (m * p))
}

/// `[2u/(u²-1), 2v/(v²-1), 2(u²-1)(v²-1)/(uv-v-u-1)²]`.
pub fn f1_values(uv: &UVPair) -> Result<[Rat; 3], Error> {
    let fam = Family::F1;
    let (u, v) = (&uv.u, &uv.v);
    let a = strong_coordinate(u, fam, "u", "u-1", "u+1")?;
    let b = strong_coordinate(v, fam, "v", "v-1", "v+1")?;
    let den = nonzero(u * v - v - u - 1, fam, "uv-v-u-1")?.square();
    let c = (v.square() - 1) * (u.square() - 1) * 2 / den;
    Ok([a, b, c])
}

/// Shared second element of the second and third families.
fn f23_middle(uv: &UVPair, fam: Family) -> Result<(Rat, Rat, Rat), Error> {
    let (u, v) = (&uv.u, &uv.v);
    let w = u * v;
    let d1 = nonzero(&w + v + 1 - u, fam, "uv+v+1-u")?;
    let d2 = nonzero(&w - v + u + 1, fam, "uv-v+u+1")?;
    let mid = -((u - v) * (&w + 1) * 2) / (&d1 * &d2);
    Ok((mid, d1, d2))
}

pub fn f2_values(uv: &UVPair) -> Result<[Rat; 3], Error> {
    let fam = Family::F2;
    let (u, v) = (&uv.u, &uv.v);
    let a = strong_coordinate(u, fam, "u", "u-1", "u+1")?;
    let (b, d1, d2) = f23_middle(uv, fam)?;
    let u3 = u.pow(3);
    let num = &d2 * (&u3 * v - &u3 - v - 1) * 2;
    let c = -(num / ((u.square() - 1) * d1.square()));
    Ok([a, b, c])
}

pub fn f3_values(uv: &UVPair) -> Result<[Rat; 3], Error> {
    let fam = Family::F3;
    let (u, v) = (&uv.u, &uv.v);
    let a = -strong_coordinate(v, fam, "v", "v-1", "v+1")?;
    let (b, d1, d2) = f23_middle(uv, fam)?;
    let v3 = v.pow(3);
    let num = &d1 * (&v3 * u - &v3 - u - 1) * 2;
    let c = num / (d2.square() * (v.square() - 1));
    Ok([a, b, c])
}

pub fn f1(uv: &UVPair) -> Result<Triple, Error> {
    Family::F1.triple(uv)
}

pub fn f2(uv: &UVPair) -> Result<Triple, Error> {
    Family::F2.triple(uv)
}

pub fn f3(uv: &UVPair) -> Result<Triple, Error> {
    Family::F3.triple(uv)
}

/// Equality of `x` and `y` as multisets.
pub fn same_multiset(x: &[Rat], y: &[Rat]) -> bool {
    let mut a = x.to_vec();
    let mut b = y.to_vec();
    a.sort();
    b.sort();
    a == b
}

/// Equality as multisets after possibly negating every element of `x`.
/// Returns `Some(false)` for a direct match, `Some(true)` when the negation
/// matches, `None` otherwise.
pub fn match_up_to_sign(x: &[Rat], y: &[Rat]) -> Option<bool> {
    if same_multiset(x, y) {
        return Some(false);
    }
    let neg: Vec<Rat> = x.iter().map(|e| -e).collect();
    if same_multiset(&neg, y) {
        Some(true)
    } else {
        None
    }
}
