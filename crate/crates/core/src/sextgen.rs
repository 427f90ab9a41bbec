//! Extension of special triples to sextuples, the coordinate change that
//! moves a special triple to another one with an isomorphic curve, and the
//! checks tying regularity polynomials to group relations.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use crate::ecq::{induced_curve, CurveQ, InducedCurve, PointQ};
use crate::error::Error;
use crate::exactnum::Rat;
use crate::families::{
    is_special, match_up_to_sign, verify_tuple, Certificate, Family, Triple,
};
use crate::poly::{eval_r4, eval_r5, eval_s, UVPair};

/// A verified sextuple `{a, b, c, d4, d5, d6}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sextuple {
    pub elems: [Rat; 6],
    pub base: Triple,
    pub n: i64,
    /// `[2n+1]P`, `[2n+1]P + S`, `[2n+1]P - S`.
    pub d_points: [PointQ; 3],
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DropReason {
    Zero,
    /// Equal to base element `i`.
    RepeatsBase(usize),
    /// Equal to an earlier candidate (index among the three candidates).
    RepeatsCandidate(usize),
    /// Product with tuple element `i` plus one is not a square.
    NotDiophantineWith(usize),
}

impl core::fmt::Display for DropReason {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DropReason::Zero => write!(f, "candidate is zero"),
            DropReason::RepeatsBase(i) => write!(f, "equals base element {i}"),
            DropReason::RepeatsCandidate(i) => write!(f, "equals candidate d{}", i + 4),
            DropReason::NotDiophantineWith(i) => {
                write!(f, "product with element {i} plus 1 is not a square")
            }
        }
    }
}

/// What remains when some of `d4, d5, d6` are unusable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialResult {
    pub base: Triple,
    pub n: i64,
    pub candidates: [Rat; 3],
    /// Base elements followed by the kept candidates.
    pub tuple: Vec<Rat>,
    /// `(candidate index 0..3, reason)`.
    pub dropped: Vec<(usize, DropReason)>,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendOutcome {
    Sextuple(Sextuple),
    Partial(PartialResult),
}

impl ExtendOutcome {
    pub fn n(&self) -> i64 {
        match self {
            ExtendOutcome::Sextuple(s) => s.n,
            ExtendOutcome::Partial(p) => p.n,
        }
    }

    pub fn tuple(&self) -> Vec<Rat> {
        match self {
            ExtendOutcome::Sextuple(s) => s.elems.to_vec(),
            ExtendOutcome::Partial(p) => p.tuple.clone(),
        }
    }

    pub fn certificate(&self) -> &Certificate {
        match self {
            ExtendOutcome::Sextuple(s) => &s.certificate,
            ExtendOutcome::Partial(p) => &p.certificate,
        }
    }
}

/// `x(Q)/abc`, `x(Q+S)/abc`, `x(Q-S)/abc` with `Q = [2n+1]P`.
pub fn extension_points(ic: &InducedCurve, n: i64) -> Result<[PointQ; 3], Error> {
    let pts = ic.distinguished_points();
    let q = ic.curve.smul(2 * n + 1, &pts.p);
    let qs = ic.curve.add(&q, &pts.s);
    let qms = ic.curve.sub(&q, &pts.s);
    let out = [q, qs, qms];
    if out.iter().any(PointQ::is_infinity) {
        return Err(Error::InfinityEncountered);
    }
    Ok(out)
}

pub fn extend(t: &Triple, n: i64) -> Result<ExtendOutcome, Error> {
    if !is_special(t) {
        return Err(Error::NotSpecial);
    }
    let ic = induced_curve(&t.vals())?;
    let d_points = extension_points(&ic, n)?;
    let candidates = d_points
        .clone()
        .map(|p| ic.d_from_point(&p).expect("affine"));

    let mut tuple: Vec<Rat> = t.elems.to_vec();
    let mut dropped = Vec::new();
    for (k, d) in candidates.iter().enumerate() {
        let reason = if d.is_zero() {
            Some(DropReason::Zero)
        } else if let Some(i) = t.elems.iter().position(|e| e == d) {
            Some(DropReason::RepeatsBase(i))
        } else if let Some(j) = (0..k).find(|&j| &candidates[j] == d) {
            Some(DropReason::RepeatsCandidate(j))
        } else {
            tuple
                .iter()
                .position(|e| !(e * d + 1).is_perfect_square())
                .map(DropReason::NotDiophantineWith)
        };
        match reason {
            Some(r) => dropped.push((k, r)),
            None => tuple.push(d.clone()),
        }
    }
    let certificate = verify_tuple(&tuple)?;
    if dropped.is_empty() {
        let elems: [Rat; 6] = tuple.try_into().expect("six elements");
        Ok(ExtendOutcome::Sextuple(Sextuple {
            elems,
            base: t.clone(),
            n,
            d_points,
            certificate,
        }))
    } else {
        Ok(ExtendOutcome::Partial(PartialResult {
            base: t.clone(),
            n,
            candidates,
            tuple,
            dropped,
            certificate,
        }))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendReport {
    pub outcomes: Vec<ExtendOutcome>,
    /// `(earlier n, later n)` pairs that produced the same element multiset;
    /// only the earlier one is kept in `outcomes`.
    pub collisions: Vec<(i64, i64)>,
}

/// Runs [`extend`] over a range of `n`, dropping repeated tuples.
pub fn extend_range(t: &Triple, ns: RangeInclusive<i64>) -> Result<ExtendReport, Error> {
    let outs = ns.map(|n| extend(t, n)).collect::<Result<Vec<_>, _>>()?;
    Ok(dedup_outcomes(outs))
}

/// Keeps the first outcome for each element multiset, in input order.
pub fn dedup_outcomes(outs: Vec<ExtendOutcome>) -> ExtendReport {
    let mut seen: BTreeMap<Vec<Rat>, i64> = BTreeMap::new();
    let mut outcomes = Vec::new();
    let mut collisions = Vec::new();
    for out in outs {
        let mut key = out.tuple();
        key.sort();
        if let Some(&first) = seen.get(&key) {
            collisions.push((first, out.n()));
            continue;
        }
        seen.insert(key, out.n());
        outcomes.push(out);
    }
    ExtendReport {
        outcomes,
        collisions,
    }
}

/// Which of the two global-sign variants of an image triple was kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignChoice {
    /// Elements as solved, `a' > 0`.
    AsComputed,
    Negated,
}

/// How the sign variant was picked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignRule {
    /// Element of largest absolute value made positive.
    LargestPositive,
    /// Matched against an expected family triple.
    MatchedFamily,
}

/// Result of moving a special triple along `φ_W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoData {
    pub w: PointQ,
    /// `k² = 1 - x(w)`, sign of `k` equal to the sign of `y(w)`.
    pub k: Rat,
    pub source: InducedCurve,
    pub target: InducedCurve,
    pub image_triple: Triple,
    pub sign_choice: SignChoice,
    pub sign_rule: SignRule,
    /// Image triple before any sign change.
    computed: [Rat; 3],
}

fn negate3(t: &[Rat; 3]) -> [Rat; 3] {
    t.clone().map(|x| -x)
}

fn largest_positive(t: &[Rat; 3]) -> SignChoice {
    let big = t
        .iter()
        .max_by(|x, y| x.abs().cmp(&y.abs()))
        .expect("three elements");
    if big.is_negative() {
        SignChoice::Negated
    } else {
        SignChoice::AsComputed
    }
}

impl IsoData {
    /// Re-picks the sign so the image matches `expected` as a multiset, if
    /// either variant does. Returns whether a match was found.
    pub fn canonicalize_against(&mut self, expected: &[Rat]) -> bool {
        let Some(neg) = match_up_to_sign(&self.computed, expected) else {
            return false;
        };
        let choice = if neg {
            SignChoice::Negated
        } else {
            SignChoice::AsComputed
        };
        self.apply(choice, SignRule::MatchedFamily);
        true
    }

    fn apply(&mut self, choice: SignChoice, rule: SignRule) {
        let elems = match choice {
            SignChoice::AsComputed => self.computed.clone(),
            SignChoice::Negated => negate3(&self.computed),
        };
        let t = Triple::new(elems).expect("negation keeps the Diophantine property");
        self.target = induced_curve(&t.vals()).expect("verified triple");
        self.image_triple = t;
        self.sign_choice = choice;
        self.sign_rule = rule;
    }

    /// `(x, y) ↦ (x/k² + 1 - 1/k², y/k³)`.
    pub fn map_point(&self, p: &PointQ) -> PointQ {
        iso_map(&self.k, p)
    }

    /// The source curve pushed through the coordinate change.
    pub fn transformed_source(&self) -> CurveQ {
        transform_curve(&self.source, &self.k)
    }
}

fn iso_map(k: &Rat, p: &PointQ) -> PointQ {
    match p {
        PointQ::Infinity => PointQ::Infinity,
        PointQ::Affine { x, y } => {
            let k2 = k.square();
            PointQ::affine(x / &k2 + 1 - k2.recip().expect("k nonzero"), y / (&k2 * k))
        }
    }
}

/// Roots move to `(e + 1)/k² - 1` for each root `-e` of the source cubic.
fn transform_curve(source: &InducedCurve, k: &Rat) -> CurveQ {
    let (a, b, c) = (&source.triple.a, &source.triple.b, &source.triple.c);
    let k2 = k.square();
    let shift = |e: Rat| (e + 1) / &k2 - 1;
    let (e1, e2, e3) = (shift(a * b), shift(a * c), shift(b * c));
    CurveQ::short(
        &e1 + &e2 + &e3,
        &e1 * &e2 + &e1 * &e3 + &e2 * &e3,
        &e1 * &e2 * &e3,
    )
    .expect("isomorphic image is nonsingular")
}

/// Transport along `φ_W`, with the sign picked by [`SignRule::LargestPositive`].
pub fn phi_w(ic: &InducedCurve, w: &PointQ) -> Result<IsoData, Error> {
    let e = &ic.curve;
    if !e.is_on_curve(w) {
        return Err(Error::NotOnCurve);
    }
    if e.smul(6, w).is_infinity() {
        return Err(Error::ExcludedPoint);
    }
    let (x, y) = (w.x().expect("affine"), w.y().expect("affine"));
    let k2 = Rat::one() - x;
    if k2.is_zero() {
        return Err(Error::NotSquare);
    }
    let mut k = k2.sqrt_exact().ok_or(Error::NotSquare)?;
    if y.is_negative() {
        k = -k;
    }
    let (a, b, c) = (&ic.triple.a, &ic.triple.b, &ic.triple.c);
    let big_x = |x0: Rat| &x0 / &k2 + 1 - k2.recip().expect("nonzero");
    let cp = -big_x(-(a * b));
    let bp = -big_x(-(a * c));
    let ap = -big_x(-(b * c));
    if cp.is_zero() || bp.is_zero() || ap.is_zero() || cp == bp || cp == ap || bp == ap {
        return Err(Error::SingularImage);
    }
    let a_new = (&cp * &bp / &ap).sqrt_exact().ok_or(Error::NotSquare)?;
    let b_new = &cp / &a_new;
    let c_new = &bp / &a_new;
    let computed = [a_new, b_new, c_new];
    let choice = largest_positive(&computed);
    let oriented = match choice {
        SignChoice::AsComputed => computed.clone(),
        SignChoice::Negated => negate3(&computed),
    };
    let image_triple = Triple::new(oriented)?;
    let target = induced_curve(&image_triple.vals())?;
    Ok(IsoData {
        w: w.clone(),
        k,
        source: ic.clone(),
        target,
        image_triple,
        sign_choice: choice,
        sign_rule: SignRule::LargestPositive,
        computed,
    })
}

/// `(A + T3, B + T2)`.
pub fn w1_w2(ic: &InducedCurve) -> Result<(PointQ, PointQ), Error> {
    let pts = ic.distinguished_points();
    let (a, b) = match (&pts.a, &pts.b) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::MissingStrongPair),
    };
    Ok((ic.curve.add(a, &pts.t3), ic.curve.add(b, &pts.t2)))
}

/// One regularity polynomial against its group relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    /// e.g. `"r5(a,a,b,b,c)"`.
    pub polynomial: &'static str,
    pub residue: Rat,
    /// e.g. `"A±B±S=O"`.
    pub relation: &'static str,
    /// First sign combination, in `+++, ++-, ..., ---` order, for which the
    /// relation holds; letters name the points.
    pub signs: Option<String>,
}

impl RelationCheck {
    pub fn polynomial_vanishes(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn relation_holds(&self) -> bool {
        self.signs.is_some()
    }

    pub fn agrees(&self) -> bool {
        self.polynomial_vanishes() == self.relation_holds()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityReport {
    pub checks: Vec<RelationCheck>,
}

impl RegularityReport {
    pub fn all_agree(&self) -> bool {
        self.checks.iter().all(RelationCheck::agrees)
    }

    pub fn get(&self, polynomial: &str) -> Option<&RelationCheck> {
        self.checks.iter().find(|c| c.polynomial == polynomial)
    }
}

const SIGNS: [[bool; 3]; 8] = [
    [false, false, false],
    [false, false, true],
    [false, true, false],
    [false, true, true],
    [true, false, false],
    [true, false, true],
    [true, true, false],
    [true, true, true],
];

/// Searches all eight `±X ± Y ± Z = O`.
fn sign_search(e: &CurveQ, pts: [(&PointQ, char); 3]) -> Option<String> {
    for neg in SIGNS {
        let mut acc = PointQ::Infinity;
        for (k, (p, _)) in pts.iter().enumerate() {
            let term = if neg[k] { e.neg(p) } else { (*p).clone() };
            acc = e.add(&acc, &term);
        }
        if acc.is_infinity() {
            let mut s = String::new();
            for (k, (_, name)) in pts.iter().enumerate() {
                s.push(if neg[k] { '-' } else { '+' });
                s.push(*name);
            }
            return Some(s);
        }
    }
    None
}

/// Evaluates `r4(a,a,b,c)`, `r4(a,b,b,c)` and `r5(a,a,b,b,c)` next to the
/// relations `±A±P±S = O`, `±B±P±S = O` and `±A±B±S = O`.
pub fn check_regularity_relations(ic: &InducedCurve) -> Result<RegularityReport, Error> {
    let pts = ic.distinguished_points();
    let (pa, pb) = match (&pts.a, &pts.b) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::MissingStrongPair),
    };
    let (a, b, c) = (&ic.triple.a, &ic.triple.b, &ic.triple.c);
    let e = &ic.curve;
    let checks = alloc::vec![
        RelationCheck {
            polynomial: "r4(a,a,b,c)",
            residue: eval_r4(a, a, b, c),
            relation: "A=±P±S",
            signs: sign_search(e, [(pa, 'A'), (&pts.p, 'P'), (&pts.s, 'S')]),
        },
        RelationCheck {
            polynomial: "r4(a,b,b,c)",
            residue: eval_r4(a, b, b, c),
            relation: "B=±P±S",
            signs: sign_search(e, [(pb, 'B'), (&pts.p, 'P'), (&pts.s, 'S')]),
        },
        RelationCheck {
            polynomial: "r5(a,a,b,b,c)",
            residue: eval_r5(a, a, b, b, c),
            relation: "A±B±S=O",
            signs: sign_search(e, [(pa, 'A'), (pb, 'B'), (&pts.s, 'S')]),
        },
    ];
    Ok(RegularityReport { checks })
}

/// One transport and its comparison with the expected family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub via: &'static str,
    pub iso: IsoData,
    pub expected_family: Family,
    pub expected: [Rat; 3],
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub uv: UVPair,
    pub source_family: Family,
    pub source: Triple,
    pub transports: [Transport; 2],
}

impl RoundtripReport {
    pub fn all_match(&self) -> bool {
        self.transports.iter().all(|t| t.matches)
    }
}

/// Transports the `source_family` triple at `uv` along `W1` and `W2` and
/// compares the images with the other two families at the same point.
pub fn family_roundtrip(uv: &UVPair, source_family: Family) -> Result<RoundtripReport, Error> {
    let source = source_family.triple(uv)?;
    let ic = induced_curve(&source.vals())?;
    let (w1, w2) = w1_w2(&ic)?;
    let (f_w1, f_w2) = source_family.transport_targets();
    let run = |via: &'static str, w: &PointQ, fam: Family| -> Result<Transport, Error> {
        let mut iso = phi_w(&ic, w)?;
        let expected = fam.values(uv)?;
        let matches = iso.canonicalize_against(&expected);
        Ok(Transport {
            via,
            iso,
            expected_family: fam,
            expected,
            matches,
        })
    };
    let t1 = run("W1", &w1, f_w1)?;
    let t2 = run("W2", &w2, f_w2)?;
    Ok(RoundtripReport {
        uv: uv.clone(),
        source_family,
        source,
        transports: [t1, t2],
    })
}

/// `S(a, b, c)` of an image triple and of its negation.
pub fn image_s_values(iso: &IsoData) -> (Rat, Rat) {
    let t = iso.image_triple.vals();
    let neg = iso.image_triple.negated().vals();
    (eval_s(&t), eval_s(&neg))
}

/// Short label for a sign search result, `"none"` when nothing holds.
pub fn relation_label(signs: &Option<String>) -> String {
    match signs {
        Some(s) => format!("{s}=O"),
        None => String::from("none"),
    }
}
