//! Height-bounded search for rational points on C and its mirror curve, and
//! orbit closure under `(u, v) ↦ (v, u)` and `(u, v) ↦ (-u, 1/v)`.
//!
//! The second map exchanges `p = 0` with `s1 = 0`, so both quartics are
//! searched and every point carries the component it lies on.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::Error;
use crate::exactnum::Rat;
use crate::poly::{automorphisms, eval_p, eval_s1, v_coefficients, UVPair, P_TERMS, S1_TERMS};

pub use crate::roots::quartic_rational_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    /// `p(u, v) = 0`.
    C,
    /// `s1(u, v) = 0`.
    Mirror,
}

impl Component {
    /// The component holding `uv`, preferring C for points on both.
    pub fn of(uv: &UVPair) -> Option<Component> {
        if eval_p(uv).is_zero() {
            Some(Component::C)
        } else if eval_s1(uv).is_zero() {
            Some(Component::Mirror)
        } else {
            None
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Component::C => "C",
            Component::Mirror => "mirror",
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Searched,
    Orbit,
    Seeded,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Searched => "searched",
            Provenance::Orbit => "orbit",
            Provenance::Seeded => "seeded",
        }
    }

    pub fn parse(s: &str) -> Option<Provenance> {
        match s {
            "searched" => Some(Provenance::Searched),
            "orbit" => Some(Provenance::Orbit),
            "seeded" => Some(Provenance::Seeded),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A verified rational point on C or its mirror.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CPoint {
    pub uv: UVPair,
    /// `max(height(u), height(v))`.
    pub height: BigInt,
    pub provenance: Provenance,
    pub component: Component,
    /// Shared by points of one automorphism orbit within a result set.
    pub orbit: Option<usize>,
}

impl CPoint {
    pub fn new(uv: UVPair, provenance: Provenance) -> Result<CPoint, Error> {
        let component = Component::of(&uv).ok_or(Error::NotOnCurve)?;
        let height = uv.u.height().max(uv.v.height());
        Ok(CPoint {
            uv,
            height,
            provenance,
            component,
            orbit: None,
        })
    }

    /// Re-checks the curve equation for the recorded component.
    pub fn is_valid(&self) -> bool {
        let on = match self.component {
            Component::C => eval_p(&self.uv).is_zero(),
            Component::Mirror => eval_s1(&self.uv).is_zero(),
        };
        on && self.height == self.uv.u.height().max(self.uv.v.height())
    }

    fn order_key(&self) -> (&BigInt, &Rat, &Rat) {
        (&self.height, &self.uv.u, &self.uv.v)
    }
}

/// Ordering by `(height, u, v)`.
pub fn cmp_points(a: &CPoint, b: &CPoint) -> Ordering {
    a.order_key().cmp(&b.order_key())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_u_height: u64,
    /// Height cap for reconstructed `v` values.
    pub max_v_height_cap: u64,
    pub workers: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_u_height: 200,
            max_v_height_cap: 1_000_000,
            workers: 1,
        }
    }
}

impl SearchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.max_u_height < 1 {
            return Err(Error::InvalidConfig("max_u_height must be at least 1"));
        }
        if self.max_v_height_cap < self.max_u_height {
            return Err(Error::InvalidConfig("max_v_height_cap must be at least max_u_height"));
        }
        if self.workers < 1 {
            return Err(Error::InvalidConfig("workers must be at least 1"));
        }
        Ok(())
    }
}

/// Reduced fractions of height at most `max_height`, other than `0` and
/// `±1`, sorted by height and then by value.
pub fn u_candidates(max_height: u64) -> Vec<Rat> {
    let h = max_height as i64;
    let mut out: Vec<(i64, Rat)> = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) != 1 || (q == 1 && p.abs() <= 1) {
                continue;
            }
            out.push((p.abs().max(q), Rat::frac(p, q)));
        }
    }
    out.sort();
    out.into_iter().map(|(_, u)| u).collect()
}

/// Every point `(u, v)` on either component with `height(v) ≤ v_cap`.
pub fn points_for_u(u: &Rat, v_cap: &BigInt) -> Vec<CPoint> {
    let mut out = Vec::new();
    for terms in [P_TERMS, S1_TERMS] {
        for v in quartic_rational_roots(&v_coefficients(terms, u), v_cap) {
            let pt = CPoint::new(UVPair::new(u.clone(), v), Provenance::Searched)
                .expect("roots are verified by substitution");
            out.push(pt);
        }
    }
    out
}

/// Sorts by `(height, u, v)`, removes repeats of the same `(u, v)` and
/// assigns orbit ids.
pub fn finalize_points(mut pts: Vec<CPoint>) -> Vec<CPoint> {
    pts.sort_by(cmp_points);
    pts.dedup_by(|a, b| a.uv == b.uv);
    assign_orbit_ids(&mut pts);
    pts
}

/// Sequential search over all `u` candidates.
pub fn search_c(cfg: &SearchConfig) -> Result<Vec<CPoint>, Error> {
    cfg.validate()?;
    let cap = BigInt::from(cfg.max_v_height_cap);
    let pts = u_candidates(cfg.max_u_height)
        .iter()
        .flat_map(|u| points_for_u(u, &cap))
        .collect();
    Ok(finalize_points(pts))
}

/// Numbers orbits in order of their first member under `(height, u, v)`.
/// Expects `pts` sorted and free of repeats.
pub fn assign_orbit_ids(pts: &mut [CPoint]) {
    let index: BTreeMap<UVPair, usize> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.uv.clone(), i))
        .collect();
    pts.iter_mut().for_each(|p| p.orbit = None);
    let mut next = 0;
    for i in 0..pts.len() {
        if pts[i].orbit.is_some() {
            continue;
        }
        for q in automorphisms(&pts[i].uv) {
            if let Some(&j) = index.get(&q) {
                pts[j].orbit = Some(next);
            }
        }
        next += 1;
    }
}

/// Adds every image under the automorphism group, verified on the union of
/// both components. Input points keep their provenance.
pub fn orbit_closure(pts: &[CPoint]) -> Vec<CPoint> {
    let mut seen: BTreeSet<UVPair> = BTreeSet::new();
    let mut out = Vec::new();
    for p in pts {
        if seen.insert(p.uv.clone()) {
            out.push(p.clone());
        }
    }
    for p in pts {
        for q in automorphisms(&p.uv) {
            if seen.contains(&q) {
                continue;
            }
            if let Ok(cp) = CPoint::new(q.clone(), Provenance::Orbit) {
                seen.insert(q);
                out.push(cp);
            }
        }
    }
    finalize_points(out)
}
