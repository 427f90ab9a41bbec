//! Elliptic curves over ℚ in long Weierstrass form
//! `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`, with the exact chord–tangent
//! group law, and the curve `y² = (x + ab)(x + ac)(x + bc)` induced by a
//! Diophantine triple.

use crate::error::Error;
use crate::exactnum::Rat;
use crate::poly::TripleVals;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveQ {
    a1: Rat,
    a2: Rat,
    a3: Rat,
    a4: Rat,
    a6: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointQ {
    Infinity,
    Affine { x: Rat, y: Rat },
}

impl PointQ {
    pub fn affine(x: Rat, y: Rat) -> PointQ {
        PointQ::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointQ::Infinity)
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rat> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { y, .. } => Some(y),
        }
    }
}

/// Order of a point, with the Mazur bound as the cutoff for "infinite".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionOrder {
    Finite(u32),
    Infinite,
}

pub const MAZUR_BOUND: u32 = 12;

impl CurveQ {
    pub fn new(a1: Rat, a2: Rat, a3: Rat, a4: Rat, a6: Rat) -> Result<CurveQ, Error> {
        let c = CurveQ { a1, a2, a3, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    /// `y² = x³ + a2·x² + a4·x + a6`.
    pub fn short(a2: Rat, a4: Rat, a6: Rat) -> Result<CurveQ, Error> {
        CurveQ::new(Rat::zero(), a2, Rat::zero(), a4, a6)
    }

    /// `E: y² + xy + y = x³ - 33x + 68`, birational to C.
    pub fn curve_e() -> CurveQ {
        CurveQ::new(
            Rat::one(),
            Rat::zero(),
            Rat::one(),
            Rat::from_int(-33),
            Rat::from_int(68),
        )
        .expect("E is nonsingular")
    }

    pub fn coefficients(&self) -> [&Rat; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn discriminant(&self) -> Rat {
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let b2 = a1.square() + a2 * 4;
        let b4 = a4 * 2 + a1 * a3;
        let b6 = a3.square() + a6 * 4;
        let b8 = a1.square() * a6 + a2 * a6 * 4 - a1 * a3 * a4 + a2 * a3.square() - a4.square();
        -(b2.square() * &b8) - b4.pow(3) * 8 - b6.square() * 27 + b2 * &b4 * &b6 * 9
    }

    pub fn is_on_curve(&self, p: &PointQ) -> bool {
        match p {
            PointQ::Infinity => true,
            PointQ::Affine { x, y } => {
                let lhs = y.square() + &self.a1 * x * y + &self.a3 * y;
                let rhs = x.pow(3) + &self.a2 * x.square() + &self.a4 * x + &self.a6;
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, p: &PointQ) -> PointQ {
        match p {
            PointQ::Infinity => PointQ::Infinity,
            PointQ::Affine { x, y } => PointQ::Affine {
                x: x.clone(),
                y: -y - &self.a1 * x - &self.a3,
            },
        }
    }

    pub fn add(&self, p: &PointQ, q: &PointQ) -> PointQ {
        let (x1, y1, x2, y2) = match (p, q) {
            (PointQ::Infinity, _) => return q.clone(),
            (_, PointQ::Infinity) => return p.clone(),
            (PointQ::Affine { x: x1, y: y1 }, PointQ::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let (a1, a2, a3, a4, a6) = (&self.a1, &self.a2, &self.a3, &self.a4, &self.a6);
        let (lambda, nu) = if x1 == x2 {
            if (y1 + y2 + a1 * x2 + a3).is_zero() {
                return PointQ::Infinity;
            }
            let den = y1 * 2 + a1 * x1 + a3;
            let lambda = (x1.square() * 3 + a2 * x1 * 2 + a4 - a1 * y1) / &den;
            let nu = (-x1.pow(3) + a4 * x1 + a6 * 2 - a3 * y1) / &den;
            (lambda, nu)
        } else {
            let dx = x2 - x1;
            let lambda = (y2 - y1) / &dx;
            let nu = (y1 * x2 - y2 * x1) / &dx;
            (lambda, nu)
        };
        let x3 = lambda.square() + a1 * &lambda - a2 - x1 - x2;
        let y3 = -((&lambda + a1) * &x3) - nu - a3;
        PointQ::Affine { x: x3, y: y3 }
    }

    pub fn sub(&self, p: &PointQ, q: &PointQ) -> PointQ {
        self.add(p, &self.neg(q))
    }

    /// `k·p` by double-and-add; negative `k` uses the inverse.
    pub fn smul(&self, k: i64, p: &PointQ) -> PointQ {
        let base = if k < 0 { self.neg(p) } else { p.clone() };
        let mut n = k.unsigned_abs();
        let mut acc = PointQ::Infinity;
        let mut dbl = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(&acc, &dbl);
            }
            n >>= 1;
            if n > 0 {
                dbl = self.add(&dbl, &dbl);
            }
        }
        acc
    }

    pub fn torsion_order(&self, p: &PointQ) -> TorsionOrder {
        let mut acc = p.clone();
        for n in 1..=MAZUR_BOUND {
            if acc.is_infinity() {
                return TorsionOrder::Finite(n);
            }
            acc = self.add(&acc, p);
        }
        TorsionOrder::Infinite
    }
}

/// The curve `E_{a,b,c}` of a Diophantine triple with its square roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedCurve {
    pub curve: CurveQ,
    pub triple: TripleVals,
    /// Positive roots of `ab + 1`, `ac + 1`, `bc + 1`.
    pub r: Rat,
    pub s: Rat,
    pub t: Rat,
    /// Positive roots of `a² + 1` and `b² + 1`, when those are squares.
    pub ua: Option<Rat>,
    pub ub: Option<Rat>,
}

/// The named points of an induced curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishedPoints {
    pub t1: PointQ,
    pub t2: PointQ,
    pub t3: PointQ,
    pub p: PointQ,
    pub s: PointQ,
    pub r: PointQ,
    pub a: Option<PointQ>,
    pub b: Option<PointQ>,
}

fn positive_root(x: &Rat) -> Option<Rat> {
    x.sqrt_exact()
}

pub fn induced_curve(t: &TripleVals) -> Result<InducedCurve, Error> {
    if !t.is_valid() {
        return Err(Error::DegenerateTriple);
    }
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let ab = a * b;
    let ac = a * c;
    let bc = b * c;
    let r = positive_root(&(&ab + 1)).ok_or(Error::NotDiophantine(0, 1))?;
    let s = positive_root(&(&ac + 1)).ok_or(Error::NotDiophantine(0, 2))?;
    let tt = positive_root(&(&bc + 1)).ok_or(Error::NotDiophantine(1, 2))?;
    // With distinct nonzero elements, ab, ac, bc are pairwise distinct, so
    // the cubic has simple roots.
    let abc = &ab * c;
    let curve = CurveQ::short(&ab + &ac + &bc, &abc * (a + b + c), abc.square())
        .map_err(|_| Error::DegenerateTriple)?;
    Ok(InducedCurve {
        curve,
        triple: t.clone(),
        r,
        s,
        t: tt,
        ua: positive_root(&(a.square() + 1)),
        ub: positive_root(&(b.square() + 1)),
    })
}

impl InducedCurve {
    pub fn abc(&self) -> Rat {
        &self.triple.a * &self.triple.b * &self.triple.c
    }

    pub fn has_strong_pair(&self) -> bool {
        self.ua.is_some() && self.ub.is_some()
    }

    pub fn distinguished_points(&self) -> DistinguishedPoints {
        let (a, b, c) = (&self.triple.a, &self.triple.b, &self.triple.c);
        let (r, s, t) = (&self.r, &self.s, &self.t);
        let abc = self.abc();
        let rst = r * s * t;
        let rs = r * s;
        let rt = r * t;
        let st = s * t;
        DistinguishedPoints {
            t1: PointQ::affine(-(a * b), Rat::zero()),
            t2: PointQ::affine(-(a * c), Rat::zero()),
            t3: PointQ::affine(-(b * c), Rat::zero()),
            p: PointQ::affine(Rat::zero(), abc.clone()),
            s: PointQ::affine(Rat::one(), rst),
            // halving S: x(R) = rs + rt + st + 1
            r: PointQ::affine(
                &rs + &rt + &st + 1,
                (r + s) * (r + t) * (s + t),
            ),
            a: self
                .ua
                .as_ref()
                .map(|ua| PointQ::affine(a * &abc, &abc * &rs * ua)),
            b: self
                .ub
                .as_ref()
                .map(|ub| PointQ::affine(b * &abc, &abc * &rt * ub)),
        }
    }

    /// The fourth element a point contributes: `x(pt) / abc`.
    pub fn d_from_point(&self, pt: &PointQ) -> Result<Rat, Error> {
        let x = pt.x().ok_or(Error::InfinityPoint)?;
        Ok(x / self.abc())
    }

    /// `x(Q)·x(T)·x(Q+T) + (abc)²`, or `None` when one of the three points is
    /// at infinity.
    pub fn x_product_residue(&self, q: &PointQ, t: &PointQ) -> Option<Rat> {
        let sum = self.curve.add(q, t);
        let prod = q.x()? * t.x()? * sum.x()?;
        Some(prod + self.abc().square())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn pt(x: &str, y: &str) -> PointQ {
        PointQ::affine(r(x), r(y))
    }

    fn paper_triple() -> TripleVals {
        TripleVals::new(r("30464/2223"), r("22815/5168"), r("361/7956"))
    }

    #[test]
    fn curve_e_torsion_and_free_points() {
        let e = CurveQ::curve_e();
        let g = pt("-1", "10");
        assert!(e.is_on_curve(&g));
        assert_eq!(e.add(&g, &PointQ::Infinity), g);
        assert_eq!(e.smul(6, &g), PointQ::Infinity);
        assert_eq!(e.torsion_order(&g), TorsionOrder::Finite(6));
        let f = pt("11/4", "-25/8");
        assert!(e.is_on_curve(&f));
        assert_eq!(e.torsion_order(&f), TorsionOrder::Infinite);
        assert_eq!(e.torsion_order(&PointQ::Infinity), TorsionOrder::Finite(1));
    }

    #[test]
    fn negation_with_a1_a3_terms() {
        let e = CurveQ::curve_e();
        let g = pt("-1", "10");
        // -y - a1 x - a3 = -10 + 1 - 1
        let n = e.neg(&g);
        assert_eq!(n, pt("-1", "-10"));
        assert!(e.is_on_curve(&n));
        assert_eq!(e.add(&g, &n), PointQ::Infinity);
        assert_eq!(e.neg(&PointQ::Infinity), PointQ::Infinity);
    }

    #[test]
    fn smul_edge_cases() {
        let e = CurveQ::curve_e();
        let f = pt("11/4", "-25/8");
        assert_eq!(e.smul(0, &f), PointQ::Infinity);
        assert_eq!(e.smul(1, &f), f);
        assert_eq!(e.smul(-3, &f), e.neg(&e.smul(3, &f)));
        assert_eq!(e.smul(5, &f), e.add(&e.smul(2, &f), &e.smul(3, &f)));
    }

    #[test]
    fn singular_curve_rejected() {
        // y^2 = x^3
        assert_eq!(
            CurveQ::short(Rat::zero(), Rat::zero(), Rat::zero()),
            Err(Error::SingularCurve)
        );
    }

    #[test]
    fn induced_curve_of_paper_triple() {
        let ic = induced_curve(&paper_triple()).unwrap();
        assert!(ic.ua.is_some() && ic.ub.is_some());
        assert_eq!(&ic.r * &ic.s * &ic.t, r("3307949/302328"));
        let d = ic.distinguished_points();
        assert_eq!(d.a, Some(pt("250880/6669", "94938136300/252028179")));
        assert_eq!(d.b, Some(pt("266175/21964", "18177179755/170264928")));
        // the worked example takes the other sign of S
        assert_eq!(ic.curve.neg(&d.s), pt("1", "-3307949/302328"));
        for p in [&d.t1, &d.t2, &d.t3, &d.p, &d.s, &d.r] {
            assert!(ic.curve.is_on_curve(p), "{p:?}");
        }
        assert!(ic.curve.is_on_curve(d.a.as_ref().unwrap()));
        assert!(ic.curve.is_on_curve(d.b.as_ref().unwrap()));
        assert_eq!(ic.curve.smul(2, &d.r), d.s);
        assert_eq!(ic.curve.torsion_order(&d.s), TorsionOrder::Finite(3));
        let w1 = ic.curve.add(d.a.as_ref().unwrap(), &d.t3);
        assert_eq!(w1, pt("19824/42025", "-726438832196/108524729625"));
        let w2 = ic.curve.add(d.b.as_ref().unwrap(), &d.t2);
        assert_eq!(w2, pt("-64155/24649", "29291888395/1764671208"));
    }

    #[test]
    fn fermat_triple() {
        let ic = induced_curve(&TripleVals::new(r("1"), r("3"), r("8"))).unwrap();
        assert_eq!((ic.r.clone(), ic.s.clone(), ic.t.clone()), (r("2"), r("3"), r("5")));
        assert_eq!(ic.ua, None);
        assert_eq!(ic.ub, None);
        let d = ic.distinguished_points();
        assert!(d.a.is_none());
        assert_eq!(ic.d_from_point(&d.p).unwrap(), Rat::zero());
        assert_eq!(ic.curve.smul(2, &d.r), d.s);
        // d = 120 extends {1, 3, 8}: x = 120 * abc = 2880
        let x = r("2880");
        let y2 = (&x + 3) * (&x + 8) * (&x + 24);
        let y = y2.sqrt_exact().expect("rational point");
        let q = PointQ::affine(x, y);
        assert!(ic.curve.is_on_curve(&q));
        assert_eq!(ic.d_from_point(&q).unwrap(), r("120"));
        assert_eq!(ic.d_from_point(&PointQ::Infinity), Err(Error::InfinityPoint));
    }

    #[test]
    fn induced_curve_errors() {
        assert_eq!(
            induced_curve(&TripleVals::new(r("1"), r("2"), r("3"))),
            Err(Error::NotDiophantine(0, 1))
        );
        assert_eq!(
            induced_curve(&TripleVals::new(r("1"), r("1"), r("3"))),
            Err(Error::DegenerateTriple)
        );
        assert_eq!(
            induced_curve(&TripleVals::new(r("0"), r("1"), r("3"))),
            Err(Error::DegenerateTriple)
        );
    }

    #[test]
    fn d_of_a_is_a() {
        let ic = induced_curve(&paper_triple()).unwrap();
        let d = ic.distinguished_points();
        assert_eq!(ic.d_from_point(d.a.as_ref().unwrap()).unwrap(), ic.triple.a);
    }
}
