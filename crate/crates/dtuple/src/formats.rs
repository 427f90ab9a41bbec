//! JSON shapes. Every rational crosses this boundary as a `"p/q"` or `"n"`
//! string.

use dtuple_core::ecq::{CurveQ, InducedCurve, PointQ};
use dtuple_core::search::CPoint;
use dtuple_core::sextgen::{
    ExtendOutcome, IsoData, PartialResult, RegularityReport, SignChoice, SignRule, Sextuple,
    Transport,
};
use dtuple_core::{Certificate, Rat};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{AppError, Result};

pub fn rat(x: &Rat) -> String {
    x.to_string()
}

pub fn rats(xs: &[Rat]) -> Vec<String> {
    xs.iter().map(rat).collect()
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    s.parse::<Rat>().map_err(AppError::from)
}

pub fn parse_rats(xs: &[String]) -> Result<Vec<Rat>> {
    xs.iter().map(|s| parse_rat(s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointJson {
    Affine { x: String, y: String },
    Infinity { infinity: bool },
}

impl From<&PointQ> for PointJson {
    fn from(p: &PointQ) -> Self {
        match p {
            PointQ::Infinity => PointJson::Infinity { infinity: true },
            PointQ::Affine { x, y } => PointJson::Affine {
                x: rat(x),
                y: rat(y),
            },
        }
    }
}

impl PointJson {
    pub fn to_point(&self) -> Result<PointQ> {
        match self {
            PointJson::Infinity { infinity: true } => Ok(PointQ::Infinity),
            PointJson::Infinity { infinity: false } => Err(AppError::InvalidArgument(
                "point with \"infinity\": false has no coordinates".into(),
            )),
            PointJson::Affine { x, y } => Ok(PointQ::affine(parse_rat(x)?, parse_rat(y)?)),
        }
    }
}

pub fn point(p: &PointQ) -> Value {
    serde_json::to_value(PointJson::from(p)).expect("plain data")
}

pub fn curve(e: &CurveQ) -> Value {
    json!(e.coefficients().map(rat))
}

pub fn parse_curve(v: &[String; 5]) -> Result<CurveQ> {
    let [a1, a2, a3, a4, a6] = v.clone().map(|s| parse_rat(&s));
    Ok(CurveQ::new(a1?, a2?, a3?, a4?, a6?)?)
}

pub fn certificate(c: &Certificate) -> Value {
    let witnesses: Vec<Value> = c
        .pair_witnesses
        .iter()
        .map(|(i, j, w)| json!([i, j, rat(w)]))
        .collect();
    let strong: Vec<Option<String>> = c.strong_roots.iter().map(|r| r.as_ref().map(rat)).collect();
    let mut v = json!({
        "tuple": rats(&c.tuple),
        "witnesses": witnesses,
        "strong": strong,
        "S_value": c.s_value.as_ref().map(rat),
    });
    if !c.regularity_residues.is_empty() {
        let res: serde_json::Map<String, Value> = c
            .regularity_residues
            .iter()
            .map(|(k, r)| (k.clone(), Value::String(rat(r))))
            .collect();
        v["regularity_residues"] = Value::Object(res);
    }
    v
}

fn witnesses(c: &Certificate) -> Vec<Value> {
    c.pair_witnesses
        .iter()
        .map(|(i, j, w)| json!([i, j, rat(w)]))
        .collect()
}

pub fn sextuple(s: &Sextuple, relation_signs: &str) -> Value {
    json!({
        "kind": "sextuple",
        "triple": rats(&s.base.elems),
        "n": s.n,
        "elems": rats(&s.elems),
        "witnesses": witnesses(&s.certificate),
        "relation_signs": relation_signs,
        "d_points": s.d_points.iter().map(point).collect::<Vec<_>>(),
    })
}

pub fn partial(p: &PartialResult, relation_signs: &str) -> Value {
    let dropped: Vec<Value> = p
        .dropped
        .iter()
        .map(|(k, why)| json!({"candidate": format!("d{}", k + 4), "value": rat(&p.candidates[*k]), "reason": why.to_string()}))
        .collect();
    json!({
        "kind": "partial",
        "triple": rats(&p.base.elems),
        "n": p.n,
        "elems": rats(&p.tuple),
        "candidates": rats(&p.candidates),
        "dropped": dropped,
        "witnesses": witnesses(&p.certificate),
        "relation_signs": relation_signs,
    })
}

pub fn outcome(o: &ExtendOutcome, relation_signs: &str) -> Value {
    match o {
        ExtendOutcome::Sextuple(s) => sextuple(s, relation_signs),
        ExtendOutcome::Partial(p) => partial(p, relation_signs),
    }
}

fn induced(ic: &InducedCurve) -> Value {
    json!({
        "triple": rats(&ic.triple.to_array()),
        "curve": curve(&ic.curve),
    })
}

pub fn iso(d: &IsoData) -> Value {
    json!({
        "w": point(&d.w),
        "k": rat(&d.k),
        "source": induced(&d.source),
        "target": induced(&d.target),
        "image_triple": rats(&d.image_triple.elems),
        "sign_choice": match d.sign_choice {
            SignChoice::AsComputed => "as_computed",
            SignChoice::Negated => "negated",
        },
        "sign_rule": match d.sign_rule {
            SignRule::LargestPositive => "largest_positive",
            SignRule::MatchedFamily => "matched_family",
        },
    })
}

pub fn transport(t: &Transport) -> Value {
    json!({
        "via": t.via,
        "iso": iso(&t.iso),
        "expected_family": t.expected_family.to_string(),
        "expected": rats(&t.expected),
        "matches": t.matches,
    })
}

pub fn regularity(r: &RegularityReport) -> Value {
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|c| {
            json!({
                "polynomial": c.polynomial,
                "residue": rat(&c.residue),
                "relation": c.relation,
                "signs": c.signs,
                "agrees": c.agrees(),
            })
        })
        .collect();
    json!({ "checks": checks, "all_agree": r.all_agree() })
}

/// One entry of the point cache.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub u: String,
    pub v: String,
    pub height: u64,
    pub provenance: String,
}

impl CacheEntry {
    pub fn from_point(p: &CPoint) -> Result<CacheEntry> {
        let height = u64::try_from(&p.height).map_err(|_| {
            AppError::InvalidArgument(format!("height {} does not fit the cache format", p.height))
        })?;
        Ok(CacheEntry {
            u: rat(&p.uv.u),
            v: rat(&p.uv.v),
            height,
            provenance: p.provenance.to_string(),
        })
    }
}

pub fn cpoint(p: &CPoint) -> Value {
    json!({
        "u": rat(&p.uv.u),
        "v": rat(&p.uv.v),
        "height": u64::try_from(&p.height).map(Value::from).unwrap_or_else(|_| Value::String(p.height.to_string())),
        "provenance": p.provenance.as_str(),
        "component": p.component.as_str(),
        "orbit": p.orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use dtuple_core::verify_tuple;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn point_shapes() {
        let p = PointQ::affine(r("-119/128"), r("3"));
        assert_eq!(point(&p), json!({"x": "-119/128", "y": "3"}));
        assert_eq!(point(&PointQ::Infinity), json!({"infinity": true}));
        let back: PointJson = serde_json::from_value(json!({"infinity": true})).unwrap();
        assert_eq!(back.to_point().unwrap(), PointQ::Infinity);
        let back: PointJson = serde_json::from_value(point(&p)).unwrap();
        assert_eq!(back.to_point().unwrap(), p);
    }

    #[test]
    fn curve_shape() {
        let e = CurveQ::curve_e();
        let v = curve(&e);
        assert_eq!(v, json!(["1", "0", "1", "-33", "68"]));
        let arr: [String; 5] = serde_json::from_value(v).unwrap();
        assert_eq!(parse_curve(&arr).unwrap(), e);
    }

    #[test]
    fn certificate_shape() {
        let c = verify_tuple(&[r("1"), r("3"), r("8")]).unwrap();
        let v = certificate(&c);
        assert_eq!(v["tuple"], json!(["1", "3", "8"]));
        assert_eq!(v["witnesses"][0], json!([0, 1, "2"]));
        assert_eq!(v["strong"], json!([null, null, null]));
        assert!(v["S_value"].as_str().is_some());
    }

    #[test]
    fn decimals_are_rejected() {
        assert!(parse_rat("0.5").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert_eq!(parse_rat("-6/4").unwrap(), r("-3/2"));
    }

    proptest::proptest! {
        #[test]
        fn rationals_round_trip(n in -10_000_000i64..10_000_000, d in 1i64..10_000_000) {
            let x = Rat::frac(n, d);
            proptest::prop_assert_eq!(parse_rat(&rat(&x)).unwrap(), x.clone());
            let p = PointQ::affine(x.clone(), -x);
            let back: PointJson = serde_json::from_value(point(&p)).unwrap();
            proptest::prop_assert_eq!(back.to_point().unwrap(), p);
        }
    }
}
