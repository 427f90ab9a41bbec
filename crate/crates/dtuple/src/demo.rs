//! The worked example at `(u, v) = (-119/128, -135/169)`, rerun end to end
//! and compared against its published exact values.

use dtuple_core::ecq::{induced_curve, InducedCurve};
use dtuple_core::sextgen::{check_regularity_relations, extend, phi_w, w1_w2, ExtendOutcome};
use dtuple_core::families::match_up_to_sign;
use dtuple_core::{f1, is_special, PointQ, Rat, Triple, UVPair};
use serde_json::{json, Value};

use crate::formats::{point, rats};
use crate::report::RunReport;

fn r(s: &str) -> Rat {
    s.parse().expect("literal")
}

fn pt(x: &str, y: &str) -> PointQ {
    PointQ::affine(r(x), r(y))
}

pub fn example_uv() -> UVPair {
    UVPair::new(r("-119/128"), r("-135/169"))
}

pub fn example_triple() -> [Rat; 3] {
    [r("30464/2223"), r("22815/5168"), r("361/7956")]
}

struct Published {
    a: PointQ,
    b: PointQ,
    s: PointQ,
    w1: PointQ,
    w2: PointQ,
    image_w1: [Rat; 3],
    image_w2: [Rat; 3],
}

fn published() -> Published {
    Published {
        a: pt("250880/6669", "94938136300/252028179"),
        b: pt("266175/21964", "18177179755/170264928"),
        s: pt("1", "-3307949/302328"),
        w1: pt("19824/42025", "-726438832196/108524729625"),
        w2: pt("-64155/24649", "29291888395/1764671208"),
        image_w1: [r("30464/2223"), r("4807/31824"), r("10881/1292")],
        image_w2: [r("-22815/5168"), r("4807/31824"), r("-8092/2223")],
    }
}

/// Checklist state: stops recording at the first failed item.
struct Checklist<'a> {
    rep: &'a mut RunReport,
    broken: bool,
}

impl Checklist<'_> {
    fn item(&mut self, name: &str, pass: bool, expected: Value, got: Value) -> bool {
        if self.broken {
            return false;
        }
        log::info!("{} {name}", if pass { "pass" } else { "FAIL" });
        self.rep.outputs.push(json!({
            "check": name,
            "pass": pass,
            "expected": expected,
            "got": got,
        }));
        if !pass {
            self.broken = true;
            self.rep.fail(
                "Mismatch",
                format!("first divergence at {name}"),
                json!({"check": name}),
            );
        }
        pass
    }

    fn abort(&mut self, name: &str, why: String) {
        self.item(name, false, Value::Null, json!({"error": why}));
    }
}

fn opt_point(p: &Option<PointQ>) -> Value {
    p.as_ref().map(point).unwrap_or(Value::Null)
}

/// Runs the checklist on `triple`, which should be the example triple; any
/// other input stops at the first intermediate it changes.
pub fn run(triple: &[Rat; 3]) -> RunReport {
    let mut rep = RunReport::new("demo", json!({"triple": rats(triple), "u": "-119/128", "v": "-135/169"}));
    let start = std::time::Instant::now();
    {
        let mut ck = Checklist {
            rep: &mut rep,
            broken: false,
        };
        steps(triple, &mut ck);
    }
    rep.timings_ms.insert("total".into(), start.elapsed().as_millis() as u64);
    rep
}

fn steps(triple: &[Rat; 3], ck: &mut Checklist<'_>) {
    let want = published();
    let uv = example_uv();
    let from_family = match f1(&uv) {
        Ok(t) => t,
        Err(e) => return ck.abort("triple", e.to_string()),
    };
    if !ck.item("triple", from_family.elems == *triple, json!(rats(triple)), json!(rats(&from_family.elems))) {
        return;
    }
    let t = match Triple::new(triple.clone()) {
        Ok(t) => t,
        Err(e) => return ck.abort("special", e.to_string()),
    };
    if !ck.item("special", is_special(&t), json!(true), json!(is_special(&t))) {
        return;
    }
    let ic: InducedCurve = match induced_curve(&t.vals()) {
        Ok(ic) => ic,
        Err(e) => return ck.abort("A", e.to_string()),
    };
    let pts = ic.distinguished_points();
    ck.item("A", pts.a.as_ref() == Some(&want.a), point(&want.a), opt_point(&pts.a));
    ck.item("B", pts.b.as_ref() == Some(&want.b), point(&want.b), opt_point(&pts.b));
    let s_ok = pts.s == want.s || pts.s == ic.curve.neg(&want.s);
    ck.item("S up to negation", s_ok, point(&want.s), point(&pts.s));
    if ck.broken {
        return;
    }
    let (pa, pb) = (pts.a.clone().expect("checked"), pts.b.clone().expect("checked"));
    let sum = ic.curve.add(&ic.curve.add(&pa, &pb), &want.s);
    ck.item("A+B+S=O", sum.is_infinity(), json!({"infinity": true}), point(&sum));
    let (w1, w2) = match w1_w2(&ic) {
        Ok(w) => w,
        Err(e) => return ck.abort("W1", e.to_string()),
    };
    ck.item("W1", w1 == want.w1, point(&want.w1), point(&w1));
    ck.item("W2", w2 == want.w2, point(&want.w2), point(&w2));
    for (name, w) in [("1-x(W1) square", &w1), ("1-x(W2) square", &w2)] {
        let k = w.x().and_then(|x| (Rat::one() - x).sqrt_exact());
        ck.item(name, k.is_some(), json!(true), json!(k.map(|k| k.to_string())));
    }
    for (name, w, expected) in [
        ("image under W1 is F2 up to sign", &w1, &want.image_w1),
        ("image under W2 is F3 up to sign", &w2, &want.image_w2),
    ] {
        match phi_w(&ic, w) {
            Ok(iso) => {
                let m = match_up_to_sign(&iso.image_triple.elems, expected);
                ck.item(name, m.is_some(), json!(rats(expected)), json!(rats(&iso.image_triple.elems)));
            }
            Err(e) => ck.abort(name, e.to_string()),
        }
    }
    match check_regularity_relations(&ic) {
        Ok(rel) => {
            let c = rel.get("r5(a,a,b,b,c)").expect("always checked");
            ck.item(
                "r5(a,a,b,b,c)=0",
                c.polynomial_vanishes() && c.agrees(),
                json!({"residue": "0", "signs": "A+B+S=O up to the sign of S"}),
                json!({"residue": c.residue.to_string(), "signs": c.signs}),
            );
        }
        Err(e) => ck.abort("r5(a,a,b,b,c)=0", e.to_string()),
    }
    match extend(&t, 1) {
        Ok(ExtendOutcome::Sextuple(s)) => {
            let ok = s.certificate.recheck() && s.certificate.pair_witnesses.len() == 15;
            ck.item("extension n=1", ok, json!({"witnesses": 15}), json!({"elems": rats(&s.elems), "witnesses": s.certificate.pair_witnesses.len()}));
        }
        Ok(ExtendOutcome::Partial(p)) => {
            ck.item("extension n=1", false, json!({"witnesses": 15}), json!({"partial": rats(&p.tuple)}));
        }
        Err(e) => ck.abort("extension n=1", e.to_string()),
    }
}
