//! One function per subcommand. Each returns a [`RunReport`]; none of them
//! print.

use std::fs;
use std::path::{Path, PathBuf};

use dtuple_core::ecq::induced_curve;
use dtuple_core::families::verify_tuple_full;
use dtuple_core::search::{orbit_closure, Component, SearchConfig};
use dtuple_core::sextgen::{check_regularity_relations, phi_w, relation_label, w1_w2};
use dtuple_core::{is_special, verify_tuple, Family, PointQ, Triple, UVPair};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cache::{cache_load, cache_store, merge_points};
use crate::error::{AppError, Result};
use crate::formats::{self, parse_rat, parse_rats, rat, rats};
use crate::parsearch::{extend_parallel, search_parallel};
use crate::report::RunReport;

pub struct SearchArgs {
    pub max_u_height: u64,
    pub v_cap: u64,
    pub jobs: usize,
    pub cache: PathBuf,
}

pub fn search(args: &SearchArgs) -> RunReport {
    let cfg = SearchConfig {
        max_u_height: args.max_u_height,
        max_v_height_cap: args.v_cap,
        workers: args.jobs,
    };
    let mut rep = RunReport::new(
        "search",
        json!({
            "max_u_height": cfg.max_u_height,
            "v_cap": cfg.max_v_height_cap,
            "jobs": cfg.workers,
            "cache": args.cache.display().to_string(),
        }),
    );
    if let Err(e) = search_into_cache(&cfg, &args.cache, &mut rep) {
        rep.fail_with(&e, json!({"cache": args.cache.display().to_string()}));
    }
    rep
}

fn search_into_cache(cfg: &SearchConfig, path: &Path, rep: &mut RunReport) -> Result<()> {
    cfg.validate()?;
    let old = rep.timed("load", || cache_load(path))?;
    log::info!("cache {} holds {} points", path.display(), old.len());
    let found = rep.timed("search", || search_parallel(cfg))?;
    log::info!("search up to height {} found {} points", cfg.max_u_height, found.len());
    let all = rep.timed("closure", || orbit_closure(&merge_points(old, found)));
    if let Some(bad) = all.iter().find(|p| !p.is_valid()) {
        rep.fail("NotOnCurve", "a point failed its re-check", formats::cpoint(bad));
        return Ok(());
    }
    rep.timed("store", || cache_store(path, &all))?;
    rep.outputs = all.iter().map(formats::cpoint).collect();
    Ok(())
}

fn parse_uv(u: &str, v: &str) -> Result<UVPair> {
    Ok(UVPair::new(parse_rat(u)?, parse_rat(v)?))
}

fn family_of(index: u8) -> Result<Family> {
    Family::from_index(index).ok_or_else(|| AppError::InvalidArgument(format!("family must be 1, 2 or 3, got {index}")))
}

fn uv_config(u: &str, v: &str) -> Value {
    json!({"u": u, "v": v})
}

/// Notes the component of `uv`, warning when it is on neither.
fn component_note(uv: &UVPair, rep: &mut RunReport) -> Option<Component> {
    let comp = Component::of(uv);
    if comp.is_none() {
        rep.warn(format!(
            "({}, {}) is not on the curve; the triples need not be Diophantine",
            uv.u, uv.v
        ));
    }
    comp
}

fn triple_json(family: Family, t: &Triple) -> Value {
    json!({
        "family": family.to_string(),
        "triple": rats(&t.elems),
        "diophantine": true,
        "special": is_special(t),
        "strong": t.strong_flags(),
        "S_value": rat(&t.s_value()),
        "certificate": formats::certificate(&t.certificate()),
    })
}

pub fn families(u: &str, v: &str, family: Option<u8>) -> RunReport {
    let mut cfg = uv_config(u, v);
    cfg["family"] = json!(family);
    let mut rep = RunReport::new("families", cfg);
    let uv = match parse_uv(u, v) {
        Ok(uv) => uv,
        Err(e) => {
            rep.fail_with(&e, Value::Null);
            return rep;
        }
    };
    let chosen: Vec<Family> = match family.map(family_of).transpose() {
        Ok(Some(f)) => vec![f],
        Ok(None) => Family::ALL.to_vec(),
        Err(e) => {
            rep.fail_with(&e, Value::Null);
            return rep;
        }
    };
    let comp = component_note(&uv, &mut rep);
    for fam in chosen {
        let ctx = json!({"family": fam.to_string()});
        let vals = match fam.values(&uv) {
            Ok(vals) => vals,
            Err(e) => {
                rep.fail_with(&e.into(), ctx);
                continue;
            }
        };
        match rep.timed("certify", || Triple::new(vals.clone())) {
            Ok(t) => {
                let mut out = triple_json(fam, &t);
                out["component"] = json!(comp.map(Component::as_str));
                rep.outputs.push(out);
            }
            Err(e) => {
                // report per-pair diagnostics even when the triple fails
                let pairs: Vec<Value> = verify_tuple_full(&vals)
                    .unwrap_or_default()
                    .into_iter()
                    .map(|(i, j, w)| json!([i, j, w.as_ref().map(rat)]))
                    .collect();
                rep.outputs.push(json!({
                    "family": fam.to_string(),
                    "triple": rats(&vals),
                    "diophantine": false,
                    "pairs": pairs,
                    "error": e.to_string(),
                }));
                if comp.is_some() {
                    rep.fail_with(&e.into(), ctx);
                }
            }
        }
    }
    rep
}

pub struct ExtendArgs {
    pub u: String,
    pub v: String,
    pub family: u8,
    pub n_from: i64,
    pub n_to: i64,
    pub jobs: usize,
}

pub fn extend(args: &ExtendArgs) -> RunReport {
    let mut cfg = uv_config(&args.u, &args.v);
    cfg["family"] = json!(args.family);
    cfg["n_from"] = json!(args.n_from);
    cfg["n_to"] = json!(args.n_to);
    let mut rep = RunReport::new("extend", cfg);
    if let Err(e) = extend_into(args, &mut rep) {
        rep.fail_with(&e, Value::Null);
    }
    rep
}

fn extend_into(args: &ExtendArgs, rep: &mut RunReport) -> Result<()> {
    if args.n_from > args.n_to {
        return Err(AppError::InvalidArgument(format!(
            "empty n range {}..={}",
            args.n_from, args.n_to
        )));
    }
    let uv = parse_uv(&args.u, &args.v)?;
    let fam = family_of(args.family)?;
    let vals = fam.values(&uv)?;
    let t = match Triple::new(vals) {
        Ok(t) if is_special(&t) => t,
        Ok(_) => return Err(dtuple_core::Error::NotSpecial.into()),
        Err(e) => {
            rep.fail(
                "NotSpecial",
                format!("{fam}({}, {}) is not a special triple: {e}", uv.u, uv.v),
                json!({"family": fam.to_string()}),
            );
            return Ok(());
        }
    };
    let ic = induced_curve(&t.vals())?;
    let signs = match check_regularity_relations(&ic) {
        Ok(r) => relation_label(&r.get("r5(a,a,b,b,c)").expect("always checked").signs),
        Err(_) => "none".to_string(),
    };
    let bulk = rep.timed("extend", || extend_parallel(&t, args.n_from..=args.n_to, args.jobs))?;
    for (n, e) in &bulk.errors {
        rep.fail_with(&e.clone().into(), json!({"n": n}));
    }
    for o in &bulk.report.outcomes {
        if !o.certificate().recheck() {
            rep.fail("NotDiophantine", "certificate failed its re-check", json!({"n": o.n()}));
        }
        rep.outputs.push(formats::outcome(o, &signs));
    }
    for (first, later) in &bulk.report.collisions {
        rep.outputs.push(json!({"kind": "collision", "n": later, "same_as": first}));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WChoice {
    W1,
    W2,
    P,
}

pub fn iso(u: &str, v: &str, family: u8, w: WChoice) -> RunReport {
    let mut cfg = uv_config(u, v);
    cfg["family"] = json!(family);
    cfg["w"] = json!(format!("{w:?}"));
    let mut rep = RunReport::new("iso", cfg);
    if let Err(e) = iso_into(u, v, family, w, &mut rep) {
        rep.fail_with(&e, Value::Null);
    }
    rep
}

fn iso_into(u: &str, v: &str, family: u8, w: WChoice, rep: &mut RunReport) -> Result<()> {
    let uv = parse_uv(u, v)?;
    let fam = family_of(family)?;
    component_note(&uv, rep);
    let t = fam.triple(&uv)?;
    let ic = induced_curve(&t.vals())?;
    let (expected_family, point): (Family, PointQ) = match w {
        WChoice::P => (fam, ic.distinguished_points().p),
        WChoice::W1 => (fam.transport_targets().0, w1_w2(&ic)?.0),
        WChoice::W2 => (fam.transport_targets().1, w1_w2(&ic)?.1),
    };
    let mut data = rep.timed("transport", || phi_w(&ic, &point))?;
    let expected = expected_family.values(&uv)?;
    let matches = data.canonicalize_against(&expected);
    let mut out = formats::iso(&data);
    out["source_family"] = json!(fam.to_string());
    out["expected_family"] = json!(expected_family.to_string());
    out["expected"] = json!(rats(&expected));
    out["matches"] = json!(matches);
    out["image_certificate"] = formats::certificate(&data.image_triple.certificate());
    rep.outputs.push(out);
    if !matches {
        rep.fail(
            "FamilyMismatch",
            format!("image triple is not {expected_family} at this point, even up to sign"),
            json!({"w": format!("{w:?}")}),
        );
    }
    Ok(())
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TupleEntry {
    Plain(Vec<String>),
    Tagged { tuple: Vec<String> },
}

pub fn verify(file: &Path) -> RunReport {
    let mut rep = RunReport::new("verify", json!({"file": file.display().to_string()}));
    let entries = match read_tuples(file) {
        Ok(x) => x,
        Err(e) => {
            rep.fail_with(&e, Value::Null);
            return rep;
        }
    };
    for (index, raw) in entries.iter().enumerate() {
        let checked = parse_rats(raw).and_then(|xs| Ok(verify_tuple(&xs)?));
        match checked {
            Ok(cert) => rep.outputs.push(json!({
                "index": index,
                "tuple": raw,
                "pass": true,
                "certificate": formats::certificate(&cert),
            })),
            Err(e) => {
                rep.outputs.push(json!({
                    "index": index,
                    "tuple": raw,
                    "pass": false,
                    "error": e.to_string(),
                }));
                rep.fail_with(&e, json!({"index": index}));
            }
        }
    }
    rep
}

fn read_tuples(file: &Path) -> Result<Vec<Vec<String>>> {
    let text = fs::read_to_string(file).map_err(|source| AppError::Io {
        path: file.to_path_buf(),
        source,
    })?;
    let entries: Vec<TupleEntry> = serde_json::from_str(&text).map_err(|source| AppError::Json {
        path: file.to_path_buf(),
        source,
    })?;
    Ok(entries
        .into_iter()
        .map(|e| match e {
            TupleEntry::Plain(t) | TupleEntry::Tagged { tuple: t } => t,
        })
        .collect())
}
