use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use quandlelab::chainmaps::verify_chain_maps;
use quandlelab::catalog::{self, KNOTS, KNOT_FAMILIES, NAMES};
use quandlelab::cover::{cover_homology, theta};
use quandlelab::group::{clauwens_model, extended_quandle, h2q_eisermann, AsGroup};
use quandlelab::knot::{
    cocycle_invariant, coloring_polynomial, enumerate_colorings, gamma_check, state_sum_classes, Coloring,
    LinkDiagram, StabilizerClasses,
};
use quandlelab::rack::{self, two_cocycles, Coefficients, Cocycle, Flavor, Limits};
use quandlelab::QuandleTable;

use crate::report::{group, knot_input, quandle_input, sha256, Failure, Stage};
use crate::{CoeffArg, Config, FlavorArg};

type Out = Result<Value, Failure>;

fn limits(cfg: &Config) -> Limits {
    let mut l = if cfg.large { Limits::large() } else { Limits::default() };
    if let Some(m) = cfg.max_basis {
        l.max_basis = m;
    }
    l
}

fn load_quandle(spec: &str) -> Result<QuandleTable, Failure> {
    catalog::resolve(spec).stage("loading quandle")
}

fn load_knot(spec: &str) -> Result<LinkDiagram, Failure> {
    catalog::knot(spec).stage("loading knot")
}

fn as_group(cfg: &Config, q: &QuandleTable) -> Result<AsGroup, Failure> {
    AsGroup::new(q, cfg.max_cosets).stage("coset enumeration")
}

fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn consistency(msg: String, report: Value) -> Failure {
    Failure { code: 4, message: msg, report: Some(report) }
}

pub fn quandle_info(cfg: &Config, spec: &str) -> Out {
    let q = load_quandle(spec)?;
    q.check_axioms().stage("axioms")?;
    let connected = q.is_connected();
    let inn = q.inner_group().stage("inner automorphism group")?.order();
    let orbits: Vec<usize> = q.orbits().iter().map(|o| o.len()).collect();
    let h2_chain = rack::homology_group_of(&q, 2, Flavor::Quandle, Coefficients::Point, limits(cfg)).stage("chain complex")?;
    let h2_eis = h2q_eisermann(&q).stage("stabilizer presentation")?;
    let mut out = json!({
        "input": quandle_input(spec, &q),
        "order": q.size(),
        "axioms": true,
        "connected": connected,
        "orbit_sizes": orbits,
        "type": q.type_of(),
        "inn_order": big(inn),
        "h2q": group(&h2_chain),
        "h2q_eisermann": group(&h2_eis),
    });
    if h2_chain != h2_eis {
        return Err(consistency(format!("H2Q from chains is {h2_chain} but Eisermann gives {h2_eis}"), out));
    }
    if connected {
        let g = as_group(cfg, &q)?;
        out["ker_eps"] = json!(g.kernel_order());
        let ext = extended_quandle(&g).stage("extended quandle")?;
        let x = &ext.quandle;
        out["extended"] = json!({
            "order": x.size(),
            "connected": x.is_connected(),
            "type": x.type_of(),
            "h2q": group(&h2q_eisermann(x).stage("extended quandle H2Q")?),
        });
        if q.alexander.is_some() {
            let m = clauwens_model(&q).stage("Clauwens model")?;
            out["clauwens"] = json!({"coker_mu": group(&m.coker_mu), "predicted_ker_eps": m.predicted_kernel_order});
        }
    }
    if !q.notes.is_empty() {
        out["notes"] = json!(q.notes);
    }
    Ok(out)
}

pub fn homology(cfg: &Config, spec: &str, n: usize, flavor: FlavorArg, coeffs: CoeffArg, cocycles: Option<u64>) -> Out {
    let q = load_quandle(spec)?;
    let flavor = match flavor {
        FlavorArg::Rack => Flavor::Rack,
        FlavorArg::Quandle => Flavor::Quandle,
    };
    let coeffs = match coeffs {
        CoeffArg::Point => Coefficients::Point,
        CoeffArg::Primitive => Coefficients::Primitive,
    };
    let g = rack::homology_group_of(&q, n, flavor, coeffs, limits(cfg)).stage("chain complex")?;
    let mut out = json!({
        "input": quandle_input(spec, &q),
        "degree": n,
        "flavor": flavor,
        "coefficients": coeffs,
        "group": group(&g),
    });
    if let Some(m) = cocycles {
        if n != 2 || flavor != Flavor::Quandle || coeffs != Coefficients::Point {
            return Err(Failure::input("--cocycles needs --n 2 with quandle flavor and point coefficients"));
        }
        let cs = two_cocycles(&q, m).stage("cocycles")?;
        out["cocycles"] = cs
            .into_iter()
            .map(|(c, ord)| {
                let mut v = c.to_json();
                v["order"] = json!(ord);
                v
            })
            .collect();
    }
    Ok(out)
}

fn colorings(d: &LinkDiagram, q: &QuandleTable) -> Result<Vec<Coloring>, Failure> {
    let cs = enumerate_colorings(d, q);
    for c in &cs {
        gamma_check(d, q, c, None).stage("colouring check")?;
    }
    Ok(cs)
}

pub fn color(knot: &str, spec: &str, list: bool) -> Out {
    let d = load_knot(knot)?;
    let q = load_quandle(spec)?;
    let cs = colorings(&d, &q)?;
    let trivial = cs.iter().filter(|c| c.iter().all(|&x| x == c[0])).count();
    let mut out = json!({
        "knot": knot_input(knot, &d),
        "quandle": quandle_input(spec, &q),
        "arcs": d.num_arcs(),
        "components": d.components().len(),
        "count": cs.len(),
        "trivial": trivial,
    });
    if list {
        out["colorings"] = cs.iter().map(|c| c.iter().map(|&x| q.label(x)).collect::<Vec<_>>()).collect();
    }
    Ok(out)
}

fn read_cocycles(path: &Path, n: usize) -> Result<(Vec<Cocycle>, String), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let items: Vec<Value> = match &v {
        Value::Array(a) => a.clone(),
        Value::Object(m) if m.contains_key("cocycles") => m["cocycles"].as_array().cloned().unwrap_or_default(),
        _ => vec![v.clone()],
    };
    let cs = items.iter().map(|x| Cocycle::from_json(x, n)).collect::<quandlelab::Result<Vec<_>>>().stage("cocycle")?;
    Ok((cs, sha256(&v)))
}

fn multiset<K: Ord>(items: impl IntoIterator<Item = K>) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in items {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

pub fn invariant(knot: &str, spec: &str, cocycle: &Path) -> Out {
    let d = load_knot(knot)?;
    let q = load_quandle(spec)?;
    let (phis, hash) = read_cocycles(cocycle, q.size())?;
    let cs = colorings(&d, &q)?;
    let mut values = Vec::new();
    for phi in &phis {
        let m = cocycle_invariant(&d, &q, phi, &cs).stage("cocycle invariant")?;
        let terms: BTreeMap<String, usize> = m.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        values.push(json!({"modulus": phi.modulus, "multiset": terms}));
    }
    let ss = state_sum_classes(&d, &q, &cs).stage("state-sum classes")?;
    let classes = multiset(ss.classes.iter().map(|c| (c.coordinates.clone(), c.order)));
    Ok(json!({
        "knot": knot_input(knot, &d),
        "quandle": quandle_input(spec, &q),
        "cocycle_sha256": hash,
        "colorings": cs.len(),
        "cocycle_invariants": values,
        "state_sum": {
            "h2q": group(&ss.group),
            "classes": classes.into_iter().map(|((coords, order), n)| json!({"coordinates": coords, "order": order, "count": n})).collect::<Vec<_>>(),
        },
    }))
}

pub fn colpoly(knot: &str, spec: &str) -> Out {
    let d = load_knot(knot)?;
    let q = load_quandle(spec)?;
    let cs = colorings(&d, &q)?;
    let sc = StabilizerClasses::new(&q).stage("stabilizer presentation")?;
    let stabs: Vec<Value> = q
        .orbits()
        .iter()
        .enumerate()
        .map(|(i, o)| json!({"orbit": i, "representative": q.label(o[0]), "group": group(sc.group(i))}))
        .collect();
    let poly = coloring_polynomial(&d, &q, &cs).stage("longitude classes")?;
    let terms = multiset(poly.into_iter().map(|v| v.into_iter().map(|c| (c.orbit, c.coordinates, c.order)).collect::<Vec<_>>()));
    Ok(json!({
        "knot": knot_input(knot, &d),
        "quandle": quandle_input(spec, &q),
        "colorings": cs.len(),
        "stabilizers": stabs,
        "terms": terms.into_iter().map(|(classes, n)| json!({
            "classes": classes.into_iter().map(|(o, c, ord)| json!({"orbit": o, "coordinates": c, "order": ord})).collect::<Vec<_>>(),
            "count": n,
        })).collect::<Vec<_>>(),
    }))
}

pub fn cover(cfg: &Config, knot: &str, fold: usize, quandle: Option<&str>) -> Out {
    let d = load_knot(knot)?;
    let h1 = cover_homology(&d, fold).stage("branched cover")?;
    let mut out = json!({"knot": knot_input(knot, &d), "fold": fold, "h1": group(&h1)});
    if let Some(spec) = quandle {
        let q = load_quandle(spec)?;
        if q.type_of() != fold as u64 {
            return Err(Failure::input(format!("θ is defined for fold = type = {}", q.type_of())));
        }
        let g = as_group(cfg, &q)?;
        let cs = colorings(&d, &q)?;
        let mut equivariant = true;
        let mut orders = Vec::new();
        for c in &cs {
            let r = theta(&d, &g, c).stage("θ")?;
            equivariant &= r.equivariant;
            orders.push(r.image_order);
        }
        out["quandle"] = quandle_input(spec, &q);
        out["theta"] = json!({
            "colorings": cs.len(),
            "well_defined": true,
            "equivariant": equivariant,
            "image_order": orders.iter().max(),
            "image_orders": multiset(orders.iter().map(|o| o.to_string())),
        });
        if !equivariant {
            return Err(consistency("θ is not Z-equivariant".into(), out));
        }
    }
    Ok(out)
}

pub fn verify(cfg: &Config, spec: &str) -> Out {
    let q = load_quandle(spec)?;
    let g = as_group(cfg, &q)?;
    let r = verify_chain_maps(&g).stage("chain-map checks")?;
    let passed = r.passed();
    let mut out = serde_json::to_value(&r).expect("report serializes");
    out["input"] = quandle_input(spec, &q);
    out["passed"] = json!(passed);
    if !passed {
        return Err(consistency("chain-map identities fail".into(), out));
    }
    Ok(out)
}

pub fn catalog_list() -> Value {
    let quandles: Vec<Value> = NAMES
        .iter()
        .map(|n| match catalog::load(n) {
            Ok(q) => json!({"name": n, "size": q.size(), "type": q.type_of(), "connected": q.is_connected()}),
            Err(e) => json!({"name": n, "error": e.to_string()}),
        })
        .collect();
    let knots: Vec<Value> = KNOTS
        .iter()
        .map(|n| match catalog::knot(n) {
            Ok(d) => json!({"name": n, "crossings": d.pd().len(), "components": d.components().len(), "writhe": d.writhe()}),
            Err(e) => json!({"name": n, "error": e.to_string()}),
        })
        .collect();
    let families: BTreeMap<&str, &[&str]> = KNOT_FAMILIES.iter().copied().collect();
    json!({"quandles": quandles, "knots": knots, "families": families})
}

pub fn catalog_export(dir: Option<PathBuf>) -> Out {
    let dir = dir.unwrap_or_else(catalog::data_dir);
    let written = catalog::export(&dir).stage("export")?;
    Ok(json!({"written": written.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect::<Vec<_>>()}))
}
