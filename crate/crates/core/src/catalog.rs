//! Named quandles and the on-disk data directory.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::perm::{self, Perm};
use crate::quandle::{quandle_from_json, make_alexander, make_alexander_fq, make_conjugation, make_dihedral, make_spherical, make_symplectic, QuandleTable};
use crate::algebra::FqContext;
use crate::knot::{Kink, LinkDiagram};
use crate::quandle::quandle_to_json;

/// Fixed catalog entries. Parametric families (R{n}, Sp_q_n, Sphere_q_n)
/// are resolved by `builtin` as well.
pub const NAMES: &[&str] = &[
    "R3",
    "R5",
    "F4_omega",
    "Z2T3_a",
    "Z2T3_b",
    "S6_transpositions",
    "S6_fourcycles",
    "Sp_5_1",
    "Sphere_5_2",
];

pub const DATA_ENV: &str = "QUANDLELAB_DATA";

/// QUANDLELAB_DATA if set, else the `data` directory of the workspace.
pub fn data_dir() -> PathBuf {
    match std::env::var_os(DATA_ENV) {
        Some(p) => PathBuf::from(p),
        None => PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data"),
    }
}

fn s4() -> Vec<Perm> {
    let n = 4;
    vec![perm::parse_cycles("(1234)", n).unwrap(), perm::parse_cycles("(12)", n).unwrap()]
}

/// Companion matrix of T over Z/2 for T^3 = c0 + c1 T + c2 T^2.
fn companion3(c: [i64; 3]) -> Vec<Vec<i64>> {
    vec![vec![0, 0, c[0]], vec![1, 0, c[1]], vec![0, 1, c[2]]]
}

fn parse_pair(rest: &str) -> Option<(u32, usize)> {
    let (a, b) = rest.split_once('_')?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// Builds a catalog quandle from its constructor.
pub fn builtin(name: &str) -> Result<QuandleTable> {
    let unknown = || Error::Invalid(format!("unknown quandle {name}"));
    match name {
        "F4_omega" => {
            let ctx = FqContext::new(2, 2)?;
            make_alexander_fq(&ctx, ctx.generator())
        }
        // Z[T]/(2, T^3+T^2+1)
        "Z2T3_a" => make_alexander(&[2, 2, 2], &companion3([1, 0, 1])),
        // Z[T]/(2, T^3+T+1)
        "Z2T3_b" => make_alexander(&[2, 2, 2], &companion3([1, 1, 0])),
        "S6_transpositions" => make_conjugation(&s4(), &perm::parse_cycles("(12)", 4)?),
        "S6_fourcycles" => make_conjugation(&s4(), &perm::parse_cycles("(1234)", 4)?),
        _ => {
            if let Some(rest) = name.strip_prefix("Sp_") {
                let (q, n) = parse_pair(rest).ok_or_else(unknown)?;
                make_symplectic(q, n)
            } else if let Some(rest) = name.strip_prefix("Sphere_") {
                let (q, n) = parse_pair(rest).ok_or_else(unknown)?;
                make_spherical(q, n)
            } else if let Some(rest) = name.strip_prefix('R') {
                let n: u64 = rest.parse().map_err(|_| unknown())?;
                if n < 2 {
                    return Err(unknown());
                }
                make_dihedral(n)
            } else {
                Err(unknown())
            }
        }
    }
}

/// Resolves a quandle by catalog name, preferring data/quandles/<name>.json.
pub fn load(name: &str) -> Result<QuandleTable> {
    let path = data_dir().join("quandles").join(format!("{name}.json"));
    if path.is_file() {
        let text = std::fs::read_to_string(&path)?;
        return quandle_from_json(&serde_json::from_str::<serde_json::Value>(&text)?);
    }
    builtin(name)
}

/// Resolves either a catalog name or a path to a quandle JSON file.
pub fn resolve(spec: &str) -> Result<QuandleTable> {
    let p = std::path::Path::new(spec);
    if spec.ends_with(".json") || p.is_file() {
        let text = std::fs::read_to_string(p)?;
        return quandle_from_json(&serde_json::from_str::<serde_json::Value>(&text)?);
    }
    load(spec)
}

/// Knot diagrams shipped with the catalog.
pub const KNOTS: &[&str] = &[
    "unknot_kink",
    "unknot_kink2",
    "unknot_braid",
    "3_1",
    "3_1_braid",
    "3_1_kink",
    "4_1",
    "4_1_braid",
    "5_1",
    "T2_5_braid",
    "5_2",
    "6_1",
    "T3_4",
    "hopf",
];

/// Diagrams of one knot type, related by Reidemeister moves.
pub const KNOT_FAMILIES: &[(&str, &[&str])] = &[
    ("unknot", &["unknot_kink", "unknot_kink2", "unknot_braid"]),
    ("3_1", &["3_1", "3_1_braid", "3_1_kink"]),
    ("4_1", &["4_1", "4_1_braid"]),
    ("T(2,5)", &["5_1", "T2_5_braid"]),
];

pub fn builtin_knot(name: &str) -> Result<LinkDiagram> {
    let pd = |s: &str| LinkDiagram::parse(s);
    match name {
        "unknot_kink" => pd("[[1,2,2,1]]"),
        "unknot_kink2" => pd("[[1,1,2,2]]")?.with_kink(2, Kink::NegativeRight),
        "unknot_braid" => LinkDiagram::from_braid(3, &[1, -2]),
        "3_1" => pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"),
        "3_1_braid" => LinkDiagram::from_braid(2, &[-1, -1, -1]),
        "3_1_kink" => pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]")?.with_kink(2, Kink::PositiveLeft),
        "4_1" => pd("X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]"),
        "4_1_braid" => LinkDiagram::from_braid(3, &[1, -2, 1, -2]),
        "5_1" => pd("X[1,6,2,7],X[3,8,4,9],X[5,10,6,1],X[7,2,8,3],X[9,4,10,5]"),
        "T2_5_braid" => LinkDiagram::from_braid(2, &[-1; 5]),
        "5_2" => pd("X[1,4,2,5],X[3,8,4,9],X[5,10,6,1],X[9,6,10,7],X[7,2,8,3]"),
        "6_1" => pd("X[1,4,2,5],X[7,10,8,11],X[3,9,4,8],X[9,3,10,2],X[5,12,6,1],X[11,6,12,7]"),
        "T3_4" => LinkDiagram::from_braid(3, &[1, 2, 1, 2, 1, 2, 1, 2]),
        "hopf" => LinkDiagram::from_braid(2, &[1, 1]),
        _ => Err(Error::Invalid(format!("unknown knot {name}"))),
    }
}

/// Resolves a knot by catalog name (data/knots/<name>.json first) or a PD file path.
pub fn knot(spec: &str) -> Result<LinkDiagram> {
    let p = std::path::Path::new(spec);
    if spec.ends_with(".json") || p.is_file() {
        return LinkDiagram::parse(&std::fs::read_to_string(p)?);
    }
    let path = data_dir().join("knots").join(format!("{spec}.json"));
    if path.is_file() {
        return LinkDiagram::parse(&std::fs::read_to_string(&path)?);
    }
    builtin_knot(spec)
}

/// Writes every catalog quandle and knot as JSON under `dir`.
pub fn export(dir: &std::path::Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    std::fs::create_dir_all(dir.join("quandles"))?;
    std::fs::create_dir_all(dir.join("knots"))?;
    for name in NAMES {
        let path = dir.join("quandles").join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&quandle_to_json(&builtin(name)?))? + "\n")?;
        written.push(path);
    }
    for name in KNOTS {
        let path = dir.join("knots").join(format!("{name}.json"));
        std::fs::write(&path, serde_json::to_string(&builtin_knot(name)?.to_json())? + "\n")?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_types() {
        let want = [
            ("R3", 3, 2),
            ("F4_omega", 4, 3),
            ("Z2T3_a", 8, 7),
            ("Z2T3_b", 8, 7),
            ("S6_transpositions", 6, 2),
            ("S6_fourcycles", 6, 4),
            ("Sp_5_1", 24, 5),
        ];
        for (name, size, ty) in want {
            let q = builtin(name).unwrap();
            q.check_axioms().unwrap();
            assert_eq!((q.size(), q.type_of()), (size, ty), "{name}");
            assert!(q.is_connected(), "{name}");
        }
        assert!(builtin("R1").is_err());
        assert!(builtin("nonsense").is_err());
    }
}
