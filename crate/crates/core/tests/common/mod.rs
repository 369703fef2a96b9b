#![allow(dead_code)]

use std::collections::BTreeMap;

use quandlelab::algebra::AbGroup;
use quandlelab::catalog::{builtin, builtin_knot, KNOTS, KNOT_FAMILIES, NAMES};
use quandlelab::cover::{cover_homology, theta};
use quandlelab::group::{clauwens_model, h2q_eisermann, AsGroup, StabilizerPresentation};
use quandlelab::knot::{
    cocycle_invariant, coloring_polynomial, enumerate_colorings, state_sum, state_sum_classes, LinkDiagram,
};
use quandlelab::rack::{boundary_matrix, homology_group_of, two_cocycles, Coefficients, Flavor, Limits};
use quandlelab::QuandleTable;

pub type Check = std::result::Result<(), String>;

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

pub fn catalog() -> Vec<(&'static str, QuandleTable)> {
    NAMES.iter().map(|&n| (n, builtin(n).expect("catalog builds"))).collect()
}

pub fn h(q: &QuandleTable, n: usize, flavor: Flavor, coeffs: Coefficients) -> Result<AbGroup, String> {
    homology_group_of(q, n, flavor, coeffs, Limits::default()).map_err(err("homology"))
}

pub fn axioms() -> Check {
    for (name, q) in catalog() {
        q.check_axioms().map_err(err(name))?;
    }
    Ok(())
}

pub fn type_divides_inn() -> Check {
    for (name, q) in catalog() {
        if !q.is_connected() {
            continue;
        }
        let inn = q.inner_group().map_err(err(name))?.order();
        let stab = inn / q.size() as u128;
        if inn % q.size() as u128 != 0 || stab % q.type_of() as u128 != 0 {
            return Err(format!("{name}: type {} does not divide |Inn|/|X| = {inn}/{}", q.type_of(), q.size()));
        }
    }
    Ok(())
}

pub fn boundary_squares_vanish() -> Check {
    for (name, q) in catalog() {
        for flavor in [Flavor::Rack, Flavor::Quandle] {
            for coeffs in [Coefficients::Point, Coefficients::Primitive] {
                let top = if q.size() <= 8 { 4 } else { 3 };
                for n in 2..=top {
                    let a = boundary_matrix(&q, n - 1, flavor, coeffs, Limits::default());
                    let b = boundary_matrix(&q, n, flavor, coeffs, Limits::default());
                    let (Ok(a), Ok(b)) = (a, b) else { continue };
                    if !a.mul(&b).map_err(err(name))?.is_zero() {
                        return Err(format!("{name}: ∂{}∂{} ≠ 0 ({flavor:?}, {coeffs:?})", n - 1, n));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn splittings() -> Check {
    for (name, q) in catalog() {
        let orbits = AbGroup::free(q.orbits().len());
        let pt = Coefficients::Point;
        let h1r = h(&q, 1, Flavor::Rack, pt)?;
        if h1r != orbits {
            return Err(format!("{name}: H1R = {h1r}"));
        }
        let h2r = h(&q, 2, Flavor::Rack, pt)?;
        let h2q = h(&q, 2, Flavor::Quandle, pt)?;
        if h2r != h2q.direct_sum(&orbits) {
            return Err(format!("{name}: H2R = {h2r}, H2Q = {h2q}"));
        }
        if q.size() <= 8 {
            let h3r = h(&q, 3, Flavor::Rack, pt)?;
            let h3q = h(&q, 3, Flavor::Quandle, pt)?;
            if h3r != h3q.direct_sum(&h2q).direct_sum(&orbits) {
                return Err(format!("{name}: H3R = {h3r}, H3Q = {h3q}, H2Q = {h2q}"));
            }
        }
    }
    Ok(())
}

pub fn shift_and_stabilizers() -> Check {
    for (name, q) in catalog() {
        let h1xx = h(&q, 1, Flavor::Rack, Coefficients::Primitive)?;
        let h2r = h(&q, 2, Flavor::Rack, Coefficients::Point)?;
        if h1xx != h2r {
            return Err(format!("{name}: H1R(X,X) = {h1xx} but H2R(X) = {h2r}"));
        }
        let mut stabs = AbGroup::trivial();
        for o in q.orbits() {
            let sp = StabilizerPresentation::new(&q, o[0]).map_err(err(name))?;
            stabs = stabs.direct_sum(&sp.abelianization().map_err(err(name))?);
        }
        if stabs != h1xx {
            return Err(format!("{name}: ⊕ Stab_ab = {stabs} but H1R(X,X) = {h1xx}"));
        }
    }
    Ok(())
}

pub fn eisermann_matches_chains() -> Check {
    for (name, q) in catalog() {
        let e = h2q_eisermann(&q).map_err(err(name))?;
        let c = h(&q, 2, Flavor::Quandle, Coefficients::Point)?;
        if e != c {
            return Err(format!("{name}: Eisermann {e}, chains {c}"));
        }
    }
    Ok(())
}

pub fn clauwens() -> Check {
    for (name, q) in catalog() {
        if q.alexander.is_none() || !q.is_connected() {
            continue;
        }
        let m = clauwens_model(&q).map_err(err(name))?;
        let g = AsGroup::new(&q, 1_000_000).map_err(err(name))?;
        if m.predicted_kernel_order != g.kernel_order() as u64 {
            return Err(format!("{name}: |Ker ε| = {} but Clauwens predicts {}", g.kernel_order(), m.predicted_kernel_order));
        }
        let h2 = h(&q, 2, Flavor::Quandle, Coefficients::Point)?;
        if h2 != m.coker_mu {
            return Err(format!("{name}: H2Q = {h2} but Coker μ = {}", m.coker_mu));
        }
    }
    Ok(())
}

/// Everything the fixtures of one knot must agree on, for one quandle.
#[derive(Debug, PartialEq, Eq)]
struct Fingerprint {
    colorings: usize,
    cocycle: Vec<BTreeMap<u64, usize>>,
    state_sums: Vec<(Vec<i64>, Option<u64>)>,
    colpoly: Vec<(usize, Vec<i64>)>,
}

fn fingerprint(d: &LinkDiagram, q: &QuandleTable, cocycles: &[quandlelab::rack::Cocycle]) -> Result<Fingerprint, String> {
    let cs = enumerate_colorings(d, q);
    let mut cocycle = Vec::new();
    for phi in cocycles {
        cocycle.push(cocycle_invariant(d, q, phi, &cs).map_err(err("cocycle"))?);
    }
    let ss = state_sum_classes(d, q, &cs).map_err(err("state sum"))?;
    let cp = coloring_polynomial(d, q, &cs).map_err(err("colouring polynomial"))?;
    for (s, p) in ss.classes.iter().zip(&cp) {
        if s.order != p[0].order {
            return Err(format!("state-sum order {:?} differs from colouring-polynomial order {:?}", s.order, p[0].order));
        }
    }
    let mut state_sums: Vec<_> = ss.classes.into_iter().map(|c| (c.coordinates, c.order)).collect();
    state_sums.sort();
    let mut colpoly: Vec<_> = cp.into_iter().map(|v| (v[0].orbit, v[0].coordinates.clone())).collect();
    colpoly.sort();
    Ok(Fingerprint { colorings: cs.len(), cocycle, state_sums, colpoly })
}

pub fn diagram_invariance() -> Check {
    for (qname, q) in catalog() {
        let h2 = h(&q, 2, Flavor::Quandle, Coefficients::Point)?;
        let m = h2.exponent();
        let cocycles: Vec<_> = if m > 1 {
            two_cocycles(&q, m).map_err(err(qname))?.into_iter().map(|(c, _)| c).collect()
        } else {
            Vec::new()
        };
        for (family, members) in KNOT_FAMILIES {
            let mut first: Option<Fingerprint> = None;
            for m in *members {
                let d = builtin_knot(m).map_err(err(m))?;
                let f = fingerprint(&d, &q, &cocycles).map_err(|e| format!("{m}/{qname}: {e}"))?;
                match &first {
                    None => first = Some(f),
                    Some(f0) if *f0 != f => {
                        return Err(format!("{family} with {qname}: {m} disagrees with {}", members[0]));
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(())
}

pub fn mirror_negates_state_sums() -> Check {
    for (qname, q) in catalog() {
        for k in KNOTS {
            let d = builtin_knot(k).map_err(err(k))?;
            let m = d.mirror().map_err(err(k))?;
            let cs = enumerate_colorings(&d, &q);
            if enumerate_colorings(&m, &q) != cs {
                return Err(format!("{k}/{qname}: mirror has different colourings"));
            }
            for c in &cs {
                let mut neg = state_sum(&d, c);
                neg.values_mut().for_each(|v| *v = -*v);
                if state_sum(&m, c) != neg {
                    return Err(format!("{k}/{qname}: mirror does not negate the state sum"));
                }
            }
        }
    }
    Ok(())
}

pub fn cover_homology_invariance() -> Check {
    for (family, members) in KNOT_FAMILIES {
        for t in 1..=4 {
            let groups: Vec<AbGroup> = members
                .iter()
                .map(|m| cover_homology(&builtin_knot(m).unwrap(), t))
                .collect::<Result<_, _>>()
                .map_err(err(family))?;
            if groups.iter().any(|g| *g != groups[0]) {
                return Err(format!("{family}, t = {t}: {groups:?}"));
            }
        }
    }
    Ok(())
}

pub fn theta_everywhere() -> Check {
    for (qname, q) in catalog() {
        if !q.is_connected() {
            continue;
        }
        let g = AsGroup::new(&q, 1_000_000).map_err(err(qname))?;
        for k in KNOTS {
            let d = builtin_knot(k).map_err(err(k))?;
            if d.components().len() != 1 {
                continue;
            }
            for c in enumerate_colorings(&d, &q) {
                let r = theta(&d, &g, &c).map_err(|e| format!("{k}/{qname}: {e}"))?;
                if !(r.well_defined && r.equivariant) {
                    return Err(format!("{k}/{qname}: colouring {c:?} gives {r:?}"));
                }
            }
        }
    }
    Ok(())
}

pub const SUITE: &[(&str, fn() -> Check)] = &[
    ("quandle axioms", axioms),
    ("type divides |Inn|/|X|", type_divides_inn),
    ("boundary squares vanish", boundary_squares_vanish),
    ("rack/quandle splittings", splittings),
    ("H1R(X,X) = H2R(X) = sum of Stab_ab", shift_and_stabilizers),
    ("Eisermann = chain complex", eisermann_matches_chains),
    ("Clauwens prediction", clauwens),
    ("diagram invariance", diagram_invariance),
    ("mirror negates state sums", mirror_negates_state_sums),
    ("cover homology invariance", cover_homology_invariance),
    ("theta well defined and equivariant", theta_everywhere),
];
