//! Link diagrams, quandle colourings and the invariants built from them.

mod diagram;

use std::collections::BTreeMap;

use rayon::prelude::*;

pub use diagram::{Component, CrossingArcs, Kink, LinkDiagram, Pd};

use crate::error::{Error, Result};
use crate::group::{free_reduce, split, AsGroup, StabilizerPresentation, Word};
use crate::algebra::{AbGroup, CoordinateMap};
use crate::quandle::QuandleTable;
use crate::rack::{Chain, ClassifyingMap, Coefficients, Cocycle, CycleClass, Flavor, Limits};

/// Arc colours indexed by arc.
pub type Coloring = Vec<usize>;

pub fn is_coloring(d: &LinkDiagram, q: &QuandleTable, c: &[usize]) -> bool {
    c.len() == d.num_arcs() && c.iter().all(|&x| x < q.size()) && d.crossings().iter().all(|x| c[x.k] == q.op(c[x.i], c[x.j]))
}

/// Arcs ordered so that each one shares as many crossings as possible with
/// the arcs before it; ties go to the lower index.
fn search_order(d: &LinkDiagram) -> Vec<usize> {
    let n = d.num_arcs();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let score = |a: usize| {
            d.crossings()
                .iter()
                .filter(|x| [x.i, x.j, x.k].contains(&a))
                .map(|x| [x.i, x.j, x.k].iter().filter(|&&b| b != a && placed[b]).count())
                .sum::<usize>()
        };
        let a = (0..n).filter(|&a| !placed[a]).max_by_key(|&a| (score(a), std::cmp::Reverse(a))).unwrap();
        placed[a] = true;
        order.push(a);
    }
    order
}

/// Fills in colours forced by the crossings. Returns false on a conflict.
fn propagate(d: &LinkDiagram, q: &QuandleTable, c: &mut [Option<usize>]) -> bool {
    loop {
        let mut changed = false;
        for x in d.crossings() {
            match (c[x.i], c[x.j], c[x.k]) {
                (Some(i), Some(j), Some(k)) => {
                    if q.op(i, j) != k {
                        return false;
                    }
                }
                (Some(i), Some(j), None) => {
                    c[x.k] = Some(q.op(i, j));
                    changed = true;
                }
                (None, Some(j), Some(k)) => {
                    c[x.i] = Some(q.inv_op(k, j));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(d: &LinkDiagram, q: &QuandleTable, order: &[usize], c: &mut Vec<Option<usize>>, out: &mut Vec<Coloring>) {
    if !propagate(d, q, c) {
        return;
    }
    match order.iter().find(|&&a| c[a].is_none()) {
        None => out.push(c.iter().map(|x| x.unwrap()).collect()),
        Some(&a) => {
            for v in 0..q.size() {
                let saved = c.clone();
                c[a] = Some(v);
                search(d, q, order, c, out);
                *c = saved;
            }
        }
    }
}

/// All colourings, sorted lexicographically.
pub fn enumerate_colorings(d: &LinkDiagram, q: &QuandleTable) -> Vec<Coloring> {
    let order = search_order(d);
    let first = order[0];
    let mut all: Vec<Coloring> = (0..q.size())
        .into_par_iter()
        .flat_map_iter(|v| {
            let mut c = vec![None; d.num_arcs()];
            c[first] = Some(v);
            let mut out = Vec::new();
            search(d, q, &order, &mut c, &mut out);
            out
        })
        .collect();
    all.sort();
    all
}

/// The image of a word in the arc generators under e_a ↦ e_{C(a)}.
pub fn gamma_word(c: &[usize], w: &[i32]) -> Word {
    w.iter()
        .map(|&l| {
            let (a, pos) = split(l);
            let x = c[a] as i32 + 1;
            if pos {
                x
            } else {
                -x
            }
        })
        .collect()
}

/// Right action of a word of As(X) on X.
pub fn act(q: &QuandleTable, x: usize, w: &[i32]) -> usize {
    w.iter().fold(x, |y, &l| {
        let (z, pos) = split(l);
        if pos {
            q.op(y, z)
        } else {
            q.inv_op(y, z)
        }
    })
}

/// Verifies the homomorphism Γ_C: relators map to 1, meridians to e_{x_i},
/// and x_i · Γ_C(l_i) = x_i.
pub fn gamma_check(d: &LinkDiagram, q: &QuandleTable, c: &[usize], g: Option<&AsGroup>) -> Result<()> {
    if !is_coloring(d, q, c) {
        return Err(Error::Invalid("not a colouring of this diagram".into()));
    }
    let pres = d.wirtinger();
    if let Some(g) = g {
        for (r, rel) in pres.relators.iter().enumerate() {
            if g.eval_word(&gamma_word(c, rel)) != g.identity() {
                return Err(Error::Consistency(format!("relator of crossing {} does not map to 1", r + 1)));
            }
        }
    }
    for (i, comp) in d.components().iter().enumerate() {
        let m = gamma_word(c, &d.meridian(i));
        if m != vec![c[comp.base_arc] as i32 + 1] {
            return Err(Error::Consistency(format!("meridian {} is not a generator", i + 1)));
        }
        let x = c[comp.base_arc];
        if act(q, x, &gamma_word(c, &d.longitude(i))) != x {
            return Err(Error::Consistency(format!("longitude {} moves its base colour", i + 1)));
        }
    }
    Ok(())
}

/// Σ_τ ε_τ (C(γ_i), C(γ_j)).
pub fn state_sum(d: &LinkDiagram, c: &[usize]) -> Chain {
    let mut z = Chain::new();
    for x in d.crossings() {
        *z.entry(vec![c[x.i], c[x.j]]).or_insert(0) += x.sign;
    }
    z.retain(|t, v| *v != 0 && t[0] != t[1]);
    z
}

pub struct StateSumClasses {
    pub group: AbGroup,
    pub classes: Vec<CycleClass>,
}

/// Classes of the state-sum cycles in H_2^Q(X), one per colouring.
pub fn state_sum_classes(d: &LinkDiagram, q: &QuandleTable, colorings: &[Coloring]) -> Result<StateSumClasses> {
    let cm = ClassifyingMap::new(q, 2, Flavor::Quandle, Coefficients::Point, Limits::default())?;
    let classes = colorings.iter().map(|c| cm.classify(&state_sum(d, c))).collect::<Result<_>>()?;
    Ok(StateSumClasses { group: cm.group.clone(), classes })
}

/// The cocycle invariant as a multiset {value: multiplicity}.
pub fn cocycle_invariant(d: &LinkDiagram, q: &QuandleTable, phi: &Cocycle, colorings: &[Coloring]) -> Result<BTreeMap<u64, usize>> {
    phi.check(q)?;
    let m = phi.modulus as i64;
    let mut out = BTreeMap::new();
    for c in colorings {
        let v: i64 = d.crossings().iter().map(|x| x.sign * phi.value(c[x.i], c[x.j]) as i64).sum();
        *out.entry(v.rem_euclid(m) as u64).or_insert(0) += 1;
    }
    Ok(out)
}

/// Class of Γ_C(l_i) in Stab(x)_ab / <[e_x]> for the orbit of x = C(base arc).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LongitudeClass {
    pub orbit: usize,
    pub coordinates: Vec<i64>,
    pub order: Option<u64>,
}

/// Abelianized stabilizers of the orbit representatives, built once.
pub struct StabilizerClasses {
    quandle: QuandleTable,
    orbit_of: Vec<usize>,
    orbits: Vec<(StabilizerPresentation, AbGroup, CoordinateMap)>,
}

impl StabilizerClasses {
    pub fn new(q: &QuandleTable) -> Result<Self> {
        let orbits = q
            .orbits()
            .iter()
            .map(|o| {
                let sp = StabilizerPresentation::new(q, o[0])?;
                let (g, cm) = sp.reduced_abelianization()?;
                Ok((sp, g, cm))
            })
            .collect::<Result<_>>()?;
        Ok(StabilizerClasses { quandle: q.clone(), orbit_of: q.orbit_index(), orbits })
    }

    pub fn group(&self, orbit: usize) -> &AbGroup {
        &self.orbits[orbit].1
    }

    /// Class of a word of As(X) fixing x.
    pub fn classify(&self, x: usize, w: &[i32]) -> Result<LongitudeClass> {
        let o = self.orbit_of[x];
        let (sp, _, cm) = &self.orbits[o];
        let u = sp.transversal(x).ok_or_else(|| Error::Consistency("orbit point without transversal".into()))?;
        // u w u^{-1} fixes the orbit representative
        let mut v: Word = u.to_vec();
        v.extend_from_slice(w);
        v.extend(u.iter().rev().map(|&l| -l));
        let r = sp.rewrite(&free_reduce(&v))?;
        let coordinates = cm.coordinates(&sp.exponent_vector(&r))?;
        let order = cm.class_order(&coordinates);
        Ok(LongitudeClass { orbit: o, coordinates, order })
    }

    pub fn quandle(&self) -> &QuandleTable {
        &self.quandle
    }
}

/// Per colouring, the longitude class of every component.
pub fn coloring_polynomial(d: &LinkDiagram, q: &QuandleTable, colorings: &[Coloring]) -> Result<Vec<Vec<LongitudeClass>>> {
    let sc = StabilizerClasses::new(q)?;
    let multi = d.components().len() > 1;
    colorings
        .iter()
        .map(|c| {
            (0..d.components().len())
                .map(|i| {
                    let w = gamma_word(c, &d.longitude(i));
                    if multi && w.iter().map(|l| l.signum() as i64).sum::<i64>() != 0 {
                        return Err(Error::Invalid(format!(
                            "longitude of component {} is not in the kernel of its degree map",
                            i + 1
                        )));
                    }
                    sc.classify(c[d.components()[i].base_arc], &w)
                })
                .collect()
        })
        .collect()
}
