//! The t-fold cyclic branched cover of a knot and the map θ from its
//! fundamental group into Ker ε.
//!
//! Generators γ_{i,s} (arc i, sheet s mod t) are numbered i·t + s. The
//! relators are γ_{k,s} = γ_{j,s-1}^{-1} γ_{i,s-1} γ_{j,s} for every crossing
//! and sheet, and γ_{0,s} = 1 for the base arc.

use std::collections::{BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{abelianize_presentation, AbGroup};
use crate::error::{Error, Result};
use crate::group::{AsElement, AsGroup, Presentation};
use crate::knot::LinkDiagram;

#[derive(Debug, Clone)]
pub struct CoverPresentation {
    pub fold: usize,
    pub arcs: usize,
    pub base_arc: usize,
    pub presentation: Presentation,
}

impl CoverPresentation {
    pub fn generator(&self, arc: usize, sheet: i64) -> usize {
        arc * self.fold + sheet.rem_euclid(self.fold as i64) as usize
    }
}

fn require_knot(d: &LinkDiagram) -> Result<()> {
    if d.components().len() != 1 {
        return Err(Error::Invalid("cyclic branched covers are only built for knots".into()));
    }
    Ok(())
}

pub fn branched_cover_presentation(d: &LinkDiagram, fold: usize) -> Result<CoverPresentation> {
    require_knot(d)?;
    if fold == 0 {
        return Err(Error::Invalid("fold must be positive".into()));
    }
    let n = d.num_arcs();
    let base = d.components()[0].base_arc;
    let mut cp = CoverPresentation { fold, arcs: n, base_arc: base, presentation: Presentation { gens: n * fold, relators: vec![] } };
    let g = |a: usize, s: i64| cp.generator(a, s) as i32 + 1;
    let mut rels = Vec::new();
    for x in d.crossings() {
        for s in 0..fold as i64 {
            rels.push(vec![-g(x.k, s), -g(x.j, s - 1), g(x.i, s - 1), g(x.j, s)]);
        }
    }
    for s in 0..fold as i64 {
        rels.push(vec![g(base, s)]);
    }
    cp.presentation = Presentation::new(n * fold, rels)?;
    Ok(cp)
}

/// H_1 of the t-fold cyclic branched cover.
pub fn cover_homology(d: &LinkDiagram, fold: usize) -> Result<AbGroup> {
    abelianize_presentation(&branched_cover_presentation(d, fold)?.presentation)
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaReport {
    pub well_defined: bool,
    pub equivariant: bool,
    pub image_order: usize,
    /// Kernel cosets of the image, sorted.
    #[serde(skip)]
    pub image: Vec<u32>,
}

/// θ(γ_{i,s}) = e_{x_0}^{s-1} e_{C(i)} e_{x_0}^{-s}, x_0 the colour of the base arc.
pub fn theta_values(cp: &CoverPresentation, g: &AsGroup, c: &[usize]) -> Vec<AsElement> {
    let e0 = g.generator(c[cp.base_arc]);
    (0..cp.arcs * cp.fold)
        .map(|gi| {
            let (a, s) = ((gi / cp.fold) as i64, (gi % cp.fold) as i64);
            let left = g.pow(e0, s - 1);
            g.mul(g.mul(left, g.generator(c[a as usize])), g.pow(e0, -s))
        })
        .collect()
}

pub fn theta(d: &LinkDiagram, g: &AsGroup, c: &[usize]) -> Result<ThetaReport> {
    let q = g.quandle();
    if !crate::knot::is_coloring(d, q, c) {
        return Err(Error::Invalid("not a colouring of this diagram".into()));
    }
    let fold = q.type_of() as usize;
    let cp = branched_cover_presentation(d, fold)?;
    let vals = theta_values(&cp, g, c);
    let eval = |w: &[i32]| {
        w.iter().fold(g.identity(), |acc, &l| {
            let v = vals[l.unsigned_abs() as usize - 1];
            g.mul(acc, if l > 0 { v } else { g.inv(v) })
        })
    };
    let in_kernel = vals.iter().all(|v| v.eps == 0);
    let relators_ok = cp.presentation.relators.par_iter().all(|r| eval(r) == g.identity());
    if !(in_kernel && relators_ok) {
        return Err(Error::Consistency("θ does not respect the cover relators".into()));
    }
    let e0 = g.generator(c[cp.base_arc]);
    let equivariant = (0..cp.arcs).all(|a| {
        (0..fold as i64).all(|s| {
            let next = vals[cp.generator(a, s + 1)];
            next == g.mul(g.mul(e0, vals[cp.generator(a, s)]), g.inv(e0))
        })
    });
    let image = closure(g, &vals);
    Ok(ThetaReport { well_defined: true, equivariant, image_order: image.len(), image })
}

/// Subgroup of Ker ε generated by `gens`, as sorted kernel cosets.
fn closure(g: &AsGroup, gens: &[AsElement]) -> Vec<u32> {
    let mut seen = BTreeSet::from([0u32]);
    let mut queue = VecDeque::from([g.identity()]);
    let gens: Vec<AsElement> = gens.iter().copied().filter(|x| *x != g.identity()).collect::<BTreeSet<_>>().into_iter().collect();
    while let Some(x) = queue.pop_front() {
        for &h in &gens {
            let y = g.mul(x, h);
            if seen.insert(y.coset) {
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Least sorted coset list among the conjugates h^{-1} S h, h = e_a^r k,
/// r below the type.
pub fn canonical_conjugate(g: &AsGroup, s: &[u32]) -> Vec<u32> {
    let fold = g.quandle().type_of() as usize;
    let ea = g.generator(g.base_point());
    let mut best = s.to_vec();
    for r in 0..fold as i64 {
        for k in 0..g.kernel_order() {
            let h = g.mul(g.pow(ea, r), g.kernel_element(k));
            let mut v: Vec<u32> = s.iter().map(|&c| g.conj(g.kernel_element(c as usize), h).coset).collect();
            v.sort_unstable();
            if v < best {
                best = v;
            }
        }
    }
    best
}
