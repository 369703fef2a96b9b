//! Chain maps c_n from the quandle complex into the bar complex of As(X),
//! the homotopies h_n, and exhaustive checks of the identities they satisfy.
//!
//! Bar boundary (inhomogeneous, unnormalized):
//!   ∂(g_1,..,g_n) = (g_2,..,g_n) + Σ_{i<n} (-1)^i (.., g_i g_{i+1}, ..) + (-1)^n (g_1,..,g_{n-1})
//!
//! Signs. The rack boundary is
//! ∂^R(x_1..x_n) = Σ_i (-1)^i [(x_1◁x_i, .., x_{i-1}◁x_i, x_{i+1}, ..) - (.., x̂_i, ..)].
//! The homotopy checks use ∂'_n = (-1)^{n+1} ∂^R_n, i.e. ∂'_2(x,y) = (x) - (x◁y)
//! and ∂'_3 = ∂^R_3; with any other choice the identities fail already on R3.
//! The c_n intertwine ∂^gr with -∂^R.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{AsElement, AsGroup};
use crate::quandle::QuandleTable;
use crate::rack::boundary_terms;

pub type BarChain = BTreeMap<Vec<AsElement>, i64>;

fn add(ch: &mut BarChain, t: Vec<AsElement>, c: i64) {
    if c == 0 {
        return;
    }
    match ch.entry(t) {
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if *o.get() == 0 {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c);
        }
    }
}

fn add_all(ch: &mut BarChain, other: &BarChain, scale: i64) {
    for (t, &c) in other {
        add(ch, t.clone(), scale * c);
    }
}

pub fn bar_boundary(g: &AsGroup, ch: &BarChain) -> BarChain {
    let mut out = BarChain::new();
    for (t, &c) in ch {
        let n = t.len();
        if n == 0 {
            continue;
        }
        add(&mut out, t[1..].to_vec(), c);
        for i in 0..n - 1 {
            let mut u = t[..i].to_vec();
            u.push(g.mul(t[i], t[i + 1]));
            u.extend_from_slice(&t[i + 2..]);
            add(&mut out, u, if (i + 1) % 2 == 0 { c } else { -c });
        }
        add(&mut out, t[..n - 1].to_vec(), if n % 2 == 0 { c } else { -c });
    }
    out
}

/// The maps c_n and h_n for one quandle.
pub struct ChainMaps<'a> {
    g: &'a AsGroup,
    q: &'a QuandleTable,
    t: i64,
    /// powers[x][j] = e_x^j for 0 ≤ j ≤ t
    powers: Vec<Vec<AsElement>>,
}

impl<'a> ChainMaps<'a> {
    pub fn new(g: &'a AsGroup) -> Self {
        let q = g.quandle();
        let t = q.type_of() as i64;
        let powers = (0..q.size())
            .map(|x| {
                let e = g.generator(x);
                let mut v = vec![g.identity()];
                for j in 0..t as usize {
                    v.push(g.mul(v[j], e));
                }
                v
            })
            .collect();
        ChainMaps { g, q, t, powers }
    }

    fn e(&self, x: usize) -> AsElement {
        self.powers[x][1]
    }

    fn p(&self, x: usize, j: i64) -> AsElement {
        self.powers[x][j as usize]
    }

    pub fn c(&self, xs: &[usize]) -> BarChain {
        let q = self.q;
        let mut ch = BarChain::new();
        let terms: Vec<(Vec<usize>, i64)> = match *xs {
            [x] => vec![(vec![x], 1)],
            [x, y] => vec![(vec![x, y], 1), (vec![y, q.op(x, y)], -1)],
            [x, y, z] => {
                let (xy, xz, yz) = (q.op(x, y), q.op(x, z), q.op(y, z));
                let a = q.op(xy, z);
                vec![
                    (vec![x, y, z], 1),
                    (vec![x, z, yz], -1),
                    (vec![y, z, a], 1),
                    (vec![y, xy, z], -1),
                    (vec![z, xz, yz], 1),
                    (vec![z, yz, a], -1),
                ]
            }
            _ => panic!("c_n is defined for n = 1, 2, 3"),
        };
        for (t, c) in terms {
            add(&mut ch, t.iter().map(|&x| self.e(x)).collect(), c);
        }
        ch
    }

    pub fn h(&self, xs: &[usize]) -> BarChain {
        let q = self.q;
        let e = |x| self.e(x);
        let mut ch = BarChain::new();
        for j in 1..self.t {
            let p = |x| self.p(x, j);
            let terms: Vec<(Vec<AsElement>, i64)> = match *xs {
                [x] => vec![(vec![e(x), p(x)], 1)],
                [x, y] => {
                    let xy = q.op(x, y);
                    vec![
                        (vec![e(x), e(y), p(xy)], 1),
                        (vec![e(x), p(x), e(y)], -1),
                        (vec![e(y), e(xy), p(xy)], -1),
                        (vec![e(y), p(y), e(y)], 1),
                    ]
                }
                [x, y, z] => {
                    let (xy, xz, yz) = (q.op(x, y), q.op(x, z), q.op(y, z));
                    let a = q.op(xy, z);
                    vec![
                        (vec![e(x), e(y), e(z), p(a)], 1),
                        (vec![e(x), e(z), e(yz), p(a)], -1),
                        (vec![e(x), e(y), p(xy), e(z)], -1),
                        (vec![e(y), e(xy), e(z), p(a)], -1),
                        (vec![e(x), e(z), p(xz), e(yz)], 1),
                        (vec![e(z), e(xz), e(yz), p(a)], 1),
                        (vec![e(x), p(x), e(y), e(z)], 1),
                        (vec![e(x), p(x), e(z), e(yz)], -1),
                        (vec![e(y), e(z), e(a), p(a)], 1),
                        (vec![e(z), e(yz), e(a), p(a)], -1),
                        (vec![e(z), e(xz), p(xz), e(yz)], -1),
                        (vec![e(y), e(xy), p(xy), e(z)], 1),
                    ]
                }
                _ => panic!("h_n is defined for n = 1, 2, 3"),
            };
            for (t, c) in terms {
                add(&mut ch, t, c);
            }
        }
        ch
    }

    /// Applies a map defined on tuples to s·∂^R(xs).
    fn on_boundary(&self, xs: &[usize], s: i64, f: impl Fn(&[usize]) -> BarChain) -> BarChain {
        let mut out = BarChain::new();
        for (c, t) in boundary_terms(self.q, xs, false) {
            add_all(&mut out, &f(&t), s * c);
        }
        out
    }

    /// h_1 ∂'_2 - ∂^gr h_2 - t c_2 at (x, y).
    pub fn homotopy2_defect(&self, x: usize, y: usize) -> BarChain {
        let mut d = self.on_boundary(&[x, y], -1, |u| self.h(u));
        add_all(&mut d, &bar_boundary(self.g, &self.h(&[x, y])), -1);
        add_all(&mut d, &self.c(&[x, y]), -self.t);
        d
    }

    /// F(x,y,z) = t c_3 - h_2 ∂'_3 - ∂^gr h_3.
    pub fn homotopy3_f(&self, x: usize, y: usize, z: usize) -> BarChain {
        let mut f = BarChain::new();
        add_all(&mut f, &self.c(&[x, y, z]), self.t);
        add_all(&mut f, &self.on_boundary(&[x, y, z], 1, |u| self.h(u)), -1);
        add_all(&mut f, &bar_boundary(self.g, &self.h(&[x, y, z])), -1);
        f
    }

    /// ∂^gr c_n + c_{n-1} ∂^R_n at a tuple.
    pub fn chain_map_defect(&self, xs: &[usize]) -> BarChain {
        let mut d = bar_boundary(self.g, &self.c(xs));
        if xs.len() > 1 {
            add_all(&mut d, &self.on_boundary(xs, 1, |u| self.c(u)), 1);
        }
        d
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Mismatch {
    pub check: &'static str,
    pub tuple: Vec<usize>,
    pub terms: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainMapReport {
    pub quandle_size: usize,
    pub type_t: u64,
    pub faithful: bool,
    pub central_powers: bool,
    pub homotopy2: bool,
    pub homotopy3: bool,
    pub c3_degenerate_zero: bool,
    pub chain_map: bool,
    pub mismatches: Vec<Mismatch>,
}

impl ChainMapReport {
    pub fn passed(&self) -> bool {
        self.faithful && self.central_powers && self.homotopy2 && self.homotopy3 && self.c3_degenerate_zero && self.chain_map
    }
}

const MAX_REPORTED: usize = 20;

fn collect(check: &'static str, bad: Vec<(Vec<usize>, usize)>, out: &mut Vec<Mismatch>) -> bool {
    let ok = bad.is_empty();
    for (tuple, terms) in bad.into_iter().take(MAX_REPORTED) {
        out.push(Mismatch { check, tuple, terms });
    }
    ok
}

pub fn verify_central_powers(g: &AsGroup) -> bool {
    g.check_central_powers().is_ok()
}

/// Runs every check exhaustively over X^2 and X^3.
pub fn verify_chain_maps(g: &AsGroup) -> Result<ChainMapReport> {
    let q = g.quandle();
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let faithful = g.verify().is_ok();
    let n = q.size();
    let maps = ChainMaps::new(g);
    let mut mismatches = Vec::new();

    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z)))).collect();

    let bad21: Vec<_> = pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let d = maps.homotopy2_defect(x, y);
            (!d.is_empty()).then(|| (vec![x, y], d.len()))
        })
        .collect();
    let homotopy2 = collect("homotopy2", bad21, &mut mismatches);

    // x-independence of F: compare with the smallest x
    let bad23: Vec<_> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|yz| {
            let (y, z) = (yz / n, yz % n);
            let f0 = maps.homotopy3_f(0, y, z);
            (1..n)
                .filter_map(|x| {
                    let f = maps.homotopy3_f(x, y, z);
                    (f != f0).then(|| (vec![x, y, z], f.len()))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let homotopy3 = collect("homotopy3", bad23, &mut mismatches);

    let bad_c3: Vec<_> = pairs
        .iter()
        .filter_map(|&(x, z)| {
            let c = maps.c(&[x, x, z]);
            (!c.is_empty()).then(|| (vec![x, x, z], c.len()))
        })
        .collect();
    let c3_degenerate_zero = collect("c3_degenerate", bad_c3, &mut mismatches);

    let mut bad_cm: Vec<_> = pairs
        .par_iter()
        .filter_map(|&(x, y)| {
            let d = maps.chain_map_defect(&[x, y]);
            (!d.is_empty()).then(|| (vec![x, y], d.len()))
        })
        .collect();
    bad_cm.extend(triples.par_iter().filter_map(|&(x, y, z)| {
        let d = maps.chain_map_defect(&[x, y, z]);
        (!d.is_empty()).then(|| (vec![x, y, z], d.len()))
    }).collect::<Vec<_>>());
    let chain_map = collect("chain_map", bad_cm, &mut mismatches);

    Ok(ChainMapReport {
        quandle_size: n,
        type_t: q.type_of(),
        faithful,
        central_powers: verify_central_powers(g),
        homotopy2,
        homotopy3,
        c3_degenerate_zero,
        chain_map,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::make_dihedral;

    fn r3() -> AsGroup {
        AsGroup::new(&make_dihedral(3).unwrap(), 1000).unwrap()
    }

    #[test]
    fn bar_boundary_squares_to_zero() {
        let g = r3();
        let a = g.generator(0);
        let b = g.generator(1);
        let c = g.mul(a, g.inv(b));
        let ch = BarChain::from([(vec![a, b, c], 1), (vec![c, c, a], -2), (vec![b, a, g.identity()], 3)]);
        assert!(bar_boundary(&g, &bar_boundary(&g, &ch)).is_empty());
        // ∂(g,h) = (h) - (gh) + (g)
        let d = bar_boundary(&g, &BarChain::from([(vec![a, b], 1)]));
        let mut want = BarChain::new();
        add(&mut want, vec![b], 1);
        add(&mut want, vec![g.mul(a, b)], -1);
        add(&mut want, vec![a], 1);
        assert_eq!(d, want);
    }

    #[test]
    fn small_cases() {
        let g = r3();
        let m = ChainMaps::new(&g);
        assert!(m.c(&[1, 1]).is_empty());
        assert_eq!(m.h(&[0]).len(), 1);
        let rep = verify_chain_maps(&g).unwrap();
        assert!(rep.passed(), "{rep:?}");
    }
}
