//! Oriented link diagrams from PD codes.
//!
//! A crossing (a,b,c,d) lists its edges counterclockwise from the incoming
//! under edge, so the under strand runs a → c. The crossing is positive when
//! the over strand runs d → b.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{power, Presentation, Word};

pub type Pd = [i64; 4];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Edges in travel order, starting at the lowest label.
    pub edges: Vec<i64>,
    pub base_arc: usize,
    /// Crossings passed underneath, in travel order from the lowest edge.
    pub under_passages: Vec<usize>,
    pub writhe: i64,
}

/// Triple (i, j, k) of a crossing: under arcs i, k and over arc j with
/// colouring rule C(k) = C(i) ◁ C(j).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingArcs {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub sign: i64,
}

#[derive(Debug, Clone)]
pub struct LinkDiagram {
    pd: Vec<Pd>,
    crossings: Vec<CrossingArcs>,
    /// Edge labels of each arc, sorted; arcs are ordered by lowest label.
    arcs: Vec<Vec<i64>>,
    edge_arc: BTreeMap<i64, usize>,
    components: Vec<Component>,
    /// Slot (4·crossing + position) through which each edge enters a crossing.
    head: BTreeMap<i64, usize>,
}

#[derive(Serialize, Deserialize)]
struct PdJson {
    pd: Vec<Vec<i64>>,
}

/// R1 kink shapes, named by the crossing inserted on edge e with new edges f, g.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kink {
    /// (e, f, f, g)
    NegativeLeft,
    /// (e, g, f, f)
    PositiveLeft,
    /// (f, e, g, f)
    NegativeRight,
    /// (f, f, g, e)
    PositiveRight,
}

impl LinkDiagram {
    pub fn from_pd(pd: &[Pd]) -> Result<Self> {
        if pd.is_empty() {
            return Err(Error::InconsistentDiagram("a PD code needs at least one crossing".into()));
        }
        let slots = pd.len() * 4;
        let label = |s: usize| pd[s / 4][s % 4];
        let mut occ: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for s in 0..slots {
            occ.entry(label(s)).or_default().push(s);
        }
        if let Some((e, v)) = occ.iter().find(|(_, v)| v.len() != 2) {
            return Err(Error::InconsistentDiagram(format!("edge {e} appears {} times", v.len())));
        }
        let mut other = vec![0usize; slots];
        for v in occ.values() {
            other[v[0]] = v[1];
            other[v[1]] = v[0];
        }
        let exit = |s: usize| 4 * (s / 4) + (s % 4 + 2) % 4;
        let trace = |start: usize| -> Vec<usize> {
            let mut out = vec![start];
            let mut s = other[exit(start)];
            while s != start {
                out.push(s);
                s = other[exit(s)];
            }
            out
        };

        let mut entered = vec![false; slots];
        let mut comp_of_edge: BTreeMap<i64, usize> = BTreeMap::new();
        let mut traversals: Vec<Vec<usize>> = Vec::new();
        for (&e, v) in &occ {
            if comp_of_edge.contains_key(&e) {
                continue;
            }
            let fwd = trace(v[0]);
            let bwd = trace(v[1]);
            let ok = |t: &[usize]| t.iter().all(|&s| s % 4 != 2);
            let forced = |t: &[usize]| t.iter().any(|&s| s % 4 == 0);
            let t = match (ok(&fwd), ok(&bwd)) {
                (true, false) => fwd,
                (false, true) => bwd,
                (true, true) if !forced(&fwd) && !forced(&bwd) => {
                    // a component that only passes over: follow increasing labels
                    let next = |t: &[usize]| label(t.get(1).copied().map(exit).unwrap_or(exit(t[0])));
                    if next(&fwd) <= next(&bwd) {
                        fwd
                    } else {
                        bwd
                    }
                }
                _ => return Err(Error::InconsistentDiagram(format!("cannot orient the component of edge {e}"))),
            };
            for &s in &t {
                entered[s] = true;
                comp_of_edge.insert(label(s), traversals.len());
            }
            traversals.push(t);
        }
        for c in 0..pd.len() {
            let e = &entered[4 * c..4 * c + 4];
            if !e[0] || e[2] || e[1] == e[3] {
                return Err(Error::InconsistentDiagram(format!("crossing {} is not a transverse crossing", c + 1)));
            }
        }

        // arcs: edges joined through over passages
        let labels: Vec<i64> = occ.keys().copied().collect();
        let pos: BTreeMap<i64, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in pd {
            let (a, b) = (find(&mut parent, pos[&x[1]]), find(&mut parent, pos[&x[3]]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for (i, &e) in labels.iter().enumerate() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(e);
        }
        let mut arcs: Vec<Vec<i64>> = groups.into_values().collect();
        arcs.sort();
        let edge_arc: BTreeMap<i64, usize> =
            arcs.iter().enumerate().flat_map(|(a, es)| es.iter().map(move |&e| (e, a))).collect();

        let crossings: Vec<CrossingArcs> = pd
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let sign = if entered[4 * c + 3] { 1 } else { -1 };
                let (ia, ic) = (edge_arc[&x[0]], edge_arc[&x[2]]);
                let (i, k) = if sign > 0 { (ia, ic) } else { (ic, ia) };
                CrossingArcs { i, j: edge_arc[&x[1]], k, sign }
            })
            .collect();

        let head: BTreeMap<i64, usize> = (0..slots).filter(|&s| entered[s]).map(|s| (label(s), s)).collect();
        let mut components = Vec::new();
        for t in &traversals {
            let cid = comp_of_edge[&label(t[0])];
            // rotate so that travel starts at the lowest edge
            let start = (0..t.len()).min_by_key(|&i| label(t[i])).unwrap();
            let order: Vec<usize> = t[start..].iter().chain(&t[..start]).copied().collect();
            let edges: Vec<i64> = order.iter().map(|&s| label(s)).collect();
            let under_passages: Vec<usize> = order.iter().filter(|&&s| s % 4 == 0).map(|&s| s / 4).collect();
            let writhe = under_passages
                .iter()
                .filter(|&&c| comp_of_edge[&pd[c][1]] == cid)
                .map(|&c| crossings[c].sign)
                .sum();
            components.push(Component { base_arc: edge_arc[&edges[0]], edges, under_passages, writhe });
        }
        components.sort_by_key(|c| c.edges[0]);

        Ok(LinkDiagram { pd: pd.to_vec(), crossings, arcs, edge_arc, components, head })
    }

    /// Accepts {"pd": [[a,b,c,d], ...]}, a bare list of lists, or
    /// Knot Atlas text such as `X[1,4,2,5], X[3,6,4,1], ...`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('{') {
            let j: PdJson = serde_json::from_str(t)?;
            return Self::from_pd(&to_quads(&j.pd)?);
        }
        if t.starts_with("[[") || t.starts_with("[ [") {
            let v: Vec<Vec<i64>> = serde_json::from_str(t)?;
            return Self::from_pd(&to_quads(&v)?);
        }
        let mut nums = Vec::new();
        let mut cur = String::new();
        for ch in t.chars().chain(std::iter::once(' ')) {
            if ch.is_ascii_digit() || (ch == '-' && cur.is_empty()) {
                cur.push(ch);
            } else {
                if !cur.is_empty() {
                    nums.push(cur.parse::<i64>().map_err(|_| Error::Parse(format!("bad number {cur}")))?);
                    cur.clear();
                }
                if !(ch.is_whitespace() || "[](),;X".contains(ch) || ch == 'P' || ch == 'D') {
                    return Err(Error::Parse(format!("unexpected character {ch:?} in PD code")));
                }
            }
        }
        if nums.is_empty() || nums.len() % 4 != 0 {
            return Err(Error::Parse("PD code must list four edges per crossing".into()));
        }
        let quads: Vec<Vec<i64>> = nums.chunks(4).map(|c| c.to_vec()).collect();
        Self::from_pd(&to_quads(&quads)?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PdJson { pd: self.pd.iter().map(|x| x.to_vec()).collect() }).expect("pd serializes")
    }

    /// Closure of a braid on `strands` strands; letters ±i stand for σ_i^{±1}.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self> {
        if strands < 1 || word.iter().any(|&l| l == 0 || l.unsigned_abs() as usize >= strands) {
            return Err(Error::Invalid("braid letters must lie in ±1..strands-1".into()));
        }
        let mut cur: Vec<i64> = (1..=strands as i64).collect();
        let mut next = strands as i64 + 1;
        let mut pd = Vec::with_capacity(word.len());
        for &l in word {
            let i = l.unsigned_abs() as usize - 1;
            let (over_out, under_out) = (next, next + 1);
            next += 2;
            if l > 0 {
                pd.push([cur[i + 1], over_out, under_out, cur[i]]);
            } else {
                pd.push([cur[i], cur[i + 1], under_out, over_out]);
            }
            // the under strand always ends at the position the over strand left
            if l > 0 {
                cur[i] = under_out;
                cur[i + 1] = over_out;
            } else {
                cur[i] = over_out;
                cur[i + 1] = under_out;
            }
        }
        let close: BTreeMap<i64, i64> = cur.iter().enumerate().map(|(p, &e)| (e, p as i64 + 1)).collect();
        for x in pd.iter_mut() {
            for e in x.iter_mut() {
                if let Some(&f) = close.get(e) {
                    *e = f;
                }
            }
        }
        if (1..=strands as i64).any(|s| cur[s as usize - 1] == s) {
            return Err(Error::Invalid("every strand must pass through a crossing".into()));
        }
        Self::from_pd(&pd)
    }

    /// Mirror image with reversed orientation: the colouring sets agree and
    /// every crossing changes sign.
    pub fn mirror(&self) -> Result<Self> {
        let pd: Vec<Pd> = self.pd.iter().map(|&[a, b, c, d]| [c, b, a, d]).collect();
        Self::from_pd(&pd)
    }

    /// Adds an R1 kink on edge `e`, just before the crossing that e enters.
    pub fn with_kink(&self, e: i64, kink: Kink) -> Result<Self> {
        let &h = self.head.get(&e).ok_or_else(|| Error::Invalid(format!("no edge {e}")))?;
        let max = self.pd.iter().flatten().copied().max().unwrap();
        let (f, g) = (max + 1, max + 2);
        let mut pd = self.pd.clone();
        pd[h / 4][h % 4] = g;
        pd.push(match kink {
            Kink::NegativeLeft => [e, f, f, g],
            Kink::PositiveLeft => [e, g, f, f],
            Kink::NegativeRight => [f, e, g, f],
            Kink::PositiveRight => [f, f, g, e],
        });
        Self::from_pd(&pd)
    }

    pub fn pd(&self) -> &[Pd] {
        &self.pd
    }

    pub fn crossings(&self) -> &[CrossingArcs] {
        &self.crossings
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn arc_edges(&self, a: usize) -> &[i64] {
        &self.arcs[a]
    }

    pub fn arc_of_edge(&self, e: i64) -> Option<usize> {
        self.edge_arc.get(&e).copied()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign).sum()
    }

    /// One generator per arc (1-based), relator x_k^{-1} x_j^{-1} x_i x_j per crossing.
    pub fn wirtinger(&self) -> Presentation {
        let g = |a: usize| a as i32 + 1;
        let rels = self.crossings.iter().map(|c| vec![-g(c.k), -g(c.j), g(c.i), g(c.j)]).collect();
        Presentation::new(self.arcs.len(), rels).expect("arc generators are in range")
    }

    pub fn meridian(&self, comp: usize) -> Word {
        vec![self.components[comp].base_arc as i32 + 1]
    }

    /// Preferred longitude W · m^{-w}: W collects x_j^{ε} for every under
    /// passage met from the lowest edge on, w is the self-writhe.
    pub fn longitude(&self, comp: usize) -> Word {
        let c = &self.components[comp];
        let mut w: Word = c
            .under_passages
            .iter()
            .map(|&x| {
                let cr = self.crossings[x];
                let j = cr.j as i32 + 1;
                if cr.sign > 0 {
                    j
                } else {
                    -j
                }
            })
            .collect();
        w.extend(power(c.base_arc, -c.writhe));
        w
    }
}

fn to_quads(v: &[Vec<i64>]) -> Result<Vec<Pd>> {
    v.iter()
        .map(|x| <[i64; 4]>::try_from(x.as_slice()).map_err(|_| Error::Parse("each crossing needs four edges".into())))
        .collect()
}
