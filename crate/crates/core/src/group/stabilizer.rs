//! Reidemeister-Schreier presentation of Stab(x0) < As(X), where As(X)
//! acts on the orbit of x0 by y·e_x = y◁x.

use std::collections::{BTreeMap, VecDeque};

use super::assoc::as_presentation;
use super::word::{gen, gen_inv, split, Letter, Presentation, Word};
use crate::algebra::{homology_at, AbGroup, CoordinateMap, IntMatrix};
use crate::error::{Error, Result};
use crate::quandle::QuandleTable;

#[derive(Debug, Clone)]
pub struct StabilizerPresentation {
    base: usize,
    n: usize,
    /// Orbit of the base point in breadth-first order.
    orbit: Vec<usize>,
    /// `transversal[y]`: word u_y with base·u_y = y, for y in the orbit.
    transversal: Vec<Option<Word>>,
    /// Schreier generator index of the pair (y, x), or None on tree edges.
    pair_index: BTreeMap<(usize, usize), usize>,
    pairs: Vec<(usize, usize)>,
    pub presentation: Presentation,
    quandle: QuandleTable,
}

impl StabilizerPresentation {
    pub fn new(q: &QuandleTable, base: usize) -> Result<Self> {
        let n = q.size();
        if base >= n {
            return Err(Error::Invalid(format!("base point {base} out of range")));
        }
        let mut transversal: Vec<Option<Word>> = vec![None; n];
        transversal[base] = Some(Vec::new());
        let mut orbit = vec![base];
        let mut tree: std::collections::HashSet<(usize, usize)> = Default::default();
        let mut queue = VecDeque::from([base]);
        while let Some(y) = queue.pop_front() {
            for x in 0..n {
                let z = q.op(y, x);
                if transversal[z].is_none() {
                    let mut w = transversal[y].clone().unwrap();
                    w.push(gen(x));
                    transversal[z] = Some(w);
                    tree.insert((y, x));
                    orbit.push(z);
                    queue.push_back(z);
                }
            }
        }
        let mut sorted = orbit.clone();
        sorted.sort_unstable();
        let mut pair_index = BTreeMap::new();
        let mut pairs = Vec::new();
        for &y in &sorted {
            for x in 0..n {
                if !tree.contains(&(y, x)) {
                    pair_index.insert((y, x), pairs.len());
                    pairs.push((y, x));
                }
            }
        }
        let mut sp = StabilizerPresentation {
            base,
            n,
            orbit,
            transversal,
            pair_index,
            pairs,
            presentation: Presentation { gens: 0, relators: Vec::new() },
            quandle: q.clone(),
        };
        let as_pres = as_presentation(q);
        let mut rels = Vec::with_capacity(sorted.len() * as_pres.relators.len());
        for &y in &sorted {
            for r in &as_pres.relators {
                let (w, end) = sp.rewrite_from(y, r);
                if end != y {
                    return Err(Error::Consistency("relator moves an orbit point".into()));
                }
                rels.push(w);
            }
        }
        sp.presentation = Presentation::new(sp.pairs.len(), rels)?;
        Ok(sp)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    /// The pair (y, x) behind each Schreier generator u_y e_x u_{y◁x}^{-1}.
    pub fn generator_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Word u_y with base·u_y = y.
    pub fn transversal(&self, y: usize) -> Option<&[Letter]> {
        self.transversal.get(y).and_then(|w| w.as_deref())
    }

    /// Rewrites w read from orbit point y; returns the Schreier word and the end point.
    fn rewrite_from(&self, mut y: usize, w: &[Letter]) -> (Word, usize) {
        let q = &self.quandle;
        let mut out = Vec::new();
        for &l in w {
            let (x, pos) = split(l);
            if pos {
                if let Some(&k) = self.pair_index.get(&(y, x)) {
                    out.push(gen(k));
                }
                y = q.op(y, x);
            } else {
                let z = q.inv_op(y, x);
                if let Some(&k) = self.pair_index.get(&(z, x)) {
                    out.push(gen_inv(k));
                }
                y = z;
            }
        }
        (super::word::free_reduce(&out), y)
    }

    /// Rewrites a word of As(X) that fixes the base point.
    pub fn rewrite(&self, w: &[Letter]) -> Result<Word> {
        if w.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > self.n) {
            return Err(Error::Invalid("letter outside the generators of As(X)".into()));
        }
        let (out, end) = self.rewrite_from(self.base, w);
        if end != self.base {
            return Err(Error::WordDoesNotStabilize);
        }
        Ok(out)
    }

    /// Stab_ab.
    pub fn abelianization(&self) -> Result<AbGroup> {
        crate::algebra::abelianize_presentation(&self.presentation)
    }

    /// Stab_ab / <[e_base]> with a coordinate map on exponent-sum vectors.
    pub fn reduced_abelianization(&self) -> Result<(AbGroup, CoordinateMap)> {
        let rel = self.reduced_relation_matrix()?;
        let h = homology_at(&rel.transpose(), &IntMatrix::zeros(0, self.pairs.len()))?;
        Ok((h.group, h.coords.expect("dense homology has coordinates")))
    }

    /// Stab_ab / <[e_base]> through the sparse path.
    pub fn reduced_abelianization_group(&self) -> Result<AbGroup> {
        AbGroup::from_relation_rows(&self.reduced_relation_matrix()?)
    }

    fn reduced_relation_matrix(&self) -> Result<IntMatrix> {
        let mut p = self.presentation.clone();
        let extra = self.rewrite(&[gen(self.base)])?;
        if !extra.is_empty() {
            p.relators.push(extra);
        }
        p.relation_matrix()
    }

    /// Exponent-sum vector of a word in the Schreier generators.
    pub fn exponent_vector(&self, w: &[Letter]) -> Vec<i64> {
        let mut v = vec![0; self.pairs.len()];
        for &l in w {
            let (g, pos) = split(l);
            v[g] += if pos { 1 } else { -1 };
        }
        v
    }
}
