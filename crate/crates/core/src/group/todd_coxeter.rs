//! HLT coset enumeration with union-find coincidence handling.

use std::collections::VecDeque;

use super::word::{split, Letter, Presentation, Word};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_COSETS: usize = 1_000_000;

const NONE: u32 = u32::MAX;

/// Complete coset table of a subgroup, cosets numbered in breadth-first
/// order from the subgroup itself (coset 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    gens: usize,
    /// `action[g][c]`: coset c times generator g.
    action: Vec<Vec<u32>>,
    inverse_action: Vec<Vec<u32>>,
    /// Shortest word (first in generator order) from coset 0 to each coset.
    schreier_words: Vec<Word>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.schreier_words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.schreier_words.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.gens
    }

    pub fn act(&self, coset: usize, l: Letter) -> usize {
        let (g, pos) = split(l);
        if pos {
            self.action[g][coset] as usize
        } else {
            self.inverse_action[g][coset] as usize
        }
    }

    pub fn act_word(&self, mut coset: usize, w: &[Letter]) -> usize {
        for &l in w {
            coset = self.act(coset, l);
        }
        coset
    }

    pub fn generator_perm(&self, g: usize) -> &[u32] {
        &self.action[g]
    }

    pub fn inverse_perm(&self, g: usize) -> &[u32] {
        &self.inverse_action[g]
    }

    pub fn schreier_word(&self, coset: usize) -> &[Letter] {
        &self.schreier_words[coset]
    }
}

struct Enumerator<'a> {
    ncols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    live: usize,
    max_cosets: usize,
    queue: VecDeque<u32>,
    pres: &'a Presentation,
}

#[inline]
fn col(l: Letter) -> usize {
    let (g, pos) = split(l);
    2 * g + usize::from(!pos)
}

#[inline]
fn inv_col(c: usize) -> usize {
    c ^ 1
}

impl<'a> Enumerator<'a> {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.ncols + x]
    }
    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.ncols + x] = v;
    }
    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<()> {
        if self.live >= self.max_cosets {
            return Err(Error::LimitExceeded { what: "coset enumeration".into(), limit: self.max_cosets });
        }
        let d = self.parent.len() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat(NONE).take(self.ncols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, inv_col(x), c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut k = c;
        while self.parent[k as usize] != r {
            let next = self.parent[k as usize];
            self.parent[k as usize] = r;
            k = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.live -= 1;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.ncols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, inv_col(x), NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                if self.get(mu, x) != NONE {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, inv_col(x)) != NONE {
                    let t = self.get(nu, inv_col(x));
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, inv_col(x), mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, a: u32, w: &[Letter]) -> Result<()> {
        if w.is_empty() {
            return Ok(());
        }
        let cols: Vec<usize> = w.iter().map(|&l| col(l)).collect();
        let mut f = a;
        let mut i = 0usize;
        let mut b = a;
        let mut j = cols.len() as isize - 1;
        loop {
            while (i as isize) <= j && self.get(f, cols[i]) != NONE {
                f = self.get(f, cols[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != a {
                    self.coincidence(f, a);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, inv_col(cols[j as usize])) != NONE {
                b = self.get(b, inv_col(cols[j as usize]));
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, cols[i], b);
                self.set(b, inv_col(cols[i]), f);
                return Ok(());
            } else {
                self.define(f, cols[i])?;
            }
        }
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` words.
pub fn enumerate_cosets(pres: &Presentation, subgroup: &[Word], max_cosets: usize) -> Result<CosetTable> {
    let ncols = 2 * pres.gens;
    let mut e = Enumerator {
        ncols,
        table: vec![NONE; ncols],
        parent: vec![0],
        live: 1,
        max_cosets,
        queue: VecDeque::new(),
        pres,
    };
    for w in subgroup {
        e.scan_and_fill(0, w)?;
    }
    let mut a: u32 = 0;
    while (a as usize) < e.parent.len() {
        if e.is_live(a) {
            for r in &e.pres.relators {
                e.scan_and_fill(a, r)?;
                if !e.is_live(a) {
                    break;
                }
            }
            if e.is_live(a) {
                for x in 0..ncols {
                    if e.get(a, x) == NONE {
                        e.define(a, x)?;
                    }
                }
            }
        }
        a += 1;
    }
    standardize(&e, pres.gens)
}

fn standardize(e: &Enumerator<'_>, gens: usize) -> Result<CosetTable> {
    let total = e.parent.len();
    let mut new_index = vec![NONE; total];
    let mut order: Vec<u32> = vec![0];
    let mut words: Vec<Word> = vec![Vec::new()];
    new_index[0] = 0;
    let mut k = 0;
    while k < order.len() {
        let c = order[k];
        for x in 0..2 * gens {
            let d = e.get(c, x);
            if d == NONE || !e.is_live(d) {
                return Err(Error::Consistency("coset table incomplete after enumeration".into()));
            }
            if new_index[d as usize] == NONE {
                new_index[d as usize] = order.len() as u32;
                order.push(d);
                let g = (x / 2) as Letter + 1;
                let mut w = words[k].clone();
                w.push(if x % 2 == 0 { g } else { -g });
                words.push(w);
            }
        }
        k += 1;
    }
    let n = order.len();
    let mut action = vec![vec![0u32; n]; gens];
    let mut inverse_action = vec![vec![0u32; n]; gens];
    for (ni, &c) in order.iter().enumerate() {
        for g in 0..gens {
            action[g][ni] = new_index[e.get(c, 2 * g) as usize];
            inverse_action[g][ni] = new_index[e.get(c, 2 * g + 1) as usize];
        }
    }
    Ok(CosetTable { gens, action, inverse_action, schreier_words: words })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(gens: usize, rels: &[&[Letter]]) -> Presentation {
        Presentation::new(gens, rels.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn symmetric_group_s3() {
        // <a,b | a^2, b^3, (ab)^2>
        let p = pres(2, &[&[1, 1], &[2, 2, 2], &[1, 2, 1, 2]]);
        assert_eq!(enumerate_cosets(&p, &[], 1000).unwrap().len(), 6);
        assert_eq!(enumerate_cosets(&p, &[vec![1]], 1000).unwrap().len(), 3);
    }

    #[test]
    fn cyclic_and_trivial() {
        let p = pres(1, &[&[1, 1, 1, 1, 1]]);
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.act_word(0, &[1, 1, 1, 1, 1]), 0);
        let p = pres(2, &[&[1, 2, -1, -2], &[1, 1], &[2, 2, 2]]);
        assert_eq!(enumerate_cosets(&p, &[], 100).unwrap().len(), 6);
    }

    #[test]
    fn cap_is_reported() {
        let p = pres(2, &[&[1, 2, -1, -2]]);
        let err = enumerate_cosets(&p, &[], 500).unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { .. }));
    }

    #[test]
    fn schreier_words_reach_their_cosets() {
        let p = pres(2, &[&[1, 1, 1], &[2, 2], &[1, 2, 1, 2]]);
        let t = enumerate_cosets(&p, &[], 100).unwrap();
        for c in 0..t.len() {
            assert_eq!(t.act_word(0, t.schreier_word(c)), c);
        }
    }
}
