//! Permutations on 0..n and permutation groups via Schreier-Sims.
//!
//! Products act on the right: `compose(x, y)` applies x first, so
//! `compose(x, y)[i] == y[x[i]]`.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;

use crate::error::{Error, Result};

pub type Perm = Vec<u32>;

pub fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

pub fn is_identity(p: &[u32]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i as u32 == x)
}

pub fn compose(x: &[u32], y: &[u32]) -> Perm {
    x.iter().map(|&i| y[i as usize]).collect()
}

pub fn inverse(p: &[u32]) -> Perm {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x as usize] = i as u32;
    }
    out
}

/// y^{-1} x y.
pub fn conjugate(x: &[u32], y: &[u32]) -> Perm {
    compose(&compose(&inverse(y), x), y)
}

pub fn cycles(p: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; p.len()];
    let mut out = Vec::new();
    for s in 0..p.len() {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            c.push(i as u32);
            i = p[i] as usize;
        }
        out.push(c);
    }
    out
}

pub fn order(p: &[u32]) -> u64 {
    cycles(p).iter().fold(1u64, |a, c| a.lcm(&(c.len() as u64)))
}

pub fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter().all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}

/// Cycle notation with 1-based points, e.g. "(1432)"; "()" for the identity.
/// Points above 9 are separated by commas.
pub fn to_cycle_string(p: &[u32]) -> String {
    let sep = if p.len() > 9 { "," } else { "" };
    let s: String = cycles(p)
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", pts.join(sep))
        })
        .collect();
    if s.is_empty() {
        "()".into()
    } else {
        s
    }
}

/// Parses cycle notation on `n` points, 1-based.
pub fn parse_cycles(s: &str, n: usize) -> Result<Perm> {
    let mut p = identity(n);
    let body = s.trim();
    for chunk in body.split(')').map(str::trim).filter(|c| !c.is_empty()) {
        let inner = chunk.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad cycle {chunk}")))?;
        let pts: Vec<usize> = if inner.contains(',') || inner.contains(' ') {
            inner
                .split(|c| c == ',' || c == ' ')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<_>>()?
        } else {
            inner
                .chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| Error::Parse(format!("bad point {c}"))))
                .collect::<Result<_>>()?
        };
        if pts.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::Parse(format!("point outside 1..={n} in {chunk}")));
        }
        let mut cyc = identity(n);
        for k in 0..pts.len() {
            cyc[pts[k] - 1] = (pts[(k + 1) % pts.len()] - 1) as u32;
        }
        if !is_permutation(&cyc) {
            return Err(Error::Parse(format!("repeated point in {chunk}")));
        }
        p = compose(&p, &cyc);
    }
    Ok(p)
}

struct Level {
    base: usize,
    /// Transversal: `trans[b]` maps the base point to `b`.
    trans: Vec<Option<Perm>>,
    orbit: Vec<usize>,
}

/// Permutation group with a base and strong generating set.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<(usize, Perm)>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        for g in &generators {
            if g.len() != degree || !is_permutation(g) {
                return Err(Error::Invalid("generator is not a permutation of the right degree".into()));
            }
        }
        let mut grp = PermGroup { degree, generators: generators.clone(), strong: Vec::new(), levels: Vec::new() };
        grp.schreier_sims();
        Ok(grp)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &[u32]) -> bool {
        g.len() == self.degree && {
            let (r, _) = self.sift(g, 0);
            is_identity(&r)
        }
    }

    fn gens_from(&self, level: usize) -> Vec<&Perm> {
        self.strong.iter().filter(|(l, _)| *l >= level).map(|(_, g)| g).collect()
    }

    fn rebuild_orbit(&mut self, level: usize) {
        let gens: Vec<Perm> = self.gens_from(level).into_iter().cloned().collect();
        let lv = &mut self.levels[level];
        let mut trans: Vec<Option<Perm>> = vec![None; self.degree];
        trans[lv.base] = Some(identity(self.degree));
        let mut orbit = vec![lv.base];
        let mut q = VecDeque::from([lv.base]);
        while let Some(b) = q.pop_front() {
            for g in &gens {
                let c = g[b] as usize;
                if trans[c].is_none() {
                    trans[c] = Some(compose(trans[b].as_ref().unwrap(), g));
                    orbit.push(c);
                    q.push_back(c);
                }
            }
        }
        lv.trans = trans;
        lv.orbit = orbit;
    }

    fn sift(&self, g: &[u32], from: usize) -> (Perm, usize) {
        let mut h = g.to_vec();
        for (j, lv) in self.levels.iter().enumerate().skip(from) {
            let b = h[lv.base] as usize;
            match &lv.trans[b] {
                Some(u) => h = compose(&h, &inverse(u)),
                None => return (h, j),
            }
        }
        (h, self.levels.len())
    }

    fn add_strong(&mut self, level: usize, g: Perm) {
        if level == self.levels.len() {
            let base = g.iter().enumerate().position(|(i, &x)| i as u32 != x).expect("non-identity");
            self.levels.push(Level { base, trans: Vec::new(), orbit: Vec::new() });
        }
        self.strong.push((level, g));
        for l in 0..=level {
            self.rebuild_orbit(l);
        }
    }

    fn schreier_sims(&mut self) {
        for g in self.generators.clone() {
            let (r, j) = self.sift(&g, 0);
            if !is_identity(&r) {
                self.add_strong(j, r);
            }
        }
        let mut i = self.levels.len();
        while i > 0 {
            let level = i - 1;
            let mut added = None;
            'outer: for &b in &self.levels[level].orbit.clone() {
                for s in self.gens_from(level).into_iter().cloned().collect::<Vec<_>>() {
                    let ub = self.levels[level].trans[b].clone().unwrap();
                    let bs = s[b] as usize;
                    let ubs = self.levels[level].trans[bs].clone().unwrap();
                    let h = compose(&compose(&ub, &s), &inverse(&ubs));
                    let (r, j) = self.sift(&h, level + 1);
                    if !is_identity(&r) {
                        added = Some((j, r));
                        break 'outer;
                    }
                }
            }
            match added {
                Some((j, r)) => {
                    self.add_strong(j, r);
                    i = j + 1;
                }
                None => i -= 1,
            }
        }
    }

    /// Order by enumerating all elements, refusing beyond `cap`.
    pub fn closure_order(&self, cap: usize) -> Result<usize> {
        let id = identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut q = VecDeque::from([id]);
        while let Some(x) = q.pop_front() {
            for g in &self.generators {
                let y = compose(&x, g);
                if !seen.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::LimitExceeded { what: "group closure".into(), limit: cap });
                    }
                    seen.insert(y.clone());
                    q.push_back(y);
                }
            }
        }
        Ok(seen.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_strings() {
        let p = parse_cycles("(1432)", 6).unwrap();
        assert_eq!(p[0], 3);
        assert_eq!(to_cycle_string(&p), "(1432)");
        assert_eq!(order(&p), 4);
        assert_eq!(to_cycle_string(&identity(3)), "()");
    }

    #[test]
    fn right_action_conjugation() {
        // (1342)^(1432) relabels the cycle: (4231) = (1423)
        let x = parse_cycles("(1342)", 4).unwrap();
        let y = parse_cycles("(1432)", 4).unwrap();
        assert_eq!(to_cycle_string(&conjugate(&x, &y)), "(1423)");
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..=7usize {
            let t = parse_cycles("(12)", n).unwrap();
            let c: Perm = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            let g = PermGroup::new(n, vec![t, c]).unwrap();
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(g.order(), fact);
            assert_eq!(g.closure_order(10_000).unwrap() as u128, fact);
        }
    }

    #[test]
    fn membership() {
        let a = parse_cycles("(123)", 4).unwrap();
        let g = PermGroup::new(4, vec![a]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.contains(&parse_cycles("(132)", 4).unwrap()));
        assert!(!g.contains(&parse_cycles("(12)", 4).unwrap()));
    }
}
