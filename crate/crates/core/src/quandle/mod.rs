//! Finite quandles as operation tables.

mod build;
mod io;

pub use build::{make_alexander, make_alexander_fq, make_conjugation, make_dihedral, make_spherical, make_symplectic};
pub use io::{quandle_from_json, quandle_to_json};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{self, Perm, PermGroup};

/// Module data of an Alexander quandle M = Z/m_1 + ... + Z/m_k with x◁y = Tx + (1-T)y.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlexanderData {
    pub moduli: Vec<u64>,
    /// `matrix[i][j]`: coefficient of component i in T(e_j).
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuandleTable {
    n: usize,
    op: Vec<u32>,
    inv: Vec<u32>,
    labels: Vec<String>,
    pub alexander: Option<AlexanderData>,
    /// Caveats attached by the constructor.
    pub notes: Vec<String>,
}

/// Closure cap for the brute-force inner group cross-check.
pub const CLOSURE_CHECK_CAP: usize = 10_000;

impl QuandleTable {
    /// Builds a table from `table[x][y] = x◁y`. Every right translation must
    /// be a bijection; the remaining axioms are checked by `check_axioms`.
    pub fn new(table: Vec<Vec<u32>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Invalid("empty quandle".into()));
        }
        let mut op = Vec::with_capacity(n * n);
        for row in &table {
            if row.len() != n {
                return Err(Error::Invalid("table is not square".into()));
            }
            if let Some(&v) = row.iter().find(|&&v| v as usize >= n) {
                return Err(Error::Invalid(format!("entry {v} out of range")));
            }
            op.extend_from_slice(row);
        }
        let mut inv = vec![u32::MAX; n * n];
        for y in 0..n {
            for x in 0..n {
                let z = op[x * n + y] as usize;
                if inv[z * n + y] != u32::MAX {
                    return Err(Error::AxiomViolation { axiom: "right invertibility", witness: vec![y] });
                }
                inv[z * n + y] = x as u32;
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(_) => return Err(Error::Invalid("label count differs from size".into())),
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(QuandleTable { n, op, inv, labels, alexander: None, notes: Vec::new() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// x◁y
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.op[x * self.n + y] as usize
    }

    /// x◁^{-1}y
    #[inline]
    pub fn inv_op(&self, x: usize, y: usize) -> usize {
        self.inv[x * self.n + y] as usize
    }

    /// x◁^k y for any integer k.
    pub fn op_pow(&self, mut x: usize, y: usize, k: i64) -> usize {
        for _ in 0..k.unsigned_abs() {
            x = if k > 0 { self.op(x, y) } else { self.inv_op(x, y) };
        }
        x
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn index_of_label(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|s| s == l)
    }

    pub fn table(&self) -> Vec<Vec<u32>> {
        self.op.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    /// Right translation x ↦ x◁y as a permutation.
    pub fn column(&self, y: usize) -> Perm {
        (0..self.n).map(|x| self.op(x, y) as u32).collect()
    }

    /// First violation in lexicographic order of the witness.
    pub fn check_axioms(&self) -> Result<()> {
        for x in 0..self.n {
            if self.op(x, x) != x {
                return Err(Error::AxiomViolation { axiom: "idempotency", witness: vec![x] });
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                let xy = self.op(x, y);
                for z in 0..self.n {
                    if self.op(xy, z) != self.op(self.op(x, z), self.op(y, z)) {
                        return Err(Error::AxiomViolation { axiom: "self-distributivity", witness: vec![x, y, z] });
                    }
                }
            }
        }
        Ok(())
    }

    /// Orbits of the inner group, each sorted, ordered by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for x in 0..self.n {
            for y in 0..self.n {
                let (a, b) = (find(&mut parent, x), find(&mut parent, self.op(x, y)));
                if a != b {
                    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                    parent[hi] = lo;
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for x in 0..self.n {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x);
        }
        groups.into_values().collect()
    }

    /// Orbit index of each element, following `orbits()` order.
    pub fn orbit_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.n];
        for (k, o) in self.orbits().iter().enumerate() {
            for &x in o {
                idx[x] = k;
            }
        }
        idx
    }

    pub fn is_connected(&self) -> bool {
        self.orbits().len() == 1
    }

    /// Least t with x◁^t y = x for all x, y.
    pub fn type_of(&self) -> u64 {
        (0..self.n).map(|y| perm::order(&self.column(y))).fold(1, |a, b| a.lcm(&b))
    }

    /// Inner automorphism group, cross-checked against a brute-force closure
    /// when that is small enough.
    pub fn inner_group(&self) -> Result<PermGroup> {
        let mut gens: Vec<Perm> = (0..self.n).map(|y| self.column(y)).filter(|p| !perm::is_identity(p)).collect();
        gens.sort();
        gens.dedup();
        let g = PermGroup::new(self.n, gens)?;
        if g.order() <= CLOSURE_CHECK_CAP as u128 {
            let c = g.closure_order(CLOSURE_CHECK_CAP)? as u128;
            if c != g.order() {
                return Err(Error::Consistency(format!("Schreier-Sims order {} but closure {}", g.order(), c)));
            }
        }
        Ok(g)
    }

    /// Relabels so that element `perm[x]` of the result is `x` of self.
    pub fn relabel(&self, perm: &[usize]) -> Result<QuandleTable> {
        let mut table = vec![vec![0u32; self.n]; self.n];
        let mut labels = vec![String::new(); self.n];
        for x in 0..self.n {
            labels[perm[x]] = self.labels[x].clone();
            for y in 0..self.n {
                table[perm[x]][perm[y]] = perm[self.op(x, y)] as u32;
            }
        }
        QuandleTable::new(table, Some(labels))
    }

    /// Subquandle on the given elements (must be closed).
    pub fn subquandle(&self, elems: &[usize]) -> Result<QuandleTable> {
        let mut idx = vec![usize::MAX; self.n];
        for (k, &x) in elems.iter().enumerate() {
            idx[x] = k;
        }
        let mut table = Vec::with_capacity(elems.len());
        for &x in elems {
            let mut row = Vec::with_capacity(elems.len());
            for &y in elems {
                let z = idx[self.op(x, y)];
                if z == usize::MAX {
                    return Err(Error::Invalid("subset is not closed".into()));
                }
                row.push(z as u32);
            }
            table.push(row);
        }
        QuandleTable::new(table, Some(elems.iter().map(|&x| self.labels[x].clone()).collect()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_three() {
        let q = make_dihedral(3).unwrap();
        q.check_axioms().unwrap();
        assert!(q.is_connected());
        assert_eq!(q.type_of(), 2);
        assert_eq!(q.inner_group().unwrap().order(), 6);
    }

    #[test]
    fn axiom_witness_is_lexicographically_first() {
        // x◁y = y: right translations are constant, so not invertible
        let t = vec![vec![0, 1], vec![0, 1]];
        assert!(matches!(QuandleTable::new(t, None), Err(Error::AxiomViolation { .. })));
        // x◁y = x+1 mod 3 for all y: invertible but not idempotent
        let t = vec![vec![1, 1, 1], vec![2, 2, 2], vec![0, 0, 0]];
        let q = QuandleTable::new(t, None).unwrap();
        assert_eq!(q.check_axioms(), Err(Error::AxiomViolation { axiom: "idempotency", witness: vec![0] }));
    }

    #[test]
    fn alexander_z4_orbits() {
        let q = make_alexander(&[4], &[vec![-1]]).unwrap();
        assert_eq!(q.orbits(), vec![vec![0, 2], vec![1, 3]]);
    }
}
