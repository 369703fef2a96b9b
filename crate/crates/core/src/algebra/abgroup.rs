use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::invariant_factors;
use crate::error::Result;
use crate::group::Presentation;

/// Finitely generated abelian group Z^rank + Z/t_1 + ... with t_i > 1 and
/// t_i | t_{i+1}.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbGroup {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl AbGroup {
    pub fn trivial() -> Self {
        AbGroup::default()
    }

    pub fn free(rank: usize) -> Self {
        AbGroup { rank, torsion: Vec::new() }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => AbGroup::free(1),
            1 => AbGroup::trivial(),
            n => AbGroup { rank: 0, torsion: vec![n] },
        }
    }

    /// Normalizes an arbitrary list of cyclic orders (0 meaning Z) into
    /// invariant factor form.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let rank = orders.iter().filter(|&&o| o == 0).count();
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &o in orders.iter().filter(|&&o| o > 1) {
            for (p, e) in factorize(o) {
                by_prime.entry(p).or_default().push(p.pow(e));
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (k, q) in powers.iter().enumerate() {
                torsion[len - 1 - k] *= q;
            }
        }
        AbGroup { rank, torsion }
    }

    /// Cokernel of the relation matrix whose rows are relators over the generators.
    pub fn from_relation_rows(relations: &IntMatrix) -> Result<Self> {
        let inv = invariant_factors(relations)?;
        Ok(AbGroup { rank: relations.cols() - inv.rank, torsion: inv.torsion })
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &AbGroup) -> AbGroup {
        let mut orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        orders.extend(std::iter::repeat(0).take(self.rank + other.rank));
        AbGroup::from_cyclic_orders(&orders)
    }

    /// Torsion of odd order, as a group.
    pub fn odd_part(&self) -> AbGroup {
        let orders: Vec<u64> = self
            .torsion
            .iter()
            .map(|&t| {
                let mut t = t;
                while t % 2 == 0 {
                    t /= 2;
                }
                t
            })
            .collect();
        AbGroup::from_cyclic_orders(&orders)
    }

    /// Exponent of the torsion subgroup.
    pub fn exponent(&self) -> u64 {
        self.torsion.iter().fold(1, |a, &b| a.lcm(&b))
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Abelianization of a finitely presented group.
pub fn abelianize_presentation(p: &Presentation) -> Result<AbGroup> {
    AbGroup::from_relation_rows(&p.relation_matrix()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display() {
        assert_eq!(AbGroup::trivial().to_string(), "0");
        assert_eq!(AbGroup { rank: 2, torsion: vec![2, 4] }.to_string(), "Z^2 + Z/2 + Z/4");
        assert_eq!(AbGroup::cyclic(3).to_string(), "Z/3");
    }

    #[test]
    fn normal_form() {
        assert_eq!(AbGroup::from_cyclic_orders(&[2, 3]), AbGroup::cyclic(6));
        assert_eq!(AbGroup::from_cyclic_orders(&[4, 2, 1, 0]).torsion, vec![2, 4]);
        assert_eq!(AbGroup::from_cyclic_orders(&[6, 4]).torsion, vec![2, 12]);
        assert_eq!(AbGroup::cyclic(12).odd_part(), AbGroup::cyclic(3));
        assert_eq!(AbGroup::cyclic(4).odd_part(), AbGroup::trivial());
    }

    #[test]
    fn relations() {
        let m = IntMatrix::from_rows(&[vec![2, 0, 0], vec![0, 6, 0]]).unwrap();
        assert_eq!(AbGroup::from_relation_rows(&m).unwrap().to_string(), "Z + Z/2 + Z/6");
    }
}
