//! The extended quandle X̃ on Ker ε with its covering map onto X.

use super::assoc::AsGroup;
use super::word::split;
use crate::algebra::AbGroup;
use crate::error::{Error, Result};
use crate::quandle::QuandleTable;

#[derive(Debug, Clone)]
pub struct ExtendedQuandle {
    pub quandle: QuandleTable,
    /// Covering map p(k) = a·k.
    pub covering: Vec<usize>,
}

/// X̃ on the cosets of <e_a>: for g, h in Ker ε,
/// g◁h = e_a^{-1} g e_{a·h}, whose coset is Hg · e_{p(h)}.
pub fn extended_quandle(g: &AsGroup) -> Result<ExtendedQuandle> {
    let q = g.quandle();
    let n = g.kernel_order();
    let table = g.coset_table();
    let covering: Vec<usize> = (0..n)
        .map(|c| {
            table.schreier_word(c).iter().fold(g.base_point(), |y, &l| {
                let (x, pos) = split(l);
                if pos {
                    q.op(y, x)
                } else {
                    q.inv_op(y, x)
                }
            })
        })
        .collect();
    let ops: Vec<Vec<u32>> = (0..n).map(|c| (0..n).map(|d| g.gen_perm(covering[d])[c]).collect()).collect();
    let mut seen = vec![0usize; q.size()];
    let labels = covering
        .iter()
        .map(|&x| {
            seen[x] += 1;
            format!("{}.{}", q.label(x), seen[x] - 1)
        })
        .collect();
    let ext = QuandleTable::new(ops, Some(labels))?;
    ext.check_axioms()?;
    for c in 0..n {
        for d in 0..n {
            if covering[ext.op(c, d)] != q.op(covering[c], covering[d]) {
                return Err(Error::Consistency("covering map is not a quandle homomorphism".into()));
            }
        }
    }
    Ok(ExtendedQuandle { quandle: ext, covering })
}

/// Structure of a finite abelian group from the orders of all its elements.
pub fn abelian_from_orders(orders: &[u64]) -> AbGroup {
    let n = orders.len() as u64;
    let mut cyclic = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p != 0 {
            p += 1;
            continue;
        }
        while m % p == 0 {
            m /= p;
        }
        // a_k = log_p #{g : g^{p^k} = 1}
        let mut prev = 0u32;
        let mut pk = 1u64;
        let mut counts = Vec::new();
        loop {
            pk *= p;
            let c = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            let a = log_exact(c, p);
            counts.push(a - prev);
            if a == prev {
                break;
            }
            prev = a;
        }
        // counts[k] = number of cyclic factors of order ≥ p^{k+1}
        for k in 0..counts.len() {
            let ge = counts[k];
            let ge_next = counts.get(k + 1).copied().unwrap_or(0);
            for _ in 0..ge - ge_next {
                cyclic.push(p.pow(k as u32 + 1));
            }
        }
    }
    AbGroup::from_cyclic_orders(&cyclic)
}

fn log_exact(c: u64, p: u64) -> u32 {
    let mut k = 0;
    let mut v = 1;
    while v < c {
        v *= p;
        k += 1;
    }
    k
}

/// Ker(p_*: As(X̃) → As(X)), computed inside Ker ε of X̃.
pub fn covering_kernel(ext: &ExtendedQuandle, base: &AsGroup, lifted: &AsGroup) -> Result<AbGroup> {
    let mut orders = Vec::new();
    for d in 0..lifted.kernel_order() {
        let w = lifted.word_of(lifted.kernel_element(d));
        let image: Vec<i32> = w
            .iter()
            .map(|&l| {
                let (x, pos) = split(l);
                let y = ext.covering[x] as i32 + 1;
                if pos {
                    y
                } else {
                    -y
                }
            })
            .collect();
        if base.eval_word(&image) == base.identity() {
            let o = lifted
                .element_order(lifted.kernel_element(d))
                .ok_or_else(|| Error::Consistency("kernel element of infinite order".into()))?;
            orders.push(o as u64);
        }
    }
    Ok(abelian_from_orders(&orders))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_structure_from_orders() {
        // Z/2 + Z/4: orders 1, 2 (x3), 4 (x4)
        let g = abelian_from_orders(&[1, 2, 2, 2, 4, 4, 4, 4]);
        assert_eq!(g.torsion, vec![2, 4]);
        // Z/6
        assert_eq!(abelian_from_orders(&[1, 2, 3, 3, 6, 6]), AbGroup::cyclic(6));
        assert_eq!(abelian_from_orders(&[1]), AbGroup::trivial());
    }
}
