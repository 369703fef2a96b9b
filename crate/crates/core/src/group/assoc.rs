//! The associated group As(X) = <e_x | e_{x◁y} = e_y^{-1} e_x e_y> and a
//! faithful model of it.
//!
//! Cosets of H = <e_a> (a the smallest element) are enumerated once. Every
//! g in As(X) is then the pair (ε(g), Hg): H meets Ker ε trivially, so each
//! coset holds exactly one element k_c of Ker ε and g = e_a^{ε(g)} k_{Hg}.

use super::todd_coxeter::{enumerate_cosets, CosetTable};
use super::word::{gen, gen_inv, power, Letter, Presentation, Word};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::quandle::QuandleTable;

/// Relators e_{x◁y}^{-1} e_y^{-1} e_x e_y over all pairs in lexicographic
/// order, the trivial ones (x = y) dropped.
pub fn as_presentation(q: &QuandleTable) -> Presentation {
    let n = q.size();
    let mut rels = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            if x != y {
                rels.push(vec![gen_inv(q.op(x, y)), gen_inv(y), gen(x), gen(y)]);
            }
        }
    }
    Presentation::new(n, rels).expect("letters are in range")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AsElement {
    pub eps: i64,
    pub coset: u32,
}

/// Faithful representation of As(X) through the coset action on H\As(X).
#[derive(Debug, Clone)]
pub struct AsGroup {
    quandle: QuandleTable,
    base: usize,
    table: CosetTable,
    /// ε of the Schreier word of each coset.
    word_eps: Vec<i64>,
    base_perm: Perm,
    base_inv: Perm,
    base_order: usize,
    /// `kernel_table[d][c] = c · k_d`, cached for small kernels.
    kernel_table: Option<Vec<Vec<u32>>>,
}

const KERNEL_CACHE_MAX: usize = 1024;

impl AsGroup {
    pub fn new(q: &QuandleTable, max_cosets: usize) -> Result<Self> {
        let pres = as_presentation(q);
        let base = 0;
        let table = enumerate_cosets(&pres, &[vec![gen(base)]], max_cosets)?;
        let word_eps = (0..table.len())
            .map(|c| table.schreier_word(c).iter().map(|&l| l.signum() as i64).sum())
            .collect();
        let base_perm: Perm = table.generator_perm(base).to_vec();
        let base_inv: Perm = table.inverse_perm(base).to_vec();
        let base_order = crate::perm::order(&base_perm) as usize;
        let mut g = AsGroup {
            quandle: q.clone(),
            base,
            table,
            word_eps,
            base_perm,
            base_inv,
            base_order,
            kernel_table: None,
        };
        if g.kernel_order() <= KERNEL_CACHE_MAX {
            let n = g.kernel_order();
            let t = (0..n).map(|d| (0..n).map(|c| g.act_kernel_uncached(c, d) as u32).collect()).collect();
            g.kernel_table = Some(t);
        }
        g.verify()?;
        Ok(g)
    }

    pub fn quandle(&self) -> &QuandleTable {
        &self.quandle
    }

    pub fn base_point(&self) -> usize {
        self.base
    }

    pub fn coset_table(&self) -> &CosetTable {
        &self.table
    }

    /// |Ker ε|, the number of cosets of <e_a>.
    pub fn kernel_order(&self) -> usize {
        self.table.len()
    }

    /// Permutation of the cosets induced by right multiplication with e_x.
    pub fn gen_perm(&self, x: usize) -> &[u32] {
        self.table.generator_perm(x)
    }

    fn act_base_pow(&self, mut c: usize, k: i64) -> usize {
        let k = k.rem_euclid(self.base_order as i64);
        // walk whichever direction is shorter
        if k as usize <= self.base_order / 2 {
            for _ in 0..k {
                c = self.base_perm[c] as usize;
            }
        } else {
            for _ in 0..self.base_order - k as usize {
                c = self.base_inv[c] as usize;
            }
        }
        c
    }

    fn act_kernel_uncached(&self, c: usize, d: usize) -> usize {
        let c = self.act_base_pow(c, -self.word_eps[d]);
        self.table.act_word(c, self.table.schreier_word(d))
    }

    /// c · k_d.
    fn act_kernel(&self, c: usize, d: usize) -> usize {
        match &self.kernel_table {
            Some(t) => t[d][c] as usize,
            None => self.act_kernel_uncached(c, d),
        }
    }

    pub fn identity(&self) -> AsElement {
        AsElement { eps: 0, coset: 0 }
    }

    pub fn generator(&self, x: usize) -> AsElement {
        AsElement { eps: 1, coset: self.table.act(0, gen(x)) as u32 }
    }

    /// The unique element of Ker ε in coset c.
    pub fn kernel_element(&self, c: usize) -> AsElement {
        AsElement { eps: 0, coset: c as u32 }
    }

    pub fn mul(&self, g: AsElement, h: AsElement) -> AsElement {
        let c = self.act_base_pow(g.coset as usize, h.eps);
        AsElement { eps: g.eps + h.eps, coset: self.act_kernel(c, h.coset as usize) as u32 }
    }

    pub fn inv(&self, g: AsElement) -> AsElement {
        // g^{-1} = k_c^{-1} e_a^{-ε}, and k_c^{-1} = w_c^{-1} e_a^{ε(w_c)}
        let c = g.coset as usize;
        let w = self.table.schreier_word(c);
        let mut d = 0;
        for &l in w.iter().rev() {
            d = self.table.act(d, -l);
        }
        let d = self.act_base_pow(d, self.word_eps[c] - g.eps);
        AsElement { eps: -g.eps, coset: d as u32 }
    }

    pub fn pow(&self, g: AsElement, k: i64) -> AsElement {
        let base = if k < 0 { self.inv(g) } else { g };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// h^{-1} g h.
    pub fn conj(&self, g: AsElement, h: AsElement) -> AsElement {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn eval_word(&self, w: &[Letter]) -> AsElement {
        let mut e = self.identity();
        for &l in w {
            e.eps += l.signum() as i64;
            e.coset = self.table.act(e.coset as usize, l) as u32;
        }
        e
    }

    /// A word in the generators e_x representing g.
    pub fn word_of(&self, g: AsElement) -> Word {
        let c = g.coset as usize;
        let mut w = power(self.base, g.eps - self.word_eps[c]);
        w.extend_from_slice(self.table.schreier_word(c));
        w
    }

    /// Full permutation of the cosets induced by g.
    pub fn perm_of(&self, g: AsElement) -> Perm {
        (0..self.kernel_order()).map(|c| self.mul(AsElement { eps: 0, coset: c as u32 }, g).coset).collect()
    }

    /// Order of g, or None when g has infinite order (ε(g) ≠ 0).
    pub fn element_order(&self, g: AsElement) -> Option<usize> {
        if g.eps != 0 {
            return None;
        }
        let mut x = g;
        let mut k = 1;
        while x.coset != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        Some(k)
    }

    /// Checks that the coset table satisfies every relator from every coset,
    /// that e_a fixes the trivial coset and that Ker ε acts regularly.
    pub fn verify(&self) -> Result<()> {
        let n = self.kernel_order();
        if self.table.act(0, gen(self.base)) != 0 {
            return Err(Error::Consistency("e_a does not fix the trivial coset".into()));
        }
        let q = &self.quandle;
        for x in 0..q.size() {
            for y in 0..q.size() {
                let px = self.gen_perm(x);
                let py = self.gen_perm(y);
                let pxy = self.gen_perm(q.op(x, y));
                for c in 0..n {
                    if pxy[py[c] as usize] != py[px[c] as usize] {
                        return Err(Error::Consistency(format!("relator ({x},{y}) fails on coset {c}")));
                    }
                }
            }
        }
        for d in 0..n {
            if self.act_kernel(0, d) != d {
                return Err(Error::Consistency(format!("kernel element {d} does not reach its coset")));
            }
        }
        Ok(())
    }

    /// e_x^t for the type t of X; for connected X these agree and are central.
    pub fn check_central_powers(&self) -> Result<()> {
        let t = self.quandle.type_of() as i64;
        let n = self.quandle.size();
        let orbit = self.quandle.orbit_index();
        let powers: Vec<AsElement> = (0..n).map(|x| self.pow(self.generator(x), t)).collect();
        for x in 0..n {
            for y in 0..n {
                if orbit[x] == orbit[y] && powers[x] != powers[y] {
                    return Err(Error::Consistency(format!("e_{x}^t differs from e_{y}^t")));
                }
                let g = self.generator(y);
                if self.mul(powers[x], g) != self.mul(g, powers[x]) {
                    return Err(Error::Consistency(format!("e_{x}^t is not central")));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::make_dihedral;

    #[test]
    fn presentation_sizes() {
        let r3 = make_dihedral(3).unwrap();
        assert_eq!(as_presentation(&r3).relators.len(), 6);
    }

    #[test]
    fn dihedral_kernel() {
        // As(R3) = Z x| Z/3 in effect: Ker ε has order 3
        let r3 = make_dihedral(3).unwrap();
        let g = AsGroup::new(&r3, 1000).unwrap();
        assert_eq!(g.kernel_order(), 3);
        g.check_central_powers().unwrap();
    }

    #[test]
    fn group_laws() {
        let r3 = make_dihedral(3).unwrap();
        let g = AsGroup::new(&r3, 1000).unwrap();
        let elems: Vec<AsElement> = (-2..=2)
            .flat_map(|e| (0..g.kernel_order() as u32).map(move |c| AsElement { eps: e, coset: c }))
            .collect();
        for &a in &elems {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            assert_eq!(g.eval_word(&g.word_of(a)), a);
            for &b in &elems {
                for &c in elems.iter().step_by(3) {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
        // defining relation
        let (x, y) = (0, 1);
        let lhs = g.generator(r3.op(x, y));
        let rhs = g.conj(g.generator(x), g.generator(y));
        assert_eq!(lhs, rhs);
    }
}
