//! Finite fields F_q, q = p^d with d <= 4, elements encoded as integers
//! `sum c_i p^i` over the polynomial basis 1, g, g^2, ...

use crate::error::{Error, Result};

pub type FqElem = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqContext {
    p: u32,
    d: u32,
    q: u32,
    /// Monic modulus, coefficients c_0..c_d.
    modulus: Vec<u32>,
    mul_table: Option<Vec<FqElem>>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p (coefficients low to high).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(deg);
    (0..count).map(move |code| {
        let mut c = Vec::with_capacity(deg as usize + 1);
        let mut v = code;
        for _ in 0..deg {
            c.push(v % p);
            v /= p;
        }
        c.push(1);
        c
    })
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() as u32 - 1;
    for k in 1..=d / 2 {
        for g in monic_polys(p, k) {
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FqContext {
    /// Field of order p^d. The modulus is the smallest monic irreducible
    /// polynomial of degree d when coefficients are read as the base-p integer
    /// `c_0 + c_1 p + ... + c_{d-1} p^{d-1}`.
    pub fn new(p: u32, d: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        if d == 0 || d > 4 {
            return Err(Error::Invalid(format!("extension degree {d} not in 1..=4")));
        }
        let q = p
            .checked_pow(d)
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::Invalid("field too large".into()))?;
        let modulus = if d == 1 {
            vec![0, 1]
        } else {
            monic_polys(p, d)
                .find(|f| is_irreducible(f, p))
                .expect("irreducible polynomials exist in every degree")
        };
        let mut ctx = FqContext { p, d, q, modulus, mul_table: None };
        if q <= 1024 {
            let mut t = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    t.push(ctx.mul_slow(a, b));
                }
            }
            ctx.mul_table = Some(t);
        }
        Ok(ctx)
    }

    /// Field of order q, where q must be a prime power p^d with d <= 4.
    pub fn of_order(q: u32) -> Result<Self> {
        for p in 2..=q {
            if q % p == 0 {
                let mut d = 0;
                let mut r = q;
                while r % p == 0 {
                    r /= p;
                    d += 1;
                }
                if r != 1 {
                    return Err(Error::Invalid(format!("{q} is not a prime power")));
                }
                return FqContext::new(p, d);
            }
        }
        Err(Error::Invalid(format!("{q} is not a prime power")))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }
    pub fn degree(&self) -> u32 {
        self.d
    }
    pub fn order(&self) -> u32 {
        self.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn coeffs(&self, a: FqElem) -> Vec<u32> {
        let mut v = a;
        (0..self.d)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> FqElem {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x % self.p)
    }

    pub fn from_int(&self, n: i64) -> FqElem {
        n.rem_euclid(self.p as i64) as u32
    }

    pub fn zero(&self) -> FqElem {
        0
    }
    pub fn one(&self) -> FqElem {
        1
    }
    /// The class of the polynomial variable g; for prime fields the smallest
    /// primitive element.
    pub fn generator(&self) -> FqElem {
        if self.d > 1 {
            return self.p;
        }
        (1..self.q)
            .find(|&a| self.mult_order(a) == self.q - 1)
            .unwrap_or(1)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.d == 1 {
            return (a + b) % self.p;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % self.p).collect();
        self.from_coeffs(&s)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.d == 1 {
            return (self.p - a) % self.p;
        }
        let s: Vec<u32> = self.coeffs(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.from_coeffs(&s)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    fn mul_slow(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.d == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as u32;
        }
        let (ca, cb) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; 2 * self.d as usize - 1];
        for (i, x) in ca.iter().enumerate() {
            for (j, y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let r = poly_rem(&prod, &self.modulus, self.p);
        self.from_coeffs(&r)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match &self.mul_table {
            Some(t) => t[(a * self.q + b) as usize],
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.q as u64 - 2))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn mult_order(&self, a: FqElem) -> u32 {
        if a == 0 {
            return 0;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_square(&self, a: FqElem) -> bool {
        a == 0 || self.p == 2 || self.pow(a, (self.q as u64 - 1) / 2) == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        0..self.q
    }

    /// Human readable form: the integer itself for prime fields, otherwise
    /// the polynomial in g.
    pub fn label(&self, a: FqElem) -> String {
        if self.d == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "g".to_string(),
                (1, c) => format!("{c}g"),
                (i, 1) => format!("g^{i}"),
                (i, c) => format!("{c}g^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_arithmetic() {
        let f = FqContext::new(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        let g = f.generator();
        assert_eq!(f.mul(g, g), f.add(g, 1));
        assert_eq!(f.inv(g).unwrap(), f.add(g, 1));
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn smallest_moduli() {
        assert_eq!(FqContext::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FqContext::new(5, 2).unwrap().modulus(), &[2, 0, 1]);
        assert_eq!(FqContext::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn field_axioms_small() {
        for (p, d) in [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2)] {
            let f = FqContext::new(p, d).unwrap();
            for a in f.elements() {
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in [0, 1, f.order() - 1] {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn of_order_rejects_non_prime_powers() {
        assert!(FqContext::of_order(6).is_err());
        assert_eq!(FqContext::of_order(9).unwrap().degree(), 2);
    }
}
