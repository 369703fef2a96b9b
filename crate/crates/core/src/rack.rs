//! Rack and quandle chain complexes C_n(X; Y) for Y a point or Y = X, and
//! their homology.
//!
//! ∂_n(y, x_1..x_n) = Σ_i (-1)^i [ (y◁x_i, x_1◁x_i, .., x_{i-1}◁x_i, x_{i+1}, .., x_n)
//!                                 - (y, x_1, .., x̂_i, .., x_n) ]
//! In the quandle flavour tuples with x_j = x_{j+1} span the degenerate
//! subcomplex and are dropped; the remaining tuples are ordered
//! lexicographically.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{homology_at, homology_group, AbGroup, CoordinateMap, Homology, IntMatrix};
use crate::error::{Error, Result};
use crate::quandle::QuandleTable;

pub const DEFAULT_MAX_BASIS: usize = 500_000;
/// Above this many chain-group entries the coordinate map is skipped.
const COORD_MAX_ENTRIES: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flavor {
    Rack,
    Quandle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Coefficients {
    Point,
    /// Y = X with the action of X on itself.
    Primitive,
}

#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_basis: DEFAULT_MAX_BASIS }
    }
}

impl Limits {
    pub fn large() -> Self {
        Limits { max_basis: usize::MAX }
    }
}

/// Basis indexing for one chain group.
#[derive(Debug, Clone, Copy)]
pub struct Basis {
    n: usize,
    degree: usize,
    flavor: Flavor,
    coeffs: Coefficients,
}

impl Basis {
    pub fn new(q: &QuandleTable, degree: usize, flavor: Flavor, coeffs: Coefficients) -> Self {
        Basis { n: q.size(), degree, flavor, coeffs }
    }

    fn y_count(&self) -> usize {
        match self.coeffs {
            Coefficients::Point => 1,
            Coefficients::Primitive => self.n,
        }
    }

    fn x_count(&self) -> Option<usize> {
        let n = self.n;
        match (self.flavor, self.degree) {
            (_, 0) => Some(1),
            (Flavor::Rack, d) => n.checked_pow(d as u32),
            (Flavor::Quandle, d) => (n - 1).checked_pow(d as u32 - 1).and_then(|v| v.checked_mul(n)),
        }
    }

    pub fn len(&self) -> Option<usize> {
        self.x_count().and_then(|c| c.checked_mul(self.y_count()))
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Tuple length including the Y entry when present.
    fn width(&self) -> usize {
        self.degree + usize::from(self.coeffs == Coefficients::Primitive)
    }

    fn has_y(&self) -> bool {
        self.coeffs == Coefficients::Primitive
    }

    /// Index of a tuple, None if it is degenerate in the quandle flavour.
    pub fn index(&self, t: &[usize]) -> Option<usize> {
        debug_assert_eq!(t.len(), self.width());
        let (y, xs) = if self.has_y() { (t[0], &t[1..]) } else { (0, t) };
        let mut idx = 0usize;
        match self.flavor {
            Flavor::Rack => {
                for &x in xs {
                    idx = idx * self.n + x;
                }
            }
            Flavor::Quandle => {
                for (k, &x) in xs.iter().enumerate() {
                    if k == 0 {
                        idx = x;
                    } else {
                        let prev = xs[k - 1];
                        if x == prev {
                            return None;
                        }
                        let adj = if x < prev { x } else { x - 1 };
                        idx = idx * (self.n - 1) + adj;
                    }
                }
            }
        }
        Some(y * self.x_count().unwrap() + idx)
    }

    pub fn tuple(&self, mut idx: usize) -> Vec<usize> {
        let xc = self.x_count().unwrap();
        let y = idx / xc;
        idx %= xc;
        let d = self.degree;
        let mut xs = vec![0; d];
        match self.flavor {
            Flavor::Rack => {
                for k in (0..d).rev() {
                    xs[k] = idx % self.n;
                    idx /= self.n;
                }
            }
            Flavor::Quandle => {
                let mut adj = vec![0; d];
                for k in (1..d).rev() {
                    adj[k] = idx % (self.n - 1);
                    idx /= self.n - 1;
                }
                if d > 0 {
                    xs[0] = idx;
                }
                for k in 1..d {
                    xs[k] = if adj[k] < xs[k - 1] { adj[k] } else { adj[k] + 1 };
                }
            }
        }
        if self.has_y() {
            let mut t = vec![y];
            t.extend(xs);
            t
        } else {
            xs
        }
    }
}

/// Boundary terms of one basis tuple, as (coefficient, tuple).
pub fn boundary_terms(q: &QuandleTable, t: &[usize], has_y: bool) -> Vec<(i64, Vec<usize>)> {
    let off = usize::from(has_y);
    let xs = &t[off..];
    let d = xs.len();
    let mut out = Vec::with_capacity(2 * d);
    for i in 0..d {
        let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
        let xi = xs[i];
        let mut a = Vec::with_capacity(t.len() - 1);
        let mut b = Vec::with_capacity(t.len() - 1);
        if has_y {
            a.push(q.op(t[0], xi));
            b.push(t[0]);
        }
        for (j, &x) in xs.iter().enumerate() {
            if j < i {
                a.push(q.op(x, xi));
                b.push(x);
            } else if j > i {
                a.push(x);
                b.push(x);
            }
        }
        out.push((sign, a));
        out.push((-sign, b));
    }
    out
}

/// ∂_n : C_n → C_{n-1}.
pub fn boundary_matrix(
    q: &QuandleTable,
    degree: usize,
    flavor: Flavor,
    coeffs: Coefficients,
    limits: Limits,
) -> Result<IntMatrix> {
    let src = Basis::new(q, degree, flavor, coeffs);
    let cols = src.len().filter(|&c| c <= limits.max_basis).ok_or(Error::LimitExceeded {
        what: format!("basis of C_{degree}"),
        limit: limits.max_basis,
    })?;
    if degree == 0 {
        return Ok(IntMatrix::zeros(0, cols));
    }
    let dst = Basis::new(q, degree - 1, flavor, coeffs);
    let rows = dst.len().unwrap();
    const BLOCK: usize = 4096;
    let blocks: Vec<Vec<(usize, usize, i64)>> = (0..cols.div_ceil(BLOCK))
        .into_par_iter()
        .map(|b| {
            let mut trip = Vec::new();
            for c in b * BLOCK..((b + 1) * BLOCK).min(cols) {
                let t = src.tuple(c);
                for (s, u) in boundary_terms(q, &t, src.has_y()) {
                    if let Some(r) = dst.index(&u) {
                        trip.push((r, c, s));
                    }
                }
            }
            trip
        })
        .collect();
    IntMatrix::from_triplets(rows, cols, blocks.into_iter().flatten())
}

fn wants_coordinates(q: &QuandleTable, degree: usize, flavor: Flavor, coeffs: Coefficients) -> bool {
    let m = Basis::new(q, degree, flavor, coeffs).len().unwrap_or(usize::MAX);
    let k = Basis::new(q, degree + 1, flavor, coeffs).len().unwrap_or(usize::MAX);
    m.saturating_mul(m) <= COORD_MAX_ENTRIES && m.saturating_mul(k) <= COORD_MAX_ENTRIES
}

/// H_n of the complex; the coordinate map is included when the chain groups
/// are small enough for dense elimination.
pub fn homology(q: &QuandleTable, degree: usize, flavor: Flavor, coeffs: Coefficients, limits: Limits) -> Result<Homology> {
    let d_in = boundary_matrix(q, degree + 1, flavor, coeffs, limits)?;
    let d_out = boundary_matrix(q, degree, flavor, coeffs, limits)?;
    if wants_coordinates(q, degree, flavor, coeffs) {
        homology_at(&d_in, &d_out)
    } else {
        Ok(Homology { group: homology_group(&d_in, &d_out)?, coords: None })
    }
}

/// Shorthand for the homology group alone.
pub fn homology_group_of(q: &QuandleTable, degree: usize, flavor: Flavor, coeffs: Coefficients, limits: Limits) -> Result<AbGroup> {
    let d_in = boundary_matrix(q, degree + 1, flavor, coeffs, limits)?;
    let d_out = boundary_matrix(q, degree, flavor, coeffs, limits)?;
    homology_group(&d_in, &d_out)
}

/// A chain as a formal sum of tuples (tuples include the Y entry when present).
pub type Chain = BTreeMap<Vec<usize>, i64>;

/// Coefficient vector of a chain in the given basis; degenerate tuples of
/// the quandle flavour are dropped.
pub fn chain_vector(basis: &Basis, z: &Chain) -> Result<Vec<i64>> {
    let len = basis.len().ok_or(Error::Overflow)?;
    let mut v = vec![0i64; len];
    for (t, &c) in z {
        if t.len() != basis.width() {
            return Err(Error::DimensionMismatch("tuple length".into()));
        }
        if let Some(i) = basis.index(t) {
            v[i] = v[i].checked_add(c).ok_or(Error::Overflow)?;
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleClass {
    pub group: AbGroup,
    pub coordinates: Vec<i64>,
    /// None for classes of infinite order.
    pub order: Option<u64>,
}

/// Homology with a coordinate map, computed once and reused for many cycles.
pub struct ClassifyingMap {
    pub basis: Basis,
    pub group: AbGroup,
    pub coords: CoordinateMap,
}

impl ClassifyingMap {
    pub fn new(q: &QuandleTable, degree: usize, flavor: Flavor, coeffs: Coefficients, limits: Limits) -> Result<Self> {
        let d_in = boundary_matrix(q, degree + 1, flavor, coeffs, limits)?;
        let d_out = boundary_matrix(q, degree, flavor, coeffs, limits)?;
        let h = homology_at(&d_in, &d_out)?;
        Ok(ClassifyingMap {
            basis: Basis::new(q, degree, flavor, coeffs),
            group: h.group,
            coords: h.coords.expect("dense homology has coordinates"),
        })
    }

    pub fn classify(&self, z: &Chain) -> Result<CycleClass> {
        let v = chain_vector(&self.basis, z)?;
        let coordinates = self.coords.coordinates(&v)?;
        let order = self.coords.class_order(&coordinates);
        Ok(CycleClass { group: self.group.clone(), coordinates, order })
    }
}

pub fn cycle_class(q: &QuandleTable, degree: usize, flavor: Flavor, z: &Chain) -> Result<CycleClass> {
    ClassifyingMap::new(q, degree, flavor, Coefficients::Point, Limits::default())?.classify(z)
}

/// Normalized quandle 2-cocycle with values in Z/modulus; φ(x,x) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    pub modulus: u64,
    n: usize,
    values: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CocycleJson {
    modulus: u64,
    values: BTreeMap<String, u64>,
}

impl Cocycle {
    pub fn new(modulus: u64, n: usize, values: Vec<u64>) -> Result<Self> {
        if modulus < 1 || values.len() != n * n {
            return Err(Error::Invalid("cocycle needs a positive modulus and an n x n table".into()));
        }
        Ok(Cocycle { modulus, n, values: values.into_iter().map(|v| v % modulus).collect() })
    }

    pub fn zero(modulus: u64, n: usize) -> Self {
        Cocycle { modulus, n, values: vec![0; n * n] }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn value(&self, x: usize, y: usize) -> u64 {
        self.values[x * self.n + y]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Checks φ(x,x) = 0 and the 2-cocycle condition
    /// φ(x,y) + φ(x◁y,z) = φ(x,z) + φ(x◁z,y◁z).
    pub fn check(&self, q: &QuandleTable) -> Result<()> {
        if q.size() != self.n {
            return Err(Error::NotACocycle("size differs from the quandle".into()));
        }
        let m = self.modulus;
        for x in 0..self.n {
            if self.value(x, x) != 0 {
                return Err(Error::NotACocycle(format!("value at ({x},{x}) is not zero")));
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                for z in 0..self.n {
                    let l = self.value(x, y) + self.value(q.op(x, y), z);
                    let r = self.value(x, z) + self.value(q.op(x, z), q.op(y, z));
                    if l % m != r % m {
                        return Err(Error::NotACocycle(format!("condition fails at ({x},{y},{z})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut values = BTreeMap::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.value(x, y) != 0 {
                    values.insert(format!("{x},{y}"), self.value(x, y));
                }
            }
        }
        serde_json::to_value(CocycleJson { modulus: self.modulus, values }).expect("cocycle serializes")
    }

    pub fn from_json(v: &serde_json::Value, n: usize) -> Result<Self> {
        let j: CocycleJson = serde_json::from_value(v.clone())?;
        let mut values = vec![0; n * n];
        for (k, val) in j.values {
            let mut it = k.split(',').map(|s| s.trim().parse::<usize>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(x)), Some(Ok(y)), None) if x < n && y < n => values[x * n + y] = val,
                _ => return Err(Error::Parse(format!("bad cocycle key {k}"))),
            }
        }
        Cocycle::new(j.modulus, n, values)
    }
}

/// Generators of H^2_Q(X; Z/m), one per cyclic summand of H_2^Q(X) whose
/// order shares a factor with m; each comes with its order in H^2.
pub fn two_cocycles(q: &QuandleTable, m: u64) -> Result<Vec<(Cocycle, u64)>> {
    if m < 2 {
        return Err(Error::Invalid("modulus must be at least 2".into()));
    }
    let cm = ClassifyingMap::new(q, 2, Flavor::Quandle, Coefficients::Point, Limits::default())?;
    let n = q.size();
    let mut out = Vec::new();
    for (i, &d) in cm.coords.orders().iter().enumerate() {
        let g = if d == 0 { m } else { num_integer::gcd(d, m) };
        if g == 1 {
            continue;
        }
        let row = cm.coords.row(i);
        let mut values = vec![0u64; n * n];
        for x in 0..n {
            for y in 0..n {
                if x == y {
                    continue;
                }
                let idx = cm.basis.index(&[x, y]).unwrap();
                let f = row[idx];
                values[x * n + y] = ((m / g) as i128 * f as i128).rem_euclid(m as i128) as u64;
            }
        }
        let c = Cocycle::new(m, n, values)?;
        c.check(q)?;
        out.push((c, g));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::make_dihedral;

    #[test]
    fn basis_indexing_round_trips() {
        let q = make_dihedral(4).unwrap();
        for flavor in [Flavor::Rack, Flavor::Quandle] {
            for coeffs in [Coefficients::Point, Coefficients::Primitive] {
                for d in 0..4 {
                    let b = Basis::new(&q, d, flavor, coeffs);
                    let mut prev: Option<Vec<usize>> = None;
                    for i in 0..b.len().unwrap() {
                        let t = b.tuple(i);
                        assert_eq!(b.index(&t), Some(i));
                        if let Some(p) = prev {
                            assert!(p < t, "lexicographic order");
                        }
                        prev = Some(t);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_two_boundary() {
        let q = make_dihedral(3).unwrap();
        let terms = boundary_terms(&q, &[0, 1], false);
        let mut chain: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
        for (s, t) in terms {
            *chain.entry(t).or_insert(0) += s;
        }
        chain.retain(|_, v| *v != 0);
        // ∂(x,y) = (x◁y) - (x) with x◁y = 2
        assert_eq!(chain, BTreeMap::from([(vec![0], -1), (vec![2], 1)]));
    }

    #[test]
    fn dihedral_three_homology() {
        let q = make_dihedral(3).unwrap();
        let l = Limits::default();
        let h2 = homology(&q, 2, Flavor::Quandle, Coefficients::Point, l).unwrap();
        assert_eq!(h2.group, AbGroup::trivial());
        let h3 = homology(&q, 3, Flavor::Quandle, Coefficients::Point, l).unwrap();
        assert_eq!(h3.group, AbGroup::cyclic(3));
    }

    #[test]
    fn cap_is_enforced() {
        let q = make_dihedral(5).unwrap();
        let err = boundary_matrix(&q, 4, Flavor::Rack, Coefficients::Point, Limits { max_basis: 100 }).unwrap_err();
        assert!(matches!(err, Error::LimitExceeded { .. }));
    }

    #[test]
    fn cocycle_json() {
        let c = Cocycle::new(2, 2, vec![0, 1, 0, 0]).unwrap();
        let j = c.to_json();
        assert_eq!(j, serde_json::json!({"modulus": 2, "values": {"0,1": 1}}));
        assert_eq!(Cocycle::from_json(&j, 2).unwrap(), c);
    }
}
