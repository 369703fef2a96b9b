use num_bigint::BigInt;

use super::abgroup::AbGroup;
use super::matrix::IntMatrix;
use super::snf::{dense_with_promotion, invariant_factors, reduce_rows, to_i64_vec, DenseSnf, Ring, Track};
use crate::error::{Error, Result};

/// Linear functionals that read off the coordinates of a cycle in the
/// invariant factor decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateMap {
    /// One row per coordinate, torsion coordinates first then free ones.
    rows: Vec<Vec<i64>>,
    /// Cyclic order of each coordinate, 0 for free.
    orders: Vec<u64>,
    d_out: IntMatrix,
}

impl CoordinateMap {
    /// Coordinates of a cycle: torsion entries reduced into [0, d), free
    /// entries as integers.
    pub fn coordinates(&self, z: &[i64]) -> Result<Vec<i64>> {
        if z.len() != self.d_out.cols() {
            return Err(Error::DimensionMismatch("chain length".into()));
        }
        if self.d_out.mul_vec(z)?.iter().any(|&x| x != 0) {
            return Err(Error::NotACycle);
        }
        Ok(self
            .rows
            .iter()
            .zip(&self.orders)
            .map(|(row, &d)| {
                let v: i128 = row.iter().zip(z).map(|(&a, &b)| a as i128 * b as i128).sum();
                if d == 0 {
                    v as i64
                } else {
                    v.rem_euclid(d as i128) as i64
                }
            })
            .collect())
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// The functional behind coordinate i, as a row over the chain basis.
    pub fn row(&self, i: usize) -> &[i64] {
        &self.rows[i]
    }

    /// Order of the class with the given coordinates, `None` if infinite.
    pub fn class_order(&self, coords: &[i64]) -> Option<u64> {
        use num_integer::Integer;
        let mut ord: u64 = 1;
        for (&c, &d) in coords.iter().zip(&self.orders) {
            if d == 0 {
                if c != 0 {
                    return None;
                }
            } else {
                let g = (c as u64).gcd(&d);
                ord = ord.lcm(&(d / g));
            }
        }
        Some(ord)
    }
}

#[derive(Debug, Clone)]
pub struct Homology {
    pub group: AbGroup,
    pub coords: Option<CoordinateMap>,
}

fn check_composition(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<()> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::DimensionMismatch(format!(
            "d_out has {} columns but d_in has {} rows",
            d_out.cols(),
            d_in.rows()
        )));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NonCommutingComposition);
    }
    Ok(())
}

fn dense_i64<T: Ring>(v: &[T], r: usize, c: usize) -> Result<Vec<Vec<i64>>> {
    (0..r).map(|i| to_i64_vec(&v[i * c..(i + 1) * c])).collect()
}

fn product(a: &[Vec<i64>], b: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    a.iter()
        .map(|row| {
            let mut out = vec![0i128; cols];
            for (&x, brow) in row.iter().zip(b) {
                if x != 0 {
                    for (o, &y) in out.iter_mut().zip(brow) {
                        *o = o.checked_add(x as i128 * y as i128).ok_or(Error::Overflow)?;
                    }
                }
            }
            out.into_iter().map(|v| i64::try_from(v).map_err(|_| Error::Overflow)).collect()
        })
        .collect()
}

/// Homology ker(d_out)/im(d_in) together with a coordinate map.
///
/// The torsion of Coker(d_in) is the torsion of the homology, so torsion
/// coordinates are read off the cokernel directly. Free coordinates come
/// from the kernel of d_out on the free part of the cokernel.
pub fn homology_at(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<Homology> {
    check_composition(d_in, d_out)?;
    let m = d_in.rows();

    let red = reduce_rows(d_in)?;
    let k = red.rows.len();
    type Fin = (Vec<Vec<i64>>, Vec<i64>);
    fn fin_left<T: Ring>(st: &DenseSnf<T>) -> Result<Fin> {
        Ok((dense_i64(st.left.as_ref().unwrap(), st.r, st.r)?, to_i64_vec(&st.diagonal())?))
    }
    let track = Track { left: true, right: false, right_inv: false };
    let (left, diag) = if k == 0 {
        (Vec::new(), Vec::new())
    } else {
        dense_with_promotion(&red.rows, red.cols, track, fin_left::<i128>, fin_left::<BigInt>)?
    };

    // cokernel functionals over the original basis
    let mut torsion_rows = Vec::new();
    let mut free_rows = Vec::new();
    for (i, lrow) in left.iter().enumerate() {
        let mut f = vec![0i128; m];
        for (&x, t) in lrow.iter().zip(&red.transform) {
            if x != 0 {
                for &(c, v) in t {
                    let e = &mut f[c as usize];
                    *e = e.checked_add((x as i128).checked_mul(v).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
                }
            }
        }
        let f: Vec<i64> = f.into_iter().map(|v| i64::try_from(v).map_err(|_| Error::Overflow)).collect::<Result<_>>()?;
        match diag.get(i).copied().unwrap_or(0) {
            0 => free_rows.push(f),
            1 => {}
            d => torsion_rows.push((f, d as u64)),
        }
    }

    let mut rows: Vec<Vec<i64>> = Vec::new();
    let mut orders = Vec::new();
    let mut torsion = Vec::new();
    for (row, d) in torsion_rows {
        rows.push(row);
        orders.push(d);
        torsion.push(d);
    }
    let free = free_coordinates(&free_rows, d_out, m)?;
    let rank = free.len();
    for row in free {
        rows.push(row);
        orders.push(0);
    }
    Ok(Homology {
        group: AbGroup { rank, torsion },
        coords: Some(CoordinateMap { rows, orders, d_out: d_out.clone() }),
    })
}

/// `f` maps chains onto the free part Z^a of the cokernel. Returns the
/// functionals giving coordinates on the kernel of the map Z^a → C_{n-1}
/// induced by d_out.
fn free_coordinates(f: &[Vec<i64>], d_out: &IntMatrix, m: usize) -> Result<Vec<Vec<i64>>> {
    let a = f.len();
    if a == 0 {
        return Ok(Vec::new());
    }
    // integer right inverse g of f: f = u^{-1} [I 0] v^{-1}, so g = v[:, ..a] u
    type Fin = (Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<i64>);
    fn fin_uv<T: Ring>(st: &DenseSnf<T>) -> Result<Fin> {
        Ok((
            dense_i64(st.left.as_ref().unwrap(), st.r, st.r)?,
            dense_i64(st.right.as_ref().unwrap(), st.c, st.c)?,
            to_i64_vec(&st.diagonal())?,
        ))
    }
    let track = Track { left: true, right: true, right_inv: false };
    let (u, v, diag) = dense_with_promotion(f, m, track, fin_uv::<i128>, fin_uv::<BigInt>)?;
    if diag.iter().any(|&d| d != 1) {
        return Err(Error::Consistency("free cokernel functionals are not primitive".into()));
    }
    let v_a: Vec<Vec<i64>> = v.iter().map(|row| row[..a].to_vec()).collect();
    let g = product(&v_a, &u, a)?;
    let induced = d_out.mul(&IntMatrix::from_rows(&g)?)?;

    // kernel of the induced map: trailing rows of V^{-1}
    fn fin_kernel<T: Ring>(st: &DenseSnf<T>) -> Result<Vec<Vec<i64>>> {
        let rank = st.diagonal().iter().filter(|x| !x.is_zero()).count();
        let w = st.right_inv.as_ref().unwrap();
        (rank..st.c).map(|i| to_i64_vec(&w[i * st.c..(i + 1) * st.c])).collect()
    }
    let kernel = if induced.rows() == 0 {
        (0..a).map(|i| (0..a).map(|j| (i == j) as i64).collect()).collect()
    } else {
        let track = Track { left: false, right: false, right_inv: true };
        dense_with_promotion(&induced.to_dense_rows(), a, track, fin_kernel::<i128>, fin_kernel::<BigInt>)?
    };
    product(&kernel, f, m)
}

/// Homology group only, through the sparse invariant factor path.
pub fn homology_group(d_in: &IntMatrix, d_out: &IntMatrix) -> Result<AbGroup> {
    check_composition(d_in, d_out)?;
    let out = invariant_factors(d_out)?;
    let inn = invariant_factors(d_in)?;
    Ok(AbGroup { rank: d_in.rows() - out.rank - inn.rank, torsion: inn.torsion })
}
