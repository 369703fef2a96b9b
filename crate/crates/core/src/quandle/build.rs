use std::collections::{BTreeSet, VecDeque};

use super::{AlexanderData, QuandleTable};
use crate::algebra::{FqContext, FqElem};
use crate::error::{Error, Result};
use crate::perm::{self, Perm};

/// Largest table the constructors will build.
pub const MAX_CONSTRUCTED: usize = 4096;

fn too_big(n: usize) -> Result<()> {
    if n > MAX_CONSTRUCTED {
        return Err(Error::LimitExceeded { what: format!("quandle of order {n}"), limit: MAX_CONSTRUCTED });
    }
    Ok(())
}

/// Alexander quandle on Z/m_1 + ... + Z/m_k with x◁y = Tx + (1-T)y.
/// Elements are numbered in mixed radix with component 0 least significant.
pub fn make_alexander(moduli: &[u64], matrix: &[Vec<i64>]) -> Result<QuandleTable> {
    let k = moduli.len();
    if k == 0 || moduli.iter().any(|&m| m < 2) {
        return Err(Error::Invalid("moduli must be at least 2".into()));
    }
    if matrix.len() != k || matrix.iter().any(|r| r.len() != k) {
        return Err(Error::Invalid("T must be a k x k matrix".into()));
    }
    for i in 0..k {
        for j in 0..k {
            // T_ij must send Z/m_j into Z/m_i
            if (matrix[i][j] as i128 * moduli[j] as i128).rem_euclid(moduli[i] as i128) != 0 {
                return Err(Error::Invalid(format!("T entry ({i},{j}) is not well defined on the moduli")));
            }
        }
    }
    let n = moduli.iter().try_fold(1usize, |a, &m| a.checked_mul(m as usize)).unwrap_or(usize::MAX);
    too_big(n)?;
    let decode = |mut c: usize| -> Vec<i64> {
        moduli
            .iter()
            .map(|&m| {
                let v = (c % m as usize) as i64;
                c /= m as usize;
                v
            })
            .collect()
    };
    let encode = |v: &[i64]| -> usize {
        let mut c = 0usize;
        for i in (0..k).rev() {
            c = c * moduli[i] as usize + v[i].rem_euclid(moduli[i] as i64) as usize;
        }
        c
    };
    let apply_t = |v: &[i64]| -> Vec<i64> {
        (0..k)
            .map(|i| {
                let s: i128 = (0..k).map(|j| matrix[i][j] as i128 * v[j] as i128).sum();
                s.rem_euclid(moduli[i] as i128) as i64
            })
            .collect()
    };
    let elems: Vec<Vec<i64>> = (0..n).map(decode).collect();
    let mut image = vec![false; n];
    for v in &elems {
        image[encode(&apply_t(v))] = true;
    }
    if image.iter().any(|&b| !b) {
        return Err(Error::Invalid("T is not invertible on the module".into()));
    }
    let mut table = vec![vec![0u32; n]; n];
    for x in 0..n {
        for y in 0..n {
            let d: Vec<i64> = (0..k).map(|i| elems[x][i] - elems[y][i]).collect();
            let td = apply_t(&d);
            let r: Vec<i64> = (0..k).map(|i| elems[y][i] + td[i]).collect();
            table[x][y] = encode(&r) as u32;
        }
    }
    let labels = elems
        .iter()
        .map(|v| {
            if k == 1 {
                v[0].to_string()
            } else {
                format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    let mut q = QuandleTable::new(table, Some(labels))?;
    q.alexander = Some(AlexanderData { moduli: moduli.to_vec(), matrix: matrix.to_vec() });
    Ok(q)
}

/// Dihedral quandle R_n on Z/n.
pub fn make_dihedral(n: u64) -> Result<QuandleTable> {
    make_alexander(&[n], &[vec![-1]])
}

/// Alexander quandle F_q[T]/(T - omega), realised on (Z/p)^d through the
/// polynomial basis so that element codes agree with `FqContext` codes.
pub fn make_alexander_fq(ctx: &FqContext, omega: FqElem) -> Result<QuandleTable> {
    if omega == 0 || omega >= ctx.order() {
        return Err(Error::Invalid("omega must be a nonzero field element".into()));
    }
    let (p, d) = (ctx.characteristic() as u64, ctx.degree() as usize);
    let mut matrix = vec![vec![0i64; d]; d];
    for j in 0..d {
        let basis = (p as u32).pow(j as u32);
        let col = ctx.coeffs(ctx.mul(omega, basis));
        for i in 0..d {
            matrix[i][j] = col[i] as i64;
        }
    }
    let mut q = make_alexander(&vec![p; d], &matrix)?;
    let labels: Vec<String> = (0..ctx.order()).map(|a| ctx.label(a)).collect();
    q = QuandleTable { labels, ..q };
    Ok(q)
}

fn odd_field(q: u32) -> Result<FqContext> {
    let ctx = FqContext::of_order(q)?;
    if ctx.characteristic() == 2 {
        return Err(Error::Invalid(format!("q = {q} must be odd")));
    }
    Ok(ctx)
}

/// All vectors of F_q^dim in lexicographic order, first coordinate most significant.
fn vectors(ctx: &FqContext, dim: usize) -> Vec<Vec<FqElem>> {
    let q = ctx.order() as usize;
    let total = q.pow(dim as u32);
    (0..total)
        .map(|mut c| {
            let mut v = vec![0; dim];
            for i in (0..dim).rev() {
                v[i] = (c % q) as FqElem;
                c /= q;
            }
            v
        })
        .collect()
}

fn vector_label(ctx: &FqContext, v: &[FqElem]) -> String {
    format!("({})", v.iter().map(|&a| ctx.label(a)).collect::<Vec<_>>().join(","))
}

fn table_from_points(
    pts: &[Vec<FqElem>],
    ctx: &FqContext,
    f: impl Fn(&[FqElem], &[FqElem]) -> Vec<FqElem>,
) -> Result<QuandleTable> {
    let index: std::collections::HashMap<&[FqElem], usize> =
        pts.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut table = vec![vec![0u32; pts.len()]; pts.len()];
    for (x, vx) in pts.iter().enumerate() {
        for (y, vy) in pts.iter().enumerate() {
            let r = f(vx, vy);
            table[x][y] = *index.get(r.as_slice()).ok_or_else(|| Error::Consistency("operation leaves the carrier".into()))? as u32;
        }
    }
    QuandleTable::new(table, Some(pts.iter().map(|v| vector_label(ctx, v)).collect()))
}

/// Symplectic quandle on F_q^{2n} minus 0: x◁y = <x,y>y + x with
/// <x,y> = sum_i x_i y_{n+i} - x_{n+i} y_i.
pub fn make_symplectic(q: u32, n: usize) -> Result<QuandleTable> {
    let ctx = odd_field(q)?;
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let size = (q as usize).checked_pow(2 * n as u32).unwrap_or(usize::MAX);
    too_big(size.saturating_sub(1))?;
    let pts: Vec<Vec<FqElem>> = vectors(&ctx, 2 * n).into_iter().filter(|v| v.iter().any(|&a| a != 0)).collect();
    let form = |x: &[FqElem], y: &[FqElem]| {
        (0..n).fold(0, |acc, i| ctx.add(acc, ctx.sub(ctx.mul(x[i], y[n + i]), ctx.mul(x[n + i], y[i]))))
    };
    table_from_points(&pts, &ctx, |x, y| {
        let c = form(x, y);
        x.iter().zip(y).map(|(&a, &b)| ctx.add(ctx.mul(c, b), a)).collect()
    })
}

/// Spherical quandle on {x in F_q^{n+1} : <x,x> = 1}: x◁y = 2<x,y>y - x.
pub fn make_spherical(q: u32, n: usize) -> Result<QuandleTable> {
    let ctx = odd_field(q)?;
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    let dot = |x: &[FqElem], y: &[FqElem]| x.iter().zip(y).fold(0, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)));
    let total = (q as usize).checked_pow(n as u32 + 1).unwrap_or(usize::MAX);
    if total > 64 * MAX_CONSTRUCTED {
        return Err(Error::LimitExceeded { what: "ambient space".into(), limit: 64 * MAX_CONSTRUCTED });
    }
    let pts: Vec<Vec<FqElem>> = vectors(&ctx, n + 1).into_iter().filter(|v| dot(v, v) == 1).collect();
    too_big(pts.len())?;
    let two = ctx.from_int(2);
    let mut t = table_from_points(&pts, &ctx, |x, y| {
        let c = ctx.mul(two, dot(x, y));
        x.iter().zip(y).map(|(&a, &b)| ctx.sub(ctx.mul(c, b), a)).collect()
    })?;
    if n == 1 {
        t.notes.push("spherical quandle with n = 1 is a dihedral-type quandle outside the connected range".into());
    }
    Ok(t)
}

/// Conjugacy class of `seed` in the group generated by `gens`, with
/// x◁y = y^{-1}xy. Elements are sorted by their image arrays.
pub fn make_conjugation(gens: &[Perm], seed: &Perm) -> Result<QuandleTable> {
    let deg = seed.len();
    if !perm::is_permutation(seed) || gens.iter().any(|g| g.len() != deg || !perm::is_permutation(g)) {
        return Err(Error::Invalid("generators and seed must be permutations of one degree".into()));
    }
    let mut seen: BTreeSet<Perm> = BTreeSet::from([seed.clone()]);
    let mut q = VecDeque::from([seed.clone()]);
    while let Some(x) = q.pop_front() {
        for g in gens {
            let y = perm::conjugate(&x, g);
            if seen.insert(y.clone()) {
                too_big(seen.len())?;
                q.push_back(y);
            }
        }
    }
    let elems: Vec<Perm> = seen.into_iter().collect();
    let index: std::collections::HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let table = elems
        .iter()
        .map(|x| elems.iter().map(|y| index[&perm::conjugate(x, y)] as u32).collect())
        .collect();
    QuandleTable::new(table, Some(elems.iter().map(|p| perm::to_cycle_string(p)).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_omega() {
        let ctx = FqContext::new(2, 2).unwrap();
        let q = make_alexander_fq(&ctx, ctx.generator()).unwrap();
        q.check_axioms().unwrap();
        assert_eq!(q.size(), 4);
        assert_eq!(q.op(0, ctx.generator() as usize), 1);
        assert!(q.is_connected());
        assert_eq!(q.type_of(), 3);
    }

    #[test]
    fn symplectic_example() {
        let q = make_symplectic(5, 1).unwrap();
        assert_eq!(q.size(), 24);
        let x = q.index_of_label("(1,0)").unwrap();
        let y = q.index_of_label("(0,1)").unwrap();
        assert_eq!(q.label(q.op(x, y)), "(1,1)");
        assert!(make_symplectic(4, 1).is_err());
    }

    #[test]
    fn spherical_example() {
        let q = make_spherical(5, 2).unwrap();
        q.check_axioms().unwrap();
        // x^2 + y^2 + z^2 = 1 has q^2 + q solutions over F_5
        assert_eq!(q.size(), 30);
        assert_eq!(q.type_of(), 2);
        // rotations by pi have spinor norm 1, so Inn is Omega(3,5), not O(3,5)
        assert_eq!(q.inner_group().unwrap().order(), 60);
        assert!(make_spherical(5, 1).unwrap().notes.len() == 1);
    }

    #[test]
    fn rejects_singular_t() {
        assert!(make_alexander(&[4], &[vec![2]]).is_err());
        assert!(make_alexander(&[2, 4], &[vec![1, 1], vec![1, 1]]).is_err());
    }
}
