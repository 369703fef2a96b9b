//! Second quandle homology from stabilizers, and Clauwens' model for
//! connected Alexander quandles.

use super::stabilizer::StabilizerPresentation;
use crate::algebra::{AbGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::quandle::QuandleTable;

/// H_2^Q(X) as the sum over orbits of Stab(x_i)_ab / <[e_{x_i}]>, x_i the
/// smallest element of each orbit.
pub fn h2q_eisermann(q: &QuandleTable) -> Result<AbGroup> {
    let mut total = AbGroup::trivial();
    for orbit in q.orbits() {
        let sp = StabilizerPresentation::new(q, orbit[0])?;
        total = total.direct_sum(&sp.reduced_abelianization_group()?);
    }
    Ok(total)
}

/// Coker(μ) for μ(x⊗y) = x⊗y - Ty⊗x on X ⊗_Z X.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClauwensModel {
    pub coker_mu: AbGroup,
    /// Predicted |Ker ε| = |X| · |Coker μ|.
    pub predicted_kernel_order: u64,
}

pub fn clauwens_model(q: &QuandleTable) -> Result<ClauwensModel> {
    let a = q.alexander.as_ref().ok_or(Error::NotAlexander)?;
    if !q.is_connected() {
        return Err(Error::NotConnected);
    }
    let k = a.moduli.len();
    let t = &a.matrix;
    let idx = |i: usize, j: usize| i * k + j;
    let mut rows: Vec<(usize, usize, i64)> = Vec::new();
    let mut r = 0;
    // order relations of e_i ⊗ e_j
    for i in 0..k {
        for j in 0..k {
            let g = num_integer::gcd(a.moduli[i], a.moduli[j]) as i64;
            rows.push((r, idx(i, j), g));
            r += 1;
        }
    }
    // μ(e_a ⊗ e_b) = e_a⊗e_b - Σ_c T_cb e_c⊗e_a
    for ai in 0..k {
        for b in 0..k {
            rows.push((r, idx(ai, b), 1));
            for c in 0..k {
                if t[c][b] != 0 {
                    rows.push((r, idx(c, ai), -t[c][b]));
                }
            }
            r += 1;
        }
    }
    let m = IntMatrix::from_triplets(r, k * k, rows)?;
    let coker_mu = AbGroup::from_relation_rows(&m)?;
    let order = coker_mu.order().ok_or_else(|| Error::Consistency("Coker μ is infinite".into()))?;
    Ok(ClauwensModel { coker_mu, predicted_kernel_order: q.size() as u64 * order })
}
