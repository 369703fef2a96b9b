//! Checks against oracles that share no code with the library: brute-force
//! search, linear algebra over F_p written here, determinantal divisors, and
//! tabulated Alexander polynomials.

use num_complex::Complex64;
use num_integer::Integer;
use proptest::prelude::*;

use quandlelab::algebra::{smith_normal_form, IntMatrix};
use quandlelab::catalog::{builtin, builtin_knot, KNOTS, NAMES};
use quandlelab::cover::cover_homology;
use quandlelab::group::{h2q_eisermann, AsGroup};
use quandlelab::knot::{enumerate_colorings, LinkDiagram};
use quandlelab::quandle::make_alexander;
use quandlelab::rack::{homology_group_of, Coefficients, Flavor, Limits};
use quandlelab::AbGroup;

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|c| {
            let minor: Vec<Vec<i128>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
            let s = if c % 2 == 0 { 1 } else { -1 };
            s * m[0][c] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors d_k = D_k / D_{k-1}, D_k the gcd of the k×k minors.
fn invariant_factors_by_minors(m: &[Vec<i64>], cols: usize) -> Vec<i128> {
    let rows = m.len();
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect()).collect();
                g = g.gcd(&det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_dense_rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn smith_form_matches_minors(rows in 1usize..5, cols in 1usize..5, seed in prop::collection::vec(-6i64..7, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 4 + j]).collect()).collect();
        let a = IntMatrix::from_rows(&m).unwrap();
        let sf = smith_normal_form(&a).unwrap();
        prop_assert_eq!(sf.u.mul(&a).unwrap().mul(&sf.v).unwrap(), sf.s.clone());
        prop_assert_eq!(det(&to_i128(&sf.u)).abs(), 1);
        prop_assert_eq!(det(&to_i128(&sf.v)).abs(), 1);
        let diag: Vec<i128> = sf.diagonal().into_iter().filter(|&d| d != 0).map(i128::from).collect();
        prop_assert_eq!(diag, invariant_factors_by_minors(&m, cols));
    }
}

/// Rank over F_p by Gaussian elimination.
fn rank_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> usize {
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c].rem_euclid(p) != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|&x| (m[rank][c] * x).rem_euclid(p) == 1).unwrap();
        for r in 0..m.len() {
            if r != rank && m[r][c].rem_euclid(p) != 0 {
                let f = m[r][c] * inv;
                for j in 0..cols {
                    m[r][j] = (m[r][j] - f * m[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Colourings by an Alexander quandle F_p^k with x◁y = Tx + (1-T)y form the
/// kernel of a linear system over F_p.
fn alexander_count(d: &LinkDiagram, p: i64, t: &[Vec<i64>]) -> u64 {
    let k = t.len();
    let n = d.num_arcs();
    let mut rows = Vec::new();
    for x in d.crossings() {
        for r in 0..k {
            let mut row = vec![0i64; n * k];
            row[x.k * k + r] += 1;
            for c in 0..k {
                let id = (r == c) as i64;
                row[x.i * k + c] -= t[r][c];
                row[x.j * k + c] -= id - t[r][c];
            }
            rows.push(row);
        }
    }
    (p as u64).pow((n * k - rank_mod_p(rows, p)) as u32)
}

fn brute_force(d: &LinkDiagram, q: &quandlelab::QuandleTable) -> Vec<Vec<usize>> {
    let n = d.num_arcs();
    let s = q.size();
    let mut out = Vec::new();
    for code in 0..s.pow(n as u32) {
        let c: Vec<usize> = (0..n).map(|a| code / s.pow(a as u32) % s).collect();
        if d.crossings().iter().all(|x| c[x.k] == q.op(c[x.i], c[x.j])) {
            out.push(c);
        }
    }
    out.sort();
    out
}

#[test]
fn colourings_match_brute_force() {
    for name in NAMES {
        let q = builtin(name).unwrap();
        for k in KNOTS {
            let d = builtin_knot(k).unwrap();
            if (q.size() as f64).powi(d.num_arcs() as i32) > 3e5 {
                continue;
            }
            assert_eq!(enumerate_colorings(&d, &q), brute_force(&d, &q), "{k} with {name}");
        }
    }
}

#[test]
fn dihedral_and_f4_counts_match_linear_algebra() {
    for k in KNOTS {
        let d = builtin_knot(k).unwrap();
        for p in [3u64, 5, 7] {
            let q = builtin(&format!("R{p}")).unwrap();
            let want = alexander_count(&d, p as i64, &[vec![-1]]);
            assert_eq!(enumerate_colorings(&d, &q).len() as u64, want, "{k} with R{p}");
        }
        // F_4 = F_2[ω], multiplication by ω on the basis (1, ω)
        let f4 = builtin("F4_omega").unwrap();
        let want = alexander_count(&d, 2, &[vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_colorings(&d, &f4).len() as u64, want, "{k} with F4");
    }
}

/// Alexander polynomials, constant term first.
const ALEXANDER: &[(&str, &[f64])] = &[
    ("3_1", &[1.0, -1.0, 1.0]),
    ("4_1", &[1.0, -3.0, 1.0]),
    ("5_1", &[1.0, -1.0, 1.0, -1.0, 1.0]),
    ("5_2", &[2.0, -3.0, 2.0]),
    ("6_1", &[2.0, -5.0, 2.0]),
    ("T3_4", &[1.0, -1.0, 0.0, 1.0, 0.0, -1.0, 1.0]),
];

/// |H_1| of the t-fold cyclic branched cover is |Π Δ(ζ)| over the
/// nontrivial t-th roots of unity, infinite when a factor vanishes.
fn cover_order(delta: &[f64], t: usize) -> Option<u64> {
    let mut prod = Complex64::new(1.0, 0.0);
    for j in 1..t {
        let z = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / t as f64);
        let v: Complex64 = delta.iter().enumerate().map(|(e, &c)| c * z.powu(e as u32)).sum();
        if v.norm() < 1e-9 {
            return None;
        }
        prod *= v;
    }
    Some(prod.norm().round() as u64)
}

#[test]
fn branched_cover_orders_match_alexander_polynomials() {
    for &(k, delta) in ALEXANDER {
        let d = builtin_knot(k).unwrap();
        for t in 2..=6 {
            let h = cover_homology(&d, t).unwrap();
            assert_eq!(h.order(), cover_order(delta, t), "{k}, t = {t}: {h}");
        }
    }
    // two-bridge knots have lens spaces as double covers
    for (k, det) in [("3_1", 3), ("4_1", 5), ("5_1", 5), ("5_2", 7), ("6_1", 9)] {
        assert_eq!(cover_homology(&builtin_knot(k).unwrap(), 2).unwrap(), AbGroup::cyclic(det), "{k}");
    }
    assert_eq!(cover_homology(&builtin_knot("4_1").unwrap(), 3).unwrap(), AbGroup::from_cyclic_orders(&[4, 4]));
}

fn mult_order(t: u64, p: u64) -> u64 {
    (1..p).find(|&k| (0..k).fold(1, |a, _| a * t % p) == 1).unwrap()
}

fn relabeled(q: &quandlelab::QuandleTable, seed: u64) -> quandlelab::QuandleTable {
    let n = q.size();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    q.relabel(&perm).unwrap()
}

fn h(q: &quandlelab::QuandleTable, n: usize, flavor: Flavor) -> AbGroup {
    homology_group_of(q, n, flavor, Coefficients::Point, Limits::default()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn prime_alexander_quandles(p in prop::sample::select(vec![3u64, 5, 7, 11, 13]), t0 in 2u64..13, seed in any::<u64>()) {
        let t = 2 + t0 % (p - 2);
        let q = make_alexander(&[p], &[vec![t as i64]]).unwrap();
        q.check_axioms().unwrap();
        prop_assert!(q.is_connected());
        prop_assert_eq!(q.type_of(), mult_order(t, p));
        prop_assert_eq!(q.inner_group().unwrap().order(), (p * mult_order(t, p)) as u128);
        let g = AsGroup::new(&q, 100_000).unwrap();
        prop_assert_eq!(g.kernel_order() as u64, p);
        let h2 = h(&q, 2, Flavor::Quandle);
        prop_assert_eq!(&h2, &AbGroup::trivial());
        prop_assert_eq!(h2q_eisermann(&q).unwrap(), h2);
        let r = relabeled(&q, seed);
        for n in 1..=3 {
            prop_assert_eq!(h(&r, n, Flavor::Quandle), h(&q, n, Flavor::Quandle));
            prop_assert_eq!(h(&r, n, Flavor::Rack), h(&q, n, Flavor::Rack));
        }
    }

    #[test]
    fn dihedral_associated_groups(n in prop::sample::select(vec![3u64, 5, 7, 9, 15, 21])) {
        let q = builtin(&format!("R{n}")).unwrap();
        prop_assert_eq!(q.inner_group().unwrap().order(), 2 * n as u128);
        let g = AsGroup::new(&q, 100_000).unwrap();
        g.verify().unwrap();
        prop_assert_eq!(g.kernel_order() as u64, n);
    }

    #[test]
    fn random_knot_colourings(p in prop::sample::select(vec![3u64, 5, 7]), k in prop::sample::select(KNOTS.to_vec())) {
        let d = builtin_knot(k).unwrap();
        let q = builtin(&format!("R{p}")).unwrap();
        for c in enumerate_colorings(&d, &q) {
            prop_assert!(d.crossings().iter().all(|x| c[x.k] == (2 * c[x.j] + p as usize - c[x.i]) % p as usize));
        }
    }
}
