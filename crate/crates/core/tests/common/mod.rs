//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's q-analogue or linear-algebra code.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::Ratio;

use qlam_core::ring_core::{Monomial, SparsePoly};

/// Dense coefficients of `binom(n, k)_q` from the q-Pascal recursion on
/// coefficient vectors.
pub fn gaussian_dense(n: usize, k: usize) -> Vec<i64> {
    if k > n {
        return vec![];
    }
    let mut row: Vec<Vec<i64>> = vec![vec![1]];
    for m in 1..=n {
        let mut next = vec![vec![1]];
        for j in 1..m {
            // binom(m, j) = binom(m-1, j-1) + q^j binom(m-1, j)
            let (a, b) = (&row[j - 1], &row[j]);
            let mut c = vec![0; a.len().max(b.len() + j)];
            for (i, x) in a.iter().enumerate() {
                c[i] += x;
            }
            for (i, x) in b.iter().enumerate() {
                c[i + j] += x;
            }
            next.push(c);
        }
        next.push(vec![1]);
        row = next;
    }
    row[k].clone()
}

pub fn dense_to_poly(c: &[i64]) -> SparsePoly {
    SparsePoly::from_terms(c.iter().enumerate().map(|(e, &v)| (Monomial::from_ints(&[e as i64]), BigInt::from(v))))
}

/// Matrix of the classical de Rham differential `Ω^j → Ω^{j+1}` of
/// `ℤ[x_1..x_d]` in multidegree `β`, on the basis `x^{β - 1_I} dx_I` with
/// `I ⊆ supp β` listed in increasing bitmask order.
pub fn classical_de_rham(beta: &[i64]) -> (Vec<Vec<usize>>, Vec<Vec<Vec<i64>>>) {
    let d = beta.len();
    let support: Vec<usize> = (0..d).filter(|&i| beta[i] > 0).collect();
    let mut by_degree: Vec<Vec<usize>> = vec![Vec::new(); d + 1];
    for mask in 0usize..(1 << d) {
        if (0..d).all(|i| mask >> i & 1 == 0 || support.contains(&i)) {
            by_degree[mask.count_ones() as usize].push(mask);
        }
    }
    let mut mats = Vec::new();
    for j in 0..d {
        let (src, tgt) = (&by_degree[j], &by_degree[j + 1]);
        let mut m = vec![vec![0i64; src.len()]; tgt.len()];
        for (c, &s) in src.iter().enumerate() {
            for i in 0..d {
                if s >> i & 1 == 1 || beta[i] == 0 {
                    continue;
                }
                // d(x^a dx_I) ∋ a_i x^{a - e_i} dx_i ∧ dx_I, then sort dx_i into place
                let before = (0..i).filter(|&k| s >> k & 1 == 1).count();
                let sign = if before % 2 == 0 { 1 } else { -1 };
                let r = tgt.iter().position(|&t| t == s | 1 << i).unwrap();
                m[r][c] = sign * beta[i];
            }
        }
        mats.push(m);
    }
    (by_degree.iter().map(|v| v.to_vec()).collect(), mats)
}

/// Diagonal of the Smith normal form of an integer matrix.
pub fn integer_smith(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut changed = false;
            for i in t + 1..rows {
                let f = m[i][t] / m[t][t];
                if f != 0 {
                    for j in t..cols {
                        m[i][j] -= f * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    changed = true;
                }
            }
            for j in t + 1..cols {
                let f = m[t][j] / m[t][t];
                if f != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= f * row[t];
                    }
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    changed = true;
                }
            }
            if !changed {
                // enforce divisibility of the remaining block by the pivot
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % m[t][t] != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

/// `H^j` of an integer cochain complex `ℤ^{n_0} → ℤ^{n_1} → ...` as
/// `(free rank, torsion orders > 1)`.
pub fn integer_cohomology(dims: &[usize], mats: &[Vec<Vec<i64>>]) -> Vec<(usize, Vec<i128>)> {
    let snf: Vec<Vec<i128>> = mats
        .iter()
        .map(|m| integer_smith(m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()))
        .collect();
    (0..dims.len())
        .map(|j| {
            let rank_out = snf.get(j).map_or(0, |s| s.len());
            let rank_in = if j == 0 { 0 } else { snf[j - 1].len() };
            let torsion = if j == 0 { vec![] } else { snf[j - 1].iter().copied().filter(|&x| x > 1).collect() };
            (dims[j] - rank_out - rank_in, torsion)
        })
        .collect()
}

fn v_p(mut n: i64, p: i64) -> i64 {
    let mut v = 0;
    while n != 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Order of the `p`-part of `H^1` in weight `α` of the de Rham–Witt complex
/// of `ℤ_p[x]`, from its description as integral forms with integral
/// differential in `ℚ_p[x^{1/p^∞}]`: in weight `α > 0`, `E^0_α = p^{u} ℤ_p x^α`
/// with `u = max(0, -v_p(α))`, `E^1_α = ℤ_p x^α dlog x`, and `d` is
/// multiplication by `α`; in weight 0, `E^1_0 = 0`.
pub fn de_rham_witt_h1_order(p: u64, alpha: Ratio<i64>) -> i64 {
    if *alpha.numer() == 0 {
        return 1;
    }
    let p = p as i64;
    let v = v_p(*alpha.numer(), p) - v_p(*alpha.denom(), p);
    let u = (-v).max(0);
    p.pow((u + v) as u32)
}

/// Level-0 generator coefficient of the same description at `q = 1`.
pub fn de_rham_witt_level0(p: u64, alpha: Ratio<i64>) -> i64 {
    let p = p as i64;
    let v = v_p(*alpha.numer(), p) - v_p(*alpha.denom(), p);
    if *alpha.numer() == 0 {
        1
    } else {
        p.pow((-v).max(0) as u32)
    }
}

/// Universal sum and product polynomials of `W_3`, in variables
/// `a_i = x_{i+1}`, `b_i = x_{i+4}`, solved from the ghost equations
/// `w_n(S) = w_n(a) + w_n(b)` and `w_n(P) = w_n(a) w_n(b)`.
pub fn universal_w3(p: u64) -> (Vec<SparsePoly>, Vec<SparsePoly>) {
    let a: Vec<SparsePoly> = (1..=3).map(SparsePoly::x).collect();
    let b: Vec<SparsePoly> = (4..=6).map(SparsePoly::x).collect();
    let ghost = |v: &[SparsePoly], n: usize| {
        (0..=n).fold(SparsePoly::zero(), |acc, j| {
            &acc + &v[j].pow(p.pow((n - j) as u32) as u32).scale(&BigInt::from(p.pow(j as u32)))
        })
    };
    let solve = |target: &dyn Fn(usize) -> SparsePoly| {
        let mut s: Vec<SparsePoly> = Vec::new();
        for n in 0..3 {
            let known = (0..n).fold(SparsePoly::zero(), |acc, j| {
                &acc + &s[j].pow(p.pow((n - j) as u32) as u32).scale(&BigInt::from(p.pow(j as u32)))
            });
            s.push((&target(n) - &known).div_scalar_exact(&BigInt::from(p.pow(n as u32))).unwrap());
        }
        s
    };
    let sum = solve(&|n| &ghost(&a, n) + &ghost(&b, n));
    let prod = solve(&|n| &ghost(&a, n) * &ghost(&b, n));
    (sum, prod)
}
