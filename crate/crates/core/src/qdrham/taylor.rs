//! The q-Taylor formula and the cosimplicial ring `U^•` of q-divided
//! differences.

use serde::Serialize;

use super::forms::nabla_q;
use crate::error::Result;
use crate::lambda_ring::{basis_element, express_in_basis, QFraction};
use crate::ring_core::{q_binomial, q_factorial, Exp, SparsePoly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaylorReport {
    pub n: u32,
    /// `∇_q^k(x^n)/[k]_q!` for `k = 0..=n`.
    pub coefficients: Vec<String>,
    /// Each coefficient equals `binom(n, k)_q x^{n-k}`.
    pub binomial_match: bool,
    /// `y^n = Σ_k c_k(x) ∏_{j<k} (y - q^j x)`.
    pub holds: bool,
}

/// Expands `y^n` around `x` using iterated q-derivatives of `x^n`
/// (`x = x1`, `y = x2`).
pub fn q_taylor(n: u32) -> Result<TaylorReport> {
    let (x, y) = (SparsePoly::x(1), SparsePoly::x(2));
    let mut deriv = x.pow(n);
    let mut coefficients = Vec::new();
    let mut binomial_match = true;
    let mut sum = SparsePoly::zero();
    let mut falling = SparsePoly::one();
    for k in 0..=n {
        let c = deriv.div_exact(&q_factorial(k as i64)?)?;
        binomial_match &= c == &q_binomial(n as i64, k as i64)? * &x.pow(n - k);
        sum += &(&c * &falling);
        coefficients.push(c.to_string());
        falling = &falling * &(&y - &(&SparsePoly::q_pow(Exp::from_integer(k as i64)) * &x));
        deriv = nabla_q(&deriv, 1)?.remove(0);
    }
    Ok(TaylorReport { n, coefficients, binomial_match, holds: sum == y.pow(n) })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CosimplicialReport {
    pub level: usize,
    pub max_degree: u32,
    pub cofaces_checked: usize,
    pub codegeneracies_checked: usize,
    pub products_checked: usize,
    pub failures: Vec<String>,
    pub ok: bool,
}

/// Basis exponents `(r_0, .., r_n)` with `r_0 ≤ 1` and `r_i ≤ max_degree`.
fn basis_indices(level: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = vec![vec![0], vec![1]];
    for _ in 0..level {
        out = out
            .into_iter()
            .flat_map(|r| (0..=max_degree).map(move |k| {
                let mut v = r.clone();
                v.push(k);
                v
            }))
            .collect();
    }
    out
}

fn in_span(f: &QFraction, level: usize) -> Result<bool> {
    Ok(express_in_basis(f, level)?.values().all(|c| c.as_poly().is_some()))
}

fn label(r: &[u32]) -> String {
    format!("{r:?}")
}

/// Checks, up to cosimplicial level `level` and λ-degree `max_degree`, that
/// the cofaces (dropping an index) and codegeneracies (repeating one) map the
/// basis `x_0^{r_0} ∏ λ^{r_i}((x_i - x_{i-1})/(q - 1))` into the `ℤ[q]`-span
/// of the target basis, that codegeneracy `σ^j` kills every element with
/// `r_{j+1} ≥ 1`, and that products of basis elements stay in the span.
pub fn cosimplicial_face_check(level: usize, max_degree: u32) -> Result<CosimplicialReport> {
    let mut rep = CosimplicialReport { level, max_degree, ..Default::default() };
    for n in 1..=level {
        for r in basis_indices(n - 1, max_degree) {
            let src = basis_element(&r);
            for j in 0..=n {
                // δ^j: x_i ↦ x_i for i < j, x_{i+1} otherwise
                let img = src.map_numerator(|f| f.rename_vars(|v| if v == 0 || v <= j { v } else { v + 1 }));
                rep.cofaces_checked += 1;
                if !in_span(&img, n)? {
                    rep.failures.push(format!("coface d^{j} of {} at level {}", label(&r), n - 1));
                }
            }
        }
    }
    for n in 0..level {
        for r in basis_indices(n + 1, max_degree) {
            let src = basis_element(&r);
            for j in 0..=n {
                // σ^j: x_i ↦ x_i for i ≤ j, x_{i-1} otherwise
                let img = src.map_numerator(|f| f.rename_vars(|v| if v <= j + 1 { v } else { v - 1 }));
                rep.codegeneracies_checked += 1;
                let killed = r[j + 1] >= 1;
                if (killed && !img.is_zero()) || !in_span(&img, n)? {
                    rep.failures.push(format!("codegeneracy s^{j} of {} at level {}", label(&r), n + 1));
                }
            }
        }
    }
    for n in 1..=level {
        let basis = basis_indices(n, max_degree);
        for (a, ra) in basis.iter().enumerate() {
            for rb in &basis[a..] {
                let prod = basis_element(ra).mul(&basis_element(rb));
                rep.products_checked += 1;
                if !in_span(&prod, n)? {
                    rep.failures.push(format!("product {} * {} at level {n}", label(ra), label(rb)));
                }
            }
        }
    }
    rep.ok = rep.failures.is_empty();
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn taylor_small() {
        for n in 0..=5 {
            let r = q_taylor(n).unwrap();
            assert!(r.holds && r.binomial_match, "{r:?}");
        }
        assert_eq!(q_taylor(2).unwrap().coefficients, ["x1^2", "(1 + q)*x1", "1"].iter().map(|s| {
            s.parse::<SparsePoly>().unwrap().to_string()
        }).collect::<Vec<_>>());
    }

    #[test]
    fn cosimplicial_level_one() {
        let r = cosimplicial_face_check(1, 2).unwrap();
        assert!(r.ok, "{:?}", r.failures);
        assert_eq!(r.cofaces_checked, 4);
        assert_eq!(r.codegeneracies_checked, 6);
    }

    #[test]
    fn plain_difference_is_not_in_span() {
        let half = QFraction::from_poly("x2 - x1".parse().unwrap()).div_cyclotomic(2);
        assert!(!in_span(&half, 1).unwrap());
    }
}
