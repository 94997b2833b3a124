//! Convergence of `(q^{1/p^{n+r}} - 1)^{p^r}` towards the Teichmüller lift of
//! `q^{1/p^n} - 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring_core::{p_valuation, Exp, QModulus, QuotientSpec, SparsePoly};

/// `s_r = (q^{1/p^{n+r}} - 1)^{p^r}`.
pub fn limit_term(p: u64, n: u32, r: u32) -> SparsePoly {
    let root = (p as i64).pow(n + r);
    let base = &SparsePoly::q_pow(Exp::new(1, root)) - &SparsePoly::one();
    base.pow((p as u32).pow(r))
}

/// Order of `f ∈ ℤ[q^{1/p^M}]` in the ideal `(p, t)`, `t = q^{1/p^M} - 1`:
/// writing `f = Σ c_j t^j`, this is `min_j v_p(c_j) + j`. `None` for zero.
pub fn pt_valuation(f: &SparsePoly, p: u64, m: u32) -> Result<Option<u64>> {
    let root = (p as i64).pow(m);
    let dense = f.to_dense_in_root(root)?;
    // Taylor shift u = t + 1: c_j = Σ_k binom(k, j) a_k
    let n = dense.len();
    let mut shifted = dense;
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            let add = shifted[k + 1].clone();
            shifted[k] += add;
        }
    }
    Ok(shifted
        .iter()
        .enumerate()
        .filter_map(|(j, c)| p_valuation(c, p).map(|v| v as u64 + j as u64))
        .min())
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LimitStep {
    pub r: u32,
    /// `(p, t)`-adic order of `s_{r+1} - s_r`.
    pub valuation: Option<u64>,
    /// Whether `s_{r+1} - s_r` vanishes under the truncation.
    pub vanishes_mod_spec: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LimitReport {
    pub p: u64,
    pub n: u32,
    pub depth: u32,
    pub steps: Vec<LimitStep>,
    /// Valuations strictly increase along the sequence.
    pub cauchy: bool,
}

/// Computes `(p, q^{1/p^M} - 1)`-adic orders of `s_{r+1} - s_r` for
/// `r < r_max`, with `M = n + r_max`. `spec` must use an augmentation modulus
/// whose root is a power of `p` at least `p^M`.
pub fn teichmuller_limit_check(p: u64, n: u32, r_max: u32, spec: &QuotientSpec) -> Result<LimitReport> {
    let depth = n + r_max;
    match spec.q_modulus() {
        Some(QModulus::Augmentation { root, .. }) if root % (p as i64).pow(depth) == 0 => {}
        _ => {
            return Err(Error::InvalidQuotient(format!(
                "need an augmentation modulus in q^(1/{}) or finer",
                (p as i64).pow(depth)
            )))
        }
    }
    let mut steps = Vec::new();
    for r in 0..r_max {
        let diff = &limit_term(p, n, r + 1) - &limit_term(p, n, r);
        steps.push(LimitStep {
            r,
            valuation: pt_valuation(&diff, p, depth)?,
            vanishes_mod_spec: spec.is_zero_mod(&diff),
        });
    }
    let cauchy = steps.windows(2).all(|w| match (w[0].valuation, w[1].valuation) {
        (Some(a), Some(b)) => b > a,
        (_, None) => true,
        (None, Some(_)) => false,
    });
    Ok(LimitReport { p, n, depth, steps, cauchy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::parse_poly;
    use num_bigint::BigInt;

    #[test]
    fn first_differences() {
        let d = &limit_term(2, 0, 1) - &limit_term(2, 0, 0);
        assert_eq!(d, parse_poly("-2*(q^(1/2) - 1)").unwrap());
        let d = &limit_term(2, 0, 2) - &limit_term(2, 0, 1);
        assert_eq!(d, parse_poly("-4*q^(1/4)*(q^(1/4) - 1)^2").unwrap());
        assert!(d.div_scalar_exact(&BigInt::from(2)).is_ok());
    }

    #[test]
    fn valuation_of_t_powers() {
        let t = parse_poly("q^(1/4) - 1").unwrap();
        assert_eq!(pt_valuation(&t.pow(3), 2, 2).unwrap(), Some(3));
        assert_eq!(pt_valuation(&t.scale(&BigInt::from(8)), 2, 2).unwrap(), Some(4));
        assert_eq!(pt_valuation(&SparsePoly::zero(), 2, 2).unwrap(), None);
        assert_eq!(pt_valuation(&SparsePoly::one(), 2, 2).unwrap(), Some(0));
    }

    #[test]
    fn sequence_is_cauchy() {
        let spec = QuotientSpec::parse("2^8, (q^(1/16) - 1)^32").unwrap();
        let rep = teichmuller_limit_check(2, 0, 4, &spec).unwrap();
        assert!(rep.cauchy, "{rep:?}");
    }
}
