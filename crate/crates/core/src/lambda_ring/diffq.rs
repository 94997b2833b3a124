//! λ-operations of `z = (y - x)/(q - 1)` for rank-1 `x, y`, the `ℤ[q, x]`-basis
//! `λ^k(z)` with its product rule, and q-divided powers.
//!
//! Variables: `x_i` of the cosimplicial level is polynomial variable `i + 1`,
//! so at level 1 `x = x1` and `y = x2`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::Zero;

use super::fraction::QFraction;
use super::lambda_ops;
use crate::error::{Error, Result};
use crate::ring_core::{q_binomial, Exp, Monomial, SparsePoly};

fn x(i: usize) -> SparsePoly {
    SparsePoly::x(i + 1)
}

fn q_pow(e: i64) -> SparsePoly {
    SparsePoly::q_pow(Exp::from_integer(e))
}

/// `∏_{j=1}^k (q^j - 1) = (q - 1)^k [k]_q!`.
fn q_pochhammer(k: u32) -> SparsePoly {
    (1..=k as i64).map(|j| &q_pow(j) - &SparsePoly::one()).product()
}

/// `λ^k((x_b - x_a)/(q - 1))` in product form.
fn lambda_of_difference(k: u32, a: usize, b: usize) -> QFraction {
    let num: SparsePoly = (0..k as i64).map(|j| &x(b) - &(&q_pow(j) * &x(a))).product();
    QFraction::over_q_pochhammer(num, k as u64)
}

/// Both closed forms of `λ^k((y - x)/(q - 1))`.
#[derive(Clone, Debug)]
pub struct DiffqLambda {
    pub k: u32,
    /// `(y - x)(y - qx)..(y - q^{k-1}x) / ((q - 1)^k [k]_q!)`.
    pub product: QFraction,
    /// `Σ_j q^{j(j-1)/2} (-x)^j y^{k-j} / ((q - 1)^k [j]_q! [k-j]_q!)`.
    pub sum: QFraction,
}

impl DiffqLambda {
    pub fn forms_agree(&self) -> bool {
        self.product.cross_eq(&self.sum)
    }
}

pub fn diffq_lambda(k: u32) -> DiffqLambda {
    let product = lambda_of_difference(k, 0, 1);
    let mut sum = QFraction::zero();
    for j in 0..=k {
        let mut num = &q_pow((j as i64) * (j as i64 - 1) / 2) * &x(1).pow(k - j);
        num = &num * &(-&x(0)).pow(j);
        let mut term = QFraction::over_q_factorial(num, j as u64);
        term = (2..=(k - j) as u64).fold(term, |acc, n| acc.div_q_int(n));
        term = (0..k).fold(term, |acc, _| acc.div_cyclotomic(1));
        sum = sum.add(&term);
    }
    DiffqLambda { k, product, sum }
}

/// `[λ^0(z), .., λ^k(z)]` from the Newton recursion with
/// `Ψ^n(z) = (y^n - x^n)/(q^n - 1)`.
pub fn diffq_lambda_newton(k: u32) -> Result<Vec<QFraction>> {
    let psi: Vec<QFraction> = (1..=k as u64)
        .map(|n| {
            let e = n as i64;
            let num = &x(1).pow(e as u32) - &x(0).pow(e as u32);
            QFraction::over_q_power_minus_one(num, n)
        })
        .collect();
    let mut out = vec![QFraction::one()];
    for n in 1..=k as usize {
        let mut acc = QFraction::zero();
        for i in 1..=n {
            let term = psi[i - 1].mul(&out[n - i]);
            acc = if i % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        out.push(acc.div_int(&BigInt::from(n))?);
    }
    Ok(out)
}

/// `x_0^{r_0} λ^{r_1}((x_1 - x_0)/(q-1)) ⋯ λ^{r_n}((x_n - x_{n-1})/(q-1))`.
pub fn basis_element(r: &[u32]) -> QFraction {
    let mut out = QFraction::from_poly(x(0).pow(r[0]));
    for i in 1..r.len() {
        out = out.mul(&lambda_of_difference(r[i], i - 1, i));
    }
    out
}

/// Coefficients of `f` in the `ℤ[q]`-basis of [`basis_element`] at level
/// `level`, found by triangular elimination on the lexicographically largest
/// monomial (`x_level` most significant). Coefficients are fractions in `q`;
/// membership in the span means they are all polynomials.
pub fn express_in_basis(f: &QFraction, level: usize) -> Result<BTreeMap<Vec<u32>, QFraction>> {
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    let key = |m: &Monomial| -> Vec<Exp> { (0..=level).rev().map(|i| m.exp(i + 1)).collect() };
    while !rest.is_zero() {
        let coeffs = rest.coefficients();
        let (lead, c) = coeffs
            .iter()
            .max_by(|a, b| key(a.0).cmp(&key(b.0)))
            .expect("nonzero fraction has a term");
        if lead.width() > level + 2 {
            return Err(Error::Invalid(format!("{lead} is outside level {level}")));
        }
        let r: Vec<u32> = (0..=level)
            .map(|i| {
                let e = lead.exp(i + 1);
                if e.is_integer() && e >= Exp::zero() {
                    Ok(e.to_integer() as u32)
                } else {
                    Err(Error::Invalid(format!("non-integral exponent in {lead}")))
                }
            })
            .collect::<Result<_>>()?;
        let scale: SparsePoly = r[1..].iter().map(|&ri| q_pochhammer(ri)).product();
        let coeff = c.mul_poly(&scale);
        rest = rest.sub(&coeff.mul(&basis_element(&r)));
        out.insert(r, coeff);
    }
    Ok(out)
}

/// `λ^i(z) λ^j(z) = Σ_m c_m λ^m(z)` with `c_m ∈ ℤ[q, x]`, `z = (y - x)/(q - 1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion {
    pub i: u32,
    pub j: u32,
    pub coeffs: BTreeMap<u32, SparsePoly>,
}

impl BasisExpansion {
    /// Recombines `Σ_m c_m λ^m(z)` as a fraction.
    pub fn recombine(&self) -> QFraction {
        self.coeffs.iter().fold(QFraction::zero(), |acc, (&m, c)| {
            acc.add(&lambda_of_difference(m, 0, 1).mul_poly(c))
        })
    }
}

/// Expands `λ^i(z) λ^j(z)` by triangular elimination in the fraction field and
/// certifies that every coefficient lies in `ℤ[q, x]`.
pub fn basis_expand(i: u32, j: u32) -> Result<BasisExpansion> {
    let prod = lambda_of_difference(i, 0, 1).mul(&lambda_of_difference(j, 0, 1));
    let mut coeffs: BTreeMap<u32, SparsePoly> = BTreeMap::new();
    for (r, c) in express_in_basis(&prod, 1)? {
        let c = c.as_poly().ok_or_else(|| {
            Error::NotIntegral(format!("coefficient of x^{} λ^{}(z) in λ^{i}λ^{j} is {c}", r[0], r[1]))
        })?;
        let entry = coeffs.entry(r[1]).or_default();
        *entry += &(c * &x(0).pow(r[0]));
    }
    coeffs.retain(|_, c| !c.is_zero());
    Ok(BasisExpansion { i, j, coeffs })
}

/// The same expansion from the recursion
/// `λ^i(z) λ^j(z - [i]_q x) = binom(i+j, i)_q λ^{i+j}(z)` together with
/// `λ^j(z - [i]_q x) = Σ_m λ^m(z) (-x)^{j-m} binom(i+j-m-1, j-m)_q`.
pub fn basis_expand_by_recursion(i: u32, j: u32) -> Result<BasisExpansion> {
    let mut memo: HashMap<u32, BTreeMap<u32, SparsePoly>> = HashMap::new();
    let coeffs = recurse(i, j, &mut memo)?;
    Ok(BasisExpansion { i, j, coeffs })
}

fn recurse(
    i: u32,
    j: u32,
    memo: &mut HashMap<u32, BTreeMap<u32, SparsePoly>>,
) -> Result<BTreeMap<u32, SparsePoly>> {
    if let Some(v) = memo.get(&j) {
        return Ok(v.clone());
    }
    let mut out: BTreeMap<u32, SparsePoly> = BTreeMap::new();
    if i == 0 || j == 0 {
        out.insert(i + j, SparsePoly::one());
    } else {
        out.insert(i + j, q_binomial((i + j) as i64, i as i64)?);
        for m in 0..j {
            let factor = &(-&x(0)).pow(j - m) * &q_binomial((i + j - m - 1) as i64, (j - m) as i64)?;
            for (deg, c) in recurse(i, m, memo)? {
                let entry = out.entry(deg).or_default();
                *entry -= &(&factor * &c);
            }
        }
        out.retain(|_, c| !c.is_zero());
    }
    memo.insert(j, out.clone());
    Ok(out)
}

/// `[D_0, .., D_k]` with `D_n = (q - 1)^n λ^n(a/(q - 1))`, from
/// `[n]_q D_n = Σ_{i=1}^n (q - 1)^{i-1} λ^i(a) D_{n-i}`.
pub fn q_divided_power(k: u32, a: &SparsePoly) -> Result<Vec<QFraction>> {
    let lam = lambda_ops(k as usize, a)?;
    let qm1 = &SparsePoly::q() - &SparsePoly::one();
    let mut out = vec![QFraction::one()];
    for n in 1..=k as usize {
        let mut acc = QFraction::zero();
        for i in 1..=n {
            let coeff = &qm1.pow(i as u32 - 1) * &lam[i];
            acc = acc.add(&out[n - i].mul_poly(&coeff));
        }
        out.push(acc.div_q_int(n as u64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::parse_poly;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn small_closed_forms() {
        let d1 = diffq_lambda(1);
        assert_eq!(d1.product.pair(), (p("x2 - x1"), p("q - 1")));
        assert!(d1.forms_agree());
        let d2 = diffq_lambda(2);
        let (n, d) = d2.product.pair();
        assert_eq!(n, p("(x2 - x1)*(x2 - q*x1)"));
        assert_eq!(d, p("(q-1)^2*(1+q)"));
        assert!(d2.forms_agree());
    }

    #[test]
    fn newton_matches_product() {
        let newton = diffq_lambda_newton(4).unwrap();
        for k in 0..=4 {
            assert_eq!(newton[k as usize], diffq_lambda(k).product, "k = {k}");
        }
    }

    #[test]
    fn one_one_expansion() {
        let e = basis_expand(1, 1).unwrap();
        let want: BTreeMap<u32, SparsePoly> = [(1, p("x1")), (2, p("1 + q"))].into_iter().collect();
        assert_eq!(e.coeffs, want);
        assert_eq!(basis_expand_by_recursion(1, 1).unwrap().coeffs, want);
        let e = basis_expand(3, 0).unwrap();
        assert_eq!(e.coeffs, [(3, SparsePoly::one())].into_iter().collect());
        for (i, j) in [(0, 2), (2, 0), (0, 0)] {
            assert_eq!(basis_expand_by_recursion(i, j).unwrap(), basis_expand(i, j).unwrap());
        }
    }

    #[test]
    fn divided_powers_of_difference() {
        let d = q_divided_power(3, &p("x2 - x1")).unwrap();
        for k in 0..=3u32 {
            let scaled = diffq_lambda(k).product.mul_poly(&p("q - 1").pow(k));
            assert_eq!(d[k as usize], scaled);
        }
        assert_eq!(d[1].as_poly().unwrap(), &p("x2 - x1"));
    }
}
