//! q-integers, q-factorials and Gaussian binomials.

use num_bigint::BigInt;
use num_traits::One;

use super::monomial::{Exp, Monomial, Q};
use super::poly::SparsePoly;
use crate::error::{Error, Result};

/// `[n]_{q^step} = 1 + q^step + ... + q^{(n-1) step}`.
pub fn q_int_step(n: i64, step: Exp) -> Result<SparsePoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    Ok(SparsePoly::from_terms(
        (0..n).map(|i| (Monomial::var_pow(Q, step * i), BigInt::one())),
    ))
}

/// `[n]_{q^{1/r}}`.
pub fn q_int(n: i64, root: i64) -> Result<SparsePoly> {
    if root <= 0 {
        return Err(Error::NonPositiveIndex(root));
    }
    q_int_step(n, Exp::new(1, root))
}

pub fn q_factorial(n: i64) -> Result<SparsePoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    let mut acc = SparsePoly::one();
    for i in 1..=n {
        acc = &acc * &q_int(i, 1)?;
    }
    Ok(acc)
}

/// Gaussian binomial, computed as an exact quotient of q-factorials.
pub fn q_binomial(n: i64, k: i64) -> Result<SparsePoly> {
    if n < 0 {
        return Err(Error::NegativeIndex(n));
    }
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    if k > n {
        return Err(Error::BinomialRange { n, k });
    }
    let k = k.min(n - k);
    // [n][n-1]...[n-k+1] / [k]!
    let mut num = SparsePoly::one();
    for i in (n - k + 1)..=n {
        num = &num * &q_int(i, 1)?;
    }
    num.div_exact(&q_factorial(k)?)
}

/// The fractional q-integer `[m/p^n]_q`, held as the pair
/// `([m]_{q^{1/p^n}}, [p^n]_{q^{1/p^n}})` whose quotient it is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracQInt {
    pub m: i64,
    pub den: i64,
    pub numerator: SparsePoly,
    pub denominator: SparsePoly,
}

impl FracQInt {
    /// `[m/den]_q` for `den > 0`; the fraction is not reduced.
    pub fn new(m: i64, den: i64) -> Result<Self> {
        if den <= 0 {
            return Err(Error::NonPositiveIndex(den));
        }
        Ok(Self {
            m,
            den,
            numerator: q_int(m, den)?,
            denominator: q_int(den, den)?,
        })
    }

    /// `[m/den]_q · c`, if that lies in the polynomial ring.
    pub fn times(&self, c: &SparsePoly) -> Result<SparsePoly> {
        (&self.numerator * c).div_exact(&self.denominator)
    }
}
