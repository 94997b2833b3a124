//! Adams operations, λ-operations by the Newton recursion, and the explicit
//! λ-identities for difference quotients `(y - x)/(q - 1)`.

mod diffq;
mod fraction;

pub use diffq::{
    basis_element, basis_expand, basis_expand_by_recursion, diffq_lambda, diffq_lambda_newton,
    express_in_basis, q_divided_power, BasisExpansion, DiffqLambda,
};
pub use fraction::{cyclotomic, QFraction};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ring_core::{Exp, SparsePoly};

/// A polynomial ring over `ℤ` with declared rank-1 generators, where `Ψ^n`
/// raises each generator to the `n`-th power.
#[derive(Clone, Debug)]
pub struct AdamsRing {
    rank_one: BTreeSet<usize>,
}

impl AdamsRing {
    /// `ℤ[q, x_1, .., x_d]` with every generator of rank 1.
    pub fn standard(d: usize) -> Self {
        Self { rank_one: (0..=d).collect() }
    }

    /// Only the listed variables (0 is `q`) are declared.
    pub fn with_generators(vars: impl IntoIterator<Item = usize>) -> Self {
        Self { rank_one: vars.into_iter().collect() }
    }

    fn check(&self, f: &SparsePoly) -> Result<()> {
        for v in 0..f.width() {
            if f.uses_var(v) && !self.rank_one.contains(&v) {
                return Err(Error::UndeclaredVariable(v));
            }
        }
        Ok(())
    }

    pub fn adams(&self, n: i64, f: &SparsePoly) -> Result<SparsePoly> {
        self.check(f)?;
        adams(n, f)
    }

    pub fn lambda_ops(&self, k: usize, f: &SparsePoly) -> Result<Vec<SparsePoly>> {
        self.check(f)?;
        lambda_ops(k, f)
    }
}

/// `Ψ^n` on a ring whose generators are all of rank 1.
pub fn adams(n: i64, f: &SparsePoly) -> Result<SparsePoly> {
    if n <= 0 {
        return Err(Error::NonPositiveIndex(n));
    }
    Ok(f.scale_exponents(Exp::from_integer(n)))
}

/// `[λ^0(f), .., λ^k(f)]`, from `k λ^k = Σ_{i=1}^k (-1)^{i-1} Ψ^i(f) λ^{k-i}(f)`.
pub fn lambda_ops(k: usize, f: &SparsePoly) -> Result<Vec<SparsePoly>> {
    let psi: Vec<SparsePoly> = (1..=k as i64).map(|i| adams(i, f)).collect::<Result<_>>()?;
    let mut out = vec![SparsePoly::one()];
    for n in 1..=k {
        let mut acc = SparsePoly::zero();
        for i in 1..=n {
            let term = &psi[i - 1] * &out[n - i];
            if i % 2 == 1 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        let lam = acc.div_scalar_exact(&(n as i64).into()).map_err(|_| {
            Error::NotDivisible(format!("λ^{n}({f}): Newton sum not divisible by {n}"))
        })?;
        out.push(lam);
    }
    Ok(out)
}

pub fn lambda_op(k: usize, f: &SparsePoly) -> Result<SparsePoly> {
    Ok(lambda_ops(k, f)?.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::{parse_poly, q_binomial, q_int};

    fn p(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn adams_examples() {
        assert_eq!(adams(2, &q_int(3, 1).unwrap()).unwrap(), p("1 + q^2 + q^4"));
        let f = p("x1 + q");
        assert_eq!(adams(1, &f).unwrap(), f);
        let diff = &adams(2, &f).unwrap() - &f.pow(2);
        assert_eq!(diff, p("-2*q*x1"));
        assert!(adams(0, &f).is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_op(2, &p("x1 + x2")).unwrap(), p("x1*x2"));
        assert!(lambda_op(2, &p("x1")).unwrap().is_zero());
        let n3 = q_int(3, 1).unwrap();
        assert_eq!(lambda_op(2, &n3).unwrap(), &p("q") * &q_binomial(3, 2).unwrap());
        assert_eq!(lambda_op(2, &-&n3).unwrap(), q_binomial(4, 2).unwrap());
    }

    #[test]
    fn undeclared_generator() {
        let r = AdamsRing::with_generators([0, 1]);
        assert!(matches!(r.adams(2, &p("x2")), Err(Error::UndeclaredVariable(2))));
        assert!(r.adams(2, &p("x1*q")).is_ok());
    }
}
