//! Monomials with non-negative rational exponents.
//!
//! Variable 0 is `q`; variable `i >= 1` is `x_i`. Exponents are stored densely
//! with trailing zeros trimmed, so equal monomials compare equal regardless of
//! how many variables the ambient ring declares.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// A rational exponent. Denominators are powers of the ambient prime in every
/// ring this crate builds, but the type itself does not insist on that.
pub type Exp = Ratio<i64>;

/// Index of the deformation variable `q`.
pub const Q: usize = 0;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<Exp>,
    degree: Exp,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a monomial from a dense exponent list (index 0 is `q`).
    pub fn from_exps(mut exps: Vec<Exp>) -> Self {
        while exps.last().is_some_and(|e| e.is_zero()) {
            exps.pop();
        }
        let degree = exps.iter().fold(Exp::zero(), |acc, e| acc + e);
        Self { exps, degree }
    }

    pub fn from_ints(exps: &[i64]) -> Self {
        Self::from_exps(exps.iter().map(|&e| Exp::from_integer(e)).collect())
    }

    /// `var^exp`.
    pub fn var_pow(var: usize, exp: Exp) -> Self {
        let mut exps = vec![Exp::zero(); var + 1];
        exps[var] = exp;
        Self::from_exps(exps)
    }

    pub fn exp(&self, var: usize) -> Exp {
        self.exps.get(var).copied().unwrap_or_else(Exp::zero)
    }

    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    pub fn degree(&self) -> Exp {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Number of variable slots in use (highest variable index + 1).
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn has_negative(&self) -> bool {
        self.exps.iter().any(|e| e.is_negative())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (e, f) in exps.iter_mut().zip(short.exps.iter()) {
            *e += f;
        }
        Monomial::from_exps(exps)
    }

    /// `self / other`, or `None` if some exponent would go negative.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            let e = self.exp(i) - other.exp(i);
            if e.is_negative() {
                return None;
            }
            exps.push(e);
        }
        Some(Monomial::from_exps(exps))
    }

    /// Multiplies every exponent by `factor`; this is the Adams operation on
    /// a monomial in rank-1 generators.
    pub fn scale(&self, factor: Exp) -> Monomial {
        Monomial::from_exps(self.exps.iter().map(|e| e * factor).collect())
    }

    pub fn with_exp(&self, var: usize, exp: Exp) -> Monomial {
        let mut exps = self.exps.clone();
        if exps.len() <= var {
            exps.resize(var + 1, Exp::zero());
        }
        exps[var] = exp;
        Monomial::from_exps(exps)
    }

    /// The monomial with the `q` exponent removed.
    pub fn x_part(&self) -> Monomial {
        self.with_exp(Q, Exp::zero())
    }

    /// Least common multiple of all exponent denominators.
    pub fn denominator_lcm(&self) -> i64 {
        self.exps.iter().fold(1, |acc, e| acc.lcm(e.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.exps.iter().all(|e| e.is_integer())
    }
}

/// Graded lexicographic order: total degree first, then exponents compared
/// variable by variable with `q` first.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            let n = self.exps.len().max(other.exps.len());
            for i in 0..n {
                match self.exp(i).cmp(&other.exp(i)) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub(crate) fn var_name(var: usize) -> String {
    if var == Q {
        "q".to_string()
    } else {
        format!("x{var}")
    }
}

pub(crate) fn fmt_exp(e: &Exp) -> String {
    if e.is_integer() {
        e.numer().to_string()
    } else {
        format!("({}/{})", e.numer(), e.denom())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (var, e) in self.exps.iter().enumerate() {
            if e.is_zero() {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", var_name(var))?;
            if !e.is_one() {
                write!(f, "^{}", fmt_exp(e))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trailing_zeros_do_not_matter() {
        let a = Monomial::from_ints(&[1, 2, 0, 0]);
        let b = Monomial::from_ints(&[1, 2]);
        assert_eq!(a, b);
        assert_eq!(a.width(), 2);
    }

    #[test]
    fn graded_order() {
        let one = Monomial::one();
        let q = Monomial::from_ints(&[1]);
        let x1 = Monomial::from_ints(&[0, 1]);
        let q2 = Monomial::from_ints(&[2]);
        assert!(one < q);
        assert!(x1 < q);
        assert!(q < q2);
        let half = Monomial::var_pow(Q, Exp::new(1, 2));
        assert!(half < q && one < half);
    }

    #[test]
    fn division_rejects_negative() {
        let a = Monomial::from_ints(&[1, 1]);
        let b = Monomial::from_ints(&[0, 2]);
        assert!(a.div(&b).is_none());
        assert_eq!(b.div(&Monomial::from_ints(&[0, 1])), Some(Monomial::from_ints(&[0, 1])));
    }

    #[test]
    fn display() {
        let m = Monomial::from_exps(vec![Exp::new(1, 2), Exp::from_integer(2)]);
        assert_eq!(m.to_string(), "q^(1/2)*x1^2");
    }
}
