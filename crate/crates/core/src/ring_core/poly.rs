//! Sparse polynomials with integer coefficients in `q` and `x_1, x_2, ...`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::monomial::{Exp, Monomial, Q};
use crate::error::{Error, Result};

/// An exact polynomial over ℤ with non-negative rational exponents.
///
/// No zero coefficient is ever stored, and terms are kept in graded-lex order,
/// so structurally equal polynomials serialize identically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::from_int(BigInt::from(c))
    }

    pub fn from_int(c: BigInt) -> Self {
        Self::monomial(c, Monomial::one())
    }

    pub fn monomial(c: BigInt, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(var: usize) -> Self {
        Self::monomial(BigInt::one(), Monomial::var_pow(var, Exp::one()))
    }

    pub fn q() -> Self {
        Self::var(Q)
    }

    /// `x_i`, with `i >= 1`.
    pub fn x(i: usize) -> Self {
        assert!(i >= 1, "x variables are 1-based");
        Self::var(i)
    }

    pub fn var_pow(var: usize, e: Exp) -> Self {
        Self::monomial(BigInt::one(), Monomial::var_pow(var, e))
    }

    /// `q^e` for a rational exponent `e`.
    pub fn q_pow(e: Exp) -> Self {
        Self::var_pow(Q, e)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(iter: I) -> Self {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in iter {
            *acc.entry(m).or_default() += c;
        }
        Self::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, BigInt>) -> Self {
        Self {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value if this polynomial is a constant (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&Monomial::one())
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Highest variable index used plus one.
    pub fn width(&self) -> usize {
        self.terms.keys().map(Monomial::width).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| !m.exp(var).is_zero())
    }

    /// True when only `q` occurs.
    pub fn is_q_only(&self) -> bool {
        self.terms.keys().all(|m| m.width() <= 1)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(Monomial::is_integral)
    }

    /// Lcm of the denominators of the exponents of `var`.
    pub fn var_denominator(&self, var: usize) -> i64 {
        self.terms.keys().fold(1, |acc, m| acc.lcm(m.exp(var).denom()))
    }

    /// Largest exponent of `var` (zero for the zero polynomial).
    pub fn var_degree(&self, var: usize) -> Exp {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or_else(Exp::zero)
    }

    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> SparsePoly {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> SparsePoly {
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> SparsePoly {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Divides every coefficient by `d`, failing unless each division is exact.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Result<SparsePoly> {
        if d.is_zero() {
            return Err(Error::NotDivisible("division by zero scalar".into()));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("coefficient {c} of {m} by {d}")));
            }
            terms.insert(m.clone(), q);
        }
        Ok(Self { terms })
    }

    /// Exact polynomial division, or `NotDivisible` with a description.
    ///
    /// Repeatedly cancels the graded-lex leading term; because the order is
    /// compatible with multiplication this succeeds exactly when `divisor`
    /// divides `self` in ℤ[q^(1/∞), x^(1/∞)].
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        let (lm, lc) = divisor
            .leading_term()
            .ok_or_else(|| Error::NotDivisible("division by zero polynomial".into()))?;
        let (lm, lc) = (lm.clone(), lc.clone());
        if let Some(c) = divisor.as_constant() {
            return self.div_scalar_exact(&c);
        }
        let mut rem: HashMap<Monomial, BigInt> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        let mut order: BTreeMap<Monomial, ()> = self.terms.keys().map(|m| (m.clone(), ())).collect();
        let mut quot: Vec<(Monomial, BigInt)> = Vec::new();
        while let Some((top, _)) = order.pop_last() {
            let Some(c) = rem.remove(&top) else { continue };
            if c.is_zero() {
                continue;
            }
            let qm = top.div(&lm).ok_or_else(|| {
                Error::NotDivisible(format!("leading monomial {top} not divisible by {lm}"))
            })?;
            let (qc, r) = c.div_rem(&lc);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("leading coefficient {c} not divisible by {lc}")));
            }
            for (dm, dc) in divisor.terms.iter().rev().skip(1) {
                let m = dm.mul(&qm);
                let entry = rem.entry(m.clone()).or_default();
                *entry -= dc * &qc;
                if entry.is_zero() {
                    rem.remove(&m);
                } else {
                    order.insert(m, ());
                }
            }
            quot.push((qm, qc));
        }
        Ok(Self::from_terms(quot))
    }

    /// True when `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &SparsePoly) -> bool {
        self.div_exact(divisor).is_ok()
    }

    pub fn map_monomials<F: Fn(&Monomial) -> Monomial>(&self, f: F) -> SparsePoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn map_coefficients<F: Fn(&BigInt) -> BigInt>(&self, f: F) -> SparsePoly {
        Self::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Multiplies every exponent of every variable by `factor`.
    pub fn scale_exponents(&self, factor: Exp) -> SparsePoly {
        self.map_monomials(|m| m.scale(factor))
    }

    /// The substitution `x_var ↦ q^k · x_var`, i.e. `γ_var` applied `k` times.
    pub fn twist(&self, var: usize, k: Exp) -> SparsePoly {
        self.map_monomials(|m| m.with_exp(Q, m.exp(Q) + m.exp(var) * k))
    }

    /// Renames variables through `f` (exponents of colliding variables add).
    pub fn rename_vars<F: Fn(usize) -> usize>(&self, f: F) -> SparsePoly {
        self.map_monomials(|m| {
            let mut out = Monomial::one();
            for (v, e) in m.exps().iter().enumerate() {
                if !e.is_zero() {
                    out = out.mul(&Monomial::var_pow(f(v), *e));
                }
            }
            out
        })
    }

    /// Substitutes an integer value for `var`. Exponents of `var` must be integers
    /// unless the value is `1` or `0`.
    pub fn eval_var(&self, var: usize, value: i64) -> Result<SparsePoly> {
        let v = BigInt::from(value);
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let factor = if e.is_zero() || value == 1 {
                BigInt::one()
            } else if value == 0 {
                BigInt::zero()
            } else if e.is_integer() && !e.is_negative() {
                num_traits::pow(v.clone(), e.to_integer().to_usize().unwrap())
            } else {
                return Err(Error::Invalid(format!(
                    "cannot evaluate {} at {value} with exponent {e}",
                    super::monomial::var_name(var)
                )));
            };
            out.push((m.with_exp(var, Exp::zero()), c * factor));
        }
        Ok(Self::from_terms(out))
    }

    /// Substitutes a polynomial for `var` (integer exponents only).
    pub fn substitute(&self, var: usize, value: &SparsePoly) -> Result<SparsePoly> {
        let mut powers: BTreeMap<i64, SparsePoly> = BTreeMap::new();
        let mut acc = SparsePoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if !e.is_integer() || e.is_negative() {
                return Err(Error::Invalid(format!("substitution needs integer exponent, got {e}")));
            }
            let k = e.to_integer();
            let p = powers
                .entry(k)
                .or_insert_with(|| value.pow(k as u32))
                .clone();
            let rest = SparsePoly::monomial(c.clone(), m.with_exp(var, Exp::zero()));
            acc += &(&rest * &p);
        }
        Ok(acc)
    }

    /// Splits into `x`-part ↦ (q-polynomial) pieces.
    pub fn split_x_parts(&self) -> BTreeMap<Monomial, SparsePoly> {
        let mut out: BTreeMap<Monomial, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.x_part())
                .or_default()
                .push((Monomial::var_pow(Q, m.exp(Q)), c.clone()));
        }
        out.into_iter().map(|(k, v)| (k, SparsePoly::from_terms(v))).collect()
    }

    /// Dense coefficients of a `q`-only polynomial in `u = q^(1/den)`.
    ///
    /// Fails if `x` variables occur or an exponent is not a multiple of `1/den`.
    pub fn to_dense_in_root(&self, den: i64) -> Result<Vec<BigInt>> {
        if !self.is_q_only() {
            return Err(Error::Invalid(format!("{self} involves x variables")));
        }
        let mut out: Vec<BigInt> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(Q) * den;
            if !e.is_integer() || e.is_negative() {
                return Err(Error::Invalid(format!("exponent {} not in (1/{den})ℤ≥0", m.exp(Q))));
            }
            let k = e.to_integer() as usize;
            if out.len() <= k {
                out.resize(k + 1, BigInt::zero());
            }
            out[k] += c;
        }
        Ok(out)
    }

    /// Inverse of [`to_dense_in_root`](Self::to_dense_in_root), with an `x`-part factor.
    pub fn from_dense_in_root(coeffs: &[BigInt], den: i64, x_part: &Monomial) -> SparsePoly {
        Self::from_terms(coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
            (x_part.with_exp(Q, Exp::new(k as i64, den)), c.clone())
        }))
    }

    pub fn has_negative_exponent(&self) -> bool {
        self.terms.keys().any(Monomial::has_negative)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly({self})")
    }
}

impl From<i64> for SparsePoly {
    fn from(c: i64) -> Self {
        SparsePoly::constant(c)
    }
}

impl From<BigInt> for SparsePoly {
    fn from(c: BigInt) -> Self {
        SparsePoly::from_int(c)
    }
}

impl<'a> Add<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a SparsePoly> for &'a SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&SparsePoly> for SparsePoly {
    fn add_assign(&mut self, rhs: &SparsePoly) {
        for (m, c) in &rhs.terms {
            let entry = self.terms.entry(m.clone()).or_default();
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
    }
}

impl SubAssign<&SparsePoly> for SparsePoly {
    fn sub_assign(&mut self, rhs: &SparsePoly) {
        for (m, c) in &rhs.terms {
            let entry = self.terms.entry(m.clone()).or_default();
            *entry -= c;
            if entry.is_zero() {
                self.terms.remove(m);
            }
        }
    }
}

impl Mul<&SparsePoly> for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        if self.is_zero() || rhs.is_zero() {
            return SparsePoly::zero();
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        SparsePoly::from_map(acc)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&SparsePoly> for SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: &SparsePoly) -> SparsePoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<SparsePoly> for &SparsePoly {
            type Output = SparsePoly;
            fn $method(self, rhs: SparsePoly) -> SparsePoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        -&self
    }
}

impl std::iter::Sum for SparsePoly {
    fn sum<I: Iterator<Item = SparsePoly>>(iter: I) -> SparsePoly {
        iter.fold(SparsePoly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl std::iter::Product for SparsePoly {
    fn product<I: Iterator<Item = SparsePoly>>(iter: I) -> SparsePoly {
        iter.fold(SparsePoly::one(), |acc, p| &acc * &p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> SparsePoly {
        SparsePoly::q()
    }

    #[test]
    fn arithmetic_basics() {
        let a = &q() + &SparsePoly::one();
        let b = &q() - &SparsePoly::one();
        assert_eq!((&a * &b).to_string(), "-1 + q^2");
        assert!((&a - &a).is_zero());
        assert_eq!(a.pow(3).to_string(), "1 + 3*q + 3*q^2 + q^3");
    }

    #[test]
    fn exact_division() {
        let a = &q() + &SparsePoly::one();
        let b = &q() - &SparsePoly::one();
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(a.div_exact(&b).is_err());
        let two = SparsePoly::constant(2);
        assert!(a.div_exact(&two).is_err());
        let x = SparsePoly::x(1);
        let f = &(&x * &x) - &(&q() * &x);
        assert_eq!(f.div_exact(&x).unwrap(), &x - &q());
    }

    #[test]
    fn fractional_exponent_division() {
        let u = SparsePoly::q_pow(Exp::new(1, 2));
        let qm1 = &q() - &SparsePoly::one();
        let um1 = &u - &SparsePoly::one();
        let quot = qm1.div_exact(&um1).unwrap();
        assert_eq!(quot, &u + &SparsePoly::one());
    }

    #[test]
    fn twist_is_gamma() {
        let x1 = SparsePoly::x(1);
        let f = x1.pow(3);
        assert_eq!(f.twist(1, Exp::one()).to_string(), "q^3*x1^3");
    }

    #[test]
    fn eval_and_substitute() {
        let f = &q().pow(2) + &q();
        assert_eq!(f.eval_var(Q, -1).unwrap(), SparsePoly::zero());
        assert_eq!(f.eval_var(Q, 1).unwrap(), SparsePoly::constant(2));
        let g = f.substitute(Q, &(&q() + &SparsePoly::one())).unwrap();
        assert_eq!(g.to_string(), "2 + 3*q + q^2");
    }
}
