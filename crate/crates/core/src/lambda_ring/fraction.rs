//! Fractions whose denominators are integers times products of cyclotomic
//! polynomials in `q`. These are exactly the denominators that arise when
//! inverting `q^n - 1` and integers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ring_core::{Exp, Monomial, SparsePoly, Q};

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn q_pow_minus_one(e: u64) -> SparsePoly {
    &SparsePoly::q_pow(Exp::from_integer(e as i64)) - &SparsePoly::one()
}

/// The cyclotomic polynomial `Φ_d(q)`.
pub fn cyclotomic(d: u64) -> SparsePoly {
    assert!(d >= 1);
    let mut num = SparsePoly::one();
    let mut den = SparsePoly::one();
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        match mobius(d / e) {
            1 => num = &num * &q_pow_minus_one(e),
            -1 => den = &den * &q_pow_minus_one(e),
            _ => {}
        }
    }
    num.div_exact(&den).expect("cyclotomic quotient is exact")
}

/// `num / (int_den · ∏ Φ_d(q)^{m_d})` with the numerator in `ℤ[q, x_1, ..]`.
///
/// Every constructor cancels common factors, so the representation is
/// canonical; equality is still checked by cross-multiplication.
#[derive(Clone, Debug)]
pub struct QFraction {
    num: SparsePoly,
    cyclo: BTreeMap<u64, u32>,
    int_den: BigInt,
}

impl QFraction {
    pub fn from_poly(f: SparsePoly) -> Self {
        Self { num: f, cyclo: BTreeMap::new(), int_den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(SparsePoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(SparsePoly::one())
    }

    /// `f / (q^n - 1)`.
    pub fn over_q_power_minus_one(f: SparsePoly, n: u64) -> Self {
        let mut cyclo = BTreeMap::new();
        for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
            cyclo.insert(d, 1);
        }
        Self { num: f, cyclo, int_den: BigInt::one() }.cancelled()
    }

    /// `f / ((q - 1)^k [k]_q!)`, i.e. `f / ∏_{i=1}^k (q^i - 1)`.
    pub fn over_q_pochhammer(f: SparsePoly, k: u64) -> Self {
        let mut cyclo = BTreeMap::new();
        for i in 1..=k {
            for d in (1..=i).filter(|d| i % d == 0) {
                *cyclo.entry(d).or_insert(0) += 1;
            }
        }
        Self { num: f, cyclo, int_den: BigInt::one() }.cancelled()
    }

    /// `f / [k]_q!`.
    pub fn over_q_factorial(f: SparsePoly, k: u64) -> Self {
        let mut cyclo = BTreeMap::new();
        for i in 2..=k {
            for d in (2..=i).filter(|d| i % d == 0) {
                *cyclo.entry(d).or_insert(0) += 1;
            }
        }
        Self { num: f, cyclo, int_den: BigInt::one() }.cancelled()
    }

    pub fn numerator(&self) -> &SparsePoly {
        &self.num
    }

    pub fn denominator(&self) -> SparsePoly {
        let mut d = SparsePoly::from_int(self.int_den.clone());
        for (&k, &m) in &self.cyclo {
            d = &d * &cyclotomic(k).pow(m);
        }
        d
    }

    /// `(numerator, denominator)` as polynomials.
    pub fn pair(&self) -> (SparsePoly, SparsePoly) {
        (self.num.clone(), self.denominator())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this fraction equals, if it is one.
    pub fn as_poly(&self) -> Option<&SparsePoly> {
        (self.cyclo.is_empty() && self.int_den.is_one()).then_some(&self.num)
    }

    /// Applies a ring map that fixes `q` to the numerator.
    pub fn map_numerator<F: Fn(&SparsePoly) -> SparsePoly>(&self, f: F) -> Self {
        Self { num: f(&self.num), cyclo: self.cyclo.clone(), int_den: self.int_den.clone() }.cancelled()
    }

    fn cancelled(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let keys: Vec<u64> = self.cyclo.keys().copied().collect();
        for d in keys {
            let phi = cyclotomic(d);
            while self.cyclo[&d] > 0 {
                match self.num.div_exact(&phi) {
                    Ok(q) => {
                        self.num = q;
                        *self.cyclo.get_mut(&d).unwrap() -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        self.cyclo.retain(|_, m| *m > 0);
        let g = self.num.content().gcd(&self.int_den);
        if !g.is_one() {
            self.num = self.num.div_scalar_exact(&g).expect("content divides");
            self.int_den /= &g;
        }
        if self.int_den.is_negative() {
            self.int_den = -&self.int_den;
            self.num = -&self.num;
        }
        self
    }

    /// Rewrites both over a common denominator and returns the scaled numerators.
    fn common(&self, other: &Self) -> (SparsePoly, SparsePoly, BTreeMap<u64, u32>, BigInt) {
        let mut cyclo = self.cyclo.clone();
        for (&d, &m) in &other.cyclo {
            let e = cyclo.entry(d).or_insert(0);
            *e = (*e).max(m);
        }
        let lcm = self.int_den.lcm(&other.int_den);
        let lift = |f: &Self| {
            let mut n = f.num.scale(&(&lcm / &f.int_den));
            for (&d, &m) in &cyclo {
                let have = f.cyclo.get(&d).copied().unwrap_or(0);
                if m > have {
                    n = &n * &cyclotomic(d).pow(m - have);
                }
            }
            n
        };
        (lift(self), lift(other), cyclo, lcm)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, cyclo, int_den) = self.common(other);
        Self { num: &a + &b, cyclo, int_den }.cancelled()
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, cyclo, int_den) = self.common(other);
        Self { num: &a - &b, cyclo, int_den }.cancelled()
    }

    pub fn neg(&self) -> Self {
        Self { num: -&self.num, cyclo: self.cyclo.clone(), int_den: self.int_den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut cyclo = self.cyclo.clone();
        for (&d, &m) in &other.cyclo {
            *cyclo.entry(d).or_insert(0) += m;
        }
        Self { num: &self.num * &other.num, cyclo, int_den: &self.int_den * &other.int_den }
            .cancelled()
    }

    pub fn mul_poly(&self, f: &SparsePoly) -> Self {
        Self { num: &self.num * f, cyclo: self.cyclo.clone(), int_den: self.int_den.clone() }
            .cancelled()
    }

    pub fn div_int(&self, k: &BigInt) -> Result<Self> {
        if k.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        Ok(Self { num: self.num.clone(), cyclo: self.cyclo.clone(), int_den: &self.int_den * k }
            .cancelled())
    }

    /// Divides by `Φ_d(q)`.
    pub fn div_cyclotomic(&self, d: u64) -> Self {
        let mut cyclo = self.cyclo.clone();
        *cyclo.entry(d).or_insert(0) += 1;
        Self { num: self.num.clone(), cyclo, int_den: self.int_den.clone() }.cancelled()
    }

    /// Divides by `[n]_q = ∏_{d | n, d > 1} Φ_d(q)`.
    pub fn div_q_int(&self, n: u64) -> Self {
        (2..=n).filter(|d| n.is_multiple_of(*d)).fold(self.clone(), |acc, d| acc.div_cyclotomic(d))
    }

    /// `Ψ^n`, with every variable of rank 1.
    pub fn adams(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::NonPositiveIndex(0));
        }
        let num = self.num.scale_exponents(Exp::from_integer(n as i64));
        let mut cyclo = self.cyclo.clone();
        for (p, e) in factorize(n) {
            for _ in 0..e {
                let mut next = BTreeMap::new();
                for (&d, &m) in &cyclo {
                    *next.entry(d * p).or_insert(0) += m;
                    if d % p != 0 {
                        *next.entry(d).or_insert(0) += m;
                    }
                }
                cyclo = next;
            }
        }
        Ok(Self { num, cyclo, int_den: self.int_den.clone() }.cancelled())
    }

    /// Equality by cross-multiplication of the polynomial pairs.
    pub fn cross_eq(&self, other: &Self) -> bool {
        let (a, b) = self.pair();
        let (c, d) = other.pair();
        &a * &d == &c * &b
    }

    /// Splits the numerator by the monomial in the variables other than `q`;
    /// the pieces share this fraction's denominator.
    pub fn coefficients(&self) -> BTreeMap<Monomial, QFraction> {
        self.num
            .split_x_parts()
            .into_iter()
            .map(|(m, c)| {
                let f = Self { num: c, cyclo: self.cyclo.clone(), int_den: self.int_den.clone() };
                (m, f.cancelled())
            })
            .collect()
    }

    /// Value at `q = 1` as `(numerator, integer denominator)`; fails if
    /// `q - 1` remains in the denominator.
    pub fn at_q_one(&self) -> Result<(SparsePoly, BigInt)> {
        if self.cyclo.contains_key(&1) {
            return Err(Error::NotIntegral("pole at q = 1".into()));
        }
        let mut den = self.int_den.clone();
        for (&d, &m) in &self.cyclo {
            let f = factorize(d);
            if f.len() == 1 {
                den *= num_traits::pow(BigInt::from(f[0].0), m as usize);
            }
        }
        Ok((self.num.eval_var(Q, 1)?, den))
    }
}

impl PartialEq for QFraction {
    fn eq(&self, other: &Self) -> bool {
        self.cross_eq(other)
    }
}

impl std::fmt::Display for QFraction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_poly() {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "({}) / ({})", self.num, self.denominator()),
        }
    }
}
