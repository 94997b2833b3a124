use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Euclidean;
use crate::error::{Error, Result};
use crate::ring_core::{Exp, Monomial, SparsePoly, Q};

/// Prime factors of `|n|` below `10^6`; larger cofactors are ignored.
pub fn small_prime_factors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut d = 2u64;
    while d < 1_000_000 && !n.is_one() {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        if &bd * &bd > n {
            if !n.is_one() {
                if let Some(v) = n.to_u64() {
                    out.push(v);
                }
            }
            break;
        }
        d += 1;
    }
    out
}

fn integral_q_terms(f: &SparsePoly, ring: &str) -> Result<Vec<(i64, BigInt)>> {
    let mut out = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        if m.width() > 1 {
            return Err(Error::Coefficient { ring: ring.into(), detail: format!("{f} involves x") });
        }
        let e = m.exp(Q);
        if !e.is_integer() {
            return Err(Error::Coefficient {
                ring: ring.into(),
                detail: format!("fractional power of q in {f}"),
            });
        }
        out.push((e.to_integer(), c.clone()));
    }
    Ok(out)
}

fn q_literal(coeffs: impl IntoIterator<Item = BigInt>) -> String {
    SparsePoly::from_terms(
        coeffs
            .into_iter()
            .enumerate()
            .map(|(k, c)| (Monomial::var_pow(Q, Exp::from_integer(k as i64)), c)),
    )
    .to_string()
}

/// `ℤ` viewed as `ℤ[q]/(q - value)`; `value = 1` gives the classical limit and
/// `value = -1` gives `ℤ[ζ_2]`.
#[derive(Clone, Copy, Debug)]
pub struct IntAt {
    value: i64,
}

impl IntAt {
    pub fn new(value: i64) -> Self {
        Self { value }
    }
}

impl Euclidean for IntAt {
    type Elem = BigInt;

    fn name(&self) -> String {
        match self.value {
            1 => "Z-q1".into(),
            -1 => "Zzeta(p=2)".into(),
            v => format!("Z(q={v})"),
        }
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn norm(&self, a: &BigInt) -> BigUint {
        a.magnitude().clone()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        a.div_mod_floor(b)
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.magnitude().is_one()
    }
    fn normalize(&self, a: &BigInt) -> BigInt {
        a.abs()
    }
    fn from_poly(&self, f: &SparsePoly) -> Result<BigInt> {
        if !f.is_q_only() {
            return Err(Error::Coefficient { ring: self.name(), detail: format!("{f} involves x") });
        }
        f.eval_var(Q, self.value)
            .map(|g| g.constant_term())
            .map_err(|e| Error::Coefficient { ring: self.name(), detail: e.to_string() })
    }
    fn show(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn content_primes(&self, a: &BigInt) -> Vec<u64> {
        small_prime_factors(a)
    }
}

/// `ℚ[q]`, dense coefficient vectors with no trailing zeros.
#[derive(Clone, Copy, Debug, Default)]
pub struct RatPoly;

fn trim<T: Zero>(mut v: Vec<T>) -> Vec<T> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

impl Euclidean for RatPoly {
    type Elem = Vec<BigRational>;

    fn name(&self) -> String {
        "Qq".into()
    }
    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![BigRational::one()]
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    + b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect())
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        trim((0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect())
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
    fn norm(&self, a: &Self::Elem) -> BigUint {
        BigUint::from(a.len())
    }
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead = b.last().unwrap();
        let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = r.last().unwrap() / lead;
            for (i, bc) in b.iter().enumerate() {
                r[shift + i] -= &c * bc;
            }
            q[shift] = c;
            r.pop();
            r = trim(r);
        }
        (trim(q), r)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1
    }
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        match a.last() {
            None => Vec::new(),
            Some(lead) => a.iter().map(|c| c / lead).collect(),
        }
    }
    fn from_poly(&self, f: &SparsePoly) -> Result<Self::Elem> {
        let mut out: Vec<BigRational> = Vec::new();
        for (e, c) in integral_q_terms(f, "Qq")? {
            let k = e as usize;
            if out.len() <= k {
                out.resize(k + 1, BigRational::zero());
            }
            out[k] += BigRational::from_integer(c);
        }
        Ok(trim(out))
    }
    fn show(&self, a: &Self::Elem) -> String {
        if a.iter().all(|c| c.is_integer()) {
            return q_literal(a.iter().map(|c| c.to_integer()));
        }
        let mut parts = Vec::new();
        for (k, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "*q".into(),
                k => format!("*q^{k}"),
            };
            parts.push(format!("({c}){mono}"));
        }
        parts.join(" + ")
    }
    fn content_primes(&self, a: &Self::Elem) -> Vec<u64> {
        let mut out: Vec<u64> = a
            .iter()
            .flat_map(|c| {
                let mut v = small_prime_factors(c.numer());
                v.extend(small_prime_factors(c.denom()));
                v
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// `𝔽_p[q]`.
#[derive(Clone, Copy, Debug)]
pub struct FpPoly {
    p: u64,
}

impl FpPoly {
    pub fn new(p: u64) -> Self {
        Self { p }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn inv(&self, a: u64) -> u64 {
        let eg = (a as i128).extended_gcd(&(self.p as i128));
        eg.x.rem_euclid(self.p as i128) as u64
    }
}

impl Euclidean for FpPoly {
    type Elem = Vec<u64>;

    fn name(&self) -> String {
        format!("Fq(p={})", self.p)
    }
    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![1]
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        trim_u(
            (0..n)
                .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
                .collect(),
        )
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let n = a.len().max(b.len());
        trim_u(
            (0..n)
                .map(|i| {
                    (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
                })
                .collect(),
        )
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p = self.p as u128;
        let mut out = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u128 * y as u128) % p;
            }
        }
        trim_u(out.into_iter().map(|v| v as u64).collect())
    }
    fn norm(&self, a: &Self::Elem) -> BigUint {
        BigUint::from(a.len())
    }
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let mut r = a.clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let p = self.p as u128;
        let lead_inv = self.inv(*b.last().unwrap()) as u128;
        let mut q = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = (*r.last().unwrap() as u128 * lead_inv % p) as u64;
            for (i, &bc) in b.iter().enumerate() {
                let sub = (c as u128 * bc as u128 % p) as u64;
                r[shift + i] = (r[shift + i] + self.p - sub) % self.p;
            }
            q[shift] = c;
            r.pop();
            r = trim_u(r);
        }
        (trim_u(q), r)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1
    }
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        match a.last() {
            None => Vec::new(),
            Some(&lead) => {
                let inv = self.inv(lead) as u128;
                a.iter().map(|&c| (c as u128 * inv % self.p as u128) as u64).collect()
            }
        }
    }
    fn from_poly(&self, f: &SparsePoly) -> Result<Self::Elem> {
        let mut out: Vec<u64> = Vec::new();
        let p = BigInt::from(self.p);
        for (e, c) in integral_q_terms(f, &self.name())? {
            let k = e as usize;
            if out.len() <= k {
                out.resize(k + 1, 0);
            }
            let c = c.mod_floor(&p).to_u64().unwrap();
            out[k] = (out[k] + c) % self.p;
        }
        Ok(trim_u(out))
    }
    fn show(&self, a: &Self::Elem) -> String {
        q_literal(a.iter().map(|&c| BigInt::from(c)))
    }
}

fn trim_u(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Eisenstein integers `ℤ[ω] = ℤ[q]/(1 + q + q²)`, elements `a + bω`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Eisenstein;

impl Eisenstein {
    fn conj(a: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (&a.0 - &a.1, -&a.1)
    }

    fn norm_int(a: &(BigInt, BigInt)) -> BigInt {
        &a.0 * &a.0 - &a.0 * &a.1 + &a.1 * &a.1
    }

    fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
        // nearest integer to n/d, d > 0
        let two = BigInt::from(2);
        (n * &two + d).div_floor(&(d * &two))
    }
}

impl Euclidean for Eisenstein {
    type Elem = (BigInt, BigInt);

    fn name(&self) -> String {
        "Zzeta(p=3)".into()
    }
    fn zero(&self) -> Self::Elem {
        (BigInt::zero(), BigInt::zero())
    }
    fn one(&self) -> Self::Elem {
        (BigInt::one(), BigInt::zero())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.0.is_zero() && a.1.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (&a.0 - &b.0, &a.1 - &b.1)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let bb = &a.1 * &b.1;
        (&a.0 * &b.0 - &bb, &a.0 * &b.1 + &a.1 * &b.0 - bb)
    }
    fn norm(&self, a: &Self::Elem) -> BigUint {
        Self::norm_int(a).to_biguint().unwrap()
    }
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem) {
        let n = Self::norm_int(b);
        let num = self.mul(a, &Self::conj(b));
        let q = (Self::round_div(&num.0, &n), Self::round_div(&num.1, &n));
        let r = self.sub(a, &self.mul(&q, b));
        (q, r)
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        Self::norm_int(a).is_one()
    }
    fn normalize(&self, a: &Self::Elem) -> Self::Elem {
        let omega = (BigInt::zero(), BigInt::one());
        let mut best = a.clone();
        let mut cur = a.clone();
        for _ in 0..3 {
            for cand in [cur.clone(), (-&cur.0, -&cur.1)] {
                if (&cand.0, &cand.1) > (&best.0, &best.1) {
                    best = cand;
                }
            }
            cur = self.mul(&cur, &omega);
        }
        best
    }
    fn from_poly(&self, f: &SparsePoly) -> Result<Self::Elem> {
        let mut out = self.zero();
        for (e, c) in integral_q_terms(f, &self.name())? {
            match e.rem_euclid(3) {
                0 => out.0 += c,
                1 => out.1 += c,
                _ => {
                    out.0 -= &c;
                    out.1 -= c;
                }
            }
        }
        Ok(out)
    }
    fn show(&self, a: &Self::Elem) -> String {
        q_literal([a.0.clone(), a.1.clone()])
    }
    fn content_primes(&self, a: &Self::Elem) -> Vec<u64> {
        small_prime_factors(&Self::norm_int(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_division() {
        let e = Eisenstein;
        let a = e.from_poly(&"7 + 3*q".parse().unwrap()).unwrap();
        let b = e.from_poly(&"2 - q".parse().unwrap()).unwrap();
        let (q, r) = e.div_rem(&a, &b);
        assert!(e.norm(&r) < e.norm(&b));
        assert_eq!(e.add(&e.mul(&q, &b), &r), a);
        // [3]_q vanishes, 1 - q has norm 3
        assert!(e.is_zero(&e.from_poly(&"1 + q + q^2".parse().unwrap()).unwrap()));
        assert_eq!(e.norm(&e.from_poly(&"1 - q".parse().unwrap()).unwrap()), BigUint::from(3u32));
        assert!(e.is_unit(&e.from_poly(&"q^2".parse().unwrap()).unwrap()));
    }

    #[test]
    fn fp_poly() {
        let f = FpPoly::new(3);
        let a = f.from_poly(&"q^2 - 1".parse().unwrap()).unwrap();
        let b = f.from_poly(&"q + 1".parse().unwrap()).unwrap();
        let (q, r) = f.div_rem(&a, &b);
        assert!(r.is_empty());
        assert_eq!(f.show(&q), "2 + q");
        assert_eq!(f.gcd(&a, &f.from_poly(&"q - 1".parse().unwrap()).unwrap()), vec![2, 1]);
    }

    #[test]
    fn zeta_two() {
        let z = IntAt::new(-1);
        assert_eq!(z.from_poly(&"1 + q + q^2".parse().unwrap()).unwrap(), BigInt::one());
        assert!(z.from_poly(&"q^(1/2)".parse().unwrap()).is_err());
    }

    #[test]
    fn prime_factors() {
        assert_eq!(small_prime_factors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(small_prime_factors(&BigInt::from(-49)), vec![7]);
        assert_eq!(small_prime_factors(&BigInt::from(1_000_003)), vec![1_000_003]);
    }
}
