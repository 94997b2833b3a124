//! p-typical Witt vectors of finite length over torsion-free polynomial rings,
//! computed through ghost components.

mod limit;

pub use limit::{pt_valuation, teichmuller_limit_check, LimitReport, LimitStep};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lambda_ring::adams;
use crate::ring_core::SparsePoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    p: u64,
    coords: Vec<SparsePoly>,
}

fn p_pow(p: u64, k: usize) -> BigInt {
    num_traits::pow(BigInt::from(p), k)
}

impl WittVector {
    pub fn new(p: u64, coords: Vec<SparsePoly>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::Witt("length-0 Witt vector".into()));
        }
        Ok(Self { p, coords })
    }

    pub fn from_ints(p: u64, coords: &[i64]) -> Result<Self> {
        Self::new(p, coords.iter().map(|&c| SparsePoly::constant(c)).collect())
    }

    pub fn zero(p: u64, n: usize) -> Result<Self> {
        Self::new(p, vec![SparsePoly::zero(); n])
    }

    pub fn one(p: u64, n: usize) -> Result<Self> {
        teichmuller(p, &SparsePoly::one(), n)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[SparsePoly] {
        &self.coords
    }

    /// `w_i = Σ_{j ≤ i} p^j a_j^{p^{i-j}}`.
    pub fn ghost(&self) -> Vec<SparsePoly> {
        let mut out = Vec::with_capacity(self.len());
        // powers[j] holds a_j^{p^{i-j}} for the current i
        let mut powers: Vec<SparsePoly> = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            for pw in powers.iter_mut() {
                *pw = pw.pow(self.p as u32);
            }
            powers.push(self.coords[i].clone());
            let w = powers
                .iter()
                .enumerate()
                .map(|(j, a)| a.scale(&p_pow(self.p, j)))
                .sum();
            out.push(w);
        }
        out
    }

    /// The unique Witt vector with the given ghost components, with every
    /// division by `p^i` certified exact.
    pub fn from_ghost(p: u64, ghost: &[SparsePoly]) -> Result<Self> {
        let mut coords: Vec<SparsePoly> = Vec::with_capacity(ghost.len());
        let mut powers: Vec<SparsePoly> = Vec::new();
        for (i, w) in ghost.iter().enumerate() {
            for pw in powers.iter_mut() {
                *pw = pw.pow(p as u32);
            }
            let mut rest = w.clone();
            for (j, a) in powers.iter().enumerate() {
                rest -= &a.scale(&p_pow(p, j));
            }
            let a = rest.div_scalar_exact(&p_pow(p, i)).map_err(|_| {
                Error::Witt(format!("ghost component {i} is not p^{i}-divisible after back-solving"))
            })?;
            powers.push(a.clone());
            coords.push(a);
        }
        Self::new(p, coords)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.len() != other.len() {
            return Err(Error::Witt(format!(
                "W_{}^({}) vs W_{}^({})",
                self.len(),
                self.p,
                other.len(),
                other.p
            )));
        }
        Ok(())
    }

    fn ghostwise<F: Fn(&SparsePoly, &SparsePoly) -> SparsePoly>(&self, other: &Self, f: F) -> Result<Self> {
        self.compatible(other)?;
        let g: Vec<SparsePoly> =
            self.ghost().iter().zip(other.ghost().iter()).map(|(a, b)| f(a, b)).collect();
        Self::from_ghost(self.p, &g)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ghostwise(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.ghostwise(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ghostwise(other, |a, b| a * b)
    }

    pub fn neg(&self) -> Result<Self> {
        let g: Vec<SparsePoly> = self.ghost().iter().map(|w| -w).collect();
        Self::from_ghost(self.p, &g)
    }

    /// Multiplication by an integer.
    pub fn scale(&self, k: i64) -> Result<Self> {
        let g: Vec<SparsePoly> = self.ghost().iter().map(|w| w.scale(&k.into())).collect();
        Self::from_ghost(self.p, &g)
    }

    /// `V(a_0, .., a_{n-1}) = (0, a_0, .., a_{n-2})`.
    pub fn verschiebung(&self) -> Self {
        let mut coords = Vec::with_capacity(self.len());
        coords.push(SparsePoly::zero());
        coords.extend(self.coords[..self.len() - 1].iter().cloned());
        Self { p: self.p, coords }
    }

    /// `F`, with `ghost(Fw)_i = ghost(w)_{i+1}`; the length drops by one.
    pub fn frobenius(&self) -> Result<Self> {
        if self.len() < 2 {
            return Err(Error::Witt("Frobenius needs length at least 2".into()));
        }
        Self::from_ghost(self.p, &self.ghost()[1..])
    }

    /// Drops trailing coordinates.
    pub fn truncate(&self, n: usize) -> Result<Self> {
        Self::new(self.p, self.coords[..n.min(self.len())].to_vec())
    }
}

/// `[a] = (a, 0, .., 0)`.
pub fn teichmuller(p: u64, a: &SparsePoly, n: usize) -> Result<WittVector> {
    let mut coords = vec![SparsePoly::zero(); n];
    if n == 0 {
        return Err(Error::Witt("length-0 Witt vector".into()));
    }
    coords[0] = a.clone();
    WittVector::new(p, coords)
}

/// Ghost components `(Ψ^n b)` of the cofree map `B → W(B)` restricted to
/// indices `n ≤ bound` prime to every `p ∈ primes`, together with the Witt
/// coordinates `w_n = Σ_{d | n} d · a_d^{n/d}` they determine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigWittGhost {
    pub indices: Vec<u64>,
    pub components: Vec<SparsePoly>,
}

impl BigWittGhost {
    pub fn of_element(b: &SparsePoly, primes: &[u64], bound: u64) -> Result<Self> {
        let indices: Vec<u64> =
            (1..=bound).filter(|n| primes.iter().all(|p| n % p != 0)).collect();
        let components = indices.iter().map(|&n| adams(n as i64, b)).collect::<Result<_>>()?;
        Ok(Self { indices, components })
    }

    fn zip(&self, other: &Self, f: impl Fn(&SparsePoly, &SparsePoly) -> SparsePoly) -> Result<Self> {
        if self.indices != other.indices {
            return Err(Error::Witt("ghost index sets differ".into()));
        }
        Ok(Self {
            indices: self.indices.clone(),
            components: self.components.iter().zip(&other.components).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a + b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a * b)
    }

    /// Witt coordinates `a_n` from `w_n = Σ_{d | n} d a_d^{n/d}`, with each
    /// division by `n` certified exact.
    pub fn coordinates(&self) -> Result<Vec<SparsePoly>> {
        let mut coords: Vec<SparsePoly> = Vec::with_capacity(self.indices.len());
        for (pos, &n) in self.indices.iter().enumerate() {
            let mut rest = self.components[pos].clone();
            for (dpos, &d) in self.indices[..pos].iter().enumerate() {
                if n % d == 0 {
                    rest -= &coords[dpos].pow((n / d) as u32).scale(&BigInt::from(d));
                }
            }
            let a = rest.div_scalar_exact(&BigInt::from(n)).map_err(|_| {
                Error::Witt(format!("big Witt coordinate {n} is not integral"))
            })?;
            coords.push(a);
        }
        Ok(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::parse_poly;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn ghost_examples() {
        let w = WittVector::new(2, vec![p("x1"), p("x2")]).unwrap();
        assert_eq!(w.ghost(), vec![p("x1"), p("x1^2 + 2*x2")]);
        let t = teichmuller(3, &p("x1"), 3).unwrap();
        assert_eq!(t.ghost(), vec![p("x1"), p("x1^3"), p("x1^9")]);
        let w = WittVector::from_ints(3, &[1, 1]).unwrap();
        assert_eq!(w.ghost(), vec![p("1"), p("4")]);
    }

    #[test]
    fn addition_carries() {
        let one = WittVector::from_ints(2, &[1, 0]).unwrap();
        assert_eq!(one.add(&one).unwrap(), WittVector::from_ints(2, &[2, -1]).unwrap());
        let z = WittVector::zero(2, 2).unwrap();
        assert_eq!(one.add(&z).unwrap(), one);
        let x = WittVector::new(2, vec![p("x1"), p("0")]).unwrap();
        assert_eq!(one.mul(&x).unwrap(), x);
    }

    #[test]
    fn frobenius_verschiebung() {
        let v = teichmuller(2, &SparsePoly::one(), 2).unwrap().verschiebung();
        assert_eq!(v, WittVector::from_ints(2, &[0, 1]).unwrap());
        assert_eq!(v.frobenius().unwrap(), WittVector::from_ints(2, &[2]).unwrap());
        assert!(WittVector::from_ints(2, &[]).is_err());
        assert!(WittVector::from_ints(2, &[1]).unwrap().frobenius().is_err());
    }

    #[test]
    fn non_integral_ghost_rejected() {
        assert!(WittVector::from_ghost(2, &[p("1"), p("2")]).is_err());
    }

    #[test]
    fn big_witt_of_rank_one_sum() {
        let g = BigWittGhost::of_element(&p("x1 + x2"), &[2], 9).unwrap();
        assert_eq!(g.indices, vec![1, 3, 5, 7, 9]);
        let c = g.coordinates().unwrap();
        assert_eq!(c[0], p("x1 + x2"));
    }
}
