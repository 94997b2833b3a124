//! Décalage, chain maps, mapping cones and certified quasi-isomorphism checks.

use std::collections::BTreeSet;

use serde::Serialize;

use super::cohomology::cohomology_over;
use super::complex::{CochainComplex, PolyMatrix};
use crate::error::{Error, Result};
use crate::lambda_ring::adams;
use crate::linalg::{diagonal_pivots, map_matrix, small_prime_factors, Euclidean, FpPoly, RatPoly};
use crate::ring_core::SparsePoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecalageCertificate {
    pub divisor: String,
    /// Nonzero entries divided, each re-multiplied and compared.
    pub entries_checked: usize,
}

/// Divides every differential entry by `f`. On a complex whose differentials
/// are divisible by `f` this realizes `η_f`; otherwise reports the first
/// offending entry.
pub fn decalage(c: &CochainComplex, f: &SparsePoly) -> Result<(CochainComplex, DecalageCertificate)> {
    let mut checked = 0;
    let mut diffs = Vec::with_capacity(c.diffs().len());
    for (k, d) in c.diffs().iter().enumerate() {
        let q = d.try_map(|i, j, e| {
            if e.is_zero() {
                return Ok(SparsePoly::zero());
            }
            let quot = e.div_exact(f).ok().filter(|q| &(q * f) == e).ok_or_else(|| {
                Error::DecalageNotDivisible {
                    degree: (c.start() + k as i64).max(0) as usize,
                    row: i,
                    col: j,
                    entry: e.to_string(),
                    divisor: f.to_string(),
                }
            })?;
            Ok(quot)
        })?;
        checked += d.entries().iter().flatten().filter(|e| !e.is_zero()).count();
        diffs.push(q);
    }
    Ok((c.with_diffs(diffs)?, DecalageCertificate { divisor: f.to_string(), entries_checked: checked }))
}

/// A degree-wise map `φ^i: C^i → C'^i`; when `adams` is `Some(p)` the map is
/// `q ↦ q^p`-semilinear and the chain law reads `φ Ψ^p(D) = D' φ`.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: CochainComplex,
    pub target: CochainComplex,
    /// `maps[k]` acts on degree `source.start() + k`.
    pub maps: Vec<PolyMatrix>,
    pub adams: Option<u64>,
}

impl ChainMap {
    /// Validates shapes and the chain law.
    pub fn new(source: CochainComplex, target: CochainComplex, maps: Vec<PolyMatrix>, adams: Option<u64>) -> Result<Self> {
        if source.start() != target.start() || source.end() != target.end() {
            return Err(Error::Shape("source and target cover different degrees".into()));
        }
        if maps.len() != source.dims().len() {
            return Err(Error::Shape(format!("{} maps for {} degrees", maps.len(), source.dims().len())));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != target.dims()[k] || m.cols() != source.dims()[k] {
                return Err(Error::Shape(format!("map in degree {} has the wrong shape", source.start() + k as i64)));
            }
        }
        let phi = Self { source, target, maps, adams };
        phi.check()?;
        Ok(phi)
    }

    fn twist(&self, m: &PolyMatrix) -> Result<PolyMatrix> {
        match self.adams {
            Some(p) => m.try_map(|_, _, e| adams(p as i64, e)),
            None => Ok(m.clone()),
        }
    }

    fn check(&self) -> Result<()> {
        for k in 0..self.source.diffs().len() {
            let lhs = self.maps[k + 1].mul(&self.twist(&self.source.diffs()[k])?)?;
            let rhs = self.target.diffs()[k].mul(&self.maps[k])?;
            let diff = lhs.sub(&rhs)?;
            if !diff.is_zero() {
                let (i, j) = (0..diff.rows())
                    .flat_map(|i| (0..diff.cols()).map(move |j| (i, j)))
                    .find(|&(i, j)| !diff.get(i, j).is_zero())
                    .expect("nonzero difference");
                return Err(Error::NotAChainMap {
                    degree: (self.source.start() + k as i64).max(0) as usize,
                    detail: format!("φD - D'φ has entry {} at ({i}, {j})", diff.get(i, j)),
                });
            }
        }
        Ok(())
    }

    /// `Cone^i = C^{i+1} ⊕ C'^i`, `D = [[-D_C, 0], [φ, D_{C'}]]`. Linear maps only.
    pub fn cone(&self) -> Result<CochainComplex> {
        if self.adams.is_some() {
            return Err(Error::Invalid("mapping cone of a semilinear map".into()));
        }
        let (s, t) = (&self.source, &self.target);
        let start = s.start() - 1;
        let end = s.end();
        let dims: Vec<usize> = (start..=end).map(|i| s.dim(i + 1) + t.dim(i)).collect();
        let diffs = (start..end)
            .map(|i| {
                let mut m = PolyMatrix::zeros(s.dim(i + 2) + t.dim(i + 1), s.dim(i + 1) + t.dim(i));
                m.paste(0, 0, &s.diff(i + 1).scale(&SparsePoly::constant(-1)));
                if let Some(k) = usize::try_from(i + 1 - s.start()).ok().filter(|&k| k < self.maps.len()) {
                    m.paste(s.dim(i + 2), 0, &self.maps[k]);
                }
                m.paste(s.dim(i + 2), s.dim(i + 1), &t.diff(i));
                m
            })
            .collect();
        CochainComplex::new(start, dims, diffs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub prime: u64,
    pub cone_acyclic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuasiIsoReport {
    pub chain_map: bool,
    pub acyclic_over_qq: bool,
    pub primes: Vec<PrimeCheck>,
    pub quasi_iso: bool,
}

fn acyclic<R: Euclidean>(ring: &R, c: &CochainComplex) -> Result<bool> {
    Ok(cohomology_over(ring, c)?.iter().all(|h| h.is_zero()))
}

/// Decides whether `φ` is a quasi-isomorphism of complexes of free
/// `ℤ[q]`-modules by checking that its cone is acyclic over `ℚ[q]` and over
/// `𝔽_p[q]` for every prime `p` that divides a numerator or denominator of a
/// `ℚ[q]` elimination pivot or an entry of the cone, together with
/// `extra_primes`. The prime sweep is a heuristic: a prime that divides no
/// pivot or entry can still divide a larger minor.
pub fn quasi_iso_check(phi: &ChainMap, extra_primes: &[u64]) -> Result<QuasiIsoReport> {
    let cone = phi.cone()?;
    let acyclic_over_qq = acyclic(&RatPoly, &cone)?;
    let mut primes: BTreeSet<u64> = extra_primes.iter().copied().collect();
    for d in cone.diffs() {
        for e in d.entries().iter().flatten().filter(|e| !e.is_zero()) {
            primes.extend(small_prime_factors(&e.content()));
        }
        let m = map_matrix(&RatPoly, d.entries())?;
        for pivot in diagonal_pivots(&RatPoly, &m) {
            primes.extend(RatPoly.content_primes(&pivot));
        }
    }
    let checks: Vec<PrimeCheck> = primes
        .into_iter()
        .map(|p| Ok(PrimeCheck { prime: p, cone_acyclic: acyclic(&FpPoly::new(p), &cone)? }))
        .collect::<Result<_>>()?;
    let quasi_iso = acyclic_over_qq && checks.iter().all(|c| c.cone_acyclic);
    Ok(QuasiIsoReport { chain_map: true, acyclic_over_qq, primes: checks, quasi_iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdrham::complex::{weight_piece, ComplexKind};
    use crate::ring_core::Exp;

    fn lit(rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_literals(rows).unwrap()
    }

    #[test]
    fn decalage_of_twisted_piece() {
        let w = [Exp::from_integer(3)];
        let t = weight_piece(ComplexKind::Twisted, &w).unwrap();
        let (c, cert) = decalage(&t, &"q - 1".parse().unwrap()).unwrap();
        assert_eq!(c, weight_piece(ComplexKind::QOmega, &w).unwrap());
        assert_eq!(cert.entries_checked, 1);
        let err = decalage(&c, &"q - 1".parse().unwrap()).unwrap_err();
        assert!(matches!(err, Error::DecalageNotDivisible { degree: 0, row: 0, col: 0, .. }));
    }

    #[test]
    fn identity_is_quasi_iso() {
        let c = CochainComplex::from_literals(0, &[&[&["1 + q"]]]).unwrap();
        let id = ChainMap::new(c.clone(), c, vec![lit(&[&["1"]]), lit(&[&["1"]])], None).unwrap();
        let r = quasi_iso_check(&id, &[]).unwrap();
        assert!(r.quasi_iso);
    }

    #[test]
    fn non_chain_map_rejected() {
        let a = CochainComplex::from_literals(0, &[&[&["1 + q"]]]).unwrap();
        let b = CochainComplex::from_literals(0, &[&[&["1"]]]).unwrap();
        let err = ChainMap::new(a, b, vec![lit(&[&["1"]]), lit(&[&["1"]])], None).unwrap_err();
        assert!(matches!(err, Error::NotAChainMap { degree: 0, .. }));
    }

    #[test]
    fn rational_but_not_integral_quasi_iso() {
        let a = CochainComplex::from_literals(0, &[&[&["2"]]]).unwrap();
        let b = CochainComplex::from_literals(0, &[&[&["1"]]]).unwrap();
        let phi = ChainMap::new(a, b, vec![lit(&[&["2"]]), lit(&[&["1"]])], None).unwrap();
        let r = quasi_iso_check(&phi, &[]).unwrap();
        assert!(r.acyclic_over_qq);
        assert!(!r.quasi_iso);
        assert!(r.primes.iter().any(|c| c.prime == 2 && !c.cone_acyclic));
    }
}
