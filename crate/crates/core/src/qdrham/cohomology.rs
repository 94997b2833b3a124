//! Cohomology of complexes of free modules over Euclidean coefficient rings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::complex::{weight_piece, weights, ComplexKind, CochainComplex};
use super::forms::weight_strings;
use crate::error::{Error, Result};
use crate::linalg::{invariant_factors, map_matrix, Eisenstein, Euclidean, FpPoly, IntAt, RatPoly};

/// Coefficient rings for cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coeff {
    /// `ℚ[q]`.
    Qq,
    /// `𝔽_p[q]`.
    Fq(u64),
    /// `ℤ` with `q = 1`.
    ZQ1,
    /// `ℤ[ζ_p]` with `q = ζ_p`, for `p ∈ {2, 3}`.
    Zzeta(u64),
    /// `ℤ/p^a` with `q = 1`.
    Zpa(u64, u32),
    /// `ℤ[q]` itself; only for complexes whose differentials have at most
    /// one nonzero entry in every row and column.
    Zq,
}

impl Coeff {
    /// Parses `Qq`, `Fq`, `Z-q1`, `Zzeta`, `Zpa` or `Zq`, taking `p` and `a`
    /// from the arguments where needed.
    pub fn parse(name: &str, p: u64, a: u32) -> Result<Self> {
        match name {
            "Qq" => Ok(Self::Qq),
            "Fq" => Ok(Self::Fq(p)),
            "Z-q1" | "Zq1" => Ok(Self::ZQ1),
            "Zzeta" => match p {
                2 | 3 => Ok(Self::Zzeta(p)),
                _ => Err(Error::UnsupportedPrime(p)),
            },
            "Zpa" => Ok(Self::Zpa(p, a)),
            "Zq" => Ok(Self::Zq),
            _ => Err(Error::Invalid(format!("unknown coefficient ring {name:?}"))),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Qq => RatPoly.name(),
            Self::Fq(p) => FpPoly::new(*p).name(),
            Self::ZQ1 => IntAt::new(1).name(),
            Self::Zzeta(2) => IntAt::new(-1).name(),
            Self::Zzeta(_) => Eisenstein.name(),
            Self::Zpa(p, a) => format!("Z/{p}^{a}"),
            Self::Zq => "Zq".into(),
        }
    }
}

/// `H^degree ≅ R^free_rank ⊕ ⊕_k R/(torsion_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeCohomology {
    pub degree: i64,
    pub free_rank: usize,
    /// Non-unit invariant factors, each dividing the next.
    pub torsion: Vec<String>,
}

impl DegreeCohomology {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Cyclic summands as divisors, free summands written as `0`.
    pub fn divisors(&self) -> Vec<String> {
        std::iter::repeat_n("0".to_string(), self.free_rank).chain(self.torsion.iter().cloned()).collect()
    }
}

/// `factors[k]`: invariant factors of `D: C^{start+k} → C^{start+k+1}` over `ring`.
pub fn differential_factors<R: Euclidean>(ring: &R, c: &CochainComplex) -> Result<Vec<Vec<R::Elem>>> {
    c.diffs().iter().map(|d| Ok(invariant_factors(ring, &map_matrix(ring, d.entries())?))).collect()
}

/// `H^i` has free rank `n_i - r_i - r_{i-1}` and torsion given by the non-unit
/// invariant factors of `D_{i-1}`.
pub fn cohomology_over<R: Euclidean>(ring: &R, c: &CochainComplex) -> Result<Vec<DegreeCohomology>> {
    let factors = differential_factors(ring, c)?;
    let ranks: Vec<usize> = factors.iter().map(Vec::len).collect();
    Ok((0..c.dims().len())
        .map(|k| {
            let out_rank = ranks.get(k).copied().unwrap_or(0);
            let in_rank = if k == 0 { 0 } else { ranks[k - 1] };
            let torsion = if k == 0 {
                Vec::new()
            } else {
                factors[k - 1].iter().filter(|e| !ring.is_unit(e)).map(|e| ring.show(e)).collect()
            };
            DegreeCohomology { degree: c.start() + k as i64, free_rank: c.dims()[k] - out_rank - in_rank, torsion }
        })
        .collect())
}

/// Exact `ℤ[q]`-module structure for complexes with diagonal-type
/// differentials (at most one nonzero entry per row and column).
fn cohomology_over_zq(c: &CochainComplex) -> Result<Vec<DegreeCohomology>> {
    for d in c.diffs() {
        let rows_ok = d.entries().iter().all(|r| r.iter().filter(|e| !e.is_zero()).count() <= 1);
        let cols_ok = (0..d.cols()).all(|j| (0..d.rows()).filter(|&i| !d.get(i, j).is_zero()).count() <= 1);
        if !rows_ok || !cols_ok {
            return Err(Error::Coefficient {
                ring: "Zq".into(),
                detail: "Z[q] is not a PID; only diagonal-type differentials are supported".into(),
            });
        }
    }
    let mut out = Vec::new();
    for (k, &n) in c.dims().iter().enumerate() {
        let deg = c.start() + k as i64;
        let outgoing = c.diff(deg);
        let incoming = c.diff(deg - 1);
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for b in 0..n {
            let hit = (0..incoming.cols()).map(|j| incoming.get(b, j)).find(|e| !e.is_zero());
            let kills = (0..outgoing.rows()).any(|i| !outgoing.get(i, b).is_zero());
            match hit {
                Some(e) => {
                    let unit = e.as_constant().is_some_and(|v| v.abs().is_one());
                    if !unit {
                        let lead_negative = e.leading_term().is_some_and(|(_, c)| c.is_negative());
                        torsion.push(if lead_negative { (-e).to_string() } else { e.to_string() });
                    }
                }
                None if !kills => free_rank += 1,
                None => {}
            }
        }
        out.push(DegreeCohomology { degree: deg, free_rank, torsion });
    }
    Ok(out)
}

/// `H^i(C ⊗ ℤ/p^a) = H^i ⊗ ℤ/p^a ⊕ Tor(H^{i+1}, ℤ/p^a)`, from `H` over `ℤ`.
fn cohomology_over_zpa(c: &CochainComplex, p: u64, a: u32) -> Result<Vec<DegreeCohomology>> {
    let over_z = cohomology_over(&IntAt::new(1), c)?;
    let pa = num_traits::pow(BigInt::from(p), a as usize);
    let reduce = |t: &String| -> Option<BigInt> {
        let g = t.parse::<BigInt>().expect("integer invariant factor").gcd(&pa);
        (!g.is_one()).then_some(g)
    };
    Ok(over_z
        .iter()
        .enumerate()
        .map(|(k, h)| {
            let mut cyclic: Vec<BigInt> = std::iter::repeat_n(pa.clone(), h.free_rank).collect();
            cyclic.extend(h.torsion.iter().filter_map(reduce));
            if let Some(next) = over_z.get(k + 1) {
                cyclic.extend(next.torsion.iter().filter_map(reduce));
            }
            cyclic.retain(|g| !g.is_zero());
            cyclic.sort();
            DegreeCohomology { degree: h.degree, free_rank: 0, torsion: cyclic.iter().map(ToString::to_string).collect() }
        })
        .collect())
}

pub fn cohomology(c: &CochainComplex, coeff: Coeff) -> Result<Vec<DegreeCohomology>> {
    match coeff {
        Coeff::Qq => cohomology_over(&RatPoly, c),
        Coeff::Fq(p) => cohomology_over(&FpPoly::new(p), c),
        Coeff::ZQ1 => cohomology_over(&IntAt::new(1), c),
        Coeff::Zzeta(2) => cohomology_over(&IntAt::new(-1), c),
        Coeff::Zzeta(3) => cohomology_over(&Eisenstein, c),
        Coeff::Zzeta(p) => Err(Error::UnsupportedPrime(p)),
        Coeff::Zpa(p, a) => cohomology_over_zpa(c, p, a),
        Coeff::Zq => cohomology_over_zq(c),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyRow {
    pub degree: i64,
    pub weight: Vec<String>,
    pub divisors: Vec<String>,
    pub coeff_ring: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub kind: ComplexKind,
    pub d: usize,
    pub max_weight: u32,
    pub coeff_ring: String,
    pub rows: Vec<CohomologyRow>,
}

/// Cohomology of every weight summand with `|β| ≤ max_weight`, computed in
/// parallel and reported in weight order.
pub fn graded_cohomology(kind: ComplexKind, d: usize, max_weight: u32, coeff: Coeff) -> Result<CohomologyReport> {
    let name = coeff.name();
    let per_weight: Vec<Vec<CohomologyRow>> = weights(d, max_weight)
        .par_iter()
        .map(|w| {
            let c = weight_piece(kind, w)?.widen(0, d as i64)?;
            Ok(cohomology(&c, coeff)?
                .into_iter()
                .map(|h| CohomologyRow {
                    degree: h.degree,
                    weight: weight_strings(w),
                    divisors: h.divisors(),
                    coeff_ring: name.clone(),
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(CohomologyReport { kind, d, max_weight, coeff_ring: name, rows: per_weight.into_iter().flatten().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::Exp;

    fn piece(v: &[i64]) -> CochainComplex {
        let w: Vec<Exp> = v.iter().map(|&x| Exp::from_integer(x)).collect();
        weight_piece(ComplexKind::QOmega, &w).unwrap()
    }

    #[test]
    fn one_variable_over_zq() {
        let h = cohomology(&piece(&[4]), Coeff::Zq).unwrap();
        assert!(h[0].is_zero());
        assert_eq!(h[1].torsion, vec!["1 + q + q^2 + q^3"]);
        let h = cohomology(&piece(&[1]), Coeff::Zq).unwrap();
        assert!(h[1].is_zero());
        let h = cohomology(&piece(&[0]), Coeff::Zq).unwrap();
        assert_eq!(h[0].divisors(), vec!["0"]);
    }

    #[test]
    fn specializations() {
        let h = cohomology(&piece(&[6]), Coeff::ZQ1).unwrap();
        assert_eq!(h[1].torsion, vec!["6"]);
        let h = cohomology(&piece(&[6]), Coeff::Zpa(2, 3)).unwrap();
        assert_eq!(h[0].torsion, vec!["2"]);
        assert_eq!(h[1].torsion, vec!["2"]);
        let h = cohomology(&piece(&[4]), Coeff::Zzeta(2)).unwrap();
        assert_eq!(h[0].free_rank, 1);
        let h = cohomology(&piece(&[3]), Coeff::Zzeta(3)).unwrap();
        assert_eq!(h[1].free_rank, 1);
        let h = cohomology(&piece(&[2]), Coeff::Zzeta(3)).unwrap();
        assert!(h[1].is_zero() && h[0].is_zero());
    }

    #[test]
    fn two_variables_koszul() {
        let h = cohomology(&piece(&[2, 2]), Coeff::Qq).unwrap();
        assert!(h[0].is_zero());
        assert_eq!(h[1].torsion.len(), 1);
        assert_eq!(h[2].torsion.len(), 1);
        assert!(cohomology(&piece(&[2, 3]), Coeff::Zq).is_err());
        let h = cohomology(&piece(&[2, 3]), Coeff::Qq).unwrap();
        assert!(h.iter().all(DegreeCohomology::is_zero));
    }

    #[test]
    fn report_is_ordered() {
        let r = graded_cohomology(ComplexKind::QOmega, 1, 3, Coeff::ZQ1).unwrap();
        let h1: Vec<Vec<String>> = r.rows.iter().filter(|r| r.degree == 1).map(|r| r.divisors.clone()).collect();
        assert_eq!(h1, vec![vec![], vec![], vec!["2".to_string()], vec!["3".to_string()]]);
    }
}
