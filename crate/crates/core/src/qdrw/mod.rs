//! Fractional powers `x^{m/p^n}` in one variable: the Jackson differential,
//! the lattice of elements with integral q-derivative, its `q = 1`
//! specialization, the q-Verschiebung and the q-integration homotopy.

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lambda_ring::{adams, cyclotomic};
use crate::ring_core::{q_int, Exp, FracQInt, QuotientSpec, SparsePoly, Q};

/// `c · x^α dlog x` with `c = numerator / denominator` in `ℤ[q^{1/p^N}]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DlogTerm {
    pub weight: Exp,
    pub numerator: SparsePoly,
    pub denominator: SparsePoly,
}

impl DlogTerm {
    /// The coefficient, when the quotient is a polynomial.
    pub fn integral(&self) -> Option<SparsePoly> {
        self.numerator.div_exact(&self.denominator).ok()
    }
}

/// `∇_q(c x^{m/n}) = c [m/n]_q x^{m/n} dlog x`, in pair form
/// `c [m]_{q^{1/n}} / [n]_{q^{1/n}}` with `m/n` in lowest terms.
pub fn frac_nabla(f: &SparsePoly) -> Result<Vec<DlogTerm>> {
    if f.width() > 2 {
        return Err(Error::Invalid(format!("{f} involves more than one x variable")));
    }
    let mut out = Vec::new();
    for (xm, c) in f.split_x_parts() {
        let alpha = xm.exp(1);
        if alpha == Exp::from_integer(0) {
            continue;
        }
        let frac = FracQInt::new(*alpha.numer(), *alpha.denom())?;
        out.push(DlogTerm {
            weight: alpha,
            numerator: &c * &frac.numerator,
            denominator: frac.denominator,
        });
    }
    Ok(out)
}

fn x_pow(alpha: Exp) -> SparsePoly {
    SparsePoly::var_pow(1, alpha)
}

/// `α = m/p^n` in lowest terms, with `n` checked against the depth.
fn split_weight(p: u64, depth: u32, alpha: Exp) -> Result<(i64, u32)> {
    let den = *alpha.denom();
    let mut n = 0;
    let mut rest = den;
    while rest % p as i64 == 0 {
        rest /= p as i64;
        n += 1;
    }
    if rest != 1 || n > depth {
        return Err(Error::DepthOverflow { prime: p, depth, denominator: den });
    }
    Ok((*alpha.numer(), n))
}

/// One weight of the two-term lattice complex `L^0 → L^1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticePiece {
    pub weight: String,
    /// Generator of the level-0 part.
    pub level0: String,
    /// Generator of the level-1 part (`x^α dlog x`), absent at weight 0.
    pub level1: Option<String>,
    /// `∇_q(level0) = differential · level1`.
    pub differential: String,
    pub maximal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeComplex {
    pub p: u64,
    pub depth: u32,
    pub max_weight: u32,
    /// `(α, scalar c_α, entry e_α)`: level 0 is spanned by `c_α x^α`, and
    /// `∇_q(c_α x^α) = e_α x^α dlog x`.
    pub weights: Vec<(Exp, SparsePoly, SparsePoly)>,
    pub pieces: Vec<LatticePiece>,
}

/// Proper divisors of `[p^n]_u` obtained by dropping some of its factors
/// `Φ_{p^k}(u)`, `1 ≤ k ≤ n`.
fn proper_sub_products(p: u64, n: u32, root: i64) -> Vec<SparsePoly> {
    let factors: Vec<SparsePoly> = (1..=n)
        .map(|k| cyclotomic(p.pow(k)).scale_exponents(Exp::new(1, root)))
        .collect();
    (0..(1u32 << n) - 1)
        .map(|mask| {
            factors
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(SparsePoly::one(), |acc, (_, f)| &acc * f)
        })
        .collect()
}

/// The level-0 lattice in weight `α`: `x^α` for integral `α`, and
/// `[p^n]_{q^{1/p^n}} x^{m/p^n}` for `α = m/p^n`, `p ∤ m`, `n ≥ 1`.
pub fn lattice_generator(p: u64, depth: u32, alpha: Exp) -> Result<SparsePoly> {
    let (_, n) = split_weight(p, depth, alpha)?;
    if n == 0 {
        return Ok(SparsePoly::one());
    }
    let pn = (p as i64).pow(n);
    q_int(pn, pn)
}

/// Builds the lattice up to weight `max_weight` with denominators `≤ p^depth`,
/// certifying integrality of every derivative and per-weight maximality: no
/// proper divisor of the scalar, as a product of cyclotomic factors, still
/// gives an integral derivative.
pub fn build_lattice(p: u64, depth: u32, max_weight: u32) -> Result<LatticeComplex> {
    let root = (p as i64).pow(depth);
    let alphas: Vec<Exp> = (0..=max_weight as i64 * root).map(|k| Exp::new(k, root)).collect();
    let built: Vec<(Exp, SparsePoly, SparsePoly, LatticePiece)> = alphas
        .par_iter()
        .map(|&alpha| {
            let c = lattice_generator(p, depth, alpha)?;
            let gen = &c * &x_pow(alpha);
            let terms = frac_nabla(&gen)?;
            let entry = match terms.as_slice() {
                [] => SparsePoly::zero(),
                [t] => t.integral().ok_or_else(|| {
                    Error::NotIntegral(format!("∇_q({gen}) = ({})/({}) x^{alpha} dlog x", t.numerator, t.denominator))
                })?,
                _ => unreachable!("single monomial"),
            };
            let (m, n) = split_weight(p, depth, alpha)?;
            let maximal = n == 0 || {
                let frac = FracQInt::new(m, (p as i64).pow(n))?;
                proper_sub_products(p, n, (p as i64).pow(n)).iter().all(|s| frac.times(s).is_err())
            };
            let piece = LatticePiece {
                weight: alpha.to_string(),
                level0: gen.to_string(),
                level1: (alpha != Exp::from_integer(0)).then(|| format!("{} dlog x", x_pow(alpha))),
                differential: entry.to_string(),
                maximal,
            };
            Ok((alpha, c, entry, piece))
        })
        .collect::<Result<_>>()?;
    let mut weights = Vec::new();
    let mut pieces = Vec::new();
    for (a, c, e, piece) in built {
        weights.push((a, c, e));
        pieces.push(piece);
    }
    Ok(LatticeComplex { p, depth, max_weight, weights, pieces })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeDumpRow {
    pub p: u64,
    #[serde(rename = "N")]
    pub depth: u32,
    pub weight: String,
    pub level: u32,
    pub basis: Vec<String>,
}

impl LatticeComplex {
    pub fn dump(&self) -> Vec<LatticeDumpRow> {
        let mut out = Vec::new();
        for piece in &self.pieces {
            out.push(LatticeDumpRow {
                p: self.p,
                depth: self.depth,
                weight: piece.weight.clone(),
                level: 0,
                basis: vec![piece.level0.clone()],
            });
            if let Some(l1) = &piece.level1 {
                out.push(LatticeDumpRow {
                    p: self.p,
                    depth: self.depth,
                    weight: piece.weight.clone(),
                    level: 1,
                    basis: vec![l1.clone()],
                });
            }
        }
        out
    }

    pub fn all_maximal(&self) -> bool {
        self.pieces.iter().all(|p| p.maximal)
    }
}

/// Per-weight cohomology of the lattice at `q^{1/p^N} = 1`, where each weight
/// becomes `ℤ --e--> ℤ` (or `ℤ → 0` at weight 0).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecializedWeight {
    pub weight: String,
    pub level0: String,
    pub h0_rank: usize,
    /// Order of `H^1`, `None` when infinite.
    pub h1_order: Option<String>,
}

pub fn specialize_q1(l: &LatticeComplex) -> Result<Vec<SpecializedWeight>> {
    l.weights
        .iter()
        .map(|(alpha, c, e)| {
            let c1 = c.eval_var(Q, 1)?.constant_term();
            let e1 = e.eval_var(Q, 1)?.constant_term();
            let is_zero_weight = *alpha == Exp::from_integer(0);
            Ok(SpecializedWeight {
                weight: alpha.to_string(),
                level0: (&SparsePoly::from_int(c1) * &x_pow(*alpha)).to_string(),
                h0_rank: usize::from(e1.is_zero()),
                h1_order: if is_zero_weight {
                    Some("1".to_string())
                } else {
                    (!e1.is_zero()).then(|| e1.magnitude().to_string())
                },
            })
        })
        .collect()
}

/// `V_n(a) = [n]_{q^{1/n}} Ψ^{1/n}(a)` for `n` a power of `p`, with all
/// resulting denominators bounded by `p^depth`.
pub fn verschiebung_q(p: u64, depth: u32, n: u64, a: &SparsePoly) -> Result<SparsePoly> {
    let mut rest = n;
    while rest > 1 && rest.is_multiple_of(p) {
        rest /= p;
    }
    if n == 0 || rest != 1 {
        return Err(Error::Invalid(format!("{n} is not a power of {p}")));
    }
    let shrunk = a.scale_exponents(Exp::new(1, n as i64));
    let bound = (p as i64).pow(depth);
    let worst = (0..shrunk.width()).map(|v| shrunk.var_denominator(v)).max().unwrap_or(1);
    if bound % worst != 0 {
        return Err(Error::DepthOverflow { prime: p, depth, denominator: worst });
    }
    Ok(&q_int(n as i64, n as i64)? * &shrunk)
}

/// `Ψ^p(V_p(a))`, which equals `[p]_q a`.
pub fn adams_after_verschiebung(p: u64, depth: u32, a: &SparsePoly) -> Result<SparsePoly> {
    adams(p as i64, &verschiebung_q(p, depth, p, a)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyReport {
    pub p: u64,
    pub weight: String,
    /// `m/p^n` in lowest terms.
    pub reindexed: String,
    /// `h(x^α dlog x) = coefficient · (level-0 generator)`.
    pub coefficient: String,
    pub level0_identity: bool,
    pub level1_identity: bool,
    pub spec: String,
    pub holds: bool,
}

/// The q-integration homotopy on the weight-`α` lattice piece:
/// `h(x^α dlog x) = [α]_q^{-1} x^α = [m]_{u}^{-1} ([p^n]_u x^α)`, `u = q^{1/p^n}`,
/// with the inverse taken in the truncation `spec`. Verifies `hd = id` on
/// level 0 and `dh = id` on level 1 modulo `spec`.
pub fn q_integration_homotopy(p: u64, depth: u32, alpha: Exp, spec: &QuotientSpec) -> Result<HomotopyReport> {
    if alpha == Exp::from_integer(0) {
        return Err(Error::Invalid("weight 0 has no contracting homotopy".into()));
    }
    let (m, n) = split_weight(p, depth, alpha)?;
    let pn = (p as i64).pow(n);
    let inv = spec.truncated_inverse(&q_int(m, pn)?)?;
    let gen = &lattice_generator(p, depth, alpha)? * &x_pow(alpha);
    let one = SparsePoly::one();
    let derivative = |f: &SparsePoly| -> Result<SparsePoly> {
        let t = frac_nabla(f)?;
        t[0].integral().ok_or_else(|| Error::NotIntegral(format!("∇_q({f})")))
    };
    // level 0: h(∇_q g) = h(e x^α dlog x) = inv · e · g
    let level0_identity = spec.eq_mod(&(&inv * &derivative(&gen)?), &one);
    // level 1: ∇_q(h(x^α dlog x)) = ∇_q(inv · g)
    let level1_identity = spec.eq_mod(&derivative(&(&inv * &gen))?, &one);
    Ok(HomotopyReport {
        p,
        weight: alpha.to_string(),
        reindexed: format!("{m}/{pn}"),
        coefficient: inv.to_string(),
        level0_identity,
        level1_identity,
        spec: spec.to_string(),
        holds: level0_identity && level1_identity,
    })
}

/// `[p^n]_{q^{1/p^n}} = ∏_{k=1}^n [p]_{q^{1/p^k}}`.
pub fn telescoping_holds(p: u64, n: u32) -> Result<bool> {
    let pn = (p as i64).pow(n);
    let prod = (1..=n).try_fold(SparsePoly::one(), |acc, k| -> Result<SparsePoly> {
        Ok(&acc * &q_int(p as i64, (p as i64).pow(k))?)
    })?;
    Ok(prod == q_int(pn, pn)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::parse_poly;

    fn p(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn fractional_derivatives() {
        let t = frac_nabla(&p("(1 + q^(1/2))*x1^(1/2)")).unwrap();
        assert_eq!(t[0].integral().unwrap(), p("1"));
        let t = frac_nabla(&p("x1^(3/4)")).unwrap();
        assert!(t[0].integral().is_none());
        assert!(frac_nabla(&p("1")).unwrap().is_empty());
        assert_eq!(frac_nabla(&p("x1")).unwrap()[0].integral().unwrap(), p("1"));
    }

    #[test]
    fn lattice_small() {
        let l = build_lattice(2, 1, 1).unwrap();
        assert_eq!(l.pieces[1].level0, "1 + q^(1/2)".parse::<SparsePoly>().map(|c| (&c * &p("x1^(1/2)")).to_string()).unwrap());
        assert_eq!(l.pieces[1].differential, "1");
        assert_eq!(l.pieces[2].level0, "x1");
        assert!(l.all_maximal());
        let s = specialize_q1(&build_lattice(2, 2, 1).unwrap()).unwrap();
        let w34 = s.iter().find(|w| w.weight == "3/4").unwrap();
        assert_eq!(w34.h1_order.as_deref(), Some("3"));
        assert_eq!(w34.level0, "4*x1^(3/4)");
    }

    #[test]
    fn verschiebung() {
        let v = verschiebung_q(2, 2, 2, &p("x1")).unwrap();
        assert_eq!(v, p("(1 + q^(1/2))*x1^(1/2)"));
        assert_eq!(adams_after_verschiebung(2, 2, &p("x1")).unwrap(), p("(1 + q)*x1"));
        let vv = verschiebung_q(2, 2, 2, &v).unwrap();
        assert_eq!(vv, verschiebung_q(2, 2, 4, &p("x1")).unwrap());
        assert_eq!(verschiebung_q(2, 2, 1, &p("x1")).unwrap(), p("x1"));
        assert!(matches!(verschiebung_q(2, 1, 4, &p("x1")), Err(Error::DepthOverflow { .. })));
    }

    #[test]
    fn homotopy() {
        let spec = QuotientSpec::parse("2^4, (q^(1/2) - 1)^16").unwrap();
        assert!(q_integration_homotopy(2, 1, Exp::new(3, 2), &spec).unwrap().holds);
        assert!(q_integration_homotopy(2, 1, Exp::from_integer(1), &spec).unwrap().holds);
        assert!(matches!(q_integration_homotopy(2, 1, Exp::from_integer(2), &spec), Err(Error::NotAUnit(_))));
        assert!(telescoping_holds(3, 3).unwrap());
    }
}
