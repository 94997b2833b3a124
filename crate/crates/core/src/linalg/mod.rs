//! Smith normal form over Euclidean coefficient rings.

mod rings;

pub use rings::{small_prime_factors, Eisenstein, FpPoly, IntAt, RatPoly};

use std::fmt::Debug;

use num_bigint::BigUint;

use crate::error::Result;
use crate::ring_core::SparsePoly;

/// A Euclidean domain whose elements are plain values and whose operations
/// live on a context object (for example the prime of `𝔽_p[q]`).
pub trait Euclidean: Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Euclidean size; zero only for zero.
    fn norm(&self, a: &Self::Elem) -> BigUint;
    /// `(quot, rem)` with `norm(rem) < norm(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn is_unit(&self, a: &Self::Elem) -> bool;
    /// Canonical associate.
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;
    /// Image of a polynomial in `q` (no `x` variables).
    fn from_poly(&self, f: &SparsePoly) -> Result<Self::Elem>;
    /// Literal form, using `q` for the image of `q` where that makes sense.
    fn show(&self, a: &Self::Elem) -> String;
    /// Primes `p` for which reducing `a` mod `p` might change its divisibility.
    /// Only meaningful for characteristic-zero rings; others return nothing.
    fn content_primes(&self, _a: &Self::Elem) -> Vec<u64> {
        Vec::new()
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !self.is_zero(&b) {
            let (_, r) = self.div_rem(&a, &b);
            a = b;
            b = r;
        }
        self.normalize(&a)
    }
}

pub type Matrix<E> = Vec<Vec<E>>;

/// Maps a matrix of `q`-polynomials into `ring`.
pub fn map_matrix<R: Euclidean>(ring: &R, m: &[Vec<SparsePoly>]) -> Result<Matrix<R::Elem>> {
    m.iter()
        .map(|row| row.iter().map(|e| ring.from_poly(e)).collect())
        .collect()
}

/// Nonzero invariant factors of `m`, normalized, each dividing the next.
pub fn invariant_factors<R: Euclidean>(ring: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    fix_divisibility(ring, diagonal_pivots(ring, m))
}

/// The raw diagonal produced by elimination, before the divisibility pass.
pub fn diagonal_pivots<R: Euclidean>(ring: &R, m: &Matrix<R::Elem>) -> Vec<R::Elem> {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize, BigUint)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, e) in row.iter().enumerate().skip(t) {
                if ring.is_zero(e) {
                    continue;
                }
                let n = ring.norm(e);
                if best.as_ref().is_none_or(|b| n < b.2) {
                    best = Some((i, j, n));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        let pivot = a[t][t].clone();
        for i in t + 1..rows {
            if ring.is_zero(&a[i][t]) {
                continue;
            }
            let (q, r) = ring.div_rem(&a[i][t], &pivot);
            if !ring.is_zero(&r) {
                clean = false;
            }
            let (head, tail) = a.split_at_mut(i);
            let src = &head[t];
            for (dst, s) in tail[0].iter_mut().zip(src.iter()).skip(t) {
                if !ring.is_zero(s) {
                    *dst = ring.sub(dst, &ring.mul(&q, s));
                }
            }
        }
        for j in t + 1..cols {
            if ring.is_zero(&a[t][j]) {
                continue;
            }
            let (q, r) = ring.div_rem(&a[t][j], &pivot);
            if !ring.is_zero(&r) {
                clean = false;
            }
            for row in a.iter_mut().skip(t) {
                if !ring.is_zero(&row[t]) {
                    let v = ring.sub(&row[j], &ring.mul(&q, &row[t]));
                    row[j] = v;
                }
            }
        }
        if clean {
            diag.push(pivot);
            t += 1;
        }
    }
    diag
}

/// Turns a diagonal into a divisibility chain with the same cokernel.
fn fix_divisibility<R: Euclidean>(ring: &R, mut d: Vec<R::Elem>) -> Vec<R::Elem> {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = ring.gcd(&d[i], &d[j]);
            let prod = ring.mul(&d[i], &d[j]);
            let (l, _) = ring.div_rem(&prod, &g);
            d[i] = g;
            d[j] = l;
        }
    }
    d.iter().map(|x| ring.normalize(x)).collect()
}

pub fn rank<R: Euclidean>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    invariant_factors(ring, m).len()
}

/// Matrix product over `ring`.
pub fn mat_mul<R: Euclidean>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(ring.zero(), |acc, k| {
                        if ring.is_zero(&row[k]) || ring.is_zero(&b[k][j]) {
                            acc
                        } else {
                            ring.add(&acc, &ring.mul(&row[k], &b[k][j]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn zmat(rows: &[&[i64]]) -> Matrix<BigInt> {
        rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
    }

    #[test]
    fn integer_snf() {
        let z = IntAt::new(1);
        let m = zmat(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let d = invariant_factors(&z, &m);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
        let m = zmat(&[&[2, 0], &[0, 3]]);
        assert_eq!(invariant_factors(&z, &m), vec![BigInt::from(1), BigInt::from(6)]);
        let m = zmat(&[&[0, 0], &[0, 0]]);
        assert!(invariant_factors(&z, &m).is_empty());
    }

    #[test]
    fn rational_poly_snf() {
        let r = RatPoly;
        let p = |s: &str| r.from_poly(&s.parse().unwrap()).unwrap();
        let m = vec![vec![p("q - 1"), r.zero()], vec![r.zero(), p("q^2 - 1")]];
        let d = invariant_factors(&r, &m);
        assert_eq!(d.len(), 2);
        assert_eq!(r.show(&d[0]), "-1 + q");
        assert_eq!(r.show(&d[1]), "-1 + q^2");
        let m = vec![vec![p("q - 1"), r.zero()], vec![r.zero(), p("q + 1")]];
        let d = invariant_factors(&r, &m);
        assert!(r.is_unit(&d[0]));
        assert_eq!(r.show(&d[1]), "-1 + q^2");
    }
}
