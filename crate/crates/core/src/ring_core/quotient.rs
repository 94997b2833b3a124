//! Truncated and quotient coefficient rings.
//!
//! A [`QuotientSpec`] holds at most one integer modulus `p^a` and at most one
//! monic modulus in `q^{1/r}`. Reduction divides by the monic modulus inside
//! each `x`-monomial group and then reduces coefficients into `[0, p^a)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::literal::{parse_poly, split_top_level};
use super::monomial::{Exp, Monomial, Q};
use super::poly::SparsePoly;
use super::qanalog::q_int;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QModulus {
    /// `(q^{1/root} - 1)^power`.
    Augmentation { root: i64, power: u32 },
    /// `[n]_{q^{1/root}}`.
    QInteger { n: i64, root: i64 },
    /// Any other polynomial in `q` that is monic in `q^{1/root}`.
    Monic { poly: SparsePoly, root: i64 },
}

impl QModulus {
    pub fn root(&self) -> i64 {
        match self {
            QModulus::Augmentation { root, .. }
            | QModulus::QInteger { root, .. }
            | QModulus::Monic { root, .. } => *root,
        }
    }

    pub fn poly(&self) -> SparsePoly {
        match self {
            QModulus::Augmentation { root, power } => {
                (&SparsePoly::q_pow(Exp::new(1, *root)) - &SparsePoly::one()).pow(*power)
            }
            QModulus::QInteger { n, root } => q_int(*n, *root).expect("validated at construction"),
            QModulus::Monic { poly, .. } => poly.clone(),
        }
    }

    /// Classifies a `q`-polynomial, normalizing sign so it is monic.
    pub fn from_poly(poly: &SparsePoly) -> Result<Self> {
        if !poly.is_q_only() || poly.is_zero() {
            return Err(Error::InvalidQuotient(format!("{poly} is not a nonzero polynomial in q")));
        }
        let root = poly.var_denominator(Q);
        let mut dense = poly.to_dense_in_root(root)?;
        let lead = dense.last().unwrap().clone();
        if lead == -BigInt::one() {
            dense.iter_mut().for_each(|c| *c = -&*c);
        } else if !lead.is_one() {
            return Err(Error::InvalidQuotient(format!("{poly} is not monic")));
        }
        let deg = dense.len() - 1;
        if deg == 0 {
            return Err(Error::InvalidQuotient("unit modulus".into()));
        }
        let monic = SparsePoly::from_dense_in_root(&dense, root, &Monomial::one());
        let aug = (&SparsePoly::q_pow(Exp::new(1, root)) - &SparsePoly::one()).pow(deg as u32);
        if monic == aug {
            return Ok(QModulus::Augmentation { root, power: deg as u32 });
        }
        if dense.iter().all(|c| c.is_one()) {
            return Ok(QModulus::QInteger { n: deg as i64 + 1, root });
        }
        Ok(QModulus::Monic { poly: monic, root })
    }
}

impl fmt::Display for QModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let qr = |root: i64| {
            if root == 1 {
                "q".to_string()
            } else {
                format!("q^(1/{root})")
            }
        };
        match self {
            QModulus::Augmentation { root, power } => write!(f, "({} - 1)^{power}", qr(*root)),
            QModulus::QInteger { n, root } if *root == 1 => write!(f, "[{n}]_q"),
            QModulus::QInteger { n, root } => write!(f, "[{n}]_q^(1/{root})"),
            QModulus::Monic { poly, .. } => write!(f, "({poly})"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuotientSpec {
    /// `(p, a)` for the coefficient modulus `p^a`.
    int_modulus: Option<(u64, u32)>,
    q_modulus: Option<QModulus>,
}

fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..).find(|d| n.is_multiple_of(*d) || d * d > n).map(|d| if n.is_multiple_of(d) { d } else { n }).unwrap();
    let (mut m, mut a) = (n, 0);
    while m % p == 0 {
        m /= p;
        a += 1;
    }
    (m == 1).then_some((p, a))
}

impl QuotientSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prime_power(mut self, p: u64, a: u32) -> Result<Self> {
        if self.int_modulus.is_some() {
            return Err(Error::InvalidQuotient("more than one integer modulus".into()));
        }
        if a == 0 || prime_power(p) != Some((p, 1)) {
            return Err(Error::InvalidQuotient(format!("{p}^{a} is not a prime power modulus")));
        }
        self.int_modulus = Some((p, a));
        Ok(self)
    }

    pub fn with_q_modulus(mut self, m: QModulus) -> Result<Self> {
        if self.q_modulus.is_some() {
            return Err(Error::InvalidQuotient("more than one q-modulus".into()));
        }
        if let QModulus::QInteger { n, root } = &m {
            if *n < 2 || *root < 1 {
                return Err(Error::InvalidQuotient(format!("[{n}] with root {root}")));
            }
        }
        if m.root() < 1 {
            return Err(Error::InvalidQuotient("non-positive root".into()));
        }
        self.q_modulus = Some(m);
        Ok(self)
    }

    pub fn with_augmentation(self, root: i64, power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::InvalidQuotient("zero augmentation power".into()));
        }
        self.with_q_modulus(QModulus::Augmentation { root, power })
    }

    pub fn with_q_integer(self, n: i64, root: i64) -> Result<Self> {
        self.with_q_modulus(QModulus::QInteger { n, root })
    }

    pub fn int_modulus(&self) -> Option<(u64, u32)> {
        self.int_modulus
    }

    pub fn modulus_value(&self) -> Option<BigInt> {
        self.int_modulus.map(|(p, a)| num_traits::pow(BigInt::from(p), a as usize))
    }

    pub fn q_modulus(&self) -> Option<&QModulus> {
        self.q_modulus.as_ref()
    }

    /// Parses a comma-separated list such as `2^4, (q^(1/2)-1)^16, [3]_q`.
    pub fn parse(src: &str) -> Result<Self> {
        let mut spec = Self::new();
        for item in split_top_level(src) {
            spec = spec.add_item(item)?;
        }
        Ok(spec)
    }

    fn add_item(self, item: &str) -> Result<Self> {
        let bad = |m: &str| Error::InvalidQuotient(format!("{item}: {m}"));
        if let Some(rest) = item.strip_prefix('[') {
            let (n, tail) = rest.split_once(']').ok_or_else(|| bad("missing ']'"))?;
            let n: i64 = n.trim().parse().map_err(|_| bad("bad q-integer index"))?;
            let tail: String = tail.chars().filter(|c| !c.is_whitespace()).collect();
            let root = match tail.as_str() {
                "_q" => 1,
                t => {
                    let inner = t
                        .strip_prefix("_q^(1/")
                        .or_else(|| t.strip_prefix("_{q^(1/"))
                        .ok_or_else(|| bad("expected _q or _q^(1/r)"))?;
                    let inner = inner.trim_end_matches('}').trim_end_matches(')');
                    inner.parse().map_err(|_| bad("bad root"))?
                }
            };
            return self.with_q_integer(n, root);
        }
        let compact: String = item.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.chars().all(|c| c.is_ascii_digit() || c == '^') {
            let (base, exp) = match compact.split_once('^') {
                Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                None => (compact.as_str(), 1),
            };
            let base: u64 = base.parse().map_err(|_| bad("bad integer"))?;
            let (p, a) = prime_power(base).ok_or_else(|| bad("not a prime power"))?;
            return self.with_prime_power(p, a * exp);
        }
        let poly = parse_poly(item)?;
        self.with_q_modulus(QModulus::from_poly(&poly)?)
    }

    /// Canonical representative of `f` modulo this spec.
    pub fn reduce(&self, f: &SparsePoly) -> SparsePoly {
        let n = self.modulus_value();
        let Some(qm) = &self.q_modulus else {
            return match n {
                Some(n) => f.map_coefficients(|c| c.mod_floor(&n)),
                None => f.clone(),
            };
        };
        let root = qm.root();
        let den = root.lcm(&f.var_denominator(Q));
        let stretch = (den / root) as usize;
        let base = qm.poly().to_dense_in_root(root).expect("modulus is a q-polynomial");
        let mut modulus = vec![BigInt::zero(); (base.len() - 1) * stretch + 1];
        for (i, c) in base.into_iter().enumerate() {
            modulus[i * stretch] = c;
        }
        let mut out = SparsePoly::zero();
        for (x_part, piece) in f.split_x_parts() {
            let mut dense = piece.to_dense_in_root(den).expect("q-only piece");
            rem_monic(&mut dense, &modulus);
            if let Some(n) = &n {
                dense.iter_mut().for_each(|c| *c = c.mod_floor(n));
            }
            out += &SparsePoly::from_dense_in_root(&dense, den, &x_part);
        }
        out
    }

    pub fn is_zero_mod(&self, f: &SparsePoly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn eq_mod(&self, f: &SparsePoly, g: &SparsePoly) -> bool {
        self.is_zero_mod(&(f - g))
    }

    /// Inverse of `f` modulo `(p^a, (q^{1/r} - 1)^b)` by Newton iteration.
    ///
    /// `f` must reduce to an invertible integer at `q = 1`. Without an integer
    /// modulus that integer must be `±1`.
    pub fn truncated_inverse(&self, f: &SparsePoly) -> Result<SparsePoly> {
        match &self.q_modulus {
            Some(QModulus::Augmentation { .. }) => {}
            _ => {
                return Err(Error::InvalidQuotient(
                    "truncated inverse needs a (q^(1/r) - 1)^b modulus".into(),
                ))
            }
        }
        if !f.is_q_only() {
            return Err(Error::Invalid(format!("{f} involves x variables")));
        }
        let c = f.eval_var(Q, 1)?.constant_term();
        let c_inv = match self.modulus_value() {
            Some(n) => {
                let eg = c.extended_gcd(&n);
                if !eg.gcd.is_one() {
                    return Err(Error::NotAUnit(format!("{f} ≡ {c} at q = 1, not a unit mod {n}")));
                }
                eg.x.mod_floor(&n)
            }
            None => {
                if c.abs().is_one() {
                    c.clone()
                } else {
                    return Err(Error::NotAUnit(format!("{f} ≡ {c} at q = 1, not ±1")));
                }
            }
        };
        let two = SparsePoly::constant(2);
        let mut g = SparsePoly::from_int(c_inv);
        for _ in 0..64 {
            let e = self.reduce(&(f * &g));
            if e.is_one() {
                return Ok(self.reduce(&g));
            }
            g = self.reduce(&(&g * &(&two - &e)));
        }
        Err(Error::NotAUnit(format!("Newton iteration for {f} did not converge")))
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some((p, a)) = self.int_modulus {
            parts.push(format!("{p}^{a}"));
        }
        if let Some(m) = &self.q_modulus {
            parts.push(m.to_string());
        }
        write!(f, "{}", parts.join(", "))
    }
}

/// In-place remainder of a dense integer polynomial by a monic one.
pub(crate) fn rem_monic(f: &mut Vec<BigInt>, m: &[BigInt]) {
    let dm = m.len() - 1;
    while f.len() > dm {
        let lead = f.pop().unwrap();
        if !lead.is_zero() {
            let shift = f.len() - dm;
            for (i, c) in m[..dm].iter().enumerate() {
                f[shift + i] -= &lead * c;
            }
        }
    }
    while f.last().is_some_and(|c| c.is_zero()) {
        f.pop();
    }
}

/// `p`-adic valuation of a nonzero integer (`None` for zero).
pub fn p_valuation(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring_core::qanalog::q_int;

    fn poly(s: &str) -> SparsePoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = QuotientSpec::parse("q-1").unwrap();
        assert_eq!(s.reduce(&poly("q+1")), SparsePoly::constant(2));
        let s = QuotientSpec::parse("[2]_q").unwrap();
        assert!(s.reduce(&q_int(4, 1).unwrap()).is_zero());
        assert_eq!(s.reduce(&q_int(3, 1).unwrap()), SparsePoly::one());
    }

    #[test]
    fn parse_and_classify() {
        let s = QuotientSpec::parse("2^4, (q^(1/2)-1)^16").unwrap();
        assert_eq!(s.int_modulus(), Some((2, 4)));
        assert_eq!(s.q_modulus(), Some(&QModulus::Augmentation { root: 2, power: 16 }));
        let s = QuotientSpec::parse("16,[3]_q^(1/4)").unwrap();
        assert_eq!(s.int_modulus(), Some((2, 4)));
        assert_eq!(s.q_modulus(), Some(&QModulus::QInteger { n: 3, root: 4 }));
        assert_eq!(
            QuotientSpec::parse("1+q+q^2").unwrap().q_modulus(),
            Some(&QModulus::QInteger { n: 3, root: 1 })
        );
        assert!(QuotientSpec::parse("6").is_err());
        assert!(QuotientSpec::parse("2, 3").is_err());
        assert!(QuotientSpec::parse("2*q - 1").is_err());
        assert!(QuotientSpec::parse("q-1, q+1").is_err());
    }

    #[test]
    fn zeta_normal_form() {
        let s = QuotientSpec::parse("[3]_q").unwrap();
        let r = s.reduce(&poly("q^5 + x1*q^3"));
        assert_eq!(r, poly("-1 - q + x1"));
    }

    #[test]
    fn fractional_exponents_reduce() {
        let s = QuotientSpec::parse("q-1").unwrap();
        assert_eq!(s.reduce(&poly("q^(1/2)")), poly("q^(1/2)"));
        assert_eq!(s.reduce(&poly("q^(3/2)")), poly("q^(1/2)"));
        let s = QuotientSpec::parse("(q^(1/2)-1)^1").unwrap();
        assert_eq!(s.reduce(&poly("q^(3/4) + q^2")), poly("q^(1/4) + 1"));
    }

    #[test]
    fn truncated_inverse_examples() {
        let s = QuotientSpec::parse("(q-1)^3").unwrap();
        let g = s.truncated_inverse(&poly("q")).unwrap();
        assert_eq!(g, s.reduce(&poly("1 - (q-1) + (q-1)^2")));

        let s = QuotientSpec::parse("2^4, (q-1)^4").unwrap();
        let f = q_int(3, 1).unwrap();
        let g = s.truncated_inverse(&f).unwrap();
        assert!(s.reduce(&(&f * &g)).is_one());

        let s = QuotientSpec::parse("2^2, (q-1)^2").unwrap();
        assert!(matches!(s.truncated_inverse(&q_int(2, 1).unwrap()), Err(Error::NotAUnit(_))));
    }
}
