//! Ambient ring descriptors: which variables exist and how deep roots go.

use num_traits::Signed;

use super::poly::SparsePoly;
use crate::error::{Error, Result};

/// `ℤ[q^{1/p^N}, x_1^{1/p^N}, .., x_d^{1/p^N}]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmbientRing {
    pub prime: u64,
    pub depth: u32,
    pub nvars: usize,
}

impl AmbientRing {
    pub fn new(prime: u64, depth: u32, nvars: usize) -> Self {
        Self { prime, depth, nvars }
    }

    pub fn max_denominator(&self) -> i64 {
        (self.prime as i64).pow(self.depth)
    }

    /// Checks that `f` uses only declared variables, non-negative exponents and
    /// denominators dividing `p^N`.
    pub fn check(&self, f: &SparsePoly) -> Result<()> {
        let cap = self.max_denominator();
        for (m, _) in f.terms() {
            if m.width() > self.nvars + 1 {
                return Err(Error::UndeclaredVariable(m.width() - 1));
            }
            for e in m.exps() {
                if e.is_negative() {
                    return Err(Error::NegativeExponent(format!("{m}")));
                }
                if cap % e.denom() != 0 {
                    return Err(Error::DepthOverflow {
                        prime: self.prime,
                        depth: self.depth,
                        denominator: *e.denom(),
                    });
                }
            }
        }
        Ok(())
    }
}
