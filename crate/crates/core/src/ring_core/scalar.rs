//! Integer and prime-power residue scalars.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// An integer, or a residue modulo `p^a` kept canonical in `[0, p^a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    value: BigInt,
    modulus: Option<BigInt>,
}

impl Scalar {
    pub fn int(value: impl Into<BigInt>) -> Self {
        Self { value: value.into(), modulus: None }
    }

    pub fn residue(value: impl Into<BigInt>, p: u64, a: u32) -> Self {
        let n = num_traits::pow(BigInt::from(p), a as usize);
        Self { value: value.into().mod_floor(&n), modulus: Some(n) }
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn modulus(&self) -> Option<&BigInt> {
        self.modulus.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_ring(&self, other: &Scalar) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::Shape("scalars from different rings".into()))
        }
    }

    fn wrap(&self, value: BigInt) -> Scalar {
        match &self.modulus {
            Some(n) => Scalar { value: value.mod_floor(n), modulus: Some(n.clone()) },
            None => Scalar { value, modulus: None },
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(self.wrap(&self.value + &other.value))
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(self.wrap(&self.value - &other.value))
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_ring(other)?;
        Ok(self.wrap(&self.value * &other.value))
    }

    pub fn neg(&self) -> Scalar {
        self.wrap(-&self.value)
    }

    pub fn inverse(&self) -> Result<Scalar> {
        match &self.modulus {
            None if (&self.value * &self.value).is_one() => Ok(self.clone()),
            None => Err(Error::NotAUnit(self.value.to_string())),
            Some(n) => {
                let eg = self.value.extended_gcd(n);
                if eg.gcd.is_one() {
                    Ok(self.wrap(eg.x))
                } else {
                    Err(Error::NotAUnit(format!("{} mod {n}", self.value)))
                }
            }
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
