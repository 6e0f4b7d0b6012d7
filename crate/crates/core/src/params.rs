use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{arith, ExtField};

/// The parameter √q of a square field size q = (√q)², with √q = p^e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct SqrtQ {
    value: u64,
    p: u64,
    e: u32,
}

impl SqrtQ {
    pub fn new(value: u64) -> Result<Self> {
        let (p, e) = arith::prime_power(value).ok_or_else(|| {
            Error::InvalidArgument(format!("√q = {value} is not a prime power"))
        })?;
        Ok(SqrtQ { value, p, e })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn p(self) -> u64 {
        self.p
    }

    /// log_p √q.
    pub fn e(self) -> u32 {
        self.e
    }

    pub fn q(self) -> u64 {
        self.value * self.value
    }

    /// q − √q + 1, the order of the cyclic automorphism.
    pub fn cyclic_order(self) -> u64 {
        self.q() - self.value + 1
    }

    /// Genus √q(√q − 1)/2 of the Hermitian curve.
    pub fn hermitian_genus(self) -> u64 {
        self.value * (self.value - 1) / 2
    }

    /// F_{q^k} = F_{p^{2ek}}.
    pub fn field_q_power(self, k: usize) -> Result<ExtField> {
        ExtField::new(self.p, 2 * self.e as usize * k)
    }

    /// F_{√q^k}.
    pub fn field_sqrt_power(self, k: usize) -> Result<ExtField> {
        ExtField::new(self.p, self.e as usize * k)
    }

    pub fn field_q(self) -> Result<ExtField> {
        self.field_q_power(1)
    }

    /// Degree of F_q over F_p.
    pub fn q_degree(self) -> usize {
        2 * self.e as usize
    }
}

impl TryFrom<u64> for SqrtQ {
    type Error = Error;
    fn try_from(v: u64) -> Result<Self> {
        SqrtQ::new(v)
    }
}

impl From<SqrtQ> for u64 {
    fn from(s: SqrtQ) -> u64 {
        s.value
    }
}

impl std::fmt::Display for SqrtQ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}
