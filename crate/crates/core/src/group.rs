use std::fmt;

use crate::error::{Error, Result};

/// The group `Z_m × Z_n × Z_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group3 {
    pub m: u64,
    pub n: u64,
    pub r: u64,
}

impl Group3 {
    pub fn new(m: u64, n: u64, r: u64) -> Result<Self> {
        if m == 0 || n == 0 || r == 0 {
            return Err(Error::InvalidArgument(format!(
                "cyclic factor orders must be positive, got ({m},{n},{r})"
            )));
        }
        Ok(Group3 { m, n, r })
    }

    /// `Z_m × Z_n`, embedded with a trivial third factor.
    pub fn rank2(m: u64, n: u64) -> Result<Self> {
        Self::new(m, n, 1)
    }

    pub fn order(&self) -> u128 {
        u128::from(self.m) * u128::from(self.n) * u128::from(self.r)
    }

    pub fn moduli(&self) -> [u64; 3] {
        [self.m, self.n, self.r]
    }

    /// All groups with `m * n * r <= max_order`, in lexicographic order.
    pub fn all_up_to(max_order: u64) -> Vec<Group3> {
        let mut out = Vec::new();
        for m in 1..=max_order {
            for n in 1..=max_order / m {
                for r in 1..=max_order / (m * n) {
                    out.push(Group3 { m, n, r });
                }
            }
        }
        out
    }
}

impl fmt::Display for Group3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.m, self.n, self.r)
    }
}
