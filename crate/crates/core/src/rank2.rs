//! Subgroups of `Z_m × Z_n`.
//!
//! Every subgroup is `{(i a + j s, j b)}` for a unique triple `(a, b, s)` with
//! `a | m`, `b | n`, `0 <= s < a` and `a | (n/b) s`. Writing `A = gcd(a, n/b)`
//! the admissible shifts are `s = (a/A) t` for `0 <= t < A`.

use num_integer::Integer;

use crate::arith::divisors;
use crate::error::{Error, Result};

/// Generators `(a, 0)` and `(s, b)` of a subgroup of `Z_m × Z_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupBasis2 {
    pub m: u64,
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub s: u64,
}

impl SubgroupBasis2 {
    pub fn order(&self) -> u128 {
        u128::from(self.m / self.a) * u128::from(self.n / self.b)
    }

    pub fn generators(&self) -> [(u64, u64); 2] {
        [(self.a % self.m, 0), (self.s, self.b % self.n)]
    }

    /// Sorted element list `{(i a + j s mod m, j b mod n)}`; refuses groups
    /// with more than `bound` elements.
    pub fn elements(&self, bound: u64) -> Result<Vec<(u64, u64)>> {
        let order = u128::from(self.m) * u128::from(self.n);
        if order > u128::from(bound) {
            return Err(Error::BoundExceeded { order, bound: u128::from(bound) });
        }
        let (m, n) = (self.m, self.n);
        let mut out = Vec::with_capacity(self.order() as usize);
        for i in 0..m / self.a {
            for j in 0..n / self.b {
                out.push(((i * self.a + j * self.s) % m, (j * self.b) % n));
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// Streams the subgroups of `Z_m × Z_n` in lexicographic `(a, b, t)` order.
pub fn enumerate_rank2(m: u64, n: u64) -> Result<impl Iterator<Item = SubgroupBasis2>> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("cyclic factor orders must be positive, got ({m},{n})")));
    }
    let divs_m = divisors(m)?;
    let divs_n = divisors(n)?;
    Ok(divs_m.into_iter().flat_map(move |a| {
        divs_n.clone().into_iter().flat_map(move |b| {
            let shifts = a.gcd(&(n / b));
            (0..shifts).map(move |t| SubgroupBasis2 { m, n, a, b, s: a / shifts * t })
        })
    }))
}

/// `s(m, n) = Σ_{a|m, b|n} gcd(a, b)`.
pub fn count_rank2(m: u64, n: u64) -> Result<u128> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!("cyclic factor orders must be positive, got ({m},{n})")));
    }
    let divs_n = divisors(n)?;
    let mut total = 0u128;
    for a in divisors(m)? {
        for &b in &divs_n {
            total += u128::from(a.gcd(&b));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn examples() {
        let one: Vec<_> = enumerate_rank2(1, 1).unwrap().collect();
        assert_eq!(one, vec![SubgroupBasis2 { m: 1, n: 1, a: 1, b: 1, s: 0 }]);
        assert_eq!(enumerate_rank2(2, 2).unwrap().count(), 5);
        assert_eq!(count_rank2(2, 2).unwrap(), 5);
        assert_eq!(enumerate_rank2(4, 2).unwrap().count(), 8);
        assert_eq!(count_rank2(4, 2).unwrap(), 8);
        assert_eq!(count_rank2(6, 4).unwrap(), 16);
        for n in 1..=50u64 {
            let tau = (1..=n).filter(|d| n % d == 0).count() as u128;
            assert_eq!(count_rank2(1, n).unwrap(), tau);
        }
    }

    #[test]
    fn stream_length_matches_count() {
        for m in 1..=36 {
            for n in 1..=36 {
                assert_eq!(
                    enumerate_rank2(m, n).unwrap().count() as u128,
                    count_rank2(m, n).unwrap(),
                    "({m},{n})"
                );
            }
        }
    }

    #[test]
    fn element_sets_are_distinct_subgroups() {
        for m in 1..=144u64 {
            for n in 1..=144 / m {
                let mut seen = HashSet::new();
                for basis in enumerate_rank2(m, n).unwrap() {
                    assert!(basis.s < basis.a);
                    assert_eq!(((n / basis.b) * basis.s) % basis.a, 0);
                    let elems = basis.elements(4096).unwrap();
                    assert_eq!(elems.len() as u128, basis.order());
                    let set: HashSet<_> = elems.iter().copied().collect();
                    assert_eq!(set.len(), elems.len(), "duplicate elements in {basis:?}");
                    // a finite set holding 0 and stable under adding each
                    // generator is the subgroup they generate
                    assert!(set.contains(&(0, 0)));
                    for &(x, y) in &elems {
                        for (gx, gy) in basis.generators() {
                            assert!(set.contains(&((x + gx) % m, (y + gy) % n)));
                        }
                    }
                    assert!(seen.insert(elems), "repeated subgroup {basis:?}");
                }
            }
        }
    }

    #[test]
    fn two_variable_multiplicativity() {
        for (m1, n1, m2, n2) in [(4, 8, 9, 3), (2, 6, 5, 25), (12, 4, 35, 7), (16, 1, 27, 9)] {
            assert_eq!(
                count_rank2(m1 * m2, n1 * n2).unwrap(),
                count_rank2(m1, n1).unwrap() * count_rank2(m2, n2).unwrap()
            );
        }
    }

    #[test]
    fn rejects_zero() {
        assert!(count_rank2(0, 3).is_err());
        assert!(enumerate_rank2(3, 0).is_err());
    }
}
