//! Subgroup counts of `p`-groups as exact polynomials in `p`.

use std::fmt;

use crate::error::{Error, Result};
use crate::IntPoly;

/// `P(p^k) = (k+1) p^k − k p^(k−1)` as a polynomial.
pub fn gcd_sum_poly(k: u32) -> IntPoly {
    if k == 0 {
        return IntPoly::one();
    }
    let k_ = k as usize;
    &IntPoly::monomial(i128::from(k) + 1, k_) - &IntPoly::monomial(i128::from(k), k_ - 1)
}

/// Number of subgroups of `Z_{p^ν1} × Z_{p^ν2} × Z_{p^ν3}` as a polynomial
/// in `p`, obtained by running the divisor-triple sum over exponents.
pub fn symbolic_count(nu1: u32, nu2: u32, nu3: u32) -> IntPoly {
    symbolic_count_filtered(nu1, nu2, nu3, |_| true)
}

/// Subgroups of order `p^k` in the same group.
pub fn symbolic_count_by_order(nu1: u32, nu2: u32, nu3: u32, k: u32) -> IntPoly {
    let total = nu1 + nu2 + nu3;
    if k > total {
        return IntPoly::zero();
    }
    symbolic_count_filtered(nu1, nu2, nu3, |index| index == total - k)
}

fn symbolic_count_filtered(nu1: u32, nu2: u32, nu3: u32, keep: impl Fn(u32) -> bool) -> IntPoly {
    let mut total = IntPoly::zero();
    for i in 0..=nu1 {
        for j in 0..=nu2 {
            for k in 0..=nu3 {
                if !keep(i + j + k) {
                    continue;
                }
                let ea = i.min(nu2 - j);
                let eb = j.min(nu3 - k);
                let ec = i.min(nu3 - k);
                let sum = ea + eb + ec;
                let ex = sum - (i + nu3 - k).min(sum);
                let term = gcd_sum_poly(ex).shift((sum - 2 * ex) as usize);
                total = &total + &term;
            }
        }
    }
    total
}

/// `Σ_{j=0}^{2ν} (ν − ⌊(j−1)/2⌋)(2j − ⌊(j−1)/2⌋) p^(2ν−j)`, with `⌊·⌋` the
/// floor (so `j = 0` uses `−1`).
pub fn general_form(nu: u32) -> IntPoly {
    let nu = i128::from(nu);
    let mut coeffs = vec![0i128; (2 * nu + 1) as usize];
    for j in 0..=2 * nu {
        let fl = (j - 1).div_euclid(2);
        coeffs[(2 * nu - j) as usize] = (nu - fl) * (2 * j - fl);
    }
    IntPoly::new(coeffs)
}

/// Gaussian binomial `[r k]_p = Π_{i=1..k} (p^(r−k+i) − 1)/(p^i − 1)`.
/// The zero polynomial when `k > r`.
pub fn gaussian_binomial(r: u32, k: u32) -> IntPoly {
    if k > r {
        return IntPoly::zero();
    }
    let p_pow_minus_one = |e: u32| &IntPoly::monomial(1, e as usize) - &IntPoly::one();
    let mut num = IntPoly::one();
    for i in 1..=k {
        num = &num * &p_pow_minus_one(r - k + i);
    }
    for i in 1..=k {
        num =
            num.div_exact(&p_pow_minus_one(i)).expect("q-binomial numerator is divisible by each (p^i - 1)");
    }
    num
}

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Sorts the parts into decreasing order and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// Part `i` (zero-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.parts.get(i).copied().unwrap_or(0)
    }

    /// Transpose of the Ferrers diagram.
    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition {
            parts: (1..=width).map(|j| self.parts.iter().filter(|&&x| x >= j).count() as u32).collect(),
        }
    }

    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.parts.iter().zip(&self.parts).all(|(m, l)| m <= l)
    }

    /// All partitions `μ ⊆ λ`, in lexicographic order of parts.
    pub fn sub_partitions(&self) -> Vec<Partition> {
        fn go(lambda: &[u32], cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
            out.push(Partition { parts: prefix.clone() });
            let Some((&first, rest)) = lambda.split_first() else {
                return;
            };
            for x in 1..=first.min(cap) {
                prefix.push(x);
                go(rest, x, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(&self.parts, u32::MAX, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// All sub-partitions with `|μ| = k`.
    pub fn sub_partitions_of_size(&self, k: u32) -> Vec<Partition> {
        self.sub_partitions().into_iter().filter(|mu| mu.size() == k).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Number of subgroups of type `μ` in a `p`-group of type `λ`:
/// `Π_{j=1}^{λ1} p^(μ'_{j+1}(λ'_j − μ'_j)) [λ'_j − μ'_{j+1}, μ'_j − μ'_{j+1}]_p`.
pub fn type_count(lambda: &Partition, mu: &Partition) -> Result<IntPoly> {
    if !lambda.contains(mu) {
        return Err(Error::NotContained(mu.to_string(), lambda.to_string()));
    }
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mut out = IntPoly::one();
    for j in 0..lambda.part(0) as usize {
        let (l_j, m_j, m_next) = (lc.part(j), mc.part(j), mc.part(j + 1));
        let shift = m_next * (l_j - m_j);
        let factor = gaussian_binomial(l_j - m_next, m_j - m_next).shift(shift as usize);
        out = &out * &factor;
    }
    Ok(out)
}

/// `h(p^ν) = (3ν − 1) p + 3ν + 1`.
pub fn h_closed_form(nu: u32) -> IntPoly {
    let nu = i128::from(nu);
    IntPoly::new(vec![3 * nu + 1, 3 * nu - 1])
}

/// `h(p^ν) = s(p^ν) − 2p² s(p^(ν−1)) + p⁴ s(p^(ν−2))` from symbolic subgroup
/// counts, with `s(p^0) = 1` and `s(p^(−1)) = 0`.
pub fn h_recurrence(nu: u32) -> IntPoly {
    let s = |k: u32| symbolic_count(k, k, k);
    let mut out = s(nu);
    if nu >= 1 {
        out = &out - &s(nu - 1).scale(2).shift(2);
    }
    if nu >= 2 {
        out = &out + &s(nu - 2).shift(4);
    }
    out
}
