//! Average order of `s(n) = s(n, n, n)`.
//!
//! With `s = (n² τ) * h` (Dirichlet convolution) and `H` the Dirichlet series
//! of `h`,
//!
//! ```text
//! Σ_{n<=x} s(n) = x³/3 · (H(3)(ln x + 2γ − 1/3) + H'(3)) + O(x^(2+θ+ε)).
//! ```
//!
//! The constant is the one of `Σ_{n<=x} n² τ(n)`; with `2γ − 1` (the
//! constant of `Σ τ(n)`) the relative error stalls near 5% at `x = 10⁶`.
//!
//! `H(3)` and `H'(3)` are evaluated from the factorization
//! `H(z) = ζ(z)⁴ ζ(z−1)² Π_p k_p(z)`, where
//! `k_p(z) = (1 + 2p^(1−z) + 2p^(−z) + p^(1−2z)) (1 − p^(1−z))² (1 − p^(−z))²`
//! is `1 + O(p^(2−2z))`, so the truncated product converges like `L^(3−2z)`.

use num_traits::Float;

use crate::arith::{sieve_multiplicative, smallest_prime_factor_sieve, MultiplicativeFunction};
use crate::error::{Error, Result};
use crate::rank3::{count_total_prime_power, subgroup_count_function};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Best known exponent in the divisor problem, `131/416`, as a fraction.
/// Reporting only.
pub const THETA_REFERENCE: (u32, u32) = (131, 416);

/// Kahan–compensated running sum.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum<F> {
    sum: F,
    carry: F,
}

impl<F: Float> KahanSum<F> {
    pub fn new() -> Self {
        KahanSum { sum: F::zero(), carry: F::zero() }
    }

    pub fn add(&mut self, x: F) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> F {
        self.sum
    }
}

fn c<F: Float>(x: f64) -> F {
    F::from(x).expect("float constant")
}

// B_{2k} / (2k)! for k = 1..=8
const BERNOULLI_OVER_FACTORIAL: [f64; 8] = [
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
];

/// `(ζ(s), ζ'(s))` for real `s > 1` by Euler–Maclaurin summation.
pub fn zeta_with_derivative<F: Float>(s: F) -> Result<(F, F)> {
    if s <= F::one() {
        return Err(Error::InvalidArgument("zeta needs s > 1".into()));
    }
    const CUTOFF: usize = 24;
    let big_n: F = c(CUTOFF as f64);
    let ln_n = big_n.ln();
    let mut value = KahanSum::new();
    let mut deriv = KahanSum::new();
    for k in 1..CUTOFF {
        let kf: F = c(k as f64);
        let term = kf.powf(-s);
        value.add(term);
        deriv.add(-kf.ln() * term);
    }
    let sm1 = s - F::one();
    let tail = big_n.powf(F::one() - s);
    value.add(tail / sm1);
    deriv.add(tail * (-ln_n / sm1 - F::one() / (sm1 * sm1)));
    let half = big_n.powf(-s) / c(2.0);
    value.add(half);
    deriv.add(-ln_n * half);
    // rising factorial s (s+1) ... (s+2k-2) and its log-derivative
    let mut rising = s;
    let mut log_rising_deriv = F::one() / s;
    for (k, &coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let k = k + 1;
        if k > 1 {
            for extra in [2 * k - 3, 2 * k - 2] {
                let factor = s + c(extra as f64);
                rising = rising * factor;
                log_rising_deriv = log_rising_deriv + F::one() / factor;
            }
        }
        let power = big_n.powf(-s - c((2 * k - 1) as f64));
        let term = c::<F>(coef) * rising * power;
        value.add(term);
        deriv.add(term * (log_rising_deriv - ln_n));
    }
    Ok((value.value(), deriv.value()))
}

/// `s(1..=limit)` (index 0 holds 0), with prime-power values from the
/// numeric divisor-triple sum.
pub fn sieve_s(limit: usize) -> Result<Vec<i128>> {
    sieve_multiplicative(&subgroup_count_function(), limit)
}

/// `h(p^ν) = s(p^ν) − 2p² s(p^(ν−1)) + p⁴ s(p^(ν−2))`, numerically.
pub fn h_prime_power(p: u64, nu: u32) -> Result<i128> {
    let s = |k: u32| -> Result<i128> { Ok(count_total_prime_power(p, [k, k, k])? as i128) };
    let p2 = i128::from(p) * i128::from(p);
    let overflow = || Error::Overflow(format!("h({p}^{nu})"));
    let mut h = s(nu)?;
    if nu >= 1 {
        h = h
            .checked_sub(
                2i128.checked_mul(p2).and_then(|x| x.checked_mul(s(nu - 1).ok()?)).ok_or_else(overflow)?,
            )
            .ok_or_else(overflow)?;
    }
    if nu >= 2 {
        h = h
            .checked_add(
                p2.checked_mul(p2).and_then(|x| x.checked_mul(s(nu - 2).ok()?)).ok_or_else(overflow)?,
            )
            .ok_or_else(overflow)?;
    }
    Ok(h)
}

/// `h` as a multiplicative function.
pub fn h_function() -> MultiplicativeFunction {
    MultiplicativeFunction::new("h", |p, e| h_prime_power(p, e).expect("h(p^e) within range"))
}

/// `h(1..=limit)`, index 0 holds 0.
pub fn h_values(limit: usize) -> Result<Vec<i128>> {
    sieve_multiplicative(&h_function(), limit)
}

/// `H(z)` and `H'(z)` from the truncated Euler product, with rigorous
/// bounds on the truncation error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesValue {
    pub z: f64,
    pub prime_limit: u64,
    pub value: f64,
    pub derivative: f64,
    /// Bound on `|H(z) − value|`.
    pub value_bound: f64,
    /// Bound on `|H'(z) − derivative|`.
    pub derivative_bound: f64,
}

/// `log k_p(z)` and its `z`-derivative.
pub fn local_factor_log(p: u64, z: f64) -> (f64, f64) {
    let pf = p as f64;
    let lp = pf.ln();
    let u = pf.powf(1.0 - z);
    let y = pf.powf(-z);
    let f = 1.0 + 2.0 * u + 2.0 * y + u * y;
    let log = (2.0 * u + 2.0 * y + u * y).ln_1p() + 2.0 * (-u).ln_1p() + 2.0 * (-y).ln_1p();
    let deriv = lp * (2.0 * u / (1.0 - u) + 2.0 * y / (1.0 - y) - (2.0 * u + 2.0 * y + 2.0 * u * y) / f);
    (log, deriv)
}

/// Per-prime constants: `|log k_p(z)| <= 12 p^(2−2z)` and
/// `|d/dz log k_p(z)| <= 24 ln p · p^(2−2z)` for `p >= 100`, `z >= 2.1`.
pub const LOCAL_LOG_CONST: f64 = 12.0;
pub const LOCAL_DERIV_CONST: f64 = 24.0;

/// Evaluates `H(z)` and `H'(z)` for real `z >= 2.1` over primes `<= prime_limit`.
pub fn h_series(z: f64, prime_limit: u64) -> Result<SeriesValue> {
    if prime_limit < 100 {
        return Err(Error::InvalidArgument(format!("prime limit must be at least 100, got {prime_limit}")));
    }
    if !(2.1..=16.0).contains(&z) {
        return Err(Error::InvalidArgument(format!("z = {z} outside [2.1, 16]")));
    }
    let spf = smallest_prime_factor_sieve(prime_limit as usize)?;
    let mut log_sum = KahanSum::new();
    let mut deriv_sum = KahanSum::new();
    for p in spf.primes() {
        let (l, d) = local_factor_log(p, z);
        log_sum.add(l);
        deriv_sum.add(d);
    }
    let (zeta_z, dzeta_z) = zeta_with_derivative(z)?;
    let (zeta_z1, dzeta_z1) = zeta_with_derivative(z - 1.0)?;
    let log_h = 4.0 * zeta_z.ln() + 2.0 * zeta_z1.ln() + log_sum.value();
    let log_deriv = 4.0 * dzeta_z / zeta_z + 2.0 * dzeta_z1 / zeta_z1 + deriv_sum.value();
    let value = log_h.exp();
    let derivative = value * log_deriv;

    // tails over n > L of n^(−q) and ln n · n^(−q), q = 2z − 2
    let l = prime_limit as f64;
    let q = 2.0 * z - 2.0;
    let tail_pow = l.powf(1.0 - q) / (q - 1.0);
    let tail_log = l.powf(1.0 - q) * (l.ln() / (q - 1.0) + 1.0 / ((q - 1.0) * (q - 1.0)));
    // floating point floor for the zeta evaluations and summation
    let noise = 1e-13;
    let log_err = LOCAL_LOG_CONST * tail_pow + noise;
    let deriv_err = LOCAL_DERIV_CONST * tail_log + noise * (1.0 + log_deriv.abs());
    let value_bound = value * log_err.exp_m1();
    let derivative_bound = (value + value_bound) * deriv_err + value_bound * log_deriv.abs();
    Ok(SeriesValue { z, prime_limit, value, derivative, value_bound, derivative_bound })
}

/// `H(3)` and `H'(3)`.
pub fn h3_and_h3prime(prime_limit: u64) -> Result<SeriesValue> {
    h_series(3.0, prime_limit)
}

/// Truncated Dirichlet sums `Σ_{n<=N} h(n)/n³` and `−Σ_{n<=N} h(n) ln n/n³`
/// with upper bounds on the omitted tails.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectSums {
    pub terms: usize,
    pub value: f64,
    pub derivative: f64,
    /// `0 <= H(3) − value <= value_tail`.
    pub value_tail: f64,
    /// `0 <= derivative − H'(3) <= derivative_tail`.
    pub derivative_tail: f64,
}

/// Direct summation of `h` at `z = 3`. The tails use Rankin's bound
/// `Σ_{n>N} h(n) n^(−3) <= N^(σ−3) H(σ)` for `2 < σ < 3`, valid because
/// `h > 0`; the best `σ` on a grid is kept.
pub fn h3_direct(h: &[i128], prime_limit: u64) -> Result<DirectSums> {
    if h.len() < 2 {
        return Err(Error::InvalidArgument("need h values up to at least 1".into()));
    }
    let terms = h.len() - 1;
    let mut value = KahanSum::new();
    let mut deriv = KahanSum::new();
    for (n, &hn) in h.iter().enumerate().skip(1) {
        if hn <= 0 {
            return Err(Error::Invariant(format!("h({n}) = {hn} is not positive")));
        }
        let nf = n as f64;
        let term = hn as f64 / (nf * nf * nf);
        value.add(term);
        deriv.add(-term * nf.ln());
    }
    let nf = terms as f64;
    let mut value_tail = f64::INFINITY;
    let mut derivative_tail = f64::INFINITY;
    for step in 0..=17 {
        let sigma = 2.1 + 0.05 * f64::from(step);
        let series = h_series(sigma, prime_limit)?;
        let scale = nf.powf(sigma - 3.0);
        value_tail = value_tail.min(scale * (series.value + series.value_bound));
        derivative_tail = derivative_tail.min(scale * (series.derivative.abs() + series.derivative_bound));
    }
    Ok(DirectSums { terms, value: value.value(), derivative: deriv.value(), value_tail, derivative_tail })
}

/// `(x³/3) · (H(3)(ln x + 2γ − 1/3) + H'(3))`.
pub fn main_term<F: Float>(x: F, h3: F, h3_prime: F) -> F {
    let gamma: F = c(EULER_GAMMA);
    let two: F = c(2.0);
    let three: F = c(3.0);
    x * x * x / three * (h3 * (x.ln() + two * gamma - F::one() / three) + h3_prime)
}

/// Comparison of the exact partial sum with the main term at one `x`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AsymptoticReport {
    pub x: u64,
    pub exact_sum: u128,
    pub main_term: f64,
    pub relative_error: f64,
    /// `ln |exact − main| / ln x`.
    pub error_exponent_estimate: f64,
}

impl AsymptoticReport {
    pub fn new(x: u64, exact_sum: u128, main: f64) -> Self {
        let delta = (exact_sum as f64 - main).abs();
        AsymptoticReport {
            x,
            exact_sum,
            main_term: main,
            relative_error: delta / main,
            error_exponent_estimate: delta.ln() / (x as f64).ln(),
        }
    }
}

/// Sieves `s` once up to the largest `x` and reports each point.
pub fn asymptotic_reports(xs: &[u64], constants: &SeriesValue) -> Result<Vec<AsymptoticReport>> {
    let Some(&max_x) = xs.iter().max() else {
        return Ok(Vec::new());
    };
    if xs.iter().any(|&x| x < 2) {
        return Err(Error::InvalidArgument("evaluation points must be at least 2".into()));
    }
    let s = sieve_s(max_x as usize)?;
    let mut prefix = vec![0u128; s.len()];
    for n in 1..s.len() {
        prefix[n] = prefix[n - 1]
            .checked_add(s[n] as u128)
            .ok_or_else(|| Error::Overflow(format!("partial sum of s up to {n}")))?;
    }
    Ok(xs
        .iter()
        .map(|&x| {
            let main = main_term(x as f64, constants.value, constants.derivative);
            AsymptoticReport::new(x, prefix[x as usize], main)
        })
        .collect())
}

/// Exact divisor sums against their main terms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivisorSumCheck {
    pub x: u64,
    /// `Σ_{n<=x} τ(n)`.
    pub tau_exact: u128,
    /// `x ln x + (2γ − 1) x`.
    pub tau_main: f64,
    pub tau_relative_error: f64,
    /// `Σ_{n<=x} n² τ(n)`.
    pub n2tau_exact: u128,
    /// `x³ ln x / 3 + (2γ − 1/3) x³ / 3`.
    pub n2tau_main: f64,
    pub n2tau_relative_error: f64,
}

/// Hyperbola-free exact sums: `Σ τ(n) = Σ_d ⌊x/d⌋` and
/// `Σ n² τ(n) = Σ_d d² S₂(⌊x/d⌋)` with `S₂(k) = k(k+1)(2k+1)/6`.
pub fn divisor_sum_check(x: u64) -> Result<DivisorSumCheck> {
    if x < 2 {
        return Err(Error::InvalidArgument("x must be at least 2".into()));
    }
    let mut tau_exact = 0u128;
    let mut n2tau_exact = 0u128;
    for d in 1..=x {
        let k = u128::from(x / d);
        tau_exact += k;
        let d = u128::from(d);
        n2tau_exact += d * d * (k * (k + 1) * (2 * k + 1) / 6);
    }
    let xf = x as f64;
    let tau_main = xf * xf.ln() + (2.0 * EULER_GAMMA - 1.0) * xf;
    let x3 = xf * xf * xf;
    let n2tau_main = x3 * xf.ln() / 3.0 + (2.0 * EULER_GAMMA - 1.0 / 3.0) * x3 / 3.0;
    Ok(DivisorSumCheck {
        x,
        tau_exact,
        tau_main,
        tau_relative_error: (tau_exact as f64 - tau_main).abs() / tau_main,
        n2tau_exact,
        n2tau_main,
        n2tau_relative_error: (n2tau_exact as f64 - n2tau_main).abs() / n2tau_main,
    })
}
