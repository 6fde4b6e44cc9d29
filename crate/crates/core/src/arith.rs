//! Number-theoretic kernel: gcd machinery, linear congruences, factorization,
//! smallest-prime-factor sieves and multiplicative functions.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Extended Euclid. Returns `(g, u, v)` with `g = gcd(x, y) >= 0` and
/// `u*x + v*y = g`.
///
/// `ext_gcd(0, 0)` is `(0, 0, 0)`.
pub fn ext_gcd<T>(x: T, y: T) -> (T, T, T)
where
    T: Integer + Signed + Copy,
{
    let (mut old_r, mut r) = (x, y);
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r.is_zero() {
        return (T::zero(), T::zero(), T::zero());
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Solution family `u = base + k * period`, `k = 0..count`, of a linear
/// congruence modulo `count * period`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CongruenceSolution<T> {
    pub base: T,
    pub period: T,
    pub count: T,
}

impl<T: Integer + Copy> CongruenceSolution<T> {
    /// The `k`-th solution, `base + k * period`.
    pub fn nth(&self, k: T) -> T {
        self.base + k * self.period
    }

    pub fn modulus(&self) -> T {
        self.count * self.period
    }
}

/// Solves `coeff * u ≡ rhs (mod modulus)`.
///
/// The base solution is the least nonnegative one; there are
/// `gcd(coeff, modulus)` solutions modulo `modulus`.
pub fn solve_linear_congruence<T>(coeff: T, rhs: T, modulus: T) -> Result<CongruenceSolution<T>>
where
    T: Integer + Signed + Copy + fmt::Display,
{
    if modulus <= T::zero() {
        return Err(Error::InvalidArgument(format!("congruence modulus must be positive, got {modulus}")));
    }
    let coeff = coeff.mod_floor(&modulus);
    let rhs = rhs.mod_floor(&modulus);
    let (g, inv, _) = ext_gcd(coeff, modulus);
    // coeff == 0 reduces to 0 ≡ rhs
    let g = if g.is_zero() { modulus } else { g };
    if !rhs.is_multiple_of(&g) {
        return Err(Error::NoSolution {
            coeff: coeff.to_string(),
            rhs: rhs.to_string(),
            modulus: modulus.to_string(),
        });
    }
    let period = modulus / g;
    let base = if period.is_one() {
        T::zero()
    } else {
        // inv * coeff ≡ g (mod modulus), so inv * (rhs / g) solves it
        (inv.mod_floor(&period) * (rhs / g).mod_floor(&period)).mod_floor(&period)
    };
    Ok(CongruenceSolution { base, period, count: g })
}

/// Prime-power decomposition of a positive integer. The empty list is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    pairs: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs, checking the
    /// canonical-form invariants.
    pub fn from_pairs(pairs: Vec<(u64, u32)>) -> Result<Self> {
        for w in pairs.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidArgument(
                    "factorization primes must be strictly increasing".into(),
                ));
            }
        }
        for &(p, e) in &pairs {
            if e == 0 || !is_prime(p) {
                return Err(Error::InvalidArgument(format!("invalid prime power {p}^{e} in factorization")));
            }
        }
        Ok(Factorization { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The product of all prime powers, `None` on `u64` overflow.
    pub fn value(&self) -> Option<u64> {
        self.pairs.iter().try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?))
    }

    /// All divisors in ascending order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.pairs {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn divisor_count(&self) -> u64 {
        self.pairs.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `n` must be an odd composite.
fn pollard_rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut q) = (2u64, 2u64, 1u64);
        let mut g = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(r - k).min(128) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

const TRIAL_LIMIT: u64 = 1 << 16;

/// Canonical prime factorization of `n >= 1`.
///
/// Trial division up to 2^16 with a Miller–Rabin check on the cofactor;
/// composite cofactors that survive trial division are split by Pollard rho.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factorize 0".into()));
    }
    let mut rest = n;
    let mut primes = Vec::new();
    let mut p = 2u64;
    while p * p <= rest && p < TRIAL_LIMIT {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
                primes.push(p);
            }
            if is_prime(rest) {
                break;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let mut stack = vec![rest];
        while let Some(k) = stack.pop() {
            if k == 1 {
                continue;
            }
            if is_prime(k) {
                primes.push(k);
            } else {
                let d = pollard_rho(k);
                stack.push(d);
                stack.push(k / d);
            }
        }
    }
    primes.sort_unstable();
    let mut pairs: Vec<(u64, u32)> = Vec::new();
    for q in primes {
        match pairs.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => pairs.push((q, 1)),
        }
    }
    Ok(Factorization { pairs })
}

/// Ascending divisors of `n >= 1`.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factorize(n)?.divisors())
}

/// Least-prime-factor table for `2..=limit`.
#[derive(Clone, Debug)]
pub struct SpfSieve {
    spf: Vec<u32>,
}

impl SpfSieve {
    pub fn limit(&self) -> usize {
        self.spf.len() - 1
    }

    /// Least prime factor of `k`, for `2 <= k <= limit`.
    pub fn least_prime_factor(&self, k: usize) -> u64 {
        u64::from(self.spf[k])
    }

    pub fn is_prime(&self, k: usize) -> bool {
        k >= 2 && self.spf[k] as usize == k
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..self.spf.len()).filter(|&k| self.is_prime(k)).map(|k| k as u64)
    }

    /// Factorizes `n` (with `1 <= n <= limit`) by repeated table lookup.
    pub fn factorize(&self, n: usize) -> Factorization {
        let mut pairs = Vec::new();
        let mut rest = n;
        while rest > 1 {
            let p = self.spf[rest] as usize;
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            pairs.push((p as u64, e));
        }
        Factorization { pairs }
    }
}

/// Builds the least-prime-factor table up to `limit` (at most `u32::MAX`).
pub fn smallest_prime_factor_sieve(limit: usize) -> Result<SpfSieve> {
    if limit < 2 {
        return Err(Error::InvalidArgument(format!("sieve limit must be at least 2, got {limit}")));
    }
    if limit > u32::MAX as usize {
        return Err(Error::InvalidArgument(format!("sieve limit {limit} exceeds the supported range")));
    }
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] != 0 {
            continue;
        }
        spf[i] = i as u32;
        if let Some(start) = i.checked_mul(i) {
            let mut j = start;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    Ok(SpfSieve { spf })
}

/// `P(n) = Σ_{k=1..n} gcd(k, n)` by direct summation.
pub fn gcd_sum_direct(n: u64) -> u64 {
    (1..=n).map(|k| k.gcd(&n)).sum()
}

/// `P(p^ν) = (ν+1) p^ν − ν p^(ν−1)`.
pub fn gcd_sum_prime_power(p: u64, nu: u32) -> i128 {
    if nu == 0 {
        return 1;
    }
    let p = i128::from(p);
    let pk = p.pow(nu - 1);
    (i128::from(nu) + 1) * pk * p - i128::from(nu) * pk
}

/// The gcd-sum function `P(n)`, evaluated multiplicatively.
pub fn gcd_sum(n: u64) -> Result<u128> {
    let f = factorize(n)?;
    let mut acc: u128 = 1;
    for &(p, e) in f.pairs() {
        let local = checked_prime_power_value(p, e, gcd_sum_prime_power)?;
        acc = acc.checked_mul(local as u128).ok_or_else(|| Error::Overflow(format!("P({n})")))?;
    }
    Ok(acc)
}

fn checked_prime_power_value(p: u64, e: u32, f: impl Fn(u64, u32) -> i128) -> Result<i128> {
    // p^e must be representable before the rule is trusted
    i128::from(p)
        .checked_pow(e)
        .and_then(|pe| pe.checked_mul(i128::from(e) + 1))
        .ok_or_else(|| Error::Overflow(format!("prime power {p}^{e}")))?;
    Ok(f(p, e))
}

type PrimePowerRule = dyn Fn(u64, u32) -> i128 + Send + Sync;

/// An arithmetic function determined by its values at prime powers.
#[derive(Clone)]
pub struct MultiplicativeFunction {
    name: String,
    rule: Arc<PrimePowerRule>,
}

impl fmt::Debug for MultiplicativeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiplicativeFunction").field("name", &self.name).finish_non_exhaustive()
    }
}

impl MultiplicativeFunction {
    pub fn new(name: impl Into<String>, rule: impl Fn(u64, u32) -> i128 + Send + Sync + 'static) -> Self {
        MultiplicativeFunction { name: name.into(), rule: Arc::new(rule) }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Value at the prime power `p^e` (`e >= 1`).
    pub fn at_prime_power(&self, p: u64, e: u32) -> i128 {
        (self.rule)(p, e)
    }

    /// Value at `n`, the product of the rule over the factorization of `n`.
    pub fn evaluate(&self, n: u64) -> Result<i128> {
        self.evaluate_factored(&factorize(n)?)
    }

    pub fn evaluate_factored(&self, f: &Factorization) -> Result<i128> {
        f.pairs().iter().try_fold(1i128, |acc, &(p, e)| {
            acc.checked_mul(self.at_prime_power(p, e))
                .ok_or_else(|| Error::Overflow(format!("{} at {f}", self.name)))
        })
    }
}

/// Number of divisors.
pub fn tau() -> MultiplicativeFunction {
    MultiplicativeFunction::new("tau", |_, e| i128::from(e) + 1)
}

/// Euler's totient.
pub fn phi() -> MultiplicativeFunction {
    MultiplicativeFunction::new("phi", |p, e| {
        let p = i128::from(p);
        p.pow(e - 1) * (p - 1)
    })
}

/// Möbius function.
pub fn mobius() -> MultiplicativeFunction {
    MultiplicativeFunction::new("mu", |_, e| if e == 1 { -1 } else { 0 })
}

/// Gcd-sum function `P`.
pub fn gcd_sum_function() -> MultiplicativeFunction {
    MultiplicativeFunction::new("P", gcd_sum_prime_power)
}

/// Values `f(0..=limit)` with `f(0) = 0`, using a fresh least-prime-factor
/// table. The rule is called once per prime power `p^e <= limit`.
pub fn sieve_multiplicative(f: &MultiplicativeFunction, limit: usize) -> Result<Vec<i128>> {
    if limit < 2 {
        if limit == 0 {
            return Err(Error::InvalidArgument("sieve limit must be at least 1".into()));
        }
        return Ok(vec![0, 1]);
    }
    let spf = smallest_prime_factor_sieve(limit)?;
    sieve_multiplicative_with(f, &spf)
}

/// Same as [`sieve_multiplicative`] over an existing table.
pub fn sieve_multiplicative_with(f: &MultiplicativeFunction, spf: &SpfSieve) -> Result<Vec<i128>> {
    let limit = spf.limit();
    let mut values = vec![0i128; limit + 1];
    values[1] = 1;
    for n in 2..=limit {
        let p = spf.spf[n] as usize;
        let mut prime_power = p;
        let mut e = 1u32;
        let mut rest = n / p;
        while rest.is_multiple_of(p) {
            rest /= p;
            prime_power *= p;
            e += 1;
        }
        values[n] = if rest == 1 {
            f.at_prime_power(p as u64, e)
        } else {
            values[prime_power]
                .checked_mul(values[rest])
                .ok_or_else(|| Error::Overflow(format!("{} at {n}", f.name)))?
        };
    }
    Ok(values)
}
