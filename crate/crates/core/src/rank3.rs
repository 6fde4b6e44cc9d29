//! Subgroups of `Z_m × Z_n × Z_r`.
//!
//! Each subgroup has a unique triangular basis `(a,0,0), (s,b,0), (u,v,c)`
//! with `a | m`, `b | n`, `c | r`, `0 <= s, u < a` and `0 <= v < b`. The
//! bases are indexed by sextuples `(a, b, c, t, w, z)`:
//!
//! * `A = gcd(a, n/b)`, `B = gcd(b, r/c)`, `C = gcd(a, r/c)` and
//!   `X = ABC / gcd(a (r/c), ABC)`;
//! * `s = a t / A` for `0 <= t < A`;
//! * `v = b X w / (B gcd(t, X))` for `0 <= w < B gcd(t, X) / X`;
//! * `u = u0 + (a/C) z` for `0 <= z < C`, where `u0` is the least
//!   nonnegative solution of `(r/c) u ≡ r v s / (b c) (mod a)`.
//!
//! Summing over `t, w, z` gives `s(m,n,r) = Σ_{a|m,b|n,c|r} (ABC/X²) P(X)`.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;

use crate::arith::{
    divisors, factorize, gcd_sum_prime_power, solve_linear_congruence, MultiplicativeFunction,
};
use crate::error::{Error, Result};
use crate::group::Group3;

/// Default cap on `m n r` for element materialization.
pub const DEFAULT_ELEMENT_BOUND: u64 = 4096;

/// The gcds attached to a divisor triple `(a, b, c)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DerivedParams {
    /// `A = gcd(a, n/b)`, the number of admissible shifts `t`.
    pub t_span: u64,
    /// `B = gcd(b, r/c)`.
    pub v_span: u64,
    /// `C = gcd(a, r/c)`, the number of lifts `z`.
    pub z_span: u64,
    /// `X = ABC / gcd(a (r/c), ABC)`; divides both `A` and `B`.
    pub coupling: u64,
}

impl DerivedParams {
    /// Number of `w` values for a given shift `t`: `B gcd(t, X) / X`.
    pub fn w_span(&self, t: u64) -> u64 {
        self.v_span * t.gcd(&self.coupling) / self.coupling
    }

    /// `ABC / X²`.
    pub fn weight(&self) -> u128 {
        let x = u128::from(self.coupling);
        u128::from(self.t_span) * u128::from(self.v_span) * u128::from(self.z_span) / (x * x)
    }
}

fn check_divisor_triple(a: u64, b: u64, c: u64, group: Group3) -> Result<()> {
    if a == 0 || b == 0 || c == 0 || !group.m.is_multiple_of(a) || !group.n.is_multiple_of(b) || !group.r.is_multiple_of(c) {
        return Err(Error::InvalidArgument(format!("({a},{b},{c}) is not a divisor triple of {group}")));
    }
    Ok(())
}

/// Computes `(A, B, C, X)` for the divisor triple `(a, b, c)` of `group`.
pub fn derived_params(a: u64, b: u64, c: u64, group: Group3) -> Result<DerivedParams> {
    check_divisor_triple(a, b, c, group)?;
    let rc = group.r / c;
    let t_span = a.gcd(&(group.n / b));
    let v_span = b.gcd(&rc);
    let z_span = a.gcd(&rc);
    let abc = u128::from(t_span) * u128::from(v_span) * u128::from(z_span);
    let coupling = abc / (u128::from(a) * u128::from(rc)).gcd(&abc);
    let coupling = coupling as u64;
    let params = DerivedParams { t_span, v_span, z_span, coupling };
    if !t_span.is_multiple_of(coupling) || !v_span.is_multiple_of(coupling) || abc % (u128::from(coupling).pow(2)) != 0 {
        return Err(Error::Invariant(format!(
            "coupling {coupling} must divide A={t_span} and B={v_span} for ({a},{b},{c}) in {group}"
        )));
    }
    Ok(params)
}

/// The coupling in its quotient form `B / gcd((a/A)(r/c)/C, B)`.
pub fn coupling_via_quotient(a: u64, b: u64, c: u64, group: Group3) -> Result<u64> {
    let p = derived_params(a, b, c, group)?;
    let rc = group.r / c;
    let q = u128::from(a / p.t_span) * u128::from(rc / p.z_span);
    let b_span = u128::from(p.v_span);
    Ok((b_span / q.gcd(&b_span)) as u64)
}

/// Parameters indexing one subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sextuple {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub t: u64,
    pub w: u64,
    pub z: u64,
}

/// Triangular basis `(a,0,0), (s,b,0), (u,v,c)` of a subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupBasis3 {
    pub group: Group3,
    pub a: u64,
    pub s: u64,
    pub u: u64,
    pub b: u64,
    pub v: u64,
    pub c: u64,
}

impl SubgroupBasis3 {
    pub fn order(&self) -> u128 {
        let g = self.group;
        u128::from(g.m / self.a) * u128::from(g.n / self.b) * u128::from(g.r / self.c)
    }

    pub fn generators(&self) -> [[u64; 3]; 3] {
        let g = self.group;
        [[self.a % g.m, 0, 0], [self.s, self.b % g.n, 0], [self.u, self.v, self.c % g.r]]
    }

    /// Sorted element list
    /// `{(i a + j s + k u mod m, j b + k v mod n, k c mod r)}` with
    /// `i < m/a`, `j < n/b`, `k < r/c`.
    pub fn elements(&self, bound: u64) -> Result<Vec<[u64; 3]>> {
        subgroup_elements(self, bound)
    }
}

/// Materializes the element set of `basis`; refuses groups of order above
/// `bound`.
pub fn subgroup_elements(basis: &SubgroupBasis3, bound: u64) -> Result<Vec<[u64; 3]>> {
    let g = basis.group;
    if g.order() > u128::from(bound) {
        return Err(Error::BoundExceeded { order: g.order(), bound: u128::from(bound) });
    }
    let mut out = Vec::with_capacity(basis.order() as usize);
    for i in 0..g.m / basis.a {
        for j in 0..g.n / basis.b {
            for k in 0..g.r / basis.c {
                out.push([
                    (i * basis.a + j * basis.s + k * basis.u) % g.m,
                    (j * basis.b + k * basis.v) % g.n,
                    (k * basis.c) % g.r,
                ]);
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// Computes the basis for `sx` with precomputed parameters.
pub fn materialize_with(sx: &Sextuple, params: &DerivedParams, group: Group3) -> Result<SubgroupBasis3> {
    let Sextuple { a, b, c, t, w, z } = *sx;
    let DerivedParams { t_span, v_span, z_span, coupling } = *params;
    let invariant = |what: &str| Error::Invariant(format!("{what} for {sx:?} in {group}"));
    if t >= t_span || z >= z_span || w >= params.w_span(t) {
        return Err(Error::InvalidArgument(format!("{sx:?} is out of range for {group}")));
    }
    if a % t_span != 0 {
        return Err(invariant("A does not divide a"));
    }
    let s = a / t_span * t;

    let g = t.gcd(&coupling);
    let v_num = u128::from(b) * u128::from(coupling) * u128::from(w);
    let v_den = u128::from(v_span) * u128::from(g);
    if v_num % v_den != 0 {
        return Err(invariant("v is not integral"));
    }
    let v = (v_num / v_den) as u64;

    let rc = group.r / c;
    let rc_v = u128::from(rc) * u128::from(v);
    if rc_v % u128::from(b) != 0 {
        return Err(invariant("b does not divide (r/c) v"));
    }
    let modulus = i128::from(a);
    let rhs = ((rc_v / u128::from(b)) % u128::from(a)) * u128::from(s) % u128::from(a);
    let sol = solve_linear_congruence(i128::from(rc) % modulus, rhs as i128, modulus)
        .map_err(|e| Error::Invariant(format!("{e} for {sx:?} in {group}")))?;
    if sol.count != i128::from(z_span) {
        return Err(invariant("solution count differs from C"));
    }
    let u = (sol.base + sol.period * i128::from(z)) as u64;
    Ok(SubgroupBasis3 { group, a, s, u, b, v, c })
}

/// Computes the triangular basis indexed by `sx`.
pub fn materialize(sx: &Sextuple, group: Group3) -> Result<SubgroupBasis3> {
    let params = derived_params(sx.a, sx.b, sx.c, group)?;
    materialize_with(sx, &params, group)
}

type ParamsFn = dyn Fn(u64, u64, u64, Group3) -> Result<DerivedParams> + Send + Sync;

/// Streaming iterator over all valid sextuples of a group, in lexicographic
/// `(a, b, c, t, w, z)` order.
pub struct Sextuples {
    group: Group3,
    divs: [Arc<[u64]>; 3],
    idx: [usize; 3],
    params: Option<DerivedParams>,
    t: u64,
    w: u64,
    z: u64,
    params_fn: Arc<ParamsFn>,
    failed: bool,
}

impl Sextuples {
    fn new(group: Group3, params_fn: Arc<ParamsFn>) -> Result<Self> {
        let divs =
            [Arc::from(divisors(group.m)?), Arc::from(divisors(group.n)?), Arc::from(divisors(group.r)?)];
        let mut it =
            Sextuples { group, divs, idx: [0; 3], params: None, t: 0, w: 0, z: 0, params_fn, failed: false };
        it.load_params()?;
        Ok(it)
    }

    fn current_abc(&self) -> (u64, u64, u64) {
        (self.divs[0][self.idx[0]], self.divs[1][self.idx[1]], self.divs[2][self.idx[2]])
    }

    fn load_params(&mut self) -> Result<()> {
        let (a, b, c) = self.current_abc();
        self.params = Some((self.params_fn)(a, b, c, self.group)?);
        self.t = 0;
        self.w = 0;
        self.z = 0;
        Ok(())
    }

    /// Moves to the next divisor triple; false when exhausted.
    fn advance_triple(&mut self) -> Result<bool> {
        for axis in (0..3).rev() {
            self.idx[axis] += 1;
            if self.idx[axis] < self.divs[axis].len() {
                self.load_params()?;
                return Ok(true);
            }
            self.idx[axis] = 0;
        }
        self.params = None;
        Ok(false)
    }

    /// Parameters of the divisor triple the iterator is positioned on.
    pub fn current_params(&self) -> Option<DerivedParams> {
        self.params
    }
}

impl Iterator for Sextuples {
    type Item = Result<(Sextuple, DerivedParams)>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let params = self.params?;
        let (a, b, c) = self.current_abc();
        let item = (Sextuple { a, b, c, t: self.t, w: self.w, z: self.z }, params);
        // odometer over (t, w, z), then the divisor triple
        self.z += 1;
        if self.z == params.z_span {
            self.z = 0;
            self.w += 1;
            if self.w == params.w_span(self.t) {
                self.w = 0;
                self.t += 1;
                if self.t == params.t_span {
                    if let Err(e) = self.advance_triple() {
                        self.failed = true;
                        self.params = None;
                        return Some(Err(e));
                    }
                }
            }
        }
        Some(Ok(item))
    }
}

/// Streams every sextuple of `group` together with its parameters.
pub fn sextuples(group: Group3) -> Result<Sextuples> {
    Sextuples::new(group, Arc::new(derived_params))
}

/// Like [`sextuples`], computing parameters with a caller-supplied function.
pub fn sextuples_with(
    group: Group3,
    params_fn: impl Fn(u64, u64, u64, Group3) -> Result<DerivedParams> + Send + Sync + 'static,
) -> Result<Sextuples> {
    Sextuples::new(group, Arc::new(params_fn))
}

/// Streams every valid sextuple of `group`.
pub fn enumerate_sextuples(group: Group3) -> Result<impl Iterator<Item = Sextuple>> {
    Ok(sextuples(group)?.map(|item| item.expect("divisor triples of a valid group").0))
}

/// Streams the triangular bases of all subgroups of `group`.
pub fn enumerate_subgroups(
    group: Group3,
) -> Result<impl Iterator<Item = Result<(Sextuple, SubgroupBasis3)>>> {
    Ok(sextuples(group)?.map(move |item| {
        let (sx, params) = item?;
        Ok((sx, materialize_with(&sx, &params, group)?))
    }))
}

fn check_group(group: Group3) -> Result<()> {
    Group3::new(group.m, group.n, group.r).map(|_| ())
}

fn gcd_sum_of(x: u64) -> u128 {
    factorize(x)
        .expect("coupling is positive")
        .pairs()
        .iter()
        .map(|&(p, e)| gcd_sum_prime_power(p, e) as u128)
        .product()
}

fn sum_over_triples(group: Group3, mut keep: impl FnMut(u64, u64, u64) -> bool) -> Result<u128> {
    check_group(group)?;
    let divs_n = divisors(group.n)?;
    let divs_r = divisors(group.r)?;
    // X divides a, so few distinct values occur
    let mut gcd_sums: HashMap<u64, u128> = HashMap::new();
    let mut total = 0u128;
    for a in divisors(group.m)? {
        for &b in &divs_n {
            for &c in &divs_r {
                if !keep(a, b, c) {
                    continue;
                }
                let params = derived_params(a, b, c, group)?;
                let p = *gcd_sums.entry(params.coupling).or_insert_with(|| gcd_sum_of(params.coupling));
                total = params
                    .weight()
                    .checked_mul(p)
                    .and_then(|term| total.checked_add(term))
                    .ok_or_else(|| Error::Overflow(format!("subgroup count of {group}")))?;
            }
        }
    }
    Ok(total)
}

/// Total number of subgroups, `Σ_{a|m,b|n,c|r} (ABC/X²) P(X)`.
pub fn count_total(group: Group3) -> Result<u128> {
    sum_over_triples(group, |_, _, _| true)
}

/// Number of subgroups of order `delta`: the same sum restricted to
/// `abc = mnr / delta`.
pub fn count_by_order(group: Group3, delta: u128) -> Result<u128> {
    check_group(group)?;
    let order = group.order();
    if delta == 0 || !order.is_multiple_of(delta) {
        return Err(Error::NotADivisor { delta, order });
    }
    let index = order / delta;
    sum_over_triples(group, |a, b, c| u128::from(a) * u128::from(b) * u128::from(c) == index)
}

/// Subgroup counts of `p`-power groups `Z_{p^e1} × Z_{p^e2} × Z_{p^e3}`,
/// without factorizing anything.
pub fn count_total_prime_power(p: u64, exps: [u32; 3]) -> Result<u128> {
    let pow = |k: u32| -> Result<u128> {
        u128::from(p).checked_pow(k).ok_or_else(|| Error::Overflow(format!("{p}^{k}")))
    };
    let [e1, e2, e3] = exps;
    let mut total = 0u128;
    for i in 0..=e1 {
        for j in 0..=e2 {
            for k in 0..=e3 {
                let ea = i.min(e2 - j);
                let eb = j.min(e3 - k);
                let ec = i.min(e3 - k);
                let sum = ea + eb + ec;
                let ex = sum - (i + e3 - k).min(sum);
                let weight = pow(sum - 2 * ex)?;
                let local = gcd_sum_prime_power(p, ex) as u128;
                total = weight
                    .checked_mul(local)
                    .and_then(|term| total.checked_add(term))
                    .ok_or_else(|| Error::Overflow(format!("subgroup count at {p}^{exps:?}")))?;
            }
        }
    }
    Ok(total)
}

/// Number of cyclic subgroups, `Σ_{a|m,b|n,c|r} φ(a)φ(b)φ(c)/φ(lcm(a,b,c))`.
pub fn count_cyclic(group: Group3) -> Result<u128> {
    check_group(group)?;
    // exponent vectors over the primes of m n r
    let mut primes: Vec<u64> = Vec::new();
    for x in group.moduli() {
        primes.extend(factorize(x)?.pairs().iter().map(|&(p, _)| p));
    }
    primes.sort_unstable();
    primes.dedup();
    let exponents = |x: u64| -> Vec<u32> {
        primes
            .iter()
            .map(|&p| {
                let (mut e, mut y) = (0, x);
                while y % p == 0 {
                    y /= p;
                    e += 1;
                }
                e
            })
            .collect()
    };
    let phi_of = |exps: &[u32]| -> u128 {
        primes
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e > 0)
            .map(|(&p, &e)| u128::from(p).pow(e - 1) * u128::from(p - 1))
            .product()
    };
    let with_exps = |x: u64| -> Result<Vec<(u128, Vec<u32>)>> {
        Ok(divisors(x)?
            .into_iter()
            .map(|d| {
                let e = exponents(d);
                (phi_of(&e), e)
            })
            .collect())
    };
    let (da, db, dc) = (with_exps(group.m)?, with_exps(group.n)?, with_exps(group.r)?);
    let mut total = 0u128;
    let mut lcm = vec![0u32; primes.len()];
    for (pa, ea) in &da {
        for (pb, eb) in &db {
            for (pc, ec) in &dc {
                for (i, slot) in lcm.iter_mut().enumerate() {
                    *slot = ea[i].max(eb[i]).max(ec[i]);
                }
                let num = pa * pb * pc;
                let den = phi_of(&lcm);
                if num % den != 0 {
                    return Err(Error::Invariant(format!(
                        "cyclic summand {num}/{den} is not integral in {group}"
                    )));
                }
                total += num / den;
            }
        }
    }
    Ok(total)
}

/// `n ↦ s(n, n, n)` as a multiplicative function.
pub fn subgroup_count_function() -> MultiplicativeFunction {
    MultiplicativeFunction::new("s", |p, e| {
        count_total_prime_power(p, [e, e, e]).expect("s(p^e) within range") as i128
    })
}

/// `n ↦ c(n, n, n)` as a multiplicative function.
pub fn cyclic_count_function() -> MultiplicativeFunction {
    MultiplicativeFunction::new("c", |p, e| {
        let pe = p.pow(e);
        count_cyclic(Group3 { m: pe, n: pe, r: pe }).expect("c(p^e) within range") as i128
    })
}
