//! Generators for the three reference tables and the transcribed fixtures
//! they are checked against.

use crate::asymptotics::sieve_s;
use crate::error::{Error, Result};
use crate::typecounts::symbolic_count;
use crate::IntPoly;

const TABLE1_CSV: &str = include_str!("../data/table1.csv");
const TABLE2_CSV: &str = include_str!("../data/table2.csv");
const TABLE3_CSV: &str = include_str!("../data/table3.csv");

/// `(n, s(n, n, n))` for `n = 1..=limit`.
pub fn table1(limit: u64) -> Result<Vec<(u64, u128)>> {
    if limit == 0 {
        return Ok(Vec::new());
    }
    let s = sieve_s(limit as usize)?;
    Ok((1..=limit).map(|n| (n, s[n as usize] as u128)).collect())
}

/// `(ν, s(p^ν, p^ν, p^ν))` for `ν = 1..=limit`.
pub fn table2(limit: u32) -> Vec<(u32, IntPoly)> {
    (1..=limit).map(|nu| (nu, symbolic_count(nu, nu, nu))).collect()
}

/// Exponent triples `1 <= ν1 <= ν2 <= ν3 <= limit`, ordered by `ν3`, then
/// `ν2`, then `ν1`.
pub fn table3_shapes(limit: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for n3 in 1..=limit {
        for n2 in 1..=n3 {
            for n1 in 1..=n2 {
                out.push([n1, n2, n3]);
            }
        }
    }
    out
}

pub fn table3(limit: u32) -> Vec<([u32; 3], IntPoly)> {
    table3_shapes(limit).into_iter().map(|[a, b, c]| ([a, b, c], symbolic_count(a, b, c))).collect()
}

fn data_rows(csv: &'static str) -> impl Iterator<Item = Vec<&'static str>> {
    csv.lines().skip(1).filter(|l| !l.trim().is_empty()).map(|l| l.split(',').collect())
}

fn field<T: std::str::FromStr>(text: &str) -> Result<T> {
    text.trim().parse().map_err(|_| Error::InvalidArgument(format!("bad fixture field {text:?}")))
}

/// Transcribed values of `s(n)` for `n <= 50`.
pub fn table1_fixture() -> Result<Vec<(u64, u128)>> {
    data_rows(TABLE1_CSV).map(|r| Ok((field(r[0])?, field(r[1])?))).collect()
}

/// Transcribed polynomials `s(p^ν)` for `ν <= 10`.
pub fn table2_fixture() -> Result<Vec<(u32, IntPoly)>> {
    data_rows(TABLE2_CSV).map(|r| Ok((field(r[0])?, r[1].parse()?))).collect()
}

/// Transcribed polynomials for `1 <= ν1 <= ν2 <= ν3 <= 4`.
pub fn table3_fixture() -> Result<Vec<([u32; 3], IntPoly)>> {
    data_rows(TABLE3_CSV).map(|r| Ok(([field(r[0])?, field(r[1])?, field(r[2])?], r[3].parse()?))).collect()
}
