//! Comparison of the sextuple enumeration against the brute-force lattice.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::group::Group3;
use crate::oracle::{all_subgroups, ElementSet};
use crate::rank2::enumerate_rank2;
use crate::rank3::{count_total, materialize_with, sextuples_with, subgroup_elements, DerivedParams};

/// Outcome for one group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub group: Group3,
    pub oracle_count: usize,
    pub enumerated: usize,
    pub formula_count: u128,
    /// Subgroups found by the oracle but not the enumeration.
    pub missing: Vec<ElementSet>,
    /// Sets produced by the enumeration that are not subgroups of the
    /// oracle lattice.
    pub spurious: Vec<ElementSet>,
    /// Enumeration produced the same set twice.
    pub duplicates: usize,
    /// Errors raised while enumerating or materializing.
    pub errors: Vec<String>,
}

impl GroupCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
            && self.spurious.is_empty()
            && self.duplicates == 0
            && self.errors.is_empty()
            && self.enumerated == self.oracle_count
            && self.formula_count == self.oracle_count as u128
    }
}

/// Compares the rank-3 enumeration for `group` (with the parameter function
/// `params`) against the oracle.
pub fn check_group_with<F>(group: Group3, bound: u64, params: F) -> Result<GroupCheck>
where
    F: Fn(u64, u64, u64, Group3) -> Result<DerivedParams> + Send + Sync + 'static,
{
    let oracle: BTreeSet<ElementSet> = all_subgroups(group, bound)?.into_iter().collect();
    let mut produced = BTreeSet::new();
    let mut enumerated = 0;
    let mut duplicates = 0;
    let mut errors = Vec::new();
    for item in sextuples_with(group, params)? {
        let built = item.and_then(|(sx, p)| {
            let basis = materialize_with(&sx, &p, group)?;
            subgroup_elements(&basis, bound)
        });
        match built {
            Ok(elements) => {
                enumerated += 1;
                if !produced.insert(ElementSet::from_elements(elements)) {
                    duplicates += 1;
                }
            }
            Err(e) => errors.push(e.to_string()),
        }
    }
    Ok(GroupCheck {
        group,
        oracle_count: oracle.len(),
        enumerated,
        formula_count: count_total(group)?,
        missing: oracle.difference(&produced).cloned().collect(),
        spurious: produced.difference(&oracle).cloned().collect(),
        duplicates,
        errors,
    })
}

pub fn check_group(group: Group3, bound: u64) -> Result<GroupCheck> {
    check_group_with(group, bound, crate::rank3::derived_params)
}

/// Compares the rank-2 enumeration of `Z_m × Z_n` with the oracle lattice of
/// `Z_m × Z_n × Z_1`. Returns the number of mismatching subgroups.
pub fn check_rank2(m: u64, n: u64, bound: u64) -> Result<usize> {
    let group = Group3::rank2(m, n)?;
    let oracle: BTreeSet<Vec<(u64, u64)>> =
        all_subgroups(group, bound)?.iter().map(ElementSet::project2).collect();
    let mut produced = BTreeSet::new();
    let mut count = 0;
    for basis in enumerate_rank2(m, n)? {
        produced.insert(basis.elements(bound)?);
        count += 1;
    }
    let mismatches = oracle.symmetric_difference(&produced).count() + (count - produced.len());
    Ok(mismatches)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rank3::derived_params;

    #[test]
    fn small_groups_pass() {
        for group in Group3::all_up_to(12) {
            let check = check_group(group, 4096).unwrap();
            assert!(check.passed(), "{check:?}");
            assert_eq!(check_rank2(group.m, group.n, 4096).unwrap(), 0);
        }
    }

    #[test]
    fn corrupted_coupling_is_caught() {
        let corrupt = |a, b, c, g| {
            let mut p = derived_params(a, b, c, g)?;
            p.coupling = 1;
            Ok(p)
        };
        let failing: Vec<_> = Group3::all_up_to(16)
            .into_iter()
            .filter(|&g| !check_group_with(g, 4096, corrupt).unwrap().passed())
            .collect();
        // X > 1 first happens in Z_2 × Z_4 × Z_2
        assert_eq!(failing, vec![Group3::new(2, 4, 2).unwrap()]);
    }
}
