//! Brute-force subgroup lattice of `Z_m × Z_n × Z_r` by closure under
//! addition. Deliberately naive and independent of the counting formulas;
//! it is the ground truth the rest of the crate is checked against.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::group::Group3;

pub type Element = [u64; 3];

/// A subgroup as its sorted list of elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(Vec<Element>);

impl ElementSet {
    /// Sorts and deduplicates `elements`.
    pub fn from_elements(mut elements: Vec<Element>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        ElementSet(elements)
    }

    pub fn elements(&self) -> &[Element] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.0.binary_search(x).is_ok()
    }

    /// Contains the identity, is closed under addition and has order
    /// dividing the group order.
    pub fn is_subgroup_of(&self, group: Group3) -> bool {
        let order = group.order();
        if !self.contains(&[0, 0, 0]) || !order.is_multiple_of(self.0.len() as u128) {
            return false;
        }
        self.0.iter().all(|x| self.0.iter().all(|y| self.contains(&add(group, x, y))))
    }

    /// The first two coordinates, for subgroups of `Z_m × Z_n × Z_1`.
    pub fn project2(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<_> = self.0.iter().map(|e| (e[0], e[1])).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn add(group: Group3, x: &Element, y: &Element) -> Element {
    [(x[0] + y[0]) % group.m, (x[1] + y[1]) % group.n, (x[2] + y[2]) % group.r]
}

/// Dense indexing of the group elements.
struct Coder {
    group: Group3,
}

impl Coder {
    fn encode(&self, x: &Element) -> usize {
        ((x[0] * self.group.n + x[1]) * self.group.r + x[2]) as usize
    }

    fn decode(&self, k: usize) -> Element {
        let k = k as u64;
        let (g, r) = (self.group, self.group.r);
        [k / (g.n * r), (k / r) % g.n, k % r]
    }

    fn size(&self) -> usize {
        self.group.order() as usize
    }
}

fn check_bound(group: Group3, bound: u64) -> Result<()> {
    if group.m == 0 || group.n == 0 || group.r == 0 {
        return Err(Error::InvalidArgument(format!("invalid group {group}")));
    }
    if group.order() > u128::from(bound) {
        return Err(Error::BoundExceeded { order: group.order(), bound: u128::from(bound) });
    }
    Ok(())
}

/// Breadth-first saturation from the identity under adding generators.
fn saturate(group: Group3, generators: &[Element], seen: &mut [bool]) -> Vec<usize> {
    let coder = Coder { group };
    seen.iter_mut().for_each(|s| *s = false);
    let zero = coder.encode(&[0, 0, 0]);
    seen[zero] = true;
    let mut members = vec![zero];
    let mut queue = VecDeque::from([[0u64; 3]]);
    while let Some(x) = queue.pop_front() {
        for g in generators {
            let y = add(group, &x, g);
            let k = coder.encode(&y);
            if !seen[k] {
                seen[k] = true;
                members.push(k);
                queue.push_back(y);
            }
        }
    }
    members.sort_unstable();
    members
}

fn to_set(group: Group3, members: &[usize]) -> ElementSet {
    let coder = Coder { group };
    // encoding is monotone in lexicographic order, so this stays sorted
    ElementSet(members.iter().map(|&k| coder.decode(k)).collect())
}

fn reduce(group: Group3, x: &Element) -> Element {
    [x[0] % group.m, x[1] % group.n, x[2] % group.r]
}

/// The subgroup generated by `generators`.
pub fn closure(generators: &[Element], group: Group3, bound: u64) -> Result<ElementSet> {
    check_bound(group, bound)?;
    let gens: Vec<Element> = generators.iter().map(|g| reduce(group, g)).collect();
    let mut seen = vec![false; Coder { group }.size()];
    Ok(to_set(group, &saturate(group, &gens, &mut seen)))
}

/// Every subgroup, found by extending known subgroups one element at a time
/// starting from the trivial subgroup.
pub fn all_subgroups(group: Group3, bound: u64) -> Result<Vec<ElementSet>> {
    check_bound(group, bound)?;
    let coder = Coder { group };
    let size = coder.size();
    let mut seen = vec![false; size];
    let mut known: HashSet<Vec<usize>> = HashSet::new();
    // each subgroup carries a generating list
    let mut queue: VecDeque<(Vec<usize>, Vec<Element>)> = VecDeque::new();
    let trivial = saturate(group, &[], &mut seen);
    known.insert(trivial.clone());
    queue.push_back((trivial, Vec::new()));
    let mut covered = vec![false; size];
    while let Some((members, gens)) = queue.pop_front() {
        covered.iter_mut().for_each(|m| *m = false);
        for &k in &members {
            covered[k] = true;
        }
        for k in 0..size {
            if covered[k] {
                continue;
            }
            // every element of the coset k + H gives the same extension
            let x = coder.decode(k);
            for &h in &members {
                covered[coder.encode(&add(group, &x, &coder.decode(h)))] = true;
            }
            let mut ext = gens.clone();
            ext.push(x);
            let bigger = saturate(group, &ext, &mut seen);
            if known.insert(bigger.clone()) {
                queue.push_back((bigger, ext));
            }
        }
    }
    let mut out: Vec<ElementSet> = known.iter().map(|m| to_set(group, m)).collect();
    out.sort();
    Ok(out)
}

/// The distinct cyclic subgroups `⟨g⟩`.
pub fn cyclic_subgroups(group: Group3, bound: u64) -> Result<Vec<ElementSet>> {
    check_bound(group, bound)?;
    let coder = Coder { group };
    let mut seen = vec![false; coder.size()];
    let mut known = HashSet::new();
    for k in 0..coder.size() {
        known.insert(saturate(group, &[coder.decode(k)], &mut seen));
    }
    let mut out: Vec<ElementSet> = known.iter().map(|m| to_set(group, m)).collect();
    out.sort();
    Ok(out)
}
