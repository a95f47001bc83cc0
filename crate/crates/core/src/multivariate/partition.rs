//! The lattice `Λ^(m,n)` of partitions with at most `n` parts bounded by `m`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default upper bound on `|Λ^(m,n)| = C(m+n, n)` for kernel assembly.
pub const DEFAULT_SIZE_CAP: usize = 20_000;

/// `λ₁ ≥ λ₂ ≥ … ≥ λₙ ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Checks weak decrease and `λ₁ ≤ m`.
    pub fn new(parts: Vec<usize>, m: usize) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidArgument(
                "partition needs n >= 1 parts".into(),
            ));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        if parts[0] > m {
            return Err(Error::InvalidArgument(format!(
                "partition {parts:?} has a part larger than m = {m}"
            )));
        }
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `(λ₁+n−1, λ₂+n−2, …, λₙ)`, strictly decreasing.
    pub fn staircase_shift(&self) -> Vec<usize> {
        let n = self.0.len();
        self.0
            .iter()
            .enumerate()
            .map(|(j, &part)| part + n - 1 - j)
            .collect()
    }

    /// Dash-joined parts, e.g. `3-1-0`.
    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for part in &self.0 {
            if !first {
                f.write_str("-")?;
            }
            write!(f, "{part}")?;
            first = false;
        }
        Ok(())
    }
}

/// Parses a dash-joined label without an `m` bound (checked again on lookup).
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .trim()
            .split('-')
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::InvalidArgument(format!("bad partition label {s:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let bound = parts.first().copied().unwrap_or(0);
        Self::new(parts, bound)
    }
}

/// `C(m+n, n)`, `None` on overflow.
pub fn lattice_size(m: usize, n: usize) -> Option<u128> {
    let (m, n) = (m as u128, n as u128);
    let k = m.min(n);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul(m + n - k + i)? / i;
    }
    Some(acc)
}

/// Every partition of `Λ^(m,n)` exactly once, graded by `|λ|` ascending and
/// lexicographically descending within a grade: `(0,0), (1,0), (2,0), (1,1), …`.
#[derive(Debug, Clone)]
pub struct PartitionSet {
    m: usize,
    n: usize,
    items: Vec<Partition>,
    index: HashMap<Partition, usize>,
}

impl PartitionSet {
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn len(&self) -> usize {
        self.items.len()
    }
    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
    pub fn iter(&self) -> std::slice::Iter<'_, Partition> {
        self.items.iter()
    }
    pub fn as_slice(&self) -> &[Partition] {
        &self.items
    }

    pub fn rank(&self, lambda: &Partition) -> Option<usize> {
        self.index.get(lambda).copied()
    }

    /// Rank of a raw part list; `None` when it is not in the lattice.
    pub fn rank_of(&self, parts: &[usize]) -> Option<usize> {
        self.index.get(&Partition(parts.to_vec())).copied()
    }

    pub fn unrank(&self, rank: usize) -> Option<&Partition> {
        self.items.get(rank)
    }

    pub fn labels(&self) -> Vec<String> {
        self.items.iter().map(Partition::label).collect()
    }
}

impl<'a> IntoIterator for &'a PartitionSet {
    type Item = &'a Partition;
    type IntoIter = std::slice::Iter<'a, Partition>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

pub fn enumerate_partitions(m: usize, n: usize, cap: usize) -> Result<PartitionSet> {
    if m == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need m >= 1 and n >= 1, got m = {m}, n = {n}"
        )));
    }
    let size = lattice_size(m, n).unwrap_or(u128::MAX);
    if size > cap as u128 {
        return Err(Error::SizeCap {
            requested: size,
            cap,
        });
    }
    let mut items = Vec::with_capacity(size as usize);
    let mut current = Vec::with_capacity(n);
    fill(m, n, &mut current, &mut items);
    items.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.0.cmp(&a.0)));
    debug_assert_eq!(items.len() as u128, size);
    let index = items
        .iter()
        .enumerate()
        .map(|(i, p)| (p.clone(), i))
        .collect();
    Ok(PartitionSet { m, n, items, index })
}

fn fill(max_part: usize, n: usize, current: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if current.len() == n {
        out.push(Partition(current.clone()));
        return;
    }
    for part in 0..=max_part {
        current.push(part);
        fill(part, n, current, out);
        current.pop();
    }
}
