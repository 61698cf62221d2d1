use std::fmt;

use serde::Serialize;

use crate::{Error, Result};

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; increasing parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(Error::Parse(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// `lambda_i` for `i >= 0`, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn transpose(&self) -> Self {
        let width = self.part(0) as usize;
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p as usize > j).count() as u32).collect())
    }

    /// `kappa = sum lambda_i (lambda_i - 2i + 1)`, rows counted from 1.
    pub fn kappa(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &p)| p as i64 * (p as i64 - 2 * (i as i64 + 1) + 1))
            .sum()
    }

    /// `n(lambda) = sum (i - 1) lambda_i`.
    pub fn n(&self) -> i64 {
        self.0.iter().enumerate().map(|(i, &p)| i as i64 * p as i64).sum()
    }

    pub fn hook_lengths(&self) -> Vec<u32> {
        let t = self.transpose();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                out.push(row - j as u32 + t.part(j) - i as u32 - 1);
            }
        }
        out
    }

    /// Young diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Partitions of `n` in decreasing lexicographic order.
    pub fn of_size(n: u32) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        fill(n, n, &mut current, &mut out);
        out
    }

    /// All partitions of size at most `n`, by size.
    pub fn up_to(n: u32) -> Vec<Partition> {
        (0..=n).flat_map(Self::of_size).collect()
    }

    /// All partitions contained in `self`.
    pub fn subpartitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut current = Vec::new();
        sub(self, 0, u32::MAX, &mut current, &mut out);
        out
    }
}

fn fill(n: u32, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for p in (1..=n.min(max)).rev() {
        current.push(p);
        fill(n - p, p, current, out);
        current.pop();
    }
}

fn sub(outer: &Partition, i: usize, max: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    out.push(Partition(current.clone()));
    if i == outer.length() {
        return;
    }
    for p in 1..=outer.part(i).min(max) {
        current.push(p);
        sub(outer, i + 1, p, current, out);
        current.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
