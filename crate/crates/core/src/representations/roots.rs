use std::collections::{BTreeSet, VecDeque};

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::StabilityParameter;
use crate::algebra::Quiver;
use crate::{Error, Result};

/// Symmetric generalised Cartan matrix of a quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CartanMatrix {
    labels: Vec<String>,
    entries: Vec<Vec<i64>>,
}

impl CartanMatrix {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if n == 0 || labels.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan("matrix must be square and labelled".into()));
        }
        for i in 0..n {
            let d = entries[i][i];
            if d > 2 || d % 2 != 0 {
                return Err(Error::InvalidCartan(format!("diagonal entry {d} is not 2 - 2*loops")));
            }
            for j in 0..n {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidCartan("matrix is not symmetric".into()));
                }
                if i != j && entries[i][j] > 0 {
                    return Err(Error::InvalidCartan("off-diagonal entries must be <= 0".into()));
                }
            }
        }
        Ok(CartanMatrix { labels, entries })
    }

    /// Parses rows separated by `;`, entries by `,`, e.g. `2,-2;-2,2`.
    pub fn parse(text: &str) -> Result<Self> {
        let entries = text
            .split(';')
            .map(|row| {
                row.split(',')
                    .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad Cartan entry `{x}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..entries.len()).map(|i| i.to_string()).collect();
        Self::new(labels, entries)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// Symmetric bilinear form `(a, b) = a^T C b`.
    pub fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.size() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.size() {
                s += a[i] * self.entries[i][j] * b[j];
            }
        }
        s
    }

    /// `(a, e_i)`.
    pub fn pair_simple(&self, a: &[i64], i: usize) -> i64 {
        (0..self.size()).map(|j| a[j] * self.entries[j][i]).sum()
    }

    fn reflect(&self, a: &[i64], i: usize) -> Vec<i64> {
        let mut out = a.to_vec();
        out[i] -= self.pair_simple(a, i);
        out
    }

    fn has_connected_support(&self, a: &[i64]) -> bool {
        let support: Vec<usize> = (0..self.size()).filter(|&i| a[i] != 0).collect();
        let Some(&start) = support.first() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for &j in &support {
                if self.entries[i][j] != 0 && seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        seen.len() == support.len()
    }
}

/// `c_vv = 2 - 2 loops(v)`, `c_vw = -(arrows v -> w) - (arrows w -> v)`.
pub fn cartan_matrix(q: &Quiver) -> CartanMatrix {
    let vs = q.vertices();
    let entries = vs
        .iter()
        .map(|v| {
            vs.iter()
                .map(|w| {
                    if v == w {
                        2 - 2 * q.loops_at(v) as i64
                    } else {
                        -((q.arrow_count(v, w) + q.arrow_count(w, v)) as i64)
                    }
                })
                .collect()
        })
        .collect();
    CartanMatrix::new(vs.to_vec(), entries).expect("quiver Cartan matrices are valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RootKind {
    Real,
    Imaginary,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Root {
    pub vector: Vec<i64>,
    pub kind: RootKind,
    /// Value of the Tits form `(alpha, alpha)`.
    pub norm: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.vector.iter().sum()
    }
}

const MAX_CANDIDATES: u128 = 20_000_000;

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Positive roots of height at most `height_bound`.
///
/// Real roots are the reflection orbits of simple roots at loop-free vertices.
/// Imaginary roots are the reflection orbits of the fundamental set: vectors
/// with connected support and `(alpha, e_i) <= 0` for every `i`. Orbits are
/// closed inside the height bound, which loses nothing because every positive
/// root is reached from its orbit's minimum through increasing heights.
pub fn positive_roots(c: &CartanMatrix, height_bound: u32) -> Result<Vec<Root>> {
    if height_bound == 0 {
        return Err(Error::InvalidCartan("height bound must be at least 1".into()));
    }
    let n = c.size();
    if binomial(height_bound as u128 + n as u128, n as u128) > MAX_CANDIDATES {
        return Err(Error::TooLarge(format!("{n} vertices at height {height_bound}")));
    }
    let bound = height_bound as i64;
    let reflectable: Vec<usize> = (0..n).filter(|&i| c.entries[i][i] == 2).collect();

    let mut seeds_real = Vec::new();
    for &i in &reflectable {
        let mut e = vec![0; n];
        e[i] = 1;
        seeds_real.push(e);
    }
    let mut seeds_imag = Vec::new();
    let mut current = vec![0i64; n];
    lattice_points(n, bound, 0, &mut current, &mut |a| {
        if c.has_connected_support(a) && (0..n).all(|i| c.pair_simple(a, i) <= 0) {
            seeds_imag.push(a.to_vec());
        }
    });

    let close = |seeds: Vec<Vec<i64>>| -> BTreeSet<Vec<i64>> {
        let mut seen: BTreeSet<Vec<i64>> = seeds.iter().cloned().collect();
        let mut queue: VecDeque<Vec<i64>> = seeds.into();
        while let Some(a) = queue.pop_front() {
            for &i in &reflectable {
                let b = c.reflect(&a, i);
                let h: i64 = b.iter().sum();
                if b.iter().all(|&x| x >= 0) && h > 0 && h <= bound && !seen.contains(&b) {
                    seen.insert(b.clone());
                    queue.push_back(b);
                }
            }
        }
        seen
    };
    let mut roots: Vec<Root> = close(seeds_real)
        .into_iter()
        .map(|v| Root { norm: c.form(&v, &v), vector: v, kind: RootKind::Real })
        .chain(close(seeds_imag).into_iter().map(|v| Root { norm: c.form(&v, &v), vector: v, kind: RootKind::Imaginary }))
        .collect();
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.vector.cmp(&a.vector)));
    Ok(roots)
}

fn lattice_points<F: FnMut(&[i64])>(n: usize, budget: i64, i: usize, current: &mut Vec<i64>, f: &mut F) {
    if i == n {
        if current.iter().any(|&x| x != 0) {
            f(current);
        }
        return;
    }
    for x in 0..=budget {
        current[i] = x;
        lattice_points(n, budget - x, i + 1, current, f);
    }
    current[i] = 0;
}

/// Roots whose walls separate two parameters, and those lying on either wall.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WallReport {
    pub separating: Vec<Root>,
    pub on_wall_first: Vec<Root>,
    pub on_wall_second: Vec<Root>,
}

pub fn walls_between(theta1: &StabilityParameter, theta2: &StabilityParameter, roots: &[Root]) -> Result<WallReport> {
    if theta1.len() != theta2.len() {
        return Err(Error::DimensionMismatch("parameters live on different quivers".into()));
    }
    let mut report = WallReport::default();
    for r in roots {
        let a = theta1.pair(&r.vector)?;
        let b = theta2.pair(&r.vector)?;
        if a.is_zero() {
            report.on_wall_first.push(r.clone());
        }
        if b.is_zero() {
            report.on_wall_second.push(r.clone());
        }
        if a.is_positive() && b.is_negative() || a.is_negative() && b.is_positive() {
            report.separating.push(r.clone());
        }
    }
    Ok(report)
}
