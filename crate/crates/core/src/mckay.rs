//! McKay quivers with potential for diagonal abelian actions on C^3.
//!
//! A group `Z_{n_1} x ... x Z_{n_r}` acts through one weight triple per factor;
//! characters are flattened in row-major order, so a cyclic group `Z_n` has
//! vertices `0..n`. Arrows are named `a1, a2, a3` (vertex 0), `b1, ...` when the
//! group has at most 26 elements, and `v{k}z{i}` otherwise.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Arrow, CyclicWord, Quiver, Superpotential};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicFactor {
    pub order: u32,
    pub weights: [u32; 3],
}

/// Diagonal action of a finite abelian group inside SL(3, C).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianAction {
    factors: Vec<CyclicFactor>,
}

impl AbelianAction {
    /// Cyclic group of order `n` acting with weights `w` (reduced mod `n`).
    pub fn cyclic(n: u32, w: [i64; 3]) -> Result<Self> {
        Self::product(&[(n, w)])
    }

    pub fn product(factors: &[(u32, [i64; 3])]) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidAction("no cyclic factors".into()));
        }
        let mut out = Vec::with_capacity(factors.len());
        for &(n, w) in factors {
            if n == 0 {
                return Err(Error::InvalidAction("group order must be positive".into()));
            }
            let reduce = |x: i64| x.rem_euclid(n as i64) as u32;
            let weights = [reduce(w[0]), reduce(w[1]), reduce(w[2])];
            if (weights.iter().map(|&x| x as u64).sum::<u64>()) % n as u64 != 0 {
                return Err(Error::InvalidAction(format!(
                    "weights {},{},{} do not sum to 0 mod {n}",
                    w[0], w[1], w[2]
                )));
            }
            out.push(CyclicFactor { order: n, weights });
        }
        Ok(AbelianAction { factors: out })
    }

    pub fn factors(&self) -> &[CyclicFactor] {
        &self.factors
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    /// Number of characters, i.e. vertices of the McKay quiver.
    pub fn order(&self) -> usize {
        self.factors.iter().map(|f| f.order as usize).product()
    }

    fn unflatten(&self, mut k: usize) -> Vec<u32> {
        let mut parts = vec![0; self.factors.len()];
        for (j, f) in self.factors.iter().enumerate().rev() {
            parts[j] = (k % f.order as usize) as u32;
            k /= f.order as usize;
        }
        parts
    }

    fn flatten(&self, parts: &[u32]) -> usize {
        self.factors.iter().zip(parts).fold(0, |acc, (f, &p)| acc * f.order as usize + p as usize)
    }

    /// Character hit by multiplication with the coordinate `z_i` (`i` in 1..=3).
    pub fn shift(&self, k: usize, i: usize) -> usize {
        let parts: Vec<u32> = self
            .unflatten(k)
            .iter()
            .zip(&self.factors)
            .map(|(&p, f)| (p + f.weights[i - 1]) % f.order)
            .collect();
        self.flatten(&parts)
    }

    /// Character of the monomial `z_1^a z_2^b z_3^c`.
    pub fn colour(&self, exps: [u32; 3]) -> usize {
        let parts: Vec<u32> = self
            .factors
            .iter()
            .map(|f| {
                let s: u64 = (0..3).map(|i| exps[i] as u64 * f.weights[i] as u64).sum();
                (s % f.order as u64) as u32
            })
            .collect();
        self.flatten(&parts)
    }

    pub fn vertex_name(&self, k: usize) -> String {
        k.to_string()
    }

    pub fn arrow_name(&self, k: usize, i: usize) -> String {
        if self.order() <= 26 {
            format!("{}{i}", (b'a' + k as u8) as char)
        } else {
            format!("v{k}z{i}")
        }
    }
}

impl FromStr for AbelianAction {
    type Err = Error;

    /// Parses `n:w1,w2,w3`, or several such descriptors joined by `*`.
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in s.split('*') {
            let (n, w) = part
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("action `{part}` is not of the form n:w1,w2,w3")))?;
            let n: u32 = n.trim().parse().map_err(|_| Error::Parse(format!("bad group order `{n}`")))?;
            let w = w
                .split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad weight `{x}`"))))
                .collect::<Result<Vec<_>>>()?;
            let w: [i64; 3] = w
                .try_into()
                .map_err(|_| Error::Parse(format!("action `{part}` needs exactly three weights")))?;
            factors.push((n, w));
        }
        Self::product(&factors)
    }
}

impl fmt::Display for AbelianAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.factors.iter().enumerate() {
            if j > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}:{},{},{}", c.order, c.weights[0], c.weights[1], c.weights[2])?;
        }
        Ok(())
    }
}

/// One arrow `k -> k + w_i` per character `k` and coordinate `i`.
pub fn mckay_quiver(act: &AbelianAction) -> Quiver {
    let n = act.order();
    let vertices: Vec<String> = (0..n).map(|k| act.vertex_name(k)).collect();
    let mut arrows = Vec::with_capacity(3 * n);
    for k in 0..n {
        for i in 1..=3 {
            arrows.push(Arrow {
                id: act.arrow_name(k, i),
                tail: act.vertex_name(k),
                head: act.vertex_name(act.shift(k, i)),
            });
        }
    }
    Quiver::new(vertices, arrows).expect("McKay quiver is well formed")
}

const PERMUTATIONS: [([usize; 3], i64); 6] = [
    ([1, 2, 3], 1),
    ([2, 3, 1], 1),
    ([3, 1, 2], 1),
    ([1, 3, 2], -1),
    ([3, 2, 1], -1),
    ([2, 1, 3], -1),
];

/// Antisymmetrised 3-cycles; each merged word is divided by its number of rotations.
pub fn mckay_superpotential(act: &AbelianAction) -> Superpotential {
    let mut merged: BTreeMap<CyclicWord, i64> = BTreeMap::new();
    for k in 0..act.order() {
        for (sigma, sign) in PERMUTATIONS {
            let mut v = k;
            let mut word = Vec::with_capacity(3);
            for i in sigma {
                word.push(act.arrow_name(v, i));
                v = act.shift(v, i);
            }
            debug_assert_eq!(v, k);
            *merged.entry(CyclicWord::new(word).expect("nonempty")).or_insert(0) += sign;
        }
    }
    let mut w = Superpotential::zero();
    for (word, c) in merged {
        let r = word.distinct_rotations() as i64;
        debug_assert_eq!(c % r, 0);
        w.add(word, c / r);
    }
    w
}

pub fn mckay_quiver_with_potential(act: &AbelianAction) -> Quiver {
    mckay_quiver(act)
        .with_potential(mckay_superpotential(act))
        .expect("McKay potential lives on the McKay quiver")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub source: usize,
    pub coordinate: usize,
    pub target: usize,
}

/// Where `z_i` sends each isotypic summand `M_k`.
pub fn character_decomposition_table(act: &AbelianAction) -> Vec<TableEntry> {
    (0..act.order())
        .flat_map(|k| (1..=3).map(move |i| (k, i)))
        .map(|(k, i)| TableEntry { source: k, coordinate: i, target: act.shift(k, i) })
        .collect()
}
