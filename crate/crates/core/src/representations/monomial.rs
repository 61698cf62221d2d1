use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::StabilityParameter;
use crate::algebra::{Quiver, Relation};
use crate::{Error, Result};

/// Image of the framing arrow: a basis element at `vertex`, or zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Framing {
    pub vertex: String,
    pub target: Option<usize>,
}

/// A representation in which every arrow sends basis elements to basis
/// elements or to zero, injectively.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialRepresentation {
    /// Vertex of each basis element.
    pub basis: Vec<String>,
    /// Arrow id to `(source, target)` basis index pairs.
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<(usize, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<Framing>,
}

impl MonomialRepresentation {
    pub fn new(basis: Vec<String>) -> Self {
        MonomialRepresentation { basis, ..Default::default() }
    }

    pub fn with_action(mut self, arrow: &str, pairs: &[(usize, usize)]) -> Self {
        self.arrows.entry(arrow.to_string()).or_default().extend_from_slice(pairs);
        self
    }

    pub fn framed(mut self, vertex: &str, target: Option<usize>) -> Self {
        self.framing = Some(Framing { vertex: vertex.to_string(), target });
        self
    }

    pub fn is_framed(&self) -> bool {
        self.framing.is_some()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn dimension_vector(&self, q: &Quiver) -> Result<Vec<u32>> {
        let mut dims = vec![0u32; q.vertices().len()];
        for v in &self.basis {
            let i = q.vertex_position(v).ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            dims[i] += 1;
        }
        Ok(dims)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("representation serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("representation JSON: {e}")))
    }

    /// Checks vertex labels, arrow endpoints and injectivity against `q`.
    pub fn validate(&self, q: &Quiver) -> Result<()> {
        let bad = |m: String| Error::InvalidRepresentation(m);
        for v in &self.basis {
            if !q.has_vertex(v) {
                return Err(Error::UnknownVertex(v.clone()));
            }
        }
        let n = self.basis.len();
        for (id, pairs) in &self.arrows {
            let a = q.arrow(id)?;
            let mut sources = BTreeSet::new();
            let mut targets = BTreeSet::new();
            for &(s, t) in pairs {
                if s >= n || t >= n {
                    return Err(bad(format!("arrow `{id}` uses basis index out of range")));
                }
                if self.basis[s] != a.tail || self.basis[t] != a.head {
                    return Err(bad(format!("arrow `{id}` maps {s} -> {t} across the wrong vertices")));
                }
                if !sources.insert(s) || !targets.insert(t) {
                    return Err(bad(format!("arrow `{id}` is not a partial injection")));
                }
            }
        }
        if let Some(f) = &self.framing {
            if !q.has_vertex(&f.vertex) {
                return Err(Error::UnknownVertex(f.vertex.clone()));
            }
            if let Some(t) = f.target {
                if t >= n || self.basis[t] != f.vertex {
                    return Err(bad(format!("framing target {t} is not at vertex `{}`", f.vertex)));
                }
            }
        }
        if n + usize::from(self.is_framed()) > 128 {
            return Err(Error::TooLarge(format!("{n} basis elements (at most 127 supported)")));
        }
        Ok(())
    }

    fn image_table(&self) -> BTreeMap<&str, Vec<Option<usize>>> {
        self.arrows
            .iter()
            .map(|(id, pairs)| {
                let mut img = vec![None; self.basis.len()];
                for &(s, t) in pairs {
                    img[s] = Some(t);
                }
                (id.as_str(), img)
            })
            .collect()
    }
}

/// Arrow-closed subsets of the basis (plus the framing element, if any).
struct ClosureLattice {
    n: usize,
    reach: Vec<u128>,
    coreach: Vec<u128>,
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

impl ClosureLattice {
    /// Element `basis.len()` is the framing vector when `rep` is framed.
    fn new(rep: &MonomialRepresentation) -> Self {
        let n = rep.basis.len() + usize::from(rep.is_framed());
        let mut succ = vec![0u128; n];
        for pairs in rep.arrows.values() {
            for &(s, t) in pairs {
                succ[s] |= 1 << t;
            }
        }
        if let Some(Framing { target: Some(t), .. }) = &rep.framing {
            succ[rep.basis.len()] |= 1 << t;
        }
        let mut reach: Vec<u128> = (0..n).map(|i| succ[i] | (1 << i)).collect();
        loop {
            let mut changed = false;
            for i in 0..n {
                let mut r = reach[i];
                let mut bits = reach[i];
                while bits != 0 {
                    let j = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    r |= reach[j];
                }
                if r != reach[i] {
                    reach[i] = r;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut coreach = vec![0u128; n];
        for i in 0..n {
            let mut bits = reach[i];
            while bits != 0 {
                let j = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                coreach[j] |= 1 << i;
            }
        }
        ClosureLattice { n, reach, coreach }
    }

    fn for_each<F: FnMut(u128) -> ControlFlow<()>>(&self, f: &mut F) -> ControlFlow<()> {
        self.descend(0, 0, f)
    }

    fn descend<F: FnMut(u128) -> ControlFlow<()>>(&self, inside: u128, outside: u128, f: &mut F) -> ControlFlow<()> {
        let all = full_mask(self.n);
        let open = all & !(inside | outside);
        if open == 0 {
            return f(inside);
        }
        let e = open.trailing_zeros() as usize;
        let with = inside | self.reach[e];
        if with & outside == 0 {
            self.descend(with, outside, f)?;
        }
        let without = outside | self.coreach[e];
        if without & inside == 0 {
            self.descend(inside, without, f)?;
        }
        ControlFlow::Continue(())
    }
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            i
        })
    })
}

fn mask_to_indices(mask: u128) -> Vec<usize> {
    bits(mask).collect()
}

/// Dimension vectors of all arrow-closed subsets; framed representations get an
/// extra final coordinate for the framing vertex.
pub fn subrep_dimension_vectors(q: &Quiver, rep: &MonomialRepresentation) -> Result<BTreeSet<Vec<u32>>> {
    rep.validate(q)?;
    let nv = q.vertices().len();
    let vertex: Vec<usize> = element_vertices(q, rep);
    let lattice = ClosureLattice::new(rep);
    let width = nv + usize::from(rep.is_framed());
    let mut out = BTreeSet::new();
    let _ = lattice.for_each(&mut |m| {
        let mut d = vec![0u32; width];
        for i in bits(m) {
            d[vertex[i]] += 1;
        }
        out.insert(d);
        ControlFlow::Continue(())
    });
    Ok(out)
}

fn element_vertices(q: &Quiver, rep: &MonomialRepresentation) -> Vec<usize> {
    let nv = q.vertices().len();
    let mut v: Vec<usize> =
        rep.basis.iter().map(|b| q.vertex_position(b).expect("validated")).collect();
    if rep.is_framed() {
        v.push(nv);
    }
    v
}

/// Sign required of `theta(U)` for proper nonzero subrepresentations `U`.
///
/// `SubobjectsNegative` makes framed modules with negative gauge parameters
/// stable exactly when they are generated by the framing vector.
/// `SubobjectsPositive` is the opposite inequality.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityConvention {
    #[default]
    SubobjectsNegative,
    SubobjectsPositive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Stable,
    Semistable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub classification: Classification,
    /// Basis indices of a subrepresentation breaking strict stability; index
    /// `basis.len()` denotes the framing vector.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_subset: Option<Vec<usize>>,
}

/// Multiplies a rational vector by the lcm of its denominators.
fn integer_weights(values: &[BigRational]) -> Result<Vec<i128>> {
    let lcm = values.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    values
        .iter()
        .map(|x| {
            (x.numer() * (&lcm / x.denom()))
                .to_i128()
                .ok_or_else(|| Error::TooLarge("stability parameter does not fit 128 bits".into()))
        })
        .collect()
}

/// King stability of a monomial representation.
///
/// Unframed representations need `sum theta_v alpha_v = 0`. Framed ones take
/// `theta` on the base vertices and use `theta_inf` from the framing rule.
pub fn is_semistable(
    q: &Quiver,
    rep: &MonomialRepresentation,
    theta: &StabilityParameter,
    convention: StabilityConvention,
) -> Result<StabilityReport> {
    rep.validate(q)?;
    let nv = q.vertices().len();
    if theta.len() != nv {
        return Err(Error::DimensionMismatch(format!("parameter has {} entries, quiver has {nv} vertices", theta.len())));
    }
    let mut w = integer_weights(&theta.0)?;
    let alpha = rep.dimension_vector(q)?;
    let total: i128 = w.iter().zip(&alpha).map(|(x, &a)| x * a as i128).sum();
    if rep.is_framed() {
        w.push(-total);
    } else if total != 0 {
        return Err(Error::Inadmissible(format!("theta pairs to {} with the dimension vector", theta.pair(&alpha.iter().map(|&a| a as i64).collect::<Vec<_>>())?)));
    }
    let vertex = element_vertices(q, rep);
    let lattice = ClosureLattice::new(rep);
    let full = full_mask(lattice.n);
    let sign = match convention {
        StabilityConvention::SubobjectsNegative => -1,
        StabilityConvention::SubobjectsPositive => 1,
    };
    let mut equality: Option<u128> = None;
    let mut violation: Option<u128> = None;
    let _ = lattice.for_each(&mut |m| {
        if m == 0 || m == full {
            return ControlFlow::Continue(());
        }
        let weight: i128 = bits(m).map(|i| w[vertex[i]]).sum::<i128>() * sign;
        if weight < 0 {
            violation = Some(m);
            return ControlFlow::Break(());
        }
        if weight == 0 && equality.is_none() {
            equality = Some(m);
        }
        ControlFlow::Continue(())
    });
    let (classification, subset) = match (violation, equality) {
        (Some(m), _) => (Classification::Unstable, Some(m)),
        (None, Some(m)) => (Classification::Semistable, Some(m)),
        (None, None) => (Classification::Stable, None),
    };
    Ok(StabilityReport { classification, violating_subset: subset.map(mask_to_indices) })
}

/// Whether the framing vector generates the whole module.
pub fn is_cyclic(rep: &MonomialRepresentation) -> Result<bool> {
    let framing = rep.framing.as_ref().ok_or(Error::NotFramed)?;
    let n = rep.basis.len();
    let Some(start) = framing.target else {
        return Ok(n == 0);
    };
    if start >= n {
        return Err(Error::InvalidRepresentation(format!("framing target {start} out of range")));
    }
    let mut succ = vec![Vec::new(); n];
    for pairs in rep.arrows.values() {
        for &(s, t) in pairs {
            if s < n && t < n {
                succ[s].push(t);
            }
        }
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(b) = queue.pop_front() {
        for &t in &succ[b] {
            if !seen[t] {
                seen[t] = true;
                count += 1;
                queue.push_back(t);
            }
        }
    }
    Ok(count == n)
}

/// Whether every relation acts as zero on every basis element.
pub fn check_relations(rep: &MonomialRepresentation, rels: &[Relation]) -> bool {
    let images = rep.image_table();
    let apply = |b: usize, arrows: &[String]| -> Option<usize> {
        arrows.iter().try_fold(b, |cur, id| images.get(id.as_str()).and_then(|img| img.get(cur).copied().flatten()))
    };
    for rel in rels {
        for (b, v) in rep.basis.iter().enumerate() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for (path, c) in rel.element.terms() {
                if path.source() != v {
                    continue;
                }
                if let Some(t) = apply(b, path.arrows()) {
                    *acc.entry(t).or_insert(0) += c;
                }
            }
            if acc.values().any(|&c| c != 0) {
                return false;
            }
        }
    }
    true
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Stable => "stable",
            Classification::Semistable => "semistable",
            Classification::Unstable => "unstable",
        }
    }
}
