//! Molten-crystal enumeration of framed cyclic modules.
//!
//! Atoms are path classes starting at the framing vertex. For `C^3/G` an atom
//! is a box `(i, j, k)` standing for `z_1^i z_2^j z_3^k`; for the conifold it is
//! an arrow-count vector `(nA, nB, nC, nD)` with `nA + nB - nC - nD` in `{0, 1}`.
//! A configuration is a finite order ideal of atoms: every atom comes with all
//! atoms it is reached from by a single arrow.
//!
//! Ideals are enumerated by reverse search: each nonempty ideal has a unique
//! parent obtained by deleting its maximal atom of largest index, so the tree
//! of ideals is walked without duplicates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{builtins, Quiver};
use crate::mckay::{mckay_quiver_with_potential, AbelianAction};
use crate::representations::MonomialRepresentation;
use crate::series::FormalSeries;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CrystalFamily {
    /// `C^3` modulo a diagonal abelian group; `1:0,0,0` is `C^3` itself.
    Orbifold(AbelianAction),
    Conifold,
}

impl CrystalFamily {
    pub fn c3() -> Self {
        CrystalFamily::Orbifold(AbelianAction::cyclic(1, [0, 0, 0]).expect("trivial action"))
    }

    /// `c3`, `conifold`, or an action descriptor such as `3:1,1,1`.
    pub fn parse(text: &str) -> Result<Self> {
        match text {
            "c3" => Ok(Self::c3()),
            "conifold" => Ok(CrystalFamily::Conifold),
            other => Ok(CrystalFamily::Orbifold(other.parse()?)),
        }
    }

    pub fn quiver(&self) -> Quiver {
        match self {
            CrystalFamily::Orbifold(act) => mckay_quiver_with_potential(act),
            CrystalFamily::Conifold => builtins::conifold(),
        }
    }

    pub fn colours(&self) -> usize {
        match self {
            CrystalFamily::Orbifold(act) => act.order(),
            CrystalFamily::Conifold => 2,
        }
    }

    /// Series variables: `q` for a single colour, `q0, q1, ...` otherwise.
    pub fn variables(&self) -> Vec<String> {
        match self.colours() {
            1 => vec!["q".to_string()],
            n => (0..n).map(|v| format!("q{v}")).collect(),
        }
    }

    fn width(&self) -> usize {
        match self {
            CrystalFamily::Orbifold(_) => 3,
            CrystalFamily::Conifold => 4,
        }
    }

    fn colour(&self, atom: &[u32]) -> Option<usize> {
        match self {
            CrystalFamily::Orbifold(act) => Some(act.colour([atom[0], atom[1], atom[2]])),
            CrystalFamily::Conifold => {
                let c = atom[0] as i64 + atom[1] as i64 - atom[2] as i64 - atom[3] as i64;
                (c == 0 || c == 1).then_some(c as usize)
            }
        }
    }

    /// Generators that act on an atom of the given colour.
    fn generators(&self, colour: usize) -> &'static [usize] {
        match self {
            CrystalFamily::Orbifold(_) => &[0, 1, 2],
            CrystalFamily::Conifold if colour == 0 => &[0, 1],
            CrystalFamily::Conifold => &[2, 3],
        }
    }

    fn arrow_name(&self, colour: usize, generator: usize) -> String {
        match self {
            CrystalFamily::Orbifold(act) => act.arrow_name(colour, generator + 1),
            CrystalFamily::Conifold => ["A", "B", "C", "D"][generator].to_string(),
        }
    }

    fn predecessors(&self, atom: &[u32]) -> Vec<Vec<u32>> {
        (0..self.width())
            .filter(|&g| atom[g] > 0)
            .filter_map(|g| {
                let mut p = atom.to_vec();
                p[g] -= 1;
                let c = self.colour(&p)?;
                self.generators(c).contains(&g).then_some(p)
            })
            .collect()
    }
}

impl fmt::Display for CrystalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrystalFamily::Orbifold(act) if act.order() == 1 => write!(f, "c3"),
            CrystalFamily::Orbifold(act) => write!(f, "{act}"),
            CrystalFamily::Conifold => write!(f, "conifold"),
        }
    }
}

/// All atoms up to a depth, indexed breadth first.
#[derive(Clone, Debug)]
pub struct CrystalModel {
    family: CrystalFamily,
    atoms: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    colour: Vec<usize>,
    preds: Vec<Vec<usize>>,
    succ: Vec<Vec<usize>>,
}

impl CrystalModel {
    /// Atoms whose path length is at most `max_depth`.
    pub fn new(family: CrystalFamily, max_depth: usize) -> Self {
        let root = vec![0u32; family.width()];
        let mut atoms = vec![root.clone()];
        let mut index = HashMap::from([(root, 0usize)]);
        let mut frontier = vec![0usize];
        for _ in 0..max_depth {
            let mut next = Vec::new();
            for &i in &frontier {
                let atom = atoms[i].clone();
                let c = family.colour(&atom).expect("stored atoms are valid");
                for &g in family.generators(c) {
                    let mut s = atom.clone();
                    s[g] += 1;
                    if !index.contains_key(&s) {
                        index.insert(s.clone(), atoms.len());
                        next.push(atoms.len());
                        atoms.push(s);
                    }
                }
            }
            frontier = next;
        }
        let colour: Vec<usize> = atoms.iter().map(|a| family.colour(a).expect("valid")).collect();
        let preds: Vec<Vec<usize>> = atoms
            .iter()
            .map(|a| family.predecessors(a).iter().map(|p| index[p]).collect())
            .collect();
        let mut succ = vec![Vec::new(); atoms.len()];
        for (i, ps) in preds.iter().enumerate() {
            for &p in ps {
                succ[p].push(i);
            }
        }
        CrystalModel { family, atoms, index, colour, preds, succ }
    }

    pub fn family(&self) -> &CrystalFamily {
        &self.family
    }

    pub fn atoms(&self) -> &[Vec<u32>] {
        &self.atoms
    }

    pub fn index_of(&self, atom: &[u32]) -> Option<usize> {
        self.index.get(atom).copied()
    }

    /// Number of atoms per path length, starting at the root.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for a in &self.atoms {
            let d = a.iter().sum::<u32>() as usize;
            if out.len() <= d {
                out.resize(d + 1, 0);
            }
            out[d] += 1;
        }
        out
    }
}

/// A finite order ideal of atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrystalConfiguration {
    pub family: CrystalFamily,
    pub atoms: Vec<Vec<u32>>,
}

impl CrystalConfiguration {
    pub fn new(family: CrystalFamily, mut atoms: Vec<Vec<u32>>) -> Result<Self> {
        atoms.sort();
        atoms.dedup();
        let width = family.width();
        for a in &atoms {
            if a.len() != width || family.colour(a).is_none() {
                return Err(Error::InvalidConfiguration(format!("{a:?} is not an atom of {family}")));
            }
            for p in family.predecessors(a) {
                if atoms.binary_search(&p).is_err() {
                    return Err(Error::InvalidConfiguration(format!("{a:?} is present without {p:?}")));
                }
            }
        }
        Ok(CrystalConfiguration { family, atoms })
    }

    pub fn dimension_vector(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.family.colours()];
        for a in &self.atoms {
            d[self.family.colour(a).expect("validated")] += 1;
        }
        d
    }
}

/// Framed monomial module of a configuration: arrows translate atoms, the
/// framing arrow hits the root atom.
pub fn configuration_to_module(c: &CrystalConfiguration) -> MonomialRepresentation {
    let fam = &c.family;
    let position: HashMap<&Vec<u32>, usize> = c.atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let basis: Vec<String> = c.atoms.iter().map(|a| fam.colour(a).expect("valid").to_string()).collect();
    let mut rep = MonomialRepresentation::new(basis);
    for (i, a) in c.atoms.iter().enumerate() {
        let col = fam.colour(a).expect("valid");
        for &g in fam.generators(col) {
            let mut s = a.clone();
            s[g] += 1;
            if let Some(&j) = position.get(&s) {
                rep = rep.with_action(&fam.arrow_name(col, g), &[(i, j)]);
            }
        }
    }
    let root = vec![0u32; fam.width()];
    rep.framed("0", position.get(&root).copied())
}

/// Counts of configurations by dimension vector.
pub type ConfigurationCounts = BTreeMap<Vec<u32>, u64>;

struct Search<'m> {
    model: &'m CrystalModel,
    in_ideal: Vec<bool>,
    missing: Vec<u8>,
    addable: Vec<usize>,
    maximal: Vec<usize>,
    dims: Vec<u32>,
    stack: Vec<usize>,
}

impl<'m> Search<'m> {
    fn new(model: &'m CrystalModel) -> Self {
        Search {
            model,
            in_ideal: vec![false; model.atoms.len()],
            missing: model.preds.iter().map(|p| p.len() as u8).collect(),
            addable: vec![0],
            maximal: Vec::new(),
            dims: vec![0; model.family.colours()],
            stack: Vec::new(),
        }
    }

    fn size(&self) -> usize {
        self.stack.len()
    }

    /// `a` is the largest maximal atom of the extended ideal.
    fn canonical(&self, a: usize) -> bool {
        let preds = &self.model.preds[a];
        self.maximal.iter().all(|&m| m < a || preds.contains(&m))
    }

    fn push(&mut self, a: usize) -> Vec<usize> {
        let m = self.model;
        self.in_ideal[a] = true;
        self.dims[m.colour[a]] += 1;
        self.stack.push(a);
        let pos = self.addable.iter().position(|&x| x == a).expect("addable");
        self.addable.remove(pos);
        for &s in &m.succ[a] {
            self.missing[s] -= 1;
            if self.missing[s] == 0 {
                self.addable.push(s);
            }
        }
        let old = self.maximal.clone();
        self.maximal.retain(|x| !m.preds[a].contains(x));
        self.maximal.push(a);
        old
    }

    fn pop(&mut self, a: usize, old_maximal: Vec<usize>) {
        let m = self.model;
        for &s in m.succ[a].iter().rev() {
            if self.missing[s] == 0 {
                let pos = self.addable.iter().rposition(|&x| x == s).expect("addable");
                self.addable.remove(pos);
            }
            self.missing[s] += 1;
        }
        self.addable.push(a);
        self.addable.sort_unstable();
        self.maximal = old_maximal;
        self.dims[m.colour[a]] -= 1;
        self.in_ideal[a] = false;
        self.stack.pop();
    }

    fn walk<F: FnMut(&Search<'m>)>(&mut self, limit: usize, visit: &mut F) {
        visit(self);
        if self.size() == limit {
            return;
        }
        let mut candidates = self.addable.clone();
        candidates.sort_unstable();
        for a in candidates {
            if !self.canonical(a) {
                continue;
            }
            let old = self.push(a);
            self.walk(limit, visit);
            self.pop(a, old);
        }
    }

    /// Ideals of exactly `depth` atoms, as atom stacks in insertion order.
    fn collect_at(&mut self, depth: usize, out: &mut Vec<Vec<usize>>) {
        if self.size() == depth {
            out.push(self.stack.clone());
            return;
        }
        let mut candidates = self.addable.clone();
        candidates.sort_unstable();
        for a in candidates {
            if !self.canonical(a) {
                continue;
            }
            let old = self.push(a);
            self.collect_at(depth, out);
            self.pop(a, old);
        }
    }
}

/// Exact numbers of configurations with at most `size` atoms, by dimension vector.
pub fn enumerate_configurations(family: &CrystalFamily, size: usize) -> ConfigurationCounts {
    let model = CrystalModel::new(family.clone(), size.saturating_sub(1));
    let split = size.min(4);
    let mut counts = ConfigurationCounts::new();
    let mut seeds = Vec::new();
    {
        let mut s = Search::new(&model);
        s.walk(split, &mut |st| {
            *counts.entry(st.dims.clone()).or_insert(0) += 1;
        });
        s.collect_at(split, &mut seeds);
    }
    if size > split {
        let partials: Vec<ConfigurationCounts> = seeds
            .par_iter()
            .map(|stack| {
                let mut s = Search::new(&model);
                let mut olds = Vec::new();
                for &a in stack {
                    olds.push(s.push(a));
                }
                let mut local = ConfigurationCounts::new();
                let root_size = s.size();
                s.walk(size, &mut |st| {
                    if st.size() > root_size {
                        *local.entry(st.dims.clone()).or_insert(0) += 1;
                    }
                });
                local
            })
            .collect();
        for part in partials {
            for (k, v) in part {
                *counts.entry(k).or_insert(0) += v;
            }
        }
    }
    counts
}

/// Every configuration with at most `size` atoms, in a deterministic order.
pub fn list_configurations(family: &CrystalFamily, size: usize) -> Vec<CrystalConfiguration> {
    let model = CrystalModel::new(family.clone(), size.saturating_sub(1));
    let mut out = Vec::new();
    let mut s = Search::new(&model);
    s.walk(size, &mut |st| {
        let mut atoms: Vec<Vec<u32>> = st.stack.iter().map(|&i| model.atoms[i].clone()).collect();
        atoms.sort();
        out.push(CrystalConfiguration { family: family.clone(), atoms });
    });
    out
}

/// Weight attached to a configuration of a given dimension vector.
#[derive(Clone)]
pub enum SignConvention {
    Unsigned,
    /// `(-1)^{s(alpha)}` with `s(alpha) = sum c_v alpha_v`.
    Linear(Vec<i64>),
    Custom(Arc<dyn Fn(&[u32]) -> i64 + Send + Sync>),
}

impl SignConvention {
    /// `(-1)^{sum alpha_v}`.
    pub fn total_dimension(colours: usize) -> Self {
        SignConvention::Linear(vec![1; colours])
    }

    fn sign(&self, alpha: &[u32]) -> i64 {
        let s = match self {
            SignConvention::Unsigned => 0,
            SignConvention::Linear(c) => c.iter().zip(alpha).map(|(c, &a)| c * a as i64).sum(),
            SignConvention::Custom(f) => f(alpha),
        };
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SignConvention::Unsigned => "unsigned".into(),
            SignConvention::Linear(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                format!("dimension:{}", parts.join(","))
            }
            SignConvention::Custom(_) => "custom".into(),
        }
    }
}

impl fmt::Debug for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignConvention({})", self.describe())
    }
}

/// `sum_configurations sign(alpha) prod q_v^{alpha_v}` up to total degree `order`.
pub fn ncdt_series(family: &CrystalFamily, order: u32, sign: &SignConvention) -> FormalSeries {
    let counts = enumerate_configurations(family, order as usize);
    let mut s = FormalSeries::zero(&family.variables(), order);
    for (alpha, n) in counts {
        let exps: Vec<i32> = alpha.iter().map(|&a| a as i32).collect();
        s.add_term(&exps, BigInt::from(n) * sign.sign(&alpha));
    }
    s
}

/// One factor `(1 - m)^e` or `(1 + m)^e` of an infinite product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductFactor {
    pub monomial: Vec<i32>,
    pub exponent: i64,
    pub plus: bool,
}

impl ProductFactor {
    pub fn minus(monomial: Vec<i32>, exponent: i64) -> Self {
        ProductFactor { monomial, exponent, plus: false }
    }

    pub fn plus(monomial: Vec<i32>, exponent: i64) -> Self {
        ProductFactor { monomial, exponent, plus: true }
    }
}

/// Expands a finite product of binomial factors inside the truncation of `template`.
pub fn product_series(template: &FormalSeries, factors: &[ProductFactor]) -> Result<FormalSeries> {
    let order = template.order() as i64;
    let mut acc = template.empty_like();
    acc.add_term(&vec![0; template.vars().len()], BigInt::one());
    for f in factors {
        if f.monomial.len() != template.vars().len() {
            return Err(Error::InvalidSeries("factor monomial has the wrong number of variables".into()));
        }
        let deg = template.weighted_degree(&f.monomial);
        if deg <= 0 {
            return Err(Error::InvalidSeries(format!("factor monomial {:?} has no positive degree", f.monomial)));
        }
        if deg > order || f.exponent == 0 {
            continue;
        }
        let mut expansion = template.empty_like();
        let mut binom = BigInt::one();
        let e = BigInt::from(f.exponent);
        for j in 0..=(order / deg) {
            if j > 0 {
                binom = binom * (&e - BigInt::from(j - 1)) / BigInt::from(j);
            }
            if binom.is_zero() {
                break;
            }
            let exps: Vec<i32> = f.monomial.iter().map(|&m| m * j as i32).collect();
            let c = if f.plus || j % 2 == 0 { binom.clone() } else { -binom.clone() };
            expansion.add_term(&exps, c);
        }
        acc = acc.mul(&expansion)?;
    }
    Ok(acc)
}
