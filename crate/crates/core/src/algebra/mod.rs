//! Quivers, paths, superpotentials and their relations.

pub mod builtins;
mod potential;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use potential::{
    cyclic_derivative, relations_from_potential, CyclicWord, PathAlgebraElement, Relation,
    Superpotential,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub tail: String,
    pub head: String,
}

/// A finite quiver with an (optionally empty) superpotential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    potential: Superpotential,
    arrow_index: BTreeMap<String, usize>,
    vertex_index: BTreeMap<String, usize>,
}

impl Quiver {
    pub fn new<V, A>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = Arrow>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::Duplicate(format!("vertex `{v}`")));
            }
        }
        let arrows: Vec<Arrow> = arrows.into_iter().collect();
        let mut arrow_index = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            for end in [&a.tail, &a.head] {
                if !vertex_index.contains_key(end) {
                    return Err(Error::UnknownVertex(format!("`{end}` (arrow `{}`)", a.id)));
                }
            }
            if a.id.is_empty() {
                return Err(Error::InvalidQuiver("empty arrow id".into()));
            }
            if arrow_index.insert(a.id.clone(), i).is_some() {
                return Err(Error::Duplicate(format!("arrow `{}`", a.id)));
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            potential: Superpotential::zero(),
            arrow_index,
            vertex_index,
        })
    }

    /// Attaches a superpotential, checking that each word is a closed path here.
    pub fn with_potential(mut self, potential: Superpotential) -> Result<Self> {
        for (word, _) in potential.terms() {
            self.check_cycle(word.arrows())?;
        }
        self.potential = potential;
        Ok(self)
    }

    /// Parses a potential such as `BCAD - ACBD` against this quiver's arrows.
    pub fn with_potential_str(self, text: &str) -> Result<Self> {
        let w = Superpotential::parse(&self, text)?;
        self.with_potential(w)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn potential(&self) -> &Superpotential {
        &self.potential
    }

    pub fn arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrow_index
            .get(id)
            .map(|&i| &self.arrows[i])
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn arrow_position(&self, id: &str) -> Option<usize> {
        self.arrow_index.get(id).copied()
    }

    pub fn vertex_position(&self, v: &str) -> Option<usize> {
        self.vertex_index.get(v).copied()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertex_index.contains_key(v)
    }

    /// Builds the path following `arrows` in order, checking composability.
    pub fn path<S: AsRef<str>>(&self, arrows: &[S]) -> Result<Path> {
        let first = arrows
            .first()
            .ok_or_else(|| Error::InvalidQuiver("a nontrivial path needs an arrow".into()))?;
        let a = self.arrow(first.as_ref())?;
        let mut p = Path::arrow(a);
        for id in &arrows[1..] {
            let next = Path::arrow(self.arrow(id.as_ref())?);
            p = compose(&p, &next).ok_or_else(|| {
                Error::InvalidQuiver(format!("arrow `{}` does not continue the path", id.as_ref()))
            })?;
        }
        Ok(p)
    }

    fn check_cycle(&self, word: &[String]) -> Result<()> {
        let p = self.path(word).map_err(|e| Error::InvalidPotential(e.to_string()))?;
        if p.source != p.target {
            return Err(Error::InvalidPotential(format!("`{}` is not a closed path", word.concat())));
        }
        Ok(())
    }

    pub fn loops_at(&self, v: &str) -> usize {
        self.arrows.iter().filter(|a| a.tail == v && a.head == v).count()
    }

    /// Arrows from `v` to `w`.
    pub fn arrow_count(&self, v: &str, w: &str) -> usize {
        self.arrows.iter().filter(|a| a.tail == v && a.head == w).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&QuiverJson::from(self)).expect("quiver serialises")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: QuiverJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("quiver JSON: {e}")))?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    #[serde(default)]
    potential: Vec<PotentialTermJson>,
}

#[derive(Serialize, Deserialize)]
struct PotentialTermJson {
    coeff: i64,
    cycle: Vec<String>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        QuiverJson {
            vertices: q.vertices.clone(),
            arrows: q.arrows.clone(),
            potential: q
                .potential
                .terms()
                .map(|(w, c)| PotentialTermJson { coeff: c, cycle: w.arrows().to_vec() })
                .collect(),
        }
    }
}

impl TryFrom<QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(raw: QuiverJson) -> Result<Self> {
        let q = Quiver::new(raw.vertices, raw.arrows)?;
        let w = Superpotential::from_terms(raw.potential.into_iter().map(|t| (t.cycle, t.coeff)))?;
        q.with_potential(w)
    }
}

/// A path, read left to right in the order the arrows are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    arrows: Vec<String>,
    source: String,
    target: String,
}

impl Path {
    pub fn trivial(v: &str) -> Self {
        Path { arrows: Vec::new(), source: v.to_string(), target: v.to_string() }
    }

    pub fn arrow(a: &Arrow) -> Self {
        Path { arrows: vec![a.id.clone()], source: a.tail.clone(), target: a.head.clone() }
    }

    pub(crate) fn from_parts(arrows: Vec<String>, source: String, target: String) -> Self {
        Path { arrows, source, target }
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn target(&self) -> &str {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e_{}", self.source)
        } else {
            write!(f, "{}", self.arrows.join("."))
        }
    }
}

/// `p` followed by `q`, or `None` when `p` does not end where `q` starts.
pub fn compose(p: &Path, q: &Path) -> Option<Path> {
    if p.target != q.source {
        return None;
    }
    let mut arrows = p.arrows.clone();
    arrows.extend(q.arrows.iter().cloned());
    Some(Path { arrows, source: p.source.clone(), target: q.target.clone() })
}

/// A quiver with an extra vertex `v_inf` and a single arrow `v_inf -> v0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedQuiver {
    quiver: Quiver,
    infinity: String,
    framing_arrow: String,
    v0: String,
}

impl FramedQuiver {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn infinity(&self) -> &str {
        &self.infinity
    }

    pub fn framing_arrow(&self) -> &str {
        &self.framing_arrow
    }

    pub fn v0(&self) -> &str {
        &self.v0
    }
}

/// Adds the framing vertex `inf` (primed until fresh) and arrow `f` into `v0`.
pub fn frame(q: &Quiver, v0: &str) -> Result<FramedQuiver> {
    if !q.has_vertex(v0) {
        return Err(Error::UnknownVertex(v0.to_string()));
    }
    let infinity = fresh_name("inf", q.vertices.iter());
    let framing_arrow = fresh_name("f", q.arrows.iter().map(|a| &a.id));
    let mut vertices = q.vertices.clone();
    vertices.push(infinity.clone());
    let mut arrows = q.arrows.clone();
    arrows.push(Arrow { id: framing_arrow.clone(), tail: infinity.clone(), head: v0.to_string() });
    let quiver = Quiver::new(vertices, arrows)?.with_potential(q.potential.clone())?;
    Ok(FramedQuiver { quiver, infinity, framing_arrow, v0: v0.to_string() })
}

fn fresh_name<'a, I: Iterator<Item = &'a String>>(base: &str, taken: I) -> String {
    let taken: BTreeSet<&String> = taken.collect();
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('\'');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_paths_are_identities() {
        let q = builtins::conifold();
        let e0 = Path::trivial("0");
        assert_eq!(compose(&e0, &e0), Some(e0.clone()));
        let a = q.path(&["A"]).unwrap();
        assert_eq!(compose(&e0, &a), Some(a.clone()));
        assert_eq!(compose(&a, &Path::trivial("1")), Some(a.clone()));
        assert_eq!(compose(&a, &e0), None);
    }

    #[test]
    fn conifold_compositions() {
        let q = builtins::conifold();
        let a = q.path(&["A"]).unwrap();
        let b = q.path(&["B"]).unwrap();
        let c = q.path(&["C"]).unwrap();
        let ac = compose(&a, &c).unwrap();
        assert_eq!(ac.arrows(), ["A", "C"]);
        assert_eq!((ac.source(), ac.target()), ("0", "0"));
        assert_eq!(compose(&a, &b), None);
    }

    #[test]
    fn rejects_bad_quivers() {
        let a = |id: &str, t: &str, h: &str| Arrow { id: id.into(), tail: t.into(), head: h.into() };
        assert!(matches!(Quiver::new(["0"], [a("x", "0", "1")]), Err(Error::UnknownVertex(_))));
        assert!(matches!(
            Quiver::new(["0"], [a("x", "0", "0"), a("x", "0", "0")]),
            Err(Error::Duplicate(_))
        ));
        assert!(matches!(Quiver::new(["0", "0"], []), Err(Error::Duplicate(_))));
    }

    #[test]
    fn framing_counts() {
        let con = frame(&builtins::conifold(), "0").unwrap();
        assert_eq!(con.quiver().vertices().len(), 3);
        assert_eq!(con.quiver().arrows().len(), 5);
        assert_eq!(con.quiver().potential(), builtins::conifold().potential());
        let c3 = frame(&builtins::c3(), "0").unwrap();
        assert_eq!((c3.quiver().vertices().len(), c3.quiver().arrows().len()), (2, 4));
        let twice = frame(con.quiver(), "0").unwrap();
        assert_eq!((twice.quiver().vertices().len(), twice.quiver().arrows().len()), (4, 6));
        assert_eq!(twice.infinity(), "inf'");
        assert!(matches!(frame(&builtins::c3(), "7"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn framing_vertex_is_a_source() {
        let fq = frame(&builtins::kp2(), "1").unwrap();
        let q = fq.quiver();
        let out = q.arrows().iter().filter(|a| a.tail == fq.infinity()).count();
        let inc = q.arrows().iter().filter(|a| a.head == fq.infinity()).count();
        assert_eq!((out, inc), (1, 0));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        for q in [builtins::conifold(), builtins::c3(), builtins::kp2(), builtins::laufer(2)] {
            let text = q.to_json();
            let back = Quiver::from_json(&text).unwrap();
            assert_eq!(back, q);
            assert_eq!(back.to_json(), text);
        }
    }
}
