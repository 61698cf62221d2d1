use std::collections::BTreeMap;

use serde::Serialize;

use super::polygon::{cross, sub, Point, UnitTriangulation};
use crate::{Error, Result};

/// Trivalent vertex dual to a triangle. Slot `k` is dual to the side from
/// corner `k` to corner `k + 1` of the counterclockwise triangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WebNode {
    pub triangle: [Point; 3],
    pub directions: [Point; 3],
}

/// Internal edge carrying a Kähler variable. The partition on the edge sits
/// at `ends[0]` and its transpose at `ends[1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WebEdge {
    pub variable: String,
    pub ends: [(usize, usize); 2],
    pub direction: Point,
    pub framing: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WebLeg {
    pub node: usize,
    pub slot: usize,
    pub direction: Point,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualWeb {
    pub nodes: Vec<WebNode>,
    pub edges: Vec<WebEdge>,
    pub legs: Vec<WebLeg>,
}

fn framing_integer(nodes: &[WebNode], (a, i): (usize, usize), (b, j): (usize, usize)) -> i64 {
    cross(nodes[a].directions[(i + 1) % 3], nodes[b].directions[(j + 1) % 3])
}

/// Node per triangle, internal edge per shared side, leg per boundary side.
pub fn dual_web(t: &UnitTriangulation) -> DualWeb {
    let mut nodes = Vec::with_capacity(t.triangles().len());
    let mut sides: BTreeMap<[Point; 2], Vec<(usize, usize)>> = BTreeMap::new();
    for (n, tri) in t.triangles().iter().enumerate() {
        let [a, mut b, mut c] = *tri;
        if cross(sub(b, a), sub(c, a)) < 0 {
            std::mem::swap(&mut b, &mut c);
        }
        let corners = [a, b, c];
        let mut directions = [[0, 0]; 3];
        for k in 0..3 {
            let p = corners[k];
            let q = corners[(k + 1) % 3];
            let d = sub(q, p);
            directions[k] = [d[1], -d[0]];
            let mut key = [p, q];
            key.sort();
            sides.entry(key).or_default().push((n, k));
        }
        nodes.push(WebNode { triangle: corners, directions });
    }
    let mut edges = Vec::new();
    let mut legs = Vec::new();
    for ends in sides.values() {
        match *ends.as_slice() {
            [a, b] => {
                let framing = framing_integer(&nodes, a, b);
                edges.push(WebEdge {
                    variable: format!("Q{}", edges.len()),
                    ends: [a, b],
                    direction: nodes[a.0].directions[a.1],
                    framing,
                });
            }
            [(node, slot)] => legs.push(WebLeg { node, slot, direction: nodes[node].directions[slot] }),
            _ => unreachable!("a side borders at most two triangles"),
        }
    }
    legs.sort_by_key(|l| (l.node, l.slot));
    DualWeb { nodes, edges, legs }
}

impl DualWeb {
    pub fn variables(&self) -> Vec<String> {
        self.edges.iter().map(|e| e.variable.clone()).collect()
    }

    /// Balancing at nodes, opposite directions along edges, one use per slot.
    pub fn validate(&self) -> Result<()> {
        for (n, node) in self.nodes.iter().enumerate() {
            let s = node.directions.iter().fold([0, 0], |acc, d| [acc[0] + d[0], acc[1] + d[1]]);
            if s != [0, 0] {
                return Err(Error::InvalidWeb(format!("node {n} is not balanced")));
            }
        }
        let mut used = vec![[false; 3]; self.nodes.len()];
        let mut claim = |(n, k): (usize, usize)| -> Result<()> {
            if n >= self.nodes.len() || k >= 3 {
                return Err(Error::InvalidWeb(format!("slot ({n}, {k}) does not exist")));
            }
            if std::mem::replace(&mut used[n][k], true) {
                return Err(Error::InvalidWeb(format!("slot ({n}, {k}) is used twice")));
            }
            Ok(())
        };
        for e in &self.edges {
            claim(e.ends[0])?;
            claim(e.ends[1])?;
            let da = self.nodes[e.ends[0].0].directions[e.ends[0].1];
            let db = self.nodes[e.ends[1].0].directions[e.ends[1].1];
            if da != [-db[0], -db[1]] || e.direction != da {
                return Err(Error::InvalidWeb(format!("edge {} has inconsistent directions", e.variable)));
            }
            if e.framing != framing_integer(&self.nodes, e.ends[0], e.ends[1]) {
                return Err(Error::InvalidWeb(format!("edge {} has a wrong framing integer", e.variable)));
            }
        }
        for l in &self.legs {
            claim((l.node, l.slot))?;
        }
        if used.iter().flatten().any(|u| !u) {
            return Err(Error::InvalidWeb("some slot is neither an edge nor a leg".into()));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("web serialises")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{unit_triangulations, LatticePolygon};

    fn webs(p: &LatticePolygon) -> Vec<DualWeb> {
        unit_triangulations(p).iter().map(dual_web).collect()
    }

    #[test]
    fn small_webs() {
        let w = &webs(&LatticePolygon::unit_triangle())[0];
        assert_eq!((w.nodes.len(), w.edges.len(), w.legs.len()), (1, 0, 3));
        for w in webs(&LatticePolygon::unit_square()) {
            assert_eq!((w.nodes.len(), w.edges.len(), w.legs.len()), (2, 1, 4));
            w.validate().unwrap();
        }
    }

    #[test]
    fn local_p2_web_is_a_triangle_of_edges() {
        let w = &webs(&LatticePolygon::local_p2())[0];
        assert_eq!((w.nodes.len(), w.edges.len(), w.legs.len()), (3, 3, 3));
        let mut degree = vec![0; 3];
        for e in &w.edges {
            degree[e.ends[0].0] += 1;
            degree[e.ends[1].0] += 1;
        }
        assert_eq!(degree, [2, 2, 2]);
        w.validate().unwrap();
    }

    #[test]
    fn validation_catches_tampering() {
        let mut w = webs(&LatticePolygon::unit_square()).remove(0);
        w.nodes[0].directions[0] = [5, 5];
        assert!(matches!(w.validate(), Err(Error::InvalidWeb(_))));
    }
}
