use std::collections::BTreeSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::mckay::AbelianAction;
use crate::{Error, Result};

pub type Point = [i64; 2];
pub type Triangle = [Point; 3];

pub(crate) fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

pub(crate) fn cross(a: Point, b: Point) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn turn(a: Point, b: Point, c: Point) -> i64 {
    cross(sub(b, a), sub(c, a))
}

/// Convex lattice polygon, counterclockwise from its lexicographically smallest vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePolygon {
    vertices: Vec<Point>,
}

impl LatticePolygon {
    /// Vertices of a convex polygon in either cyclic orientation.
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegeneratePolygon(format!("{} vertices", vertices.len())));
        }
        let distinct: BTreeSet<Point> = vertices.iter().copied().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::DegeneratePolygon("repeated vertex".into()));
        }
        let n = vertices.len();
        for i in 0..n {
            if turn(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) == 0 {
                return Err(Error::DegeneratePolygon(format!(
                    "collinear vertices around {:?}",
                    vertices[(i + 1) % n]
                )));
            }
        }
        let hull = Self::hull(&vertices)?;
        let forward = is_rotation(&vertices, &hull.vertices);
        let mut reversed = vertices.clone();
        reversed.reverse();
        if !forward && !is_rotation(&reversed, &hull.vertices) {
            return Err(Error::DegeneratePolygon("vertices are not in convex position and cyclic order".into()));
        }
        Ok(hull)
    }

    /// Convex hull of a point set; collinear boundary points are dropped.
    pub fn hull(points: &[Point]) -> Result<Self> {
        let mut pts: Vec<Point> = points.to_vec();
        pts.sort();
        pts.dedup();
        if pts.len() < 3 {
            return Err(Error::DegeneratePolygon("fewer than three distinct points".into()));
        }
        let mut lower: Vec<Point> = Vec::new();
        for &p in &pts {
            while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in pts.iter().rev() {
            while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        if lower.len() < 3 {
            return Err(Error::DegeneratePolygon("all points are collinear".into()));
        }
        Ok(LatticePolygon { vertices: lower })
    }

    pub fn unit_square() -> Self {
        Self::hull(&[[0, 0], [1, 0], [1, 1], [0, 1]]).expect("square")
    }

    pub fn unit_triangle() -> Self {
        Self::hull(&[[0, 0], [1, 0], [0, 1]]).expect("triangle")
    }

    /// `(0,0), (n,0), (0,n)`.
    pub fn dilated_triangle(n: i64) -> Result<Self> {
        Self::hull(&[[0, 0], [n, 0], [0, n]])
    }

    /// `(1,0), (0,1), (-1,-1)`: the local projective plane.
    pub fn local_p2() -> Self {
        Self::hull(&[[1, 0], [0, 1], [-1, -1]]).expect("triangle")
    }

    /// Trapezoid with bottom edge `(0,0)-(n0,0)` and top edge `(0,1)-(n1,1)`.
    pub fn trapezoid(n0: i64, n1: i64) -> Result<Self> {
        if n0 < 0 || n1 < 0 {
            return Err(Error::DegeneratePolygon("trapezoid edge lengths must be nonnegative".into()));
        }
        Self::hull(&[[0, 0], [n0, 0], [n1, 1], [0, 1]])
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Twice the area.
    pub fn double_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n).map(|i| cross(self.vertices[i], self.vertices[(i + 1) % n])).sum()
    }

    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| turn(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0)
    }

    /// All lattice points, sorted.
    pub fn lattice_points(&self) -> Vec<Point> {
        let (x0, x1) = bounds(self.vertices.iter().map(|v| v[0]));
        let (y0, y1) = bounds(self.vertices.iter().map(|v| v[1]));
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                if self.contains([x, y]) {
                    out.push([x, y]);
                }
            }
        }
        out
    }

    /// Unit boundary segments, directed counterclockwise.
    pub fn boundary_segments(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let d = sub(b, a);
            let g = d[0].gcd(&d[1]);
            let step = [d[0] / g, d[1] / g];
            for k in 0..g {
                out.push(([a[0] + k * step[0], a[1] + k * step[1]], [a[0] + (k + 1) * step[0], a[1] + (k + 1) * step[1]]));
            }
        }
        out
    }

    pub fn interior_point_count(&self) -> usize {
        self.lattice_points().len() - self.boundary_segments().len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polygon serialises")
    }

    /// Reads `{"vertices": [[x, y], ...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            vertices: Vec<Point>,
        }
        let raw: Raw = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::new(raw.vertices)
    }
}

fn bounds<I: Iterator<Item = i64>>(it: I) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

fn is_rotation(a: &[Point], b: &[Point]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

/// Triangulation of a polygon into lattice triangles of area 1/2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct UnitTriangulation {
    polygon: LatticePolygon,
    triangles: Vec<Triangle>,
}

impl UnitTriangulation {
    pub fn polygon(&self) -> &LatticePolygon {
        &self.polygon
    }

    /// Triangles with sorted vertices, in sorted order.
    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("triangulation serialises")
    }
}

/// Interiors of two counterclockwise triangles meet.
fn overlap(a: &Triangle, b: &Triangle) -> bool {
    let separated = |s: &Triangle, o: &Triangle| {
        (0..3).any(|i| {
            let p = s[i];
            let q = s[(i + 1) % 3];
            o.iter().all(|&x| turn(p, q, x) <= 0)
        })
    };
    !(separated(a, b) || separated(b, a))
}

fn normalised(t: Triangle) -> Triangle {
    let mut t = t;
    t.sort();
    t
}

struct Front<'a> {
    points: &'a [Point],
    open: BTreeSet<(Point, Point)>,
    placed: Vec<Triangle>,
    found: Vec<Vec<Triangle>>,
}

impl Front<'_> {
    fn search(&mut self) {
        let Some(&(p, q)) = self.open.iter().next() else {
            let mut tris: Vec<Triangle> = self.placed.iter().map(|&t| normalised(t)).collect();
            tris.sort();
            self.found.push(tris);
            return;
        };
        let base = sub(q, p);
        for &r in self.points {
            if cross(base, sub(r, p)) != 1 {
                continue;
            }
            let tri = [p, q, r];
            if self.placed.iter().any(|t| overlap(t, &tri)) {
                continue;
            }
            let mut removed = vec![(p, q)];
            let mut added = Vec::new();
            self.open.remove(&(p, q));
            for (a, b) in [(q, r), (r, p)] {
                if self.open.remove(&(a, b)) {
                    removed.push((a, b));
                } else {
                    self.open.insert((b, a));
                    added.push((b, a));
                }
            }
            self.placed.push(tri);
            self.search();
            self.placed.pop();
            for e in added {
                self.open.remove(&e);
            }
            self.open.extend(removed);
        }
    }
}

/// All unit triangulations, sorted, each exactly once.
pub fn unit_triangulations(p: &LatticePolygon) -> Vec<UnitTriangulation> {
    let points = p.lattice_points();
    let mut front = Front {
        points: &points,
        open: p.boundary_segments().into_iter().collect(),
        placed: Vec::new(),
        found: Vec::new(),
    };
    front.search();
    let mut found = front.found;
    found.sort();
    found.dedup();
    let expected = p.double_area() as usize;
    found
        .into_iter()
        .map(|triangles| {
            debug_assert_eq!(triangles.len(), expected);
            UnitTriangulation { polygon: p.clone(), triangles }
        })
        .collect()
}

/// The two triangulations differ by swapping the diagonal of one unit parallelogram.
pub fn flop_adjacent(a: &UnitTriangulation, b: &UnitTriangulation) -> Result<bool> {
    if a.polygon != b.polygon {
        return Err(Error::PolygonMismatch);
    }
    let only = |x: &UnitTriangulation, y: &UnitTriangulation| -> Vec<Triangle> {
        x.triangles.iter().filter(|t| !y.triangles.contains(t)).copied().collect()
    };
    let oa = only(a, b);
    let ob = only(b, a);
    if oa.len() != 2 || ob.len() != 2 {
        return Ok(false);
    }
    let corners = |ts: &[Triangle]| -> BTreeSet<Point> { ts.iter().flatten().copied().collect() };
    let diagonal = |ts: &[Triangle]| -> BTreeSet<Point> {
        ts[0].iter().filter(|p| ts[1].contains(p)).copied().collect()
    };
    let ca = corners(&oa);
    Ok(ca.len() == 4 && ca == corners(&ob) && diagonal(&oa).len() == 2 && diagonal(&oa) != diagonal(&ob))
}

/// Index pairs `(i, j)`, `i < j`, of flop-adjacent triangulations.
pub fn flop_graph(ts: &[UnitTriangulation]) -> Result<Vec<(usize, usize)>> {
    let mut edges = Vec::new();
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            if flop_adjacent(&ts[i], &ts[j])? {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

pub fn is_connected(vertices: usize, edges: &[(usize, usize)]) -> bool {
    if vertices == 0 {
        return true;
    }
    let mut seen = vec![false; vertices];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Upper triangular basis `(a, b), (0, d)` of the lattice spanned by `gens`.
fn lattice_basis(gens: &[Point]) -> Result<(Point, Point)> {
    let mut rows: Vec<Point> = gens.iter().copied().filter(|g| *g != [0, 0]).collect();
    loop {
        let pivot = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r[0] != 0)
            .min_by_key(|(_, r)| r[0].abs())
            .map(|(i, _)| i);
        let Some(pi) = pivot else {
            return Err(Error::DegeneratePolygon("lattice has rank below two".into()));
        };
        let p = rows[pi];
        let mut done = true;
        for (i, r) in rows.iter_mut().enumerate() {
            if i != pi && r[0] != 0 {
                let k = Integer::div_floor(&r[0], &p[0]);
                *r = [r[0] - k * p[0], r[1] - k * p[1]];
                if r[0] != 0 {
                    done = false;
                }
            }
        }
        if done {
            let p = if p[0] < 0 { [-p[0], -p[1]] } else { p };
            let d = rows.iter().enumerate().filter(|(i, _)| *i != pi).fold(0i64, |g, (_, r)| g.gcd(&r[1]));
            if d == 0 {
                return Err(Error::DegeneratePolygon("lattice has rank below two".into()));
            }
            return Ok((p, [0, d]));
        }
    }
}

/// Toric polygon of `C^3/G`: the height-one slice of the cone over `e1, e2, e3`
/// in the lattice `Z^3 + G`, in coordinates of a lattice basis.
pub fn orbifold_polygon(act: &AbelianAction) -> Result<LatticePolygon> {
    let factors = act.factors();
    let l = factors.iter().fold(1i64, |acc, f| acc.lcm(&(f.order as i64)));
    let mut elements: Vec<[i64; 3]> = Vec::new();
    let mut counter = vec![0u32; factors.len()];
    loop {
        let mut v = [0i64; 3];
        for (f, &k) in factors.iter().zip(&counter) {
            for i in 0..3 {
                v[i] += k as i64 * f.weights[i] as i64 * (l / f.order as i64);
            }
        }
        elements.push(v.map(|x| x.rem_euclid(l)));
        let mut j = 0;
        while j < counter.len() {
            counter[j] += 1;
            if counter[j] < factors[j].order {
                break;
            }
            counter[j] = 0;
            j += 1;
        }
        if j == counter.len() {
            break;
        }
    }
    let e = [[l, 0, 0], [0, l, 0], [0, 0, l]];
    let offset = |v: [i64; 3]| -> Point {
        let age = (v[0] + v[1] + v[2]) / l;
        [v[0] - age * l, v[1]]
    };
    let mut gens: Vec<Point> = e.iter().map(|&v| offset(v)).collect();
    gens.extend(elements.iter().map(|&v| offset(v)));
    let (b1, b2) = lattice_basis(&gens)?;
    let coords = |p: Point| -> Point {
        let c1 = p[0] / b1[0];
        let c2 = (p[1] - c1 * b1[1]) / b2[1];
        [c1, c2]
    };
    let points: Vec<Point> = e
        .iter()
        .copied()
        .chain(elements.iter().copied().filter(|v| v[0] + v[1] + v[2] == l))
        .map(|v| coords(offset(v)))
        .collect();
    LatticePolygon::hull(&points)
}
