//! Triangulated compact surfaces with boundary.
//!
//! A [`SurfaceComplex`] is a pure simplicial 2-complex whose edges lie in one
//! or two triangles and whose vertex links are single paths or cycles. Vertex
//! ids double as the global vertex order used by the cup product.
//!
//! All surgery operations return fresh complexes; a value never changes after
//! construction.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Vertex = usize;

/// Unordered vertex pair, always stored smaller id first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[Vertex; 2]", into = "[Vertex; 2]")]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> Vertex {
        self.0
    }

    pub fn hi(self) -> Vertex {
        self.1
    }

    pub fn contains(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl From<[Vertex; 2]> for Edge {
    fn from([a, b]: [Vertex; 2]) -> Self {
        Edge::new(a, b)
    }
}

impl From<Edge> for [Vertex; 2] {
    fn from(e: Edge) -> Self {
        [e.0, e.1]
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("complex has no triangles")]
    Empty,
    #[error("triangle {triangle} uses vertex {vertex} outside 0..{vertex_count}")]
    VertexOutOfRange {
        triangle: usize,
        vertex: Vertex,
        vertex_count: usize,
    },
    #[error("triangle {0} has a repeated vertex")]
    DegenerateTriangle(usize),
    #[error("triangles {0} and {1} span the same vertex set")]
    RepeatedTriangle(usize, usize),
    #[error("edge {edge} lies in {faces} triangles")]
    NonManifoldEdge { edge: Edge, faces: usize },
    #[error("link of vertex {0} is neither a single path nor a single cycle")]
    BadVertexLink(Vertex),
    #[error("vertex {0} lies in no triangle")]
    IsolatedVertex(Vertex),
    #[error("complex is not connected")]
    Disconnected,
    #[error("path is not properly embedded: {0}")]
    NotProperlyEmbedded(String),
    #[error("edge {0} is not in the complex")]
    MissingEdge(Edge),
    #[error("vertex sequence is not a boundary circle of the complex")]
    NotABoundaryCircle,
}

/// A boundary component, as the cyclic sequence of its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryCircle {
    vertices: Vec<Vertex>,
}

impl BoundaryCircle {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn min_vertex(&self) -> Vertex {
        *self
            .vertices
            .iter()
            .min()
            .expect("boundary circle is never empty")
    }

    /// Edges in traversal order; edge `i` joins vertex `i` and vertex `i + 1`.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| Edge::new(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}

/// Topological type of a connected surface with boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopSignature {
    pub euler: i64,
    pub orientable: bool,
    pub genus: u32,
    pub boundary_circles: usize,
    pub connected: bool,
}

impl TopSignature {
    pub fn is_disk(&self) -> bool {
        self.connected && self.euler == 1 && self.boundary_circles == 1
    }

    pub fn is_annulus(&self) -> bool {
        self.connected && self.orientable && self.genus == 0 && self.boundary_circles == 2
    }

    pub fn is_moebius(&self) -> bool {
        self.connected && !self.orientable && self.genus == 1 && self.boundary_circles == 1
    }

    /// Checks `χ = 2 − 2g − b` (orientable) or `χ = 2 − g − b`.
    pub fn is_consistent(&self) -> bool {
        let g = i64::from(self.genus);
        let b = self.boundary_circles as i64;
        if self.orientable {
            self.euler == 2 - 2 * g - b
        } else {
            self.genus >= 1 && self.euler == 2 - g - b
        }
    }
}

/// Closed 1-dimensional subcomplex given by vertex and edge sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Subcomplex {
    pub vertices: BTreeSet<Vertex>,
    pub edges: BTreeSet<Edge>,
}

impl Subcomplex {
    pub fn new(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        Self {
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
        }
    }

    /// Closure of a set of edges.
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let vertices = edges.iter().flat_map(|e| [e.lo(), e.hi()]).collect();
        Self { vertices, edges }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    /// Every edge endpoint is a member vertex.
    pub fn is_closed(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.vertices.contains(&e.lo()) && self.vertices.contains(&e.hi()))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Connected components, each as a subcomplex, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Subcomplex> {
        let mut adj: BTreeMap<Vertex, Vec<Vertex>> =
            self.vertices.iter().map(|&v| (v, Vec::new())).collect();
        for e in &self.edges {
            adj.entry(e.lo()).or_default().push(e.hi());
            adj.entry(e.hi()).or_default().push(e.lo());
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in adj.keys() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = Subcomplex::default();
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                comp.vertices.insert(v);
                for &w in &adj[&v] {
                    comp.edges.insert(Edge::new(v, w));
                    if seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }
}

/// Output of [`SurfaceComplex::cut_along_path`].
///
/// Triangle `t` of the result is triangle `t` of the input with some path
/// vertices renamed, so callers can transport per-triangle data.
#[derive(Clone, Debug)]
pub struct PathCut {
    pub complex: SurfaceComplex,
    /// First copy of the path; keeps the original vertex ids.
    pub side_a: Vec<Vertex>,
    /// Second copy of the path; vertex `i` is `old_vertex_count + i`.
    pub side_b: Vec<Vertex>,
}

#[derive(Clone)]
pub struct SurfaceComplex {
    vertex_count: usize,
    triangles: Vec<[Vertex; 3]>,
    edge_faces: BTreeMap<Edge, Vec<usize>>,
}

impl PartialEq for SurfaceComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.triangles == other.triangles
    }
}

impl Eq for SurfaceComplex {}

impl fmt::Debug for SurfaceComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfaceComplex")
            .field("vertex_count", &self.vertex_count)
            .field("triangles", &self.triangles)
            .finish()
    }
}

fn triangle_edges(t: &[Vertex; 3]) -> [Edge; 3] {
    [
        Edge::new(t[0], t[1]),
        Edge::new(t[1], t[2]),
        Edge::new(t[2], t[0]),
    ]
}

/// +1 if the triangle's cyclic order runs along `e` from `e.lo()` to `e.hi()`.
fn traversal_sign(t: &[Vertex; 3], e: Edge) -> i8 {
    for i in 0..3 {
        let (a, b) = (t[i], t[(i + 1) % 3]);
        if a == e.lo() && b == e.hi() {
            return 1;
        }
        if a == e.hi() && b == e.lo() {
            return -1;
        }
    }
    unreachable!("edge {e} not in triangle {t:?}")
}

impl SurfaceComplex {
    pub fn new(vertex_count: usize, triangles: Vec<[Vertex; 3]>) -> Result<Self, SurfaceError> {
        if triangles.is_empty() {
            return Err(SurfaceError::Empty);
        }
        let mut seen_sets: BTreeMap<[Vertex; 3], usize> = BTreeMap::new();
        let mut edge_faces: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (i, t) in triangles.iter().enumerate() {
            for &v in t {
                if v >= vertex_count {
                    return Err(SurfaceError::VertexOutOfRange {
                        triangle: i,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(SurfaceError::DegenerateTriangle(i));
            }
            let mut key = *t;
            key.sort_unstable();
            if let Some(&first) = seen_sets.get(&key) {
                return Err(SurfaceError::RepeatedTriangle(first, i));
            }
            seen_sets.insert(key, i);
            for e in triangle_edges(t) {
                edge_faces.entry(e).or_default().push(i);
            }
        }
        for (&edge, faces) in &edge_faces {
            if faces.len() > 2 {
                return Err(SurfaceError::NonManifoldEdge {
                    edge,
                    faces: faces.len(),
                });
            }
        }
        let complex = Self {
            vertex_count,
            triangles,
            edge_faces,
        };
        complex.check_links()?;
        Ok(complex)
    }

    fn check_links(&self) -> Result<(), SurfaceError> {
        let mut links: Vec<Vec<Edge>> = vec![Vec::new(); self.vertex_count];
        for t in &self.triangles {
            for i in 0..3 {
                links[t[i]].push(Edge::new(t[(i + 1) % 3], t[(i + 2) % 3]));
            }
        }
        for (v, link) in links.iter().enumerate() {
            if link.is_empty() {
                return Err(SurfaceError::IsolatedVertex(v));
            }
            let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
            for e in link {
                adj.entry(e.lo()).or_default().push(e.hi());
                adj.entry(e.hi()).or_default().push(e.lo());
            }
            if adj.values().any(|n| n.len() > 2) {
                return Err(SurfaceError::BadVertexLink(v));
            }
            let ends = adj.values().filter(|n| n.len() == 1).count();
            if ends != 0 && ends != 2 {
                return Err(SurfaceError::BadVertexLink(v));
            }
            // connected link
            let start = *adj.keys().next().expect("nonempty link");
            let mut seen = BTreeSet::from([start]);
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in &adj[&x] {
                    if seen.insert(y) {
                        stack.push(y);
                    }
                }
            }
            if seen.len() != adj.len() {
                return Err(SurfaceError::BadVertexLink(v));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn triangles(&self) -> &[[Vertex; 3]] {
        &self.triangles
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    /// All edges in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edge_faces.keys().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_faces.len()
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edge_faces.contains_key(&e)
    }

    /// Triangles containing `e`; empty if the edge is absent.
    pub fn faces_of(&self, e: Edge) -> &[usize] {
        self.edge_faces.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn is_boundary_edge(&self, e: Edge) -> bool {
        self.faces_of(e).len() == 1
    }

    pub fn boundary_edges(&self) -> Vec<Edge> {
        self.edge_faces
            .iter()
            .filter(|(_, f)| f.len() == 1)
            .map(|(&e, _)| e)
            .collect()
    }

    pub fn boundary_vertices(&self) -> BTreeSet<Vertex> {
        self.boundary_edges()
            .into_iter()
            .flat_map(|e| [e.lo(), e.hi()])
            .collect()
    }

    pub fn is_closed_surface(&self) -> bool {
        self.edge_faces.values().all(|f| f.len() == 2)
    }

    /// The full boundary as a subcomplex.
    pub fn boundary(&self) -> Subcomplex {
        Subcomplex::from_edges(self.boundary_edges())
    }

    pub fn neighbors(&self, v: Vertex) -> BTreeSet<Vertex> {
        let mut out = BTreeSet::new();
        for t in &self.triangles {
            if t.contains(&v) {
                out.extend(t.iter().copied().filter(|&w| w != v));
            }
        }
        out
    }

    /// Adjacency lists of the 1-skeleton.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in self.edges() {
            adj[e.lo()].push(e.hi());
            adj[e.hi()].push(e.lo());
        }
        adj
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edge_count() as i64 + self.triangles.len() as i64
    }

    /// Boundary components. Each circle starts at its smallest vertex and
    /// continues towards the smaller of that vertex's two boundary neighbours;
    /// circles are listed by smallest vertex.
    pub fn boundary_circles(&self) -> Vec<BoundaryCircle> {
        let mut nbrs: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
        for e in self.boundary_edges() {
            nbrs.entry(e.lo()).or_default().push(e.hi());
            nbrs.entry(e.hi()).or_default().push(e.lo());
        }
        let mut seen = BTreeSet::new();
        let mut circles = Vec::new();
        for (&start, ns) in &nbrs {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = vec![start];
            seen.insert(start);
            let mut prev = start;
            let mut cur = *ns.iter().min().expect("boundary vertex has two neighbours");
            while cur != start {
                seen.insert(cur);
                cycle.push(cur);
                let next = nbrs[&cur]
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .expect("boundary is a union of cycles");
                prev = cur;
                cur = next;
            }
            circles.push(BoundaryCircle::new(cycle));
        }
        circles
    }

    /// Connected components as lists of triangle indices.
    pub fn triangle_components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.triangles.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut x = x;
            while p[x] != r {
                let next = p[x];
                p[x] = r;
                x = next;
            }
            r
        }
        // Triangles sharing a vertex are in the same component.
        let mut first_at: Vec<Option<usize>> = vec![None; self.vertex_count];
        for (i, t) in self.triangles.iter().enumerate() {
            for &v in t {
                match first_at[v] {
                    None => first_at[v] = Some(i),
                    Some(j) => {
                        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                        parent[a] = b;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.triangles.len() {
            let r = find(&mut parent, i);
            groups.entry(r).or_default().push(i);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        out
    }

    pub fn is_connected(&self) -> bool {
        self.triangle_components().len() == 1
    }

    /// Decides orientability by propagating a triangle orientation across
    /// shared edges; a conflict anywhere means nonorientable.
    pub fn is_orientable(&self) -> bool {
        let mut sign: Vec<i8> = vec![0; self.triangles.len()];
        for seed in 0..self.triangles.len() {
            if sign[seed] != 0 {
                continue;
            }
            sign[seed] = 1;
            let mut queue = VecDeque::from([seed]);
            while let Some(t) = queue.pop_front() {
                for e in triangle_edges(&self.triangles[t]) {
                    for &u in self.faces_of(e) {
                        if u == t {
                            continue;
                        }
                        let want = -sign[t]
                            * traversal_sign(&self.triangles[t], e)
                            * traversal_sign(&self.triangles[u], e);
                        if sign[u] == 0 {
                            sign[u] = want;
                            queue.push_back(u);
                        } else if sign[u] != want {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn signature(&self) -> Result<TopSignature, SurfaceError> {
        if !self.is_connected() {
            return Err(SurfaceError::Disconnected);
        }
        let euler = self.euler_characteristic();
        let b = self.boundary_circles().len() as i64;
        let orientable = self.is_orientable();
        let genus = if orientable {
            (2 - euler - b) / 2
        } else {
            2 - euler - b
        };
        Ok(TopSignature {
            euler,
            orientable,
            genus: genus as u32,
            boundary_circles: b as usize,
            connected: true,
        })
    }

    /// Same complex with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[Vertex]) -> Result<SurfaceComplex, SurfaceError> {
        assert_eq!(perm.len(), self.vertex_count, "permutation length mismatch");
        let triangles = self
            .triangles
            .iter()
            .map(|t| [perm[t[0]], perm[t[1]], perm[t[2]]])
            .collect();
        SurfaceComplex::new(self.vertex_count, triangles)
    }

    /// Replaces `edge` by two edges through a fresh vertex `vertex_count`,
    /// splitting each incident triangle.
    pub fn subdivide_edge(&self, edge: Edge) -> Result<SurfaceComplex, SurfaceError> {
        let faces = self.faces_of(edge);
        if faces.is_empty() {
            return Err(SurfaceError::MissingEdge(edge));
        }
        let mid = self.vertex_count;
        let mut triangles = self.triangles.clone();
        for &f in faces {
            let t = self.triangles[f];
            let mut first = t;
            let mut second = t;
            for i in 0..3 {
                if t[i] == edge.hi() {
                    first[i] = mid;
                }
                if t[i] == edge.lo() {
                    second[i] = mid;
                }
            }
            triangles[f] = first;
            triangles.push(second);
        }
        SurfaceComplex::new(self.vertex_count + 1, triangles)
    }

    /// Cones off a boundary circle with a fresh vertex `vertex_count`.
    pub fn cap_boundary_circle(
        &self,
        circle: &BoundaryCircle,
    ) -> Result<SurfaceComplex, SurfaceError> {
        let target: BTreeSet<Edge> = circle.edges().into_iter().collect();
        let is_circle = circle.len() >= 3
            && self.boundary_circles().iter().any(|c| {
                c.len() == circle.len() && c.edges().into_iter().collect::<BTreeSet<_>>() == target
            });
        if !is_circle {
            return Err(SurfaceError::NotABoundaryCircle);
        }
        let apex = self.vertex_count;
        let mut triangles = self.triangles.clone();
        for e in &target {
            let face = self.triangles[self.faces_of(*e)[0]];
            // opposite direction to the existing face keeps orientations coherent
            let t = if traversal_sign(&face, *e) > 0 {
                [e.hi(), e.lo(), apex]
            } else {
                [e.lo(), e.hi(), apex]
            };
            triangles.push(t);
        }
        SurfaceComplex::new(self.vertex_count + 1, triangles)
    }

    /// Cuts the surface open along a properly embedded simple path
    /// `v₀ … v_k`: endpoints on the boundary, all other vertices and every
    /// path edge in the interior.
    ///
    /// Every path vertex is doubled (the copies of `vᵢ` are `vᵢ` and
    /// `vertex_count + i`), every path edge is doubled, and the triangle fan
    /// around each path vertex is split at the incident path edges. The Euler
    /// characteristic goes up by exactly one.
    pub fn cut_along_path(&self, path: &[Vertex]) -> Result<PathCut, SurfaceError> {
        let bad = |m: String| Err(SurfaceError::NotProperlyEmbedded(m));
        if path.len() < 2 {
            return bad("path needs at least one edge".into());
        }
        let k = path.len() - 1;
        let mut distinct = BTreeSet::new();
        for &v in path {
            if v >= self.vertex_count {
                return bad(format!("vertex {v} out of range"));
            }
            if !distinct.insert(v) {
                return bad(format!("vertex {v} repeats"));
            }
        }
        let boundary = self.boundary_vertices();
        if !boundary.contains(&path[0]) || !boundary.contains(&path[k]) {
            return bad("endpoints must be boundary vertices".into());
        }
        if let Some(v) = path[1..k].iter().find(|v| boundary.contains(v)) {
            return bad(format!("interior path vertex {v} lies on the boundary"));
        }
        let path_edges: Vec<Edge> = path.windows(2).map(|w| Edge::new(w[0], w[1])).collect();
        for &e in &path_edges {
            match self.faces_of(e).len() {
                0 => return Err(SurfaceError::MissingEdge(e)),
                1 => return bad(format!("path edge {e} lies on the boundary")),
                _ => {}
            }
        }

        // For each path vertex, split its star into two sides.
        let mut on_side_b: Vec<BTreeSet<usize>> = Vec::with_capacity(path.len());
        let mut left_face = *self
            .faces_of(path_edges[0])
            .iter()
            .min()
            .expect("interior edge");
        for (i, &v) in path.iter().enumerate() {
            let mut blocked = vec![path_edges[i.min(k - 1)]];
            if i > 0 && i < k {
                blocked.push(path_edges[i - 1]);
            }
            let star: Vec<usize> = (0..self.triangles.len())
                .filter(|&t| self.triangles[t].contains(&v))
                .collect();
            let side_a = self.fan_component(v, &star, &blocked, left_face);
            let side_b: BTreeSet<usize> = star
                .iter()
                .copied()
                .filter(|t| !side_a.contains(t))
                .collect();
            if side_b.is_empty() || !self.fan_is_connected(v, &side_b, &blocked) {
                return bad(format!("path does not separate the star of vertex {v}"));
            }
            if i < k {
                let faces = self.faces_of(path_edges[i]);
                let in_a: Vec<usize> = faces
                    .iter()
                    .copied()
                    .filter(|f| side_a.contains(f))
                    .collect();
                if in_a.len() != 1 {
                    return bad(format!(
                        "path edge {} has no consistent side at {v}",
                        path_edges[i]
                    ));
                }
                left_face = in_a[0];
            }
            on_side_b.push(side_b);
        }

        let n = self.vertex_count;
        let mut triangles = self.triangles.clone();
        for (i, &v) in path.iter().enumerate() {
            for &t in &on_side_b[i] {
                for slot in triangles[t].iter_mut() {
                    if *slot == v {
                        *slot = n + i;
                    }
                }
            }
        }
        let complex = SurfaceComplex::new(n + path.len(), triangles)?;
        Ok(PathCut {
            complex,
            side_a: path.to_vec(),
            side_b: (n..n + path.len()).collect(),
        })
    }

    /// Triangles of `star` reachable from `seed` across edges at `v` that are not blocked.
    fn fan_component(
        &self,
        v: Vertex,
        star: &[usize],
        blocked: &[Edge],
        seed: usize,
    ) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([seed]);
        let mut stack = vec![seed];
        while let Some(t) = stack.pop() {
            for e in triangle_edges(&self.triangles[t]) {
                if !e.contains(v) || blocked.contains(&e) {
                    continue;
                }
                for &u in self.faces_of(e) {
                    if star.contains(&u) && seen.insert(u) {
                        stack.push(u);
                    }
                }
            }
        }
        seen
    }

    fn fan_is_connected(&self, v: Vertex, part: &BTreeSet<usize>, blocked: &[Edge]) -> bool {
        let seed = *part.iter().next().expect("nonempty part");
        let list: Vec<usize> = part.iter().copied().collect();
        self.fan_component(v, &list, blocked, seed).len() == part.len()
    }
}
