//! Isolating blocks as labeled surfaces.
//!
//! An [`IsolatingBlock`] is a triangulated surface whose boundary edges are
//! split into exit and entrance edges, together with the marked subcomplexes
//! `n⁻` (exit points whose backward orbit stays in the block) and `n⁺` (the
//! dual on the entrance side), and optional transit spines standing in for
//! flow segments from the entrance set to the exit set.
//!
//! Corners are derived, never stored: a boundary vertex is a corner exactly
//! when one of its boundary edges is exit and the other is entrance.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::homology::betti_z2;
use crate::surface::{BoundaryCircle, Edge, Subcomplex, SurfaceComplex, SurfaceError, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("invalid complex: {0}")]
    InvalidComplex(#[from] SurfaceError),
    #[error("invalid block: {}", .0.summary())]
    InvalidBlock(ValidationReport),
    #[error("malformed block file: {0}")]
    Format(String),
}

/// Interior simple path from an exit gap point to an entrance point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransitSpine {
    pub path: Vec<Vertex>,
}

impl TransitSpine {
    pub fn new(path: Vec<Vertex>) -> Self {
        Self { path }
    }

    pub fn exit_end(&self) -> Vertex {
        self.path[0]
    }

    pub fn entrance_end(&self) -> Vertex {
        *self.path.last().expect("spine path is nonempty")
    }

    pub fn edge_count(&self) -> usize {
        self.path.len().saturating_sub(1)
    }

    pub fn reversed(&self) -> Self {
        Self {
            path: self.path.iter().rev().copied().collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatingBlock {
    pub name: String,
    pub complex: SurfaceComplex,
    pub exit_edges: BTreeSet<Edge>,
    pub n_minus: Subcomplex,
    pub n_plus: Subcomplex,
    pub spines: Vec<TransitSpine>,
    pub asserts_no_fixed_points: bool,
}

/// On-disk layout; key order is the serialization order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BlockFile {
    vertex_count: usize,
    triangles: Vec<[Vertex; 3]>,
    exit_edges: BTreeSet<Edge>,
    n_minus: Subcomplex,
    n_plus: Subcomplex,
    #[serde(default)]
    spines: Vec<TransitSpine>,
    #[serde(default)]
    asserts_no_fixed_points: bool,
    #[serde(default)]
    name: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcShape {
    Circle,
    Interval,
}

/// A connected component of the exit set or of the entrance set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryArc {
    /// Index into [`BoundaryLayout::circles`].
    pub circle: usize,
    pub shape: ArcShape,
    /// For an interval, runs from the lower-id corner to the other corner.
    pub vertices: Vec<Vertex>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]` (cyclically for circles).
    pub edges: Vec<Edge>,
}

impl BoundaryArc {
    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn min_vertex(&self) -> Vertex {
        *self.vertices.iter().min().expect("arc has vertices")
    }

    /// `(is_vertex, id)` elements in order: v₀, e₀, v₁, e₁, …
    fn elements(&self) -> Vec<Element> {
        let mut out = Vec::with_capacity(self.vertices.len() + self.edges.len());
        for (i, &v) in self.vertices.iter().enumerate() {
            out.push(Element::Vertex(v));
            if let Some(&e) = self.edges.get(i) {
                out.push(Element::Edge(e));
            }
        }
        out
    }

    /// Components of the arc minus `marked`, in arc order. For a circle the
    /// run that wraps around the start is reported once.
    pub fn gaps(&self, marked: &Subcomplex, corners: &BTreeSet<Vertex>) -> Vec<Gap> {
        let elems = self.elements();
        let inside = |e: &Element| match e {
            Element::Vertex(v) => marked.contains_vertex(*v),
            Element::Edge(e) => marked.contains_edge(*e),
        };
        let n = elems.len();
        let runs: Vec<Vec<Element>> = match self.shape {
            ArcShape::Interval => split_runs(&elems, &inside),
            ArcShape::Circle => {
                match (0..n).find(|&i| inside(&elems[i])) {
                    None => vec![elems.clone()],
                    Some(first) => {
                        // rotate so the sequence starts inside the marked set
                        let rotated: Vec<Element> =
                            (0..n).map(|i| elems[(first + i) % n]).collect();
                        split_runs(&rotated, &inside)
                    }
                }
            }
        };
        runs.into_iter()
            .map(|run| {
                let vertices: Vec<Vertex> = run
                    .iter()
                    .filter_map(|e| match e {
                        Element::Vertex(v) => Some(*v),
                        Element::Edge(_) => None,
                    })
                    .collect();
                let edges = run
                    .iter()
                    .filter_map(|e| match e {
                        Element::Edge(e) => Some(*e),
                        Element::Vertex(_) => None,
                    })
                    .collect();
                let touches_corner = vertices.iter().any(|v| corners.contains(v));
                Gap {
                    vertices,
                    edges,
                    touches_corner,
                }
            })
            .collect()
    }

    /// Number of components of `marked` inside this arc.
    pub fn marked_components(&self, marked: &Subcomplex) -> usize {
        let elems = self.elements();
        let inside = |e: &Element| match e {
            Element::Vertex(v) => marked.contains_vertex(*v),
            Element::Edge(e) => marked.contains_edge(*e),
        };
        let flags: Vec<bool> = elems.iter().map(inside).collect();
        let n = flags.len();
        let starts = (0..n)
            .filter(|&i| {
                flags[i]
                    && match self.shape {
                        ArcShape::Interval => i == 0 || !flags[i - 1],
                        ArcShape::Circle => !flags[(i + n - 1) % n],
                    }
            })
            .count();
        if starts == 0 && self.shape == ArcShape::Circle && flags.iter().all(|&f| f) {
            1
        } else {
            starts
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Element {
    Vertex(Vertex),
    Edge(Edge),
}

fn split_runs(elems: &[Element], inside: &impl Fn(&Element) -> bool) -> Vec<Vec<Element>> {
    let mut runs = Vec::new();
    let mut current = Vec::new();
    for e in elems {
        if inside(e) {
            if !current.is_empty() {
                runs.push(std::mem::take(&mut current));
            }
        } else {
            current.push(*e);
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// Component of an exit (entrance) arc minus `n⁻` (`n⁺`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gap {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    pub touches_corner: bool,
}

/// Boundary circles split into exit and entrance components.
#[derive(Clone, Debug)]
pub struct BoundaryLayout {
    pub circles: Vec<BoundaryCircle>,
    pub exit: Vec<BoundaryArc>,
    pub entrance: Vec<BoundaryArc>,
    pub corners: BTreeSet<Vertex>,
}

impl BoundaryLayout {
    pub fn new(complex: &SurfaceComplex, exit_edges: &BTreeSet<Edge>) -> Self {
        let circles = complex.boundary_circles();
        let mut exit = Vec::new();
        let mut entrance = Vec::new();
        let mut corners = BTreeSet::new();
        for (ci, circle) in circles.iter().enumerate() {
            let vs = circle.vertices();
            let es = circle.edges();
            let n = vs.len();
            let labels: Vec<bool> = es.iter().map(|e| exit_edges.contains(e)).collect();
            let changes: Vec<usize> = (0..n)
                .filter(|&i| labels[i] != labels[(i + n - 1) % n])
                .collect();
            if changes.is_empty() {
                let arc = BoundaryArc {
                    circle: ci,
                    shape: ArcShape::Circle,
                    vertices: vs.to_vec(),
                    edges: es.clone(),
                };
                if labels[0] {
                    exit.push(arc);
                } else {
                    entrance.push(arc);
                }
                continue;
            }
            corners.extend(changes.iter().map(|&i| vs[i]));
            for (k, &start) in changes.iter().enumerate() {
                let end = changes[(k + 1) % changes.len()];
                let len = (end + n - start) % n;
                let len = if len == 0 { n } else { len };
                let mut vertices: Vec<Vertex> = (0..=len).map(|j| vs[(start + j) % n]).collect();
                let mut edges: Vec<Edge> = (0..len).map(|j| es[(start + j) % n]).collect();
                if vertices[0] > vertices[len] {
                    vertices.reverse();
                    edges.reverse();
                }
                let arc = BoundaryArc {
                    circle: ci,
                    shape: ArcShape::Interval,
                    vertices,
                    edges,
                };
                if labels[start] {
                    exit.push(arc);
                } else {
                    entrance.push(arc);
                }
            }
        }
        Self {
            circles,
            exit,
            entrance,
            corners,
        }
    }

    pub fn exit_vertices(&self) -> BTreeSet<Vertex> {
        self.exit
            .iter()
            .flat_map(|a| a.vertices.iter().copied())
            .collect()
    }

    pub fn entrance_vertices(&self) -> BTreeSet<Vertex> {
        self.entrance
            .iter()
            .flat_map(|a| a.vertices.iter().copied())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    EmptyBoundary,
    Disconnected,
    ExitEdgeNotOnBoundary,
    NMinusNotSubcomplex,
    NPlusNotSubcomplex,
    NMinusOutsideExit,
    NPlusOutsideEntrance,
    ExitComponentWithoutNMinus,
    EntranceComponentWithoutNPlus,
    SpineMalformed,
    SpineExitEnd,
    SpineEntranceEnd,
    SpineAtCorner,
    SpineTouchesBoundary,
    SpinesOverlap,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub location: String,
    pub message: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub fn summary(&self) -> String {
        self.violations
            .iter()
            .map(|v| format!("{:?} at {}: {}", v.kind, v.location, v.message))
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn push(
        &mut self,
        kind: ViolationKind,
        location: impl Into<String>,
        message: impl Into<String>,
    ) {
        self.violations.push(Violation {
            kind,
            location: location.into(),
            message: message.into(),
        });
    }
}

/// Counts that feed every classification formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExitCensus {
    pub u: usize,
    pub u_c: usize,
    pub s: usize,
    pub s_c: usize,
    pub beta1_n: usize,
    pub obstruction: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionKind {
    /// point component of n⁻
    HalfOpenRay,
    /// arc component
    Strip,
    /// circle component
    Cylinder,
}

impl fmt::Display for SectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SectionKind::HalfOpenRay => "half-open ray",
            SectionKind::Strip => "strip",
            SectionKind::Cylinder => "cylinder",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionPiece {
    pub kind: SectionKind,
    pub vertices: Vec<Vertex>,
}

impl IsolatingBlock {
    pub fn new(
        name: impl Into<String>,
        complex: SurfaceComplex,
        exit_edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        Self {
            name: name.into(),
            complex,
            exit_edges: exit_edges.into_iter().collect(),
            n_minus: Subcomplex::default(),
            n_plus: Subcomplex::default(),
            spines: Vec::new(),
            asserts_no_fixed_points: false,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, BlockError> {
        let file: BlockFile =
            serde_json::from_str(text).map_err(|e| BlockError::Format(e.to_string()))?;
        let complex = SurfaceComplex::new(file.vertex_count, file.triangles)?;
        Ok(Self {
            name: file.name,
            complex,
            exit_edges: file.exit_edges,
            n_minus: file.n_minus,
            n_plus: file.n_plus,
            spines: file.spines,
            asserts_no_fixed_points: file.asserts_no_fixed_points,
        })
    }

    pub fn to_json(&self) -> String {
        let file = BlockFile {
            vertex_count: self.complex.vertex_count(),
            triangles: self.complex.triangles().to_vec(),
            exit_edges: self.exit_edges.clone(),
            n_minus: self.n_minus.clone(),
            n_plus: self.n_plus.clone(),
            spines: self.spines.clone(),
            asserts_no_fixed_points: self.asserts_no_fixed_points,
            name: self.name.clone(),
        };
        serde_json::to_string(&file).expect("block file serializes")
    }

    pub fn layout(&self) -> BoundaryLayout {
        BoundaryLayout::new(&self.complex, &self.exit_edges)
    }

    /// Exit set N^o as a subcomplex.
    pub fn exit_subcomplex(&self) -> Subcomplex {
        Subcomplex::from_edges(self.exit_edges.iter().copied())
    }

    pub fn entrance_edges(&self) -> BTreeSet<Edge> {
        self.complex
            .boundary_edges()
            .into_iter()
            .filter(|e| !self.exit_edges.contains(e))
            .collect()
    }

    pub fn entrance_subcomplex(&self) -> Subcomplex {
        Subcomplex::from_edges(self.entrance_edges())
    }

    pub fn corners(&self) -> BTreeSet<Vertex> {
        self.layout().corners
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let c = &self.complex;
        if !c.is_connected() {
            report.push(
                ViolationKind::Disconnected,
                "complex",
                "block complex is not connected",
            );
        }
        let boundary: BTreeSet<Edge> = c.boundary_edges().into_iter().collect();
        if boundary.is_empty() {
            report.push(
                ViolationKind::EmptyBoundary,
                "complex",
                "block has empty boundary",
            );
        }
        for e in &self.exit_edges {
            if !boundary.contains(e) {
                report.push(
                    ViolationKind::ExitEdgeNotOnBoundary,
                    format!("edge {e}"),
                    "exit edge is not a boundary edge",
                );
            }
        }
        let layout = self.layout();
        let exit_v = layout.exit_vertices();
        let entrance_v = layout.entrance_vertices();
        let entrance_e = self.entrance_edges();
        check_marking(
            &mut report,
            &self.n_minus,
            "n_minus",
            &exit_v,
            &self.exit_edges,
            ViolationKind::NMinusNotSubcomplex,
            ViolationKind::NMinusOutsideExit,
        );
        check_marking(
            &mut report,
            &self.n_plus,
            "n_plus",
            &entrance_v,
            &entrance_e,
            ViolationKind::NPlusNotSubcomplex,
            ViolationKind::NPlusOutsideEntrance,
        );
        for arc in &layout.exit {
            if !arc
                .vertices
                .iter()
                .any(|v| self.n_minus.contains_vertex(*v))
            {
                report.push(
                    ViolationKind::ExitComponentWithoutNMinus,
                    arc_location(arc),
                    "exit component contains no component of n_minus",
                );
            }
        }
        for arc in &layout.entrance {
            if !arc.vertices.iter().any(|v| self.n_plus.contains_vertex(*v)) {
                report.push(
                    ViolationKind::EntranceComponentWithoutNPlus,
                    arc_location(arc),
                    "entrance component contains no component of n_plus",
                );
            }
        }
        self.check_spines(&mut report, &layout, &boundary);
        report
    }

    fn check_spines(
        &self,
        report: &mut ValidationReport,
        layout: &BoundaryLayout,
        boundary: &BTreeSet<Edge>,
    ) {
        let c = &self.complex;
        let boundary_v = c.boundary_vertices();
        let exit_v = layout.exit_vertices();
        let entrance_v = layout.entrance_vertices();
        let mut used: BTreeSet<Vertex> = BTreeSet::new();
        for (i, spine) in self.spines.iter().enumerate() {
            let loc = format!("spine {i}");
            let p = &spine.path;
            if p.len() < 2 {
                report.push(
                    ViolationKind::SpineMalformed,
                    loc,
                    "spine needs at least one edge",
                );
                continue;
            }
            if let Some(v) = p.iter().find(|&&v| v >= c.vertex_count()) {
                report.push(
                    ViolationKind::SpineMalformed,
                    loc,
                    format!("vertex {v} out of range"),
                );
                continue;
            }
            let distinct: BTreeSet<Vertex> = p.iter().copied().collect();
            if distinct.len() != p.len() {
                report.push(
                    ViolationKind::SpineMalformed,
                    loc.clone(),
                    "spine is not simple",
                );
            }
            for w in p.windows(2) {
                let e = Edge::new(w[0], w[1]);
                if !c.has_edge(e) {
                    report.push(
                        ViolationKind::SpineMalformed,
                        loc.clone(),
                        format!("edge {e} missing"),
                    );
                } else if boundary.contains(&e) {
                    report.push(
                        ViolationKind::SpineTouchesBoundary,
                        loc.clone(),
                        format!("edge {e} is a boundary edge"),
                    );
                }
            }
            for &v in &p[1..p.len() - 1] {
                if boundary_v.contains(&v) {
                    report.push(
                        ViolationKind::SpineTouchesBoundary,
                        loc.clone(),
                        format!("interior vertex {v} lies on the boundary"),
                    );
                }
            }
            let (a, b) = (spine.exit_end(), spine.entrance_end());
            if layout.corners.contains(&a) || layout.corners.contains(&b) {
                report.push(
                    ViolationKind::SpineAtCorner,
                    loc.clone(),
                    "spine ends where the exit/entrance label changes",
                );
            }
            if !exit_v.contains(&a) || self.n_minus.contains_vertex(a) {
                report.push(
                    ViolationKind::SpineExitEnd,
                    loc.clone(),
                    format!("start {a} is not in the exit set minus n_minus"),
                );
            }
            if !entrance_v.contains(&b) || self.n_plus.contains_vertex(b) {
                report.push(
                    ViolationKind::SpineEntranceEnd,
                    loc.clone(),
                    format!("end {b} is not in the entrance set minus n_plus"),
                );
            }
            if distinct.iter().any(|v| used.contains(v)) {
                report.push(
                    ViolationKind::SpinesOverlap,
                    loc,
                    "spine shares a vertex with an earlier spine",
                );
            }
            used.extend(distinct);
        }
    }

    pub fn ensure_valid(&self) -> Result<(), BlockError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(BlockError::InvalidBlock(report))
        }
    }

    pub fn census(&self) -> Result<ExitCensus, BlockError> {
        self.ensure_valid()?;
        Ok(self.census_unchecked())
    }

    pub(crate) fn census_unchecked(&self) -> ExitCensus {
        let layout = self.layout();
        let obstruction = obstruction_of(&layout, &self.n_minus);
        // entrance arcs of this block are the exit arcs of the reversed block
        let count_intervals = |arcs: &[BoundaryArc]| {
            arcs.iter()
                .filter(|a| a.shape == ArcShape::Interval)
                .count()
        };
        ExitCensus {
            u: layout.exit.len(),
            u_c: count_intervals(&layout.exit),
            s: layout.entrance.len(),
            s_c: count_intervals(&layout.entrance),
            beta1_n: betti_z2(&self.complex).1,
            obstruction,
        }
    }

    /// The same block for the time-reversed flow.
    pub fn reverse(&self) -> Result<IsolatingBlock, BlockError> {
        self.ensure_valid()?;
        Ok(self.reverse_unchecked())
    }

    pub(crate) fn reverse_unchecked(&self) -> IsolatingBlock {
        IsolatingBlock {
            name: self.name.clone(),
            complex: self.complex.clone(),
            exit_edges: self.entrance_edges(),
            n_minus: self.n_plus.clone(),
            n_plus: self.n_minus.clone(),
            spines: self.spines.iter().map(TransitSpine::reversed).collect(),
            asserts_no_fixed_points: self.asserts_no_fixed_points,
        }
    }

    /// Kind of initial-section piece carried by each component of `n⁻`.
    pub fn section_census(&self) -> Result<Vec<SectionPiece>, BlockError> {
        self.ensure_valid()?;
        let circles = self.complex.boundary_circles();
        Ok(self
            .n_minus
            .components()
            .into_iter()
            .map(|comp| {
                let kind = if comp.edges.is_empty() {
                    SectionKind::HalfOpenRay
                } else if circles.iter().any(|c| {
                    c.edges().iter().all(|e| comp.edges.contains(e)) && c.len() == comp.edges.len()
                }) {
                    SectionKind::Cylinder
                } else {
                    SectionKind::Strip
                };
                SectionPiece {
                    kind,
                    vertices: comp.vertices.into_iter().collect(),
                }
            })
            .collect())
    }
}

/// Number of components of N^o − n⁻ that miss every corner.
pub fn obstruction_of(layout: &BoundaryLayout, n_minus: &Subcomplex) -> usize {
    layout
        .exit
        .iter()
        .map(|arc| {
            arc.gaps(n_minus, &layout.corners)
                .iter()
                .filter(|g| !g.touches_corner)
                .count()
        })
        .sum()
}

fn arc_location(arc: &BoundaryArc) -> String {
    let shape = match arc.shape {
        ArcShape::Circle => "circle",
        ArcShape::Interval => "interval",
    };
    format!("{shape} starting at vertex {}", arc.vertices[0])
}

fn check_marking(
    report: &mut ValidationReport,
    marked: &Subcomplex,
    name: &str,
    allowed_v: &BTreeSet<Vertex>,
    allowed_e: &BTreeSet<Edge>,
    not_sub: ViolationKind,
    outside: ViolationKind,
) {
    if !marked.is_closed() {
        report.push(
            not_sub,
            name,
            "an edge endpoint is missing from the vertex set",
        );
    }
    for v in &marked.vertices {
        if !allowed_v.contains(v) {
            report.push(
                outside,
                format!("{name} vertex {v}"),
                "vertex outside its boundary set",
            );
        }
    }
    for e in &marked.edges {
        if !allowed_e.contains(e) {
            report.push(
                outside,
                format!("{name} edge {e}"),
                "edge outside its boundary set",
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::{self, tables};

    #[test]
    fn json_round_trip_is_exact() {
        for entry in builders::corpus() {
            let text = entry.block.to_json();
            let back = IsolatingBlock::from_json(&text).unwrap();
            assert_eq!(back, entry.block);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn json_rejects_unknown_keys() {
        let mut v: serde_json::Value =
            serde_json::from_str(&builders::standard("square_saddle").unwrap().to_json()).unwrap();
        v["colour"] = serde_json::json!("blue");
        assert!(matches!(
            IsolatingBlock::from_json(&v.to_string()),
            Err(BlockError::Format(_))
        ));
        let mut v: serde_json::Value =
            serde_json::from_str(&builders::standard("square_saddle").unwrap().to_json()).unwrap();
        v["n_minus"]["faces"] = serde_json::json!([]);
        assert!(matches!(
            IsolatingBlock::from_json(&v.to_string()),
            Err(BlockError::Format(_))
        ));
    }

    #[test]
    fn json_defaults_and_edge_order() {
        let text = r#"{"vertex_count":3,"triangles":[[0,1,2]],"exit_edges":[[1,0],[2,1],[2,0]],
            "n_minus":{"vertices":[0,1,2],"edges":[[0,1],[1,2],[0,2]]},"n_plus":{"vertices":[],"edges":[]}}"#;
        let b = IsolatingBlock::from_json(text).unwrap();
        assert!(b.spines.is_empty());
        assert!(!b.asserts_no_fixed_points);
        assert!(b.exit_edges.contains(&Edge::new(0, 1)));
        assert!(b.to_json().contains("[[0,1],[0,2],[1,2]]"));
        assert!(b.validate().is_valid());
    }

    #[test]
    fn pants_repeller_is_valid() {
        let b = builders::standard("pants_repeller").unwrap();
        assert!(b.validate().is_valid(), "{:?}", b.validate());
    }

    #[test]
    fn exit_circle_without_n_minus() {
        let c = tables::hex_annulus();
        let mut b = IsolatingBlock::new(
            "broken",
            c,
            [Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)],
        );
        b.n_plus = Subcomplex::new([3], []);
        let report = b.validate();
        assert!(report.has(ViolationKind::ExitComponentWithoutNMinus));
        assert_eq!(report.violations.len(), 1);
        assert!(matches!(b.census(), Err(BlockError::InvalidBlock(_))));
    }

    #[test]
    fn spine_at_label_change_is_rejected() {
        let mut b = builders::standard("square_saddle").unwrap();
        // vertex 2 is where the first exit arc meets an entrance arc
        b.spines = vec![TransitSpine::new(vec![2, 8, 6])];
        let report = b.validate();
        assert!(report.has(ViolationKind::SpineAtCorner), "{report:?}");
    }

    #[test]
    fn marking_outside_its_side() {
        let mut b = builders::standard("square_saddle").unwrap();
        b.n_minus.vertices.insert(3);
        assert!(b.validate().has(ViolationKind::NMinusOutsideExit));
        let mut b = builders::standard("square_saddle").unwrap();
        b.n_plus.edges.insert(Edge::new(2, 3));
        assert!(b.validate().has(ViolationKind::NPlusNotSubcomplex));
    }

    #[test]
    fn census_of_standard_blocks() {
        let pants = builders::standard("pants_repeller")
            .unwrap()
            .census()
            .unwrap();
        assert_eq!((pants.u, pants.u_c, pants.obstruction), (3, 0, 0));
        let annulus = builders::standard("annulus_nonregular")
            .unwrap()
            .census()
            .unwrap();
        assert_eq!((annulus.u, annulus.u_c, annulus.obstruction), (1, 0, 1));
        let three = builders::standard("three_arc_circle_nonregular")
            .unwrap()
            .census()
            .unwrap();
        assert_eq!(three.obstruction, 3);
        let saddle = builders::standard("square_saddle")
            .unwrap()
            .census()
            .unwrap();
        assert_eq!(
            (saddle.u, saddle.u_c, saddle.s, saddle.s_c, saddle.beta1_n),
            (2, 2, 2, 2, 0)
        );
    }

    #[test]
    fn interval_with_three_marked_arcs() {
        // bottom side of a 10×2 grid is one exit interval with corners at both ends
        let c = tables::grid_domain(10, 2, &[]);
        let v = |x: usize, y: usize| y * 11 + x;
        let exit: Vec<Edge> = (0..10).map(|x| Edge::new(v(x, 0), v(x + 1, 0))).collect();
        let mut b = IsolatingBlock::new("three_arcs", c, exit);
        b.n_minus = Subcomplex::new(
            [v(1, 0), v(2, 0), v(4, 0), v(5, 0), v(7, 0), v(8, 0)],
            [
                Edge::new(v(1, 0), v(2, 0)),
                Edge::new(v(4, 0), v(5, 0)),
                Edge::new(v(7, 0), v(8, 0)),
            ],
        );
        b.n_plus = Subcomplex::new([v(5, 2)], []);
        let census = b.census().unwrap();
        assert_eq!((census.u, census.u_c, census.obstruction), (1, 1, 2));
        let layout = b.layout();
        assert_eq!(layout.exit[0].vertices[0], v(0, 0));
        assert_eq!(layout.exit[0].gaps(&b.n_minus, &layout.corners).len(), 4);
    }

    #[test]
    fn reverse_is_an_involution() {
        for entry in builders::corpus() {
            let r = entry.block.reverse().unwrap();
            assert_eq!(r.reverse().unwrap(), entry.block);
            let (c, rc) = (entry.block.census().unwrap(), r.census().unwrap());
            assert_eq!((rc.u, rc.u_c), (c.s, c.s_c));
            assert_eq!(c.u_c, c.s_c, "{}", entry.block.name);
        }
    }

    #[test]
    fn reverse_swaps_attractor_and_repeller() {
        let a = builders::standard("annulus_attractor").unwrap();
        assert!(a.exit_edges.is_empty());
        let r = a.reverse().unwrap();
        assert_eq!(r.exit_edges.len(), r.complex.boundary_edges().len());
    }

    #[test]
    fn section_kinds() {
        let pants = builders::standard("pants_repeller")
            .unwrap()
            .section_census()
            .unwrap();
        assert_eq!(pants.len(), 3);
        assert!(pants.iter().all(|p| p.kind == SectionKind::Cylinder));
        let saddle = builders::standard("square_saddle")
            .unwrap()
            .section_census()
            .unwrap();
        assert_eq!(
            saddle.iter().map(|p| p.kind).collect::<Vec<_>>(),
            vec![SectionKind::HalfOpenRay; 2]
        );
        let attractor = builders::standard("annulus_attractor")
            .unwrap()
            .section_census()
            .unwrap();
        assert!(attractor.is_empty());
        let three = builders::standard("three_arc_circle_nonregular")
            .unwrap()
            .section_census()
            .unwrap();
        assert!(three.iter().all(|p| p.kind == SectionKind::Strip));
    }
}
