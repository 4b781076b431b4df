//! Surgery that turns an isolating block into a regular one.
//!
//! Each cut removes a thin flow rectangle around a transit spine. Phase 1
//! opens every exit circle that is not already part of `n⁻`; phase 2 splits
//! every exit interval carrying more than one component of `n⁻`.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::block::{obstruction_of, ArcShape, BlockError, IsolatingBlock, TransitSpine};
use crate::surface::{Edge, SurfaceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RegularizeError {
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error("spine {0:?} is not one of the block's spines")]
    UnknownSpine(Vec<usize>),
    #[error("cutting along {0:?} disconnects the block")]
    DisconnectingCut(Vec<usize>),
    #[error("cut is not properly embedded: {0}")]
    NotProperlyEmbedded(String),
    #[error("cutting along {spine:?} leaves an inconsistent block: {report}")]
    InconsistentCut { spine: Vec<usize>, report: String },
    #[error("no transit spine starts in the gap {gap:?}")]
    InsufficientTransitData { gap: Vec<usize> },
}

impl From<SurfaceError> for RegularizeError {
    fn from(e: SurfaceError) -> Self {
        match e {
            SurfaceError::NotProperlyEmbedded(m) => RegularizeError::NotProperlyEmbedded(m),
            other => RegularizeError::NotProperlyEmbedded(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurgeryStep {
    pub phase: u8,
    pub spine: TransitSpine,
    pub obstruction_before: usize,
    pub obstruction_after: usize,
    pub euler_before: i64,
    pub euler_after: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SurgeryTrace {
    pub steps: Vec<SurgeryStep>,
}

impl SurgeryTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Cuts `b` along one of its spines and relabels the two new boundary arcs.
pub fn cut_once(
    b: &IsolatingBlock,
    spine: &TransitSpine,
) -> Result<IsolatingBlock, RegularizeError> {
    b.ensure_valid()?;
    let index = b
        .spines
        .iter()
        .position(|s| s == spine)
        .ok_or_else(|| RegularizeError::UnknownSpine(spine.path.clone()))?;

    let mut complex = b.complex.clone();
    let mut path = spine.path.clone();
    if path.len() == 2 {
        complex = complex.subdivide_edge(Edge::new(path[0], path[1]))?;
        path.insert(1, complex.vertex_count() - 1);
    }

    let old_boundary = complex.boundary_edges();
    let cut = complex.cut_along_path(&path)?;
    let k = path.len() - 1;
    let split = k.div_ceil(2);

    let mut exit_edges = BTreeSet::new();
    for e in old_boundary {
        if !b.exit_edges.contains(&e) {
            continue;
        }
        // the edge's only triangle still holds it, possibly with renamed ends
        let face = complex.faces_of(e)[0];
        let old_t = complex.triangles()[face];
        let new_t = cut.complex.triangles()[face];
        let rename = |v| new_t[old_t.iter().position(|&w| w == v).expect("vertex of face")];
        exit_edges.insert(Edge::new(rename(e.lo()), rename(e.hi())));
    }
    for side in [&cut.side_a, &cut.side_b] {
        for j in 0..split {
            exit_edges.insert(Edge::new(side[j], side[j + 1]));
        }
    }

    if !cut.complex.is_connected() {
        return Err(RegularizeError::DisconnectingCut(spine.path.clone()));
    }
    let mut spines = b.spines.clone();
    spines.remove(index);
    let out = IsolatingBlock {
        name: b.name.clone(),
        complex: cut.complex,
        exit_edges,
        n_minus: b.n_minus.clone(),
        n_plus: b.n_plus.clone(),
        spines,
        asserts_no_fixed_points: b.asserts_no_fixed_points,
    };
    let report = out.validate();
    if !report.is_valid() {
        return Err(RegularizeError::InconsistentCut {
            spine: spine.path.clone(),
            report: report.summary(),
        });
    }
    Ok(out)
}

/// A gap that must be cut, and the phase it belongs to.
fn next_gap(b: &IsolatingBlock) -> Option<(u8, Vec<usize>)> {
    let layout = b.layout();
    let mut circles: Vec<_> = layout
        .exit
        .iter()
        .filter(|a| a.shape == ArcShape::Circle)
        .filter(|a| !a.edges.iter().all(|e| b.n_minus.contains_edge(*e)))
        .collect();
    circles.sort_by_key(|a| a.min_vertex());
    if let Some(arc) = circles.first() {
        let gap_vertices: Vec<usize> = arc
            .gaps(&b.n_minus, &layout.corners)
            .into_iter()
            .flat_map(|g| g.vertices)
            .collect();
        return Some((1, gap_vertices));
    }
    let mut intervals: Vec<_> = layout
        .exit
        .iter()
        .filter(|a| a.shape == ArcShape::Interval && a.marked_components(&b.n_minus) >= 2)
        .collect();
    intervals.sort_by_key(|a| a.min_vertex());
    let arc = intervals.first()?;
    let gap = arc
        .gaps(&b.n_minus, &layout.corners)
        .into_iter()
        .find(|g| !g.touches_corner)
        .expect("two marked components leave an inner gap");
    Some((2, gap.vertices))
}

/// Repeats [`cut_once`] until the exit-side obstruction vanishes.
pub fn regularize(b: &IsolatingBlock) -> Result<(IsolatingBlock, SurgeryTrace), RegularizeError> {
    b.ensure_valid()?;
    let mut current = b.clone();
    let mut trace = SurgeryTrace::default();
    while let Some((phase, gap)) = next_gap(&current) {
        let spine = current
            .spines
            .iter()
            .find(|s| gap.contains(&s.exit_end()))
            .cloned()
            .ok_or_else(|| RegularizeError::InsufficientTransitData { gap: gap.clone() })?;
        let before = obstruction_of(&current.layout(), &current.n_minus);
        let euler_before = current.complex.euler_characteristic();
        let next = cut_once(&current, &spine)?;
        trace.steps.push(SurgeryStep {
            phase,
            spine,
            obstruction_before: before,
            obstruction_after: obstruction_of(&next.layout(), &next.n_minus),
            euler_before,
            euler_after: next.complex.euler_characteristic(),
        });
        current = next;
    }
    Ok((current, trace))
}

/// True when no exit-side surgery is needed.
pub fn is_regular(b: &IsolatingBlock) -> bool {
    next_gap(b).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn already_regular_is_untouched() {
        let b = builders::standard("pants_repeller").unwrap();
        let (r, trace) = regularize(&b).unwrap();
        assert!(trace.is_empty());
        assert_eq!(r, b);
    }

    #[test]
    fn annulus_opens_to_disk() {
        let b = builders::standard("annulus_nonregular").unwrap();
        let (r, trace) = regularize(&b).unwrap();
        assert_eq!(trace.len(), 1);
        assert_eq!(trace.steps[0].phase, 1);
        assert!(r.complex.signature().unwrap().is_disk());
        let census = r.census().unwrap();
        assert_eq!((census.u, census.u_c, census.obstruction), (1, 1, 0));
        let layout = r.layout();
        assert!(layout.exit[0].contains_vertex(1));
    }

    #[test]
    fn three_arcs_need_three_cuts() {
        let b = builders::standard("three_arc_circle_nonregular").unwrap();
        let (r, trace) = regularize(&b).unwrap();
        let phases: Vec<u8> = trace.steps.iter().map(|s| s.phase).collect();
        assert_eq!(phases, vec![1, 2, 2]);
        let obstructions: Vec<usize> = trace.steps.iter().map(|s| s.obstruction_before).collect();
        assert_eq!(obstructions, vec![3, 2, 1]);
        assert_eq!(r.census().unwrap().obstruction, 0);
        for s in &trace.steps {
            assert_eq!(s.euler_after, s.euler_before + 1);
        }
    }

    #[test]
    fn interval_split_adds_a_component() {
        let b = builders::standard("interval_split_nonregular").unwrap();
        let before = b.census().unwrap();
        let spine = b.spines[0].clone();
        let after = cut_once(&b, &spine).unwrap().census().unwrap();
        assert_eq!(after.u, before.u + 1);
        assert_eq!(after.obstruction + 1, before.obstruction);
    }

    #[test]
    fn missing_spine_is_reported() {
        let mut b = builders::standard("annulus_nonregular").unwrap();
        b.spines.clear();
        assert!(matches!(
            regularize(&b),
            Err(RegularizeError::InsufficientTransitData { .. })
        ));
    }

    #[test]
    fn foreign_spine_is_rejected() {
        let b = builders::standard("annulus_nonregular").unwrap();
        let stray = TransitSpine::new(vec![2, 5]);
        assert!(matches!(
            cut_once(&b, &stray),
            Err(RegularizeError::UnknownSpine(_))
        ));
    }

    #[test]
    fn alternative_spines_agree() {
        let a = builders::standard("three_arc_circle_nonregular").unwrap();
        let b = builders::three_arc_circle_alternative();
        let (ra, _) = regularize(&a).unwrap();
        let (rb, _) = regularize(&b).unwrap();
        assert_eq!(
            ra.complex.signature().unwrap(),
            rb.complex.signature().unwrap()
        );
        assert_eq!(ra.census().unwrap(), rb.census().unwrap());
    }
}
