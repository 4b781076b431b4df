//! Z₂ cohomology of simplicial pairs, relative cup products and the
//! intersection form on H¹.
//!
//! Cochains are bit vectors indexed by the complex's edge order
//! ([`SurfaceComplex::edges`]) or triangle order. Relative cochains vanish on
//! the subcomplex.

use std::collections::BTreeMap;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::gf2::{BitVec, Gf2Matrix, RowBasis};
use crate::surface::{Edge, Subcomplex, SurfaceComplex, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("selector is not a closed subcomplex of the complex: {0}")]
    NotASubcomplex(String),
    #[error("cochain is not a relative 1-cocycle")]
    NotACocycle,
    #[error("cochain length {got} does not match {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("intersection form needs H² of dimension at most one, found {0}")]
    FormUndefined(usize),
}

/// Dimensions of H⁰, H¹, H² over Z₂.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CohomologyIndex {
    pub dim0: usize,
    pub dim1: usize,
    pub dim2: usize,
}

impl CohomologyIndex {
    pub fn new(dim0: usize, dim1: usize, dim2: usize) -> Self {
        Self { dim0, dim1, dim2 }
    }

    pub fn euler(&self) -> i64 {
        self.dim0 as i64 - self.dim1 as i64 + self.dim2 as i64
    }
}

impl std::fmt::Display for CohomologyIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.dim0, self.dim1, self.dim2)
    }
}

impl Serialize for Gf2Matrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows()))?;
        for r in 0..self.rows() {
            let row: Vec<u8> = (0..self.cols()).map(|c| u8::from(self.get(r, c))).collect();
            seq.serialize_element(&row)?;
        }
        seq.end()
    }
}

/// Cup-product form `(α, β) ↦ α⌣β` on a chosen H¹ basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    pub basis_size: usize,
    pub matrix: Gf2Matrix,
    pub rank: usize,
    pub has_self_square: bool,
}

/// Relative cochain complex of `(complex, sub)` together with the reduced
/// coboundary images and representative cocycle bases.
#[derive(Clone, Debug)]
pub struct RelativeCohomology {
    index: CohomologyIndex,
    edges: Vec<Edge>,
    /// Sorted vertex triples, in triangle order.
    faces: Vec<[Vertex; 3]>,
    edge_index: BTreeMap<Edge, usize>,
    relative_edge: Vec<bool>,
    /// im δ⁰ in full edge coordinates.
    image1: RowBasis,
    /// im δ¹ in triangle coordinates.
    image2: RowBasis,
    h1_basis: Vec<BitVec>,
    h2_basis: Vec<BitVec>,
}

fn check_subcomplex(c: &SurfaceComplex, sub: &Subcomplex) -> Result<(), HomologyError> {
    if let Some(v) = sub.vertices.iter().find(|&&v| v >= c.vertex_count()) {
        return Err(HomologyError::NotASubcomplex(format!(
            "vertex {v} not in complex"
        )));
    }
    if let Some(e) = sub.edges.iter().find(|e| !c.has_edge(**e)) {
        return Err(HomologyError::NotASubcomplex(format!(
            "edge {e} not in complex"
        )));
    }
    if !sub.is_closed() {
        return Err(HomologyError::NotASubcomplex(
            "edge endpoint missing from vertex set".into(),
        ));
    }
    Ok(())
}

impl RelativeCohomology {
    pub fn compute(c: &SurfaceComplex, sub: &Subcomplex) -> Result<Self, HomologyError> {
        check_subcomplex(c, sub)?;
        let edges: Vec<Edge> = c.edges().collect();
        let edge_index: BTreeMap<Edge, usize> =
            edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let relative_edge: Vec<bool> = edges.iter().map(|e| !sub.contains_edge(*e)).collect();
        let faces: Vec<[Vertex; 3]> = c
            .triangles()
            .iter()
            .map(|t| {
                let mut s = *t;
                s.sort_unstable();
                s
            })
            .collect();
        let n1 = edges.len();
        let n2 = faces.len();

        // δ⁰ of each relative vertex, restricted to relative edges
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); c.vertex_count()];
        for (i, e) in edges.iter().enumerate() {
            if relative_edge[i] {
                incident[e.lo()].push(i);
                incident[e.hi()].push(i);
            }
        }
        let mut image1 = RowBasis::new(n1);
        let mut relative_vertices = 0usize;
        for (v, inc) in incident.iter().enumerate() {
            if sub.contains_vertex(v) {
                continue;
            }
            relative_vertices += 1;
            image1.insert(BitVec::from_indices(n1, inc.iter().copied()));
        }
        let rank0 = image1.rank();

        // δ¹ as an n2 × n1 matrix; columns of sub edges are zero
        let mut delta1 = Gf2Matrix::zeros(n2, n1);
        for (t, f) in faces.iter().enumerate() {
            for e in [
                Edge::new(f[0], f[1]),
                Edge::new(f[1], f[2]),
                Edge::new(f[0], f[2]),
            ] {
                let i = edge_index[&e];
                if relative_edge[i] {
                    delta1.set(t, i, true);
                }
            }
        }
        let mut image2 = RowBasis::new(n2);
        for (i, _) in relative_edge.iter().enumerate().filter(|(_, &r)| r) {
            image2.insert(delta1.column(i));
        }
        let rank1 = image2.rank();

        // relative 1-cocycles: kernel of δ¹ on relative edges
        let relative_positions: Vec<usize> = (0..n1).filter(|&i| relative_edge[i]).collect();
        let mut restricted = Gf2Matrix::zeros(n2, relative_positions.len());
        for (j, &i) in relative_positions.iter().enumerate() {
            for t in delta1.column(i).ones() {
                restricted.set(t, j, true);
            }
        }
        let mut classes = image1.clone();
        let mut h1_basis = Vec::new();
        for z in restricted.nullspace() {
            let lifted = BitVec::from_indices(n1, z.ones().map(|j| relative_positions[j]));
            if classes.insert(lifted.clone()) {
                h1_basis.push(lifted);
            }
        }

        let h2_basis: Vec<BitVec> = image2
            .free_columns()
            .into_iter()
            .map(|t| BitVec::unit(n2, t))
            .collect();

        let index = CohomologyIndex {
            dim0: relative_vertices - rank0,
            dim1: relative_positions.len() - rank1 - rank0,
            dim2: n2 - rank1,
        };
        debug_assert_eq!(index.dim1, h1_basis.len());
        Ok(Self {
            index,
            edges,
            faces,
            edge_index,
            relative_edge,
            image1,
            image2,
            h1_basis,
            h2_basis,
        })
    }

    pub fn index(&self) -> CohomologyIndex {
        self.index
    }

    /// Edge order used for 1-cochain coordinates.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_position(&self, e: Edge) -> Option<usize> {
        self.edge_index.get(&e).copied()
    }

    /// Representative relative 1-cocycles of an H¹ basis.
    pub fn h1_basis(&self) -> &[BitVec] {
        &self.h1_basis
    }

    /// Representative 2-cochains of an H² basis.
    pub fn h2_basis(&self) -> &[BitVec] {
        &self.h2_basis
    }

    pub fn coboundary1(&self, alpha: &BitVec) -> Result<BitVec, HomologyError> {
        self.check_len(alpha.len(), self.edges.len())?;
        let mut out = BitVec::zeros(self.faces.len());
        for (t, f) in self.faces.iter().enumerate() {
            let s = [
                Edge::new(f[0], f[1]),
                Edge::new(f[1], f[2]),
                Edge::new(f[0], f[2]),
            ]
            .iter()
            .filter(|e| alpha.get(self.edge_index[e]))
            .count();
            if s % 2 == 1 {
                out.set(t, true);
            }
        }
        Ok(out)
    }

    pub fn is_relative_cocycle(&self, alpha: &BitVec) -> bool {
        alpha.len() == self.edges.len()
            && alpha.ones().all(|i| self.relative_edge[i])
            && self
                .coboundary1(alpha)
                .map(|d| d.is_zero())
                .unwrap_or(false)
    }

    /// Whether two relative 1-cocycles differ by a relative coboundary.
    pub fn same_h1_class(&self, a: &BitVec, b: &BitVec) -> bool {
        let mut d = a.clone();
        d.xor_assign(b);
        self.image1.contains(&d)
    }

    /// Coordinates of the class of a 2-cochain in the H² basis.
    pub fn class2(&self, cochain: &BitVec) -> Result<BitVec, HomologyError> {
        self.check_len(cochain.len(), self.faces.len())?;
        let reduced = self.image2.reduce(cochain);
        let free = self.image2.free_columns();
        let mut out = BitVec::zeros(free.len());
        for (j, &t) in free.iter().enumerate() {
            if reduced.get(t) {
                out.set(j, true);
            }
        }
        Ok(out)
    }

    /// Simplicial cup product on cochains: on `[v₀<v₁<v₂]` it is `α([v₀,v₁])·β([v₁,v₂])`.
    pub fn cup_cochain(&self, alpha: &BitVec, beta: &BitVec) -> Result<BitVec, HomologyError> {
        if !self.is_relative_cocycle(alpha) || !self.is_relative_cocycle(beta) {
            return Err(HomologyError::NotACocycle);
        }
        let mut out = BitVec::zeros(self.faces.len());
        for (t, f) in self.faces.iter().enumerate() {
            let front = alpha.get(self.edge_index[&Edge::new(f[0], f[1])]);
            let back = beta.get(self.edge_index[&Edge::new(f[1], f[2])]);
            if front && back {
                out.set(t, true);
            }
        }
        Ok(out)
    }

    /// Class of `α⌣β` in H² coordinates.
    pub fn cup(&self, alpha: &BitVec, beta: &BitVec) -> Result<BitVec, HomologyError> {
        let product = self.cup_cochain(alpha, beta)?;
        self.class2(&product)
    }

    pub fn intersection_form(&self) -> Result<IntersectionForm, HomologyError> {
        let n = self.h1_basis.len();
        let mut matrix = Gf2Matrix::zeros(n, n);
        match self.index.dim2 {
            0 => {}
            1 => {
                for i in 0..n {
                    for j in 0..n {
                        let class = self.cup(&self.h1_basis[i], &self.h1_basis[j])?;
                        matrix.set(i, j, class.get(0));
                    }
                }
            }
            d => return Err(HomologyError::FormUndefined(d)),
        }
        // α ↦ α⌣α is additive over Z₂, so checking the basis suffices
        let has_self_square = (0..n).any(|i| matrix.get(i, i));
        let rank = matrix.rank();
        Ok(IntersectionForm {
            basis_size: n,
            matrix,
            rank,
            has_self_square,
        })
    }

    fn check_len(&self, got: usize, expected: usize) -> Result<(), HomologyError> {
        if got == expected {
            Ok(())
        } else {
            Err(HomologyError::WrongLength { expected, got })
        }
    }
}

pub fn relative_cohomology(
    c: &SurfaceComplex,
    sub: &Subcomplex,
) -> Result<RelativeCohomology, HomologyError> {
    RelativeCohomology::compute(c, sub)
}

/// Class of `α⌣β` in H²(c, sub), in the coordinates of [`RelativeCohomology::h2_basis`].
pub fn cup_product(
    c: &SurfaceComplex,
    sub: &Subcomplex,
    alpha: &BitVec,
    beta: &BitVec,
) -> Result<BitVec, HomologyError> {
    RelativeCohomology::compute(c, sub)?.cup(alpha, beta)
}

pub fn intersection_form(
    c: &SurfaceComplex,
    sub: &Subcomplex,
) -> Result<IntersectionForm, HomologyError> {
    RelativeCohomology::compute(c, sub)?.intersection_form()
}

/// Absolute Z₂ Betti numbers.
pub fn betti_z2(c: &SurfaceComplex) -> (usize, usize, usize) {
    let idx = RelativeCohomology::compute(c, &Subcomplex::default())
        .expect("empty selector is always a subcomplex")
        .index();
    (idx.dim0, idx.dim1, idx.dim2)
}
