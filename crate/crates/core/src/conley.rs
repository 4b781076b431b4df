//! Conley index classification of isolated invariant sets of surface flows,
//! and the checkers built on it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::block::{BlockError, ExitCensus, IsolatingBlock};
use crate::homology::{
    intersection_form, relative_cohomology, CohomologyIndex, HomologyError, IntersectionForm,
};
use crate::regularize::{regularize, RegularizeError, SurgeryTrace};
use crate::surface::{SurfaceError, TopSignature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConleyError {
    #[error(transparent)]
    Block(BlockError),
    #[error(transparent)]
    Regularize(RegularizeError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error("inconsistent data: {0}")]
    InconsistentData(String),
    #[error("a fixed point is forced (index {fp_index}, disk block: {disk})")]
    FixedPointForced { fp_index: i64, disk: bool },
}

impl From<BlockError> for ConleyError {
    fn from(e: BlockError) -> Self {
        ConleyError::Block(e)
    }
}

impl From<RegularizeError> for ConleyError {
    fn from(e: RegularizeError) -> Self {
        match e {
            RegularizeError::Block(b) => ConleyError::Block(b),
            other => ConleyError::Regularize(other),
        }
    }
}

fn inconsistent(msg: impl Into<String>) -> ConleyError {
    ConleyError::InconsistentData(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynamicsType {
    Attractor,
    Repeller,
    Mixed,
}

/// Closed surface summand; orientable genus 0 is the 2-sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SurfaceSummand {
    pub orientable: bool,
    pub genus: u32,
}

impl SurfaceSummand {
    pub fn euler(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    fn h1(&self) -> usize {
        if self.orientable {
            2 * self.genus as usize
        } else {
            self.genus as usize
        }
    }
}

impl fmt::Display for SurfaceSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.orientable, self.genus) {
            (true, 0) => f.write_str("S²"),
            (true, 1) => f.write_str("S¹×S¹"),
            (true, g) => write!(f, "Σ_{g}"),
            (false, 1) => f.write_str("RP²"),
            (false, g) => write!(f, "N_{g}"),
        }
    }
}

/// A wedge of circles and closed surfaces.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cluster {
    pub circles: usize,
    pub surfaces: Vec<SurfaceSummand>,
}

impl Cluster {
    pub fn circles(n: usize) -> Self {
        Self {
            circles: n,
            surfaces: Vec::new(),
        }
    }

    fn normalize(&mut self) {
        self.surfaces.sort();
    }

    fn euler(&self) -> i64 {
        1 - self.circles as i64 + self.surfaces.iter().map(|s| s.euler() - 1).sum::<i64>()
    }

    fn is_point(&self) -> bool {
        self.circles == 0 && self.surfaces.is_empty()
    }

    fn sort_key(&self) -> (usize, &[SurfaceSummand]) {
        (self.circles, &self.surfaces)
    }
}

impl fmt::Display for Cluster {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return f.write_str("•");
        }
        let parts: Vec<String> = self
            .surfaces
            .iter()
            .map(ToString::to_string)
            .chain(std::iter::repeat_n("S¹".to_string(), self.circles))
            .collect();
        f.write_str(&parts.join(" ∨ "))
    }
}

/// Normal form of a Conley index: the cluster at the base point plus the
/// clusters lying in other path components.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexDescriptor {
    pub base: Cluster,
    pub detached: Vec<Cluster>,
}

impl IndexDescriptor {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn wedge_of_circles(n: usize) -> Self {
        Self {
            base: Cluster::circles(n),
            detached: Vec::new(),
        }
    }

    /// `X ⊔ {•}` for a space `X` that is a wedge of `n` circles.
    pub fn attractor(n: usize) -> Self {
        Self {
            base: Cluster::default(),
            detached: vec![Cluster::circles(n)],
        }
    }

    pub fn repeller(surface: SurfaceSummand, circles: usize) -> Self {
        Self {
            base: Cluster {
                circles,
                surfaces: vec![surface],
            },
            detached: Vec::new(),
        }
    }

    fn normalized(mut self) -> Self {
        self.base.normalize();
        for c in &mut self.detached {
            c.normalize();
        }
        self.detached
            .sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        self
    }

    pub fn circles(&self) -> usize {
        self.base.circles + self.detached.iter().map(|c| c.circles).sum::<usize>()
    }

    pub fn surfaces(&self) -> Vec<SurfaceSummand> {
        let mut all: Vec<SurfaceSummand> = self
            .base
            .surfaces
            .iter()
            .chain(self.detached.iter().flat_map(|c| c.surfaces.iter()))
            .copied()
            .collect();
        all.sort();
        all
    }

    pub fn extra_components(&self) -> usize {
        self.detached.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.base.is_point() && self.detached.is_empty()
    }

    /// Euler characteristic of the underlying space.
    pub fn euler(&self) -> i64 {
        self.base.euler() + self.detached.iter().map(Cluster::euler).sum::<i64>()
    }

    /// Euler characteristic relative to the base point; equals the
    /// fixed-point index.
    pub fn reduced_euler(&self) -> i64 {
        self.euler() - 1
    }

    /// Dimensions of the reduced Z₂ cohomology of the underlying space.
    pub fn reduced_cohomology(&self) -> CohomologyIndex {
        let clusters = std::iter::once(&self.base).chain(self.detached.iter());
        let (mut h1, mut h2) = (0, 0);
        for c in clusters {
            h1 += c.circles + c.surfaces.iter().map(SurfaceSummand::h1).sum::<usize>();
            h2 += c.surfaces.len();
        }
        CohomologyIndex::new(self.detached.len(), h1, h2)
    }
}

impl fmt::Display for IndexDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.detached.is_empty() {
            return write!(f, "{}", self.base);
        }
        let mut parts: Vec<String> = self
            .detached
            .iter()
            .map(|c| {
                let s = c.to_string();
                if s.contains('∨') {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect();
        parts.push(if self.base.is_point() {
            "{•}".to_string()
        } else {
            format!("({})", self.base)
        });
        f.write_str(&parts.join(" ⊔ "))
    }
}

/// Pointed wedge: base clusters merge, detached clusters are collected.
pub fn wedge(descriptors: &[IndexDescriptor]) -> IndexDescriptor {
    let mut out = IndexDescriptor::trivial();
    for d in descriptors {
        out.base.circles += d.base.circles;
        out.base.surfaces.extend(d.base.surfaces.iter().copied());
        out.detached.extend(d.detached.iter().cloned());
    }
    out.normalized()
}

/// Index of an invariant set from its regular-block counts.
pub fn descriptor_from_counts(
    kind: DynamicsType,
    beta1: usize,
    u: usize,
    u_c: usize,
    orientable: bool,
) -> Result<IndexDescriptor, ConleyError> {
    match kind {
        DynamicsType::Attractor => {
            if u != 0 {
                return Err(inconsistent(format!("attractor with {u} exit components")));
            }
            Ok(IndexDescriptor::attractor(beta1))
        }
        DynamicsType::Repeller => {
            if u == 0 || u_c != 0 {
                return Err(inconsistent(format!(
                    "repeller needs exit circles only, got u={u}, u_c={u_c}"
                )));
            }
            let excess = 1 + beta1 as i64 - u as i64;
            if excess < 0 {
                return Err(inconsistent(format!("repeller with 1+β₁−u = {excess} < 0")));
            }
            let genus = if orientable {
                if excess % 2 != 0 {
                    return Err(inconsistent(format!(
                        "orientable repeller with odd 1+β₁−u = {excess}"
                    )));
                }
                excess / 2
            } else {
                if excess == 0 {
                    return Err(inconsistent("nonorientable repeller with 1+β₁−u = 0"));
                }
                excess
            };
            Ok(IndexDescriptor::repeller(
                SurfaceSummand {
                    orientable,
                    genus: genus as u32,
                },
                u - 1,
            ))
        }
        DynamicsType::Mixed => {
            if u_c > u || u == 0 {
                return Err(inconsistent(format!("mixed set with u={u}, u_c={u_c}")));
            }
            let k = beta1 as i64 + u_c as i64 - 1;
            if k < 0 {
                return Err(inconsistent(format!("mixed set with β₁+u_c−1 = {k}")));
            }
            Ok(IndexDescriptor::wedge_of_circles(k as usize))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdmissibleSet {
    /// a limit cycle, or a closed annulus bounded by two limit cycles
    Orientable,
    /// a limit cycle, or a Möbius strip bounded by a limit cycle
    Nonorientable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointFreeReport {
    pub admissible: AdmissibleSet,
    pub candidates: Vec<String>,
}

/// Outcome of the fixed-point-free check embedded in a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "outcome")]
pub enum FixedPointFreeOutcome {
    Admissible(FixedPointFreeReport),
    FixedPointForced { fp_index: i64, disk: bool },
    Inconsistent { message: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub name: String,
    pub case: String,
    pub dynamics_type: DynamicsType,
    pub beta1_k: usize,
    pub u: usize,
    pub u_c: usize,
    pub index: IndexDescriptor,
    pub index_name: String,
    pub shape: String,
    pub fp_index: i64,
    pub forces_fixed_point: bool,
    pub non_saddle: bool,
    pub trivial_shape_with_fixed_point: bool,
    pub surgery_cuts: usize,
    pub fixed_point_free_classification: Option<FixedPointFreeOutcome>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Everything computed along the way to a classification.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub regular: IsolatingBlock,
    pub trace: SurgeryTrace,
    pub census: ExitCensus,
    pub signature: TopSignature,
    pub original_is_disk: bool,
    pub report: ClassificationReport,
}

fn shape_text(beta1: usize) -> String {
    match beta1 {
        0 => "point".to_string(),
        1 => "circle".to_string(),
        n => format!("wedge of {n} circles"),
    }
}

fn dynamics_of(b: &IsolatingBlock) -> DynamicsType {
    let boundary = b.complex.boundary_edges().len();
    if b.exit_edges.is_empty() {
        DynamicsType::Attractor
    } else if b.exit_edges.len() == boundary {
        DynamicsType::Repeller
    } else {
        DynamicsType::Mixed
    }
}

pub fn analyze(b: &IsolatingBlock) -> Result<Analysis, ConleyError> {
    let original_is_disk = b.complex.signature()?.is_disk();
    let (regular, trace) = regularize(b)?;
    let census = regular.census_unchecked();
    let signature = regular.complex.signature()?;
    let kind = dynamics_of(&regular);
    let index = descriptor_from_counts(
        kind,
        census.beta1_n,
        census.u,
        census.u_c,
        signature.orientable,
    )?;
    let fp_index = 1 - census.beta1_n as i64 - census.u_c as i64;
    let disk = original_is_disk || signature.is_disk();
    let case = match kind {
        DynamicsType::Attractor => "attractor",
        DynamicsType::Repeller if signature.orientable => "repeller-orientable",
        DynamicsType::Repeller => "repeller-nonorientable",
        DynamicsType::Mixed => "mixed",
    };
    let mut report = ClassificationReport {
        name: b.name.clone(),
        case: case.to_string(),
        dynamics_type: kind,
        beta1_k: census.beta1_n,
        u: census.u,
        u_c: census.u_c,
        index_name: index.to_string(),
        index,
        shape: shape_text(census.beta1_n),
        fp_index,
        forces_fixed_point: fp_index != 0 || disk,
        non_saddle: census.u_c == 0,
        trivial_shape_with_fixed_point: disk,
        surgery_cuts: trace.len(),
        fixed_point_free_classification: None,
    };
    if b.asserts_no_fixed_points {
        report.fixed_point_free_classification = Some(
            match fixed_point_free_from(fp_index, disk, &census, &signature) {
                Ok(r) => FixedPointFreeOutcome::Admissible(r),
                Err(ConleyError::FixedPointForced { fp_index, disk }) => {
                    FixedPointFreeOutcome::FixedPointForced { fp_index, disk }
                }
                Err(e) => FixedPointFreeOutcome::Inconsistent {
                    message: e.to_string(),
                },
            },
        );
    }
    Ok(Analysis {
        regular,
        trace,
        census,
        signature,
        original_is_disk,
        report,
    })
}

/// Classifies the invariant set isolated by `b`, regularizing first when needed.
pub fn classify(b: &IsolatingBlock) -> Result<ClassificationReport, ConleyError> {
    Ok(analyze(b)?.report)
}

/// Z₂ cohomology of the pair (N, N^o); no regularity needed.
pub fn cohomology_index(b: &IsolatingBlock) -> Result<CohomologyIndex, ConleyError> {
    b.ensure_valid()?;
    Ok(relative_cohomology(&b.complex, &b.exit_subcomplex())?.index())
}

pub fn block_intersection_form(b: &IsolatingBlock) -> Result<IntersectionForm, ConleyError> {
    b.ensure_valid()?;
    Ok(intersection_form(&b.complex, &b.exit_subcomplex())?)
}

/// Recovers the index from the cohomology ring alone.
pub fn ring_classify(
    ch: &CohomologyIndex,
    form: &IntersectionForm,
) -> Result<IndexDescriptor, ConleyError> {
    if ch.dim0 > 1 || ch.dim2 > 1 || (ch.dim0 == 1 && ch.dim2 == 1) {
        return Err(inconsistent(format!(
            "cohomology {ch} does not come from a connected block"
        )));
    }
    if form.basis_size != ch.dim1 {
        return Err(inconsistent("form basis does not match CH¹"));
    }
    if ch.dim0 == 1 {
        return Ok(IndexDescriptor::attractor(ch.dim1));
    }
    if ch.dim2 == 1 {
        let (orientable, genus, used) = if form.has_self_square {
            (false, form.rank, form.rank)
        } else {
            if !form.rank.is_multiple_of(2) {
                return Err(inconsistent(format!(
                    "odd rank {} without a self-square",
                    form.rank
                )));
            }
            (true, form.rank / 2, form.rank)
        };
        let circles = ch
            .dim1
            .checked_sub(used)
            .ok_or_else(|| inconsistent("intersection rank exceeds CH¹"))?;
        return Ok(IndexDescriptor::repeller(
            SurfaceSummand {
                orientable,
                genus: genus as u32,
            },
            circles,
        ));
    }
    Ok(IndexDescriptor::wedge_of_circles(ch.dim1))
}

/// `(fp_index, forces_fixed_point)` with `forces = fp_index ≠ 0`.
pub fn fp_report(b: &IsolatingBlock) -> Result<(i64, bool), ConleyError> {
    let a = analyze(b)?;
    let fp = a.report.fp_index;
    let pair_euler = a.regular.complex.euler_characteristic() - exit_euler(&a.regular);
    if fp != a.report.index.reduced_euler() || fp != pair_euler {
        return Err(inconsistent(format!(
            "index {fp}, descriptor {}, pair {pair_euler} disagree",
            a.report.index.reduced_euler()
        )));
    }
    Ok((fp, fp != 0))
}

fn fixed_point_free_from(
    fp_index: i64,
    disk: bool,
    census: &ExitCensus,
    signature: &TopSignature,
) -> Result<FixedPointFreeReport, ConleyError> {
    if fp_index != 0 || disk {
        return Err(ConleyError::FixedPointForced { fp_index, disk });
    }
    if census.u_c != 0 {
        return Err(inconsistent("a fixed-point-free set must be non-saddle"));
    }
    if signature.is_annulus() {
        Ok(FixedPointFreeReport {
            admissible: AdmissibleSet::Orientable,
            candidates: vec![
                "limit cycle".into(),
                "closed annulus bounded by two limit cycles".into(),
            ],
        })
    } else if signature.is_moebius() {
        Ok(FixedPointFreeReport {
            admissible: AdmissibleSet::Nonorientable,
            candidates: vec![
                "limit cycle".into(),
                "Möbius strip bounded by a limit cycle".into(),
            ],
        })
    } else {
        Err(inconsistent(
            "regular block is neither an annulus nor a Möbius strip",
        ))
    }
}

/// What `K` can be if the flow has no fixed points in the block.
pub fn classify_fixed_point_free(b: &IsolatingBlock) -> Result<FixedPointFreeReport, ConleyError> {
    let a = analyze(b)?;
    let disk = a.original_is_disk || a.signature.is_disk();
    fixed_point_free_from(a.report.fp_index, disk, &a.census, &a.signature)
}

/// Text for a minimal invariant set; without the assertion only the shape is reported.
pub fn minimal_report(b: &IsolatingBlock, minimal: bool) -> Result<String, ConleyError> {
    let a = analyze(b)?;
    let beta1 = a.report.beta1_k;
    if !minimal {
        return Ok(format!("shape: {}", a.report.shape));
    }
    match beta1 {
        0 => Ok("fixed point".to_string()),
        1 => Ok("fixed point or limit cycle".to_string()),
        n => Err(inconsistent(format!("a minimal set cannot have β₁ = {n}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub u_c: usize,
    pub s_c: usize,
    pub forward: DynamicsType,
    pub backward: DynamicsType,
    pub forward_index: String,
    pub backward_index: String,
    pub violations: Vec<String>,
}

impl DualityReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Compares the classification of `b` with that of the reversed flow.
pub fn duality_check(b: &IsolatingBlock) -> Result<DualityReport, ConleyError> {
    let census = b.census()?;
    let forward = classify(b)?;
    let backward = classify(&b.reverse()?)?;
    let mut violations = Vec::new();
    if census.u_c != census.s_c {
        violations.push(format!("u_c = {} but s_c = {}", census.u_c, census.s_c));
    }
    use DynamicsType::*;
    match (forward.dynamics_type, backward.dynamics_type) {
        (Mixed, Mixed) => {
            if forward.index != backward.index {
                violations.push(format!(
                    "indices differ: {} vs {}",
                    forward.index, backward.index
                ));
            }
        }
        (Attractor, Repeller) | (Repeller, Attractor) => {
            if forward.beta1_k != backward.beta1_k {
                violations.push(format!(
                    "β₁ differs: {} vs {}",
                    forward.beta1_k, backward.beta1_k
                ));
            }
        }
        (f, r) => violations.push(format!("{f:?} reverses to {r:?}")),
    }
    Ok(DualityReport {
        u_c: census.u_c,
        s_c: census.s_c,
        forward: forward.dynamics_type,
        backward: backward.dynamics_type,
        forward_index: forward.index_name,
        backward_index: backward.index_name,
        violations,
    })
}

/// Counts describing one isolated invariant set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSummary {
    pub beta1: usize,
    pub u: usize,
    pub u_c: usize,
    pub dynamics_type: DynamicsType,
    #[serde(default = "default_true")]
    pub orientable: bool,
}

fn default_true() -> bool {
    true
}

impl ComponentSummary {
    pub fn mixed(beta1: usize, u: usize, u_c: usize) -> Self {
        Self {
            beta1,
            u,
            u_c,
            dynamics_type: DynamicsType::Mixed,
            orientable: true,
        }
    }

    pub fn attractor(beta1: usize) -> Self {
        Self {
            beta1,
            u: 0,
            u_c: 0,
            dynamics_type: DynamicsType::Attractor,
            orientable: true,
        }
    }

    pub fn descriptor(&self) -> Result<IndexDescriptor, ConleyError> {
        descriptor_from_counts(
            self.dynamics_type,
            self.beta1,
            self.u,
            self.u_c,
            self.orientable,
        )
    }

    pub fn non_saddle(&self) -> bool {
        self.u_c == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ContinuationClause {
    Equation,
    Wedge,
    Persistence,
    ShapeBound,
    NonSaddle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseViolation {
    pub clause: ContinuationClause,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuationReport {
    pub passed: bool,
    pub first_failure: Option<ContinuationClause>,
    pub violations: Vec<ClauseViolation>,
}

/// Checks that `comps` can be the continuation of `k0`.
///
/// For a mixed `k0` the counting equation is checked before the wedge
/// identity; violations are listed in evaluation order.
pub fn check_continuation(
    k0: &ComponentSummary,
    comps: &[ComponentSummary],
    shares_block: bool,
) -> Result<ContinuationReport, ConleyError> {
    if comps.is_empty() {
        return Err(inconsistent("continuation needs at least one component"));
    }
    let d0 = k0.descriptor()?;
    let ds: Vec<IndexDescriptor> = comps
        .iter()
        .map(ComponentSummary::descriptor)
        .collect::<Result<_, _>>()?;
    let mut violations = Vec::new();
    let mut fail = |clause, message: String| violations.push(ClauseViolation { clause, message });
    let sum_beta1: usize = comps.iter().map(|c| c.beta1).sum();
    let sum_uc: usize = comps.iter().map(|c| c.u_c).sum();

    let check_wedge = |fail: &mut dyn FnMut(ContinuationClause, String)| {
        let w = wedge(&ds);
        if w != d0 {
            fail(
                ContinuationClause::Wedge,
                format!("wedge of components is {w}, expected {d0}"),
            );
        }
    };

    match k0.dynamics_type {
        DynamicsType::Mixed => {
            let lhs = (k0.beta1 as i64 - sum_beta1 as i64) + (k0.u_c as i64 - sum_uc as i64);
            let rhs = 1 - comps.len() as i64;
            if lhs != rhs {
                fail(
                    ContinuationClause::Equation,
                    format!("(β₁ difference) + (u_c difference) = {lhs}, expected {rhs}"),
                );
            }
            check_wedge(&mut fail);
        }
        kind => {
            check_wedge(&mut fail);
            let same: Vec<usize> = (0..comps.len())
                .filter(|&i| comps[i].dynamics_type == kind)
                .collect();
            let ok = same.len() == 1
                && comps[same[0]].beta1 == k0.beta1
                && (0..comps.len()).all(|i| i == same[0] || ds[i].is_trivial());
            if !ok {
                fail(
                    ContinuationClause::Persistence,
                    format!(
                        "expected one {kind:?} component with β₁ = {} and trivial satellites",
                        k0.beta1
                    ),
                );
            }
        }
    }
    if shares_block && sum_beta1 > k0.beta1 {
        fail(
            ContinuationClause::ShapeBound,
            format!("total β₁ {sum_beta1} exceeds β₁(K₀) = {}", k0.beta1),
        );
    }
    if k0.dynamics_type == DynamicsType::Mixed && k0.non_saddle() && comps.len() == 1 {
        let c = &comps[0];
        if c.non_saddle() != (c.beta1 == k0.beta1) {
            fail(
                ContinuationClause::NonSaddle,
                "non-saddle continuation must keep β₁ and vice versa".to_string(),
            );
        }
    }
    Ok(ContinuationReport {
        passed: violations.is_empty(),
        first_failure: violations.first().map(|v| v.clause),
        violations,
    })
}

fn exit_euler(b: &IsolatingBlock) -> i64 {
    let sub = b.exit_subcomplex();
    sub.vertices.len() as i64 - sub.edges.len() as i64
}
