//! Hand-made blocks and a seeded random block generator.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::block::{Gap, IsolatingBlock, TransitSpine};
use crate::conley::DynamicsType;
use crate::surface::{BoundaryCircle, Edge, Subcomplex, SurfaceComplex, TopSignature, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("unknown recipe `{0}`")]
    UnknownRecipe(String),
    #[error("bad recipe parameters: {0}")]
    BadParameters(String),
}

/// Triangle tables for the small complexes used throughout.
pub mod tables {
    use std::collections::BTreeMap;

    use crate::surface::{Edge, SurfaceComplex, Vertex};

    /// Annulus with boundary circles `0,1,2` and `3,4,5`.
    ///
    /// χ = 6 − 12 + 6 = 0.
    pub fn hex_annulus() -> SurfaceComplex {
        SurfaceComplex::new(
            6,
            vec![
                [0, 1, 3],
                [1, 4, 3],
                [1, 2, 4],
                [2, 5, 4],
                [2, 0, 5],
                [0, 3, 5],
            ],
        )
        .expect("hex annulus")
    }

    /// Seven-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
    ///
    /// χ = 7 − 21 + 14 = 0.
    pub fn torus7() -> SurfaceComplex {
        let mut t = Vec::new();
        for i in 0..7 {
            t.push([i, (i + 1) % 7, (i + 3) % 7]);
            t.push([i, (i + 2) % 7, (i + 3) % 7]);
        }
        SurfaceComplex::new(7, t).expect("seven-vertex torus")
    }

    /// [`torus7`] without the triangle `(0, 1, 3)`; χ = −1, one boundary circle.
    pub fn punctured_torus7() -> SurfaceComplex {
        let mut t = torus7().triangles().to_vec();
        t.remove(0);
        SurfaceComplex::new(7, t).expect("punctured torus")
    }

    /// Five-vertex Möbius strip: triangles `{i, i+1, i+2}` mod 5.
    ///
    /// χ = 5 − 10 + 5 = 0; the boundary is the circle 0-2-4-1-3.
    pub fn moebius5() -> SurfaceComplex {
        let t = (0..5).map(|i| [i, (i + 1) % 5, (i + 2) % 5]).collect();
        SurfaceComplex::new(5, t).expect("five-vertex Möbius strip")
    }

    /// Octagon `0..8` coned to the centre vertex 8; χ = 9 − 16 + 8 = 1.
    pub fn octagon_disk() -> SurfaceComplex {
        let t = (0..8).map(|i| [i, (i + 1) % 8, 8]).collect();
        SurfaceComplex::new(9, t).expect("octagon disk")
    }

    /// `w × h` grid of unit squares with the listed squares removed.
    ///
    /// Vertex `(x, y)` has id `y * (w + 1) + x`; square `(x, y)` is split by
    /// its diagonal from `(x, y)` to `(x + 1, y + 1)`.
    pub fn grid_domain(w: usize, h: usize, holes: &[(usize, usize)]) -> SurfaceComplex {
        let v = |x: usize, y: usize| y * (w + 1) + x;
        let mut t = Vec::new();
        for y in 0..h {
            for x in 0..w {
                if holes.contains(&(x, y)) {
                    continue;
                }
                t.push([v(x, y), v(x + 1, y), v(x + 1, y + 1)]);
                t.push([v(x, y), v(x + 1, y + 1), v(x, y + 1)]);
            }
        }
        SurfaceComplex::new((w + 1) * (h + 1), t).expect("grid domain")
    }

    /// Splits every triangle into four through its edge midpoints.
    pub fn refine(c: &SurfaceComplex) -> SurfaceComplex {
        let mut next = c.vertex_count();
        let mut mid: BTreeMap<Edge, Vertex> = BTreeMap::new();
        for e in c.edges() {
            mid.insert(e, next);
            next += 1;
        }
        let m = |a: Vertex, b: Vertex| mid[&Edge::new(a, b)];
        let mut t = Vec::with_capacity(4 * c.triangle_count());
        for &[a, b, cc] in c.triangles() {
            let (ab, bc, ca) = (m(a, b), m(b, cc), m(cc, a));
            t.push([a, ab, ca]);
            t.push([ab, b, bc]);
            t.push([ca, bc, cc]);
            t.push([ab, bc, ca]);
        }
        SurfaceComplex::new(next, t).expect("refinement of a surface")
    }

    /// Polygon `0..n` coned to vertex `n`, with strips of two squares
    /// attached along pairs of polygon edges.
    ///
    /// A band `(i, j, twisted)` glues polygon edge `(i, i+1)` to `(j, j+1)`.
    /// Untwisted bands keep the surface orientable. Bands must use pairwise
    /// vertex-disjoint edges.
    pub fn ribbon(n: usize, bands: &[(usize, usize, bool)]) -> SurfaceComplex {
        let mut t: Vec<[Vertex; 3]> = (0..n).map(|i| [i, (i + 1) % n, n]).collect();
        let mut next = n + 1;
        for &(i, j, twisted) in bands {
            let (a0, a1) = (i, (i + 1) % n);
            let (b0, b1) = (j, (j + 1) % n);
            let (m0, m1) = (next, next + 1);
            next += 2;
            let (top_left, top_right) = if twisted { (b1, b0) } else { (b0, b1) };
            t.push([a1, a0, m1]);
            t.push([a1, m1, m0]);
            t.push([m0, m1, top_right]);
            t.push([m0, top_right, top_left]);
        }
        SurfaceComplex::new(next, t).expect("ribbon surface")
    }
}

/// Expected values for a corpus block, worked out by hand.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub block: IsolatingBlock,
    pub signature: TopSignature,
    pub dynamics: DynamicsType,
    pub index_name: &'static str,
    pub non_saddle: bool,
    pub obstruction: usize,
}

pub const STANDARD_NAMES: &[&str] = &[
    "pants_repeller",
    "genus1_repeller",
    "moebius_repeller",
    "moebius_attractor",
    "annulus_attractor",
    "annulus_cycle_mixed",
    "square_saddle",
    "disk_focus_repeller",
    "annulus_nonregular",
    "saddle_node_disk",
    "three_arc_circle_nonregular",
    "three_arc_circle_alt",
    "interval_split_nonregular",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecipeParams {
    pub seed: u64,
    pub budget: usize,
    pub genus: usize,
    pub holes: usize,
}

impl Default for RecipeParams {
    fn default() -> Self {
        Self {
            seed: 1,
            budget: 500,
            genus: 1,
            holes: 0,
        }
    }
}

/// Builds a named block; `random` and `surface_repeller` read `params`.
pub fn build(name: &str, params: &RecipeParams) -> Result<IsolatingBlock, BuildError> {
    match name {
        "random" => Ok(random_block(params.seed, params.budget)),
        "surface_repeller" => Ok(surface_repeller(params.genus, params.holes)),
        other => standard(other),
    }
}

pub fn standard(name: &str) -> Result<IsolatingBlock, BuildError> {
    let b = match name {
        "pants_repeller" => all_exit(
            "pants_repeller",
            tables::grid_domain(5, 3, &[(1, 1), (3, 1)]),
        ),
        "genus1_repeller" => all_exit("genus1_repeller", tables::punctured_torus7()),
        "moebius_repeller" => all_exit("moebius_repeller", tables::moebius5()),
        "moebius_attractor" => all_entrance("moebius_attractor", tables::moebius5()),
        "annulus_attractor" => all_entrance("annulus_attractor", tables::hex_annulus()),
        "annulus_cycle_mixed" => {
            let mut b = IsolatingBlock::new(
                "annulus_cycle_mixed",
                tables::hex_annulus(),
                circle_edges(&[0, 1, 2]),
            );
            b.n_minus = circle_sub(&[0, 1, 2]);
            b.n_plus = circle_sub(&[3, 4, 5]);
            b.asserts_no_fixed_points = true;
            b
        }
        "square_saddle" => {
            let exit = [
                Edge::new(0, 1),
                Edge::new(1, 2),
                Edge::new(4, 5),
                Edge::new(5, 6),
            ];
            let mut b = IsolatingBlock::new("square_saddle", tables::octagon_disk(), exit);
            b.n_minus = Subcomplex::new([1, 5], []);
            b.n_plus = Subcomplex::new([3, 7], []);
            b
        }
        "disk_focus_repeller" => all_exit("disk_focus_repeller", tables::octagon_disk()),
        "annulus_nonregular" => {
            let mut b = IsolatingBlock::new(
                "annulus_nonregular",
                tables::hex_annulus(),
                circle_edges(&[0, 1, 2]),
            );
            b.n_minus = Subcomplex::new([1], []);
            b.n_plus = Subcomplex::new([4], []);
            b.spines = vec![TransitSpine::new(vec![0, 3])];
            b
        }
        "saddle_node_disk" => {
            let exit = (0..4).map(|i| Edge::new(i, i + 1));
            let mut b = IsolatingBlock::new("saddle_node_disk", tables::octagon_disk(), exit);
            b.n_minus = Subcomplex::new([2], []);
            b.n_plus = Subcomplex::new([6], []);
            b
        }
        "three_arc_circle_nonregular" => three_arc_circle("three_arc_circle_nonregular", 0),
        "three_arc_circle_alt" => three_arc_circle("three_arc_circle_alt", 1),
        "interval_split_nonregular" => {
            let w = 6;
            let v = |x: usize, y: usize| y * (w + 1) + x;
            let c = tables::grid_domain(w, 3, &[(2, 1)]);
            let exit = (0..w).map(|x| Edge::new(v(x, 0), v(x + 1, 0)));
            let mut b = IsolatingBlock::new("interval_split_nonregular", c, exit);
            b.n_minus = Subcomplex::new([v(1, 0), v(4, 0), v(5, 0)], [Edge::new(v(4, 0), v(5, 0))]);
            b.n_plus = Subcomplex::new([v(3, 3), v(3, 2)], []);
            b.spines = vec![TransitSpine::new(vec![v(2, 0), v(2, 1)])];
            b
        }
        other => return Err(BuildError::UnknownRecipe(other.to_string())),
    };
    Ok(b)
}

/// Same block as `three_arc_circle_nonregular` with a second valid spine set.
pub fn three_arc_circle_alternative() -> IsolatingBlock {
    three_arc_circle("three_arc_circle_alt", 1)
}

/// Disk with three holes; the outer circle is exit with three marked arcs.
fn three_arc_circle(name: &str, variant: usize) -> IsolatingBlock {
    let w = 11;
    let v = |x: usize, y: usize| y * (w + 1) + x;
    let c = tables::grid_domain(w, 3, &[(2, 1), (5, 1), (8, 1)]);
    let outer = c
        .boundary_circles()
        .into_iter()
        .find(|k| k.contains(0))
        .expect("outer circle");
    let centres = [v(2, 0), v(5, 0), v(8, 0)];
    let n_minus = Subcomplex::new(
        outer
            .vertices()
            .iter()
            .copied()
            .filter(|x| !centres.contains(x)),
        outer
            .edges()
            .into_iter()
            .filter(|e| !centres.iter().any(|&x| e.contains(x))),
    );
    let mut b = IsolatingBlock::new(name, c, outer.edges());
    b.n_minus = n_minus;
    b.n_plus = Subcomplex::new([v(3, 2), v(6, 2), v(9, 2)], []);
    b.spines = [2, 5, 8]
        .iter()
        .map(|&x| TransitSpine::new(vec![v(x, 0), v(x + variant, 1)]))
        .collect();
    b
}

/// Orientable genus-`genus` surface with `holes + 1` boundary circles, all exit.
pub fn surface_repeller(genus: usize, holes: usize) -> IsolatingBlock {
    let slots = 4 * genus + 2 * holes;
    let n = (2 * slots + 2).max(6);
    let even = |k: usize| 2 * k;
    let mut bands = Vec::new();
    for g in 0..genus {
        let p = 4 * g;
        bands.push((even(p), even(p + 2), false));
        bands.push((even(p + 1), even(p + 3), false));
    }
    for h in 0..holes {
        let q = 4 * genus + 2 * h;
        bands.push((even(q), even(q + 1), false));
    }
    let c = tables::refine(&tables::ribbon(n, &bands));
    all_exit(&format!("surface_repeller_g{genus}_h{holes}"), c)
}

fn all_exit(name: &str, c: SurfaceComplex) -> IsolatingBlock {
    let boundary = c.boundary();
    let edges = c.boundary_edges();
    let mut b = IsolatingBlock::new(name, c, edges);
    b.n_minus = boundary;
    b
}

fn all_entrance(name: &str, c: SurfaceComplex) -> IsolatingBlock {
    let boundary = c.boundary();
    let mut b = IsolatingBlock::new(name, c, []);
    b.n_plus = boundary;
    b
}

fn circle_edges(vs: &[Vertex]) -> Vec<Edge> {
    BoundaryCircle::new(vs.to_vec()).edges()
}

fn circle_sub(vs: &[Vertex]) -> Subcomplex {
    Subcomplex::new(vs.iter().copied(), circle_edges(vs))
}

fn sig(euler: i64, orientable: bool, genus: u32, boundary_circles: usize) -> TopSignature {
    TopSignature {
        euler,
        orientable,
        genus,
        boundary_circles,
        connected: true,
    }
}

/// Every standard block with its hand-derived expectations.
pub fn corpus() -> Vec<CorpusEntry> {
    use DynamicsType::*;
    let rows: [(&str, TopSignature, DynamicsType, &str, bool, usize); 13] = [
        (
            "pants_repeller",
            sig(-1, true, 0, 3),
            Repeller,
            "S² ∨ S¹ ∨ S¹",
            true,
            0,
        ),
        (
            "genus1_repeller",
            sig(-1, true, 1, 1),
            Repeller,
            "S¹×S¹",
            true,
            0,
        ),
        (
            "moebius_repeller",
            sig(0, false, 1, 1),
            Repeller,
            "RP²",
            true,
            0,
        ),
        (
            "moebius_attractor",
            sig(0, false, 1, 1),
            Attractor,
            "S¹ ⊔ {•}",
            true,
            0,
        ),
        (
            "annulus_attractor",
            sig(0, true, 0, 2),
            Attractor,
            "S¹ ⊔ {•}",
            true,
            0,
        ),
        (
            "annulus_cycle_mixed",
            sig(0, true, 0, 2),
            Mixed,
            "•",
            true,
            0,
        ),
        ("square_saddle", sig(1, true, 0, 1), Mixed, "S¹", false, 0),
        (
            "disk_focus_repeller",
            sig(1, true, 0, 1),
            Repeller,
            "S²",
            true,
            0,
        ),
        (
            "annulus_nonregular",
            sig(0, true, 0, 2),
            Mixed,
            "•",
            false,
            1,
        ),
        ("saddle_node_disk", sig(1, true, 0, 1), Mixed, "•", false, 0),
        (
            "three_arc_circle_nonregular",
            sig(-2, true, 0, 4),
            Mixed,
            "S¹ ∨ S¹",
            false,
            3,
        ),
        (
            "three_arc_circle_alt",
            sig(-2, true, 0, 4),
            Mixed,
            "S¹ ∨ S¹",
            false,
            3,
        ),
        (
            "interval_split_nonregular",
            sig(0, true, 0, 2),
            Mixed,
            "S¹",
            false,
            1,
        ),
    ];
    rows.into_iter()
        .map(
            |(name, signature, dynamics, index_name, non_saddle, obstruction)| CorpusEntry {
                block: standard(name).expect("standard recipe"),
                signature,
                dynamics,
                index_name,
                non_saddle,
                obstruction,
            },
        )
        .collect()
}

/// Deterministic pseudo-random valid block with at most `budget` triangles
/// (never fewer than the six of the smallest base polygon).
///
/// The surface is a refined ribbon surface; boundary circles get random
/// exit/entrance patterns and marks, and one spine is added per gap when an
/// interior path exists.
pub fn random_block(seed: u64, budget: usize) -> IsolatingBlock {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut band_count: usize = rng.gen_range(0..=3);
    while band_count > 0 && 8 * band_count + 4 > budget {
        band_count -= 1;
    }
    let n = if band_count == 0 {
        6
    } else {
        4 * band_count + 4
    };
    let mut even: Vec<usize> = (0..n / 2).map(|k| 2 * k).collect();
    even.shuffle(&mut rng);
    let bands: Vec<(usize, usize, bool)> = (0..band_count)
        .map(|i| (even[2 * i], even[2 * i + 1], rng.gen_bool(0.3)))
        .collect();
    let mut c = tables::ribbon(n, &bands);
    let mut max_level = 0;
    while c.triangle_count() * 4usize.pow(max_level + 1) <= budget && max_level < 3 {
        max_level += 1;
    }
    let level = if max_level == 0 {
        0
    } else {
        rng.gen_range(1..=max_level)
    };
    for _ in 0..level {
        c = tables::refine(&c);
    }
    label_randomly(format!("random_{seed}"), c, &mut rng)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Pattern {
    ExitFull,
    ExitMarked,
    EntranceFull,
    EntrancePoint,
    Alternating,
}

fn label_randomly(name: String, c: SurfaceComplex, rng: &mut ChaCha8Rng) -> IsolatingBlock {
    let circles = c.boundary_circles();
    let mut exit = BTreeSet::new();
    let mut n_minus = Subcomplex::default();
    let mut n_plus = Subcomplex::default();
    let mut patterns = Vec::new();
    for circle in &circles {
        let len = circle.len();
        let choices: &[Pattern] = if len >= 12 {
            &[
                Pattern::ExitFull,
                Pattern::ExitMarked,
                Pattern::EntranceFull,
                Pattern::EntrancePoint,
                Pattern::Alternating,
                Pattern::Alternating,
            ]
        } else {
            &[
                Pattern::ExitFull,
                Pattern::ExitMarked,
                Pattern::EntranceFull,
                Pattern::EntrancePoint,
            ]
        };
        patterns.push(*choices.choose(rng).expect("nonempty choice"));
    }
    let has_entrance = patterns
        .iter()
        .any(|p| !matches!(p, Pattern::ExitFull | Pattern::ExitMarked));
    for (circle, pattern) in circles.iter().zip(patterns) {
        let vs = circle.vertices();
        let es = circle.edges();
        let len = vs.len();
        let rot = rng.gen_range(0..len);
        let at = |i: usize| vs[(rot + i) % len];
        let edge_at = |i: usize| es[(rot + i) % len];
        match pattern {
            Pattern::ExitFull => {
                exit.extend(es.iter().copied());
                add_all(&mut n_minus, vs, &es);
            }
            Pattern::ExitMarked if !has_entrance => {
                exit.extend(es.iter().copied());
                add_all(&mut n_minus, vs, &es);
            }
            Pattern::ExitMarked => {
                exit.extend(es.iter().copied());
                let count = if len >= 8 { rng.gen_range(1..=2) } else { 1 };
                let spacing = len / count;
                for k in 0..count {
                    let i = k * spacing;
                    n_minus.vertices.insert(at(i));
                    if rng.gen_bool(0.4) && spacing >= 4 {
                        n_minus.vertices.insert(at(i + 1));
                        n_minus.edges.insert(edge_at(i));
                    }
                }
            }
            Pattern::EntranceFull => add_all(&mut n_plus, vs, &es),
            Pattern::EntrancePoint => {
                n_plus.vertices.insert(at(0));
            }
            Pattern::Alternating => {
                let pieces = if len >= 24 && rng.gen_bool(0.5) { 4 } else { 2 };
                let step = len / pieces;
                for p in 0..pieces {
                    let start = p * step;
                    let end = if p + 1 == pieces { len } else { start + step };
                    let arc_len = end - start;
                    if p % 2 == 0 {
                        for i in start..end {
                            exit.insert(edge_at(i));
                        }
                        // interior vertices are start+1 .. end-1
                        if arc_len >= 6 && rng.gen_bool(0.5) {
                            n_minus.vertices.insert(at(start + 1));
                            n_minus.vertices.insert(at(end - 2));
                        } else {
                            n_minus.vertices.insert(at(start + arc_len / 2));
                        }
                    } else if rng.gen_bool(0.5) {
                        n_plus.vertices.insert(at(start + 1));
                        n_plus.vertices.insert(at(end - 2));
                    } else {
                        n_plus.vertices.insert(at(start + arc_len / 2));
                    }
                }
            }
        }
    }
    let mut b = IsolatingBlock {
        name,
        complex: c,
        exit_edges: exit,
        n_minus,
        n_plus,
        spines: Vec::new(),
        asserts_no_fixed_points: false,
    };
    // fill unpaired gaps until exit and entrance gaps match one to one
    loop {
        let (spines, exit_left, entrance_left) = synthesize_spines(&b);
        if exit_left.is_empty() && entrance_left.is_empty() {
            b.spines = spines;
            break;
        }
        for g in &exit_left {
            fill(&mut b.n_minus, g);
        }
        for g in &entrance_left {
            fill(&mut b.n_plus, g);
        }
    }
    debug_assert!(b.validate().is_valid(), "{:?}", b.validate());
    b
}

fn add_all(sub: &mut Subcomplex, vs: &[Vertex], es: &[Edge]) {
    sub.vertices.extend(vs.iter().copied());
    sub.edges.extend(es.iter().copied());
}

/// Spines pairing exit gaps with entrance gaps, plus the gaps left unpaired.
///
/// Gaps are the components of the exit (entrance) set minus `n⁻` (`n⁺`)
/// that miss every corner. Each entrance gap takes at most one spine, so
/// every entrance piece keeps some `n⁺` after the cuts. Spines joining
/// boundary circles not yet joined by earlier spines are preferred, since
/// such cuts never disconnect the surface.
fn synthesize_spines(b: &IsolatingBlock) -> (Vec<TransitSpine>, Vec<Gap>, Vec<Gap>) {
    let layout = b.layout();
    let c = &b.complex;
    let boundary = c.boundary_vertices();
    let circle_of: BTreeMap<Vertex, usize> = layout
        .circles
        .iter()
        .enumerate()
        .flat_map(|(i, k)| k.vertices().iter().map(move |&v| (v, i)))
        .collect();
    let inner_gaps =
        |arcs: &[crate::block::BoundaryArc], marked: &Subcomplex| -> Vec<(usize, Gap)> {
            arcs.iter()
                .flat_map(|a| {
                    a.gaps(marked, &layout.corners)
                        .into_iter()
                        .filter(|g| !g.touches_corner)
                        .map(move |g| (a.circle, g))
                })
                .collect()
        };
    let exit_gaps = inner_gaps(&layout.exit, &b.n_minus);
    let slots = inner_gaps(&layout.entrance, &b.n_plus);

    let mut group: Vec<usize> = (0..layout.circles.len()).collect();
    fn find(g: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while g[r] != r {
            r = g[r];
        }
        g[x] = r;
        r
    }
    let adj = c.adjacency();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut taken = vec![false; slots.len()];
    let mut spines = Vec::new();
    let mut unpaired = Vec::new();
    for (circle, gap) in exit_gaps {
        let home = find(&mut group, circle);
        let mut found = None;
        for joining in [true, false] {
            let targets: Vec<Vertex> = (0..slots.len())
                .filter(|&i| !taken[i] && (find(&mut group, slots[i].0) != home) == joining)
                .flat_map(|i| slots[i].1.vertices.iter().copied())
                .filter(|t| !used.contains(t))
                .collect();
            found = gap
                .vertices
                .iter()
                .filter(|v| !used.contains(v))
                .find_map(|&s| shortest_interior_path(&adj, &boundary, &used, s, &targets));
            if found.is_some() {
                break;
            }
        }
        match found {
            Some(path) => {
                let end = *path.last().expect("path");
                let slot = (0..slots.len())
                    .find(|&i| !taken[i] && slots[i].1.vertices.contains(&end))
                    .expect("target belongs to a slot");
                taken[slot] = true;
                let (x, y) = (home, find(&mut group, circle_of[&end]));
                group[x] = y;
                used.extend(path.iter().copied());
                spines.push(TransitSpine::new(path));
            }
            None => unpaired.push(gap),
        }
    }
    let free_slots = slots
        .into_iter()
        .zip(taken)
        .filter(|(_, t)| !t)
        .map(|((_, g), _)| g)
        .collect();
    (spines, unpaired, free_slots)
}

fn fill(sub: &mut Subcomplex, gap: &Gap) {
    sub.vertices.extend(gap.vertices.iter().copied());
    sub.edges.extend(gap.edges.iter().copied());
}

/// BFS from `s` through unused interior vertices to the nearest target.
fn shortest_interior_path(
    adj: &[Vec<Vertex>],
    boundary: &BTreeSet<Vertex>,
    used: &BTreeSet<Vertex>,
    s: Vertex,
    targets: &[Vertex],
) -> Option<Vec<Vertex>> {
    let targets: BTreeSet<Vertex> = targets.iter().copied().collect();
    let mut parent: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &w in &adj[s] {
        if !boundary.contains(&w) && !used.contains(&w) && parent.insert(w, s).is_none() {
            queue.push_back(w);
        }
    }
    while let Some(x) = queue.pop_front() {
        if let Some(&t) = adj[x].iter().find(|t| targets.contains(t) && **t != s) {
            let mut path = vec![t, x];
            let mut cur = x;
            while let Some(&p) = parent.get(&cur) {
                path.push(p);
                if p == s {
                    break;
                }
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[x] {
            if w != s && !boundary.contains(&w) && !used.contains(&w) && !parent.contains_key(&w) {
                parent.insert(w, x);
                queue.push_back(w);
            }
        }
    }
    None
}
