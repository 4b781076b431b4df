//! Cross-checks of the relative cohomology code against an independent
//! relative homology computation and against the long exact sequence.

use conley_surf::builders::{self, random_block, tables};
use conley_surf::gf2::BitVec;
use conley_surf::homology::{betti_z2, relative_cohomology, CohomologyIndex};
use conley_surf::{Edge, IsolatingBlock, Subcomplex, SurfaceComplex};
use proptest::prelude::*;

/// Rank over Z₂ of a list of rows packed into u64 words.
fn rank(mut rows: Vec<Vec<u64>>) -> usize {
    let mut r = 0;
    let width = rows.first().map_or(0, |w| w.len() * 64);
    for col in 0..width {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (r..rows.len()).find(|&i| rows[i][w] & bit != 0) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[w] & bit != 0 {
                for (a, b) in row.iter_mut().zip(&pivot) {
                    *a ^= b;
                }
            }
        }
        r += 1;
    }
    r
}

fn packed(len: usize, ones: &[usize]) -> Vec<u64> {
    let mut v = vec![0u64; len.div_ceil(64).max(1)];
    for &i in ones {
        v[i / 64] ^= 1 << (i % 64);
    }
    v
}

/// Dimensions of H_k(c, sub; Z₂) from the quotient chain complex.
fn relative_homology(c: &SurfaceComplex, sub: &Subcomplex) -> CohomologyIndex {
    let verts: Vec<usize> = (0..c.vertex_count())
        .filter(|v| !sub.contains_vertex(*v))
        .collect();
    let edges: Vec<Edge> = c.edges().filter(|e| !sub.contains_edge(*e)).collect();
    let vpos = |v: usize| verts.iter().position(|&w| w == v);
    let epos = |e: Edge| edges.iter().position(|&f| f == e);
    let d1: Vec<Vec<u64>> = edges
        .iter()
        .map(|e| {
            let ones: Vec<usize> = [e.lo(), e.hi()].into_iter().filter_map(vpos).collect();
            packed(verts.len(), &ones)
        })
        .collect();
    let d2: Vec<Vec<u64>> = c
        .triangles()
        .iter()
        .map(|t| {
            let ones: Vec<usize> = [
                Edge::new(t[0], t[1]),
                Edge::new(t[1], t[2]),
                Edge::new(t[0], t[2]),
            ]
            .into_iter()
            .filter_map(epos)
            .collect();
            packed(edges.len(), &ones)
        })
        .collect();
    let (r1, r2) = (rank(d1), rank(d2));
    CohomologyIndex::new(
        verts.len() - r1,
        edges.len() - r1 - r2,
        c.triangle_count() - r2,
    )
}

/// Z₂ Betti numbers of a graph given by its edges and vertices.
fn graph_betti(sub: &Subcomplex) -> (usize, usize) {
    let b0 = sub.components().len();
    let b1 = sub.edges.len() + b0 - sub.vertices.len();
    (b0, b1)
}

fn pairs_of(b: &IsolatingBlock) -> Vec<Subcomplex> {
    vec![
        Subcomplex::default(),
        b.exit_subcomplex(),
        b.entrance_subcomplex(),
        b.complex.boundary(),
        b.n_minus.clone(),
    ]
}

fn check_pair(c: &SurfaceComplex, sub: &Subcomplex) {
    let rel = relative_cohomology(c, sub).unwrap().index();
    assert_eq!(rel, relative_homology(c, sub), "cohomology vs homology");
    // long exact sequence: the alternating sums of the three rows agree
    let (n0, n1, n2) = betti_z2(c);
    let (a0, a1) = graph_betti(sub);
    let lhs = rel.dim0 as i64 - rel.dim1 as i64 + rel.dim2 as i64;
    let rhs = (n0 as i64 - n1 as i64 + n2 as i64) - (a0 as i64 - a1 as i64);
    assert_eq!(lhs, rhs, "Euler characteristic of the pair");
    // H⁰(N, A) injects into H⁰(N); H²(N) is a quotient of H²(N, A)
    assert!(rel.dim0 <= n0);
    assert!(n2 <= rel.dim2);
}

#[test]
fn corpus_pairs_agree_with_homology() {
    for entry in builders::corpus() {
        for sub in pairs_of(&entry.block) {
            check_pair(&entry.block.complex, &sub);
        }
    }
}

#[test]
fn closed_surfaces() {
    let torus = tables::torus7();
    assert_eq!(
        relative_homology(&torus, &Subcomplex::default()),
        CohomologyIndex::new(1, 2, 1)
    );
    check_pair(&torus, &Subcomplex::default());
    let m = tables::moebius5();
    let rp2 = m.cap_boundary_circle(&m.boundary_circles()[0]).unwrap();
    assert_eq!(betti_z2(&rp2), (1, 1, 1));
}

#[test]
fn full_boundary_gives_one_top_class() {
    for entry in builders::corpus() {
        let c = &entry.block.complex;
        let index = relative_cohomology(c, &c.boundary()).unwrap().index();
        assert_eq!(index.dim2, 1, "{}", entry.block.name);
    }
}

fn assert_cup_bilinear_symmetric(c: &SurfaceComplex, sub: &Subcomplex) {
    let rc = relative_cohomology(c, sub).unwrap();
    let basis = rc.h1_basis().to_vec();
    for a in &basis {
        for b in &basis {
            assert_eq!(rc.cup(a, b).unwrap(), rc.cup(b, a).unwrap(), "symmetry");
            let zero = BitVec::zeros(a.len());
            assert!(rc.cup(a, &zero).unwrap().is_zero());
            for d in &basis {
                let mut sum = b.clone();
                sum.xor_assign(d);
                let mut expected = rc.cup(a, b).unwrap();
                expected.xor_assign(&rc.cup(a, d).unwrap());
                assert_eq!(rc.cup(a, &sum).unwrap(), expected, "linearity");
            }
        }
    }
}

#[test]
fn cup_product_is_bilinear_and_symmetric_on_corpus() {
    for entry in builders::corpus() {
        for sub in pairs_of(&entry.block) {
            assert_cup_bilinear_symmetric(&entry.block.complex, &sub);
        }
    }
}

#[test]
fn handle_generators_cup_to_the_top_class() {
    let c = tables::punctured_torus7();
    let rc = relative_cohomology(&c, &c.boundary()).unwrap();
    let basis = rc.h1_basis();
    assert_eq!(basis.len(), 2);
    assert!(!rc.cup(&basis[0], &basis[1]).unwrap().is_zero());
    let pants = tables::grid_domain(5, 3, &[(1, 1), (3, 1)]);
    let rp = relative_cohomology(&pants, &pants.boundary()).unwrap();
    for a in rp.h1_basis() {
        for b in rp.h1_basis() {
            assert!(rp.cup(a, b).unwrap().is_zero());
        }
    }
}

fn permuted(b: &IsolatingBlock, perm: &[usize]) -> (SurfaceComplex, Subcomplex) {
    let c = b.complex.relabel(perm).unwrap();
    let sub = b.exit_subcomplex();
    let moved = Subcomplex::new(
        sub.vertices.iter().map(|&v| perm[v]),
        sub.edges
            .iter()
            .map(|e| Edge::new(perm[e.lo()], perm[e.hi()])),
    );
    (c, moved)
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    p
}

#[test]
fn form_invariants_survive_relabeling_on_corpus() {
    for entry in builders::corpus() {
        let b = &entry.block;
        let form = relative_cohomology(&b.complex, &b.exit_subcomplex())
            .unwrap()
            .intersection_form()
            .unwrap();
        for seed in 0..4 {
            let (c, sub) = permuted(b, &shuffled(b.complex.vertex_count(), seed));
            let other = relative_cohomology(&c, &sub)
                .unwrap()
                .intersection_form()
                .unwrap();
            assert_eq!(
                (other.rank, other.has_self_square),
                (form.rank, form.has_self_square),
                "{}",
                b.name
            );
            assert!(other.matrix.is_symmetric());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_pairs_agree_with_homology(seed in 0u64..10_000) {
        let b = random_block(seed, 200);
        for sub in pairs_of(&b) {
            check_pair(&b.complex, &sub);
        }
    }

    #[test]
    fn random_forms_survive_relabeling(seed in 0u64..10_000, shuffle in 0u64..1000) {
        let b = random_block(seed, 200);
        let rc = relative_cohomology(&b.complex, &b.exit_subcomplex()).unwrap();
        let form = rc.intersection_form().unwrap();
        prop_assert!(form.matrix.is_symmetric());
        if !form.has_self_square {
            prop_assert_eq!(form.rank % 2, 0);
        }
        let (c, sub) = permuted(&b, &shuffled(b.complex.vertex_count(), shuffle));
        let other = relative_cohomology(&c, &sub).unwrap().intersection_form().unwrap();
        prop_assert_eq!((other.rank, other.has_self_square), (form.rank, form.has_self_square));
    }

    #[test]
    fn random_cup_products_are_symmetric(seed in 0u64..10_000) {
        let b = random_block(seed, 120);
        assert_cup_bilinear_symmetric(&b.complex, &b.complex.boundary());
    }
}
