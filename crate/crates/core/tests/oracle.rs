mod common;

use binedge_core::gin::{compare_with, gin_path_generators, main2_decomposition, HochsterOracle};
use binedge_core::{field_disagreements, gin_ideal, multiplicities, FieldSpec, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check_graph(g: &Graph, truncation: usize) {
    let field = FieldSpec::Rational;
    let profile = multiplicities(g, field).unwrap();
    let gin = gin_ideal(g).unwrap();
    let oracle = HochsterOracle::new(&gin.complex, field);
    assert_eq!(oracle.audit().euler_mismatches, 0);

    let report = compare_with(g, &profile, &oracle, truncation);
    assert!(report.passed(), "{g:?}: {:?}", report.first_mismatch);

    assert_eq!(&profile.euler_series(), oracle.ring_hilbert_series(), "{g:?}");
    assert_eq!(oracle.regularity(), Some(profile.regularity().series_based), "{g:?}");
    let rs: Vec<usize> = oracle.degrees().into_iter().collect();
    assert_eq!(rs, profile.degrees(), "{g:?}");
    for (r, s) in profile.hilbert_series_z() {
        assert_eq!(oracle.total_degree_dims(r, truncation), s.expand(truncation), "{g:?} r={r}");
    }
    let main2 = main2_decomposition(g, &profile, truncation).unwrap();
    assert!(main2.agrees(), "{g:?}: {main2:?}");
    assert_eq!(gin.complex.minimal_non_faces(), gin.ideal);
}

#[test]
fn oracle_agrees_on_all_connected_graphs_up_to_five_vertices() {
    for n in 1..=5 {
        for g in common::connected_graphs(n) {
            check_graph(&g, 6);
        }
    }
}

#[test]
fn oracle_agrees_on_random_six_vertex_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..10 {
        let g = common::random_connected_graph(&mut rng, 6);
        check_graph(&g, 4);
    }
}

#[test]
fn oracle_agrees_on_disconnected_graphs() {
    for g in [
        Graph::empty(3).unwrap(),
        Graph::from_edges(4, [(1, 2), (3, 4)]).unwrap(),
        Graph::from_edges(5, [(1, 2), (2, 3), (4, 5)]).unwrap(),
    ] {
        check_graph(&g, 5);
    }
}

#[test]
fn multiplicities_do_not_depend_on_small_characteristics() {
    for n in 1..=5 {
        for g in common::connected_graphs(n) {
            let profile = multiplicities(&g, FieldSpec::Rational).unwrap();
            let diff = field_disagreements(&profile, &[FieldSpec::Prime(2), FieldSpec::Prime(3)]);
            assert!(diff.is_empty(), "{g:?}: {diff:?}");
        }
    }
}

/// Agreement of the two gin constructions is observed, not assumed; any
/// difference is printed before failing.
#[test]
fn path_generators_match_the_intersection_up_to_six_vertices() {
    for n in 1..=6 {
        for g in common::connected_graphs(n) {
            let r = gin_path_generators(&g).unwrap();
            let show = |ms: &[binedge_core::Monomial]| ms.iter().map(ToString::to_string).collect::<Vec<_>>();
            assert!(
                r.agrees(),
                "{}: only paths {:?}, only intersection {:?}",
                g.to_graph6(),
                show(&r.only_paths),
                show(&r.only_intersection)
            );
        }
    }
}
