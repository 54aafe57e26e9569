use proptest::prelude::*;

use pcube::cli::format::{parse_graph, print_graph};
use pcube::decomposer::{certify_with, replay, ClassChoice};
use pcube::expansion::{
    extract_noncrossing_step, is_noncrossing_expansion, is_two_face_expansion, verify_noncrossing,
};
use pcube::generators::{random_partial_cube, random_planar_partial_cube};
use pcube::graph::VertexId;
use pcube::ops::{contract_class, expand, expand_tagged, ExpansionSpec};
use pcube::partial_cube::{recognize, verify_labeling};
use pcube::planarity::{is_planar, test_planarity, verify_embedding, verify_kuratowski, Planarity};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generated_partial_cubes_are_recognized(steps in 0usize..7, seed in any::<u64>()) {
        let g = random_partial_cube(steps, seed).unwrap();
        let pc = recognize(&g).unwrap();
        prop_assert_eq!(pc.partition.len(), steps);
        prop_assert!(verify_labeling(&g, &pc.labeling));
        prop_assert!(pc.partition.is_cut_partition(&g));
    }

    #[test]
    fn contraction_inverts_expansion(steps in 1usize..7, seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = random_partial_cube(steps, seed).unwrap();
        let tp = recognize(&g).unwrap().partition;
        let class = pick.index(tp.len());
        let r = contract_class(&g, &tp, class).unwrap();
        let x = expand_tagged(&r.spec()).unwrap();
        prop_assert!(r.identifies(&g, &x));
        prop_assert_eq!(recognize(&r.quotient).unwrap().partition.len(), steps - 1);
    }

    #[test]
    fn planarity_certificates_verify(steps in 1usize..6, seed in any::<u64>()) {
        let g = random_partial_cube(steps, seed).unwrap();
        match test_planarity(&g) {
            Planarity::Planar(emb) => prop_assert!(verify_embedding(&g, &emb)),
            Planarity::NonPlanar(w) => prop_assert!(verify_kuratowski(&g, &w)),
        }
    }

    #[test]
    fn every_class_yields_a_planar_certificate(steps in 1usize..8, seed in any::<u64>()) {
        let h = random_planar_partial_cube(steps, seed).unwrap();
        let tp = recognize(&h).unwrap().partition;
        for class in 0..tp.len() {
            let cert = extract_noncrossing_step(&h, &tp, class).unwrap();
            prop_assert!(verify_noncrossing(&cert));
            prop_assert!(is_planar(&expand(&cert.spec).unwrap()));
            prop_assert!(is_planar(&cert.spec.base));
        }
    }

    #[test]
    fn noncrossing_implies_two_face(steps in 1usize..5, seed in any::<u64>(), mask in any::<u64>()) {
        let base = random_planar_partial_cube(steps, seed).unwrap();
        let all: Vec<VertexId> = base.vertices().collect();
        let v2: Vec<VertexId> = all.iter().copied().filter(|v| mask >> (v.index() % 64) & 1 == 1).collect();
        if let Ok(spec) = ExpansionSpec::new(base, all, v2) {
            if is_noncrossing_expansion(&spec).unwrap() {
                prop_assert!(is_two_face_expansion(&spec).unwrap());
            }
        }
    }

    #[test]
    fn random_class_choice_replays(steps in 1usize..8, seed in any::<u64>(), choice in any::<u64>()) {
        let h = random_planar_partial_cube(steps, seed).unwrap();
        let cert = certify_with(&h, ClassChoice::Random(choice)).unwrap();
        prop_assert_eq!(cert.steps.len(), steps);
        prop_assert!(replay(&cert).unwrap().labeled_eq(&h));
    }

    #[test]
    fn text_format_round_trips(steps in 0usize..7, seed in any::<u64>()) {
        let g = random_partial_cube(steps, seed).unwrap();
        let text = print_graph("g", &g);
        let f = parse_graph(&text).unwrap();
        prop_assert!(f.graph.labeled_eq(&g));
        prop_assert_eq!(print_graph(&f.name, &f.graph), text);
    }
}
