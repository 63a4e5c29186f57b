use proptest::prelude::*;
use serde_json::Value;
use spinejac::format::*;
use spinejac_core::{Component, DualGraph, EdgeSet, IntegerPolarization, Polarization, Rational, SheafClass};

fn graph() -> impl Strategy<Value = DualGraph> {
    (1usize..=5, prop::collection::vec((0usize..5, 0usize..5), 0..8), prop::collection::vec(0u32..3, 5), 0usize..5)
        .prop_filter_map("disconnected", |(n, extra, genera, p)| {
            // a spanning path keeps the curve connected
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
            edges.extend(extra.into_iter().map(|(a, b)| (a % n, b % n)));
            let comps = (0..n).map(|i| Component::new(format!("x{i}"), genera[i])).collect();
            DualGraph::new(comps, edges, p % n).ok()
        })
}

fn weights(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    (prop::collection::vec(-9i64..=9, n), 1i64..=7).prop_map(move |(mut nums, q)| {
        let rest: i64 = nums[..n - 1].iter().sum();
        nums[n - 1] = q - rest;
        nums.into_iter().map(|k| Rational::new(k, q)).collect()
    })
}

proptest! {
    #[test]
    fn graphs_round_trip(g in graph()) {
        let v = graph_to_value(&g);
        let text = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(parse_graph(&text).unwrap(), g.clone());
        prop_assert_eq!(graph_from_value(v).unwrap(), g);
    }

    #[test]
    fn polarizations_round_trip((g, w) in graph().prop_flat_map(|g| { let n = g.n(); (Just(g), weights(n)) }), chi in -4i64..=4) {
        let p = Polarization::new(chi, w).unwrap();
        let v = polarization_to_value(&g, &p);
        let back = parse_polarization(&g, &v.to_string(), None).unwrap();
        prop_assert_eq!(back, PolarizationInput::Weights(p));
    }

    #[test]
    fn bundles_round_trip((g, d) in graph().prop_flat_map(|g| { let n = g.n(); (Just(g), prop::collection::vec(-5i64..=5, n)) })) {
        let total: i64 = d.iter().sum();
        let e = IntegerPolarization::new(1, d).unwrap();
        prop_assert_eq!(e.slope(), total);
        let v = bundle_to_value(&g, &e);
        prop_assert_eq!(parse_polarization(&g, &v.to_string(), None).unwrap(), PolarizationInput::Bundle(e));
    }

    #[test]
    fn sheaves_round_trip((g, d, s) in graph().prop_flat_map(|g| { let n = g.n(); (Just(g), prop::collection::vec(-5i64..=5, n), any::<u64>()) })) {
        let sheaf = SheafClass::new(EdgeSet::from_bits(s & g.all_edges().bits()), d);
        let v = sheaf_to_value(&g, &sheaf);
        prop_assert_eq!(parse_sheaf(&g, &v.to_string()).unwrap(), sheaf);
        // serialization is canonical: keys in vertex order
        let again: Value = serde_json::from_str(&v.to_string()).unwrap();
        prop_assert_eq!(again.to_string(), v.to_string());
    }

    #[test]
    fn rationals_round_trip(p in -1000i64..1000, q in 1i64..1000) {
        let r = Rational::new(p, q);
        prop_assert_eq!(parse_rational(&format_rational(r), "$").unwrap(), r);
    }
}

#[test]
fn fixtures_parse_and_reserialize_identically() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    for name in ["two_component.json", "two_cycle.json", "chain_of_three.json"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let g = parse_graph(&text).unwrap();
        let original: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(graph_to_value(&g), original, "{name}");
    }
    let g = parse_graph(&std::fs::read_to_string(dir.join("two_component.json")).unwrap()).unwrap();
    for name in ["half_chi0.json", "half_chi1.json", "bundle_rank2.json"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let p = parse_polarization(&g, &text, None).unwrap();
        let original: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(input_to_value(&g, &p), original, "{name}");
    }
}
