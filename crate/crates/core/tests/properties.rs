use lincut::dynamics::{self, Caps, Semantics};
use lincut::extension::{cuttable_extension, full_extension};
use lincut::implicants::{find_map, geodesic_from_map, Strength};
use lincut::netio::{parse_bnet, serialize_bnet};
use lincut::random::{random_network, random_thresholds};
use lincut::refinement::make_refinement;
use lincut::space::{hull, partition, span};
use lincut::structure::{find_linear_cut, interaction_graph, verify_linear_cut};
use lincut::{BooleanNetwork, ComponentSet, State, Subspace};
use proptest::prelude::*;

fn state(n: usize) -> impl Strategy<Value = State> {
    (0..1u64 << n).prop_map(move |b| State::from_bits(b, n))
}

fn subspace(n: usize) -> impl Strategy<Value = Subspace> {
    (0..1u64 << n, 0..1u64 << n).prop_map(move |(f, v)| Subspace::from_masks(f, v, n))
}

fn network(max_n: usize) -> impl Strategy<Value = BooleanNetwork> {
    (any::<u64>(), 1..=max_n).prop_flat_map(|(seed, n)| {
        (1..=n.min(3)).prop_map(move |d| random_network(seed, n, d).unwrap())
    })
}

fn with_state(max_n: usize) -> impl Strategy<Value = (BooleanNetwork, State, ComponentSet)> {
    network(max_n).prop_flat_map(|net| {
        let n = net.n();
        (
            Just(net),
            state(n),
            (0..1u64 << n).prop_map(ComponentSet::from_bits),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn state_text_round_trips(x in (1..12usize).prop_flat_map(state)) {
        prop_assert_eq!(x.to_string().parse::<State>().unwrap(), x);
    }

    #[test]
    fn subspace_text_round_trips(t in (1..12usize).prop_flat_map(subspace)) {
        prop_assert_eq!(t.to_string().parse::<Subspace>().unwrap(), t);
    }

    #[test]
    fn partition_covers_every_component(
        (x, t) in (1..10usize).prop_flat_map(|n| (state(n), subspace(n)))
    ) {
        let p = partition(x, t);
        let n = x.len();
        prop_assert!(p.delta.intersection(p.same).is_empty());
        prop_assert!(p.delta.intersection(p.free).is_empty());
        prop_assert!(p.same.intersection(p.free).is_empty());
        prop_assert_eq!(p.delta.union(p.same).union(p.free), ComponentSet::full(n));
        prop_assert_eq!(p.delta.is_empty() && p.free.is_empty(), t.as_state() == Some(x));
    }

    #[test]
    fn flips_invert_and_differ_exactly(
        (x, j) in (1..10usize).prop_flat_map(|n| (state(n), (0..1u64 << n).prop_map(ComponentSet::from_bits)))
    ) {
        prop_assert_eq!(x.flip(j).flip(j), x);
        prop_assert_eq!(x.diff(x.flip(j)), j);
        prop_assert_eq!(span(x, x.flip(j)).free(), j);
    }

    #[test]
    fn hull_is_the_smallest_enclosing_subspace(
        states in (1..8usize).prop_flat_map(|n| prop::collection::vec(state(n), 1..6))
    ) {
        let h = hull(states.iter().copied()).unwrap();
        prop_assert!(states.iter().all(|&s| h.contains_state(s)));
        for i in h.free().iter() {
            let v = states[0].get(i);
            prop_assert!(states.iter().any(|s| s.get(i) != v));
        }
    }

    #[test]
    fn bnet_round_trip_preserves_functions(net in network(7)) {
        let again = parse_bnet(&serialize_bnet(&net)).unwrap();
        prop_assert_eq!(again.names(), net.names());
        for b in 0..1u64 << net.n() {
            let x = State::from_bits(b, net.n());
            prop_assert_eq!(again.eval(x), net.eval(x));
        }
    }

    #[test]
    fn prime_implicants_cover_exactly((net, i) in network(6).prop_flat_map(|net| {
        let n = net.n();
        (Just(net), 0..n)
    })) {
        let n = net.n();
        for v in [false, true] {
            let primes = net.prime_implicants(i, v);
            for &p in &primes {
                prop_assert_eq!(net.function(i).constant_on(p), Some(v));
                for k in p.fixed().iter() {
                    prop_assert_ne!(net.function(i).constant_on(p.with_free(k)), Some(v));
                }
            }
            for b in 0..1u64 << n {
                let x = State::from_bits(b, n);
                let covered = primes.iter().any(|p| p.contains_state(x));
                prop_assert_eq!(covered, net.eval_component(i, x) == v);
            }
        }
    }

    #[test]
    fn maps_exist_iff_geodesics_do((net, x, j) in with_state(5)) {
        let caps = Caps::default();
        for strength in [Strength::Consistent, Strength::Strong] {
            let sem = strength.semantics();
            let map = find_map(&net, x, j, strength).unwrap();
            let geo = dynamics::geodesic(&net, x, j, sem, &caps).unwrap();
            prop_assert_eq!(map.is_some(), geo.is_some());
            if let Some(map) = map {
                let path = geodesic_from_map(&net, &map, strength).unwrap();
                prop_assert_eq!(path.first().copied(), Some(x));
                prop_assert_eq!(path.last().copied(), Some(x.flip(j)));
                prop_assert_eq!(path.len(), j.len() + 1);
            }
        }
    }

    #[test]
    fn min_trap_space_is_least((net, x, _) in with_state(5)) {
        let caps = Caps::default();
        let t = dynamics::min_trap_space_containing(&net, x);
        prop_assert!(t.contains_state(x));
        prop_assert!(dynamics::is_trap_space(&net, t));
        for s in dynamics::trap_spaces(&net, &caps).unwrap() {
            if s.contains_state(x) {
                prop_assert!(s.contains(t));
            }
        }
    }

    #[test]
    fn reachability_grows_with_permissiveness((net, x, _) in with_state(5)) {
        let caps = Caps::default();
        let asy = dynamics::reach_set(&net, x, Semantics::Asynchronous, &caps).unwrap();
        let gen = dynamics::reach_set(&net, x, Semantics::Generalized, &caps).unwrap();
        let perm = dynamics::reach_set(&net, x, Semantics::Permissive, &caps).unwrap();
        prop_assert!(asy.is_subset(&gen));
        prop_assert!(gen.is_subset(&perm));
        let mt = dynamics::min_trap_space_containing(&net, x);
        prop_assert!(perm.iter().all(|y| mt.contains_state(y)));
    }

    #[test]
    fn extensions_embed_and_cut(net in network(5)) {
        for ext in [full_extension(&net), cuttable_extension(&net)] {
            let g = interaction_graph(ext.extended());
            prop_assert_eq!(verify_linear_cut(&g, ext.extender_set()).unwrap(), None);
            for b in 0..1u64 << net.n() {
                let x = State::from_bits(b, net.n());
                let e = ext.embed(x);
                prop_assert!(ext.is_canonical(e));
                prop_assert_eq!(ext.project(e), x);
            }
        }
        prop_assert!(find_linear_cut(&interaction_graph(cuttable_extension(&net).extended()), true).is_ok());
    }

    #[test]
    fn extreme_levels_embed_like_booleans((net, seed) in (network(4), any::<u64>())) {
        let r = make_refinement(&net, &random_thresholds(&net, seed, 3).unwrap());
        let ext = full_extension(&net);
        for b in 0..1u64 << net.n() {
            let x = State::from_bits(b, net.n());
            prop_assert_eq!(r.mvtobuf(&ext, &r.booltostr(x)).unwrap().as_state(), Some(ext.embed(x)));
        }
    }
}

#[test]
fn random_networks_are_reproducible() {
    assert_eq!(
        random_network(11, 6, 3).unwrap(),
        random_network(11, 6, 3).unwrap()
    );
    assert!(random_network(11, 6, 0).is_err());
    assert!(random_network(11, 3, 4).is_err());
}
