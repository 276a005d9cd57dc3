//! Properties of the geodesic reducer and its agreement with exact oracles.

use std::sync::{Arc, OnceLock};

use artin_core::group::{Routing, SphericalGroup};
use artin_core::monoid::{MonoidEngine, PositiveWord};
use artin_core::{DefiningGraph, Gen, GroupOracle, Letter, Sign, SignedWord};
use proptest::prelude::*;

fn word(rank: u8, max: usize) -> impl Strategy<Value = SignedWord> {
    prop::collection::vec((0..rank, any::<bool>()), 0..=max).prop_map(|v| {
        v.into_iter()
            .map(|(g, pos)| Letter::new(Gen(g), if pos { Sign::Pos } else { Sign::Neg }))
            .collect::<SignedWord>()
    })
}

fn triangle() -> &'static GroupOracle {
    static O: OnceLock<GroupOracle> = OnceLock::new();
    O.get_or_init(|| GroupOracle::from_graph(DefiningGraph::parse("a b c; a b 3; b c 3; a c 3").unwrap()))
}

fn three_free() -> &'static GroupOracle {
    static O: OnceLock<GroupOracle> = OnceLock::new();
    O.get_or_init(|| GroupOracle::from_graph(DefiningGraph::parse("a b c; a b 4; b c 4; a c 2").unwrap()))
}

/// The rank-3 spherical group A_3, reduced by windows only and compared
/// with Garside normal forms.
fn a3() -> &'static (GroupOracle, SphericalGroup) {
    static O: OnceLock<(GroupOracle, SphericalGroup)> = OnceLock::new();
    O.get_or_init(|| {
        let graph = Arc::new(DefiningGraph::parse("a b c; a b 3; b c 3; a c 2").unwrap());
        let exact = SphericalGroup::new(&MonoidEngine::new(graph.clone()), graph.full(), 1000).unwrap();
        let oracle = GroupOracle::new(graph, Default::default()).rerouted(Routing::Windows);
        (oracle, exact)
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn reduce_gives_an_equal_geodesic(w in word(3, 10)) {
        let o = triangle();
        let r = o.reduce(&w).unwrap();
        prop_assert!(r.len() <= w.free_reduce().len());
        prop_assert_eq!(o.reduce(&r).unwrap().len(), r.len());
        prop_assert_eq!(o.key(&r).unwrap(), o.key(&w).unwrap());
        prop_assert!(o.is_identity(&r.inverse().concat(&w)).unwrap());
    }

    #[test]
    fn inverse_has_the_same_length(w in word(3, 10)) {
        for o in [triangle(), three_free()] {
            prop_assert_eq!(o.geodesic_length(&w).unwrap(), o.geodesic_length(&w.inverse()).unwrap());
        }
    }

    #[test]
    fn keys_are_canonical(u in word(3, 5), v in word(3, 5)) {
        let o = three_free();
        let same = o.equal(&u, &v).is_equal();
        prop_assert_eq!(o.key(&u).unwrap() == o.key(&v).unwrap(), same);
    }

    #[test]
    fn windows_match_garside_on_a3(w in word(3, 9)) {
        let (o, exact) = a3();
        let r = o.reduce(&w).unwrap();
        prop_assert_eq!(exact.normal_form(&r), exact.normal_form(&w));
        prop_assert_eq!(r.len() as u32, exact.geodesic_length(&w).unwrap());
    }

    #[test]
    fn monoid_and_group_agree(u in prop::collection::vec(0u8..3, 0..6), v in prop::collection::vec(0u8..3, 0..6)) {
        let o = three_free();
        let pu = PositiveWord(u.into_iter().map(Gen).collect());
        let pv = PositiveWord(v.into_iter().map(Gen).collect());
        prop_assert_eq!(o.monoid().monoid_equal(&pu, &pv), o.equal(&pu.signed(), &pv.signed()).is_equal());
    }
}
