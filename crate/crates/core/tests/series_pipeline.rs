use std::collections::BTreeSet;
use std::sync::Arc;

use crepanto_core::arith::Integer;
use crepanto_core::cone::{euler_characteristic, is_smooth_fan};
use crepanto_core::hilbert::hilbert_basis_orthant;
use crepanto_core::lattice::LatticePoint;
use crepanto_core::quotient::{cohomology_cyclic, junior_points, CyclicQuotientType};
use crepanto_core::series::{cohomology, verify_uniqueness, SeriesType};
use crepanto_core::triangulation::{classify, coherence_certificate, enumerate_maximal_triangulations, fan_of};
use crepanto_core::Guards;
use proptest::prelude::*;

#[test]
fn series_resolution_from_type_to_fan() {
    let t = SeriesType::new(10, 3).unwrap();
    let ct = t.cyclic_type();
    assert_eq!(ct, CyclicQuotientType::new(10, &[1, 1, 8]).unwrap());
    let tri = t.build_triangulation().unwrap();
    let fan = fan_of(&tri);
    assert!(is_smooth_fan(&fan).unwrap());
    assert_eq!(euler_characteristic(&fan), 10);
    assert!(coherence_certificate(&tri).unwrap().is_coherent());
    assert_eq!(cohomology(&t).unwrap(), cohomology_cyclic(&ct).unwrap());
    let hb: BTreeSet<LatticePoint> = hilbert_basis_orthant(t.lattice()).elements().iter().cloned().collect();
    let rays: BTreeSet<LatticePoint> = fan.rays().into_iter().collect();
    assert_eq!(hb, rays);
}

/// The clique-based uniqueness check against the exhaustive search.
#[test]
fn uniqueness_agrees_with_enumeration() {
    for (l, r) in [(4, 2), (6, 2), (5, 3), (8, 3), (5, 4), (7, 4), (6, 5)] {
        let t = SeriesType::new(l, r).unwrap();
        let lat = Arc::new(t.cyclic_type().lattice().unwrap());
        let points = junior_points(&t.cyclic_type()).unwrap().all();
        let found = enumerate_maximal_triangulations(&lat, &points, 4, &Guards::default()).unwrap();
        assert!(!found.truncated);
        assert_eq!(found.triangulations.len() == 1, verify_uniqueness(&t).unwrap(), "({l},{r})");
        assert_eq!(found.triangulations[0].canonical(), t.build_triangulation().unwrap().canonical(), "({l},{r})");
    }
}

#[test]
fn non_basic_member_keeps_a_singularity() {
    let t = SeriesType::new(5, 4).unwrap();
    let tri = t.build_triangulation().unwrap();
    let c = classify(&tri).unwrap();
    assert!(c.is_maximal && c.is_crepant && !c.is_basic);
    let total: Integer = tri.multiplicities().into_iter().sum();
    assert_eq!(total, Integer::from(5));
    assert_eq!(euler_characteristic(&fan_of(&tri)), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn basic_members_resolve_smoothly(r in 2usize..=5, extra in 0i64..20) {
        let l = r as i64 + extra;
        let t = SeriesType::new(l, r).unwrap();
        let fan = fan_of(&t.build_triangulation().unwrap());
        prop_assert_eq!(is_smooth_fan(&fan).unwrap(), t.is_basic());
    }
}
