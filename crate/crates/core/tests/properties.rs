//! Algebraic invariants checked on random inputs.

use crepant_core::algebra::{builtins, Quiver};
use crepant_core::compare::{chamber_certificate, VariableMap};
use crepant_core::crystal::{configuration_to_module, list_configurations, CrystalFamily};
use crepant_core::mckay::{mckay_quiver_with_potential, AbelianAction};
use crepant_core::representations::{
    is_semistable, positive_roots, walls_between, CartanMatrix, StabilityConvention, StabilityParameter,
};
use crepant_core::series::FormalSeries;
use crepant_core::toric::{dual_web, flop_graph, is_connected, unit_triangulations, vertex_raw, LatticePolygon, Partition};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn series(order: u32) -> impl Strategy<Value = FormalSeries> {
    prop::collection::vec(((0i32..4, 0i32..4), -9i64..10), 0..8).prop_map(move |terms| {
        let mut s = FormalSeries::zero(&["x", "y"], order);
        for ((a, b), c) in terms {
            s.add_term(&[a, b], BigInt::from(c));
        }
        s
    })
}

fn partition(max: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0u32..=max, 0..4).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn series_text_round_trips(s in series(5)) {
        prop_assert_eq!(FormalSeries::from_text(&s.to_text()).unwrap(), s);
    }

    #[test]
    fn series_ring_laws(a in series(4), b in series(4), c in series(4)) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(a.diff(&a).unwrap().is_empty());
    }

    #[test]
    fn partition_transpose(p in partition(5)) {
        let t = p.transpose();
        prop_assert_eq!(t.transpose(), p.clone());
        prop_assert_eq!(t.size(), p.size());
        prop_assert_eq!(t.kappa(), -p.kappa());
        prop_assert_eq!(p.hook_lengths().len() as u32, p.size());
    }

    #[test]
    fn vertex_is_cyclic(a in partition(2), b in partition(2), c in partition(2)) {
        let x = vertex_raw(&a, &b, &c, 10);
        prop_assert_eq!(&x, &vertex_raw(&b, &c, &a, 10));
        prop_assert_eq!(&x, &vertex_raw(&c, &a, &b, 10));
    }

    #[test]
    fn stability_ignores_positive_scaling(
        theta in prop::collection::vec(-4i64..5, 2),
        num in 1i64..7,
        den in 1i64..7,
    ) {
        let q = builtins::conifold();
        let t = StabilityParameter::from_integers(&theta);
        let s = t.scaled(&BigRational::new(num.into(), den.into()));
        for c in list_configurations(&CrystalFamily::Conifold, 4) {
            let m = configuration_to_module(&c);
            let a = is_semistable(&q, &m, &t, StabilityConvention::SubobjectsNegative).unwrap();
            let b = is_semistable(&q, &m, &s, StabilityConvention::SubobjectsNegative).unwrap();
            prop_assert_eq!(a.classification, b.classification);
        }
    }

    #[test]
    fn certificates_and_walls(a in -9i64..10, b in -9i64..10, k in 1i64..5) {
        let roots = positive_roots(&CartanMatrix::parse("2,-2;-2,2").unwrap(), 6).unwrap();
        let theta = StabilityParameter::from_integers(&[a, b]);
        let scaled = StabilityParameter::from_integers(&[k * a, k * b]);
        match chamber_certificate(&theta, &roots, 6) {
            Ok(c) => prop_assert_eq!(c, chamber_certificate(&scaled, &roots, 6).unwrap()),
            Err(_) => prop_assert!(chamber_certificate(&scaled, &roots, 6).is_err()),
        }
        let forward = walls_between(&theta, &scaled, &roots).unwrap();
        prop_assert!(forward.separating.is_empty());
        let other = StabilityParameter::from_integers(&[b, a]);
        let ab = walls_between(&theta, &other, &roots).unwrap();
        let ba = walls_between(&other, &theta, &roots).unwrap();
        prop_assert_eq!(ab.separating, ba.separating);
    }

    #[test]
    fn variable_maps_round_trip(c in -3i64..4, e in -3i32..4, f in 1i32..4) {
        prop_assume!(c != 0 && e != 0);
        let text = format!("q0={c}*Q0^{f}*t^({e})");
        let m = VariableMap::parse(&text).unwrap();
        prop_assert_eq!(VariableMap::parse(&m.to_string()).unwrap(), m);
    }

    #[test]
    fn mckay_quivers_round_trip(n in 2u32..7, a in 0i64..7, b in 0i64..7) {
        let c = (-(a + b)).rem_euclid(n as i64);
        let act = AbelianAction::cyclic(n, [a, b, c]).unwrap();
        let q = mckay_quiver_with_potential(&act);
        prop_assert_eq!(q.vertices().len(), n as usize);
        prop_assert_eq!(q.arrows().len(), 3 * n as usize);
        prop_assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_polygons_triangulate_consistently(points in prop::collection::vec((0i64..3, 0i64..3), 3..7)) {
        let pts: Vec<[i64; 2]> = points.into_iter().map(|(x, y)| [x, y]).collect();
        let Ok(p) = LatticePolygon::hull(&pts) else { return Ok(()) };
        let ts = unit_triangulations(&p);
        prop_assert!(!ts.is_empty());
        prop_assert!(is_connected(ts.len(), &flop_graph(&ts).unwrap()));
        for t in &ts {
            prop_assert_eq!(t.triangles().len() as i64, p.double_area());
            prop_assert!(dual_web(t).validate().is_ok());
        }
    }
}
