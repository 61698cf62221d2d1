//! Root systems and walls against reflection orbits computed here.

use std::collections::{BTreeSet, VecDeque};

use crepant_core::algebra::builtins;
use crepant_core::compare::chamber_certificate;
use crepant_core::representations::{
    cartan_matrix, positive_roots, walls_between, CartanMatrix, RootKind, StabilityParameter,
};

/// Real roots as the orbit of the simple roots under reflections, kept positive and below `height`.
fn reflection_orbit(c: &[Vec<i64>], height: i64) -> BTreeSet<Vec<i64>> {
    let n = c.len();
    let reflect = |a: &[i64], i: usize| -> Vec<i64> {
        let pairing: i64 = (0..n).map(|j| c[i][j] * a[j]).sum();
        let mut b = a.to_vec();
        b[i] -= pairing;
        b
    };
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(a) = queue.pop_front() {
        for i in 0..n {
            let b = reflect(&a, i);
            if b.iter().all(|&x| x >= 0) && b.iter().sum::<i64>() <= 2 * height && seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    seen.into_iter().filter(|a| a.iter().sum::<i64>() <= height).collect()
}

#[test]
fn affine_a1_roots_to_height_nine() {
    let c = CartanMatrix::parse("2,-2;-2,2").unwrap();
    let roots = positive_roots(&c, 9).unwrap();
    let real: BTreeSet<Vec<i64>> = roots.iter().filter(|r| r.kind == RootKind::Real).map(|r| r.vector.clone()).collect();
    let imaginary: BTreeSet<Vec<i64>> =
        roots.iter().filter(|r| r.kind == RootKind::Imaginary).map(|r| r.vector.clone()).collect();
    assert_eq!(real, reflection_orbit(c.entries(), 9));
    assert!(real.iter().all(|a| (a[0] - a[1]).abs() == 1));
    assert_eq!(imaginary, (1..=4).map(|k| vec![k, k]).collect());
    assert_eq!(real.len(), 10);
}

#[test]
fn finite_types_match_reflection_orbits() {
    for (text, count) in [("2,-1;-1,2", 3), ("2,-1,0;-1,2,-1;0,-1,2", 6), ("2,-1,-1;-1,2,-1;-1,-1,2", 0)] {
        let c = CartanMatrix::parse(text).unwrap();
        let roots = positive_roots(&c, 8).unwrap();
        let real: BTreeSet<Vec<i64>> =
            roots.iter().filter(|r| r.kind == RootKind::Real).map(|r| r.vector.clone()).collect();
        assert_eq!(real, reflection_orbit(c.entries(), 8), "{text}");
        if count > 0 {
            assert_eq!(roots.len(), count, "{text}");
        }
    }
}

#[test]
fn opposite_parameters_cross_every_wall() {
    let c = CartanMatrix::parse("2,-2;-2,2").unwrap();
    let roots = positive_roots(&c, 9).unwrap();
    for (a, b) in [(2, -5), (3, 1), (-7, 4), (1, 1)] {
        let theta = StabilityParameter::from_integers(&[a, b]);
        let minus = StabilityParameter::from_integers(&[-a, -b]);
        let report = walls_between(&theta, &minus, &roots).unwrap();
        let expected: Vec<Vec<i64>> =
            roots.iter().filter(|r| a * r.vector[0] + b * r.vector[1] != 0).map(|r| r.vector.clone()).collect();
        let got: Vec<Vec<i64>> = report.separating.iter().map(|r| r.vector.clone()).collect();
        assert_eq!(got, expected);
        assert_eq!(report.on_wall_first, report.on_wall_second);
        assert_eq!(report.on_wall_first.len() + report.separating.len(), roots.len());
    }
}

#[test]
fn mckay_cartan_of_z3_is_hyperbolic() {
    let c = cartan_matrix(&builtins::kp2());
    assert_eq!(c.entries(), [vec![2, -3, -3], vec![-3, 2, -3], vec![-3, -3, 2]]);
    let roots = positive_roots(&c, 4).unwrap();
    assert!(roots.iter().any(|r| r.vector == vec![1, 1, 1] && r.kind == RootKind::Imaginary));
    let cert = chamber_certificate(&StabilityParameter::from_integers(&[-1, -1, -1]), &roots, 4).unwrap();
    assert!(cert.all_negative());
    assert_eq!(cert.entries.len(), roots.len());
}
