use logw_core::characters::graded_dims;
use logw_core::fock::{kernel_graded_dims_scaled, sectors};
use logw_core::{
    central_charge, graded_basis, h_action, heisenberg_act, kernel_graded_dims, narrow_f,
    relation_suite, rhs_character, screening_f, zero_mode, Caps, Error, FockBasisVector,
    FockElement, Hat, LambdaParam, LatticeVector, QuadScalar, Rat, RootSystem, Weight,
};
use num_traits::One;
use proptest::prelude::*;

fn rs(label: &str) -> RootSystem {
    label.parse().unwrap()
}

fn ket(p: i64, beta: Vec<i64>, s: Vec<i64>) -> FockElement {
    FockElement::basis(p, FockBasisVector::vacuum_of(Weight(beta), Weight(s)))
}

#[test]
fn heisenberg_modes() {
    let a1 = rs("A1");
    let v = ket(2, vec![0], vec![0]);
    let x = heisenberg_act(&a1, 1, -1, &v).unwrap();
    assert_eq!(heisenberg_act(&a1, 1, 1, &x).unwrap(), v.scale(&QuadScalar::rational(2, Rat::from(2))));
    assert!(heisenberg_act(&a1, 1, 0, &v).unwrap().is_zero());
    let y = ket(2, vec![2], vec![1]);
    assert!(heisenberg_act(&a1, 1, 2, &y).unwrap().is_zero());
    // (alpha_1, -sqrt(2) alpha_1 + omega_1/sqrt(2)) = -2 sqrt(2) + sqrt(2)/2.
    let e = heisenberg_act(&a1, 1, 0, &y).unwrap();
    assert_eq!(e, y.scale(&QuadScalar::surd(2, Rat::new(-3, 2))));
}

#[test]
fn basis_examples() {
    let a1 = rs("A1");
    let caps = Caps::default();
    let lam = LambdaParam::zero(&a1, 2).unwrap();
    let b0 = graded_basis(&a1, &lam, Rat::from(0), &caps).unwrap();
    assert_eq!(b0, vec![FockBasisVector::vacuum_of(Weight(vec![0]), Weight(vec![0]))]);
    let b1 = graded_basis(&a1, &lam, Rat::from(1), &caps).unwrap();
    assert_eq!(b1.len(), 3);
    assert!(b1.contains(&FockBasisVector::vacuum_of(Weight(vec![-2]), Weight(vec![0]))));
    let mut prev = 0;
    for d in 0..=8 {
        let n = graded_basis(&a1, &lam, Rat::from(d), &caps).unwrap().len();
        assert!(n >= prev);
        prev = n;
    }
    assert!(graded_basis(&a1, &lam, Rat::from(-1), &caps).is_err());
    let tiny = Caps { max_basis: 5, ..Caps::default() };
    assert!(matches!(graded_basis(&a1, &lam, Rat::from(6), &tiny), Err(Error::ResourceCap { .. })));
}

#[test]
fn sectors_are_exactly_those_below_the_bound() {
    let a2 = rs("A2");
    for p in 2..=4 {
        for lam in logw_core::enumerate_lambdas(&a2, p, &Caps::default()).unwrap().iter().step_by(5) {
            let got = sectors(&a2, lam, Rat::from(5));
            let hat = lam.hat_weight(&a2);
            for a in -8..=8 {
                for b in -8..=8 {
                    let beta = Weight(vec![a, b]);
                    if !a2.in_root_lattice(&(&beta - &hat)) {
                        continue;
                    }
                    let inside = logw_core::delta(&a2, &beta, lam) <= Rat::from(5);
                    assert_eq!(got.contains(&beta), inside, "{lam} {beta}");
                }
            }
        }
    }
}

#[test]
fn screening_examples() {
    let a1 = rs("A1");
    assert!(screening_f(&a1, 1, &ket(2, vec![0], vec![0])).unwrap().is_zero());
    let a2 = rs("A2");
    let start = ket(2, vec![1, -2], vec![0, 0]);
    let once = screening_f(&a2, 1, &start).unwrap();
    assert!(!once.is_zero());
    assert!(screening_f(&a2, 1, &once).unwrap().is_zero());
    // (mu, nu) = 1/4 is not an integer.
    let odd = LatticeVector { x: Weight(vec![0]), y: Weight(vec![1]) };
    assert!(matches!(zero_mode(&a1, &odd, &ket(2, vec![0], vec![1])), Err(Error::Argument(_))));
    assert!(matches!(narrow_f(&a1, 1, &ket(3, vec![0], vec![1])), Err(Error::UnsupportedSector(_))));
    let h = h_action(&a1, 1, &Weight(vec![0]), &ket(2, vec![0], vec![0])).unwrap();
    assert!(h.is_zero());
    let x = ket(2, vec![2, -1], vec![0, 0]);
    let h = h_action(&a2, 1, &Weight(vec![1, 1]), &x).unwrap();
    assert_eq!(h, x.scale(&QuadScalar::rational(2, Rat::from(3))));
    assert!(h_action(&a2, 2, &Weight(vec![1, 1]), &x).unwrap().is_zero());
}

#[test]
fn kernel_matches_character_coefficient() {
    let a1 = rs("A1");
    let lam = LambdaParam::zero(&a1, 2).unwrap();
    let weyl = a1.enumerate_weyl(10).unwrap();
    let rep = kernel_graded_dims(&a1, &lam, &[1], Rat::from(4), false, &Caps::default()).unwrap();
    let c24 = central_charge(&a1, 2) / 24;
    let h = rhs_character(&a1, &weyl, &lam, Rat::from(4) - c24, false).unwrap();
    let dims = graded_dims(&h.series);
    for e in &rep.entries {
        let want = dims.iter().find(|(q, _)| *q == e.delta - c24).map_or(0, |(_, c)| c.to_integer().try_into().unwrap());
        assert_eq!(e.kernel, want, "Delta={}", e.delta);
    }
    assert_eq!(rep.kernel_at(Rat::from(2)), 1);
    assert_eq!(rep.kernel_at(Rat::from(3)), 4);
}

#[test]
fn empty_index_set_gives_ambient_dims() {
    let a2 = rs("A2");
    let lam = LambdaParam::new(&a2, 3, Hat::Omega(1), vec![1, 0]).unwrap();
    let caps = Caps::default();
    let rep = kernel_graded_dims(&a2, &lam, &[], Rat::from(3), false, &caps).unwrap();
    let basis = graded_basis(&a2, &lam, Rat::from(3), &caps).unwrap();
    assert_eq!(rep.entries.iter().map(|e| e.kernel).sum::<usize>(), basis.len());
    assert!(rep.entries.iter().all(|e| e.kernel == e.ambient));
    assert!(matches!(
        kernel_graded_dims(&a2, &lam, &[1], Rat::from(3), false, &caps),
        Err(Error::UnsupportedSector(_))
    ));
}

#[test]
fn report_json_shape() {
    let a1 = rs("A1");
    let lam = LambdaParam::zero(&a1, 2).unwrap();
    let rep = kernel_graded_dims(&a1, &lam, &[1], Rat::from(3), true, &Caps::default()).unwrap();
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["J"], serde_json::json!([1]));
    assert_eq!(json["entries"][0]["delta"], "0");
    assert_eq!(json["entries"].as_array().unwrap().last().unwrap()["weights"]["(2)"], 1);
}

#[test]
fn relations_hold_in_rank_one() {
    let a1 = rs("A1");
    let rep = relation_suite(&a1, 2, Rat::from(3), &Caps::default()).unwrap();
    for c in &rep.checks {
        assert!(c.failures.is_empty(), "{}: {:?}", c.name, c.failures);
    }
    assert!(rep.passed);
    assert!(rep.checks.iter().find(|c| c.name == "exactness").unwrap().cases > 0);
}

#[test]
fn serre_vectors_in_a2() {
    let a2 = rs("A2");
    let rep = relation_suite(&a2, 2, Rat::from(2), &Caps::default()).unwrap();
    let serre = rep.checks.iter().find(|c| c.name == "serre").unwrap();
    assert_eq!(serre.cases, 4);
    assert!(serre.failures.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn kernel_dims_ignore_sector_rescaling(seed in any::<u64>(), p in 2i64..=3) {
        let a2 = rs("A2");
        let lam = LambdaParam::zero(&a2, p).unwrap();
        let caps = Caps::default();
        let plain = kernel_graded_dims(&a2, &lam, &[1, 2], Rat::from(3), true, &caps).unwrap();
        let scale = |beta: &Weight, i: usize| {
            let h = beta.0.iter().fold(seed ^ i as u64, |acc, &x| acc.wrapping_mul(31).wrapping_add(x as u64));
            let a = (h % 7) as i64 + 1;
            let b = ((h >> 8) % 5) as i64 - 2;
            QuadScalar::new(p, Rat::from(a), Rat::new(b, 3))
        };
        let scaled = kernel_graded_dims_scaled(&a2, &lam, &[1, 2], Rat::from(3), true, &caps, Some(&scale)).unwrap();
        prop_assert_eq!(plain.entries, scaled.entries);
    }

    #[test]
    fn screenings_preserve_weight(p in 2i64..=4, beta in proptest::collection::vec(-2i64..=2, 2), d in 0i64..=3) {
        let a2 = rs("A2");
        for cr in logw_core::fock::coloured_partitions(d, 2) {
            let v = FockBasisVector { beta: Weight(beta.clone()), s: Weight(vec![0, 0]), creations: cr };
            let wt = v.conformal_weight(&a2, p);
            let x = FockElement::basis(p, v);
            for i in 1..=2 {
                for y in [screening_f(&a2, i, &x).unwrap(), narrow_f(&a2, i, &x).unwrap()] {
                    prop_assert!(y.terms.keys().all(|w| w.conformal_weight(&a2, p) == wt));
                }
            }
        }
    }
}

#[test]
fn one_is_unit() {
    let x = QuadScalar::one(3);
    assert_eq!(&x * &QuadScalar::surd(3, Rat::one()), QuadScalar::surd(3, Rat::one()));
}
