use logw_core::characters::{graded_dims, is_weyl_symmetric, rhs_weights, theta_exponent};
use logw_core::series::{int, weyl_character_poly};
use logw_core::{
    alcove_lambdas, central_charge, compare_sides, delta, euler_character, rhs_character,
    theta_trace, Caps, Hat, LambdaParam, Rat, RootSystem, Weight,
};
use num_traits::Zero;

fn rs(label: &str) -> RootSystem {
    label.parse().unwrap()
}

fn check(label: &str, p: i64, n: i64) {
    let r = rs(label);
    let weyl = r.enumerate_weyl(Caps::default().max_weyl).unwrap();
    let lams = alcove_lambdas(&r, p).unwrap();
    assert!(!lams.is_empty(), "{label} p={p}");
    for lam in lams {
        let e = euler_character(&r, &weyl, &lam, Rat::from(n)).unwrap();
        let h = rhs_character(&r, &weyl, &lam, Rat::from(n), false).unwrap();
        let rep = compare_sides(&e, &h).unwrap();
        assert!(rep.matches, "{label} p={p} {lam}: {:?}", &rep.diffs[..rep.diffs.len().min(5)]);
        assert!(is_weyl_symmetric(&r, &e.series), "{label} p={p} {lam}");
        assert!(!h.conjectural);
    }
}

#[test]
fn sides_agree_a1() {
    check("A1", 2, 6);
    check("A1", 3, 6);
    check("A1", 5, 4);
}

#[test]
fn sides_agree_a2() {
    check("A2", 2, 3);
    check("A2", 3, 3);
}

#[test]
fn sides_agree_a3_d4() {
    check("A3", 3, 3);
    check("A3", 4, 2);
    check("D4", 5, 2);
    check("D4", 6, 1);
}

#[test]
fn a3_vacuum_at_p2_agrees_outside_the_alcove() {
    let r = rs("A3");
    let weyl = r.enumerate_weyl(100).unwrap();
    let lam = LambdaParam::zero(&r, 2).unwrap();
    let e = euler_character(&r, &weyl, &lam, Rat::from(5)).unwrap();
    let h = rhs_character(&r, &weyl, &lam, Rat::from(5), true).unwrap();
    assert!(h.conjectural);
    assert!(compare_sides(&e, &h).unwrap().matches);
    assert_eq!(h.series.valuation(), Some(Rat::new(9, 8)));
}

#[test]
fn a1_p3_zero_hat_sides_agree_to_six() {
    let r = rs("A1");
    let weyl = r.enumerate_weyl(10).unwrap();
    for s in 0..3 {
        let lam = LambdaParam::new(&r, 3, Hat::Zero, vec![s]).unwrap();
        let e = euler_character(&r, &weyl, &lam, Rat::from(6)).unwrap();
        let h = rhs_character(&r, &weyl, &lam, Rat::from(6), false).unwrap();
        assert!(compare_sides(&e, &h).unwrap().diffs.is_empty());
    }
}

#[test]
fn vacuum_a1_p2_graded_dimensions() {
    let r = rs("A1");
    let weyl = r.enumerate_weyl(10).unwrap();
    let lam = LambdaParam::zero(&r, 2).unwrap();
    let h = rhs_character(&r, &weyl, &lam, Rat::from(7), false).unwrap();
    let got: Vec<(Rat, i64)> = graded_dims(&h.series)
        .into_iter()
        .map(|(q, c)| (q, c.to_integer().try_into().unwrap()))
        .collect();
    let want: Vec<(Rat, i64)> =
        [(0, 1), (2, 1), (3, 4), (4, 5), (5, 8), (6, 10)].iter().map(|&(k, c)| (Rat::new(1, 12) + k, c)).collect();
    assert_eq!(got, want);
    let t = theta_trace(&r, &weyl, &lam, &Weight(vec![0]), Rat::from(1)).unwrap();
    assert_eq!(t.valuation(), Some(Rat::new(1, 12)));
}

#[test]
fn a2_adjoint_appears_at_the_weight_of_theta() {
    let r = rs("A2");
    let weyl = r.enumerate_weyl(10).unwrap();
    let lam = LambdaParam::zero(&r, 2).unwrap();
    let c24 = central_charge(&r, 2) / 24;
    let at = delta(&r, &r.theta, &lam) - c24;
    assert_eq!(at, Rat::new(53, 12));
    let h = rhs_character(&r, &weyl, &lam, at, false).unwrap();
    let mut want = weyl_character_poly(&r, &weyl, &r.theta).unwrap();
    *want.get_mut(&Weight::zero(2)).unwrap() += int(3);
    assert_eq!(h.series.zpoly_at(&at), want);
}

#[test]
fn exponents_have_bounded_denominators() {
    for (label, det) in [("A1", 2), ("A2", 3), ("D4", 4)] {
        let r = rs(label);
        let weyl = r.enumerate_weyl(1000).unwrap();
        for p in 2..=4 {
            for lam in alcove_lambdas(&r, p).unwrap() {
                let h = rhs_character(&r, &weyl, &lam, Rat::from(2), false).unwrap();
                for q in h.series.q_exponents() {
                    assert!((24 * p * det) % q.denom() == 0, "{label} p={p} {lam} {q}");
                }
            }
        }
    }
}

#[test]
fn outside_the_alcove_needs_opt_in() {
    let r = rs("A2");
    let weyl = r.enumerate_weyl(10).unwrap();
    let lam = LambdaParam::new(&r, 2, Hat::Zero, vec![1, 1]).unwrap();
    assert!(rhs_character(&r, &weyl, &lam, Rat::from(2), false).is_err());
    let h = rhs_character(&r, &weyl, &lam, Rat::from(2), true).unwrap();
    assert!(h.conjectural);
}

#[test]
fn rhs_weight_list_is_complete() {
    // Any dominant gamma beyond the list has every theta exponent above the order.
    let r = rs("A2");
    let weyl = r.enumerate_weyl(10).unwrap();
    for lam in alcove_lambdas(&r, 3).unwrap() {
        let n = Rat::from(4);
        let listed = rhs_weights(&r, &lam, n);
        let hat = lam.hat_weight(&r);
        for a in 0..12 {
            for b in 0..12 {
                let g = Weight(vec![a, b]);
                if !r.in_root_lattice(&(&g - &hat)) || listed.contains(&g) {
                    continue;
                }
                let shifted = &g + &r.rho;
                let lowest = weyl
                    .iter()
                    .map(|w| theta_exponent(&r, &w.apply(&shifted), &lam))
                    .min()
                    .unwrap();
                assert!(lowest - Rat::new(2, 24) > n, "{lam} missing {g}");
            }
        }
    }
}

#[test]
fn conformal_data() {
    let a2 = rs("A2");
    let lam = LambdaParam::zero(&a2, 3).unwrap();
    assert_eq!(delta(&a2, &Weight::zero(2), &lam), Rat::zero());
    assert_eq!(delta(&a2, &-a2.simple_root(1), &lam), Rat::from(1));
    for (i, j) in [(1usize, 2usize), (2, 1)] {
        let c = a2.cartan[i - 1][j - 1];
        let beta = -(&a2.simple_root(i).scale(1 - c) + &a2.simple_root(j));
        assert_eq!(delta(&a2, &beta, &lam), Rat::from(2 - c));
    }
    assert_eq!(central_charge(&rs("A1"), 2), Rat::from(-2));
}
