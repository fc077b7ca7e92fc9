use std::path::PathBuf;

use logw_core::lambda::{check_strict_alcove, format_table2, table2_generate};
use logw_core::{alcove_lambdas, check_alcove, star_action, Hat, LambdaParam, RootSystem, Weight};

fn rs(label: &str) -> RootSystem {
    label.parse().unwrap()
}

fn golden(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", "table2", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

/// Every alcove lambda for `p` in range renders to the strict or the wall file.
fn check(label: &str, ps: std::ops::RangeInclusive<i64>) {
    let r = rs(label);
    let strict = golden(&format!("{label}_strict.txt"));
    let wall = golden(&format!("{label}_wall.txt"));
    let (mut n_strict, mut n_wall) = (0, 0);
    for p in ps {
        for lam in alcove_lambdas(&r, p).unwrap() {
            let got = format_table2(&table2_generate(&r, &lam).unwrap());
            if check_strict_alcove(&r, &lam) {
                assert_eq!(got, strict, "{label} p={p} {lam}");
                n_strict += 1;
            } else {
                assert_eq!(got, wall, "{label} p={p} {lam}");
                n_wall += 1;
            }
        }
    }
    assert!(n_strict > 0 && n_wall > 0, "{label}: {n_strict} strict, {n_wall} wall");
}

#[test]
fn a2() {
    check("A2", 2..=8);
}

#[test]
fn a3() {
    check("A3", 3..=8);
}

#[test]
fn a4() {
    check("A4", 4..=8);
}

#[test]
fn d4() {
    check("D4", 5..=9);
}

#[test]
fn e6() {
    check("E6", 11..=13);
}

#[test]
fn outside_the_alcove_is_rejected() {
    let a2 = rs("A2");
    let lam = LambdaParam::new(&a2, 2, Hat::Zero, vec![1, 0]).unwrap();
    assert!(!check_alcove(&a2, &lam));
    assert!(table2_generate(&a2, &lam).is_err());
}

#[test]
fn e6_wall_state_after_three_steps() {
    // The carry of sigma_5 taken right after sigma_1, sigma_2, sigma_3 on the (6,5) block.
    let r = rs("E6");
    let mut seen = 0;
    for lam in alcove_lambdas(&r, 11).unwrap() {
        let mut cur = lam.clone();
        let blocks = r.w0_application_blocks();
        for &i in &blocks[0].1 {
            cur = star_action(&r, &cur, i).unwrap().0;
        }
        for i in [1, 2, 3] {
            cur = star_action(&r, &cur, i).unwrap().0;
        }
        let (_, eps) = star_action(&r, &cur, 5).unwrap();
        assert_eq!(eps, Weight(vec![0, 0, 1, 0, -1, 1]), "{lam}");
        seen += 1;
    }
    assert!(seen > 0);
}
