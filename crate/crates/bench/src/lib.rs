//! Fixtures shared by the benchmarks.

use logw_core::{LambdaParam, RootSystem, WeylElement};

pub struct Fixture {
    pub rs: RootSystem,
    pub weyl: Vec<WeylElement>,
    pub vacuum: LambdaParam,
}

pub fn fixture(label: &str, p: i64) -> Fixture {
    let rs: RootSystem = label.parse().expect("root system label");
    let weyl = rs.enumerate_weyl(1_000_000).expect("Weyl group fits the cap");
    let vacuum = LambdaParam::zero(&rs, p).expect("p >= 2");
    Fixture { rs, weyl, vacuum }
}
