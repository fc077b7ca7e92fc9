//! Conformal data and the two sides of the `q,z`-character identity: the Weyl-group
//! fixed-point (Euler) sum and the decomposition into Weyl characters times theta traces.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::lambda::{alcove_level, check_alcove, LambdaParam};
use crate::lattice::{coset_ball, integer_window};
use crate::root_data::{RootSystem, WeylElement};
use crate::series::{
    eta_inverse_power, int, laurent_divide_exact, mul_unchecked, weyl_character_poly,
    weyl_denominator_factors, QSeries, QZSeries, ZPoly,
};
use crate::weight::{Rat, Weight};

/// Conformal weight of `|-sqrt(p) beta + lambda_bar>`.
pub fn delta(rs: &RootSystem, beta: &Weight, lambda: &LambdaParam) -> Rat {
    sector_delta(rs, lambda.p, beta, &lambda.s_weight())
}

/// Conformal weight of `|-sqrt(p) beta + s/sqrt(p)>`, `s` in fundamental coordinates.
pub fn sector_delta(rs: &RootSystem, p: i64, beta: &Weight, s: &Weight) -> Rat {
    let pr = Rat::from_integer(p);
    let rho = &rs.rho;
    pr * rs.pair(beta, beta) / 2 - rs.pair(beta, s) + rs.pair(s, s) / (pr * 2)
        + (pr - 1) * rs.pair(beta, rho)
        - rs.pair(s, rho)
        + rs.pair(s, rho) / pr
}

/// `c = l + h dim(g) (2 - p - 1/p)`.
pub fn central_charge(rs: &RootSystem, p: i64) -> Rat {
    let p = Rat::from_integer(p);
    Rat::from_integer(rs.rank as i64)
        + Rat::from_integer(rs.coxeter * rs.dim_g) * (Rat::from_integer(2) - p - p.recip())
}

/// `1/2 |sqrt(p) v - (s + rho)/sqrt(p)|^2 = p|v|^2/2 - (v, s+rho) + |s+rho|^2/(2p)`.
pub fn theta_exponent(rs: &RootSystem, v: &Weight, lambda: &LambdaParam) -> Rat {
    let p = Rat::from_integer(lambda.p);
    let sr = &lambda.s_weight() + &rs.rho;
    p * rs.pair(v, v) / 2 - rs.pair(v, &sr) + rs.pair(&sr, &sr) / (p * 2)
}

fn l24(rs: &RootSystem) -> Rat {
    Rat::new(rs.rank as i64, 24)
}

/// `sum_sigma sign(sigma) q^{E(sigma(alpha + hat + rho))} / eta^l`, exact to `q^n`.
pub fn theta_trace(
    rs: &RootSystem,
    weyl: &[WeylElement],
    lambda: &LambdaParam,
    alpha: &Weight,
    n: Rat,
) -> Result<QSeries> {
    if !rs.in_root_lattice(alpha) {
        return arg(format!("{alpha} is not in the root lattice"));
    }
    let gamma = alpha + &lambda.hat_weight(rs);
    if !gamma.is_dominant() {
        return arg(format!("alpha + hat = {gamma} is not dominant"));
    }
    Ok(theta_trace_of(rs, weyl, lambda, &gamma, n))
}

fn theta_trace_of(
    rs: &RootSystem,
    weyl: &[WeylElement],
    lambda: &LambdaParam,
    gamma: &Weight,
    n: Rat,
) -> QSeries {
    let inner = n + l24(rs);
    let mut num = QZSeries::zero(rs.rank, Some(inner));
    let shifted = gamma + &rs.rho;
    for w in weyl {
        let e = theta_exponent(rs, &w.apply(&shifted), lambda);
        num.add_term(Weight::zero(rs.rank), e, int(w.sign));
    }
    let eta = QZSeries::from_qseries(rs.rank, &eta_inverse_power(rs.rank, lambda.p, n));
    let mut out = mul_unchecked(&num, &eta);
    out.truncate(n);
    out.specialize_z1()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Euler,
    Rhs,
}

#[derive(Debug, Clone)]
pub struct CharSide {
    pub which: Side,
    pub series: QZSeries,
    pub lambda: LambdaParam,
    pub order: Rat,
    /// Weights `beta` (Euler side) or dominant `gamma = alpha + hat` (rhs) that contributed.
    pub weights_used: Vec<Weight>,
    /// Set when the rhs was computed outside the alcove on request.
    pub conjectural: bool,
}

/// Dominant `gamma` in `Q + hat` whose theta trace can reach `q^n`, ordered by `(|gamma|^2, gamma)`.
///
/// Uses `min_sigma E(sigma(gamma+rho)) >= (p|gamma+rho| - |s+rho|)^2 / (2p)`.
pub fn rhs_weights(rs: &RootSystem, lambda: &LambdaParam, n: Rat) -> Vec<Weight> {
    let p = Rat::from_integer(lambda.p);
    let budget = n + l24(rs);
    if budget.is_negative() {
        return Vec::new();
    }
    let k = p * 2 * budget;
    let sr = &lambda.s_weight() + &rs.rho;
    let b = rs.pair(&sr, &sr);
    let a_max = (b + k) * 2 / (p * p);
    let hat = lambda.hat_weight(rs);
    let mut out = Vec::new();
    let bounds: Vec<i64> = (0..rs.rank)
        .map(|i| {
            let w = integer_window(Rat::zero(), a_max / rs.cartan_inv[i][i]);
            (*w.end() - 1).max(-1)
        })
        .collect();
    if bounds.iter().any(|&m| m < 0) {
        return out;
    }
    let mut g = vec![0i64; rs.rank];
    loop {
        let gamma = Weight(g.clone());
        if rs.in_root_lattice(&(&gamma - &hat)) {
            let a = rs.norm2(&(&gamma + &rs.rho));
            if shell_admits(p, a, b, k) {
                out.push(gamma);
            }
        }
        let mut at = rs.rank;
        loop {
            if at == 0 {
                out.sort_by(|x, y| rs.norm2(x).cmp(&rs.norm2(y)).then_with(|| x.cmp(y)));
                return out;
            }
            at -= 1;
            if g[at] < bounds[at] {
                g[at] += 1;
                g.iter_mut().skip(at + 1).for_each(|x| *x = 0);
                break;
            }
        }
    }
}

/// `(p a - b)^2 <= K` with `a = sqrt(A)`, `b = sqrt(B)`, decided exactly.
fn shell_admits(p: Rat, a2: Rat, b2: Rat, k: Rat) -> bool {
    let lhs = p * p * a2 + b2 - k;
    if !lhs.is_positive() {
        return true;
    }
    lhs * lhs <= p * p * a2 * b2 * 4
}

pub fn rhs_character(
    rs: &RootSystem,
    weyl: &[WeylElement],
    lambda: &LambdaParam,
    n: Rat,
    allow_outside_alcove: bool,
) -> Result<CharSide> {
    let inside = check_alcove(rs, lambda);
    if !inside && !allow_outside_alcove {
        return arg(format!(
            "{lambda} is outside the alcove ((s + rho, theta) = {} > p = {}); the decomposition is unproven there",
            alcove_level(rs, lambda),
            lambda.p
        ));
    }
    let weights = rhs_weights(rs, lambda, n);
    let mut series = QZSeries::zero(rs.rank, Some(n));
    for gamma in &weights {
        let chi = weyl_character_poly(rs, weyl, gamma)?;
        let trace = theta_trace_of(rs, weyl, lambda, gamma, n);
        for (q, c) in &trace.terms {
            for (z, m) in &chi {
                series.add_term(z.clone(), *q, c * m);
            }
        }
    }
    Ok(CharSide {
        which: Side::Rhs,
        series,
        lambda: lambda.clone(),
        order: n,
        weights_used: weights,
        conjectural: !inside,
    })
}

/// `beta` in `Q + hat` with `E(beta + rho) <= n + l/24`.
pub fn euler_weights(rs: &RootSystem, lambda: &LambdaParam, n: Rat) -> Vec<Weight> {
    let p = Rat::from_integer(lambda.p);
    let budget = n + l24(rs);
    if budget.is_negative() {
        return Vec::new();
    }
    let sr = &lambda.s_weight() + &rs.rho;
    // E(beta + rho) = p/2 |beta + rho - (s + rho)/p|^2.
    let center: Vec<Rat> = (0..rs.rank)
        .map(|i| Rat::new(sr.0[i], lambda.p) - Rat::from_integer(rs.rho.0[i]))
        .collect();
    coset_ball(rs, &lambda.hat_weight(rs), &center, budget * 2 / p)
}

pub fn euler_character(
    rs: &RootSystem,
    weyl: &[WeylElement],
    lambda: &LambdaParam,
    n: Rat,
) -> Result<CharSide> {
    let inner = n + l24(rs);
    let weights = euler_weights(rs, lambda, n);
    let mut num = QZSeries::zero(rs.rank, Some(inner));
    for beta in &weights {
        let shifted = beta + &rs.rho;
        let e = theta_exponent(rs, &shifted, lambda);
        for w in weyl {
            num.add_term(&w.apply(&shifted) - &rs.rho, e, int(w.sign));
        }
    }
    let mut quot = num;
    for f in weyl_denominator_factors(rs) {
        quot = laurent_divide_exact(rs, &quot, &f).map_err(|e| match e {
            Error::NotDivisible(m) => {
                Error::Internal(format!("Euler numerator is not divisible by the Weyl denominator: {m}"))
            }
            other => other,
        })?;
    }
    let eta = QZSeries::from_qseries(rs.rank, &eta_inverse_power(rs.rank, lambda.p, n));
    let mut series = mul_unchecked(&quot, &eta);
    series.truncate(n);
    Ok(CharSide {
        which: Side::Euler,
        series,
        lambda: lambda.clone(),
        order: n,
        weights_used: weights,
        conjectural: false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermDiff {
    pub q: String,
    pub z: Weight,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompareReport {
    pub order: String,
    pub matches: bool,
    pub diffs: Vec<TermDiff>,
}

/// Term-by-term comparison up to the smaller of the two truncation orders.
pub fn compare_series(a: &QZSeries, b: &QZSeries) -> CompareReport {
    let order = match (a.order, b.order) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) | (None, x) => x,
    };
    let keep = |q: &Rat| order.map_or(true, |n| *q <= n);
    let mut keys: BTreeMap<(Rat, Weight), ()> = BTreeMap::new();
    for s in [a, b] {
        for (z, row) in &s.terms {
            for q in row.keys().filter(|q| keep(q)) {
                keys.insert((*q, z.clone()), ());
            }
        }
    }
    let diffs: Vec<TermDiff> = keys
        .into_keys()
        .filter_map(|(q, z)| {
            let (x, y) = (a.coeff(&z, &q), b.coeff(&z, &q));
            (x != y).then(|| TermDiff {
                q: q.to_string(),
                z,
                lhs: x.to_string(),
                rhs: y.to_string(),
            })
        })
        .collect();
    CompareReport {
        order: order.map_or("exact".into(), |n| n.to_string()),
        matches: diffs.is_empty(),
        diffs,
    }
}

pub fn compare_sides(a: &CharSide, b: &CharSide) -> Result<CompareReport> {
    if a.lambda != b.lambda {
        return arg(format!("sides are for different parameters: {} vs {}", a.lambda, b.lambda));
    }
    if a.order != b.order {
        return arg(format!("sides have different orders: {} vs {}", a.order, b.order));
    }
    Ok(compare_series(&a.series, &b.series))
}

/// True when every coefficient is invariant under `z^mu -> z^{sigma_i mu}` for all `i`.
pub fn is_weyl_symmetric(rs: &RootSystem, s: &QZSeries) -> bool {
    s.terms.iter().all(|(z, row)| {
        (1..=rs.rank).all(|i| {
            let img = rs.reflect(i, z);
            s.terms.get(&img) == Some(row)
        })
    })
}

/// Coefficients of the `z = 1` specialization as `(exponent, value)` pairs.
pub fn graded_dims(s: &QZSeries) -> Vec<(Rat, num_rational::BigRational)> {
    s.specialize_z1().terms.into_iter().collect()
}

/// `z`-polynomial at one `q` exponent.
pub fn zpoly_at(s: &QZSeries, q: Rat) -> ZPoly {
    s.zpoly_at(&q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        let a2 = rs("A2");
        let l = LambdaParam::zero(&a2, 3).unwrap();
        assert_eq!(delta(&a2, &-a2.simple_root(1), &l), Rat::from(1));
        assert_eq!(delta(&a2, &Weight::zero(2), &l), Rat::zero());
        for (i, j) in [(1usize, 2usize), (2, 1)] {
            let c = a2.cartan[i - 1][j - 1];
            let beta = -(&a2.simple_root(i).scale(1 - c) + &a2.simple_root(j));
            assert_eq!(delta(&a2, &beta, &l), Rat::from(2 - c));
        }
    }

    #[test]
    fn central_charge_examples() {
        assert_eq!(central_charge(&rs("A1"), 2), Rat::from(-2));
        assert_eq!(central_charge(&rs("A1"), 3), Rat::from(-7));
        assert_eq!(central_charge(&rs("A2"), 2), Rat::from(-10));
    }

    #[test]
    fn vacuum_term_a1() {
        let a1 = rs("A1");
        let w = a1.enumerate_weyl(Caps::default().max_weyl).unwrap();
        let l = LambdaParam::zero(&a1, 2).unwrap();
        let t = theta_trace(&a1, &w, &l, &Weight(vec![0]), Rat::from(2)).unwrap();
        assert_eq!(t.valuation(), Some(Rat::new(1, 12)));
        assert_eq!(t.coeff(&Rat::new(1, 12)), int(1));
    }

    #[test]
    fn empty_range_gives_zero() {
        let a1 = rs("A1");
        let w = a1.enumerate_weyl(10).unwrap();
        let l = LambdaParam::zero(&a1, 2).unwrap();
        let r = rhs_character(&a1, &w, &l, Rat::new(-1, 1), false).unwrap();
        assert!(r.series.is_zero());
    }

    #[test]
    fn rhs_refuses_outside_alcove() {
        let a2 = rs("A2");
        let w = a2.enumerate_weyl(10).unwrap();
        let l = LambdaParam::new(&a2, 2, crate::root_data::Hat::Zero, vec![1, 0]).unwrap();
        assert!(rhs_character(&a2, &w, &l, Rat::from(2), false).is_err());
        assert!(rhs_character(&a2, &w, &l, Rat::from(2), true).unwrap().conjectural);
    }

    #[test]
    fn corrupted_coefficient_is_reported() {
        let a1 = rs("A1");
        let w = a1.enumerate_weyl(10).unwrap();
        let l = LambdaParam::zero(&a1, 2).unwrap();
        let r = rhs_character(&a1, &w, &l, Rat::from(3), false).unwrap();
        let mut bad = r.series.clone();
        bad.add_term(Weight(vec![0]), Rat::new(25, 12), int(1));
        let rep = compare_series(&r.series, &bad);
        assert!(!rep.matches);
        assert_eq!(rep.diffs.len(), 1);
        assert_eq!(rep.diffs[0].q, "25/12");
        assert!(compare_series(&r.series, &r.series).matches);
    }
}
