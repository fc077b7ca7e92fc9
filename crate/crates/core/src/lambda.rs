//! The parameter set of `V_{sqrt(p)Q}`-modules, the shifted Weyl action on it, and the
//! integral carries `epsilon_lambda(sigma)`.

use std::fmt;

use serde::Serialize;

use crate::caps::Caps;
use crate::error::{arg, Error, Result};
use crate::root_data::{Hat, RootSystem, WeylElement};
use crate::weight::Weight;

/// `lambda = -sqrt(p) hat + sum_i (s_i / sqrt(p)) omega_i` with `0 <= s_i <= p - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LambdaParam {
    pub p: i64,
    pub hat: Hat,
    pub s: Vec<i64>,
}

impl fmt::Display for LambdaParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let hat = match self.hat {
            Hat::Zero => "0".to_string(),
            Hat::Omega(k) => k.to_string(),
        };
        let s: Vec<String> = self.s.iter().map(|x| x.to_string()).collect();
        write!(f, "hat={hat},s={}", s.join(","))
    }
}

impl LambdaParam {
    pub fn new(rs: &RootSystem, p: i64, hat: Hat, s: Vec<i64>) -> Result<Self> {
        if p < 2 {
            return arg(format!("p must be at least 2, got {p}"));
        }
        if s.len() != rs.rank {
            return arg(format!(
                "s-vector has length {}, expected {}",
                s.len(),
                rs.rank
            ));
        }
        if let Some(bad) = s.iter().find(|&&x| x < 0 || x > p - 1) {
            return arg(format!("s entry {bad} outside 0..={}", p - 1));
        }
        if let Hat::Omega(k) = hat {
            if !rs.minuscule.contains(&k) {
                return arg(format!(
                    "w{k} is not minuscule in {} (minuscule: {:?})",
                    rs.label(),
                    rs.minuscule
                ));
            }
        }
        Ok(LambdaParam { p, hat, s })
    }

    pub fn zero(rs: &RootSystem, p: i64) -> Result<Self> {
        LambdaParam::new(rs, p, Hat::Zero, vec![0; rs.rank])
    }

    /// `sqrt(p) * lambda_bar` as an integral weight.
    pub fn s_weight(&self) -> Weight {
        Weight(self.s.clone())
    }

    pub fn hat_weight(&self, rs: &RootSystem) -> Weight {
        rs.hat_weight(self.hat)
    }
}

/// All of `Lambda`: hat-major, then `s` in lexicographic order.
pub fn enumerate_lambdas(rs: &RootSystem, p: i64, caps: &Caps) -> Result<Vec<LambdaParam>> {
    if p < 2 {
        return arg(format!("p must be at least 2, got {p}"));
    }
    let hats = rs.hats();
    let count = (p as u128)
        .checked_pow(rs.rank as u32)
        .and_then(|n| n.checked_mul(hats.len() as u128))
        .unwrap_or(u128::MAX);
    if count > caps.max_lambda as u128 {
        return Err(Error::ResourceCap {
            what: "parameter set",
            needed: usize::try_from(count).unwrap_or(usize::MAX),
            cap: caps.max_lambda,
        });
    }
    let mut out = Vec::with_capacity(count as usize);
    for hat in hats {
        let mut s = vec![0i64; rs.rank];
        loop {
            out.push(LambdaParam { p, hat, s: s.clone() });
            if !odometer(&mut s, p) {
                break;
            }
        }
    }
    Ok(out)
}

/// Alcove members of `Lambda` in the same order as [`enumerate_lambdas`].
pub fn alcove_lambdas(rs: &RootSystem, p: i64) -> Result<Vec<LambdaParam>> {
    if p < 2 {
        return arg(format!("p must be at least 2, got {p}"));
    }
    let budget = p - (rs.coxeter - 1);
    let mut out = Vec::new();
    if budget < 0 {
        return Ok(out);
    }
    let marks = theta_marks(rs);
    for hat in rs.hats() {
        let mut s = vec![0i64; rs.rank];
        collect_bounded(&marks, p, 0, 0, budget, &mut s, &mut |s| {
            out.push(LambdaParam { p, hat, s: s.to_vec() })
        });
    }
    Ok(out)
}

fn collect_bounded(
    marks: &[i64],
    p: i64,
    at: usize,
    used: i64,
    budget: i64,
    s: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    if at == s.len() {
        emit(s);
        return;
    }
    for v in 0..p {
        if used + v * marks[at] > budget {
            break;
        }
        s[at] = v;
        collect_bounded(marks, p, at + 1, used + v * marks[at], budget, s, emit);
    }
    s[at] = 0;
}

/// Coefficients of `theta` in the simple-root basis, so `(s, theta) = sum s_i marks_i`.
fn theta_marks(rs: &RootSystem) -> Vec<i64> {
    rs.root_coords(&rs.theta)
        .into_iter()
        .map(|c| c.to_integer())
        .collect()
}

fn odometer(s: &mut [i64], p: i64) -> bool {
    for k in (0..s.len()).rev() {
        if s[k] + 1 < p {
            s[k] += 1;
            return true;
        }
        s[k] = 0;
    }
    false
}

fn check_index(rs: &RootSystem, i: usize) -> Result<()> {
    if i == 0 || i > rs.rank {
        return arg(format!("reflection index {i} out of range 1..={}", rs.rank));
    }
    Ok(())
}

/// Splits an integral weight `mu` as `p * eps + s'` with `0 <= s'_i < p`.
fn box_reduce(mu: &[i64], p: i64) -> (Weight, Vec<i64>) {
    let eps = mu.iter().map(|&m| m.div_euclid(p)).collect();
    let rem = mu.iter().map(|&m| m.rem_euclid(p)).collect();
    (Weight(eps), rem)
}

/// `sigma_i * lambda` together with `epsilon_lambda(sigma_i)`.
pub fn star_action(rs: &RootSystem, lambda: &LambdaParam, i: usize) -> Result<(LambdaParam, Weight)> {
    check_index(rs, i)?;
    Ok(star_unchecked(rs, lambda, i))
}

pub(crate) fn star_unchecked(rs: &RootSystem, lambda: &LambdaParam, i: usize) -> (LambdaParam, Weight) {
    let mut v: Vec<i64> = lambda.s.iter().map(|x| x + 1).collect();
    rs.reflect_in_place(i, &mut v);
    v.iter_mut().for_each(|x| *x -= 1);
    let (eps, s) = box_reduce(&v, lambda.p);
    let hat = rs.class_rep(&(&lambda.hat_weight(rs) - &eps));
    (LambdaParam { p: lambda.p, hat, s }, eps)
}

/// `sigma * lambda` for an arbitrary element, from its matrix.
pub fn act(rs: &RootSystem, lambda: &LambdaParam, w: &WeylElement) -> (LambdaParam, Weight) {
    let (eps, s) = carry(rs, lambda, w);
    let hat = rs.class_rep(&(&lambda.hat_weight(rs) - &eps));
    (LambdaParam { p: lambda.p, hat, s }, eps)
}

fn carry(rs: &RootSystem, lambda: &LambdaParam, w: &WeylElement) -> (Weight, Vec<i64>) {
    let shifted = &lambda.s_weight() + &rs.rho;
    let mu = &w.apply(&shifted) - &rs.rho;
    box_reduce(&mu.0, lambda.p)
}

/// `epsilon_lambda(w)`; the word carried by `w` must be reduced.
pub fn epsilon_of(rs: &RootSystem, lambda: &LambdaParam, w: &WeylElement) -> Result<Weight> {
    if !w.is_reduced_word() {
        return arg(format!(
            "word {:?} is not reduced (length {} < {})",
            w.word,
            w.length,
            w.word.len()
        ));
    }
    Ok(carry(rs, lambda, w).0)
}

/// Successive carries along a word given in the order the reflections act.
#[derive(Debug, Clone, Serialize)]
pub struct EpsilonChain {
    pub lambda: LambdaParam,
    pub word: Vec<usize>,
    pub steps: Vec<Weight>,
    /// `epsilon_lambda(sigma_{i_n} ... sigma_{i_1})`.
    pub cumulative: Weight,
    /// `(epsilon_lambda(prefix_n), alpha_{i_{n+1}}) = 0` for every proper prefix.
    pub stepwise_condition: bool,
    /// First prefix length `n` at which the stepwise condition fails.
    pub first_violation: Option<usize>,
}

impl EpsilonChain {
    pub fn step_sum(&self) -> Weight {
        let mut acc = Weight::zero(self.cumulative.rank());
        for s in &self.steps {
            acc += s;
        }
        acc
    }
}

/// Walks `word` (first letter acts first), which must be a prefix of a reduced word.
pub fn epsilon_chain(rs: &RootSystem, lambda: &LambdaParam, word: &[usize]) -> Result<EpsilonChain> {
    for &i in word {
        check_index(rs, i)?;
    }
    let written: Vec<usize> = word.iter().rev().copied().collect();
    let w = rs.element(&written)?;
    if !w.is_reduced_word() {
        return arg(format!("word {word:?} is not reduced"));
    }
    let mut steps = Vec::with_capacity(word.len());
    let mut cur = lambda.clone();
    let mut first_violation = None;
    let mut prefix: Vec<i64> = lambda.s.iter().map(|x| x + 1).collect();
    for (n, &i) in word.iter().enumerate() {
        let (next, eps) = star_unchecked(rs, &cur, i);
        steps.push(eps);
        cur = next;
        rs.reflect_in_place(i, &mut prefix);
        if first_violation.is_none() && n + 1 < word.len() {
            let j = word[n + 1];
            let e = (prefix[j - 1] - 1).div_euclid(lambda.p);
            if e != 0 {
                first_violation = Some(n + 1);
            }
        }
    }
    let cumulative = epsilon_of(rs, lambda, &w)?;
    Ok(EpsilonChain {
        lambda: lambda.clone(),
        word: word.to_vec(),
        steps,
        cumulative,
        stepwise_condition: first_violation.is_none(),
        first_violation,
    })
}

/// `(s, theta) + h - 1 <= p`.
pub fn check_alcove(rs: &RootSystem, lambda: &LambdaParam) -> bool {
    alcove_level(rs, lambda) <= lambda.p
}

/// `(s, theta) + h - 1 < p`.
pub fn check_strict_alcove(rs: &RootSystem, lambda: &LambdaParam) -> bool {
    alcove_level(rs, lambda) < lambda.p
}

/// `(s + rho, theta) = (s, theta) + h - 1`.
pub fn alcove_level(rs: &RootSystem, lambda: &LambdaParam) -> i64 {
    let marks = theta_marks(rs);
    let st: i64 = lambda.s.iter().zip(&marks).map(|(a, b)| a * b).sum();
    st + rs.coxeter - 1
}

/// For every `(i, j)` in `J x J`: `epsilon_lambda(sigma_j) = -alpha_j` or
/// `(epsilon_lambda(sigma_j), alpha_i) = -delta_ij`.
pub fn check_novel(rs: &RootSystem, lambda: &LambdaParam, j_set: &[usize]) -> Result<bool> {
    for &j in j_set {
        check_index(rs, j)?;
    }
    for &j in j_set {
        let (_, eps) = star_unchecked(rs, lambda, j);
        let neg_alpha = -rs.simple_root(j);
        if eps == neg_alpha {
            continue;
        }
        for &i in j_set {
            let want = if i == j { -1 } else { 0 };
            if eps.coord(i) != want {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Serialize)]
pub struct CondScanReport {
    #[serde(rename = "type")]
    pub type_label: String,
    pub p: i64,
    pub total: usize,
    pub alcove: usize,
    /// Parameters where the stepwise condition along `w0` and the alcove condition disagree.
    pub mismatches: Vec<LambdaParam>,
    /// Alcove parameters where some prefix carry differs from the sum of the steps.
    pub prefix_sum_failures: Vec<LambdaParam>,
    /// Parameters outside the alcove that still satisfy the novel condition for all of `Pi`.
    pub novel_outside_alcove: Vec<LambdaParam>,
    /// Alcove parameters violating the novel condition (expected empty).
    pub alcove_not_novel: Vec<LambdaParam>,
}

pub fn condequiv_scan(rs: &RootSystem, p: i64, caps: &Caps) -> Result<CondScanReport> {
    let lambdas = enumerate_lambdas(rs, p, caps)?;
    let word = rs.w0_application_order();
    let all: Vec<usize> = (1..=rs.rank).collect();
    let mut report = CondScanReport {
        type_label: rs.label(),
        p,
        total: lambdas.len(),
        alcove: 0,
        mismatches: Vec::new(),
        prefix_sum_failures: Vec::new(),
        novel_outside_alcove: Vec::new(),
        alcove_not_novel: Vec::new(),
    };
    for lambda in lambdas {
        let alcove = check_alcove(rs, &lambda);
        let chain = epsilon_chain(rs, &lambda, &word)?;
        if chain.stepwise_condition != alcove {
            report.mismatches.push(lambda.clone());
        }
        let novel = check_novel(rs, &lambda, &all)?;
        if alcove {
            report.alcove += 1;
            if !prefix_sums_agree(rs, &lambda, &word) {
                report.prefix_sum_failures.push(lambda.clone());
            }
            if !novel {
                report.alcove_not_novel.push(lambda);
            }
        } else if novel {
            report.novel_outside_alcove.push(lambda);
        }
    }
    Ok(report)
}

/// Checks `epsilon_lambda(prefix_n) = sum_{j <= n} step_j` for every prefix of `word`.
pub fn prefix_sums_agree(rs: &RootSystem, lambda: &LambdaParam, word: &[usize]) -> bool {
    let mut cur = lambda.clone();
    let mut acc = Weight::zero(rs.rank);
    let mut prefix: Vec<i64> = lambda.s.iter().map(|x| x + 1).collect();
    for &i in word {
        let (next, eps) = star_unchecked(rs, &cur, i);
        acc += &eps;
        cur = next;
        rs.reflect_in_place(i, &mut prefix);
        let direct: Vec<i64> = prefix.iter().map(|x| (x - 1).div_euclid(lambda.p)).collect();
        if direct != acc.0 {
            return false;
        }
    }
    true
}

/// One group `(epsilon_{sigma * lambda})_{(i+1, i)}` of the `w0` chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table2Block {
    pub upper: usize,
    pub lower: usize,
    pub steps: Vec<Weight>,
}

/// Step carries along the fixed `w0` word, grouped by blocks `(l+1, l), ..., (2, 1)`.
pub fn table2_generate(rs: &RootSystem, lambda: &LambdaParam) -> Result<Vec<Table2Block>> {
    if !check_alcove(rs, lambda) {
        return arg(format!(
            "{lambda} is outside the alcove: (s + rho, theta) = {} > p = {}",
            alcove_level(rs, lambda),
            lambda.p
        ));
    }
    let mut cur = lambda.clone();
    let mut out = Vec::with_capacity(rs.rank);
    for ((upper, lower), block) in rs.w0_application_blocks() {
        let mut steps = Vec::with_capacity(block.len());
        for i in block {
            let (next, eps) = star_unchecked(rs, &cur, i);
            steps.push(eps);
            cur = next;
        }
        out.push(Table2Block { upper, lower, steps });
    }
    Ok(out)
}

/// One line per block: `(i+1,i) e_1, e_2, ...`.
pub fn format_table2(blocks: &[Table2Block]) -> String {
    let mut out = String::new();
    for b in blocks {
        let steps: Vec<String> = b.steps.iter().map(|w| w.omega_string()).collect();
        out.push_str(&format!("({},{}) {}\n", b.upper, b.lower, steps.join(", ")));
    }
    out
}

/// `dim H^n(P_i x_B C_mu)` from the value `(mu, alpha_i)`.
pub fn cohomology_dim(mu: &Weight, i: usize, n: u32) -> Result<u64> {
    if i == 0 || i > mu.rank() {
        return arg(format!("index {i} out of range 1..={}", mu.rank()));
    }
    Ok(cohomology_dim_from_pairing(mu.coord(i), n))
}

pub fn cohomology_dim_from_pairing(m: i64, n: u32) -> u64 {
    match n {
        0 if m >= 0 => (m + 1) as u64,
        1 if m < 0 => (-m - 1) as u64,
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    #[test]
    fn identity_carry_is_zero() {
        let a2 = rs("A2");
        let l = LambdaParam::new(&a2, 3, Hat::Zero, vec![1, 2]).unwrap();
        assert!(epsilon_of(&a2, &l, &a2.identity()).unwrap().is_zero());
    }

    #[test]
    fn wall_reflection_carry() {
        let a1 = rs("A1");
        let l = LambdaParam::new(&a1, 2, Hat::Zero, vec![1]).unwrap();
        let (next, eps) = star_action(&a1, &l, 1).unwrap();
        assert_eq!(eps, Weight(vec![-2]));
        assert_eq!(next.s, vec![1]);
    }

    #[test]
    fn zero_lambda_simple_carry() {
        let d4 = rs("D4");
        let l = LambdaParam::zero(&d4, 5).unwrap();
        for j in 1..=4 {
            assert_eq!(star_action(&d4, &l, j).unwrap().1, -d4.fundamental(j));
        }
    }

    #[test]
    fn chain_examples() {
        let a2 = rs("A2");
        let l = LambdaParam::zero(&a2, 3).unwrap();
        let c = epsilon_chain(&a2, &l, &[2, 1, 2]).unwrap();
        assert_eq!(c.steps[0], Weight(vec![0, -1]));
        assert_eq!(c.steps[1], Weight(vec![-1, 1]));
        let empty = epsilon_chain(&a2, &l, &[]).unwrap();
        assert!(empty.steps.is_empty() && empty.cumulative.is_zero());
        assert!(epsilon_chain(&a2, &l, &[1, 1]).is_err());
    }

    #[test]
    fn alcove_examples() {
        let a2 = rs("A2");
        assert!(!check_alcove(&a2, &LambdaParam::new(&a2, 2, Hat::Zero, vec![1, 0]).unwrap()));
        assert!(check_alcove(&a2, &LambdaParam::zero(&a2, 2).unwrap()));
        let a1 = rs("A1");
        for s in 0..5 {
            assert!(check_alcove(&a1, &LambdaParam::new(&a1, 5, Hat::Zero, vec![s]).unwrap()));
        }
    }

    #[test]
    fn lambda_validation() {
        let a3 = rs("A3");
        assert!(LambdaParam::new(&a3, 1, Hat::Zero, vec![0; 3]).is_err());
        assert!(LambdaParam::new(&a3, 3, Hat::Zero, vec![3, 0, 0]).is_err());
        assert!(LambdaParam::new(&a3, 3, Hat::Omega(2), vec![0; 3]).is_ok());
        let d4 = rs("D4");
        assert!(LambdaParam::new(&d4, 3, Hat::Omega(2), vec![0; 4]).is_err());
    }

    #[test]
    fn cohomology_branches() {
        assert_eq!(cohomology_dim_from_pairing(0, 0), 1);
        assert_eq!(cohomology_dim_from_pairing(-1, 0), 0);
        assert_eq!(cohomology_dim_from_pairing(-1, 1), 0);
        assert_eq!(cohomology_dim_from_pairing(-3, 1), 2);
        assert_eq!(cohomology_dim_from_pairing(2, 1), 0);
        assert_eq!(cohomology_dim_from_pairing(2, 2), 0);
    }

    #[test]
    fn enumeration_counts() {
        let a2 = rs("A2");
        let all = enumerate_lambdas(&a2, 2, &Caps::default()).unwrap();
        assert_eq!(all.len(), 12);
        let a1 = rs("A1");
        assert_eq!(enumerate_lambdas(&a1, 3, &Caps::default()).unwrap().len(), 6);
        let caps = Caps { max_lambda: 5, ..Caps::default() };
        assert!(matches!(
            enumerate_lambdas(&a2, 2, &caps),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn alcove_enumeration_matches_filter() {
        for (t, p) in [("A2", 4), ("A3", 5), ("D4", 7)] {
            let r = rs(t);
            let filtered: Vec<_> = enumerate_lambdas(&r, p, &Caps::default())
                .unwrap()
                .into_iter()
                .filter(|l| check_alcove(&r, l))
                .collect();
            assert_eq!(alcove_lambdas(&r, p).unwrap(), filtered);
        }
    }
}
