//! Simply-laced root systems, Weyl group elements, and the fixed reduced word of `w0`.
//!
//! Nodes are numbered from 1. Type A is a chain. Type D_l joins `l-2` to both `l-1`
//! and `l`. Type E_n takes D5 on nodes 1..5 (edges 1-2, 2-3, 3-4, 3-5) and extends
//! it by a chain 5-6-7-8; this is the numbering under which the hardcoded `w0` words
//! are reduced.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{arg, Error, Result};
use crate::weight::{Rat, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    A,
    D,
    E,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Kind::A => "A",
            Kind::D => "D",
            Kind::E => "E",
        };
        f.write_str(c)
    }
}

/// Minuscule class representative: `0` or a minuscule fundamental weight `omega_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Hat {
    Zero,
    Omega(usize),
}

impl fmt::Display for Hat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hat::Zero => f.write_str("0"),
            Hat::Omega(k) => write!(f, "w{k}"),
        }
    }
}

impl Serialize for Hat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub kind: Kind,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub cartan_inv: Vec<Vec<Rat>>,
    pub positive_roots: Vec<Weight>,
    pub theta: Weight,
    pub rho: Weight,
    pub coxeter: i64,
    pub dim_g: i64,
    /// Indices `k` (from 1) with `(omega_k, theta) = 1`.
    pub minuscule: Vec<usize>,
    /// Concatenation `s_1 s_2 ... s_l` in written order; the last letter acts first.
    pub w0_word: Vec<usize>,
    w0_blocks: Vec<Vec<usize>>,
}

impl FromStr for RootSystem {
    type Err = Error;

    /// Parses labels such as `A2`, `d4`, `E6`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Kind::A,
            Some('D') => Kind::D,
            Some('E') => Kind::E,
            _ => return arg(format!("cannot parse root system type {s:?}")),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Argument(format!("cannot parse rank in {s:?}")))?;
        build_root_system(kind, rank)
    }
}

pub fn build_root_system(kind: Kind, rank: usize) -> Result<RootSystem> {
    let ok = match kind {
        Kind::A => rank >= 1,
        Kind::D => rank >= 3,
        Kind::E => (6..=8).contains(&rank),
    };
    if !ok {
        return Err(Error::UnsupportedType {
            kind: kind.to_string(),
            rank,
        });
    }
    let cartan = cartan_matrix(kind, rank);
    let cartan_inv = invert(&cartan)?;
    let mut rs = RootSystem {
        kind,
        rank,
        cartan,
        cartan_inv,
        positive_roots: Vec::new(),
        theta: Weight::zero(rank),
        rho: Weight(vec![1; rank]),
        coxeter: 0,
        dim_g: 0,
        minuscule: Vec::new(),
        w0_word: Vec::new(),
        w0_blocks: Vec::new(),
    };
    rs.positive_roots = rs.close_positive_roots();
    rs.theta = rs
        .positive_roots
        .last()
        .cloned()
        .ok_or_else(|| Error::Internal("empty root system".into()))?;
    let n_pos = rs.positive_roots.len() as i64;
    rs.coxeter = 2 * n_pos / rank as i64;
    rs.dim_g = rank as i64 + 2 * n_pos;
    rs.minuscule = (1..=rank)
        .filter(|&k| rs.root_coords(&rs.theta)[k - 1] == Rat::one())
        .collect();
    rs.w0_blocks = w0_blocks(kind, rank);
    rs.w0_word = rs.w0_blocks.concat();
    Ok(rs)
}

fn cartan_matrix(kind: Kind, l: usize) -> Vec<Vec<i64>> {
    let mut c = vec![vec![0i64; l]; l];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut edge = |a: usize, b: usize| {
        c[a - 1][b - 1] = -1;
        c[b - 1][a - 1] = -1;
    };
    match kind {
        Kind::A => (1..l).for_each(|i| edge(i, i + 1)),
        Kind::D => {
            (1..l - 1).for_each(|i| edge(i, i + 1));
            edge(l - 2, l);
        }
        Kind::E => {
            edge(1, 2);
            edge(2, 3);
            edge(3, 4);
            edge(3, 5);
            (6..=l).for_each(|k| edge(k - 1, k));
        }
    }
    c
}

fn invert(m: &[Vec<i64>]) -> Result<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| Rat::from_integer(x))
                .chain((0..n).map(|j| Rat::from_integer((i == j) as i64)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
        a.swap(col, piv);
        let pv = a[col][col];
        for x in a[col].iter_mut() {
            *x /= pv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, v) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
    }
    Ok(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Blocks `s_1, ..., s_l` of the fixed reduced expression of `w0`, in written order.
fn w0_blocks(kind: Kind, l: usize) -> Vec<Vec<usize>> {
    match kind {
        Kind::A => (1..=l).map(|i| (l + 1 - i..=l).collect()).collect(),
        Kind::D => {
            let mut s = vec![vec![l], vec![l - 1]];
            for i in 3..=l {
                let mut b: Vec<usize> = (l + 1 - i..=l - 2).collect();
                b.push(l);
                b.push(l - 1);
                b.extend((l + 1 - i..=l - 2).rev());
                s.push(b);
            }
            s
        }
        Kind::E => {
            let mut s = w0_blocks(Kind::D, 5);
            let s6 = vec![6, 5, 3, 4, 2, 1, 3, 2, 5, 3, 4, 6, 5, 3, 2, 1];
            let s7 = vec![
                7, 6, 5, 3, 4, 2, 1, 3, 2, 5, 3, 4, 6, 5, 3, 2, 1, 7, 6, 5, 3, 4, 2, 3, 5, 6, 7,
            ];
            s.push(s6);
            if l >= 7 {
                s.push(s7.clone());
            }
            if l >= 8 {
                let mut s8 = vec![8];
                s8.extend(&s7);
                s8.push(8);
                s8.extend(&s7);
                s8.push(8);
                s.push(s8);
            }
            s
        }
    }
}

impl RootSystem {
    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    fn check_rank(&self, mu: &Weight) -> Result<()> {
        if mu.rank() != self.rank {
            return arg(format!(
                "weight {mu} has length {}, expected {}",
                mu.rank(),
                self.rank
            ));
        }
        Ok(())
    }

    /// `(mu, nu)`, checked for dimensions.
    pub fn pairing(&self, mu: &Weight, nu: &Weight) -> Result<Rat> {
        self.check_rank(mu)?;
        self.check_rank(nu)?;
        Ok(self.pair(mu, nu))
    }

    /// `(mu, nu) = mu^T C^{-1} nu`; callers guarantee matching ranks.
    pub fn pair(&self, mu: &Weight, nu: &Weight) -> Rat {
        let mut acc = Rat::zero();
        for (i, &a) in mu.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let row = &self.cartan_inv[i];
            for (j, &b) in nu.0.iter().enumerate() {
                if b != 0 {
                    acc += row[j] * (a * b);
                }
            }
        }
        acc
    }

    pub fn norm2(&self, mu: &Weight) -> Rat {
        self.pair(mu, mu)
    }

    /// Coefficients of `mu` in the simple-root basis.
    pub fn root_coords(&self, mu: &Weight) -> Vec<Rat> {
        self.cartan_inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&mu.0)
                    .map(|(c, &m)| *c * m)
                    .fold(Rat::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// `(mu, rho)`, the height for roots.
    pub fn height(&self, mu: &Weight) -> Rat {
        self.root_coords(mu).into_iter().fold(Rat::zero(), |a, b| a + b)
    }

    pub fn in_root_lattice(&self, mu: &Weight) -> bool {
        self.root_coords(mu).iter().all(|c| c.is_integer())
    }

    pub fn is_positive_root_combination(&self, mu: &Weight) -> bool {
        self.root_coords(mu).iter().all(|c| *c >= Rat::zero())
    }

    /// `alpha_i` (column `i` of the Cartan matrix).
    pub fn simple_root(&self, i: usize) -> Weight {
        Weight((0..self.rank).map(|k| self.cartan[k][i - 1]).collect())
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank, i)
    }

    /// `sigma_i(mu) = mu - (mu, alpha_i) alpha_i`.
    pub fn reflect(&self, i: usize, mu: &Weight) -> Weight {
        let m = mu.0[i - 1];
        Weight(
            mu.0.iter()
                .enumerate()
                .map(|(k, &c)| c - m * self.cartan[k][i - 1])
                .collect(),
        )
    }

    pub fn reflect_in_place(&self, i: usize, mu: &mut [i64]) {
        let m = mu[i - 1];
        if m != 0 {
            for (k, c) in mu.iter_mut().enumerate() {
                *c -= m * self.cartan[k][i - 1];
            }
        }
    }

    fn close_positive_roots(&self) -> Vec<Weight> {
        let mut seen: Vec<Weight> = (1..=self.rank).map(|i| self.simple_root(i)).collect();
        let mut frontier = seen.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for r in &frontier {
                for i in 1..=self.rank {
                    let t = self.reflect(i, r);
                    if self.is_positive_root_combination(&t) && !seen.contains(&t) {
                        seen.push(t.clone());
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        seen.sort_by(|a, b| self.height(a).cmp(&self.height(b)).then(a.cmp(b)));
        seen
    }

    pub fn negative_roots(&self) -> Vec<Weight> {
        self.positive_roots.iter().map(|r| -r).collect()
    }

    pub fn is_positive_root(&self, mu: &Weight) -> bool {
        self.positive_roots.contains(mu)
    }

    /// Blocks `s_1..s_l` in written order.
    pub fn w0_blocks(&self) -> &[Vec<usize>] {
        &self.w0_blocks
    }

    /// Letters of the `w0` word in the order they act (first letter acts first).
    pub fn w0_application_order(&self) -> Vec<usize> {
        self.w0_word.iter().rev().copied().collect()
    }

    /// Application-order blocks labelled `(i+1, i)`, starting with `(l+1, l)`.
    pub fn w0_application_blocks(&self) -> Vec<((usize, usize), Vec<usize>)> {
        (1..=self.rank)
            .rev()
            .map(|i| ((i + 1, i), self.w0_blocks[i - 1].iter().rev().copied().collect()))
            .collect()
    }

    /// Order of the Weyl group from the closed-form product formulas.
    pub fn weyl_order(&self) -> u128 {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        match (self.kind, self.rank) {
            (Kind::A, l) => fact(l + 1),
            (Kind::D, l) => (1u128 << (l - 1)) * fact(l),
            (Kind::E, 6) => 51_840,
            (Kind::E, 7) => 2_903_040,
            (Kind::E, _) => 696_729_600,
        }
    }

    /// Minuscule class representatives: `0` followed by the minuscule weights.
    pub fn hats(&self) -> Vec<Hat> {
        std::iter::once(Hat::Zero)
            .chain(self.minuscule.iter().map(|&k| Hat::Omega(k)))
            .collect()
    }

    pub fn hat_weight(&self, hat: Hat) -> Weight {
        match hat {
            Hat::Zero => Weight::zero(self.rank),
            Hat::Omega(k) => self.fundamental(k),
        }
    }

    /// The representative of the class of `mu` in `P/Q`.
    pub fn class_rep(&self, mu: &Weight) -> Hat {
        if self.in_root_lattice(mu) {
            return Hat::Zero;
        }
        for &k in &self.minuscule {
            if self.in_root_lattice(&(mu - &self.fundamental(k))) {
                return Hat::Omega(k);
            }
        }
        unreachable!("every class of P/Q has a minuscule representative")
    }

    /// `prod_{alpha > 0} (beta + rho, alpha) / (rho, alpha)`.
    pub fn weyl_dimension(&self, beta: &Weight) -> Result<BigInt> {
        self.check_rank(beta)?;
        if !beta.is_dominant() {
            return arg(format!("weight {beta} is not dominant"));
        }
        let shifted = beta + &self.rho;
        let mut acc = BigRational::one();
        for a in &self.positive_roots {
            let num = self.pair(&shifted, a);
            let den = self.pair(&self.rho, a);
            acc *= BigRational::new(
                BigInt::from(*num.numer() * *den.denom()),
                BigInt::from(*num.denom() * *den.numer()),
            );
        }
        if !acc.is_integer() {
            return Err(Error::Internal(format!("non-integral dimension for {beta}")));
        }
        Ok(acc.to_integer())
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement {
            word: Vec::new(),
            matrix: identity_matrix(self.rank),
            length: 0,
            sign: 1,
        }
    }

    /// Element for a written word `sigma_{w_1} ... sigma_{w_k}` (the last letter acts first).
    pub fn element(&self, word: &[usize]) -> Result<WeylElement> {
        if let Some(&bad) = word.iter().find(|&&i| i == 0 || i > self.rank) {
            return arg(format!("reflection index {bad} out of range 1..={}", self.rank));
        }
        let mut m = identity_matrix(self.rank);
        for &i in word.iter().rev() {
            self.left_reflect_matrix(i, &mut m);
        }
        let length = self.inversions(&m);
        Ok(WeylElement {
            word: word.to_vec(),
            matrix: m,
            length,
            sign: if length % 2 == 0 { 1 } else { -1 },
        })
    }

    fn left_reflect_matrix(&self, i: usize, m: &mut [Vec<i64>]) {
        let row_i = m[i - 1].clone();
        for (k, row) in m.iter_mut().enumerate() {
            let c = self.cartan[k][i - 1];
            if c != 0 {
                for (x, y) in row.iter_mut().zip(&row_i) {
                    *x -= c * y;
                }
            }
        }
    }

    fn inversions(&self, m: &[Vec<i64>]) -> usize {
        self.positive_roots
            .iter()
            .filter(|a| {
                let img = Weight(mat_vec(m, &a.0));
                !self.is_positive_root_combination(&img)
            })
            .count()
    }

    /// All Weyl group elements, each with a reduced word, in breadth-first order.
    pub fn enumerate_weyl(&self, cap: usize) -> Result<Vec<WeylElement>> {
        let order = self.weyl_order();
        if order > cap as u128 {
            return Err(Error::ResourceCap {
                what: "Weyl group",
                needed: usize::try_from(order).unwrap_or(usize::MAX),
                cap,
            });
        }
        let mut out = vec![self.identity()];
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        index.insert(self.rho.0.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(at) = queue.pop_front() {
            for i in 1..=self.rank {
                let cur = &out[at];
                let image = self.reflect(i, &Weight(mat_vec(&cur.matrix, &self.rho.0)));
                if index.contains_key(&image.0) {
                    continue;
                }
                let mut matrix = cur.matrix.clone();
                self.left_reflect_matrix(i, &mut matrix);
                let mut word = Vec::with_capacity(cur.word.len() + 1);
                word.push(i);
                word.extend(&cur.word);
                let length = cur.length + 1;
                let el = WeylElement {
                    word,
                    matrix,
                    length,
                    sign: if length % 2 == 0 { 1 } else { -1 },
                };
                index.insert(image.0, out.len());
                queue.push_back(out.len());
                out.push(el);
            }
        }
        if out.len() as u128 != order {
            return Err(Error::Internal(format!(
                "enumerated {} elements, expected {order}",
                out.len()
            )));
        }
        Ok(out)
    }
}

fn identity_matrix(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

/// A Weyl group element carrying a word and its integer matrix on weight coordinates.
/// Equality compares matrices only.
#[derive(Debug, Clone)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub matrix: Vec<Vec<i64>>,
    pub length: usize,
    pub sign: i64,
}

impl PartialEq for WeylElement {
    fn eq(&self, o: &Self) -> bool {
        self.matrix == o.matrix
    }
}

impl Eq for WeylElement {}

impl WeylElement {
    pub fn apply(&self, mu: &Weight) -> Weight {
        Weight(mat_vec(&self.matrix, &mu.0))
    }

    pub fn is_reduced_word(&self) -> bool {
        self.word.len() == self.length
    }

    /// Product `self * other` (other acts first).
    pub fn compose(&self, rs: &RootSystem, other: &WeylElement) -> WeylElement {
        let mut word = self.word.clone();
        word.extend(&other.word);
        rs.element(&word).expect("indices already validated")
    }
}

/// `apply_weyl` with a rank check.
pub fn apply_weyl(w: &WeylElement, mu: &Weight) -> Result<Weight> {
    if w.matrix.len() != mu.rank() {
        return arg(format!(
            "weight {mu} has length {}, Weyl element acts on rank {}",
            mu.rank(),
            w.matrix.len()
        ));
    }
    Ok(w.apply(mu))
}
