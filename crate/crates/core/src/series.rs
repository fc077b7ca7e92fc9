//! Exact truncated series in `q` (rational exponents) with Laurent-polynomial
//! coefficients in `z` (exponents are weights).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::root_data::{RootSystem, WeylElement};
use crate::weight::{Rat, Weight};

pub type Coeff = BigRational;

/// Laurent polynomial in `z`.
pub type ZPoly = BTreeMap<Weight, Coeff>;

/// Truncation bound: `None` is an exact (untruncated) series, `Some(n)` means every
/// coefficient at exponent `<= n` is exact and nothing above `n` is stored.
pub type Order = Option<Rat>;

fn order_string(o: &Order) -> String {
    match o {
        None => "exact".into(),
        Some(n) => n.to_string(),
    }
}

fn compatible(a: &Order, b: &Order) -> Result<Order> {
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::OrderMismatch {
            left: order_string(a),
            right: order_string(b),
        }),
        (Some(x), _) | (_, Some(x)) => Ok(Some(*x)),
        (None, None) => Ok(None),
    }
}

fn within(order: &Order, q: &Rat) -> bool {
    order.map_or(true, |n| *q <= n)
}

pub fn big(r: Rat) -> Coeff {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

pub fn int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Coeff>, key: K, c: Coeff) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Power series in `q` with rational exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QSeries {
    pub terms: BTreeMap<Rat, Coeff>,
    pub order: Order,
}

impl QSeries {
    pub fn zero(order: Order) -> Self {
        QSeries {
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn add_term(&mut self, q: Rat, c: Coeff) {
        if within(&self.order, &q) {
            add_into(&mut self.terms, q, c);
        }
    }

    pub fn coeff(&self, q: &Rat) -> Coeff {
        self.terms.get(q).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn valuation(&self) -> Option<Rat> {
        self.terms.keys().next().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn truncate(&mut self, order: Rat) {
        self.terms.retain(|q, _| *q <= order);
        self.order = Some(self.order.map_or(order, |o| o.min(order)));
    }
}

/// Series in `q` whose coefficients are Laurent polynomials in `z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QZSeries {
    pub rank: usize,
    pub terms: BTreeMap<Weight, BTreeMap<Rat, Coeff>>,
    pub order: Order,
}

impl QZSeries {
    pub fn zero(rank: usize, order: Order) -> Self {
        QZSeries {
            rank,
            terms: BTreeMap::new(),
            order,
        }
    }

    pub fn one(rank: usize, order: Order) -> Self {
        let mut s = QZSeries::zero(rank, order);
        s.add_term(Weight::zero(rank), Rat::zero(), Coeff::one());
        s
    }

    pub fn monomial(z: Weight, q: Rat, c: Coeff, order: Order) -> Self {
        let mut s = QZSeries::zero(z.rank(), order);
        s.add_term(z, q, c);
        s
    }

    pub fn from_zpoly(rank: usize, poly: &ZPoly, q: Rat, order: Order) -> Self {
        let mut s = QZSeries::zero(rank, order);
        for (z, c) in poly {
            s.add_term(z.clone(), q, c.clone());
        }
        s
    }

    pub fn from_qseries(rank: usize, q: &QSeries) -> Self {
        let mut s = QZSeries::zero(rank, q.order);
        for (e, c) in &q.terms {
            s.add_term(Weight::zero(rank), *e, c.clone());
        }
        s
    }

    pub fn add_term(&mut self, z: Weight, q: Rat, c: Coeff) {
        if c.is_zero() || !within(&self.order, &q) {
            return;
        }
        let row = self.terms.entry(z.clone()).or_default();
        add_into(row, q, c);
        if row.is_empty() {
            self.terms.remove(&z);
        }
    }

    pub fn coeff(&self, z: &Weight, q: &Rat) -> Coeff {
        self.terms
            .get(z)
            .and_then(|row| row.get(q))
            .cloned()
            .unwrap_or_else(Coeff::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.values().map(|r| r.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest `q` exponent present.
    pub fn valuation(&self) -> Option<Rat> {
        self.terms.values().filter_map(|r| r.keys().next()).min().copied()
    }

    /// Terms as `(q, z, coefficient)` sorted by `q`, then `z`.
    pub fn sorted_terms(&self) -> Vec<(Rat, Weight, Coeff)> {
        let mut out: Vec<(Rat, Weight, Coeff)> = self
            .terms
            .iter()
            .flat_map(|(z, row)| row.iter().map(move |(q, c)| (*q, z.clone(), c.clone())))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
        out
    }

    pub fn q_exponents(&self) -> Vec<Rat> {
        let mut qs: Vec<Rat> = self.terms.values().flat_map(|r| r.keys().copied()).collect();
        qs.sort();
        qs.dedup();
        qs
    }

    /// The Laurent polynomial multiplying `q^e`.
    pub fn zpoly_at(&self, e: &Rat) -> ZPoly {
        self.terms
            .iter()
            .filter_map(|(z, row)| row.get(e).map(|c| (z.clone(), c.clone())))
            .collect()
    }

    /// Sets `z = 1`.
    pub fn specialize_z1(&self) -> QSeries {
        let mut out = QSeries::zero(self.order);
        for row in self.terms.values() {
            for (q, c) in row {
                out.add_term(*q, c.clone());
            }
        }
        out
    }

    pub fn truncate(&mut self, order: Rat) {
        for row in self.terms.values_mut() {
            row.retain(|q, _| *q <= order);
        }
        self.terms.retain(|_, row| !row.is_empty());
        self.order = Some(self.order.map_or(order, |o| o.min(order)));
    }

    /// Multiplies by `q^shift`.
    pub fn shift_q(&self, shift: Rat) -> Self {
        QZSeries {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(z, row)| (z.clone(), row.iter().map(|(q, c)| (*q + shift, c.clone())).collect()))
                .collect(),
            order: self.order.map(|n| n + shift),
        }
    }

    /// `q^{a/b} z^(c1,...,cl) : r/s`, one line per term.
    pub fn dump_text(&self) -> String {
        let mut out = String::new();
        for (q, z, c) in self.sorted_terms() {
            let _ = writeln!(out, "q^{{{q}}} z^{z} : {c}");
        }
        out
    }
}

pub fn qz_add(a: &QZSeries, b: &QZSeries) -> Result<QZSeries> {
    let order = compatible(&a.order, &b.order)?;
    let mut out = a.clone();
    out.order = order;
    if let Some(n) = order {
        out.truncate(n);
    }
    for (z, row) in &b.terms {
        for (q, c) in row {
            out.add_term(z.clone(), *q, c.clone());
        }
    }
    Ok(out)
}

/// Largest `N` to which a product is exact, given each factor's bound and valuation.
fn product_order(a: &Order, va: Option<Rat>, b: &Order, vb: Option<Rat>) -> Order {
    let mut bounds = Vec::new();
    if let Some(na) = a {
        bounds.push(*na);
        if let Some(v) = vb {
            bounds.push(*na + v);
        }
    }
    if let Some(nb) = b {
        bounds.push(*nb);
        if let Some(v) = va {
            bounds.push(*nb + v);
        }
    }
    bounds.into_iter().min()
}

pub fn qz_mul(a: &QZSeries, b: &QZSeries) -> Result<QZSeries> {
    compatible(&a.order, &b.order)?;
    Ok(mul_unchecked(a, b))
}

/// Cauchy product, with the result truncated to the bound both factors support.
pub fn mul_unchecked(a: &QZSeries, b: &QZSeries) -> QZSeries {
    let order = product_order(&a.order, a.valuation(), &b.order, b.valuation());
    let mut out = QZSeries::zero(a.rank, order);
    for (za, ra) in &a.terms {
        for (zb, rb) in &b.terms {
            let z = za + zb;
            for (qa, ca) in ra {
                for (qb, cb) in rb {
                    let q = *qa + *qb;
                    if within(&order, &q) {
                        out.add_term(z.clone(), q, ca * cb);
                    }
                }
            }
        }
    }
    out
}

/// `eta(q)^{-l} = q^{-l/24} prod_n (1 - q^n)^{-l}`, with every exponent `<= n_max` present.
///
/// `p` does not enter the expansion; it is accepted so that call sites mirror the
/// `(l, p, N)` shape of the character formulas.
pub fn eta_inverse_power(l: usize, _p: i64, n_max: Rat) -> QSeries {
    let shift = Rat::new(-(l as i64), 24);
    let mut out = QSeries::zero(Some(n_max));
    if n_max < shift {
        return out;
    }
    let top = (n_max - shift).floor().to_integer() as usize;
    let mut a = vec![BigInt::zero(); top + 1];
    a[0] = BigInt::one();
    for n in 1..=top {
        for _ in 0..l {
            for k in n..=top {
                let prev = a[k - n].clone();
                a[k] += prev;
            }
        }
    }
    for (k, c) in a.into_iter().enumerate() {
        out.add_term(Rat::from_integer(k as i64) + shift, BigRational::from_integer(c));
    }
    out
}

/// Total order used by the division: `(mu, rho)` first, then lexicographic.
fn div_key(rs: &RootSystem, mu: &Weight) -> (Rat, Weight) {
    (rs.height(mu), mu.clone())
}

/// Exact division of a Laurent polynomial; errors if a remainder survives.
pub fn zpoly_divide_exact(rs: &RootSystem, num: &ZPoly, denom: &ZPoly) -> Result<ZPoly> {
    let mut dterms: Vec<((Rat, Weight), Coeff)> = denom
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(z, c)| (div_key(rs, z), c.clone()))
        .collect();
    if dterms.is_empty() {
        return Err(Error::Argument("division by the zero polynomial".into()));
    }
    dterms.sort_by(|a, b| a.0.cmp(&b.0));
    let ((dmax_h, dlead), dlead_c) = dterms.last().cloned().unwrap();
    let dmin_h = dterms[0].0 .0;
    let mut rem: BTreeMap<(Rat, Weight), Coeff> = num
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(z, c)| (div_key(rs, z), c.clone()))
        .collect();
    let mut quot = ZPoly::new();
    let Some(nmin_h) = rem.keys().next().map(|k| k.0) else {
        return Ok(quot);
    };
    let floor = nmin_h - dmin_h;
    while let Some(((h, z), c)) = rem.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
        if h - dmax_h < floor {
            return Err(Error::NotDivisible(format!("z^{z} (coefficient {c})")));
        }
        let shift = &z - &dlead;
        let qc = &c / &dlead_c;
        for ((_, dz), dc) in &dterms {
            let m = &shift + dz;
            let key = div_key(rs, &m);
            add_into(&mut rem, key, -(&qc * dc));
        }
        add_into(&mut quot, shift, qc);
    }
    Ok(quot)
}

/// Divides every `q`-coefficient of `num` exactly by `denom`.
pub fn laurent_divide_exact(rs: &RootSystem, num: &QZSeries, denom: &ZPoly) -> Result<QZSeries> {
    let mut out = QZSeries::zero(num.rank, num.order);
    for q in num.q_exponents() {
        let quot = zpoly_divide_exact(rs, &num.zpoly_at(&q), denom)?;
        for (z, c) in quot {
            out.add_term(z, q, c);
        }
    }
    Ok(out)
}

/// `1 - z^gamma` for each negative root `gamma`.
pub fn weyl_denominator_factors(rs: &RootSystem) -> Vec<ZPoly> {
    rs.negative_roots()
        .into_iter()
        .map(|g| {
            let mut f = ZPoly::new();
            f.insert(Weight::zero(rs.rank), Coeff::one());
            f.insert(g, -Coeff::one());
            f
        })
        .collect()
}

/// `prod_{gamma < 0} (1 - z^gamma)` expanded.
pub fn weyl_denominator(rs: &RootSystem) -> ZPoly {
    let mut acc = ZPoly::new();
    acc.insert(Weight::zero(rs.rank), Coeff::one());
    for f in weyl_denominator_factors(rs) {
        let mut next = ZPoly::new();
        for (a, ca) in &acc {
            for (b, cb) in &f {
                add_into(&mut next, a + b, ca * cb);
            }
        }
        acc = next;
    }
    acc
}

/// Divides by the Weyl denominator one factor at a time; each partial quotient is exact
/// whenever the full quotient is.
pub fn divide_by_weyl_denominator(rs: &RootSystem, num: &ZPoly) -> Result<ZPoly> {
    let mut cur = num.clone();
    for g in rs.negative_roots() {
        cur = divide_by_one_minus(&cur, &g)?;
    }
    Ok(cur)
}

/// Exact quotient by `1 - z^g`: prefix sums along each line `mu + k g`.
pub fn divide_by_one_minus(num: &ZPoly, g: &Weight) -> Result<ZPoly> {
    let j = g.0.iter().position(|&x| x != 0).ok_or_else(|| Error::Argument("1 - z^0 is not invertible".into()))?;
    let mut lines: BTreeMap<Weight, BTreeMap<i64, &Coeff>> = BTreeMap::new();
    for (z, c) in num.iter().filter(|(_, c)| !c.is_zero()) {
        let k = z.0[j].div_euclid(g.0[j]);
        lines.entry(z - &g.scale(k)).or_default().insert(k, c);
    }
    let mut out = ZPoly::new();
    for (base, pts) in lines {
        let (&lo, _) = pts.first_key_value().unwrap();
        let (&hi, _) = pts.last_key_value().unwrap();
        let mut acc = Coeff::zero();
        for k in lo..=hi {
            if let Some(c) = pts.get(&k) {
                acc += *c;
            }
            if k == hi {
                if !acc.is_zero() {
                    return Err(Error::NotDivisible(format!("z^{} (residue {acc})", &base + &g.scale(k))));
                }
            } else if !acc.is_zero() {
                out.insert(&base + &g.scale(k), acc.clone());
            }
        }
    }
    Ok(out)
}

/// `sum_sigma sign(sigma) z^{sigma(mu) - rho}`.
pub fn alternating_sum(rs: &RootSystem, weyl: &[WeylElement], mu: &Weight) -> ZPoly {
    let mut out = ZPoly::new();
    for w in weyl {
        add_into(&mut out, &w.apply(mu) - &rs.rho, int(w.sign));
    }
    out
}

/// Weyl character of the irreducible module of highest weight `beta`, as a `q`-free series.
pub fn weyl_character(rs: &RootSystem, weyl: &[WeylElement], beta: &Weight) -> Result<QZSeries> {
    Ok(QZSeries::from_zpoly(
        rs.rank,
        &weyl_character_poly(rs, weyl, beta)?,
        Rat::zero(),
        None,
    ))
}

pub fn weyl_character_poly(rs: &RootSystem, weyl: &[WeylElement], beta: &Weight) -> Result<ZPoly> {
    if beta.rank() != rs.rank || !beta.is_dominant() {
        return Err(Error::Argument(format!("{beta} is not a dominant weight of {}", rs.label())));
    }
    let num = alternating_sum(rs, weyl, &(beta + &rs.rho));
    let chi = divide_by_weyl_denominator(rs, &num)
        .map_err(|e| Error::Internal(format!("Weyl numerator not divisible: {e}")))?;
    if chi.values().any(|c| c.is_negative() || !c.is_integer()) {
        return Err(Error::Internal(format!("character of {beta} has a bad coefficient")));
    }
    Ok(chi)
}

pub fn zpoly_eval_one(p: &ZPoly) -> Coeff {
    p.values().fold(Coeff::zero(), |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn poly(terms: &[(&[i64], i64)]) -> ZPoly {
        terms.iter().map(|(z, c)| (Weight(z.to_vec()), int(*c))).collect()
    }

    #[test]
    fn add_zero_is_identity() {
        let a = QZSeries::monomial(Weight(vec![1]), Rat::new(1, 2), int(3), Some(Rat::from(4)));
        let z = QZSeries::zero(1, Some(Rat::from(4)));
        assert_eq!(qz_add(&a, &z).unwrap(), a);
    }

    #[test]
    fn telescoping_product() {
        let n = 5;
        let order = Some(Rat::from(n));
        let mut geo = QZSeries::zero(1, order);
        for k in 0..=n {
            geo.add_term(Weight(vec![0]), Rat::from(k), int(1));
        }
        let mut one_minus_q = QZSeries::one(1, order);
        one_minus_q.add_term(Weight(vec![0]), Rat::from(1), int(-1));
        let prod = qz_mul(&one_minus_q, &geo).unwrap();
        assert_eq!(prod, QZSeries::one(1, order));
    }

    #[test]
    fn monomials_cancel() {
        let a = QZSeries::monomial(Weight(vec![1, 0]), Rat::zero(), int(1), None);
        let b = QZSeries::monomial(Weight(vec![-1, 0]), Rat::zero(), int(1), None);
        assert_eq!(qz_mul(&a, &b).unwrap(), QZSeries::one(2, None));
    }

    #[test]
    fn order_mismatch_is_an_error() {
        let a = QZSeries::zero(1, Some(Rat::from(1)));
        let b = QZSeries::zero(1, Some(Rat::from(2)));
        assert!(matches!(qz_add(&a, &b), Err(Error::OrderMismatch { .. })));
        assert!(qz_mul(&a, &b).is_err());
    }

    #[test]
    fn eta_examples() {
        let e = eta_inverse_power(1, 2, Rat::from(4));
        let got: Vec<Coeff> = (0..5).map(|k| e.coeff(&(Rat::new(-1, 24) + k))).collect();
        assert_eq!(got, [1, 1, 2, 3, 5].map(int));
        let e0 = eta_inverse_power(0, 2, Rat::from(3));
        assert_eq!(e0.terms.len(), 1);
        let e2 = eta_inverse_power(2, 2, Rat::from(3));
        assert_eq!(e2.coeff(&(Rat::new(-2, 24) + 2)), int(5));
    }

    #[test]
    fn division_examples() {
        let a1 = rs("A1");
        let d = poly(&[(&[0], 1), (&[-2], -1)]);
        assert_eq!(zpoly_divide_exact(&a1, &d, &d).unwrap(), poly(&[(&[0], 1)]));
        let num = poly(&[(&[1], 1), (&[-3], -1)]);
        assert_eq!(
            zpoly_divide_exact(&a1, &num, &d).unwrap(),
            poly(&[(&[1], 1), (&[-1], 1)])
        );
        assert!(matches!(
            zpoly_divide_exact(&a1, &poly(&[(&[1], 1)]), &d),
            Err(Error::NotDivisible(_))
        ));
    }

    #[test]
    fn characters_small() {
        let a1 = rs("A1");
        let w = a1.enumerate_weyl(10).unwrap();
        let chi = weyl_character_poly(&a1, &w, &Weight(vec![2])).unwrap();
        assert_eq!(chi, poly(&[(&[-2], 1), (&[0], 1), (&[2], 1)]));
        let a2 = rs("A2");
        let w2 = a2.enumerate_weyl(10).unwrap();
        let adj = weyl_character_poly(&a2, &w2, &a2.theta).unwrap();
        assert_eq!(adj.len(), 7);
        assert_eq!(adj[&Weight(vec![0, 0])], int(2));
        assert_eq!(zpoly_eval_one(&adj), int(8));
        let triv = weyl_character_poly(&a2, &w2, &Weight(vec![0, 0])).unwrap();
        assert_eq!(triv, poly(&[(&[0, 0], 1)]));
    }

    #[test]
    fn full_denominator_matches_factorwise() {
        let a2 = rs("A2");
        let w2 = a2.enumerate_weyl(10).unwrap();
        let num = alternating_sum(&a2, &w2, &Weight(vec![3, 2]));
        let one = zpoly_divide_exact(&a2, &num, &weyl_denominator(&a2)).unwrap();
        let two = divide_by_weyl_denominator(&a2, &num).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn dump_format() {
        let s = QZSeries::monomial(Weight(vec![1, -1]), Rat::new(-1, 12), int(2), None);
        assert_eq!(s.dump_text(), "q^{-1/12} z^(1,-1) : 2\n");
    }

    #[test]
    fn product_order_accounts_for_negative_valuation() {
        let n = Some(Rat::from(2));
        let eta = QZSeries::from_qseries(1, &eta_inverse_power(1, 2, Rat::from(2)));
        let one = QZSeries::one(1, n);
        let prod = qz_mul(&eta, &one).unwrap();
        assert_eq!(prod.order, Some(Rat::from(2) - Rat::new(1, 24)));
    }
}
