//! Exact enumeration of integer points inside ellipsoids.

use num_traits::{Signed, Zero};

use crate::root_data::RootSystem;
use crate::weight::{Rat, Weight};

/// Integers `m` with `(m - c)^2 <= bound`, in increasing order.
pub fn integer_window(c: Rat, bound: Rat) -> std::ops::RangeInclusive<i64> {
    if bound.is_negative() {
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    let inside = |m: i64| {
        let d = Rat::from_integer(m) - c;
        d * d <= bound
    };
    let mid = c.round().to_integer();
    if !inside(mid) {
        // The window has width below one and misses the nearest integer.
        #[allow(clippy::reversed_empty_ranges)]
        return 1..=0;
    }
    let mut lo = mid;
    while inside(lo - 1) {
        lo -= 1;
    }
    let mut hi = mid;
    while inside(hi + 1) {
        hi += 1;
    }
    lo..=hi
}

/// All `n` in `Z^k` with `(n - c)^T G (n - c) <= radius`, for positive definite `G`
/// whose inverse is `gram_inv`. Output is in lexicographic order.
pub fn ellipsoid_points(
    gram: &[Vec<Rat>],
    gram_inv: &[Vec<Rat>],
    center: &[Rat],
    radius: Rat,
) -> Vec<Vec<i64>> {
    let k = center.len();
    let windows: Vec<std::ops::RangeInclusive<i64>> = (0..k)
        .map(|i| integer_window(center[i], radius * gram_inv[i][i]))
        .collect();
    let mut out = Vec::new();
    if windows.iter().any(|w| w.is_empty()) {
        return out;
    }
    let mut n: Vec<i64> = windows.iter().map(|w| *w.start()).collect();
    loop {
        let d: Vec<Rat> = n.iter().zip(center).map(|(&x, c)| Rat::from_integer(x) - c).collect();
        let mut q = Rat::zero();
        for i in 0..k {
            for j in 0..k {
                q += d[i] * gram[i][j] * d[j];
            }
        }
        if q <= radius {
            out.push(n.clone());
        }
        let mut at = k;
        loop {
            if at == 0 {
                return out;
            }
            at -= 1;
            if n[at] < *windows[at].end() {
                n[at] += 1;
                for (j, w) in windows.iter().enumerate().skip(at + 1) {
                    n[j] = *w.start();
                }
                break;
            }
        }
    }
}

/// Weights `beta` in `offset + Q` with `|beta - center|^2 <= radius`, sorted.
/// `center` is in fundamental-weight coordinates.
pub fn coset_ball(rs: &RootSystem, offset: &Weight, center: &[Rat], radius: Rat) -> Vec<Weight> {
    let shift: Vec<Rat> = (0..rs.rank)
        .map(|i| Rat::from_integer(offset.0[i]) - center[i])
        .collect();
    let root_center: Vec<Rat> = rs
        .cartan_inv
        .iter()
        .map(|row| -row.iter().zip(&shift).fold(Rat::zero(), |acc, (a, b)| acc + *a * *b))
        .collect();
    let gram: Vec<Vec<Rat>> = rs
        .cartan
        .iter()
        .map(|row| row.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect();
    let mut out: Vec<Weight> = ellipsoid_points(&gram, &rs.cartan_inv, &root_center, radius)
        .into_iter()
        .map(|m| {
            let mut beta = offset.clone();
            for (i, &mi) in m.iter().enumerate() {
                if mi != 0 {
                    beta += &rs.simple_root(i + 1).scale(mi);
                }
            }
            beta
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_edges() {
        assert_eq!(integer_window(Rat::new(1, 2), Rat::new(1, 4)), 0..=1);
        assert!(integer_window(Rat::new(1, 2), Rat::new(1, 5)).is_empty());
        assert_eq!(integer_window(Rat::from(0), Rat::from(4)), -2..=2);
    }

    #[test]
    fn disc_count() {
        let id = vec![vec![Rat::from(1), Rat::from(0)], vec![Rat::from(0), Rat::from(1)]];
        let pts = ellipsoid_points(&id, &id, &[Rat::from(0), Rat::from(0)], Rat::from(2));
        assert_eq!(pts.len(), 9);
    }

    #[test]
    fn a2_roots_in_ball() {
        let rs: RootSystem = "A2".parse().unwrap();
        let zero = [Rat::from(0), Rat::from(0)];
        let ball = coset_ball(&rs, &Weight::zero(2), &zero, Rat::from(2));
        assert_eq!(ball.len(), 7);
        let shell = coset_ball(&rs, &rs.fundamental(1), &zero, Rat::new(2, 3));
        assert_eq!(shell.len(), 3);
    }
}
