use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

pub type Rat = Ratio<i64>;

/// Integer vector in fundamental-weight coordinates: entry `i` is `(alpha_{i+1}, mu)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `omega_i`, with `i` counted from 1.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Weight(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// `(alpha_i, mu)` with `i` counted from 1.
    pub fn coord(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Self {
        Weight(self.0.iter().map(|c| c * k).collect())
    }

    /// Renders as a signed sum of fundamental weights, negative terms first,
    /// e.g. `-w2+w1+w3`; the zero weight renders as `0`.
    pub fn omega_string(&self) -> String {
        let mut out = String::new();
        let neg = self.0.iter().enumerate().filter(|(_, &c)| c < 0);
        let pos = self.0.iter().enumerate().filter(|(_, &c)| c > 0);
        for (i, &c) in neg.chain(pos) {
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(&format!("w{}", i + 1));
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), o.rank());
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), o.rank());
        Weight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, o: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a += b;
        }
    }
}

impl SubAssign<&Weight> for Weight {
    fn sub_assign(&mut self, o: &Weight) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a -= b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn omega_string_orders_negative_terms_first() {
        assert_eq!(Weight(vec![1, -1, 1]).omega_string(), "-w2+w1+w3");
        assert_eq!(Weight(vec![-2, 1]).omega_string(), "-2w1+w2");
        assert_eq!(Weight(vec![0, 0]).omega_string(), "0");
    }

    #[test]
    fn display_is_tuple() {
        assert_eq!(Weight(vec![1, -2]).to_string(), "(1,-2)");
    }
}
