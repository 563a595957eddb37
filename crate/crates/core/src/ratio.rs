//! Exact nonnegative rationals with `+∞`, used for every measured constant.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// `num / den` in lowest terms; `den == 0` encodes `+∞`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ratio {
    num: u64,
    den: u64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };
    pub const INFINITY: Ratio = Ratio { num: 1, den: 0 };

    /// `num / den`; a zero denominator gives `+∞` (also for `0/0`).
    pub fn new(num: u64, den: u64) -> Self {
        if den == 0 {
            return Self::INFINITY;
        }
        if num == 0 {
            return Self::ZERO;
        }
        let g = num.gcd(&den);
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    pub fn integer(v: u64) -> Self {
        Ratio { num: v, den: 1 }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_infinite(self) -> bool {
        self.den == 0
    }

    pub fn is_zero(self) -> bool {
        self.num == 0 && self.den != 0
    }

    pub fn to_f64(self) -> f64 {
        if self.den == 0 {
            f64::INFINITY
        } else {
            self.num as f64 / self.den as f64
        }
    }

    /// `self · k` (finite part only; `∞ · k = ∞` for `k > 0`).
    pub fn mul_int(self, k: u64) -> Self {
        if self.is_infinite() {
            return if k == 0 { Self::ZERO } else { Self::INFINITY };
        }
        let g = k.gcd(&self.den).max(1);
        Ratio::new(self.num * (k / g), self.den / g)
    }

    pub fn div_int(self, k: u64) -> Self {
        if k == 0 {
            return Self::INFINITY;
        }
        if self.is_infinite() {
            return self;
        }
        let g = self.num.gcd(&k).max(1);
        Ratio::new(self.num / g, self.den * (k / g))
    }

    /// Whether `self · x ≤ y` for integers `x, y` (with `∞ · 0 = 0`).
    pub fn scaled_le(self, x: u64, y: u64) -> bool {
        if x == 0 {
            return true;
        }
        if self.is_infinite() {
            return false;
        }
        self.num as u128 * x as u128 <= y as u128 * self.den as u128
    }

    /// `⌊self · k⌋` for finite ratios.
    pub fn floor_mul(self, k: u64) -> u64 {
        assert!(!self.is_infinite(), "floor of infinity");
        ((self.num as u128 * k as u128) / self.den as u128) as u64
    }
}

impl std::ops::Mul for Ratio {
    type Output = Ratio;

    fn mul(self, other: Ratio) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::ZERO;
        }
        if self.is_infinite() || other.is_infinite() {
            return Self::INFINITY;
        }
        let n = self.num as u128 * other.num as u128;
        let d = self.den as u128 * other.den as u128;
        let g = n.gcd(&d);
        Ratio::new((n / g) as u64, (d / g) as u64)
    }
}

impl Default for Ratio {
    fn default() -> Self {
        Self::ZERO
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            _ => {
                (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
            }
        }
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::str::FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(Self::INFINITY);
        }
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad ratio {s:?}: {e}"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse(d)?;
                if d == 0 {
                    return Err(format!("bad ratio {s:?}: zero denominator"));
                }
                Ok(Ratio::new(parse(n)?, d))
            }
            None => Ok(Ratio::integer(parse(s)?)),
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_and_orders() {
        assert_eq!(Ratio::new(4, 10), Ratio::new(2, 5));
        assert!(Ratio::new(1, 3) < Ratio::new(2, 5));
        assert!(Ratio::new(1000, 1) < Ratio::INFINITY);
        assert_eq!(Ratio::new(0, 0), Ratio::INFINITY);
        assert_eq!(Ratio::new(0, 7), Ratio::ZERO);
    }

    #[test]
    fn string_round_trip() {
        for r in [
            Ratio::new(2, 9),
            Ratio::INFINITY,
            Ratio::integer(3),
            Ratio::ZERO,
        ] {
            assert_eq!(r.to_string().parse::<Ratio>().unwrap(), r);
        }
        assert_eq!(serde_json::to_string(&Ratio::new(1, 6)).unwrap(), "\"1/6\"");
    }

    #[test]
    fn arithmetic() {
        assert_eq!(Ratio::new(2, 3).mul_int(3), Ratio::integer(2));
        assert_eq!(Ratio::new(2, 3).div_int(4), Ratio::new(1, 6));
        assert_eq!(Ratio::new(2, 3) * Ratio::new(3, 4), Ratio::new(1, 2));
        assert!(Ratio::new(1, 2).scaled_le(4, 2));
        assert!(!Ratio::new(1, 2).scaled_le(5, 2));
        assert_eq!(Ratio::new(7, 3).floor_mul(2), 4);
    }
}
