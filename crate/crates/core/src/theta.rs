use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// The exponent θ as an exact rational a/b with 0 < a < b and gcd(a, b) = 1.
///
/// Membership tests `k(n) ≤ n^θ` reduce to the integer comparison
/// `k(n)^b ≤ n^a`, so keeping θ rational makes every boundary decision
/// exact. The companion exponent κ = θ/(1−θ) = a/(b−a) drives the
/// radical-stratified count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaRational {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl ThetaRational {
    /// Construct θ = num/den, reduced to lowest terms. Requires 0 < θ < 1.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidArgument(format!(
                "theta must satisfy 0 < a/b < 1, got {num}/{den}"
            )));
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// κ = θ/(1−θ) as the reduced fraction (num, den − num).
    pub fn kappa(&self) -> (u64, u64) {
        (self.num, self.den - self.num)
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// 1 − θ as an f64.
    pub fn complement(&self) -> f64 {
        (self.den - self.num) as f64 / self.den as f64
    }
}

impl fmt::Display for ThetaRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for ThetaRational {
    type Err = Error;

    /// Parse "a/b".
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s.split_once('/').ok_or_else(|| {
            Error::InvalidArgument(format!("theta must be a rational 'a/b', got '{s}'"))
        })?;
        let num: u64 = a
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad theta numerator '{a}'")))?;
        let den: u64 = b
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad theta denominator '{b}'")))?;
        Self::new(num, den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_reduction() {
        let t = ThetaRational::new(2, 4).unwrap();
        assert_eq!((t.num(), t.den()), (1, 2));
        assert_eq!(t.kappa(), (1, 1));
        assert_eq!(t.to_string(), "1/2");
        assert!(ThetaRational::new(0, 1).is_err());
        assert!(ThetaRational::new(3, 3).is_err());
        assert!(ThetaRational::new(5, 3).is_err());
        assert!(ThetaRational::new(1, 0).is_err());
    }

    #[test]
    fn parsing() {
        let t: ThetaRational = "2/3".parse().unwrap();
        assert_eq!((t.num(), t.den()), (2, 3));
        assert_eq!(t.kappa(), (2, 1));
        assert!("0/1".parse::<ThetaRational>().is_err());
        assert!("x/2".parse::<ThetaRational>().is_err());
        assert!("0.5".parse::<ThetaRational>().is_err());
    }
}
