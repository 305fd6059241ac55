//! Grading conventions, 2-adic helpers and binomial coefficients mod 2.
//!
//! Everything here is exact integer arithmetic; logarithms are computed by
//! comparison loops.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Cohomological degree. The generator `e_i` sits in degree `i` and `v_n` in
/// degree `1 - 2^n`, so degrees of periodic elements can be negative.
pub type Degree = i64;

/// The cohomology theory an algebra is computed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "theory", rename_all = "snake_case")]
pub enum TheoryFlavor {
    /// Mod 2 Chow ring, no `v_n`.
    Chow,
    /// Connective Morava K-theory, coefficients `F_2[v_n]`.
    ConnectiveMorava { n: u32 },
    /// Periodic Morava K-theory, coefficients `F_2[v_n, v_n^{-1}]`.
    PeriodicMorava { n: u32 },
}

impl TheoryFlavor {
    /// Builds a flavor from the short CLI names `chow`, `ck` and `k`.
    pub fn from_parts(name: &str, n: Option<u32>) -> Result<Self> {
        let flavor = match (name, n) {
            ("chow", None) => TheoryFlavor::Chow,
            ("chow", Some(_)) => return invalid("the Chow theory takes no Morava height n"),
            ("ck", Some(n)) => TheoryFlavor::ConnectiveMorava { n },
            ("k", Some(n)) => TheoryFlavor::PeriodicMorava { n },
            ("ck" | "k", None) => return invalid("Morava theories require a height n"),
            (other, _) => return invalid(format!("unknown theory `{other}`")),
        };
        flavor.validate()?;
        Ok(flavor)
    }

    pub fn validate(self) -> Result<()> {
        match self.height() {
            Some(0) => invalid("the Morava height n must be at least 1"),
            // 2^n must fit comfortably in the 64-bit masks used downstream.
            Some(n) if n > 6 => invalid(format!("Morava height n = {n} is out of the supported range 1..=6")),
            _ => Ok(()),
        }
    }

    /// The Morava height `n`, absent for Chow.
    pub fn height(self) -> Option<u32> {
        match self {
            TheoryFlavor::Chow => None,
            TheoryFlavor::ConnectiveMorava { n } | TheoryFlavor::PeriodicMorava { n } => Some(n),
        }
    }

    /// `2^n - 1`, the absolute value of `deg v_n`; zero for Chow.
    pub fn period(self) -> i64 {
        self.height().map_or(0, |n| (1i64 << n) - 1)
    }

    pub fn short_name(self) -> &'static str {
        match self {
            TheoryFlavor::Chow => "chow",
            TheoryFlavor::ConnectiveMorava { .. } => "ck",
            TheoryFlavor::PeriodicMorava { .. } => "k",
        }
    }
}

impl fmt::Display for TheoryFlavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TheoryFlavor::Chow => write!(f, "Ch"),
            TheoryFlavor::ConnectiveMorava { n } => write!(f, "CK({n})"),
            TheoryFlavor::PeriodicMorava { n } => write!(f, "K({n})"),
        }
    }
}

/// 2-adic valuation of a positive integer.
pub fn nu2(k: u64) -> Result<u32> {
    if k == 0 {
        return invalid("the 2-adic valuation of 0 is undefined");
    }
    Ok(k.trailing_zeros())
}

/// `<t> = 2^n - 1 - t`.
pub fn angle(t: i64, n: u32) -> i64 {
    (1i64 << n) - 1 - t
}

/// `C(a, b) mod 2` via Lucas: odd iff the binary digits of `b` are a subset
/// of those of `a`.
pub fn binom_mod2(a: u64, b: u64) -> bool {
    b <= a && (a & b) == b
}

/// Largest `k` with `(2i - 1) * 2^k <= m - 1`, i.e. the chain length of the
/// odd generator `e_{2i-1}` in the Chow ring of `SO_m`.
pub fn truncation_exponent(i: u32, m: u32) -> Result<u32> {
    if i == 0 {
        return invalid("generator index i must be positive");
    }
    let odd = 2 * u64::from(i) - 1;
    let top = u64::from(m).saturating_sub(1);
    if odd > top {
        return invalid(format!("generator e_{odd} is absent for m = {m}"));
    }
    let mut k = 0;
    while odd << (k + 1) <= top {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal_mod2(limit: usize) -> Vec<Vec<bool>> {
        let mut rows = vec![vec![false; limit + 1]; limit + 1];
        for a in 0..=limit {
            rows[a][0] = true;
            for b in 1..=a {
                rows[a][b] = rows[a - 1][b - 1] ^ rows[a - 1][b];
            }
        }
        rows
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(nu2(1).unwrap(), 0);
        assert_eq!(nu2(4).unwrap(), 2);
        assert_eq!(nu2(12).unwrap(), 2);
        assert!(nu2(0).is_err());
    }

    #[test]
    fn angle_examples() {
        assert_eq!(angle(0, 3), 7);
        assert_eq!(angle(4, 3), 3);
        assert_eq!(angle(2, 2), 1);
        for n in 1..6 {
            for t in -20..20 {
                assert_eq!(angle(angle(t, n), n), t);
            }
        }
    }

    #[test]
    fn lucas_matches_pascal() {
        assert!(binom_mod2(5, 1));
        assert!(!binom_mod2(2, 1));
        assert!(!binom_mod2(3, 4));
        let table = pascal_mod2(256);
        for a in 0..=256u64 {
            for b in 0..=256u64 {
                let expected = b <= a && table[a as usize][b as usize];
                assert_eq!(binom_mod2(a, b), expected, "C({a},{b})");
            }
        }
    }

    #[test]
    fn truncation_examples() {
        assert_eq!(truncation_exponent(1, 7).unwrap(), 2);
        assert_eq!(truncation_exponent(2, 7).unwrap(), 1);
        assert_eq!(truncation_exponent(1, 17).unwrap(), 4);
        assert!(truncation_exponent(3, 5).is_err());
    }

    #[test]
    fn truncation_is_the_unique_bracketing_exponent() {
        for m in 2..200u32 {
            for i in 1..=m / 2 {
                let odd = 2 * i - 1;
                if odd > m - 1 {
                    continue;
                }
                let k = truncation_exponent(i, m).unwrap();
                assert!(odd << k < m);
                assert!(odd << (k + 1) > m - 1);
            }
        }
    }

    #[test]
    fn flavor_parsing() {
        assert_eq!(TheoryFlavor::from_parts("chow", None).unwrap(), TheoryFlavor::Chow);
        assert_eq!(
            TheoryFlavor::from_parts("k", Some(2)).unwrap(),
            TheoryFlavor::PeriodicMorava { n: 2 }
        );
        assert!(TheoryFlavor::from_parts("ck", None).is_err());
        assert!(TheoryFlavor::from_parts("chow", Some(1)).is_err());
        assert!(TheoryFlavor::from_parts("k", Some(0)).is_err());
    }
}
