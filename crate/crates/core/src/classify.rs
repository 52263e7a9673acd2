//! Pure / mixed partition of the naturals and the hard numbers `(4^k − 1)/3`.

use std::fmt;
use std::str::FromStr;

use crate::bitnat::BinaryNat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumberClass {
    /// `2^m`, m ≥ 1: `10…0`.
    PureEven,
    /// `2^m − 1`, m ≥ 2: `11…1`.
    PureOdd,
    MixedEven,
    MixedOdd,
    /// The tree root 1, which belongs to neither pure family.
    Origin,
}

impl NumberClass {
    pub const ALL: [NumberClass; 5] = [
        NumberClass::PureEven,
        NumberClass::PureOdd,
        NumberClass::MixedEven,
        NumberClass::MixedOdd,
        NumberClass::Origin,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            NumberClass::PureEven => "pure-even",
            NumberClass::PureOdd => "pure-odd",
            NumberClass::MixedEven => "mixed-even",
            NumberClass::MixedOdd => "mixed-odd",
            NumberClass::Origin => "origin",
        }
    }
}

impl fmt::Display for NumberClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for NumberClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NumberClass::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown class tag {s:?}")))
    }
}

pub fn classify(n: &BinaryNat) -> NumberClass {
    if n.is_one() {
        return NumberClass::Origin;
    }
    let len = n.bit_length();
    if n.trailing_zeros() == len - 1 {
        NumberClass::PureEven
    } else if n.is_odd() && n.end_substring_len().ok() == Some(len) {
        NumberClass::PureOdd
    } else if n.is_odd() {
        NumberClass::MixedOdd
    } else {
        NumberClass::MixedEven
    }
}

/// Word-sized classification for the range verifier.
pub fn classify_u64(n: u64) -> NumberClass {
    debug_assert!(n != 0);
    if n == 1 {
        NumberClass::Origin
    } else if n.is_power_of_two() {
        NumberClass::PureEven
    } else if n & n.wrapping_add(1) == 0 {
        NumberClass::PureOdd
    } else if n & 1 == 1 {
        NumberClass::MixedOdd
    } else {
        NumberClass::MixedEven
    }
}

/// True for the alternating strings `(10)^k 1`, k ≥ 1: 5, 21, 85, …
pub fn is_hard(n: &BinaryNat) -> bool {
    let len = n.bit_length();
    len >= 3
        && len % 2 == 1
        && n.bits_msb_first()
            .enumerate()
            .all(|(i, bit)| bit == (i % 2 == 0))
}

/// `a_k = (4^k − 1)/3 = 4^(k−1) + … + 4 + 1`, whose bits are `(10)^(k−1) 1`.
pub fn hard_number(k: u64) -> Result<BinaryNat> {
    if k == 0 {
        return Err(Error::Domain("hard_number needs k ≥ 1".into()));
    }
    Ok((1..k).fold(BinaryNat::one(), |acc, i| acc.add(&BinaryNat::pow2(2 * i))))
}
