//! Arbitrary-precision natural numbers (n ≥ 1) addressed as bit strings.
//!
//! Values are stored as little-endian 64-bit limbs with no zero limb at the
//! top, so the most significant stored bit is always 1. Zero cannot be
//! constructed. The external text form is the MSB-first `0`/`1` string.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

const LIMB_BITS: u32 = 64;
/// Largest power of ten that fits in a limb; used by decimal rendering.
const DEC_CHUNK: u64 = 10_000_000_000_000_000_000;
const DEC_CHUNK_DIGITS: usize = 19;

/// A natural number `n ≥ 1` with exact bit-level operations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryNat {
    // Invariant: nonempty, last limb nonzero.
    limbs: Vec<u64>,
}

impl BinaryNat {
    /// The number 1, root of the composition tree.
    pub fn one() -> Self {
        BinaryNat { limbs: vec![1] }
    }

    fn from_limbs(mut limbs: Vec<u64>) -> Option<Self> {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        if limbs.is_empty() {
            None
        } else {
            Some(BinaryNat { limbs })
        }
    }

    pub fn from_u64(n: u64) -> Option<Self> {
        (n != 0).then(|| BinaryNat { limbs: vec![n] })
    }

    pub fn from_u128(n: u128) -> Option<Self> {
        Self::from_limbs(vec![n as u64, (n >> 64) as u64])
    }

    pub fn to_u64(&self) -> Option<u64> {
        match self.limbs.as_slice() {
            [lo] => Some(*lo),
            _ => None,
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        match self.limbs.as_slice() {
            [lo] => Some(*lo as u128),
            [lo, hi] => Some(((*hi as u128) << 64) | *lo as u128),
            _ => None,
        }
    }

    /// `2^k`: a 1 followed by `k` zeros.
    pub fn pow2(k: u64) -> Self {
        let word = (k / LIMB_BITS as u64) as usize;
        let mut limbs = vec![0; word + 1];
        limbs[word] = 1 << (k % LIMB_BITS as u64);
        BinaryNat { limbs }
    }

    /// `2^k − 1`: `k` one-bits. `k` must be at least 1.
    pub fn all_ones(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Domain("all_ones(0) would be zero".into()));
        }
        let full = (k / LIMB_BITS as u64) as usize;
        let rem = (k % LIMB_BITS as u64) as u32;
        let mut limbs = vec![u64::MAX; full];
        if rem > 0 {
            limbs.push((1u64 << rem) - 1);
        }
        Ok(BinaryNat { limbs })
    }

    /// Parses a decimal digit string by repeatedly halving the decimal
    /// digits and collecting the remainders as bits, least significant first.
    pub fn from_decimal(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty decimal string".into()));
        }
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c.to_digit(10) {
                Some(d) => digits.push(d as u8),
                None => {
                    return Err(Error::InvalidInput(format!(
                        "non-digit character {c:?} in {s:?}"
                    )))
                }
            }
        }
        let start = digits.iter().position(|&d| d != 0);
        let Some(start) = start else {
            return Err(Error::InvalidInput(
                "zero is not a natural number here".into(),
            ));
        };
        let mut digits = digits.split_off(start);

        let mut limbs = Vec::new();
        let mut bit_index = 0u32;
        let mut current = 0u64;
        while !digits.is_empty() {
            // One long division of the decimal digits by 2.
            let mut rem = 0u8;
            for d in digits.iter_mut() {
                let v = rem * 10 + *d;
                *d = v / 2;
                rem = v % 2;
            }
            current |= (rem as u64) << bit_index;
            bit_index += 1;
            if bit_index == LIMB_BITS {
                limbs.push(current);
                current = 0;
                bit_index = 0;
            }
            let lead = digits.iter().position(|&d| d != 0).unwrap_or(digits.len());
            digits.drain(..lead);
        }
        if bit_index > 0 {
            limbs.push(current);
        }
        Ok(Self::from_limbs(limbs).expect("nonzero decimal yields nonzero bits"))
    }

    pub fn to_decimal(&self) -> String {
        let mut work = self.limbs.clone();
        let mut chunks = Vec::new();
        while !work.is_empty() {
            let mut rem: u128 = 0;
            for limb in work.iter_mut().rev() {
                let cur = (rem << 64) | *limb as u128;
                *limb = (cur / DEC_CHUNK as u128) as u64;
                rem = cur % DEC_CHUNK as u128;
            }
            chunks.push(rem as u64);
            while work.last() == Some(&0) {
                work.pop();
            }
        }
        let mut out = chunks.last().map(|c| c.to_string()).unwrap_or_default();
        for c in chunks.iter().rev().skip(1) {
            out.push_str(&format!("{c:0width$}", width = DEC_CHUNK_DIGITS));
        }
        out
    }

    /// Parses an MSB-first bit string. Leading zeros are ignored; an all-zero
    /// or empty string is rejected.
    pub fn from_bit_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::InvalidInput("empty bit string".into()));
        }
        let mut limbs = vec![0u64; s.len().div_ceil(LIMB_BITS as usize)];
        for (i, c) in s.bytes().rev().enumerate() {
            match c {
                b'0' => {}
                b'1' => limbs[i / LIMB_BITS as usize] |= 1 << (i % LIMB_BITS as usize),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "non-binary character {:?} in {s:?}",
                        c as char
                    )))
                }
            }
        }
        Self::from_limbs(limbs)
            .ok_or_else(|| Error::InvalidInput("zero is not a natural number here".into()))
    }

    /// Canonical MSB-first rendering, no separators.
    pub fn to_bit_string(&self) -> String {
        (0..self.bit_length())
            .rev()
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect()
    }

    /// Number of binary digits; equals the node's level in the composition tree.
    pub fn bit_length(&self) -> u64 {
        let top = *self.limbs.last().unwrap();
        (self.limbs.len() as u64 - 1) * LIMB_BITS as u64 + (LIMB_BITS - top.leading_zeros()) as u64
    }

    /// Bit at position `i`, counting from the least significant bit.
    pub fn bit(&self, i: u64) -> bool {
        let word = (i / LIMB_BITS as u64) as usize;
        self.limbs
            .get(word)
            .is_some_and(|w| (w >> (i % LIMB_BITS as u64)) & 1 == 1)
    }

    /// Iterates bits MSB first.
    pub fn bits_msb_first(&self) -> impl DoubleEndedIterator<Item = bool> + '_ {
        (0..self.bit_length()).rev().map(move |i| self.bit(i))
    }

    pub fn is_odd(&self) -> bool {
        self.limbs[0] & 1 == 1
    }

    pub fn is_even(&self) -> bool {
        !self.is_odd()
    }

    pub fn is_one(&self) -> bool {
        self.limbs.len() == 1 && self.limbs[0] == 1
    }

    /// The 2-adic valuation: count of trailing 0 bits.
    pub fn trailing_zeros(&self) -> u64 {
        let mut count = 0u64;
        for &limb in &self.limbs {
            if limb == 0 {
                count += LIMB_BITS as u64;
            } else {
                return count + limb.trailing_zeros() as u64;
            }
        }
        unreachable!("top limb is nonzero")
    }

    fn trailing_ones(&self) -> u64 {
        let mut count = 0u64;
        for &limb in &self.limbs {
            if limb == u64::MAX {
                count += LIMB_BITS as u64;
            } else {
                return count + limb.trailing_ones() as u64;
            }
        }
        count
    }

    /// Length of the end-substring, the maximal run of trailing 1 bits of an
    /// odd number. Even inputs have no end-substring.
    pub fn end_substring_len(&self) -> Result<u64> {
        if self.is_even() {
            return Err(Error::Parity(format!(
                "end-substring is defined for odd numbers, got {self}"
            )));
        }
        Ok(self.trailing_ones())
    }

    /// `3n + 1`, computed as `(n << 1) + n + 1` with a single carry chain.
    pub fn mul3_add1(&self) -> Self {
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut shifted_in = 0u64;
        let mut carry = 1u64;
        for &limb in &self.limbs {
            let doubled = (limb << 1) | shifted_in;
            shifted_in = limb >> (LIMB_BITS - 1);
            let (s1, c1) = doubled.overflowing_add(limb);
            let (s2, c2) = s1.overflowing_add(carry);
            out.push(s2);
            carry = c1 as u64 + c2 as u64;
        }
        let top = shifted_in + carry;
        if top != 0 {
            out.push(top);
        }
        BinaryNat { limbs: out }
    }

    /// `n / 2` for even `n`: drops the final 0 bit.
    pub fn half(&self) -> Result<Self> {
        if self.is_odd() {
            return Err(Error::Parity(format!("cannot halve odd {self}")));
        }
        Ok(self.shr_unchecked(1))
    }

    /// `n / 2^k`, requiring at least `k` trailing zeros.
    pub fn shift_right(&self, k: u64) -> Result<Self> {
        let tz = self.trailing_zeros();
        if k > tz {
            return Err(Error::Parity(format!(
                "shift by {k} exceeds the {tz} trailing zeros of {self}"
            )));
        }
        Ok(self.shr_unchecked(k))
    }

    /// Strips every trailing zero, returning the odd part and the count removed.
    pub fn odd_part(&self) -> (Self, u64) {
        let tz = self.trailing_zeros();
        (self.shr_unchecked(tz), tz)
    }

    fn shr_unchecked(&self, k: u64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let words = (k / LIMB_BITS as u64) as usize;
        let bits = (k % LIMB_BITS as u64) as u32;
        let src = &self.limbs[words.min(self.limbs.len())..];
        let mut out = Vec::with_capacity(src.len());
        for i in 0..src.len() {
            let lo = src[i] >> bits;
            let hi = if bits == 0 {
                0
            } else {
                src.get(i + 1).map_or(0, |w| w << (LIMB_BITS - bits))
            };
            out.push(lo | hi);
        }
        Self::from_limbs(out).expect("callers never shift away the leading 1")
    }

    /// `n · 2^k`.
    pub fn shift_left(&self, k: u64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let words = (k / LIMB_BITS as u64) as usize;
        let bits = (k % LIMB_BITS as u64) as u32;
        let mut out = vec![0u64; words];
        out.reserve(self.limbs.len() + 1);
        let mut spill = 0u64;
        for &limb in &self.limbs {
            if bits == 0 {
                out.push(limb);
            } else {
                out.push((limb << bits) | spill);
                spill = limb >> (LIMB_BITS - bits);
            }
        }
        if spill != 0 {
            out.push(spill);
        }
        BinaryNat { limbs: out }
    }

    /// `2n + b`: the child reached by appending bit `b`.
    pub fn append_bit(&self, b: bool) -> Self {
        let mut out = self.shift_left(1);
        out.limbs[0] |= b as u64;
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (&self.limbs, &other.limbs)
        } else {
            (&other.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = false;
        for (i, &a) in long.iter().enumerate() {
            let b = short.get(i).copied().unwrap_or(0);
            let (s1, c1) = a.overflowing_add(b);
            let (s2, c2) = s1.overflowing_add(carry as u64);
            out.push(s2);
            carry = c1 || c2;
        }
        if carry {
            out.push(1);
        }
        BinaryNat { limbs: out }
    }

    /// `n − 1`; fails for `n = 1`.
    pub fn pred(&self) -> Result<Self> {
        if self.is_one() {
            return Err(Error::Domain(
                "1 has no predecessor among naturals ≥ 1".into(),
            ));
        }
        let mut out = self.limbs.clone();
        for limb in out.iter_mut() {
            let (v, borrow) = limb.overflowing_sub(1);
            *limb = v;
            if !borrow {
                break;
            }
        }
        Ok(Self::from_limbs(out).expect("n ≥ 2"))
    }

    /// Indices of the 1 bits, highest first.
    pub fn one_positions(&self) -> Vec<u64> {
        (0..self.bit_length())
            .rev()
            .filter(|&i| self.bit(i))
            .collect()
    }
}

impl Ord for BinaryNat {
    fn cmp(&self, other: &Self) -> Ordering {
        self.limbs
            .len()
            .cmp(&other.limbs.len())
            .then_with(|| self.limbs.iter().rev().cmp(other.limbs.iter().rev()))
    }
}

impl PartialOrd for BinaryNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BinaryNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.to_decimal())
    }
}

impl fmt::Binary for BinaryNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(&self.to_bit_string())
    }
}

impl fmt::Debug for BinaryNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=({})₂", self.to_decimal(), self.to_bit_string())
    }
}

impl FromStr for BinaryNat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_decimal(s)
    }
}

impl From<u32> for BinaryNat {
    /// Panics on zero.
    fn from(n: u32) -> Self {
        Self::from_u64(n as u64).expect("BinaryNat cannot hold zero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BinaryNat {
        BinaryNat::from_bit_str(s).unwrap()
    }

    fn d(s: &str) -> BinaryNat {
        BinaryNat::from_decimal(s).unwrap()
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(d("60").to_bit_string(), "111100");
        assert_eq!(d("1").to_bit_string(), "1");
        let big = d("1180591620717411303424");
        assert_eq!(big.to_bit_string(), format!("1{}", "0".repeat(70)));
        assert_eq!(big, BinaryNat::pow2(70));
        assert_eq!(d("0060"), d("60"));
    }

    #[test]
    fn decimal_parsing_errors() {
        assert!(matches!(
            BinaryNat::from_decimal(""),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            BinaryNat::from_decimal("12a"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            BinaryNat::from_decimal("0"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            BinaryNat::from_decimal("000"),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            BinaryNat::from_decimal("-5"),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(b("1100001").to_decimal(), "97");
        assert_eq!(b("1").to_decimal(), "1");
        assert_eq!(b("10011100101011").to_decimal(), "10027");
        assert_eq!(BinaryNat::pow2(70).to_decimal(), "1180591620717411303424");
        assert_eq!(
            BinaryNat::all_ones(70).unwrap().to_decimal(),
            "1180591620717411303423"
        );
        // Crosses a 10^19 chunk boundary with interior zeros.
        assert_eq!(
            d("100000000000000000000007").to_decimal(),
            "100000000000000000000007"
        );
    }

    #[test]
    fn bit_string_errors() {
        assert!(BinaryNat::from_bit_str("").is_err());
        assert!(BinaryNat::from_bit_str("000").is_err());
        assert!(BinaryNat::from_bit_str("102").is_err());
        assert_eq!(b("0101").to_bit_string(), "101");
    }

    #[test]
    fn mul3_add1_examples() {
        assert_eq!(b("1").mul3_add1().to_bit_string(), "100");
        assert_eq!(b("101").mul3_add1().to_bit_string(), "10000");
        // 3·255+1 = 766
        assert_eq!(b("11111111").mul3_add1(), d("766"));
        assert_eq!(b("11111111").mul3_add1().to_bit_string(), "1011111110");
        // Carry out of the top limb.
        let n = BinaryNat::from_u64(u64::MAX).unwrap();
        assert_eq!(n.mul3_add1().to_u128(), Some(3 * u64::MAX as u128 + 1));
    }

    #[test]
    fn halving() {
        assert_eq!(b("10").half().unwrap(), b("1"));
        assert_eq!(b("111100").half().unwrap(), d("30"));
        assert_eq!(b("10000").half().unwrap(), b("1000"));
        assert!(matches!(b("101").half(), Err(Error::Parity(_))));
        assert!(matches!(b("1").half(), Err(Error::Parity(_))));
    }

    #[test]
    fn shifting_right() {
        assert_eq!(b("10000").shift_right(4).unwrap(), b("1"));
        assert_eq!(b("10110").shift_right(0).unwrap(), b("10110"));
        assert_eq!(
            b("11001010011000").shift_right(3).unwrap(),
            b("11001010011")
        );
        assert!(matches!(
            b("11001010011000").shift_right(4),
            Err(Error::Parity(_))
        ));
        assert_eq!(
            BinaryNat::pow2(200).shift_right(130).unwrap(),
            BinaryNat::pow2(70)
        );
    }

    #[test]
    fn valuations() {
        assert_eq!(b("111100").trailing_zeros(), 2);
        assert_eq!(b("1").trailing_zeros(), 0);
        assert_eq!(BinaryNat::pow2(70).trailing_zeros(), 70);
        assert_eq!(BinaryNat::pow2(128).trailing_zeros(), 128);
    }

    #[test]
    fn end_substrings() {
        assert_eq!(b("1011001").end_substring_len().unwrap(), 1);
        assert_eq!(b("1011001111").end_substring_len().unwrap(), 4);
        assert_eq!(b("11111").end_substring_len().unwrap(), 5);
        assert_eq!(
            BinaryNat::all_ones(64)
                .unwrap()
                .end_substring_len()
                .unwrap(),
            64
        );
        assert_eq!(
            BinaryNat::all_ones(100)
                .unwrap()
                .end_substring_len()
                .unwrap(),
            100
        );
        assert!(matches!(
            b("110").end_substring_len(),
            Err(Error::Parity(_))
        ));
    }

    #[test]
    fn accessors() {
        assert_eq!(b("111100").bit_length(), 6);
        assert_eq!(b("1").bit_length(), 1);
        assert_eq!(BinaryNat::pow2(64).bit_length(), 65);
        assert_eq!(b("1").append_bit(false), b("10"));
        assert_eq!(b("1").append_bit(true), b("11"));
        assert_eq!(b("101").cmp(&b("11")), Ordering::Greater);
        assert_eq!(b("11").cmp(&b("101")), Ordering::Less);
        assert!(b("1").is_one() && b("1").is_odd());
        assert!(b("10").is_even() && !b("10").is_one());
        assert_eq!(format!("{:b}", d("21")), "10101");
        assert_eq!(format!("{}", b("10101")), "21");
    }

    #[test]
    fn add_and_pred() {
        assert_eq!(
            BinaryNat::pow2(64).pred().unwrap(),
            BinaryNat::all_ones(64).unwrap()
        );
        assert_eq!(
            BinaryNat::all_ones(64).unwrap().add(&BinaryNat::one()),
            BinaryNat::pow2(64)
        );
        assert!(BinaryNat::one().pred().is_err());
        assert!(BinaryNat::all_ones(0).is_err());
        assert_eq!(d("67").one_positions(), vec![6, 1, 0]);
    }
}
