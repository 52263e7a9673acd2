//! Numbers as sums of distinct powers of two, and `3n + 1` computed as the
//! multiset merge `2n + n + 1` followed by `2^k + 2^k = 2^(k+1)` carries.

use std::collections::BTreeMap;
use std::fmt;

use crate::bitnat::BinaryNat;
use crate::classify::hard_number;
use crate::error::{Error, Result};

/// Strictly decreasing exponents `e₁ > e₂ > … ≥ 0`; the 1-bit positions of a number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSum {
    exponents: Vec<u64>,
}

impl PowerSum {
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::Domain("a power sum needs at least one term".into()));
        }
        if exponents.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidInput(format!(
                "exponents {exponents:?} are not strictly decreasing"
            )));
        }
        Ok(PowerSum { exponents })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn min_exponent(&self) -> u64 {
        *self.exponents.last().unwrap()
    }

    pub fn is_one(&self) -> bool {
        self.exponents == [0]
    }

    pub fn is_odd(&self) -> bool {
        self.min_exponent() == 0
    }
}

/// `2^a+2^b+…`, the form used in derivation listings.
impl fmt::Display for PowerSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.exponents)
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, exponents: &[u64]) -> fmt::Result {
    for (i, e) in exponents.iter().enumerate() {
        if i > 0 {
            f.write_str("+")?;
        }
        write!(f, "2^{e}")?;
    }
    Ok(())
}

/// Exponents with multiplicity, kept in the order they were written down.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentMultiset {
    exponents: Vec<u64>,
}

impl ExponentMultiset {
    pub fn new(exponents: Vec<u64>) -> Self {
        ExponentMultiset { exponents }
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Multiplicity per exponent.
    pub fn counts(&self) -> BTreeMap<u64, u64> {
        let mut counts = BTreeMap::new();
        for &e in &self.exponents {
            *counts.entry(e).or_insert(0) += 1;
        }
        counts
    }

    /// `Σ 2^e`, or `None` for the empty multiset.
    pub fn value(&self) -> Option<BinaryNat> {
        self.exponents
            .iter()
            .map(|&e| BinaryNat::pow2(e))
            .reduce(|a, b| a.add(&b))
    }
}

impl fmt::Display for ExponentMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.exponents)
    }
}

impl From<&PowerSum> for ExponentMultiset {
    fn from(p: &PowerSum) -> Self {
        ExponentMultiset::new(p.exponents.clone())
    }
}

pub fn to_powersum(n: &BinaryNat) -> PowerSum {
    PowerSum {
        exponents: n.one_positions(),
    }
}

pub fn from_powersum(p: &PowerSum) -> BinaryNat {
    ExponentMultiset::from(p).value().expect("nonempty")
}

/// Resolves duplicates by binary carry, lowest exponent first: multiplicity
/// `μ` at `e` leaves `μ mod 2` at `e` and carries `⌊μ/2⌋` to `e + 1`.
pub fn normalize(m: &ExponentMultiset) -> Result<PowerSum> {
    if m.is_empty() {
        return Err(Error::Domain("cannot normalize an empty multiset".into()));
    }
    let mut pending = m.counts();
    let mut kept = Vec::new();
    while let Some((e, count)) = pending.pop_first() {
        if count % 2 == 1 {
            kept.push(e);
        }
        if count >= 2 {
            *pending.entry(e + 1).or_insert(0) += count / 2;
        }
    }
    kept.reverse();
    Ok(PowerSum { exponents: kept })
}

/// A single `2^k + 2^k → 2^(k+1)` rewrite. The two removed copies are the
/// first two occurrences of `k`; the new term is appended.
pub fn rewrite_pair(m: &ExponentMultiset, k: u64) -> Result<ExponentMultiset> {
    let mut exponents = m.exponents.clone();
    for _ in 0..2 {
        let pos = exponents
            .iter()
            .position(|&e| e == k)
            .ok_or_else(|| Error::Domain(format!("exponent {k} does not occur twice in {m}")))?;
        exponents.remove(pos);
    }
    exponents.push(k + 1);
    Ok(ExponentMultiset::new(exponents))
}

/// The unnormalized terms of `2n + n + 1`, written in that order.
pub fn raw_merge(p: &PowerSum) -> ExponentMultiset {
    let doubled = p.exponents.iter().map(|e| e + 1);
    let exponents = doubled
        .chain(p.exponents.iter().copied())
        .chain(std::iter::once(0))
        .collect();
    ExponentMultiset::new(exponents)
}

/// `3n + 1 = 2n + (n + 1)` on the power-sum form of odd `n`.
pub fn three_n_plus_one_merge(p: &PowerSum) -> Result<PowerSum> {
    if !p.is_odd() {
        return Err(Error::Parity(format!(
            "3n+1 merge needs an odd number, got {p}"
        )));
    }
    normalize(&raw_merge(p))
}

/// Divides by `2^h` by lowering every exponent.
pub fn shift_powers(p: &PowerSum, h: u64) -> Result<PowerSum> {
    if h > p.min_exponent() {
        return Err(Error::Parity(format!(
            "cannot divide {p} by 2^{h}: lowest term is 2^{}",
            p.min_exponent()
        )));
    }
    Ok(PowerSum {
        exponents: p.exponents.iter().map(|e| e - h).collect(),
    })
}

/// Checks `2^(k−1) + … + 2 + 1 = 2^k − 1`, evaluating both sides with
/// [`BinaryNat`] arithmetic.
pub fn geometric_identity_check(k: u64) -> Result<bool> {
    if k == 0 {
        return Err(Error::Domain("geometric identity needs k ≥ 1".into()));
    }
    let lhs = (0..k)
        .map(BinaryNat::pow2)
        .reduce(|a, b| a.add(&b))
        .expect("k ≥ 1");
    let rhs = BinaryNat::pow2(k).pred()?;
    Ok(lhs == rhs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardClosedForm {
    pub a_k: BinaryNat,
    pub t_of_a_k: BinaryNat,
}

/// `a_k = (4^k − 1)/3` and `T(a_k) = 3a_k + 1`, which must equal `2^(2k)`.
pub fn hard_closed_form(k: u64) -> Result<HardClosedForm> {
    let a_k = hard_number(k)?;
    let t_of_a_k = a_k.mul3_add1();
    if t_of_a_k != BinaryNat::pow2(2 * k) {
        return Err(Error::Internal(format!(
            "3·a_{k}+1 = {t_of_a_k} is not 2^{}",
            2 * k
        )));
    }
    Ok(HardClosedForm { a_k, t_of_a_k })
}

/// One line of a merge derivation: odd `before`, its raw `2n + n + 1` terms,
/// the carried sum, the power of two divided out, and the next odd value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationRecord {
    pub before: PowerSum,
    pub raw: ExponentMultiset,
    pub after: PowerSum,
    pub shift: u64,
    pub next: PowerSum,
}

/// Replays the merge derivation from odd `n` until the sum collapses to `2^0`.
/// Starting from 1 yields the single `{0} → {2} → {0}` loop record.
pub fn derivation_trace(n: &BinaryNat, cap: u64) -> Result<Vec<DerivationRecord>> {
    if n.is_even() {
        return Err(Error::Parity(format!(
            "derivation starts from an odd number, got {n}"
        )));
    }
    let mut current = to_powersum(n);
    let mut records = Vec::new();
    loop {
        if records.len() as u64 == cap {
            return Err(Error::Truncated { cap });
        }
        let raw = raw_merge(&current);
        let after = normalize(&raw)?;
        let shift = after.min_exponent();
        let next = shift_powers(&after, shift)?;
        records.push(DerivationRecord {
            before: current,
            raw,
            after,
            shift,
            next: next.clone(),
        });
        if next.is_one() {
            return Ok(records);
        }
        current = next;
    }
}
