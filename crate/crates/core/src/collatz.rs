//! The Collatz map `T`, the reduced map `RT`, orbits and stopping times.
//!
//! Every unbounded walk takes an explicit step cap and reports
//! [`Error::Truncated`] instead of looping forever.

use std::fmt;

use crate::bitnat::BinaryNat;
use crate::error::{Error, Result};

/// Default cap on Collatz steps for single-number queries.
pub const DEFAULT_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// `n ↦ 3n + 1` on odd `n`; always increases.
    OddStep,
    /// `n ↦ n / 2` on even `n`; always decreases.
    EvenStep,
}

impl StepKind {
    pub fn for_value(n: &BinaryNat) -> Self {
        if n.is_odd() {
            StepKind::OddStep
        } else {
            StepKind::EvenStep
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            StepKind::OddStep => "odd-step",
            StepKind::EvenStep => "even-step",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// One application of `T`.
pub fn step(n: &BinaryNat) -> (BinaryNat, StepKind) {
    if n.is_odd() {
        (n.mul3_add1(), StepKind::OddStep)
    } else {
        (n.half().expect("even"), StepKind::EvenStep)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedStep {
    pub odd_result: BinaryNat,
    /// Power of two divided out after the optional `3n + 1`.
    pub stripped_exponent: u64,
    /// Number of `T` applications this reduced step stands for.
    pub t_steps_consumed: u64,
}

/// One application of `RT`: `3n + 1` if `n` is odd, then strip every factor of 2.
///
/// `RT(1)` is the contraction of the `{1, 4, 2}` loop: result 1, exponent 2,
/// three `T` steps.
pub fn reduced_step(n: &BinaryNat) -> ReducedStep {
    if n.is_odd() {
        let (odd, tz) = n.mul3_add1().odd_part();
        ReducedStep {
            odd_result: odd,
            stripped_exponent: tz,
            t_steps_consumed: tz + 1,
        }
    } else {
        let (odd, tz) = n.odd_part();
        ReducedStep {
            odd_result: odd,
            stripped_exponent: tz,
            t_steps_consumed: tz,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub value: BinaryNat,
    /// Step that produced this value; `None` for the starting value.
    pub kind: Option<StepKind>,
}

/// The orbit `n, T(n), T²(n), …` up to the first appended 1 or the step cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollatzTrace {
    pub start: BinaryNat,
    pub entries: Vec<TraceEntry>,
    /// Index of the first entry equal to 1.
    pub stopping_time: Option<u64>,
    /// True when the walk never met 1.
    pub truncated: bool,
}

impl CollatzTrace {
    pub fn values(&self) -> impl Iterator<Item = &BinaryNat> {
        self.entries.iter().map(|e| &e.value)
    }

    /// Number of `T` applications recorded.
    pub fn steps(&self) -> u64 {
        self.entries.len() as u64 - 1
    }
}

/// Iterates `T` from `n`, stopping once a 1 is appended or after `max_steps`
/// applications. Starting from 1 walks the `{1, 4, 2}` loop once.
pub fn sequence(n: &BinaryNat, max_steps: u64) -> CollatzTrace {
    let mut entries = vec![TraceEntry {
        value: n.clone(),
        kind: None,
    }];
    let mut stopping_time = n.is_one().then_some(0);
    let mut current = n.clone();
    for i in 1..=max_steps {
        let (next, kind) = step(&current);
        let done = next.is_one();
        entries.push(TraceEntry {
            value: next.clone(),
            kind: Some(kind),
        });
        current = next;
        if done {
            stopping_time.get_or_insert(i);
            break;
        }
    }
    CollatzTrace {
        start: n.clone(),
        entries,
        truncated: stopping_time.is_none(),
        stopping_time,
    }
}

/// Largest value on an orbit; word-sized until the orbit leaves `u128`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Peak {
    Word(u128),
    Big(BinaryNat),
}

impl Peak {
    pub fn of(x: &BinaryNat) -> Self {
        match x.to_u128() {
            Some(v) => Peak::Word(v),
            None => Peak::Big(x.clone()),
        }
    }

    pub fn to_binary_nat(&self) -> BinaryNat {
        match self {
            Peak::Word(v) => BinaryNat::from_u128(*v).expect("peak ≥ 1"),
            Peak::Big(b) => b.clone(),
        }
    }
}

impl Ord for Peak {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self, other) {
            (Peak::Word(a), Peak::Word(b)) => a.cmp(b),
            (Peak::Big(a), Peak::Big(b)) => a.cmp(b),
            // Big peaks only exist above u128::MAX.
            (Peak::Word(_), Peak::Big(_)) => Less,
            (Peak::Big(_), Peak::Word(_)) => Greater,
        }
    }
}

impl PartialOrd for Peak {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub stopping_time: u64,
    pub peak: Peak,
}

enum WordWalk {
    Done(Orbit),
    Truncated,
    Overflow { at: u128, steps: u64, peak: u128 },
}

const WORD_LIMIT: u128 = (u128::MAX - 1) / 3;

fn walk_word(mut x: u128, cap: u64, mut steps: u64) -> WordWalk {
    let mut peak = x;
    loop {
        if x == 1 {
            return WordWalk::Done(Orbit {
                stopping_time: steps,
                peak: Peak::Word(peak),
            });
        }
        if x & 1 == 0 {
            // Every value strictly inside a halving run is even and ≥ 2.
            let tz = x.trailing_zeros() as u64;
            if steps + tz > cap {
                return WordWalk::Truncated;
            }
            x >>= tz;
            steps += tz;
        } else {
            if steps + 1 > cap {
                return WordWalk::Truncated;
            }
            if x > WORD_LIMIT {
                return WordWalk::Overflow { at: x, steps, peak };
            }
            x = 3 * x + 1;
            steps += 1;
            peak = peak.max(x);
        }
    }
}

fn walk_big(start: BinaryNat, cap: u64, mut steps: u64, floor: Peak) -> Option<Orbit> {
    let mut x = start;
    let mut peak = floor.max(Peak::of(&x));
    loop {
        if x.is_one() {
            return Some(Orbit {
                stopping_time: steps,
                peak,
            });
        }
        if x.is_even() {
            let (odd, tz) = x.odd_part();
            if steps + tz > cap {
                return None;
            }
            steps += tz;
            x = odd;
        } else {
            if steps + 1 > cap {
                return None;
            }
            x = x.mul3_add1();
            steps += 1;
            let candidate = Peak::of(&x);
            if candidate > peak {
                peak = candidate;
            }
        }
    }
}

/// Stopping time and peak of `n`'s orbit, or `None` if the cap is hit first.
pub fn orbit(n: &BinaryNat, cap: u64) -> Option<Orbit> {
    match n.to_u128() {
        Some(x) => resolve_word(walk_word(x, cap, 0), cap),
        None => walk_big(n.clone(), cap, 0, Peak::of(n)),
    }
}

pub fn orbit_u64(n: u64, cap: u64) -> Option<Orbit> {
    assert!(n != 0, "orbit of zero");
    resolve_word(walk_word(n as u128, cap, 0), cap)
}

fn resolve_word(walk: WordWalk, cap: u64) -> Option<Orbit> {
    match walk {
        WordWalk::Done(o) => Some(o),
        WordWalk::Truncated => None,
        WordWalk::Overflow { at, steps, peak } => walk_big(
            BinaryNat::from_u128(at).expect("nonzero"),
            cap,
            steps,
            Peak::Word(peak),
        ),
    }
}

/// Orbit computed only with [`BinaryNat`] arithmetic; cross-checks the word kernel.
pub fn orbit_bitwise(n: &BinaryNat, cap: u64) -> Option<Orbit> {
    walk_big(n.clone(), cap, 0, Peak::of(n))
}

/// Least `m` with `T^m(n) = 1`; `0` for `n = 1`.
pub fn stopping_time(n: &BinaryNat, cap: u64) -> Result<u64> {
    orbit(n, cap)
        .map(|o| o.stopping_time)
        .ok_or(Error::Truncated { cap })
}

/// Odd iterates of `RT` from the odd part of `n` down to 1 inclusive.
/// `cap` bounds the number of reduced steps.
pub fn odd_chain(n: &BinaryNat, cap: u64) -> Result<Vec<BinaryNat>> {
    let (mut current, _) = n.odd_part();
    let mut chain = vec![current.clone()];
    let mut taken = 0u64;
    while !current.is_one() {
        if taken == cap {
            return Err(Error::Truncated { cap });
        }
        current = reduced_step(&current).odd_result;
        chain.push(current.clone());
        taken += 1;
    }
    Ok(chain)
}

/// Confirms that once the orbit reaches 1 the next three iterates are 4, 2, 1.
pub fn cycle_check(n: &BinaryNat) -> Result<bool> {
    cycle_check_with_cap(n, DEFAULT_CAP)
}

pub fn cycle_check_with_cap(n: &BinaryNat, cap: u64) -> Result<bool> {
    stopping_time(n, cap)?;
    let mut x = BinaryNat::one();
    for expected in [4u64, 2, 1] {
        x = step(&x).0;
        if x.to_u64() != Some(expected) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// End-substring length of odd `n` against the trailing zeros of `3n + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EndSubstringTransition {
    pub end_substring_len: u64,
    pub trailing_zeros_after: u64,
}

pub fn end_substring_transition(n: &BinaryNat) -> Result<EndSubstringTransition> {
    let end_substring_len = n.end_substring_len()?;
    Ok(EndSubstringTransition {
        end_substring_len,
        trailing_zeros_after: n.mul3_add1().trailing_zeros(),
    })
}
