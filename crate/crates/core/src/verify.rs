//! Range verification: every `n` in `[lo, hi)` is walked to 1 under a step
//! cap, confirmed to enter `{1, 4, 2}`, and classified.
//!
//! The range is cut into contiguous chunks handed to worker threads. Each
//! chunk produces a [`Tally`]; tallies merge associatively and
//! commutatively (argmax ties go to the smaller `n`), so the report does not
//! depend on chunk size, worker count, or where a run was interrupted.
//!
//! # Checkpoint file
//!
//! Line-oriented UTF-8 text with LF endings, fixed line order:
//!
//! ```text
//! collatz-bits checkpoint
//! version 1
//! range <lo> <hi>
//! step_cap <cap>
//! next <next unprocessed n>
//! verified <count>
//! cycle_confirmed <count>
//! max_stopping_time <m> <n> | max_stopping_time none
//! max_excursion <value> <n> | max_excursion none
//! class <tag> <count>            (five lines, tags in fixed order)
//! truncated <n>                  (zero or more lines, ascending)
//! end
//! ```
//!
//! All numbers are decimal. Files are written to `<path>.tmp` and renamed
//! into place.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::bitnat::BinaryNat;
use crate::classify::{classify_u64, NumberClass};
use crate::collatz::{orbit_u64, Peak};
use crate::error::{Error, Result};

pub const CHECKPOINT_VERSION: u32 = 1;
const CHECKPOINT_MAGIC: &str = "collatz-bits checkpoint";

/// Default step cap for range runs.
pub const DEFAULT_RANGE_CAP: u64 = 100_000;
pub const DEFAULT_CHUNK_SIZE: u64 = 1 << 16;
/// Chunks per worker between checkpoint saves.
const CHUNKS_PER_BATCH: u64 = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub step_cap: u64,
    pub chunk_size: u64,
    pub jobs: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            step_cap: DEFAULT_RANGE_CAP,
            chunk_size: DEFAULT_CHUNK_SIZE,
            jobs: default_jobs(),
        }
    }
}

pub fn default_jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl VerifyConfig {
    fn validate(&self) -> Result<()> {
        if self.step_cap == 0 {
            return Err(Error::Domain("step cap must be at least 1".into()));
        }
        if self.chunk_size == 0 {
            return Err(Error::Domain("chunk size must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Domain("need at least one worker".into()));
        }
        Ok(())
    }
}

/// Aggregates over a set of inputs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Tally {
    pub verified: u64,
    pub cycle_confirmed: u64,
    /// `(stopping time, n)`.
    pub max_stopping_time: Option<(u64, u64)>,
    /// `(peak value, n)`.
    pub max_excursion: Option<(Peak, u64)>,
    /// Indexed like [`NumberClass::ALL`].
    pub classes: [u64; 5],
    /// Ascending.
    pub truncated: Vec<u64>,
}

fn class_index(c: NumberClass) -> usize {
    NumberClass::ALL.iter().position(|&x| x == c).unwrap()
}

/// Applies `T` three times to 1 in word arithmetic.
fn tail_is_one_four_two() -> bool {
    let t = |x: u64| if x % 2 == 1 { 3 * x + 1 } else { x / 2 };
    let a = t(std::hint::black_box(1));
    let b = t(a);
    let c = t(b);
    (a, b, c) == (4, 2, 1)
}

impl Tally {
    fn record(&mut self, n: u64, cap: u64) {
        self.classes[class_index(classify_u64(n))] += 1;
        match orbit_u64(n, cap) {
            None => self.truncated.push(n),
            Some(orbit) => {
                self.verified += 1;
                if tail_is_one_four_two() {
                    self.cycle_confirmed += 1;
                }
                if self
                    .max_stopping_time
                    .is_none_or(|(m, _)| orbit.stopping_time > m)
                {
                    self.max_stopping_time = Some((orbit.stopping_time, n));
                }
                if self
                    .max_excursion
                    .as_ref()
                    .is_none_or(|(p, _)| orbit.peak > *p)
                {
                    self.max_excursion = Some((orbit.peak, n));
                }
            }
        }
    }

    /// Tally for `[start, end)`, ascending so first-seen wins ties.
    pub fn over(start: u64, end: u64, cap: u64) -> Tally {
        let mut tally = Tally::default();
        for n in start..end {
            tally.record(n, cap);
        }
        tally
    }

    pub fn processed(&self) -> u64 {
        self.classes.iter().sum()
    }

    /// Combines tallies of disjoint inputs.
    pub fn merge(mut self, other: Tally) -> Tally {
        self.verified += other.verified;
        self.cycle_confirmed += other.cycle_confirmed;
        self.max_stopping_time = match (self.max_stopping_time, other.max_stopping_time) {
            (Some(a), Some(b)) => Some(pick_max(a, b)),
            (a, b) => a.or(b),
        };
        self.max_excursion = match (self.max_excursion.take(), other.max_excursion) {
            (Some(a), Some(b)) => Some(pick_max(a, b)),
            (a, b) => a.or(b),
        };
        for (mine, theirs) in self.classes.iter_mut().zip(other.classes) {
            *mine += theirs;
        }
        self.truncated.extend(other.truncated);
        self.truncated.sort_unstable();
        self
    }
}

/// Larger key wins; equal keys go to the smaller `n`.
fn pick_max<K: Ord>(a: (K, u64), b: (K, u64)) -> (K, u64) {
    match a.0.cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.1 <= b.1 {
                a
            } else {
                b
            }
        }
    }
}

/// Result of verifying `[lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RangeReport {
    pub lo: BinaryNat,
    pub hi: BinaryNat,
    pub step_cap: u64,
    pub verified_count: u64,
    pub cycle_confirmed: u64,
    /// `(stopping time, n)`.
    pub max_stopping_time: Option<(u64, BinaryNat)>,
    /// `(largest iterate, n)`.
    pub max_excursion: Option<(BinaryNat, BinaryNat)>,
    pub class_histogram: Vec<(NumberClass, u64)>,
    pub truncated_inputs: Vec<BinaryNat>,
}

fn nat(n: u64) -> BinaryNat {
    BinaryNat::from_u64(n).expect("range values are ≥ 1")
}

impl fmt::Display for RangeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "range [{}, {})", self.lo, self.hi)?;
        writeln!(f, "step_cap {}", self.step_cap)?;
        writeln!(f, "verified {}", self.verified_count)?;
        writeln!(f, "cycle_confirmed {}", self.cycle_confirmed)?;
        match &self.max_stopping_time {
            Some((m, n)) => writeln!(f, "max_stopping_time {m} at {n}")?,
            None => writeln!(f, "max_stopping_time none")?,
        }
        match &self.max_excursion {
            Some((v, n)) => writeln!(f, "max_excursion {v} at {n}")?,
            None => writeln!(f, "max_excursion none")?,
        }
        for (class, count) in &self.class_histogram {
            writeln!(f, "class {class} {count}")?;
        }
        writeln!(f, "truncated {}", self.truncated_inputs.len())?;
        for n in &self.truncated_inputs {
            writeln!(f, "truncated_input {n}")?;
        }
        Ok(())
    }
}

/// Run state: the range, cap, progress and tally so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub lo: u64,
    pub hi: u64,
    pub step_cap: u64,
    pub next_unprocessed: u64,
    pub tally: Tally,
}

fn to_word(n: &BinaryNat, what: &str) -> Result<u64> {
    n.to_u64()
        .ok_or_else(|| Error::Domain(format!("{what} {n} does not fit in 64 bits")))
}

impl Checkpoint {
    pub fn new(lo: &BinaryNat, hi: &BinaryNat, step_cap: u64) -> Result<Self> {
        let lo = to_word(lo, "range start")?;
        let hi = to_word(hi, "range end")?;
        if lo >= hi {
            return Err(Error::Domain(format!("empty range [{lo}, {hi})")));
        }
        if step_cap == 0 {
            return Err(Error::Domain("step cap must be at least 1".into()));
        }
        Ok(Checkpoint {
            lo,
            hi,
            step_cap,
            next_unprocessed: lo,
            tally: Tally::default(),
        })
    }

    pub fn is_complete(&self) -> bool {
        self.next_unprocessed >= self.hi
    }

    /// Processes chunks until the range is done or `until` is passed,
    /// calling `on_batch` after every batch of chunks.
    pub fn advance(
        &mut self,
        cfg: &VerifyConfig,
        until: Option<u64>,
        mut on_batch: impl FnMut(&Checkpoint) -> Result<()>,
    ) -> Result<()> {
        cfg.validate()?;
        if cfg.step_cap != self.step_cap {
            return Err(Error::Checkpoint(format!(
                "step cap {} differs from the run's cap {}",
                cfg.step_cap, self.step_cap
            )));
        }
        let stop = until.map_or(self.hi, |u| u.clamp(self.next_unprocessed, self.hi));
        let batch_span = cfg
            .chunk_size
            .saturating_mul(cfg.jobs as u64)
            .saturating_mul(CHUNKS_PER_BATCH);
        while self.next_unprocessed < stop {
            let start = self.next_unprocessed;
            // Finish the chunk that contains `until`.
            let span_end = start.saturating_add(batch_span).min(self.hi);
            let end = if span_end >= stop {
                let chunks = (stop - start).div_ceil(cfg.chunk_size);
                start
                    .saturating_add(chunks.saturating_mul(cfg.chunk_size))
                    .min(self.hi)
            } else {
                span_end
            };
            let batch = run_parallel(start, end, cfg);
            self.tally = std::mem::take(&mut self.tally).merge(batch);
            self.next_unprocessed = end;
            on_batch(self)?;
        }
        Ok(())
    }

    pub fn report(&self) -> RangeReport {
        let t = &self.tally;
        RangeReport {
            lo: nat(self.lo),
            hi: nat(self.hi),
            step_cap: self.step_cap,
            verified_count: t.verified,
            cycle_confirmed: t.cycle_confirmed,
            max_stopping_time: t.max_stopping_time.map(|(m, n)| (m, nat(n))),
            max_excursion: t
                .max_excursion
                .as_ref()
                .map(|(p, n)| (p.to_binary_nat(), nat(*n))),
            class_histogram: NumberClass::ALL.into_iter().zip(t.classes).collect(),
            truncated_inputs: t.truncated.iter().map(|&n| nat(n)).collect(),
        }
    }

    pub fn encode(&self) -> String {
        let t = &self.tally;
        let mut out = String::new();
        out.push_str(CHECKPOINT_MAGIC);
        out.push('\n');
        out.push_str(&format!("version {CHECKPOINT_VERSION}\n"));
        out.push_str(&format!("range {} {}\n", self.lo, self.hi));
        out.push_str(&format!("step_cap {}\n", self.step_cap));
        out.push_str(&format!("next {}\n", self.next_unprocessed));
        out.push_str(&format!("verified {}\n", t.verified));
        out.push_str(&format!("cycle_confirmed {}\n", t.cycle_confirmed));
        match t.max_stopping_time {
            Some((m, n)) => out.push_str(&format!("max_stopping_time {m} {n}\n")),
            None => out.push_str("max_stopping_time none\n"),
        }
        match &t.max_excursion {
            Some((p, n)) => out.push_str(&format!("max_excursion {} {n}\n", p.to_binary_nat())),
            None => out.push_str("max_excursion none\n"),
        }
        for (class, count) in NumberClass::ALL.iter().zip(t.classes) {
            out.push_str(&format!("class {class} {count}\n"));
        }
        for n in &t.truncated {
            out.push_str(&format!("truncated {n}\n"));
        }
        out.push_str("end\n");
        out
    }

    pub fn decode(text: &str) -> Result<Self> {
        let mut lines = Lines::new(text);
        if lines.next_line()? != CHECKPOINT_MAGIC {
            return Err(bad("missing checkpoint header"));
        }
        let version = lines.expect_fields("version", 1)?[0].to_string();
        if version != CHECKPOINT_VERSION.to_string() {
            return Err(Error::Checkpoint(format!(
                "unsupported checkpoint version {version} (supported: {CHECKPOINT_VERSION})"
            )));
        }
        let range = lines.expect_fields("range", 2)?;
        let (lo, hi) = (word(range[0])?, word(range[1])?);
        let step_cap = word(lines.expect_fields("step_cap", 1)?[0])?;
        let next_unprocessed = word(lines.expect_fields("next", 1)?[0])?;
        let verified = word(lines.expect_fields("verified", 1)?[0])?;
        let cycle_confirmed = word(lines.expect_fields("cycle_confirmed", 1)?[0])?;

        let fields = lines.expect_any("max_stopping_time")?;
        let max_stopping_time = match fields.as_slice() {
            ["none"] => None,
            [m, n] => Some((word(m)?, word(n)?)),
            _ => return Err(bad("malformed max_stopping_time line")),
        };
        let fields = lines.expect_any("max_excursion")?;
        let max_excursion = match fields.as_slice() {
            ["none"] => None,
            [v, n] => {
                let v = BinaryNat::from_decimal(v).map_err(|e| bad(&e.to_string()))?;
                Some((Peak::of(&v), word(n)?))
            }
            _ => return Err(bad("malformed max_excursion line")),
        };
        let mut classes = [0u64; 5];
        for (slot, class) in classes.iter_mut().zip(NumberClass::ALL) {
            let fields = lines.expect_fields("class", 2)?;
            if fields[0] != class.as_str() {
                return Err(bad(&format!("expected class {class}, found {}", fields[0])));
            }
            *slot = word(fields[1])?;
        }
        let mut truncated = Vec::new();
        loop {
            let line = lines.next_line()?;
            if line == "end" {
                break;
            }
            match line.split_once(' ') {
                Some(("truncated", n)) => truncated.push(word(n)?),
                _ => return Err(bad(&format!("unexpected line {line:?}"))),
            }
        }
        if lines.rest_nonempty() {
            return Err(bad("trailing data after end"));
        }
        if lo >= hi || lo == 0 || next_unprocessed < lo || next_unprocessed > hi {
            return Err(bad("inconsistent range or progress"));
        }
        let cp = Checkpoint {
            lo,
            hi,
            step_cap,
            next_unprocessed,
            tally: Tally {
                verified,
                cycle_confirmed,
                max_stopping_time,
                max_excursion,
                classes,
                truncated,
            },
        };
        if cp.tally.processed() != next_unprocessed - lo
            || cp.tally.verified + cp.tally.truncated.len() as u64 != next_unprocessed - lo
        {
            return Err(bad("aggregate counts do not match progress"));
        }
        Ok(cp)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = tmp_path(path);
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(self.encode().as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Checkpoint(format!("cannot read {}: {e}", path.display())))?;
        Self::decode(&text)
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

fn bad(msg: &str) -> Error {
    Error::Checkpoint(format!("corrupt checkpoint: {msg}"))
}

fn word(s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| bad(&format!("expected a number, found {s:?}")))
}

struct Lines<'a> {
    inner: std::str::Lines<'a>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.lines(),
        }
    }

    fn next_line(&mut self) -> Result<&'a str> {
        self.inner
            .next()
            .ok_or_else(|| bad("unexpected end of file"))
    }

    fn expect_any(&mut self, key: &str) -> Result<Vec<&'a str>> {
        let line = self.next_line()?;
        let mut parts = line.split(' ');
        if parts.next() != Some(key) {
            return Err(bad(&format!("expected {key} line, found {line:?}")));
        }
        Ok(parts.collect())
    }

    fn expect_fields(&mut self, key: &str, count: usize) -> Result<Vec<&'a str>> {
        let fields = self.expect_any(key)?;
        if fields.len() != count {
            return Err(bad(&format!("{key} line needs {count} fields")));
        }
        Ok(fields)
    }

    fn rest_nonempty(&mut self) -> bool {
        self.inner.any(|l| !l.is_empty())
    }
}

/// Tallies `[start, end)` with `cfg.jobs` workers pulling chunks from a shared counter.
fn run_parallel(start: u64, end: u64, cfg: &VerifyConfig) -> Tally {
    let chunk_count = (end - start).div_ceil(cfg.chunk_size) as usize;
    let chunk = |i: usize| {
        let a = start + i as u64 * cfg.chunk_size;
        (a, (a + cfg.chunk_size).min(end))
    };
    let workers = cfg.jobs.min(chunk_count).max(1);
    if workers == 1 {
        return (0..chunk_count)
            .map(|i| {
                let (a, b) = chunk(i);
                Tally::over(a, b, cfg.step_cap)
            })
            .fold(Tally::default(), Tally::merge);
    }
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<(usize, Tally)>> = Mutex::new(Vec::with_capacity(chunk_count));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= chunk_count {
                    break;
                }
                let (a, b) = chunk(i);
                let tally = Tally::over(a, b, cfg.step_cap);
                results.lock().unwrap().push((i, tally));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);
    results
        .into_iter()
        .map(|(_, t)| t)
        .fold(Tally::default(), Tally::merge)
}

pub fn verify_range(
    lo: &BinaryNat,
    hi: &BinaryNat,
    step_cap: u64,
    chunk_size: u64,
) -> Result<RangeReport> {
    let cfg = VerifyConfig {
        step_cap,
        chunk_size,
        jobs: default_jobs(),
    };
    verify_range_with(lo, hi, &cfg)
}

pub fn verify_range_with(
    lo: &BinaryNat,
    hi: &BinaryNat,
    cfg: &VerifyConfig,
) -> Result<RangeReport> {
    let mut cp = Checkpoint::new(lo, hi, cfg.step_cap)?;
    cp.advance(cfg, None, |_| Ok(()))?;
    Ok(cp.report())
}

/// Runs `[lo, hi)` saving a checkpoint to `path` after every batch.
///
/// With `resume`, the run continues from the file at `path`, which must
/// exist and describe the same range and cap. `until` stops early once the
/// chunk containing it has been processed; the returned checkpoint then
/// reports `is_complete() == false`.
pub fn run_checkpointed(
    lo: &BinaryNat,
    hi: &BinaryNat,
    cfg: &VerifyConfig,
    path: &Path,
    resume: bool,
    until: Option<u64>,
) -> Result<Checkpoint> {
    let fresh = Checkpoint::new(lo, hi, cfg.step_cap)?;
    let mut cp = if resume {
        let loaded = Checkpoint::load(path)?;
        if (loaded.lo, loaded.hi, loaded.step_cap) != (fresh.lo, fresh.hi, fresh.step_cap) {
            return Err(Error::Checkpoint(format!(
                "checkpoint is for [{}, {}) cap {}, not [{}, {}) cap {}",
                loaded.lo, loaded.hi, loaded.step_cap, fresh.lo, fresh.hi, fresh.step_cap
            )));
        }
        loaded
    } else {
        fresh
    };
    cp.advance(cfg, until, |state| state.save(path))?;
    if cp.is_complete() || until.is_some() {
        cp.save(path)?;
    }
    Ok(cp)
}
