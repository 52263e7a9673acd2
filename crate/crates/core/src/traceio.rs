//! Text renderings of orbits, odd chains and merge derivations.
//!
//! * table: one row per odd value, `n=(bits)₂ → (bits of 3n+1)₂`
//! * scratch: one line per iterate with a step glyph, decimal and
//!   right-aligned binary. Glyphs: `*` start, `↓` halving, `→` 3n+1.
//! * points: `i,value` rows for external plotting
//! * machine: `index,decimal,binary,kind,annotations`, comma separated and
//!   unquoted. `kind` is the step `T` applies to the row's value.
//!
//! All output uses LF line endings and ends with a newline.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bitnat::BinaryNat;
use crate::collatz::{CollatzTrace, StepKind, TraceEntry};
use crate::compose::CompositionPath;
use crate::error::{Error, Result};
use crate::powersum::{DerivationRecord, PowerSum};

pub const GLYPH_START: char = '*';
pub const GLYPH_HALVE: char = '↓';
pub const GLYPH_TRIPLE: char = '→';

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Table,
    Scratch,
    Points,
    Machine,
}

impl FromStr for RenderFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(RenderFormat::Table),
            "scratch" => Ok(RenderFormat::Scratch),
            "points" => Ok(RenderFormat::Points),
            "machine" => Ok(RenderFormat::Machine),
            _ => Err(Error::InvalidInput(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderConfig {
    pub format: RenderFormat,
    pub show_decimal: bool,
    pub show_binary: bool,
    /// Minimum width of the left column; 0 means no padding (table) or
    /// automatic alignment (scratch).
    pub column_width: usize,
}

impl Default for RenderConfig {
    fn default() -> Self {
        RenderConfig {
            format: RenderFormat::Scratch,
            show_decimal: true,
            show_binary: true,
            column_width: 0,
        }
    }
}

impl RenderConfig {
    pub fn with_format(format: RenderFormat) -> Self {
        RenderConfig {
            format,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let textual = matches!(self.format, RenderFormat::Table | RenderFormat::Scratch);
        if textual && !self.show_decimal && !self.show_binary {
            return Err(Error::Render(
                "table and scratch output need decimal or binary columns".into(),
            ));
        }
        Ok(())
    }
}

fn cell(n: &BinaryNat, cfg: &RenderConfig) -> String {
    match (cfg.show_decimal, cfg.show_binary) {
        (true, true) => format!("{n}=({n:b})₂"),
        (false, true) => format!("({n:b})₂"),
        _ => n.to_decimal(),
    }
}

fn image_cell(n: &BinaryNat, cfg: &RenderConfig) -> String {
    if cfg.show_binary {
        format!("({n:b})₂")
    } else {
        n.to_decimal()
    }
}

/// Renders an odd chain: one row per odd value above 1, then a terminal row for 1.
pub fn render_table(chain: &[BinaryNat], cfg: &RenderConfig) -> Result<String> {
    cfg.validate()?;
    if chain.is_empty() {
        return Err(Error::Render("empty chain".into()));
    }
    let mut out = String::new();
    for n in chain {
        let left = cell(n, cfg);
        if n.is_one() {
            let _ = writeln!(out, "{left}");
            continue;
        }
        if n.is_even() {
            return Err(Error::Render(format!(
                "table rows need odd values, got {n}"
            )));
        }
        let pad = cfg.column_width.saturating_sub(left.chars().count());
        let _ = writeln!(
            out,
            "{left}{:pad$} → {}",
            "",
            image_cell(&n.mul3_add1(), cfg)
        );
    }
    Ok(out)
}

fn glyph(kind: Option<StepKind>) -> char {
    match kind {
        None => GLYPH_START,
        Some(StepKind::EvenStep) => GLYPH_HALVE,
        Some(StepKind::OddStep) => GLYPH_TRIPLE,
    }
}

/// Scratch-paper layout: `glyph decimal binary` per iterate, with the binary
/// column right-aligned so trailing bits line up.
pub fn render_scratch(trace: &CollatzTrace, cfg: &RenderConfig) -> Result<String> {
    cfg.validate()?;
    let dec_width = if cfg.column_width > 0 {
        cfg.column_width
    } else {
        trace
            .values()
            .map(|v| v.to_decimal().len())
            .max()
            .unwrap_or(1)
    };
    let bin_width = trace
        .values()
        .map(|v| v.bit_length() as usize)
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for entry in &trace.entries {
        let mut line = String::new();
        line.push(glyph(entry.kind));
        if cfg.show_decimal {
            let _ = write!(line, " {:>dec_width$}", entry.value);
        }
        if cfg.show_binary {
            let _ = write!(line, " {:>bin_width$b}", entry.value);
        }
        let _ = writeln!(out, "{line}");
    }
    if trace.truncated {
        let _ = writeln!(out, "truncated after {} steps", trace.steps());
    }
    Ok(out)
}

/// `i,value` per iterate, decimal values.
pub fn render_points(trace: &CollatzTrace) -> String {
    let mut out = String::new();
    for (i, v) in trace.values().enumerate() {
        let _ = writeln!(out, "{i},{v}");
    }
    out
}

/// Lossless machine rendering of a trace. Annotations: `start` on row 0,
/// `stop` on the row where 1 is first reached, `truncated` on the last row
/// of a walk that never met 1.
pub fn render_machine_trace(trace: &CollatzTrace) -> String {
    let mut out = String::new();
    let last = trace.entries.len() - 1;
    for (i, entry) in trace.entries.iter().enumerate() {
        let mut notes = Vec::new();
        if i == 0 {
            notes.push("start");
        }
        if trace.stopping_time == Some(i as u64) {
            notes.push("stop");
        }
        if trace.truncated && i == last {
            notes.push("truncated");
        }
        let v = &entry.value;
        let _ = writeln!(
            out,
            "{i},{v},{v:b},{},{}",
            StepKind::for_value(v),
            notes.join(";")
        );
    }
    out
}

struct MachineRow {
    index: u64,
    value: BinaryNat,
    kind: String,
    notes: String,
}

fn parse_rows(text: &str) -> Result<Vec<MachineRow>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(Error::InvalidInput(format!(
                "line {}: expected 5 fields, found {}",
                lineno + 1,
                fields.len()
            )));
        }
        let index: u64 = fields[0].parse().map_err(|_| {
            Error::InvalidInput(format!("line {}: bad index {:?}", lineno + 1, fields[0]))
        })?;
        let value = BinaryNat::from_decimal(fields[1])?;
        if value != BinaryNat::from_bit_str(fields[2])? {
            return Err(Error::InvalidInput(format!(
                "line {}: decimal and binary columns disagree",
                lineno + 1
            )));
        }
        rows.push(MachineRow {
            index,
            value,
            kind: fields[3].to_string(),
            notes: fields[4].to_string(),
        });
    }
    Ok(rows)
}

/// Inverse of [`render_machine_trace`].
pub fn parse_machine_trace(text: &str) -> Result<CollatzTrace> {
    let rows = parse_rows(text)?;
    if rows.is_empty() {
        return Err(Error::InvalidInput("empty machine trace".into()));
    }
    let mut entries = Vec::with_capacity(rows.len());
    let mut stopping_time = None;
    for (i, row) in rows.iter().enumerate() {
        if row.index != i as u64 {
            return Err(Error::InvalidInput(format!(
                "row {i} has index {}",
                row.index
            )));
        }
        let kind = match i {
            0 => None,
            _ => Some(match rows[i - 1].kind.as_str() {
                "odd-step" => StepKind::OddStep,
                "even-step" => StepKind::EvenStep,
                other => return Err(Error::InvalidInput(format!("unknown kind {other:?}"))),
            }),
        };
        if row.notes.split(';').any(|n| n == "stop") {
            stopping_time = Some(i as u64);
        }
        entries.push(TraceEntry {
            value: row.value.clone(),
            kind,
        });
    }
    Ok(CollatzTrace {
        start: rows[0].value.clone(),
        entries,
        truncated: stopping_time.is_none(),
        stopping_time,
    })
}

/// Machine rows for an odd chain; the final 1 is annotated `terminal`.
pub fn render_machine_chain(chain: &[BinaryNat]) -> String {
    let mut out = String::new();
    for (i, v) in chain.iter().enumerate() {
        let note = if v.is_one() { "terminal" } else { "" };
        let _ = writeln!(out, "{i},{v},{v:b},{},{note}", StepKind::for_value(v));
    }
    out
}

fn exps(e: &[u64]) -> String {
    e.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

/// Machine rows for a merge derivation, kind `merge`, exponent lists
/// space-separated in the annotations.
pub fn render_machine_derivation(records: &[DerivationRecord]) -> String {
    let mut out = String::new();
    for (i, r) in records.iter().enumerate() {
        let v = crate::powersum::from_powersum(&r.before);
        let _ = writeln!(
            out,
            "{i},{v},{v:b},merge,before={};raw={};after={};shift={};next={}",
            exps(r.before.exponents()),
            exps(r.raw.exponents()),
            exps(r.after.exponents()),
            r.shift,
            exps(r.next.exponents()),
        );
    }
    out
}

/// Human rendering of a merge derivation:
///
/// ```text
/// 67=(1000011)₂=2^6+2^1+2^0
/// 3·67+1=2·67+67+1=2^7+2^2+2^1+2^6+2^1+2^0+2^0=2^7+2^6+2^3+2^1
/// …
/// 1
/// ```
pub fn render_derivation(records: &[DerivationRecord]) -> Result<String> {
    let first = records
        .first()
        .ok_or_else(|| Error::Render("empty derivation".into()))?;
    let mut out = String::new();
    let start = crate::powersum::from_powersum(&first.before);
    let _ = writeln!(out, "{start}=({start:b})₂={}", first.before);
    for r in records {
        let v = crate::powersum::from_powersum(&r.before);
        let _ = writeln!(out, "3·{v}+1=2·{v}+{v}+1={}={}", r.raw, r.after);
    }
    let last: &PowerSum = &records.last().unwrap().next;
    let _ = writeln!(out, "{}", crate::powersum::from_powersum(last));
    Ok(out)
}

/// `1 2 5 10 21 / EOEO`.
pub fn render_tree_path(nodes: &[BinaryNat], path: &CompositionPath) -> String {
    let values: Vec<String> = nodes.iter().map(BinaryNat::to_decimal).collect();
    format!("{} / {}", values.join(" "), path)
        .trim_end()
        .to_string()
        + "\n"
}

/// One line per level: `level d: v v v …`.
pub fn render_subtree(levels: &[Vec<BinaryNat>], binary: bool) -> String {
    let mut out = String::new();
    for (d, level) in levels.iter().enumerate() {
        let values: Vec<String> = level
            .iter()
            .map(|v| {
                if binary {
                    v.to_bit_string()
                } else {
                    v.to_decimal()
                }
            })
            .collect();
        let _ = writeln!(out, "level {}: {}", d + 1, values.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collatz::{odd_chain, sequence};
    use crate::compose::{decompose, subtree, tree_path};
    use crate::powersum::derivation_trace;

    fn n(v: u64) -> BinaryNat {
        BinaryNat::from_u64(v).unwrap()
    }

    #[test]
    fn table_rows() {
        let cfg = RenderConfig::with_format(RenderFormat::Table);
        let out = render_table(&odd_chain(&n(10027), 100).unwrap(), &cfg).unwrap();
        assert_eq!(
            out.lines().next().unwrap(),
            "10027=(10011100101011)₂ → (111010110000010)₂"
        );
        assert_eq!(render_table(&[n(1)], &cfg).unwrap(), "1=(1)₂\n");
        let out = render_table(&odd_chain(&n(67), 100).unwrap(), &cfg).unwrap();
        let lefts: Vec<&str> = out.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(lefts, ["67", "101", "19", "29", "11", "17", "13", "5", "1"]);
        assert!(render_table(&[], &cfg).is_err());
        assert!(render_table(&[n(6)], &cfg).is_err());
    }

    #[test]
    fn table_column_options() {
        let mut cfg = RenderConfig::with_format(RenderFormat::Table);
        cfg.show_binary = false;
        assert_eq!(render_table(&[n(5), n(1)], &cfg).unwrap(), "5 → 16\n1\n");
        cfg.show_binary = true;
        cfg.show_decimal = false;
        assert_eq!(render_table(&[n(5)], &cfg).unwrap(), "(101)₂ → (10000)₂\n");
        cfg.column_width = 10;
        assert_eq!(
            render_table(&[n(5)], &cfg).unwrap(),
            "(101)₂     → (10000)₂\n"
        );
        cfg.show_binary = false;
        assert!(matches!(render_table(&[n(5)], &cfg), Err(Error::Render(_))));
    }

    #[test]
    fn scratch_layout() {
        let cfg = RenderConfig::default();
        let out = render_scratch(&sequence(&n(16), 10), &cfg).unwrap();
        assert_eq!(
            out,
            "* 16 10000\n↓  8  1000\n↓  4   100\n↓  2    10\n↓  1     1\n"
        );
        let out = render_scratch(&sequence(&n(255), 100), &cfg).unwrap();
        assert_eq!(out.lines().count(), 48);
        assert!(out.lines().last().unwrap().ends_with(" 1"));
        let out = render_scratch(&sequence(&n(1), 3), &cfg).unwrap();
        assert_eq!(out, "* 1   1\n→ 4 100\n↓ 2  10\n↓ 1   1\n");
        let out = render_scratch(&sequence(&n(27), 3), &cfg).unwrap();
        assert!(out.ends_with("truncated after 3 steps\n"));
    }

    #[test]
    fn scratch_triple_is_followed_by_halving() {
        let out = render_scratch(&sequence(&n(97), 1000), &RenderConfig::default()).unwrap();
        let glyphs: Vec<char> = out.lines().map(|l| l.chars().next().unwrap()).collect();
        for w in glyphs.windows(2) {
            if w[0] == GLYPH_TRIPLE {
                assert_eq!(w[1], GLYPH_HALVE);
            }
        }
    }

    #[test]
    fn points() {
        let out = render_points(&sequence(&n(255), 100));
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows.len(), 48);
        assert_eq!(rows[0], "0,255");
        assert_eq!(rows[47], "47,1");
        let out = render_points(&sequence(&n(97), 1000));
        assert_eq!(out.lines().count(), 119);
        assert_eq!(out.lines().last().unwrap(), "118,1");
        assert_eq!(render_points(&sequence(&n(1), 0)), "0,1\n");
    }

    #[test]
    fn machine_rows() {
        let t = sequence(&n(5), 10);
        let out = render_machine_trace(&t);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[0], "0,5,101,odd-step,start");
        assert_eq!(rows[1], "1,16,10000,even-step,");
        assert_eq!(rows[5], "5,1,1,odd-step,stop");
        assert_eq!(parse_machine_trace(&out).unwrap(), t);

        let t = sequence(&n(27), 5);
        assert_eq!(parse_machine_trace(&render_machine_trace(&t)).unwrap(), t);

        let chain = render_machine_chain(&odd_chain(&n(5), 10).unwrap());
        assert_eq!(chain, "0,5,101,odd-step,\n1,1,1,odd-step,terminal\n");

        let d = render_machine_derivation(&derivation_trace(&n(67), 100).unwrap());
        assert_eq!(
            d.lines().next().unwrap(),
            "0,67,1000011,merge,before=6 1 0;raw=7 2 1 6 1 0 0;after=7 6 3 1;shift=1;next=6 5 2 0"
        );
    }

    #[test]
    fn machine_parse_errors() {
        assert!(parse_machine_trace("").is_err());
        assert!(parse_machine_trace("0,5,101,odd-step").is_err());
        assert!(parse_machine_trace("0,5,111,odd-step,start").is_err());
        assert!(parse_machine_trace("1,5,101,odd-step,start").is_err());
    }

    #[test]
    fn derivation_text() {
        let out = render_derivation(&derivation_trace(&n(67), 100).unwrap()).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "67=(1000011)₂=2^6+2^1+2^0");
        assert_eq!(
            lines[1],
            "3·67+1=2·67+67+1=2^7+2^2+2^1+2^6+2^1+2^0+2^0=2^7+2^6+2^3+2^1"
        );
        assert_eq!(
            lines[2],
            "3·101+1=2·101+101+1=2^7+2^6+2^3+2^1+2^6+2^5+2^2+2^0+2^0=2^8+2^5+2^4"
        );
        assert_eq!(lines[8], "3·5+1=2·5+5+1=2^3+2^1+2^2+2^0+2^0=2^4");
        assert_eq!(lines[9], "1");
        assert_eq!(lines.len(), 10);
    }

    #[test]
    fn tree_text() {
        let x = n(21);
        assert_eq!(
            render_tree_path(&tree_path(&x), &decompose(&x)),
            "1 2 5 10 21 / EOEO\n"
        );
        let one = BinaryNat::one();
        assert_eq!(
            render_tree_path(&tree_path(&one), &decompose(&one)),
            "1 /\n"
        );
        assert_eq!(
            render_subtree(&subtree(3).unwrap(), false),
            "level 1: 1\nlevel 2: 2 3\nlevel 3: 4 5 6 7\n"
        );
        assert_eq!(
            render_subtree(&subtree(2).unwrap(), true),
            "level 1: 1\nlevel 2: 10 11\n"
        );
    }
}
