//! Report rendering.
//!
//! The machine format is line oriented, one record per line, with fields in a
//! fixed order:
//!
//! ```text
//! dercheck-machine 1
//! instance <key> <value>
//! command <name>
//! window <lo> <hi>
//! check <name> verdict <pass|fail>
//! check <name> fact <key> <value>
//! check <name> left <label> <entries>
//! check <name> right <label> <entries>
//! check <name> diff <entries>
//! overall <pass|fail>
//! ```
//!
//! `<entries>` is `zero` or a space-separated list of `(i,t)=d`, sorted by
//! cohomological then internal degree. Diff entries read `(i,t)=left/right`.
//! Timing is left out so that output is byte-stable.

use std::fmt::Write;

use clap::ValueEnum;
use dercheck_core::{Comparison, HilbertTable, Window};

use crate::run::{Check, Report, Sides};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Machine,
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}

fn entries(table: &HilbertTable) -> String {
    if table.is_zero() {
        return "zero".into();
    }
    table.entries().map(|((i, t), d)| format!("({i},{t})={d}")).collect::<Vec<_>>().join(" ")
}

fn diff(sides: &Sides) -> String {
    let c = Comparison::new("", "", sides.left.clone(), "", sides.right.clone());
    let m = c.mismatches();
    if m.is_empty() {
        return "none".into();
    }
    m.iter().map(|x| format!("({},{})={}/{}", x.cohomological, x.internal, x.left, x.right)).collect::<Vec<_>>().join(" ")
}

fn machine(report: &Report) -> String {
    let mut out = String::from("dercheck-machine 1\n");
    for (k, v) in &report.echo {
        writeln!(out, "instance {k} {v}").unwrap();
    }
    writeln!(out, "command {}", report.command.name()).unwrap();
    writeln!(out, "window {} {}", report.window.lo, report.window.hi).unwrap();
    for c in &report.checks {
        writeln!(out, "check {} verdict {}", c.name, verdict(c.passed)).unwrap();
        for (k, v) in &c.facts {
            writeln!(out, "check {} fact {k} {v}", c.name).unwrap();
        }
        if let Some(s) = &c.sides {
            writeln!(out, "check {} left {} {}", c.name, s.left_label, entries(&s.left)).unwrap();
            writeln!(out, "check {} right {} {}", c.name, s.right_label, entries(&s.right)).unwrap();
            writeln!(out, "check {} diff {}", c.name, diff(s)).unwrap();
        }
    }
    writeln!(out, "overall {}", verdict(report.passed())).unwrap();
    out
}

/// Aligned grid: one row per cohomological degree, one column per internal degree.
fn grid(out: &mut String, label: &str, table: &HilbertTable, rows: &[i64], window: Window) {
    writeln!(out, "  {label}:").unwrap();
    if table.is_zero() {
        writeln!(out, "    (all zero on window)").unwrap();
        return;
    }
    let cells: Vec<Vec<String>> = rows.iter().map(|&i| table.row(i).iter().map(u64::to_string).collect()).collect();
    let head: Vec<String> = window.degrees().map(|t| t.to_string()).collect();
    let width = cells.iter().flatten().chain(&head).map(String::len).max().unwrap_or(1);
    let row_label = |s: &str| format!("    {s:>6} |");
    let mut line = row_label("i \\ t");
    for h in &head {
        write!(line, " {h:>width$}").unwrap();
    }
    writeln!(out, "{line}").unwrap();
    for (i, row) in rows.iter().zip(&cells) {
        let mut line = row_label(&i.to_string());
        for v in row {
            write!(line, " {v:>width$}").unwrap();
        }
        writeln!(out, "{line}").unwrap();
    }
}

fn human_check(out: &mut String, c: &Check, window: Window) {
    writeln!(out, "[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name).unwrap();
    for (k, v) in &c.facts {
        writeln!(out, "  {k}: {v}").unwrap();
    }
    if let Some(s) = &c.sides {
        let mut rows: Vec<i64> = s.left.cohomological_degrees();
        rows.extend(s.right.cohomological_degrees());
        rows.sort_unstable();
        rows.dedup();
        grid(out, &s.left_label, &s.left, &rows, window);
        grid(out, &s.right_label, &s.right, &rows, window);
        writeln!(out, "  diff: {}", diff(s)).unwrap();
    }
    out.push('\n');
}

fn human(report: &Report) -> String {
    let mut out = String::new();
    for (k, v) in &report.echo {
        writeln!(out, "{k:>12}  {v}").unwrap();
    }
    writeln!(out, "{:>12}  {}", "command", report.command.name()).unwrap();
    writeln!(out, "{:>12}  [{}, {}]", "window", report.window.lo, report.window.hi).unwrap();
    out.push('\n');
    for c in &report.checks {
        human_check(&mut out, c, report.window);
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    writeln!(out, "overall: {} ({} checks, {failed} failed)", if failed == 0 { "PASS" } else { "FAIL" }, report.checks.len()).unwrap();
    writeln!(out, "elapsed: {:.3}s", report.elapsed.as_secs_f64()).unwrap();
    out
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Table => human(report),
        Format::Machine => machine(report),
    }
}
