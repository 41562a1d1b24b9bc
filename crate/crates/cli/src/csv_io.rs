//! Sweep CSV files: `#` manifest lines, a fixed header, one row per grid point.

use std::io::{self, Write};

use svetlichny::{Branch, SweepRow};

pub const HEADER: &str = "theta1,tau,s_numeric,bound_third,bound_half,branch,converged";

/// `%.9g`: nine significant digits, trailing zeros dropped.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{m}e{sign}{:02}", exp.abs());
    }
    let decimals = (8 - exp) as usize;
    trim_zeros(&format!("{x:.decimals$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn write_row<W: Write>(w: &mut W, r: &SweepRow) -> io::Result<()> {
    writeln!(
        w,
        "{},{},{},{},{},{},{}",
        fmt_sig9(r.theta1),
        fmt_sig9(r.tau),
        fmt_sig9(r.s_numeric),
        fmt_sig9(r.bound_third),
        fmt_sig9(r.bound_half),
        r.branch.name(),
        r.converged
    )
}

/// Writes manifest comment lines, the header and the rows.
pub fn write_sweep<W: Write>(w: &mut W, manifest: &[String], rows: &[SweepRow]) -> io::Result<()> {
    for line in manifest {
        writeln!(w, "# {line}")?;
    }
    writeln!(w, "{HEADER}")?;
    for r in rows {
        write_row(w, r)?;
    }
    Ok(())
}

#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseError {}

/// Reads rows back from a sweep CSV (manifest lines skipped).
pub fn read_sweep(text: &str) -> Result<Vec<SweepRow>, ParseError> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .has_headers(true)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| ParseError(e.to_string()))?.clone();
    if headers.iter().collect::<Vec<_>>().join(",") != HEADER {
        return Err(ParseError(format!("unexpected header: {headers:?}")));
    }
    let mut rows = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| ParseError(e.to_string()))?;
        let num = |k: usize| -> Result<f64, ParseError> {
            rec[k]
                .parse()
                .map_err(|_| ParseError(format!("row {i}: bad number {:?}", &rec[k])))
        };
        let branch = Branch::parse(&rec[5]).ok_or_else(|| ParseError(format!("row {i}: bad branch {:?}", &rec[5])))?;
        let converged = match &rec[6] {
            "true" => true,
            "false" => false,
            other => return Err(ParseError(format!("row {i}: bad flag {other:?}"))),
        };
        rows.push(SweepRow {
            theta1: num(0)?,
            tau: num(1)?,
            s_numeric: num(2)?,
            bound_third: num(3)?,
            bound_half: num(4)?,
            branch,
            converged,
        });
    }
    Ok(rows)
}

/// Lines that are neither comments nor empty.
pub fn body(text: &str) -> String {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}
