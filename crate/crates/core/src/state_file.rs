//! Plain-text interchange format for superpositions.
//!
//! ```text
//! # optional comment lines
//! normalized=true
//! coeff_re,coeff_im,ah_re,ah_im,av_re,av_im
//! 0.7007188416326152,0,2,0,0,0
//! 0.7007188416326152,0,0,0,2,0
//! ```
//!
//! One branch per record, six decimal fields in the fixed order of the header.
//! Blank lines and lines starting with `#` are ignored.

use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::states::{CoherentSuperposition, CoherentTerm};
use crate::table::{format_f64, write_atomic};

pub const FIELDS: [&str; 6] = ["coeff_re", "coeff_im", "ah_re", "ah_im", "av_re", "av_im"];

const MAGIC: &str = "# twomode state v1";

pub fn to_string(psi: &CoherentSuperposition) -> String {
    let mut out = String::new();
    out.push_str(MAGIC);
    out.push('\n');
    out.push_str(&format!("normalized={}\n", psi.is_normalized()));
    out.push_str(&FIELDS.join(","));
    out.push('\n');
    for t in psi.terms() {
        let cells = [t.coeff.re, t.coeff.im, t.h.re, t.h.im, t.v.re, t.v.im].map(format_f64);
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<CoherentSuperposition> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, flag_line) = lines
        .next()
        .ok_or_else(|| err(0, "missing 'normalized=' header".into()))?;
    let normalized = match flag_line.split_once('=') {
        Some(("normalized", "true")) => true,
        Some(("normalized", "false")) => false,
        _ => {
            return Err(err(
                ln,
                format!("expected 'normalized=true|false', found '{flag_line}'"),
            ))
        }
    };

    let (ln, header) = lines
        .next()
        .ok_or_else(|| err(ln, "missing column header".into()))?;
    let cols: Vec<&str> = header.split(',').map(str::trim).collect();
    if cols != FIELDS {
        return Err(err(
            ln,
            format!("expected column header '{}'", FIELDS.join(",")),
        ));
    }

    let mut terms = Vec::new();
    for (ln, record) in lines {
        let cells: Vec<&str> = record.split(',').map(str::trim).collect();
        if cells.len() > FIELDS.len() {
            return Err(err(
                ln,
                format!("expected {} fields, found {}", FIELDS.len(), cells.len()),
            ));
        }
        let mut vals = [0.0; 6];
        for (k, name) in FIELDS.iter().enumerate() {
            let cell = cells
                .get(k)
                .filter(|c| !c.is_empty())
                .ok_or_else(|| err(ln, format!("missing field '{name}'")))?;
            vals[k] = cell
                .parse()
                .map_err(|_| err(ln, format!("field '{name}': cannot parse '{cell}'")))?;
        }
        let term = CoherentTerm::new(
            Complex64::new(vals[0], vals[1]),
            Complex64::new(vals[2], vals[3]),
            Complex64::new(vals[4], vals[5]),
        )
        .map_err(|e| err(ln, e.to_string()))?;
        terms.push(term);
    }
    if terms.is_empty() {
        return Err(err(0, "no branch records".into()));
    }
    if normalized {
        CoherentSuperposition::new_normalized(terms)
    } else {
        CoherentSuperposition::new(terms)
    }
}

pub fn read(path: &Path) -> Result<CoherentSuperposition> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write(path: &Path, psi: &CoherentSuperposition) -> Result<()> {
    write_atomic(path, to_string(psi).as_bytes())
}
