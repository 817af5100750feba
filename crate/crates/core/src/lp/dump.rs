//! Plain-text dump of a [`LinearProgram`] for cross-checking with other tools.
//!
//! One record per line, fields separated by single spaces; `#` starts a comment.
//!
//! ```text
//! offset <f64>
//! var <name> <lower> <upper> <cost>
//! row <name> <le|eq> <rhs> <index>:<coef> ...
//! ```
//!
//! Variables are numbered from zero in order of appearance. Infinite bounds are
//! written `inf` / `-inf`. Every number uses the shortest representation that
//! parses back to the same `f64`, so a dump round-trips exactly.

use std::io::{self, BufRead, Write};

use thiserror::Error;

use super::{LinearProgram, Relation, VarId};

#[derive(Debug, Error)]
pub enum DumpError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("name {0:?} contains whitespace")]
    BadName(String),
}

pub fn write_lp<W: Write>(lp: &LinearProgram, mut out: W) -> Result<(), DumpError> {
    writeln!(out, "# {} variables, {} rows", lp.num_vars(), lp.num_rows())?;
    writeln!(out, "offset {}", lp.offset())?;
    for (v, c) in lp.vars().iter().zip(lp.objective()) {
        check_name(&v.name)?;
        writeln!(out, "var {} {} {} {}", v.name, v.lower, v.upper, c)?;
    }
    for r in lp.rows() {
        check_name(&r.name)?;
        let rel = match r.relation {
            Relation::Le => "le",
            Relation::Eq => "eq",
        };
        write!(out, "row {} {} {}", r.name, rel, r.rhs)?;
        for &(v, a) in &r.coeffs {
            write!(out, " {}:{}", v.0, a)?;
        }
        writeln!(out)?;
    }
    Ok(())
}

pub fn read_lp<R: BufRead>(input: R) -> Result<LinearProgram, DumpError> {
    let mut lp = LinearProgram::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let err = |message: String| DumpError::Parse { line: lineno, message };
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let num = |s: &str| s.parse::<f64>().map_err(|e| err(format!("bad number {s:?}: {e}")));
        match fields[0] {
            "offset" if fields.len() == 2 => lp.set_offset(num(fields[1])?),
            "var" if fields.len() == 5 => {
                lp.add_var(fields[1], num(fields[2])?, num(fields[3])?, num(fields[4])?);
            }
            "row" if fields.len() >= 4 => {
                let relation = match fields[2] {
                    "le" => Relation::Le,
                    "eq" => Relation::Eq,
                    other => return Err(err(format!("unknown relation {other:?}"))),
                };
                let rhs = num(fields[3])?;
                let mut coeffs = Vec::with_capacity(fields.len() - 4);
                for term in &fields[4..] {
                    let (idx, coef) = term
                        .split_once(':')
                        .ok_or_else(|| err(format!("term {term:?} is not index:coef")))?;
                    let idx: usize = idx.parse().map_err(|e| err(format!("bad index {idx:?}: {e}")))?;
                    if idx >= lp.num_vars() {
                        return Err(err(format!("index {idx} refers to an undeclared variable")));
                    }
                    coeffs.push((VarId(idx), num(coef)?));
                }
                lp.add_row(fields[1], coeffs, relation, rhs);
            }
            _ => return Err(err(format!("unrecognised record {body:?}"))),
        }
    }
    Ok(lp)
}

fn check_name(name: &str) -> Result<(), DumpError> {
    if name.is_empty() || name.contains(char::is_whitespace) {
        Err(DumpError::BadName(name.to_string()))
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let mut lp = LinearProgram::new();
        let a = lp.add_var("a", 0.0, f64::INFINITY, 0.1);
        let b = lp.add_var("b[3]", f64::NEG_INFINITY, 2.5, -1.0 / 3.0);
        lp.add_row("r0", vec![(a, 1.0), (b, 1e-17)], Relation::Le, 3600.0 / 2772.0);
        lp.add_row("r1", vec![(b, -2.0)], Relation::Eq, 0.0);
        lp.set_offset(12.75);
        let mut buf = Vec::new();
        write_lp(&lp, &mut buf).unwrap();
        let back = read_lp(buf.as_slice()).unwrap();
        assert_eq!(back, lp);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "offset 0\nvar x 0 1 1\nrow r le 1 5:1\n";
        match read_lp(text.as_bytes()) {
            Err(DumpError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }
}
