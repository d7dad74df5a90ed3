//! The line-oriented structure file format.
//!
//! ```text
//! # a directed edge on three points
//! signature E/2
//! elements 3
//! rel E 0 1
//! ```
//!
//! One `rel` line per true tuple; duplicate tuples are rejected. Blank lines
//! and `#` comments are ignored.

use std::fmt::Write as _;

use super::signature::valid_name;
use super::{Signature, Structure, StructureBuilder};
use crate::error::{Error, Result};

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        column,
        message: message.into(),
    })
}

/// Whitespace-separated words with their 1-based columns.
pub(crate) fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, w)| (line[..byte].chars().count() + 1, w))
        .collect()
}

pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

pub fn parse_structure(text: &str) -> Result<Structure> {
    let mut signature: Option<Signature> = None;
    let mut builder: Option<StructureBuilder> = None;
    for (ln, raw) in text.lines().enumerate() {
        let ln = ln + 1;
        let ws = words(strip_comment(raw));
        let Some(&(col, head)) = ws.first() else {
            continue;
        };
        match head {
            "signature" => {
                if signature.is_some() {
                    return err(ln, col, "duplicate `signature` line");
                }
                let mut entries = Vec::new();
                for &(c, w) in &ws[1..] {
                    let Some((name, arity)) = w.rsplit_once('/') else {
                        return err(ln, c, format!("expected `name/arity`, found `{w}`"));
                    };
                    if !valid_name(name) {
                        return err(ln, c, format!("invalid relation name `{name}`"));
                    }
                    let arity: usize = match arity.parse() {
                        Ok(a) if a > 0 => a,
                        _ => return err(ln, c + name.chars().count() + 1, format!("invalid arity `{arity}`")),
                    };
                    if entries.iter().any(|(n, _): &(String, usize)| n == name) {
                        return err(ln, c, format!("duplicate relation name `{name}`"));
                    }
                    entries.push((name.to_string(), arity));
                }
                signature = Some(Signature::new(entries).map_err(|e| Error::Parse {
                    line: ln,
                    column: col,
                    message: e.to_string(),
                })?);
            }
            "elements" => {
                let Some(sig) = signature.clone() else {
                    return err(ln, col, "`elements` before `signature`");
                };
                if builder.is_some() {
                    return err(ln, col, "duplicate `elements` line");
                }
                if ws.len() != 2 {
                    return err(ln, col, "expected `elements <n>`");
                }
                let (c, w) = ws[1];
                let n: usize = w
                    .parse()
                    .or_else(|_| err(ln, c, format!("invalid element count `{w}`")))?;
                builder = Some(StructureBuilder::new(sig, n));
            }
            "rel" => {
                let Some(b) = builder.as_mut() else {
                    return err(ln, col, "`rel` before `elements`");
                };
                let Some(&(c, name)) = ws.get(1) else {
                    return err(ln, col, "expected a relation name");
                };
                let sig = signature.as_ref().expect("builder implies signature");
                let Some(rel) = sig.index_of(name) else {
                    return err(ln, c, format!("unknown relation `{name}`"));
                };
                let args = &ws[2..];
                if args.len() != sig.arity(rel) {
                    return err(
                        ln,
                        c,
                        format!(
                            "`{name}` has arity {} but {} elements are given",
                            sig.arity(rel),
                            args.len()
                        ),
                    );
                }
                let mut tuple = Vec::with_capacity(args.len());
                for &(c, w) in args {
                    match w.parse::<usize>() {
                        Ok(x) if x < b.size() => tuple.push(x),
                        Ok(x) => return err(ln, c, format!("element {x} out of range 0..{}", b.size())),
                        Err(_) => return err(ln, c, format!("invalid element `{w}`")),
                    }
                }
                let fresh = b.add(rel, tuple).map_err(|e| Error::Parse {
                    line: ln,
                    column: c,
                    message: e.to_string(),
                })?;
                if !fresh {
                    return err(ln, col, "duplicate tuple");
                }
            }
            other => return err(ln, col, format!("unknown directive `{other}`")),
        }
    }
    match builder {
        Some(b) => Ok(b.build()),
        None if signature.is_none() => err(1, 1, "missing `signature` line"),
        None => err(text.lines().count().max(1), 1, "missing `elements` line"),
    }
}

pub fn write_structure(s: &Structure) -> String {
    let mut out = String::new();
    let sig = s.signature();
    if sig.is_empty() {
        out.push_str("signature\n");
    } else {
        let _ = writeln!(out, "signature {sig}");
    }
    let _ = writeln!(out, "elements {}", s.size());
    for rel in 0..sig.len() {
        for t in s.table(rel) {
            let _ = write!(out, "rel {}", sig.name(rel));
            for x in t {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
    }
    out
}
