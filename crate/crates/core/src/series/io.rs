//! Plain-text coefficient files.
//!
//! ```text
//! order 4
//! 0 0 1/1 0/1
//! 1 1 -1/2 0/1
//! ```
//!
//! The first line fixes the order. Every other non-blank line is
//! `k l re_num/re_den im_num/im_den`. Reading accepts any line order and
//! rejects duplicates; writing emits nonzero terms in graded order.

use std::collections::HashSet;
use std::fs;
use std::io;
use std::path::Path;

use super::TruncatedSeries;
use crate::error::{Error, Result};
use crate::gaussian::{parse_ratio, GaussianRational};

pub fn to_coeff_string(s: &TruncatedSeries) -> String {
    let mut out = format!("order {}\n", s.order());
    for ((k, l), c) in s.terms() {
        out.push_str(&format!("{k} {l} {}\n", c.to_pair_string()));
    }
    out
}

pub fn parse_coeff_str(text: &str) -> Result<TruncatedSeries> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (first_no, header) = lines
        .next()
        .ok_or_else(|| Error::Format { line: 1, msg: "empty file".into() })?;
    let order = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["order", n] => n.parse::<usize>().map_err(|_| Error::Format {
            line: first_no,
            msg: format!("bad order `{n}`"),
        })?,
        _ => {
            return Err(Error::Format {
                line: first_no,
                msg: format!("expected `order N`, got `{header}`"),
            })
        }
    };

    let mut seen = HashSet::new();
    let mut terms = Vec::new();
    for (no, line) in lines {
        let fields: Vec<_> = line.split_whitespace().collect();
        let [k, l, re, im] = fields.as_slice() else {
            return Err(Error::Format { line: no, msg: format!("expected 4 fields, got {}", fields.len()) });
        };
        let k: usize = k.parse().map_err(|_| Error::Format { line: no, msg: format!("bad exponent `{k}`") })?;
        let l: usize = l.parse().map_err(|_| Error::Format { line: no, msg: format!("bad exponent `{l}`") })?;
        if k + l > order {
            return Err(Error::Format {
                line: no,
                msg: format!("degree {} of ({k}, {l}) exceeds order {order}", k + l),
            });
        }
        if !seen.insert((k, l)) {
            return Err(Error::Format { line: no, msg: format!("duplicate exponent pair ({k}, {l})") });
        }
        let re = parse_ratio(re).map_err(|msg| Error::Format { line: no, msg })?;
        let im = parse_ratio(im).map_err(|msg| Error::Format { line: no, msg })?;
        terms.push(((k, l), GaussianRational::new(re, im)));
    }
    Ok(TruncatedSeries::from_terms(order, terms))
}

pub fn read_coeff_file(path: impl AsRef<Path>) -> Result<TruncatedSeries> {
    let text = fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Format { line: 0, msg: format!("{}: {e}", path.as_ref().display()) })?;
    parse_coeff_str(&text)
}

pub fn write_coeff_file(path: impl AsRef<Path>, s: &TruncatedSeries) -> io::Result<()> {
    fs::write(path, to_coeff_string(s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_exceeding_order_is_rejected() {
        let err = parse_coeff_str("order 4\n5 0 1/1 0/1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 2, .. }), "{err:?}");
    }

    #[test]
    fn duplicate_pair_is_rejected() {
        let err = parse_coeff_str("order 4\n1 0 1/1 0/1\n1 0 2/1 0/1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 3, .. }), "{err:?}");
    }

    #[test]
    fn malformed_line_reports_line_number() {
        let err = parse_coeff_str("order 2\n0 0 1/1 0/1\n\n1 1 x 0/1\n").unwrap_err();
        assert!(matches!(err, Error::Format { line: 4, .. }), "{err:?}");
        assert!(parse_coeff_str("").is_err());
        assert!(parse_coeff_str("degree 3\n").is_err());
    }

    #[test]
    fn unsorted_input_is_normalized_on_write() {
        let s = parse_coeff_str("order 3\n1 1 -1/2 0/1\n0 0 2/4 1/3\n").unwrap();
        assert_eq!(to_coeff_string(&s), "order 3\n0 0 1/2 1/3\n1 1 -1/2 0/1\n");
    }
}
