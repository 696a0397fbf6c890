//! File formats.
//!
//! HSUM v1 — the crate's Hamiltonian interchange format. Line oriented,
//! UTF-8, `#` comments:
//!
//! ```text
//! # name: tfim-4
//! qubits 4
//! -1 Z0 Z1
//! -1/2 X0
//! 1 I
//! ```
//!
//! Each term line is a coefficient (integer, `p/q` rational, or plain
//! decimal) followed by whitespace-separated factors `L<idx>` with
//! `L ∈ {X, Y, Z}`, or the single token `I` for the identity term.
//! Duplicate strings are summed on load.
//!
//! Graph files for the reductions carry one `u v J` edge per line
//! (0-based vertices, rational `J`) with an optional `vertices N` header
//! for instances with isolated vertices. Chain files carry one
//! `i a_xx a_yy a_zz` line per edge with an optional `boundary closed`
//! header.

use crate::hamiltonian::Hamiltonian;
use crate::pauli::{Letter, PauliString, PauliTerm};
use crate::ratio::{format_rat, parse_rat, Rat};
use num::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {0}: malformed line: {1}")]
    Malformed(usize, String),
    #[error("line {0}: malformed coefficient `{1}` (expected integer, p/q, or decimal)")]
    BadCoefficient(usize, String),
    #[error("line {0}: qubit index {1} out of range for {2} qubits")]
    IndexOutOfRange(usize, usize, usize),
    #[error("line {0}: repeated qubit index {1} within one term")]
    RepeatedIndex(usize, usize),
    #[error("missing `qubits N` header")]
    MissingHeader,
    #[error("line {0}: duplicate header")]
    DuplicateHeader(usize),
}

/// Parse HSUM text into a Hamiltonian.
pub fn parse_hsum(text: &str) -> Result<Hamiltonian, ParseError> {
    let mut n: Option<usize> = None;
    let mut terms: Vec<PauliTerm> = Vec::new();
    let mut name = None;
    let mut provenance = None;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            let c = comment.trim();
            if let Some(v) = c.strip_prefix("name:") {
                name = Some(v.trim().to_string());
            } else if let Some(v) = c.strip_prefix("provenance:") {
                provenance = Some(v.trim().to_string());
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("qubits") {
            if n.is_some() {
                return Err(ParseError::DuplicateHeader(lineno));
            }
            let count: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::Malformed(lineno, "bad qubit count".into()))?;
            n = Some(count);
            continue;
        }
        let n = n.ok_or(ParseError::MissingHeader)?;
        let mut tokens = line.split_whitespace();
        let coeff_tok = tokens
            .next()
            .ok_or_else(|| ParseError::Malformed(lineno, "empty term".into()))?;
        let coeff = parse_rat(coeff_tok)
            .ok_or_else(|| ParseError::BadCoefficient(lineno, coeff_tok.to_string()))?;
        let factors: Vec<&str> = tokens.collect();
        if factors.is_empty() {
            return Err(ParseError::Malformed(
                lineno,
                "term needs at least one factor (use I for identity)".into(),
            ));
        }
        if factors == ["I"] {
            terms.push(PauliTerm::new(coeff, PauliString::identity(n)));
            continue;
        }
        let mut letters: Vec<(usize, Letter)> = Vec::with_capacity(factors.len());
        for f in factors {
            let (letter, idx_str) = f.split_at(1);
            let letter = match letter {
                "X" => Letter::X,
                "Y" => Letter::Y,
                "Z" => Letter::Z,
                _ => return Err(ParseError::Malformed(lineno, format!("bad factor `{f}`"))),
            };
            let q: usize = idx_str
                .parse()
                .map_err(|_| ParseError::Malformed(lineno, format!("bad factor `{f}`")))?;
            if q >= n {
                return Err(ParseError::IndexOutOfRange(lineno, q, n));
            }
            if letters.iter().any(|(seen, _)| *seen == q) {
                return Err(ParseError::RepeatedIndex(lineno, q));
            }
            letters.push((q, letter));
        }
        terms.push(PauliTerm::new(coeff, PauliString::from_letters(n, &letters)));
    }

    let n = n.ok_or(ParseError::MissingHeader)?;
    let mut h = Hamiltonian::new(n, terms).expect("indices validated during parse");
    h.meta.name = name;
    h.meta.provenance = provenance;
    Ok(h)
}

/// Serialize to HSUM text; round-trips through [`parse_hsum`] up to term
/// ordering and merging.
pub fn serialize_hsum(h: &Hamiltonian) -> String {
    let mut out = String::new();
    if let Some(name) = &h.meta.name {
        out.push_str(&format!("# name: {name}\n"));
    }
    if let Some(p) = &h.meta.provenance {
        out.push_str(&format!("# provenance: {p}\n"));
    }
    out.push_str(&format!("qubits {}\n", h.num_qubits()));
    if !h.offset().is_zero() {
        out.push_str(&format!("{} I\n", format_rat(h.offset())));
    }
    for t in h.terms() {
        out.push_str(&format_rat(&t.coeff));
        for i in 0..h.num_qubits() {
            let c = match t.string.letter(i) {
                Letter::I => continue,
                Letter::X => 'X',
                Letter::Y => 'Y',
                Letter::Z => 'Z',
            };
            out.push_str(&format!(" {c}{i}"));
        }
        out.push('\n');
    }
    out
}

/// JSON mirror of the HSUM content for tooling; the text format stays
/// the source of truth.
pub fn hamiltonian_to_json(h: &Hamiltonian) -> serde_json::Value {
    use crate::pauli::Letter;
    let terms: Vec<serde_json::Value> = h
        .terms()
        .iter()
        .map(|t| {
            let mut factors = Vec::new();
            for i in 0..h.num_qubits() {
                match t.string.letter(i) {
                    Letter::I => {}
                    l => factors.push(format!("{l:?}{i}")),
                }
            }
            serde_json::json!({
                "coeff": format_rat(&t.coeff),
                "factors": factors,
            })
        })
        .collect();
    serde_json::json!({
        "qubits": h.num_qubits(),
        "offset": format_rat(h.offset()),
        "terms": terms,
        "name": h.meta.name,
        "provenance": h.meta.provenance,
    })
}

/// A weighted edge list, the input of the reduction generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, Rat)>,
}

/// Parse a graph file: optional `vertices N` header, then `u v J` lines.
pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut declared: Option<usize> = None;
    let mut edges = Vec::new();
    let mut max_v = 0usize;
    let mut any = false;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vertices") {
            if declared.is_some() {
                return Err(ParseError::DuplicateHeader(lineno));
            }
            declared = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| ParseError::Malformed(lineno, "bad vertex count".into()))?,
            );
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(ParseError::Malformed(lineno, "expected `u v J`".into()));
        }
        let u: usize = toks[0]
            .parse()
            .map_err(|_| ParseError::Malformed(lineno, "bad vertex".into()))?;
        let v: usize = toks[1]
            .parse()
            .map_err(|_| ParseError::Malformed(lineno, "bad vertex".into()))?;
        if u == v {
            return Err(ParseError::Malformed(lineno, "self-loop".into()));
        }
        let j = parse_rat(toks[2])
            .ok_or_else(|| ParseError::BadCoefficient(lineno, toks[2].to_string()))?;
        max_v = max_v.max(u).max(v);
        any = true;
        edges.push((u, v, j));
    }
    let vertices = declared.unwrap_or(if any { max_v + 1 } else { 0 });
    if let Some(d) = declared {
        for (lineno, (u, v, _)) in edges.iter().enumerate() {
            if *u >= d || *v >= d {
                return Err(ParseError::IndexOutOfRange(lineno + 1, (*u).max(*v), d));
            }
        }
    }
    Ok(GraphFile { vertices, edges })
}

pub fn serialize_graph(g: &GraphFile) -> String {
    let mut out = format!("vertices {}\n", g.vertices);
    for (u, v, j) in &g.edges {
        out.push_str(&format!("{u} {v} {}\n", format_rat(j)));
    }
    out
}

/// One edge of an XYZ chain: left site index and the (XX, YY, ZZ)
/// coupling triple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFile {
    pub closed: bool,
    /// `edges[e]` couples sites `(e, e+1)` (and `(n-1, 0)` for the closing
    /// edge of a periodic chain).
    pub couplings: Vec<(Rat, Rat, Rat)>,
}

/// Parse a chain file: optional `boundary closed` line, then
/// `i a_xx a_yy a_zz` per edge with consecutive `i` starting at 0.
pub fn parse_chain(text: &str) -> Result<ChainFile, ParseError> {
    let mut closed = false;
    let mut rows: Vec<(usize, Rat, Rat, Rat)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "boundary closed" {
            closed = true;
            continue;
        }
        if line == "boundary open" {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(ParseError::Malformed(lineno, "expected `i a_xx a_yy a_zz`".into()));
        }
        let i: usize = toks[0]
            .parse()
            .map_err(|_| ParseError::Malformed(lineno, "bad edge index".into()))?;
        let mut vals = Vec::with_capacity(3);
        for t in &toks[1..] {
            vals.push(parse_rat(t).ok_or_else(|| ParseError::BadCoefficient(lineno, t.to_string()))?);
        }
        rows.push((i, vals[0].clone(), vals[1].clone(), vals[2].clone()));
    }
    rows.sort_by_key(|r| r.0);
    for (expect, row) in rows.iter().enumerate() {
        if row.0 != expect {
            return Err(ParseError::Malformed(
                0,
                format!("edge indices must be consecutive from 0, missing {expect}"),
            ));
        }
    }
    Ok(ChainFile {
        closed,
        couplings: rows.into_iter().map(|(_, a, b, c)| (a, b, c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Letter;
    use crate::ratio::{rat, rat_frac};

    #[test]
    fn parse_simple_term() {
        let h = parse_hsum("qubits 2\n-1 X0 X1\n").unwrap();
        assert_eq!(h.num_qubits(), 2);
        assert_eq!(h.num_terms(), 1);
        assert_eq!(h.terms()[0].coeff, rat(-1));
        assert_eq!(
            h.terms()[0].string,
            PauliString::from_letters(2, &[(0, Letter::X), (1, Letter::X)])
        );
    }

    #[test]
    fn duplicate_strings_merge() {
        let h = parse_hsum("qubits 1\n1/3 Z0\n1/6 Z0\n").unwrap();
        assert_eq!(h.num_terms(), 1);
        assert_eq!(h.terms()[0].coeff, rat_frac(1, 2));
    }

    #[test]
    fn repeated_index_is_an_error() {
        let err = parse_hsum("qubits 2\n1 X0 X0\n").unwrap_err();
        assert_eq!(err, ParseError::RepeatedIndex(2, 0));
    }

    #[test]
    fn index_out_of_range() {
        let err = parse_hsum("qubits 2\n1 X2\n").unwrap_err();
        assert_eq!(err, ParseError::IndexOutOfRange(2, 2, 2));
    }

    #[test]
    fn bad_coefficient_reports_line() {
        let err = parse_hsum("qubits 1\n\n1e5 Z0\n").unwrap_err();
        assert_eq!(err, ParseError::BadCoefficient(3, "1e5".into()));
    }

    #[test]
    fn roundtrip_with_offset_and_metadata() {
        let text = "# name: demo\nqubits 3\n1/2 I\n-1 X0 Z2\n3 Y0 Y1\n";
        let h = parse_hsum(text).unwrap();
        assert_eq!(h.meta.name.as_deref(), Some("demo"));
        let back = parse_hsum(&serialize_hsum(&h)).unwrap();
        assert_eq!(h, back);
    }

    #[test]
    fn json_mirror_shape() {
        let h = parse_hsum("qubits 2\n-1 X0 X1\n1/2 I\n").unwrap();
        let v = hamiltonian_to_json(&h);
        assert_eq!(v["qubits"], 2);
        assert_eq!(v["offset"], "1/2");
        assert_eq!(v["terms"][0]["coeff"], "-1");
        assert_eq!(v["terms"][0]["factors"][0], "X0");
    }

    #[test]
    fn graph_roundtrip() {
        let g = parse_graph("vertices 4\n0 1 1\n1 2 -1/2\n").unwrap();
        assert_eq!(g.vertices, 4);
        assert_eq!(g.edges.len(), 2);
        let back = parse_graph(&serialize_graph(&g)).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn graph_infers_vertex_count() {
        let g = parse_graph("0 1 1\n1 2 1\n2 0 1\n").unwrap();
        assert_eq!(g.vertices, 3);
    }

    #[test]
    fn chain_parse() {
        let c = parse_chain("0 2 0 1\n1 1 3 2\n").unwrap();
        assert!(!c.closed);
        assert_eq!(c.couplings.len(), 2);
        assert_eq!(c.couplings[0], (rat(2), rat(0), rat(1)));
    }
}
