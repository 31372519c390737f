//! Plain-text complex files.
//!
//! ```text
//! # Fano plane
//! skeleton 7 2
//! 0 1 3
//! 1 2 4
//! ```
//!
//! `skeleton n k` lists the `k`-faces of a complex containing the full
//! `(k-1)`-skeleton on `[n]`. `facets n` lists faces whose downward closure is
//! the complex; a line holding only `-` is the empty face. A bare `facets`
//! header accepts arbitrary vertex labels, numbered `0..` in order of first
//! appearance. `#` starts a comment.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::complex::{AnyComplex, Complex, GeneralComplex, SkeletonComplex};
use crate::error::{Error, Result};
use crate::simplex::{Simplex, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedComplex {
    pub complex: AnyComplex,
    /// Original label of each vertex id when the file used free-form labels.
    pub labels: Option<Vec<String>>,
}

pub fn parse_complex_file(path: impl AsRef<Path>) -> Result<ParsedComplex> {
    let text = std::fs::read_to_string(path)?;
    parse_complex(&text)
}

enum Header {
    Skeleton { n: usize, k: usize },
    Facets { n: usize },
    Labeled,
}

pub fn parse_complex(text: &str) -> Result<ParsedComplex> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, htext) = lines.next().ok_or(Error::Parse { line: 0, message: "empty file".into() })?;
    let header = parse_header(hline, htext)?;

    match header {
        Header::Skeleton { n, k } => {
            let mut faces = Vec::new();
            for (line, body) in lines {
                let face = parse_face(line, body, n)?;
                if face.dim() != k as isize {
                    return Err(Error::DimensionMismatch { expected: k as isize, found: face.dim(), face });
                }
                faces.push(face);
            }
            let x = SkeletonComplex::from_top_faces(n, k, faces)?;
            Ok(ParsedComplex { complex: x.into(), labels: None })
        }
        Header::Facets { n } => {
            let mut faces = Vec::new();
            for (line, body) in lines {
                faces.push(parse_face(line, body, n)?);
            }
            Ok(ParsedComplex { complex: GeneralComplex::closure(faces, n)?.into(), labels: None })
        }
        Header::Labeled => {
            let mut ids: HashMap<String, Vertex> = HashMap::new();
            let mut labels: Vec<String> = Vec::new();
            let mut faces = Vec::new();
            for (line, body) in lines {
                if body == "-" {
                    faces.push(Simplex::empty());
                    continue;
                }
                let mut verts = Vec::new();
                for tok in body.split_whitespace() {
                    let id = *ids.entry(tok.to_string()).or_insert_with(|| {
                        labels.push(tok.to_string());
                        labels.len() as Vertex - 1
                    });
                    verts.push(id);
                }
                faces.push(Simplex::new(verts).map_err(|e| Error::Parse { line, message: e.to_string() })?);
            }
            let n = labels.len();
            Ok(ParsedComplex { complex: GeneralComplex::closure(faces, n)?.into(), labels: Some(labels) })
        }
    }
}

fn parse_header(line: usize, text: &str) -> Result<Header> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let num = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse { line, message: format!("expected a non-negative integer, found {s:?}") })
    };
    match toks.as_slice() {
        ["skeleton", n, k] => Ok(Header::Skeleton { n: num(n)?, k: num(k)? }),
        ["facets", n] => Ok(Header::Facets { n: num(n)? }),
        ["facets"] => Ok(Header::Labeled),
        _ => Err(Error::Parse { line, message: format!("expected `skeleton n k` or `facets [n]`, found {text:?}") }),
    }
}

fn parse_face(line: usize, body: &str, n: usize) -> Result<Simplex> {
    if body == "-" {
        return Ok(Simplex::empty());
    }
    let mut verts = Vec::new();
    for tok in body.split_whitespace() {
        let v: u64 = tok
            .parse()
            .map_err(|_| Error::Parse { line, message: format!("expected a vertex id, found {tok:?}") })?;
        if v >= n as u64 {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        verts.push(v as Vertex);
    }
    Simplex::new(verts).map_err(|e| Error::Parse { line, message: e.to_string() })
}

fn write_face(out: &mut String, f: &Simplex) {
    if f.is_empty() {
        out.push('-');
    } else {
        let parts: Vec<String> = f.vertices().iter().map(u32::to_string).collect();
        out.push_str(&parts.join(" "));
    }
    out.push('\n');
}

/// Serializes a complex; `parse_complex` reads it back unchanged.
pub fn emit_complex(x: &AnyComplex) -> String {
    let mut out = String::new();
    match x {
        AnyComplex::Skeleton(s) => {
            let _ = writeln!(out, "skeleton {} {}", s.n(), s.k());
            for f in s.top_faces() {
                write_face(&mut out, f);
            }
        }
        AnyComplex::General(g) => {
            let _ = writeln!(out, "facets {}", g.n());
            for f in g.facets() {
                write_face(&mut out, &f);
            }
        }
    }
    out
}
