//! Text formats for complexes (`.cplx`) and matrices (`.mat`).
//!
//! A `.cplx` file holds one or more complexes separated by blank lines. Each
//! complex is a header line `m n` followed by one facet per line, labels
//! ascending and separated by spaces. Lines starting with `#` are ignored. The
//! single empty facet of a complex with `n = 0` is written as `-`.
//!
//! A `.mat` file has a header `rows cols ring` with ring `Z2` or `Z`, followed
//! by one row per line.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::charmap::{CharMatrixZ, CharMatrixZ2, DualCharMatrix};
use crate::complex::PureComplex;
use crate::error::{Error, Result};
use crate::scalar::IntScalar;
use crate::vertex_set::VertexSet;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_numbers<T: FromStr>(line: &str, lineno: usize) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| tok.parse::<T>().map_err(|_| parse_err(lineno, format!("bad number {tok:?}"))))
        .collect()
}

pub fn parse_complexes(text: &str) -> Result<Vec<PureComplex>> {
    let mut out = Vec::new();
    let mut header: Option<(usize, usize, usize)> = None;
    let mut facets: Vec<VertexSet> = Vec::new();

    let finish = |header: &mut Option<(usize, usize, usize)>, facets: &mut Vec<VertexSet>, out: &mut Vec<PureComplex>| {
        if let Some((m, n, lineno)) = header.take() {
            let k = PureComplex::embedded(m, n, facets.drain(..)).map_err(|e| parse_err(lineno, e.to_string()))?;
            out.push(k);
        }
        Ok::<(), Error>(())
    };

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.starts_with('#') {
            continue;
        }
        if line.is_empty() {
            finish(&mut header, &mut facets, &mut out)?;
            continue;
        }
        match header {
            None => {
                let nums: Vec<usize> = parse_numbers(line, lineno)?;
                let [m, n] = nums[..] else {
                    return Err(parse_err(lineno, "expected header \"m n\""));
                };
                header = Some((m, n, lineno));
            }
            Some((m, n, _)) => {
                if line == "-" {
                    if n != 0 {
                        return Err(parse_err(lineno, "empty facet in a complex with n > 0"));
                    }
                    facets.push(VertexSet::EMPTY);
                    continue;
                }
                let labels: Vec<usize> = parse_numbers(line, lineno)?;
                if labels.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(parse_err(lineno, "facet labels must be strictly ascending"));
                }
                if let Some(&bad) = labels.iter().find(|&&v| v == 0 || v > m) {
                    return Err(parse_err(lineno, format!("vertex {bad} outside 1..={m}")));
                }
                if labels.len() != n {
                    return Err(parse_err(lineno, format!("facet has {} vertices, expected {n}", labels.len())));
                }
                facets.push(labels.into_iter().collect());
            }
        }
    }
    finish(&mut header, &mut facets, &mut out)?;
    Ok(out)
}

pub fn write_complex(k: &PureComplex) -> String {
    let mut s = format!("{} {}\n", k.m(), k.n());
    for f in k.facets() {
        if f.is_empty() {
            s.push_str("-\n");
        } else {
            s.push_str(&f.to_string());
            s.push('\n');
        }
    }
    s
}

pub fn write_complexes(ks: &[PureComplex]) -> String {
    ks.iter().map(write_complex).collect::<Vec<_>>().join("\n")
}

pub fn read_complexes(path: impl AsRef<Path>) -> Result<Vec<PureComplex>> {
    parse_complexes(&fs::read_to_string(path)?)
}

pub fn save_complexes(path: impl AsRef<Path>, ks: &[PureComplex], comment: Option<&str>) -> Result<()> {
    let mut text = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            text.push_str("# ");
            text.push_str(line);
            text.push('\n');
        }
    }
    text.push_str(&write_complexes(ks));
    fs::write(path, text)?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Z2,
    Z,
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Ring::Z2 => "Z2",
            Ring::Z => "Z",
        })
    }
}

/// A matrix as read from a `.mat` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TextMatrix {
    pub ring: Ring,
    pub entries: Vec<Vec<i64>>,
}

impl TextMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, |r| r.len())
    }

    /// Reads the matrix as an `n x m` mod-2 characteristic matrix.
    pub fn to_char_z2(&self) -> CharMatrixZ2 {
        let rows: Vec<Vec<u8>> = self.entries.iter().map(|r| r.iter().map(|x| x.rem_euclid(2) as u8).collect()).collect();
        CharMatrixZ2::from_rows(&rows)
    }

    pub fn to_char_z<T: IntScalar>(&self) -> Result<CharMatrixZ<T>> {
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&x| T::from(x).ok_or_else(|| Error::Unsupported(format!("entry {x} out of range")))).collect())
            .collect::<Result<Vec<Vec<T>>>>()?;
        Ok(CharMatrixZ::from_rows(&rows))
    }

    /// Reads the matrix as an `m x p` dual characteristic matrix.
    pub fn to_dual(&self) -> Result<DualCharMatrix> {
        let p = self.cols();
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().fold(0u64, |acc, &x| acc << 1 | x.rem_euclid(2) as u64))
            .collect();
        DualCharMatrix::new(p, rows)
    }

    pub fn from_char_z2(lambda: &CharMatrixZ2) -> Self {
        let entries = lambda.rows().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect();
        TextMatrix { ring: Ring::Z2, entries }
    }

    pub fn from_char_z<T: IntScalar>(lambda: &CharMatrixZ<T>) -> Self {
        let entries = lambda.rows().into_iter().map(|r| r.into_iter().map(|x| x.to_i64().unwrap_or(i64::MAX)).collect()).collect();
        TextMatrix { ring: Ring::Z, entries }
    }

    pub fn from_dual(d: &DualCharMatrix) -> Self {
        let entries = (1..=d.m()).map(|v| (1..=d.p()).map(|j| d.get(v, j) as i64).collect()).collect();
        TextMatrix { ring: Ring::Z2, entries }
    }
}

impl fmt::Display for TextMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.rows(), self.cols(), self.ring)?;
        for r in &self.entries {
            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

pub fn parse_matrix(text: &str) -> Result<TextMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [r, c, ring] = parts[..] else {
        return Err(parse_err(hl, "expected header \"rows cols ring\""));
    };
    let rows: usize = r.parse().map_err(|_| parse_err(hl, "bad row count"))?;
    let cols: usize = c.parse().map_err(|_| parse_err(hl, "bad column count"))?;
    let ring = match ring {
        "Z2" => Ring::Z2,
        "Z" => Ring::Z,
        other => return Err(parse_err(hl, format!("unknown ring {other:?}"))),
    };
    let mut entries = Vec::with_capacity(rows);
    for (lineno, line) in lines {
        let row: Vec<i64> = parse_numbers(line, lineno)?;
        if row.len() != cols {
            return Err(parse_err(lineno, format!("row has {} entries, expected {cols}", row.len())));
        }
        let allowed: &[i64] = if ring == Ring::Z2 { &[0, 1] } else { &[-1, 0, 1] };
        if let Some(x) = row.iter().find(|x| !allowed.contains(x)) {
            return Err(parse_err(lineno, format!("entry {x} not allowed over {ring}")));
        }
        entries.push(row);
    }
    if entries.len() != rows {
        return Err(parse_err(hl, format!("expected {rows} rows, found {}", entries.len())));
    }
    Ok(TextMatrix { ring, entries })
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<TextMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}
