//! Sample-path matrices: virus spread, virtual detections, and their
//! Hadamard product.
//!
//! A row is one sample path. Transit (TN11C) rows are the visited-node
//! sequence for `t = 0..t0` (repeats allowed); replicate (RA1PC/RAEPC) rows
//! are the distinct infected nodes in first-infection order, so the matrices
//! are ragged in general.

use std::io::{BufRead, Write};

use rand::Rng;
use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::graph::NodeId;
use crate::rng::path_rng;
use crate::spread::SpreadKind;

/// Virus spread matrix: one row of infected/visited nodes per sample path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirusSpreadMatrix {
    rows: Vec<Vec<NodeId>>,
}

/// Virtual detection matrix: one Bernoulli(1-r) flag per spread-matrix entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualDetectionMatrix {
    rows: Vec<Vec<bool>>,
}

/// Successful detection matrix: the node id where a detector would fire, or
/// `None` where the virtual-detection flip failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuccessfulDetectionMatrix {
    rows: Vec<Vec<Option<NodeId>>>,
}

impl VirusSpreadMatrix {
    pub fn new(rows: Vec<Vec<NodeId>>) -> VirusSpreadMatrix {
        VirusSpreadMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<NodeId>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
}

impl VirtualDetectionMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> VirtualDetectionMatrix {
        VirtualDetectionMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<bool>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
}

impl SuccessfulDetectionMatrix {
    pub fn new(rows: Vec<Vec<Option<NodeId>>>) -> SuccessfulDetectionMatrix {
        SuccessfulDetectionMatrix { rows }
    }

    pub fn rows(&self) -> &[Vec<Option<NodeId>>] {
        &self.rows
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }
}

/// Draw the virtual-detection coin flips for a spread matrix: one independent
/// Bernoulli(1-r) flag per entry. Transit rows carry one entry per visit, so
/// revisits are re-flipped; replicate rows carry one entry per infected node,
/// so each node is flipped once. Deterministic given the matrix shape, `r`
/// and `seed`.
pub fn sample_virtual_detections(
    vsm: &VirusSpreadMatrix,
    r: f64,
    seed: u64,
) -> Result<VirtualDetectionMatrix> {
    if !(0.0..1.0).contains(&r) {
        return Err(invalid(format!("false-negative probability must be in [0,1), got {r}")));
    }
    let rows = vsm
        .rows
        .par_iter()
        .enumerate()
        .map(|(l, row)| {
            let mut rng = path_rng(seed, l as u64);
            row.iter().map(|_| rng.gen_bool(1.0 - r)).collect()
        })
        .collect();
    Ok(VirtualDetectionMatrix { rows })
}

/// Hadamard product of a spread matrix and its detection flags: the entry is
/// kept where the flag is 1 and replaced by the no-detection sentinel where
/// the flag is 0.
pub fn successful_detection_matrix(
    vsm: &VirusSpreadMatrix,
    vdm: &VirtualDetectionMatrix,
) -> Result<SuccessfulDetectionMatrix> {
    if vsm.rows.len() != vdm.rows.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} spread rows vs {} detection rows",
            vsm.rows.len(),
            vdm.rows.len()
        )));
    }
    let mut rows = Vec::with_capacity(vsm.rows.len());
    for (l, (nodes, flags)) in vsm.rows.iter().zip(&vdm.rows).enumerate() {
        if nodes.len() != flags.len() {
            return Err(Error::ShapeMismatch(format!(
                "row {l}: {} entries vs {} flags",
                nodes.len(),
                flags.len()
            )));
        }
        rows.push(
            nodes
                .iter()
                .zip(flags)
                .map(|(&node, &flag)| if flag { Some(node) } else { None })
                .collect(),
        );
    }
    Ok(SuccessfulDetectionMatrix { rows })
}

/// Generation parameters recorded on the header line of serialized matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixHeader {
    pub kind: SpreadKind,
    pub t0: u32,
    pub p: f64,
    pub r: f64,
    pub n: usize,
    pub seed: u64,
}

impl MatrixHeader {
    fn write<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(
            w,
            "# kind={} t0={} p={} r={} n={} seed={}",
            self.kind, self.t0, self.p, self.r, self.n, self.seed
        )
    }

    fn parse(line: &str) -> Result<MatrixHeader> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            message: msg.to_string(),
        };
        let body = line
            .strip_prefix('#')
            .ok_or_else(|| bad("missing header line"))?
            .trim();
        let mut kind = None;
        let mut t0 = None;
        let mut p = None;
        let mut r = None;
        let mut n = None;
        let mut seed = None;
        for field in body.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad("header fields must be key=value"))?;
            match key {
                "kind" => kind = Some(value.parse::<SpreadKind>()?),
                "t0" => t0 = value.parse().ok(),
                "p" => p = value.parse().ok(),
                "r" => r = value.parse().ok(),
                "n" => n = value.parse().ok(),
                "seed" => seed = value.parse().ok(),
                _ => return Err(bad(&format!("unknown header field {key:?}"))),
            }
        }
        Ok(MatrixHeader {
            kind: kind.ok_or_else(|| bad("header missing kind"))?,
            t0: t0.ok_or_else(|| bad("header missing t0"))?,
            p: p.ok_or_else(|| bad("header missing p"))?,
            r: r.ok_or_else(|| bad("header missing r"))?,
            n: n.ok_or_else(|| bad("header missing n"))?,
            seed: seed.ok_or_else(|| bad("header missing seed"))?,
        })
    }
}

const SENTINEL: &str = "-";

fn write_rows<W, T, F>(mut w: W, header: &MatrixHeader, rows: &[Vec<T>], render: F) -> Result<()>
where
    W: Write,
    F: Fn(&T) -> String,
{
    if header.n != rows.len() {
        return Err(Error::ShapeMismatch(format!(
            "header says n={} but matrix has {} rows",
            header.n,
            rows.len()
        )));
    }
    header.write(&mut w)?;
    for row in rows {
        let cells: Vec<String> = row.iter().map(&render).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

fn read_rows<R, T, F>(reader: R, parse: F) -> Result<(MatrixHeader, Vec<Vec<T>>)>
where
    R: BufRead,
    F: Fn(&str, usize) -> Result<T>,
{
    let mut lines = reader.lines();
    let first = lines
        .next()
        .ok_or(Error::EmptyEdgeList)
        .map_err(|_| Error::Parse {
            line: 1,
            message: "empty matrix file".to_string(),
        })??;
    let header = MatrixHeader::parse(&first)?;
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.is_empty() {
            continue;
        }
        let row: Result<Vec<T>> = line.split(',').map(|cell| parse(cell, idx + 2)).collect();
        rows.push(row?);
    }
    if rows.len() != header.n {
        return Err(Error::ShapeMismatch(format!(
            "header says n={} but file has {} rows",
            header.n,
            rows.len()
        )));
    }
    Ok((header, rows))
}

impl VirusSpreadMatrix {
    pub fn write_text<W: Write>(&self, w: W, header: &MatrixHeader) -> Result<()> {
        write_rows(w, header, &self.rows, |node| node.to_string())
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<(MatrixHeader, VirusSpreadMatrix)> {
        let (header, rows) = read_rows(reader, |cell, line| {
            cell.parse::<NodeId>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid node id {cell:?}"),
            })
        })?;
        Ok((header, VirusSpreadMatrix { rows }))
    }
}

impl VirtualDetectionMatrix {
    pub fn write_text<W: Write>(&self, w: W, header: &MatrixHeader) -> Result<()> {
        write_rows(w, header, &self.rows, |&flag| {
            if flag { "1" } else { "0" }.to_string()
        })
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<(MatrixHeader, VirtualDetectionMatrix)> {
        let (header, rows) = read_rows(reader, |cell, line| match cell {
            "0" => Ok(false),
            "1" => Ok(true),
            _ => Err(Error::Parse {
                line,
                message: format!("invalid flag {cell:?}"),
            }),
        })?;
        Ok((header, VirtualDetectionMatrix { rows }))
    }
}

impl SuccessfulDetectionMatrix {
    pub fn write_text<W: Write>(&self, w: W, header: &MatrixHeader) -> Result<()> {
        write_rows(w, header, &self.rows, |entry| match entry {
            Some(node) => node.to_string(),
            None => SENTINEL.to_string(),
        })
    }

    pub fn read_text<R: BufRead>(reader: R) -> Result<(MatrixHeader, SuccessfulDetectionMatrix)> {
        let (header, rows) = read_rows(reader, |cell, line| {
            if cell == SENTINEL {
                Ok(None)
            } else {
                cell.parse::<NodeId>().map(Some).map_err(|_| Error::Parse {
                    line,
                    message: format!("invalid entry {cell:?}"),
                })
            }
        })?;
        Ok((header, SuccessfulDetectionMatrix { rows }))
    }
}
